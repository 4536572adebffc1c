"""The oscillator Lie algebra and its (deformed) enveloping algebras.

Generators, in fixed PBW order::

    A   number/boost generator        [A, Ap] =  Ap
    Ap  creation generator            [A, Am] = -Am
    Am  annihilation generator        [Am, Ap] =  M
    M   central generator

A PBW monomial is an exponent tuple ``(a, b, c, d)`` standing for
``A**a * Ap**b * Am**c * M**d``.  An :class:`Algebra` owns a set of
adjacent-swap rewrite rules ("tails"): for generators ``hi > lo`` in PBW
order, ``X_hi * X_lo = X_lo * X_hi + tail(hi, lo)``, where the tail is any
element.  The classical enveloping algebra has the Lie brackets above as
tails; deformed algebras add series corrections whose coefficients carry at
least one power of the grading marker ``h`` (see ``coeffs``), so products
truncated at a fixed marker order always terminate.

Everything heavy (monomial products, generator appends) is memoized per
algebra instance, which is what makes order-8 coproduct checks tractable.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from itertools import product as _cartesian

from .coeffs import Coefficient, CoefficientField

# Deep PBW straightening of long words recurses on word structure.
if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)

A, AP, AM, M = range(4)
GEN_NAMES = ("A", "Ap", "Am", "M")
UNIT_MONO = (0, 0, 0, 0)
GEN_MONOS = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


def mono_degree(mono) -> int:
    return sum(mono)


def word_of_mono(mono) -> tuple[int, ...]:
    out = []
    for g in range(4):
        out.extend([g] * mono[g])
    return tuple(out)


def mono_of_word(word) -> tuple[int, ...]:
    mono = [0, 0, 0, 0]
    for g in word:
        mono[g] += 1
    return tuple(mono)


def mono_str(mono, names=GEN_NAMES) -> str:
    if not any(mono):
        return "1"
    parts = []
    for name, e in zip(names, mono):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _top_gen(mono):
    for g in (3, 2, 1, 0):
        if mono[g]:
            return g
    return None


def _inc(mono, g):
    return mono[:g] + (mono[g] + 1,) + mono[g + 1 :]


def _dec(mono, g):
    return mono[:g] + (mono[g] - 1,) + mono[g + 1 :]


def _acc(terms, key, c):
    prev = terms.get(key)
    c = c if prev is None else prev + c
    if c.is_zero:
        terms.pop(key, None)
    else:
        terms[key] = c


def _graded_items(terms, order):
    """Term items paired with their marker valuation (0 when exact)."""
    if order is None:
        return [(k, c, 0) for k, c in terms.items()]
    return [(k, c, c.marker_degree) for k, c in terms.items()]


def oscillator_tails(field: CoefficientField):
    """The undeformed commutators, as rewrite tails."""
    one = field.one
    return {
        (AP, A): {GEN_MONOS[AP]: -one},
        (AM, A): {GEN_MONOS[AM]: one},
        (AM, AP): {GEN_MONOS[M]: one},
    }


def lie_brackets(field: CoefficientField):
    """Full antisymmetric bracket table [X_i, X_j] as term dicts."""
    table = {}
    tails = oscillator_tails(field)
    for i in range(4):
        for j in range(4):
            if i == j:
                table[(i, j)] = {}
            elif i > j:
                table[(i, j)] = dict(tails.get((i, j), {}))
            else:
                table[(i, j)] = {m: -c for m, c in tails.get((j, i), {}).items()}
    return table


class Algebra:
    """Associative algebra on A, Ap, Am, M presented by adjacent-swap rules.

    ``order=None`` demands length-reducing rules (the classical case) and
    computes exactly; a finite ``order`` truncates every coefficient at that
    marker degree and is required as soon as any tail has words of length
    two or more (the deformed cases).
    """

    _classical: dict = {}

    names = GEN_NAMES
    unit_mono = UNIT_MONO

    def __init__(self, field: CoefficientField, tails, order: int | None = None, label: str = ""):
        self.field = field
        self.order = order
        self.label = label
        self.tails = {}
        for hi in range(1, 4):
            for lo in range(hi):
                raw = tails.get((hi, lo), {})
                tail = {}
                for m, c in raw.items():
                    c = c.truncate(order)
                    if c.is_zero:
                        continue
                    if mono_degree(m) >= 2:
                        if c.marker_degree < 1:
                            raise ValueError(
                                f"rule ({GEN_NAMES[hi]},{GEN_NAMES[lo]}) has unmarked "
                                f"length-{mono_degree(m)} tail term; rewriting would not terminate"
                            )
                        if order is None:
                            raise ValueError(
                                "series-type rewrite rules need a finite truncation order"
                            )
                    tail[m] = c
                self.tails[(hi, lo)] = tail
        self._mg_cache: dict = {}
        self._mm_cache: dict = {}

    def __repr__(self):
        tag = "exact" if self.order is None else f"order {self.order}"
        return f"<Algebra {self.label or 'U(h4)'} ({tag})>"

    @classmethod
    def classical(cls, field: CoefficientField, order: int | None = None) -> "Algebra":
        key = (field, order)
        inst = cls._classical.get(key)
        if inst is None:
            inst = cls._classical[key] = cls(field, oscillator_tails(field), order, "U(h4)")
        return inst

    # -- element constructors -------------------------------------------

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return Element(self, {UNIT_MONO: self.field.one})

    def gen(self, i: int) -> "Element":
        return Element(self, {GEN_MONOS[i]: self.field.one})

    def gens(self) -> tuple["Element", ...]:
        return tuple(self.gen(i) for i in range(4))

    def monomial(self, mono, coeff=None) -> "Element":
        coeff = self.field.one if coeff is None else coeff
        return Element(self, {tuple(mono): coeff} if coeff else {})

    def element(self, terms) -> "Element":
        return Element(self, {m: c for m, c in terms.items() if not c.is_zero})

    def tensor_unit(self, arity: int) -> "TensorElement":
        return TensorElement(self, arity, {(UNIT_MONO,) * arity: self.field.one})

    def tensor_zero(self, arity: int) -> "TensorElement":
        return TensorElement(self, arity, {})

    # -- the rewrite engine ---------------------------------------------

    def _clean(self, terms):
        out = {}
        for m, c in terms.items():
            c = c.truncate(self.order)
            if not c.is_zero:
                out[m] = c
        return out

    def _mul_mono_gen(self, mono, g):
        """Normal form of (sorted monomial) * X_g, as a term dict."""
        key = (mono, g)
        hit = self._mg_cache.get(key)
        if hit is not None:
            return hit
        j = _top_gen(mono)
        if j is None or g >= j:
            out = {_inc(mono, g): self.field.one}
        else:
            prefix = _dec(mono, j)
            out = {}
            for m2, c2 in self._mul_mono_gen(prefix, g).items():
                for m3, c3 in self._mul_mono_gen(m2, j).items():
                    _acc(out, m3, c2 * c3)
            for tm, tc in self.tails[(j, g)].items():
                for m4, c4 in self.mul_mono(prefix, tm).items():
                    _acc(out, m4, tc * c4)
            out = self._clean(out)
        self._mg_cache[key] = out
        return out

    def mul_mono(self, m1, m2):
        """Normal form of the product of two sorted monomials, as a term dict."""
        if m2 == UNIT_MONO:
            return {m1: self.field.one}
        if m1 == UNIT_MONO:
            return {m2: self.field.one}
        key = (m1, m2)
        hit = self._mm_cache.get(key)
        if hit is not None:
            return hit
        j = _top_gen(m2)
        out = {}
        for mi, ci in self.mul_mono(m1, _dec(m2, j)).items():
            for mo, co in self._mul_mono_gen(mi, j).items():
                _acc(out, mo, ci * co)
        out = self._clean(out)
        self._mm_cache[key] = out
        return out

    def normalize_word(self, word, rightmost: bool = False) -> "Element":
        """Normal form of a free word of generator indices.

        The default strategy folds left to right through the memoized
        engine.  ``rightmost=True`` runs an independent naive rewriter that
        always resolves the rightmost misordered pair first; comparing the
        two on the same words is a confluence check of the rule set.
        """
        if not rightmost:
            e = self.one()
            for g in word:
                e = e * self.gen(g)
            return e
        out: dict = {}
        stack = [(self.field.one, tuple(word))]
        while stack:
            c, w = stack.pop()
            idx = None
            for i in range(len(w) - 2, -1, -1):
                if w[i] > w[i + 1]:
                    idx = i
                    break
            if idx is None:
                _acc(out, mono_of_word(w), c)
                continue
            hi, lo = w[idx], w[idx + 1]
            pre, post = w[:idx], w[idx + 2 :]
            stack.append((c, pre + (lo, hi) + post))
            for tm, tc in self.tails[(hi, lo)].items():
                cc = (c * tc).truncate(self.order)
                if not cc.is_zero:
                    stack.append((cc, pre + word_of_mono(tm) + post))
        return Element(self, self._clean(out))


def _coerce_scalar(field: CoefficientField, x):
    if isinstance(x, Coefficient):
        if x.field is not field:
            raise ValueError("scalar from a different coefficient field")
        return x
    if isinstance(x, (int, Fraction)):
        return field.rational(x)
    return None


class _Terms:
    """Shared term-dict plumbing for Element and TensorElement."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: Algebra, terms: dict):
        self.alg = alg
        self.terms = terms

    def _like(self, terms) -> "_Terms":
        raise NotImplementedError

    def _unit(self):
        if isinstance(self, TensorElement):
            return self.alg.tensor_unit(self.arity)
        return self.alg.one()

    def _lift_scalar(self, other):
        """int/Fraction/Coefficient -> scalar multiple of the unit, else None."""
        c = _coerce_scalar(self.alg.field, other)
        return None if c is None else self._unit().scale(c)

    def _compatible(self, other):
        if type(other) is not type(self) or other.alg is not self.alg:
            raise ValueError(f"cannot combine {self!r} with {other!r}")
        if isinstance(self, TensorElement) and self.arity != other.arity:
            raise ValueError("tensor arity mismatch")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __add__(self, other):
        if not isinstance(other, _Terms):
            other = self._lift_scalar(other)
            if other is None:
                return NotImplemented
        self._compatible(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, _Terms):
            other = self._lift_scalar(other)
            if other is None:
                return NotImplemented
        self._compatible(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, -c)
        return self._like(out)

    def __rsub__(self, other):
        lifted = self._lift_scalar(other)
        if lifted is None:
            return NotImplemented
        return lifted.__sub__(self)

    def scale(self, s):
        c = _coerce_scalar(self.alg.field, s)
        if c is None:
            raise TypeError(f"cannot scale by {type(s).__name__}")
        if c.is_zero:
            return self._like({})
        out = {}
        for m, cc in self.terms.items():
            v = (cc * c).truncate(self.alg.order)
            if not v.is_zero:
                out[m] = v
        return self._like(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        c = _coerce_scalar(self.alg.field, other)
        if c is None:
            return NotImplemented
        return self.scale(self.alg.field.one / c)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("algebra powers must be nonnegative integers")
        out = self._unit()
        for _ in range(n):
            out = out * self
        return out

    def map_coeffs(self, fn):
        out = {}
        for m, c in self.terms.items():
            v = fn(c)
            if not v.is_zero:
                out[m] = v
        return self._like(out)

    def truncate(self, order):
        return self.map_coeffs(lambda c: c.truncate(order))

    def h_part(self, k: int):
        return self.map_coeffs(lambda c: c.h_part(k))

    def scale_params(self):
        return self.map_coeffs(lambda c: c.scale_params())

    def strip_marker(self):
        return self.map_coeffs(lambda c: c.strip_marker())

    def marker_degree(self):
        """Lowest series order present across all terms (0 for zero)."""
        if self.is_zero:
            return 0
        return min(c.marker_degree for c in self.terms.values())

    def commutator(self, other):
        return self * other - other * self


class Element(_Terms):
    """An enveloping-algebra element: PBW monomials with exact coefficients."""

    __slots__ = ()

    def _like(self, terms):
        return Element(self.alg, terms)

    def __repr__(self):
        return element_str(self) or "0"

    @property
    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=0)

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        self._compatible(other)
        order = self.alg.order
        out: dict = {}
        # valuations add exactly, so pairs over the truncation order can be
        # skipped before the (expensive) coefficient product
        lhs = _graded_items(self.terms, order)
        rhs = _graded_items(other.terms, order)
        for m1, c1, d1 in lhs:
            for m2, c2, d2 in rhs:
                if order is not None and d1 + d2 > order:
                    continue
                c = (c1 * c2).truncate(order)
                if c.is_zero:
                    continue
                for m, cm in self.alg.mul_mono(m1, m2).items():
                    _acc(out, m, (c * cm).truncate(order))
        return Element(self.alg, {m: c for m, c in out.items() if not c.is_zero})

    def coeff(self, mono) -> Coefficient:
        return self.terms.get(tuple(mono), self.alg.field.zero)


class TensorElement(_Terms):
    """An element of the tensor square or cube of an :class:`Algebra`."""

    __slots__ = ("arity",)

    def __init__(self, alg, arity, terms):
        super().__init__(alg, terms)
        self.arity = arity

    def _like(self, terms):
        return TensorElement(self.alg, self.arity, terms)

    def __repr__(self):
        return tensor_str(self) or "0"

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return self.scale(other)
        self._compatible(other)
        alg, order = self.alg, self.alg.order
        out: dict = {}
        lhs = _graded_items(self.terms, order)
        rhs = _graded_items(other.terms, order)
        for k1, c1, d1 in lhs:
            for k2, c2, d2 in rhs:
                if order is not None and d1 + d2 > order:
                    continue
                c = (c1 * c2).truncate(order)
                if c.is_zero:
                    continue
                slot_terms = [alg.mul_mono(k1[s], k2[s]).items() for s in range(self.arity)]
                for combo in _cartesian(*slot_terms):
                    cc = c
                    for _, cs in combo:
                        cc = cc * cs
                    cc = cc.truncate(order)
                    if cc.is_zero:
                        continue
                    _acc(out, tuple(m for m, _ in combo), cc)
        return TensorElement(alg, self.arity, {k: c for k, c in out.items() if not c.is_zero})

    def permute(self, perm) -> "TensorElement":
        """Reorder slots: new slot s holds old slot perm[s]."""
        out: dict = {}
        for k, c in self.terms.items():
            _acc(out, tuple(k[p] for p in perm), c)
        return TensorElement(self.alg, self.arity, out)

    def swap(self) -> "TensorElement":
        """The flip on a tensor square."""
        if self.arity != 2:
            raise ValueError("swap is for arity-2 tensors")
        return self.permute((1, 0))

    def max_slot_degree(self) -> int:
        return max((mono_degree(m) for k in self.terms for m in k), default=0)

    def contract(self, pos: int, scalar_of_mono):
        """Apply a scalar-valued linear map to one slot and drop it."""
        keep = [s for s in range(self.arity) if s != pos]
        out: dict = {}
        for k, c in self.terms.items():
            v = c * scalar_of_mono(k[pos])
            if v.is_zero:
                continue
            key = k[keep[0]] if self.arity == 2 else tuple(k[s] for s in keep)
            _acc(out, key, v)
        if self.arity == 2:
            return Element(self.alg, out)
        return TensorElement(self.alg, self.arity - 1, out)

    def fold_slots(self, maps=None) -> Element:
        """Multiply the slots together in the base algebra, left to right.

        ``maps`` optionally supplies a per-slot linear map (monomial ->
        Element) applied before multiplying; slot maps default to identity.
        """
        alg = self.alg
        total = alg.zero()
        for k, c in self.terms.items():
            piece = alg.one()
            for s, m in enumerate(k):
                fac = maps[s](m) if maps and maps[s] is not None else Element(alg, {m: alg.field.one})
                piece = piece * fac
            total = total + piece.scale(c)
        return total


def tensor(*factors: Element) -> TensorElement:
    """The tensor product of algebra elements."""
    alg = factors[0].alg
    order = alg.order
    out: dict = {}
    keys_coeffs = [f.terms.items() for f in factors]
    for combo in _cartesian(*keys_coeffs):
        c = alg.field.one
        for _, cf in combo:
            c = c * cf
        c = c.truncate(order)
        if c.is_zero:
            continue
        _acc(out, tuple(m for m, _ in combo), c)
    return TensorElement(alg, len(factors), out)


def embed(t: TensorElement, positions: tuple[int, ...], arity: int) -> TensorElement:
    """Place a tensor's slots at ``positions`` of a wider tensor, units elsewhere."""
    out: dict = {}
    unit = t.alg.unit_mono
    for k, c in t.terms.items():
        key = [unit] * arity
        for s, p in enumerate(positions):
            key[p] = k[s]
        _acc(out, tuple(key), c)
    return TensorElement(t.alg, arity, out)


def spread(x: Element, arity: int) -> TensorElement:
    """x⊗1⊗...⊗1 + 1⊗x⊗...⊗1 + ... — the primitive embedding of x."""
    alg = x.alg
    out: dict = {}
    unit = alg.unit_mono
    for s in range(arity):
        for m, c in x.terms.items():
            key = [unit] * arity
            key[s] = m
            _acc(out, tuple(key), c)
    return TensorElement(alg, arity, out)


def tensor_adjoint(x: Element, t: TensorElement) -> TensorElement:
    """Adjoint action of x on a tensor power: [spread(x), t]."""
    return spread(x, t.arity).commutator(t)


def rebase(x, alg: Algebra):
    """Reinterpret already-normal terms in another algebra over the same field.

    Legitimate between algebras sharing a normal form on the given support
    (e.g. truncations of one another); used to compare results computed at
    different truncation orders.
    """
    if x.alg.field is not alg.field:
        raise ValueError("rebase requires the same coefficient field")
    terms = {}
    for m, c in x.terms.items():
        c = c.truncate(alg.order)
        if not c.is_zero:
            terms[m] = c
    if isinstance(x, TensorElement):
        return TensorElement(alg, x.arity, terms)
    return Element(alg, terms)


def exp_series(x, order: int | None = None):
    """exp of an element/tensor whose coefficients all carry the marker.

    The marker grading makes the series terminate at the truncation order;
    inputs with an order-0 part are rejected rather than summed blindly.
    """
    alg = x.alg
    order = alg.order if order is None else order
    if order is None:
        raise ValueError("exp needs a truncation order")
    if not x.is_zero and x.marker_degree() < 1:
        raise ValueError("exp argument has an order-0 part; series would not terminate")
    unit = alg.tensor_unit(x.arity) if isinstance(x, TensorElement) else alg.one()
    total, term = unit, unit
    for k in range(1, order + 1):
        term = (term * x).scale(Fraction(1, k)).truncate(order)
        if term.is_zero:
            break
        total = total + term
    return total


# -- plain-text rendering ------------------------------------------------


def coeff_prefix(c: Coefficient) -> str:
    s = repr(c)
    if s == "1":
        return ""
    if s == "-1":
        return "-"
    if any(op in s[1:] for op in (" + ", " - ")) and not (s.startswith("(") and s.endswith(")")):
        s = f"({s})"
    return s + "*"


def _sorted_keys(keys, keyfn):
    return sorted(keys, key=keyfn)


def element_str(e: Element) -> str:
    names = getattr(e.alg, "names", GEN_NAMES)
    bits = []
    for m in _sorted_keys(e.terms, lambda m: (mono_degree(m), m)):
        pre = coeff_prefix(e.terms[m])
        body = mono_str(m, names)
        if body == "1":
            bits.append(repr(e.terms[m]))
        else:
            bits.append(pre + body)
    return " + ".join(bits).replace("+ -", "- ")


def tensor_str(t: TensorElement) -> str:
    names = getattr(t.alg, "names", GEN_NAMES)
    bits = []
    for k in _sorted_keys(t.terms, lambda k: (sum(mono_degree(m) for m in k), k)):
        pre = coeff_prefix(t.terms[k])
        body = " o ".join(mono_str(m, names) for m in k)
        bits.append(pre + body if body != " o ".join(["1"] * t.arity) else repr(t.terms[k]))
    return " + ".join(bits).replace("+ -", "- ")
