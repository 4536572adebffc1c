"""Quantized coordinate rings of the oscillator group, with Hopf checks.

The classical coordinate functions are theta, a_plus, a_minus, m together
with the group-like exponential E = e^theta and its inverse.  A monomial is
``(t, k, p, q, s)`` standing for ``theta^t * E^k * a_plus^p * a_minus^q *
m^s`` with ``k`` any integer.  A :class:`FunAlgebra` deforms the
(commutative) ring by adjacent-swap rules whose tails all carry the series
marker, so the z -> 0 limit is the commutative ring and the order-h part of
a commutator is a Poisson bracket candidate.

Three deformations are built here, sharing one coalgebra (the pullback of
the group law) and one antipode (the pullback of group inversion):

``Uz``   the dual of the one-parameter creation-type deformation:
         [theta, a+] = z(E - 1), [a-, a+] = z a-, [theta, m] = z a-,
         [a+, m] = z a- a+, [a-, m] = -z a-^2, plus the E-versions obtained
         by exponentiating ad_theta.
``IIn``  three parameters, only [a+, m] = -x a+ + bp (E - 1) and
         [a-, m] = x a- + yp (E^-1 - 1) nonzero.
``IIs``  one parameter, only [a+, m] = z a+ and [a-, m] = z a-.

All rule tails are polynomial, so these algebras are exact (no truncation
needed); ``order`` may still be set to truncate.  Elements reuse the
generic term machinery of :mod:`.algebra`.
"""

from __future__ import annotations

from .algebra import Element, TensorElement, _acc, spread, tensor
from .bialgebra import RMatrixSkew, apply_slot_map
from .coeffs import Coefficient, CoefficientField
from .poisson import GroupRing, group_compose, site_coords, sklyanin_bracket

FUN_KEYS = ("Uz", "IIn", "IIs")
FUN_NAMES = ("theta", "E", "a_plus", "a_minus", "m")
FUN_UNIT = (0, 0, 0, 0, 0)

# Word letters; E and its inverse are distinct letters sharing the E slot.
L_THETA, L_E, L_EINV, L_AP, L_AM, L_M = range(6)
LETTER_NAMES = ("theta", "E", "Einv", "a_plus", "a_minus", "m")
LETTER_SLOT = (0, 1, 1, 2, 3, 4)
LETTER_MONOS = (
    (1, 0, 0, 0, 0),
    (0, 1, 0, 0, 0),
    (0, -1, 0, 0, 0),
    (0, 0, 1, 0, 0),
    (0, 0, 0, 1, 0),
    (0, 0, 0, 0, 1),
)


class UnknownFunFamily(KeyError):
    pass


def _top_letter(mono):
    """The rightmost letter of the normal word for ``mono`` (None for 1)."""
    for slot, letter in ((4, L_M), (3, L_AM), (2, L_AP)):
        if mono[slot]:
            return letter
    if mono[1]:
        return L_E if mono[1] > 0 else L_EINV
    if mono[0]:
        return L_THETA
    return None


def _inc_letter(mono, letter):
    slot = LETTER_SLOT[letter]
    step = -1 if letter == L_EINV else 1
    return mono[:slot] + (mono[slot] + step,) + mono[slot + 1 :]


def _dec_letter(mono, letter):
    slot = LETTER_SLOT[letter]
    step = -1 if letter == L_EINV else 1
    return mono[:slot] + (mono[slot] - step,) + mono[slot + 1 :]


def word_of_fun_mono(mono):
    word = [L_THETA] * mono[0]
    word.extend([L_E if mono[1] > 0 else L_EINV] * abs(mono[1]))
    word.extend([L_AP] * mono[2])
    word.extend([L_AM] * mono[3])
    word.extend([L_M] * mono[4])
    return tuple(word)


class FunAlgebra:
    """Coordinate ring presented by adjacent-swap rules over six letters.

    ``swaps`` maps ``(hi_letter, lo_letter)`` to a normal-form tail dict, so
    ``X_hi * X_lo = X_lo * X_hi + tail``; absent pairs commute.  Every tail
    term must carry the marker, which makes the classical limit the
    commutative ring and (tails being polynomial) keeps products finite even
    without a truncation order.  Duck-type compatible with
    :class:`.algebra.Algebra` for Element/TensorElement reuse.
    """

    names = FUN_NAMES
    unit_mono = FUN_UNIT

    def __init__(self, field: CoefficientField, swaps, order: int | None = None, label: str = ""):
        self.field = field
        self.order = order
        self.label = label
        self.swaps = {}
        for pair, raw in swaps.items():
            hi, lo = pair
            if LETTER_SLOT[hi] <= LETTER_SLOT[lo]:
                raise ValueError(f"swap rule {pair} is not an ordered pair")
            tail = {}
            for m, c in raw.items():
                c = c.truncate(order)
                if c.is_zero:
                    continue
                if c.marker_degree < 1:
                    raise ValueError(
                        f"rule ({LETTER_NAMES[hi]},{LETTER_NAMES[lo]}) has an unmarked tail; "
                        "the classical limit would not be commutative"
                    )
                tail[m] = c
            if tail:
                self.swaps[pair] = tail
        self._ml_cache: dict = {}
        self._mm_cache: dict = {}

    def __repr__(self):
        tag = "exact" if self.order is None else f"order {self.order}"
        return f"<FunAlgebra {self.label or 'Fun'} ({tag})>"

    # -- element constructors -------------------------------------------

    def zero(self) -> Element:
        return Element(self, {})

    def one(self) -> Element:
        return Element(self, {FUN_UNIT: self.field.one})

    def letter(self, letter: int) -> Element:
        return Element(self, {LETTER_MONOS[letter]: self.field.one})

    def coord(self, name: str) -> Element:
        return self.letter(LETTER_NAMES.index(name))

    def element(self, terms) -> Element:
        return Element(self, {m: c for m, c in terms.items() if not c.is_zero})

    def monomial(self, mono, coeff=None) -> Element:
        coeff = self.field.one if coeff is None else coeff
        return Element(self, {tuple(mono): coeff} if coeff else {})

    def tensor_unit(self, arity: int) -> TensorElement:
        return TensorElement(self, arity, {(FUN_UNIT,) * arity: self.field.one})

    def tensor_zero(self, arity: int) -> TensorElement:
        return TensorElement(self, arity, {})

    # -- the rewrite engine ---------------------------------------------

    def _clean(self, terms):
        out = {}
        for m, c in terms.items():
            c = c.truncate(self.order)
            if not c.is_zero:
                out[m] = c
        return out

    def _mul_letter(self, mono, g):
        """Normal form of (normal monomial) * letter_g, as a term dict."""
        key = (mono, g)
        hit = self._ml_cache.get(key)
        if hit is not None:
            return hit
        top = _top_letter(mono)
        if top is None or LETTER_SLOT[g] >= LETTER_SLOT[top]:
            out = {_inc_letter(mono, g): self.field.one}
        else:
            prefix = _dec_letter(mono, top)
            out = {}
            for m2, c2 in self._mul_letter(prefix, g).items():
                for m3, c3 in self._mul_letter(m2, top).items():
                    _acc(out, m3, c2 * c3)
            for tm, tc in self.swaps.get((top, g), {}).items():
                for m4, c4 in self.mul_mono(prefix, tm).items():
                    _acc(out, m4, tc * c4)
            out = self._clean(out)
        self._ml_cache[key] = out
        return out

    def mul_mono(self, m1, m2):
        if m2 == FUN_UNIT:
            return {m1: self.field.one}
        if m1 == FUN_UNIT:
            return {m2: self.field.one}
        key = (m1, m2)
        hit = self._mm_cache.get(key)
        if hit is not None:
            return hit
        j = _top_letter(m2)
        out = {}
        for mi, ci in self.mul_mono(m1, _dec_letter(m2, j)).items():
            for mo, co in self._mul_letter(mi, j).items():
                _acc(out, mo, ci * co)
        out = self._clean(out)
        self._mm_cache[key] = out
        return out

    def normalize_word(self, word, rightmost: bool = False) -> Element:
        """Normal form of a free word of letters (confluence cross-check)."""
        if not rightmost:
            e = self.one()
            for g in word:
                e = e * self.letter(g)
            return e
        out: dict = {}
        stack = [(self.field.one, tuple(word))]
        while stack:
            c, w = stack.pop()
            idx = None
            for i in range(len(w) - 2, -1, -1):
                if LETTER_SLOT[w[i]] > LETTER_SLOT[w[i + 1]]:
                    idx = i
                    break
            if idx is None:
                mono = FUN_UNIT
                for g in w:
                    mono = _inc_letter(mono, g)
                _acc(out, mono, c)
                continue
            hi, lo = w[idx], w[idx + 1]
            pre, post = w[:idx], w[idx + 2 :]
            stack.append((c, pre + (lo, hi) + post))
            for tm, tc in self.swaps.get((hi, lo), {}).items():
                cc = (c * tc).truncate(self.order)
                if not cc.is_zero:
                    stack.append((cc, pre + word_of_fun_mono(tm) + post))
        return Element(self, self._clean(out))


# -- the three families --------------------------------------------------


def _uz_swaps(field):
    z = field.marked_param("z")
    return {
        # a+ theta = theta a+ - z(E - 1)
        (L_AP, L_THETA): {(0, 1, 0, 0, 0): -z, FUN_UNIT: z},
        # m theta = theta m - z a-
        (L_M, L_THETA): {(0, 0, 0, 1, 0): -z},
        # a+ E = E a+ - z(E^2 - E)   (= exponentiated [theta, a+])
        (L_AP, L_E): {(0, 2, 0, 0, 0): -z, (0, 1, 0, 0, 0): z},
        # a+ E^-1 = E^-1 a+ + z(1 - E^-1)
        (L_AP, L_EINV): {FUN_UNIT: z, (0, -1, 0, 0, 0): -z},
        # m E = E m - z E a-
        (L_M, L_E): {(0, 1, 0, 1, 0): -z},
        # m E^-1 = E^-1 m + z E^-1 a-
        (L_M, L_EINV): {(0, -1, 0, 1, 0): z},
        # a- a+ = a+ a- + z a-
        (L_AM, L_AP): {(0, 0, 0, 1, 0): z},
        # m a+ = a+ m - z a- a+  (normal-ordered: -z a+ a- - z^2 a-)
        (L_M, L_AP): {(0, 0, 1, 1, 0): -z, (0, 0, 0, 1, 0): -z * z},
        # m a- = a- m + z a-^2
        (L_M, L_AM): {(0, 0, 0, 2, 0): z},
    }


def _iin_swaps(field):
    x = field.marked_param("x")
    bp = field.marked_param("bp")
    yp = field.marked_param("yp")
    return {
        # m a+ = a+ m + x a+ - bp(E - 1)
        (L_M, L_AP): {(0, 0, 1, 0, 0): x, (0, 1, 0, 0, 0): -bp, FUN_UNIT: bp},
        # m a- = a- m - x a- - yp(E^-1 - 1)
        (L_M, L_AM): {(0, 0, 0, 1, 0): -x, (0, -1, 0, 0, 0): -yp, FUN_UNIT: yp},
    }


def _iis_swaps(field):
    z = field.marked_param("z")
    return {
        # m a± = a± m - z a±
        (L_M, L_AP): {(0, 0, 1, 0, 0): -z},
        (L_M, L_AM): {(0, 0, 0, 1, 0): -z},
    }


_FAMILY_DATA = {
    "Uz": ("z", _uz_swaps, lambda f: (f.param("z"), 0, 0, 0, 0, 0)),
    "IIn": (
        ("x", "bp", "yp"),
        _iin_swaps,
        lambda f: (0, 0, f.param("x"), 0, f.param("bp"), f.param("yp")),
    ),
    "IIs": ("z", _iis_swaps, lambda f: (0, 0, 0, -f.param("z"), 0, 0)),
}


class FunPresentation:
    """A deformed coordinate ring plus the (shared) group coalgebra.

    ``images``/``antipode``/``counit`` are keyed by the six letter names;
    the coproduct is the pullback of the group law, the antipode the
    pullback of inversion, and the counit evaluation at the identity
    (1 on any power of E, 0 on the other coordinates).  ``r`` is the
    classical r-matrix whose Sklyanin bracket the order-h commutators
    must reproduce.
    """

    def __init__(self, key, alg, r):
        self.key = key
        self.alg = alg
        self.field = alg.field
        self.order = alg.order
        self.r = r
        one = alg.one()
        th = alg.letter(L_THETA)
        E = alg.letter(L_E)
        Einv = alg.letter(L_EINV)
        ap = alg.letter(L_AP)
        am = alg.letter(L_AM)
        m = alg.letter(L_M)
        self.images = {
            "theta": spread(th, 2),
            "E": tensor(E, E),
            "Einv": tensor(Einv, Einv),
            "a_plus": tensor(E, ap) + tensor(ap, one),
            "a_minus": tensor(Einv, am) + tensor(am, one),
            "m": tensor(one, m) + tensor(m, one) - tensor(Einv * ap, am),
        }
        self.antipode = {
            "theta": -th,
            "E": Einv,
            "Einv": E,
            "a_plus": -(Einv * ap),
            "a_minus": -(E * am),
            "m": -m - (Einv * ap * E) * am,
        }
        self.counit = {name: (self.field.one if name in ("E", "Einv") else self.field.zero) for name in LETTER_NAMES}
        self._delta_cache: dict = {}
        self._antipode_cache: dict = {}

    def __repr__(self):
        return f"<FunPresentation {self.key}>"

    def counit_scalar(self, mono) -> Coefficient:
        t, _, p, q, s = mono
        return self.field.one if t == p == q == s == 0 else self.field.zero

    def _first_letter(self, mono):
        if mono[0]:
            return L_THETA
        if mono[1]:
            return L_E if mono[1] > 0 else L_EINV
        for slot, letter in ((2, L_AP), (3, L_AM), (4, L_M)):
            if mono[slot]:
                return letter
        return None

    def delta_mono(self, mono) -> TensorElement:
        hit = self._delta_cache.get(mono)
        if hit is None:
            g = self._first_letter(mono)
            if g is None:
                hit = self.alg.tensor_unit(2)
            else:
                rest = _dec_letter(mono, g)
                hit = self.images[LETTER_NAMES[g]] * self.delta_mono(rest)
            self._delta_cache[mono] = hit
        return hit

    def delta(self, e: Element) -> TensorElement:
        out = self.alg.tensor_zero(2)
        for mono, c in e.terms.items():
            out = out + self.delta_mono(mono).scale(c)
        return out

    def antipode_mono(self, mono) -> Element:
        hit = self._antipode_cache.get(mono)
        if hit is None:
            g = _top_letter(mono)
            if g is None:
                hit = self.alg.one()
            else:
                rest = _dec_letter(mono, g)
                hit = self.antipode[LETTER_NAMES[g]] * self.antipode_mono(rest)
            self._antipode_cache[mono] = hit
        return hit

    def antipode_of(self, e: Element) -> Element:
        out = self.alg.zero()
        for mono, c in e.terms.items():
            out = out + self.antipode_mono(mono).scale(c)
        return out


_cache: dict = {}


def fun_presentation(key: str, order: int | None = None) -> FunPresentation:
    try:
        params, swaps_fn, r_fn = _FAMILY_DATA[key]
    except KeyError:
        raise UnknownFunFamily(f"unknown family {key!r}; choose from {FUN_KEYS}") from None
    got = _cache.get((key, order))
    if got is None:
        field = CoefficientField.get(*((params,) if isinstance(params, str) else params))
        alg = FunAlgebra(field, swaps_fn(field), order, f"Fun-{key}")
        got = _cache[(key, order)] = FunPresentation(key, alg, RMatrixSkew(field, r_fn(field)))
    return got


# -- axiom checks --------------------------------------------------------


def fun_homomorphism_check(f: FunPresentation):
    """Delta(xy) = Delta(x)Delta(y) for all 36 letter pairs."""
    residuals = []
    for i in range(6):
        for j in range(6):
            lhs = f.delta(f.alg.letter(i) * f.alg.letter(j))
            rhs = f.images[LETTER_NAMES[i]] * f.images[LETTER_NAMES[j]]
            diff = lhs - rhs
            if not diff.is_zero:
                residuals.append((f"{LETTER_NAMES[i]}*{LETTER_NAMES[j]}", diff))
    return not residuals, residuals


def fun_coassociativity_check(f: FunPresentation):
    residuals = []
    for name in LETTER_NAMES:
        t = f.images[name]
        diff = apply_slot_map(t, 0, f.delta_mono) - apply_slot_map(t, 1, f.delta_mono)
        if not diff.is_zero:
            residuals.append((name, diff))
    return not residuals, residuals


def fun_counit_check(f: FunPresentation):
    residuals = []
    for i, name in enumerate(LETTER_NAMES):
        t = f.images[name]
        g = f.alg.letter(i)
        left = t.contract(0, f.counit_scalar)
        right = t.contract(1, f.counit_scalar)
        if left != g:
            residuals.append((f"eps-left {name}", left - g))
        if right != g:
            residuals.append((f"eps-right {name}", right - g))
    return not residuals, residuals


def fun_antipode_check(f: FunPresentation):
    """m(gamma x id)Delta(x) = eps(x) 1 = m(id x gamma)Delta(x) per letter."""
    residuals = []
    for name in LETTER_NAMES:
        t = f.images[name]
        want = f.alg.one().scale(f.counit[name])
        left = t.fold_slots(maps=[f.antipode_mono, None]) - want
        right = t.fold_slots(maps=[None, f.antipode_mono]) - want
        if not left.is_zero:
            residuals.append((f"gamma-left {name}", left))
        if not right.is_zero:
            residuals.append((f"gamma-right {name}", right))
    return not residuals, residuals


def group_law_check(f: FunPresentation):
    """The classical limit of the coproduct is the group-law pullback."""
    ring = GroupRing(f.field, sites=2)
    law = group_compose(site_coords(ring, 0), site_coords(ring, 1))
    residuals = []
    for name in LETTER_NAMES:
        got = ring.element(dict(f.images[name].h_part(0).terms))
        diff = got - law[name]
        if not diff.is_zero:
            residuals.append((name, diff))
    return not residuals, residuals


def semiclassical_check(f: FunPresentation):
    """Order-h part of every coordinate commutator equals the Sklyanin
    bracket for the family's classical r-matrix."""
    ring = GroupRing(f.field)
    coords = {name: ring.coord(name) for name in FUN_NAMES}
    residuals = []
    for i in range(5):
        for j in range(i + 1, 5):
            a, b = FUN_NAMES[i], FUN_NAMES[j]
            ca = f.alg.coord(a)
            cb = f.alg.coord(b)
            quantum = (ca * cb - cb * ca).h_part(1)
            classical = sklyanin_bracket(f.r, coords[a], coords[b])
            # GroupRing keys are per-site tuples even with one site.
            diff = ring.element({(m,): c for m, c in quantum.terms.items()}) - classical
            if not diff.is_zero:
                residuals.append((f"[{a},{b}]", diff))
    return not residuals, residuals


FUN_CHECKS = {
    "homomorphism": fun_homomorphism_check,
    "coassociativity": fun_coassociativity_check,
    "counit": fun_counit_check,
    "antipode": fun_antipode_check,
    "group-law": group_law_check,
    "semiclassical": semiclassical_check,
}


def fun_hopf_check(f: FunPresentation, names=None) -> dict:
    """Run the named checks (default all); map name -> (ok, residuals)."""
    names = tuple(FUN_CHECKS) if names is None else tuple(names)
    return {name: FUN_CHECKS[name](f) for name in names}
