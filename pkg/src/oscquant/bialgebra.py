"""Coboundary Lie bialgebra structures on the oscillator algebra.

A skew r-matrix is a six-coefficient element of the wedge square,

    r = c1 A^Ap + c2 A^Am + c3 A^M + c4 Ap^Am + c5 Ap^M + c6 Am^M,

with X^Y = X(x)Y - Y(x)X.  The Schouten bracket [[r,r]] measures the failure
of the classical Yang-Baxter equation; the modified CYBE only demands that
[[r,r]] be invariant under the adjoint action, and its solutions split into
three families by which of c1, c2 can be nonzero:

    Iplus  : c1 != 0, forcing c2 = 0 and c4 = -c3
    Iminus : c2 != 0, forcing c1 = 0 and c4 = c3
    II     : c1 = c2 = 0

each in a ``standard`` ([[r,r]] != 0) and a ``nonstandard`` ([[r,r]] = 0)
flavor.  The cocommutator of a coboundary bialgebra is
delta(X) = [X(x)1 + 1(x)X, r]; this module computes all of it from r alone
and cross-checks the published family table against the computation.

Symbolic zero-testing of free parameters is a modeling choice, not math, so
``classify`` takes the set of parameters the caller declares nonzero and
refuses mixed strata instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .algebra import (
    A,
    AM,
    AP,
    GEN_MONOS,
    M,
    UNIT_MONO,
    Algebra,
    Element,
    TensorElement,
    embed,
    mono_degree,
    tensor,
    tensor_adjoint,
)
from .coeffs import Coefficient, CoefficientField
from .expr import parse_coefficient

GEN_LABELS = ("A", "Ap", "Am", "M")
GEN_BY_LABEL = {name: i for i, name in enumerate(GEN_LABELS)}

# The six wedge-basis slots, in the fixed order the coefficients c1..c6 refer to.
WEDGE_SLOTS = ((A, AP), (A, AM), (A, M), (AP, AM), (AP, M), (AM, M))
SLOT_NAMES = ("c1", "c2", "c3", "c4", "c5", "c6")

# Independent three-fold wedges, index-sorted.
THREE_WEDGES = ((A, AP, AM), (A, AP, M), (A, AM, M), (AP, AM, M))


def wedge(x: Element, y: Element) -> TensorElement:
    """x^y = x(x)y - y(x)x (no 1/2 factor)."""
    return tensor(x, y) - tensor(y, x)


def wedge3(x: Element, y: Element, z: Element) -> TensorElement:
    """Full six-term antisymmetrization of x(x)y(x)z."""
    return (
        tensor(x, y, z)
        + tensor(y, z, x)
        + tensor(z, x, y)
        - tensor(x, z, y)
        - tensor(y, x, z)
        - tensor(z, y, x)
    )


def wedge_name(slots) -> str:
    return "^".join(GEN_LABELS[i] for i in slots)


class NotCoboundary(Exception):
    """r fails the modified CYBE; carries the violated residual coefficients."""

    def __init__(self, residuals):
        self.residuals = residuals
        parts = ", ".join(f"{name}: {coeff!r}" for name, coeff in residuals)
        super().__init__(f"modified CYBE violated ({parts})")


class AmbiguousStratum(ValueError):
    """A free parameter's zeroness decides the class but was not declared."""


class RMatrixSkew:
    """The six-coefficient skew r-matrix, with its tensor form on demand."""

    def __init__(self, field: CoefficientField, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != 6:
            raise ValueError("need exactly six coefficients c1..c6")
        self.field = field
        self.c = tuple(
            c if isinstance(c, Coefficient) else field.rational(c) for c in coeffs
        )
        self._tensor = None

    def __repr__(self):
        bits = [
            f"{c!r}*{wedge_name(slots)}"
            for c, slots in zip(self.c, WEDGE_SLOTS)
            if not c.is_zero
        ]
        return " + ".join(bits) if bits else "0"

    def __eq__(self, other):
        return isinstance(other, RMatrixSkew) and self.field is other.field and self.c == other.c

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.c)

    def algebra(self) -> Algebra:
        return Algebra.classical(self.field)

    def as_tensor(self) -> TensorElement:
        if self._tensor is None:
            alg = self.algebra()
            t = alg.tensor_zero(2)
            for c, (i, j) in zip(self.c, WEDGE_SLOTS):
                if not c.is_zero:
                    t = t + wedge(alg.gen(i), alg.gen(j)).scale(c)
            self._tensor = t
        return self._tensor

    def map_coeffs(self, fn) -> "RMatrixSkew":
        return RMatrixSkew(self.field, tuple(fn(c) for c in self.c))


def generic_r() -> RMatrixSkew:
    """The six-parameter ansatz with free symbolic coefficients c1..c6."""
    field = CoefficientField.get(*SLOT_NAMES)
    return RMatrixSkew(field, tuple(field.param(n) for n in SLOT_NAMES))


def schouten(r: RMatrixSkew) -> TensorElement:
    """[[r,r]] = [r12,r13] + [r12,r23] + [r13,r23], normal-ordered."""
    t = r.as_tensor()
    r12 = embed(t, (0, 1), 3)
    r13 = embed(t, (0, 2), 3)
    r23 = embed(t, (1, 2), 3)
    out = r12.commutator(r13) + r12.commutator(r23) + r13.commutator(r23)
    if out.max_slot_degree() > 1:
        raise AssertionError("Schouten bracket left the Lie algebra")
    return out


def three_wedge_coefficients(t: TensorElement) -> dict:
    """Coefficients of a totally antisymmetric arity-3 tensor on the wedge basis."""
    out = {}
    for slots in THREE_WEDGES:
        key = tuple(GEN_MONOS[i] for i in slots)
        c = t.terms.get(key, t.alg.field.zero)
        if not c.is_zero:
            out[slots] = c
    return out


def mcybe_check(r: RMatrixSkew):
    """(ok, residuals): ad-invariance of [[r,r]] under all four generators.

    Residuals are the non-invariant wedge components of [[r,r]] (everything
    except the Ap^Am^M direction), named by their wedge slot.
    """
    br = schouten(r)
    alg = r.algebra()
    invariant = all(tensor_adjoint(alg.gen(i), br).is_zero for i in range(4))
    residuals = [
        (wedge_name(slots), c)
        for slots, c in three_wedge_coefficients(br).items()
        if slots != (AP, AM, M)
    ]
    # Cross-validation: the component test and the adjoint test must agree.
    if invariant != (not residuals):
        raise AssertionError("ad-invariance test disagrees with wedge-component test")
    return invariant, residuals


def _zeroness(c: Coefficient, nonzero: frozenset) -> str:
    """'zero' | 'nonzero' | 'unknown' for a coefficient, given declarations.

    A coefficient counts as nonzero when it is a single monomial in declared-
    nonzero parameters (times a rational).  Anything else with free symbols
    is 'unknown': its vanishing is a stratum choice the caller must make.
    """
    if c.is_zero:
        return "zero"
    num_terms = c.num.terms()
    if len(num_terms) != 1:
        return "unknown"
    mono, _ = num_terms[0]
    names = ("h",) + c.field.params
    for name, e in zip(names, mono):
        if e and name != "h" and name not in nonzero:
            return "unknown"
    return "nonzero"


@dataclass(frozen=True)
class Classification:
    family: str  # Iplus | Iminus | II
    flavor: str  # standard | nonstandard
    trivial: bool  # r == 0 (all cocommutators vanish)
    schouten_coeff: Coefficient  # coefficient of Ap^Am^M in [[r,r]]


def classify(r: RMatrixSkew, nonzero=()) -> Classification:
    """Place an mCYBE solution into its family and flavor.

    ``nonzero`` declares which free parameters are nonzero.  Raises
    NotCoboundary if the mCYBE fails, AmbiguousStratum if the deciding
    coefficients have undeclared free parameters.
    """
    nonzero = frozenset(nonzero)
    ok, residuals = mcybe_check(r)
    if not ok:
        raise NotCoboundary(residuals)
    c1, c2 = r.c[0], r.c[1]
    z1, z2 = _zeroness(c1, nonzero), _zeroness(c2, nonzero)
    if "unknown" in (z1, z2):
        which = "c1" if z1 == "unknown" else "c2"
        raise AmbiguousStratum(
            f"zeroness of {which} undecided; declare its parameters nonzero or set them to zero"
        )
    if z1 == "nonzero":
        family = "Iplus"
    elif z2 == "nonzero":
        family = "Iminus"
    else:
        family = "II"
    br = three_wedge_coefficients(schouten(r))
    sc = br.get((AP, AM, M), r.field.zero)
    flavor = "nonstandard" if not br else "standard"
    return Classification(family=family, flavor=flavor, trivial=r.is_zero, schouten_coeff=sc)


def cocommutator(r: RMatrixSkew, gen: int) -> TensorElement:
    """delta(X) = [X(x)1 + 1(x)X, r]."""
    alg = r.algebra()
    return tensor_adjoint(alg.gen(gen), r.as_tensor())


def cocommutator_map(r: RMatrixSkew) -> dict:
    return {GEN_LABELS[i]: cocommutator(r, i) for i in range(4)}


def _delta_of_mono(r: RMatrixSkew):
    """The cocommutator as a map on degree-<=1 monomials (0 on the unit)."""
    alg = r.algebra()

    def delta(mono):
        if mono == UNIT_MONO:
            return alg.tensor_zero(2)
        if mono_degree(mono) != 1:
            raise ValueError(f"cocommutator of non-Lie monomial {mono}")
        return cocommutator(r, mono.index(1))

    return delta


def _delta_of_element(r: RMatrixSkew, e: Element) -> TensorElement:
    delta = _delta_of_mono(r)
    out = e.alg.tensor_zero(2)
    for mono, c in e.terms.items():
        out = out + delta(mono).scale(c)
    return out


def cocycle_check(r: RMatrixSkew):
    """1-cocycle law: delta([X,Y]) = ad_X delta(Y) - ad_Y delta(X), all pairs."""
    alg = r.algebra()
    residuals = []
    for i in range(4):
        for j in range(i + 1, 4):
            x, y = alg.gen(i), alg.gen(j)
            lhs = _delta_of_element(r, x.commutator(y))
            rhs = tensor_adjoint(x, _delta_of_element(r, y)) - tensor_adjoint(
                y, _delta_of_element(r, x)
            )
            if lhs != rhs:
                residuals.append((GEN_LABELS[i], GEN_LABELS[j], lhs - rhs))
    return not residuals, residuals


def apply_slot_map(t: TensorElement, pos: int, f) -> TensorElement:
    """Replace slot ``pos`` by the arity-2 image under f (mono -> tensor)."""
    alg = t.alg
    terms: dict = {}
    for key, c in t.terms.items():
        img = f(key[pos])
        for k2, c2 in img.terms.items():
            v = c * c2
            if alg.order is not None:
                v = v.truncate(alg.order)
            if v.is_zero:
                continue
            new_key = key[:pos] + k2 + key[pos + 1 :]
            prev = terms.get(new_key)
            v = v if prev is None else prev + v
            if v.is_zero:
                terms.pop(new_key, None)
            else:
                terms[new_key] = v
    return TensorElement(alg, t.arity + 1, terms)


def cojacobi_check(r: RMatrixSkew):
    """co-Jacobi: (1 + cyclic + cyclic^2)(delta(x)id)delta(X) = 0 for all X."""
    delta = _delta_of_mono(r)
    residuals = []
    for i in range(4):
        d2 = apply_slot_map(cocommutator(r, i), 0, delta)
        total = d2 + d2.permute((1, 2, 0)) + d2.permute((2, 0, 1))
        if not total.is_zero:
            residuals.append((GEN_LABELS[i], total))
    return not residuals, residuals


def ad_invariant_check(t: TensorElement) -> bool:
    """Is [X(x)1 + 1(x)X, t] = 0 for all four generators?"""
    if t.arity != 2:
        raise ValueError("invariance check is for arity-2 tensors")
    alg = t.alg
    return all(tensor_adjoint(alg.gen(i), t).is_zero for i in range(4))


def eta_element(field: CoefficientField, b1, b2) -> TensorElement:
    """The invariant symmetric element b1(A(x)M + M(x)A - Ap(x)Am - Am(x)Ap) + b2 M(x)M."""
    alg = Algebra.classical(field)
    a, ap, am, m = alg.gens()
    sym = tensor(a, m) + tensor(m, a) - tensor(ap, am) - tensor(am, ap)
    return sym.scale(b1) + tensor(m, m).scale(b2)


def invariant_basis(field: CoefficientField):
    """All ad-invariant elements of the tensor square, solved from scratch.

    Returns a basis (list of TensorElements); the known answer is the
    two-dimensional span of eta_element's two summands.
    """
    alg = Algebra.classical(field)
    unknown_keys = [(GEN_MONOS[i], GEN_MONOS[j]) for i in range(4) for j in range(4)]
    index = {k: n for n, k in enumerate(unknown_keys)}
    rows = []
    for g in range(4):
        # Action of gen g on each basis tensor, as rows of a 16-column system.
        columns = []
        for key in unknown_keys:
            basis_tensor = TensorElement(alg, 2, {key: field.one})
            columns.append(tensor_adjoint(alg.gen(g), basis_tensor))
        result_keys = sorted({k for col in columns for k in col.terms})
        for rk in result_keys:
            rows.append([col.terms.get(rk, field.zero) for col in columns])
    basis_vectors = linalg.nullspace(rows, len(unknown_keys), field)
    out = []
    for vec in basis_vectors:
        terms = {k: vec[index[k]] for k in unknown_keys if not vec[index[k]].is_zero}
        out.append(TensorElement(alg, 2, terms))
    return out


# -- the six published families ------------------------------------------


@dataclass(frozen=True)
class Family:
    """One row family of the classification: parameters and r-coefficients.

    ``coeff_exprs`` maps slot names c1..c6 to expressions in the family's
    parameters; unlisted slots are zero.  ``nonzero`` lists the parameters
    declared nonzero (those appearing in denominators or deciding the
    family), and ``flavor_condition`` renders the standard/nonstandard
    boundary for documentation.
    """

    key: str
    family: str
    flavor: str
    params: tuple
    nonzero: tuple
    coeff_exprs: dict
    flavor_condition: str

    def field(self) -> CoefficientField:
        return CoefficientField.get(*self.params)

    def r(self, marked: bool = True) -> RMatrixSkew:
        field = self.field()
        coeffs = []
        for name in SLOT_NAMES:
            text = self.coeff_exprs.get(name)
            c = field.zero if text is None else parse_coefficient(field, text)
            coeffs.append(c.scale_params() if marked else c)
        return RMatrixSkew(field, coeffs)

    def cocommutators(self, marked: bool = True) -> dict:
        return cocommutator_map(self.r(marked))

    def classification(self) -> Classification:
        return classify(self.r(marked=False), nonzero=self.nonzero)


FAMILIES = {
    f.key: f
    for f in (
        Family(
            key="Iplus-standard",
            family="Iplus",
            flavor="standard",
            params=("ap", "x", "bp", "yp"),
            nonzero=("ap",),
            coeff_exprs={"c1": "ap", "c3": "x", "c4": "-x", "c5": "bp", "c6": "yp"},
            flavor_condition="ap*yp - x^2 != 0",
        ),
        Family(
            key="Iplus-nonstandard",
            family="Iplus",
            flavor="nonstandard",
            params=("ap", "x", "bp"),
            nonzero=("ap",),
            coeff_exprs={"c1": "ap", "c3": "x", "c4": "-x", "c5": "bp", "c6": "x^2/ap"},
            flavor_condition="c6 = x^2/ap",
        ),
        Family(
            key="Iminus-standard",
            family="Iminus",
            flavor="standard",
            params=("am", "x", "bp", "yp"),
            nonzero=("am",),
            coeff_exprs={"c2": "am", "c3": "x", "c4": "x", "c5": "bp", "c6": "yp"},
            flavor_condition="am*bp - x^2 != 0",
        ),
        Family(
            key="Iminus-nonstandard",
            family="Iminus",
            flavor="nonstandard",
            params=("am", "x", "yp"),
            nonzero=("am",),
            coeff_exprs={"c2": "am", "c3": "x", "c4": "x", "c5": "x^2/am", "c6": "yp"},
            flavor_condition="c5 = x^2/am",
        ),
        Family(
            key="II-standard",
            family="II",
            flavor="standard",
            params=("x", "y", "bp", "yp"),
            nonzero=("y",),
            coeff_exprs={"c3": "x", "c4": "y", "c5": "bp", "c6": "yp"},
            flavor_condition="y != 0",
        ),
        Family(
            key="II-nonstandard",
            family="II",
            flavor="nonstandard",
            params=("x", "bp", "yp"),
            nonzero=(),
            coeff_exprs={"c3": "x", "c5": "bp", "c6": "yp"},
            flavor_condition="c4 = 0",
        ),
    )
}


@dataclass(frozen=True)
class TableIRow:
    key: str
    r: RMatrixSkew
    computed: dict  # generator label -> TensorElement (computed cocommutator)
    table: dict  # generator label -> TensorElement (transcribed table cell)
    match: bool


@lru_cache(maxsize=1)
def table_I() -> tuple:
    """Recompute the family cocommutator table and diff it against the fixture."""
    from . import fixtures

    data = fixtures.load("table_I")
    rows = []
    for key, fam in FAMILIES.items():
        cells = data[key]
        field = fam.field()
        alg = Algebra.classical(field)
        computed = fam.cocommutators(marked=False)
        table = {
            label: fixtures.wedge_tensor(alg, cells["delta"].get(label, []))
            for label in GEN_LABELS
        }
        r_table = fixtures.wedge_tensor(alg, cells["r"])
        match = r_table == fam.r(marked=False).as_tensor() and all(
            computed[label] == table[label] for label in GEN_LABELS
        )
        rows.append(TableIRow(key=key, r=fam.r(marked=False), computed=computed, table=table, match=match))
    return tuple(rows)
