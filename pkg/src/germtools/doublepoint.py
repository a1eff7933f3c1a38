"""Double point curves of corank-1 germs and their branch structure.

For a germ (x, f2, f3) the double point data is carried by the two divided
differences P = (f2(x,y)-f2(x,y'))/(y-y') and Q likewise for f3; eliminating
y' by a resultant produces the plane curve equation lambda whose zero set is
the double point curve D(f).  Finite determinacy is read off lambda: it must
be nonzero, squarefree, and have finite Milnor number at the origin.

For quasihomogeneous lambda the curve splits into at most one x-axis factor,
at most one y-axis factor and conic-type branches y^a = c x^b.  Complex
branch constants are never materialised: a squarefree rational polynomial
B(t) (t standing for y^a against x^b = 1) represents a whole class of
branches, and whether f2 or f3 vanishes along the class is a gcd condition
uniform across its roots.  Restriction degrees, identification/fold labels
and image orders all follow from monomial arithmetic on those classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd as int_gcd

from .exactpoly import (
    MPoly,
    divexact,
    is_associate,
    monic,
    qh_check,
    resultant,
    squarefree_part,
    divided_difference,
)
from .germs import MapGerm, NormalFormInfo, QhType, corank, is_finite
from .localalg import Colength, milnor_number

DEFAULT_MAX_ORDER = 64


class InconsistencyError(RuntimeError):
    """A cross-check that the underlying theory guarantees has failed."""


class FDVerdict(str, Enum):
    FD = "finitely-determined"
    NOT_FINITE = "not-finite"
    NOT_GENERICALLY_ONE_TO_ONE = "not-generically-1-1"
    NON_REDUCED_D = "non-reduced-double-curve"
    UNSUPPORTED_CORANK = "unsupported-corank-2"
    UNSUPPORTED_SHAPE = "unsupported-shape"


@dataclass(frozen=True)
class DoubleLift:
    """Divided differences (P, Q) in (x, y, y') presenting the double point
    locus over the source."""

    P: MPoly
    Q: MPoly


@dataclass(frozen=True)
class FDResult:
    verdict: FDVerdict
    lam: MPoly | None = None
    mu_d: Colength | None = None

    @property
    def finitely_determined(self) -> bool:
        return self.verdict is FDVerdict.FD


YPRIME = "y'"


def double_point_lift(f: MapGerm) -> DoubleLift:
    """Divided differences of f2 and f3 (requires first coordinate = x)."""
    x, y = f.vars
    if f.f1 != MPoly.var(f.vars, x):
        raise ValueError("double point lift needs the first coordinate to be x")
    P = divided_difference(f.f2, y, YPRIME)
    Q = divided_difference(f.f3, y, YPRIME)
    return DoubleLift(P, Q)


def double_point_curve(f: MapGerm) -> MPoly:
    """Defining equation of D(f): the y'-resultant of the lift, primitive.

    The zero polynomial is returned when the germ fails to be generically
    one-to-one (shared factor in the lift); callers treat that as a verdict,
    not an exception.
    """
    lift = double_point_lift(f)
    if (not lift.P.is_zero and lift.P.is_constant()) \
            or (not lift.Q.is_zero and lift.Q.is_constant()):
        # one coordinate already separates all pairs: no double points
        return MPoly.const(f.vars, 1)
    if lift.P.is_zero or lift.Q.is_zero:
        return MPoly.zero(f.vars)
    lam = resultant(lift.P, lift.Q, YPRIME)
    return lam


def fd_analysis(f: MapGerm, max_order: int = DEFAULT_MAX_ORDER) -> FDResult:
    """Full finite-determinacy analysis.

    Verdict logic: corank 2 and non-(x,...) shapes are refused; then the
    germ must be finite, the double point equation nonzero, squarefree and
    with finite Milnor number.  Each failure mode is its own verdict so the
    report layer can show what broke.
    """
    cr = corank(f)
    if cr == 2:
        return FDResult(FDVerdict.UNSUPPORTED_CORANK)
    x = f.vars[0]
    if f.f1 != MPoly.var(f.vars, x):
        return FDResult(FDVerdict.UNSUPPORTED_SHAPE)
    if not is_finite(f, max_order=max_order):
        return FDResult(FDVerdict.NOT_FINITE)
    lam = double_point_curve(f)
    if lam.is_zero:
        return FDResult(FDVerdict.NOT_GENERICALLY_ONE_TO_ONE)
    if lam.is_constant():
        # empty double point curve: a stable embedding
        return FDResult(FDVerdict.FD, lam=lam, mu_d=Colength(0, max_order))
    if squarefree_part(lam).total_degree() != lam.total_degree():
        return FDResult(FDVerdict.NON_REDUCED_D, lam=lam)
    mu = milnor_number(lam, max_order=max_order)
    if not mu.finite:
        return FDResult(FDVerdict.NON_REDUCED_D, lam=lam, mu_d=mu)
    return FDResult(FDVerdict.FD, lam=lam, mu_d=mu)


def is_finitely_determined(f: MapGerm, max_order: int = DEFAULT_MAX_ORDER) -> FDVerdict:
    return fd_analysis(f, max_order=max_order).verdict


# -- branch decomposition --------------------------------------------------------


class BranchKind(str, Enum):
    X_AXIS = "x-axis"
    Y_AXIS = "y-axis"
    CONIC = "conic"


class Classification(str, Enum):
    IDENTIFICATION = "identification"
    FOLD = "fold"
    INVALID = "invalid"


@dataclass(frozen=True)
class Branch:
    """One rational class of irreducible components of D(f).

    A conic class stands for deg(class_poly) complex branches y^a = c x^b,
    c running over the roots; all of them share the vanishing pattern, the
    restriction degree and the image order, which is why no root is ever
    needed numerically.
    """

    kind: BranchKind
    factor: MPoly                  # 2-variable factor of lambda, monic
    class_poly: MPoly | None       # squarefree polynomial in t (conic classes)
    count: int                     # number of complex branches in the class
    vanishing_f2: bool             # does f2 vanish identically on the class
    vanishing_f3: bool
    degree: int                    # generic degree of f restricted to a branch
    classification: Classification
    min_order: int                 # order of l o (branch parametrisation), l generic
    branch_mu: int                 # Milnor number of each single complex branch

    def describe(self) -> str:
        return f"{self.kind.value} {self.factor} x{self.count}: {self.classification.value}"


@dataclass(frozen=True)
class BranchSet:
    s: int
    v: int
    weights: tuple[int, int]
    lam: MPoly
    branches: tuple[Branch, ...]

    @property
    def r_i(self) -> int:
        return sum(b.count for b in self.branches
                   if b.classification is Classification.IDENTIFICATION)

    @property
    def r_f(self) -> int:
        return sum(b.count for b in self.branches
                   if b.classification is Classification.FOLD)

    @property
    def total_branches(self) -> int:
        return sum(b.count for b in self.branches)

    def conic_classes(self) -> list[Branch]:
        return [b for b in self.branches if b.kind is BranchKind.CONIC]


_TVAR = ("t",)


def _conic_tpoly(p: MPoly, a: int, b: int) -> MPoly:
    """Class polynomial in t of the conic part of a quasihomogeneous p.

    Axis powers are stripped first; the remaining factor has y-exponents in
    multiples of a and x-exponents in multiples of b, so substituting
    x^b = 1, y^a = t is exact.  Raises when the shape is violated.
    """
    if p.is_zero:
        raise ValueError("zero polynomial has no conic part")
    e_min = min(e[0] for e in p.terms)
    l_min = min(e[1] for e in p.terms)
    terms = {}
    for (i, j), c in p.terms.items():
        i -= e_min
        j -= l_min
        if j % a != 0 or i % b != 0:
            raise InconsistencyError(
                f"residual factor of {p} is not a polynomial in y^{a} against x^{b}")
        terms[(j // a,)] = c
    return MPoly(_TVAR, terms)


def _conic_to_factor(tpoly: MPoly, a: int, b: int, vars: tuple[str, str]) -> MPoly:
    k = tpoly.deg_in("t")
    terms = {}
    for (j,), c in tpoly.terms.items():
        terms[(b * (k - j), a * j)] = c
    return monic(MPoly(vars, terms))


def _y_order(p: MPoly) -> int | None:
    """Order in y of p(0, y); None when p vanishes identically on x = 0."""
    exps = [e[1] for e in p.terms if e[0] == 0]
    return min(exps) if exps else None


def _gcd_many(values: list[int]) -> int:
    g = 0
    for v in values:
        g = int_gcd(g, v)
    return g


def _classify_degree(degree: int) -> Classification:
    if degree == 1:
        return Classification.IDENTIFICATION
    if degree == 2:
        return Classification.FOLD
    return Classification.INVALID


def branch_decompose(lam: MPoly, qh: QhType, f: MapGerm) -> BranchSet:
    """Split a squarefree quasihomogeneous double point equation into
    axis and conic branch classes, classified against f.

    Conic classes are split by gcd against the class polynomials of f2 and
    f3 before classification, so every class has a uniform vanishing
    pattern by construction.
    """
    a, b = qh.a, qh.b
    vars2 = lam.vars
    if qh_check(lam, (a, b)) is None:
        raise ValueError(f"{lam} is not quasihomogeneous for weights ({a},{b})")
    xpoly = MPoly.var(vars2, vars2[0])
    ypoly = MPoly.var(vars2, vars2[1])

    rest = lam
    s = 0
    while min(e[0] for e in rest.terms) > 0:
        rest = divexact(rest, xpoly)
        s += 1
    v = 0
    while min(e[1] for e in rest.terms) > 0:
        rest = divexact(rest, ypoly)
        v += 1
    if s > 1 or v > 1:
        raise InconsistencyError("axis factor with multiplicity: input was not squarefree")

    d2 = qh.d2
    d3 = qh.d3
    branches: list[Branch] = []

    if s:
        n_ord = _y_order(f.f2)
        m_ord = _y_order(f.f3)
        active = [o for o in (n_ord, m_ord) if o is not None]
        if not active:
            raise InconsistencyError("x-axis branch maps to the origin: germ not finite")
        degree = _gcd_many(active)
        branches.append(Branch(
            kind=BranchKind.X_AXIS, factor=xpoly, class_poly=None, count=1,
            vanishing_f2=n_ord is None, vanishing_f3=m_ord is None,
            degree=degree, classification=_classify_degree(degree),
            min_order=min(active), branch_mu=0))
    if v:
        branches.append(Branch(
            kind=BranchKind.Y_AXIS, factor=ypoly, class_poly=None, count=1,
            vanishing_f2=False, vanishing_f3=False,
            degree=1, classification=Classification.IDENTIFICATION,
            min_order=1, branch_mu=0))

    if not rest.is_constant():
        B = monic(_conic_tpoly(rest, a, b))
        B2 = _f_branch_tpoly(f.f2, a, b)
        B3 = _f_branch_tpoly(f.f3, a, b)
        conic_mu = (a - 1) * (b - 1)

        def t_gcd(u: MPoly, w: MPoly) -> MPoly:
            return monic(_t_gcd(u, w))

        pieces: list[tuple[MPoly, bool, bool]] = []
        g2 = t_gcd(B, B2)
        for piece, van2 in ((g2, True), (monic(divexact(B, g2)), False)):
            if piece.is_constant():
                continue
            g3 = t_gcd(piece, B3)
            for sub, van3 in ((g3, True), (monic(divexact(piece, g3)), False)):
                if sub.is_constant():
                    continue
                pieces.append((sub, van2, van3))

        for sub, van2, van3 in pieces:
            if van2 and van3:
                degree = a
                min_order = a
            else:
                active = [a]
                if not van2:
                    active.append(d2)
                if not van3:
                    active.append(d3)
                degree = _gcd_many(active)
                min_order = min(active)
            branches.append(Branch(
                kind=BranchKind.CONIC,
                factor=_conic_to_factor(sub, a, b, vars2),
                class_poly=sub, count=sub.deg_in("t"),
                vanishing_f2=van2, vanishing_f3=van3,
                degree=degree, classification=_classify_degree(degree),
                min_order=min_order, branch_mu=conic_mu))

    product = MPoly.const(vars2, 1)
    if s:
        product = product * xpoly
    if v:
        product = product * ypoly
    for br in branches:
        if br.kind is BranchKind.CONIC:
            product = product * br.factor
    if not is_associate(product, lam):
        raise InconsistencyError("branch factors do not multiply back to the curve equation")

    return BranchSet(s=s, v=v, weights=(a, b), lam=lam, branches=tuple(branches))


def _f_branch_tpoly(comp: MPoly, a: int, b: int) -> MPoly:
    """Squarefree class polynomial of the conic factors of a coordinate
    function (1 when there are none)."""
    if comp.is_zero:
        return MPoly.const(_TVAR, 1)
    t = _conic_tpoly(comp, a, b)
    if t.is_constant():
        return MPoly.const(_TVAR, 1)
    return monic(squarefree_part(t))


def _t_gcd(u: MPoly, w: MPoly) -> MPoly:
    from .exactpoly import gcd_poly
    return gcd_poly(u, w)


def classify_branch(br: Branch, f: MapGerm, qh: QhType) -> Classification:
    """Recompute the identification/fold label of one branch class from
    scratch (restriction degree via monomial parametrisations)."""
    if br.kind is BranchKind.Y_AXIS:
        return Classification.IDENTIFICATION
    if br.kind is BranchKind.X_AXIS:
        active = [o for o in (_y_order(f.f2), _y_order(f.f3)) if o is not None]
        if not active:
            raise InconsistencyError("x-axis branch maps to the origin")
        return _classify_degree(_gcd_many(active))
    if br.vanishing_f2 and br.vanishing_f3:
        return _classify_degree(qh.a)
    active = [qh.a]
    if not br.vanishing_f2:
        active.append(qh.d2)
    if not br.vanishing_f3:
        active.append(qh.d3)
    return _classify_degree(_gcd_many(active))


def count_components(f: MapGerm, max_order: int = DEFAULT_MAX_ORDER) -> tuple[int, int]:
    """(identification, fold) complex branch counts of D(f) by direct
    classification.  Requires an FD quasihomogeneous corank-1 input."""
    fd = fd_analysis(f, max_order=max_order)
    if not fd.finitely_determined:
        raise ValueError(f"germ is not finitely determined: {fd.verdict.value}")
    qh = _require_qh(f)
    bs = branch_decompose(fd.lam, qh, f)
    _check_valid(bs)
    return bs.r_i, bs.r_f


def _require_qh(f: MapGerm) -> QhType:
    from .germs import infer_qh_type
    qh = infer_qh_type(f)
    if qh is None:
        raise ValueError("germ is not quasihomogeneous")
    return qh


def _check_valid(bs: BranchSet) -> None:
    for br in bs.branches:
        if br.classification is Classification.INVALID:
            raise InconsistencyError(
                f"branch {br.factor} has restriction degree {br.degree} > 2; "
                "finite determinacy is violated")


# -- closed-form component counts ---------------------------------------------------


@dataclass(frozen=True)
class SVector:
    s1: int
    s2: int
    s3: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.s1, self.s2, self.s3)

    @property
    def valid(self) -> bool:
        vals = self.as_tuple()
        return all(x in (0, 1) for x in vals) and sum(vals) <= 1


def s_vector(nf: NormalFormInfo, qh: QhType) -> SVector | None:
    """gcd defects controlling the fold components (normal form, mult >= 3)."""
    if nf.m is None or nf.beta == 0:
        return None
    a = qh.a
    return SVector(int_gcd(nf.n, nf.m) - 1, int_gcd(a, nf.n) - 1, int_gcd(a, nf.m) - 1)


@dataclass(frozen=True)
class TableCounts:
    applicable: bool
    reason: str | None = None
    rule: str | None = None
    r_i: int | None = None
    r_f: int | None = None
    r_total: int | None = None          # component count from the product formula
    svec: SVector | None = None


def _exact_div(num: int, den: int, what: str) -> int:
    if num % den != 0:
        raise InconsistencyError(f"{what} = {num}/{den} is not an integer")
    return num // den


def table_r(nf: NormalFormInfo, qh: QhType) -> TableCounts:
    """Closed-form (r_i, r_f) from the weights-and-degrees tables.

    Multiplicity 2 needs the (x, y^2, y*h(x,y^2)) presentation and is
    decided by the parity of a together with the x-exponent of h;
    multiplicity >= 3 uses the gcd vector (s1, s2, s3).  The total count
    from the product formula is returned alongside as a cross-check.
    """
    a, b = qh.a, qh.b
    n = nf.n
    if n == 2:
        if not nf.p.is_zero:
            return TableCounts(False, reason="second coordinate is not exactly y^2")
        vars2 = nf.p.vars
        f3 = nf.q * MPoly.var(vars2, vars2[0])
        if nf.beta != 0 and nf.m is not None:
            f3 = f3 + (MPoly.var(vars2, vars2[1]) ** nf.m).scale(nf.beta)
        if f3.is_zero or any(e[1] % 2 == 0 for e in f3.terms):
            return TableCounts(False, reason="third coordinate is not of the form y*h(x,y^2)")
        h = divexact(f3, MPoly.var(vars2, vars2[1]))
        s = min(e[0] for e in h.terms)
        if s > 1:
            return TableCounts(False, reason="repeated x factor in h: not finitely determined")
        k = _exact_div(qh.d3 - s * a - b, a * b, "conic factor count")
        if a % 2 == 0:
            r_f, r_i = k + s, 0
        else:
            r_f, r_i = s, k
        return TableCounts(True, rule=f"multiplicity 2, a {'even' if a % 2 == 0 else 'odd'}, s={s}",
                           r_i=r_i, r_f=r_f, r_total=r_i + r_f)

    svec = s_vector(nf, qh)
    if svec is None:
        return TableCounts(False, reason="no pure y term in the third coordinate; "
                                         "table entry undefined (flagged for review)")
    if not svec.valid:
        return TableCounts(False, reason=f"gcd vector {svec.as_tuple()} out of range; "
                                         "incompatible with finite determinacy", svec=svec)
    m = nf.m
    assert m is not None
    if svec.s1 == 1:
        r_f = 1
        r_i = _exact_div((n - 1) * (m - 1), a, "identification count") - 1
        rule = "s1=1"
    elif svec.s2 == 1:
        r_f = _exact_div(m - 1, a, "fold count")
        r_i = _exact_div((n - 2) * (m - 1), a, "identification count")
        rule = "s2=1"
    elif svec.s3 == 1:
        r_f = _exact_div(n - 1, a, "fold count")
        r_i = _exact_div((n - 1) * (m - 2), a, "identification count")
        rule = "s3=1"
    else:
        r_f = 0
        r_i = _exact_div((n - 1) * (m - 1), a, "identification count")
        rule = "s=0"
    r_total = _exact_div(b * (n - 1) * (m - 1) - svec.s1 * a, a * b, "component count") + svec.s1
    return TableCounts(True, rule=rule, r_i=r_i, r_f=r_f, r_total=r_total, svec=svec)


FOLD_PLANES = {"s1": "X=0", "s2": "Z=0", "s3": "Y=0"}


def fold_image_plane(f: MapGerm, bs: BranchSet, svec: SVector | None = None) -> str:
    """The unique coordinate plane containing the image of every fold
    component ("no-folds" when there are none).

    Derived from where f2/f3 vanish along the fold branches and checked for
    uniqueness; when the gcd vector is supplied the two routes must agree.
    """
    folds = [br for br in bs.branches if br.classification is Classification.FOLD]
    if not folds:
        return "no-folds"
    plane_sets: list[set[str]] = []
    for br in folds:
        planes: set[str] = set()
        if br.kind is BranchKind.X_AXIS:
            planes.add("X=0")
            if br.vanishing_f2:
                planes.add("Y=0")
            if br.vanishing_f3:
                planes.add("Z=0")
        else:
            if br.vanishing_f2:
                planes.add("Y=0")
            if br.vanishing_f3:
                planes.add("Z=0")
        if not planes:
            raise InconsistencyError(
                f"fold branch {br.factor} has an image in no coordinate plane")
        plane_sets.append(planes)
    common = set.intersection(*plane_sets)
    if not common:
        raise InconsistencyError("fold branches map into different coordinate planes")
    if svec is not None and svec.valid and sum(svec.as_tuple()) == 1:
        expected = FOLD_PLANES["s1" if svec.s1 else "s2" if svec.s2 else "s3"]
        if expected not in common:
            raise InconsistencyError(
                f"gcd vector predicts fold images in {expected}, "
                f"branch data gives {sorted(common)}")
        return expected
    if len(common) > 1:
        raise InconsistencyError(
            f"fold image plane is not unique: {sorted(common)}")
    return common.pop()
