"""Closed-form invariants and their independent oracles.

The cross-cap count C, the triple point count T and the codimension all
have weights-and-degrees formulas for quasihomogeneous finitely determined
germs; C additionally has a ramification-ideal oracle and the Milnor number
of the double point curve has a branch-data formula next to the colength
oracle.  Formula values are exact rationals: the formulas only promise
integers under the finite-determinacy hypothesis, and a non-integer value
is evidence against that hypothesis, so nothing is ever rounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .doublepoint import (
    BranchKind,
    BranchSet,
    Classification,
    FDVerdict,
    InconsistencyError,
    SVector,
    TableCounts,
    branch_decompose,
    fd_analysis,
    fold_image_plane,
    s_vector,
    table_r,
)
from .germs import (
    MapGerm,
    NormalFormInfo,
    QhType,
    check_normal_form,
    corank,
    image_multiplicity_direct,
    image_multiplicity_formula,
    infer_qh_type,
)
from .localalg import Colength, colength_local, milnor_from_branches
from .exactpoly import MPoly, qh_check

DEFAULT_MAX_ORDER = 64


def mond_C(t: QhType) -> Fraction:
    """Cross-cap count from weights and degrees (symmetric in the degrees)."""
    d1, d2, d3 = t.degrees
    a, b = t.a, t.b
    num = (d2 - a) * (d3 - b) + (d1 - b) * (d3 - b) + (d1 - a) * (d2 - a)
    return Fraction(num, a * b)


def mond_T(t: QhType) -> Fraction:
    """Triple point count from weights and degrees."""
    delta = t.delta
    eps = t.epsilon
    return (delta - eps) * (delta - 2 * eps) / Fraction(6 * t.a * t.b) + mond_C(t) / 3


def ae_codim(t: QhType, mu_d: int) -> Fraction:
    """Codimension from the Milnor number of the double curve, C and T."""
    return (Fraction(mu_d) - 4 * mond_T(t) + mond_C(t) - 1) / 2


def lambda_degree(t: QhType) -> Fraction:
    """Weighted degree of the double point equation: delta - epsilon."""
    return t.delta - t.epsilon


def mu_from_type(t: QhType) -> Fraction:
    """Milnor number forced by the type alone: the double point equation is
    quasihomogeneous of degree delta - epsilon, so mu = (d-a)(d-b)/(ab)."""
    d = lambda_degree(t)
    return (d - t.a) * (d - t.b) / Fraction(t.a * t.b)


def crosscap_oracle(f: MapGerm, max_order: int = DEFAULT_MAX_ORDER) -> Colength:
    """C as the colength of the ramification ideal (2x2 Jacobian minors)."""
    x, y = f.vars
    rows = [(c.derivative(x), c.derivative(y)) for c in f.components]
    minors = []
    for i in range(3):
        for j in range(i + 1, 3):
            m = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0]
            if not m.is_zero:
                minors.append(m)
    if not minors:
        return Colength(None, max_order)
    qh = infer_qh_type(f)
    return colength_local(minors, max_order=max_order,
                          weights=qh.weights if qh else None)


def pairwise_branch_intersections(bs: BranchSet) -> tuple[list[int], dict[tuple[int, int], int]]:
    """Branch Milnor numbers and pairwise intersection numbers of D(f)
    from the weighted branch table: two conic branches meet with
    multiplicity ab, a conic branch meets the x-axis with a and the y-axis
    with b, and the axes meet with 1."""
    a, b = bs.weights
    kinds: list[BranchKind] = []
    mus: list[int] = []
    for br in bs.branches:
        for _ in range(br.count):
            kinds.append(br.kind)
            mus.append(br.branch_mu)
    table = {
        frozenset((BranchKind.CONIC,)): a * b,
        frozenset((BranchKind.CONIC, BranchKind.X_AXIS)): a,
        frozenset((BranchKind.CONIC, BranchKind.Y_AXIS)): b,
        frozenset((BranchKind.X_AXIS, BranchKind.Y_AXIS)): 1,
    }
    pairwise: dict[tuple[int, int], int] = {}
    for i in range(len(kinds)):
        for j in range(i + 1, len(kinds)):
            pairwise[(i, j)] = table[frozenset((kinds[i], kinds[j]))]
    return mus, pairwise


def mu_d_from_branches(bs: BranchSet) -> int:
    """Milnor number of D(f) from branch data alone (no colength)."""
    mus, pairwise = pairwise_branch_intersections(bs)
    return milnor_from_branches(mus, pairwise)


def intersection_multiset(bs: BranchSet) -> tuple[int, ...]:
    """Sorted multiset of pairwise branch intersection numbers of D(f)."""
    _, pairwise = pairwise_branch_intersections(bs)
    return tuple(sorted(pairwise.values()))


@dataclass
class InvariantReport:
    """Everything the invariant pipeline knows about one germ.

    ``inconsistencies`` are violated cross-checks (dual paths disagreeing,
    non-integral formula values under a finite-determinacy claim);
    ``notes`` are expected caveats (hypothesis failures, unsupported
    shapes).  Optional fields stay None when not applicable.
    """

    germ: MapGerm
    corank: int
    qh_type: QhType | None
    normal_form: NormalFormInfo | None
    verdict: FDVerdict
    lam: MPoly | None = None
    branches: BranchSet | None = None
    C_formula: Fraction | None = None
    C_oracle: Colength | None = None
    T_formula: Fraction | None = None
    mu_d: int | None = None
    mu_d_oracle: Colength | None = None
    mu_d_branches: int | None = None
    ae: Fraction | None = None
    r_i: int | None = None
    r_f: int | None = None
    table: TableCounts | None = None
    svec: SVector | None = None
    fold_plane: str | None = None
    m_formula: Fraction | None = None
    m_direct: Colength | None = None
    inconsistencies: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def finitely_determined(self) -> bool:
        return self.verdict is FDVerdict.FD

    def flag(self, message: str) -> None:
        self.inconsistencies.append(message)

    def note(self, message: str) -> None:
        self.notes.append(message)


def _as_int(value: Fraction, what: str, report: InvariantReport) -> int | None:
    if value.denominator != 1:
        report.flag(f"{what} = {value} is not an integer")
        return None
    return int(value)


def full_report(f: MapGerm, seed: int = 0,
                max_order: int = DEFAULT_MAX_ORDER) -> InvariantReport:
    """Run the whole invariant pipeline on one germ.

    Populates every applicable field and records cross-check failures
    instead of raising, so partially supported inputs (corank 2, non
    quasihomogeneous, not finitely determined) still produce a report.
    """
    cr = corank(f)
    qh = infer_qh_type(f)
    nf = check_normal_form(f, qh) if cr <= 1 else None
    fd = fd_analysis(f, max_order=max_order)
    rep = InvariantReport(germ=f, corank=cr, qh_type=qh, normal_form=nf,
                          verdict=fd.verdict, lam=fd.lam)
    if fd.mu_d is not None and fd.mu_d.finite:
        rep.mu_d_oracle = fd.mu_d

    if qh is None:
        rep.note("not quasihomogeneous: weights-and-degrees formulas unavailable")
    else:
        rep.C_formula = mond_C(qh)
        rep.T_formula = mond_T(qh)
        rep.m_formula = image_multiplicity_formula(qh)
        if rep.verdict is not FDVerdict.FD:
            rep.note("formulas unsupported by hypothesis: germ is not finitely determined")
        else:
            _as_int(rep.C_formula, "cross-cap count", rep)
            _as_int(rep.T_formula, "triple point count", rep)
            _as_int(rep.m_formula, "image multiplicity", rep)

    if fd.verdict in (FDVerdict.UNSUPPORTED_CORANK, FDVerdict.UNSUPPORTED_SHAPE):
        rep.note(f"double point analysis unavailable: {fd.verdict.value}")
    else:
        rep.C_oracle = crosscap_oracle(f, max_order=max_order)
        if qh is not None and rep.C_oracle.finite and rep.verdict is FDVerdict.FD:
            if rep.C_oracle.value != rep.C_formula:
                rep.flag(f"cross-cap count: formula {rep.C_formula} "
                         f"!= ramification colength {rep.C_oracle.value}")

    if rep.verdict is FDVerdict.FD and qh is not None and cr == 1 \
            and fd.lam is not None and not fd.lam.is_constant():
        d_lam = qh_check(fd.lam, qh.weights)
        if d_lam is None or d_lam != lambda_degree(qh):
            rep.flag(f"double curve weighted degree {d_lam} != delta-epsilon "
                     f"{lambda_degree(qh)}")
        try:
            bs = branch_decompose(fd.lam, qh, f)
            rep.branches = bs
            rep.r_i, rep.r_f = bs.r_i, bs.r_f
        except InconsistencyError as exc:
            rep.flag(str(exc))
            bs = None
        if bs is not None:
            for br in bs.branches:
                if br.classification is Classification.INVALID:
                    rep.flag(f"branch {br.factor} has restriction degree {br.degree} > 2")
            if rep.r_i % 2 != 0:
                rep.flag(f"odd identification count {rep.r_i}")
            rep.mu_d_branches = mu_d_from_branches(bs)
            if rep.mu_d_oracle is not None and rep.mu_d_oracle.value != rep.mu_d_branches:
                rep.flag(f"Milnor number of D: colength {rep.mu_d_oracle.value} "
                         f"!= branch formula {rep.mu_d_branches}")
            else:
                rep.mu_d = rep.mu_d_branches
            if rep.mu_d is None and rep.mu_d_oracle is not None:
                rep.mu_d = rep.mu_d_oracle.value
            if nf is not None:
                rep.table = table_r(nf, qh)
                rep.svec = s_vector(nf, qh)
                if rep.table.applicable:
                    if (rep.table.r_i, rep.table.r_f) != (rep.r_i, rep.r_f):
                        rep.flag(f"component counts: table ({rep.table.r_i},{rep.table.r_f}) "
                                 f"!= direct ({rep.r_i},{rep.r_f})")
                    if rep.table.r_total != rep.r_i + rep.r_f:
                        rep.flag(f"product formula count {rep.table.r_total} "
                                 f"!= r_i + r_f = {rep.r_i + rep.r_f}")
                else:
                    rep.note(f"count table not applicable: {rep.table.reason}")
            else:
                rep.note("not in the recognised normal form; table counts skipped")
            if rep.m_formula is not None and rep.m_formula >= 3:
                if rep.r_i < 2:
                    rep.flag(f"multiplicity {rep.m_formula} >= 3 but only "
                             f"{rep.r_i} identification branches")
                try:
                    rep.fold_plane = fold_image_plane(f, bs, rep.svec)
                except InconsistencyError as exc:
                    rep.flag(str(exc))
        if rep.mu_d is not None and qh is not None:
            rep.ae = ae_codim(qh, rep.mu_d)
            _as_int(rep.ae, "codimension", rep)

    if fd.verdict not in (FDVerdict.UNSUPPORTED_SHAPE,) or cr == 2:
        rep.m_direct = image_multiplicity_direct(f, seed=seed, max_order=max_order)
    if rep.m_formula is not None and rep.m_direct is not None and rep.m_direct.finite:
        if rep.verdict is FDVerdict.FD:
            if rep.m_formula != rep.m_direct.value:
                rep.flag(f"image multiplicity: formula {rep.m_formula} "
                         f"!= projection colength {rep.m_direct.value}")
        elif rep.m_formula != rep.m_direct.value:
            rep.note(f"image multiplicity diverges without finite determinacy: "
                     f"formula {rep.m_formula}, projection colength {rep.m_direct.value}")
    return rep
