"""Image equations by elimination, and presentation matrices with their
Fitting loci on the monic subclass.

The image surface of (x, f2, f3) satisfies F(X,Y,Z) = 0 where F is the
y-resultant of f2(X,y) - Y and f3(X,y) - Z.  When f2 is exactly a pure
power y^n the pushforward module has the obvious basis 1, y, ..., y^(n-1)
with y^n rewritten as Y, and multiplication by f3 gives a square
presentation matrix: its determinant recovers F, its lower-order minor
ideals cut out the double curve in the target and the triple points.  The
two routes to F are kept independent and compared in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exactpoly import (
    MPoly,
    certify_squarefree,
    det_bareiss,
    numeric_resultant,
    primitive_part,
    resultant_univar,
    squarefree_part,
)
from .germs import MapGerm, QhType, infer_qh_type
from .localalg import Colength, colength_local

DEFAULT_MAX_ORDER = 64

IMAGE_VARS = ("X", "Y", "Z")


def _coordinate_in_target(comp: MPoly) -> list[MPoly]:
    """Coefficient list in y of comp(X, y), coefficients in (X, Y, Z)."""
    d = max(e[1] for e in comp.terms) if comp.terms else 0
    coeffs: list[dict] = [dict() for _ in range(d + 1)]
    for (i, j), c in comp.terms.items():
        coeffs[j][(i, 0, 0)] = c
    return [MPoly(IMAGE_VARS, t) for t in coeffs]


@dataclass(frozen=True)
class ImageEquation:
    poly: MPoly           # primitive, squarefree representative
    reduced: bool         # False when the raw resultant had repeated factors
    raw_degree: int       # total degree of the raw resultant


def _monomials_of_wdeg3(weights: tuple[int, int, int], w: int) -> list[tuple[int, int, int]]:
    a, b, c = weights
    out = []
    for i in range(w // a + 1):
        rem_i = w - a * i
        for j in range(rem_i // b + 1):
            rem = rem_i - b * j
            if rem % c == 0:
                out.append((i, j, rem // c))
    return out


def _interpolated_resultant(f: MapGerm, qh: QhType) -> MPoly | None:
    """Eliminated image equation by exact interpolation.

    The resultant of quasihomogeneous data is quasihomogeneous for the
    target weights (d1, d2, d3) with a degree read off the leading
    coefficients, so its support is a short known list of monomials.  The
    coefficients are solved from numeric resultant samples at rational
    points; the system is taken overdetermined and the solution is
    certified by composing with f, so a wrong support assumption can only
    lead to the slow exact path, never to a wrong answer.
    """
    import random

    y = f.vars[1]
    p, q = f.f2.deg_in(y), f.f3.deg_in(y)
    if p < 1 or q < 1:
        return None
    a, b = qh.a, qh.b
    if qh.d1 != a:
        return None
    w_lc2 = qh.d2 - p * b
    w_lc3 = qh.d3 - q * b
    num = qh.d2 * qh.d3 - w_lc2 * w_lc3
    if num % b or num <= 0:
        return None
    degree = num // b
    weights = (qh.d1, qh.d2, qh.d3)
    support = _monomials_of_wdeg3(weights, degree)
    if not support or len(support) > 150:
        return None

    rng = random.Random(0xFACE ^ degree)
    rows: list[list[Fraction]] = []
    vals: list[Fraction] = []
    lc2 = [c for (i, j), c in f.f2.terms.items() if j == p]
    needed = len(support) + 4
    attempts = 0
    while len(rows) < needed and attempts < 50 * needed:
        attempts += 1
        x0 = Fraction(rng.randint(-19, 19), rng.randint(1, 4))
        y0 = Fraction(rng.randint(-19, 19), rng.randint(1, 4))
        z0 = Fraction(rng.randint(-19, 19), rng.randint(1, 4))
        if x0 == 0 or y0 == 0 or z0 == 0:
            continue
        ca = _y_coeffs_at(f.f2, x0)
        cb = _y_coeffs_at(f.f3, x0)
        if ca[p] == 0 or cb[q] == 0:
            continue  # leading coefficient vanished: degree would drop
        ca[0] -= y0
        cb[0] -= z0
        vals.append(numeric_resultant(ca, cb))
        rows.append([x0 ** e[0] * y0 ** e[1] * z0 ** e[2] for e in support])
    if len(rows) < needed:
        return None
    coeffs = _solve_exact(rows, vals)
    if coeffs is None:
        return None
    F = MPoly(IMAGE_VARS, {e: c for e, c in zip(support, coeffs) if c != 0})
    if F.is_zero:
        return None
    # symbolic certificate that F vanishes on the image
    total = MPoly.zero(f.vars)
    for (ex, ey, ez), c in F.terms.items():
        term = MPoly.const(f.vars, c)
        if ex:
            term = term * f.f1 ** ex
        if ey:
            term = term * f.f2 ** ey
        if ez:
            term = term * f.f3 ** ez
        total = total + term
    if not total.is_zero:
        return None
    return F


def _y_coeffs_at(comp: MPoly, x0: Fraction) -> list[Fraction]:
    d = max(e[1] for e in comp.terms)
    out = [Fraction(0)] * (d + 1)
    for (i, j), c in comp.terms.items():
        out[j] += c * x0 ** i
    return out


def _solve_exact(rows: list[list[Fraction]], vals: list[Fraction]) -> list[Fraction] | None:
    """Solve an overdetermined exact linear system; None unless it has a
    unique consistent solution."""
    n = len(rows[0])
    aug = [row + [v] for row, v in zip(rows, vals)]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if pivot is None:
            return None  # rank-deficient in the unknowns
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                fac = aug[i][c]
                aug[i] = [u - fac * w for u, w in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(aug)):
        if aug[i][n] != 0:
            return None  # inconsistent: support assumption was wrong
    return [aug[i][n] for i in range(n)]


def image_equation(f: MapGerm) -> ImageEquation:
    """Defining equation of the image surface by y-elimination.

    Both f2(X,y) - Y and f3(X,y) - Z must actually involve y.  For
    quasihomogeneous germs the resultant is interpolated from numeric
    samples (with a symbolic certificate); otherwise, and whenever the
    certificate fails, the subresultant sequence over the target ring runs
    instead.  A non-reduced result (the germ covers its image more than
    once) is squarefree-d and flagged.
    """
    y = f.vars[1]
    if f.f2.deg_in(y) < 1 or f.f3.deg_in(y) < 1:
        raise ValueError("elimination needs both f2 and f3 to involve y")
    qh = infer_qh_type(f)
    res = None
    if qh is not None:
        res = _interpolated_resultant(f, qh)
    if res is None:
        a = _coordinate_in_target(f.f2)
        b = _coordinate_in_target(f.f3)
        a[0] = a[0] - MPoly.var(IMAGE_VARS, "Y")
        b[0] = b[0] - MPoly.var(IMAGE_VARS, "Z")
        res = resultant_univar(a, b)
    if res.is_zero:
        raise ValueError("degenerate elimination: coordinates share a factor")
    res = primitive_part(res)
    if certify_squarefree(res):
        return ImageEquation(poly=res, reduced=True, raw_degree=res.total_degree())
    sqf = primitive_part(squarefree_part(res))
    reduced = sqf.total_degree() == res.total_degree()
    return ImageEquation(poly=sqf, reduced=reduced, raw_degree=res.total_degree())


@dataclass(frozen=True)
class PresentationMatrix:
    """Square matrix over (X, Y, Z) presenting the pushforward module in
    the basis 1, y, ..., y^(n-1) (only for f2 = y^n exactly)."""

    size: int
    entries: tuple[tuple[MPoly, ...], ...]

    def det(self) -> MPoly:
        return det_bareiss([list(row) for row in self.entries])

    def minors(self, size: int) -> list[MPoly]:
        """All size x size minors (the empty minor is the constant 1)."""
        if size <= 0:
            return [MPoly.const(IMAGE_VARS, 1)]
        out = []
        for rows in combinations(range(self.size), size):
            for cols in combinations(range(self.size), size):
                sub = [[self.entries[i][j] for j in cols] for i in rows]
                out.append(det_bareiss(sub))
        return out


def _monic_power_exponent(comp: MPoly) -> int | None:
    """n when comp is exactly y^n, else None."""
    if len(comp.terms) != 1:
        return None
    (e, c), = comp.terms.items()
    if e[0] != 0 or c != 1 or e[1] < 1:
        return None
    return e[1]


def presentation_matrix(f: MapGerm) -> PresentationMatrix | None:
    """Multiplication-by-f3 presentation in the basis 1, y, ..., y^(n-1).

    Returns None unless f2 = y^n exactly (mixed terms in f2 would need the
    general flatness construction, which is out of scope).  Row i holds
    Z * y^i - f3 * y^i with x -> X and y^n -> Y.
    """
    n = _monic_power_exponent(f.f2)
    if n is None or n < 2:
        return None
    Z = MPoly.var(IMAGE_VARS, "Z")
    zero = MPoly.zero(IMAGE_VARS)
    rows: list[list[MPoly]] = []
    for i in range(n):
        cells = [zero] * n
        for (ex, ey), c in f.f3.terms.items():
            j = ey + i
            q, r = divmod(j, n)
            cells[r] = cells[r] + MPoly(IMAGE_VARS, {(ex, q, 0): c})
        row = [Z - cells[i] if k == i else -cells[k] for k in range(n)]
        rows.append(row)
    return PresentationMatrix(size=n, entries=tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class FittingLoci:
    equation: MPoly              # det of the presentation (image equation)
    double_curve: tuple[MPoly, ...]   # (n-1)-minors: the image of D(f)
    triple_ideal: tuple[MPoly, ...]   # (n-2)-minors: the triple point ideal


def fitting_loci(pm: PresentationMatrix) -> FittingLoci:
    n = pm.size
    det = pm.det()
    fitt1 = [m for m in pm.minors(n - 1) if not m.is_zero]
    fitt2 = [m for m in pm.minors(n - 2) if not m.is_zero]
    return FittingLoci(equation=det,
                       double_curve=tuple(fitt1),
                       triple_ideal=tuple(fitt2))


def triple_point_oracle(f: MapGerm,
                        max_order: int = DEFAULT_MAX_ORDER) -> Colength | None:
    """T as the colength of the triple-point Fitting ideal in the target.

    Only available on the monic subclass; None means not applicable there.
    Not-finite results are themselves meaningful (non finitely determined
    input).
    """
    pm = presentation_matrix(f)
    if pm is None:
        return None
    loci = fitting_loci(pm)
    gens = [g for g in loci.triple_ideal if not g.is_zero]
    if not gens:
        return Colength(None, max_order)
    qh = infer_qh_type(f)
    weights = qh.degrees if qh else None
    return colength_local(gens, max_order=max_order, weights=weights)
