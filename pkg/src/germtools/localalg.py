"""Local-algebra oracles at the origin.

Everything here answers dimension questions about O/I where O is the local
ring of convergent power series at 0 and I is generated by polynomials:
colength, intersection multiplicity of plane curves, Milnor numbers.  These
are the brute-force reference computations against which every closed
formula in the package is checked, so they deliberately share no code with
the formula side.

Colength is computed as the stabilised value of N -> dim O/(I + m^N); the
sequence is nondecreasing and the first N with d_N = d_{N+1} gives the exact
answer (m^N is then contained in I).  When all generators are
quasihomogeneous for one positive weight vector the same number is obtained
slice by slice in the weighted grading, which is much faster; the two
engines are property-tested against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exactpoly import (
    Exponent,
    MPoly,
    divexact,
    gcd_poly,
    grlex_key,
    monic,
    numeric_resultant,
    qh_check,
    squarefree_part,
)

DEFAULT_MAX_ORDER = 64

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Colength:
    """Result of a local dimension computation.

    ``value`` is the colength when finite; None means the truncated
    dimensions were still growing at truncation order ``bound``.
    """

    value: int | None
    bound: int

    @property
    def finite(self) -> bool:
        return self.value is not None

    def expect_finite(self, what: str = "colength") -> int:
        if self.value is None:
            raise ValueError(f"{what} did not stabilise below truncation order {self.bound}")
        return self.value


def _clean_gens(gens: Sequence[MPoly]) -> list[MPoly]:
    gens = [g for g in gens if g is not None]
    if not gens:
        raise ValueError("empty generator list")
    vars0 = gens[0].vars
    for g in gens:
        if g.vars != vars0:
            raise ValueError("generators live in different rings")
    return [g for g in gens if not g.is_zero]


# -- common weight detection ---------------------------------------------------


def _kernel_basis(rows: list[tuple[int, ...]], n: int) -> list[tuple[Fraction, ...]]:
    """Basis of the rational kernel of the matrix with the given integer rows."""
    m = [[Fraction(v) for v in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    basis = []
    free = [c for c in range(n) if c not in pivots]
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fc]
        basis.append(tuple(vec))
    return basis


def _to_positive_int_vector(vec: Sequence[Fraction]) -> tuple[int, ...] | None:
    if any(v == 0 for v in vec):
        return None
    if all(v < 0 for v in vec):
        vec = [-v for v in vec]
    if any(v < 0 for v in vec):
        return None
    den = 1
    for v in vec:
        den = den * v.denominator // _gcd(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = _gcd(g, v)
    return tuple(v // g for v in ints)


def _gcd(a: int, b: int) -> int:
    from math import gcd
    return gcd(a, b)


def find_common_weights(gens: Sequence[MPoly]) -> tuple[int, ...] | None:
    """Positive integer weights making every generator quasihomogeneous.

    Returns None when no such weights exist.  Monomial generator sets are
    compatible with every weight vector; (1,...,1) is returned then.
    """
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        return None
    n = gens[0].arity
    rows: list[tuple[int, ...]] = []
    for g in gens:
        exps = list(g.terms)
        base = exps[0]
        for e in exps[1:]:
            delta = tuple(a - b for a, b in zip(e, base))
            if any(delta):
                rows.append(delta)
    if not rows:
        return (1,) * n
    basis = _kernel_basis(rows, n)
    if not basis:
        return None
    for vec in basis:
        w = _to_positive_int_vector(vec)
        if w:
            return w
    if len(basis) >= 2:
        span = basis[:3]
        rng = range(-6, 7)
        for c0 in rng:
            for c1 in rng:
                for c2 in (rng if len(span) > 2 else (0,)):
                    coeffs = (c0, c1, c2)[: len(span)]
                    if not any(coeffs):
                        continue
                    vec = tuple(
                        sum(c * v[i] for c, v in zip(coeffs, span)) for i in range(n)
                    )
                    w = _to_positive_int_vector(vec)
                    if w:
                        return w
    return None


# -- graded (fast) colength engine ----------------------------------------------


def _monomials_of_wdeg(weights: Sequence[int], w: int) -> list[Exponent]:
    n = len(weights)
    out: list[Exponent] = []
    if n == 2:
        a, b = weights
        for i in range(w // a + 1):
            rem = w - a * i
            if rem % b == 0:
                out.append((i, rem // b))
    else:
        a, b, c = weights
        for i in range(w // a + 1):
            rem_i = w - a * i
            for j in range(rem_i // b + 1):
                rem = rem_i - b * j
                if rem % c == 0:
                    out.append((i, j, rem // c))
    return out


def _slice_rank(rows: list[dict[Exponent, Fraction]]) -> int:
    """Rank of sparse rows by Gaussian elimination (grlex-max pivots)."""
    echelon: dict[Exponent, dict[Exponent, Fraction]] = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            lead = max(row, key=grlex_key)
            piv = echelon.get(lead)
            if piv is None:
                lc = row[lead]
                if lc != 1:
                    row = {e: c / lc for e, c in row.items()}
                echelon[lead] = row
                rank += 1
                break
            factor = row[lead]
            for e, c in piv.items():
                s = row.get(e, _ZERO) - factor * c
                if s:
                    row[e] = s
                else:
                    row.pop(e, None)
        # empty row: linearly dependent, ignore
    return rank


def _graded_colength(gens: list[MPoly], weights: tuple[int, ...],
                     degrees: list[int], max_order: int) -> Colength:
    wmax = max(weights)
    cap = max_order * wmax
    total = 0
    zero_run = 0
    for w in range(cap + 1):
        mons = _monomials_of_wdeg(weights, w)
        if mons:
            rows: list[dict[Exponent, Fraction]] = []
            for g, dg in zip(gens, degrees):
                shift = w - dg
                if shift < 0:
                    continue
                for m in _monomials_of_wdeg(weights, shift):
                    rows.append({tuple(a + b for a, b in zip(e, m)): c
                                 for e, c in g.terms.items()})
            qd = len(mons) - _slice_rank(rows)
        else:
            qd = 0
        if qd == 0:
            zero_run += 1
            if zero_run >= wmax:
                return Colength(total, max_order)
        else:
            zero_run = 0
            total += qd
    return Colength(None, max_order)


# -- truncated (general) colength engine ----------------------------------------


def _monomials_below(n: int, bound: int) -> list[Exponent]:
    out: list[Exponent] = []
    if n == 2:
        for d in range(bound):
            for i in range(d + 1):
                out.append((i, d - i))
    else:
        for d in range(bound):
            for i in range(d + 1):
                for j in range(d - i + 1):
                    out.append((i, j, d - i - j))
    return out


def _truncated_dim(gens: list[MPoly], N: int) -> int:
    n = gens[0].arity
    n_cols = len(_monomials_below(n, N))
    echelon: dict[Exponent, dict[Exponent, Fraction]] = {}
    rank = 0
    for g in gens:
        og = g.order_at_origin()
        for m in _monomials_below(n, max(0, N - og)):
            row: dict[Exponent, Fraction] = {}
            for e, c in g.terms.items():
                key = tuple(a + b for a, b in zip(e, m))
                if sum(key) < N:
                    row[key] = c
            while row:
                lead = max(row, key=grlex_key)
                piv = echelon.get(lead)
                if piv is None:
                    lc = row[lead]
                    if lc != 1:
                        row = {e: c / lc for e, c in row.items()}
                    echelon[lead] = row
                    rank += 1
                    break
                factor = row[lead]
                for e, c in piv.items():
                    s = row.get(e, _ZERO) - factor * c
                    if s:
                        row[e] = s
                    else:
                        row.pop(e, None)
    return n_cols - rank


def _truncated_colength(gens: list[MPoly], max_order: int, hint: int | None) -> Colength:
    start = 2
    if hint is not None:
        start = min(max(2, hint), max_order - 1)
    prev = _truncated_dim(gens, start)
    for N in range(start + 1, max_order + 1):
        d = _truncated_dim(gens, N)
        if d == prev:
            return Colength(prev, N)
        prev = d
    return Colength(None, max_order)


# -- public colength API ---------------------------------------------------------


def colength_local(gens: Sequence[MPoly], max_order: int = DEFAULT_MAX_ORDER,
                   weights: Sequence[int] | None = None,
                   hint: int | None = None) -> Colength:
    """Vector-space dimension of O/(ideal) in the local ring at the origin.

    ``weights``: optional quasihomogeneity hint; when every generator is
    quasihomogeneous for one positive weight vector (given or detected) the
    weighted-graded engine is used, otherwise the literal truncation
    stabilisation.  ``hint`` starts the truncation scan near an expected
    value (the answer does not depend on it).
    """
    if max_order < 2:
        raise ValueError("max_order must be at least 2")
    gens = _clean_gens(gens)
    if not gens:
        return Colength(None, max_order)
    if any(g.constant_term() != 0 for g in gens):
        return Colength(0, max_order)

    w: tuple[int, ...] | None = None
    if weights is not None and len(weights) == gens[0].arity and all(x >= 1 for x in weights):
        if all(qh_check(g, weights) is not None for g in gens):
            w = tuple(weights)
    if w is None:
        w = find_common_weights(gens)
    if w is not None:
        degrees = [qh_check(g, w) for g in gens]
        if all(d is not None for d in degrees):
            return _graded_colength(gens, w, degrees, max_order)
    return _truncated_colength(gens, max_order, hint)


def _spec_coeffs(p: MPoly, c: Fraction) -> list[Fraction]:
    """Coefficient list in the second variable of p(c, y)."""
    d = p.deg_in(p.vars[1])
    out = [Fraction(0)] * (d + 1)
    for (i, j), v in p.terms.items():
        out[j] += v * c ** i
    return out


def coprime_at_origin(p: MPoly, q: MPoly) -> bool:
    """True when two plane curves share no component through the origin.

    Cheap certificates first: a common component is either a power of the
    first variable (caught by divisibility) or involves the second, in
    which case the resultant with respect to it vanishes identically; a
    nonzero numeric evaluation of that resultant at a degree-preserving
    sample point is an exact proof of coprimality.  Only when every sample
    vanishes does the full gcd run.
    """
    xdiv_p = min(e[0] for e in p.terms) > 0
    xdiv_q = min(e[0] for e in q.terms) > 0
    if xdiv_p and xdiv_q:
        return False
    y = p.vars[1]
    dp, dq = p.deg_in(y), q.deg_in(y)
    if dp < 1 or dq < 1:
        # any common factor would be pure in the first variable
        return True
    for c in (1, -1, 2, -2, 3):
        ap = _spec_coeffs(p, Fraction(c))
        bq = _spec_coeffs(q, Fraction(c))
        if ap[-1] == 0 or bq[-1] == 0:
            continue  # degree dropped: evaluation not conclusive
        if numeric_resultant(ap, bq) != 0:
            return True
    g = gcd_poly(p, q)
    return g.is_constant() or g.constant_term() != 0


def intersection_multiplicity(p: MPoly, q: MPoly,
                              max_order: int = DEFAULT_MAX_ORDER,
                              hint: int | None = None) -> Colength:
    """Intersection multiplicity of two plane curves at the origin.

    Finite exactly when p and q share no component through the origin; a
    common factor through 0 is reported as not finite without running the
    truncation loop.
    """
    if p.arity != 2 or q.arity != 2:
        raise ValueError("intersection multiplicity expects plane curves")
    if p.is_zero or q.is_zero:
        raise ValueError("zero polynomial")
    if not coprime_at_origin(p, q):
        return Colength(None, max_order)
    return colength_local([p, q], max_order=max_order, hint=hint)


def milnor_number(p: MPoly, max_order: int = DEFAULT_MAX_ORDER,
                  precheck: bool = True) -> Colength:
    """Milnor number at the origin: colength of the Jacobian ideal.

    Finite iff the curve is reduced with an isolated singular point at 0.  A
    repeated factor through the origin is detected up front and reported as
    not finite; that report is the finite-determinacy failure signal
    downstream.  Callers that have already established squarefreeness can
    skip the precheck.
    """
    if p.is_zero:
        raise ValueError("zero polynomial")
    if p.constant_term() != 0:
        raise ValueError("curve does not pass through the origin")
    if precheck:
        sqf = squarefree_part(p)
        if sqf.total_degree() != p.total_degree():
            cof = divexact(monic(p), sqf)
            if cof.constant_term() == 0:
                return Colength(None, max_order)
    partials = [p.derivative(v) for v in p.vars]
    partials = [d for d in partials if not d.is_zero]
    if not partials:
        raise ValueError("constant polynomial")
    return colength_local(partials, max_order=max_order)


def milnor_from_branches(branch_mus: Sequence[int],
                         pairwise: Mapping[tuple[int, int], int]) -> int:
    """Milnor number of a reducible plane curve from branch data.

    ``branch_mus`` lists the Milnor numbers of the individual branches,
    ``pairwise`` maps index pairs (i < j) to intersection multiplicities.
    The value is sum(mu_q - 1) + 2 * sum of pairwise intersections + 1.
    """
    r = len(branch_mus)
    if r == 0:
        raise ValueError("no branches")
    seen: set[tuple[int, int]] = set()
    total_i = 0
    for (i, j), v in pairwise.items():
        if i == j or not (0 <= i < r and 0 <= j < r):
            raise ValueError(f"bad branch pair ({i},{j})")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise ValueError(f"duplicate branch pair {key}")
        seen.add(key)
        if v <= 0:
            raise ValueError("intersection multiplicities of distinct branches are positive")
        total_i += v
    if len(seen) != r * (r - 1) // 2:
        raise ValueError("pairwise data incomplete")
    return sum(mu - 1 for mu in branch_mus) + 2 * total_i + 1


# -- Groebner bases ---------------------------------------------------------------


def _lcm_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _exp_divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def normal_form(p: MPoly, basis: Sequence[MPoly]) -> MPoly:
    """Remainder of full multivariate division of p by the basis (grlex)."""
    basis = [g for g in basis if not g.is_zero]
    rem = MPoly.zero(p.vars)
    work = p
    leads = [(g.lead_exponent(), g.lead_coeff(), g) for g in basis]
    while not work.is_zero:
        e = work.lead_exponent()
        c = work.terms[e]
        for le, lc, g in leads:
            if _exp_divides(le, e):
                shift = tuple(a - b for a, b in zip(e, le))
                work = work - g.shift(shift, c / lc)
                break
        else:
            rem = rem + MPoly.monomial(p.vars, e, c)
            work = work - MPoly.monomial(p.vars, e, c)
    return rem


def _spoly(f: MPoly, g: MPoly) -> MPoly:
    ef, eg = f.lead_exponent(), g.lead_exponent()
    l = _lcm_exp(ef, eg)
    mf = tuple(a - b for a, b in zip(l, ef))
    mg = tuple(a - b for a, b in zip(l, eg))
    return f.shift(mf, 1 / f.lead_coeff()) - g.shift(mg, 1 / g.lead_coeff())


def groebner(gens: Sequence[MPoly]) -> list[MPoly]:
    """Reduced Groebner basis in graded lexicographic order.

    Buchberger with the coprime-lead and chain pair criteria; adequate for
    ideals at desk scale (two or three variables, modest degrees).  The
    result is interreduced, monic, and sorted by decreasing leading term, so
    ideal membership is decidable by ``normal_form(p, basis) == 0``.
    """
    G = [monic(g) for g in _clean_gens(gens)]
    if not G:
        return []
    # discard duplicates early
    uniq: list[MPoly] = []
    for g in G:
        if g not in uniq:
            uniq.append(g)
    G = uniq

    pairs = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}

    def lead(i: int) -> Exponent:
        return G[i].lead_exponent()

    while pairs:
        i, j = min(pairs, key=lambda ij: grlex_key(_lcm_exp(lead(ij[0]), lead(ij[1]))))
        pairs.discard((i, j))
        li, lj = lead(i), lead(j)
        l = _lcm_exp(li, lj)
        if l == tuple(a + b for a, b in zip(li, lj)):
            continue  # coprime leading terms
        if any(
            k != i and k != j
            and _exp_divides(lead(k), l)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue  # chain criterion
        r = normal_form(_spoly(G[i], G[j]), G)
        if not r.is_zero:
            r = monic(r)
            G.append(r)
            new = len(G) - 1
            pairs.update((k, new) for k in range(new))

    # minimalise: drop elements whose lead is divisible by another lead
    minimal: list[MPoly] = []
    for i, g in enumerate(G):
        e = g.lead_exponent()
        if any(
            _exp_divides(G[k].lead_exponent(), e) and (k < i or G[k].lead_exponent() != e)
            for k in range(len(G)) if k != i
        ):
            continue
        minimal.append(g)
    # interreduce
    reduced: list[MPoly] = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = normal_form(g, others) if others else g
        if not r.is_zero:
            reduced.append(monic(r))
    reduced.sort(key=lambda g: grlex_key(g.lead_exponent()), reverse=True)
    return reduced


def in_ideal(p: MPoly, basis: Sequence[MPoly]) -> bool:
    """Ideal membership against a Groebner basis."""
    return normal_form(p, basis).is_zero
