"""Map-germ data model: corank, quasihomogeneous types, normal forms,
finiteness and image multiplicity.

A germ is a triple of polynomials in (x, y) vanishing at the origin,
thought of as a finite map from the plane into 3-space near 0.  Image
multiplicity comes in two independent flavours: a weights-and-degrees
formula, and a colength of two generic linear projections; agreement of the
two is a standing cross-check (and their divergence on a particular finite
but non-stable germ is itself an expected output, exercised in the tests).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactpoly import MPoly, Rat, divexact, qh_check
from .localalg import Colength, colength_local

DEFAULT_MAX_ORDER = 64


@dataclass(frozen=True)
class MapGerm:
    """Polynomial map germ (f1, f2, f3) from (C^2,0) to (C^3,0)."""

    f1: MPoly
    f2: MPoly
    f3: MPoly
    label: str | None = None

    def __post_init__(self):
        vars0 = self.f1.vars
        if len(vars0) != 2:
            raise ValueError("map germ coordinates must live in two variables")
        for f in (self.f1, self.f2, self.f3):
            if f.vars != vars0:
                raise ValueError("coordinate functions live in different rings")
            if f.constant_term() != 0:
                raise ValueError("germ does not preserve the origin")

    @property
    def vars(self) -> tuple[str, str]:
        return self.f1.vars

    @property
    def components(self) -> tuple[MPoly, MPoly, MPoly]:
        return (self.f1, self.f2, self.f3)

    def __str__(self) -> str:
        name = self.label or "f"
        return f"{name}(x,y) = ({self.f1}, {self.f2}, {self.f3})"


@dataclass(frozen=True)
class QhType:
    """Quasihomogeneous type: weighted degrees (d1,d2,d3) for weights (a,b)."""

    d1: int
    d2: int
    d3: int
    a: int
    b: int

    def __post_init__(self):
        from math import gcd
        if self.a < 1 or self.b < 1:
            raise ValueError("weights must be positive")
        if gcd(self.a, self.b) != 1:
            raise ValueError("weights must be coprime")
        if min(self.d1, self.d2, self.d3) < 1:
            raise ValueError("weighted degrees must be positive")

    @property
    def degrees(self) -> tuple[int, int, int]:
        return (self.d1, self.d2, self.d3)

    @property
    def weights(self) -> tuple[int, int]:
        return (self.a, self.b)

    @property
    def delta(self) -> Fraction:
        return Fraction(self.d1 * self.d2 * self.d3, self.a * self.b)

    @property
    def epsilon(self) -> int:
        return self.d1 + self.d2 + self.d3 - self.a - self.b

    def sorted_degrees(self) -> tuple[int, int, int]:
        return tuple(sorted(self.degrees))  # type: ignore[return-value]

    def __str__(self) -> str:
        return f"({self.d1},{self.d2},{self.d3}; {self.a},{self.b})"


@dataclass(frozen=True)
class FamilyGerm:
    """One-parameter family of germs: coordinates in (x, y, parameter).

    Specialising the parameter to a rational number gives back a MapGerm;
    the origin must be preserved for every parameter value, so no
    coordinate may contain a term free of both x and y.
    """

    f1: MPoly
    f2: MPoly
    f3: MPoly
    param: str
    label: str | None = None

    def __post_init__(self):
        vars0 = self.f1.vars
        if len(vars0) != 3 or self.param not in vars0:
            raise ValueError("family coordinates must live in (x, y, parameter)")
        if self.param in vars0[:2]:
            raise ValueError("parameter must be the last variable")
        pi = vars0.index(self.param)
        for f in (self.f1, self.f2, self.f3):
            if f.vars != vars0:
                raise ValueError("coordinate functions live in different rings")
            for e in f.terms:
                if all(e[k] == 0 for k in range(3) if k != pi):
                    raise ValueError("family does not preserve the origin for all parameters")

    def specialize(self, value) -> MapGerm:
        val = Fraction(value)
        comps = [c.subs(self.param, val).project_out(self.param)
                 for c in (self.f1, self.f2, self.f3)]
        tag = f"{self.label or 'family'}[{self.param}={val}]"
        return MapGerm(comps[0], comps[1], comps[2], label=tag)


def corank(f: MapGerm) -> int:
    """2 minus the rank of the differential at the origin."""
    rows = []
    for comp in f.components:
        ex = comp.coeff((1, 0))
        ey = comp.coeff((0, 1))
        rows.append((ex, ey))
    rank = 0
    # exact rank of a 3x2 matrix
    nonzero = [r for r in rows if r != (0, 0)]
    if nonzero:
        rank = 1
        r0 = nonzero[0]
        for r in nonzero[1:]:
            if r0[0] * r[1] - r0[1] * r[0] != 0:
                rank = 2
                break
    return 2 - rank


def infer_qh_type(f: MapGerm) -> QhType | None:
    """Smallest positive coprime weights making every coordinate
    quasihomogeneous, with the resulting weighted degrees.

    The weight ratio is forced by any coordinate with two or more terms;
    when every coordinate is a monomial the system is underdetermined and
    (1,1) is chosen.  Returns None when no positive weights work.
    """
    from math import gcd
    if any(c.is_zero for c in f.components):
        return None
    ratio: tuple[int, int] | None = None  # (a, b) up to scale
    for comp in f.components:
        exps = list(comp.terms)
        base = exps[0]
        for e in exps[1:]:
            di = e[0] - base[0]
            dj = e[1] - base[1]
            if di == 0 and dj == 0:
                continue
            if di == 0 or dj == 0:
                return None  # a*0 + b*dj = 0 has no positive solution
            if (di > 0) == (dj > 0):
                return None  # same sign: weights would need opposite signs
            cand = (abs(dj), abs(di))
            g = gcd(cand[0], cand[1])
            cand = (cand[0] // g, cand[1] // g)
            if ratio is None:
                ratio = cand
            elif ratio != cand:
                return None
    a, b = ratio if ratio is not None else (1, 1)
    degs = []
    for comp in f.components:
        e = next(iter(comp.terms))
        degs.append(a * e[0] + b * e[1])
    for comp, d in zip(f.components, degs):
        if qh_check(comp, (a, b)) != d:
            return None
    return QhType(degs[0], degs[1], degs[2], a, b)


@dataclass(frozen=True)
class NormalFormInfo:
    """Recognised corank-1 shape (x, y^n + x*p, beta*y^m + x*q).

    ``p`` and ``q`` vanish on y = 0.  ``beta`` may be zero, in which case
    ``m`` is only defined when the quasihomogeneous data pins it down;
    downstream table formulas refuse to run on that case and flag it.
    """

    n: int
    m: int | None
    beta: Rat
    p: MPoly
    q: MPoly

    def reconstruct(self, vars: Sequence[str]) -> MapGerm:
        vs = tuple(vars)
        x = MPoly.var(vs, vs[0])
        y = MPoly.var(vs, vs[1])
        f2 = y ** self.n + x * self.p
        f3 = x * self.q
        if self.beta != 0:
            f3 = f3 + (y ** self.m).scale(self.beta)
        return MapGerm(x, f2, f3)


def _pure_y_part(comp: MPoly) -> tuple[int | None, Rat] | None:
    """(exponent, coefficient) of the unique pure-y monomial; (None, 0) when
    there is none; None when several pure-y terms occur (shape violation)."""
    found: tuple[int, Rat] | None = None
    for e, c in comp.terms.items():
        if e[0] == 0:
            if found is not None:
                return None
            found = (e[1], c)
    return found if found is not None else (None, Fraction(0))


def check_normal_form(f: MapGerm, qh: QhType | None = None) -> NormalFormInfo | None:
    """Recognise the exact shape (x, y^n + x*p, beta*y^m + x*q).

    Recognition only; no coordinate changes are attempted.  Requires the
    first coordinate to be literally x, the pure-y part of f2 to be monic
    y^n with n >= 2, and every mixed term of f2, f3 to involve both
    variables.  Returns None when the shape does not match.
    """
    x, y = f.vars
    if f.f1 != MPoly.var(f.vars, x):
        return None
    pure2 = _pure_y_part(f.f2)
    if pure2 is None:
        return None
    n, cn = pure2
    if n is None or cn != 1 or n < 2:
        return None
    pure3 = _pure_y_part(f.f3)
    if pure3 is None:
        return None
    m, beta = pure3
    if m is not None and m < 2:
        return None
    for comp in (f.f2, f.f3):
        for e in comp.terms:
            if e[0] == 0:
                continue
            if e[1] == 0:
                return None  # pure-x term: the cofactor would not vanish on y=0
    xp = MPoly(f.vars, {e: c for e, c in f.f2.terms.items() if e[0] > 0})
    xq = MPoly(f.vars, {e: c for e, c in f.f3.terms.items() if e[0] > 0})
    xvar = MPoly.var(f.vars, x)
    p = divexact(xp, xvar) if not xp.is_zero else MPoly.zero(f.vars)
    q = divexact(xq, xvar) if not xq.is_zero else MPoly.zero(f.vars)
    if m is None:
        # beta = 0: recover m from the quasihomogeneous degree when possible
        beta = Fraction(0)
        if qh is not None and qh.d3 % qh.b == 0 and qh.d3 // qh.b >= 2:
            m = qh.d3 // qh.b
    return NormalFormInfo(n=n, m=m, beta=beta, p=p, q=q)


def is_finite(f: MapGerm, max_order: int = DEFAULT_MAX_ORDER) -> bool:
    """True when the preimage of 0 is just the origin with finite local algebra."""
    qh = infer_qh_type(f)
    weights = qh.weights if qh else None
    res = colength_local(list(f.components), max_order=max_order, weights=weights)
    return res.finite


def image_multiplicity_formula(t: QhType) -> Fraction:
    """Multiplicity of the image from weights and degrees: d1'*d2'/(a*b)
    over the sorted degree triple.  Callers check integrality; a
    non-integer value signals that the hypotheses behind the formula fail.
    """
    d = t.sorted_degrees()
    return Fraction(d[0] * d[1], t.a * t.b)


def projection_stream(seed: int, count: int = 5) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Deterministic candidate projections: pairs of integer coefficient
    triples drawn from [-17, 17], nonzero and pairwise independent."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        l1 = tuple(rng.randint(-17, 17) for _ in range(3))
        l2 = tuple(rng.randint(-17, 17) for _ in range(3))
        if l1 == (0, 0, 0) or l2 == (0, 0, 0):
            continue
        # reject proportional pairs: they do not span a projection to C^2
        cross = (l1[1] * l2[2] - l1[2] * l2[1],
                 l1[2] * l2[0] - l1[0] * l2[2],
                 l1[0] * l2[1] - l1[1] * l2[0])
        if cross == (0, 0, 0):
            continue
        out.append((l1, l2))
    return out


def compose_linear(f: MapGerm, coeffs: Sequence) -> MPoly:
    """The composition l o f for a linear form l on the target."""
    a1, a2, a3 = (Fraction(c) for c in coeffs)
    return f.f1.scale(a1) + f.f2.scale(a2) + f.f3.scale(a3)


def image_multiplicity_direct(f: MapGerm,
                              proj: tuple[Sequence, Sequence] | None = None,
                              seed: int = 0,
                              max_order: int = DEFAULT_MAX_ORDER,
                              hint: int | None = None) -> Colength:
    """Multiplicity of the image as deg of a generic plane projection:
    the colength of (l1 o f, l2 o f).

    With ``proj`` given, computes that specific projection.  Otherwise five
    seeded candidates are tried and the minimal finite colength is returned
    (a degenerate choice only ever inflates the value, so the minimum over
    independent samples is the generic one).
    """
    if proj is not None:
        g1 = compose_linear(f, proj[0])
        g2 = compose_linear(f, proj[1])
        if g1.is_zero or g2.is_zero:
            return Colength(None, max_order)
        return colength_local([g1, g2], max_order=max_order, hint=hint)
    best: Colength | None = None
    for cand in projection_stream(seed):
        res = image_multiplicity_direct(f, proj=cand, max_order=max_order, hint=hint)
        if not res.finite:
            continue
        if best is None or res.value < best.value:  # type: ignore[operator]
            best = res
    return best if best is not None else Colength(None, max_order)
