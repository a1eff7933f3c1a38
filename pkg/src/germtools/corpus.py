"""Built-in germ inventory with frozen expected values.

The entries cover the standard multiplicity-2 singularities, four germs of
higher multiplicity exercising all gcd-vector cases, two families showing
that folds (and, at multiplicity 2, identifications) may be absent, the
finite-but-unstable pair whose image multiplicities diverge, and two
corank-2 germs for the image multiplicity formula.  Expected values of the
literature-quoted kind are frozen from their sources; the rest were
computed once with the colength oracles in this package and frozen (the
corpus run recomputes both paths every time).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exactpoly import is_associate, parse_poly
from .germs import MapGerm
from .imagefit import IMAGE_VARS
from .report import AnalysisResult, analyze

XY = ("x", "y")


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    coords: tuple[str, str, str]
    expected: dict[str, Any]

    def germ(self) -> MapGerm:
        f1, f2, f3 = (parse_poly(c, XY) for c in self.coords)
        return MapGerm(f1, f2, f3, label=self.label)


CORPUS: tuple[CorpusEntry, ...] = (
    CorpusEntry("crosscap", ("x", "y^2", "x*y"), {
        "type": (1, 2, 2, 1, 1), "fd": "finitely-determined",
        "C": 1, "T": 0, "ae": 0, "mu_D": 0, "r_i": 0, "r_f": 1, "m": 2,
        "lambda": "x", "m_fD": 1, "i_D_gamma": 2, "mu_W": 3, "T_oracle": 0,
    }),
    CorpusEntry("S1", ("x", "y^2", "y^3-x^2*y"), {
        "type": (1, 2, 3, 1, 1), "fd": "finitely-determined",
        "C": 2, "T": 0, "ae": 1, "mu_D": 1, "r_i": 2, "r_f": 0, "m": 2,
        "lambda": "y^2-x^2", "m_fD": 1, "i_D_gamma": 2, "mu_W": 4, "T_oracle": 0,
    }),
    CorpusEntry("S2", ("x", "y^2", "y^3+x^3*y"), {
        "type": (2, 6, 9, 2, 3), "fd": "finitely-determined",
        "C": 3, "T": 0, "ae": 2, "mu_D": 2, "r_i": 0, "r_f": 1, "m": 2,
        "lambda": "y^2+x^3", "m_fD": 1, "i_D_gamma": 2, "mu_W": 5, "T_oracle": 0,
    }),
    CorpusEntry("C3", ("x", "y^2", "x*y^3-x^3*y"), {
        "type": (1, 2, 4, 1, 1), "fd": "finitely-determined",
        "C": 3, "T": 0, "ae": 3, "mu_D": 4, "r_i": 2, "r_f": 1, "m": 2,
        "lambda": "x*y^2-x^3", "m_fD": 2, "i_D_gamma": 4, "mu_W": 11, "T_oracle": 0,
    }),
    CorpusEntry("C4", ("x", "y^2", "x*y^3+x^4*y"), {
        "type": (2, 6, 11, 2, 3), "fd": "finitely-determined",
        "C": 4, "T": 0, "ae": 4, "mu_D": 5, "r_i": 0, "r_f": 2, "m": 2,
        "lambda": "x*y^2+x^4", "m_fD": 2, "i_D_gamma": 4, "mu_W": 12, "T_oracle": 0,
    }),
    CorpusEntry("C5", ("x", "y^2", "x*y^3-x^5*y"), {
        "type": (1, 4, 7, 1, 2), "fd": "finitely-determined",
        "C": 5, "T": 0, "ae": 5, "mu_D": 6, "r_i": 2, "r_f": 1, "m": 2,
        "lambda": "x*y^2-x^5", "m_fD": 2, "i_D_gamma": 4, "mu_W": 13, "T_oracle": 0,
        "image_eq": "Z^2-X^2*Y^3+2*X^6*Y^2-X^10*Y",
    }),
    CorpusEntry("table3-row1", ("x", "y^4", "x^5*y+x*y^5+y^6"), {
        "type": (1, 4, 6, 1, 1), "fd": "finitely-determined",
        "s_vector": (1, 0, 0), "r_i": 14, "r_f": 1, "m": 4,
        "C": 15, "T": 20, "mu_D": 196, "ae": 65, "fold_plane": "X=0",
        "m_fD": 9, "i_D_gamma": 18, "mu_W": 231, "T_oracle": 20,
    }),
    CorpusEntry("table3-row2", ("x", "y^4", "2*y^13+x^2*y+3*x*y^7"), {
        "type": (6, 4, 13, 6, 1), "fd": "finitely-determined",
        "s_vector": (0, 1, 0), "r_i": 4, "r_f": 2, "m": 4,
        "C": 6, "T": 22, "mu_D": 175, "ae": 46, "fold_plane": "Z=0",
        "m_fD": 12, "i_D_gamma": 24, "mu_W": 222, "T_oracle": 22,
    }),
    CorpusEntry("table3-row3", ("x", "y^5+x*y", "y^6"), {
        "type": (4, 5, 6, 4, 1), "fd": "finitely-determined",
        "s_vector": (0, 0, 1), "r_i": 4, "r_f": 1, "m": 5,
        "C": 5, "T": 10, "mu_D": 76, "ae": 20, "fold_plane": "Y=0",
        "m_fD": 10, "i_D_gamma": 20, "mu_W": 115,
    }),
    CorpusEntry("table3-row4", ("x", "y^3", "y^5+x^2*y"), {
        "type": (2, 3, 5, 2, 1), "fd": "finitely-determined",
        "s_vector": (0, 0, 0), "r_i": 4, "r_f": 0, "m": 3,
        "C": 4, "T": 2, "mu_D": 21, "ae": 8, "fold_plane": "no-folds",
        "m_fD": 4, "i_D_gamma": 8, "mu_W": 36, "T_oracle": 2,
    }),
    CorpusEntry("mult4", ("x", "y^4", "x^5*y-5*x^3*y^3+4*x*y^5+y^6"), {
        "type": (1, 4, 6, 1, 1), "fd": "finitely-determined",
        "s_vector": (1, 0, 0), "r_i": 14, "r_f": 1, "m": 4,
        "C": 15, "T": 20, "mu_D": 196, "ae": 65, "fold_plane": "X=0",
        "m_fD": 9, "i_D_gamma": 18, "mu_W": 231, "T_oracle": 20,
    }),
    CorpusEntry("folds-k1", ("x", "y^2", "y*(x-y^2)"), {
        "type": (2, 2, 3, 2, 1), "fd": "finitely-determined",
        "C": 1, "T": 0, "ae": 0, "mu_D": 0, "r_i": 0, "r_f": 1, "m": 2,
        "lambda": "x-y^2", "m_fD": 1, "i_D_gamma": 2, "mu_W": 3, "T_oracle": 0,
    }),
    CorpusEntry("folds-k2", ("x", "y^2", "y*(x-y^2)*(x-2*y^2)"), {
        "type": (2, 2, 5, 2, 1), "fd": "finitely-determined",
        "C": 2, "T": 0, "ae": 2, "mu_D": 3, "r_i": 0, "r_f": 2, "m": 2,
        "m_fD": 2, "i_D_gamma": 4, "mu_W": 10, "T_oracle": 0,
    }),
    CorpusEntry("folds-k3", ("x", "y^2", "y*(x-y^2)*(x-2*y^2)*(x-3*y^2)"), {
        "type": (2, 2, 7, 2, 1), "fd": "finitely-determined",
        "C": 3, "T": 0, "ae": 6, "mu_D": 10, "r_i": 0, "r_f": 3, "m": 2,
        "m_fD": 3, "i_D_gamma": 6, "mu_W": 21, "T_oracle": 0,
    }),
    CorpusEntry("no-folds-n2", ("x", "y^2", "(x+y)^3"), {
        "type": (1, 2, 3, 1, 1), "fd": "finitely-determined",
        "C": 2, "T": 0, "ae": 1, "mu_D": 1, "r_i": 2, "r_f": 0, "m": 2,
        "m_fD": 1, "i_D_gamma": 2, "mu_W": 4, "T_oracle": 0,
    }),
    CorpusEntry("no-folds-n3", ("x", "y^3", "(x+y)^4"), {
        "type": (1, 3, 4, 1, 1), "fd": "finitely-determined",
        "C": 6, "T": 2, "ae": 11, "mu_D": 25, "r_i": 6, "r_f": 0, "m": 3,
        "fold_plane": "no-folds",
        "m_fD": 3, "i_D_gamma": 6, "mu_W": 36, "T_oracle": 2,
    }),
    CorpusEntry("no-folds-n4", ("x", "y^4", "(x+y)^5"), {
        "type": (1, 4, 5, 1, 1), "fd": "finitely-determined",
        "C": 12, "T": 12, "ae": 42, "mu_D": 121, "r_i": 12, "r_f": 0, "m": 4,
        "fold_plane": "no-folds",
        "m_fD": 6, "i_D_gamma": 12, "mu_W": 144, "T_oracle": 12,
    }),
    CorpusEntry("unstable-pair-f", ("x", "y^3", "x*y"), {
        "type": (1, 3, 2, 1, 1), "fd": "non-reduced-double-curve",
        "lambda": "x^2", "m": 2, "m_direct": 3,
        "image_eq": "Z^3-X^3*Y", "T_oracle": -1,
    }),
    CorpusEntry("unstable-pair-g", ("x", "y^3", "x*y+y^2"), {
        "type": (1, 3, 2, 1, 1), "fd": "finitely-determined",
        "C": 2, "T": 0, "ae": 1, "mu_D": 1, "r_i": 2, "r_f": 0, "m": 2,
        "lambda": "x^2+x*y+y^2", "m_fD": 1, "i_D_gamma": 2, "mu_W": 4,
        "image_eq": "Z^3-X^3*Y-Y^2-3*X*Y*Z", "T_oracle": 0, "m_direct": 2,
    }),
    CorpusEntry("double-fold", ("x^2", "y^2", "x^3+y^3+x*y"), {
        "corank": 2, "fd": "unsupported-corank-2", "m_direct": 4,
    }),
    CorpusEntry("coprime-powers-235", ("x^2", "y^3", "(x+y)^5"), {
        "corank": 2, "fd": "unsupported-corank-2",
        "type": (2, 3, 5, 1, 1), "m": 6, "m_direct": 6,
    }),
    CorpusEntry("coprime-powers-345", ("x^3", "y^4", "(x+y)^5"), {
        "corank": 2, "fd": "unsupported-corank-2",
        "type": (3, 4, 5, 1, 1), "m": 12, "m_direct": 12,
    }),
)


@dataclass
class CorpusRow:
    label: str
    passed: bool
    failures: list[str] = field(default_factory=list)


def _check(row: CorpusRow, name: str, got, want) -> None:
    if got != want:
        row.passed = False
        row.failures.append(f"{name}: got {got!r}, expected {want!r}")


def check_entry(entry: CorpusEntry, seed: int = 0,
                max_order: int = 64) -> tuple[CorpusRow, AnalysisResult]:
    """Run the full pipeline on one corpus germ and compare against the
    frozen expectations."""
    f = entry.germ()
    res = analyze(f, seed=seed, max_order=max_order)
    rep = res.report
    row = CorpusRow(label=entry.label, passed=True)
    exp = entry.expected

    if "corank" in exp:
        _check(row, "corank", rep.corank, exp["corank"])
    if "type" in exp:
        t = rep.qh_type
        got = (t.d1, t.d2, t.d3, t.a, t.b) if t else None
        _check(row, "type", got, exp["type"])
    if "fd" in exp:
        _check(row, "fd", rep.verdict.value, exp["fd"])
    if "lambda" in exp:
        want = parse_poly(exp["lambda"], XY)
        ok = rep.lam is not None and is_associate(rep.lam, want)
        if not ok:
            row.passed = False
            row.failures.append(f"lambda: got {rep.lam}, expected associate of {want}")
    for key, attr in (("C", "C_formula"), ("T", "T_formula"), ("ae", "ae"),
                      ("m", "m_formula")):
        if key in exp:
            _check(row, key, getattr(rep, attr), Fraction(exp[key]))
    if "mu_D" in exp:
        _check(row, "mu_D", rep.mu_d, exp["mu_D"])
        if rep.mu_d_oracle is not None:
            _check(row, "mu_D(oracle)", rep.mu_d_oracle.value, exp["mu_D"])
    for key in ("r_i", "r_f"):
        if key in exp:
            _check(row, key, getattr(rep, key), exp[key])
    if "s_vector" in exp:
        got = rep.svec.as_tuple() if rep.svec else None
        _check(row, "s_vector", got, exp["s_vector"])
    if "fold_plane" in exp:
        _check(row, "fold_plane", rep.fold_plane, exp["fold_plane"])
    if "m_direct" in exp:
        got = rep.m_direct.value if rep.m_direct else None
        _check(row, "m_direct", got, exp["m_direct"])
    if "image_eq" in exp:
        want = parse_poly(exp["image_eq"], IMAGE_VARS)
        ok = res.image_eq is not None and is_associate(res.image_eq, want)
        if not ok:
            row.passed = False
            row.failures.append(f"image_eq: got {res.image_eq}, expected associate of {want}")
    if "T_oracle" in exp:
        _check(row, "T_oracle", res.triple_oracle, exp["T_oracle"])
    for key in ("m_fD", "i_D_gamma", "mu_W"):
        if key in exp:
            sd = res.slice_data
            got = None
            if sd is not None:
                got = {"m_fD": sd.m_fd, "i_D_gamma": sd.i_d_gamma, "mu_W": sd.mu_w}[key]
            _check(row, key, got, exp[key])
    if res.inconsistencies:
        row.passed = False
        row.failures.extend(f"inconsistency: {msg}" for msg in res.inconsistencies)
    return row, res


def run_corpus(seed: int = 0, max_order: int = 64) -> list[CorpusRow]:
    rows = []
    for entry in CORPUS:
        row, _ = check_entry(entry, seed=seed, max_order=max_order)
        rows.append(row)
    return rows
