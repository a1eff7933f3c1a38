"""Acceptance criteria, one test per criterion, exact equality throughout.

Each test prints a single PASS line on success (run with -s or -v to see
them); any failure is an ordinary assertion failure naming the criterion.
"""

from __future__ import annotations

import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

from germtools.corpus import CORPUS
from germtools.doublepoint import (
    BranchKind,
    Classification,
    FDVerdict,
    branch_decompose,
    fd_analysis,
    fold_image_plane,
    s_vector,
    table_r,
)
from germtools.exactpoly import is_associate, parse_poly
from germtools.germs import (
    check_normal_form,
    corank,
    image_multiplicity_direct,
    image_multiplicity_formula,
    infer_qh_type,
)
from germtools.imagefit import image_equation, presentation_matrix, triple_point_oracle
from germtools.invariants import mond_C, mond_T, mu_d_from_branches, crosscap_oracle
from germtools.localalg import milnor_number
from germtools.transversal import slice_analysis, whitney_family_check
from germtools.germs import FamilyGerm

from conftest import germ, poly


def _fd_corpus_germs():
    out = []
    for entry in CORPUS:
        if entry.expected.get("fd") == "finitely-determined":
            out.append(entry.germ())
    return out


def _ok(label: str, detail: str = "") -> None:
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {label}: PASS{suffix}")


def test_criterion_01_c5_double_point_curve():
    f = germ("x", "y^2", "x*y^3 - x^5*y")
    fd = fd_analysis(f)
    assert fd.verdict is FDVerdict.FD
    assert is_associate(fd.lam, poly("x*y^2 - x^5"))
    bs = branch_decompose(fd.lam, infer_qh_type(f), f)
    axis = [b for b in bs.branches if b.kind is BranchKind.X_AXIS]
    conics = bs.conic_classes()
    assert len(axis) == 1 and axis[0].classification is Classification.FOLD
    assert len(conics) == 1
    pair = conics[0]
    assert pair.count == 2
    assert pair.classification is Classification.IDENTIFICATION
    assert is_associate(pair.factor, poly("y - x^2") * poly("y + x^2"))
    assert (bs.r_i, bs.r_f) == (2, 1)
    _ok("1", "lambda ~ x*y^2 - x^5, branches fold + identification pair, r=(2,1)")


MOND_LIST = [
    ("S1", ("x", "y^2", "y^3 - x^2*y"), (2, 0), "multiplicity 2, a odd, s=0"),
    ("S2", ("x", "y^2", "y^3 + x^3*y"), (0, 1), "multiplicity 2, a even, s=0"),
    ("C3", ("x", "y^2", "x*y^3 - x^3*y"), (2, 1), "multiplicity 2, a odd, s=1"),
    ("C4", ("x", "y^2", "x*y^3 + x^4*y"), (0, 2), "multiplicity 2, a even, s=1"),
]


def test_criterion_02_multiplicity_two_quadruple():
    for label, coords, expected, rule in MOND_LIST:
        f = germ(*coords, label=label)
        fd = fd_analysis(f)
        qh = infer_qh_type(f)
        bs = branch_decompose(fd.lam, qh, f)
        assert (bs.r_i, bs.r_f) == expected, label
        tc = table_r(check_normal_form(f, qh), qh)
        assert tc.applicable and (tc.r_i, tc.r_f) == expected, label
        assert tc.rule == rule, label
    _ok("2", "S1 (2,0), S2 (0,1), C3 (2,1), C4 (0,2), table rows matched")


TABLE3 = [
    (("x", "y^4", "x^5*y + x*y^5 + y^6"), (1, 0, 0), (14, 1)),
    (("x", "y^4", "2*y^13 + x^2*y + 3*x*y^7"), (0, 1, 0), (4, 2)),
    (("x", "y^5 + x*y", "y^6"), (0, 0, 1), (4, 1)),
    (("x", "y^3", "y^5 + x^2*y"), (0, 0, 0), (4, 0)),
]


def test_criterion_03_higher_multiplicity_table():
    for coords, svec_want, r_want in TABLE3:
        f = germ(*coords)
        fd = fd_analysis(f)
        qh = infer_qh_type(f)
        nf = check_normal_form(f, qh)
        svec = s_vector(nf, qh)
        assert svec.as_tuple() == svec_want, coords
        bs = branch_decompose(fd.lam, qh, f)
        assert (bs.r_i, bs.r_f) == r_want, coords          # direct classification
        tc = table_r(nf, qh)
        assert tc.applicable and (tc.r_i, tc.r_f) == r_want, coords   # closed form
        assert tc.r_total == r_want[0] + r_want[1], coords  # product-formula count
    _ok("3", "four gcd-vector cases, direct = table, component counts consistent")


def test_criterion_04_formula_vs_oracle():
    fd_germs = _fd_corpus_germs()
    assert len(fd_germs) >= 10
    checked_c = checked_mu = checked_t = 0
    for f in fd_germs:
        qh = infer_qh_type(f)
        res = crosscap_oracle(f)
        assert Fraction(res.expect_finite()) == mond_C(qh), f.label
        checked_c += 1
        fd = fd_analysis(f)
        bs = branch_decompose(fd.lam, qh, f)
        assert mu_d_from_branches(bs) == milnor_number(fd.lam).expect_finite(), f.label
        checked_mu += 1
        t_res = triple_point_oracle(f)
        if t_res is not None:
            assert Fraction(t_res.expect_finite()) == mond_T(qh), f.label
            checked_t += 1
    assert checked_t >= 5
    _ok("4", f"C formula = ramification colength on {checked_c} germs, "
             f"mu_D dual paths on {checked_mu}, T oracle on {checked_t}")


def test_criterion_05_image_equations():
    tgt = lambda s: parse_poly(s, ("X", "Y", "Z"))
    cases = [
        (("x", "y^3", "x*y"), "Z^3 - X^3*Y"),
        (("x", "y^3", "x*y + y^2"), "Z^3 - X^3*Y - Y^2 - 3*X*Y*Z"),
        (("x", "y^2", "x*y^3 - x^5*y"), "Z^2 - X^2*Y^3 + 2*X^6*Y^2 - X^10*Y"),
    ]
    for coords, expected in cases:
        f = germ(*coords)
        ie = image_equation(f)
        assert is_associate(ie.poly, tgt(expected)), coords
        pm = presentation_matrix(f)
        assert pm is not None
        assert is_associate(pm.det(), ie.poly), coords
    checked = 0
    for f in _fd_corpus_germs():
        pm = presentation_matrix(f)
        if pm is None:
            continue
        ie = image_equation(f)
        if ie.reduced:
            assert is_associate(pm.det(), ie.poly), f.label
            checked += 1
    _ok("5", f"three quoted equations up to unit; det = resultant on {checked} germs")


def test_criterion_06_image_multiplicity():
    for f in _fd_corpus_germs():
        qh = infer_qh_type(f)
        want = image_multiplicity_formula(qh)
        got = image_multiplicity_direct(f).expect_finite()
        assert Fraction(got) == want, f.label
    # explicitly quoted values
    assert image_multiplicity_direct(germ("x", "y^2", "x*y^3 - x^5*y")).value == 2
    assert image_multiplicity_direct(
        germ("x", "y^4", "x^5*y - 5*x^3*y^3 + 4*x*y^5 + y^6")).value == 4
    # pairwise-coprime power germs of corank 2: multiplicity n*m
    for coords, nm in [(("x^2", "y^3", "(x+y)^5"), 6),
                       (("x^3", "y^4", "(x+y)^5"), 12)]:
        f = germ(*coords)
        assert corank(f) == 2
        qh = infer_qh_type(f)
        assert image_multiplicity_formula(qh) == nm
        assert image_multiplicity_direct(f).expect_finite() == nm
    # divergence without finite determinacy, and its determined partner
    unstable = germ("x", "y^3", "x*y")
    partner = germ("x", "y^3", "x*y + y^2")
    assert image_multiplicity_direct(unstable).value == 3
    assert image_multiplicity_formula(infer_qh_type(unstable)) == 2
    assert image_multiplicity_direct(partner).value == 2
    assert image_multiplicity_formula(infer_qh_type(partner)) == 2
    _ok("6", "formula = projection colength on all determined germs; "
             "unstable germ diverges 3 != 2")


def test_criterion_07_slice_identities_three_seeds():
    count = 0
    for f in _fd_corpus_germs():
        fd = fd_analysis(f)
        if fd.lam.is_constant() or corank(f) != 1:
            continue
        qh = infer_qh_type(f)
        bs = branch_decompose(fd.lam, qh, f)
        mu_d = fd.mu_d.expect_finite()
        for seed in (0, 1, 2):
            data = slice_analysis(f, fd.lam, bs, mu_d, seed=seed)
            assert not data.inconsistencies, (f.label, seed, data.inconsistencies)
            assert data.i_d_gamma == 2 * data.m_fd, (f.label, seed)
            assert data.mu_w_oracle == data.mu_w_identity, (f.label, seed)
            m_d = fd.lam.order_at_origin()
            assert m_d * data.plane.gamma.order_at_origin() <= 2 * data.m_fd
            count += 1
    c5 = germ("x", "y^2", "x*y^3 - x^5*y")
    fd = fd_analysis(c5)
    bs = branch_decompose(fd.lam, infer_qh_type(c5), c5)
    data = slice_analysis(c5, fd.lam, bs, fd.mu_d.value, seed=0)
    assert (fd.mu_d.value, data.m_fd, data.i_d_gamma, data.mu_w) == (6, 2, 4, 13)
    _ok("7", f"{count} (germ, seed) slice checks; C5 gives mu_D=6, m=2, i=4, mu_W=13")


def test_criterion_08_fold_images_and_identification_pairs():
    checked = 0
    planes = {}
    for f in _fd_corpus_germs():
        qh = infer_qh_type(f)
        if corank(f) != 1:
            continue
        mult = image_multiplicity_formula(qh)
        if mult < 3:
            continue
        fd = fd_analysis(f)
        bs = branch_decompose(fd.lam, qh, f)
        assert bs.r_i >= 2, f.label
        nf = check_normal_form(f, qh)
        svec = s_vector(nf, qh) if nf else None
        planes[f.label] = fold_image_plane(f, bs, svec)
        checked += 1
    assert checked >= 5
    assert planes["table3-row2"] == "Z=0"
    assert planes["table3-row1"] == "X=0"
    assert planes["table3-row3"] == "Y=0"
    assert planes["table3-row4"] == "no-folds"
    _ok("8", f"r_i >= 2 and a unique fold plane on {checked} germs of multiplicity >= 3")


def test_criterion_09_whitney_families():
    W = ("x", "y", "t")
    P = lambda s: parse_poly(s, W)
    samples = [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2)]

    c5_fam = FamilyGerm(P("x"), P("y^2"), P("x*y^3 - x^5*y + t*x^3*y^2"), "t")
    res = whitney_family_check(c5_fam, samples)
    assert res.mu_w_constant and res.m_image_constant
    assert {s.mu_w for s in res.samples} == {13}

    s1_fam = FamilyGerm(P("x"), P("y^2"), P("y^3 - x^2*y + t*x^3"), "t")
    res = whitney_family_check(s1_fam, samples)
    assert res.mu_w_constant and res.m_image_constant
    assert {s.mu_w for s in res.samples} == {4}

    breaking = FamilyGerm(P("x"), P("y^2"), P("x*y^3 - x^5*y + t*x^5*y"), "t")
    res = whitney_family_check(breaking, [Fraction(0), Fraction(1),
                                          Fraction(-1), Fraction(2)])
    assert not res.mu_w_constant
    by_t = {s.t: s.verdict for s in res.samples}
    assert by_t[Fraction(1)] is FDVerdict.NON_REDUCED_D
    assert all(v is FDVerdict.FD for t, v in by_t.items() if t != 1)
    _ok("9", "constant mu_W and multiplicity on two unfoldings; "
             "degeneration reported at its sample")


def test_criterion_10_property_suites_standalone():
    suite = Path(__file__).with_name("test_properties.py")
    t0 = time.time()
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", str(suite)],
        capture_output=True, text=True, timeout=120)
    elapsed = time.time() - t0
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert elapsed < 60.0, f"property suites took {elapsed:.1f}s"
    _ok("10", f"ring axioms, divided differences, resultant/gcd duality, "
              f"50 staircases in {elapsed:.1f}s")
