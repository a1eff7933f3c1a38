from __future__ import annotations

import pytest

from germtools.doublepoint import (
    BranchKind,
    Classification,
    FDVerdict,
    branch_decompose,
    classify_branch,
    count_components,
    double_point_curve,
    double_point_lift,
    fd_analysis,
    fold_image_plane,
    is_finitely_determined,
    s_vector,
    table_r,
)
from germtools.exactpoly import is_associate, parse_poly
from germtools.germs import check_normal_form, infer_qh_type

from conftest import germ, poly

YP = ("x", "y", "y'")


class TestLift:
    def test_crosscap(self):
        lift = double_point_lift(germ("x", "y^2", "x*y"))
        assert lift.P == parse_poly("y + y'", YP)
        assert lift.Q == parse_poly("x", YP)

    def test_c5(self):
        lift = double_point_lift(germ("x", "y^2", "x*y^3 - x^5*y"))
        assert lift.P == parse_poly("y + y'", YP)
        assert lift.Q == parse_poly("x*(y^2 + y*y' + y'^2) - x^5", YP)

    def test_unstable_partner(self):
        lift = double_point_lift(germ("x", "y^3", "x*y + y^2"))
        assert lift.P == parse_poly("y^2 + y*y' + y'^2", YP)
        assert lift.Q == parse_poly("x + y + y'", YP)

    def test_requires_x_first(self):
        with pytest.raises(ValueError):
            double_point_lift(germ("x + y^2", "y^2", "x*y"))


class TestDoubleCurve:
    def test_c5(self):
        lam = double_point_curve(germ("x", "y^2", "x*y^3 - x^5*y"))
        assert is_associate(lam, poly("x*y^2 - x^5"))

    def test_non_reduced(self):
        lam = double_point_curve(germ("x", "y^3", "x*y"))
        assert is_associate(lam, poly("x^2"))

    def test_crosscap(self):
        assert is_associate(double_point_curve(germ("x", "y^2", "x*y")), poly("x"))

    def test_not_generically_one_to_one(self):
        assert double_point_curve(germ("x", "y^2", "y^4")).is_zero


class TestVerdicts:
    def test_fd(self):
        assert is_finitely_determined(germ("x", "y^2", "x*y^3 - x^5*y")) is FDVerdict.FD

    def test_non_reduced(self):
        assert is_finitely_determined(germ("x", "y^3", "x*y")) is FDVerdict.NON_REDUCED_D

    def test_fd_partner(self):
        assert is_finitely_determined(germ("x", "y^3", "x*y + y^2")) is FDVerdict.FD

    def test_not_finite(self):
        assert is_finitely_determined(germ("x", "x*y", "x*y^2")) is FDVerdict.NOT_FINITE

    def test_not_generically_one_to_one(self):
        assert is_finitely_determined(germ("x", "y^2", "y^4")) \
            is FDVerdict.NOT_GENERICALLY_ONE_TO_ONE

    def test_corank_two_unsupported(self):
        assert is_finitely_determined(germ("x^2", "y^2", "x^3 + y^3 + x*y")) \
            is FDVerdict.UNSUPPORTED_CORANK

    def test_mu_d_recorded(self):
        fd = fd_analysis(germ("x", "y^2", "x*y^3 - x^5*y"))
        assert fd.mu_d.value == 6


class TestBranchDecomposition:
    def _branches(self, *coords):
        f = germ(*coords)
        fd = fd_analysis(f)
        qh = infer_qh_type(f)
        return branch_decompose(fd.lam, qh, f), f, qh

    def test_c5(self):
        bs, f, qh = self._branches("x", "y^2", "x*y^3 - x^5*y")
        assert bs.s == 1 and bs.v == 0
        kinds = {br.kind for br in bs.branches}
        assert kinds == {BranchKind.X_AXIS, BranchKind.CONIC}
        conic = bs.conic_classes()[0]
        assert str(conic.class_poly) == "t^2 - 1"
        assert conic.count == 2
        assert conic.classification is Classification.IDENTIFICATION
        axis = next(b for b in bs.branches if b.kind is BranchKind.X_AXIS)
        assert axis.classification is Classification.FOLD

    def test_crosscap_axis_only(self):
        bs, _, _ = self._branches("x", "y^2", "x*y")
        assert bs.s == 1 and bs.v == 0 and not bs.conic_classes()

    def test_unstable_partner_classes(self):
        bs, _, _ = self._branches("x", "y^3", "x*y + y^2")
        assert bs.s == 0 and bs.v == 0
        (conic,) = bs.conic_classes()
        assert str(conic.class_poly) == "t^2 + t + 1"
        assert conic.classification is Classification.IDENTIFICATION

    def test_s2_fold_conic(self):
        bs, f, qh = self._branches("x", "y^2", "y^3 + x^3*y")
        (conic,) = bs.conic_classes()
        assert conic.classification is Classification.FOLD
        assert conic.vanishing_f3 and not conic.vanishing_f2
        assert classify_branch(conic, f, qh) is Classification.FOLD

    def test_factor_product_reconstructs_curve(self):
        bs, _, _ = self._branches("x", "y^4", "2*y^13 + x^2*y + 3*x*y^7")
        prod = poly("1")
        if bs.s:
            prod = prod * poly("x")
        if bs.v:
            prod = prod * poly("y")
        for br in bs.conic_classes():
            prod = prod * br.factor
        assert is_associate(prod, bs.lam)

    def test_vanishing_splits_classes(self):
        # table3-row2: two fold conics divide f3, four identification ones do not
        bs, _, _ = self._branches("x", "y^4", "2*y^13 + x^2*y + 3*x*y^7")
        folds = [b for b in bs.conic_classes() if b.classification is Classification.FOLD]
        idents = [b for b in bs.conic_classes()
                  if b.classification is Classification.IDENTIFICATION]
        assert sum(b.count for b in folds) == 2
        assert all(b.vanishing_f3 for b in folds)
        assert sum(b.count for b in idents) == 4


COUNT_CASES = [
    (("x", "y^2", "x*y"), (0, 1)),
    (("x", "y^2", "y^3 - x^2*y"), (2, 0)),
    (("x", "y^2", "y^3 + x^3*y"), (0, 1)),
    (("x", "y^2", "x*y^3 - x^3*y"), (2, 1)),
    (("x", "y^2", "x*y^3 + x^4*y"), (0, 2)),
    (("x", "y^2", "x*y^3 - x^5*y"), (2, 1)),
    (("x", "y^4", "x^5*y + x*y^5 + y^6"), (14, 1)),
    (("x", "y^4", "2*y^13 + x^2*y + 3*x*y^7"), (4, 2)),
    (("x", "y^5 + x*y", "y^6"), (4, 1)),
    (("x", "y^3", "y^5 + x^2*y"), (4, 0)),
    (("x", "y^2", "y*(x - y^2)*(x - 2*y^2)"), (0, 2)),
    (("x", "y^3", "(x+y)^4"), (6, 0)),
]


class TestCounts:
    @pytest.mark.parametrize("coords,expected", COUNT_CASES)
    def test_direct_counts(self, coords, expected):
        assert count_components(germ(*coords)) == expected

    @pytest.mark.parametrize("coords,expected", COUNT_CASES)
    def test_identification_count_even(self, coords, expected):
        r_i, _ = count_components(germ(*coords))
        assert r_i % 2 == 0

    def test_rejects_non_fd(self):
        with pytest.raises(ValueError):
            count_components(germ("x", "y^3", "x*y"))


TABLE_CASES = [
    # multiplicity 2, both parities of a, s in {0, 1}
    (("x", "y^2", "y^3 - x^2*y"), (2, 0), "multiplicity 2, a odd, s=0"),
    (("x", "y^2", "y^3 + x^3*y"), (0, 1), "multiplicity 2, a even, s=0"),
    (("x", "y^2", "x*y^3 - x^3*y"), (2, 1), "multiplicity 2, a odd, s=1"),
    (("x", "y^2", "x*y^3 + x^4*y"), (0, 2), "multiplicity 2, a even, s=1"),
    (("x", "y^2", "x*y^3 - x^5*y"), (2, 1), "multiplicity 2, a odd, s=1"),
    # multiplicity >= 3: one row per gcd-vector case
    (("x", "y^4", "x^5*y + x*y^5 + y^6"), (14, 1), "s1=1"),
    (("x", "y^4", "2*y^13 + x^2*y + 3*x*y^7"), (4, 2), "s2=1"),
    (("x", "y^5 + x*y", "y^6"), (4, 1), "s3=1"),
    (("x", "y^3", "y^5 + x^2*y"), (4, 0), "s=0"),
]


class TestTables:
    @pytest.mark.parametrize("coords,expected,rule", TABLE_CASES)
    def test_table_counts(self, coords, expected, rule):
        f = germ(*coords)
        qh = infer_qh_type(f)
        nf = check_normal_form(f, qh)
        tc = table_r(nf, qh)
        assert tc.applicable
        assert (tc.r_i, tc.r_f) == expected
        assert tc.rule == rule
        assert tc.r_total == expected[0] + expected[1]

    @pytest.mark.parametrize("coords,expected,rule", TABLE_CASES)
    def test_table_matches_direct(self, coords, expected, rule):
        assert count_components(germ(*coords)) == expected

    def test_s_vectors(self):
        expected = {
            ("x", "y^4", "x^5*y + x*y^5 + y^6"): (1, 0, 0),
            ("x", "y^4", "2*y^13 + x^2*y + 3*x*y^7"): (0, 1, 0),
            ("x", "y^5 + x*y", "y^6"): (0, 0, 1),
            ("x", "y^3", "y^5 + x^2*y"): (0, 0, 0),
        }
        for coords, want in expected.items():
            f = germ(*coords)
            qh = infer_qh_type(f)
            svec = s_vector(check_normal_form(f, qh), qh)
            assert svec.as_tuple() == want
            assert svec.valid

    def test_not_applicable_out_of_normal_form(self):
        f = germ("x", "y^3", "(x+y)^4")
        qh = infer_qh_type(f)
        assert check_normal_form(f, qh) is None


class TestFoldPlanes:
    def _plane(self, *coords):
        f = germ(*coords)
        fd = fd_analysis(f)
        qh = infer_qh_type(f)
        bs = branch_decompose(fd.lam, qh, f)
        nf = check_normal_form(f, qh)
        svec = s_vector(nf, qh) if nf else None
        return fold_image_plane(f, bs, svec)

    def test_z_plane(self):
        assert self._plane("x", "y^4", "2*y^13 + x^2*y + 3*x*y^7") == "Z=0"

    def test_no_folds(self):
        assert self._plane("x", "y^3", "y^5 + x^2*y") == "no-folds"

    def test_x_plane(self):
        assert self._plane("x", "y^4", "x^5*y + x*y^5 + y^6") == "X=0"

    def test_y_plane(self):
        assert self._plane("x", "y^5 + x*y", "y^6") == "Y=0"


class TestInvariantProperties:
    @pytest.mark.parametrize("coords", [c for c, _ in COUNT_CASES])
    def test_restriction_degree_at_most_two(self, coords):
        f = germ(*coords)
        fd = fd_analysis(f)
        bs = branch_decompose(fd.lam, infer_qh_type(f), f)
        assert all(br.degree in (1, 2) for br in bs.branches)

    @pytest.mark.parametrize("coords", [
        ("x", "y^4", "x^5*y + x*y^5 + y^6"),
        ("x", "y^4", "2*y^13 + x^2*y + 3*x*y^7"),
        ("x", "y^5 + x*y", "y^6"),
        ("x", "y^3", "y^5 + x^2*y"),
        ("x", "y^3", "(x+y)^4"),
        ("x", "y^4", "(x+y)^5"),
    ])
    def test_multiplicity_three_has_identification_pair(self, coords):
        r_i, _ = count_components(germ(*coords))
        assert r_i >= 2

    @pytest.mark.parametrize("coords", [
        ("x", "y^2", "x*y^3 - x^5*y"),
        ("x", "y^2", "y*(x - y^2)*(x - 2*y^2)"),
        ("x", "y^2", "y^3 - x^2*y"),
    ])
    def test_no_y_axis_branch_at_multiplicity_two(self, coords):
        f = germ(*coords)
        fd = fd_analysis(f)
        bs = branch_decompose(fd.lam, infer_qh_type(f), f)
        assert bs.v == 0

    def test_lambda_degree_is_delta_minus_epsilon(self):
        from germtools.exactpoly import qh_check
        for coords in [c for c, _ in COUNT_CASES]:
            f = germ(*coords)
            fd = fd_analysis(f)
            qh = infer_qh_type(f)
            d = qh_check(fd.lam, qh.weights)
            assert d == qh.delta - qh.epsilon
