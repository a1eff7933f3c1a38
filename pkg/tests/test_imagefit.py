from __future__ import annotations

from fractions import Fraction

import pytest

from germtools.exactpoly import is_associate, parse_poly, qh_check
from germtools.germs import infer_qh_type
from germtools.imagefit import (
    IMAGE_VARS,
    fitting_loci,
    image_equation,
    presentation_matrix,
    triple_point_oracle,
)
from germtools.invariants import mond_T

from conftest import germ


def tgt(text: str):
    return parse_poly(text, IMAGE_VARS)


class TestImageEquation:
    def test_monomial_cubic(self):
        ie = image_equation(germ("x", "y^3", "x*y"))
        assert is_associate(ie.poly, tgt("Z^3 - X^3*Y"))
        assert ie.reduced

    def test_perturbed_cubic(self):
        ie = image_equation(germ("x", "y^3", "x*y + y^2"))
        assert is_associate(ie.poly, tgt("Z^3 - X^3*Y - Y^2 - 3*X*Y*Z"))

    def test_c5(self):
        ie = image_equation(germ("x", "y^2", "x*y^3 - x^5*y"))
        assert is_associate(ie.poly, tgt("Z^2 - X^2*Y^3 + 2*X^6*Y^2 - X^10*Y"))

    def test_crosscap(self):
        ie = image_equation(germ("x", "y^2", "x*y"))
        assert is_associate(ie.poly, tgt("Z^2 - X^2*Y"))

    def test_double_cover_flagged_nonreduced(self):
        ie = image_equation(germ("x", "y^2", "y^4"))
        assert not ie.reduced
        assert is_associate(ie.poly, tgt("Z - Y^2"))

    def test_degenerate_inputs_rejected(self):
        with pytest.raises(ValueError):
            image_equation(germ("x", "x^2", "x^3"))

    @pytest.mark.parametrize("coords", [
        ("x", "y^2", "x*y^3 - x^5*y"),
        ("x", "y^3", "x*y + y^2"),
        ("x", "y^4", "x^5*y + x*y^5 + y^6"),
        ("x", "y^4", "2*y^13 + x^2*y + 3*x*y^7"),
        ("x", "y^5 + x*y", "y^6"),
        ("x", "y^3", "y^5 + x^2*y"),
        ("x", "y^4", "(x+y)^5"),
    ])
    def test_vanishes_on_image(self, coords):
        f = germ(*coords)
        F = image_equation(f).poly
        composed = parse_poly("0", f.vars)
        for (ex, ey, ez), c in F.terms.items():
            term = parse_poly("1", f.vars).scale(c)
            term = term * f.f1 ** ex * f.f2 ** ey * f.f3 ** ez
            composed = composed + term
        assert composed.is_zero

    @pytest.mark.parametrize("coords", [
        ("x", "y^2", "x*y^3 - x^5*y"),
        ("x", "y^3", "y^5 + x^2*y"),
        ("x", "y^5 + x*y", "y^6"),
        ("x", "y^4", "2*y^13 + x^2*y + 3*x*y^7"),
    ])
    def test_weighted_degree_of_image(self, coords):
        # the image equation is quasihomogeneous for the degree weights,
        # of degree delta = d1*d2*d3/(a*b)
        f = germ(*coords)
        t = infer_qh_type(f)
        F = image_equation(f).poly
        assert qh_check(F, t.degrees) == t.delta

    @pytest.mark.parametrize("coords,mult", [
        (("x", "y^2", "x*y^3 - x^5*y"), 2),
        (("x", "y^3", "y^5 + x^2*y"), 3),
        (("x", "y^4", "x^5*y + x*y^5 + y^6"), 4),
        (("x", "y^5 + x*y", "y^6"), 5),
    ])
    def test_order_is_multiplicity(self, coords, mult):
        assert image_equation(germ(*coords)).poly.order_at_origin() == mult


class TestPresentationMatrix:
    def test_monomial_cubic_matrix_matches_reference(self):
        pm = presentation_matrix(germ("x", "y^3", "x*y"))
        rows = [[str(e) for e in row] for row in pm.entries]
        assert rows == [["Z", "-X", "0"], ["0", "Z", "-X"], ["-X*Y", "0", "Z"]]

    def test_crosscap_matrix(self):
        pm = presentation_matrix(germ("x", "y^2", "x*y"))
        assert pm.size == 2
        assert is_associate(pm.det(), tgt("Z^2 - X^2*Y"))

    def test_perturbed_cubic_det(self):
        pm = presentation_matrix(germ("x", "y^3", "x*y + y^2"))
        assert is_associate(pm.det(), tgt("Z^3 - X^3*Y - Y^2 - 3*X*Y*Z"))

    def test_not_applicable_off_the_monic_subclass(self):
        assert presentation_matrix(germ("x", "y^5 + x*y", "y^6")) is None
        assert presentation_matrix(germ("x", "2*y^2", "x*y")) is None

    @pytest.mark.parametrize("coords", [
        ("x", "y^2", "x*y^3 - x^5*y"),
        ("x", "y^3", "x*y + y^2"),
        ("x", "y^4", "x^5*y + x*y^5 + y^6"),
        ("x", "y^4", "(x+y)^5"),
        ("x", "y^2", "y*(x - y^2)*(x - 2*y^2)"),
    ])
    def test_det_is_associate_of_resultant(self, coords):
        f = germ(*coords)
        pm = presentation_matrix(f)
        ie = image_equation(f)
        assert ie.reduced
        assert is_associate(pm.det(), ie.poly)


class TestFittingLoci:
    def test_crosscap_loci(self):
        pm = presentation_matrix(germ("x", "y^2", "x*y"))
        loci = fitting_loci(pm)
        assert is_associate(loci.equation, tgt("Z^2 - X^2*Y"))
        entries = {str(g) for g in loci.double_curve}
        assert entries == {"Z", "-X", "-X*Y"}
        # 2x2 matrix: the triple ideal is the whole ring
        assert [str(g) for g in loci.triple_ideal] == ["1"]

    def test_monomial_cubic_triple_ideal(self):
        pm = presentation_matrix(germ("x", "y^3", "x*y"))
        loci = fitting_loci(pm)
        gens = {str(g) for g in loci.triple_ideal}
        assert gens == {"Z", "-X", "-X*Y"}


class TestTriplePointOracle:
    @pytest.mark.parametrize("coords", [
        ("x", "y^2", "x*y"),
        ("x", "y^2", "x*y^3 - x^5*y"),
        ("x", "y^2", "y^3 + x^3*y"),
        ("x", "y^2", "y*(x - y^2)*(x - 2*y^2)"),
    ])
    def test_multiplicity_two_has_no_triple_points(self, coords):
        assert triple_point_oracle(germ(*coords)).value == 0

    def test_table3_row4(self):
        f = germ("x", "y^3", "y^5 + x^2*y")
        res = triple_point_oracle(f)
        assert res.value == 2
        assert Fraction(res.value) == mond_T(infer_qh_type(f))

    @pytest.mark.parametrize("coords", [
        ("x", "y^3", "x*y + y^2"),
        ("x", "y^4", "x^5*y + x*y^5 + y^6"),
        ("x", "y^4", "2*y^13 + x^2*y + 3*x*y^7"),
        ("x", "y^3", "(x+y)^4"),
        ("x", "y^4", "(x+y)^5"),
    ])
    def test_oracle_matches_formula(self, coords):
        f = germ(*coords)
        res = triple_point_oracle(f)
        assert Fraction(res.value) == mond_T(infer_qh_type(f))

    def test_unstable_germ_is_infinite(self):
        res = triple_point_oracle(germ("x", "y^3", "x*y"))
        assert res is not None and not res.finite

    def test_not_applicable(self):
        assert triple_point_oracle(germ("x", "y^5 + x*y", "y^6")) is None
