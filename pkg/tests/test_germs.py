from __future__ import annotations

from fractions import Fraction

import pytest

from germtools.exactpoly import parse_poly
from germtools.germs import (
    FamilyGerm,
    MapGerm,
    QhType,
    check_normal_form,
    corank,
    image_multiplicity_direct,
    image_multiplicity_formula,
    infer_qh_type,
    is_finite,
    projection_stream,
)

from conftest import XY, germ, poly


class TestMapGerm:
    def test_origin_preserved(self):
        with pytest.raises(ValueError):
            germ("x + 1", "y", "x*y")

    def test_needs_two_variables(self):
        three = ("x", "y", "z")
        with pytest.raises(ValueError):
            MapGerm(parse_poly("x", three), parse_poly("y", three),
                    parse_poly("z", three))


class TestCorank:
    def test_crosscap(self):
        assert corank(germ("x", "y^2", "x*y")) == 1

    def test_double_fold(self):
        assert corank(germ("x^2", "y^2", "x^3 + y^3 + x*y")) == 2

    def test_immersion(self):
        assert corank(MapGerm(poly("x"), poly("y"), poly("0"))) == 0


class TestQhInference:
    def test_c5(self):
        t = infer_qh_type(germ("x", "y^2", "x*y^3 - x^5*y"))
        assert (t.d1, t.d2, t.d3, t.a, t.b) == (1, 4, 7, 1, 2)
        assert t.delta == 14 and t.epsilon == 9

    def test_s2(self):
        t = infer_qh_type(germ("x", "y^2", "y^3 + x^3*y"))
        assert (t.d1, t.d2, t.d3, t.a, t.b) == (2, 6, 9, 2, 3)

    def test_monomial_map_gets_unit_weights(self):
        t = infer_qh_type(germ("x", "y^3", "x*y"))
        assert (t.d1, t.d2, t.d3, t.a, t.b) == (1, 3, 2, 1, 1)

    def test_not_quasihomogeneous(self):
        assert infer_qh_type(germ("x", "y^2", "y^3 + x*y + x^7*y")) is None
        assert infer_qh_type(germ("x^2", "y^2", "x^3 + y^3 + x*y")) is None

    def test_scaling_invariance(self):
        f = germ("x", "y^2", "x*y^3 - x^5*y")
        g = MapGerm(f.f1.scale(3), f.f2.scale(Fraction(-1, 2)), f.f3.scale(7))
        assert infer_qh_type(f) == infer_qh_type(g)

    def test_type_validation(self):
        with pytest.raises(ValueError):
            QhType(1, 2, 3, 2, 4)  # weights not coprime
        with pytest.raises(ValueError):
            QhType(1, 2, 3, 0, 1)


class TestNormalForm:
    def test_recognised_with_q(self):
        nf = check_normal_form(germ("x", "y^3", "y^5 + x^2*y"))
        assert (nf.n, nf.m, nf.beta) == (3, 5, 1)
        assert nf.p.is_zero
        assert nf.q == poly("x*y")

    def test_recognised_with_p(self):
        nf = check_normal_form(germ("x", "y^5 + x*y", "y^6"))
        assert (nf.n, nf.m, nf.beta) == (5, 6, 1)
        assert nf.p == poly("y")
        assert nf.q.is_zero

    def test_rejects_pure_x_tail(self):
        assert check_normal_form(germ("x", "y^2 + x", "y^3")) is None

    def test_rejects_wrong_first_coordinate(self):
        assert check_normal_form(germ("x + y", "y^2", "x*y")) is None

    def test_beta_zero_flagged(self):
        f = germ("x", "y^2", "x*y^3 - x^5*y")
        nf = check_normal_form(f, infer_qh_type(f))
        assert nf is not None
        assert nf.beta == 0
        assert nf.m is None  # weighted degree 7 is not a multiple of b = 2

    def test_round_trip(self):
        for coords in [("x", "y^3", "y^5 + x^2*y"), ("x", "y^5 + x*y", "y^6"),
                       ("x", "y^2", "y^3 - x^2*y")]:
            f = germ(*coords)
            nf = check_normal_form(f, infer_qh_type(f))
            assert nf.reconstruct(XY) == MapGerm(f.f1, f.f2, f.f3)

    def test_multiple_pure_y_terms_rejected(self):
        assert check_normal_form(germ("x", "y^2 + y^3", "x*y")) is None


class TestFiniteness:
    def test_finite_examples(self):
        assert is_finite(germ("x", "y^3", "x*y"))
        assert is_finite(germ("x", "y^2", "x*y"))

    def test_infinite_fibre(self):
        assert not is_finite(germ("x", "x*y", "x*y^2"))


class TestImageMultiplicity:
    def test_formula_uses_sorted_degrees(self):
        assert image_multiplicity_formula(QhType(1, 4, 7, 1, 2)) == 2
        assert image_multiplicity_formula(QhType(1, 4, 6, 1, 1)) == 4
        assert image_multiplicity_formula(QhType(1, 3, 2, 1, 1)) == 2

    def test_direct_equals_formula_when_stable(self):
        for coords in [("x", "y^2", "x*y"), ("x", "y^2", "x*y^3 - x^5*y"),
                       ("x", "y^3", "x*y + y^2")]:
            f = germ(*coords)
            t = infer_qh_type(f)
            direct = image_multiplicity_direct(f)
            assert direct.finite
            assert Fraction(direct.value) == image_multiplicity_formula(t)

    def test_divergence_without_finite_determinacy(self):
        f = germ("x", "y^3", "x*y")
        assert image_multiplicity_direct(f).value == 3
        assert image_multiplicity_formula(infer_qh_type(f)) == 2

    def test_normal_form_multiplicity_is_n(self):
        # n < m: the image multiplicity is the y-power of the second coordinate
        f = germ("x", "y^3", "y^5 + x^2*y")
        assert image_multiplicity_direct(f).value == 3

    def test_explicit_projection(self):
        f = germ("x", "y^2", "x*y")
        res = image_multiplicity_direct(f, proj=((1, 1, 0), (0, 1, 1)))
        assert res.finite

    def test_projection_stream_deterministic(self):
        assert projection_stream(5) == projection_stream(5)
        assert projection_stream(5) != projection_stream(6)


class TestFamilyGerm:
    def _family(self):
        W = ("x", "y", "t")
        P = lambda s: parse_poly(s, W)
        return FamilyGerm(P("x"), P("y^2"), P("x*y^3 - x^5*y + t*x^3*y^2"), "t")

    def test_specialize(self):
        fam = self._family()
        f0 = fam.specialize(0)
        assert f0.f3 == poly("x*y^3 - x^5*y")
        f1 = fam.specialize(Fraction(1, 2))
        assert f1.f3 == poly("x*y^3 - x^5*y + 1/2*x^3*y^2")

    def test_origin_violation_rejected(self):
        W = ("x", "y", "t")
        P = lambda s: parse_poly(s, W)
        with pytest.raises(ValueError):
            FamilyGerm(P("x"), P("y^2"), P("x*y + t"), "t")
