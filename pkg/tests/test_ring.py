import pytest

from systems.charmatrix import parse_matrix
from systems.errors import (
    BadParams,
    DegreeOutOfRange,
    ModeMismatch,
    NotCharacteristic,
    NotTopDegree,
    NotTriangularizable,
    ShapeMismatch,
)
from systems.polynomial import Coefficients, Polynomial, monomials_of_degree
from systems.polytope import FacetId, make_product
from systems.ring import (
    Engine,
    basis,
    build_ring,
    degree_rank,
    facet_class,
    normal_form,
    pair_top,
    poincare_ranks,
    vertex_class,
    y_forms,
)


def mono(R, *exps):
    return Polynomial.monomial(R.nvars, R.coefficients, exps)


class TestRealProjectivePlane:
    def test_presentation(self, rp2):
        R = build_ring(rp2.product, rp2, 1)
        u = R.variable(0)
        assert R.engine is Engine.TRIANGULAR
        assert R.relations == [u ** 3]
        assert poincare_ranks(R) == [1, 1, 1]

    def test_top_pairing(self, rp2):
        R = build_ring(rp2.product, rp2, 1)
        assert pair_top(R, mono(R, 2)) == 1
        assert normal_form(R, mono(R, 3)).is_zero()
        with pytest.raises(NotTopDegree):
            pair_top(R, mono(R, 1))


class TestSimplexPair:
    def test_relations(self, simplex_pair):
        R = build_ring(simplex_pair.product, simplex_pair, 1)
        u1, u2 = R.variable(0), R.variable(1)
        assert R.relations == [u1 ** 4, u2 * (u1 + u2) ** 3]
        assert [str(g) for g in R.describe()["relations"]][0] == "u1^4"

    def test_ranks_follow_h_vector(self, simplex_pair):
        R = build_ring(simplex_pair.product, simplex_pair, 1)
        assert poincare_ranks(R) == [1, 2, 3, 4, 3, 2, 1]
        assert degree_rank(R, 3) == 4
        assert basis(R, 6) == [(3, 3)]
        with pytest.raises(DegreeOutOfRange):
            basis(R, 7)

    def test_y_forms_and_facets(self, simplex_pair):
        R = build_ring(simplex_pair.product, simplex_pair, 1)
        u1, u2 = R.variable(0), R.variable(1)
        assert y_forms(R, 2) == [u1, u1, u1]
        assert y_forms(R, 1) == [R.zero()] * 3
        assert facet_class(R, FacetId(2, 1)) == u1 + u2
        assert facet_class(R, FacetId(1, 0)) == u1
        with pytest.raises(BadParams):
            y_forms(R, 3)
        with pytest.raises(BadParams):
            facet_class(R, FacetId(1, 4))

    def test_vertex_class_pairs_to_one(self, simplex_pair):
        R = build_ring(simplex_pair.product, simplex_pair, 1)
        assert pair_top(R, vertex_class(R)) == 1

    def test_engines_agree_on_every_monomial(self, simplex_pair):
        Rt = build_ring(simplex_pair.product, simplex_pair, 1)
        Rg = build_ring(simplex_pair.product, simplex_pair, 1, Engine.GENERIC)
        assert Rg.engine is Engine.GENERIC
        for degree in range(0, 8):
            for exps in monomials_of_degree(2, degree):
                assert Rt.normal_form(mono(Rt, *exps)) == Rg.normal_form(mono(Rg, *exps))
        assert Rg.poincare_ranks() == Rt.poincare_ranks()


class TestCyclicSquare:
    def test_generic_engine_relations(self, cyclic_square):
        R = build_ring(cyclic_square.product, cyclic_square, 2)
        assert R.engine is Engine.GENERIC
        assert R.coefficients is Coefficients.RATIONAL
        # u1^2 = -b2 u1 u2 and u2^2 = -b1 u1 u2 with (b1, b2) = (2, 1)
        assert R.normal_form(mono(R, 2, 0)) == R.element({(1, 1): -1})
        assert R.normal_form(mono(R, 0, 2)) == R.element({(1, 1): -2})
        assert R.top_monomial() == (1, 1)

    def test_orientation_from_vertex_class(self, cyclic_square):
        R = build_ring(cyclic_square.product, cyclic_square, 2)
        assert R.normal_form(vertex_class(R)) == R.element({(1, 1): -1})
        assert pair_top(R, vertex_class(R)) == 1
        assert pair_top(R, mono(R, 1, 1)) == -1
        assert poincare_ranks(R) == [1, 2, 1]

    def test_forcing_triangular_fails(self, cyclic_square):
        with pytest.raises(NotTriangularizable):
            build_ring(cyclic_square.product, cyclic_square, 2, Engine.TRIANGULAR)


class TestBuildRing:
    def test_argument_errors(self, cyclic_square, rp2):
        with pytest.raises(BadParams):
            build_ring(rp2.product, rp2, 3)
        with pytest.raises(ModeMismatch):
            build_ring(cyclic_square.product, cyclic_square, 1)
        with pytest.raises(ShapeMismatch):
            build_ring(make_product([1, 2]), cyclic_square, 2)
        bad = parse_matrix([1, 1], "Z2", [[1, 1], [1, 1]])
        with pytest.raises(NotCharacteristic):
            build_ring(bad.product, bad, 1)

    def test_working_order_is_recorded(self):
        A = parse_matrix([2, 1], "Z2", [[1, 1, 0], [1, 0, 1]])
        R = build_ring(A.product, A, 1)
        assert R.permutation == (1, 0)
        assert R.describe()["factor_order"] == [2, 1]
        assert R.P.dims == (1, 2)
        assert poincare_ranks(R) == [1, 2, 2, 1]

    def test_degrees_above_top_vanish(self, torus_bundle):
        R = build_ring(torus_bundle.product, torus_bundle, 1)
        assert R.multiply(mono(R, 1, 1, 0), mono(R, 0, 1, 1)).is_zero()
        assert R.power(R.variable(0) + R.variable(1), 4).is_zero()

    def test_foreign_polynomials_are_rejected(self, rp2, cyclic_square):
        R = build_ring(rp2.product, rp2, 1)
        with pytest.raises(ModeMismatch):
            R.normal_form(Polynomial.variable(2, Coefficients.MOD_TWO, 0))
        Q = build_ring(cyclic_square.product, cyclic_square, 2)
        with pytest.raises(ModeMismatch):
            Q.normal_form(Polynomial.variable(2, Coefficients.MOD_TWO, 0))
        # integer input is accepted in a rational ring
        assert Q.normal_form(Polynomial.variable(2, Coefficients.INTEGER, 0)) == Q.variable(0)

    def test_warm_up(self, simplex_pair):
        R = build_ring(simplex_pair.product, simplex_pair, 1, Engine.GENERIC)
        R.warm_up()
        assert R.top_monomial() == (3, 3)
