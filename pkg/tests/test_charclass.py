import pytest
import sympy

from systems.charclass import (
    ClassKind,
    char_numbers,
    elementary_symmetric,
    facet_power_sum,
    first_sw,
    integral_sw_lift,
    newton_power_sum,
    partitions,
    power_sum_from_pontryagin,
    power_sum_obstruction,
    required_sigma_indices,
    sigma_vanishing_condition,
    total_pontryagin,
    total_sw,
)
from systems.charmatrix import mod2_reduce, parse_matrix
from systems.errors import BadL, BadParams, ModeMismatch, NotTriangularizable, OddDegree
from systems.ring import build_ring


class TestPartitions:
    def test_counts(self):
        assert len(partitions(6)) == 11
        assert len(partitions(4, 2)) == 3
        assert [p.multiplicities for p in partitions(0)] == [()]

    def test_labels(self):
        labels = [p.label("w") for p in partitions(3)]
        assert labels == ["w1^3", "w1*w2", "w3"]
        assert partitions(2)[0].label("w", 2) == "w2^2"
        assert all(p.target == 5 for p in partitions(5))


class TestStiefelWhitney:
    def test_real_projective_plane_does_not_bound(self, rp2):
        R = build_ring(rp2.product, rp2, 1)
        report = char_numbers(R, total_sw(R))
        assert report.values == {"w1^2": 1, "w2": 1}
        assert not report.all_zero

    def test_simplex_pair(self, simplex_pair):
        R = build_ring(simplex_pair.product, simplex_pair, 1)
        u1, u2 = R.variable(0), R.variable(1)
        w = total_sw(R)
        expected = R.product([(R.one() + u1) ** 4, (R.one() + u1 + u2) ** 3, R.one() + u2])
        assert sum(w.components, R.zero()) == expected
        report = char_numbers(R, w)
        assert report.values["w3^2"] == 1
        assert w.kind is ClassKind.SW

    def test_first_sw(self, torus_bundle):
        R = build_ring(torus_bundle.product, torus_bundle, 1)
        assert not first_sw(R).is_zero()
        flat = parse_matrix([1, 1], "Z2", [[1, 0], [0, 1]])
        assert first_sw(build_ring(flat.product, flat, 1)).is_zero()

    def test_mode_checks(self, cyclic_square, rp2):
        Q = build_ring(cyclic_square.product, cyclic_square, 2)
        with pytest.raises(ModeMismatch):
            total_sw(Q)
        with pytest.raises(ModeMismatch):
            integral_sw_lift(build_ring(rp2.product, rp2, 1))
        with pytest.raises(ModeMismatch):
            total_pontryagin(build_ring(rp2.product, rp2, 1))


class TestPontryagin:
    def test_cyclic_square_first_pontryagin_number(self, cyclic_square):
        R = build_ring(cyclic_square.product, cyclic_square, 2)
        p = total_pontryagin(R)
        # p1 = 2(b1 + b2) u1 u2 = 6 u1 u2, and u1 u2 pairs to -1
        assert p.component(2) == R.element({(1, 1): 6})
        report = char_numbers(R, p)
        assert report.values == {"p1": -6}
        assert report.note is not None
        assert p.to_dict() == {"p1": "6*u1*u2"}

    def test_reduced_numbers_vanish(self, cyclic_square):
        A = mod2_reduce(cyclic_square)
        R = build_ring(A.product, A, 2)
        report = char_numbers(R, total_sw(R))
        assert set(report.values) == {"w2^2", "w4"}
        assert report.all_zero

    def test_odd_dimension_has_no_pontryagin_numbers(self):
        A = parse_matrix([2, 1], "Z", [[1, 1, 1], [0, 0, 1]])
        R = build_ring(A.product, A, 2)
        report = char_numbers(R, total_pontryagin(R))
        assert not report.applicable
        assert report.values == {}


class TestNewtonGirard:
    @pytest.mark.parametrize("r", [1, 2, 3, 4])
    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
    def test_matches_brute_force(self, r, k):
        xs = sympy.symbols(f"x1:{r + 1}")
        sigma = elementary_symmetric(list(xs))[1:]
        s_k = newton_power_sum(sigma, k)
        assert sympy.expand(s_k - sum(x ** k for x in xs)) == 0

    def test_elementary_symmetric(self):
        assert elementary_symmetric([1, 2, 3]) == [1, 6, 11, 6]
        assert elementary_symmetric([]) == [1]

    def test_bad_index(self):
        with pytest.raises(BadParams):
            newton_power_sum([1], 0)


class TestSigmaCondition:
    def test_required_indices(self):
        assert required_sigma_indices(1) == []
        assert required_sigma_indices(3) == [1]
        assert required_sigma_indices(7) == [1, 2, 3, 5]
        with pytest.raises(BadL):
            required_sigma_indices(4)

    def test_condition_and_numbers(self):
        # y_1 + y_2 + y_3 = 0 over the last 3-simplex
        A = parse_matrix([1, 3], "Z2", [[1, 1, 1, 0], [0, 1, 1, 1]])
        R = build_ring(A.product, A, 1)
        assert sigma_vanishing_condition(R, R.y_forms(2), 3)
        assert char_numbers(R, total_sw(R)).all_zero

    def test_simplex_pair_fails_condition(self, simplex_pair):
        R = build_ring(simplex_pair.product, simplex_pair, 1)
        assert not sigma_vanishing_condition(R, R.y_forms(2), 3)
        with pytest.raises(BadL):
            sigma_vanishing_condition(R, R.y_forms(2)[:2], 3)


class TestPowerSum:
    def test_nonzero_obstruction(self, bott_square):
        R = build_ring(bott_square.product, bott_square, 2)
        p = total_pontryagin(R)
        assert power_sum_obstruction(R) == 5
        assert facet_power_sum(R) == 5
        assert power_sum_from_pontryagin(R, p) == 5
        assert not char_numbers(R, p).all_zero

    def test_interval_factor_obstruction_vanishes(self):
        A = parse_matrix([1, 1], "Z", [[1, 1], [0, 1]])
        R = build_ring(A.product, A, 2)
        assert power_sum_obstruction(R) == 0
        assert power_sum_from_pontryagin(R, total_pontryagin(R)) == 0

    def test_preconditions(self, rp2, cyclic_square):
        with pytest.raises(ModeMismatch):
            power_sum_obstruction(build_ring(rp2.product, rp2, 1))
        with pytest.raises(NotTriangularizable):
            power_sum_obstruction(build_ring(cyclic_square.product, cyclic_square, 2))
        A = parse_matrix([2, 1], "Z", [[1, 1, 1], [0, 0, 1]])
        with pytest.raises(OddDegree):
            power_sum_obstruction(build_ring(A.product, A, 2))
