import pytest

from systems.charmatrix import parse_matrix, principal_minors_all_one
from systems.cobordism import verdict
from systems.errors import BadParams, UnknownTheorem
from systems.verification import VerificationResult, VerificationSystem, engines_agree

# triangular only in the order (1, 2, 0): the interval factor sits in the middle
MIDDLE_INTERVAL_ROWS = [[1, 1, 0, 0, 0], [0, 1, 1, 1, 0], [1, 0, 0, 0, 1]]


@pytest.fixture
def system():
    return VerificationSystem(seed=11)


def test_simplex_pair_example(system):
    result = system.verify("example_3_7")
    assert result.passed
    assert result.instances == 1
    assert result.details["w3_squared"] == 1
    assert result.to_dict()["w3_squared"] == 1
    assert result.to_dict()["theorem"] == "example_3_7"


def test_descriptive_aliases(system):
    result = system.verify("simplex_pair_example")
    assert result.theorem_id == "example_3_7"
    assert set(VerificationSystem.ALIASES.values()) <= set(system.available())
    assert {"thm_2_5", "thm_3_4", "thm_3_6", "thm_4_3", "thm_4_5", "thm_4_7", "example_3_7",
            "example_4_6", "lemma_3_3", "lemma_2_4", "prop_3_5", "lemma_4_1"} <= set(system.available())


def test_real_bott_cube_counts(system):
    result = system.verify("thm_2_5", {"n": 4})
    assert result.passed
    assert result.instances == 64
    small = system.verify("thm_2_5", {"n": [2, 3], "engines": True})
    assert small.details["instances_by_n"] == {"2": 2, "3": 8}
    assert small.passed


def test_interval_factor_small_products(system):
    result = system.verify("thm_3_4", {"dims": [[1, 1], [2, 1]], "engines": True})
    assert result.passed
    assert result.details["instances_by_dims"] == {"1,1": 3, "2,1": 5}
    with pytest.raises(BadParams):
        system.verify("thm_3_4", {"dims": [[2, 2]]})


def test_interval_factor_in_the_middle_is_a_counterexample(system):
    result = system.verify("thm_3_4", {"dims": [[2, 2, 1]]})
    assert result.instances == 157
    assert not result.passed
    assert len(result.counterexamples) == 48
    pinned = [c for c in result.counterexamples if c["rows"] == MIDDLE_INTERVAL_ROWS]
    assert len(pinned) == 1
    assert pinned[0]["numbers"] == {"w2*w3": 1}
    assert pinned[0]["order"] == [1, 2, 0]

    last = system.verify("thm_3_4", {"dims": [[2, 2, 1]], "interval_last": True})
    assert last.passed
    assert 16 <= last.instances < 157


def test_middle_interval_generalized_bott_does_not_bound():
    A = parse_matrix([2, 2, 1], "Z", MIDDLE_INTERVAL_ROWS)
    assert principal_minors_all_one(A)
    v = verdict(A.product, A)
    assert not v.unoriented_boundary
    assert v.sw_numbers.nonzero() == {"w4*w6": 1}


def test_sigma_condition(system):
    result = system.verify("thm_3_6")
    assert result.passed
    assert result.details["qualifying"] >= 1
    assert result.details["control_condition"] is False
    assert result.details["control_sw_all_zero"] is False


def test_cyclic_even_cube(system):
    result = system.verify("thm_4_5", {"b": [2, 1]})
    assert result.passed
    assert result.details["p1_abs"] == 6
    family = system.verify("thm_4_5", {"k": 1})
    assert family.instances == 4
    assert family.details["p1_abs"] == 6
    with pytest.raises(BadParams):
        system.verify("thm_4_5", {"b": [1, 1]})


def test_cyclic_odd_blocks(system):
    result = system.verify("example_4_6", {"samples": 2})
    assert result.passed
    assert result.instances == 2
    assert result.details["family_size"] == 144
    with pytest.raises(BadParams):
        system.verify("example_4_6", {"n": 4})


def test_bott_interval_oriented(system):
    result = system.verify("thm_4_3", {"dims": [[1, 1], [2, 1]]})
    assert result.passed, result.counterexamples
    assert set(result.details["instances_by_dims"]) == {"1,1", "2,1"}
    assert result.details["instances_by_dims"]["1,1"] == 5

    last = system.verify("thm_4_3", {"dims": [[1, 1], [2, 1]], "interval_last": True})
    assert last.passed
    assert last.instances <= result.instances
    with pytest.raises(BadParams):
        system.verify("thm_4_3", {"dims": [[2, 2]]})


def test_power_sum(system):
    result = system.verify("thm_4_7", {"dims": [[2, 2], [1, 1]], "samples": 3})
    assert result.passed
    assert result.instances == 6
    with pytest.raises(BadParams):
        system.verify("thm_4_7", {"dims": [[2, 1]]})


@pytest.mark.parametrize("theorem, params", [
    ("lemma_3_3", {"dims": [[2, 1], [1, 1, 1]], "samples": 5}),
    ("lemma_2_4", {"n": [2, 3, 4], "samples": 5}),
    ("lemma_4_1", {"dims": [[1, 1], [2, 1]], "samples": 5}),
    ("poincare_ranks", {"dims": [[2], [1, 1], [2, 1]], "samples": 12}),
])
def test_sampled_properties(system, theorem, params):
    result = system.verify(theorem, params)
    assert result.passed, result.counterexamples
    assert result.instances > 0


def test_orientability(system):
    result = system.verify("prop_3_5", {"n": [1, 2, 3]})
    assert result.passed
    assert result.instances == 1 + 2 + 8


def test_engine_agreement(system, simplex_pair):
    result = system.verify("engine_agreement", {"n": [2, 3], "dims": [[2, 1], [1, 1, 1]]})
    assert result.passed
    integer = system.verify("engine_agreement", {"n": [], "dims": [[1, 1]], "coefficients": "Z"})
    assert integer.instances == 5
    assert engines_agree(simplex_pair)


def test_unknown_ids_and_params(system):
    with pytest.raises(UnknownTheorem):
        system.verify("fermat")
    with pytest.raises(BadParams):
        system.verify("orientability", {"bound": 2})
    with pytest.raises(BadParams):
        system.verify("thm_2_5", {"n": "four"})


def test_sampling_is_deterministic():
    params = {"dims": [[2, 1]], "samples": 4}
    first = VerificationSystem(seed=3).verify("lemma_3_3", params).to_dict()
    again = VerificationSystem(seed=3).verify("lemma_3_3", params).to_dict()
    assert first == again


def test_result_reporting():
    result = VerificationResult("orientability", instances=2)
    assert result.passed
    result.fail(None, "broken", ranks=[1])
    assert not result.passed
    payload = result.to_dict()
    assert payload["counterexamples"] == [{"reason": "broken", "ranks": [1]}]
    assert "elapsed" not in payload
    assert "prop_3_5" in VerificationSystem().available()
