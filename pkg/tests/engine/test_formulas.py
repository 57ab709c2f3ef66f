import pytest

from tests.utils import logging, style
from dedekind_pcoef.collections import KNOWN_DEDEKIND_NUMBERS, ComputationMethod
from dedekind_pcoef.engine import (
    applicable_methods,
    brute_force_D,
    consistency_matrix,
    d_nplus2,
    d_nplus3,
    d_nplus4,
    oracle_check,
    wiedemann_d_nplus2,
)
from dedekind_pcoef.exceptions import CapabilityException, InvalidInputException
from dedekind_pcoef.formulas import NPlus2Formula, complement_pair_positions, create_formula, merge_details


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 5])
def test_brute_force(n):
    assert brute_force_D(n) == KNOWN_DEDEKIND_NUMBERS[n]
    assert brute_force_D(n, reduce_symmetry=True) == KNOWN_DEDEKIND_NUMBERS[n]


@pytest.mark.slow
def test_brute_force_at_six():
    assert brute_force_D(6) == 7828354


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_d_nplus2(n):
    report = d_nplus2(n)
    assert report.complete
    assert report.result == KNOWN_DEDEKIND_NUMBERS[n + 2]
    # one term per pair alpha <= beta
    assert report.terms == KNOWN_DEDEKIND_NUMBERS[n + 1]
    assert d_nplus2(n, reduce_symmetry=True).result == report.result


@pytest.mark.slow
def test_d_nplus2_at_five():
    report = d_nplus2(5, reduce_symmetry=True, workers=4)
    assert report.result == KNOWN_DEDEKIND_NUMBERS[7]
    logging.info(style.CYAN(f"D(7) in {report.seconds:.1f}s") + f", cache {report.cache}")


def test_d_nplus2_terms_add_up():
    formula = NPlus2Formula(3)
    terms = [term for code, multiplicity in formula.items for term in formula.iter_terms(code, multiplicity)]
    assert len(terms) == KNOWN_DEDEKIND_NUMBERS[4]
    assert sum(t.value * t.multiplicity for t in terms) == KNOWN_DEDEKIND_NUMBERS[5]
    assert {"alpha", "beta"} == set(terms[0].parameters.keys())


def test_d_nplus2_worked_example():
    terms = {
        (t.parameters["alpha"], t.parameters["beta"]): t.value
        for code, _ in NPlus2Formula(1).items
        for t in NPlus2Formula(1).iter_terms(code)
    }
    assert terms == {
        ("{}", "{}"): 3,
        ("{}", "{0}"): 4,
        ("{}", "{1}"): 2,
        ("{0}", "{0}"): 4,
        ("{0}", "{1}"): 4,
        ("{1}", "{1}"): 3,
    }
    assert sum(terms.values()) == 20


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_wiedemann(n):
    assert wiedemann_d_nplus2(n) == KNOWN_DEDEKIND_NUMBERS[n + 2]
    assert wiedemann_d_nplus2(n, reduce_symmetry=True) == KNOWN_DEDEKIND_NUMBERS[n + 2]


def test_d_nplus3_rows():
    report = d_nplus3(0)
    assert report.result == 20
    rows = report.details["rows"]
    assert len(rows) == 4
    assert sum(row["total"] for row in rows) == 20
    assert sum(row["eq"] for row in rows) == 6


@pytest.mark.parametrize("n", [1, 2])
def test_d_nplus3(n):
    report = d_nplus3(n)
    assert report.result == KNOWN_DEDEKIND_NUMBERS[n + 3]
    assert d_nplus3(n, reduce_symmetry=True).result == report.result


@pytest.mark.slow
def test_d_nplus3_at_three():
    assert d_nplus3(3, reduce_symmetry=True, workers=4).result == KNOWN_DEDEKIND_NUMBERS[6]


def test_d_nplus4_histogram():
    report = d_nplus4(0)
    assert report.result == 168
    assert report.details["histogram"] == {"64": 1, "8": 8, "2": 14, "1": 12}
    assert len(report.details["combinations"]) == 29


def test_d_nplus4():
    assert d_nplus4(1).result == 7581
    assert "histogram" not in d_nplus4(1).details


@pytest.mark.slow
def test_d_nplus4_at_two():
    assert d_nplus4(2, reduce_symmetry=True).result == 7828354


def test_complement_pair_positions():
    assert complement_pair_positions(4) == [5, 4, 3, 2, 1, 0]


def test_merge_details():
    target = {"rows": [1], "histogram": {"2": 1}}
    merge_details(target, {"rows": [2], "histogram": {"2": 3, "8": 1}})
    assert target == {"rows": [1, 2], "histogram": {"2": 4, "8": 1}}


def test_details_are_not_collected_when_reduced():
    formula = create_formula(ComputationMethod.NPlus3, 0, reduce_symmetry=True, collect_details=True)
    assert not formula.collect_details


def test_capability_caps():
    with pytest.raises(CapabilityException) as err:
        d_nplus3(4)
    assert err.value.cap_name == "max_n_nplus3"
    assert err.value.cap_value == 3

    with pytest.raises(CapabilityException):
        d_nplus2(2, limits={ComputationMethod.NPlus2: 1})

    with pytest.raises(InvalidInputException):
        d_nplus2(-1)
    with pytest.raises(InvalidInputException):
        d_nplus2(1, workers=0)


def test_applicable_methods():
    methods = dict(applicable_methods(4))
    assert methods == {
        ComputationMethod.BruteForce: 4,
        ComputationMethod.NPlus2: 2,
        ComputationMethod.Wiedemann: 2,
        ComputationMethod.NPlus3: 1,
        ComputationMethod.NPlus4: 0,
    }
    assert dict(applicable_methods(1)) == {ComputationMethod.BruteForce: 1}


def test_consistency_matrix():
    matrix = consistency_matrix(5)
    assert sorted(matrix.keys()) == [0, 1, 2, 3, 4, 5]
    for target, row in matrix.items():
        assert row["agree"]
        assert set(row["values"].values()) == {str(KNOWN_DEDEKIND_NUMBERS[target])}
    assert len(matrix[5]["values"]) == 5

    with pytest.raises(InvalidInputException):
        consistency_matrix(-1)


@pytest.mark.parametrize("n,r", [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 2), (2, 3)])
def test_oracle_check_exhaustive(n, r):
    summary = oracle_check(n, r)
    assert summary["mode"] == "exhaustive"
    assert summary["solvable"] > 0


@pytest.mark.slow
def test_oracle_check_exhaustive_four_variables():
    assert oracle_check(2, 4)["mode"] == "exhaustive"


@pytest.mark.parametrize("r", [2, 3, 4])
def test_oracle_check_sampled(r):
    summary = oracle_check(3, r, samples=60, seed=11)
    assert summary["mode"] == "sampled"
    assert summary["systems"] == 60
    # every other sample is built from a tuple, so it is solvable
    assert summary["solvable"] >= 30


@pytest.mark.slow
@pytest.mark.parametrize("r", [2, 3, 4])
def test_oracle_check_sampled_many(r):
    summary = oracle_check(3, r, samples=10000, seed=5)
    assert summary["systems"] == 10000
    assert summary["solvable"] >= 5000


def test_oracle_check_rejections():
    with pytest.raises(InvalidInputException):
        oracle_check(1, 5)
    with pytest.raises(CapabilityException):
        oracle_check(5, 2)
    with pytest.raises(CapabilityException):
        oracle_check(3, 4)
