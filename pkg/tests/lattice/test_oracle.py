import pytest

from tests.utils import all_antichains, random_antichains
from dedekind_pcoef.collections import KNOWN_DEDEKIND_NUMBERS
from dedekind_pcoef.lattice import (
    Antichain,
    LatticePreconditionException,
    OracleCapabilityException,
    SystemInstance,
    compose_decomposition,
    count_solutions,
    count_valid_part_maps,
    decompose,
    enumerate_antichains,
    enumerate_interval,
    solution_census,
    solve_system,
)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 5])
def test_enumerate_antichains_counts(n):
    antichains = list(enumerate_antichains(n))
    assert len(antichains) == KNOWN_DEDEKIND_NUMBERS[n]
    assert len(set(antichains)) == len(antichains)


@pytest.mark.slow
def test_enumerate_antichains_at_six():
    assert sum(1 for _ in enumerate_antichains(6)) == 7828354


def test_enumerate_antichains_at_zero():
    assert set(enumerate_antichains(0)) == {Antichain.bottom(0), Antichain.parse("{0}", 0)}


def test_enumeration_caps():
    with pytest.raises(OracleCapabilityException):
        list(enumerate_antichains(7))
    with pytest.raises(OracleCapabilityException):
        list(enumerate_interval(Antichain.bottom(4), Antichain.top(4), limit=100))


def test_solve_system_examples():
    x = Antichain.parse("{1,23}", 3)
    solutions = solve_system(SystemInstance(x, [x]))
    assert [s.chi for s in solutions] == [(x, x)]

    inst = SystemInstance.parse("{}", ["{0}"], 1)
    solutions = solve_system(inst)
    assert len(solutions) == 2
    assert {s.chi for s in solutions} == {
        (Antichain.parse("{0}", 1), Antichain.bottom(1)),
        (Antichain.bottom(1), Antichain.parse("{0}", 1)),
    }
    assert all(s.satisfies(inst) for s in solutions)

    assert count_solutions(SystemInstance.parse("{}", ["{0}", "{0}", "{0}"], 0)) == 3


def test_restricted_and_unrestricted_search_agree():
    for alpha in random_antichains(2, 10, seed=3):
        for beta in all_antichains(2):
            inst = SystemInstance(alpha, [beta, beta, beta])
            assert count_solutions(inst) == count_solutions(inst, unrestricted=True)


def test_solve_system_limit():
    inst = SystemInstance(Antichain.bottom(3), [Antichain.top(3)] * 3)
    with pytest.raises(OracleCapabilityException):
        solve_system(inst, unrestricted=True, limit=10)


def test_solution_census():
    census = solution_census(2, 3)
    assert sum(census.values()) == 6**3
    assert census[(0, (0, 0, 0))] == 1
    with pytest.raises(OracleCapabilityException):
        solution_census(3, 4, max_tuples=1000)


def test_compose_decomposition_examples():
    bottom = Antichain.bottom(0)
    assert compose_decomposition({a: bottom for a in range(4)}, 0, 2) == Antichain.bottom(2)
    parts = {0: bottom, 1: bottom, 2: bottom, 3: Antichain.parse("{0}", 0)}
    assert compose_decomposition(parts, 0, 2) == Antichain.parse("{0}", 2)


def test_compose_decomposition_rejects_non_monotone_parts():
    parts = {0: Antichain.parse("{0}", 0), 1: Antichain.bottom(0)}
    with pytest.raises(LatticePreconditionException):
        compose_decomposition(parts, 0, 1)


@pytest.mark.parametrize("n,k", [(0, 2), (1, 2), (0, 3), (2, 1), (1, 3)])
def test_decompose_compose_round_trip(n, k):
    for eta in all_antichains(n + k):
        parts = decompose(eta, n, k)
        assert len(parts) == 1 << k
        assert compose_decomposition(parts, n, k) == eta


@pytest.mark.parametrize("n,k", [(0, 1), (0, 2), (1, 2), (0, 3), (2, 2)])
def test_part_maps_count_the_dedekind_number(n, k):
    assert count_valid_part_maps(n, k) == KNOWN_DEDEKIND_NUMBERS[n + k]
