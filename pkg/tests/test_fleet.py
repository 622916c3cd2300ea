import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from dubins_elongation.core.errors import DegenerateInput
from dubins_elongation.core.feasibility import FeasibleLengthSet, feasible_set
from dubins_elongation.core.fleet import (
    FleetProblem, Vehicle, arrival_report, dense_intersection_minimum, earliest_common_length,
    id_sort_key, length_spread, plan_formation,
)
from dubins_elongation.utils.geometry import OrientedPose

from conftest import ARRIVAL_LENGTHS, GAPS, STARTS, TABLE_TOL, UNIT, case_pair, random_pairs


def case_problem(case):
    vehicles = []
    for i in range(1, len(STARTS[case]) + 1):
        X, Y = case_pair(case, i)
        vehicles.append(Vehicle(str(i), X, Y))
    return FleetProblem(UNIT, tuple(vehicles))


@st.composite
def length_sets(draw):
    l_m = draw(st.floats(min_value=0.5, max_value=10.0))
    if not draw(st.booleans()):
        return FeasibleLengthSet(l_m)
    l1 = l_m + draw(st.floats(min_value=0.0, max_value=2.0))
    l2 = l1 + draw(st.floats(min_value=0.01, max_value=6.0))
    return FeasibleLengthSet(l_m, (l1, l2))


class TestBreakpointSweep:
    def test_without_gaps_takes_largest_shortest(self):
        sets = [FeasibleLengthSet(1.0), FeasibleLengthSet(3.0), FeasibleLengthSet(2.0)]
        assert earliest_common_length(sets) == 3.0

    def test_largest_shortest_in_a_gap(self):
        sets = [FeasibleLengthSet(2.5), FeasibleLengthSet(1.0, (2.0, 3.0))]
        assert earliest_common_length(sets) == 3.0

    def test_closed_gap_edge_counts(self):
        sets = [FeasibleLengthSet(2.0), FeasibleLengthSet(1.0, (2.0, 3.0))]
        assert earliest_common_length(sets) == 2.0

    def test_empty_input(self):
        with pytest.raises(ValueError):
            earliest_common_length([])

    @settings(deadline=None, max_examples=100)
    @given(sets=st.lists(length_sets(), min_size=1, max_size=6))
    def test_permutation_invariant(self, sets):
        expected = earliest_common_length(sets)
        for perm in itertools.islice(itertools.permutations(sets), 6):
            assert earliest_common_length(list(perm)) == expected

    @settings(deadline=None, max_examples=50)
    @given(sets=st.lists(length_sets(), min_size=1, max_size=5))
    def test_matches_dense_scan(self, sets):
        exact = earliest_common_length(sets)
        assert all(s.contains(exact) for s in sets)
        assert exact >= max(s.l_m for s in sets)
        assert dense_intersection_minimum(sets, step=1e-3) >= exact - 1e-12


class TestProblem:
    def test_needs_vehicles(self):
        with pytest.raises(ValueError):
            FleetProblem(UNIT, ())

    def test_unique_ids(self):
        X, Y = case_pair('A', 1)
        with pytest.raises(ValueError):
            FleetProblem(UNIT, (Vehicle('1', X, Y), Vehicle('1', X, Y)))

    def test_degenerate_vehicle(self):
        pose = OrientedPose(1.0, 2.0, 0.5)
        with pytest.raises(DegenerateInput):
            Vehicle('1', pose, pose)

    def test_id_order(self):
        assert sorted(['10', '2', 'b', 'a'], key=id_sort_key) == ['2', '10', 'a', 'b']


class TestPlanFormation:
    @pytest.mark.parametrize('case', ['A', 'B', 'C'])
    def test_formation_arrival_length(self, case):
        plan = plan_formation(case_problem(case))
        assert plan.t_m == pytest.approx(ARRIVAL_LENGTHS[case], abs=TABLE_TOL)
        rows = arrival_report(plan)
        assert [row.id for row in rows] == ['1', '2', '3', '4', '5', '6']
        for row in rows:
            assert row.length == pytest.approx(plan.t_m, abs=1e-9)
            assert row.max_endpoint_error <= 1e-9
        assert length_spread(rows) <= 2e-9
        for v in plan.vehicles:
            assert v.feasible_set.contains(plan.t_m)

    def test_case_b_vehicle_two_starts_from_l2(self):
        plan = plan_formation(case_problem('B'))
        v2 = plan.vehicle('2')
        assert v2.base_length == pytest.approx(GAPS[('B', 2)][1], abs=TABLE_TOL)

    def test_case_c_vehicle_four_starts_from_l2(self):
        plan = plan_formation(case_problem('C'))
        v4 = plan.vehicle('4')
        assert v4.base_length == pytest.approx(GAPS[('C', 4)][1], abs=TABLE_TOL)

    def test_single_vehicle_uses_shortest(self):
        X, Y = case_pair('A', 5)
        plan = plan_formation(FleetProblem(UNIT, (Vehicle('solo', X, Y),)))
        assert plan.t_m == feasible_set(X, Y, UNIT).l_m
        assert len(arrival_report(plan)) == 1

    def test_vehicle_order_does_not_matter(self):
        problem = case_problem('B')
        reversed_problem = FleetProblem(UNIT, tuple(reversed(problem.vehicles)))
        first, second = plan_formation(problem), plan_formation(reversed_problem)
        assert first.t_m == second.t_m
        assert [v.id for v in first.vehicles] == [v.id for v in second.vehicles]

    @pytest.mark.slow
    def test_random_ten_vehicle_problems(self, rng):
        for trial in range(5):
            pairs = random_pairs(rng, 10)
            vehicles = tuple(Vehicle(str(i), X, Y) for i, (X, Y) in enumerate(pairs))
            plan = plan_formation(FleetProblem(UNIT, vehicles))
            rows = arrival_report(plan)
            assert length_spread(rows) <= 2e-9
            assert max(row.max_endpoint_error for row in rows) <= 1e-6
            sets = [v.feasible_set for v in plan.vehicles]
            assert dense_intersection_minimum(sets, step=1e-4) >= plan.t_m - 1e-12
            assert not math.isinf(plan.t_m)


@pytest.mark.parametrize('sets,expected', [
    ([FeasibleLengthSet(1.0), FeasibleLengthSet(0.5, (2.0, 3.0))], 1.0),
    ([FeasibleLengthSet(2.5), FeasibleLengthSet(1.0, (2.0, 3.0))], 3.0),
    ([FeasibleLengthSet(1.0, (1.5, 4.0)), FeasibleLengthSet(1.2, (2.0, 2.5))], 1.2),
])
def test_dense_scan_agrees_on_simple_sets(sets, expected):
    assert earliest_common_length(sets) == expected
    assert dense_intersection_minimum(sets, step=1e-3) == pytest.approx(expected, abs=1e-3)
