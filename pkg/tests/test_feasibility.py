import math

import numpy as np
import pytest

from dubins_elongation.core.errors import DegenerateInput, NotInNablaO
from dubins_elongation.core.families import (
    DoublePivotFamily, disk_push_family, sample_family_lengths, select_gap_family,
)
from dubins_elongation.core.feasibility import (
    FeasibleLengthSet, Membership, analyze, classify, contains, feasible_set, gap_bounds, gap_details,
)
from dubins_elongation.core.oracle import OracleConfig, oracle_exists_length
from dubins_elongation.core.path_surgery import full_loop_insert
from dubins_elongation.core.words import word_of
from dubins_elongation.utils.geometry import CurvatureBound, OrientedPose, validate

from conftest import GAPS, TABLE_TOL, UNIT, case_pair, random_pairs

ORIGIN = OrientedPose(0.0, 0.0, 0.0)


def _moved(p, phi, shift):
    c, s = math.cos(phi), math.sin(phi)
    return OrientedPose(c * p.x - s * p.y + shift[0], s * p.x + c * p.y + shift[1], p.theta + phi)


class TestFeasibleLengthSet:
    def test_closed_endpoints(self):
        lengths = FeasibleLengthSet(1.0, (2.0, 3.0))
        assert contains(lengths, 1.0)
        assert contains(lengths, 2.0)
        assert contains(lengths, 3.0)
        assert contains(lengths, 1e9)
        assert not contains(lengths, 0.999)
        assert not contains(lengths, 2.5)

    def test_unbounded_set(self):
        lengths = FeasibleLengthSet(4.0)
        assert lengths.intervals() == [(4.0, math.inf)]
        assert lengths.breakpoints() == [4.0]
        assert lengths.describe() == '[4, +inf)'

    def test_describe_with_gap(self):
        assert FeasibleLengthSet(1.0, (2.0, 3.0)).describe() == '[1, 2] U [3, +inf)'

    def test_inconsistent_gap_rejected(self):
        with pytest.raises(ValueError):
            FeasibleLengthSet(3.0, (2.0, 4.0))
        with pytest.raises(ValueError):
            FeasibleLengthSet(1.0, (3.0, 3.0))


class TestClassification:
    def test_long_straight_pair(self):
        cls = classify(ORIGIN, OrientedPose(10.0, 0.0, 0.0), UNIT)
        assert not cls.in_nabla_O
        assert {Membership.O3, Membership.O4, Membership.O5} <= cls.o_memberships
        assert cls.label == 'O3,O4,O5'

    def test_no_gap_outside_nabla(self):
        X, Y = ORIGIN, OrientedPose(10.0, 0.0, 0.0)
        assert feasible_set(X, Y, UNIT).gap is None
        with pytest.raises(NotInNablaO):
            gap_bounds(X, Y, UNIT)

    def test_degenerate_rejected(self):
        with pytest.raises(DegenerateInput):
            analyze(ORIGIN, ORIGIN, UNIT)

    @pytest.mark.parametrize('case', ['A', 'B', 'C'])
    @pytest.mark.parametrize('vehicle', range(1, 7))
    def test_formation_gaps(self, case, vehicle):
        X, Y = case_pair(case, vehicle)
        lengths = feasible_set(X, Y, UNIT)
        expected = GAPS.get((case, vehicle))
        if expected is None:
            assert lengths.gap is None
        else:
            assert lengths.gap is not None
            assert lengths.l1 == pytest.approx(expected[0], abs=TABLE_TOL)
            assert lengths.l2 == pytest.approx(expected[1], abs=TABLE_TOL)
            assert gap_bounds(X, Y, UNIT) == (lengths.l1, lengths.l2)

    def test_l2_sources(self):
        # One vehicle realizes l2 with a CSC path, the other with the long CCC root
        assert analyze(*case_pair('B', 2), UNIT).gap.l2_source in ('RSR', 'RSL', 'LSR', 'LSL')
        assert analyze(*case_pair('C', 4), UNIT).gap.l2_source in ('LRL_l', 'RLR_l')

    def test_analysis_is_cached(self):
        X, Y = case_pair('B', 2)
        assert analyze(X, Y, UNIT) is analyze(X, Y, UNIT)

    def test_label_invariant_under_rigid_motion(self, rng):
        for X, Y in random_pairs(rng, 200):
            phi = float(rng.uniform(0.0, 2.0 * math.pi))
            shift = rng.uniform(-10.0, 10.0, 2)
            before = classify(X, Y, UNIT)
            after = classify(_moved(X, phi, shift), _moved(Y, phi, shift), UNIT)
            assert after.label == before.label, (X, Y, phi)
            assert after.shortest_word is before.shortest_word

    @pytest.mark.parametrize('scale', [0.25, 0.5, 2.0, 4.0])
    def test_scale_covariance(self, rng, scale):
        bound = CurvatureBound(1.0 / scale)
        for X, Y in random_pairs(rng, 100):
            scaled = tuple(OrientedPose(scale * p.x, scale * p.y, p.theta) for p in (X, Y))
            assert classify(*scaled, bound) == classify(X, Y, UNIT)
            lengths, stretched = feasible_set(X, Y, UNIT), feasible_set(*scaled, bound)
            assert stretched.l_m == pytest.approx(scale * lengths.l_m, rel=1e-9)
            assert (stretched.gap is None) == (lengths.gap is None)
            if lengths.gap is not None:
                assert stretched.l1 == pytest.approx(scale * lengths.l1, rel=1e-9)
                assert stretched.l2 == pytest.approx(scale * lengths.l2, rel=1e-9)

    def test_gap_bounds_agree_with_feasible_set(self, rng):
        for X, Y in random_pairs(rng, 500, half_width=2.0):
            lengths = feasible_set(X, Y, UNIT)
            if lengths.gap is None:
                with pytest.raises(NotInNablaO):
                    gap_bounds(X, Y, UNIT)
                with pytest.raises(NotInNablaO):
                    gap_details(X, Y, UNIT)
            else:
                assert gap_bounds(X, Y, UNIT) == lengths.gap


def _nabla_instances(rng, wanted=30, tries=4000):
    found = []
    for X, Y in random_pairs(rng, tries, half_width=2.0):
        analysis = analyze(X, Y, UNIT)
        if analysis.feasible_set.gap is not None:
            found.append(analysis)
            if len(found) == wanted:
                break
    return found


class TestGapStructure:
    def test_random_gap_invariants(self, rng):
        instances = _nabla_instances(rng)
        assert instances
        two_pi = 2.0 * math.pi
        for analysis in instances:
            lengths = analysis.feasible_set
            assert lengths.l_m <= lengths.l1 < lengths.l2
            assert lengths.l1 < two_pi
            assert lengths.l2 <= lengths.l_m + two_pi + 1e-9
            for key, value in analysis.table.finite_entries().items():
                assert not (lengths.l1 + 1e-9 < value < lengths.l2 - 1e-9), key

    def test_full_loop_is_an_upper_bound_for_l2(self, rng):
        for analysis in _nabla_instances(rng, wanted=10):
            loop = full_loop_insert(analysis.shortest)
            assert loop.length == pytest.approx(analysis.shortest.length + 2.0 * math.pi, abs=1e-12)
            assert analysis.feasible_set.l2 <= loop.length + 1e-12


class TestDiskPushFamily:
    def test_family_end_points(self):
        X, Y = case_pair('B', 2)
        lengths = feasible_set(X, Y, UNIT)
        assert disk_push_family(X, Y, UNIT, 0.0).length == pytest.approx(lengths.l_m, abs=1e-12)
        assert disk_push_family(X, Y, UNIT, 1.0).length == pytest.approx(lengths.l1, abs=1e-12)

    def test_members_are_valid_and_avoid_the_gap(self):
        X, Y = case_pair('B', 2)
        lengths = feasible_set(X, Y, UNIT)
        for lam in np.linspace(0.0, 1.0, 11):
            path = disk_push_family(X, Y, UNIT, float(lam))
            assert validate(path, X, Y, 1e-9).passed(1e-9)
            assert path.strategy == 'DiskPush'
        probe = select_gap_family(analyze(X, Y, UNIT))
        _, sampled = sample_family_lengths(probe.family, 999)
        assert np.all(np.isfinite(sampled))
        inside = (sampled > lengths.l1 + 1e-6) & (sampled < lengths.l2 - 1e-6)
        assert not inside.any()

    def test_parameter_range_checked(self):
        X, Y = case_pair('B', 2)
        with pytest.raises(ValueError):
            disk_push_family(X, Y, UNIT, 1.5)

    def test_requires_a_gap(self):
        with pytest.raises(NotInNablaO):
            disk_push_family(ORIGIN, OrientedPose(10.0, 0.0, 0.0), UNIT, 0.5)

    def test_pair_with_diagonal_sweep_reaches_l1(self):
        X, Y = OrientedPose(-0.6397, 0.9994, 5.5069), OrientedPose(-0.4608, -1.3870, 4.3379)
        lengths = feasible_set(X, Y, UNIT)
        assert lengths.gap is not None
        assert lengths.l_m == pytest.approx(2.4771, abs=2e-3)
        assert lengths.l1 == pytest.approx(3.0717, abs=2e-3)
        _assert_family_spans_lower_interval(X, Y, lengths)

    def test_random_gap_pairs_span_lower_interval(self, rng):
        opposite_handed = 0
        for analysis in _nabla_instances(rng, wanted=40):
            lengths = analysis.feasible_set
            _assert_family_spans_lower_interval(analysis.X, analysis.Y, lengths)
            first, _, last = word_of(analysis.shortest).kinds
            if first is last and analysis.gap.l1_key[0] != first.value:
                opposite_handed += 1
                assert isinstance(select_gap_family(analysis).family, DoublePivotFamily)
        assert opposite_handed > 0

    def test_families_are_continuous_and_monotone(self, rng):
        for analysis in _nabla_instances(rng, wanted=20):
            family = select_gap_family(analysis).family
            _, lengths = sample_family_lengths(family, 400)
            steps = np.diff(lengths)
            assert np.all(np.isfinite(lengths))
            assert steps.min() >= -1e-9, family
            assert np.abs(steps).max() <= 0.5, family


def _assert_family_spans_lower_interval(X, Y, lengths):
    members = [disk_push_family(X, Y, UNIT, lam) for lam in (0.0, 0.5, 1.0)]
    for path in members:
        assert validate(path, X, Y, 1e-9).passed(1e-9)
    assert members[0].length == pytest.approx(lengths.l_m, abs=1e-12)
    assert members[2].length == pytest.approx(lengths.l1, abs=1e-12)
    assert lengths.l_m - 1e-9 <= members[1].length <= lengths.l1 + 1e-9


@pytest.mark.slow
def test_gap_sweep_against_oracle(rng):
    instances = _nabla_instances(rng, wanted=50, tries=10000)
    assert len(instances) == 50
    midpoint_cfg = OracleConfig(families=4, seeds_per_word=2, refine_iters=100)
    edge_cfg = OracleConfig(families=3)
    for analysis in instances:
        X, Y, lengths = analysis.X, analysis.Y, analysis.feasible_set
        assert lengths.l_m <= lengths.l1 < lengths.l2 <= lengths.l_m + 2.0 * math.pi + 1e-9
        assert lengths.l1 < 2.0 * math.pi
        for key, value in analysis.table.finite_entries().items():
            assert not (lengths.l1 + 1e-9 < value < lengths.l2 - 1e-9), key
        assert not oracle_exists_length(X, Y, UNIT, 0.5 * (lengths.l1 + lengths.l2), midpoint_cfg)
        assert oracle_exists_length(X, Y, UNIT, lengths.l1, edge_cfg)
        assert oracle_exists_length(X, Y, UNIT, lengths.l2, edge_cfg)
        _, sampled = sample_family_lengths(select_gap_family(analysis).family, 1000)
        inside = (sampled > lengths.l1 + 1e-9) & (sampled < lengths.l2 - 1e-9)
        assert not inside.any()
