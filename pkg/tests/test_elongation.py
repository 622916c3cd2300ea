import math

import numpy as np
import pytest

from dubins_elongation.core import oracle
from dubins_elongation.core.elongation import (
    ElongationRequest, StrategyTag, bisect_family, elongate, elongate_to, wave_alpha,
)
from dubins_elongation.core.errors import (
    InfeasibleLength, NoParallelTangents, NotAStraight, SegmentTooShort, ToleranceNotMet,
)
from dubins_elongation.core.families import MajorArcFamily, families_to_major_arc, sample_family_lengths
from dubins_elongation.core.feasibility import Membership, analyze, feasible_set
from dubins_elongation.core.path_surgery import (
    MAX_WAVE_GAIN, full_loop_insert, insert_parallel_extension, major_arc_index, wave_deform, wave_gain,
)
from dubins_elongation.core.words import Word
from dubins_elongation.utils.geometry import (
    CurvatureBound, CurvaturePath, OrientedPose, PathSegment, SegmentKind, sample_arrays, validate,
)

from conftest import GAPS, TABLE_TOL, UNIT, case_pair, random_pairs

L, R, S = SegmentKind.LEFT, SegmentKind.RIGHT, SegmentKind.STRAIGHT
ORIGIN = OrientedPose(0.0, 0.0, 0.0)
FAR = OrientedPose(10.0, 0.0, 0.0)


def make_path(*segments, bound=UNIT):
    return CurvaturePath(ORIGIN, tuple(PathSegment(kind, m) for kind, m in segments), bound)


def assert_sound(path, X, Y, target, tol=1e-9):
    report = validate(path, X, Y, 1e-9)
    assert report.passed(1e-9), report
    assert abs(report.length - target) <= tol


class TestPathSurgery:
    @pytest.mark.parametrize('alpha', [0.1, 0.5, 1.0, math.pi / 2])
    def test_wave_gain_closed_form(self, alpha):
        base = make_path((S, 10.0))
        waved = wave_deform(base, 0, alpha)
        assert waved.length - base.length == pytest.approx(wave_gain(alpha, 1.0), abs=1e-9)
        assert validate(waved, ORIGIN, FAR, 1e-9).passed(1e-9)

    def test_wave_gain_matches_sampled_arclength(self):
        waved = wave_deform(make_path((S, 10.0)), 0, 0.8, offset=2.0)
        arrays = sample_arrays(waved, 0.01)
        assert arrays['arclength'][-1] - 10.0 == pytest.approx(wave_gain(0.8, 1.0), abs=1e-9)

    def test_wave_scales_with_radius(self):
        base = make_path((S, 10.0), bound=CurvatureBound(2.0))
        waved = wave_deform(base, 0, 1.0)
        assert waved.length - base.length == pytest.approx(wave_gain(1.0, 0.5), abs=1e-9)

    def test_wave_needs_a_straight(self):
        with pytest.raises(NotAStraight):
            wave_deform(make_path((L, 1.0), (S, 10.0)), 0, 0.5)
        with pytest.raises(NotAStraight):
            wave_deform(make_path((S, 10.0)), 3, 0.5)

    def test_wave_needs_room(self):
        with pytest.raises(SegmentTooShort):
            wave_deform(make_path((S, 1.0)), 0, math.pi / 2)

    def test_wave_angle_range(self):
        with pytest.raises(ValueError):
            wave_deform(make_path((S, 10.0)), 0, 2.0)

    def test_parallel_extension(self):
        base = make_path((L, 1.5 * math.pi), (S, 1.0))
        goal = base.end
        longer = insert_parallel_extension(base, 0.75)
        assert longer.length == pytest.approx(base.length + 1.5, abs=1e-12)
        assert validate(longer, ORIGIN, goal, 1e-9).passed(1e-9)

    def test_parallel_extension_needs_major_arc(self):
        with pytest.raises(NoParallelTangents):
            insert_parallel_extension(make_path((L, 1.0), (S, 2.0)), 0.5)

    def test_full_loop_adds_one_turn(self):
        for bound in (UNIT, CurvatureBound(0.5)):
            base = make_path((S, 3.0), bound=bound)
            looped = full_loop_insert(base)
            assert looped.length == pytest.approx(base.length + 2 * math.pi / bound.kappa, abs=1e-12)
            assert validate(looped, ORIGIN, base.end, 1e-9).passed(1e-9)


class TestHelpers:
    @pytest.mark.parametrize('extra', [1e-6, 0.1, 1.0, MAX_WAVE_GAIN - 1e-3])
    def test_wave_alpha_inverts_gain(self, extra):
        assert wave_gain(wave_alpha(extra, 1.0), 1.0) == pytest.approx(extra, abs=1e-12)

    def test_wave_alpha_saturates(self):
        assert wave_alpha(10.0, 1.0) == pytest.approx(math.pi / 2)
        assert wave_alpha(0.0, 1.0) == 0.0

    def test_bisect_family(self):
        assert bisect_family(lambda lam: 1.0 + lam ** 2, 1.25, 1e-12) == pytest.approx(0.5, abs=1e-9)

    def test_bisect_family_unbracketed(self):
        with pytest.raises(ToleranceNotMet):
            bisect_family(lambda lam: 1.0 + lam, 5.0, 1e-12)

    def test_request_validation(self):
        with pytest.raises(ValueError):
            ElongationRequest(ORIGIN, FAR, UNIT, -1.0)
        with pytest.raises(ValueError):
            ElongationRequest(ORIGIN, FAR, UNIT, 12.0, tol=0.0)


class TestElongate:
    def test_target_equal_to_shortest(self):
        result = elongate(ElongationRequest(ORIGIN, FAR, UNIT, 10.0))
        assert result.path.length == pytest.approx(10.0, abs=1e-12)
        assert result.parameter == 0.0

    def test_partial_wave_on_long_straight(self):
        result = elongate(ElongationRequest(ORIGIN, FAR, UNIT, 11.0))
        assert result.strategy is StrategyTag.WAVE_DEFORM
        assert_sound(result.path, ORIGIN, FAR, 11.0)

    def test_full_wave_then_parallel(self):
        result = elongate(ElongationRequest(ORIGIN, FAR, UNIT, 25.0))
        assert result.strategy is StrategyTag.WAVE_DEFORM
        assert_sound(result.path, ORIGIN, FAR, 25.0)

    def test_strategy_label_on_path(self):
        path = elongate_to(ElongationRequest(ORIGIN, FAR, UNIT, 12.0))
        assert path.strategy == StrategyTag.WAVE_DEFORM.value

    def test_below_shortest_rejected(self):
        with pytest.raises(InfeasibleLength) as info:
            elongate(ElongationRequest(ORIGIN, FAR, UNIT, 9.0))
        assert info.value.target == 9.0
        assert '[10, +inf)' in str(info.value)

    def test_gap_target_rejected(self):
        X, Y = case_pair('B', 2)
        with pytest.raises(InfeasibleLength) as info:
            elongate(ElongationRequest(X, Y, UNIT, 5.0))
        assert info.value.feasible_set.gap is not None

    def test_gap_pair_below_l1(self):
        X, Y = case_pair('B', 2)
        result = elongate(ElongationRequest(X, Y, UNIT, 2.6))
        assert_sound(result.path, X, Y, 2.6)

    def test_gap_pair_at_l1(self):
        X, Y = case_pair('B', 2)
        l1 = feasible_set(X, Y, UNIT).l1
        result = elongate(ElongationRequest(X, Y, UNIT, l1))
        assert_sound(result.path, X, Y, l1)

    def test_gap_pair_at_l2_uses_l2_path(self):
        X, Y = case_pair('B', 2)
        lengths = feasible_set(X, Y, UNIT)
        result = elongate(ElongationRequest(X, Y, UNIT, lengths.l2))
        assert_sound(result.path, X, Y, lengths.l2)
        assert result.base_length == pytest.approx(lengths.l2, abs=1e-9)

    def test_gap_pair_above_l2_starts_from_l2_path(self):
        X, Y = case_pair('C', 4)
        result = elongate(ElongationRequest(X, Y, UNIT, 8.0845))
        assert_sound(result.path, X, Y, 8.0845)
        assert result.base_length == pytest.approx(GAPS[('C', 4)][1], abs=TABLE_TOL)

    @pytest.mark.parametrize('case,vehicle', [('A', 1), ('A', 2), ('A', 3), ('A', 4), ('A', 6)])
    def test_formation_case_a_targets(self, case, vehicle):
        X, Y = case_pair(case, vehicle)
        result = elongate(ElongationRequest(X, Y, UNIT, 9.7219))
        assert_sound(result.path, X, Y, 9.7219)


def _centres_apart_instances(rng, wanted=20, tries=4000):
    """Analyses whose only memberships are O4/O5, paired with a CSC word longer than l_m."""
    found = []
    for X, Y in random_pairs(rng, tries):
        analysis = analyze(X, Y, UNIT)
        cls = analysis.classification
        if cls.ccc_shortest or cls.in_nabla_O or not cls.o_memberships <= {Membership.O4, Membership.O5}:
            continue
        word = Word.RSR if Membership.O4 in cls.o_memberships else Word.LSL
        if analysis.table.length(word.value) > analysis.shortest.length + 1e-3:
            found.append((analysis, word))
            if len(found) == wanted:
                break
    return found


class TestCentresApart:
    def test_targets_below_csc_word_avoid_composite(self, rng):
        instances = _centres_apart_instances(rng)
        assert len(instances) == 20
        for analysis, word in instances:
            X, Y = analysis.X, analysis.Y
            target = 0.5 * (analysis.shortest.length + analysis.table.length(word.value))
            result = elongate(ElongationRequest(X, Y, UNIT, target))
            assert_sound(result.path, X, Y, target)
            assert result.strategy is not StrategyTag.COMPOSITE, (X, Y, word)

    def test_pivot_family_ends_on_a_major_arc(self, rng):
        for analysis, word in _centres_apart_instances(rng, wanted=10):
            families = list(families_to_major_arc(analysis.X, analysis.Y, UNIT, analysis.shortest, word))
            assert len(families) == 1
            family = families[0]
            assert isinstance(family, MajorArcFamily)
            assert major_arc_index(family.path_at(1.0)) is not None
            assert family.length_at(0.0) == pytest.approx(analysis.shortest.length, abs=1e-9)
            _, lengths = sample_family_lengths(family, 400)
            assert np.all(np.isfinite(lengths))
            assert np.diff(lengths).min() >= -1e-9

    def test_no_brute_force_search_in_synthesis(self, monkeypatch, rng):
        def refuse(*args, **kwargs):
            raise AssertionError("synthesis must not search")

        monkeypatch.setattr(oracle, 'oracle_witness', refuse)
        monkeypatch.setattr(oracle, '_search', refuse)
        for X, Y in random_pairs(rng, 100):
            lengths = feasible_set(X, Y, UNIT)
            target = _sample_target(rng, lengths)
            assert_sound(elongate_to(ElongationRequest(X, Y, UNIT, target)), X, Y, target)


def _sample_target(rng, lengths):
    if lengths.gap is not None and rng.random() < 0.5:
        return float(rng.uniform(lengths.l_m, lengths.l1))
    low = lengths.l2 if lengths.gap is not None else lengths.l_m
    return float(low + rng.uniform(0.0, 12.0))


@pytest.mark.slow
def test_elongation_sweep(rng):
    for X, Y in random_pairs(rng, 1000):
        lengths = feasible_set(X, Y, UNIT)
        target = _sample_target(rng, lengths)
        path = elongate_to(ElongationRequest(X, Y, UNIT, target))
        assert_sound(path, X, Y, target)


@pytest.mark.slow
def test_gap_targets_rejected_sweep(rng):
    rejected = 0
    for X, Y in random_pairs(rng, 20000, half_width=2.0):
        lengths = feasible_set(X, Y, UNIT)
        if lengths.gap is None:
            continue
        target = float(lengths.l1 + rng.uniform(0.05, 0.95) * (lengths.l2 - lengths.l1))
        with pytest.raises(InfeasibleLength):
            elongate(ElongationRequest(X, Y, UNIT, target))
        rejected += 1
        if rejected == 200:
            break
    assert rejected == 200
