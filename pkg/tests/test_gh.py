import math
import pytest

from fractions import Fraction
from ..covspecpy.gh import (EpsApproximation, build_approximation, identity_approximation,
                            induced_phi, spectrum_hausdorff, SequenceExperiment, run_sequence,
                            sliding_handle_experiment, snapping_circle_experiment,
                            converging_circle_experiment,
                            r_boundary_experiment, identity_experiment, EXPERIMENTS,
                            tangent_cone_experiment, r_variation_report, nontrivial_jump_check)
from ..covspecpy.zoo import (cycle, cylinder, line, wedge_of_circles, line_with_circles,
                             wedge_with_ray_family)
from ..covspecpy.errors import ParameterError


def test_spectrum_hausdorff():
    assert spectrum_hausdorff({1, 3}, {1, 2}) == 1
    assert spectrum_hausdorff(set(), set()) == 0
    assert spectrum_hausdorff({1}, set()) == math.inf
    assert spectrum_hausdorff(set(), {'1/2'}) == math.inf
    assert spectrum_hausdorff({'3/2'}, {2}) == Fraction(1, 2)


def test_build_approximation_of_itself():
    approx = build_approximation(cycle(6), cycle(6))
    assert isinstance(approx, EpsApproximation)
    assert approx.epsilon == 0
    assert all(approx(v) == v for v in cycle(6).vertices)


def test_build_approximation_scope():
    approx = build_approximation(line(0, 4), line(0, 4), scope=2)
    assert approx.epsilon == 0
    assert approx.scope == 2


def test_build_approximation_measures_distortion():
    approx = build_approximation(cycle(6), cycle(6, length=7))
    assert approx.epsilon > 0
    assert approx('c0') == 'c0'


def test_identity_approximation():
    g = wedge_of_circles([6, 10])
    approx = identity_approximation(g)
    assert approx.epsilon == 0
    assert approx('w') == 'w'


def test_induced_phi_identity():
    g = wedge_of_circles([6, 10])
    report = induced_phi(identity_approximation(g), 1, 2, 3, 2)
    assert report.images == {1: (1,), 2: (2,)}
    assert report.homomorphism
    assert report.surjective


def test_induced_phi_on_a_perturbed_wedge():
    g1 = wedge_of_circles([6, 10])
    g2 = wedge_of_circles([6, Fraction(41, 4)])
    approx = build_approximation(g1, g2)
    assert 0 < approx.epsilon <= Fraction(1, 8)
    assert all(approx(v) == v for v in g1.vertices)
    report = induced_phi(approx, Fraction(7, 2), 5, 3, 2)
    assert report.images == {1: (1,), 2: (2,)}
    assert len(report.kernel) == 1
    assert report.homomorphism
    assert report.surjective


def test_induced_phi_on_a_shifted_cylinder():
    g1 = cylinder(6, 5, basepoint='r2.0')
    g2 = cylinder(6, 5, basepoint='r3.0')
    up = {v: 'r{}.{}'.format(min(int(v[1]) + 1, 4), v.split('.')[1]) for v in g1.vertices}
    approx = EpsApproximation(g1, g2, up, 1, Fraction(0), Fraction(0))
    report = induced_phi(approx, Fraction(5, 2), 3, 3, 2)
    assert report.images != {k: (k,) for k in report.images}
    assert report.kernel
    assert report.homomorphism
    assert report.surjective


def test_induced_phi_checks_parameters():
    g = wedge_of_circles([6, 10])
    with pytest.raises(ParameterError):
        induced_phi(identity_approximation(g), 1, 2, 3, 3)
    with pytest.raises(ParameterError):
        induced_phi(identity_approximation(g), 2, 2, 3, 2)


def test_sequence_experiment_validation():
    g = cycle(6)
    with pytest.raises(ParameterError):
        SequenceExperiment('bad', [g], g, 1, 2, 3, expect='vanish')
    with pytest.raises(ParameterError):
        SequenceExperiment('bad', [g], g, 2, 2, 3)
    with pytest.raises(ParameterError):
        SequenceExperiment('bad', [], g, 1, 2, 3)


def test_sequence_experiment_tail_is_clamped():
    g = cycle(6)
    assert SequenceExperiment('short', [g], g, 1, 2, 3, tail=5).tail == 1


def test_experiments_registry():
    assert sorted(EXPERIMENTS) == ['converging-circle', 'identity', 'r-boundary',
                                   'sliding-handle', 'snapping-circle']


def test_identity_experiment():
    report = run_sequence(identity_experiment())
    assert report.passed
    assert list(report.table['R1_values']) == ['3/1 5/1'] * 3
    assert list(report.table['hausdorff_R1']) == [0, 0, 0]


def test_identity_experiment_verbose(capsys):
    run_sequence(identity_experiment(count=1), verbose=True)
    captured = capsys.readouterr()
    assert 'Running identity' in captured.out
    assert 'pass' in captured.out


def test_sliding_handle_experiment():
    report = run_sequence(sliding_handle_experiment())
    assert report.passed
    assert report.checks['tail matches the limit']


def test_snapping_circle_experiment():
    report = run_sequence(snapping_circle_experiment())
    assert report.passed
    assert report.limit_r1 == set()


def test_converging_circle_experiment_matches_within_tolerance():
    report = run_sequence(converging_circle_experiment())
    assert report.limit_r1 == {Fraction(3)}
    assert list(report.table['R1_values']) == ['9/2', '15/4', '27/8']
    assert list(report.table['hausdorff_R1']) == [Fraction(3, 2), Fraction(3, 4),
                                                  Fraction(3, 8)]
    assert all(tol >= h for tol, h in zip(report.table['tolerance'],
                                          report.table['hausdorff_R1']))
    assert report.checks['limit values approximated at R2']
    assert report.checks['tail values survive in the limit']
    assert report.passed


def test_converging_circle_terms_never_hit_the_limit_value():
    report = run_sequence(converging_circle_experiment())
    assert not any(report.limit_r1 <= set(Fraction(v) for v in row.split())
                   for row in report.table['R2_values'])


def test_r_boundary_experiment():
    report = run_sequence(r_boundary_experiment())
    assert report.passed
    assert report.checks['limit values present at R2']


def test_tangent_cone_experiment():
    report = tangent_cone_experiment(wedge_with_ray_family(depth=2), [1, 2], 4)
    assert report.consistent
    assert report.decays
    assert list(report.table['values']) == ['3/1', '3/2']


def test_tangent_cone_experiment_needs_increasing_scales():
    with pytest.raises(ParameterError):
        tangent_cone_experiment(wedge_with_ray_family(depth=2), [2, 1], 4)


def test_r_variation_report():
    report = r_variation_report(cycle(6), 'c0', 2, 1)
    assert report['above'] == 1
    assert report['below'] == 0
    assert report['equal_within']
    assert report['verdict_at_next'] == 'Equal'


def test_r_variation_report_on_a_line_with_circles():
    report = r_variation_report(line_with_circles(3), 'l0', '1/2', Fraction(19, 10))
    assert report['above'] == Fraction(1, 10)
    assert report['below'] == Fraction(7, 30)
    assert report['equal_within']
    assert report['verdict_at_next'] == 'Differ'


def test_nontrivial_jump_check():
    out = nontrivial_jump_check(line_with_circles(3), 'l0', '3/2', 1, 2)
    assert out['gained']
    assert out['verdict'] == 'Differ'
    assert out['holds']


def test_nontrivial_jump_check_needs_ordered_radii():
    with pytest.raises(ParameterError):
        nontrivial_jump_check(cycle(6), 'c0', 3, 2, 1)
