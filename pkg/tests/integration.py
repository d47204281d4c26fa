import time
import numpy as np
import covspecpy as cs

from fractions import Fraction

from tqdm import tqdm


def _within(actual, expected, tolerance_ratio=None, abs_tolerance=None):
    if expected == 0 or actual == 0:
        ratio = None
    elif actual < expected:
        ratio = expected / actual
    else:
        ratio = actual / expected

    abs_diff = np.abs(actual - expected)

    if abs_tolerance is not None and abs_diff < abs_tolerance:
        return True
    elif tolerance_ratio is not None and ratio is not None and ratio < tolerance_ratio:
        return True
    else:
        return False


def _mark_time(start, expected_sec, label, tolerance_ratio=1.5, tolerance_ms_threshold=50):
    end = time.time()
    delta_sec = end - start
    use_delta = delta_sec
    expected = expected_sec
    delta_label = 'sec'
    if delta_sec < 1:
        delta_ms = delta_sec * 1000
        expected = expected_sec * 1000
        use_delta = delta_ms
        delta_label = 'ms'
    use_delta = round(use_delta, 2)
    print('...{} in {}{} (expected ~{}{})'.format(label,
                                                  use_delta,
                                                  delta_label,
                                                  expected,
                                                  delta_label))
    if delta_label == 'ms':
        deviation = not _within(use_delta, expected, tolerance_ratio, tolerance_ms_threshold)
    else:
        deviation = not _within(use_delta, expected, tolerance_ratio)
    if deviation:
        print('!!! WARNING: Unexpected timing deviation')
    return {'timing(sec)': delta_sec, 'deviation': deviation}


def _values(*xs):
    return set(Fraction(x) for x in xs)


def _error(n, *details):
    print('ERROR {}'.format(n))
    for d in details:
        print(d)
    import pdb
    pdb.set_trace()


BOUNDED_SPACES = [lambda: cs.wedge_of_circles([6, 10]),
                  lambda: cs.cycle(6),
                  lambda: cs.line(0, 6),
                  lambda: cs.hawaii_truncation(4),
                  lambda: cs.wedge_with_ray([6, 10]),
                  lambda: cs.line_with_circles(3)]


if __name__ == '__main__':
    print('Test 1 (WEDGE SPECTRA)...')
    start1 = time.time()
    start = time.time()
    out = cs.covering_spectrum(cs.wedge_of_circles([6, 10]), 6).value_set()
    if out != _values(3, 5):
        _error(1, out)
    _mark_time(start, 0.2, 'Test 1a complete')
    start = time.time()
    out = cs.covering_spectrum(cs.wedge_of_circles([2, 4, 6, 8, 10]), 5).value_set()
    if out != _values(1, 2, 3, 4, 5):
        _error(1, out)
    _mark_time(start, 0.8, 'Test 1b complete')


    print('Test 2 (FIGURE EIGHT COVER REGIMES)...')
    start2 = time.time()
    g = cs.wedge_of_circles([6, 10])
    line_like = cs.build_cover_ball(cs.delta_closure(g, 4), 25)
    tree_like = cs.build_cover_ball(cs.delta_closure(g, '29/10'), 25)
    if line_like.check_local_isometry() or tree_like.check_local_isometry():
        _error(2, line_like, tree_like)
    if tree_like.cycle_rank() != 0 or line_like.cycle_rank() == 0:
        _error(2, line_like.cycle_rank(), tree_like.cycle_rank())
    _mark_time(start2, 2, 'Test 2 complete')


    print('Test 3 (CYLINDER TRIVIALITY)...')
    start3 = time.time()
    cyl = cs.cylinder(6, 20)
    tqdm_ = tqdm(total=9)
    for basepoint in ['r10.0', 'r5.2', 'r15.4']:
        for R in [1, 3, 8]:
            s = cs.r_cutoff_spectrum(cyl, basepoint, R, 3)
            if len(s.without_artifacts()) != 0:
                _error(3, basepoint, R, s)
            tqdm_.update(1)
    tqdm_.close()
    s = cs.cutoff_spectrum(cs.cylinder_family(depth=3), 3)
    if len(s.without_artifacts()) != 0:
        _error(3, s)
    _mark_time(start3, 60, 'Test 3 complete')


    print('Test 4 (BOUNDED SPACE COLLAPSE)...')
    start4 = time.time()
    for make in BOUNDED_SPACES:
        g = make()
        cap = 4
        full = cs.covering_spectrum(g, cap).value_set()
        cut = cs.r_cutoff_spectrum(g, g.basepoint, g.diameter() + 1, cap).value_set()
        if full != cut:
            _error(4, g, full, cut)
    _mark_time(start4, 5, 'Test 4 complete')


    print('Test 5 (CONTAINMENT CHAIN)...')
    start5 = time.time()
    for make in BOUNDED_SPACES:
        g = make()
        cap = 4
        ladder = [1, 2, 3, g.diameter() + 1]
        full = cs.covering_spectrum(g, cap).certain()
        halves = set(v / 2 for v in cs.length_spectrum(g, 2 * cap).value_set())
        previous = set()
        for R in ladder:
            current = cs.r_cutoff_spectrum(g, g.basepoint, R, cap).certain()
            if not previous <= current or not current <= full or not current <= halves:
                _error(5, g, R, previous, current, full)
            previous = current
    fam = cs.line_with_circles_family(depth=3)
    cut = cs.cutoff_spectrum(fam, 2).certain()
    for n, level in enumerate(fam.levels):
        level_values = cs.r_cutoff_spectrum(level, level.basepoint, fam.scope_radii[n],
                                            2).certain()
        if not level_values <= cut:
            _error(5, n, level_values, cut)
    _mark_time(start5, 20, 'Test 5 complete')


    print('Test 6 (LINE WITH CIRCLES)...')
    start6 = time.time()
    depth = 5
    s = cs.cutoff_spectrum(cs.line_with_circles_family(depth=depth), 2)
    expected = set(1 + Fraction(1, j) for j in range(1, depth + 1)) | {Fraction(1)}
    if s.value_set() != expected:
        _error(6, s)
    if not s[1].semiclosure or any(v.semiclosure for v in s if v.value != 1):
        _error(6, s)
    print(cs.write_table(s.ladder))
    _mark_time(start6, 15, 'Test 6 complete')


    print('Test 7 (LOCALIZATION)...')
    start7 = time.time()
    report = cs.localization_report(cs.cylinder(6, 32), 'r16.0', cs.capped_cylinder(6, 32),
                                    'r16.0', 1, 2, 15)
    if not (report['bound_holds'] and report['balls_isometric'] and report['agree']):
        _error(7, report)
    report = cs.localization_report(cs.cylinder(6, 8), 'r3.0', cs.capped_cylinder(6, 8),
                                    'r3.0', 1, 2, 3)
    print('Below the bound: agree={} (recorded only)'.format(report['agree']))
    _mark_time(start7, 120, 'Test 7 complete')


    print('Test 8 (GH EXPERIMENTS)...')
    start8 = time.time()
    for name in ['sliding-handle', 'snapping-circle', 'converging-circle', 'r-boundary',
                 'identity']:
        start = time.time()
        report = cs.run_sequence(cs.EXPERIMENTS[name](), verbose=True)
        if not report.passed:
            _error(8, name, report.table, report.checks)
        _mark_time(start, 10, 'Test 8 ({}) complete'.format(name))
    _mark_time(start8, 40, 'Test 8 complete')


    print('Test 9 (ORACLE AGREES WITH ALGEBRA)...')
    start9 = time.time()
    cs.set_seed(42)
    spaces = [cs.cycle(6), cs.wedge_of_circles([6, 10]), cs.grid_torus(5, 5),
              cs.hawaii_truncation(3)]
    tqdm_ = tqdm(total=len(spaces) * 20)
    for g in spaces:
        deltas = sorted(set(c.length / 2 for c in cs.enumerate_classes(g, 8)))
        for _ in range(20):
            loop = cs.random_loop(g, 4)
            word = cs.loop_to_word(g, loop)
            for delta in deltas:
                found = cs.find_grid_homotopy(g, loop, delta, max_states=cs.GRID_STATES)
                member, witness = cs.normal_closure_member(
                    word, cs.delta_closure(g, delta).words(), return_witness=True)
                if found and member == cs.NO:
                    _error(9, g, loop, delta, member)
                if found and not cs.validate_grid(found, g, delta):
                    _error(9, 'invalid grid', g, loop, delta)
                elif found and cs.tighten(found, g, delta) >= delta:
                    _error(9, 'loose grid', g, loop, delta)
                if witness is not None and not witness.verify():
                    _error(9, 'bad witness', g, loop, delta, witness)
            tqdm_.update(1)
    tqdm_.close()
    for g, delta in [(cs.cycle(6), '5/2'), (cs.wedge_of_circles([6, 10]), 3)]:
        rep = cs.short_nonmember_representative(g, g.vertices, delta)
        if rep.length > rep.bound:
            _error(9, rep)
    _mark_time(start9, 60, 'Test 9 complete')


    print('Test 10 (RESCALING)...')
    start10 = time.time()
    for make in BOUNDED_SPACES[:4]:
        g = make()
        base = cs.covering_spectrum(g, 5)
        for r in [2, Fraction(3, 2)]:
            computed = cs.covering_spectrum(cs.rescale_graph(g, r), 5 / Fraction(r))
            if computed.value_set() != cs.rescale_spectrum(base, r).value_set():
                _error(10, g, r, computed, base)
    _mark_time(start10, 5, 'Test 10 complete')


    print('Test 11 (LOOPS TO INFINITY)...')
    start11 = time.time()
    fam = cs.cylinder_family(depth=3)
    g = fam.levels[-1]
    if cs.loops_to_infinity(fam, cs.loop_to_word(g, cs.ring_loop(g, 'r', 0))) != cs.YES:
        _error(11, 'cylinder')
    fam = cs.two_ended_figure(depth=3)
    g = fam.levels[-1]
    g1 = cs.loop_to_word(g, cs.ring_loop(g, 'a', 0, shared='x'))
    g2 = cs.loop_to_word(g, cs.ring_loop(g, 'b', 0, shared='x'))
    verdicts = [cs.loops_to_infinity(fam, w) for w in (g1, g2, cs.multiply(g1, g2))]
    if verdicts != [cs.YES, cs.YES, cs.NO]:
        _error(11, verdicts)
    s = cs.cutoff_spectrum(fam, 3)
    if len(s.without_artifacts()) != 0:
        _error(11, s)
    _mark_time(start11, 30, 'Test 11 complete')


    print('Test 12 (MULTICORE SPECTRUM)...')
    start12 = time.time()
    single = cs.covering_spectrum(cs.grid_torus(6, 8), 4)
    test_12a_mark = _mark_time(start12, 20, 'Test 12a complete')
    start = time.time()
    multi = cs.covering_spectrum(cs.grid_torus(6, 8), 4, cores=4, verbose=True)
    test_12b_mark = _mark_time(start, 8, 'Test 12b complete')
    if single.value_set() != multi.value_set() or multi.value_set() != _values(2, 3, 4):
        _error(12, single, multi)
    print('1 core expected {}sec'.format(round(test_12a_mark['timing(sec)'], 1)))
    print('4 core ideal {}sec'.format(round(test_12a_mark['timing(sec)'] / 4, 1)))
    print('4 core actual {}sec'.format(round(test_12b_mark['timing(sec)'], 1)))


    print('Test 13 (VERSION)...')
    print('Covspecpy version is {}'.format(cs.__version__))

# END
    _mark_time(start1, 400, 'Integration tests complete')
    print('DONE! INTEGRATION TEST SUCCESS!')
