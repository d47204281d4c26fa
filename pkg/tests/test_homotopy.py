import pytest

from fractions import Fraction
from ..covspecpy.homotopy import (GridHomotopy, NotFound, square_radius, enclosing_radius,
                                  grid_from_columns, validate_grid, find_grid_homotopy, tighten,
                                  chop, greedy_packing, short_nonmember_representative,
                                  EdgePoint)
from ..covspecpy import homotopy
from ..covspecpy.graphs import EdgePath
from ..covspecpy.zoo import capped_cylinder, cycle, grid_torus, line, loop_through, ring_loop
from ..covspecpy.errors import (InvalidHomotopy, LoopOutsideBall, MalformedGrid,
                                PreconditionError)


def _around(n):
    return EdgePath('c0', [(i, 1) for i in range(n)])


def test_constant_grid_is_valid():
    H = GridHomotopy(EdgePath('c0'), [('c0',)])
    assert H.width == 0
    assert H.height == 0
    assert validate_grid(H, cycle(6), 1)


def test_validate_grid_rejects_unfinished_grid():
    g = cycle(6)
    loop = _around(6)
    H = GridHomotopy(loop, [loop.vertices(g)])
    assert not validate_grid(H, g, 4)


def test_validate_grid_malformed_columns():
    g = cycle(6)
    loop = _around(6)
    with pytest.raises(MalformedGrid):
        validate_grid(GridHomotopy(loop, [loop.vertices(g), ('c0',)]), g, 4)
    with pytest.raises(MalformedGrid):
        validate_grid(GridHomotopy(loop, [['c0'] + ['nowhere'] * 6]), g, 4)


def test_square_radius_and_enclosing_radius():
    g = cycle(6)
    assert square_radius(g, {'c0', 'c1'}, {0}, 'c3') == 3
    assert square_radius(g, {'c0', 'c1'}, {0}, 'c0') == 1
    assert square_radius(g, {'c0', 'c1'}, {0}, EdgePoint(0, '1/2')) == Fraction(1, 2)
    assert enclosing_radius(g, {'c0', 'c1'}, {0}) == (Fraction(1, 2),
                                                      EdgePoint(0, Fraction(1, 2)))


def test_enclosing_radius_prefers_vertex_centers_on_ties():
    g = cycle(6)
    assert enclosing_radius(g, {'c0', 'c1', 'c2'}, {0, 1}) == (1, 'c1')
    assert enclosing_radius(g, {'c0'}, set()) == (0, 'c0')


def test_enclosing_radius_of_a_whole_cycle():
    g = cycle(6)
    r, center = enclosing_radius(g, set(g.vertices), set(range(6)))
    assert r == 3
    assert center == 'c0'


def test_validate_grid_rejects_unknown_edge_center():
    g = cycle(6)
    loop = _around(6)
    H = GridHomotopy(loop, [loop.vertices(g), ['c0'] * 7], {(0, 0): EdgePoint(99, 0)})
    with pytest.raises(MalformedGrid):
        validate_grid(H, g, 4)
    H = GridHomotopy(loop, [loop.vertices(g), ['c0'] * 7], {(0, 0): EdgePoint(0, 2)})
    with pytest.raises(MalformedGrid):
        validate_grid(H, g, 4)


def test_grid_from_columns_picks_centers():
    g = cycle(6)
    loop = _around(6)
    H = grid_from_columns(g, loop, [loop.vertices(g), ['c0'] * 7])
    assert H.width == 1
    assert H.height == 6
    assert len(H.centers) == 6


def test_find_grid_homotopy_on_cycle():
    g = cycle(6)
    H = find_grid_homotopy(g, _around(6), '7/2')
    assert isinstance(H, GridHomotopy)
    assert validate_grid(H, g, '7/2')
    assert tighten(H, g, '7/2') < Fraction(7, 2)


def test_find_grid_homotopy_gives_up_below_half_length():
    result = find_grid_homotopy(cycle(6), _around(6), 3)
    assert isinstance(result, NotFound)
    assert not result
    assert result.reason == 'exhausted'
    assert 'exhausted' in repr(result)


def test_find_grid_homotopy_state_cap():
    result = find_grid_homotopy(cycle(6), _around(6), '7/2', max_states=0)
    assert result.reason == 'state cap'
    assert result.explored == 0


def test_find_grid_homotopy_torus_face():
    g = grid_torus(5, 5)
    face = g.faces[0]
    H = find_grid_homotopy(g, face, '5/2')
    assert H
    assert validate_grid(H, g, '5/2')


def test_find_grid_homotopy_trivial_loop():
    H = find_grid_homotopy(cycle(6), EdgePath('c0'), 1)
    assert H.width == 0


def test_find_grid_homotopy_needs_a_loop():
    with pytest.raises(MalformedGrid):
        find_grid_homotopy(cycle(6), EdgePath('c0', [(0, 1)]), 4)


def test_find_grid_homotopy_verbose(capsys):
    find_grid_homotopy(cycle(6), _around(6), '7/2', verbose=True)
    captured = capsys.readouterr()
    assert 'Found a' in captured.out


def test_tighten_rejects_invalid_grid():
    g = cycle(6)
    H = find_grid_homotopy(g, _around(6), '7/2')
    with pytest.raises(InvalidHomotopy):
        tighten(H, g, 1)


def test_tighten_on_a_torus_face():
    g = grid_torus(5, 5)
    H = find_grid_homotopy(g, g.faces[0], '5/2')
    eps = tighten(H, g, '5/2')
    assert Fraction(1, 2) <= eps <= 2
    assert validate_grid(H, g, eps + Fraction(1, 100))
    assert not validate_grid(H, g, eps)


def test_tighten_on_a_tree_retraction():
    g = line(0, 3)
    loop = loop_through(g, ['l0', 'l1', 'l2', 'l1'])
    H = find_grid_homotopy(g, loop, 2)
    assert H.width == 1
    assert tighten(H, g, 2) == 1
    assert validate_grid(H, g, Fraction(11, 10))


def test_chop_keeps_everything_inside():
    g = cycle(6)
    H = find_grid_homotopy(g, _around(6), '7/2')
    result = chop(H, g, '7/2', g.vertices)
    assert len(result) == 0
    assert result.kept == H.squares()
    assert result.verified is True
    assert result.check


def _ring(h, m=8):
    return ['r{}.{}'.format(h, a) for a in range(m)]


def test_chop_cylinder_slide_leaves_one_loop():
    g = capped_cylinder(8, 4)
    loop = ring_loop(g, 'r', 3, m=8)
    top = loop.vertices(g)
    columns = [top, top,
               ['r3.0'] + _ring(1)[1:] + ['r3.0'],
               ['r3.0'] + _ring(0)[1:] + ['r3.0'],
               ['r3.0'] + ['cap'] * 7 + ['r3.0'],
               ['r3.0'] * 9]
    H = GridHomotopy(loop, columns)
    region = _ring(2) + _ring(3)
    result = chop(H, g, 2, region)
    assert len(result) == 1
    assert len(result.components[0]) == 32
    assert result.kept == [(0, y) for y in range(8)]
    assert result.loops[0].is_loop(g)
    assert result.loops[0].start == 'r3.0'
    assert set(result.corners[0]) <= set(_ring(3))
    assert result.satisfies_tubular(g, set(region), 2)
    assert result.verified is True


def test_chop_two_excursions_leave_two_loops():
    g = capped_cylinder(8, 4)
    loop = ring_loop(g, 'r', 3, m=8)
    top = loop.vertices(g)
    bumped = list(top)
    bumped[2] = 'r1.2'
    bumped[6] = 'r1.6'
    H = GridHomotopy(loop, [top, bumped, top, ['r3.0'] * 9])
    region = set(_ring(2) + _ring(3))
    result = chop(H, g, 3, region, verify=False)
    assert len(result) == 2
    assert [sorted(c) for c in result.components] == [
        [(0, 1), (0, 2), (1, 1), (1, 2)], [(0, 5), (0, 6), (1, 5), (1, 6)]]
    assert [ell.start for ell in result.loops] == ['r3.1', 'r3.5']
    assert all(len(ell) == 0 for ell in result.loops)
    assert result.satisfies_tubular(g, region, 3)
    assert not result.satisfies_tubular(g, region, Fraction(1, 2))
    assert result.verified is None


def test_chop_flags_failed_comparison_search(mocker):
    g = cycle(6)
    H = find_grid_homotopy(g, _around(6), '7/2')
    mocker.patch.object(homotopy, 'find_grid_homotopy',
                        return_value=NotFound(5, 'state cap'))
    result = chop(H, g, '7/2', g.vertices)
    assert result.verified is None
    assert result.check.reason == 'state cap'


def test_chop_needs_loop_in_region():
    g = cycle(6)
    H = find_grid_homotopy(g, _around(6), '7/2')
    with pytest.raises(LoopOutsideBall):
        chop(H, g, '7/2', ['c0', 'c1', 'c2'])


def test_greedy_packing():
    g = cycle(6)
    assert greedy_packing(g, g.vertices, 1) == ['c0', 'c2', 'c4']
    assert greedy_packing(g, g.vertices, Fraction(3, 2)) == ['c0', 'c3']


def test_short_nonmember_representative_cycle():
    g = cycle(6)
    rep = short_nonmember_representative(g, g.vertices, '5/2')
    assert rep.rho == Fraction(1, 2)
    assert len(rep.centers) == 6
    assert rep.length == 6
    assert rep.length <= rep.bound
    assert rep.loop.is_loop(g)
    assert any('packing' in line for line in rep.transcript)


def test_short_nonmember_representative_tree_region():
    g = line(0, 4)
    with pytest.raises(PreconditionError):
        short_nonmember_representative(g, g.vertices, 1)


def test_short_nonmember_representative_everything_in_closure():
    g = cycle(6)
    with pytest.raises(PreconditionError):
        short_nonmember_representative(g, g.vertices, '7/2')
