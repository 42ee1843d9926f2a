import itertools

import pytest

from dwf_extrema.field import field_for_dimension, field_make
from dwf_extrema.geometry import AxiomReport, Line, PhaseSpace, Striation, build_phase_space, lines_through, verify_axioms

DIMS = [2, 3, 4, 5, 7, 8]


@pytest.fixture(scope="module", params=DIMS)
def ps(request):
    return build_phase_space(field_for_dimension(request.param))


@pytest.mark.parametrize("d,points,lines,striations", [(2, 4, 6, 3), (3, 9, 12, 4), (4, 16, 20, 5)])
def test_counts(d, points, lines, striations):
    ps = build_phase_space(field_for_dimension(d))
    assert len(ps.points) == points
    assert len(ps.lines) == lines
    assert len(ps.striations) == striations


def test_axioms_exhaustive(ps):
    rep = verify_axioms(ps)
    assert rep == AxiomReport(True, True, True)
    assert rep.all_pass


def test_axioms_hold_for_alternative_gf8_modulus():
    ps = build_phase_space(field_make(2, 3, (1, 0, 1, 1)))
    assert verify_axioms(ps).all_pass


def test_striations_partition_points(ps):
    everything = set(range(ps.d**2))
    for s in ps.striations:
        assert len(s.lines) == ps.d
        union = set()
        for line in s.lines:
            assert len(line.points) == ps.d
            assert not union & line.points
            union |= line.points
        assert union == everything


def test_lines_through_every_point(ps):
    for pt in ps.points:
        lines = lines_through(ps, pt)
        assert [ln.striation_id for ln in lines] == list(range(ps.d + 1))
        assert all(pt in ln for ln in lines)
        for a, b in itertools.combinations(lines, 2):
            assert a.points & b.points == {pt.index}


def test_lines_through_origin_d2():
    ps = build_phase_space(field_make(2))
    got = [sorted(ln.points) for ln in lines_through(ps, ps.point(0, 0))]
    # vertical {(0,0),(0,1)}, slope 0 {(0,0),(1,0)}, slope 1 {(0,0),(1,1)}
    assert got == [[0, 1], [0, 2], [0, 3]]


def test_lines_through_d7():
    ps = build_phase_space(field_make(7))
    assert len(lines_through(ps, ps.point(1, 2))) == 8


def test_slope_intercept_labels():
    spec = field_make(5)
    ps = build_phase_space(spec)
    # line y = 2x + 3 is striation 1 + idx(2), line id idx(3)
    line = ps.line(3, 3)
    expected = {5 * x + (2 * x + 3) % 5 for x in range(5)}
    assert line.points == expected


def test_foreign_point_rejected():
    ps = build_phase_space(field_make(3))
    other = build_phase_space(field_make(5))
    with pytest.raises(ValueError):
        lines_through(ps, other.point(0, 0))
    with pytest.raises(ValueError):
        lines_through(ps, 9)


def test_broken_geometry_is_reported():
    spec = field_make(2)
    good = build_phase_space(spec)
    # replace the slope-1 striation with a copy of the slope-0 one
    s = good.striations
    bad = PhaseSpace(spec, [s[0], s[1], Striation(2, tuple(Line(2, ln.line_id, ln.points) for ln in s[1].lines))])
    rep = verify_axioms(bad)
    assert not rep.unique_line_through_two_points
    assert not rep.nonparallel_lines_meet_once
    assert not rep.all_pass
