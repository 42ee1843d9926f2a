"""Discrete d x d phase space over GF(d): points, lines and striations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .field import FieldElement, FieldSpec, enumerate_field


@dataclass(frozen=True)
class PhasePoint:
    x: FieldElement
    y: FieldElement

    @property
    def index(self) -> int:
        return self.x.spec.d * self.x.index + self.y.index


@dataclass(frozen=True)
class Line:
    striation_id: int
    line_id: int
    points: frozenset[int]  # point indices

    def __contains__(self, point) -> bool:
        idx = point.index if isinstance(point, PhasePoint) else point
        return idx in self.points


@dataclass(frozen=True)
class Striation:
    id: int
    lines: tuple[Line, ...]


@dataclass(frozen=True)
class AxiomReport:
    unique_line_through_two_points: bool
    unique_parallel_through_point: bool
    nonparallel_lines_meet_once: bool

    @property
    def all_pass(self) -> bool:
        return (
            self.unique_line_through_two_points
            and self.unique_parallel_through_point
            and self.nonparallel_lines_meet_once
        )

    def as_dict(self) -> dict:
        return {
            "i_two_points_one_line": self.unique_line_through_two_points,
            "ii_unique_parallel": self.unique_parallel_through_point,
            "iii_nonparallel_meet_once": self.nonparallel_lines_meet_once,
        }


class PhaseSpace:
    """Affine plane over GF(d).

    Striation 0 is vertical (lines ``x = c``); striation ``1 + idx(m)`` holds
    the lines ``y = m x + b`` with line id ``idx(b)``.
    """

    def __init__(self, spec: FieldSpec, striations: list[Striation]):
        self.spec = spec
        self.d = spec.d
        self.striations = tuple(striations)
        elems = enumerate_field(spec)
        self.points = tuple(PhasePoint(x, y) for x in elems for y in elems)
        # incidence[point][striation] -> line_id
        inc = [[-1] * (self.d + 1) for _ in range(self.d**2)]
        for s in self.striations:
            for line in s.lines:
                for pt in line.points:
                    inc[pt][s.id] = line.line_id
        self.incidence = tuple(tuple(row) for row in inc)

    @property
    def lines(self) -> list[Line]:
        return [line for s in self.striations for line in s.lines]

    def point(self, x: int, y: int) -> PhasePoint:
        return self.points[self.d * x + y]

    def line(self, striation_id: int, line_id: int) -> Line:
        return self.striations[striation_id].lines[line_id]

    def __repr__(self):
        return f"PhaseSpace(d={self.d}, lines={self.d * (self.d + 1)})"


def build_phase_space(spec: FieldSpec) -> PhaseSpace:
    d = spec.d
    elems = enumerate_field(spec)

    def idx(x: FieldElement, y: FieldElement) -> int:
        return d * x.index + y.index

    striations = [
        Striation(0, tuple(Line(0, c.index, frozenset(idx(c, y) for y in elems)) for c in elems))
    ]
    for m in elems:
        sid = 1 + m.index
        lines = tuple(
            Line(sid, b.index, frozenset(idx(x, m * x + b) for x in elems)) for b in elems
        )
        striations.append(Striation(sid, lines))
    return PhaseSpace(spec, striations)


def lines_through(ps: PhaseSpace, point: PhasePoint | int) -> list[Line]:
    """The d+1 lines containing ``point``, one per striation, by striation id."""
    if isinstance(point, PhasePoint):
        if point.x.spec != ps.spec:
            raise ValueError("point does not belong to this phase space")
        point = point.index
    if not 0 <= point < ps.d**2:
        raise ValueError(f"point index {point} outside phase space of order {ps.d}")
    return [ps.line(s, lid) for s, lid in enumerate(ps.incidence[point])]


def verify_axioms(ps: PhaseSpace) -> AxiomReport:
    """Exhaustively check the three incidence axioms on explicit point sets."""
    n_points = ps.d**2
    lines = ps.lines

    ok_i = True
    for a, b in itertools.combinations(range(n_points), 2):
        if sum(1 for ln in lines if a in ln.points and b in ln.points) != 1:
            ok_i = False
            break

    ok_ii = True
    for ln in lines:
        parallels = [m for m in lines if m.striation_id == ln.striation_id]
        # a parallel class must not overlap
        if any(m is not ln and m.points & ln.points for m in parallels):
            ok_ii = False
            break
        for a in range(n_points):
            if a in ln.points:
                continue
            if sum(1 for m in parallels if a in m.points) != 1:
                ok_ii = False
                break
        if not ok_ii:
            break

    ok_iii = True
    for l1, l2 in itertools.combinations(lines, 2):
        if l1.striation_id != l2.striation_id and len(l1.points & l2.points) != 1:
            ok_iii = False
            break

    return AxiomReport(ok_i, ok_ii, ok_iii)
