"""Combinatorial surface-link diagram codes.

A code lists semi-sheets and regions by index, one adjacency record
``(s, r1, r2)`` per semi-sheet (the normal of ``s`` points from ``r1`` to
``r2``), double-curve records ``(u1, u2, o1, o2)`` and triple-point records
``(sign, r1, b1, m1, t1)``.  Codes are trusted combinatorics: only arity,
range, coverage and local incidence are validated, never realizability.

:func:`plane_arrangement` builds codes from axis-parallel planes in R^3 with a
height for each plane, which is a convenient source of consistent codes with
triple points.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Sequence

import numpy as np

from .coloring import ColoringProblem
from .errors import InputError

__all__ = ["SurfaceCode", "sphere_code", "plane_arrangement", "two_triple_point_code"]


def _int_records(rows, arity: int, what: str) -> tuple[tuple[int, ...], ...]:
    out = []
    for row in rows:
        if not isinstance(row, (list, tuple)) or len(row) != arity:
            raise InputError(f"{what} record {row!r} must have {arity} entries", "malformed_record")
        if not all(isinstance(v, (int, np.integer)) and not isinstance(v, bool) for v in row):
            raise InputError(f"{what} record {row!r} must be integers", "malformed_record")
        out.append(tuple(int(v) for v in row))
    return tuple(out)


@dataclass(frozen=True)
class SurfaceCode:
    sheets: int
    regions: int
    double_curves: tuple[tuple[int, int, int, int], ...]
    adjacency: tuple[tuple[int, int, int], ...]
    triple_points: tuple[tuple[int, int, int, int, int], ...]
    problem: ColoringProblem = field(init=False, repr=False, compare=False)

    def __init__(self, sheets: int, regions: int, double_curves=(), adjacency=(), triple_points=()):
        if not (isinstance(sheets, int) and isinstance(regions, int)) or sheets < 1 or regions < 1:
            raise InputError("sheets and regions must be positive integers", "malformed_record")
        set_ = object.__setattr__
        set_(self, "sheets", sheets)
        set_(self, "regions", regions)
        set_(self, "double_curves", _int_records(double_curves, 4, "double curve"))
        set_(self, "adjacency", _int_records(adjacency, 3, "adjacency"))
        set_(self, "triple_points", _int_records(triple_points, 5, "triple point"))
        set_(self, "problem", self._build_problem())

    def _build_problem(self) -> ColoringProblem:
        per_sheet: dict[int, tuple[int, int]] = {}
        for s, r1, r2 in self.adjacency:
            if not 0 <= s < self.sheets:
                raise InputError(f"adjacency names undeclared sheet {s}", "entry_out_of_range")
            if per_sheet.setdefault(s, (r1, r2)) != (r1, r2):
                raise InputError(f"sheet {s} has conflicting adjacency records", "conflicting_adjacency")
        missing = sorted(set(range(self.sheets)) - per_sheet.keys())
        if missing:
            raise InputError(f"sheets without adjacency record: {missing}", "missing_adjacency")
        return ColoringProblem(
            n_sheets=self.sheets,
            n_regions=self.regions,
            adjacency=tuple(per_sheet[s] for s in range(self.sheets)),
            relations=self.double_curves,
            marks=tuple((sign, r1, (b, m, t)) for sign, r1, b, m, t in self.triple_points),
            degree=3,
        )

    @classmethod
    def from_json(cls, obj: dict) -> "SurfaceCode":
        if not isinstance(obj, dict) or obj.get("kind", "surface") != "surface":
            raise InputError("expected a surface JSON object", "malformed_json")
        try:
            return cls(
                obj["sheets"],
                obj["regions"],
                obj.get("double_curves", []),
                obj["adjacency"],
                obj.get("triple_points", []),
            )
        except KeyError as exc:
            raise InputError(f"surface JSON lacks field {exc.args[0]!r}", "malformed_json") from exc

    def to_json(self) -> dict:
        return {
            "kind": "surface",
            "sheets": self.sheets,
            "regions": self.regions,
            "double_curves": [list(r) for r in self.double_curves],
            "adjacency": [list(r) for r in self.adjacency],
            "triple_points": [list(r) for r in self.triple_points],
        }


def sphere_code() -> SurfaceCode:
    """One sheet separating an inside from an outside; no double curves."""
    return SurfaceCode(1, 2, [], [[0, 0, 1]], [])


def plane_arrangement(planes: Sequence[tuple[int, float, int, float]]) -> SurfaceCode:
    """Code of a union of axis-parallel planes.

    Each plane is ``(axis, offset, normal_sign, height)``: the plane
    ``x_axis = offset`` with normal ``normal_sign * e_axis``, lying at the given
    height in the fourth coordinate.  Planes that meet must have distinct
    heights; the lower one is the under sheet.  Regions are the cells of the
    arrangement and semi-sheets are the pieces of each plane cut by every
    plane it meets.
    """
    planes = [(int(a), float(c), int(s), float(h)) for a, c, s, h in planes]
    if any(a not in (0, 1, 2) or s not in (1, -1) for a, _, s, _ in planes):
        raise InputError("planes need axis in 0..2 and normal sign ±1", "malformed_record")
    cuts = [sorted({c for a, c, _, _ in planes if a == k}) for k in range(3)]
    if sum(len(c) for c in cuts) != len(planes):
        raise InputError("two planes coincide", "malformed_record")
    for p, q in combinations(planes, 2):
        if p[0] != q[0] and p[3] == q[3]:
            raise InputError("intersecting planes need distinct heights", "malformed_record")

    cells = {key: i for i, key in enumerate(product(*(range(len(c) + 1) for c in cuts)))}
    level = [cuts[a].index(c) for a, c, _, _ in planes]

    def cell(fixed: dict[int, int]) -> int:
        return cells[tuple(fixed[k] for k in range(3))]

    # piece of plane i: slab indices on the two other axes
    pieces: dict[tuple[int, int, int], int] = {}
    adjacency = []
    for i, (a, _, sgn, _) in enumerate(planes):
        others = [k for k in range(3) if k != a]
        for s0, s1 in product(range(len(cuts[others[0]]) + 1), range(len(cuts[others[1]]) + 1)):
            sid = len(pieces)
            pieces[(i, s0, s1)] = sid
            below = cell({a: level[i], others[0]: s0, others[1]: s1})
            above = cell({a: level[i] + 1, others[0]: s0, others[1]: s1})
            adjacency.append([sid] + ([below, above] if sgn > 0 else [above, below]))

    def piece(i: int, slabs: dict[int, int]) -> int:
        others = [k for k in range(3) if k != planes[i][0]]
        return pieces[(i, slabs[others[0]], slabs[others[1]])]

    def neg_side(j: int) -> int:
        """Slab index on the side plane ``j``'s normal points away from."""
        return level[j] + (0 if planes[j][2] > 0 else 1)

    def pos_side(j: int) -> int:
        return level[j] + (1 if planes[j][2] > 0 else 0)

    double_curves = []
    for i, j in combinations(range(len(planes)), 2):
        if planes[i][0] == planes[j][0]:
            continue
        u, o = (i, j) if planes[i][3] < planes[j][3] else (j, i)
        au, ao = planes[u][0], planes[o][0]
        m = 3 - au - ao
        for sm in range(len(cuts[m]) + 1):
            u1 = piece(u, {ao: neg_side(o), m: sm})
            u2 = piece(u, {ao: pos_side(o), m: sm})
            o1 = piece(o, {au: neg_side(u), m: sm})
            o2 = piece(o, {au: pos_side(u), m: sm})
            double_curves.append([u1, u2, o1, o2])

    triple_points = []
    for trio in combinations(range(len(planes)), 3):
        if len({planes[i][0] for i in trio}) != 3:
            continue
        b, mid, t = sorted(trio, key=lambda i: planes[i][3])
        normals = [planes[i][2] * np.eye(3)[planes[i][0]] for i in (t, mid, b)]
        sign = int(round(np.linalg.det(np.array(normals))))
        src = {planes[i][0]: neg_side(i) for i in trio}
        r1 = cell(src)
        roles = [piece(i, src) for i in (b, mid, t)]
        triple_points.append([sign, r1] + roles)

    return SurfaceCode(len(pieces), len(cells), double_curves, adjacency, triple_points)


def two_triple_point_code() -> SurfaceCode:
    """Planes x=0, y=0, z=0, z=1 at heights 0, 2, 3, 1: triple points of sign -1 and +1."""
    return plane_arrangement([(0, 0.0, 1, 0.0), (1, 0.0, 1, 2.0), (2, 0.0, 1, 3.0), (2, 1.0, 1, 1.0)])
