"""Coloring problems shared by link diagrams and surface-link diagram codes.

A :class:`ColoringProblem` is pure combinatorics:

* ``adjacency[s] = (r1, r2)``: the normal of sheet/semi-arc ``s`` points from
  region ``r1`` to region ``r2``;
* ``relations``: ``(u1, u2, o1, o2)`` at each crossing or double curve;
* ``marks``: ``(sign, r, sheets)`` at each crossing (two sheets) or triple
  point (three sheets), used to build the chain ``W``.

Shadow colorings assign biquandle elements to sheets and B-set elements to
regions; local colorings assign pairs ``(x, y)`` to sheets.  The two are
enumerated by separate searches.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import ShadowBiquandle
from .errors import InputError
from .tribracket import HorizontalTribracket

__all__ = [
    "ColoringProblem",
    "SBColoring",
    "LBColoring",
    "enumerate_sb",
    "enumerate_lb",
    "is_sb_coloring",
    "is_lb_coloring",
]


@dataclass(frozen=True, order=True)
class SBColoring:
    sheets: tuple[int, ...]
    regions: tuple[int, ...]


@dataclass(frozen=True, order=True)
class LBColoring:
    pairs: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ColoringProblem:
    n_sheets: int
    n_regions: int
    adjacency: tuple[tuple[int, int], ...]
    relations: tuple[tuple[int, int, int, int], ...]
    marks: tuple[tuple[int, int, tuple[int, ...]], ...]
    degree: int = 2

    def __post_init__(self):
        if len(self.adjacency) != self.n_sheets:
            raise InputError("every sheet needs exactly one adjacency record", "missing_adjacency")
        for s, (r1, r2) in enumerate(self.adjacency):
            if not (0 <= r1 < self.n_regions and 0 <= r2 < self.n_regions):
                raise InputError(f"sheet {s}: region out of range", "entry_out_of_range")
        for rel in self.relations:
            if len(rel) != 4 or not all(0 <= v < self.n_sheets for v in rel):
                raise InputError(f"bad relation record {rel}", "malformed_record")
        adj = self.adjacency
        for u1, u2, o1, o2 in self.relations:
            # the four sheets around a double point share regions as in a crossing
            ok = (
                adj[u1][0] == adj[o1][0]
                and adj[u2][0] == adj[o1][1]
                and adj[o2][0] == adj[u1][1]
                and adj[u2][1] == adj[o2][1]
            )
            if not ok:
                raise InputError(f"relation {(u1, u2, o1, o2)} has inconsistent regions", "inconsistent_incidence")
        for sign, r, sheets in self.marks:
            if sign not in (1, -1):
                raise InputError(f"mark sign must be ±1, got {sign}", "malformed_record")
            if not 0 <= r < self.n_regions or any(not 0 <= s < self.n_sheets for s in sheets):
                raise InputError("mark references undeclared sheet or region", "entry_out_of_range")
            if len(sheets) != self.degree:
                raise InputError(f"mark {(sign, r, sheets)} needs {self.degree} sheets", "malformed_record")
            if any(adj[s][0] != r for s in sheets):
                raise InputError(f"mark {(sign, r, sheets)}: region is not the source of its sheets", "inconsistent_incidence")

    def region_relations(self) -> list[tuple[int, int, int, int]]:
        """``(x, y, z, w)`` region roles at each relation: ``w = [x, y, z]``."""
        adj = self.adjacency
        return [(adj[u1][0], adj[u1][1], adj[o1][1], adj[u2][1]) for u1, u2, o1, o2 in self.relations]

    def region_components(self) -> list[list[int]]:
        parent = list(range(self.n_regions))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for r1, r2 in self.adjacency:
            parent[find(r1)] = find(r2)
        comps: dict[int, list[int]] = {}
        for r in range(self.n_regions):
            comps.setdefault(find(r), []).append(r)
        return sorted(comps.values())


# -- verification ---------------------------------------------------------
def is_sb_coloring(p: ColoringProblem, sb: ShadowBiquandle, c: SBColoring) -> bool:
    if len(c.sheets) != p.n_sheets or len(c.regions) != p.n_regions:
        return False
    if any(not 0 <= a < sb.B for a in c.sheets) or any(not 0 <= x < sb.X for x in c.regions):
        return False
    u, o, act = sb.biquandle.under, sb.biquandle.over, sb.bset.action
    a = c.sheets
    for u1, u2, o1, o2 in p.relations:
        if a[u2] != u[a[u1], a[o1]] or a[o2] != o[a[o1], a[u1]]:
            return False
    return all(act[c.regions[r1], a[s]] == c.regions[r2] for s, (r1, r2) in enumerate(p.adjacency))


def is_lb_coloring(p: ColoringProblem, t: HorizontalTribracket, c: LBColoring) -> bool:
    """Direct check of the local-biquandle crossing conditions on sheet pairs."""
    if len(c.pairs) != p.n_sheets:
        return False
    if any(not (0 <= x < t.size and 0 <= y < t.size) for x, y in c.pairs):
        return False
    T = t.table
    P = c.pairs
    for u1, u2, o1, o2 in p.relations:
        (x1, y), (x2, z) = P[u1], P[o1]
        if x1 != x2:
            return False
        w = int(T[x1, y, z])
        if P[u2] != (z, w) or P[o2] != (y, w):
            return False
    # sheets meeting a region must agree on its color
    region_color: dict[int, int] = {}
    for s, (r1, r2) in enumerate(p.adjacency):
        for r, v in ((r1, P[s][0]), (r2, P[s][1])):
            if region_color.setdefault(r, v) != v:
                return False
    return True


# -- shadow enumeration -----------------------------------------------------
def _sb_search(p: ColoringProblem, sb: ShadowBiquandle, prefix: Sequence[int] = ()) -> list[SBColoring]:
    u, o, act = sb.biquandle.under, sb.biquandle.over, sb.bset.action
    ui, oi, ai = sb.biquandle.under_inv, sb.biquandle.over_inv, sb.bset.action_inv
    S_inv = sb.biquandle.S_inv
    touching: list[list[int]] = [[] for _ in range(p.n_sheets)]
    for k, rel in enumerate(p.relations):
        for s in set(rel):
            touching[s].append(k)

    def propagate(col: list[int], start: list[int]) -> bool:
        queue = list(start)
        while queue:
            s = queue.pop()
            for k in touching[s]:
                u1, u2, o1, o2 = p.relations[k]
                a1, a2, b1, b2 = col[u1], col[u2], col[o1], col[o2]
                if a1 >= 0 and b1 >= 0:
                    want = ((u2, int(u[a1, b1])), (o2, int(o[b1, a1])))
                elif a2 >= 0 and b2 >= 0:
                    # (u1, o1) = S^-1(o2, u2)
                    x, y = S_inv[b2, a2]
                    want = ((u1, int(x)), (o1, int(y)))
                elif b1 >= 0 and a2 >= 0:
                    x = int(ui[a2, b1])
                    want = ((u1, x), (o2, int(o[b1, x])))
                elif a1 >= 0 and b2 >= 0:
                    y = int(oi[b2, a1])
                    want = ((o1, y), (u2, int(u[a1, y])))
                else:
                    continue
                for t_, v in want:
                    if col[t_] < 0:
                        col[t_] = v
                        queue.append(t_)
                    elif col[t_] != v:
                        return False
        return True

    arc_colorings: list[tuple[int, ...]] = []

    def dfs(col: list[int]) -> None:
        try:
            s = col.index(-1)
        except ValueError:
            arc_colorings.append(tuple(col))
            return
        for v in range(sb.B):
            nxt = col.copy()
            nxt[s] = v
            if propagate(nxt, [s]):
                dfs(nxt)

    start = [-1] * p.n_sheets
    ok = True
    for s, v in enumerate(prefix):
        start[s] = v
        ok = ok and propagate(start, [s])
    if ok and p.n_sheets:
        dfs(start)
    elif ok:
        arc_colorings.append(())

    comps = p.region_components()
    nbrs: list[list[tuple[int, int, bool]]] = [[] for _ in range(p.n_regions)]
    for s, (r1, r2) in enumerate(p.adjacency):
        nbrs[r1].append((s, r2, True))
        nbrs[r2].append((s, r1, False))
    out = []
    for arcs in arc_colorings:
        per_comp: list[list[list[int]]] = []
        for comp in comps:
            options = []
            for seed in range(sb.X):
                reg = {comp[0]: seed}
                stack = [comp[0]]
                good = True
                while stack and good:
                    r = stack.pop()
                    for s, other, forward in nbrs[r]:
                        v = int(act[reg[r], arcs[s]]) if forward else int(ai[reg[r], arcs[s]])
                        if other not in reg:
                            reg[other] = v
                            stack.append(other)
                        elif reg[other] != v:
                            good = False
                            break
                if good:
                    options.append([reg[r] for r in comp])
            per_comp.append(options)
        _combine(comps, per_comp, p.n_regions, arcs, out)
    return out


def _combine(comps, per_comp, n_regions, arcs, out) -> None:
    def rec(i, regions):
        if i == len(comps):
            out.append(SBColoring(tuple(arcs), tuple(regions)))
            return
        for opt in per_comp[i]:
            nxt = regions.copy()
            for r, v in zip(comps[i], opt):
                nxt[r] = v
            rec(i + 1, nxt)

    rec(0, [0] * n_regions)


def _split_prefixes(size: int, jobs: int, n_vars: int) -> list[tuple[int, ...]]:
    if jobs <= 1 or n_vars == 0:
        return [()]
    return [(v,) for v in range(size)]


def _run_parallel(fn, p, alg, prefixes, jobs):
    if len(prefixes) == 1:
        return fn(p, alg, prefixes[0])
    out = []
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for part in ex.map(fn, [p] * len(prefixes), [alg] * len(prefixes), prefixes):
            out.extend(part)
    return out


def enumerate_sb(p: ColoringProblem, sb: ShadowBiquandle, jobs: int = 1) -> list[SBColoring]:
    """All shadow colorings, sorted.  ``jobs > 1`` splits the search by the first sheet's color."""
    res = _run_parallel(_sb_search, p, sb, _split_prefixes(sb.B, jobs, p.n_sheets), jobs)
    return sorted(res)


# -- local enumeration ------------------------------------------------------
def _lb_search(p: ColoringProblem, t: HorizontalTribracket, prefix: Sequence[int] = ()) -> list[LBColoring]:
    T, i1, i2, i3 = t.table, t.inv_first, t.inv_second, t.inv_third
    rels = p.region_relations()
    touching: list[list[int]] = [[] for _ in range(p.n_regions)]
    for k, rel in enumerate(rels):
        for r in set(rel):
            touching[r].append(k)

    def propagate(col: list[int], start: list[int]) -> bool:
        queue = list(start)
        while queue:
            r = queue.pop()
            for k in touching[r]:
                x, y, z, w = rels[k]
                cx, cy, cz, cw = col[x], col[y], col[z], col[w]
                known = (cx >= 0) + (cy >= 0) + (cz >= 0) + (cw >= 0)
                if known < 3:
                    continue
                if cw < 0:
                    target, v = w, int(T[cx, cy, cz])
                elif cx < 0:
                    target, v = x, int(i1[cw, cy, cz])
                elif cy < 0:
                    target, v = y, int(i2[cx, cw, cz])
                elif cz < 0:
                    target, v = z, int(i3[cx, cy, cw])
                else:
                    if T[cx, cy, cz] != cw:
                        return False
                    continue
                if col[target] < 0:
                    col[target] = v
                    queue.append(target)
                elif col[target] != v:
                    return False
        return True

    found: list[LBColoring] = []

    def dfs(col: list[int]) -> None:
        try:
            r = col.index(-1)
        except ValueError:
            c = LBColoring(tuple((col[r1], col[r2]) for r1, r2 in p.adjacency))
            if is_lb_coloring(p, t, c):
                found.append(c)
            return
        for v in range(t.size):
            nxt = col.copy()
            nxt[r] = v
            if propagate(nxt, [r]):
                dfs(nxt)

    start = [-1] * p.n_regions
    ok = True
    for r, v in enumerate(prefix):
        start[r] = v
        ok = ok and propagate(start, [r])
    if ok:
        dfs(start)
    return found


def enumerate_lb(p: ColoringProblem, t: HorizontalTribracket, jobs: int = 1) -> list[LBColoring]:
    """All local-biquandle colorings, found by region-first search, sorted."""
    res = _run_parallel(_lb_search, p, t, _split_prefixes(t.size, jobs, p.n_regions), jobs)
    return sorted(res)


def sb_to_lb(p: ColoringProblem, sb: ShadowBiquandle, c: SBColoring) -> LBColoring:
    return LBColoring(tuple((c.regions[r1], c.regions[r2]) for r1, r2 in p.adjacency))


def lb_to_sb(p: ColoringProblem, sb: ShadowBiquandle, c: LBColoring) -> SBColoring:
    sw = sb.require_strong()
    regions = [0] * p.n_regions
    for s, (r1, r2) in enumerate(p.adjacency):
        regions[r1], regions[r2] = c.pairs[s]
    return SBColoring(tuple(int(sw[x, y]) for x, y in c.pairs), tuple(regions))


def as_array(colorings: Sequence[SBColoring]) -> np.ndarray:
    return np.array([c.sheets + c.regions for c in colorings], dtype=np.int64)
