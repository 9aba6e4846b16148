"""Oriented link diagrams from PD codes; colorings, the map T, chains W and invariants.

PD conventions
--------------
Each crossing is a 4-tuple of edge labels listed counterclockwise, starting at
the incoming under-edge.  Draw the crossing with ray ``p`` pointing south,
east, north, west for ``p = 0, 1, 2, 3``: the under strand runs from ray 0 to
ray 2, so it travels north.  The over strand runs 1 -> 3 (westward, sign -1)
or 3 -> 1 (eastward, sign +1).  Edge labels increase along each component.

Regions are the faces of the 4-valent plane graph, traced corner by corner:
leaving a crossing along ray ``p`` the face on the left is the sector between
rays ``p`` and ``p+1``.

Normals point to the left of travel, so a semi-arc ``s`` with right region
``r1`` and left region ``r2`` imposes ``C(r1) * C(s) = C(r2)``.  At each
crossing the source region ``r`` lies to the right of both strands, ``u1`` and
``o1`` are the semi-arcs bounding ``r`` and ``u2``, ``o2`` are the other two.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import ShadowBiquandle
from .chains import ChainTheory, FormalChain, homology, is_cocycle, mu_chain
from .cochains import CochainTable
from .coloring import (
    ColoringProblem,
    LBColoring,
    SBColoring,
    enumerate_lb,
    enumerate_sb,
    is_lb_coloring,
    is_sb_coloring,
    lb_to_sb,
    sb_to_lb,
)
from .errors import ContractError, InputError
from .tribracket import HorizontalTribracket

__all__ = [
    "PDCode",
    "CrossingRoles",
    "DiagramStructure",
    "SBColoring",
    "LBColoring",
    "InvariantResult",
    "build_structure",
    "enumerate_sb_colorings",
    "enumerate_lb_colorings",
    "enumerate_surface_colorings",
    "T",
    "T_inv",
    "chain_W",
    "invariants",
]


@dataclass(frozen=True)
class PDCode:
    crossings: tuple[tuple[int, int, int, int], ...]

    def __init__(self, crossings: Sequence[Sequence[int]]):
        rows = []
        for c in crossings:
            if len(c) != 4:
                raise InputError(f"crossing {list(c)} does not have 4 entries", "malformed_pd")
            try:
                rows.append(tuple(int(e) for e in c))
            except (TypeError, ValueError) as exc:
                raise InputError(f"crossing {list(c)} has non-integer labels", "malformed_pd") from exc
        if not rows:
            raise InputError("diagrams without crossings are not supported; use a kinked unknot", "empty_pd")
        counts = Counter(e for c in rows for e in c)
        bad = sorted(e for e, k in counts.items() if k != 2)
        if bad:
            raise InputError(f"edge labels {bad} do not appear exactly twice", "malformed_pd")
        object.__setattr__(self, "crossings", tuple(rows))

    @property
    def edges(self) -> list[int]:
        return sorted({e for c in self.crossings for e in c})

    def to_json(self) -> dict:
        return {"kind": "pd", "crossings": [list(c) for c in self.crossings]}


@dataclass(frozen=True)
class CrossingRoles:
    sign: int
    r: int
    u1: int
    u2: int
    o1: int
    o2: int


@dataclass
class DiagramStructure:
    """Semi-arcs (edge indices), regions and crossing data of a connected diagram.

    ``sides[s] = (right, left)`` for the oriented semi-arc ``s``; ``edge_labels``
    maps semi-arc indices back to PD labels.
    """

    pd: PDCode
    edge_labels: list[int]
    n_regions: int
    sides: list[tuple[int, int]]
    crossings: list[CrossingRoles]
    problem: ColoringProblem = field(repr=False)

    @property
    def n_semi_arcs(self) -> int:
        return len(self.edge_labels)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def to_json(self) -> dict:
        return {
            "crossings": self.n_crossings,
            "semi_arcs": self.n_semi_arcs,
            "regions": self.n_regions,
            "sides": [list(s) for s in self.sides],
            "roles": [c.__dict__ for c in self.crossings],
        }


def _orient(pd: PDCode, where: dict[int, list[tuple[int, int]]]) -> dict[int, tuple[tuple[int, int], tuple[int, int]]]:
    """Return ``edge -> (tail, head)`` occurrences ``(crossing, position)``.

    Each component is walked once; the under strand (0 -> 2) fixes the
    direction, and components that never pass under fall back on increasing
    edge labels.
    """
    cr = pd.crossings

    def other(e: int, occ: tuple[int, int]) -> tuple[int, int]:
        a, b = where[e]
        return b if occ == a else a

    tail_head: dict[int, tuple[tuple[int, int], tuple[int, int]]] = {}
    for start in sorted(where):
        if start in tail_head:
            continue
        walk = []
        tail = where[start][0]
        e = start
        while True:
            head = other(e, tail)
            walk.append((e, tail, head))
            nxt_tail = (head[0], (head[1] + 2) % 4)
            e = cr[nxt_tail[0]][nxt_tail[1]]
            tail = nxt_tail
            if e == start and tail == walk[0][1]:
                break
            if len(walk) > len(where):
                raise InputError("could not close a component walk", "inconsistent_pd")
        votes = set()
        for _, t, h in walk:
            if t[1] == 2 or h[1] == 0:
                votes.add(True)
            if t[1] == 0 or h[1] == 2:
                votes.add(False)
        if len(votes) > 1:
            raise InputError("under-strand positions give inconsistent orientations", "inconsistent_pd")
        if votes:
            forward = votes.pop()
        else:
            labels = [e for e, _, _ in walk]
            i = labels.index(min(labels))
            forward = len(labels) == 1 or labels[(i + 1) % len(labels)] == labels[i] + 1
        for e, t, h in walk:
            tail_head[e] = (t, h) if forward else (h, t)
    return tail_head


def build_structure(pd: PDCode | Sequence[Sequence[int]]) -> DiagramStructure:
    """Faces, orientations, signs and crossing roles of a connected PD code."""
    if not isinstance(pd, PDCode):
        pd = PDCode(pd)
    cr = pd.crossings
    n = len(cr)
    where: dict[int, list[tuple[int, int]]] = {}
    for c, tup in enumerate(cr):
        for p, e in enumerate(tup):
            where.setdefault(e, []).append((c, p))

    # connectivity of the crossing graph
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for (c1, _), (c2, _) in where.values():
        parent[find(c1)] = find(c2)
    if len({find(c) for c in range(n)}) != 1:
        raise InputError("diagram is disconnected", "disconnected_diagram")

    tail_head = _orient(pd, where)
    for e, ((tc, tp), (hc, hp)) in tail_head.items():
        if tp == 0 or hp == 2:
            raise InputError(f"edge {e} runs against the under-strand convention", "inconsistent_pd")

    # faces: dart (c, p) = leave c along ray p with the face on the left
    face: dict[tuple[int, int], int] = {}
    n_faces = 0
    for c in range(n):
        for p in range(4):
            if (c, p) in face:
                continue
            d = (c, p)
            while d not in face:
                face[d] = n_faces
                e = cr[d[0]][d[1]]
                a, b = where[e]
                arrive = b if a == d else a
                if a == b:  # defensive; labels appear at two distinct positions
                    arrive = a
                d = (arrive[0], (arrive[1] - 1) % 4)
            n_faces += 1
    if n - 2 * n + n_faces != 2:
        raise InputError(f"Euler check failed: V={n}, E={2 * n}, F={n_faces}", "nonplanar_pd")

    labels = pd.edges
    idx = {e: i for i, e in enumerate(labels)}
    sides = []
    for e in labels:
        (tc, tp), _ = tail_head[e]
        sides.append((face[(tc, (tp - 1) % 4)], face[(tc, tp)]))

    roles = []
    for c, tup in enumerate(cr):
        over_in = 1 if tail_head[tup[1]][1] == (c, 1) else 3
        if tail_head[tup[3]][1] == (c, 3) and over_in == 1:
            raise InputError(f"crossing {c}: both over edges are incoming", "inconsistent_pd")
        if over_in == 3:
            # over travels east: source sector 0, bounded by rays 0 and 1
            sign, sector, u1p, o1p = 1, 0, 0, 1
        else:
            # over travels west: source sector 1, bounded by rays 1 and 2
            sign, sector, u1p, o1p = -1, 1, 2, 1
        roles.append(
            CrossingRoles(
                sign=sign,
                r=face[(c, sector)],
                u1=idx[tup[u1p]],
                u2=idx[tup[(u1p + 2) % 4]],
                o1=idx[tup[o1p]],
                o2=idx[tup[(o1p + 2) % 4]],
            )
        )
    problem = ColoringProblem(
        n_sheets=len(labels),
        n_regions=n_faces,
        adjacency=tuple(sides),
        relations=tuple((k.u1, k.u2, k.o1, k.o2) for k in roles),
        marks=tuple((k.sign, k.r, (k.u1, k.o1)) for k in roles),
        degree=2,
    )
    return DiagramStructure(pd, labels, n_faces, sides, roles, problem)


def _problem(obj) -> ColoringProblem:
    if isinstance(obj, ColoringProblem):
        return obj
    p = getattr(obj, "problem", None)
    if p is None:
        raise InputError("expected a diagram structure or surface code", "invalid_structure")
    return p


def enumerate_sb_colorings(ds, sb: ShadowBiquandle, jobs: int = 1) -> list[SBColoring]:
    return enumerate_sb(_problem(ds), sb, jobs)


def enumerate_lb_colorings(ds, t: HorizontalTribracket, jobs: int = 1) -> list[LBColoring]:
    return enumerate_lb(_problem(ds), t, jobs)


def enumerate_surface_colorings(sc, alg, jobs: int = 1) -> list:
    """Shadow colorings for a shadow biquandle, local colorings for a tribracket."""
    if isinstance(alg, ShadowBiquandle):
        return enumerate_sb(_problem(sc), alg, jobs)
    if isinstance(alg, HorizontalTribracket):
        return enumerate_lb(_problem(sc), alg, jobs)
    raise InputError("expected a shadow biquandle or a tribracket", "invalid_structure")


def T(sb: ShadowBiquandle, c: SBColoring, ds) -> LBColoring:
    """Read each semi-arc's pair from its two adjacent region colors."""
    p = _problem(ds)
    sb.require_strong()
    if not is_sb_coloring(p, sb, c):
        raise ContractError("not a shadow coloring of this diagram", "invalid_coloring")
    return sb_to_lb(p, sb, c)


def T_inv(sb: ShadowBiquandle, c: LBColoring, ds, t: HorizontalTribracket | None = None) -> SBColoring:
    """Region colors from pairs, semi-arc colors ``x↘y``."""
    p = _problem(ds)
    sb.require_strong()
    if t is not None and not is_lb_coloring(p, t, c):
        raise ContractError("not a local coloring of this diagram", "invalid_coloring")
    out = lb_to_sb(p, sb, c)
    if not is_sb_coloring(p, sb, out):
        raise ContractError("pairs do not come from a local coloring", "invalid_coloring")
    return out


def chain_W(ds, coloring, theory: str | None = None) -> FormalChain:
    """Signed sum of local chains over crossings or triple points, in the quotient complex."""
    p = _problem(ds)
    deg = p.degree
    out = FormalChain(deg)
    if isinstance(coloring, SBColoring):
        if theory not in (None, "SB"):
            raise InputError("shadow coloring given for a local chain", "theory_mismatch")
        for sign, r, sheets in p.marks:
            out.add_term((coloring.regions[r],) + tuple(coloring.sheets[s] for s in sheets), sign)
    elif isinstance(coloring, LBColoring):
        if theory not in (None, "LB"):
            raise InputError("local coloring given for a shadow chain", "theory_mismatch")
        for sign, _, sheets in p.marks:
            pairs = [coloring.pairs[s] for s in sheets]
            x = pairs[0][0]
            if any(q[0] != x for q in pairs):
                raise ContractError("local pairs at a crossing disagree on the base", "invalid_coloring")
            out.add_term((x,) + tuple(q[1] for q in pairs), sign)
    else:
        raise InputError("unknown coloring type", "invalid_coloring")
    return out.project()


@dataclass
class InvariantResult:
    count: int
    phi: dict[int, int]
    H: dict[tuple, int]
    modulus: int
    theory: str
    presentation: dict | None = None

    def to_json(self) -> dict:
        return {
            "theory": self.theory,
            "colorings": self.count,
            "modulus": self.modulus,
            "phi": [[v, k] for v, k in sorted(self.phi.items())],
            "H": [[list(c), k] for c, k in sorted(self.H.items())],
            "presentation": self.presentation,
        }


def invariants(
    ds,
    alg,
    theta: CochainTable,
    *,
    with_homology: bool = True,
    homology_coeff: int | None = None,
    check_cocycle: bool = True,
    jobs: int = 1,
    colorings: list | None = None,
) -> InvariantResult:
    """Φ and 𝓗 multisets for a link diagram (degree 2) or surface code (degree 3)."""
    p = _problem(ds)
    kind = "SB" if isinstance(alg, ShadowBiquandle) else "LB"
    if theta.theory != kind:
        raise InputError(f"{theta.theory} cocycle with {kind} coloring data", "theory_mismatch")
    if theta.degree != p.degree:
        raise InputError(f"cocycle degree {theta.degree} but diagram needs {p.degree}", "degree_mismatch")
    size = alg.X if kind == "SB" else alg.size
    if any(not 0 <= a < size for g in theta.values for a in g):
        raise InputError("cocycle tuple entries exceed the algebra size", "size_mismatch")
    theory = ChainTheory(kind, alg, cap=p.degree + 1)
    if check_cocycle and not is_cocycle(theory, theta):
        raise InputError("the given cochain is not a cocycle", "not_a_cocycle")
    cols = colorings if colorings is not None else (
        enumerate_sb(p, alg, jobs) if kind == "SB" else enumerate_lb(p, alg, jobs)
    )
    phi: Counter = Counter()
    H: Counter = Counter()
    pres = homology(theory, p.degree, homology_coeff) if with_homology else None
    for c in cols:
        W = chain_W(p, c)
        phi[W.evaluate(theta)] += 1
        if pres is not None:
            try:
                H[pres.coordinates(W)] += 1
            except InputError as exc:
                raise InputError(
                    "W is not a cycle (open surface code?); rerun without homology", exc.code
                ) from exc
    return InvariantResult(
        count=len(cols),
        phi=dict(sorted(phi.items())),
        H=dict(sorted(H.items())),
        modulus=theta.modulus,
        theory=kind,
        presentation=pres.to_json() if pres is not None else None,
    )


def W_correspondence(ds, sb: ShadowBiquandle, c: SBColoring) -> bool:
    """Whether ``W^LB(T(C)) == μ(W^SB(C))`` for one coloring."""
    p = _problem(ds)
    return chain_W(p, sb_to_lb(p, sb, c)) == mu_chain(sb, chain_W(p, c)).project()
