"""Horizontal tribrackets and the local biquandle operations they induce."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import AlexanderRing, AxiomReport, ShadowBiquandle, _as_table, _check_range
from .errors import AxiomError, ContractError, InputError

__all__ = [
    "HorizontalTribracket",
    "LocalPair",
    "check_tribracket",
    "corresponding_tribracket",
    "local_under",
    "local_over",
    "solve_third",
    "dihedral_tribracket",
    "alexander_tribracket",
]


def _cube(table) -> np.ndarray:
    t = _as_table(table, None, "tribracket")
    if t.ndim != 3 or len(set(t.shape)) != 1 or t.shape[0] == 0:
        raise InputError("tribracket: table must be a non-empty k×k×k cube", "malformed_table")
    _check_range(t, t.shape[0], "tribracket")
    return t


def check_tribracket(table) -> AxiomReport:
    """Check the three latin conditions and the quadruple identity exhaustively."""
    t = _cube(table)
    k = t.shape[0]
    rep = AxiomReport()
    # H1: each slot is a permutation when the other two are fixed
    for axis, name, label in ((2, "H1-(i)", "x,y"), (1, "H1-(ii)", "x,z"), (0, "H1-(iii)", "y,z")):
        srt = np.sort(t, axis=axis)
        ok = np.all(srt == np.arange(k).reshape([-1 if i == axis else 1 for i in range(3)]), axis=axis)
        for w in np.argwhere(~ok):
            rep.add(name, w)
    x, y, z, w = np.meshgrid(*(np.arange(k),) * 4, indexing="ij")
    xyz, xyw, xzw = t[x, y, z], t[x, y, w], t[x, z, w]
    first = t[y, xyz, xyw]
    second = t[z, xyz, xzw]
    third = t[w, xyw, xzw]
    for wit in np.argwhere((first != second) | (second != third)):
        rep.add("H2", wit)
    return rep


class HorizontalTribracket:
    """A validated tribracket on ``0..size-1``.

    ``inv_first[w, y, z]``, ``inv_second[x, w, z]`` and ``inv_third[x, y, w]``
    solve for the missing slot.
    """

    def __init__(self, table, labels: Sequence | None = None, name: str = ""):
        rep = check_tribracket(table)
        if not rep.passed:
            raise AxiomError("tribracket axioms fail", details=rep)
        t = _cube(table)
        k = t.shape[0]
        self.table, self.size, self.name = t, k, name
        self.labels = list(labels) if labels is not None else None
        i = np.arange(k)
        x, y, z = np.meshgrid(i, i, i, indexing="ij")
        self.inv_first = np.empty_like(t)
        self.inv_second = np.empty_like(t)
        self.inv_third = np.empty_like(t)
        self.inv_first[t, y, z] = x
        self.inv_second[x, t, z] = y
        self.inv_third[x, y, t] = z
        for a in (self.table, self.inv_first, self.inv_second, self.inv_third):
            a.setflags(write=False)

    def __call__(self, x: int, y: int, z: int) -> int:
        return int(self.table[x, y, z])

    def __repr__(self) -> str:
        return f"HorizontalTribracket(size={self.size})"


@dataclass(frozen=True, order=True)
class LocalPair:
    base: int
    fiber: int


def _same_base(p: LocalPair, q: LocalPair) -> int:
    if p.base != q.base:
        raise ContractError(f"local operation needs equal bases, got {p.base} and {q.base}", "base_mismatch")
    return p.base


def local_under(t: HorizontalTribracket, p: LocalPair, q: LocalPair) -> LocalPair:
    x = _same_base(p, q)
    return LocalPair(q.fiber, int(t.table[x, p.fiber, q.fiber]))


def local_over(t: HorizontalTribracket, p: LocalPair, q: LocalPair) -> LocalPair:
    x = _same_base(p, q)
    return LocalPair(q.fiber, int(t.table[x, q.fiber, p.fiber]))


def solve_third(t: HorizontalTribracket, x: int, y: int, w: int) -> int:
    """The unique ``z`` with ``[x, y, z] == w``."""
    return int(t.inv_third[x, y, w])


def corresponding_tribracket(sb: ShadowBiquandle) -> HorizontalTribracket:
    """Tribracket ``[x,y,z] = y * ((x↘z) over (x↘y))`` of a strongly connected shadow biquandle.

    The alternative expression ``z * ((x↘y) under (x↘z))`` is evaluated too and
    must agree on every triple.
    """
    sw = sb.require_strong()
    act, u, o = sb.bset.action, sb.biquandle.under, sb.biquandle.over
    k = sb.X
    x, y, z = np.meshgrid(np.arange(k), np.arange(k), np.arange(k), indexing="ij")
    first = act[y, o[sw[x, z], sw[x, y]]]
    second = act[z, u[sw[x, y], sw[x, z]]]
    bad = np.argwhere(first != second)
    if len(bad):
        raise AxiomError(
            "the two tribracket expressions disagree",
            "tribracket_mismatch",
            details=[tuple(int(v) for v in w) for w in bad],
        )
    return HorizontalTribracket(first, sb.bset.labels, name=f"tribracket of {sb.name}".strip())


def dihedral_tribracket(n: int) -> HorizontalTribracket:
    """``[x,y,z] = x - y + z`` on Z_n."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InputError("dihedral_tribracket: n must be a positive integer", "invalid_parameter")
    i = np.arange(n)
    table = (i[:, None, None] - i[None, :, None] + i[None, None, :]) % n
    return HorizontalTribracket(table, name=f"dihedral_tribracket({n})")


def alexander_tribracket(n: int, p: Sequence[int]) -> HorizontalTribracket:
    """``[x,y,z] = -t x + t y + z`` on Z_n[t]/(p)."""
    ring = AlexanderRing(n, p)
    size = ring.size
    tm = [ring.encode(ring.mul(ring.t, ring.decode(a))) for a in range(size)]
    table = np.empty((size, size, size), dtype=np.int64)
    for x in range(size):
        neg_tx = [(-c) % n for c in ring.decode(tm[x])]
        for y in range(size):
            part = ring.add(neg_tx, ring.decode(tm[y]))
            for z in range(size):
                table[x, y, z] = ring.encode(ring.add(part, ring.decode(z)))
    labels = [ring.label(i) for i in range(size)]
    return HorizontalTribracket(table, labels, name=f"alexander_tribracket({n},{list(p)})")
