"""Finite biquandles, B-sets and shadow biquandles as validated lookup tables.

Elements are dense indices ``0..m-1``.  Every constructor validates the axioms
exhaustively and precomputes the inverse tables, so downstream code can look
things up without re-checking.

Notation in names: ``under`` is the lower operation ``a *_ b``, ``over`` is the
upper one, ``act`` is the B-set action ``x * a`` and ``searrow`` is the inverse
of ``a -> x * a`` for a strongly connected B-set.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import product
from typing import Sequence

import numpy as np

from .errors import AxiomError, ContractError, InputError

__all__ = [
    "AxiomReport",
    "FiniteBiquandle",
    "FiniteBSet",
    "ShadowBiquandle",
    "check_biquandle",
    "check_bset",
    "build_strong_connectivity",
    "solve_S",
    "dihedral",
    "alexander",
    "alexander_biquandle",
    "AlexanderRing",
    "shadow_identity_violations",
    "searrow_identity_violations",
]


@dataclass
class AxiomReport:
    violations: list[tuple[str, tuple]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, name: str, witness) -> None:
        self.violations.append((name, tuple(int(w) for w in witness)))

    def merge(self, other: "AxiomReport") -> "AxiomReport":
        self.violations.extend(other.violations)
        return self

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "violations": [{"axiom": n, "witness": list(w)} for n, w in self.violations],
        }


def _as_table(rows, shape: tuple[int, ...] | None, name: str) -> np.ndarray:
    """Convert nested lists to an int64 array, rejecting ragged input."""
    try:
        arr = np.array(rows, dtype=object)
    except ValueError as exc:  # numpy refuses some ragged inputs outright
        raise InputError(f"{name}: ragged table", "malformed_table") from exc
    if arr.dtype == object and any(isinstance(v, (list, tuple, np.ndarray)) for v in arr.flat):
        raise InputError(f"{name}: ragged table", "malformed_table")
    if shape is not None and arr.shape != shape:
        raise InputError(f"{name}: expected shape {shape}, got {arr.shape}", "malformed_table")
    try:
        out = arr.astype(np.int64)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name}: non-integer entry", "malformed_table") from exc
    if np.any(out != arr):
        raise InputError(f"{name}: non-integer entry", "malformed_table")
    return out


def _check_range(t: np.ndarray, size: int, name: str) -> None:
    if t.size and (t.min() < 0 or t.max() >= size):
        bad = tuple(int(i) for i in np.argwhere((t < 0) | (t >= size))[0])
        raise InputError(f"{name}: entry out of range at {bad}", "entry_out_of_range")


def _column_inverse(table: np.ndarray) -> np.ndarray:
    """inv[c, b] = the a with table[a, b] == c (columns assumed bijective)."""
    rows, cols = table.shape
    inv = np.empty((rows, cols), dtype=np.int64)
    for b in range(cols):
        inv[table[:, b], b] = np.arange(rows)
    return inv


def _square_tables(under, over) -> tuple[np.ndarray, np.ndarray]:
    u = _as_table(under, None, "under")
    if u.ndim != 2 or u.shape[0] != u.shape[1] or u.shape[0] == 0:
        raise InputError("under: table must be square and non-empty", "malformed_table")
    m = u.shape[0]
    o = _as_table(over, (m, m), "over")
    _check_range(u, m, "under")
    _check_range(o, m, "over")
    return u, o


def check_biquandle(under, over) -> AxiomReport:
    """Exhaustively check the biquandle axioms, collecting every violation."""
    u, o = _square_tables(under, over)
    m = u.shape[0]
    rep = AxiomReport()
    for a in range(m):
        if u[a, a] != o[a, a]:
            rep.add("diagonal", (a,))
    for b in range(m):
        if len(set(u[:, b].tolist())) != m:
            rep.add("bijectivity of ∗̲b", (b,))
        if len(set(o[:, b].tolist())) != m:
            rep.add("bijectivity of ∗̄b", (b,))
    # S(a, b) = (b over a, a under b)
    images = o.T * m + u  # images[a, b] encodes S(a, b)
    if len(np.unique(images)) != m * m:
        seen: dict[int, tuple[int, int]] = {}
        for a, b in product(range(m), repeat=2):
            key = int(images[a, b])
            if key in seen:
                rep.add("bijectivity of S", seen[key] + (a, b))
            else:
                seen[key] = (a, b)
    a, b, c = np.meshgrid(np.arange(m), np.arange(m), np.arange(m), indexing="ij")
    checks = (
        ("exchange under-under", u[u[a, b], u[c, b]], u[u[a, c], o[b, c]]),
        ("exchange under-over", o[u[a, b], u[c, b]], u[o[a, c], o[b, c]]),
        ("exchange over-over", o[o[a, b], o[c, b]], o[o[a, c], u[b, c]]),
    )
    for name, lhs, rhs in checks:
        for w in np.argwhere(lhs != rhs):
            rep.add(name, w)
    return rep


def check_bset(bq: "FiniteBiquandle", action) -> AxiomReport:
    """Check per-column bijectivity and the compatibility identity of an action."""
    act = _as_table(action, None, "action")
    if act.ndim != 2 or act.shape[0] == 0:
        raise InputError("action: expected a non-empty 2-d table", "malformed_table")
    if act.shape[1] != bq.size:
        raise InputError(
            f"action has {act.shape[1]} columns, biquandle has {bq.size} elements", "size_mismatch"
        )
    k = act.shape[0]
    _check_range(act, k, "action")
    rep = AxiomReport()
    for a in range(bq.size):
        if len(set(act[:, a].tolist())) != k:
            rep.add("bijectivity of ∗a", (a,))
    x, a, b = np.meshgrid(np.arange(k), np.arange(bq.size), np.arange(bq.size), indexing="ij")
    lhs = act[act[x, a], bq.over[b, a]]
    rhs = act[act[x, b], bq.under[a, b]]
    for w in np.argwhere(lhs != rhs):
        rep.add("B-set compatibility", w)
    return rep


class FiniteBiquandle:
    """A validated biquandle on ``0..size-1``.

    Attributes ``under``, ``over`` and their column inverses ``under_inv``,
    ``over_inv`` are read-only int64 arrays.  ``S`` and ``S_inv`` are stored
    as ``(m, m, 2)`` arrays.
    """

    def __init__(self, under, over, labels: Sequence | None = None):
        report = check_biquandle(under, over)
        if not report.passed:
            raise AxiomError("biquandle axioms fail", details=report)
        self.under, self.over = _square_tables(under, over)
        self.size = int(self.under.shape[0])
        self.labels = list(labels) if labels is not None else None
        self.under_inv = _column_inverse(self.under)
        self.over_inv = _column_inverse(self.over)
        m = self.size
        self.S = np.stack([self.over.T, self.under], axis=-1)
        self.S_inv = np.empty_like(self.S)
        for a, b in product(range(m), repeat=2):
            c, d = self.S[a, b]
            self.S_inv[c, d] = (a, b)
        for t in (self.under, self.over, self.under_inv, self.over_inv, self.S, self.S_inv):
            t.setflags(write=False)

    @property
    def is_quandle(self) -> bool:
        return bool(np.all(self.over == np.arange(self.size)[:, None]))

    def __repr__(self) -> str:
        return f"FiniteBiquandle(size={self.size})"


class FiniteBSet:
    """A validated B-set over a given biquandle.

    ``searrow`` is ``None`` unless the set is strongly connected.
    """

    def __init__(self, biquandle: FiniteBiquandle, action, labels: Sequence | None = None):
        report = check_bset(biquandle, action)
        if not report.passed:
            raise AxiomError("B-set axioms fail", details=report)
        self.biquandle = biquandle
        self.action = _as_table(action, None, "action")
        self.size = int(self.action.shape[0])
        self.labels = list(labels) if labels is not None else None
        self.action_inv = _column_inverse(self.action)
        self.action.setflags(write=False)
        self.action_inv.setflags(write=False)
        self.strongly_connected = False
        self.searrow: np.ndarray | None = None

    def __repr__(self) -> str:
        return f"FiniteBSet(size={self.size}, strongly_connected={self.strongly_connected})"


@dataclass(frozen=True)
class ShadowBiquandle:
    biquandle: FiniteBiquandle
    bset: FiniteBSet
    name: str = ""

    def __post_init__(self):
        if self.bset.biquandle is not self.biquandle:
            raise InputError("B-set was validated against a different biquandle", "size_mismatch")

    # short aliases used throughout the enumeration code
    @property
    def B(self) -> int:
        return self.biquandle.size

    @property
    def X(self) -> int:
        return self.bset.size

    @property
    def strongly_connected(self) -> bool:
        return self.bset.strongly_connected

    def require_strong(self) -> np.ndarray:
        if not self.bset.strongly_connected:
            raise ContractError("shadow biquandle is not strongly connected", "not_strongly_connected")
        return self.bset.searrow

    @classmethod
    def from_tables(cls, under, over, action, name: str = "") -> "ShadowBiquandle":
        bq = FiniteBiquandle(under, over)
        return build_strong_connectivity(cls(bq, FiniteBSet(bq, action), name))


def build_strong_connectivity(sb: ShadowBiquandle) -> ShadowBiquandle:
    """Return ``sb`` with the strong-connectivity flag and searrow table filled in."""
    act = sb.bset.action
    k, m = act.shape
    ok = k == m and all(len(set(act[x].tolist())) == m for x in range(k))
    new = FiniteBSet.__new__(FiniteBSet)
    new.__dict__.update(sb.bset.__dict__)
    new.strongly_connected = ok
    new.searrow = None
    if ok:
        sw = np.empty((k, k), dtype=np.int64)
        for x in range(k):
            sw[x, act[x]] = np.arange(m)
        sw.setflags(write=False)
        new.searrow = sw
    return replace(sb, bset=new)


def solve_S(bq: FiniteBiquandle, c: int, d: int) -> tuple[int, int]:
    """The unique ``(a, b)`` with ``b over a == c`` and ``a under b == d``."""
    a, b = bq.S_inv[c, d]
    return int(a), int(b)


def shadow_identity_violations(sb: ShadowBiquandle) -> AxiomReport:
    """Exhaustive check of the three inverse-action identities of a shadow biquandle."""
    bq, X = sb.biquandle, sb.bset
    u, o, ui, oi = bq.under, bq.over, bq.under_inv, bq.over_inv
    act, inv = X.action, X.action_inv
    x, a, b = np.meshgrid(np.arange(X.size), np.arange(bq.size), np.arange(bq.size), indexing="ij")
    rep = AxiomReport()
    pairs = (
        ("inverse identity 1", inv[inv[x, u[a, b]], b], inv[inv[x, o[b, a]], a]),
        ("inverse identity 2", act[inv[x, a], oi[b, a]], inv[act[x, b], u[a, oi[b, a]]]),
        ("inverse identity 3", act[inv[x, b], ui[a, b]], inv[act[x, a], o[b, ui[a, b]]]),
    )
    for name, lhs, rhs in pairs:
        for w in np.argwhere(lhs != rhs):
            rep.add(name, w)
    return rep


def searrow_identity_violations(sb: ShadowBiquandle) -> AxiomReport:
    """Exhaustive check of the four searrow identities (strongly connected only)."""
    sw = sb.require_strong()
    act, inv = sb.bset.action, sb.bset.action_inv
    k, m = act.shape
    rep = AxiomReport()
    x, y = np.meshgrid(np.arange(k), np.arange(k), indexing="ij")
    for w in np.argwhere(act[x, sw[x, y]] != y):
        rep.add("x * (x↘y) = y", w)
    for w in np.argwhere(inv[y, sw[x, y]] != x):
        rep.add("y *⁻¹ (x↘y) = x", w)
    y2, a = np.meshgrid(np.arange(k), np.arange(m), indexing="ij")
    for w in np.argwhere(sw[inv[y2, a], y2] != a):
        rep.add("(y *⁻¹ a)↘y = a", w)
    for w in np.argwhere(sw[y2, act[y2, a]] != a):
        rep.add("x↘(x * a) = a", w)
    return rep


def dihedral(n: int) -> ShadowBiquandle:
    """Dihedral quandle on Z_n with X = Z_n acting by the quandle operation."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InputError("dihedral: n must be a positive integer", "invalid_parameter")
    a = np.arange(n)
    under = (2 * a[None, :] - a[:, None]) % n
    over = np.repeat(a[:, None], n, axis=1)
    bq = FiniteBiquandle(under, over)
    return build_strong_connectivity(ShadowBiquandle(bq, FiniteBSet(bq, under), f"dihedral({n})"))


class AlexanderRing:
    """The finite ring Z_n[t]/(p) with elements encoded by base-n coefficient index.

    ``p`` is listed constant term first.  Its leading coefficient must be a
    unit mod ``n`` (it is normalised away) and its constant term must be a
    unit so that ``t`` is invertible.
    """

    def __init__(self, n: int, p: Sequence[int]):
        if n < 1:
            raise InputError("alexander: n must be positive", "invalid_parameter")
        coeffs = [int(c) % n for c in p]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            raise InputError("alexander: modulus polynomial must have degree >= 1", "invalid_parameter")
        try:
            lead_inv = pow(coeffs[-1], -1, n) if n > 1 else 0
        except ValueError as exc:
            raise InputError("alexander: leading coefficient is not a unit", "invalid_parameter") from exc
        if n > 1:
            try:
                pow(coeffs[0], -1, n)
            except ValueError as exc:
                raise InputError("alexander: constant term is not a unit", "invalid_parameter") from exc
        self.n = n
        self.p = [(c * lead_inv) % n for c in coeffs]
        self.degree = len(coeffs) - 1
        self.size = n**self.degree

    def decode(self, idx: int) -> list[int]:
        out = []
        for _ in range(self.degree):
            idx, r = divmod(idx, self.n)
            out.append(r)
        return out

    def encode(self, coeffs: Sequence[int]) -> int:
        idx = 0
        for c in reversed(list(coeffs)):
            idx = idx * self.n + int(c) % self.n
        return idx

    def mul(self, f: Sequence[int], g: Sequence[int]) -> list[int]:
        d, n = self.degree, self.n
        prod = [0] * (2 * d)
        for i, fi in enumerate(f):
            if fi:
                for j, gj in enumerate(g):
                    prod[i + j] += fi * gj
        # reduce by the monic modulus from the top down
        for k in range(2 * d - 1, d - 1, -1):
            c = prod[k] % n
            if c:
                for i in range(d + 1):
                    prod[k - d + i] -= c * self.p[i]
        return [c % n for c in prod[:d]]

    def add(self, f, g):
        return [(a + b) % self.n for a, b in zip(f, g)]

    def constant(self, c: int) -> list[int]:
        return [c % self.n] + [0] * (self.degree - 1)

    @property
    def t(self) -> list[int]:
        if self.degree == 1:
            return [(-self.p[0]) % self.n]
        return [0, 1] + [0] * (self.degree - 2)

    def is_unit(self, f) -> bool:
        images = {self.encode(self.mul(f, self.decode(i))) for i in range(self.size)}
        return len(images) == self.size

    def label(self, idx: int) -> str:
        terms = []
        for k, c in enumerate(self.decode(idx)):
            if c:
                terms.append(str(c) if k == 0 else f"{c if c != 1 else ''}t{'' if k == 1 else '^' + str(k)}")
        return "+".join(terms) if terms else "0"


def alexander(n: int, p: Sequence[int]) -> ShadowBiquandle:
    """Alexander quandle ``a *_ b = t a + (1 - t) b`` on Z_n[t]/(p), X = the ring."""
    ring = AlexanderRing(n, p)
    size = ring.size
    t = ring.t
    one_minus_t = ring.add(ring.constant(1), [(-c) % n for c in t])
    ta = [ring.encode(ring.mul(t, ring.decode(a))) for a in range(size)]
    sb_ = [ring.encode(ring.mul(one_minus_t, ring.decode(b))) for b in range(size)]
    under = np.empty((size, size), dtype=np.int64)
    for a in range(size):
        fa = ring.decode(ta[a])
        for b in range(size):
            under[a, b] = ring.encode(ring.add(fa, ring.decode(sb_[b])))
    over = np.repeat(np.arange(size)[:, None], size, axis=1)
    labels = [ring.label(i) for i in range(size)]
    bq = FiniteBiquandle(under, over, labels)
    out = build_strong_connectivity(
        ShadowBiquandle(bq, FiniteBSet(bq, under, labels), f"alexander({n},{list(p)})")
    )
    # strong connectivity coincides with 1 - t being a unit; keep both in sync
    assert out.strongly_connected == ring.is_unit(one_minus_t)
    return out


def alexander_biquandle(n: int, s: int) -> ShadowBiquandle:
    """Affine biquandle on Z_n with a genuine over-operation.

    ``a *_ b = -a + (1 + s) b``, ``a *^ b = s a`` and ``x * a = a - x``.  This
    is the affine family ``t a + (1 - s t) b`` at ``t = -1``, the only value
    for which an affine action ``x * a = t x + a`` is compatible.  It is a
    quandle only when ``s = 1``.
    """
    if n < 1:
        raise InputError("alexander_biquandle: n must be positive", "invalid_parameter")
    if n > 1:
        try:
            pow(s, -1, n)
        except ValueError as exc:
            raise InputError("alexander_biquandle: s must be a unit mod n", "invalid_parameter") from exc
    a = np.arange(n)
    under = (-a[:, None] + (1 + s) * a[None, :]) % n
    over = np.repeat((s * a % n)[:, None], n, axis=1)
    act = (a[None, :] - a[:, None]) % n
    out = ShadowBiquandle.from_tables(under, over, act, name=f"alexander_biquandle({n},{s})")
    return out
