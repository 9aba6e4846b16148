"""Exact integer and modular linear algebra.

Integer work uses Python ints (numpy ``object`` arrays) so nothing can wrap
around.  Arithmetic modulo ``m`` uses ``int64`` arrays whose entries stay in
``[0, m)``; products are bounded before they are formed.
"""
from __future__ import annotations

import heapq
from math import gcd

import numpy as np

__all__ = [
    "smith_normal_form",
    "smith_form",
    "elementary_divisors",
    "snf_mod",
    "invariant_factors",
    "int_matrix",
    "OverflowRisk",
]

_INT64_SAFE = 2**62


class OverflowRisk(ArithmeticError):
    """Raised when a fixed-width computation could exceed int64."""


def int_matrix(rows, shape=None) -> np.ndarray:
    """Return an exact integer matrix (numpy array of Python ints)."""
    a = np.array(rows, dtype=object)
    if a.size == 0:
        a = np.zeros(shape if shape is not None else (len(rows), 0), dtype=object)
    if a.ndim != 2:
        a = a.reshape(shape if shape is not None else (len(rows), -1))
    return np.vectorize(int, otypes=[object])(a) if a.size else a


def _identity(n: int, dtype=object) -> np.ndarray:
    out = np.zeros((n, n), dtype=dtype)
    for i in range(n):
        out[i, i] = 1
    return out


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


class _Eliminator:
    """Two-sided elimination on ``D`` with optional transform bookkeeping.

    Maintains ``U @ M @ V == D`` and ``Uinv = U^-1``, ``Vinv = V^-1``.  With
    ``mod`` set every array is reduced modulo it after each update.
    """

    def __init__(self, D, mod, left, right, inverses):
        self.mod = mod
        dtype = object if mod is None else np.int64
        rows, cols = D.shape
        self.D = D
        self.U = _identity(rows, dtype) if left else None
        self.V = _identity(cols, dtype) if right else None
        self.Uinv = _identity(rows, dtype) if left and inverses else None
        self.Vinv = _identity(cols, dtype) if right and inverses else None

    def _r(self, a):
        return a if self.mod is None else a % self.mod

    # row operations act on D and U from the left, on Uinv from the right
    def row_swap(self, i, j):
        if i == j:
            return
        for X in (self.D, self.U):
            if X is not None:
                X[[i, j]] = X[[j, i]]
        if self.Uinv is not None:
            self.Uinv[:, [i, j]] = self.Uinv[:, [j, i]]

    def row_scale(self, i, c, c_inv):
        for X in (self.D, self.U):
            if X is not None:
                X[i] = self._r(X[i] * c)
        if self.Uinv is not None:
            self.Uinv[:, i] = self._r(self.Uinv[:, i] * c_inv)

    def row_eliminate(self, targets, k, q):
        """rows[targets] -= q[:, None] * row k."""
        for X in (self.D, self.U):
            if X is not None:
                X[targets] = self._r(X[targets] - np.outer(q, X[k]))
        if self.Uinv is not None:
            self.Uinv[:, k] = self._r(self.Uinv[:, k] + self.Uinv[:, targets].dot(q))

    def row_mix(self, i, j, s, t, u, v):
        """(row i, row j) <- (s*ri + t*rj, u*ri + v*rj); requires s*v - t*u == 1."""
        for X in (self.D, self.U):
            if X is not None:
                ri, rj = X[i].copy(), X[j].copy()
                X[i] = self._r(s * ri + t * rj)
                X[j] = self._r(u * ri + v * rj)
        if self.Uinv is not None:
            ci, cj = self.Uinv[:, i].copy(), self.Uinv[:, j].copy()
            self.Uinv[:, i] = self._r(v * ci - u * cj)
            self.Uinv[:, j] = self._r(s * cj - t * ci)

    # column operations act on D and V from the right, on Vinv from the left
    def col_swap(self, i, j):
        if i == j:
            return
        for X in (self.D, self.V):
            if X is not None:
                X[:, [i, j]] = X[:, [j, i]]
        if self.Vinv is not None:
            self.Vinv[[i, j]] = self.Vinv[[j, i]]

    def col_eliminate(self, targets, k, q):
        """cols[targets] -= col k * q[None, :]."""
        for X in (self.D, self.V):
            if X is not None:
                X[:, targets] = self._r(X[:, targets] - np.outer(X[:, k], q))
        if self.Vinv is not None:
            self.Vinv[k] = self._r(self.Vinv[k] + q.dot(self.Vinv[targets]))

    def col_mix(self, i, j, s, t, u, v):
        """(col i, col j) <- (s*ci + t*cj, u*ci + v*cj); requires s*v - t*u == 1."""
        for X in (self.D, self.V):
            if X is not None:
                ci, cj = X[:, i].copy(), X[:, j].copy()
                X[:, i] = self._r(s * ci + t * cj)
                X[:, j] = self._r(u * ci + v * cj)
        if self.Vinv is not None:
            ri, rj = self.Vinv[i].copy(), self.Vinv[j].copy()
            self.Vinv[i] = self._r(v * ri - u * rj)
            self.Vinv[j] = self._r(s * rj - t * ri)

    def clear_pivot(self, k, g):
        """Zero row k and column k outside the pivot.  Returns False if the
        pivot had to change (caller re-normalises and retries)."""
        D = self.D
        col = D[k + 1:, k]
        nz = np.nonzero(col)[0]
        if len(nz):
            rem = col[nz] % g
            bad = np.nonzero(rem)[0]
            if len(bad):
                i = k + 1 + int(nz[bad[0]])
                a = int(D[i, k])
                h, s, t = _xgcd(g, a)
                self.row_mix(k, i, s, t, -(a // h), g // h)
                return False
            self.row_eliminate(k + 1 + nz, k, self._qvec(col[nz] // g))
        row = D[k, k + 1:]
        nz = np.nonzero(row)[0]
        if len(nz):
            rem = row[nz] % g
            bad = np.nonzero(rem)[0]
            if len(bad):
                j = k + 1 + int(nz[bad[0]])
                a = int(D[k, j])
                h, s, t = _xgcd(g, a)
                self.col_mix(k, j, s, t, -(a // h), g // h)
                return False
            self.col_eliminate(k + 1 + nz, k, self._qvec(row[nz] // g))
        return True

    def _qvec(self, q):
        return np.asarray(q, dtype=object if self.mod is None else np.int64)


def smith_form(M, *, left: bool = True, right: bool = True, inverses: bool = False) -> dict:
    """Integral Smith normal form with optional inverse transforms.

    Returns a dict with ``D`` (the diagonal matrix), ``divisors`` (its nonzero
    diagonal), ``rank`` and the requested ``U``, ``V``, ``Uinv``, ``Vinv``.
    """
    D = int_matrix(M) if not (isinstance(M, np.ndarray) and M.dtype == object) else M.copy()
    if D.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = D.shape
    E = _Eliminator(D, None, left, right, inverses)
    k = 0
    while k < min(rows, cols):
        sub = D[k:, k:]
        nz = np.argwhere(sub != 0)
        if len(nz) == 0:
            break
        absvals = np.abs(sub[nz[:, 0], nz[:, 1]]).astype(object)
        i0, j0 = nz[int(np.argmin(absvals))]
        E.row_swap(k, k + int(i0))
        E.col_swap(k, k + int(j0))
        while True:
            if D[k, k] < 0:
                E.row_scale(k, -1, -1)
            if not E.clear_pivot(k, int(D[k, k])):
                continue
            # divisibility: the pivot must divide the whole trailing block
            p = D[k, k]
            trail = D[k + 1:, k + 1:]
            bad = np.argwhere(trail % p != 0) if trail.size else []
            if len(bad) == 0:
                break
            b = k + 1 + int(bad[0][0])
            E.row_mix(k, b, 1, 1, 0, 1)
        k += 1
    out = {"D": D, "rank": k, "divisors": [int(D[i, i]) for i in range(k)]}
    for name in ("U", "V", "Uinv", "Vinv"):
        if getattr(E, name) is not None:
            out[name] = getattr(E, name)
    return out


def smith_normal_form(M, *, left: bool = True, right: bool = True):
    """Smith normal form of an integer matrix.

    Returns ``(U, D, V)`` with ``U @ M @ V == D``, ``U`` and ``V`` unimodular,
    ``D`` diagonal with nonnegative entries ``d_1 | d_2 | ...``.  When
    ``left``/``right`` is false the corresponding transform is returned as
    ``None`` (and not tracked, which is much cheaper).
    """
    res = smith_form(M, left=left, right=right)
    return res.get("U"), res["D"], res.get("V")


def _sparse_rows(M) -> list[dict[int, int]]:
    if hasattr(M, "tocsr"):
        M = M.tocsr()
        out = []
        for i in range(M.shape[0]):
            lo, hi = M.indptr[i], M.indptr[i + 1]
            out.append({int(j): int(v) for j, v in zip(M.indices[lo:hi], M.data[lo:hi]) if v})
        return out
    A = np.asarray(M)
    return [{j: int(v) for j, v in enumerate(row) if v} for row in A]


def elementary_divisors(M) -> list[int]:
    """Nonzero invariant factors of an integer matrix, ascending (1s included).

    Unit pivots are eliminated sparsely first; whatever remains is handed to
    the dense Smith form.  The length of the result is the rank over Q.
    """
    rows = [r for r in _sparse_rows(M) if r]
    cols: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for j in r:
            cols.setdefault(j, set()).add(i)
    alive = set(range(len(rows)))
    units = 0
    # lazy heap of (row length, row); shortest row with a unit entry pivots next
    heap = [(len(r), i) for i, r in enumerate(rows)]
    heapq.heapify(heap)
    while heap:
        length, i = heapq.heappop(heap)
        if i not in alive or len(rows[i]) != length:
            continue
        prow = rows[i]
        best = None
        for j, v in prow.items():
            if v in (1, -1) and (best is None or len(cols[j]) < len(cols[best])):
                best = j
        if best is None:
            continue  # re-queued if a later elimination touches this row
        j, v = best, prow[best]
        for k in list(cols[j]):
            if k == i:
                continue
            rk = rows[k]
            f = rk[j] * v
            for jj, vv in prow.items():
                nv = rk.get(jj, 0) - f * vv
                if nv:
                    if jj not in rk:
                        cols[jj].add(k)
                    rk[jj] = nv
                elif jj in rk:
                    del rk[jj]
                    cols[jj].discard(k)
            if rk:
                heapq.heappush(heap, (len(rk), k))
            else:
                alive.discard(k)
        for jj in prow:
            cols[jj].discard(i)
        alive.discard(i)
        rows[i] = {}
        units += 1
    rest = [rows[i] for i in sorted(alive) if rows[i]]
    divisors = [1] * units
    if rest:
        used = sorted({j for r in rest for j in r})
        pos = {j: n for n, j in enumerate(used)}
        dense = np.zeros((len(rest), len(used)), dtype=object)
        for n, r in enumerate(rest):
            for j, v in r.items():
                dense[n, pos[j]] = v
        _, D, _ = smith_normal_form(dense, left=False, right=False)
        divisors += [int(D[k, k]) for k in range(min(D.shape)) if D[k, k] != 0]
    return sorted(divisors)


def _unit_inverse(u: int, m: int) -> int:
    return pow(u, -1, m)


def _normalizer(a: int, m: int) -> tuple[int, int, int]:
    """Write a = u * g (mod m) with g = gcd(a, m) and u a unit; return (g, u^-1, u)."""
    g = gcd(a, m)
    step = m // g
    u = (a // g) % step if step > 1 else 1
    while gcd(u, m) != 1:
        u += step
    u %= m
    return g, _unit_inverse(u, m), u


def snf_mod(M, m: int, *, left: bool = False, right: bool = False, inverses: bool = False) -> dict:
    """Diagonalise an integer matrix over Z/m.

    Returns a dict with ``D`` (diagonal entries in pivot order, each a proper
    divisor of ``m``; not necessarily a divisibility chain), ``rank`` and the
    requested transforms ``U``, ``V`` (and ``Uinv``, ``Vinv`` when
    ``inverses``) such that ``U @ M @ V == diag(D)`` modulo ``m``.  The
    cokernel is ``Z/D[0] + ... + (Z/m)^(rows - rank)``.
    """
    if m < 2:
        raise ValueError("modulus must be at least 2")
    A = np.asarray(M, dtype=object)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = A.shape
    # bound every dot product formed during elimination
    if (m - 1) * (m - 1) * (max(rows, cols) + 2) >= _INT64_SAFE:
        raise OverflowRisk(f"modulus {m} too large for int64 elimination at this size")
    A = np.array(np.mod(A, m), dtype=np.int64).reshape(rows, cols)
    E = _Eliminator(A, m, left, right, inverses)
    diag = []
    k = 0
    while k < min(rows, cols):
        sub = A[k:, k:]
        nz = np.nonzero(sub)
        if len(nz[0]) == 0:
            break
        idx = int(np.argmin(np.gcd(sub[nz], m)))
        E.row_swap(k, k + int(nz[0][idx]))
        E.col_swap(k, k + int(nz[1][idx]))
        while True:
            g, uinv, u = _normalizer(int(A[k, k]), m)
            if uinv != 1:
                E.row_scale(k, uinv, u)
            if E.clear_pivot(k, g):
                break
        diag.append(int(A[k, k]))
        k += 1
    out = {"D": diag, "rank": len(diag)}
    for name in ("U", "V", "Uinv", "Vinv"):
        if getattr(E, name) is not None:
            out[name] = getattr(E, name)
    return out


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariant_factors(orders) -> list[int]:
    """Normalise a list of finite cyclic orders into invariant factors.

    ``[2, 3, 4]`` (C2 + C3 + C4) becomes ``[2, 12]``; factors equal to 1 are
    dropped.  The result is ascending with each entry dividing the next.
    """
    powers: dict[int, list[int]] = {}
    for d in orders:
        d = int(d)
        if d < 1:
            raise ValueError("orders must be positive")
        for p, e in _factor(d).items():
            powers.setdefault(p, []).append(p**e)
    if not powers:
        return []
    length = max(len(v) for v in powers.values())
    out = [1] * length
    for v in powers.values():
        v.sort(reverse=True)
        for i, q in enumerate(v):
            out[length - 1 - i] *= q
    return [d for d in out if d > 1]
