"""Shadow-biquandle and local-biquandle chain complexes and their (co)homology.

Generators of degree ``n`` are flat tuples ``(x, a_1, ..., a_n)``: for the
shadow (SB) theory ``x`` lies in the B-set and ``a_i`` in the biquandle, for the
local (LB) theory all entries lie in the tribracket's set and the tuple stands
for ``((x, a_1), ..., (x, a_n))``.  The degenerate subcomplex is quotiented
away by only ever indexing nondegenerate tuples.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator

import numpy as np
import scipy.sparse as sp

from .algebra import ShadowBiquandle
from .cochains import CochainTable, is_degenerate
from .errors import ContractError, InputError
from .linalg import elementary_divisors, invariant_factors, smith_form, snf_mod
from .tribracket import HorizontalTribracket

__all__ = [
    "ChainTheory",
    "FormalChain",
    "AbelianGroupPresentation",
    "boundary",
    "mu",
    "eta",
    "mu_chain",
    "eta_chain",
    "mu_permutation",
    "chain_map_holds",
    "homology",
    "cocycle_basis",
    "is_cocycle",
    "is_coboundary",
    "coboundary",
]

DEFAULT_CAP = 4


class FormalChain:
    """A finite formal sum of generators, keyed by generator tuple.

    Coefficients are Python ints, reduced mod ``modulus`` when one is set.
    Zero coefficients are never stored.
    """

    __slots__ = ("degree", "terms", "modulus")

    def __init__(self, degree: int, terms: dict | Iterable = (), modulus: int | None = None):
        self.degree = degree
        self.modulus = modulus
        self.terms: dict[tuple, int] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for g, c in items:
            self.add_term(g, c)

    def add_term(self, gen, coef: int) -> None:
        gen = tuple(int(a) for a in gen)
        if len(gen) != self.degree + 1:
            raise InputError(f"generator {gen} has wrong length for degree {self.degree}", "degree_mismatch")
        v = self.terms.get(gen, 0) + int(coef)
        if self.modulus is not None:
            v %= self.modulus
        if v:
            self.terms[gen] = v
        else:
            self.terms.pop(gen, None)

    def project(self) -> "FormalChain":
        """Drop degenerate terms (projection to the quotient complex)."""
        return FormalChain(self.degree, {g: c for g, c in self.terms.items() if not is_degenerate(g)}, self.modulus)

    def __add__(self, other: "FormalChain") -> "FormalChain":
        out = FormalChain(self.degree, self.terms, self.modulus)
        for g, c in other.terms.items():
            out.add_term(g, c)
        return out

    def __neg__(self) -> "FormalChain":
        return FormalChain(self.degree, {g: -c for g, c in self.terms.items()}, self.modulus)

    def __sub__(self, other: "FormalChain") -> "FormalChain":
        return self + (-other)

    def scale(self, c: int) -> "FormalChain":
        return FormalChain(self.degree, {g: c * v for g, v in self.terms.items()}, self.modulus)

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalChain) and self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[tuple, int]]:
        return iter(sorted(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{g}" for g, c in sorted(self.terms.items()))

    def evaluate(self, theta: CochainTable) -> int:
        return sum(c * theta(g) for g, c in self.terms.items()) % theta.modulus

    def to_json(self) -> dict:
        return {"degree": self.degree, "terms": [[list(g), c] for g, c in sorted(self.terms.items())]}


class ChainTheory:
    """The nondegenerate chain complex of a shadow biquandle or a tribracket.

    Boundary matrices ``∂_n`` (``n <= cap``) are built on demand and cached as
    ``scipy.sparse`` CSR matrices of shape ``(|C_{n-1}|, |C_n|)``; ``∂_1`` has
    zero rows since ``C_0 = 0``.
    """

    def __init__(self, kind: str, algebra, cap: int = DEFAULT_CAP):
        if kind not in ("SB", "LB"):
            raise InputError(f"unknown theory {kind!r}", "invalid_theory")
        if cap < 1:
            raise InputError("degree cap must be at least 1", "invalid_parameter")
        self.kind = kind
        self.algebra = algebra
        self.cap = cap
        if kind == "SB":
            if not isinstance(algebra, ShadowBiquandle):
                raise InputError("SB theory needs a shadow biquandle", "invalid_theory")
            self.base_size, self.word_size = algebra.X, algebra.B
        else:
            if not isinstance(algebra, HorizontalTribracket):
                raise InputError("LB theory needs a tribracket", "invalid_theory")
            self.base_size = self.word_size = algebra.size
        self._gens: dict[int, np.ndarray] = {}
        self._lookup: dict[int, np.ndarray] = {}
        self._matrices: dict[int, sp.csr_matrix] = {}
        self._homology: dict = {}

    @classmethod
    def shadow(cls, sb: ShadowBiquandle, cap: int = DEFAULT_CAP) -> "ChainTheory":
        return cls("SB", sb, cap)

    @classmethod
    def local(cls, t: HorizontalTribracket, cap: int = DEFAULT_CAP) -> "ChainTheory":
        return cls("LB", t, cap)

    def __repr__(self) -> str:
        return f"ChainTheory({self.kind}, base={self.base_size}, word={self.word_size}, cap={self.cap})"

    # -- bases -------------------------------------------------------------
    def _check_degree(self, n: int, lo: int = 1, hi: int | None = None) -> None:
        hi = self.cap if hi is None else hi
        if not lo <= n <= hi:
            raise InputError(f"degree {n} outside computed range {lo}..{hi}", "degree_out_of_range")

    def _key(self, arr: np.ndarray) -> np.ndarray:
        """Mixed-radix integer key of tuples stored row-wise."""
        key = arr[:, 0].astype(np.int64)
        for j in range(1, arr.shape[1]):
            key = key * self.word_size + arr[:, j]
        return key

    def generator_array(self, n: int) -> np.ndarray:
        """Nondegenerate generators of degree ``n`` as an ``(N, n+1)`` array, lexicographic."""
        if n == 0:
            return np.zeros((0, 1), dtype=np.int64)
        self._check_degree(n, 1, self.cap)
        if n not in self._gens:
            W = self.word_size
            words = np.array(list(product(range(W), repeat=n)), dtype=np.int64).reshape(-1, n)
            keep = np.all(words[:, 1:] != words[:, :-1], axis=1) if n > 1 else np.ones(len(words), bool)
            words = words[keep]
            xs = np.repeat(np.arange(self.base_size), len(words))
            arr = np.column_stack([xs, np.tile(words, (self.base_size, 1))])
            self._gens[n] = arr
            lookup = np.full(self.base_size * W**n, -1, dtype=np.int64)
            lookup[self._key(arr)] = np.arange(len(arr))
            self._lookup[n] = lookup
        return self._gens[n]

    def generators(self, n: int) -> list[tuple]:
        return [tuple(int(a) for a in row) for row in self.generator_array(n)]

    def rank(self, n: int) -> int:
        """Number of nondegenerate generators in degree ``n`` (0 when ``n == 0``)."""
        return len(self.generator_array(n))

    def index(self, gen) -> int:
        gen = tuple(int(a) for a in gen)
        n = len(gen) - 1
        self.generator_array(n)
        if is_degenerate(gen):
            raise InputError(f"{gen} is degenerate", "degenerate_generator")
        if not (0 <= gen[0] < self.base_size and all(0 <= a < self.word_size for a in gen[1:])):
            raise InputError(f"{gen} has entries out of range", "entry_out_of_range")
        return int(self._lookup[n][self._key(np.array([gen]))[0]])

    # -- boundary ----------------------------------------------------------
    def _faces(self, arr: np.ndarray) -> list[tuple[int, np.ndarray, np.ndarray]]:
        """For each ``i`` the two face arrays with their signs: ``(-1)^i (first - second)``."""
        n = arr.shape[1] - 1
        out = []
        x = arr[:, 0]
        for i in range(1, n + 1):
            ai = arr[:, i]
            first = np.delete(arr, i, axis=1)
            second = np.empty_like(first)
            if self.kind == "SB":
                sb = self.algebra
                u, o = sb.biquandle.under, sb.biquandle.over
                second[:, 0] = sb.bset.action[x, ai]
                for j in range(1, i):
                    second[:, j] = u[arr[:, j], ai]
                for j in range(i + 1, n + 1):
                    second[:, j - 1] = o[arr[:, j], ai]
            else:
                t = self.algebra.table
                second[:, 0] = ai
                for j in range(1, i):
                    second[:, j] = t[x, arr[:, j], ai]
                for j in range(i + 1, n + 1):
                    second[:, j - 1] = t[x, ai, arr[:, j]]
            sign = 1 if i % 2 == 0 else -1
            out.append((sign, first, second))
        return out

    def raw_boundary(self, gen) -> FormalChain:
        """Boundary in the unquotiented complex (degenerate terms kept)."""
        gen = tuple(int(a) for a in gen)
        n = len(gen) - 1
        if n == 1:
            return FormalChain(0)
        out = FormalChain(n - 1)
        for sign, first, second in self._faces(np.array([gen], dtype=np.int64)):
            out.add_term(first[0], sign)
            out.add_term(second[0], -sign)
        return out

    def boundary(self, gen) -> FormalChain:
        gen = tuple(int(a) for a in gen)
        n = len(gen) - 1
        self._check_degree(n)
        if is_degenerate(gen):
            raise InputError(f"{gen} is degenerate", "degenerate_generator")
        return self.raw_boundary(gen).project()

    def boundary_chain(self, chain: FormalChain) -> FormalChain:
        out = FormalChain(chain.degree - 1, modulus=chain.modulus)
        for g, c in chain.terms.items():
            for h, d in self.boundary(g).terms.items():
                out.add_term(h, c * d)
        return out

    def matrix(self, n: int) -> sp.csr_matrix:
        """Integer boundary matrix ``∂_n``."""
        self._check_degree(n)
        if n not in self._matrices:
            arr = self.generator_array(n)
            rows_total = self.rank(n - 1)
            if n == 1:
                M = sp.csr_matrix((0, len(arr)), dtype=np.int64)
            else:
                self.generator_array(n - 1)
                lookup = self._lookup[n - 1]
                cols_idx = np.arange(len(arr))
                R, C, V = [], [], []
                for sign, first, second in self._faces(arr):
                    for face, s in ((first, sign), (second, -sign)):
                        keep = np.all(face[:, 2:] != face[:, 1:-1], axis=1) if face.shape[1] > 2 else np.ones(len(face), bool)
                        R.append(lookup[self._key(face[keep])])
                        C.append(cols_idx[keep])
                        V.append(np.full(int(keep.sum()), s, dtype=np.int64))
                M = sp.coo_matrix(
                    (np.concatenate(V), (np.concatenate(R), np.concatenate(C))), shape=(rows_total, len(arr))
                ).tocsr()
                M.sum_duplicates()
                M.eliminate_zeros()
            self._matrices[n] = M
        return self._matrices[n]

    def chain_vector(self, chain: FormalChain) -> np.ndarray:
        vec = np.zeros(self.rank(chain.degree), dtype=object)
        for g, c in chain.terms.items():
            if not is_degenerate(g):
                vec[self.index(g)] += c
        return vec

    def vector_chain(self, n: int, vec, modulus: int | None = None) -> FormalChain:
        gens = self.generator_array(n)
        return FormalChain(n, ((gens[i], int(c)) for i, c in enumerate(vec) if c), modulus)

    def cochain_vector(self, theta: CochainTable) -> np.ndarray:
        if theta.theory != self.kind:
            raise InputError(f"{theta.theory} cochain used with {self.kind} theory", "theory_mismatch")
        self._check_degree(theta.degree)
        gens = self.generator_array(theta.degree)
        vec = np.zeros(len(gens), dtype=np.int64)
        for g, v in theta.values.items():
            if not is_degenerate(g):
                vec[self.index(g)] = v % theta.modulus
        return vec

    def vector_cochain(self, n: int, vec, modulus: int, name: str = "") -> CochainTable:
        gens = self.generator_array(n)
        vals = {tuple(int(a) for a in gens[i]): int(v) % modulus for i, v in enumerate(vec) if int(v) % modulus}
        return CochainTable(self.kind, n, modulus, vals, name)


def boundary(theory: ChainTheory, gen) -> FormalChain:
    return theory.boundary(gen)


# -- chain maps between the two theories ------------------------------------
def mu(sb: ShadowBiquandle, gen) -> tuple:
    """``(x, a_1, ..., a_n) -> (x, x*a_1, ..., x*a_n)``."""
    sb.require_strong()
    x = int(gen[0])
    act = sb.bset.action
    return (x,) + tuple(int(act[x, a]) for a in gen[1:])


def eta(sb: ShadowBiquandle, gen) -> tuple:
    """``(x, y_1, ..., y_n) -> (x, x↘y_1, ..., x↘y_n)``."""
    sw = sb.require_strong()
    x = int(gen[0])
    return (x,) + tuple(int(sw[x, y]) for y in gen[1:])


def mu_chain(sb: ShadowBiquandle, chain: FormalChain) -> FormalChain:
    return FormalChain(chain.degree, ((mu(sb, g), c) for g, c in chain.terms.items()), chain.modulus)


def eta_chain(sb: ShadowBiquandle, chain: FormalChain) -> FormalChain:
    return FormalChain(chain.degree, ((eta(sb, g), c) for g, c in chain.terms.items()), chain.modulus)


def mu_permutation(S: ChainTheory, L: ChainTheory, n: int) -> np.ndarray:
    """``perm[i]`` is the LB index of ``μ`` applied to the ``i``-th SB generator."""
    if S.kind != "SB" or L.kind != "LB":
        raise InputError("expected an SB theory and an LB theory", "theory_mismatch")
    sb = S.algebra
    sb.require_strong()
    gens = S.generator_array(n)
    images = gens.copy()
    images[:, 1:] = sb.bset.action[gens[:, :1], gens[:, 1:]]
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    L.generator_array(n)
    perm = L._lookup[n][L._key(images)]
    if len(perm) != L.rank(n) or np.any(perm < 0) or len(np.unique(perm)) != len(perm):
        raise ContractError("μ is not a bijection on nondegenerate generators", "not_a_bijection")
    return perm


def chain_map_holds(S: ChainTheory, L: ChainTheory, n: int) -> bool:
    """Whether ``μ_{n-1} ∘ ∂_n^{SB} = ∂_n^{LB} ∘ μ_n`` as integer matrices."""
    A = S.matrix(n).tocoo()
    B = L.matrix(n)
    p_hi = mu_permutation(S, L, n)
    p_lo = mu_permutation(S, L, n - 1)
    moved = sp.coo_matrix((A.data, (p_lo[A.row], p_hi[A.col])), shape=B.shape).tocsr()
    return (moved - B).count_nonzero() == 0


# -- homology ---------------------------------------------------------------
def _dense(M) -> np.ndarray:
    return np.asarray(M.toarray() if hasattr(M, "toarray") else M, dtype=object)


@dataclass
class AbelianGroupPresentation:
    """A finitely generated abelian group ``Z^free_rank + ⊕ Z/d_i``.

    ``torsion`` lists invariant factors ``d_1 | d_2 | ...`` (each at least 2).
    For coefficients in ``Z_m`` the group is finite, ``free_rank`` is 0 and
    ``modulus`` is ``m``.  ``factors`` gives the order of each coordinate slot
    (0 for a free slot) used by :meth:`coordinates`.
    """

    free_rank: int
    torsion: list[int]
    degree: int
    theory: str
    modulus: int | None = None
    factors: list[int] = field(default_factory=list)
    _coords: object = field(default=None, repr=False, compare=False)

    def coordinates(self, cycle) -> tuple[int, ...]:
        """Coordinates of the class of a cycle, relative to this presentation."""
        if self._coords is None:
            raise ContractError("presentation carries no coordinate data", "no_coordinates")
        return self._coords(cycle)

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def to_json(self) -> dict:
        return {
            "theory": self.theory,
            "degree": self.degree,
            "coefficients": "Z" if self.modulus is None else f"Z_{self.modulus}",
            "free_rank": self.free_rank,
            "torsion": list(self.torsion),
            "coordinate_orders": list(self.factors),
        }

    def same_group(self, other: "AbelianGroupPresentation") -> bool:
        return (self.free_rank, self.torsion, self.modulus) == (other.free_rank, other.torsion, other.modulus)


def _as_vector(theory: ChainTheory, n: int, cycle) -> np.ndarray:
    if isinstance(cycle, FormalChain):
        if cycle.degree != n:
            raise InputError(f"chain of degree {cycle.degree} given for degree {n}", "degree_mismatch")
        return theory.chain_vector(cycle)
    vec = np.asarray(cycle, dtype=object)
    if vec.shape != (theory.rank(n),):
        raise InputError("cycle vector has the wrong length", "size_mismatch")
    return vec


def _integral_homology(theory: ChainTheory, n: int) -> AbelianGroupPresentation:
    A, B = theory.matrix(n), theory.matrix(n + 1)
    rank_a = len(elementary_divisors(A)) if A.shape[0] else 0
    divs = elementary_divisors(B)
    free = theory.rank(n) - rank_a - len(divs)
    torsion = [d for d in divs if d > 1]
    pres = AbelianGroupPresentation(free, torsion, n, theory.kind, None, torsion + [0] * free)
    state: dict = {}

    def setup():
        # U B V = D; in U-coordinates the boundaries are d_i e_i, i < r
        res = smith_form(_dense(B), left=True, right=False, inverses=True)
        r = res["rank"]
        d = res["divisors"]
        U, Uinv = res["U"], res["Uinv"]
        Ap = _dense(A).dot(Uinv[:, r:]) if A.shape[0] else np.zeros((0, U.shape[0] - r), dtype=object)
        res2 = smith_form(Ap, left=False, right=True, inverses=True)
        s = res2["rank"]
        P = res2["Vinv"][s:, :]
        if P.shape[0] != free:
            raise AssertionError("free rank mismatch between rank count and kernel basis")
        state.update(U=U, r=r, d=d, P=P)

    def coords(cycle) -> tuple[int, ...]:
        vec = _as_vector(theory, n, cycle)
        if A.shape[0] and np.any(_dense(A).dot(vec) != 0):
            raise InputError("chain is not a cycle", "not_a_cycle")
        if not state:
            setup()
        w = state["U"].dot(vec)
        tors = [int(w[i]) % di for i, di in enumerate(state["d"]) if di > 1]
        free_part = [int(v) for v in state["P"].dot(w[state["r"]:])] if free else []
        return tuple(tors + free_part)

    pres._coords = coords
    return pres


def _mod_homology(theory: ChainTheory, n: int, m: int) -> AbelianGroupPresentation:
    A, B = _dense(theory.matrix(n)), _dense(theory.matrix(n + 1))
    size = theory.rank(n)
    if A.shape[0]:
        ra = snf_mod(A, m, right=True, inverses=True)
        V, Vinv, DA = ra["V"], ra["Vinv"], ra["D"]
    else:
        V = Vinv = np.eye(size, dtype=np.int64)
        DA = []
    s = len(DA)
    # kernel of ∂_n: (m/D_i) V e_i of order D_i for i < s, V e_i of order m after
    orders = list(DA) + [m] * (size - s)
    scale = np.array([m // d for d in DA] + [1] * (size - s), dtype=np.int64)
    Y = (Vinv.dot(np.mod(B, m).astype(np.int64)) % m) if B.shape[1] else np.zeros((size, 0), np.int64)
    if np.any(Y % scale[:, None]):
        raise AssertionError("boundary image escapes the kernel")
    R = (Y // scale[:, None]) % np.array(orders, dtype=np.int64)[:, None]
    rel = np.hstack([R, np.diag(np.array(orders, dtype=np.int64) % m)])
    rh = snf_mod(rel, m, left=True)
    U2 = rh["U"]
    slot_orders = list(rh["D"]) + [m] * (size - rh["rank"])
    keep = [i for i, o in enumerate(slot_orders) if o > 1]
    factors = [slot_orders[i] for i in keep]

    def coords(cycle) -> tuple[int, ...]:
        vec = np.mod(_as_vector(theory, n, cycle), m).astype(np.int64)
        if A.shape[0] and np.any(A.dot(vec) % m):
            raise InputError("chain is not a cycle mod m", "not_a_cycle")
        y = Vinv.dot(vec) % m
        w = (y // scale) % np.array(orders, dtype=np.int64)
        z = U2.dot(w) % m
        return tuple(int(z[i]) % slot_orders[i] for i in keep)

    return AbelianGroupPresentation(0, invariant_factors(factors), n, theory.kind, m, factors, coords)


def homology(theory: ChainTheory, n: int, coeff: int | None = None) -> AbelianGroupPresentation:
    """``H_n`` with integer coefficients (``coeff=None``) or in ``Z_coeff``."""
    theory._check_degree(n, 1, theory.cap - 1)
    if coeff is not None and coeff < 2:
        raise InputError("coefficient modulus must be at least 2", "invalid_parameter")
    key = (n, coeff)
    if key not in theory._homology:
        theory._homology[key] = _integral_homology(theory, n) if coeff is None else _mod_homology(theory, n, coeff)
    return theory._homology[key]


# -- cohomology mod m -----------------------------------------------------
def coboundary(theory: ChainTheory, theta: CochainTable) -> CochainTable:
    """``δθ = θ ∘ ∂_{n+1}``."""
    vec = theory.cochain_vector(theta)
    B = theory.matrix(theta.degree + 1)
    out = (B.T.dot(vec)) % theta.modulus
    return theory.vector_cochain(theta.degree + 1, out, theta.modulus, f"δ{theta.name}")


def is_cocycle(theory: ChainTheory, theta: CochainTable, n: int | None = None, m: int | None = None) -> bool:
    if n is not None and n != theta.degree:
        raise InputError("degree mismatch", "degree_mismatch")
    if m is not None and m != theta.modulus:
        raise InputError("modulus mismatch", "modulus_mismatch")
    theory._check_degree(theta.degree, 1, theory.cap - 1)
    return not coboundary(theory, theta).nonzero()


def cocycle_basis(theory: ChainTheory, n: int, m: int) -> list[CochainTable]:
    """Generators of the cocycle group ``Z^n`` with coefficients in ``Z_m``.

    The group need not be free; each returned table has the additive order
    recorded in its name.
    """
    if m < 2:
        raise InputError("modulus must be at least 2", "invalid_parameter")
    theory._check_degree(n, 1, theory.cap - 1)
    BT = _dense(theory.matrix(n + 1).T)
    size = theory.rank(n)
    if BT.shape[0] == 0:
        V, D = np.eye(size, dtype=np.int64), []
    else:
        res = snf_mod(BT, m, right=True)
        V, D = res["V"], res["D"]
    out = []
    for i in range(size):
        if i < len(D):
            col, order = (V[:, i] * (m // D[i])) % m, D[i]
        else:
            col, order = V[:, i] % m, m
        if order == 1:
            continue
        out.append(theory.vector_cochain(n, col, m, f"z{i} (order {order})"))
    return out


def is_coboundary(theory: ChainTheory, theta: CochainTable, n: int | None = None, m: int | None = None) -> bool:
    """Whether ``θ = ψ ∘ ∂_n`` for some ``(n-1)``-cochain ``ψ`` mod m."""
    if n is not None and n != theta.degree:
        raise InputError("degree mismatch", "degree_mismatch")
    m = theta.modulus
    target = theory.cochain_vector(theta) % m
    if theta.degree == 1:
        return not target.any()
    AT = _dense(theory.matrix(theta.degree).T)
    res = snf_mod(AT, m, left=True)
    z = res["U"].dot(target) % m
    D = res["D"]
    for i, v in enumerate(z):
        if i < len(D):
            if v % D[i]:
                return False
        elif v:
            return False
    return True
