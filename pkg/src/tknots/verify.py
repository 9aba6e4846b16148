"""Executable property battery over the built-in structures.

Each item returns ``True`` or ``False``; exceptions count as failures and are
reported with their message.  :func:`run_battery` is what ``tknots verify``
prints.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Iterable

import numpy as np

from . import algebra as alg
from .chains import ChainTheory, chain_map_holds, eta, homology, mu, mu_chain
from .cochains import CochainTable
from .cocycles import mochizuki_2cocycle, mochizuki_3cocycle, transport_mu, verify_family
from .diagrams import T, chain_W, enumerate_lb_colorings, enumerate_sb_colorings, invariants
from .errors import InputError, TknotsError
from .io import load
from .surfaces import sphere_code, two_triple_point_code
from .tribracket import check_tribracket, corresponding_tribracket

__all__ = ["CheckResult", "builtin_shadows", "data_path", "load_builtin", "compare_pipelines", "run_battery"]


def data_path(name: str):
    """Path of a bundled JSON file, e.g. ``data_path("trefoil")``."""
    fname = name if name.endswith(".json") else name + ".json"
    return resources.files("tknots").joinpath("data").joinpath(fname)


def load_builtin(name: str):
    p = data_path(name)
    if not p.is_file():
        raise InputError(f"no bundled structure named {name!r}", "file_not_found")
    return load(str(p))


def builtin_shadows() -> dict[str, alg.ShadowBiquandle]:
    """Named built-in shadow biquandles used across the battery."""
    return {
        "dihedral(3)": alg.dihedral(3),
        "dihedral(4)": alg.dihedral(4),
        "dihedral(5)": alg.dihedral(5),
        "dihedral(7)": alg.dihedral(7),
        "alexander(5,t-2)": alg.alexander(5, [-2, 1]),
        "alexander(5,t-3)": alg.alexander(5, [-3, 1]),
        "alexander(2,t^2+t+1)": alg.alexander(2, [1, 1, 1]),
        "alexander_biquandle(7,2)": alg.alexander_biquandle(7, 2),
    }


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail, "seconds": round(self.seconds, 3)}


def compare_pipelines(structure, sb: alg.ShadowBiquandle, theta, jobs: int = 1) -> dict:
    """Run SB and LB pipelines independently and compare them.

    ``theta`` is an SB cocycle; the LB side uses its transport ``θ∘η``.
    """
    t = corresponding_tribracket(sb)
    S = enumerate_sb_colorings(structure, sb, jobs)
    L = enumerate_lb_colorings(structure, t, jobs)
    images = sorted(T(sb, c, structure) for c in S)
    w_ok = all(
        chain_W(structure, T(sb, c, structure)) == mu_chain(sb, chain_W(structure, c)).project() for c in S
    )
    deg = structure.problem.degree
    cyc_theory = ChainTheory.shadow(sb, cap=deg)
    closed = all(not cyc_theory.boundary_chain(chain_W(structure, c)).terms for c in S)
    a = invariants(structure, sb, theta, with_homology=False, colorings=S)
    b = invariants(structure, t, transport_mu(theta, sb), with_homology=False, colorings=L)
    return {
        "colorings_sb": len(S),
        "colorings_lb": len(L),
        "count_equal": len(S) == len(L),
        "T_bijective": len(set(images)) == len(images) and images == sorted(L),
        "W_correspondence": w_ok,
        "W_closed": closed,
        "phi_sb": [[v, k] for v, k in sorted(a.phi.items())],
        "phi_lb": [[v, k] for v, k in sorted(b.phi.items())],
        "phi_equal": a.phi == b.phi,
    }


# -- individual items -------------------------------------------------------
def _axioms() -> bool:
    shadows = builtin_shadows()
    ok = all(alg.check_biquandle(s.biquandle.under, s.biquandle.over).passed for s in shadows.values())
    ok &= all(alg.check_bset(s.biquandle, s.bset.action).passed for s in shadows.values())
    bad = alg.dihedral(3).biquandle.under.copy()
    bad[0, 0] = 1
    rep = alg.check_biquandle(bad, alg.dihedral(3).biquandle.over)
    return ok and any(name.startswith("bijectivity") for name, _ in rep.violations)


def _inverse_identities() -> bool:
    return all(alg.shadow_identity_violations(s).passed for s in builtin_shadows().values())


def _searrow_identities() -> bool:
    return all(
        alg.searrow_identity_violations(s).passed
        for s in builtin_shadows().values()
        if s.strongly_connected and s.X <= 7
    )


def _latin_quandles() -> bool:
    """Latin quandles acting on themselves are strongly connected B-sets."""
    out = True
    for s in builtin_shadows().values():
        bq = s.biquandle
        if not bq.is_quandle:
            continue
        latin = all(len(set(bq.under[a].tolist())) == bq.size for a in range(bq.size))
        if latin:
            out &= alg.check_bset(bq, bq.under).passed and s.strongly_connected
    return out


def _tribrackets() -> bool:
    ok = True
    for s in builtin_shadows().values():
        if s.strongly_connected:
            ok &= check_tribracket(corresponding_tribracket(s).table).passed
    x, y, z = np.meshgrid(np.arange(5), np.arange(5), np.arange(5), indexing="ij")
    for n in (3, 5):
        i = np.arange(n)
        ok &= np.array_equal(
            corresponding_tribracket(alg.dihedral(n)).table,
            (i[:, None, None] - i[None, :, None] + i[None, None, :]) % n,
        )
    ok &= np.array_equal(corresponding_tribracket(alg.alexander(5, [-2, 1])).table, (-2 * x + 2 * y + z) % 5)
    return bool(ok)


def _mu_eta() -> bool:
    ok = True
    for sb in (alg.dihedral(3), alg.alexander(5, [-2, 1]), alg.alexander_biquandle(7, 2)):
        S, L = ChainTheory.shadow(sb), ChainTheory.local(corresponding_tribracket(sb))
        for n in range(1, 5):
            ok &= chain_map_holds(S, L, n)
        for n in (1, 2, 3):
            gens = S.generators(n)
            ok &= all(eta(sb, mu(sb, g)) == g for g in gens)
            ok &= all(mu(sb, eta(sb, g)) == g for g in L.generators(n))
        for th in (S, L):
            for n in range(2, 5):
                ok &= (th.matrix(n - 1) @ th.matrix(n)).count_nonzero() == 0
    return bool(ok)


def _homology_agrees(sizes: Iterable[int]) -> bool:
    ok = True
    for n in sizes:
        sb = alg.dihedral(n)
        S, L = ChainTheory.shadow(sb), ChainTheory.local(corresponding_tribracket(sb))
        for k in (1, 2, 3):
            for coeff in (None, n):
                ok &= homology(S, k, coeff).same_group(homology(L, k, coeff))
    return bool(ok)


def _mochizuki() -> bool:
    return all(all(verify_family(n).values()) for n in (3, 5, 7))


def _link_pipelines() -> bool:
    cases = [("trefoil", alg.dihedral(3), 3), ("figure8", alg.dihedral(5), 5), ("figure8", alg.dihedral(3), 3),
             ("trefoil", alg.alexander_biquandle(7, 2), None)]
    ok = True
    for name, sb, n in cases:
        ds = load_builtin(name)
        theta = mochizuki_2cocycle(n) if n else CochainTable("SB", 2, 2, {}, "zero")
        r = compare_pipelines(ds, sb, theta)
        ok &= all(r[k] for k in ("count_equal", "T_bijective", "W_correspondence", "W_closed", "phi_equal"))
    return bool(ok)


def _surface_pipelines() -> bool:
    sb, theta = alg.dihedral(3), mochizuki_3cocycle(3)
    ok = True
    for sc in (sphere_code(), two_triple_point_code()):
        r = compare_pipelines(sc, sb, theta)
        ok &= all(r[k] for k in ("count_equal", "T_bijective", "W_correspondence", "phi_equal"))
    return bool(ok)


def _invariance() -> bool:
    sb, theta = alg.dihedral(3), mochizuki_2cocycle(3)
    ref = None
    for name in ("trefoil", "trefoil-r1a", "trefoil-r1b", "trefoil-r2a", "trefoil-r2b", "trefoil-r2c", "trefoil-r2d"):
        res = invariants(load_builtin(name), sb, theta, with_homology=False)
        key = (res.count, res.phi)
        ref = key if ref is None else ref
        if key != ref:
            return False
    return True


def battery(quick: bool = False) -> list[tuple[str, Callable[[], bool]]]:
    return [
        ("biquandle and B-set axioms, mutation rejected", _axioms),
        ("inverse-action identities", _inverse_identities),
        ("searrow identities", _searrow_identities),
        ("latin quandles are strongly connected B-sets", _latin_quandles),
        ("corresponding tribrackets (H1, H2, closed forms)", _tribrackets),
        ("mu/eta chain maps and boundary squares to zero", _mu_eta),
        ("SB and LB homology agree", lambda: _homology_agrees((3,) if quick else (3, 5))),
        ("Mochizuki family identities", _mochizuki),
        ("link pipelines agree (SB vs LB)", _link_pipelines),
        ("surface pipelines agree (SB vs LB)", _surface_pipelines),
        ("trefoil diagrams related by R1/R2 moves", _invariance),
    ]


def run_battery(quick: bool = False) -> list[CheckResult]:
    out = []
    for name, fn in battery(quick):
        t0 = time.perf_counter()
        try:
            ok, detail = bool(fn()), ""
        except (TknotsError, ArithmeticError, AssertionError) as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, ok, detail, time.perf_counter() - t0))
    return out
