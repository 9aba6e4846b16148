"""Mochizuki's dihedral cocycles and their transported local-biquandle forms.

All ``/n`` divisions below are exact integer divisions of a numerator computed
over Z; divisibility is asserted rather than assumed.
"""
from __future__ import annotations

from itertools import product

from .algebra import ShadowBiquandle, dihedral
from .chains import ChainTheory, is_cocycle
from .cochains import CochainTable, is_degenerate
from .errors import InputError
from .tribracket import HorizontalTribracket, dihedral_tribracket, solve_third

__all__ = [
    "CochainTable",
    "theta_value",
    "mochizuki_2cocycle",
    "mochizuki_3cocycle",
    "transport_mu",
    "transport_eta",
    "closed_form_LB",
    "closed_form_N",
    "closed_lb_value",
    "closed_n_value",
    "bracket_angle",
    "parse_cocycle_spec",
    "compose_N_from_LB",
    "verify_family",
]


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n**0.5) + 1))


def _require_odd_prime(n: int) -> None:
    if not (isinstance(n, int) and n > 2 and _is_prime(n)):
        raise InputError(f"n must be an odd prime, got {n}", "invalid_parameter")


def _exact_div(num: int, n: int) -> int:
    q, r = divmod(num, n)
    if r:
        raise ArithmeticError(f"numerator {num} not divisible by {n}")
    return q


def theta_value(n: int, x: int, y: int, z: int) -> int:
    """``(x - y) ((2z - y)^n + y^n - 2 z^n) / n`` reduced mod n."""
    return ((x - y) * _exact_div((2 * z - y) ** n + y**n - 2 * z**n, n)) % n


def closed_lb_value(n: int, degree: int, gen) -> int:
    if degree == 2:
        x, y, z = gen
        num = (x - y + 2 * z) ** n + (x + y) ** n - 2 * (x + z) ** n
        return ((x - y) * _exact_div(num, n)) % n
    if degree == 3:
        x, y, z, w = gen
        num = (x - z + 2 * w) ** n + (x + z) ** n - 2 * (x + w) ** n
        return ((y - z) * _exact_div(num, n)) % n
    raise InputError("closed LB form exists for degrees 2 and 3", "invalid_parameter")


def closed_n_value(n: int, degree: int, gen) -> int:
    if degree == 1:
        x, y, z = gen
        num = (-x + y + 2 * z) ** n + (x + y) ** n - 2 * (y + z) ** n
        return ((x - y) * _exact_div(num, n)) % n
    if degree == 2:
        x, y, z, w = gen
        num = (-y + z + 2 * w) ** n + (y + z) ** n - 2 * (z + w) ** n
        return ((x - z) * _exact_div(num, n)) % n
    raise InputError("closed N form exists for degrees 1 and 2", "invalid_parameter")


def _gens(size: int, degree: int, theory: str):
    for g in product(range(size), repeat=degree + 1):
        if theory == "N" or not is_degenerate(g):
            yield g


def mochizuki_2cocycle(n: int) -> CochainTable:
    """SB 2-cochain ``θ_n(x, y, z)`` over ``dihedral(n)``."""
    _require_odd_prime(n)
    return CochainTable.from_function(
        "SB", 2, n, _gens(n, 2, "SB"), lambda x, y, z: theta_value(n, x, y, z), f"mochizuki:{n}"
    )


def mochizuki_3cocycle(n: int) -> CochainTable:
    """SB 3-cochain ``(x, y, z, w) -> θ_n(y, z, w)`` over ``dihedral(n)``."""
    _require_odd_prime(n)
    return CochainTable.from_function(
        "SB", 3, n, _gens(n, 3, "SB"), lambda x, y, z, w: theta_value(n, y, z, w), f"mochizuki3:{n}"
    )


def transport_mu(theta: CochainTable, sb: ShadowBiquandle) -> CochainTable:
    """LB cochain ``θ'`` with ``θ' ∘ μ = θ``, i.e. ``θ'(x, y_1..) = θ(x, x↘y_1, ..)``."""
    if theta.theory != "SB":
        raise InputError("transport_mu expects an SB cochain", "theory_mismatch")
    sw = sb.require_strong()
    values = {}
    for g in _gens(sb.X, theta.degree, "LB"):
        v = theta((g[0],) + tuple(int(sw[g[0], y]) for y in g[1:]))
        if v:
            values[g] = v
    return CochainTable("LB", theta.degree, theta.modulus, values, f"transport({theta.name})")


def transport_eta(theta: CochainTable, sb: ShadowBiquandle) -> CochainTable:
    """SB cochain ``θ ∘ μ`` from an LB cochain ``θ``."""
    if theta.theory != "LB":
        raise InputError("transport_eta expects an LB cochain", "theory_mismatch")
    sb.require_strong()
    act = sb.bset.action
    values = {}
    for g in _gens(sb.X, theta.degree, "SB"):
        v = theta((g[0],) + tuple(int(act[g[0], a]) for a in g[1:]))
        if v:
            values[g] = v
    return CochainTable("SB", theta.degree, theta.modulus, values, f"pullback({theta.name})")


def closed_form_LB(n: int, degree: int) -> CochainTable:
    _require_odd_prime(n)
    if degree not in (2, 3):
        raise InputError("closed LB form exists for degrees 2 and 3", "invalid_parameter")
    return CochainTable.from_function(
        "LB", degree, n, _gens(n, degree, "LB"), lambda *g: closed_lb_value(n, degree, g), f"mochizuki-lb{degree}:{n}"
    )


def closed_form_N(n: int, degree: int) -> CochainTable:
    _require_odd_prime(n)
    if degree not in (1, 2):
        raise InputError("closed N form exists for degrees 1 and 2", "invalid_parameter")
    return CochainTable.from_function(
        "N", degree, n, _gens(n, degree + 1, "N"), lambda *g: closed_n_value(n, degree, g), f"mochizuki-n{degree}:{n}"
    )


def bracket_angle(t: HorizontalTribracket, x: int, y: int, z: int) -> int:
    """``⟨x, y, z⟩``: the third-slot inverse of the tribracket."""
    return solve_third(t, x, y, z)


def compose_N_from_LB(theta_lb: CochainTable, t: HorizontalTribracket) -> CochainTable:
    """N-cochain obtained by feeding ``⟨ ⟩``-compositions into an LB cochain.

    Degree 2 LB gives ``(x,y,z) -> θ((x,y),(x,⟨x,y,z⟩))``; degree 3 LB gives
    ``(x,y,z,w) -> θ((x,y),(x,⟨x,y,z⟩),(x,⟨x,y,⟨y,z,w⟩⟩))``.
    """
    k = t.size
    if theta_lb.degree == 2:
        def fn(x, y, z):
            return theta_lb((x, y, bracket_angle(t, x, y, z)))
        deg = 1
    elif theta_lb.degree == 3:
        def fn(x, y, z, w):
            return theta_lb((x, y, bracket_angle(t, x, y, z), bracket_angle(t, x, y, bracket_angle(t, y, z, w))))
        deg = 2
    else:
        raise InputError("composition defined for LB degrees 2 and 3", "invalid_parameter")
    return CochainTable.from_function("N", deg, theta_lb.modulus, _gens(k, deg + 1, "N"), fn, f"compose({theta_lb.name})")


def parse_cocycle_spec(spec: str, kind: str = "SB", degree: int = 2) -> CochainTable:
    """Parse inline specifiers such as ``mochizuki:3``.

    ``kind``/``degree`` choose among the SB Mochizuki cocycles (degree 2 or 3)
    and the closed LB forms.
    """
    name, _, arg = spec.partition(":")
    if name not in ("mochizuki", "zero") or not arg.isdigit():
        raise InputError(f"unrecognised cocycle specifier {spec!r}", "invalid_cocycle_spec")
    n = int(arg)
    if name == "zero":
        return CochainTable(kind, degree, n, {}, f"zero:{n}")
    if kind == "SB":
        return mochizuki_2cocycle(n) if degree == 2 else mochizuki_3cocycle(n)
    if kind == "LB":
        return closed_form_LB(n, degree)
    raise InputError(f"no inline cocycle for theory {kind}", "invalid_cocycle_spec")


def default_shadow(n: int) -> ShadowBiquandle:
    """The shadow biquandle the Mochizuki family lives on."""
    return dihedral(n)


def default_tribracket(n: int) -> HorizontalTribracket:
    return dihedral_tribracket(n)


def verify_family(n: int) -> dict[str, bool]:
    """Run the family's identities for one odd prime ``n``; returns named booleans."""
    sb = dihedral(n)
    t = dihedral_tribracket(n)
    S, L = ChainTheory.shadow(sb), ChainTheory.local(t)

    th2, th3 = mochizuki_2cocycle(n), mochizuki_3cocycle(n)
    tr2, tr3 = transport_mu(th2, sb), transport_mu(th3, sb)
    lb2, lb3 = closed_form_LB(n, 2), closed_form_LB(n, 3)
    n1, n2 = closed_form_N(n, 1), closed_form_N(n, 2)
    out = {
        "theta2 cocycle": is_cocycle(S, th2),
        "theta3 cocycle": is_cocycle(S, th3),
        "lb2 cocycle": is_cocycle(L, lb2),
        "lb3 cocycle": is_cocycle(L, lb3),
        "lb2 = 4 transport": lb2.values == tr2.scaled(4).values,
        "lb3 = 4 transport": lb3.values == tr3.scaled(4).values,
        "N1 = composition": n1.values == compose_N_from_LB(lb2, t).values,
        "N2 = composition": n2.values == compose_N_from_LB(lb3, t).values,
    }
    return out
