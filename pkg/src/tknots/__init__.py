"""Shadow and local biquandles: axioms, tribrackets, (co)homology and cocycle invariants.

The most used names are re-exported here; submodules hold the rest.
"""
from .algebra import (
    AxiomReport,
    FiniteBiquandle,
    FiniteBSet,
    ShadowBiquandle,
    alexander,
    alexander_biquandle,
    check_biquandle,
    check_bset,
    dihedral,
)
from .chains import ChainTheory, FormalChain, cocycle_basis, homology, is_coboundary, is_cocycle
from .cochains import CochainTable
from .cocycles import (
    closed_form_LB,
    closed_form_N,
    mochizuki_2cocycle,
    mochizuki_3cocycle,
    parse_cocycle_spec,
    transport_eta,
    transport_mu,
)
from .diagrams import (
    PDCode,
    T,
    T_inv,
    build_structure,
    chain_W,
    enumerate_lb_colorings,
    enumerate_sb_colorings,
    enumerate_surface_colorings,
    invariants,
)
from .errors import AxiomError, ContractError, InputError, TknotsError
from .surfaces import SurfaceCode, plane_arrangement, sphere_code, two_triple_point_code
from .tribracket import (
    HorizontalTribracket,
    LocalPair,
    check_tribracket,
    corresponding_tribracket,
    dihedral_tribracket,
    local_over,
    local_under,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
