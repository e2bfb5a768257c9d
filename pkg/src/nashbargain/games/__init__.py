from .adnb2 import (
    Adnb2Equilibrium,
    Adnb2Feasibility,
    Adnb2Instance,
    check_adnb2_feasible,
    equilibrium_violations,
    merge_goods,
    solve_adnb2,
)
from .circle import CirclePoint, angle_gap, quartic_residual, solve_circle
from .dg2 import Dg2Flows, Dg2Instance, Dg2Pair, build_dg2, extract_flows

__all__ = [
    "Adnb2Equilibrium",
    "Adnb2Feasibility",
    "Adnb2Instance",
    "check_adnb2_feasible",
    "equilibrium_violations",
    "merge_goods",
    "solve_adnb2",
    "CirclePoint",
    "angle_gap",
    "quartic_residual",
    "solve_circle",
    "Dg2Flows",
    "Dg2Instance",
    "Dg2Pair",
    "build_dg2",
    "extract_flows",
]
