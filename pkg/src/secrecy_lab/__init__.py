"""Average secrecy capacity of double-Rayleigh V2V links under co-channel interference."""

from .capacity import CapacityResult, QuadratureConfig, average_capacity, average_secrecy_capacity
from .channel import SystemParams
from .mgf import MgfMethod, MgfValue, mgf_eav_link, mgf_interference, mgf_main_link, mgf_psi
from .montecarlo import McEstimate, estimate_capacities, estimate_mgf
from .specfun import ConvergenceError

__all__ = [
    "CapacityResult",
    "ConvergenceError",
    "McEstimate",
    "MgfMethod",
    "MgfValue",
    "QuadratureConfig",
    "SystemParams",
    "average_capacity",
    "average_secrecy_capacity",
    "estimate_capacities",
    "estimate_mgf",
    "mgf_eav_link",
    "mgf_interference",
    "mgf_main_link",
    "mgf_psi",
]
