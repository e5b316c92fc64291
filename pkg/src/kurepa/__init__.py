"""Left factorials, derangement residues and Kurepa determinants."""

from .arith import FactoredInteger, Residue, factorize, is_prime, sieve_primes
from .determinants import (
    kurepa_det_exact,
    kurepa_det_mod,
    kurepa_det_mod_composite,
    kurepa_det_mod_via_derangement,
)
from .errors import (
    CheckpointError,
    DomainError,
    InconsistencyError,
    KurepaError,
    NonCoprimeModuliError,
    NotInvertibleError,
    ResourceLimitError,
)
from .scanner import ScanConfig, ScanRecord, run_scan
from .sequences import bell_mod, left_factorial, subfactorial, subfactorial_mod, subfactorial_mod_fast

__version__ = "0.1.0"

__all__ = [
    "CheckpointError",
    "DomainError",
    "FactoredInteger",
    "InconsistencyError",
    "KurepaError",
    "NonCoprimeModuliError",
    "NotInvertibleError",
    "Residue",
    "ResourceLimitError",
    "ScanConfig",
    "ScanRecord",
    "bell_mod",
    "factorize",
    "is_prime",
    "kurepa_det_exact",
    "kurepa_det_mod",
    "kurepa_det_mod_composite",
    "kurepa_det_mod_via_derangement",
    "left_factorial",
    "run_scan",
    "sieve_primes",
    "subfactorial",
    "subfactorial_mod",
    "subfactorial_mod_fast",
]
