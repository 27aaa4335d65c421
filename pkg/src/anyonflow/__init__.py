"""Statistics transmutation of one-dimensional hard-core anyons, numerically.

Shifting the exchange-statistics parameter of N hard-core particles on
a line multiplies state overlaps by a universal factor that is
independent of the Hamiltonian.  This package evaluates that factor and
everything attached to it: its zeros and Gaussian approximation, the
speed-limit bounds on the orthogonality shift, the exact degeneracy
combinatorics of the exchange generator, Monte Carlo verification on
explicit Slater-determinant wavefunctions, and a simulated single-qubit
interferometry readout.
"""
from ._backend import BACKEND
from .interferometry import FringeRecord, fringe_scan, ideal_probabilities, simulate_shots
from .qsl import (CumulantValue, QslReport, cumulant, cumulant_oracle, fisher_info,
                  kappa_ml, kappa_mt, kappa_perp, qsl_report, variance_g)
from .sectors import (DegeneracyRow, SectorCountLimitError, degeneracy_bruteforce,
                      degeneracy_polynomial, degeneracy_recursive, enumerate_sectors,
                      moments_exact, omega_bruteforce, sector_eigenvalue, spectrum)
from .statfactor import (TrustInterval, asymptotic_indicator, canonical_shift,
                         first_zero, gaussian_approx, gaussian_trust_interval,
                         omega_closed_form, omega_closed_form_grid,
                         omega_degeneracy_sum, omega_recursion, zero_set)
from .wavelab import (ContactError, FactorizationResult, McEstimate, OrbitalBasis,
                      anyon_amplitude, factorization_check, generator_value,
                      hcb_amplitude, mc_overlap, sector_integral_check,
                      sector_permutation, slater_amplitude)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "__version__",
    # statfactor
    "TrustInterval", "asymptotic_indicator", "canonical_shift", "first_zero",
    "gaussian_approx", "gaussian_trust_interval", "omega_closed_form",
    "omega_closed_form_grid", "omega_degeneracy_sum", "omega_recursion", "zero_set",
    # sectors
    "DegeneracyRow", "SectorCountLimitError", "degeneracy_bruteforce",
    "degeneracy_polynomial", "degeneracy_recursive", "enumerate_sectors",
    "moments_exact", "omega_bruteforce", "sector_eigenvalue", "spectrum",
    # qsl
    "CumulantValue", "QslReport", "cumulant", "cumulant_oracle", "fisher_info",
    "kappa_ml", "kappa_mt", "kappa_perp", "qsl_report", "variance_g",
    # wavelab
    "ContactError", "FactorizationResult", "McEstimate", "OrbitalBasis",
    "anyon_amplitude", "factorization_check", "generator_value", "hcb_amplitude",
    "mc_overlap", "sector_integral_check", "sector_permutation", "slater_amplitude",
    # interferometry
    "FringeRecord", "fringe_scan", "ideal_probabilities", "simulate_shots",
]
