"""Transition probability of a two-level system coupled to an XY spin-chain bath.

Three cross-validating backends: the exact free-fermion solution of the
isotropic chain (``jw_exact``), dense exact diagonalization (``ed``), and the
thermodynamic-limit mean-field solver (``meanfield``).
"""

from spinbath._core import (  # noqa: F401
    __version__,
    commutator_norm,
    critical_field_estimate,
    dptr_dh,
    eigh,
    evolve_reduced,
    ground_state_occupation,
    h_s,
    h_total,
    h_xy,
    m_z,
    magnetization,
    occupation_weights,
    partial_trace_bath,
    pauli_on_site,
    rabi_population,
    run_preset,
    single_particle_energies,
    thermal_state,
    transition_probability,
)

__all__ = [
    "__version__",
    "commutator_norm",
    "critical_field_estimate",
    "dptr_dh",
    "eigh",
    "evolve_reduced",
    "ground_state_occupation",
    "h_s",
    "h_total",
    "h_xy",
    "m_z",
    "magnetization",
    "occupation_weights",
    "partial_trace_bath",
    "pauli_on_site",
    "rabi_population",
    "run_preset",
    "single_particle_energies",
    "thermal_state",
    "transition_probability",
]
