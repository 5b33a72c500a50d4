"""Measurement scheduling for partial tomography of qubit and fermionic RDMs."""

from tomosched.algebra import (
    DimensionError,
    MajoranaMonomial,
    PauliString,
    jw_map,
    majorana_commutes,
    majorana_multiply,
    measurable_monomial,
    parity_monomial,
    pauli_commutes,
    pauli_multiply,
)

__version__ = "0.1.0"

__all__ = [
    "DimensionError",
    "MajoranaMonomial",
    "PauliString",
    "jw_map",
    "majorana_commutes",
    "majorana_multiply",
    "measurable_monomial",
    "parity_monomial",
    "pauli_commutes",
    "pauli_multiply",
    "__version__",
]
