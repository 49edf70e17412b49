"""Central states on wreath products of a finite group with the infinite symmetric group."""

from . import characters, cmatrix, finite_group, fock_oracle, perm, psi_state, report, verify, wreath

__all__ = [
    "characters",
    "cmatrix",
    "finite_group",
    "fock_oracle",
    "perm",
    "psi_state",
    "report",
    "verify",
    "wreath",
]
