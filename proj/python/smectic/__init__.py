"""Jump-set energies for smectic Q-tensor models."""

from ._smectic import (
    __version__,
    phi,
    probe,
    q_distance,
    q_from_angle,
    quarter_energy,
    run_cli,
    solve_quarter,
    solve_rectangle,
    zeta,
    zigzag_energy,
)

__all__ = [
    "phi",
    "probe",
    "q_distance",
    "q_from_angle",
    "quarter_energy",
    "run_cli",
    "solve_quarter",
    "solve_rectangle",
    "zeta",
    "zigzag_energy",
]
