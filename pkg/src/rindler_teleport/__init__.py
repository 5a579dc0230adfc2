"""Teleportation of a dual-rail qubit to a uniformly accelerated receiver.

The subpackages build truncated Fock states, map accelerations to Bogoliubov
squeeze parameters, run the protocol against a Rindler observer, and measure
the entropy the receiver gains from the classical message.
"""

__version__ = "0.1.0"

from .fock import (  # noqa: E402
    DensityOperator,
    ModeLabel,
    PSDClampWarning,
    StateVector,
    Statistics,
    TruncationConfig,
    partial_trace,
    von_neumann_entropy,
)
from .relativity import AccelerationParams, SqueezeParameter, squeeze, unruh_temperature  # noqa: E402
from .teleport import (  # noqa: E402
    BellOutcome,
    LogicalQubit,
    fidelity_closed_form,
    rob_state,
    teleport_fidelity,
    teleport_fidelity_report,
)
from .entropy import five_state_model, info_gain, info_gain_closed_form  # noqa: E402
from .pdc import SqueezeMatrix, pdc_vacuum  # noqa: E402
from .estimators import InformationGain, SqueezeFromAcceleration, TeleportationFidelity  # noqa: E402

__all__ = [
    "__version__",
    "Statistics",
    "ModeLabel",
    "TruncationConfig",
    "StateVector",
    "DensityOperator",
    "PSDClampWarning",
    "partial_trace",
    "von_neumann_entropy",
    "AccelerationParams",
    "SqueezeParameter",
    "squeeze",
    "unruh_temperature",
    "LogicalQubit",
    "BellOutcome",
    "rob_state",
    "teleport_fidelity",
    "teleport_fidelity_report",
    "fidelity_closed_form",
    "info_gain",
    "info_gain_closed_form",
    "five_state_model",
    "SqueezeMatrix",
    "pdc_vacuum",
    "SqueezeFromAcceleration",
    "TeleportationFidelity",
    "InformationGain",
]
