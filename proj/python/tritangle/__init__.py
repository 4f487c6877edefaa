"""Three-qubit entanglement measures, canonical forms and teleportation fidelity."""

from ._core import (
    ContractError,
    InputError,
    NumericalError,
    f_closed_form,
    fef_pure,
    fidelity_from_fef,
    from_canonical,
    haar_random,
    mc_average_fidelity,
    measures,
    named_state,
    optimize_measurement,
    pair_concurrence,
    partial_tangle,
    partial_tangle_closed_form,
    random_canonical,
    split_fidelity,
    three_tangle,
    to_canonical,
)

__all__ = [
    "ContractError",
    "InputError",
    "NumericalError",
    "f_closed_form",
    "fef_pure",
    "fidelity_from_fef",
    "from_canonical",
    "haar_random",
    "mc_average_fidelity",
    "measures",
    "named_state",
    "optimize_measurement",
    "pair_concurrence",
    "partial_tangle",
    "partial_tangle_closed_form",
    "random_canonical",
    "split_fidelity",
    "three_tangle",
    "to_canonical",
]
