"""Numerical laboratory for a conformally deformed quaternionic-contact metric family.

The heavy lifting lives in the compiled extension ``qcclab._qcclab``; this
package re-exports its operations.
"""

from ._qcclab import (  # noqa: F401
    audit_names,
    bochner_norm,
    conformal_factor,
    d_eta,
    eta,
    group_inv,
    group_mul,
    horizontal_lift,
    metric,
    omega,
    omega_descended,
    quat_conj,
    quat_mul,
    ricci_norm,
    run_audits_json,
    scalar_curvature,
    so3_from_unit,
    tau,
)

__all__ = [
    "audit_names",
    "bochner_norm",
    "conformal_factor",
    "d_eta",
    "eta",
    "group_inv",
    "group_mul",
    "horizontal_lift",
    "metric",
    "omega",
    "omega_descended",
    "quat_conj",
    "quat_mul",
    "ricci_norm",
    "run_audits_json",
    "scalar_curvature",
    "so3_from_unit",
    "tau",
]
