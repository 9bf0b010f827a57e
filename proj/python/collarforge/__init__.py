"""Collar extensions and quasilocal mass lower bounds.

Thin dict-based convenience layer over the native module: every *_json
operation in ``_core`` takes and returns JSON strings; the wrappers here
translate to plain dicts.
"""

import json as _json

from ._core import (
    ConvergenceError,
    InadmissibleError,
    InputError,
    ViolationError,
    area_radius,
    horizon_radius,
    penrose_bound_minimal,
    proper_length,
    quasilocal_mass,
    unit_sphere_area,
)

__all__ = [
    "ConvergenceError",
    "InadmissibleError",
    "InputError",
    "ViolationError",
    "adm",
    "area_radius",
    "bound",
    "glue",
    "hawking",
    "horizon_radius",
    "mollify",
    "penrose_bound_minimal",
    "proper_length",
    "quasilocal_mass",
    "unit_sphere_area",
    "verify_collar",
]

from . import _core as _native


def bound(boundary, mode="cmc"):
    """Mass lower bound report for boundary data (dict, single or multi component)."""
    return _json.loads(_native.bound_json(_json.dumps(boundary), mode))


def verify_collar(boundary, mode="cmc", grid_s=256, grid_x=128):
    """Build the collar extension and check its guarantees on a grid."""
    return _json.loads(
        _native.verify_collar_json(_json.dumps(boundary), mode, grid_s, grid_x)
    )


def hawking(boundary):
    """Hawking mass comparison chain for n = 3 boundary data."""
    return _json.loads(_native.hawking_json(_json.dumps(boundary)))


def glue(boundary, exterior, mode="cmc"):
    """Join the collar over the boundary data to an exterior across a corner."""
    return _json.loads(_native.glue_json(_json.dumps(boundary), _json.dumps(exterior), mode))


def mollify(boundary, exterior, delta, mode="cmc"):
    """Smooth the glued corner with half-width delta."""
    return _json.loads(
        _native.mollify_json(_json.dumps(boundary), _json.dumps(exterior), mode, delta)
    )


def adm(metric, radii):
    """ADM mass of an asymptotically flat metric spec (dict) at the given radii."""
    return _json.loads(_native.adm_json(_json.dumps(metric), list(radii)))
