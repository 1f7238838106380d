"""Named source presets for the driver and the sweep tools."""

from dataclasses import dataclass
import math
from typing import Callable, Optional

from .params import ValidationError


@dataclass(frozen=True)
class Sources:
    """Callable bundle (f_u, f_p, g_N, f_b); None means identically zero.

    Volume terms take (x, t) with x a coordinate array; f_u and f_b return
    a velocity-component sequence, f_p and g_N a scalar.
    """

    f_u: Optional[Callable] = None
    f_p: Optional[Callable] = None
    g_N: Optional[Callable] = None
    f_b: Optional[Callable] = None


def _oscillating_body_force(x, t):
    return (0.0, math.exp(-t) * math.sin(2.0 * math.pi * t))


_PRESETS = {
    # vertical body force ramping in and oscillating, all boundary data
    # homogeneous; the baseline driving term of the pressure experiments
    "bodyforce": Sources(f_u=_oscillating_body_force),
    "quiescent": Sources(),
}


def get_scenario(name):
    """Look up a preset by name; unknown names raise ValidationError."""
    try:
        return _PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(_PRESETS))
        raise ValidationError(
            f"unknown scenario {name!r}; available: {known}") from None


def scenario_names():
    return sorted(_PRESETS)
