"""Run configuration: `key = value` text files plus validation.

The grammar is deliberately tiny: one assignment per line, `#` starts a
comment, keys from a fixed registry, unknown keys rejected with the line
number.  An empty file yields the baseline setup of the pressure
experiments (unit square, n = 10, permeability 1e-2, oscillating body
force).
"""

from dataclasses import dataclass, fields
from typing import Optional

from .params import ModelParams, ValidationError
from .scenarios import get_scenario


class ParseError(ValueError):
    """Malformed config text; the message carries file and line."""


def _parse_float(text):
    return float(text)


def _parse_int(text):
    value = int(text, 10)
    return value


def _parse_str(text):
    return text


def _parse_float_list(text):
    items = [p for chunk in text.split(",") for p in chunk.split()]
    if not items:
        raise ValueError("empty list")
    return tuple(float(p) for p in items)


def _parse_str_list(text):
    items = [p.strip() for p in text.split(",") if p.strip()]
    if not items:
        raise ValueError("empty list")
    return tuple(items)


# config key -> (attribute name, value parser)
KEY_REGISTRY = {
    "rho": ("rho", _parse_float),
    "mu": ("mu", _parse_float),
    "lambda": ("lam", _parse_float),
    "mu1": ("mu1", _parse_float),
    "mu2": ("mu2", _parse_float),
    "kappa": ("kappa", _parse_float),
    "alpha": ("alpha", _parse_float),
    "beta": ("beta", _parse_float),
    "dt": ("dt", _parse_float),
    "p0": ("p0", _parse_float),
    "mesh_n": ("mesh_n", _parse_int),
    "n_steps": ("n_steps", _parse_int),
    "domain_mode": ("domain_mode", _parse_str),
    "output_dir": ("output_dir", _parse_str),
    "output_formats": ("output_formats", _parse_str_list),
    "beta_list": ("beta_list", _parse_float_list),
    "scenario": ("scenario", _parse_str),
}

_PARAM_ATTRS = {f.name for f in fields(ModelParams)}

RUN_DEFAULTS = {
    "mesh_n": 10,
    "n_steps": 1,
    "domain_mode": "fixed",
    "output_dir": ".",
    "output_formats": ("csv",),
    "beta_list": None,
    "scenario": "bodyforce",
}


@dataclass(frozen=True)
class RunConfig:
    params: ModelParams
    mesh_n: int
    n_steps: int
    domain_mode: str
    output_dir: str
    output_formats: tuple
    beta_list: Optional[tuple]
    scenario: str


def parse_config_text(text, origin="<config>"):
    """Parse config text to an attribute -> value dict (not yet validated)."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not sep or not key:
            raise ParseError(
                f"{origin}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        if key not in KEY_REGISTRY:
            raise ParseError(f"{origin}:{lineno}: unknown key {key!r}")
        attr, parser = KEY_REGISTRY[key]
        if not value:
            raise ParseError(f"{origin}:{lineno}: empty value for {key!r}")
        try:
            values[attr] = parser(value)
        except ValueError as exc:
            raise ParseError(
                f"{origin}:{lineno}: bad value for {key!r}: {exc}") from exc
    return values


def build_config(values):
    """Validated RunConfig from an attribute dict; unknown attrs rejected."""
    known = _PARAM_ATTRS | set(RUN_DEFAULTS)
    for attr in values:
        if attr not in known:
            raise ValidationError(f"unknown config attribute {attr!r}")
    params = ModelParams(
        **{k: v for k, v in values.items() if k in _PARAM_ATTRS})
    run = dict(RUN_DEFAULTS)
    run.update({k: v for k, v in values.items() if k in RUN_DEFAULTS})

    if run["mesh_n"] < 2:
        raise ValidationError(f"need mesh_n >= 2, got {run['mesh_n']}")
    if run["n_steps"] < 1:
        raise ValidationError(f"need n_steps >= 1, got {run['n_steps']}")
    if run["domain_mode"] not in ("fixed", "moving"):
        raise ValidationError(
            f"domain_mode must be 'fixed' or 'moving', got {run['domain_mode']!r}")
    formats = tuple(run["output_formats"])
    bad = [f for f in formats if f not in ("csv", "vtk")]
    if bad or not formats:
        raise ValidationError(
            f"output_formats must be a nonempty subset of csv, vtk; got {formats}")
    get_scenario(run["scenario"])
    beta_list = run["beta_list"]
    if beta_list is not None:
        beta_list = tuple(float(b) for b in beta_list)
        if any(b < 0.0 for b in beta_list):
            raise ValidationError("beta_list entries must be >= 0")
        if any(b > a for a, b in zip(beta_list[1:], beta_list)):
            raise ValidationError("beta_list must be ascending")
    return RunConfig(params=params, mesh_n=run["mesh_n"],
                     n_steps=run["n_steps"], domain_mode=run["domain_mode"],
                     output_dir=run["output_dir"], output_formats=formats,
                     beta_list=beta_list, scenario=run["scenario"])


def load_config(path):
    """Read, parse, and validate a config file."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return build_config(parse_config_text(text, origin=str(path)))
