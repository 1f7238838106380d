"""Config parsing and validation."""

import pytest

from poromorph.config import (
    ParseError,
    RunConfig,
    build_config,
    load_config,
    parse_config_text,
)
from poromorph.params import ModelParams, ValidationError


def test_empty_text_gives_baseline():
    cfg = build_config(parse_config_text(""))
    assert cfg.params == ModelParams()
    assert cfg.mesh_n == 10
    assert cfg.n_steps == 1
    assert cfg.domain_mode == "fixed"
    assert cfg.output_formats == ("csv",)
    assert cfg.beta_list is None
    assert cfg.scenario == "bodyforce"


def test_parse_overrides_and_comments():
    text = """
    # fine-grid low-permeability setup
    kappa = 1e-6
    mesh_n = 20       # trailing comment
    beta = 6.25e-4

    lambda = 2.0
    n_steps = 3
    output_formats = csv, vtk
    beta_list = 0, 1e-5, 1e-4
    """
    cfg = build_config(parse_config_text(text))
    assert cfg.params.kappa == 1e-6
    assert cfg.params.beta == 6.25e-4
    assert cfg.params.lam == 2.0
    assert cfg.mesh_n == 20
    assert cfg.n_steps == 3
    assert cfg.output_formats == ("csv", "vtk")
    assert cfg.beta_list == (0.0, 1e-5, 1e-4)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError, match=r"<config>:2"):
        parse_config_text("kappa = 1e-2\nwhat is this line")
    with pytest.raises(ParseError, match=r"unknown key 'viscosity'"):
        parse_config_text("viscosity = 3")
    with pytest.raises(ParseError, match=r"bad value"):
        parse_config_text("kappa = sticky")
    with pytest.raises(ParseError, match=r"empty value"):
        parse_config_text("kappa =")
    with pytest.raises(ParseError, match=r"myfile.cfg:1"):
        parse_config_text("???", origin="myfile.cfg")


def test_physical_validation_routes_through_params():
    with pytest.raises(ValidationError):
        build_config(parse_config_text("kappa = -1"))
    with pytest.raises(ValidationError):
        build_config(parse_config_text("dt = 0"))
    with pytest.raises(ValidationError):
        build_config(parse_config_text("rho = 0"))


def test_run_settings_validation():
    with pytest.raises(ValidationError):
        build_config({"mesh_n": 1})
    with pytest.raises(ValidationError):
        build_config({"n_steps": 0})
    with pytest.raises(ValidationError):
        build_config({"domain_mode": "wavy"})
    with pytest.raises(ValidationError):
        build_config({"output_formats": ("hdf5",)})
    with pytest.raises(ValidationError):
        build_config({"output_formats": ()})
    with pytest.raises(ValidationError):
        build_config({"scenario": "mystery"})
    with pytest.raises(ValidationError):
        build_config({"beta_list": (1e-3, 0.0)})
    with pytest.raises(ValidationError):
        build_config({"beta_list": (-1e-3,)})
    with pytest.raises(ValidationError):
        build_config({"unknown_attr": 3})


def test_beta_list_allows_ties_and_zero():
    cfg = build_config({"beta_list": (0.0, 0.0, 1e-4)})
    assert cfg.beta_list == (0.0, 0.0, 1e-4)


def test_load_config_roundtrip(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("kappa = 1e-6\nmesh_n = 20\nscenario = quiescent\n")
    cfg = load_config(path)
    assert isinstance(cfg, RunConfig)
    assert cfg.params.kappa == 1e-6
    assert cfg.mesh_n == 20
    assert cfg.scenario == "quiescent"
    # parse errors from a file name the file
    bad = tmp_path / "bad.cfg"
    bad.write_text("nope = 1\n")
    with pytest.raises(ParseError, match=r"bad\.cfg:1"):
        load_config(bad)
