"""Scenario files: INI-style key/value text describing one parameter set.

Schema (all frequencies quoted as nu = omega/2pi):

    [modes]           nu_k, nu_r, nu_0 in GHz
    [dissipation]     kappa_k, kappa_r, kappa_p, kappa_q in MHz
    [coupling]        g_p, g_q in MHz
    [drive]           epsilon in MHz, phase in rad
    [bath]            temperature in K

A reference scenario with the canonical ferromagnetic-comb parameter set
(80 GHz whispering-gallery mode, 8 GHz skyrmion mode, resonant drive sized
for G_p = G_q = 2pi x 15 MHz) ships with the package.
"""

from __future__ import annotations

import configparser
import hashlib
import io
from importlib import resources

from .errors import ScenarioError
from .model import PhysicalParams

_SCHEMA = {
    "modes": ("nu_k", "nu_r", "nu_0"),
    "dissipation": ("kappa_k", "kappa_r", "kappa_p", "kappa_q"),
    "coupling": ("g_p", "g_q"),
    "drive": ("epsilon", "phase"),
    "bath": ("temperature",),
}


def _parse(cp: configparser.ConfigParser) -> PhysicalParams:
    raw = {}
    for section, keys in _SCHEMA.items():
        if not cp.has_section(section):
            raise ScenarioError(f"missing scenario section [{section}]")
        for key in keys:
            if not cp.has_option(section, key):
                raise ScenarioError(f"missing key '{key}' in [{section}]")
            try:
                raw[key] = cp.getfloat(section, key)
            except ValueError as exc:
                raise ScenarioError(f"non-numeric value for {section}.{key}") from exc
    try:
        return PhysicalParams.from_frequencies(
            nu_k_GHz=raw["nu_k"], nu_r_GHz=raw["nu_r"], nu_0_GHz=raw["nu_0"],
            kappa_k_MHz=raw["kappa_k"], kappa_r_MHz=raw["kappa_r"],
            kappa_p_MHz=raw["kappa_p"], kappa_q_MHz=raw["kappa_q"],
            g_p_MHz=raw["g_p"], g_q_MHz=raw["g_q"],
            epsilon_MHz=raw["epsilon"], phase_rad=raw["phase"],
            temperature_K=raw["temperature"],
        )
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc


def load_scenario(path) -> PhysicalParams:
    """Read a scenario file; raises ScenarioError on schema violations."""
    cp = configparser.ConfigParser()
    read = cp.read(path)
    if not read:
        raise ScenarioError(f"cannot read scenario file {path}")
    return _parse(cp)


def scenario_text(params: PhysicalParams) -> str:
    """Render params back to the file format (canonical form, repr floats)."""
    f = params.to_frequencies()
    values = {
        "modes": {"nu_k": f["nu_k_GHz"], "nu_r": f["nu_r_GHz"], "nu_0": f["nu_0_GHz"]},
        "dissipation": {k: f[f"{k}_MHz"] for k in
                        ("kappa_k", "kappa_r", "kappa_p", "kappa_q")},
        "coupling": {"g_p": f["g_p_MHz"], "g_q": f["g_q_MHz"]},
        "drive": {"epsilon": f["epsilon_MHz"], "phase": f["phase_rad"]},
        "bath": {"temperature": f["temperature_K"]},
    }
    out = io.StringIO()
    for section, kv in values.items():
        out.write(f"[{section}]\n")
        for key, val in kv.items():
            out.write(f"{key} = {val!r}\n")
        out.write("\n")
    return out.getvalue()


def save_scenario(params: PhysicalParams, path) -> None:
    with open(path, "w") as fh:
        fh.write(scenario_text(params))


def scenario_hash(params: PhysicalParams) -> str:
    """Short content hash identifying a scenario in output provenance."""
    return hashlib.sha256(scenario_text(params).encode()).hexdigest()[:12]


def default_scenario() -> PhysicalParams:
    """The bundled reference scenario."""
    ref = resources.files("combtangle").joinpath("data/default_scenario.ini")
    cp = configparser.ConfigParser()
    cp.read_string(ref.read_text())
    return _parse(cp)
