"""Parameter sweeps and bundled figure-style presets.

A sweep evaluates the full pipeline (effective couplings -> reduced drift and
diffusion -> stability gate -> Lyapunov -> correlation measures) over a one-
or two-dimensional grid and assembles a plot-ready table.  Points that fail
the stability gate or sit above threshold carry empty correlation entries
plus the diagnostic flags, never silent zeros.  Identical specs produce
byte-identical output files.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .constants import MHZ
from .dynamics import build_reduced_drift, is_stable, solve_lyapunov
from .errors import CombtangleError, DomainError
from .measures import correlation_report, reduce_cm
from .model import EffectiveCouplings, PhysicalParams
from .scenario import default_scenario, scenario_hash
from .semiclassical import Regime, steady_state
from .wigner import marginal_pair

G0 = 15.0 * MHZ   # coupling unit used by all presets: G_0/2pi = 15 MHz

DEFAULT_OUTPUTS = ("E_rp", "E_rq", "E_pq", "S_pq", "S_qp", "N_p", "N_q")

KNOWN_OUTPUTS = ("E_rp", "E_rq", "E_pq", "nu_rp", "nu_rq", "nu_pq",
                 "S_rp", "S_pr", "S_rq", "S_qr", "S_pq", "S_qp",
                 "N_r", "N_p", "N_q", "xi", "G_tilde_MHz", "n_beta1", "n_beta2")

# sweepable parameters; ratio parameters expand against their anchors from
# the base point before evaluation
SWEEP_PARAMS = ("ratio_GqGp", "ratio_kqkp", "G_p_MHz", "G_q_MHz",
                "kappa_r_MHz", "kappa_p_MHz", "kappa_q_MHz", "T_K")


@dataclass(frozen=True)
class SweepAxis:
    param: str
    start: float
    stop: float
    points: int

    def __post_init__(self):
        if self.param not in SWEEP_PARAMS:
            raise DomainError(f"unknown sweep parameter {self.param!r}; "
                              f"choose from {SWEEP_PARAMS}")
        if self.points < 2:
            raise DomainError("a swept axis needs at least 2 points")
        if not (np.isfinite(self.start) and np.isfinite(self.stop)):
            raise DomainError("swept range must be finite")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class SweepSpec:
    """Base scenario plus swept axes and requested outputs."""

    params: PhysicalParams
    G_p: float
    G_q: float
    axes: tuple[SweepAxis, ...]
    outputs: tuple[str, ...] = DEFAULT_OUTPUTS
    label: str = ""

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 2:
            raise DomainError("sweeps support one or two axes")
        unknown = [o for o in self.outputs if o not in KNOWN_OUTPUTS]
        if unknown:
            raise DomainError(f"unknown outputs {unknown}; "
                              f"choose from {KNOWN_OUTPUTS}")


@dataclass(frozen=True)
class WignerJob:
    """Phase-space job: one parameter point, several quadrature pairs."""

    params: PhysicalParams
    G_p: float
    G_q: float
    pairs: tuple[tuple[str, str], ...] = (("X_p", "Y_p"), ("X_q", "Y_q"),
                                          ("X_p", "X_q"), ("Y_p", "Y_q"))
    n_points: int = 201
    extent_sigmas: float = 6.0
    label: str = ""


@dataclass(frozen=True)
class SweepResult:
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]
    provenance: dict = field(default_factory=dict)

    @property
    def n_errors(self) -> int:
        err_col = self.columns.index("error")
        return sum(1 for row in self.rows if row[err_col])

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([row[i] for row in self.rows], dtype=object)

    def numeric_column(self, name: str) -> np.ndarray:
        """Column as float array with None -> nan."""
        i = self.columns.index(name)
        return np.array([np.nan if row[i] is None else float(row[i])
                         for row in self.rows])


def _apply_override(param: str, value: float, params: PhysicalParams,
                    G_p: float, G_q: float, anchors: dict):
    if param == "ratio_GqGp":
        return params, G_p, value * anchors["G_p"]
    if param == "ratio_kqkp":
        return params.with_(kappa_q=value * anchors["kappa_p"]), G_p, G_q
    if param == "G_p_MHz":
        return params, value * MHZ, G_q
    if param == "G_q_MHz":
        return params, G_p, value * MHZ
    if param == "T_K":
        return params.with_(temperature=value), G_p, G_q
    # remaining cases are plain dissipation overrides
    return params.with_(**{param.removesuffix("_MHz"): value * MHZ}), G_p, G_q


def evaluate_point(params: PhysicalParams, G_p: float, G_q: float,
                   outputs: tuple[str, ...]) -> tuple[list, bool, str, str]:
    """One pipeline evaluation: (values, stable, regime, error).

    Gated points (above threshold or unstable) return all-null values."""
    state = steady_state(params)
    regime = state.regime.value
    if state.regime is Regime.ABOVE_THRESHOLD:
        return [None] * len(outputs), False, regime, ""
    eff = EffectiveCouplings(G_p=G_p, G_q=G_q)
    dd = build_reduced_drift(eff, params)
    if not is_stable(dd).stable:
        return [None] * len(outputs), False, regime, ""
    cm = solve_lyapunov(dd)
    flat = correlation_report(cm, eff, stable=True).to_flat_dict()
    # Bogoliubov outputs are undefined outside G_q < G_p; those stay null
    return [flat.get(name) for name in outputs], True, regime, ""


def run_sweep(spec: SweepSpec, threads: int = 1) -> SweepResult:
    """Evaluate a sweep grid; rows in row-major axis order, errors in-row."""
    anchors = {"G_p": spec.G_p, "kappa_p": spec.params.kappa_p}
    grids = [axis.values() for axis in spec.axes]
    mesh = [g.ravel() for g in np.meshgrid(*grids, indexing="ij")]
    n_points = mesh[0].size

    def one(i: int) -> tuple:
        coords = [float(m[i]) for m in mesh]
        params, G_p, G_q = spec.params, spec.G_p, spec.G_q
        try:
            for axis, value in zip(spec.axes, coords):
                params, G_p, G_q = _apply_override(axis.param, value, params,
                                                   G_p, G_q, anchors)
            values, stable, regime, err = evaluate_point(params, G_p, G_q,
                                                         spec.outputs)
        except CombtangleError as exc:
            values, stable, regime = [None] * len(spec.outputs), False, ""
            err = f"{type(exc).__name__}: {exc}"
        return tuple(coords) + tuple(values) + (stable, regime, err)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = tuple(pool.map(one, range(n_points)))
    else:
        rows = tuple(one(i) for i in range(n_points))

    columns = tuple(a.param for a in spec.axes) + spec.outputs + (
        "stable", "regime", "error")
    provenance = {
        "tool": f"combtangle {__version__}",
        "scenario": scenario_hash(spec.params),
        "label": spec.label,
        "G_p_MHz": spec.G_p / MHZ,
        "G_q_MHz": spec.G_q / MHZ,
    }
    return SweepResult(columns=columns, rows=rows, provenance=provenance)


# -- output rendering --------------------------------------------------------

def _render(value) -> str:
    if value is None or value == "":
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def to_csv(result: SweepResult) -> str:
    lines = [",".join(result.columns)]
    for row in result.rows:
        lines.append(",".join(_render(v) for v in row))
    return "\n".join(lines) + "\n"


def to_json(result: SweepResult) -> str:
    doc = {"provenance": result.provenance,
           "columns": list(result.columns),
           "rows": [list(row) for row in result.rows]}
    return json.dumps(doc, indent=2) + "\n"


def write_result(result: SweepResult, path, fmt: str = "csv") -> None:
    text = to_csv(result) if fmt == "csv" else to_json(result)
    with open(path, "w", newline="") as fh:
        fh.write(text)


# -- presets -----------------------------------------------------------------

_RATIO_AXIS = SweepAxis("ratio_GqGp", 0.0, 1.0, 101)

_PRESET_NOTES = {
    "fig2a": "entanglement vs coupling ratio at weak confluence drive",
    "fig2b": "entanglement vs coupling ratio at unit coupling",
    "fig2c": "entanglement vs coupling ratio at doubled coupling",
    "fig2d": "entanglement vs coupling ratio at strong coupling",
    "fig3a": "entanglement vs skyrmion linewidth at half ratio",
    "fig3b": "pair entanglement vs skyrmion linewidth, strong coupling",
    "fig4": "steering maps vs ratio and skyrmion linewidth",
    "fig5a": "pair entanglement and both steerings vs linewidth ratio",
    "fig5b": "effective occupations vs linewidth ratio",
    "fig6a": "temperature robustness, strong coupling",
    "fig6b": "temperature robustness, strongest coupling",
    "fig7": "phase-space marginals of the comb-teeth pair",
}

# suggested skyrmion-linewidth range where a preset leaves it open
FIG4_SUGGESTED_KAPPA_R = (1.0, 100.0, 50)


def preset_names() -> tuple[str, ...]:
    return tuple(_PRESET_NOTES)


def figure_preset(name: str, kappa_r_MHz: tuple[float, float, int] | None = None):
    """Fully populated spec for a named preset (a WignerJob for fig7).

    ``fig4`` does not fix the skyrmion-linewidth axis; pass it as
    (start_MHz, stop_MHz, points).  A reasonable choice is
    ``FIG4_SUGGESTED_KAPPA_R``.
    """
    base = default_scenario()
    if name not in _PRESET_NOTES:
        raise KeyError(f"unknown preset {name!r}; choose from {preset_names()}")

    if name.startswith("fig2"):
        mult = {"fig2a": 0.2, "fig2b": 1.0, "fig2c": 2.0, "fig2d": 10.0}[name]
        return SweepSpec(params=base, G_p=mult * G0, G_q=0.0,
                         axes=(_RATIO_AXIS,), label=name)

    if name == "fig3a":
        return SweepSpec(params=base, G_p=G0, G_q=0.5 * G0,
                         axes=(SweepAxis("kappa_r_MHz", 0.1, 20.0, 100),),
                         label=name)
    if name == "fig3b":
        return SweepSpec(params=base, G_p=10.0 * G0, G_q=8.5 * G0,
                         axes=(SweepAxis("kappa_r_MHz", 1.0, 100.0, 100),),
                         label=name)

    if name == "fig4":
        if kappa_r_MHz is None:
            raise DomainError(
                "fig4 leaves the skyrmion-linewidth axis open; pass "
                "kappa_r_MHz=(start, stop, points), e.g. "
                f"{FIG4_SUGGESTED_KAPPA_R}")
        return SweepSpec(params=base, G_p=10.0 * G0, G_q=0.0,
                         axes=(SweepAxis("ratio_GqGp", 0.0, 1.0, 51),
                               SweepAxis("kappa_r_MHz", *kappa_r_MHz)),
                         outputs=("S_pq", "S_qp", "E_pq"), label=name)

    if name in ("fig5a", "fig5b"):
        params = base.with_(kappa_r=40.0 * MHZ)
        outputs = (("E_pq", "S_pq", "S_qp") if name == "fig5a"
                   else ("N_p", "N_q"))
        return SweepSpec(params=params, G_p=10.0 * G0, G_q=8.5 * G0,
                         axes=(SweepAxis("ratio_kqkp", 1.0, 3.0, 81),),
                         outputs=outputs, label=name)

    if name == "fig6a":
        params = base.with_(kappa_r=40.0 * MHZ)
        return SweepSpec(params=params, G_p=10.0 * G0, G_q=8.5 * G0,
                         axes=(SweepAxis("T_K", 0.02, 3.5, 175),),
                         outputs=("E_pq", "S_pq", "S_qp"), label=name)
    if name == "fig6b":
        params = base.with_(kappa_r=60.0 * MHZ)
        return SweepSpec(params=params, G_p=40.0 * G0, G_q=38.0 * G0,
                         axes=(SweepAxis("T_K", 0.02, 5.5, 275),),
                         outputs=("E_pq", "S_pq", "S_qp"), label=name)

    # fig7
    params = base.with_(kappa_r=40.0 * MHZ)
    return WignerJob(params=params, G_p=10.0 * G0, G_q=8.5 * G0, label=name)


def describe_preset(name: str) -> str:
    """Canonical one-line parameter rendering of a preset."""
    spec = figure_preset(name, kappa_r_MHz=FIG4_SUGGESTED_KAPPA_R
                         if name == "fig4" else None)
    gp = spec.G_p / G0
    parts = [f"G_p = {gp:g} G_0"]
    if isinstance(spec, WignerJob):
        parts.append(f"G_q = {spec.G_q / spec.G_p:g} G_p")
        parts.append(f"kappa_r/2pi = {spec.params.kappa_r / MHZ:g} MHz")
        return "; ".join([", ".join(parts), "phase-space marginals"])
    swept = {a.param for a in spec.axes}
    if "ratio_GqGp" not in swept:
        parts.append(f"G_q = {spec.G_q / spec.G_p:g} G_p")
    if "kappa_r_MHz" not in swept:
        parts.append(f"kappa_r/2pi = {spec.params.kappa_r / MHZ:g} MHz")
    if "ratio_kqkp" in swept:
        parts.append(f"kappa_p/2pi = {spec.params.kappa_p / MHZ:g} MHz")
    sweeps = ", ".join(
        f"sweep {a.param} in [{a.start:g}, {a.stop:g}]" for a in spec.axes)
    return "; ".join([", ".join(parts), sweeps])


def run_wigner_job(job: WignerJob) -> dict:
    """Evaluate the covariance at the job's point and build all marginals."""
    eff = EffectiveCouplings(G_p=job.G_p, G_q=job.G_q)
    dd = build_reduced_drift(eff, job.params)
    cm = solve_lyapunov(dd)
    v_pq = reduce_cm(cm, ("p", "q")).matrix
    grids = {}
    for pair in job.pairs:
        grids[f"{pair[0]}_{pair[1]}"] = marginal_pair(
            v_pq, pair, n_points=job.n_points, extent_sigmas=job.extent_sigmas)
    return grids
