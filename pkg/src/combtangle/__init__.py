"""combtangle: steady-state quantum correlations of a driven
magnon-skyrmion frequency comb.

Pipeline: a physical scenario fixes the mean-field steady state and drive
threshold; below threshold the fluctuations obey a linear quadrature
Langevin equation whose stationary covariance follows from a Lyapunov
equation; entanglement, EPR steering, effective occupations, Bogoliubov
diagnostics and Wigner marginals are then read off the covariance matrix.
An independent Monte Carlo integrator validates the covariance; a CLI
drives single points, sweeps and bundled presets.
"""

__version__ = "0.1.0"

from .model import (BathOccupations, EffectiveCouplings, PhysicalParams,
                    derived_detunings, effective_couplings, thermal_occupation)
from .scenario import (default_scenario, load_scenario, save_scenario,
                       scenario_hash, scenario_text)
from .semiclassical import (MeanFieldTrajectory, Regime, SemiclassicalState,
                            integrate_meanfield, steady_state,
                            threshold_amplitude)
from .dynamics import (CovarianceMatrix, DriftDiffusion, StabilityVerdict,
                       build_full_drift, build_reduced_drift,
                       evolve_covariance, is_stable, solve_lyapunov,
                       symplectic_form)
from .measures import (CorrelationReport, ReducedCM, correlation_report,
                       effective_number, gaussian_steering, log_negativity,
                       log_negativity_symplectic, reduce_cm)
from .bogoliubov import (BogoliubovFrame, bogoliubov_frame,
                         bogoliubov_occupations, squeeze_parameter)
from .wigner import WignerGrid, marginal_pair, wigner_value
from .readout import (ReadoutChannel, joint_output_covariance,
                      output_covariance, reconstruct_covariance)
from .oracle import EnsembleEstimate, EnsembleSpec, simulate_ensemble, spec_for
from .sweep import (SweepAxis, SweepResult, SweepSpec, WignerJob,
                    figure_preset, preset_names, run_sweep, run_wigner_job)

__all__ = [name for name in dir() if not name.startswith("_")]
