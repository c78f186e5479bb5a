"""Exact thermodynamics of the mixed spin-(1/2, 1) Heisenberg dimer."""

from .model import (
    Fields,
    ModelParams,
    Spectrum,
    analytic_spectrum,
    hamiltonian_matrix,
    zeeman_terms,
)
from .thermo import (
    ThermoPoint,
    entropy,
    free_energy,
    gs_magnetization_qf,
    gs_polarization_qf,
    magnetization,
    partition_function,
    polarization,
    thermo_point,
)
from .phases import (
    BoundaryCurve,
    GroundState,
    PhaseLabel,
    boundary_qfm_fp,
    boundary_qfm_qfp,
    boundary_qfp_fp,
    classify_ground_state,
    critical_g_ratio,
    phase_diagram,
    qfm_exists,
)
from .caloric import (
    CaloricCurve,
    Isentrope,
    RcResult,
    caloric_curve,
    classify_caloric,
    delta_s_electric,
    delta_s_magnetic,
    isentrope_electric,
    isentrope_magnetic,
    refrigerant_capacity,
)
from .scan import Grid2D, Polyline, delta_s_map, entropy_map, entropy_map_electric, extract_isolines
from .oracle import NumericSpectrum, fd_derivative, numeric_free_energy, numeric_spectrum
from .validate import ValidationReport, run_validation

__version__ = "0.1.0"
