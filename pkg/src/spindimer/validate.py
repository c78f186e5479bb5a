"""Cross-validation suite: analytic closed forms against the numeric oracle.

Runs every analytic-vs-numeric equivalence over a seeded random parameter
sample and reports the worst deviation per check.  This is what the CLI
`validate` subcommand executes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import oracle, phases, thermo
from .model import Fields, ModelParams, analytic_spectrum, hamiltonian_matrix

DEFAULT_SEED = 12345


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def format_table(self) -> str:
        lines = [f"{'check':38s} {'max dev':>12s} {'tol':>9s}  status"]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"{c.name:38s} {c.max_deviation:12.3e} {c.tolerance:9.1e}  {status}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "checks": [
                {
                    "name": c.name,
                    "max_deviation": c.max_deviation,
                    "tolerance": c.tolerance,
                    "passed": c.passed,
                }
                for c in self.checks
            ],
            "passed": self.passed,
        }


def sample_tuples(rng: np.random.Generator, n: int):
    """Random (params, fields) draws over the standard validation box."""
    out = []
    for _ in range(n):
        p = ModelParams(
            j=1.0,
            delta=rng.uniform(0.0, 2.0),
            d=rng.uniform(-2.0, 2.0),
            g1=rng.uniform(0.5, 4.0),
            g2=rng.uniform(0.5, 4.0),
        )
        f = Fields(b=rng.uniform(0.0, 4.0), e=rng.uniform(0.0, 4.0))
        out.append((p, f))
    return out


def check_spectrum(n: int = 1000, seed: int = DEFAULT_SEED,
                   tol: float = 1e-10) -> list[CheckResult]:
    """Analytic spectrum vs Jacobi eigensolver, plus structural invariants."""
    rng = np.random.default_rng(seed)
    dev_eig = dev_trace = dev_norm = 0.0
    for p, f in sample_tuples(rng, n):
        m = hamiltonian_matrix(p, f)
        sp = analytic_spectrum(p, f)
        analytic = np.sort(sp.eps)
        numeric = oracle.numeric_spectrum(m).eigenvalues
        dev_eig = max(dev_eig, float(np.max(np.abs(analytic - numeric))))
        dev_trace = max(dev_trace, abs(sum(sp.eps) - np.trace(m).real))
        dev_norm = max(
            dev_norm,
            abs(sp.c1plus**2 + sp.c1minus**2 - 1.0),
            abs(sp.c2plus**2 + sp.c2minus**2 - 1.0),
        )
    return [
        CheckResult("spectrum_vs_jacobi", dev_eig, tol),
        CheckResult("eigenvalue_sum_vs_trace", dev_trace, 1e-12),
        CheckResult("coefficient_normalization", dev_norm, 1e-12),
    ]


def check_thermodynamics(n: int = 200, seed: int = DEFAULT_SEED,
                         temperatures=(0.05, 0.2, 0.8, 2.0, 5.0),
                         tol_fd: float = 1e-6) -> list[CheckResult]:
    """Closed-form Z, F, m, P, S vs numeric-spectrum sums / finite differences."""
    rng = np.random.default_rng(seed)
    dev_z = dev_f = dev_m = dev_p = dev_s = 0.0
    for p, f in sample_tuples(rng, n):
        eps_num = oracle.numeric_spectrum(hamiltonian_matrix(p, f)).eigenvalues
        for t in temperatures:
            ln_z = thermo.log_partition_function(p, f, t)
            emin = eps_num[0]
            ln_z_num = -emin / t + np.log(np.sum(np.exp(-(eps_num - emin) / t)))
            dev_z = max(dev_z, abs(ln_z - ln_z_num) / max(1.0, abs(ln_z_num)))
            dev_f = max(dev_f, abs(thermo.free_energy(p, f, t) - oracle.numeric_free_energy(p, f, t)))
            dev_m = max(dev_m, abs(thermo.magnetization(p, f, t) - oracle.fd_derivative(p, f, t, "b")))
            dev_p = max(dev_p, abs(thermo.polarization(p, f, t) / p.mu - oracle.fd_derivative(p, f, t, "e")))
            dev_s = max(dev_s, abs(thermo.entropy(p, f, t) - oracle.fd_derivative(p, f, t, "t")))
    return [
        CheckResult("partition_vs_spectrum_sum", dev_z, 1e-10),
        CheckResult("free_energy_vs_numeric", dev_f, 1e-10),
        CheckResult("magnetization_vs_fd", dev_m, tol_fd),
        CheckResult("polarization_vs_fd", dev_p, tol_fd),
        CheckResult("entropy_vs_fd", dev_s, tol_fd),
    ]


def check_zero_field_laws(n: int = 100, seed: int = DEFAULT_SEED) -> list[CheckResult]:
    """No spontaneous magnetization at b = 0, no polarization at e = 0."""
    rng = np.random.default_rng(seed)
    dev_m = dev_p = 0.0
    for p, f in sample_tuples(rng, n):
        t = rng.uniform(0.05, 5.0)
        dev_m = max(dev_m, abs(thermo.magnetization(p, Fields(b=0.0, e=f.e), t)))
        dev_p = max(dev_p, abs(thermo.polarization(p, Fields(b=f.b, e=0.0), t)))
    return [
        CheckResult("zero_field_magnetization", dev_m, 1e-12),
        CheckResult("zero_field_polarization", dev_p, 1e-12),
    ]


def check_boundaries(seed: int = DEFAULT_SEED, n: int = 25,
                     tol: float = 1e-8) -> list[CheckResult]:
    """Closed-form boundaries vs bisection-refined eigenvalue crossings."""
    rng = np.random.default_rng(seed)
    dev_qfp = dev_qfm = 0.0
    for _ in range(n):
        e = rng.uniform(0.0, 2.0)
        p1 = ModelParams(j=1.0, delta=1.0, d=rng.uniform(-1.0, 1.0), g1=2.0, g2=2.0)
        b_cf = phases.boundary_qfp_fp(p1, e)
        b_cr = phases.crossing_field(p1, e, "QFP_FP")
        if b_cr is not None:
            dev_qfp = max(dev_qfp, abs(b_cf - b_cr))
        p2 = ModelParams(j=1.0, delta=1.0, d=rng.uniform(-2.0, -0.5), g1=2.0, g2=0.8)
        b_cf2 = phases.boundary_qfm_qfp(p2, e * 0.4)
        if b_cf2 is not None:
            b_cr2 = phases.crossing_field(p2, e * 0.4, "QFM_QFP")
            if b_cr2 is not None:
                dev_qfm = max(dev_qfm, abs(b_cf2 - b_cr2))
    return [
        CheckResult("boundary_qfp_fp_vs_crossing", dev_qfp, tol),
        CheckResult("boundary_qfm_qfp_vs_crossing", dev_qfm, tol),
    ]


def run_validation(sample: int = 200, seed: int = DEFAULT_SEED,
                   tol_fd: float = 1e-6) -> ValidationReport:
    """Full cross-check suite; `sample` scales the thermodynamic sampling."""
    checks = []
    checks += check_spectrum(n=max(sample, 5) * 5, seed=seed)
    checks += check_thermodynamics(n=max(sample, 5), seed=seed, tol_fd=tol_fd)
    checks += check_zero_field_laws(n=max(sample // 2, 5), seed=seed)
    checks += check_boundaries(seed=seed)
    return ValidationReport(checks=tuple(checks))
