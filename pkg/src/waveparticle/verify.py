"""Self-contained verification suite with frozen grids and seeds.

Each check compares a library result against an independently coded
expectation and reports the worst residual. The CLI `verify` command and
the acceptance tests both run this list.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import measures, sampling
from .channels import ReferenceObservable, dephase
from .experiments import (
    MziConfig,
    WernerInput,
    balanced_path_state,
    dce_analyze,
    measurement_model,
    morphing_scan,
    mzi_run,
    path_basis,
    wave_detector_run,
)
from .nonlocality import chsh_bruteforce, chsh_nl
from .states import basis_state, projector


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: float
    tolerance: float
    detail: str


def _entropy_terms(probabilities) -> float:
    return float(sum(-p * np.log(p) for p in probabilities if p > 1e-15))


def _qubit_pair(a: float) -> np.ndarray:
    return np.array([a, np.sqrt(max(0.0, 1.0 - a * a))], dtype=complex)


def check_balanced_state_wavelike() -> CheckResult:
    obs = path_basis(2)
    residual = 0.0
    for phi in np.arange(13) * (np.pi / 6.0):
        iw = measures.wavelike_info(projector(balanced_path_state(phi)), obs, 1.0)
        residual = max(residual, abs(iw - np.log(2.0)))
    return CheckResult("01_balanced_state_wavelike_ln2", residual < 1e-12,
                       residual, 1e-12, "13 phases, inside the interferometer")


def check_recombined_state_entropy() -> CheckResult:
    residual = 0.0
    for phi in np.linspace(0.0, 2.0 * np.pi, 24):
        report = mzi_run(MziConfig(phi=phi, bs2="present"))
        x = np.cos(phi / 2.0) ** 2
        expected = _entropy_terms([x, 1.0 - x])
        residual = max(residual, abs(report.scalars["wavelike_q1"] - expected))
    return CheckResult("02_recombined_state_binary_entropy", residual < 1e-12,
                       residual, 1e-12, "24 phases, output splitter present")


def check_wave_detector_entanglement() -> CheckResult:
    residual = 0.0
    for x in np.linspace(0.0, 1.0, 10):
        for a in np.linspace(0.0, 1.0, 10):
            amps = _qubit_pair(a)
            ab = abs(amps[0] * amps[1])
            report = wave_detector_run(WernerInput(x, amps))
            for k in (0, 1):
                residual = max(
                    residual,
                    abs(report.scalars[f"concurrence_click_{k}"] - 2.0 * x * ab),
                    abs(report.scalars[f"nonlocality_click_{k}"]
                        - 4.0 * x * x * ab * ab),
                )
    return CheckResult("03_wave_detector_entanglement_nonlocality",
                       residual < 1e-10, residual, 1e-10,
                       "10x10 grid in (x, |alpha|), both clicks")


def check_werner_activation() -> CheckResult:
    residual = 0.0
    for x in np.linspace(0.0, 1.0, 10):
        for a in np.linspace(0.0, 1.0, 10):
            amps = _qubit_pair(a)
            ab = abs(amps[0] * amps[1])
            report = wave_detector_run(WernerInput(x, amps))
            iw2 = report.scalars["wavelike_q2"]
            residual = max(residual, abs(iw2 - 2.0 * x * x * ab * ab))
            for k in (0, 1):
                residual = max(
                    residual,
                    abs(report.scalars[f"nonlocality_click_{k}"] - 2.0 * iw2))
    return CheckResult("04_werner_wavelike_activation", residual < 1e-10,
                       residual, 1e-10,
                       "10x10 grid; activated nonlocality = twice wavelike info")


def check_delayed_choice_forms() -> CheckResult:
    alphas = np.linspace(0.0, np.pi / 2.0, 20)
    phis = np.linspace(0.0, 2.0 * np.pi, 20)
    residual = 0.0
    margin = np.inf
    for i, alpha in enumerate(alphas):
        for phi in phis:
            report = dce_analyze(alpha, phi)
            cos2 = np.cos(phi) ** 2
            ip2 = 0.5 * (1.0 - np.cos(alpha) ** 4) * cos2
            e2 = 0.25 * np.sin(2.0 * alpha) ** 2 * cos2
            residual = max(residual,
                           abs(report.scalars["particlelike_q2"] - ip2),
                           abs(report.scalars["entanglement_linear"] - e2))
            if 0 < i < len(alphas) - 1 and abs(np.cos(phi)) > 1e-9:
                margin = min(margin, 0.5 - report.scalars["particlelike_q2"])
    passed = residual < 1e-10 and margin > 0.0
    return CheckResult("05_delayed_choice_closed_forms", passed, residual, 1e-10,
                       f"20x20 grid; strict-bound margin {margin:.3e}")


def check_complementarity() -> CheckResult:
    rng = np.random.default_rng(6)
    residual = 0.0
    for i in range(1000):
        dim = 2 + (i % 7)
        rho = sampling.random_density(rng, dim)
        obs = sampling.random_basis(rng, dim)
        for q in (1.0, 2.0):
            total = (measures.wavelike_info(rho, obs, q)
                     + measures.particlelike_info(rho, obs, q))
            residual = max(residual, abs(total - measures.max_entropy(dim, q)))
    return CheckResult("06_complementarity_equality", residual < 1e-10,
                       residual, 1e-10, "1000 random states, dims 2-8, q in {1,2}")


def check_klein_bound() -> CheckResult:
    rng = np.random.default_rng(7)
    violation = -np.inf
    for i in range(1000):
        dim = 2 + (i % 7)
        rho = sampling.random_full_rank_density(rng, dim)
        obs = sampling.random_basis(rng, dim)
        for q in (1.0, 2.0):
            iw = measures.wavelike_info(rho, obs, q)
            ub = measures.wavelike_upper_bound(rho, obs, q)
            violation = max(violation, -iw, iw - ub)
    residual = max(0.0, violation)
    return CheckResult("07_klein_bound_sandwich", violation < 1e-10,
                       residual, 1e-10, "1000 random full-rank states, q in {1,2}")


def check_chsh_oracle() -> CheckResult:
    rng = np.random.default_rng(8)
    residual = 0.0
    overshoot = 0.0
    for _ in range(200):
        rho = sampling.random_density(rng, 4)
        b_max, _ = chsh_nl(rho)
        estimate = chsh_bruteforce(rho, restarts=32, iterations=1000, seed=0)
        residual = max(residual, abs(b_max - estimate))
        overshoot = max(overshoot, estimate - b_max)
    passed = residual < 1e-4 and overshoot < 1e-9
    return CheckResult("08_chsh_oracle_agreement", passed, residual, 1e-4,
                       f"200 random two-qubit states; overshoot {overshoot:.3e}")


def check_commutator_identity() -> CheckResult:
    rng = np.random.default_rng(9)
    residual = 0.0
    for i in range(500):
        dim = 2 + (i % 7)
        j = sampling.random_hermitian(rng, dim)
        obs = sampling.random_basis(rng, dim)
        total = np.zeros((dim, dim), dtype=complex)
        for k in range(dim):
            p_k = obs.projector(k)
            total += (j @ p_k - p_k @ j) @ p_k
        residual = max(residual, float(np.max(np.abs((j - dephase(j, obs)) - total))))
    return CheckResult("09_dephasing_commutator_identity", residual < 1e-10,
                       residual, 1e-10, "500 random Hermitian matrices, dims 2-8")


def check_joint_entropy() -> CheckResult:
    rng = np.random.default_rng(10)
    residual = 0.0
    for i in range(500):
        dim = 2 + (i % 7)
        p = sampling.random_probabilities(rng, dim)
        obs = sampling.random_basis(rng, dim)
        rho = sum(p[k] * obs.projector(k) for k in range(dim))
        residual = max(residual,
                       abs(measures.tsallis_entropy(rho, 1.0) - measures.shannon(p)))
    return CheckResult("10_joint_entropy_theorem", residual < 1e-10,
                       residual, 1e-10, "500 random distributions, dims 2-8")


def check_uniform_branches() -> CheckResult:
    residual = 0.0
    for n in range(2, 9):
        psi = np.ones(n, dtype=complex) / np.sqrt(n)
        iw = measures.wavelike_info(projector(psi), path_basis(n), 1.0)
        residual = max(residual, abs(iw - np.log(n)))
    return CheckResult("11_uniform_branch_scaling", residual < 1e-12,
                       residual, 1e-12, "uniform superpositions, 2-8 branches")


def check_measurement_perspectives() -> CheckResult:
    cases = [
        np.array([1.0, 1.0j], dtype=complex) / np.sqrt(2.0),
        np.array([0.6, 0.8], dtype=complex),
        np.array([0.5, 0.5, 1.0 / np.sqrt(2.0)], dtype=complex),
        np.array([0.5, 0.5, 0.5, 0.5j], dtype=complex),
    ]
    residual = 0.0
    for c in cases:
        probabilities = np.abs(c) ** 2
        expected = _entropy_terms(probabilities)
        obs = path_basis(c.size)
        iw_pre = measures.wavelike_info(projector(c), obs, 1.0)
        residual = max(residual, abs(iw_pre - expected))
        reports = [measurement_model(c, "bob")]
        reports.extend(measurement_model(c, "alice", outcome=k)
                       for k in range(c.size) if probabilities[k] > 1e-12)
        for report in reports:
            for key in ("wavelike_q1", "wavelike_q2",
                        "wavelike_pointer_q1", "wavelike_pointer_q2"):
                residual = max(residual, report.scalars[key])
    return CheckResult("12_measurement_perspectives", residual < 1e-12,
                       residual, 1e-12,
                       "post-interaction states particlelike from both views")


def check_relational_diagnosis() -> CheckResult:
    rho = projector(basis_state(2, 0))
    z_basis = ReferenceObservable.computational(2)
    x_basis = ReferenceObservable(
        np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0))
    residual = max(measures.wavelike_info(rho, z_basis, 1.0),
                   abs(measures.wavelike_info(rho, x_basis, 1.0) - np.log(2.0)))
    return CheckResult("13_relational_diagnosis", residual < 1e-12,
                       residual, 1e-12,
                       "definite path: particlelike along z, wavelike along x")


def check_morphing_limit() -> CheckResult:
    residual = 0.0
    for a in np.linspace(0.0, 1.0, 11):
        amps = _qubit_pair(a)
        ab2 = abs(amps[0] * amps[1]) ** 2
        for eta in np.linspace(0.0, 1.0, 11):
            report = morphing_scan(amps, eta)
            residual = max(residual,
                           abs(report.scalars["wavelike_q2"] - 2.0 * ab2 * eta * eta))
    balanced = morphing_scan(_qubit_pair(1.0 / np.sqrt(2.0)), 1.0)
    residual = max(residual, abs(balanced.scalars["wavelike_q2"] - 0.5))
    return CheckResult("14_informer_overlap_morphing", residual < 1e-10,
                       residual, 1e-10, "11x11 grid in (|alpha|, overlap)")


CHECKS: list[Callable[[], CheckResult]] = [
    check_balanced_state_wavelike,
    check_recombined_state_entropy,
    check_wave_detector_entanglement,
    check_werner_activation,
    check_delayed_choice_forms,
    check_complementarity,
    check_klein_bound,
    check_chsh_oracle,
    check_commutator_identity,
    check_joint_entropy,
    check_uniform_branches,
    check_measurement_perspectives,
    check_relational_diagnosis,
    check_morphing_limit,
]


def run_checks() -> list[CheckResult]:
    return [check() for check in CHECKS]
