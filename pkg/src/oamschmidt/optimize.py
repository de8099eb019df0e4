"""Inverse design of pump coefficients: PSO search, coordinate-descent
refinement, and parameter sweeps over theta_p, N and L.

The spectrum is quadratic in the pump coefficients, so each candidate is
scored against precomputed quadratic forms (see engine.mode_quadratic_forms)
rather than by re-running the integral; the full integral is evaluated once
per run, on the fine grid, to report the final generation accuracy G.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .crystal import collinear_angle
from .engine import Grids, mode_quadratic_forms, schmidt_spectrum, spectrum_from_quadratic
from .errors import ConfigError, DomainError, ObjectiveDomainError
from .metrics import r_squared
from .pump import normalize_coefficients

SWEEP_PARAMETERS = ("theta_p", "N", "L")

# theta offsets (degrees above collinear) scanned when re-optimizing the
# phase-matching angle for a given crystal thickness
THETA_OFFSETS_DEG = (0.02, 0.04, 0.06, 0.08, 0.10)


@dataclass(frozen=True)
class SwarmConfig:
    particle_count: int = 40
    iteration_count: int = 150
    inertia: float = 0.729
    cognitive: float = 1.49445
    social: float = 1.49445
    bounds: tuple[float, float] = (-1.0, 1.0)
    seed: int = 0

    def __post_init__(self):
        if self.particle_count < 2:
            raise ConfigError(f"particle_count must be >= 2, got {self.particle_count}")
        lo, hi = self.bounds
        if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
            raise ConfigError(f"bounds must be finite with lo < hi, got {self.bounds}")


@dataclass(frozen=True)
class OptimizationResult:
    coefficients: np.ndarray
    G: float
    history: np.ndarray
    evaluation_count: int
    grid_tier: str
    seed: int
    spectrum: object = None

    def to_dict(self):
        return {
            "coefficients": [[c.real, c.imag] for c in self.coefficients],
            "G_percent": self.G,
            "history": list(self.history),
            "evaluation_count": self.evaluation_count,
            "grid_tier": self.grid_tier,
            "seed": self.seed,
        }


def pso_minimize(objective, dims, config, rng=None):
    """Global-best PSO over a box; returns (best point, best value, history).

    `history` holds the best-so-far objective after each iteration and is
    non-increasing by construction.
    """
    if dims < 1:
        raise DomainError(f"dims must be >= 1, got {dims}")
    rng = rng or np.random.default_rng(config.seed)
    lo, hi = config.bounds
    n = config.particle_count

    def evaluate(point):
        value = float(objective(point))
        if not np.isfinite(value):
            raise ObjectiveDomainError(
                f"objective returned non-finite value {value} at {point!r}", point=point
            )
        return value

    x = rng.uniform(lo, hi, size=(n, dims))
    v = np.zeros((n, dims))
    p_best = x.copy()
    p_val = np.array([evaluate(x[k]) for k in range(n)])
    g_idx = int(np.argmin(p_val))
    g_best, g_val = p_best[g_idx].copy(), float(p_val[g_idx])

    history = np.empty(config.iteration_count)
    for it in range(config.iteration_count):
        r1 = rng.random((n, dims))
        r2 = rng.random((n, dims))
        v = (
            config.inertia * v
            + config.cognitive * r1 * (p_best - x)
            + config.social * r2 * (g_best - x)
        )
        x = np.clip(x + v, lo, hi)
        for k in range(n):
            val = evaluate(x[k])
            if val < p_val[k]:
                p_val[k] = val
                p_best[k] = x[k]
                if val < g_val:
                    g_val = val
                    g_best = x[k].copy()
        history[it] = g_val
    evaluations = n * (config.iteration_count + 1)
    return g_best, g_val, history, evaluations


class SpectrumObjective:
    """-R^2(target, S(alpha)) evaluated through precomputed quadratic forms."""

    # keeps PSO robust when a particle lands on the all-zero coefficient point
    DEGENERATE_PENALTY = 1e6

    def __init__(self, target, pump_template, crystal, n_modes, grids=None, q_forms=None):
        self.target = target
        self.n_modes = n_modes
        self.grid_meta = grids.meta() if grids is not None else {}
        if q_forms is None:
            q_forms = mode_quadratic_forms(
                pump_template, crystal, target.D, grids=grids, n_modes=n_modes
            )
        if q_forms.shape[1] < n_modes:
            raise ConfigError(
                f"quadratic forms cover {q_forms.shape[1]} modes, need {n_modes}"
            )
        self.q_forms = q_forms

    def split(self, x):
        x = np.asarray(x, dtype=float)
        return x[: self.n_modes] + 1j * x[self.n_modes :]

    def r2_of(self, alpha):
        alpha = np.asarray(alpha, dtype=complex)
        if np.linalg.norm(alpha) == 0.0:
            return -self.DEGENERATE_PENALTY
        alpha = normalize_coefficients(alpha)
        spectrum = spectrum_from_quadratic(self.q_forms[:, : self.n_modes, : self.n_modes], alpha)
        return r_squared(self.target, spectrum)

    def __call__(self, x):
        return -self.r2_of(self.split(x))


def generation_accuracy(target, n_modes, pump_template, crystal, swarm,
                        coarse_grids=None, fine_grids=None, refine=False, q_forms=None):
    """Maximize R^2 over 2*n_modes real pump-coefficient components.

    The search runs on coarse-tier quadratic forms; the reported G is the R^2
    of the best coefficients re-evaluated with the full integral on the fine
    grid. `q_forms` may pass in precomputed coarse forms (covering at least
    n_modes) to share across sweep points.
    """
    if n_modes < 1:
        raise DomainError(f"n_modes must be >= 1, got {n_modes}")
    if coarse_grids is None:
        coarse_grids = Grids.build(pump_template, crystal, target.D, tier="coarse")
    objective = SpectrumObjective(
        target, pump_template, crystal, n_modes, grids=coarse_grids, q_forms=q_forms
    )
    best_x, _, history, evaluations = pso_minimize(objective, 2 * n_modes, swarm)
    alpha = normalize_coefficients(objective.split(best_x))
    if refine:
        alpha = refine_coefficients(alpha, target, crystal,
                                    pump_template=pump_template, objective=objective)
    if fine_grids is None:
        fine_grids = Grids.build(pump_template, crystal, target.D, tier="fine")
    pump = pump_template.with_coefficients(alpha)
    fine_spectrum = schmidt_spectrum(pump, crystal, target.D, grids=fine_grids)
    g = r_squared(target, fine_spectrum)
    return OptimizationResult(
        coefficients=alpha,
        G=g,
        history=-history,  # stored as best R^2 per iteration, non-decreasing
        evaluation_count=evaluations,
        grid_tier=coarse_grids.tier,
        seed=swarm.seed,
        spectrum=fine_spectrum,
    )


def refine_coefficients(start, target, crystal, pump_template=None, objective=None,
                        initial_step=0.1, min_step=0.0125, grids=None):
    """Cyclic coordinate descent over re/im parts, emulating step-wise feedback.

    Tries +/-step on one component at a time, keeps improvements, halves the
    step after an improvement-free cycle, and stops once the step would drop
    below `min_step`. Monotone: the returned R^2 never falls below the start.
    """
    alpha = normalize_coefficients(np.asarray(start, dtype=complex)).copy()
    if objective is None:
        if pump_template is None:
            raise ConfigError("refine_coefficients needs a pump template or an objective")
        if grids is None:
            grids = Grids.build(pump_template, crystal, target.D, tier="coarse")
        objective = SpectrumObjective(target, pump_template, crystal, alpha.size, grids=grids)
    best = objective.r2_of(alpha)
    step = initial_step
    while step >= min_step:
        improved = False
        for p in range(alpha.size):
            for delta in (step, -step, 1j * step, -1j * step):
                candidate = alpha.copy()
                candidate[p] += delta
                score = objective.r2_of(candidate)
                if score > best:
                    best = score
                    alpha = normalize_coefficients(candidate)
                    improved = True
        if not improved:
            step /= 2.0
    return normalize_coefficients(alpha)


@dataclass(frozen=True)
class SweepPoint:
    value: float
    G: float
    result: OptimizationResult = field(repr=False, default=None)


def _seeded(swarm, seed_seq):
    return replace(swarm, seed=int(seed_seq.generate_state(1)[0]))


def optimize_theta(target, n_modes, pump_template, crystal, swarm,
                   offsets_deg=THETA_OFFSETS_DEG):
    """Pick the best phase-matching angle from a scan above collinear."""
    theta_c = collinear_angle(crystal)
    best = None
    for k, off in enumerate(offsets_deg):
        candidate = replace(crystal, theta_p=theta_c + np.radians(off))
        res = generation_accuracy(
            target, n_modes, pump_template, candidate,
            replace(swarm, seed=swarm.seed + k), refine=True,
        )
        if best is None or res.G > best[1].G:
            best = (candidate, res)
    return best


def sweep(parameter, values, target, pump_template, crystal, swarm,
          n_seeds=3, reoptimize_theta=False, refine=True):
    """Curve of (parameter value, G), taking the best of `n_seeds` fresh seeds
    per point. For an L sweep with `reoptimize_theta`, theta_p is re-tuned at
    each thickness before the seeded runs."""
    if parameter not in SWEEP_PARAMETERS:
        raise ConfigError(
            f"unknown sweep parameter {parameter!r}; choose one of {', '.join(SWEEP_PARAMETERS)}"
        )
    if len(values) == 0:
        raise ConfigError("sweep needs at least one value")
    seed_seqs = np.random.SeedSequence(swarm.seed).spawn(len(values) * n_seeds)
    points = []
    for j, value in enumerate(values):
        n_modes = pump_template.n_modes
        point_crystal = crystal
        if parameter == "theta_p":
            point_crystal = replace(crystal, theta_p=float(value))
        elif parameter == "L":
            point_crystal = replace(crystal, thickness=float(value))
            if reoptimize_theta:
                point_crystal, _ = optimize_theta(
                    target, n_modes, pump_template, point_crystal, swarm
                )
        else:
            n_modes = int(value)
        q_forms = mode_quadratic_forms(
            pump_template, point_crystal, target.D,
            grids=Grids.build(pump_template, point_crystal, target.D, tier="coarse"),
            n_modes=n_modes,
        )
        fine = Grids.build(pump_template, point_crystal, target.D, tier="fine")
        best = None
        for k in range(n_seeds):
            seeded = _seeded(swarm, seed_seqs[j * n_seeds + k])
            res = generation_accuracy(
                target, n_modes, pump_template, point_crystal, seeded,
                fine_grids=fine, q_forms=q_forms, refine=refine,
            )
            if best is None or res.G > best.G:
                best = res
        points.append(SweepPoint(value=float(value), G=best.G, result=best))
    return points
