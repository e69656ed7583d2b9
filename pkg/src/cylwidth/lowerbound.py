"""Lower-bound machinery: witness vectors, coordinate profiles, and an
adversarial search for subspaces of minimal width.

The witness vector has coordinates ``a_i = 1 / sqrt(floor(k/2) + i)`` for
``i = 1 .. d - floor(k/2)`` and zero afterwards, so its squared norm is the
harmonic tail ``H_d - H_{floor(k/2)}``.  Its decreasing rearrangement is
itself, which makes suprema over signed permutations easy to reason about:
for any ``y``, ``sup_g <a, g y> = <a, y~>`` is at least ``sum_i a_i |y_i|``.

For a subspace basis the coordinate profile ``sigma_i`` is the i-th largest
projection norm of a coordinate vector divided by ``sqrt(k)``.  The profile
sums to one in squares and obeys ``sigma_i <= min(1/sqrt(k), 1/sqrt(i))``.

The adversarial minimizer is a derivative-free random search over frames:
Gaussian perturbations of the basis columns are re-orthonormalized, moves
are accepted when the width drops, and the step size halves after 20
consecutive rejections.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RankDeficientError
from .groups import Orbit
from .measures import sample_uniform
from .vectors import SubspaceBasis, orthonormalize
from .width import altmax_evaluator, orbit_evaluator

__all__ = [
    "WitnessVector",
    "SigmaProfile",
    "SelbergReport",
    "AdversarialResult",
    "witness_vector",
    "sigma_profile",
    "selberg_check",
    "mean_abs_coordinates",
    "adversarial_min_width",
]


@dataclass(frozen=True)
class WitnessVector:
    """Unit witness direction plus the squared norm of its raw form."""

    unit: np.ndarray
    raw_norm_sq: float
    d: int
    k: int


def witness_vector(d: int, k: int) -> WitnessVector:
    """Unit-normalized harmonic witness for dimension ``d`` and rank ``k``."""
    if not 1 <= k <= d:
        raise ValueError(f"need 1 <= k <= d, got k={k}, d={d}")
    half = k // 2
    a = np.zeros(d)
    n = d - half
    i = np.arange(1, n + 1, dtype=np.float64)
    a[:n] = 1.0 / np.sqrt(half + i)
    norm_sq = float(np.sum(a**2))
    unit = a / np.sqrt(norm_sq)
    unit.setflags(write=False)
    return WitnessVector(unit=unit, raw_norm_sq=norm_sq, d=d, k=k)


@dataclass(frozen=True)
class SigmaProfile:
    """Sorted coordinate profile of a subspace.

    ``sigmas[i]`` is the (i+1)-th largest value of
    ``||proj_W e_j||_2 / sqrt(k)``.  Construction validates the exact
    identities: squares sum to one within 1e-8 and
    ``sigmas[i] <= min(1/sqrt(k), 1/sqrt(i+1)) + 1e-9``.
    """

    sigmas: np.ndarray
    d: int
    k: int

    def __post_init__(self):
        s = np.asarray(self.sigmas, dtype=np.float64)
        if s.shape != (self.d,):
            raise ValueError("profile length must match the dimension")
        total = float(np.sum(s**2))
        if abs(total - 1.0) > 1e-8:
            raise ValueError(f"profile squares sum to {total}, expected 1")
        ranks = np.arange(1, self.d + 1, dtype=np.float64)
        cap = np.minimum(1.0 / np.sqrt(self.k), 1.0 / np.sqrt(ranks))
        if np.any(s > cap + 1e-9):
            raise ValueError("profile exceeds the rank/coordinate caps")
        s.setflags(write=False)
        object.__setattr__(self, "sigmas", s)


def sigma_profile(basis: SubspaceBasis) -> SigmaProfile:
    """Coordinate profile of a subspace, sorted in decreasing order."""
    rows = np.linalg.norm(basis.columns, axis=1)
    sig = np.sort(rows)[::-1] / np.sqrt(basis.k)
    return SigmaProfile(sigmas=sig, d=basis.d, k=basis.k)


@dataclass(frozen=True)
class SelbergReport:
    lhs: float
    rhs: float
    margin: float
    holds: bool


def selberg_check(points, tol: float = 1e-9) -> SelbergReport:
    """Check the largest Gram eigenvalue against the worst absolute row sum.

    For any finite family ``x_1..x_m`` the supremum over unit ``w`` of
    ``sum_i |<w, x_i>|^2`` is the top eigenvalue of the Gram matrix, and it
    never exceeds ``max_i sum_j |<x_i, x_j>|``.
    """
    x = np.asarray(points)
    if x.ndim != 2 or x.shape[0] < 1:
        raise ValueError("need a nonempty (m, d) array of row vectors")
    gram = x @ x.conj().T
    gram = (gram + gram.conj().T) / 2.0
    lhs = float(np.linalg.eigvalsh(gram)[-1])
    rhs = float(np.max(np.sum(np.abs(gram), axis=1)))
    return SelbergReport(lhs=lhs, rhs=rhs, margin=rhs - lhs, holds=lhs <= rhs + tol)


def mean_abs_coordinates(
    basis: SubspaceBasis, trials: int = 2000, seed=None
) -> np.ndarray:
    """Monte-Carlo estimate of ``E |y_i|`` for uniform unit ``y`` in the span."""
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((trials, basis.k))
    if basis.field == "complex":
        g = g + 1j * rng.standard_normal((trials, basis.k))
    g /= np.linalg.norm(g, axis=1)[:, None]
    y = g @ basis.columns.T
    return np.abs(y).mean(axis=0)


@dataclass(frozen=True)
class AdversarialResult:
    min_value: float
    basis: SubspaceBasis
    restarts: int
    steps: int
    evaluations: int


def adversarial_min_width(
    d: int,
    k: int,
    target,
    restarts: int = 10,
    steps: int = 2000,
    seed: int = 0,
    inner_restarts: int = 6,
    initial_step: float = 0.5,
) -> AdversarialResult:
    """Projected random search for a real frame of minimal width.

    ``target`` is either an :class:`~cylwidth.groups.Orbit` (evaluated
    exactly) or a vector (evaluated by the alternating ascent over signed
    permutations with ``inner_restarts`` starts).  Restart ``r`` runs on the
    derived stream ``(seed, r)``: a uniform random frame is perturbed by
    Gaussian noise of scale ``initial_step`` and re-orthonormalized; strict
    improvements are accepted and the scale halves after 20 consecutive
    rejections.  Underestimation by the inner ascent can only lower the
    reported minimum, so the result is a one-sided probe of the true
    minimal width.
    """
    if not 1 <= k <= d:
        raise ValueError(f"need 1 <= k <= d, got k={k}, d={d}")
    if isinstance(target, Orbit):
        evaluator = orbit_evaluator(target)
    else:
        v = np.asarray(target)
        if v.shape != (d,):
            raise ValueError(f"witness vector must have shape ({d},)")
        # the search re-evaluates thousands of candidates, so it runs the
        # plain ascent; underestimates only lower the one-sided probe
        evaluator = altmax_evaluator(v, restarts=inner_restarts, refine="none")

    best_val = np.inf
    best_basis = None
    evals = 0
    seed_base = list(seed) if isinstance(seed, (list, tuple)) else [seed]
    for r in range(restarts):
        rng = np.random.default_rng([*seed_base, r])
        basis = sample_uniform(k, d, "real", rng)
        current = evaluator(basis, rng)
        evals += 1
        eta = initial_step
        rejected = 0
        for _ in range(steps):
            noise = rng.standard_normal((d, k))
            try:
                cand = orthonormalize(basis.columns + eta * noise)
            except RankDeficientError:  # pragma: no cover - tiny probability
                rejected += 1
                if rejected >= 20:
                    eta /= 2.0
                    rejected = 0
                continue
            val = evaluator(cand, rng)
            evals += 1
            if val < current:
                basis = cand
                current = val
                rejected = 0
            else:
                rejected += 1
                if rejected >= 20:
                    eta /= 2.0
                    rejected = 0
        if current < best_val:
            best_val = current
            best_basis = basis
    return AdversarialResult(
        min_value=float(best_val),
        basis=best_basis,
        restarts=restarts,
        steps=steps,
        evaluations=evals,
    )
