"""Supremum of projection norms over signed-permutation images.

For a subspace ``W`` and a vector ``v`` the quantity of interest is

    sup_g || proj_W (g v) ||_2

where ``g`` ranges over the group of coordinate permutations composed with
unit-modulus coordinate scalings (signs in the real case, phases in the
complex case).  The supremum equals ``sup_{w in S(W)} <v~, w~>`` where
``x~`` denotes the decreasing rearrangement: aligning phases removes the
scalars and sorting both factors maximizes the pairing.  That identity
drives the alternating ascent: fix ``w``, build the maximizing image of
``v``; project it back into ``W`` and renormalize; repeat.  Both half-steps
are exact maximizations, so the objective is monotone.

The same routine evaluates suprema over dominance cones: the projection
norm is convex, the cone is the convex hull of the signed-permutation
orbit, and a convex function attains its supremum at an extreme point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .groups import Orbit, signed_permutation_apply
from .vectors import SubspaceBasis, decreasing_argsort, decreasing_rearrangement

__all__ = [
    "GammaWitness",
    "WidthReport",
    "FIntegralEstimate",
    "width_brute_signed_perm",
    "width_altmax",
    "width_orbit",
    "dom_sup",
    "estimate_f_integral",
    "altmax_evaluator",
    "orbit_evaluator",
    "dom_evaluator",
]

BRUTE_MAX_D = 8


@dataclass(frozen=True)
class GammaWitness:
    """Signed permutation ``(gv)_i = signs[i] * v[perm[i]]``."""

    perm: np.ndarray
    signs: np.ndarray

    def apply(self, v) -> np.ndarray:
        return signed_permutation_apply(self.perm, self.signs, v)


@dataclass(frozen=True)
class WidthReport:
    """Estimated supremum together with the element attaining it.

    ``witness`` is a :class:`GammaWitness` for the brute-force and ascent
    methods and the attaining orbit point for orbit enumeration.  In every
    case re-evaluating the witness reproduces ``value``.
    """

    value: float
    method: str
    restarts: int
    iterations: int
    witness: object


@dataclass(frozen=True)
class FIntegralEstimate:
    mean: float
    stderr: float
    trials: int
    values: np.ndarray


def _conform(basis: SubspaceBasis, v) -> np.ndarray:
    v = np.asarray(v)
    if v.shape != (basis.d,):
        raise ValueError(f"vector must have shape ({basis.d},)")
    if basis.field == "complex" or np.iscomplexobj(v):
        return v.astype(np.complex128)
    return v.astype(np.float64)


def width_brute_signed_perm(basis: SubspaceBasis, v) -> WidthReport:
    """Exact supremum by enumerating all signed permutations (real, d<=8)."""
    if basis.field != "real" or np.iscomplexobj(np.asarray(v)):
        raise ValueError("brute enumeration covers the real field only")
    v = _conform(basis, v)
    d = basis.d
    if d > BRUTE_MAX_D:
        raise ValueError(f"brute enumeration is capped at d={BRUTE_MAX_D}")
    signs = np.array(list(itertools.product((1.0, -1.0), repeat=d)))
    cols = basis.columns
    best = -1.0
    best_perm = None
    best_sign = None
    count = 0
    for perm in itertools.permutations(range(d)):
        u = v[np.asarray(perm)]
        coeffs = (signs * u[None, :]) @ cols
        vals = np.einsum("ij,ij->i", coeffs, coeffs)
        i = int(np.argmax(vals))
        count += signs.shape[0]
        if vals[i] > best:
            best = float(vals[i])
            best_perm = np.asarray(perm)
            best_sign = signs[i].copy()
    return WidthReport(
        value=float(np.sqrt(best)),
        method="brute",
        restarts=0,
        iterations=count,
        witness=GammaWitness(perm=best_perm, signs=best_sign),
    )


def _unit_phases(w: np.ndarray) -> np.ndarray:
    if np.iscomplexobj(w):
        m = np.abs(w)
        ph = np.ones_like(w)
        nz = m > 0.0
        ph[nz] = w[nz] / m[nz]
        return ph
    return np.where(w < 0.0, -1.0, 1.0)


def _witness_from(w: np.ndarray, v: np.ndarray) -> GammaWitness:
    order_w = decreasing_argsort(w)
    order_v = decreasing_argsort(v)
    perm = np.empty(v.shape[0], dtype=np.int64)
    perm[order_w] = order_v
    # the image must carry the phases of w, so the witness first cancels
    # the phases v brings along
    signs = _unit_phases(w) * np.conj(_unit_phases(v)[perm])
    return GammaWitness(perm=perm, signs=signs)


ANNEAL_CHAINS = 6
ANNEAL_MOVES = 2500


def _value_of(cols: np.ndarray, image: np.ndarray) -> float:
    return float(np.linalg.norm(cols.conj().T @ image))


def _snap(cols, v_desc, v, image, max_iter, tol):
    """Ascend once from the projection direction of ``image``."""
    w = cols @ (cols.conj().T @ image)
    n = float(np.linalg.norm(w))
    if n <= 1e-14:
        return None
    start = (w / n)[None, :].astype(cols.dtype)
    w_new, _, _, status = _kernels.altmax_best(cols, v_desc, start, max_iter, tol)
    if status == 1:
        return None
    return _witness_from(np.asarray(w_new), v)


def _anneal_refine(cols, v, v_desc, witness, value, rng, max_iter, tol):
    """Annealed witness search seeded from the ascent result.

    The ascent's fixed points proliferate when the subspace dimension is
    close to the ambient one and their basins can be thin, so random
    restarts alone miss the optimum on a small but persistent fraction of
    instances.  Each chain anneals over the discrete witness space (swap
    moves with closed-form scalar updates, Metropolis acceptance) and its
    endpoint is snapped back onto a fixed point by one more ascent.
    """
    d = v.shape[0]
    cplx = np.iscomplexobj(cols) or np.iscomplexobj(v)
    scale = value
    if scale <= 0.0:
        scale = float(np.linalg.norm(v))
    if scale <= 0.0:
        return witness, value
    rows = np.ascontiguousarray(cols.conj())
    leverage = np.linalg.norm(cols, axis=1)
    best_wit, best_val = witness, value
    for c in range(ANNEAL_CHAINS):
        if c == 0:
            p0 = witness.perm
            s0 = witness.signs
        elif c == 1:
            # largest moduli onto the rows with most subspace weight
            p0 = np.empty(d, dtype=np.int64)
            p0[np.argsort(-leverage, kind="stable")] = decreasing_argsort(v)
            s0 = np.ones(d, dtype=cols.dtype)
        else:
            p0 = rng.permutation(d)
            if cplx:
                s0 = np.exp(2j * np.pi * rng.random(d))
            else:
                s0 = rng.choice(np.array([-1.0, 1.0]), size=d)
        pairs = rng.integers(0, d, size=(ANNEAL_MOVES, 2))
        scalar_move = rng.random(ANNEAL_MOVES) >= 0.7
        pairs[scalar_move, 1] = pairs[scalar_move, 0]
        acc_u = rng.random(ANNEAL_MOVES)
        p, s, _ = _kernels.anneal_best(
            rows, v, p0, s0, 0.25 * scale, 1e-5 * scale, pairs, acc_u
        )
        cand = GammaWitness(perm=np.asarray(p), signs=np.asarray(s))
        cand_val = _value_of(cols, cand.apply(v))
        if cand_val > best_val:
            best_wit, best_val = cand, cand_val
        snapped = _snap(cols, v_desc, v, cand.apply(v), max_iter, tol)
        if snapped is not None:
            snap_val = _value_of(cols, snapped.apply(v))
            if snap_val > best_val:
                best_wit, best_val = snapped, snap_val
    return best_wit, best_val


def width_altmax(
    basis: SubspaceBasis,
    v,
    restarts: int = 20,
    max_iter: int = 500,
    tol: float = 1e-10,
    seed=None,
    refine: str = "auto",
) -> WidthReport:
    """Alternating ascent estimate of the signed-permutation supremum.

    One start is deterministic (the normalized projection of ``v`` itself,
    which guarantees the result is at least ``||proj_W v||``); the remaining
    ``restarts - 1`` starts are random unit vectors of the subspace drawn
    from ``seed``.  Each ascent stops when the objective gains less than
    ``tol`` or after ``max_iter`` iterations.  The reported value is the
    projection norm of the witness image, so the witness reproduces it
    exactly.

    ``refine`` controls the annealed witness search that follows the
    ascent: ``"anneal"`` always runs it, ``"none"`` never does, and the
    default ``"auto"`` runs it for k >= 2, where ascent basins fragment.
    For k = 1 the ascent converges to the optimum from any start with
    positive projection, so refinement adds nothing there.
    """
    if restarts < 1:
        raise ValueError("need at least one restart")
    if refine not in ("auto", "anneal", "none"):
        raise ValueError("refine must be 'auto', 'anneal' or 'none'")
    v = _conform(basis, v)
    cols = basis.columns
    d, k = basis.d, basis.k
    rng = np.random.default_rng(seed)
    v_desc = decreasing_rearrangement(v)

    starts = np.empty((restarts, d), dtype=cols.dtype)
    p = cols @ (cols.conj().T @ v)
    pn = float(np.linalg.norm(p))
    have_det = pn > 1e-15
    n_random = restarts - 1 if have_det else restarts
    if have_det:
        starts[0] = p / pn
    for r in range(n_random):
        g = rng.standard_normal(k)
        if np.iscomplexobj(cols):
            g = g + 1j * rng.standard_normal(k)
        w = cols @ g
        wn = float(np.linalg.norm(w))
        while wn < 1e-12:  # pragma: no cover - measure-zero restart
            g = rng.standard_normal(k)
            if np.iscomplexobj(cols):
                g = g + 1j * rng.standard_normal(k)
            w = cols @ g
            wn = float(np.linalg.norm(w))
        starts[(1 if have_det else 0) + r] = w / wn

    w_best, _, iters, status = _kernels.altmax_best(
        cols, v_desc, starts, max_iter, tol
    )
    if status == 1:
        raise RuntimeError("alternating ascent objective decreased")
    witness = _witness_from(np.asarray(w_best), v)
    value = _value_of(cols, witness.apply(v))
    if refine == "anneal" or (refine == "auto" and k >= 2):
        witness, value = _anneal_refine(
            cols, v, v_desc, witness, value, rng, max_iter, tol
        )
    return WidthReport(
        value=value,
        method="altmax",
        restarts=restarts,
        iterations=int(iters),
        witness=witness,
    )


def width_orbit(basis: SubspaceBasis, orbit: Orbit) -> WidthReport:
    """Exact supremum of projection norms over an enumerated orbit."""
    if orbit.d != basis.d:
        raise ValueError("orbit and basis dimensions differ")
    coeffs = orbit.points @ basis.columns.conj()
    vals = np.linalg.norm(coeffs, axis=1)
    i = int(np.argmax(vals))
    return WidthReport(
        value=float(vals[i]),
        method="orbit",
        restarts=0,
        iterations=orbit.n,
        witness=orbit.points[i].copy(),
    )


def dom_sup(
    basis: SubspaceBasis,
    v,
    restarts: int = 20,
    max_iter: int = 500,
    tol: float = 1e-10,
    seed=None,
    refine: str = "auto",
) -> WidthReport:
    """Supremum of projection norms over the dominance cone of ``v``.

    The cone is the convex hull of the signed-permutation orbit and the
    projection norm is convex, so the supremum is attained at an orbit
    point and the ascent applies unchanged.
    """
    return width_altmax(
        basis,
        v,
        restarts=restarts,
        max_iter=max_iter,
        tol=tol,
        seed=seed,
        refine=refine,
    )


def altmax_evaluator(
    v,
    restarts: int = 20,
    max_iter: int = 500,
    tol: float = 1e-10,
    refine: str = "auto",
):
    """Evaluator computing the ascent width against a fixed vector."""

    def evaluate(basis: SubspaceBasis, rng) -> float:
        return width_altmax(
            basis,
            v,
            restarts=restarts,
            max_iter=max_iter,
            tol=tol,
            seed=rng,
            refine=refine,
        ).value

    return evaluate


def orbit_evaluator(orbit: Orbit):
    """Evaluator computing the exact width over an enumerated orbit."""

    def evaluate(basis: SubspaceBasis, rng) -> float:
        return width_orbit(basis, orbit).value

    return evaluate


def dom_evaluator(
    v,
    restarts: int = 20,
    max_iter: int = 500,
    tol: float = 1e-10,
    refine: str = "auto",
):
    """Evaluator computing the dominance-cone supremum against ``v``."""

    def evaluate(basis: SubspaceBasis, rng) -> float:
        return dom_sup(
            basis,
            v,
            restarts=restarts,
            max_iter=max_iter,
            tol=tol,
            seed=rng,
            refine=refine,
        ).value

    return evaluate


def estimate_f_integral(
    measure, evaluator, trials: int, seed
) -> FIntegralEstimate:
    """Monte-Carlo mean of the squared supremum under a subspace measure.

    Trial ``i`` draws its subspace and evaluates with the derived stream
    ``(seed, i)``, so the result is independent of evaluation order.
    ``seed`` may be an integer or a list of integers to derive from.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    base = list(seed) if isinstance(seed, (list, tuple)) else [seed]
    values = np.empty(trials, dtype=np.float64)
    for i in range(trials):
        rng = np.random.default_rng([*base, i])
        basis = measure.sample(rng)
        values[i] = evaluator(basis, rng) ** 2
    stderr = 0.0
    if trials > 1:
        stderr = float(values.std(ddof=1) / np.sqrt(trials))
    values.setflags(write=False)
    return FIntegralEstimate(
        mean=float(values.mean()), stderr=stderr, trials=trials, values=values
    )
