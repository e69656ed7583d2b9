"""Finite unitary group presentations, orbits, and closure enumeration.

A group is given by explicit unitary generator matrices (or symbolically as
the full signed permutation group of the coordinate axes, which expands to
three standard generators).  Orbits and element closures are computed by
breadth-first search; points are deduplicated by rounding coordinates to
1e-8 and hashing, so generators whose orbits contain pairs closer than
that resolution are outside the supported domain.

JSON wire format, loadable by :func:`load_group_json`::

    {"d": 3,
     "kind": "EXPLICIT",
     "generators": [ [[[re, im], ...d entries...], ...d rows...], ... ]}

``kind`` may also be ``"SIGNED_PERMUTATIONS"``, in which case the
``generators`` field is ignored and the standard generators are built from
``d`` alone.  Matrices whose imaginary parts are all zero are stored as
real arrays.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import GroupTooLargeError, OrbitTooLargeError

__all__ = [
    "GroupPresentation",
    "Orbit",
    "enumerate_orbit",
    "enumerate_group_elements",
    "signed_permutation_apply",
    "signed_permutation_generators",
    "group_from_dict",
    "load_group_json",
]

UNITARY_TOL = 1e-9
DEDUP_DECIMALS = 8


def _round_key(a: np.ndarray) -> bytes:
    r = np.round(a, DEDUP_DECIMALS)
    if np.iscomplexobj(r):
        r = np.ascontiguousarray(r).view(np.float64)
    r = r + 0.0  # normalize -0.0
    return r.tobytes()


def signed_permutation_generators(d: int) -> list[np.ndarray]:
    """Standard generators of the signed permutation group on R^d."""
    if d < 1:
        raise ValueError("dimension must be positive")
    flip = np.eye(d)
    flip[0, 0] = -1.0
    gens = [flip]
    if d >= 2:
        swap = np.eye(d)
        swap[[0, 1]] = swap[[1, 0]]
        gens.append(swap)
    if d >= 3:
        cycle = np.zeros((d, d))
        for i in range(d):
            cycle[i, (i + 1) % d] = 1.0
        gens.append(cycle)
    return gens


@dataclass(frozen=True)
class GroupPresentation:
    """Unitary generators acting on C^d (or R^d when all entries are real)."""

    d: int
    generators: tuple
    kind: str = "explicit"

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be positive")
        if not self.generators:
            raise ValueError("at least one generator required")
        gens = []
        for g in self.generators:
            a = np.asarray(g)
            if np.iscomplexobj(a):
                a = np.ascontiguousarray(a, dtype=np.complex128)
            else:
                a = np.ascontiguousarray(a, dtype=np.float64)
            if a.shape != (self.d, self.d):
                raise ValueError(
                    f"generator shape {a.shape} does not match d={self.d}"
                )
            err = float(np.max(np.abs(a @ a.conj().T - np.eye(self.d))))
            if err > UNITARY_TOL:
                raise ValueError(f"generator is not unitary (deviation {err:.3e})")
            a.setflags(write=False)
            gens.append(a)
        object.__setattr__(self, "generators", tuple(gens))

    @classmethod
    def signed_permutations(cls, d: int) -> "GroupPresentation":
        return cls(
            d=d,
            generators=tuple(signed_permutation_generators(d)),
            kind="signed_permutations",
        )

    @property
    def field(self) -> str:
        if any(np.iscomplexobj(g) for g in self.generators):
            return "complex"
        return "real"


@dataclass(frozen=True)
class Orbit:
    """Finite set of points of equal Euclidean norm; the first is the base."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points)
        if pts.ndim != 2 or pts.shape[0] < 1:
            raise ValueError("orbit needs a nonempty (n, d) point array")
        if np.iscomplexobj(pts):
            pts = np.ascontiguousarray(pts, dtype=np.complex128)
        else:
            pts = np.ascontiguousarray(pts, dtype=np.float64)
        norms = np.linalg.norm(pts, axis=1)
        if float(np.max(np.abs(norms - norms[0]))) > 1e-9:
            raise ValueError("orbit points must share a common norm")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    @property
    def base_point(self) -> np.ndarray:
        return self.points[0]


def enumerate_orbit(group: GroupPresentation, v, max_size: int = 10_000) -> Orbit:
    """Closure of ``v`` under the generators, as an :class:`Orbit`.

    Raises :class:`OrbitTooLargeError` as soon as the closure exceeds
    ``max_size`` points.  For a finite group the generator semigroup equals
    the group, so no explicit inverses are needed.
    """
    v = np.asarray(v)
    if v.shape != (group.d,):
        raise ValueError(f"base point must have shape ({group.d},)")
    if group.field == "complex" or np.iscomplexobj(v):
        v = v.astype(np.complex128)
    else:
        v = v.astype(np.float64)
    points = [v]
    seen = {_round_key(v)}
    frontier = [v]
    while frontier:
        new = []
        for x in frontier:
            for g in group.generators:
                y = g @ x
                key = _round_key(y)
                if key in seen:
                    continue
                seen.add(key)
                points.append(y)
                new.append(y)
                if len(points) > max_size:
                    raise OrbitTooLargeError(
                        f"orbit exceeded cap of {max_size} points"
                    )
        frontier = new
    return Orbit(np.array(points))


def enumerate_group_elements(
    group: GroupPresentation, max_size: int = 10_000
) -> list[np.ndarray]:
    """All group elements by breadth-first closure of the generators.

    Raises :class:`GroupTooLargeError` beyond ``max_size`` elements.
    """
    eye = np.eye(group.d)
    if group.field == "complex":
        eye = eye.astype(np.complex128)
    elements = [eye]
    seen = {_round_key(eye)}
    frontier = [eye]
    while frontier:
        new = []
        for x in frontier:
            for g in group.generators:
                y = g @ x
                key = _round_key(y)
                if key in seen:
                    continue
                seen.add(key)
                elements.append(y)
                new.append(y)
                if len(elements) > max_size:
                    raise GroupTooLargeError(
                        f"group exceeded cap of {max_size} elements"
                    )
        frontier = new
    return elements


def signed_permutation_apply(perm, signs, v) -> np.ndarray:
    """Apply the signed permutation ``(gv)_i = signs[i] * v[perm[i]]``.

    ``perm`` must be a permutation of ``range(d)`` and every sign must have
    unit modulus within 1e-9 (so the map is unitary).
    """
    perm = np.asarray(perm)
    signs = np.asarray(signs)
    v = np.asarray(v)
    d = v.shape[0]
    if perm.shape != (d,) or signs.shape != (d,):
        raise ValueError("perm, signs, and v must share one length")
    if not np.array_equal(np.sort(perm), np.arange(d)):
        raise ValueError("perm is not a permutation of range(d)")
    if float(np.max(np.abs(np.abs(signs) - 1.0))) > 1e-9:
        raise ValueError("signs must have unit modulus")
    return signs * v[perm]


def group_from_dict(obj: dict) -> GroupPresentation:
    """Build a presentation from the JSON wire format."""
    try:
        d = int(obj["d"])
        kind = str(obj["kind"]).lower()
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed group object: {exc}") from exc
    if kind == "signed_permutations":
        return GroupPresentation.signed_permutations(d)
    if kind != "explicit":
        raise ValueError(f"unknown group kind {obj['kind']!r}")
    raw = obj.get("generators")
    if not raw:
        raise ValueError("explicit group needs a nonempty generators list")
    gens = []
    for idx, g in enumerate(raw):
        a = np.asarray(g, dtype=np.float64)
        if a.shape != (d, d, 2):
            raise ValueError(
                f"generator {idx} must be a {d}x{d} matrix of [re, im] "
                f"pairs, got array of shape {a.shape}"
            )
        m = a[..., 0] + 1j * a[..., 1]
        if not np.any(a[..., 1]):
            m = m.real
        gens.append(m)
    return GroupPresentation(d=d, generators=tuple(gens), kind="explicit")


def load_group_json(path) -> GroupPresentation:
    """Load a presentation from a JSON file; parse errors carry positions."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise ValueError(f"{path}: expected a JSON object at top level")
    return group_from_dict(obj)
