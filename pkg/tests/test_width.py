"""Width estimation: brute oracle, alternating ascent, orbit evaluation."""

import itertools

import numpy as np
import pytest

import cylwidth._kernels as kernels
from cylwidth.groups import GroupPresentation, enumerate_orbit
from cylwidth.measures import UniformMeasure, sample_uniform
from cylwidth.vectors import SubspaceBasis, decreasing_rearrangement, projection_norm
from cylwidth.width import (
    dom_sup,
    estimate_f_integral,
    orbit_evaluator,
    width_altmax,
    width_brute_signed_perm,
    width_orbit,
)


def test_brute_hand_checked_case():
    # W = span(e1) in R^2: the best signed permutation moves the larger
    # modulus into the first coordinate
    basis = SubspaceBasis(np.eye(2)[:, :1])
    v = np.array([0.3, -0.8])
    rep = width_brute_signed_perm(basis, v)
    assert abs(rep.value - 0.8) < 1e-15
    image = rep.witness.apply(v)
    assert abs(abs(image[0]) - 0.8) < 1e-15
    assert abs(projection_norm(basis, image) - rep.value) < 1e-15


def test_brute_rejects_complex_and_large_inputs():
    line = SubspaceBasis(np.eye(2)[:, :1])
    with pytest.raises(ValueError):
        width_brute_signed_perm(line.complexify(), np.array([1.0, 0.0]))
    with pytest.raises(ValueError):
        width_brute_signed_perm(SubspaceBasis(np.eye(9)[:, :1]), np.ones(9))


def test_rearrangement_pairing_dominates_every_group_element():
    rng = np.random.default_rng(0)
    d = 5
    for _ in range(5):
        v = rng.standard_normal(d)
        w = rng.standard_normal(d)
        pair = float(decreasing_rearrangement(v) @ decreasing_rearrangement(w))
        for perm in itertools.permutations(range(d)):
            pv = v[list(perm)]
            for signs in itertools.product((1.0, -1.0), repeat=d):
                assert abs(float(np.dot(np.asarray(signs) * pv, w))) <= pair + 1e-9


def test_ascent_within_brute_and_mostly_exact():
    hits = 0
    n = 60
    for i in range(n):
        rng = np.random.default_rng([70, i])
        d = int(rng.integers(3, 7))
        k = int(rng.integers(1, d))
        basis = sample_uniform(k, d, "real", seed=[71, i])
        v = rng.standard_normal(d)
        brute = width_brute_signed_perm(basis, v).value
        ascent = width_altmax(basis, v, restarts=12, seed=[72, i]).value
        assert ascent <= brute + 1e-9
        hits += abs(ascent - brute) <= 1e-9
    assert hits >= int(0.9 * n)


def test_ascent_witness_reproduces_value():
    rng = np.random.default_rng(2)
    basis = sample_uniform(3, 12, "complex", seed=5)
    v = rng.standard_normal(12) + 1j * rng.standard_normal(12)
    rep = width_altmax(basis, v, restarts=8, seed=3)
    image = rep.witness.apply(v)
    assert abs(rep.value - projection_norm(basis, image)) < 1e-12
    # the witness acts unitarily on moduli
    assert np.allclose(
        decreasing_rearrangement(image), decreasing_rearrangement(v)
    )
    # the deterministic start makes the plain projection a floor
    assert rep.value >= projection_norm(basis, v) - 1e-12
    assert rep.value <= float(np.linalg.norm(v)) + 1e-12


def test_ascent_deterministic():
    basis = sample_uniform(2, 10, "real", seed=1)
    v = np.random.default_rng(4).standard_normal(10)
    r1 = width_altmax(basis, v, seed=9)
    r2 = width_altmax(basis, v, seed=9)
    assert r1.value == r2.value
    assert np.array_equal(r1.witness.perm, r2.witness.perm)
    assert np.array_equal(r1.witness.signs, r2.witness.signs)
    with pytest.raises(ValueError):
        width_altmax(basis, v, restarts=0)


def test_kernel_paths_agree(monkeypatch):
    cases = []
    rng = np.random.default_rng(3)
    for field in ("real", "complex"):
        basis = sample_uniform(3, 20, field, seed=2)
        v = rng.standard_normal(20)
        if field == "complex":
            v = v + 1j * rng.standard_normal(20)
        fast = width_altmax(basis, v, restarts=10, seed=1, refine="none").value
        cases.append((basis, v, fast))
    monkeypatch.setattr(kernels, "USING_NUMBA", False)
    for basis, v, fast in cases:
        slow = width_altmax(basis, v, restarts=10, seed=1, refine="none").value
        assert abs(fast - slow) < 1e-12


@pytest.mark.skipif(not kernels.HAS_NUMBA, reason="needs both kernel paths")
def test_anneal_kernel_paths_agree_bitwise():
    # identical inputs must drive both implementations through the same
    # accept/reject sequence, so the endpoints agree exactly
    rng = np.random.default_rng(8)
    for field in ("real", "complex"):
        basis = sample_uniform(3, 7, field, seed=4)
        d = basis.d
        v = rng.standard_normal(d)
        s0 = np.ones(d)
        if field == "complex":
            v = v + 1j * rng.standard_normal(d)
            s0 = s0.astype(np.complex128)
        rows = basis.columns.conj()
        p0 = rng.permutation(d)
        pairs = rng.integers(0, d, size=(400, 2))
        acc = rng.random(400)
        slow = kernels._numpy_anneal_cplx if field == "complex" else (
            kernels._numpy_anneal_real
        )
        fast = kernels._numba_anneal_cplx if field == "complex" else (
            kernels._numba_anneal_real
        )
        args = lambda: (
            np.ascontiguousarray(rows),
            np.ascontiguousarray(v),
            p0.astype(np.int64),
            s0.copy(),
            0.3,
            1e-5,
            pairs.astype(np.int64),
            acc,
        )
        p_a, s_a, val_a = slow(*args())
        p_b, s_b, val_b = fast(*args())
        assert np.array_equal(p_a, p_b)
        if field == "real":
            assert np.array_equal(s_a, s_b)
            assert val_a == val_b
        else:
            # compiled complex division differs from numpy by ulps
            assert np.abs(s_a - s_b).max() < 1e-10
            assert abs(val_a - val_b) < 1e-10


def test_width_orbit_matches_manual_maximum():
    group = GroupPresentation.signed_permutations(3)
    orbit = enumerate_orbit(group, np.array([0.8, 0.5, 0.2]))
    basis = sample_uniform(1, 3, "real", seed=11)
    rep = width_orbit(basis, orbit)
    values = [projection_norm(basis, p) for p in orbit.points]
    assert abs(rep.value - max(values)) < 1e-12
    assert any(np.allclose(rep.witness, p) for p in orbit.points)
    with pytest.raises(ValueError):
        width_orbit(sample_uniform(1, 4, "real", seed=0), orbit)


def test_orbit_enumeration_equals_signed_perm_enumeration():
    group = GroupPresentation.signed_permutations(4)
    v = np.array([0.7, 0.5, 0.3, 0.2])
    orbit = enumerate_orbit(group, v)
    basis = sample_uniform(2, 4, "real", seed=13)
    assert (
        abs(width_orbit(basis, orbit).value - width_brute_signed_perm(basis, v).value)
        < 1e-9
    )


def test_dominance_cone_supremum_sits_on_the_orbit():
    # the projection norm is convex, so the cone supremum equals the
    # supremum over the generating orbit
    basis = sample_uniform(2, 5, "real", seed=17)
    v = np.random.default_rng(21).standard_normal(5)
    cone = dom_sup(basis, v, restarts=16, seed=2).value
    brute = width_brute_signed_perm(basis, v).value
    assert cone <= brute + 1e-9
    assert cone >= brute - 1e-8


def test_estimate_f_integral_deterministic_and_prefix_stable():
    mu = UniformMeasure(k=1, d=6, field="real")
    orbit = enumerate_orbit(
        GroupPresentation.signed_permutations(6), np.eye(6)[0]
    )
    evaluator = orbit_evaluator(orbit)
    est1 = estimate_f_integral(mu, evaluator, 40, seed=5)
    est2 = estimate_f_integral(mu, evaluator, 40, seed=5)
    assert est1.mean == est2.mean
    assert np.array_equal(est1.values, est2.values)
    assert est1.values.flags.writeable is False
    assert abs(est1.mean - float(est1.values.mean())) < 1e-15
    expected_stderr = float(est1.values.std(ddof=1) / np.sqrt(40))
    assert abs(est1.stderr - expected_stderr) < 1e-15
    single = estimate_f_integral(mu, evaluator, 1, seed=5)
    assert single.stderr == 0.0
    assert single.values[0] == est1.values[0]
    with pytest.raises(ValueError):
        estimate_f_integral(mu, evaluator, 0, seed=5)
