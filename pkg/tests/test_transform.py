import csv
import io
import math
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from hyg.constructors import conjugacy_class_hypergroup, symmetric_group
from hyg.core import indicator, subhypergroups
from hyg.errors import DomainError, StructuralError
from hyg.spectral import dual
from hyg.transform import (
    ExponentPair,
    complexify,
    conjugate_exponent,
    f_star,
    fourier,
    holder_equality_check,
    hy_norms,
    hy_ratio,
    interpolation_exponent,
    inverse_fourier,
    lp_norm,
    omega,
    sgn,
    sweep,
    sweep_to_csv,
)

from conftest import random_complex

complex_vec = hnp.arrays(complex, 4, elements=st.complex_numbers(max_magnitude=10, allow_nan=False,
                                                                allow_infinity=False))


@pytest.mark.parametrize("p, q", [(1, math.inf), (1.5, 3.0), (2, 2.0), (4 / 3, 4.0), (math.inf, 1.0)])
def test_conjugate_exponent(p, q):
    assert conjugate_exponent(p) == pytest.approx(q)


@pytest.mark.parametrize("p", [0.5, 2.5, -1])
def test_exponent_pair_domain(p):
    with pytest.raises(DomainError):
        ExponentPair.from_p(p)


def test_interpolation_exponent_endpoints():
    assert interpolation_exponent(0) == 2.0
    assert interpolation_exponent(1 + 3j) == 1.0
    with pytest.raises(DomainError):
        interpolation_exponent(-1 + 2j)


def test_sgn_of_zero_is_zero():
    assert np.array_equal(sgn([0, 2, -3j]), np.array([0, 1, -1j]))


def test_fourier_inversion(member, rng):
    H, D = member
    f = random_complex(rng, H.n)
    assert np.allclose(inverse_fourier(H, D, fourier(H, D, f)), f, atol=1e-12)


def test_fourier_of_identity_point_mass_is_one(member):
    H, D = member
    f = np.zeros(H.n)
    f[H.identity] = 1
    assert np.allclose(fourier(H, D, f), 1.0)


@pytest.mark.parametrize("p", [1.0, 1.25, 1.5, 2.0])
def test_hy_bound_on_random_functions(member, rng, p):
    H, D = member
    for _ in range(20):
        assert hy_ratio(H, D, random_complex(rng, H.n), p) <= 1 + 1e-12


@lru_cache(maxsize=None)
def _s4():
    H = conjugacy_class_hypergroup(symmetric_group(4))
    return H, dual(H)


@given(complex_vec, st.floats(1.0, 2.0))
def test_hy_bound_property(values, p):
    H, D = _s4()
    f = np.concatenate([values, [0]])
    assume(np.any(np.abs(f) > 1e-100))
    assert hy_ratio(H, D, f, p) <= 1 + 1e-9


def test_ratio_is_scale_invariant(member, rng):
    H, D = member
    f = random_complex(rng, H.n)
    c = 3.7 * np.exp(0.4j)
    assert hy_ratio(H, D, c * f, 1.3) == pytest.approx(hy_ratio(H, D, f, 1.3), rel=1e-13)


def test_known_strict_inequality(registry, duals):
    H, D = registry["J(1/3)"], duals["J(1/3)"]
    # ‖χ_a‖_{4/3} = 3^{3/4}; f̂ = (3, −1) with π = (1/4, 3/4)
    norm_f, norm_hat = hy_norms(H, D, [0, 1], 4 / 3)
    assert norm_f == pytest.approx(3 ** 0.75, rel=1e-12)
    assert norm_hat == pytest.approx(21 ** 0.25, rel=1e-12)


def test_chi_of_subhypergroup_attains_equality(member):
    H, D = member
    for A in subhypergroups(H):
        for p in (1.0, 1.3, 1.7, 2.0):
            assert hy_ratio(H, D, indicator(H, A), p) == pytest.approx(1.0, abs=1e-12)


def test_lp_norm_basics():
    w = np.array([1.0, 2.0, 0.0])
    v = np.array([3.0, -4.0, 100.0])
    assert lp_norm(v, w, 1) == pytest.approx(11)
    assert lp_norm(v, w, 2) == pytest.approx(math.sqrt(41))
    assert lp_norm(v, w, math.inf) == 4.0
    with pytest.raises(DomainError):
        lp_norm(v, w, 0.5)
    with pytest.raises(StructuralError):
        lp_norm(v, w[:2], 2)


def test_zero_function_ratio_rejected(registry, duals):
    with pytest.raises(DomainError):
        hy_ratio(registry["Z2"], duals["Z2"], [0, 0], 1.5)


@given(complex_vec, st.floats(1.05, 1.95), st.floats(0, 1), st.floats(-3, 3))
def test_complexify_norm_identity(f, p, a, b):
    # ‖S_z f‖_{r(z)}^{r(z)} = ‖f‖_p^p on the strip
    w = np.array([1.0, 3.0, 2.0, 0.5])
    z = complex(a, b)
    r = interpolation_exponent(z)
    lhs = lp_norm(complexify(f, p, z), w, r) ** r
    rhs = lp_norm(f, w, p) ** p
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-200)


def test_complexify_identity_point():
    f = np.array([2 - 1j, 0, 0.5j])
    p = 1.4
    assert np.allclose(complexify(f, p, 2 / p - 1), f)


def test_f_star_has_conjugate_norm(member, rng):
    H, D = member
    f = random_complex(rng, H.n)
    p = 1.4
    q = conjugate_exponent(p)
    fs = f_star(H, D, f, p)
    assert lp_norm(fs, D.plancherel, p) ** p == pytest.approx(lp_norm(fourier(H, D, f), D.plancherel, q) ** q)


def test_f_star_domain(registry, duals):
    with pytest.raises(DomainError):
        f_star(registry["Z2"], duals["Z2"], [1, 0], 2.0)


def test_omega_at_real_point_is_dual_norm(member, rng):
    H, D = member
    f = random_complex(rng, H.n)
    p = 1.6
    value, scale = omega(H, D, f, p, 2 / p - 1)
    q = conjugate_exponent(p)
    assert value == pytest.approx(lp_norm(fourier(H, D, f * scale), D.plancherel, q) ** q, rel=1e-12)
    assert scale == pytest.approx(1 / lp_norm(f, H.haar, p))


def test_omega_bounded_on_strip(member, rng):
    H, D = member
    f = random_complex(rng, H.n)
    for a in np.linspace(0, 1, 5):
        for b in np.linspace(-2, 2, 5):
            value, _ = omega(H, D, f, 1.5, complex(a, b))
            assert abs(value) <= 1 + 1e-9


def test_holder_equality_detected():
    w = np.array([1.0, 2.0, 0.5])
    f = np.array([1.0, -2.0, 0.5j])
    p = 1.5
    g = np.abs(f) ** (p - 1) * sgn(np.conj(f))
    report = holder_equality_check(f, g, p, w)
    assert report.equality and report.pointwise_ok
    assert report.modulus == pytest.approx(report.bound)


def test_holder_strict_inequality():
    w = np.ones(3)
    report = holder_equality_check([1, 1, 0], [1, -1, 0], 2.0, w)
    assert not report.equality and report.pointwise_ok is None


def test_holder_p_equal_one():
    w = np.array([1.0, 1.0, 1.0])
    f = np.array([2.0, -1.0, 0.0])
    g = np.array([1.0, -1.0, 0.3])
    report = holder_equality_check(f, g, 1.0, w)
    assert report.equality and report.pointwise_ok


def test_holder_shape_mismatch():
    with pytest.raises(StructuralError):
        holder_equality_check([1, 2], [1, 2, 3], 2.0, [1, 1])


def test_sweep_csv(registry, duals):
    H, D = registry["J(1/3)"], duals["J(1/3)"]
    rows = sweep(H, D, [0, 1], [1.0, 4 / 3, 2.0])
    assert rows[1][1] == pytest.approx(21 ** 0.25 / 3 ** 0.75)
    assert rows[2][1] == pytest.approx(1.0)
    parsed = list(csv.DictReader(io.StringIO(sweep_to_csv(rows))))
    assert list(parsed[0]) == ["p", "ratio", "gap"]
    assert float(parsed[1]["ratio"]) == rows[1][1]
