import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from models.errors import BranchCutError, HypothesisError, ParameterError
from models.hypergeometric import (J_PARAMS, LAMBDA_PARAMS, NU_PARAMS, STANDARD_TRIPLES, HGParams,
                                   SeriesConfig, connection_coefficients, euler_integral,
                                   gauss_limit, hg_basis, hg_principal, hg_series,
                                   hg_triple_is_log_case, ode_residual, wronskian_residual)
from models.identities import sample_grid
from models.modular import TH00, theta
from models.numcore import beta


NU_CONJUGATE = HGParams.of('1/6', '1/2', '2/3')
J_CONJUGATE = HGParams.of('1/12', '5/12', '1/2')


def _euler_f(p, z):
    """F through the f2 Euler integral, valid for z off [1, inf)."""
    a, _, c = p.complex_tuple()
    return euler_integral(p, z, 'f2') / beta(a, c - a)


def test_params_reject_nonpositive_integer_c():
    with pytest.raises(ParameterError):
        HGParams.of(1, 1, 0)
    with pytest.raises(ParameterError):
        HGParams.of('1/2', '1/2', -2)


def test_basis_hypotheses():
    for p in STANDARD_TRIPLES:
        p.check_basis_hypotheses()
    with pytest.raises(ParameterError):
        HGParams.of(1, '1/2', '3/2').check_basis_hypotheses()


def test_series_config_bounds():
    with pytest.raises(ValueError):
        SeriesConfig(rel_tol=1e-3)
    with pytest.raises(ValueError):
        SeriesConfig(max_terms=10)


@pytest.mark.parametrize('p', STANDARD_TRIPLES)
def test_series_at_zero(p):
    assert hg_series(p, 0) == 1


def test_series_at_half_is_theta_square():
    assert hg_series(LAMBDA_PARAMS, 0.5) == pytest.approx(theta(TH00, 1j) ** 2, rel=1e-13)
    assert theta(TH00, 1j) == pytest.approx(1.0864348112133080, rel=1e-14)


def test_series_matches_euler_integral():
    assert abs(hg_series(NU_PARAMS, 0.3) - _euler_f(NU_PARAMS, 0.3)) < 1e-9


def test_series_outside_disk():
    with pytest.raises(BranchCutError):
        hg_series(NU_PARAMS, 1.2)


@pytest.mark.parametrize('p,z', [
    (NU_PARAMS, -5),
    (J_PARAMS, 3 + 4j),
    (J_PARAMS, 2 + 0.5j),
    (NU_PARAMS, -20 + 1j),
    (LAMBDA_PARAMS, 0.95 + 0.3j),
    (LAMBDA_PARAMS, 0.9 - 0.2j),
    (NU_PARAMS, 1.3 + 0.2j),
    (J_PARAMS, -0.9 + 0.6j),
    (LAMBDA_PARAMS, 0.3),
    (LAMBDA_PARAMS, -3 + 2j),
    (LAMBDA_PARAMS, 5j),
    (NU_PARAMS, 0.7 + 0.6j),
    (NU_PARAMS, -0.5 - 0.5j),
    (NU_PARAMS, 1.2 - 0.8j),
    (J_PARAMS, -4),
    (J_PARAMS, 0.2 - 0.9j),
    (NU_CONJUGATE, 0.8 + 0.5j),
    (NU_CONJUGATE, -7 - 3j),
    (J_CONJUGATE, -2 + 1j),
    (J_CONJUGATE, 1.5 - 0.4j),
])
def test_principal_branch_matches_euler_integral(p, z):
    expected = _euler_f(p, z)
    assert abs(hg_principal(p, z) - expected) <= 1e-9 * max(1.0, abs(expected))


def test_principal_branch_cut():
    with pytest.raises(BranchCutError):
        hg_principal(NU_PARAMS, 1)
    with pytest.raises(BranchCutError):
        hg_principal(J_PARAMS, 7.5)


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=0.81, max_value=0.95), st.floats(min_value=-math.pi, max_value=math.pi),
       st.sampled_from(STANDARD_TRIPLES))
def test_principal_equals_series_inside_disk(r, phi, p):
    z = cmath.rect(r, phi)
    if z.imag == 0 and z.real >= 1:
        return
    direct = hg_series(p, z)
    assert abs(hg_principal(p, z) - direct) <= 1e-11 * abs(direct)


def _log_case_leading_term(p, w):
    """Leading behaviour of F(a, b, a+b; 1-w) as w -> 0."""
    a, b = float(p.a), float(p.b)
    psi = 2 * special.digamma(1) - special.digamma(a) - special.digamma(b)
    return special.gamma(a + b) / (special.gamma(a) * special.gamma(b)) * (psi - cmath.log(w))


@pytest.mark.parametrize('d', [1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10])
@pytest.mark.parametrize('p', [LAMBDA_PARAMS, NU_CONJUGATE, J_CONJUGATE])
def test_logarithmic_growth_near_one(p, d):
    z = 1 - d * (1 + 1j)
    value = hg_principal(p, z)
    assert cmath.isfinite(value)
    expected = _log_case_leading_term(p, 1 - z)
    assert abs(value - expected) <= 1e-4 * abs(expected)


@pytest.mark.parametrize('d', [1e-6, 1e-8, 1e-10])
def test_complete_elliptic_integral_near_one(d):
    z = 1 - d * (1 + 1j)
    w = 1 - z
    log_term = cmath.log(16 / w)
    # 2K/pi with the first correction in the complementary modulus
    expected = (log_term + w / 4 * (log_term - 2)) / math.pi
    assert abs(hg_principal(LAMBDA_PARAMS, z) - expected) <= 1e-8 * abs(expected)


def test_basis_near_zero_is_finite():
    for d in (1e-6, 1e-9):
        f1, f2 = hg_basis(LAMBDA_PARAMS, d * (1 - 1j))
        assert cmath.isfinite(f1) and cmath.isfinite(f2)
        assert f2 == pytest.approx(math.pi, rel=1e-5)


def test_connection_coefficients_match_gauss_limit():
    A, _ = connection_coefficients(NU_PARAMS)
    assert A == pytest.approx(gauss_limit(NU_PARAMS), rel=1e-13)


def test_log_case_detection():
    assert hg_triple_is_log_case(LAMBDA_PARAMS)
    assert not hg_triple_is_log_case(NU_PARAMS)
    assert hg_triple_is_log_case(HGParams.of('1/12', '5/12', '1/2'))


def test_basis_ratio_at_half():
    f1, f2 = hg_basis(LAMBDA_PARAMS, 0.5)
    assert f1 / f2 == pytest.approx(1j, abs=1e-14)


@pytest.mark.parametrize('p', [NU_PARAMS, J_PARAMS])
@pytest.mark.parametrize('z', [0.5, 0.3 + 0.2j, 0.6 - 0.1j])
def test_basis_matches_euler_integrals(p, z):
    f1, f2 = hg_basis(p, z)
    assert abs(f1 - euler_integral(p, z, 'f1')) <= 1e-9 * abs(f1)
    assert abs(f2 - euler_integral(p, z, 'f2')) <= 1e-9 * abs(f2)


def test_basis_near_one():
    f1, _ = hg_basis(J_PARAMS, 1 - 1e-9)
    expected = cmath.exp(11j * math.pi / 12) * special.beta(1 / 12, 5 / 12)
    assert abs(f1 - expected) <= 1e-8 * abs(expected)


def test_basis_rejects_integer_a():
    with pytest.raises(ParameterError):
        hg_basis(HGParams.of(1, '1/2', 2), 0.5)


def test_euler_integral_examples():
    assert euler_integral(LAMBDA_PARAMS, 0, 'f2') == pytest.approx(math.pi, rel=1e-12)
    expected = (cmath.exp(5j * math.pi / 6) * special.beta(1 / 6, 1 / 2)
                * hg_series(HGParams.of('1/6', '1/2', '2/3'), 0.5))
    assert abs(euler_integral(NU_PARAMS, 0.5, 'f1') - expected) <= 1e-9 * abs(expected)


def test_euler_integral_validates_path():
    with pytest.raises(ValueError):
        euler_integral(NU_PARAMS, 0.5, 'sideways')
    with pytest.raises(ParameterError):
        euler_integral(NU_PARAMS, 0.5 + 0.1j, 'zero_to_z')


def test_gauss_limit_values():
    g = special.gamma
    assert gauss_limit(NU_PARAMS) == pytest.approx(g(1 / 3) / (g(5 / 6) * g(1 / 2)), rel=1e-13)
    assert gauss_limit(J_PARAMS) == pytest.approx(g(1 / 2) / (g(11 / 12) * g(7 / 12)), rel=1e-13)
    with pytest.raises(HypothesisError):
        gauss_limit(LAMBDA_PARAMS)


def test_gauss_limit_approach():
    limit = gauss_limit(NU_PARAMS)
    leading = abs(special.gamma(-1 / 3) / (special.gamma(1 / 6) * special.gamma(1 / 2)))
    gaps = [abs(hg_principal(NU_PARAMS, 1 - eps) - limit) for eps in (1e-2, 1e-3, 1e-4)]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] == pytest.approx(0.019, abs=1e-3)
    for eps, gap in zip((1e-3, 1e-4), gaps[1:]):
        assert gap == pytest.approx(leading * eps ** (1 / 3), rel=0.05)


@pytest.mark.parametrize('p,z', [(LAMBDA_PARAMS, 0.5), (NU_PARAMS, 0.3), (J_PARAMS, 0.6)])
def test_wronskian_examples(p, z):
    assert wronskian_residual(p, z) < 1e-9


@pytest.mark.parametrize('p', STANDARD_TRIPLES)
def test_wronskian_on_lens_grid(p):
    for z in sample_grid('lens', 20, seed=7):
        assert wronskian_residual(p, z) < 1e-9


def test_wronskian_outside_lens():
    with pytest.raises(ParameterError):
        wronskian_residual(NU_PARAMS, -0.5)


@pytest.mark.parametrize('p,z', [(LAMBDA_PARAMS, 0.4), (NU_PARAMS, 0.2 + 0.3j), (J_PARAMS, -0.7j)])
def test_ode_residual(p, z):
    assert ode_residual(p, z) < 1e-10 * abs(hg_series(p, z))


def test_ode_residual_at_zero():
    assert ode_residual(NU_PARAMS, 0) < 1e-15
