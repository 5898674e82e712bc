import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from models.errors import BranchCutError, CuspError
from models.hypergeometric import J_PARAMS, LAMBDA_PARAMS, NU_PARAMS
from models.identities import sample_grid
from models.numcore import OMEGA
from models.schwarz import (I_INFINITY, SchwarzId, inverse_map, roundtrip_residual, schwarz_map,
                            schwarz_params, schwarz_triangle, vertex_limits)

interval = st.floats(min_value=0.01, max_value=0.99)


def test_params():
    assert schwarz_params('phi0') == LAMBDA_PARAMS
    assert schwarz_params(SchwarzId.phi1) == NU_PARAMS
    assert schwarz_params('phi2') == J_PARAMS


def test_phi0_at_half():
    assert schwarz_map('phi0', 0.5) == pytest.approx(1j, abs=1e-14)


def test_phi1_tends_to_omega():
    assert schwarz_map('phi1', 1 - 1e-15) == pytest.approx(OMEGA, abs=1e-4)


def test_phi2_tends_to_i():
    assert schwarz_map('phi2', 1 - 1e-12) == pytest.approx(1j, abs=1e-4)


def test_vertex_limits():
    assert vertex_limits('phi0') == (I_INFINITY, 0, 1)
    assert vertex_limits('phi1') == (I_INFINITY, OMEGA, -OMEGA ** 2)
    assert vertex_limits('phi2') == (I_INFINITY, 1j, -OMEGA ** 2)


@pytest.mark.parametrize('sid', list(SchwarzId))
def test_cusp_approached_from_the_lens(sid):
    heights = [schwarz_map(sid, t * (1 + 1j)).imag for t in (1e-4, 1e-8, 1e-12)]
    assert heights[0] < heights[1] < heights[2]


@pytest.mark.parametrize('d', [1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10])
def test_phi0_near_the_cusp(d):
    # phi0(z) ~ (i/pi) log(16/z) as z -> 0
    tau = schwarz_map('phi0', d * (1 + 1j))
    expected = complex(0.25, math.log(16 / (d * math.sqrt(2))) / math.pi)
    assert tau == pytest.approx(expected, abs=1e-3)


@pytest.mark.parametrize('sid', list(SchwarzId))
@pytest.mark.parametrize('d', [1e-6, 1e-8, 1e-10])
def test_cusp_side_stays_in_upper_half_plane(sid, d):
    for z in (d * (1 + 1j), d * (1 - 1j)):
        tau = schwarz_map(sid, z)
        assert math.isfinite(tau.real) and tau.imag > 1


def test_cusp():
    with pytest.raises(CuspError):
        schwarz_map('phi0', 0)


def test_branch_cut():
    with pytest.raises(BranchCutError):
        schwarz_map('phi1', 1.5)


def test_triangles():
    assert schwarz_triangle('phi1').vertices == (I_INFINITY, OMEGA, -OMEGA ** 2)
    assert schwarz_triangle('phi0').angles == (0, 0, 0)
    assert schwarz_triangle('phi2').contains(0.25 + 1.5j)
    assert not schwarz_triangle('phi2').contains(-0.25 + 1.5j)


@pytest.mark.parametrize('sid,z', [('phi0', 0.3), ('phi1', 0.5), ('phi2', 0.2 + 0.1j)])
def test_roundtrip_examples(sid, z):
    assert roundtrip_residual(sid, z) < 1e-8


@pytest.mark.parametrize('sid', list(SchwarzId))
def test_roundtrip_on_lens_grid(sid):
    for z in sample_grid('lens', 30, seed=11):
        assert roundtrip_residual(sid, z) < 1e-8


@settings(max_examples=30, deadline=None)
@given(interval)
def test_phi0_is_imaginary_on_interval(x):
    assert abs(schwarz_map('phi0', x).real) < 1e-10


@settings(max_examples=30, deadline=None)
@given(interval)
def test_phi1_on_interval_has_real_part_minus_half(x):
    assert abs(schwarz_map('phi1', x).real + 0.5) < 1e-10


@pytest.mark.parametrize('sid', list(SchwarzId))
def test_upper_lens_lands_in_triangle(sid):
    tri = schwarz_triangle(sid)
    for z in sample_grid('lens', 30, seed=3):
        if z.imag > 0:
            assert tri.contains(schwarz_map(sid, z), closed=True, margin=1e-9)


def test_inverse_map_kinds():
    tau = 0.1 + 1.3j
    assert inverse_map('phi2', tau) * inverse_map('phi1', tau) != 0
    assert math.isfinite(abs(inverse_map('phi0', tau)))
