import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chgeo import classifier, jacobi
from chgeo.errors import FocalPointError, ValidationError
from chgeo.profiles import HopfAttitude, PrincipalProfile

R_STAR = jacobi.EXCEPTIONAL_RADIUS
SQ2, SQ3, SQ6 = math.sqrt(2.0), math.sqrt(3.0), math.sqrt(6.0)


@pytest.fixture(scope="module")
def iso_profile():
    return classifier.branch_profile(classifier.solve_case_one(), 3, m1=2)


@pytest.fixture(scope="module")
def frame(iso_profile):
    return jacobi.normal_frame(iso_profile)


# ---------------------------------------------------------------------------
# scalar coefficients
# ---------------------------------------------------------------------------


def test_exceptional_radius_hyperbolic_values():
    assert math.cosh(R_STAR / 2.0) == pytest.approx(SQ6 / 2.0, abs=1e-15)
    assert math.sinh(R_STAR / 2.0) == pytest.approx(SQ2 / 2.0, abs=1e-15)
    assert math.tanh(R_STAR / 2.0) == pytest.approx(1.0 / SQ3, abs=1e-14)


def test_initial_conditions_of_modes():
    mode = jacobi.jacobi_mode(0.7, 0.3, 0.0)
    assert mode.value == (1.0, 0.0)
    assert mode.derivative == (-0.7, 0.0)


def test_transverse_collapse_at_exceptional_radius():
    """The sqrt(3)/2 mode vanishes exactly at the exceptional distance."""
    assert abs(jacobi.transverse_coefficient(SQ3 / 2.0, R_STAR)) <= 1e-15
    assert jacobi.transverse_coefficient_dt(SQ3 / 2.0, R_STAR) == pytest.approx(
        -1.0 / SQ2, abs=1e-15
    )


def test_axis_class_coefficient_at_exceptional_radius():
    # sqrt(3)/6 mode: value sqrt(6)/3 with stationary derivative
    assert jacobi.transverse_coefficient(SQ3 / 6.0, R_STAR) == pytest.approx(
        SQ6 / 3.0, abs=1e-15
    )
    assert abs(jacobi.transverse_coefficient_dt(SQ3 / 6.0, R_STAR)) <= 1e-15


@given(
    lam=st.floats(min_value=-1.0, max_value=1.0),
    t=st.floats(min_value=-3.0, max_value=3.0),
)
@settings(max_examples=200, deadline=None)
def test_axis_coefficient_is_mode_sum(lam, t):
    """f + g collapses to the pure axis evolution cosh(t) - lam sinh(t)."""
    total = jacobi.transverse_coefficient(lam, t) + jacobi.hopf_coefficient(lam, t)
    assert total == pytest.approx(jacobi.axis_coefficient(lam, t), abs=1e-10)


@given(
    lam=st.floats(min_value=-1.0, max_value=1.0),
    w=st.floats(min_value=-1.0, max_value=1.0),
    t=st.floats(min_value=0.1, max_value=3.0),
)
@settings(max_examples=100, deadline=None)
def test_closed_form_satisfies_field_equation(lam, w, t):
    h = np.longdouble(1e-4)
    lam_l, w_l, t_l = np.longdouble(lam), np.longdouble(w), np.longdouble(t)
    vals = {}
    for step in (-1, 0, 1):
        tt = t_l + step * h
        f = jacobi.transverse_coefficient(lam_l, tt)
        g = jacobi.hopf_coefficient(lam_l, tt)
        vals[step] = np.array([f, w_l * g], dtype=np.longdouble)
    second = (vals[1] - 2.0 * vals[0] + vals[-1]) / h**2
    axis = vals[0][0] * w_l + vals[0][1]
    rhs = np.array([vals[0][0], vals[0][1] + 3.0 * axis], dtype=np.longdouble)
    assert float(np.linalg.norm((4.0 * second - rhs).astype(float))) <= 1e-6


# ---------------------------------------------------------------------------
# full fields and the numerical oracle
# ---------------------------------------------------------------------------


def test_zero_vector_gives_zero_field(frame):
    value, deriv = jacobi.jacobi_field(frame, np.zeros(6), 1.3)
    assert np.linalg.norm(value) == 0.0
    assert np.linalg.norm(deriv) == 0.0


def test_field_initial_conditions(frame):
    rng = np.random.default_rng(5)
    v = rng.standard_normal(6)
    v[0] = 0.0
    value, deriv = jacobi.jacobi_field(frame, v, 0.0)
    expected_deriv = -sum(
        lam * (row @ v) * row for lam, row in zip(frame.lambdas, frame.basis)
    )
    assert np.linalg.norm(value - v) <= 1e-14
    assert np.linalg.norm(deriv - expected_deriv) <= 1e-14


def test_numeric_matches_transverse_closed_form():
    d = 6
    jc = np.eye(d)[1]
    v = np.eye(d)[2]
    z, zp = jacobi.jacobi_numeric(v, np.zeros(d), jc, 1.0, 1e-3)
    assert np.linalg.norm(z - math.cosh(0.5) * v) <= 1e-8
    assert np.linalg.norm(zp - 0.5 * math.sinh(0.5) * v) <= 1e-8


@pytest.mark.parametrize("lam", [-0.8, 0.0, 0.5, 1.0])
def test_numeric_matches_axis_closed_form(lam):
    """On the Jc-line with derivative -lam v the coefficient is cosh - lam sinh."""
    d = 6
    jc = np.eye(d)[1]
    z, zp = jacobi.jacobi_numeric(jc, -lam * jc, jc, 1.0, 1e-3)
    assert np.linalg.norm(z - (math.cosh(1.0) - lam * math.sinh(1.0)) * jc) <= 1e-8
    assert np.linalg.norm(zp - (math.sinh(1.0) - lam * math.cosh(1.0)) * jc) <= 1e-8


def test_numeric_zero_time_returns_inputs():
    d = 6
    jc = np.eye(d)[1]
    v0 = np.arange(d, dtype=float)
    v0p = -v0
    z, zp = jacobi.jacobi_numeric(v0, v0p, jc, 0.0, 1e-3)
    assert np.array_equal(z, v0) and np.array_equal(zp, v0p)


def test_numeric_rejects_bad_step():
    with pytest.raises(ValueError):
        jacobi.jacobi_numeric(np.zeros(6), np.zeros(6), np.eye(6)[1], 1.0, 0.0)


def test_closed_form_matches_numeric_on_random_cases(frame):
    rng = np.random.default_rng(321)
    jc = frame.jxi
    for _ in range(20):
        v = rng.standard_normal(6)
        v[0] = 0.0
        t = float(rng.uniform(0.0, 3.0))
        v0, v0p = jacobi.jacobi_field(frame, v, 0.0)
        z, zp = jacobi.jacobi_numeric(v0, v0p, jc, t, 1e-3)
        value, deriv = jacobi.jacobi_field(frame, v, t)
        assert np.linalg.norm(z - value) <= 1e-8
        assert np.linalg.norm(zp - deriv) <= 1e-8


def test_propagator_blocks_reproduce_mode_functions():
    from chgeo.ambient import CurvatureModel

    model = CurvatureModel(3)
    nu = np.eye(6)[0]
    t = 1.7
    cos_, sin_, cos_dt, sin_dt = jacobi.curvature_propagator(model, nu, t)
    v = np.eye(6)[2]  # transverse to the J-line
    lam = 0.45
    out = cos_ @ v + sin_ @ (-lam * v)
    assert np.linalg.norm(
        out - jacobi.transverse_coefficient(lam, t) * v
    ) <= 1e-12
    jn = np.eye(6)[1]
    out_axis = cos_ @ jn + sin_ @ (-lam * jn)
    assert np.linalg.norm(out_axis - jacobi.axis_coefficient(lam, t) * jn) <= 1e-12


# ---------------------------------------------------------------------------
# transversal map
# ---------------------------------------------------------------------------


def test_zero_distance_is_identity(iso_profile):
    focal = jacobi.transversal_map(iso_profile, 0.0)
    assert focal.kernel_dim == 0
    assert np.allclose(focal.d_block, np.eye(2), atol=1e-15)
    assert np.allclose(
        focal.phi.T @ focal.phi, np.eye(focal.phi.shape[1]), atol=1e-14
    )


def test_repeated_carrier_collapse(iso_profile):
    focal = jacobi.transversal_map(iso_profile, R_STAR)
    nine = 9.0 * focal.d_block
    assert nine[0, 0] == pytest.approx(4.0, abs=1e-12)
    assert nine[0, 1] == pytest.approx(SQ2, abs=1e-12)
    assert nine[1, 0] == pytest.approx(4.0 * SQ2 - 2.0 * SQ3, abs=1e-12)
    assert nine[1, 1] == pytest.approx(2.0 + 4.0 * SQ6, abs=1e-12)
    assert focal.kernel_dim == iso_profile.multiplicity(SQ3 / 2.0) - 1
    assert focal.rank == 4
    assert focal.image_codim == iso_profile.multiplicity(SQ3 / 2.0)
    svals = focal.singular_values
    assert np.sum(svals <= 1e-12) == focal.kernel_dim
    assert svals[svals > 1e-12].min() >= 0.1


def _mult_near(entries, lam, tol=1e-9):
    return next(m for value, m in entries if abs(value - lam) <= tol)


def test_repeated_carrier_collapse_larger_multiplicity():
    profile = classifier.branch_profile(classifier.solve_case_one(), 4, m1=3)
    focal = jacobi.transversal_map(profile, R_STAR)
    assert focal.kernel_dim == 2
    assert focal.image_codim == 3
    image = jacobi.image_shape_operator(focal)
    assert _mult_near(image.entries, 0.0) == 2 * 4 - 3 - 2


def test_image_shape_block(iso_profile):
    focal = jacobi.transversal_map(iso_profile, R_STAR)
    image = jacobi.image_shape_operator(focal)
    expected = np.array([[4.0 * SQ2, -7.0], [-7.0, -4.0 * SQ2]]) / 18.0
    assert np.max(np.abs(image.carrier_block - expected)) <= 1e-12
    eig = np.sort(np.linalg.eigvalsh(image.carrier_block))
    assert np.allclose(eig, [-0.5, 0.5], atol=1e-12)
    assert abs(image.axis_rate) <= 1e-12
    assert sorted(dict(image.entries)) == pytest.approx([-0.5, 0.0, 0.5], abs=1e-12)


@pytest.mark.parametrize(
    "lam3",
    [s * 0.05 * j for j in range(1, 10) for s in (1.0, -1.0)],
)
def test_carrier_block_identities(lam3):
    branch = classifier.solve_case_two(lam3).branch
    r = 2.0 * math.atanh(2.0 * lam3)
    focal = jacobi.transversal_map(classifier.branch_profile(branch, 3), r)
    sech = 1.0 / math.cosh(r / 2.0)
    assert abs(focal.det_d - sech**3) <= 1e-10
    C = focal.c_block
    assert abs(np.trace(C)) <= 1e-10
    assert abs(np.linalg.det(C) + 0.25) <= 1e-10
    eig = np.sort(np.linalg.eigvals(C).real)
    assert np.allclose(eig, [-0.5, 0.5], atol=1e-9)


def test_block_determinant_is_stationary_at_matched_distance():
    lam3 = 0.3
    branch = classifier.solve_case_two(lam3).branch
    profile = classifier.branch_profile(branch, 3)
    r = 2.0 * math.atanh(2.0 * lam3)
    h = 1e-4
    det_plus = jacobi.transversal_map(profile, r + h).det_d
    det_minus = jacobi.transversal_map(profile, r - h).det_d
    assert abs((det_plus - det_minus) / (2.0 * h)) <= 1e-6


def test_image_spectrum_of_parametric_branch():
    lam3 = 0.2
    branch = classifier.solve_case_two(lam3).branch
    r = 2.0 * math.atanh(2.0 * lam3)
    focal = jacobi.transversal_map(classifier.branch_profile(branch, 3), r)
    image = jacobi.image_shape_operator(focal)
    assert [m for _, m in image.entries] == [1, 3, 1]
    assert [lam for lam, _ in image.entries] == pytest.approx(
        [-0.5, 0.0, 0.5], abs=1e-10
    )


def test_signed_distance_supported():
    lam3 = -0.2
    branch = classifier.solve_case_two(lam3).branch
    r = 2.0 * math.atanh(2.0 * lam3)
    assert r < 0
    focal = jacobi.transversal_map(classifier.branch_profile(branch, 3), r)
    image = jacobi.image_shape_operator(focal)
    assert sorted(dict(image.entries)) == pytest.approx([-0.5, 0.0, 0.5], abs=1e-10)


def test_singular_carrier_block_reports_focal_point():
    """A fully one-sided projection can make the carrier block singular.

    With the whole J-image on one carrier of curvature coth(1), the
    carrier entry is the axis coefficient cosh(t) - coth(1) sinh(t),
    which vanishes at distance one.
    """
    lam1 = 1.0 / math.tanh(1.0)
    entries = ((0.0, 3), (lam1, 1), (2.0 * lam1, 1))
    hopf = HopfAttitude(b1=1.0, b2=0.0, lam1=lam1, lam2=2.0 * lam1)
    profile = PrincipalProfile(entries=entries, total_dim=5, hopf=hopf)
    focal = jacobi.transversal_map(profile, 1.0)
    assert focal.kernel_dim == 1
    with pytest.raises(FocalPointError):
        _ = focal.c_block
    with pytest.raises(FocalPointError):
        jacobi.image_shape_operator(focal)


def test_frame_requires_carrier_data():
    profile = PrincipalProfile(entries=((0.0, 3), (1.0, 1), (2.0, 1)), total_dim=5)
    with pytest.raises(ValidationError):
        jacobi.normal_frame(profile)


def test_frame_rejects_inconsistent_multiplicities():
    hopf = HopfAttitude(b1=0.6, b2=0.8, lam1=1.0, lam2=2.0)
    profile = PrincipalProfile(
        entries=((0.0, 1), (1.0, 3), (2.0, 1)), total_dim=5, hopf=hopf
    )
    with pytest.raises(ValidationError):
        jacobi.normal_frame(profile)
