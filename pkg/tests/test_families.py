import math

import numpy as np
import pytest

from chgeo import classifier, families, jacobi, solvable
from chgeo.errors import FocalRadiusError, OpenCaseError, UnsupportedModelError

R_STAR = jacobi.EXCEPTIONAL_RADIUS
SQ3 = math.sqrt(3.0)


def coth(x):
    return 1.0 / math.tanh(x)


# ---------------------------------------------------------------------------
# tube spectra against closed-form oracles
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("r", [0.4, 1.0, 2.3])
def test_geodesic_sphere_spectrum(r):
    """Sphere w.r.t. the outward normal: -(1/2)coth(r/2) and -coth(r)."""
    profile = families.tube_spectrum("point", 3, r=r)
    expected = sorted([(-coth(r), 1), (-0.5 * coth(r / 2.0), 4)])
    assert profile.g == 2
    for (lam, mult), (elam, emult) in zip(profile.entries, expected):
        assert lam == pytest.approx(elam, abs=1e-12)
        assert mult == emult


@pytest.mark.parametrize("n,k,r", [(3, 1, 1.0), (4, 2, 0.8), (4, 1, 2.0)])
def test_complex_base_tube_spectrum(n, k, r):
    profile = families.tube_spectrum("CHk", n, k=k, r=r)
    expected = sorted(
        [
            (-0.5 * math.tanh(r / 2.0), 2 * k),
            (-0.5 * coth(r / 2.0), 2 * (n - k) - 2),
            (-coth(r), 1),
        ]
    )
    got = sorted(profile.entries)
    assert [m for _, m in got] == [m for _, m in expected]
    for (lam, _), (elam, _) in zip(got, expected):
        assert lam == pytest.approx(elam, abs=1e-12)


def test_complex_hyperplane_tube_has_two_curvatures():
    profile = families.tube_spectrum("CHk", 3, k=2, r=1.0)
    assert profile.g == 2


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
def test_real_base_tube_spectrum(r):
    n = 3
    profile = families.tube_spectrum("RHn", n, r=r)
    expected = sorted(
        [
            (-math.tanh(r), 1),
            (-0.5 * math.tanh(r / 2.0), n - 1),
            (-0.5 * coth(r / 2.0), n - 1),
        ]
    )
    got = sorted(profile.entries)
    for (lam, mult), (elam, emult) in zip(got, expected):
        assert lam == pytest.approx(elam, abs=1e-12)
        assert mult == emult
    assert profile.g == 3


def test_real_base_tube_merges_exactly_at_exceptional_radius():
    assert families.tube_spectrum("RHn", 3, r=R_STAR).g == 2
    for r in (R_STAR - 0.05, R_STAR + 0.05, 0.5, 1.0):
        assert families.tube_spectrum("RHn", 3, r=r).g == 3


def test_ruled_base_tube_counts():
    assert families.tube_spectrum("Wk", 3, k=2, r=1.0).g == 4
    assert families.tube_spectrum("Wk", 3, k=2, r=R_STAR).g == 3
    assert families.tube_spectrum("Wk", 4, k=3, r=R_STAR).g == 3


def test_ruled_base_tube_exceptional_values():
    profile = families.tube_spectrum("Wk", 3, k=2, r=R_STAR)
    entries = dict(profile.entries)
    lams = sorted(entries)
    assert lams == pytest.approx([-SQ3 / 2.0, -SQ3 / 6.0, 0.0], abs=1e-12)
    assert entries[lams[0]] == 2  # merged carrier + sphere class, k of them
    assert entries[lams[1]] == 2  # 2n - k - 2
    assert entries[lams[2]] == 1


def test_ruled_base_tube_matches_isolated_branch_up_to_orientation():
    """The exceptional tube realises the isolated branch with flipped normal."""
    branch = classifier.solve_case_one()
    profile = families.tube_spectrum("Wk", 4, k=2, r=R_STAR)
    flipped = sorted(-lam for lam, _ in profile.entries)
    expected = sorted([branch.lambda1, branch.lambda2, branch.lambda3])
    assert flipped == pytest.approx(expected, abs=1e-12)
    hopf = profile.hopf
    assert sorted([hopf.b1**2, hopf.b2**2]) == pytest.approx(
        sorted([branch.b1_sq, branch.b2_sq]), abs=1e-12
    )


def test_horosphere_profile_and_self_parallelism():
    profile = families.tube_spectrum("horosphere", 3, r=1.0)
    assert profile.entries == ((0.5, 4), (1.0, 1))
    for r in (-1.5, 0.7, 3.0):
        again = families.tube_spectrum("horosphere", 3, r=r)
        assert again.entries == profile.entries


def test_proper_tube_requires_positive_radius():
    with pytest.raises(ValueError):
        families.tube_spectrum("point", 3, r=-1.0)
    with pytest.raises(ValueError):
        families.tube_spectrum("CHk", 3, k=1, r=0.0)


def test_unknown_base_rejected():
    with pytest.raises(ValueError):
        families.tube_spectrum("torus", 3, r=1.0)


def test_focal_radius_detected_for_strongly_curved_base():
    """A synthetic base with shape eigenvalue above 1/2 focalises."""
    e = np.eye(6)
    shape = np.zeros((5, 5))
    shape[1, 1] = 0.75  # transverse class collapses at coth(t/2) = 3/2
    base = families.TubeBase(
        kind="synthetic", n=3, nu=e[0], tangent=e[1:], shape=shape,
        sphere=np.zeros((0, 6)),
    )
    r_focal = 2.0 * math.atanh(2.0 / 3.0)
    with pytest.raises(FocalRadiusError):
        families.tube_spectrum(base, r=r_focal)
    profile = families.tube_spectrum(base, r=0.3)
    assert profile.total_dim == 5


# ---------------------------------------------------------------------------
# ruled orbit and equidistants
# ---------------------------------------------------------------------------


def test_ruled_profile_values():
    profile = families.ruled_profile(3)
    assert profile.entries == ((-0.5, 1), (0.0, 3), (0.5, 1))
    hopf = profile.hopf
    assert hopf.b1 == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-12)
    assert hopf.b2 == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-12)


def test_ruled_profile_only_for_hypersurface():
    with pytest.raises(UnsupportedModelError):
        families.ruled_profile(3, k=2)


def test_equidistant_at_zero_is_the_orbit():
    profile = families.equidistant_profile(3, 0.0)
    assert profile.entries == ((-0.5, 1), (0.0, 3), (0.5, 1))


def test_equidistant_axis_value_convention():
    """Axis curvature is tanh(r/2)/2 for the distance-r equidistant."""
    for r in (0.8, -1.3, 2.0):
        profile = families.equidistant_profile(3, r)
        assert profile.axis_value() == pytest.approx(
            math.tanh(r / 2.0) / 2.0, abs=1e-12
        )


def test_equidistant_specific_radius():
    r = 2.0 * math.atanh(0.4)
    profile = families.equidistant_profile(3, r)
    root = math.sqrt(0.88)
    expected = sorted([(0.6 - root) / 2.0, 0.2, (0.6 + root) / 2.0])
    assert [lam for lam, _ in profile.entries] == pytest.approx(expected, abs=1e-12)


def test_equidistant_limit_approaches_half():
    """Far equidistants degenerate toward the horosphere profile."""
    profile = families.equidistant_profile(3, 20.0)
    axis_lam = next(lam for lam, mult in profile.entries if mult == 3)
    assert abs(axis_lam - 0.5) <= 1e-4


@pytest.mark.parametrize("r", [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0])
def test_equidistant_matches_parametric_branch(r):
    lam3 = math.tanh(r / 2.0) / 2.0
    branch = classifier.solve_case_two(lam3).branch
    profile = families.equidistant_profile(3, r)
    closed = sorted([(branch.lambda1, 1), (branch.lambda2, 1), (branch.lambda3, 3)])
    for (lam, mult), (elam, emult) in zip(sorted(profile.entries), closed):
        assert lam == pytest.approx(elam, abs=1e-10)
        assert mult == emult
    hopf = profile.hopf
    assert sorted([hopf.b1**2, hopf.b2**2]) == pytest.approx(
        sorted([branch.b1_sq, branch.b2_sq]), abs=1e-10
    )


def test_equidistant_profile_identities():
    res = families.profile_identity_residuals(families.equidistant_profile(3, 1.2))
    assert max(res.values()) <= 1e-10


# ---------------------------------------------------------------------------
# structural residuals
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [3, 4])
def test_structural_residuals_on_minimal_orbit(n):
    res = families.structural_residuals(n)
    assert res["axis_geodesic"] <= 1e-12
    assert max(res.values()) <= 1e-10


def test_structural_residuals_reject_hopf_orbit():
    alg = solvable.build_algebra(3)
    with pytest.raises(UnsupportedModelError):
        families.structural_residuals(3, solvable.horosphere_model(alg))


def test_weight_balance_closed_form_substitutions():
    assert classifier.residual_hopf_weights(0.5, -0.5, 0.0, 0.5, 0.5) == 0.0
    assert (
        classifier.residual_hopf_weights(
            SQ3 / 2.0, 0.0, SQ3 / 6.0, 8.0 / 9.0, 1.0 / 9.0
        )
        <= 1e-12
    )


# ---------------------------------------------------------------------------
# catalog assembly
# ---------------------------------------------------------------------------


def test_two_curvature_catalog_has_four_families():
    entries = families.two_curvature_families(3)
    assert [e.family for e in entries] == [
        "horosphere",
        "geodesic-sphere",
        "tube-CHk",
        "tube-RHn",
    ]
    assert all(e.g == 2 for e in entries)
    assert all(e.is_hopf for e in entries)


def test_three_curvature_catalog_composition():
    entries = families.three_curvature_families(3)
    by_family = {}
    for e in entries:
        by_family.setdefault(e.classification_family, []).append(e)
    assert sorted(by_family) == ["a", "b", "c", "d"]
    assert [e.k for e in by_family["a"]] == [1]
    assert [e.family for e in by_family["c"]] == ["ruled-W", "equidistant-W"]
    assert [e.k for e in by_family["d"]] == [2]
    assert all(e.g == 3 for e in entries)


def test_three_curvature_catalog_scales_with_dimension():
    entries = families.three_curvature_families(5)
    ks_a = [e.k for e in entries if e.classification_family == "a"]
    ks_d = [e.k for e in entries if e.classification_family == "d"]
    assert ks_a == [1, 2, 3]
    assert ks_d == [2, 3, 4]


def test_hopf_flags_split_by_family():
    entries = families.three_curvature_families(3)
    for e in entries:
        if e.classification_family in ("a", "b"):
            assert e.is_hopf
        else:
            assert not e.is_hopf
            assert families.hopf_residual(e.profile) >= 0.01


def test_eigenvector_defect_by_family():
    """J(normal) is principal exactly for the totally geodesic bases."""
    assert families.tube_eigenvector_defect("CHk", 3, k=1, r=1.0) <= 1e-12
    assert families.tube_eigenvector_defect("RHn", 3, r=1.0) <= 1e-12
    assert families.tube_eigenvector_defect("point", 3, r=0.7) <= 1e-12
    assert families.tube_eigenvector_defect("horosphere", 3, r=1.0) <= 1e-12
    assert families.tube_eigenvector_defect("Wk", 3, k=2, r=R_STAR) >= 0.01
    assert families.tube_eigenvector_defect("Wk", 3, k=1, r=-1.0) >= 0.01


def test_carrier_multiplicity_one_on_non_hopf_families():
    for e in families.three_curvature_families(4):
        if e.classification_family in ("c", "d"):
            assert e.profile.multiplicity(e.profile.hopf.lam2) == 1


def test_catalog_open_case_handling():
    entries, notes = families.catalog(2)
    assert {e.family for e in entries} == {
        "horosphere",
        "geodesic-sphere",
        "tube-CHk",
        "tube-RHn",
    }
    assert notes and "open" in notes[0]
    with pytest.raises(OpenCaseError):
        families.three_curvature_families(2)


def test_catalog_rejects_tiny_dimension():
    with pytest.raises(ValueError):
        families.catalog(1)


def test_exceptional_representative_radius_rejected():
    with pytest.raises(ValueError):
        families.three_curvature_families(3, r=R_STAR)


def test_entry_serialisation():
    entries, _ = families.catalog(3)
    doc = families.entry_to_dict(entries[0])
    assert doc["family"] == "horosphere"
    assert doc["hopf"] is True
    assert doc["profile"] == [[0.5, 4], [1.0, 1]]
    ruled = next(e for e in entries if e.family == "ruled-W")
    rdoc = families.entry_to_dict(ruled)
    assert rdoc["hopf"] is False
    assert rdoc["b"] == pytest.approx(
        [1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0)], abs=1e-12
    )
