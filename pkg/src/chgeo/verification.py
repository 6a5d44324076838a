"""Named verification suites shared by the CLI and the test harness.

Each suite exercises one block of exact identities at a fixed
tolerance and reports the worst residual it saw.  The suites are
deterministic given the seed, so two runs with the same seed produce
byte-identical reports.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace

import numpy as np

from . import ambient, classifier, families, jacobi, solvable
__all__ = [
    "SuiteResult",
    "case_two_grid",
    "run_all",
    "run_suite",
    "suite_names",
]

DEFAULT_SEED = 20260810


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    max_residual: float
    tolerance: float
    detail: str
    seconds: float


def case_two_grid(count: int = 97) -> np.ndarray:
    """Deterministic grid of axis curvatures inside (-1/2, 1/2) without 0."""
    pts = np.linspace(-0.485, 0.485, count + 1)
    pts = pts[np.abs(pts) > 1e-9]
    return pts[:count]


def _result(name, residuals, tolerance, detail, started) -> SuiteResult:
    worst = float(np.max(residuals)) if len(residuals) else 0.0
    return SuiteResult(
        name=name,
        passed=worst <= tolerance,
        max_residual=worst,
        tolerance=tolerance,
        detail=detail,
        seconds=time.perf_counter() - started,
    )


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def suite_ambient_identities(seed: int = DEFAULT_SEED) -> SuiteResult:
    """Tensor symmetries, first Bianchi identity and curvature pinching."""
    started = time.perf_counter()
    rng = np.random.default_rng(seed)
    residuals = []
    for n in (2, 3, 4):
        model = ambient.CurvatureModel(n)
        for _ in range(100):
            x, y, z, w = (ambient.random_tangent(model, rng) for _ in range(4))
            pair = abs(
                ambient.curvature_component(model, x, y, z, w)
                - ambient.curvature_component(model, z, w, x, y)
            )
            bianchi = np.linalg.norm(
                ambient.curvature(model, x, y, z)
                + ambient.curvature(model, y, z, x)
                + ambient.curvature(model, z, x, y)
            )
            jinv = np.linalg.norm(
                ambient.curvature(model, model.J @ x, model.J @ y, z)
                - ambient.curvature(model, x, y, z)
            )
            residuals.extend([pair, bianchi, jinv])
    model = ambient.CurvatureModel(3)
    for _ in range(1000):
        x, y = (ambient.random_tangent(model, rng) for _ in range(2))
        try:
            kappa = ambient.sectional_curvature(model, x, y)
        except Exception:
            continue
        residuals.append(max(0.0, kappa - (-0.25)))
        residuals.append(max(0.0, -1.0 - kappa))
    return _result(
        "ambient-identities", residuals, 1e-12, "tensor symmetries and pinching", started
    )


def suite_cross_model_curvature(seed: int = DEFAULT_SEED) -> SuiteResult:
    """Group-model curvature against the closed form, 500 random triples."""
    started = time.perf_counter()
    rng = np.random.default_rng(seed)
    residuals = []
    for n in (2, 3, 4):
        alg = solvable.build_algebra(n)
        model = ambient.CurvatureModel(n)
        for _ in range(500):
            x, y, z = (rng.standard_normal(2 * n) for _ in range(3))
            lhs = solvable.algebra_curvature(alg, x, y, z)
            rhs = ambient.curvature(model, x, y, z)
            residuals.append(float(np.linalg.norm(lhs - rhs)))
    return _result(
        "cross-model-curvature",
        residuals,
        1e-10,
        "Koszul curvature vs closed form, n in {2,3,4}",
        started,
    )


def suite_ruled_second_fundamental() -> SuiteResult:
    """Second fundamental form and shape spectra of the ruled orbits."""
    started = time.perf_counter()
    residuals = []
    for n in (3, 4, 5):
        alg = solvable.build_algebra(n)
        z_vec = np.eye(2 * n)[1]
        for k in range(1, n):
            model = solvable.build_ruled(alg, solvable.default_ruled_spec(alg, k))
            orbit = model.orbit
            for xi in model.w_perp:
                ixi = alg.J @ xi
                # the single non-trivial pairing
                residuals.append(
                    float(
                        np.linalg.norm(
                            2.0 * orbit.second_fundamental(z_vec, ixi) - xi
                        )
                    )
                )
                # every other frame pairing vanishes
                for i in range(orbit.dim):
                    for j in range(orbit.dim):
                        ti, tj = orbit.tangent[i], orbit.tangent[j]
                        weight = (ti @ z_vec) * (tj @ ixi) + (tj @ z_vec) * (ti @ ixi)
                        ii = orbit.second_fundamental(ti, tj) @ xi
                        residuals.append(abs(ii - 0.5 * weight))
                vals, vecs = model.shape_spectrum(xi)
                expected = np.concatenate(
                    [[-0.5], np.zeros(orbit.dim - 2), [0.5]]
                )
                residuals.append(float(np.max(np.abs(np.sort(vals) - expected))))
                # eigenvectors of the extreme curvatures
                for sign in (+1.0, -1.0):
                    target = (z_vec + sign * ixi) / math.sqrt(2.0)
                    coeffs = orbit.tangent @ target
                    S = orbit.shape_operator(xi)
                    residuals.append(
                        float(np.linalg.norm(S @ coeffs - sign * 0.5 * coeffs))
                    )
                residuals.append(abs(float(np.trace(orbit.shape_operator(xi)))))
    return _result(
        "ruled-second-fundamental",
        residuals,
        1e-12,
        "2 II(Z, i xi) = xi and spectra {0,+1/2,-1/2}, n in {3,4,5}",
        started,
    )


def suite_jacobi_oracle(seed: int = DEFAULT_SEED) -> SuiteResult:
    """Closed forms against fourth-order integration, 200 random cases."""
    started = time.perf_counter()
    rng = np.random.default_rng(seed)
    n = 3
    d = 2 * n
    count = 200
    h = 1e-3
    jc = np.zeros(d)
    jc[1] = 1.0
    branch = classifier.solve_case_two(0.2).branch
    profile = classifier.branch_profile(branch, n)
    frame = jacobi.normal_frame(profile)
    fields = []
    v0 = np.empty((d, count))
    v0p = np.empty((d, count))
    steps = rng.integers(0, int(round(3.0 / h)) + 1, size=count)
    for idx in range(count):
        v = rng.standard_normal(d)
        v[0] = 0.0
        value0, deriv0 = jacobi.jacobi_field(frame, v, 0.0)
        v0[:, idx] = value0
        v0p[:, idx] = deriv0
        fields.append(v)
    # one batched march, sampling each case once its own time is reached
    residuals = []
    z, zp = v0, v0p
    done = 0
    order = np.argsort(steps)
    for idx in order:
        target = int(steps[idx])
        if target > done:
            z, zp = jacobi._rk4_segment(z, zp, jc, h, target - done)
            done = target
        t = target * h
        value, deriv = jacobi.jacobi_field(frame, fields[idx], t)
        residuals.append(float(np.linalg.norm(z[:, idx] - value)))
        residuals.append(float(np.linalg.norm(zp[:, idx] - deriv)))
    return _result(
        "jacobi-oracle",
        residuals,
        1e-8,
        "closed form vs integrator, 200 cases on [0,3]",
        started,
    )


def suite_jacobi_field_equation(seed: int = DEFAULT_SEED) -> SuiteResult:
    """Finite-difference check that the closed form solves the field equation.

    The second difference at step 1e-4 cancels ~8 leading digits, so it
    is evaluated in extended precision to keep the rounding noise below
    the truncation error of the stencil.
    """
    started = time.perf_counter()
    rng = np.random.default_rng(seed)
    h = np.longdouble(1e-4)
    residuals = []
    for _ in range(200):
        lam = np.longdouble(rng.uniform(-1.0, 1.0))
        w = np.longdouble(rng.uniform(-1.0, 1.0))
        t = np.longdouble(rng.uniform(0.1, 3.0))
        vals = {}
        for dt in (-h, h * 0, h):
            tt = t + dt
            f = jacobi.transverse_coefficient(lam, tt)
            g = jacobi.hopf_coefficient(lam, tt)
            vals[float(dt)] = np.array([f, w * g], dtype=np.longdouble)
        second = (vals[float(h)] - 2.0 * vals[0.0] + vals[float(-h)]) / h**2
        zeta = vals[0.0]
        # <zeta, Jc> in the (B_v, Jc) expansion: B_v carries weight w on Jc
        axis = zeta[0] * w + zeta[1]
        rhs = np.array([zeta[0], zeta[1] + 3.0 * axis], dtype=np.longdouble)
        residuals.append(float(np.linalg.norm((4.0 * second - rhs).astype(float))))
    return _result(
        "jacobi-field-equation",
        residuals,
        1e-6,
        "central-difference residual of the closed form",
        started,
    )


def suite_focal_collapse() -> SuiteResult:
    """Numbers of the repeated-carrier collapse at the exceptional radius."""
    started = time.perf_counter()
    r = jacobi.EXCEPTIONAL_RADIUS
    residuals = []
    details = []
    branch = classifier.solve_case_one()
    for n, m1 in ((3, 2), (4, 2), (4, 3)):
        profile = classifier.branch_profile(branch, n, m1=m1)
        focal = jacobi.transversal_map(profile, r)
        nine = 9.0 * focal.d_block
        expected = np.array(
            [
                [4.0, math.sqrt(2.0)],
                [4.0 * math.sqrt(2.0) - 2.0 * math.sqrt(3.0), 2.0 + 4.0 * math.sqrt(6.0)],
            ]
        )
        residuals.append(float(np.max(np.abs(nine - expected))))
        residuals.append(
            abs(
                9.0 * jacobi.transverse_coefficient(branch.lambda3, r)
                - 3.0 * math.sqrt(6.0)
            )
        )
        if focal.kernel_dim != m1 - 1 or focal.image_codim != m1:
            residuals.append(1.0)
            details.append(f"kernel mismatch at n={n}, m1={m1}")
        svals = focal.singular_values
        small = svals[svals <= 1e-12]
        rest = svals[svals > 1e-12]
        if len(small) != m1 - 1 or (len(rest) and rest.min() < 0.1):
            residuals.append(1.0)
            details.append(f"singular-value gap violated at n={n}, m1={m1}")
        image = jacobi.image_shape_operator(focal)
        block_expected = (1.0 / 18.0) * np.array(
            [
                [4.0 * math.sqrt(2.0), -7.0],
                [-7.0, -4.0 * math.sqrt(2.0)],
            ]
        )
        residuals.append(float(np.max(np.abs(image.carrier_block - block_expected))))
        eig = np.sort(np.linalg.eigvalsh(image.carrier_block))
        residuals.append(float(np.max(np.abs(eig - np.array([-0.5, 0.5])))))
        residuals.append(abs(image.axis_rate))
    detail = "; ".join(details) if details else "repeated-carrier collapse numbers"
    return _result("focal-collapse", residuals, 1e-12, detail, started)


def suite_equidistant_identities() -> SuiteResult:
    """Determinant/trace identities of the carrier block on the axis grid."""
    started = time.perf_counter()
    residuals = []
    for lam3 in case_two_grid():
        branch = classifier.solve_case_two(float(lam3)).branch
        r = 2.0 * math.atanh(2.0 * float(lam3))
        profile = classifier.branch_profile(branch, 3)
        focal = jacobi.transversal_map(profile, r)
        sech = 1.0 / math.cosh(r / 2.0)
        residuals.append(abs(focal.det_d - sech**3))
        C = focal.c_block
        residuals.append(abs(float(np.trace(C))))
        residuals.append(abs(float(np.linalg.det(C)) + 0.25))
        eig = np.sort(np.linalg.eigvals(C).real)
        residuals.append(float(np.max(np.abs(eig - np.array([-0.5, 0.5])))) * 1e-1)
    return _result(
        "equidistant-identities",
        residuals,
        1e-10,
        "det/trace of the carrier block on a 97-point grid",
        started,
    )


def suite_classifier(seed: int = DEFAULT_SEED) -> SuiteResult:
    """Branch values, residual system and the exclusion windows."""
    started = time.perf_counter()
    residuals = []
    details = []
    iso = classifier.solve_case_one()
    s3 = math.sqrt(3.0)
    expected = (s3 / 2.0, 0.0, s3 / 6.0, 8.0 / 9.0, 1.0 / 9.0)
    got = (iso.lambda1, iso.lambda2, iso.lambda3, iso.b1_sq, iso.b2_sq)
    residuals.append(max(abs(a - b) for a, b in zip(expected, got)))
    residuals.append(abs(4.0 * iso.lambda1 * iso.lambda3 - 1.0))
    for lam3 in case_two_grid():
        outcome = classifier.solve_case_two(float(lam3))
        if outcome.branch is None:
            residuals.append(1.0)
            details.append(f"missing branch at lam3={lam3}")
            continue
        residuals.append(max(outcome.branch.residuals().values()) * 1e-2)
    for lam3 in (0.55, 0.56, 0.57):
        outcome = classifier.solve_case_two(lam3)
        if not outcome.empty or "ellipse" not in (outcome.reason or ""):
            residuals.append(1.0)
            details.append(f"expected ellipse exclusion at lam3={lam3}")
    for lam3 in (0.5, 1.0 / math.sqrt(3.0)):
        outcome = classifier.solve_case_two(lam3)
        if not outcome.empty or "coincident" not in (outcome.reason or ""):
            residuals.append(1.0)
            details.append(f"expected coincidence rejection at lam3={lam3}")
    rng = np.random.default_rng(seed)
    for lam3 in (0.2, -0.3, 0.55):
        anomalies = classifier.validate_against_closed_form(lam3, rng)
        if anomalies:
            residuals.append(1.0)
            details.append(f"newton anomaly at lam3={lam3}")
    detail = "; ".join(details) if details else "branches, exclusions and root validation"
    return _result("classifier-branches", residuals, 1e-12, detail, started)


def suite_structural_residuals() -> SuiteResult:
    """Connection identities on the ruled hypersurface orbit, n in {3, 4}."""
    started = time.perf_counter()
    residuals = []
    for n in (3, 4):
        res = families.structural_residuals(n)
        residuals.extend(res.values())
    residuals.append(
        classifier.residual_hopf_weights(0.5, -0.5, 0.0, 0.5, 0.5)
    )
    return _result(
        "structural-residuals",
        residuals,
        1e-10,
        "carrier/axis connection identities on the minimal orbit",
        started,
    )


def suite_catalog_counts() -> SuiteResult:
    """Distinct-curvature counts across the engine-built families."""
    started = time.perf_counter()
    failures = []
    n = 3
    checks = [
        ("tube-Wk r=1", families.tube_spectrum("Wk", n, k=2, r=1.0).g, 4),
        (
            "tube-Wk exceptional",
            families.tube_spectrum("Wk", n, k=2, r=jacobi.EXCEPTIONAL_RADIUS).g,
            3,
        ),
        (
            "tube-RHn exceptional",
            families.tube_spectrum("RHn", n, r=jacobi.EXCEPTIONAL_RADIUS).g,
            2,
        ),
        ("tube-RHn r=1", families.tube_spectrum("RHn", n, r=1.0).g, 3),
        ("tube-RHn r=2", families.tube_spectrum("RHn", n, r=2.0).g, 3),
        ("horosphere", families.tube_spectrum("horosphere", n, r=1.0).g, 2),
        ("geodesic sphere r=0.7", families.tube_spectrum("point", n, r=0.7).g, 2),
        ("geodesic sphere r=2", families.tube_spectrum("point", n, r=2.0).g, 2),
    ]
    for name, got, expected in checks:
        if got != expected:
            failures.append(f"{name}: g={got}, expected {expected}")
    residuals = [1.0] * len(failures)
    detail = "; ".join(failures) if failures else "engine-recomputed eigenvalue counts"
    return _result("catalog-counts", residuals, 0.5, detail, started)


def suite_cross_consistency() -> SuiteResult:
    """Classifier branches against engine equidistants; radius relation."""
    started = time.perf_counter()
    residuals = []
    n = 3
    for r in (-2.0, -1.0, -0.5, 0.5, 1.0, 2.0):
        lam3 = math.tanh(r / 2.0) / 2.0
        branch = classifier.solve_case_two(lam3).branch
        profile = families.equidistant_profile(n, r)
        closed = sorted(
            [
                (branch.lambda1, 1),
                (branch.lambda2, 1),
                (branch.lambda3, 2 * n - 3),
            ]
        )
        engine = sorted(profile.entries)
        for (lv, lm), (ev, em) in zip(closed, engine):
            residuals.append(abs(lv - ev))
            residuals.append(0.0 if lm == em else 1.0)
        hopf = profile.hopf
        b_closed = sorted([branch.b1_sq, branch.b2_sq])
        b_engine = sorted([hopf.b1**2, hopf.b2**2])
        residuals.extend(abs(a - b) for a, b in zip(b_closed, b_engine))
    residuals.append(
        abs(math.tanh(jacobi.EXCEPTIONAL_RADIUS / 2.0) - 1.0 / math.sqrt(3.0)) * 1e4
    )
    return _result(
        "cross-consistency",
        residuals,
        1e-10,
        "closed-form branches vs engine equidistants",
        started,
    )


_SUITES = {
    "ambient-identities": suite_ambient_identities,
    "cross-model-curvature": suite_cross_model_curvature,
    "ruled-second-fundamental": suite_ruled_second_fundamental,
    "jacobi-oracle": suite_jacobi_oracle,
    "jacobi-field-equation": suite_jacobi_field_equation,
    "focal-collapse": suite_focal_collapse,
    "equidistant-identities": suite_equidistant_identities,
    "classifier-branches": suite_classifier,
    "structural-residuals": suite_structural_residuals,
    "catalog-counts": suite_catalog_counts,
    "cross-consistency": suite_cross_consistency,
}


def suite_names() -> list[str]:
    return list(_SUITES)


def run_suite(name: str, seed: int = DEFAULT_SEED, tolerance: float | None = None):
    fn = _SUITES[name]
    try:
        result = fn(seed)  # type: ignore[call-arg]
    except TypeError:
        result = fn()
    if tolerance is not None:
        result = replace(
            result, tolerance=tolerance, passed=result.max_residual <= tolerance
        )
    return result


def run_all(seed: int = DEFAULT_SEED, tolerance: float | None = None):
    return [run_suite(name, seed=seed, tolerance=tolerance) for name in _SUITES]
