"""Constraint solver for three-curvature non-Hopf hypersurface data.

A hypersurface with three distinct constant principal curvatures whose
normal J-image projects onto exactly two principal distributions is
pinned down by a small algebraic system in the curvatures lam1, lam2,
lam3 and the squared projection weights b1^2, b2^2:

  * a balance identity tying the weights to the curvature gaps,
  * normalisation b1^2 + b2^2 = 1 with closed-form weights,
  * a hyperbola relation in x = lam1 - lam2, y = lam1 + lam2 - 4 lam3,
  * a circle relation in the same variables.

Solutions form one curve parameterised by lam3 in (-1/2, 1/2) (the
carrier multiplicities both one) plus a single isolated point with a
repeated carrier curvature.  Outside the window the conics still meet
but force weights outside (0, 1) or coincident curvatures, so the
solver reports the obstruction instead of a branch.

Branches are computed from the closed forms and then validated against
the raw residual system by damped Newton iterations from random seeds;
a numerical root that matches no closed form is reported, never kept.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .profiles import HopfAttitude, PrincipalProfile

__all__ = [
    "ClassifyOutcome",
    "SolutionBranch",
    "SweepReport",
    "branch_profile",
    "circle_residual",
    "closed_form_weights",
    "hyperbola_residual",
    "intersect_hyperbola_circle",
    "multiplicity_quadratics",
    "newton_roots",
    "residual_hopf_weights",
    "residual_mean_relation",
    "residual_weight_sum",
    "solve_case_one",
    "solve_case_two",
    "sweep",
    "validate_against_closed_form",
]

COINCIDENCE_TOL = 1e-9
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class SolutionBranch:
    """One admissible curvature/weight tuple with its multiplicity pattern."""

    case: str
    lambda1: float
    lambda2: float
    lambda3: float
    b1_sq: float
    b2_sq: float
    mult_pattern: tuple[str, str, str]
    window: str

    def residuals(self) -> dict[str, float]:
        """Case-appropriate residual system at the reported point.

        The conic relations belong to the multiplicity-one branch; the
        isolated branch answers to the quadratic pair and the two
        repeated-carrier relations instead.
        """
        l1, l2, l3 = self.lambda1, self.lambda2, self.lambda3
        res = {
            "weights": residual_hopf_weights(l1, l2, l3, self.b1_sq, self.b2_sq),
            "weight_sum": residual_weight_sum(self.b1_sq, self.b2_sq),
        }
        if self.case == "ii":
            res["hyperbola"] = abs(hyperbola_relation(l1, l2, l3))
            res["mean"] = abs(mean_relation(l1, l2, l3))
        else:
            q1, q2 = multiplicity_quadratics(l2, self.b2_sq)
            res["quadratic_1"] = abs(q1)
            res["quadratic_2"] = abs(q2)
            res["product_relation"] = abs(4.0 * l1 * l3 - 1.0)
            res["gap_relation"] = abs(2.0 * l1 * (l1 - l3) - 1.0)
        return res


@dataclass(frozen=True)
class ClassifyOutcome:
    """Result of the parametric solve at one lam3: a branch or a reason."""

    lambda3: float
    branch: SolutionBranch | None
    reason: str | None

    @property
    def empty(self) -> bool:
        return self.branch is None


# ---------------------------------------------------------------------------
# residual functions
# ---------------------------------------------------------------------------


def _require_distinct(l1: float, l2: float, l3: float) -> None:
    gaps = (abs(l1 - l2), abs(l1 - l3), abs(l2 - l3))
    if min(gaps) < COINCIDENCE_TOL:
        raise ValueError(
            f"principal curvatures must be distinct, got ({l1}, {l2}, {l3})"
        )


def residual_hopf_weights(l1, l2, l3, b1_sq, b2_sq) -> float:
    """Absolute defect of the weight-balance identity.

    0 = 3((l3-l2)^2 b1^2 + (l3-l1)^2 b2^2)
        + (l3-l1)(l3-l2)(1 + 4 l2 (l3-l1) + 4 l1 (l3-l2)).
    """
    _require_distinct(l1, l2, l3)
    value = 3.0 * ((l3 - l2) ** 2 * b1_sq + (l3 - l1) ** 2 * b2_sq) + (l3 - l1) * (
        l3 - l2
    ) * (1.0 + 4.0 * l2 * (l3 - l1) + 4.0 * l1 * (l3 - l2))
    return abs(value)


def residual_weight_sum(b1_sq, b2_sq) -> float:
    return abs(b1_sq + b2_sq - 1.0)


def hyperbola_relation(l1, l2, l3) -> float:
    """(l1-l2)^2 - (l1+l2-4 l3)^2 - (1 - 4 l3^2)."""
    return (l1 - l2) ** 2 - (l1 + l2 - 4.0 * l3) ** 2 - (1.0 - 4.0 * l3**2)


def mean_relation(l1, l2, l3) -> float:
    """l3 (1 + 4 l1^2 + 4 l2^2) - (l1 + l2)(1 + 4 l3^2).

    This is the circle relation written in the curvatures: for l3 != 0
    it is 2 l3 times the circle equation in x = l1 - l2,
    y = l1 + l2 - 4 l3, and at l3 = 0 it degenerates to l1 + l2 = 0.
    """
    return l3 * (1.0 + 4.0 * l1**2 + 4.0 * l2**2) - (l1 + l2) * (1.0 + 4.0 * l3**2)


def hyperbola_residual(x, y, lam3) -> float:
    """Defect of the hyperbola x^2 - y^2 = 1 - 4 lam3^2."""
    return abs(x**2 - y**2 - (1.0 - 4.0 * lam3**2))


def circle_residual(x, y, lam3) -> float:
    """Defect of the circle centred on the y-axis in the (x, y) chart."""
    if lam3 == 0.0:
        raise ValueError("circle relation degenerates at lam3 = 0")
    centre = (1.0 - 12.0 * lam3**2) / (4.0 * lam3)
    radius_sq = (1.0 + 16.0 * lam3**4) / (16.0 * lam3**2)
    return abs(x**2 + (y - centre) ** 2 - radius_sq)


def residual_mean_relation(l1, l2, l3) -> float:
    return abs(mean_relation(l1, l2, l3))


def closed_form_weights(l1, l2, l3) -> tuple[float, float]:
    """Squared projection weights from the curvature triple.

    b_i^2 = (l3 - l_i)/(l_j - l_i) * (1 + 4 l3 (l3 - l_j)); the two
    values always sum to one.
    """
    _require_distinct(l1, l2, l3)
    b1 = (l3 - l1) / (l2 - l1) * (1.0 + 4.0 * l3 * (l3 - l2))
    b2 = (l3 - l2) / (l1 - l2) * (1.0 + 4.0 * l3 * (l3 - l1))
    return float(b1), float(b2)


def multiplicity_quadratics(lam2, b2_sq) -> tuple[float, float]:
    """The two quadratics constraining the repeated-carrier branch.

    Their sum factors as 72 b2_sq lam2 (2 lam2 - sqrt(3)), so the only
    axis candidates are lam2 = 0 and lam2 = sqrt(3)/2.
    """
    s3 = math.sqrt(3.0)
    q1 = (
        12.0 * (3.0 * b2_sq - 1.0) * lam2**2
        + 4.0 * s3 * (2.0 - 9.0 * b2_sq) * lam2
        + 3.0 * (9.0 * b2_sq - 1.0)
    )
    q2 = (
        12.0 * (9.0 * b2_sq + 1.0) * lam2**2
        - 4.0 * s3 * (2.0 + 9.0 * b2_sq) * lam2
        - 3.0 * (9.0 * b2_sq - 1.0)
    )
    return q1, q2


# ---------------------------------------------------------------------------
# branch solvers
# ---------------------------------------------------------------------------


def intersect_hyperbola_circle(lam3: float):
    """Common points of the two conics, filtered for curvature coincidences.

    Returns (x, y) pairs; points whose back-substitution forces one of
    the carrier curvatures onto the axis curvature are dropped.
    """
    if lam3 == 0.0:
        raise ValueError("conic intersection is not defined at lam3 = 0")
    points = []
    disc = 1.0 - 3.0 * lam3**2
    if disc >= 0.0:
        root = math.sqrt(disc)
        points.extend([(root, -lam3), (-root, -lam3)])
    quarter = 1.0 / (4.0 * lam3)
    points.extend(
        [
            (quarter, (1.0 - 8.0 * lam3**2) * quarter),
            (-quarter, (1.0 - 8.0 * lam3**2) * quarter),
        ]
    )
    kept = []
    for x, y in points:
        l1 = 0.5 * (x + y) + 2.0 * lam3
        l2 = l1 - x
        if min(abs(l1 - lam3), abs(l2 - lam3)) < COINCIDENCE_TOL:
            continue
        kept.append((x, y))
    return kept


def solve_case_two(lam3: float) -> ClassifyOutcome:
    """Parametric branch at the given axis curvature, or the obstruction.

    Valid exactly for |lam3| < 1/2; the window 1/2 <= |lam3| <= 1/sqrt(3)
    produces real curvature triples whose weights leave (0, 1), and
    beyond it the conics have no real common point off the coincidence
    locus.
    """
    disc = 1.0 - 3.0 * lam3**2
    if disc < -1e-12:
        return ClassifyOutcome(
            lam3, None, "no real intersection (3 lam3^2 exceeds 1)"
        )
    root = math.sqrt(max(disc, 0.0))
    l1 = 0.5 * (3.0 * lam3 - root)
    l2 = 0.5 * (3.0 * lam3 + root)
    if min(abs(l1 - l2), abs(l1 - lam3), abs(l2 - lam3)) < COINCIDENCE_TOL:
        return ClassifyOutcome(lam3, None, "coincident eigenvalues")
    b1_sq, b2_sq = closed_form_weights(l1, l2, lam3)
    if not (0.0 < b1_sq < 1.0 and 0.0 < b2_sq < 1.0):
        return ClassifyOutcome(
            lam3,
            None,
            "ellipse exclusion (projection weights leave the unit interval)",
        )
    branch = SolutionBranch(
        case="ii",
        lambda1=l1,
        lambda2=l2,
        lambda3=lam3,
        b1_sq=b1_sq,
        b2_sq=b2_sq,
        mult_pattern=("1", "1", "2n-3"),
        window="|lambda3| < 1/2",
    )
    checks = branch.residuals()
    worst = max(checks.values())
    if worst > RESIDUAL_TOL:
        raise AssertionError(f"closed-form branch fails its own residuals: {checks}")
    return ClassifyOutcome(lam3, branch, None)


def solve_case_one() -> SolutionBranch:
    """The isolated branch with a repeated carrier curvature.

    The two relations 2 l1 (l1 - l3) = 1 and 4 l1 l3 = 1 fix l1 and l3
    up to orientation; the quadratic pair then admits only the axis
    value lam2 = 0 once the coincident root is discarded, and the
    weights follow.
    """
    # 2 l1^2 - 2 l1 l3 = 1 and 4 l1 l3 = 1 give l1^2 = 3/4
    l1 = math.sqrt(0.75)
    l3 = 1.0 / (4.0 * l1)
    s3 = math.sqrt(3.0)
    candidates = [0.0, s3 / 2.0]
    l2 = None
    for cand in candidates:
        if abs(cand - l1) < COINCIDENCE_TOL:
            continue
        l2 = cand
    if l2 is None:
        raise AssertionError("no admissible repeated-carrier axis value")
    # the first quadratic is linear in the weight once lam2 is fixed
    denom = 36.0 * l2**2 - 36.0 * s3 * l2 + 27.0
    b2_sq = (12.0 * l2**2 - 8.0 * s3 * l2 + 3.0) / denom
    b1_sq = 1.0 - b2_sq
    q1, q2 = multiplicity_quadratics(l2, b2_sq)
    if max(abs(q1), abs(q2)) > 1e-12:
        raise AssertionError("quadratic pair not satisfied at the isolated branch")
    branch = SolutionBranch(
        case="i",
        lambda1=l1,
        lambda2=l2,
        lambda3=l3,
        b1_sq=b1_sq,
        b2_sq=b2_sq,
        mult_pattern=("m1>=2", "1", "2n-2-m1"),
        window="isolated",
    )
    worst = max(branch.residuals().values())
    if worst > 1e-12:
        raise AssertionError("isolated branch fails the residual system")
    return branch


def branch_profile(branch: SolutionBranch, n: int, m1: int | None = None) -> PrincipalProfile:
    """Materialise a branch as a hypersurface profile in complex dimension n."""
    if branch.case == "i":
        m1 = 2 if m1 is None else m1
        if not 2 <= m1 <= n - 1:
            raise ValueError(f"repeated-carrier multiplicity must lie in 2..{n - 1}")
    else:
        m1 = 1
    m3 = 2 * n - 2 - m1
    hopf = HopfAttitude(
        b1=math.sqrt(branch.b1_sq),
        b2=math.sqrt(branch.b2_sq),
        lam1=branch.lambda1,
        lam2=branch.lambda2,
    )
    entries = sorted(
        [(branch.lambda1, m1), (branch.lambda2, 1), (branch.lambda3, m3)]
    )
    return PrincipalProfile(entries=tuple(entries), total_dim=2 * n - 1, hopf=hopf)


# ---------------------------------------------------------------------------
# sweep driver and independent validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepReport:
    outcomes: tuple[ClassifyOutcome, ...]
    isolated: SolutionBranch

    @property
    def branches(self) -> tuple[SolutionBranch, ...]:
        return tuple(o.branch for o in self.outcomes if o.branch is not None)


def sweep(grid) -> SweepReport:
    """Deterministic scan of the parametric branch over a lam3 grid."""
    outcomes = tuple(solve_case_two(float(lam3)) for lam3 in grid)
    return SweepReport(outcomes=outcomes, isolated=solve_case_one())


def _system(lam3: float):
    def F(x):
        l1, l2, b1_sq, b2_sq = x
        try:
            balance = 3.0 * (
                (lam3 - l2) ** 2 * b1_sq + (lam3 - l1) ** 2 * b2_sq
            ) + (lam3 - l1) * (lam3 - l2) * (
                1.0 + 4.0 * l2 * (lam3 - l1) + 4.0 * l1 * (lam3 - l2)
            )
        except FloatingPointError:
            balance = np.inf
        return np.array(
            [
                balance,
                b1_sq + b2_sq - 1.0,
                hyperbola_relation(l1, l2, lam3),
                mean_relation(l1, l2, lam3),
            ]
        )

    return F


def _numeric_jacobian(F, x, h=1e-7):
    m = len(F(x))
    J = np.empty((m, len(x)))
    for j in range(len(x)):
        dx = np.zeros_like(x)
        dx[j] = h
        J[:, j] = (F(x + dx) - F(x - dx)) / (2.0 * h)
    return J


def _damped_newton(F, x0, tol=1e-12, max_iter=80):
    x = np.array(x0, dtype=float)
    fx = F(x)
    for _ in range(max_iter):
        norm = np.linalg.norm(fx)
        if norm < tol:
            return x
        J = _numeric_jacobian(F, x)
        try:
            step = np.linalg.solve(J, -fx)
        except np.linalg.LinAlgError:
            return None
        alpha = 1.0
        while alpha > 1e-6:
            xn = x + alpha * step
            fn = F(xn)
            if np.linalg.norm(fn) < (1.0 - 0.25 * alpha) * norm:
                x, fx = xn, fn
                break
            alpha *= 0.5
        else:
            return None
    return x if np.linalg.norm(F(x)) < 1e-10 else None


def newton_roots(lam3: float, rng: np.random.Generator, attempts: int = 20):
    """Roots of the raw residual system found from random seeds.

    Roots are normalised to l1 <= l2 and de-duplicated; weights are not
    constrained to (0, 1) here so the exclusion mechanism stays visible.
    """
    F = _system(lam3)
    roots = []
    for _ in range(attempts):
        x0 = np.array(
            [
                rng.uniform(-1.5, 1.5),
                rng.uniform(-1.5, 1.5),
                rng.uniform(-0.5, 1.5),
                rng.uniform(-0.5, 1.5),
            ]
        )
        x = _damped_newton(F, x0)
        if x is None:
            continue
        l1, l2, b1_sq, b2_sq = x
        if l1 > l2:
            l1, l2 = l2, l1
            b1_sq, b2_sq = b2_sq, b1_sq
        root = np.array([l1, l2, b1_sq, b2_sq])
        if not any(np.linalg.norm(root - r) < 1e-7 for r in roots):
            roots.append(root)
    return roots


def validate_against_closed_form(lam3: float, rng: np.random.Generator, attempts: int = 20):
    """Compare Newton roots with the closed forms; return anomalies.

    A root counts as explained if it matches the parametric branch, is
    a coincidence point (some curvature equals lam3 or the carriers
    collide), or reproduces the closed-form weights outside (0, 1).
    """
    anomalies = []
    outcome = solve_case_two(lam3)
    for root in newton_roots(lam3, rng, attempts):
        l1, l2, b1_sq, b2_sq = root
        if min(abs(l1 - l2), abs(l1 - lam3), abs(l2 - lam3)) < 1e-7:
            continue
        expected_b = closed_form_weights(l1, l2, lam3)
        if abs(b1_sq - expected_b[0]) < 1e-7 and abs(b2_sq - expected_b[1]) < 1e-7:
            if outcome.branch is not None:
                b = outcome.branch
                if (
                    abs(l1 - b.lambda1) < 1e-7
                    and abs(l2 - b.lambda2) < 1e-7
                    and abs(b1_sq - b.b1_sq) < 1e-7
                ):
                    continue
            if not (0.0 < b1_sq < 1.0 and 0.0 < b2_sq < 1.0):
                continue
        anomalies.append(root)
    return anomalies
