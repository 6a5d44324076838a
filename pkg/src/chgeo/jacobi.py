"""Normal Jacobi fields and the distance-r transversal map.

Along a unit-speed geodesic normal to a hypersurface the Jacobi
equation in a parallel frame is constant-coefficient:

    4 w'' = w + 3 <w, Jc> Jc,

where Jc is the (parallel) image of the tangent direction under the
complex structure.  For an initial vector in a principal distribution
with curvature lam the solution splits into a transverse coefficient

    f(t) = cosh(t/2) - 2 lam sinh(t/2)

and a mixing coefficient against the Jc-line

    g(t) = (cosh(t/2) - 1) (1 + 2 cosh(t/2) - 2 lam sinh(t/2)),

so the field is f(t) B_v(t) + <v, Jc(0)> g(t) Jc(t) with B_v the
parallel translate of v.  Components squarely on the Jc-line evolve
with cosh(t) - lam sinh(t).

The transversal map sends each point of the hypersurface a fixed
distance along its normal geodesic; its differential evaluates Jacobi
fields at that distance, and the shape operator of the image is read
off from minus the tangential part of the field derivatives.  Working
in the parallel frame reduces all of this to dense linear algebra on
coefficient vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .ambient import CurvatureModel, complex_structure, jacobi_operator
from .errors import FocalPointError, ValidationError
from .profiles import HopfAttitude, PrincipalProfile, merge_spectrum

__all__ = [
    "EXCEPTIONAL_RADIUS",
    "FocalMapData",
    "GeodesicNormalFrame",
    "ImageShapeData",
    "JacobiSolution",
    "axis_coefficient",
    "axis_coefficient_dt",
    "curvature_propagator",
    "hopf_coefficient",
    "hopf_coefficient_dt",
    "image_shape_operator",
    "jacobi_field",
    "jacobi_mode",
    "jacobi_numeric",
    "normal_frame",
    "transverse_coefficient",
    "transverse_coefficient_dt",
    "transversal_map",
]

# distance at which tube spectra degenerate: 2 artanh(1/sqrt(3))
EXCEPTIONAL_RADIUS = math.log(2.0 + math.sqrt(3.0))

KERNEL_TOL = 1e-10
BLOCK_DET_TOL = 1e-12
KERNEL_GAP = 0.1


# ---------------------------------------------------------------------------
# scalar coefficient functions
# ---------------------------------------------------------------------------


def transverse_coefficient(lam: float, t):
    """Coefficient of the parallel translate for initial vectors off the Jc-line."""
    return np.cosh(t / 2.0) - 2.0 * lam * np.sinh(t / 2.0)


def transverse_coefficient_dt(lam: float, t):
    return 0.5 * np.sinh(t / 2.0) - lam * np.cosh(t / 2.0)


def hopf_coefficient(lam: float, t):
    """Coefficient mixing the initial Jc-projection back onto the Jc-line."""
    c = np.cosh(t / 2.0)
    return (c - 1.0) * (1.0 + 2.0 * c - 2.0 * lam * np.sinh(t / 2.0))


def hopf_coefficient_dt(lam: float, t):
    c = np.cosh(t / 2.0)
    s = np.sinh(t / 2.0)
    return 0.5 * s * (1.0 + 2.0 * c - 2.0 * lam * s) + (c - 1.0) * (s - lam * c)


def axis_coefficient(lam: float, t):
    """Evolution of a component squarely on the Jc-line (equals f + g)."""
    return np.cosh(t) - lam * np.sinh(t)


def axis_coefficient_dt(lam: float, t):
    return np.sinh(t) - lam * np.cosh(t)


@dataclass(frozen=True)
class JacobiSolution:
    """One principal mode in the parallel frame {B_v(t), Jc(t)}.

    ``value`` and ``derivative`` are coefficient pairs against that
    frame; ``jc_weight`` is the initial projection <v, Jc(0)>.
    """

    lam: float
    t: float
    f: float
    g: float
    jc_weight: float
    value: tuple[float, float]
    derivative: tuple[float, float]


def jacobi_mode(lam: float, jc_weight: float, t: float) -> JacobiSolution:
    """Closed-form mode for a unit initial vector with curvature lam."""
    f = float(transverse_coefficient(lam, t))
    g = float(hopf_coefficient(lam, t))
    return JacobiSolution(
        lam=lam,
        t=t,
        f=f,
        g=g,
        jc_weight=jc_weight,
        value=(f, jc_weight * g),
        derivative=(
            float(transverse_coefficient_dt(lam, t)),
            jc_weight * float(hopf_coefficient_dt(lam, t)),
        ),
    )


# ---------------------------------------------------------------------------
# concrete frame realisation
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GeodesicNormalFrame:
    """Concrete coordinates for a profile of the two-projection type.

    The normal is e1 and J(normal) is e2.  The distinguished tangent
    direction sits at e3 (with J-image e4), the two projection carriers
    u1, u2 mix e2 and e4, and the remaining coordinates pair off under
    J.  ``basis`` rows are ordered (u1, u2, axis, pairs...) and
    ``lambdas`` assigns the principal curvature of each row.
    """

    n: int
    basis: np.ndarray
    lambdas: np.ndarray
    hopf: HopfAttitude
    lam3: float
    m1: int

    @cached_property
    def J(self) -> np.ndarray:
        return complex_structure(self.n)

    @property
    def dim(self) -> int:
        return 2 * self.n

    @cached_property
    def xi(self) -> np.ndarray:
        e = np.zeros(self.dim)
        e[0] = 1.0
        return e

    @cached_property
    def jxi(self) -> np.ndarray:
        return self.J @ self.xi

    @property
    def u1(self) -> np.ndarray:
        return self.basis[0]

    @property
    def u2(self) -> np.ndarray:
        return self.basis[1]

    @property
    def axis(self) -> np.ndarray:
        return self.basis[2]

    def decompose(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        coeffs = self.basis @ v
        if np.linalg.norm(v - coeffs @ self.basis) > 1e-10:
            raise ValueError("vector is not tangent to the hypersurface frame")
        return coeffs


def normal_frame(profile: PrincipalProfile, hopf: HopfAttitude | None = None):
    """Build the concrete frame for a three-curvature two-projection profile."""
    hopf = hopf or profile.hopf
    if hopf is None:
        raise ValidationError("profile carries no Hopf attitude")
    if profile.g != 3:
        raise ValidationError("frame construction needs three distinct curvatures")
    total = profile.total_dim
    if total % 2 != 1:
        raise ValidationError("hypersurface profile must have odd dimension")
    n = (total + 1) // 2
    lam1, lam2 = hopf.lam1, hopf.lam2
    lam3 = profile.axis_value()
    m1 = profile.multiplicity(lam1)
    if profile.multiplicity(lam2) != 1:
        raise ValidationError("second projection carrier must have multiplicity one")
    if m1 > n - 1:
        raise ValidationError(
            f"carrier multiplicity {m1} does not fit complex dimension {n}"
        )
    if profile.multiplicity(lam3) != 2 * n - 2 - m1:
        raise ValidationError("axis multiplicity inconsistent with frame layout")

    d = 2 * n
    e = np.eye(d)
    b1, b2 = hopf.b1, hopf.b2
    u1 = b1 * e[1] + b2 * e[3]
    u2 = b2 * e[1] - b1 * e[3]
    rows = [u1, u2, e[2]]
    lams = [lam1, lam2, lam3]
    pair_count = n - 2
    carriers = m1 - 1
    for p in range(pair_count):
        first, second = e[4 + 2 * p], e[5 + 2 * p]
        rows.extend([first, second])
        if p < carriers:
            lams.extend([lam1, lam3])
        else:
            lams.extend([lam3, lam3])
    return GeodesicNormalFrame(
        n=n,
        basis=np.array(rows),
        lambdas=np.array(lams),
        hopf=hopf,
        lam3=lam3,
        m1=m1,
    )


def jacobi_field(frame: GeodesicNormalFrame, v, t: float):
    """Closed-form field and derivative for an arbitrary tangent vector.

    Returns parallel-frame coefficient vectors (value, derivative).
    """
    coeffs = frame.decompose(v)
    value = np.zeros(frame.dim)
    deriv = np.zeros(frame.dim)
    for c, lam, row in zip(coeffs, frame.lambdas, frame.basis):
        if c == 0.0:
            continue
        w = float(row @ frame.jxi)
        value += c * (transverse_coefficient(lam, t) * row + w * hopf_coefficient(lam, t) * frame.jxi)
        deriv += c * (
            transverse_coefficient_dt(lam, t) * row
            + w * hopf_coefficient_dt(lam, t) * frame.jxi
        )
    return value, deriv


# ---------------------------------------------------------------------------
# numerical oracle
# ---------------------------------------------------------------------------


def _rk4_segment(z, zp, jc, h: float, nsteps: int):
    """Classic fourth-order steps of 4 w'' = w + 3 <w, jc> jc."""

    def acc(w):
        proj = np.tensordot(jc, w, axes=(0, 0))
        return 0.25 * (w + 3.0 * np.multiply.outer(jc, proj))

    for _ in range(nsteps):
        k1v, k1a = zp, acc(z)
        k2v, k2a = zp + 0.5 * h * k1a, acc(z + 0.5 * h * k1v)
        k3v, k3a = zp + 0.5 * h * k2a, acc(z + 0.5 * h * k2v)
        k4v, k4a = zp + h * k3a, acc(z + h * k3v)
        z = z + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        zp = zp + (h / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
    return z, zp


def jacobi_numeric(v0, v0_prime, jc, t: float, step: float):
    """Fourth-order integration of 4 w'' = w + 3 <w, jc> jc.

    ``v0``/``v0_prime`` may carry a trailing batch axis.  Returns the
    value and derivative at parameter t.
    """
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    z = np.array(v0, dtype=float)
    zp = np.array(v0_prime, dtype=float)
    jc = np.asarray(jc, dtype=float)
    if t == 0.0:
        return z, zp
    nsteps = max(1, int(math.ceil(abs(t) / step)))
    return _rk4_segment(z, zp, jc, t / nsteps, nsteps)


def curvature_propagator(model: CurvatureModel, direction, t: float):
    """Solution operators of the Jacobi equation from the curvature operator.

    Directions are classified spectrally: the operator -R(., c)c is
    diagonalised and cosh/sinh act on its eigenvalues, so no per-family
    case analysis enters.  Returns (cos, sin, cos_dt, sin_dt) matrices
    with value = cos @ w(0) + sin @ w'(0).
    """
    K = jacobi_operator(model, direction)
    K = 0.5 * (K + K.T)
    w, V = np.linalg.eigh(K)
    w = np.clip(w, 0.0, None)
    sq = np.sqrt(w)
    ch = np.cosh(sq * t)
    small = sq < 1e-12
    sh_over = np.where(small, t, np.sinh(sq * t) / np.where(small, 1.0, sq))
    cos_ = (V * ch) @ V.T
    sin_ = (V * sh_over) @ V.T
    cos_dt = (V * (sq * np.sinh(sq * t))) @ V.T
    sin_dt = (V * ch) @ V.T
    return cos_, sin_, cos_dt, sin_dt


# ---------------------------------------------------------------------------
# transversal map
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FocalMapData:
    """Differential data of the distance-r transversal map.

    ``phi`` and ``phi_dt`` hold the field values and derivatives of the
    frame basis as columns (parallel-frame coefficients).  ``d_block``
    is the 2x2 action on the projection carriers; ``c_block`` is
    -d_block_dt @ inv(d_block) when the block is invertible.
    ``kernel_dim`` counts vanishing singular values of the full
    differential, ``rank`` is the complement and ``image_codim`` the
    ambient codimension of the image (kernel_dim plus the normal
    direction itself).
    """

    r: float
    frame: GeodesicNormalFrame
    phi: np.ndarray
    phi_dt: np.ndarray
    singular_values: np.ndarray
    kernel_dim: int
    d_block: np.ndarray
    d_block_dt: np.ndarray
    eta: np.ndarray
    _c_block: np.ndarray | None
    c_reason: str | None

    @property
    def rank(self) -> int:
        return self.phi.shape[1] - self.kernel_dim

    @property
    def image_codim(self) -> int:
        return self.frame.dim - self.rank

    @property
    def c_block(self) -> np.ndarray:
        if self._c_block is None:
            raise FocalPointError(
                f"carrier block singular at distance {self.r}: {self.c_reason}",
                kernel_dim=self.kernel_dim,
                singular_values=self.singular_values,
            )
        return self._c_block

    @property
    def det_d(self) -> float:
        return float(np.linalg.det(self.d_block))


def transversal_map(
    profile: PrincipalProfile, r: float, hopf: HopfAttitude | None = None
) -> FocalMapData:
    """Differential of the map travelling distance r along the normals."""
    frame = normal_frame(profile, hopf)
    jxi = frame.jxi
    cols_v = []
    cols_d = []
    for lam, row in zip(frame.lambdas, frame.basis):
        w = float(row @ jxi)
        cols_v.append(
            transverse_coefficient(lam, r) * row + w * hopf_coefficient(lam, r) * jxi
        )
        cols_d.append(
            transverse_coefficient_dt(lam, r)
            * row
            + w * hopf_coefficient_dt(lam, r) * jxi
        )
    phi = np.array(cols_v).T
    phi_dt = np.array(cols_d).T
    svals = np.linalg.svd(phi, compute_uv=False)
    kernel_dim = int(np.sum(svals <= KERNEL_TOL))
    if kernel_dim:
        nonkernel = svals[svals > KERNEL_TOL]
        if nonkernel.size and nonkernel.min() < KERNEL_GAP:
            raise ValidationError(
                "singular values fall between the kernel threshold and the "
                f"gap guard at distance {r}: {svals}"
            )

    h = frame.hopf
    lam1, lam2 = h.lam1, h.lam2
    b1, b2 = h.b1, h.b2
    d_block = np.array(
        [
            [
                transverse_coefficient(lam1, r) + b1 * b1 * hopf_coefficient(lam1, r),
                b1 * b2 * hopf_coefficient(lam1, r),
            ],
            [
                b1 * b2 * hopf_coefficient(lam2, r),
                transverse_coefficient(lam2, r) + b2 * b2 * hopf_coefficient(lam2, r),
            ],
        ]
    )
    d_block_dt = np.array(
        [
            [
                transverse_coefficient_dt(lam1, r)
                + b1 * b1 * hopf_coefficient_dt(lam1, r),
                b1 * b2 * hopf_coefficient_dt(lam1, r),
            ],
            [
                b1 * b2 * hopf_coefficient_dt(lam2, r),
                transverse_coefficient_dt(lam2, r)
                + b2 * b2 * hopf_coefficient_dt(lam2, r),
            ],
        ]
    )
    det = float(np.linalg.det(d_block))
    if abs(det) > BLOCK_DET_TOL:
        c_block = -d_block_dt @ np.linalg.inv(d_block)
        reason = None
    else:
        c_block = None
        reason = f"det of the carrier block is {det:.3e}"
    return FocalMapData(
        r=r,
        frame=frame,
        phi=phi,
        phi_dt=phi_dt,
        singular_values=np.sort(svals)[::-1],
        kernel_dim=kernel_dim,
        d_block=d_block,
        d_block_dt=d_block_dt,
        eta=frame.xi.copy(),
        _c_block=c_block,
        c_reason=reason,
    )


@dataclass(frozen=True, eq=False)
class ImageShapeData:
    """Shape-operator data of the image of the transversal map.

    ``entries`` is the merged spectrum w.r.t. the translated normal,
    ``carrier_block`` the 2x2 matrix on the translated projection
    carriers (orthonormal basis), and ``axis_rate`` the eigenvalue on
    translated axis-class directions.
    """

    entries: tuple[tuple[float, int], ...]
    carrier_block: np.ndarray
    axis_rate: float


def image_shape_operator(focal: FocalMapData) -> ImageShapeData:
    """Spectrum of the image shape operator w.r.t. the translated normal."""
    if focal._c_block is None:
        raise FocalPointError(
            f"carrier block singular at distance {focal.r}: {focal.c_reason}",
            kernel_dim=focal.kernel_dim,
            singular_values=focal.singular_values,
        )
    U, s, _ = np.linalg.svd(focal.phi, full_matrices=False)
    p = int(np.sum(s > KERNEL_TOL))
    Q = U[:, :p]
    m_phi = Q.T @ focal.phi
    m_dt = Q.T @ focal.phi_dt
    S = -m_dt @ np.linalg.pinv(m_phi, rcond=1e-12)
    S = 0.5 * (S + S.T)
    entries = tuple(merge_spectrum(np.linalg.eigvalsh(S)))
    frame = focal.frame
    carrier_block = -np.linalg.inv(focal.d_block) @ focal.d_block_dt
    f3 = float(transverse_coefficient(frame.lam3, focal.r))
    axis_rate = -float(transverse_coefficient_dt(frame.lam3, focal.r)) / f3
    return ImageShapeData(entries=entries, carrier_block=carrier_block, axis_rate=axis_rate)
