"""Solvable Lie-group model of the ambient space.

The ambient space is realised as a solvable group with Lie algebra
a + z + v: a one-dimensional abelian part spanned by A, the
one-dimensional centre of the nilpotent part spanned by Z, and a
(2n-2)-dimensional part v carrying a complex structure i.  The metric
makes the basis A, Z, V_1, ..., V_{2n-2} orthonormal and the brackets
are

    [A, Z] = Z,   [A, V] = V/2,   [U, V] = <iU, V> Z   (U, V in v).

The left-invariant Levi-Civita connection comes from the Koszul
formula; its curvature must reproduce the closed-form ambient tensor
under the identification A -> e1, Z -> e2, V_j -> e_{2+j}, which is
enforced by tests rather than assumed.

Orbit models of subgroups provide the ruled minimal submanifolds: for
a totally real k-dimensional slice wperp of v, the subalgebra
a + z + (v - wperp) exponentiates to a (2n-k)-dimensional minimal
submanifold whose second fundamental form is concentrated on the
single pairing of Z against i(wperp).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .ambient import CurvatureModel, complex_structure
from .errors import ValidationError

__all__ = [
    "OrbitModel",
    "RuledSpec",
    "SolvableAlgebra",
    "algebra_curvature",
    "algebra_to_dict",
    "build_algebra",
    "build_ruled",
    "default_ruled_spec",
    "horosphere_model",
    "levi_civita",
    "ruled_to_dict",
]


@dataclass(frozen=True, eq=False)
class SolvableAlgebra:
    """Structure constants and metric data of the group model.

    Basis index 0 is A, index 1 is Z, indices 2..2n-1 are V_1..V_{2n-2}
    with V_{2j} = i V_{2j-1}.  ``bracket[i, j]`` holds the coefficient
    vector of [e_i, e_j].
    """

    n: int
    bracket: np.ndarray
    names: tuple[str, ...]

    @property
    def dim(self) -> int:
        return 2 * self.n

    @cached_property
    def J(self) -> np.ndarray:
        """Ambient complex structure under the standard identification."""
        return complex_structure(self.n)

    @cached_property
    def gamma(self) -> np.ndarray:
        """Koszul connection coefficients gamma[i, j, k] = <D_i e_j, e_k>.

        2 <D_i e_j, e_k> = <[e_i,e_j],e_k> - <[e_j,e_k],e_i> + <[e_k,e_i],e_j>.
        """
        b = self.bracket
        # transpose(b, (2, 0, 1))[i, j, k] = b[j, k, i]; (1, 2, 0) gives b[k, i, j]
        return 0.5 * (b - np.transpose(b, (2, 0, 1)) + np.transpose(b, (1, 2, 0)))

    def bracket_of(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.bracket)

    @property
    def a_index(self) -> int:
        return 0

    @property
    def z_index(self) -> int:
        return 1

    def v_indices(self) -> range:
        return range(2, self.dim)


def build_algebra(n: int) -> SolvableAlgebra:
    """Construct the algebra for complex dimension n >= 2."""
    if n < 2:
        raise ValueError(f"complex dimension must be >= 2, got {n}")
    d = 2 * n
    bracket = np.zeros((d, d, d))
    # [A, Z] = Z
    bracket[0, 1, 1] = 1.0
    bracket[1, 0, 1] = -1.0
    # [A, V] = V / 2
    for a in range(2, d):
        bracket[0, a, a] = 0.5
        bracket[a, 0, a] = -0.5
    # [U, V] = <iU, V> Z on the v-part; i pairs consecutive V's
    for a in range(0, d - 2, 2):
        i, j = 2 + a, 3 + a
        bracket[i, j, 1] = 1.0
        bracket[j, i, 1] = -1.0
    names = ("A", "Z") + tuple(f"V{j + 1}" for j in range(d - 2))
    return SolvableAlgebra(n=n, bracket=bracket, names=names)


def levi_civita(alg: SolvableAlgebra, x, y) -> np.ndarray:
    """Covariant derivative D_x y of left-invariant fields at the identity."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != (alg.dim,) or y.shape != (alg.dim,):
        raise ValueError(f"expected vectors of dimension {alg.dim}")
    return np.einsum("i,j,ijk->k", x, y, alg.gamma)


def algebra_curvature(alg: SolvableAlgebra, x, y, z) -> np.ndarray:
    """Curvature R(x,y)z = [D_x, D_y]z - D_[x,y] z of the group metric."""
    nxz = levi_civita(alg, y, z)
    nyz = levi_civita(alg, x, z)
    term1 = levi_civita(alg, x, nxz)
    term2 = levi_civita(alg, y, nyz)
    return term1 - term2 - levi_civita(alg, alg.bracket_of(x, y), z)


# ---------------------------------------------------------------------------
# ruled submanifold construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RuledSpec:
    """Choice of a totally real normal slice inside the v-part.

    ``w_perp`` holds k orthonormal rows (full algebra coordinates, with
    vanishing A and Z components).
    """

    k: int
    w_perp: np.ndarray


def default_ruled_spec(alg: SolvableAlgebra, k: int) -> RuledSpec:
    """Canonical slice spanned by V_1, V_3, ..., V_{2k-1}."""
    if not 1 <= k <= alg.n - 1:
        raise ValidationError(f"corank must lie in 1..{alg.n - 1}, got {k}")
    rows = np.zeros((k, alg.dim))
    for j in range(k):
        rows[j, 2 + 2 * j] = 1.0
    return RuledSpec(k=k, w_perp=rows)


def validate_ruled_spec(alg: SolvableAlgebra, spec: RuledSpec) -> None:
    w = np.asarray(spec.w_perp, dtype=float)
    if w.shape != (spec.k, alg.dim):
        raise ValidationError(f"w_perp must be {spec.k} x {alg.dim}")
    if not 1 <= spec.k <= alg.n - 1:
        raise ValidationError(f"corank must lie in 1..{alg.n - 1}, got {spec.k}")
    if np.max(np.abs(w[:, :2])) > 1e-12:
        raise ValidationError("normal slice must lie inside the v-part")
    if np.max(np.abs(w @ w.T - np.eye(spec.k))) > 1e-12:
        raise ValidationError("normal slice basis is not orthonormal")
    # totally real: J maps the slice into its orthogonal complement
    jw = w @ alg.J.T
    if np.max(np.abs(jw @ w.T)) > 1e-12:
        raise ValidationError("normal slice is not totally real")


@dataclass(frozen=True, eq=False)
class OrbitModel:
    """Orbit of a subgroup through the base point, with induced data.

    ``tangent`` and ``normal`` hold orthonormal rows in algebra
    coordinates.  The second fundamental form is the normal part of the
    ambient Koszul connection restricted to the tangent rows; for a
    hypersurface orbit the shape operator and connection samples feed
    the ambient residual evaluators.
    """

    algebra: SolvableAlgebra
    tangent: np.ndarray
    normal: np.ndarray

    def __post_init__(self):
        t, nr = self.tangent, self.normal
        d = self.algebra.dim
        full = np.vstack([t, nr])
        if full.shape != (d, d) or np.max(np.abs(full @ full.T - np.eye(d))) > 1e-10:
            raise ValidationError("tangent/normal rows do not form an orthonormal basis")
        # subalgebra closure
        for i in range(t.shape[0]):
            for j in range(t.shape[0]):
                br = self.algebra.bracket_of(t[i], t[j])
                if np.linalg.norm(nr @ br) > 1e-12:
                    raise ValidationError("tangent space is not closed under the bracket")

    @property
    def dim(self) -> int:
        return self.tangent.shape[0]

    @property
    def codim(self) -> int:
        return self.normal.shape[0]

    def second_fundamental(self, x, y) -> np.ndarray:
        """Normal component of the ambient derivative, in algebra coordinates."""
        amb = levi_civita(self.algebra, x, y)
        return (self.normal @ amb) @ self.normal

    def shape_operator(self, xi) -> np.ndarray:
        """Symmetric matrix of the shape operator w.r.t. normal xi, tangent frame."""
        xi = np.asarray(xi, dtype=float)
        m = self.dim
        S = np.empty((m, m))
        for i in range(m):
            for j in range(m):
                S[i, j] = self.second_fundamental(self.tangent[i], self.tangent[j]) @ xi
        return 0.5 * (S + S.T)

    @cached_property
    def intrinsic_gamma(self) -> np.ndarray:
        """Induced connection coefficients over the tangent frame."""
        m = self.dim
        g = np.empty((m, m, m))
        for i in range(m):
            for j in range(m):
                amb = levi_civita(self.algebra, self.tangent[i], self.tangent[j])
                g[i, j] = self.tangent @ amb
        return g

    def hypersurface_data(self, orientation: float = 1.0):
        """Package codimension-one orbits for the ambient residual evaluators."""
        from .ambient import HypersurfacePointData

        if self.codim != 1:
            raise ValidationError("hypersurface data requires a codimension-one orbit")
        xi = orientation * self.normal[0]
        return HypersurfacePointData(
            model=CurvatureModel(self.algebra.n),
            unit_normal=xi,
            tangent_basis=self.tangent,
            shape_matrix=self.shape_operator(xi),
            connection=self.intrinsic_gamma,
        )


@dataclass(frozen=True, eq=False)
class RuledModel:
    """Ruled minimal submanifold: orbit of a + z + w with slice data."""

    orbit: OrbitModel
    spec: RuledSpec

    @property
    def algebra(self) -> SolvableAlgebra:
        return self.orbit.algebra

    @property
    def w_perp(self) -> np.ndarray:
        return self.spec.w_perp

    @cached_property
    def z_vector(self) -> np.ndarray:
        z = np.zeros(self.algebra.dim)
        z[self.algebra.z_index] = 1.0
        return z

    def shape_spectrum(self, xi):
        """Eigenvalues and eigenvectors of the shape operator w.r.t. unit xi."""
        S = self.orbit.shape_operator(np.asarray(xi, dtype=float))
        vals, vecs = np.linalg.eigh(S)
        return vals, vecs


def build_ruled(alg: SolvableAlgebra, spec: RuledSpec) -> RuledModel:
    """Orbit model of the subalgebra a + z + (v minus the chosen slice)."""
    validate_ruled_spec(alg, spec)
    d = alg.dim
    w = spec.w_perp
    # tangent rows: A, Z, then an orthonormal basis of v minus the slice
    proj = np.eye(d)
    for row in w:
        proj -= np.outer(row, row)
    v_block = proj[2:, :]
    # orthonormalise the projected v-directions
    q, r = np.linalg.qr(v_block.T)
    keep = np.abs(np.diag(r)) > 1e-9
    w_rows = q.T[keep]
    tangent = np.vstack([np.eye(d)[:2], w_rows])
    if tangent.shape[0] != d - spec.k:
        raise ValidationError("slice does not have the declared dimension")
    return RuledModel(orbit=OrbitModel(algebra=alg, tangent=tangent, normal=w), spec=spec)


def horosphere_model(alg: SolvableAlgebra) -> OrbitModel:
    """Orbit of the nilpotent part z + v; the normal is the A-direction."""
    d = alg.dim
    tangent = np.eye(d)[1:]
    normal = np.eye(d)[:1]
    return OrbitModel(algebra=alg, tangent=tangent, normal=normal)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def algebra_to_dict(alg: SolvableAlgebra) -> dict:
    """JSON-ready description: basis labels and non-zero structure constants."""
    entries = []
    d = alg.dim
    for i in range(d):
        for j in range(i + 1, d):
            coeffs = alg.bracket[i, j]
            for k in np.nonzero(np.abs(coeffs) > 0)[0]:
                entries.append(
                    {
                        "left": alg.names[i],
                        "right": alg.names[j],
                        "out": alg.names[int(k)],
                        "coeff": float(coeffs[k]),
                    }
                )
    return {"n": alg.n, "basis": list(alg.names), "brackets": entries}


def ruled_to_dict(model: RuledModel) -> dict:
    alg = model.algebra
    return {
        "n": alg.n,
        "k": model.spec.k,
        "dim": model.orbit.dim,
        "normal_slice": [list(map(float, row)) for row in model.w_perp],
        "tangent": [list(map(float, row)) for row in model.orbit.tangent],
    }
