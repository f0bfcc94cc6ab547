"""Model surfaces, their observation curves, and quadrature.

Three concrete Riemannian surfaces are supported:

* ``Torus2``   -- the flat square torus [-pi, pi)^2,
* ``Sphere2``  -- the round unit sphere in coordinates (theta, phi) with
  theta in [0, 2pi) the azimuth and phi in [0, pi] the colatitude,
* ``Revolution`` -- the warped product [-pi, pi] x S^1 with metric
  dz^2 + R(z)^2 dtheta^2 for a smooth, even, strictly positive profile
  R(z); this is the only model with boundary (z = +-pi).

Points and covectors are plain 2-vectors in chart coordinates:
(x, y) / (xi_x, xi_y) on the torus, (theta, phi) / (xi_theta, xi_phi)
on the sphere, and (z, theta) / (xi_z, xi_theta) on the revolution
surface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .util import LabError

TWO_PI = 2.0 * math.pi


class UnsupportedKind(LabError):
    pass


class ProfileConstraintViolation(LabError):
    pass


class NonPositiveProfile(LabError):
    pass


class OutOfChart(LabError):
    pass


class UnsupportedPair(LabError):
    pass


class TooFewNodes(LabError):
    pass


def wrap_angle(x):
    """Reduce an angle-like coordinate to the branch [-pi, pi)."""
    return np.mod(np.asarray(x, dtype=float) + math.pi, TWO_PI) - math.pi


# ---------------------------------------------------------------------------
# revolution profile
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RevolutionProfile:
    """Even cosine-series profile R(z) = sum_k c_k cos(k z) on [-pi, pi].

    The default profile is the unique three-term series through
    R(0) = 1, R(pi/2) = sqrt(5), R(pi) = 1/sqrt(2); it is checked to be
    strictly positive at construction.  Derived quantities:
    V = 1/R^2 and the conjugation potential
    V1 = -(1/4) (R'/R)^2 + (1/2) R''/R, which turns the warped-product
    Laplacian, conjugated by R^{1/2}, into d_z^2 + R^{-2} d_theta^2 - V1.
    """

    cos_coeffs: tuple[float, ...]

    def __post_init__(self):
        if len(self.cos_coeffs) == 0:
            raise ProfileConstraintViolation("empty cosine series")
        zs = np.linspace(-math.pi, math.pi, 8193)
        if np.min(self.R(zs)) <= 0.0:
            raise NonPositiveProfile(
                "profile R(z) must be strictly positive on [-pi, pi]")

    def _series(self, z, deriv: int):
        z = np.asarray(z, dtype=float)
        out = np.zeros_like(z)
        for k, c in enumerate(self.cos_coeffs):
            if deriv == 0:
                out += c * np.cos(k * z)
            elif deriv == 1:
                out += -c * k * np.sin(k * z)
            else:
                out += -c * k * k * np.cos(k * z)
        return out

    def R(self, z):
        return self._series(z, 0)

    def Rp(self, z):
        return self._series(z, 1)

    def Rpp(self, z):
        return self._series(z, 2)

    def V(self, z):
        return 1.0 / self.R(z) ** 2

    def V1(self, z):
        R = self.R(z)
        return -0.25 * (self.Rp(z) / R) ** 2 + 0.5 * self.Rpp(z) / R


def default_profile() -> RevolutionProfile:
    """Three-term cosine profile through R(0)=1, R(pi/2)=sqrt5, R(pi)=2^-1/2."""
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    a1 = (1.0 - inv_sqrt2) / 2.0
    a0 = ((1.0 + inv_sqrt2) / 2.0 + math.sqrt(5.0)) / 2.0
    a2 = (1.0 + inv_sqrt2) / 2.0 - a0
    prof = RevolutionProfile((a0, a1, a2))
    _check_point_constraints(prof)
    return prof


def _check_point_constraints(prof: RevolutionProfile, tol: float = 1e-12):
    targets = [(0.0, 1.0), (math.pi / 2.0, math.sqrt(5.0)),
               (math.pi, 1.0 / math.sqrt(2.0))]
    for z, want in targets:
        got = float(prof.R(z))
        if abs(got - want) > tol:
            raise ProfileConstraintViolation(
                f"R({z:g}) = {got!r}, expected {want!r} to {tol:g}")


def profile_eval(prof: RevolutionProfile, z):
    """Return (R, R', R'', V, V1) at z, for z in [-pi, pi]."""
    z = np.asarray(z, dtype=float)
    if np.any(np.abs(z) > math.pi + 1e-12):
        raise OutOfChart("z outside [-pi, pi]")
    return (prof.R(z), prof.Rp(z), prof.Rpp(z), prof.V(z), prof.V1(z))


# ---------------------------------------------------------------------------
# hypersurfaces
# ---------------------------------------------------------------------------

#: component names understood per manifold kind
_COMPONENTS = {
    "torus2": ("x0", "y0"),
    "sphere2": ("equator",),
    "revolution": ("waist",),
}


@dataclass(frozen=True)
class Hypersurface:
    """A closed observation curve (or a finite union of them) in Int(M).

    ``components`` lists the individual closed curves; the built-in ones
    are 'x0'/'y0' (torus coordinate circles), 'equator' (sphere) and
    'waist' (revolution, z=0).  All carry the coorientation ``sign``
    fixed at +1: the unit normal points toward increasing signed
    distance.
    """

    components: tuple[str, ...]
    sign: int = 1

    @property
    def kind(self) -> str:
        if len(self.components) == 1:
            return self.components[0]
        return "union(" + ",".join(self.components) + ")"


# ---------------------------------------------------------------------------
# manifolds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ManifoldModel:
    """One of the three model surfaces plus its observation curve(s)."""

    kind: str                       # 'torus2' | 'sphere2' | 'revolution'
    hypersurfaces: tuple[Hypersurface, ...] = ()
    profile: RevolutionProfile | None = None

    @property
    def has_boundary(self) -> bool:
        return self.kind == "revolution"

    # -- chart checks ------------------------------------------------------

    def _check_chart(self, x):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        if self.kind == "sphere2":
            phi = x[:, 1]
            if np.any((phi <= 0.0) | (phi >= math.pi)):
                raise OutOfChart("sphere chart degenerates at the poles")
        elif self.kind == "revolution":
            if np.any(np.abs(x[:, 0]) > math.pi + 1e-12):
                raise OutOfChart("z outside [-pi, pi]")
        return x

    # -- metric ------------------------------------------------------------

    def cometric_diag(self, x):
        """Diagonal (g^11, g^22) of the inverse metric at points x."""
        x = self._check_chart(x)
        if self.kind == "torus2":
            return np.ones((x.shape[0], 2))
        if self.kind == "sphere2":
            s = np.sin(x[:, 1])
            return np.stack([1.0 / s ** 2, np.ones_like(s)], axis=1)
        R = self.profile.R(x[:, 0])
        return np.stack([np.ones_like(R), 1.0 / R ** 2], axis=1)

    def metric_diag(self, x):
        """Diagonal (g_11, g_22) of the metric at points x."""
        return 1.0 / self.cometric_diag(x)

    def covector_norm(self, x, xi):
        """|xi|_g, the cometric norm of a covector."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        xi = np.atleast_2d(np.asarray(xi, dtype=float))
        gi = self.cometric_diag(x)
        return np.sqrt(np.einsum("ij,ij->i", gi, xi ** 2))

    def vector_norm(self, x, v):
        """|v|_g of a tangent vector."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        v = np.atleast_2d(np.asarray(v, dtype=float))
        g = self.metric_diag(x)
        return np.sqrt(np.einsum("ij,ij->i", g, v ** 2))

    def flat(self, x, v):
        """Lower the index: tangent vector -> covector."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        v = np.atleast_2d(np.asarray(v, dtype=float))
        return self.metric_diag(x) * v

    def sharp(self, x, xi):
        """Raise the index: covector -> tangent vector."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        xi = np.atleast_2d(np.asarray(xi, dtype=float))
        return self.cometric_diag(x) * xi


def metric_norm(M: ManifoldModel, x, xi) -> float:
    """Riemannian (cometric) norm |xi|_g of a covector at x."""
    return float(M.covector_norm(x, xi)[0])


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _make_hypersurface(kind: str, sigma) -> Hypersurface:
    if isinstance(sigma, str):
        names = (sigma,)
    else:
        names = tuple(sigma)
    if len(names) == 0:
        raise UnsupportedKind("empty hypersurface specification")
    allowed = _COMPONENTS[kind]
    for name in names:
        if name not in allowed:
            raise UnsupportedKind(
                f"hypersurface {name!r} is not defined on {kind!r}")
    if len(set(names)) != len(names):
        raise UnsupportedKind("duplicate hypersurface components")
    return Hypersurface(components=names)


def build_manifold(config: dict) -> ManifoldModel:
    """Build a ManifoldModel from a JSON-style descriptor.

    Expected keys: ``kind`` ('torus2' | 'sphere2' | 'revolution');
    optional ``profile`` ({"constraints": "paper-default"} or
    {"cos_coeffs": [...]}); optional ``sigma`` (component name or list).
    """
    if not isinstance(config, dict) or "kind" not in config:
        raise UnsupportedKind("manifold descriptor must carry a 'kind'")
    kind = config["kind"]
    if kind not in _COMPONENTS:
        raise UnsupportedKind(f"unknown manifold kind {kind!r}")

    unknown = set(config) - {"kind", "profile", "sigma"}
    if unknown:
        raise UnsupportedKind(f"unknown descriptor keys {sorted(unknown)}")

    profile = None
    if kind == "revolution":
        spec = config.get("profile", {"constraints": "paper-default"})
        if "cos_coeffs" in spec:
            profile = RevolutionProfile(tuple(float(c) for c in spec["cos_coeffs"]))
        elif spec.get("constraints") == "paper-default":
            n_terms = int(spec.get("n_terms", 3))
            if n_terms < 3:
                raise ProfileConstraintViolation(
                    "three point constraints need at least three cosine terms")
            profile = default_profile()
            if n_terms > 3:
                profile = RevolutionProfile(
                    profile.cos_coeffs + (0.0,) * (n_terms - 3))
        else:
            raise ProfileConstraintViolation(
                f"unsupported profile descriptor {spec!r}")
    elif "profile" in config:
        raise UnsupportedKind(f"{kind!r} takes no profile")

    surfaces = ()
    if "sigma" in config:
        surfaces = (_make_hypersurface(kind, config["sigma"]),)
    return ManifoldModel(kind=kind, hypersurfaces=surfaces, profile=profile)


# ---------------------------------------------------------------------------
# Fermi data for each (manifold, component) pair
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FermiChart:
    """Normal data of one curve component: signed distance x1, the unit
    normal direction, and the induced tangential cometric r0(x', xi')."""

    manifold: ManifoldModel
    component: str
    x1: Callable[[np.ndarray], np.ndarray]           # points -> signed dist
    xi1: Callable[[np.ndarray, np.ndarray], np.ndarray]  # (points, covecs)
    point_at: Callable[[np.ndarray], np.ndarray]     # curve parameter -> point
    normal_step: Callable[[np.ndarray, float], np.ndarray]  # geodesic offset
    r0_coeff: float                                  # r0 = r0_coeff * xi'^2

    def r0(self, s, xi_prime):
        """Tangential cometric r0(x', xi') on the curve (s unused: the
        built-in curves are homogeneous)."""
        del s
        return self.r0_coeff * np.asarray(xi_prime, dtype=float) ** 2


def fermi_chart(M: ManifoldModel, component: str) -> FermiChart:
    """Normal chart data for one hypersurface component of M."""
    if M.kind == "torus2" and component in ("x0", "y0"):
        axis = 0 if component == "x0" else 1

        def x1(p):
            return wrap_angle(np.atleast_2d(p)[:, axis])

        def xi1(p, xi):
            del p
            return np.atleast_2d(xi)[:, axis]

        def point_at(s):
            s = np.atleast_1d(np.asarray(s, dtype=float))
            pts = np.zeros((s.size, 2))
            pts[:, 1 - axis] = wrap_angle(s)
            return pts

        def normal_step(p, eps):
            q = np.array(np.atleast_2d(p), dtype=float, copy=True)
            q[:, axis] += eps
            return q

        return FermiChart(M, component, x1, xi1, point_at, normal_step, 1.0)

    if M.kind == "sphere2" and component == "equator":
        def x1(p):
            return math.pi / 2.0 - np.atleast_2d(p)[:, 1]

        def xi1(p, xi):
            del p
            return -np.atleast_2d(xi)[:, 1]

        def point_at(s):
            s = np.atleast_1d(np.asarray(s, dtype=float))
            return np.stack([np.mod(s, TWO_PI),
                             np.full_like(s, math.pi / 2.0)], axis=1)

        def normal_step(p, eps):
            q = np.array(np.atleast_2d(p), dtype=float, copy=True)
            q[:, 1] -= eps
            return q

        return FermiChart(M, component, x1, xi1, point_at, normal_step, 1.0)

    if M.kind == "revolution" and component == "waist":
        r00 = float(1.0 / M.profile.R(0.0) ** 2)

        def x1(p):
            return np.atleast_2d(p)[:, 0]

        def xi1(p, xi):
            del p
            return np.atleast_2d(xi)[:, 0]

        def point_at(s):
            s = np.atleast_1d(np.asarray(s, dtype=float))
            return np.stack([np.zeros_like(s), np.mod(s, TWO_PI)], axis=1)

        def normal_step(p, eps):
            q = np.array(np.atleast_2d(p), dtype=float, copy=True)
            q[:, 0] += eps
            return q

        return FermiChart(M, component, x1, xi1, point_at, normal_step, r00)

    raise UnsupportedPair(f"no Fermi chart for ({M.kind!r}, {component!r})")


# ---------------------------------------------------------------------------
# quadrature on the curves and on the surface
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SigmaQuadrature:
    """Arc-length quadrature on a hypersurface (periodic trapezoid per
    component; components concatenated)."""

    surface: Hypersurface
    nodes: np.ndarray          # (N, 2) chart points
    weights: np.ndarray        # (N,) arc-length weights
    params: np.ndarray         # (N,) curve parameter of each node
    component_of: np.ndarray   # (N,) index into surface.components

    @property
    def total_length(self) -> float:
        return float(self.weights.sum())

    def integrate(self, values) -> complex:
        values = np.asarray(values)
        return complex(np.sum(self.weights * values))

    def norm_l2(self, values) -> float:
        values = np.asarray(values)
        return float(math.sqrt(abs(np.sum(self.weights * np.abs(values) ** 2))))


def _component_length(M: ManifoldModel, component: str) -> float:
    if component in ("x0", "y0", "equator"):
        return TWO_PI
    if component == "waist":
        return TWO_PI * float(M.profile.R(0.0))
    raise UnsupportedPair(component)


def sigma_quadrature(M: ManifoldModel, surface: Hypersurface,
                     n: int) -> SigmaQuadrature:
    """Equispaced periodic (trapezoid) nodes with n points per component.

    Spectrally accurate for smooth periodic integrands: exact for
    trigonometric polynomials of degree < n.
    """
    if n < 4:
        raise TooFewNodes("need at least 4 nodes per component")
    nodes, weights, params, comp = [], [], [], []
    for ci, name in enumerate(surface.components):
        chart = fermi_chart(M, name)
        length = _component_length(M, name)
        s = TWO_PI * np.arange(n) / n
        nodes.append(chart.point_at(s))
        weights.append(np.full(n, length / n))
        params.append(s)
        comp.append(np.full(n, ci, dtype=int))
    return SigmaQuadrature(surface,
                           np.concatenate(nodes, axis=0),
                           np.concatenate(weights),
                           np.concatenate(params),
                           np.concatenate(comp))


def area_quadrature(M: ManifoldModel, n_main: int = 401, n_theta: int = 64):
    """Quadrature (points, weights) for integrals over the whole surface.

    Torus: uniform product grid (exact for trigonometric polynomials).
    Sphere: Gauss-Legendre in cos(phi) x uniform theta, exact for
    spherical polynomials; n_main is the Gauss node count.
    Revolution: composite Simpson in z (n_main odd, >= 401 by default)
    x uniform theta, with the R(z) volume weight.
    """
    if M.kind == "torus2":
        x = -math.pi + TWO_PI * np.arange(n_main) / n_main
        y = -math.pi + TWO_PI * np.arange(n_theta) / n_theta
        X, Y = np.meshgrid(x, y, indexing="ij")
        pts = np.stack([X.ravel(), Y.ravel()], axis=1)
        w = np.full(pts.shape[0], (TWO_PI / n_main) * (TWO_PI / n_theta))
        return pts, w
    if M.kind == "sphere2":
        xg, wg = np.polynomial.legendre.leggauss(n_main)
        phi = np.arccos(xg)
        th = TWO_PI * np.arange(n_theta) / n_theta
        TH, PH = np.meshgrid(th, phi, indexing="ij")
        pts = np.stack([TH.ravel(), PH.ravel()], axis=1)
        w = np.tile(wg, n_theta) * (TWO_PI / n_theta)
        return pts, w
    # revolution: Simpson in z
    n_z = n_main if n_main % 2 == 1 else n_main + 1
    z = np.linspace(-math.pi, math.pi, n_z)
    h = z[1] - z[0]
    ws = np.ones(n_z)
    ws[1:-1:2] = 4.0
    ws[2:-1:2] = 2.0
    ws *= h / 3.0
    th = TWO_PI * np.arange(n_theta) / n_theta
    TH, Z = np.meshgrid(th, z, indexing="ij")
    pts = np.stack([Z.ravel(), TH.ravel()], axis=1)
    w = np.tile(ws * M.profile.R(z), n_theta) * (TWO_PI / n_theta)
    return pts, w
