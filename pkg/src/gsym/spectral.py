"""Real-symmetric spectral analysis: clustered eigendecompositions, the graph
Laplacian, circulant Fourier data, Chebyshev characteristic polynomials, color
decompositions, the color-spectral closure, and explicit heat/wave stepping.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError, SizeCapError
from .graphs import EXHAUSTIVE_CAP, NUMERIC_CAP, Graph

DEFAULT_TOL = 1e-9


def _require_symmetric(m):
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ContractError("expected a square matrix")
    if m.shape[0] > NUMERIC_CAP:
        raise SizeCapError(f"matrices are capped at n <= {NUMERIC_CAP}")
    if not np.array_equal(m, m.T):
        raise ContractError("matrix is not symmetric")
    return m


@dataclass
class SpectralDecomposition:
    """Clustered eigenvalues with orthogonal projections onto eigenspaces."""

    eigenvalues: list
    multiplicities: list
    projections: list
    eigenvectors: np.ndarray
    tol: float

    def reconstruct(self):
        out = np.zeros_like(self.projections[0])
        for lam, p in zip(self.eigenvalues, self.projections):
            out += lam * p
        return out

    def projection_for(self, value, atol=1e-6):
        for lam, p in zip(self.eigenvalues, self.projections):
            if abs(lam - value) <= atol:
                return p
        raise ContractError(f"no eigenvalue near {value}")


def cluster_values(values, tol):
    """Single-linkage clustering of a sorted 1-D array at gap threshold tol."""
    clusters = []
    current = [values[0]]
    for v in values[1:]:
        if v - current[-1] <= tol:
            current.append(v)
        else:
            clusters.append(current)
            current = [v]
    clusters.append(current)
    return clusters


def eigen_sym(m, tol=None):
    """Eigendecomposition of a real symmetric matrix with eigenvalue clustering.

    Eigenvalues closer than the clustering tolerance are merged into a single
    eigenvalue with a rank > 1 projection.  The backend is LAPACK's symmetric
    solver; the clustering and projection layers are ours.
    """
    m = _require_symmetric(m)
    if tol is not None and tol <= 0:
        raise ContractError("tol must be positive")
    scale = max(1.0, float(np.max(np.abs(m))) if m.size else 1.0)
    if tol is None:
        tol = DEFAULT_TOL * scale
    w, u = np.linalg.eigh(m)
    eigenvalues, multiplicities, projections = [], [], []
    idx = 0
    for cluster in cluster_values(list(w), tol):
        k = len(cluster)
        block = u[:, idx : idx + k]
        eigenvalues.append(float(np.mean(cluster)))
        multiplicities.append(k)
        projections.append(block @ block.T)
        idx += k
    return SpectralDecomposition(eigenvalues, multiplicities, projections, u, tol)


def spectral_radius(g_or_m):
    m = g_or_m.adjacency() if isinstance(g_or_m, Graph) else g_or_m
    dec = eigen_sym(np.asarray(m, dtype=float))
    return max(abs(v) for v in dec.eigenvalues)


def laplacian(g):
    """L = diag(valences) - d, as an integer matrix."""
    d = g.adjacency()
    return np.diag(d.sum(axis=1)) - d


# -- circulant matrices ------------------------------------------------------


def circulant_symbol(m):
    """First row gamma if m[i][j] == gamma[(j - i) mod n] exactly, else None."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ContractError("expected a square matrix")
    n = m.shape[0]
    gamma = m[0].copy()
    for i in range(1, n):
        if not np.array_equal(m[i], np.roll(gamma, i)):
            return None
    return gamma


def fourier_eigenvalues(gamma):
    """q_j = sum_r gamma_r w^(jr), w = exp(2 pi i / n)."""
    gamma = np.asarray(gamma, dtype=complex)
    n = gamma.shape[0]
    w = np.exp(2j * np.pi / n)
    return [complex(sum(gamma[r] * w ** (j * r) for r in range(n))) for j in range(n)]


# -- Chebyshev characteristic polynomials -------------------------------------


def segment_charpoly(n):
    """Coefficients (ascending powers) of det(xI - d) for the n-vertex path.

    P_0 = 1, P_1 = x, P_{k+1} = x P_k - P_{k-1}.
    """
    if n < 0:
        raise ContractError("n must be >= 0")
    p_prev, p = [1], [0, 1]
    if n == 0:
        return p_prev
    for _ in range(n - 1):
        shifted = [0] + p
        nxt = [a - b for a, b in zip(shifted, p_prev + [0] * (len(shifted) - len(p_prev)))]
        p_prev, p = p, nxt
    return p


def poly_eval(coeffs, x):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


# -- color decomposition -----------------------------------------------------


def color_decomposition(m, tol=0.0):
    """Split m into (value, 0-1 support matrix) pairs, clustering entries at tol.

    The supports are disjoint and cover every position; sum(value * support)
    reconstructs m within tol.
    """
    m = np.asarray(m, dtype=float)
    if tol < 0:
        raise ContractError("tol must be >= 0")
    flat = sorted(set(m.flatten().tolist()))
    reps = []
    for cluster in cluster_values(flat, tol) if flat else []:
        reps.append(sum(cluster) / len(cluster))
    out = []
    assigned = np.zeros(m.shape, dtype=bool)
    for rep in reps:
        support = (np.abs(m - rep) <= tol + 1e-300) & ~assigned
        if support.any():
            assigned |= support
            out.append((rep, support.astype(np.int64)))
    return out


# -- color-spectral closure ----------------------------------------------------


@dataclass
class MatrixAlgebraBasis:
    """Linearly independent spanning set of a matrix algebra, with metadata."""

    basis: list
    dimension: int
    converged: bool = True

    def contains(self, m, tol=1e-8):
        """Span-membership test at the given rank tolerance."""
        stack = np.array([b.flatten() for b in self.basis], dtype=float)
        target = np.asarray(m, dtype=float).flatten()
        sol, *_ = np.linalg.lstsq(stack.T, target, rcond=None)
        return bool(np.max(np.abs(stack.T @ sol - target)) <= tol * max(1.0, np.max(np.abs(target))))


class _SpanTracker:
    """Incremental orthonormal span of flattened matrices."""

    def __init__(self, rank_tol=1e-8):
        self.onb = []
        self.members = []
        self.rank_tol = rank_tol

    def add(self, m):
        v = np.asarray(m, dtype=float).flatten()
        norm0 = np.linalg.norm(v)
        if norm0 == 0:
            return False
        for q in self.onb:
            v = v - (q @ v) * q
        if np.linalg.norm(v) > self.rank_tol * max(1.0, norm0):
            # Re-orthogonalize once for numerical hygiene.
            for q in self.onb:
                v = v - (q @ v) * q
            self.onb.append(v / np.linalg.norm(v))
            self.members.append(np.asarray(m, dtype=float))
            return True
        return False

    @property
    def dimension(self):
        return len(self.onb)


def color_spectral_closure(d, tol=None, max_iter=16, rank_tol=1e-8):
    """Closure of span{I, d} under spectral projections and color components.

    Starting from {I, d}, each round replaces every symmetric element by its
    spectral projections and every element by its color components, extending
    the linear span; iteration stops when the span dimension is stable two
    rounds in a row, or flags non-convergence after max_iter rounds.
    """
    d = _require_symmetric(d)
    n = d.shape[0]
    scale = max(1.0, float(np.max(np.abs(d))) if d.size else 1.0)
    ctol = DEFAULT_TOL * scale if tol is None else tol
    span = _SpanTracker(rank_tol)
    span.add(np.eye(n))
    span.add(d)
    stable_rounds = 0
    for _ in range(max_iter):
        before = span.dimension
        current = list(span.members)
        for m in current:
            if np.allclose(m, m.T, atol=ctol):
                sym = (m + m.T) / 2.0
                for p in eigen_sym(sym, tol=max(ctol, DEFAULT_TOL)).projections:
                    span.add(p)
        for m in list(span.members):
            for _, comp in color_decomposition(m, tol=ctol):
                span.add(comp.astype(float))
        if span.dimension == before:
            stable_rounds += 1
            if stable_rounds >= 2:
                return MatrixAlgebraBasis(span.members, span.dimension, True)
        else:
            stable_rounds = 0
    return MatrixAlgebraBasis(span.members, span.dimension, False)


# -- exact coherent closure (Weisfeiler-Leman pair refinement) -----------------


def coherent_closure_exact(d):
    """Smallest coherent partition of vertex pairs refining {diagonal, d, non-d}.

    Exact pair refinement: each class is a 0-1 matrix; the classes partition
    all positions, are closed under transpose, and their span is closed under
    matrix product and entrywise product.
    """
    d = np.asarray(d)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ContractError("expected a square matrix")
    n = d.shape[0]
    if n > EXHAUSTIVE_CAP:
        raise SizeCapError(f"coherent closure is capped at n <= {EXHAUSTIVE_CAP}")
    if not np.array_equal(d, d.T) or not np.isin(d, (0, 1)).all():
        raise ContractError("expected a symmetric 0-1 matrix")
    color = {}
    for i in range(n):
        for j in range(n):
            color[(i, j)] = 0 if i == j else (1 if d[i][j] else 2)
    while True:
        signatures = {}
        for i in range(n):
            for j in range(n):
                sig = (
                    color[(i, j)],
                    tuple(sorted((color[(i, k)], color[(k, j)]) for k in range(n))),
                )
                signatures[(i, j)] = sig
        order = {}
        for key in sorted(set(signatures.values())):
            order[key] = len(order)
        new_color = {p: order[s] for p, s in signatures.items()}
        if len(set(new_color.values())) == len(set(color.values())):
            color = new_color
            break
        color = new_color
    classes = {}
    for (i, j), c in color.items():
        classes.setdefault(c, []).append((i, j))
    mats = []
    for c in sorted(classes, key=lambda c: min(classes[c])):
        m = np.zeros((n, n), dtype=np.int64)
        for i, j in classes[c]:
            m[i, j] = 1
        mats.append(m)
    return MatrixAlgebraBasis([m.astype(float) for m in mats], len(mats), True)


# -- discrete heat and wave flows ----------------------------------------------


def stability_bound(g, coeff=1.0):
    """Largest delta with coeff * delta * lambda_max < 2 (explicit Euler)."""
    lam_max = max(eigen_sym(laplacian(g).astype(float)).eigenvalues)
    if lam_max <= 0:
        return float("inf")
    return 2.0 / (coeff * lam_max)


def evolve(g, init, kind, coeff, delta, steps):
    """Explicit time stepping of the graph heat or wave equation.

    heat: phi <- phi - coeff * delta * L phi  (coeff is the diffusivity)
    wave: leapfrog phi_{t+1} = 2 phi_t - phi_{t-1} - coeff * delta^2 L phi_t,
          started from rest (zero initial velocity); coeff is v^2.

    Stability of the explicit scheme is the caller's concern; see
    stability_bound for the documented delta limit.
    """
    if kind not in ("heat", "wave"):
        raise ContractError(f"unknown evolution kind {kind!r}")
    if delta <= 0:
        raise ContractError("delta must be positive")
    init = np.asarray(init, dtype=float)
    if init.shape != (g.n,):
        raise ContractError(f"initial vector must have length {g.n}")
    lap = laplacian(g).astype(float)
    trajectory = [init.copy()]
    if kind == "heat":
        phi = init.copy()
        for _ in range(steps):
            phi = phi - coeff * delta * (lap @ phi)
            trajectory.append(phi.copy())
    else:
        prev = init.copy()
        if steps >= 1:
            current = init - 0.5 * coeff * delta**2 * (lap @ init)
            trajectory.append(current.copy())
            for _ in range(steps - 1):
                nxt = 2 * current - prev - coeff * delta**2 * (lap @ current)
                prev, current = current, nxt
                trajectory.append(current.copy())
    return np.array(trajectory)
