"""Loop counting, spectral and circular measures, moment oracles, Hankel
positivity, Stieltjes inversion of the classical density laws, and the
Poincare/theta/T series machinery with cyclotomic closed forms.

Loop counts and all series arithmetic are exact (Python integers and
Fractions); only measure atoms and quadrature go through floating point.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from scipy.integrate import quad

from .errors import ContractError
from .exact import TruncatedSeries, bareiss_det
from .graphs import Graph, is_bipartite
from .spectral import eigen_sym

# -- exact loop counting -------------------------------------------------------


def _int_matmul(a, b):
    n = len(a)
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def loop_counts(g, root=None, k_max=16):
    """L_k = (d^k)_{root,root} for k = 0..k_max, as exact integers."""
    root = g.root if root is None else root
    if root is None or not (0 <= root < g.n):
        raise ContractError("loop_counts needs a valid root vertex")
    d = [[int(x) for x in row] for row in g.adjacency()]
    out = [1]
    power = [[1 if i == j else 0 for j in range(g.n)] for i in range(g.n)]
    for _ in range(k_max):
        power = _int_matmul(power, d)
        out.append(power[root][root])
    return out


# -- atomic measures -------------------------------------------------------------


@dataclass
class AtomicMeasure:
    """Finitely supported measure: strictly increasing atoms, positive weights."""

    atoms: list
    weights: list

    def __post_init__(self):
        if len(self.atoms) != len(self.weights):
            raise ContractError("atoms and weights must have equal length")
        if any(b <= a for a, b in zip(self.atoms, self.atoms[1:])):
            raise ContractError("atoms must be strictly increasing")

    def total_mass(self):
        return sum(self.weights)

    def moment(self, k):
        return sum(w * a**k for a, w in zip(self.atoms, self.weights))

    def cauchy(self, xi):
        return sum(w / (xi - a) for a, w in zip(self.atoms, self.weights))


def spectral_measure(g, root=None, tol=None):
    """The rooted spectral measure: weight (P_lambda)_{root,root} at lambda."""
    root = g.root if root is None else root
    if root is None or not (0 <= root < g.n):
        raise ContractError("spectral_measure needs a valid root vertex")
    dec = eigen_sym(g.adjacency().astype(float), tol=tol)
    atoms, weights = [], []
    for lam, p in zip(dec.eigenvalues, dec.projections):
        w = float(p[root, root])
        if w > 1e-12:
            atoms.append(lam)
            weights.append(w)
    return AtomicMeasure(atoms, weights)


# -- combinatorial moment oracles -------------------------------------------------


def catalan(k):
    return comb(2 * k, k) // (k + 1)


def central_binomial(k):
    return comb(2 * k, k)


def middle_binomial(k):
    return comb(k, k // 2)


def bell(k):
    # Bell triangle recurrence.
    if k == 0:
        return 1
    row = [1]
    for _ in range(k - 1):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[-1]


_ORACLES = {
    "catalan": catalan,
    "central": central_binomial,
    "middle": middle_binomial,
    "bell": bell,
}


def moment_oracles(kind, k):
    """Exact big-integer moment oracles: catalan, central, middle, bell."""
    if kind not in _ORACLES:
        raise ContractError(f"unknown oracle kind {kind!r}")
    if k < 0:
        raise ContractError("k must be >= 0")
    return _ORACLES[kind](k)


# -- Hankel positivity -------------------------------------------------------------


def hankel_positive(moments):
    """All nested Hankel determinants >= 0?  Returns (ok, first_failing_size).

    The m-th minor is the (m+1) x (m+1) matrix [M_{i+j}] built from
    M_0..M_{2m}; minors are evaluated exactly (Bareiss).
    """
    moments = [Fraction(x) if not isinstance(x, int) else x for x in moments]
    max_m = (len(moments) - 1) // 2
    for m in range(max_m + 1):
        rows = [[moments[i + j] for j in range(m + 1)] for i in range(m + 1)]
        if bareiss_det(rows) < 0:
            return False, m + 1
    return True, None


# -- classical density laws ----------------------------------------------------------


@dataclass(frozen=True)
class DensityLaw:
    name: str
    support: tuple
    oracle: str  # which combinatorial sequence gives the moments

    def density(self, x):
        a, b = self.support
        if not (a < x < b):
            return 0.0
        if self.name == "semicircle":
            return math.sqrt(4 - x * x) / (2 * math.pi)
        if self.name == "marchenko-pastur":
            return math.sqrt((4 - x) / x) / (2 * math.pi)
        if self.name == "arcsine":
            return 1.0 / (math.pi * math.sqrt(x * (4 - x)))
        return math.sqrt((2 + x) / (2 - x)) / (2 * math.pi)

    def cauchy(self, xi):
        xi = complex(xi)
        if self.name == "semicircle":
            return (xi - cmath.sqrt(xi - 2) * cmath.sqrt(xi + 2)) / 2
        if self.name == "marchenko-pastur":
            return (1 - cmath.sqrt(1 - 4 / xi)) / 2
        if self.name == "arcsine":
            return 1 / (cmath.sqrt(xi) * cmath.sqrt(xi - 4))
        return (cmath.sqrt(xi + 2) / cmath.sqrt(xi - 2) - 1) / 2

    def exact_moment(self, k):
        """The combinatorial value the k-th moment must equal."""
        if self.name == "semicircle":
            return 0 if k % 2 else catalan(k // 2)
        if self.name == "marchenko-pastur":
            return catalan(k)
        if self.name == "arcsine":
            return central_binomial(k)
        return middle_binomial(k)


SEMICIRCLE = DensityLaw("semicircle", (-2.0, 2.0), "catalan")
MARCHENKO_PASTUR = DensityLaw("marchenko-pastur", (0.0, 4.0), "catalan")
ARCSINE = DensityLaw("arcsine", (0.0, 4.0), "central")
MODIFIED_ARCSINE = DensityLaw("modified-arcsine", (-2.0, 2.0), "middle")

LAWS = {
    law.name: law
    for law in (SEMICIRCLE, MARCHENKO_PASTUR, ARCSINE, MODIFIED_ARCSINE)
}


def cauchy_transform(law, xi):
    """G(xi) for a DensityLaw or an AtomicMeasure, branch with G ~ 1/xi at infinity."""
    if isinstance(law, AtomicMeasure):
        return law.cauchy(complex(xi))
    return law.cauchy(xi)


def stieltjes_density(law, x, t):
    """-Im G(x + it) / pi; converges to the density as t -> 0+."""
    if t <= 0:
        raise ContractError("stieltjes_density needs t > 0")
    return -cauchy_transform(law, complex(x, t)).imag / math.pi


def density_moment(law, k):
    """k-th moment of a DensityLaw by adaptive quadrature, absolute error <= 1e-8.

    Endpoint singularities are removed by trigonometric substitutions before
    handing the smooth integrand to Gauss-Kronrod quadrature.
    """
    if k > 16:
        raise ContractError("density_moment is supported for k <= 16")
    if law.name == "semicircle":
        f = lambda p: (2 * math.sin(p)) ** k * math.cos(p) ** 2 * (2 / math.pi)
        lo, hi = -math.pi / 2, math.pi / 2
    elif law.name == "marchenko-pastur":
        f = lambda p: (4 * math.sin(p) ** 2) ** k * math.cos(p) ** 2 * (4 / math.pi)
        lo, hi = 0.0, math.pi / 2
    elif law.name == "arcsine":
        f = lambda p: (4 * math.sin(p) ** 2) ** k * (2 / math.pi)
        lo, hi = 0.0, math.pi / 2
    else:
        f = lambda p: (-2 * math.cos(2 * p)) ** k * math.sin(p) ** 2 * (4 / math.pi)
        lo, hi = 0.0, math.pi / 2
    value, err = quad(f, lo, hi, epsabs=1e-12, epsrel=1e-12, limit=200)
    return value


# -- Poincare / theta / T series ------------------------------------------------------


def poincare_series(g, order):
    """f(z) = sum L_{2k} z^k for a rooted bipartite graph, truncated at z^order."""
    if order > 24:
        raise ContractError("poincare_series is supported for order <= 24")
    if g.root is None:
        raise ContractError("poincare_series needs a rooted graph")
    if not is_bipartite(g):
        raise ContractError("poincare_series needs a bipartite graph")
    loops = loop_counts(g, k_max=2 * order)
    return TruncatedSeries([loops[2 * k] for k in range(order + 1)], order)


def theta_from_poincare(f):
    """Theta coefficients a_r from the Poincare coefficients c_k.

    a_r = sum_{k=0}^{r} (-1)^(r-k) * (2r/(r+k)) * C(r+k, r-k) * c_k, with the
    degenerate r = k = 0 term read as c_0.
    """
    order = f.order
    coeffs = []
    for r in range(order + 1):
        acc = Fraction(0)
        for k in range(r + 1):
            if r == 0 and k == 0:
                factor = Fraction(1)
            else:
                factor = Fraction(2 * r, r + k) * comb(r + k, r - k)
            acc += (-1) ** (r - k) * factor * f.coeffs[k]
        coeffs.append(acc)
    return TruncatedSeries(coeffs, order)


def theta_by_substitution(f):
    """Independent route: Theta(q) = q + (1-q)/(1+q) * f(q/(1+q)^2)."""
    order = f.order
    q = TruncatedSeries.monomial(1, order)
    one = TruncatedSeries.one(order)
    inner = q / ((one + q) * (one + q))
    return q + (one - q) / (one + q) * f.compose(inner)


def t_series(theta):
    """T(q) = (Theta(q) - q) / (1 - q)."""
    order = theta.order
    q = TruncatedSeries.monomial(1, order)
    return (theta - q) / (TruncatedSeries.one(order) - q)


def t_series_of_graph(g, order):
    return t_series(theta_from_poincare(poincare_series(g, order)))


def cyclotomic_series(numerators, denominators, prime=0, order=24):
    """Truncation of prod (1 -/+ q^n) / prod (1 -/+ q^m), with prime marks.

    Factors are (n, plus) pairs: plus=False gives (1 - q^n), plus=True gives
    (1 + q^n).  prime=1 divides by (1 - q), prime=2 divides by (1 - q^2).
    """
    if order > 48:
        raise ContractError("cyclotomic_series is supported for order <= 48")
    out = TruncatedSeries.one(order)
    for n, plus in numerators:
        factor = TruncatedSeries.monomial(0, order) + TruncatedSeries.monomial(
            n, order, 1 if plus else -1
        )
        out = out * factor
    for n, plus in denominators:
        factor = TruncatedSeries.monomial(0, order) + TruncatedSeries.monomial(
            n, order, 1 if plus else -1
        )
        out = out / factor
    if prime == 1:
        out = out / (TruncatedSeries.one(order) - TruncatedSeries.monomial(1, order))
    elif prime == 2:
        out = out / (TruncatedSeries.one(order) - TruncatedSeries.monomial(2, order))
    elif prime != 0:
        raise ContractError("prime mark must be 0, 1 or 2")
    return out


def ade_t_series(tag, size, order):
    """The closed-form cyclotomic T series for an ADE graph, by tag and size.

    Tags and sizes follow gsym.graphs.ade: A and At sizes are vertex counts,
    D's size is its vertex count, Dt's size n means the graph D~_n on n+1
    vertices, and the E tags carry no size.
    """
    tag = tag.replace("~", "t")
    if tag == "A":
        v = size  # A_{n-1} with v = n-1 vertices: xi(n-1 : n)
        return cyclotomic_series([(v, False)], [(v + 1, False)], 0, order)
    if tag == "At":
        n = size // 2  # A~_{2n}: xi'(n+ : n)
        return cyclotomic_series([(n, True)], [(n, False)], 1, order)
    if tag == "D":
        n = size - 1  # D_{n+1}: xi(n-1+ : n+)
        return cyclotomic_series([(n - 1, True)], [(n, True)], 0, order)
    if tag == "Dt":
        n = size - 2  # D~_{n+2}: xi''(n+1+ : n)
        return cyclotomic_series([(n + 1, True)], [(n, False)], 2, order)
    if tag == "E6":
        return cyclotomic_series([(8, False)], [(3, False), (6, True)], 0, order)
    if tag == "E7":
        return cyclotomic_series([(12, False)], [(4, False), (9, True)], 0, order)
    if tag == "E8":
        return cyclotomic_series([(5, True), (9, True)], [(15, True)], 0, order)
    if tag == "E6t":
        return cyclotomic_series([(6, True)], [(3, False), (4, False)], 0, order)
    if tag == "E7t":
        return cyclotomic_series([(9, True)], [(4, False), (6, False)], 0, order)
    if tag == "E8t":
        return cyclotomic_series([(15, True)], [(6, False), (10, False)], 0, order)
    raise ContractError(f"unknown ADE tag {tag!r}")


# -- circular measures ------------------------------------------------------------------


@dataclass
class CircularMeasure:
    """Measure on the unit circle stored as sorted angles with weights."""

    angles: list
    weights: list

    def moment(self, k):
        return sum(w * math.cos(k * t) for t, w in zip(self.angles, self.weights))


def circular_measure(g, root=None, tol=None):
    """Pullback of the positive spectral measure law(d^2) under q -> (q+1/q)^2.

    Each atom x of law(d^2) with weight w contributes weight w/4 at the four
    unit-circle points +-exp(+-i alpha) with (2 cos alpha)^2 = x; coincident
    points merge.  Requires spectral radius <= 2.
    """
    mu = spectral_measure(g, root=root, tol=tol)
    radius = max(abs(a) for a in mu.atoms)
    if radius > 2 + 1e-9:
        raise ContractError(f"circular measure needs ||d|| <= 2, got {radius}")
    # law(d^2): atoms lambda^2 with merged weights.
    squared = {}
    for a, w in zip(mu.atoms, mu.weights):
        key = round(a * a, 9)
        squared[key] = squared.get(key, 0.0) + w
    acc = {}
    for x, w in squared.items():
        c = math.sqrt(min(max(x, 0.0), 4.0)) / 2.0
        alpha = math.acos(min(1.0, max(-1.0, c)))
        for theta in (alpha, -alpha, math.pi - alpha, math.pi + alpha):
            theta = theta % (2 * math.pi)
            key = round(theta, 9)
            acc[key] = acc.get(key, 0.0) + w / 4.0
    angles = sorted(acc)
    return CircularMeasure(angles, [acc[t] for t in angles])


def circular_moments(eps, k_max):
    """Moments m_0..m_{k_max} of a circular measure (real by symmetry)."""
    return [eps.moment(k) for k in range(k_max + 1)]
