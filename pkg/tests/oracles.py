"""Independent oracles used to cross-check the package's algorithms.

Each oracle deliberately takes a different computational route from the code
it is checking: boolean transitive closure instead of graph search,
characteristic-polynomial roots instead of power iteration, closed-form
logistic solutions instead of RK4, and brute-force quadrature instead of
incomplete-gamma series.
"""

import math

import numpy as np
from scipy.integrate import quad


def closure_strongly_connected(adjacency: np.ndarray) -> bool:
    """Strong connectivity by Floyd-Warshall boolean transitive closure."""
    n = adjacency.shape[0]
    reach = adjacency.astype(bool).copy()
    np.fill_diagonal(reach, True)
    for k in range(n):
        reach |= np.outer(reach[:, k], reach[k, :])
    return bool(reach.all())


def charpoly_coefficients(M: np.ndarray) -> np.ndarray:
    """Characteristic polynomial coefficients via Faddeev-LeVerrier.

    Returns [1, c1, ..., cn] with p(l) = l^n + c1 l^(n-1) + ... + cn,
    computed from traces of matrix powers only.
    """
    n = M.shape[0]
    coeffs = [1.0]
    Mk = np.zeros_like(M, dtype=float)
    for k in range(1, n + 1):
        Mk = M @ (Mk + coeffs[-1] * np.eye(n)) if k > 1 else M.astype(float).copy()
        coeffs.append(-np.trace(Mk) / k)
    return np.asarray(coeffs)


def charpoly_spectral_radius(M: np.ndarray) -> float:
    """Spectral radius as the largest root modulus of the char polynomial."""
    M = np.asarray(M, dtype=float)
    if M.shape == (1, 1):
        return abs(M[0, 0])
    if M.shape == (2, 2):
        tr = M[0, 0] + M[1, 1]
        det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
        disc = tr * tr - 4 * det
        if disc >= 0:
            roots = [(tr + math.sqrt(disc)) / 2, (tr - math.sqrt(disc)) / 2]
            return max(abs(r) for r in roots)
        return math.sqrt(det)
    roots = np.roots(charpoly_coefficients(M))
    return float(np.abs(roots).max())


def logistic_sis_solution(beta: float, gamma: float, x0: float, t: float) -> float:
    """Closed-form scalar SIS solution of dx/dt = (beta-gamma) x - beta x^2."""
    a = beta - gamma
    b = beta
    if a == 0:
        return x0 / (1 + b * x0 * t)
    e = math.exp(a * t)
    return a * x0 * e / (a + b * x0 * (e - 1))


def gamma_pdf(x: float, shape: float, rate: float) -> float:
    if x <= 0:
        return 0.0
    return math.exp(
        shape * math.log(rate) + (shape - 1) * math.log(x) - rate * x - math.lgamma(shape)
    )


def gamma_cdf_quadrature(x: float, shape: float, rate: float = 1.0) -> float:
    """Gamma CDF by adaptive quadrature of the density."""
    if x <= 0:
        return 0.0
    value, _ = quad(gamma_pdf, 0.0, x, args=(shape, rate), limit=200)
    return value


def random_irreducible_matrix(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    """Random nonnegative irreducible matrix: a positive cycle plus noise."""
    M = rng.uniform(0.0, scale, size=(n, n))
    M[rng.random((n, n)) < 0.4] = 0.0
    perm = rng.permutation(n)
    for k in range(n):
        M[perm[(k + 1) % n], perm[k]] = rng.uniform(0.1 * scale, scale)
    return M


def random_strongly_connected_model(rng: np.random.Generator, n: int,
                                    beta_high: float = 0.5,
                                    gamma_low: float = 0.05,
                                    gamma_high: float = 0.5):
    """(beta, gamma) draw with a guaranteed positive transmission cycle."""
    beta = rng.uniform(0.0, beta_high, size=(n, n))
    beta[rng.random((n, n)) < 0.35] = 0.0
    perm = rng.permutation(n)
    for k in range(n):
        beta[perm[(k + 1) % n], perm[k]] = rng.uniform(0.05, beta_high)
    gamma = rng.uniform(gamma_low, gamma_high, size=n)
    return beta, gamma
