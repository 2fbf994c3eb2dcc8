"""Pure-Python (numpy) reference implementation of the RK4 integration kernel.

Mirrors ``_core.pyx`` step for step; used when the compiled extension is not
available and as the baseline in the backend benchmark.
"""

import numpy as np

BACKEND = "python"

# kind codes shared with the compiled kernel
KIND_SIS = 0
KIND_SIR = 1


def _field(beta, gamma, s, x, kind):
    inf = s * (beta @ x)
    recov = gamma * x
    dx = inf - recov
    if kind == KIND_SIS:
        return -inf + recov, dx, np.zeros_like(x)
    return -inf, dx, recov


def rk4_run(beta, gamma, s0, x0, r0, kind, dt, n_steps, stride):
    """Fixed-step RK4 over ``n_steps`` steps, sampling every ``stride`` steps.

    Returns ``(S, X, R, DXDT, sample_steps, bad_step)`` where the arrays hold
    one row per sample (step 0 and the final step are always included) and
    ``bad_step`` is -1 on success or the first step at which some compartment
    left [-0.01, 1.01] before clamping.
    """
    n = beta.shape[0]
    sample_steps = list(range(0, n_steps + 1, stride))
    if sample_steps[-1] != n_steps:
        sample_steps.append(n_steps)
    m = len(sample_steps)

    S = np.empty((m, n))
    X = np.empty((m, n))
    R = np.empty((m, n))
    DXDT = np.empty((m, n))

    s = s0.astype(float).copy()
    x = x0.astype(float).copy()
    r = r0.astype(float).copy()

    def record(k):
        S[k], X[k], R[k] = s, x, r
        DXDT[k] = _field(beta, gamma, s, x, kind)[1]

    record(0)
    next_sample = 1
    half = 0.5 * dt
    sixth = dt / 6.0

    for step in range(1, n_steps + 1):
        k1s, k1x, k1r = _field(beta, gamma, s, x, kind)
        k2s, k2x, k2r = _field(beta, gamma, s + half * k1s, x + half * k1x, kind)
        k3s, k3x, k3r = _field(beta, gamma, s + half * k2s, x + half * k2x, kind)
        k4s, k4x, k4r = _field(beta, gamma, s + dt * k3s, x + dt * k3x, kind)

        s = s + sixth * (k1s + 2.0 * k2s + 2.0 * k3s + k4s)
        x = x + sixth * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        r = r + sixth * (k1r + 2.0 * k2r + 2.0 * k3r + k4r)

        lo = min(s.min(), x.min(), r.min())
        hi = max(s.max(), x.max(), r.max())
        if lo < -0.01 or hi > 1.01:
            return S[:1], X[:1], R[:1], DXDT[:1], sample_steps[:1], step

        # clamp to [0, 1]; values below 1e-300 flush to zero so decaying
        # compartments never enter the (very slow) subnormal range
        for vec in (s, x, r):
            vec[vec < 1e-300] = 0.0
            np.clip(vec, 0.0, 1.0, out=vec)

        if next_sample < m and step == sample_steps[next_sample]:
            record(next_sample)
            next_sample += 1

    return S, X, R, DXDT, sample_steps, -1
