# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 kernel for the networked SIS/SIR vector fields.

Hot loop of the whole package: deterministic runs take hundreds of thousands
of fixed steps on matrices of a few dozen communities, so the stage
evaluations are written as plain C loops over preallocated buffers.
"""

import numpy as np

BACKEND = "cython"

KIND_SIS = 0
KIND_SIR = 1

cdef void _field(const double[:, ::1] beta, const double[::1] gamma,
                 double* s, double* x,
                 double* ds, double* dx, double* dr,
                 int n, int kind) noexcept nogil:
    cdef int i, j
    cdef double acc, inf, recov
    for i in range(n):
        acc = 0.0
        for j in range(n):
            acc += beta[i, j] * x[j]
        inf = s[i] * acc
        recov = gamma[i] * x[i]
        dx[i] = inf - recov
        if kind == 0:  # SIS
            ds[i] = -inf + recov
            dr[i] = 0.0
        else:
            ds[i] = -inf
            dr[i] = recov


def rk4_run(const double[:, ::1] beta, const double[::1] gamma,
            const double[::1] s0, const double[::1] x0, const double[::1] r0,
            int kind, double dt, long n_steps, long stride):
    """See ``netrepro._kernels.pyref.rk4_run`` for the contract."""
    cdef int n = beta.shape[0]
    sample_steps = list(range(0, n_steps + 1, stride))
    if sample_steps[len(sample_steps) - 1] != n_steps:
        sample_steps.append(n_steps)
    cdef long m = len(sample_steps)
    cdef long[::1] samp = np.asarray(sample_steps, dtype=np.int64)

    S = np.empty((m, n))
    X = np.empty((m, n))
    R = np.empty((m, n))
    DXDT = np.empty((m, n))
    cdef double[:, ::1] Sv = S, Xv = X, Rv = R, Dv = DXDT

    work = np.empty((17, n))
    cdef double[:, ::1] w = work
    cdef double* s = &w[0, 0]
    cdef double* x = &w[1, 0]
    cdef double* r = &w[2, 0]
    cdef double* k1s = &w[3, 0]
    cdef double* k1x = &w[4, 0]
    cdef double* k1r = &w[5, 0]
    cdef double* k2s = &w[6, 0]
    cdef double* k2x = &w[7, 0]
    cdef double* k2r = &w[8, 0]
    cdef double* k3s = &w[9, 0]
    cdef double* k3x = &w[10, 0]
    cdef double* k3r = &w[11, 0]
    cdef double* k4s = &w[12, 0]
    cdef double* k4x = &w[13, 0]
    cdef double* k4r = &w[14, 0]
    cdef double* ts = &w[15, 0]
    cdef double* tx = &w[16, 0]

    cdef long step, next_sample, bad_step = -1
    cdef int i
    cdef double half = 0.5 * dt, sixth = dt / 6.0, v

    with nogil:
        for i in range(n):
            s[i] = s0[i]
            x[i] = x0[i]
            r[i] = r0[i]

        # sample 0
        _field(beta, gamma, s, x, k1s, k1x, k1r, n, kind)
        for i in range(n):
            Sv[0, i] = s[i]
            Xv[0, i] = x[i]
            Rv[0, i] = r[i]
            Dv[0, i] = k1x[i]

        next_sample = 1
        for step in range(1, n_steps + 1):
            _field(beta, gamma, s, x, k1s, k1x, k1r, n, kind)
            for i in range(n):
                ts[i] = s[i] + half * k1s[i]
                tx[i] = x[i] + half * k1x[i]
            _field(beta, gamma, ts, tx, k2s, k2x, k2r, n, kind)
            for i in range(n):
                ts[i] = s[i] + half * k2s[i]
                tx[i] = x[i] + half * k2x[i]
            _field(beta, gamma, ts, tx, k3s, k3x, k3r, n, kind)
            for i in range(n):
                ts[i] = s[i] + dt * k3s[i]
                tx[i] = x[i] + dt * k3x[i]
            _field(beta, gamma, ts, tx, k4s, k4x, k4r, n, kind)

            for i in range(n):
                s[i] = s[i] + sixth * (k1s[i] + 2.0 * k2s[i] + 2.0 * k3s[i] + k4s[i])
                x[i] = x[i] + sixth * (k1x[i] + 2.0 * k2x[i] + 2.0 * k3x[i] + k4x[i])
                r[i] = r[i] + sixth * (k1r[i] + 2.0 * k2r[i] + 2.0 * k3r[i] + k4r[i])

            for i in range(n):
                v = s[i]
                if v < -0.01 or v > 1.01:
                    bad_step = step
                v = x[i]
                if v < -0.01 or v > 1.01:
                    bad_step = step
                v = r[i]
                if v < -0.01 or v > 1.01:
                    bad_step = step
            if bad_step >= 0:
                break

            # clamp to [0, 1]; values below 1e-300 flush to zero so decaying
            # compartments never enter the (very slow) subnormal range
            for i in range(n):
                if s[i] < 1e-300:
                    s[i] = 0.0
                elif s[i] > 1.0:
                    s[i] = 1.0
                if x[i] < 1e-300:
                    x[i] = 0.0
                elif x[i] > 1.0:
                    x[i] = 1.0
                if r[i] < 1e-300:
                    r[i] = 0.0
                elif r[i] > 1.0:
                    r[i] = 1.0

            if next_sample < m and step == samp[next_sample]:
                _field(beta, gamma, s, x, k1s, k1x, k1r, n, kind)
                for i in range(n):
                    Sv[next_sample, i] = s[i]
                    Xv[next_sample, i] = x[i]
                    Rv[next_sample, i] = r[i]
                    Dv[next_sample, i] = k1x[i]
                next_sample += 1

    if bad_step >= 0:
        return S[:1], X[:1], R[:1], DXDT[:1], sample_steps[:1], bad_step
    return S, X, R, DXDT, sample_steps, -1
