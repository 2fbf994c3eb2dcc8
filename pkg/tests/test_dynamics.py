import numpy as np
import pytest

import netrepro as nr
from netrepro.errors import InvalidParameters, StepSizeUnstable

from oracles import logistic_sis_solution, random_strongly_connected_model


def scalar_model(beta=0.3, gamma=0.1):
    return nr.validate_model([[beta]], [gamma])


class TestVectorFields:
    def test_sis_healthy_is_fixed(self):
        model = scalar_model()
        state = nr.validate_state([1.0], [0.0], model_kind="SIS")
        ds, dx = nr.vector_field_sis(model, state)
        assert ds[0] == 0.0 and dx[0] == 0.0

    def test_sis_scalar_value(self):
        model = scalar_model()
        state = nr.validate_state([0.5], [0.5], model_kind="SIS")
        ds, dx = nr.vector_field_sis(model, state)
        assert dx[0] == pytest.approx(0.5 * 0.3 * 0.5 - 0.1 * 0.5)
        assert ds[0] == pytest.approx(-dx[0])

    def test_sir_scalar_value(self):
        model = scalar_model()
        state = nr.validate_state([0.9], [0.1], [0.0], model_kind="SIR")
        ds, dx, dr = nr.vector_field_sir(model, state)
        assert dx[0] == pytest.approx(0.9 * 0.3 * 0.1 - 0.1 * 0.1)
        assert dr[0] == pytest.approx(0.01)

    def test_sums_vanish_per_community(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            n = int(rng.integers(2, 7))
            beta, gamma = random_strongly_connected_model(rng, n)
            model = nr.validate_model(beta, gamma)
            x = rng.uniform(0, 0.4, size=n)
            r = rng.uniform(0, 0.3, size=n)
            sir = nr.validate_state(1 - x - r, x, r, model_kind="SIR")
            ds, dx, dr = nr.vector_field_sir(model, sir)
            assert np.abs(ds + dx + dr).max() < 1e-15
            assert (dr >= 0).all()
            sis = nr.validate_state(1 - x, x, model_kind="SIS")
            ds, dx = nr.vector_field_sis(model, sis)
            assert np.abs(ds + dx).max() < 1e-15


class TestIntegrate:
    def test_healthy_stays_healthy(self):
        model = scalar_model()
        state = nr.validate_state([1.0], [0.0], model_kind="SIS")
        traj = nr.integrate(model, state, dt=0.01, horizon=5)
        assert np.all(traj.x == 0.0)
        assert np.all(traj.s == 1.0)

    def test_scalar_endemic_convergence(self):
        # endemic fixed point x* = 1 - gamma/beta = 2/3
        model = scalar_model(0.3, 0.1)
        state = nr.validate_state([0.99], [0.01], model_kind="SIS")
        traj = nr.integrate(model, state, dt=0.01, horizon=2000)
        assert abs(traj.x[-1, 0] - 2 / 3) < 1e-6

    def test_scalar_subcritical_matches_logistic(self):
        model = scalar_model(0.1, 0.3)
        state = nr.validate_state([0.5], [0.5], model_kind="SIS")
        traj = nr.integrate(model, state, dt=0.01, horizon=100, sample_interval=10)
        assert traj.x[-1, 0] < 1e-6
        for k, t in enumerate(traj.times):
            expect = logistic_sis_solution(0.1, 0.3, 0.5, float(t))
            assert traj.x[k, 0] == pytest.approx(expect, rel=1e-8, abs=1e-12)

    def test_sample_grid(self):
        model = scalar_model()
        state = nr.validate_state([0.9], [0.1], model_kind="SIS")
        traj = nr.integrate(model, state, dt=0.01, horizon=2.5, sample_interval=1.0)
        assert traj.times == pytest.approx([0.0, 1.0, 2.0, 2.5])

    def test_conservation(self):
        rng = np.random.default_rng(5)
        for _ in range(5):
            n = int(rng.integers(2, 8))
            beta, gamma = random_strongly_connected_model(rng, n)
            model = nr.validate_model(beta, gamma)
            x = rng.uniform(0.001, 0.3, size=n)
            state = nr.validate_state(1 - x, x, np.zeros(n), model_kind="SIR")
            traj = nr.integrate(model, state, dt=0.01, horizon=50)
            totals = traj.s + traj.x + traj.r
            assert np.abs(totals - 1).max() < 1e-10

    def test_sir_monotonicity_every_step(self):
        rng = np.random.default_rng(9)
        beta, gamma = random_strongly_connected_model(rng, 4)
        model = nr.validate_model(beta, gamma)
        x = rng.uniform(0.01, 0.2, size=4)
        state = nr.validate_state(1 - x, x, np.zeros(4), model_kind="SIR")
        traj = nr.integrate(model, state, dt=0.01, horizon=5, sample_interval=0.01)
        assert (np.diff(traj.s, axis=0) <= 0).all()
        assert (np.diff(traj.r, axis=0) >= 0).all()

    def test_rk4_order(self):
        # halving dt should shrink the one-grid error by about 2^4
        rng = np.random.default_rng(21)
        beta, gamma = random_strongly_connected_model(rng, 3)
        model = nr.validate_model(beta, gamma)
        x = np.array([0.05, 0.1, 0.02])
        state = nr.validate_state(1 - x, x, np.zeros(3), model_kind="SIR")

        def final(dt):
            return nr.integrate(model, state, dt=dt, horizon=20, sample_interval=20).x[-1]

        e1 = np.abs(final(0.4) - final(0.2)).max()
        e2 = np.abs(final(0.2) - final(0.1)).max()
        assert 10 < e1 / e2 < 22

    def test_step_size_unstable(self):
        model = scalar_model(beta=5.0, gamma=0.1)
        state = nr.validate_state([0.5], [0.5], model_kind="SIS")
        with pytest.raises(StepSizeUnstable):
            nr.integrate(model, state, dt=5.0, horizon=50)

    def test_bad_dt_rejected(self):
        model = scalar_model()
        state = nr.validate_state([0.5], [0.5], model_kind="SIS")
        with pytest.raises(InvalidParameters):
            nr.integrate(model, state, dt=-1, horizon=10)
        with pytest.raises(InvalidParameters):
            nr.integrate(model, state, dt=1.0, horizon=0.5)

    def test_states_roundtrip_validation(self):
        model = scalar_model()
        state = nr.validate_state([0.9], [0.1], model_kind="SIS")
        traj = nr.integrate(model, state, dt=0.01, horizon=10)
        for st in traj.states():
            assert st.model_kind is nr.ModelKind.SIS
