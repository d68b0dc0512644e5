import math

import numpy as np
import pytest

from pentabeam.assembly import CC, CF, BeamProblem
from pentabeam.fixed_point import IterationConfig, check_monotone_cf, iterate, residual
from pentabeam.norms import lipschitz


def test_config_validation():
    with pytest.raises(ValueError):
        IterationConfig(tol=0)
    with pytest.raises(ValueError):
        IterationConfig(max_iters=0)
    with pytest.raises(ValueError):
        IterationConfig(initial_guess="random")
    with pytest.raises(ValueError):
        IterationConfig(initial_guess=-np.ones(5)).start(5)
    with pytest.raises(ValueError):
        IterationConfig(initial_guess=np.ones(4)).start(5)
    assert IterationConfig(p="2").p == 2


def test_trace_bookkeeping():
    trace = iterate(BeamProblem(CF, 20, 8.0), IterationConfig(p=1))
    assert trace.converged
    assert trace.iterations == len(trace.diffs) == len(trace.rates) + 1
    np.testing.assert_allclose(trace.rates, trace.diffs[1:] / trace.diffs[:-1])
    assert trace.observed_max_rate == trace.rates.max()
    assert trace.diffs[-1] < 1e-6 <= trace.diffs[-2]


def test_history_matches_diffs():
    trace = iterate(BeamProblem(CC, 15, 32.0), IterationConfig(p=2), keep_history=True)
    assert len(trace.history) == trace.iterations + 1
    recomputed = [np.linalg.norm(b - a) for a, b in zip(trace.history, trace.history[1:])]
    np.testing.assert_allclose(recomputed, trace.diffs, rtol=1e-14)
    for u in trace.history[1:]:
        assert np.all(u > 0)


def test_zero_load_lands_on_zero_in_one_step():
    problem = BeamProblem(CF, 10, 0.0)
    trace = iterate(problem, IterationConfig(initial_guess="ones", p=1))
    np.testing.assert_array_equal(trace.solution, 0)
    assert trace.diffs[0] == 10.0 and trace.diffs[1] == 0.0 and trace.converged
    trace = iterate(problem)
    assert trace.iterations == 1 and trace.observed_max_rate == 0.0


def test_non_convergence_reported_not_raised():
    trace = iterate(BeamProblem(CC, 49, 128.0), IterationConfig(max_iters=3))
    assert not trace.converged and trace.iterations == 3


def test_residual_zero_vector():
    for bc in (CF, CC):
        problem = BeamProblem(bc, 12, 2.0)
        assert residual(problem, np.zeros(12), 1) == pytest.approx(problem.scale * 12)
        assert residual(problem, np.zeros(12)) == pytest.approx(problem.scale)
    with pytest.raises(ValueError):
        residual(problem, np.zeros(11))


@pytest.mark.parametrize("bc,n,K", [(CF, 50, 1.0), (CC, 49, 8.0)])
def test_residual_at_convergence(bc, n, K):
    problem = BeamProblem(bc, n, K)
    trace = iterate(problem)
    assert residual(problem, trace.solution) <= 1e-5


def test_monotone_check():
    assert not check_monotone_cf(np.ones(6))
    assert check_monotone_cf(np.arange(1, 7) ** 2.0)
    assert not check_monotone_cf(np.arange(1, 7, dtype=float))  # equal steps
    assert not check_monotone_cf(np.array([1.0]))


def test_cf_profile_increasing_cc_profile_bump():
    u_cf = iterate(BeamProblem(CF, 100, 1.0)).solution
    assert check_monotone_cf(u_cf) and np.argmax(u_cf) == 99
    u_cc = iterate(BeamProblem(CC, 100, 1.0)).solution
    assert np.all(u_cc > 0)
    np.testing.assert_allclose(u_cc, u_cc[::-1], rtol=1e-10)
    assert np.argmax(u_cc) in (49, 50)
    assert u_cc[0] < 0.01 * u_cc.max() and u_cc[-1] < 0.01 * u_cc.max()
    assert not check_monotone_cf(u_cc)


def test_solution_independent_of_norm():
    for bc, n, K in ((CF, 50, 8.0), (CC, 49, 128.0)):
        sols = [iterate(BeamProblem(bc, n, K), IterationConfig(p=p)).solution for p in (1, 2, math.inf)]
        for s in sols[1:]:
            np.testing.assert_allclose(s, sols[0], atol=1e-5, rtol=0)


def test_contraction_inequality():
    for bc, n, Ks in ((CF, 50, (0.125, 1.0, 7.9)), (CC, 49, (1.0, 32.0, 128.0)), (CC, 100, (8.0, 128.0))):
        for K in Ks:
            for p in (1, 2, math.inf):
                problem = BeamProblem(bc, n, K)
                L, ok = lipschitz(problem, p)
                assert ok
                trace = iterate(problem, IterationConfig(p=p))
                assert np.all(trace.diffs[1:] < L * trace.diffs[:-1])
                assert trace.observed_max_rate <= L


def test_streamed_operator_same_trace():
    problem = BeamProblem(CC, 300, 50.0)
    dense = iterate(problem, IterationConfig(p=1))
    streamed = iterate(problem, IterationConfig(p=1, dense_cap=100))
    np.testing.assert_allclose(streamed.solution, dense.solution, rtol=1e-12)
    assert streamed.iterations == dense.iterations
