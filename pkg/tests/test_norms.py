import math
import warnings

import numpy as np
import pytest

from pentabeam.assembly import CC, CF, BeamProblem
from pentabeam.explicit_inverse import cc_inverse, cf_inverse
from pentabeam.norms import (
    PowerIterationWarning,
    brute_force_norm,
    cc_argmax_rows,
    cc_norm_bound,
    cc_norm_coarse_bound,
    cf_norm_formula,
    lipschitz,
    norm_label,
    norm_order,
    norm_report,
    spectral_norm,
)


def test_norm_order_parsing():
    assert norm_order("inf") == math.inf
    assert norm_order(np.inf) == math.inf
    assert norm_order("1") == 1 and norm_order(2.0) == 2
    assert norm_label(math.inf) == "inf" and norm_label(1) == "1"
    with pytest.raises(ValueError):
        norm_order(3)
    with pytest.raises(ValueError):
        norm_order("fro")


def test_cf_formula_values():
    assert cf_norm_formula(50, math.inf) == (781_562.5, True)
    assert cf_norm_formula(5, 1) == (75.0, True)
    value, exact = cf_norm_formula(5, 2)
    assert not exact and value == pytest.approx(math.sqrt(5**8 - 5**4) / 8)
    assert value <= 5**4 / 8


def test_cf_n5_column_sum_by_hand():
    B = cf_inverse(5).entries
    sums = B.sum(axis=0)
    assert sums[3] == 75 and np.argmax(sums) == 3
    assert brute_force_norm(cf_inverse(5), 1) == 75


def test_cf_brute_force_n50():
    assert brute_force_norm(cf_inverse(50), 1) == pytest.approx((50**4 - 50**2) / 8, rel=1e-12)


def test_cc_bound_values():
    assert cc_norm_bound(49, 1) == (16_328.125, True)
    assert cc_norm_bound(99, math.inf) == (260_625.0, True)
    assert cc_norm_bound(99, 2)[1] is False
    value, exact = cc_norm_bound(150, 1)
    assert not exact and round(value) == 1_354_344  # table prints the truncated 1,354,343
    assert cc_norm_coarse_bound(49) == 50**4 / 32


def test_cc_brute_force_table_values():
    assert brute_force_norm(cc_inverse(49), 2) == pytest.approx(12_527, abs=1)
    assert brute_force_norm(cc_inverse(100), math.inf) == pytest.approx(271_150, abs=1)
    assert brute_force_norm(cc_inverse(150), 1) == pytest.approx(1_354_225, abs=1)


def test_spectral_norm_matches_svd(rng):
    for n in (5, 17, 60):
        for inv in (cf_inverse(n), cc_inverse(n)):
            sigma, ok = spectral_norm(inv.entries)
            assert ok
            assert sigma == pytest.approx(np.linalg.svd(inv.entries, compute_uv=False)[0], rel=1e-7)
    M = rng.standard_normal((8, 8))
    assert spectral_norm(M, tol=1e-12)[0] == pytest.approx(np.linalg.norm(M, 2), rel=1e-6)


def test_power_iteration_nonconvergence_warns():
    M = np.diag([1.0, 0.999999])
    M[0, 1] = 1e-3
    with pytest.warns(PowerIterationWarning):
        brute_force_norm(M, 2, tol=1e-15, max_iter=3)


def test_zero_matrix_spectral_norm():
    assert spectral_norm(np.zeros((3, 3))) == (0.0, True)


def test_lipschitz_examples():
    L, ok = lipschitz(BeamProblem(CF, 50, 1.0), math.inf)
    assert L == pytest.approx(0.12505, abs=1e-5) and ok
    L, ok = lipschitz(BeamProblem(CC, 49, 128.0), 1)
    assert L == pytest.approx(0.33440, abs=1e-5) and ok
    L, ok = lipschitz(BeamProblem(CC, 99, 386.0), math.inf)
    assert L == pytest.approx(1.006, abs=1e-3) and not ok


def test_norm_report_invariants():
    for bc, n in ((CF, 12), (CC, 11), (CC, 12)):
        for p in (1, 2, math.inf):
            rep = norm_report(BeamProblem(bc, n, 1.0), p)
            assert rep.consistent()
            assert rep.guaranteed == (rep.lipschitz < 1)


def test_holder_bound_on_two_norm():
    for n in (5, 16, 41):
        for inv in (cf_inverse(n), cc_inverse(n)):
            two = brute_force_norm(inv, 2)
            assert two <= math.sqrt(brute_force_norm(inv, 1) * brute_force_norm(inv, math.inf)) * (1 + 1e-9)


def test_cf_argmax_column_is_second_last():
    for n in range(5, 65):
        assert int(np.argmax(cf_inverse(n).entries.sum(axis=0))) == n - 2  # 0-based index of column n-1
        assert int(np.argmax(cf_inverse(n).entries.sum(axis=1))) == n - 1


def test_cc_argmax_row_in_middle():
    for n in range(5, 80):
        sums = cc_inverse(n).entries.sum(axis=1)
        top = set(np.flatnonzero(np.isclose(sums, sums.max(), rtol=1e-13, atol=0)) + 1)
        assert top <= cc_argmax_rows(n)


def test_coarse_bound_dominates_sharp_bound():
    for n in range(5, 200):
        assert cc_norm_bound(n, 1)[0] <= cc_norm_coarse_bound(n)


def test_even_gap_shrinks_on_sampled_grid():
    errs = []
    for n in (10, 50, 100, 500, 1000):
        value = brute_force_norm(cc_inverse(n), 1)
        bound, exact = cc_norm_bound(n, 1)
        assert not exact and value < bound
        errs.append((bound - value) / bound)
    assert all(a > b for a, b in zip(errs, errs[1:]))
