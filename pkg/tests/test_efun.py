import numpy as np
import pytest

from etorus.efun import (evaluate_E, evaluate_E_pairs, evaluate_E_real,
                         evaluate_E_table, unit_roots)
from etorus.errors import SizeLimitError
from etorus.rootdata import PointCoord, WeightCoord
from etorus.weyl import fold_weight_to_Lambda_e, weight_coords

SMALL_TYPES = [("A", 1), ("A", 2), ("C", 2), ("B", 3), ("D", 4)]


def test_unit_roots_cached_and_exact():
    z = unit_roots(8)
    assert z is unit_roots(8)
    assert abs(z[2] - 1j) < 1e-15
    assert not z.flags.writeable


def test_zero_label_gives_group_order(get_rsd, get_groups):
    for family, rank in SMALL_TYPES:
        rsd = get_rsd(family, rank)
        _, even = get_groups(family, rank)
        x = PointCoord(tuple(range(1, rank + 1)), 3)
        val = evaluate_E(rsd, even, WeightCoord((0,) * rank), x)
        assert abs(val - len(even)) < 1e-12


def test_zero_point_gives_group_order(get_rsd, get_groups):
    rsd = get_rsd("C", 2)
    _, even = get_groups("C", 2)
    val = evaluate_E(rsd, even, WeightCoord((2, 5)), PointCoord((0, 0), 4))
    assert abs(val - len(even)) < 1e-12


def test_a1_closed_form(get_rsd, get_groups):
    # the even group is trivial in rank 1: a single exponential
    rsd = get_rsd("A", 1)
    _, even = get_groups("A", 1)
    for t, s, M in [(1, 1, 2), (3, 2, 5), (-2, 7, 3)]:
        val = evaluate_E(rsd, even, WeightCoord((t,)), PointCoord((s,), M))
        assert abs(val - np.exp(2j * np.pi * t * s / (2 * M))) < 1e-12


def test_magnitude_bound(get_rsd, get_groups):
    rsd = get_rsd("C", 2)
    _, even = get_groups("C", 2)
    rng = np.random.default_rng(5)
    for _ in range(30):
        t = WeightCoord(tuple(int(v) for v in rng.integers(-6, 7, 2)))
        x = PointCoord(tuple(int(v) for v in rng.integers(-6, 7, 2)), 4)
        assert abs(evaluate_E(rsd, even, t, x)) <= len(even) + 1e-12


def test_table_matches_scalar(get_ctx):
    ctx = get_ctx("C", 2, 4)
    table = ctx.table
    for wp in ctx.weights:
        for gp in ctx.points:
            val = evaluate_E(ctx.rsd, ctx.even_group,
                             WeightCoord(tuple(ctx.weight_matrix[wp.index])),
                             PointCoord(tuple(ctx.point_matrix[gp.index]), 4))
            assert abs(val - table[wp.index, gp.index]) < 1e-12


def test_table_zero_row_constant(get_ctx):
    ctx = get_ctx("C", 2, 4)
    zero_rows = [w.index for w in ctx.weights
                 if not ctx.weight_matrix[w.index].any()]
    assert len(zero_rows) == 1
    assert np.allclose(ctx.table[zero_rows[0]], len(ctx.even_group), atol=1e-12)


def test_table_threads_bit_identical(get_rsd, get_groups):
    rsd = get_rsd("B", 3)
    _, even = get_groups("B", 3)
    rng = np.random.default_rng(0)
    T = rng.integers(-4, 5, size=(12, 3))
    S = rng.integers(-4, 5, size=(9, 3))
    base = evaluate_E_table(rsd, even, T, S, 3, threads=1)
    for threads in (2, 3, 5):
        assert (evaluate_E_table(rsd, even, T, S, 3, threads=threads) == base).all()


def test_table_cap(get_rsd, get_groups):
    rsd = get_rsd("A", 1)
    _, even = get_groups("A", 1)
    with pytest.raises(SizeLimitError):
        evaluate_E_table(rsd, even, np.zeros((4, 1), int), np.zeros((4, 1), int), 1, cap=8)


def test_pairs_matches_scalar(get_rsd, get_groups):
    rsd = get_rsd("A", 2)
    _, even = get_groups("A", 2)
    rng = np.random.default_rng(9)
    T = rng.integers(-5, 6, size=(40, 2))
    S = rng.integers(-5, 6, size=(40, 2))
    vals = evaluate_E_pairs(rsd, even, T, S, 4)
    for k in range(40):
        ref = evaluate_E(rsd, even, WeightCoord(tuple(T[k])), PointCoord(tuple(S[k]), 4))
        assert abs(vals[k] - ref) < 1e-12


def test_argument_symmetry(get_rsd, get_groups):
    rsd = get_rsd("C", 2)
    _, even = get_groups("C", 2)
    rng = np.random.default_rng(2)
    for _ in range(20):
        t = WeightCoord(tuple(int(v) for v in rng.integers(-5, 6, 2)))
        s = rng.integers(-5, 6, 2)
        w = even[int(rng.integers(len(even)))]
        a = evaluate_E(rsd, even, t, PointCoord(tuple(int(v) for v in s), 4))
        b = evaluate_E(rsd, even, t, PointCoord(tuple(int(v) for v in w.dual_matrix @ s), 4))
        assert abs(a - b) < 1e-12


def test_label_symmetry_exact_phase_multiset(get_rsd, get_groups):
    rsd = get_rsd("B", 3)
    _, even = get_groups("B", 3)
    rng = np.random.default_rng(4)
    M = 3
    order = rsd.center * M
    for _ in range(10):
        t = rng.integers(-4, 5, 3)
        s = rng.integers(-4, 5, 3)
        w = even[int(rng.integers(len(even)))]
        adj_s = rsd.cartan_adjugate @ s
        base = sorted(int((v.matrix @ t) @ adj_s) % order for v in even)
        moved = sorted(int((v.matrix @ (w.matrix @ t)) @ adj_s) % order for v in even)
        assert base == moved


def test_label_negation_conjugates(get_rsd, get_groups):
    # the label folded from -t evaluates to the conjugate value
    rsd = get_rsd("C", 2)
    _, even = get_groups("C", 2)
    M = 4
    rng = np.random.default_rng(8)
    for _ in range(20):
        t = rng.integers(-5, 6, 2)
        s = rng.integers(-5, 6, 2)
        bary, _, _ = fold_weight_to_Lambda_e(rsd, WeightCoord(tuple(int(v) for v in -t)), M)
        neg_label = weight_coords(rsd, bary)
        a = evaluate_E(rsd, even, WeightCoord(tuple(int(v) for v in t)),
                       PointCoord(tuple(int(v) for v in s), M))
        b = evaluate_E(rsd, even, WeightCoord(tuple(int(v) for v in neg_label)),
                       PointCoord(tuple(int(v) for v in s), M))
        assert abs(b - np.conj(a)) < 1e-12


def test_huge_coordinates_fall_back_to_exact_integers(get_rsd, get_groups):
    # label shifts by (M * root lattice) times 2^52 leave every phase fixed;
    # the int64 bound trips and the object-dtype path must agree exactly
    rsd = get_rsd("C", 2)
    _, even = get_groups("C", 2)
    rng = np.random.default_rng(1)
    T = rng.integers(-9, 10, size=(6, 2))
    S = rng.integers(-9, 10, size=(5, 2))
    base = evaluate_E_table(rsd, even, T, S, 4)
    shift = 4 * 2 ** 52 * (rng.integers(-1, 2, size=(6, 2)) @ rsd.cartan)
    from etorus.efun import _needs_bigint
    assert _needs_bigint(np.asarray(T + shift), [w.matrix for w in even],
                         rsd.cartan_adjugate, np.asarray(S).T)
    assert (evaluate_E_table(rsd, even, T + shift, S, 4) == base).all()
    assert (evaluate_E_pairs(rsd, even, (T + shift)[:5], S, 4)
            == evaluate_E_pairs(rsd, even, T[:5], S, 4)).all()


def test_real_evaluation_agrees_on_lattice(get_rsd, get_groups):
    for family, rank in [("A", 2), ("C", 2), ("B", 3)]:
        rsd = get_rsd(family, rank)
        _, even = get_groups(family, rank)
        rng = np.random.default_rng(6)
        for _ in range(10):
            t = WeightCoord(tuple(int(v) for v in rng.integers(-4, 5, rank)))
            s = rng.integers(-4, 5, rank)
            M = int(rng.integers(1, 5))
            exact = evaluate_E(rsd, even, t, PointCoord(tuple(int(v) for v in s), M))
            approx = evaluate_E_real(rsd, even, t, s / M)
            assert abs(exact - approx) < 1e-11
