import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from etorus.errors import SizeLimitError
from etorus.rootdata import PointCoord, WeightCoord, weyl_order
from etorus.weyl import (SIDE_F, SIDE_RJF, apply_to_point, apply_to_weight,
                         enumerate_weyl, fold_to_F, fold_to_Fe,
                         fold_weight_to_F, fold_weight_to_Lambda_e,
                         highest_root_reflection, identity_element,
                         point_coords, simple_reflection, weight_coords)

SMALL_TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 3), ("C", 2), ("C", 3), ("D", 4)]


@pytest.mark.parametrize("family,rank", SMALL_TYPES)
def test_enumeration_order_and_parity(family, rank, get_rsd, get_groups):
    full, even = get_groups(family, rank)
    assert len(full) == weyl_order(family, rank)
    assert 2 * len(even) == len(full)
    assert (full[0].matrix == np.eye(rank, dtype=int)).all()
    for w in full:
        det = int(round(np.linalg.det(w.matrix)))
        assert det == w.parity
        # same geometric map in both coordinate systems
        rsd = get_rsd(family, rank)
        lhs = w.matrix.T @ rsd.cartan_adjugate @ w.dual_matrix
        assert (lhs == rsd.cartan_adjugate).all()


def test_a1_group(get_groups):
    full, even = get_groups("A", 1)
    assert [w.parity for w in full] == [1, -1]
    assert len(even) == 1


def test_c2_even_count(get_groups):
    full, even = get_groups("C", 2)
    assert len(full) == 8 and len(even) == 4


def test_a2_even_is_cyclic(get_groups):
    full, even = get_groups("A", 2)
    assert len(full) == 6 and len(even) == 3
    gen = [w for w in even if w.parity == 1 and not (w.matrix == np.eye(2, dtype=int)).all()][0]
    cubed = gen.compose(gen).compose(gen)
    assert (cubed.matrix == np.eye(2, dtype=int)).all()


def test_b3_even_count(get_groups):
    full, even = get_groups("B", 3)
    assert len(full) == 48 and len(even) == 24


@pytest.mark.parametrize("family,rank", [("A", 2), ("C", 2), ("B", 3)])
def test_group_closure_and_parity_homomorphism(family, rank, get_groups):
    full, _ = get_groups(family, rank)
    keys = {w.matrix.tobytes(): w.parity for w in full}
    for a in full:
        for b in full:
            prod = a.compose(b)
            assert keys[prod.matrix.tobytes()] == a.parity * b.parity


def test_enumeration_cap(get_rsd):
    with pytest.raises(SizeLimitError):
        enumerate_weyl(get_rsd("D", 6), cap=10)


def test_apply_examples(get_rsd, get_groups):
    rsd = get_rsd("C", 2)
    r1 = simple_reflection(rsd, 1)
    assert apply_to_weight(r1, WeightCoord((1, 0))).coords == (-1, 1)
    rsd1 = get_rsd("A", 1)
    assert apply_to_weight(simple_reflection(rsd1, 1), WeightCoord((1,))).coords == (-1,)
    ident = identity_element(2)
    assert apply_to_weight(ident, WeightCoord((3, -5))).coords == (3, -5)
    x = PointCoord((2, 1), 4)
    assert apply_to_point(ident, x) == x


def test_fold_examples_a1(get_rsd):
    rsd = get_rsd("A", 1)
    # already inside: identity fold
    bary, w, q = fold_to_F(rsd, PointCoord((1,), 2))
    assert bary.sygma == (1, 1) and w.parity == 1 and not q.any()
    # one reflection
    bary, w, q = fold_to_F(rsd, PointCoord((-1,), 2))
    assert bary.sygma == (1, 1)
    assert (w.dual_matrix == [[-1]]).all() and not q.any()
    # through the affine wall: reflection in the highest root plus a coroot shift
    bary, w, q = fold_to_F(rsd, PointCoord((3,), 2))
    assert bary.sygma == (1, 1)
    assert (w.dual_matrix == [[-1]]).all()
    assert q.tolist() == [2]  # alpha-check in omega-check coordinates


@pytest.mark.parametrize("family,rank", SMALL_TYPES)
def test_fold_reconstruction_random(family, rank, get_rsd):
    rsd = get_rsd(family, rank)
    rng = np.random.default_rng(42)
    for _ in range(60):
        M = int(rng.integers(1, 6))
        s = rng.integers(-3 * M, 3 * M + 1, size=rank)
        x = PointCoord(tuple(int(v) for v in s), M)
        bary, w, q = fold_to_F(rsd, x)
        assert bary.side == SIDE_F and min(bary.sygma) >= 0
        rebuilt = w.dual_matrix @ point_coords(rsd, bary) + M * q
        assert (rebuilt == s).all()
        # q lies in the coroot lattice
        assert (rsd.cartan_adjugate @ q % rsd.center == 0).all()

        bary, w, q = fold_to_Fe(rsd, x)
        assert w.parity == 1
        rebuilt = w.dual_matrix @ point_coords(rsd, bary) + M * q
        assert (rebuilt == s).all()


@pytest.mark.parametrize("family,rank", SMALL_TYPES)
def test_fold_even_uniqueness(family, rank, get_rsd, get_groups):
    # all even images of one point fold to the identical representative
    rsd = get_rsd(family, rank)
    _, even = get_groups(family, rank)
    rng = np.random.default_rng(3)
    for _ in range(10):
        M = int(rng.integers(1, 5))
        s = rng.integers(-2 * M, 2 * M + 1, size=rank)
        outcomes = set()
        for w in even:
            img = w.dual_matrix @ s
            bary, _, _ = fold_to_Fe(rsd, PointCoord(tuple(int(v) for v in img), M))
            outcomes.add((bary.sygma, bary.side))
        assert len(outcomes) == 1


def test_fold_fe_rjf_fixed_point(get_rsd):
    # a point of the reflected interior is its own representative, w = identity
    rsd = get_rsd("C", 2)
    interior = np.array([1, 1])  # sygma (1,1,1) at M=4
    flipped = interior - interior[0] * rsd.cartan[:, 0]
    bary, w, q = fold_to_Fe(rsd, PointCoord(tuple(int(v) for v in flipped), 4))
    assert bary.side == SIDE_RJF and bary.sygma == (1, 1, 1)
    assert (w.matrix == np.eye(2, dtype=int)).all() and not q.any()


def test_fold_fe_boundary_keeps_point_in_F(get_rsd, get_groups):
    # odd fold landing on a wall is repaired by a stabilizing reflection
    rsd = get_rsd("C", 2)
    full, _ = get_groups("C", 2)
    M = 4
    boundary = np.array([0, 2])  # sygma (2,0,2): wall s_1 = 0
    for w in full:
        if w.parity == 1:
            continue
        img = w.dual_matrix @ boundary
        bary, wf, q = fold_to_Fe(rsd, PointCoord(tuple(int(v) for v in img), M))
        assert bary.side == SIDE_F and bary.sygma == (2, 0, 2)
        assert wf.parity == 1
        rebuilt = wf.dual_matrix @ point_coords(rsd, bary) + M * q
        assert (rebuilt == img).all()


def test_fold_weight_examples_a1(get_rsd):
    rsd = get_rsd("A", 1)
    # class of -1 modulo 2Q is the reflected-interior label
    bary, w, q = fold_weight_to_Lambda_e(rsd, WeightCoord((-1,)), 2)
    assert bary.side == SIDE_RJF and bary.sygma == (1, 1)
    assert weight_coords(rsd, bary).tolist() == [-1]
    # class of 5 is the interior label t = 1
    bary, w, q = fold_weight_to_Lambda_e(rsd, WeightCoord((5,)), 2)
    assert bary.side == SIDE_F and bary.sygma == (1, 1)
    rebuilt = w.matrix @ weight_coords(rsd, bary) + 2 * q
    assert rebuilt.tolist() == [5]


def test_fold_weight_exhaustive_scan_oracle(get_rsd, get_groups):
    # oracle for A_1, M=2: scan {w t + 2q} for membership in 2 F-dual
    rsd = get_rsd("A", 1)
    full, _ = get_groups("A", 1)
    M = 2
    for t0 in range(-8, 9):
        bary, w, q = fold_weight_to_F(rsd, WeightCoord((t0,)), M)
        hits = set()
        for elem in full:
            for k in range(-6, 7):
                cand = int(elem.matrix[0, 0]) * t0 + M * 2 * k  # alpha = 2 omega
                if 0 <= cand <= M:
                    hits.add(cand)
        assert int(weight_coords(rsd, bary)[0]) in hits


@pytest.mark.parametrize("family,rank", SMALL_TYPES)
def test_fold_weight_reconstruction_random(family, rank, get_rsd):
    rsd = get_rsd(family, rank)
    rng = np.random.default_rng(11)
    for _ in range(60):
        M = int(rng.integers(1, 6))
        t = rng.integers(-3 * M, 3 * M + 1, size=rank)
        bary, w, q = fold_weight_to_Lambda_e(rsd, WeightCoord(tuple(int(v) for v in t)), M)
        assert w.parity == 1
        rebuilt = w.matrix @ weight_coords(rsd, bary) + M * q
        assert (rebuilt == t).all()
        # q lies in the root lattice
        assert (rsd.cartan_adjugate.T @ q % rsd.center == 0).all()


@given(st.sampled_from(SMALL_TYPES), st.integers(1, 5),
       st.lists(st.integers(-9, 9), min_size=4, max_size=4))
@settings(max_examples=60, deadline=None)
def test_fold_property(params, M, coords):
    family, rank = params
    from tests.conftest import _rsd
    rsd = _rsd(family, rank)
    s = tuple(coords[:rank])
    bary, w, q = fold_to_Fe(rsd, PointCoord(s, M))
    assert w.parity == 1
    rebuilt = w.dual_matrix @ point_coords(rsd, bary) + M * q
    assert rebuilt.tolist() == list(s)


def test_highest_root_reflection_is_involution(get_rsd):
    for family, rank in SMALL_TYPES:
        rsd = get_rsd(family, rank)
        r = highest_root_reflection(rsd)
        assert r.parity == -1
        sq = r.compose(r)
        assert (sq.matrix == np.eye(rank, dtype=int)).all()
        assert (sq.dual_matrix == np.eye(rank, dtype=int)).all()
