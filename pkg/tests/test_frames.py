"""Frames, homomorphisms, adjoints, and nuclei."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finitetop import (
    FrameHom,
    GaloisConnection,
    NotDistributiveError,
    NotHomError,
    NotLatticeError,
    NotPrenucleusError,
    Prenucleus,
    VerificationError,
    chain_frame,
    check_frame_hom,
    downset_frame,
    frame_corpus,
    frame_from_poset,
    frame_isomorphism,
    is_locally_compact,
    iter_frame_homs,
    nucleus_from_prenucleus,
    prenucleus_violation,
    right_adjoint,
    two,
    validate_poset,
    way_below,
)
from finitetop.bits import iter_bits
from finitetop.corpus import all_frames, all_lattices

from conftest import antichain_poset, chain_poset, diamond_m3, grid_poset, pentagon_n5


def test_chain_frame_tables():
    c3 = chain_frame(3)
    assert c3.bottom == 0
    assert c3.top == 2
    assert c3.meet2(1, 2) == 1
    assert c3.join2(1, 2) == 2
    assert c3.meet2(0, 1) == 0
    assert c3.join_mask(0) == c3.bottom
    assert c3.meet_mask(0) == c3.top


def test_diamond_is_not_distributive():
    with pytest.raises(NotDistributiveError):
        frame_from_poset(diamond_m3())


def test_pentagon_is_not_distributive():
    with pytest.raises(NotDistributiveError):
        frame_from_poset(pentagon_n5())


def test_non_lattices_are_rejected():
    with pytest.raises(NotLatticeError):
        frame_from_poset(antichain_poset(2))
    with pytest.raises(NotLatticeError):
        frame_from_poset(validate_poset([], []))


def test_powerset_of_two_is_a_frame():
    b4 = frame_from_poset(grid_poset())
    assert b4.n == 4
    atoms = {b4.order.index("a"), b4.order.index("b")}
    assert set(b4.irreducibles) == atoms


def _distributive_brute(frame):
    n = frame.n
    return all(
        frame.meet[a][frame.join[b][c]] == frame.join[frame.meet[a][b]][frame.meet[a][c]]
        for a in range(n)
        for b in range(n)
        for c in range(n)
    )


def test_frame_validation_accepts_exactly_distributive_lattices():
    rejected = 0
    for p in all_lattices(6):
        raw = frame_from_poset(p, check_distributive=False)
        if _distributive_brute(raw):
            frame_from_poset(p)
        else:
            rejected += 1
            with pytest.raises(NotDistributiveError):
                frame_from_poset(p)
    assert rejected > 0


def test_frame_counts_frozen():
    sizes = {}
    for f in all_frames(5):
        sizes[f.n] = sizes.get(f.n, 0) + 1
    assert sizes == {1: 1, 2: 1, 3: 1, 4: 2, 5: 3}
    assert len(frame_corpus()) == 8


def test_infinitary_distributivity_on_corpus():
    """All-subset joins distribute over meets, licensing the binary check."""
    for frame in frame_corpus():
        for a in range(frame.n):
            for mask in range(1 << frame.n):
                lhs = frame.meet[a][frame.join_mask(mask)]
                rhs = frame.bottom
                for s in iter_bits(mask):
                    rhs = frame.join[rhs][frame.meet[a][s]]
                assert lhs == rhs


def test_identity_hom_and_initiality():
    c3 = chain_frame(3)
    ident = check_frame_hom(c3, c3, (0, 1, 2))
    assert ident.mapping == (0, 1, 2)
    t = two()
    initial = list(iter_frame_homs(t, c3))
    assert len(initial) == 1
    assert initial[0].mapping == (0, 2)


def test_chain_to_two_has_both_collapses():
    c3 = chain_frame(3)
    t = two()
    homs = sorted(h.mapping for h in iter_frame_homs(c3, t))
    assert homs == [(0, 0, 1), (0, 1, 1)]
    for mapping in homs:
        check_frame_hom(c3, t, mapping)


def test_hom_counts_from_powerset():
    b4 = frame_from_poset(grid_poset())
    t = two()
    assert len(list(iter_frame_homs(b4, t))) == 2
    assert len(list(iter_frame_homs(t, b4))) == 1


def test_bad_homs_are_rejected():
    c3 = chain_frame(3)
    with pytest.raises(NotHomError):
        check_frame_hom(c3, c3, (0, 2, 1))
    with pytest.raises(NotHomError):
        check_frame_hom(c3, c3, (1, 1, 2))


def test_right_adjoint_of_identity():
    c3 = chain_frame(3)
    ident = check_frame_hom(c3, c3, (0, 1, 2))
    gc = right_adjoint(ident)
    assert gc.right == (0, 1, 2)


def test_right_adjoint_of_unit_inclusion():
    c3 = chain_frame(3)
    f = check_frame_hom(two(), c3, (0, 2))
    gc = right_adjoint(f)
    assert gc.right == (0, 0, 1)


def test_galois_laws_hold_on_small_corpus():
    for src in all_frames(4):
        for tgt in all_frames(4):
            for hom in iter_frame_homs(src, tgt):
                laws = right_adjoint(hom).check_laws()
                assert all(laws.values()), laws


def test_galois_rejects_wrong_right_adjoint():
    c3 = chain_frame(3)
    ident = check_frame_hom(c3, c3, (0, 1, 2))
    with pytest.raises(VerificationError):
        GaloisConnection(ident, (0, 0, 2))


def test_way_below_collapses_to_leq():
    for frame in frame_corpus():
        for a in range(frame.n):
            for b in range(frame.n):
                assert way_below(frame, a, b) == frame.leq_idx(a, b)


def test_all_corpus_frames_locally_compact():
    for frame in frame_corpus():
        assert is_locally_compact(frame)


def test_prenucleus_identity_and_constant_top():
    c3 = chain_frame(3)
    assert prenucleus_violation(c3, (0, 1, 2)) is None
    assert prenucleus_violation(c3, (2, 2, 2)) is None
    Prenucleus(c3, (0, 1, 2))
    Prenucleus(c3, (2, 2, 2))


def test_prenucleus_rejects_deflation():
    c3 = chain_frame(3)
    with pytest.raises(NotPrenucleusError):
        Prenucleus(c3, (0, 0, 2))


def test_prenucleus_rejects_meet_law_failure():
    b4 = frame_from_poset(grid_poset())
    idx = b4.order.index
    mapping = [0] * 4
    mapping[idx("0")] = idx("0")
    mapping[idx("a")] = idx("1")
    mapping[idx("b")] = idx("b")
    mapping[idx("1")] = idx("1")
    assert prenucleus_violation(b4, mapping) is not None
    with pytest.raises(NotPrenucleusError):
        Prenucleus(b4, mapping)


def test_nucleus_from_bump_prenucleus():
    c3 = chain_frame(3)
    pre = Prenucleus(c3, (1, 1, 2))
    k = nucleus_from_prenucleus(pre)
    assert k.mapping == (1, 1, 2)
    assert k.fixed_mask == 0b110


def test_nucleus_of_identity_is_identity():
    for frame in frame_corpus():
        ident = tuple(range(frame.n))
        k = nucleus_from_prenucleus(Prenucleus(frame, ident))
        assert k.mapping == ident


def _iterate_to_closure(frame, mapping):
    cur = tuple(mapping)
    while True:
        nxt = tuple(cur[v] for v in cur)
        if nxt == cur:
            return cur
        cur = nxt


def _random_prenucleus(rng, frame):
    pick = []
    for x in range(frame.n):
        ups = list(iter_bits(frame.order.up[x]))
        pick.append(ups[rng.randrange(len(ups))])
    mapping = []
    for x in range(frame.n):
        mask = 0
        for y in range(frame.n):
            if frame.leq_idx(y, x):
                mask |= 1 << pick[y]
        mapping.append(frame.join_mask(mask))
    if prenucleus_violation(frame, mapping) is not None:
        return None
    return Prenucleus(frame, mapping)


def test_generated_nucleus_equals_pointwise_iteration():
    rng = random.Random(11)
    pool = [f for f in frame_corpus() if f.n >= 2]
    done = 0
    while done < 300:
        frame = pool[rng.randrange(len(pool))]
        pre = _random_prenucleus(rng, frame)
        if pre is None:
            continue
        k = nucleus_from_prenucleus(pre)
        assert k.mapping == _iterate_to_closure(frame, pre.mapping)
        done += 1


def test_frame_isomorphism_relabelling():
    c3 = chain_frame(3)
    q = frame_from_poset(chain_poset(3, ["p", "q", "r"]))
    iso = frame_isomorphism(c3, q)
    assert iso == (0, 1, 2)


def test_frame_isomorphism_distinguishes_shapes():
    c4 = chain_frame(4)
    b4 = frame_from_poset(grid_poset())
    assert frame_isomorphism(c4, b4) is None
    assert frame_isomorphism(b4, frame_from_poset(grid_poset())) is not None


def test_downset_frame_of_antichain_is_powerset():
    b4 = frame_from_poset(grid_poset())
    free = downset_frame(antichain_poset(2))
    assert frame_isomorphism(free, b4) is not None


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(range(8)), st.data())
def test_meet_join_lattice_laws(which, data):
    frame = frame_corpus()[which]
    n = frame.n
    x = data.draw(st.integers(0, n - 1))
    y = data.draw(st.integers(0, n - 1))
    z = data.draw(st.integers(0, n - 1))
    assert frame.meet[x][y] == frame.meet[y][x]
    assert frame.join[x][y] == frame.join[y][x]
    assert frame.meet[x][frame.meet[y][z]] == frame.meet[frame.meet[x][y]][z]
    assert frame.join[x][frame.join[y][z]] == frame.join[frame.join[x][y]][z]
    assert frame.join[x][frame.meet[x][y]] == x
    assert frame.meet[x][frame.join[x][y]] == x
