"""Lifting problems in preorders: squares, pushout products, factorizations."""

import dataclasses
import itertools

import pytest

from finitetop import (
    ArrowIso,
    BoundExceeded,
    CarrierMismatchError,
    DuplicateLabelError,
    LiftingSquare,
    NonCommutingError,
    NotMonotoneError,
    PreMap,
    Preorder,
    SizeError,
    TopologyError,
    VerificationError,
    arrow,
    arrow_iso,
    arrows_between,
    associates,
    associator,
    bounded_factorize,
    braiding,
    curry,
    enumerate_lifts,
    identity_arrow,
    iter_monotone_arrows,
    lifting_adjunction_check,
    lifts_against,
    llp,
    power_pre,
    product_arrow,
    product_pre,
    pullback_power,
    pushout_pre,
    pushout_product,
    replay_trace,
    retract_check,
    rlp,
    uncurry,
)
from finitetop.lifting import COMPLETE, PARTIAL, coproduct_pre
from finitetop.spaces import SpaceMap

from conftest import sierpinski

EMPTY = Preorder((), ())
PT = Preorder(("p",), (1,))
D2 = Preorder(("a", "b"), (1, 2))
C2 = Preorder(("a", "b"), (3, 2))
I2 = Preorder(("a", "b"), (3, 3))

CELL = PreMap(EMPTY, PT, ())


def _fold():
    total, _ = coproduct_pre([PT, PT], ["l", "r"])
    return PreMap(total, PT, (0, 0))


FOLD = _fold()
EDGE = PreMap(D2, C2, (0, 1))


def _two_point_preorders():
    return [EMPTY, PT, D2, C2, Preorder(("a", "b"), (1, 3)), I2]


def _commuting_squares(left, right):
    """Every commuting square of left against right, by brute filtering."""
    out = []
    for top in iter_monotone_arrows(left.source, right.source):
        for bot in iter_monotone_arrows(left.target, right.target):
            if top.then(right).mapping == left.then(bot).mapping:
                out.append(LiftingSquare(left, right, top, bot))
    return out


def test_preorder_rejects_duplicate_labels():
    with pytest.raises(DuplicateLabelError):
        Preorder(("a", "a"), (1, 2))


def test_preorder_rejects_missing_reflexivity():
    with pytest.raises(TopologyError):
        Preorder(("a",), (0,))


def test_preorder_rejects_missing_transitivity():
    with pytest.raises(TopologyError):
        Preorder(("a", "b", "c"), (3, 6, 4))


def test_preorder_rejects_short_rows():
    with pytest.raises(CarrierMismatchError):
        Preorder(("a", "b"), (1,))


def test_premap_rejects_non_monotone():
    with pytest.raises(NotMonotoneError):
        PreMap(C2, C2, (1, 0))


def test_preorder_space_round_trip():
    s = sierpinski()
    pre = Preorder.from_space(s)
    assert pre.leq(0, 1) and not pre.leq(1, 0)
    assert pre.space() == s


def test_arrow_coerces_space_maps():
    s = sierpinski()
    m = arrow(SpaceMap(s, s, (0, 1)))
    assert isinstance(m, PreMap)
    assert m.mapping == (0, 1)
    assert m.source == Preorder.from_space(s)
    assert arrow(EDGE) is EDGE


def test_square_corners_must_match():
    with pytest.raises(CarrierMismatchError):
        LiftingSquare(CELL, EDGE, identity_arrow(EMPTY), identity_arrow(C2))


def test_square_must_commute():
    swap = PreMap(D2, D2, (1, 0))
    with pytest.raises(NonCommutingError):
        LiftingSquare(
            identity_arrow(D2), identity_arrow(D2), swap, identity_arrow(D2)
        )


def test_identity_square_has_one_lift():
    ident = identity_arrow(C2)
    square = LiftingSquare(ident, ident, ident, ident)
    lifts = enumerate_lifts(square)
    assert len(lifts) == 1
    assert lifts[0].mapping == (0, 1)


def test_cell_against_itself_has_no_lift():
    square = LiftingSquare(CELL, CELL, identity_arrow(EMPTY), identity_arrow(PT))
    assert enumerate_lifts(square) == ()


def test_cell_over_collapsed_pair_has_two_lifts():
    to_pt = PreMap(D2, PT, (0, 0))
    square = LiftingSquare(CELL, to_pt, PreMap(EMPTY, D2, ()), identity_arrow(PT))
    lifts = enumerate_lifts(square)
    assert len(lifts) == 2
    assert {h.mapping for h in lifts} == {(0,), (1,)}


def test_census_agrees_with_square_enumeration():
    """The memoized lifting census versus literal search over every square."""
    pool = arrows_between([EMPTY, PT, D2, C2])
    checked = 0
    for left in pool:
        for right in pool:
            verdict = lifts_against(left, right)
            squares = _commuting_squares(left, right)
            expected = all(enumerate_lifts(sq) for sq in squares)
            assert verdict.holds == expected
            if not verdict:
                assert enumerate_lifts(verdict.witness) == ()
            checked += 1
    assert checked == len(pool) ** 2


def test_verdict_is_truthy_on_success():
    good = lifts_against(CELL, identity_arrow(PT))
    assert good and good.witness is None
    bad = lifts_against(CELL, CELL)
    assert not bad and isinstance(bad.witness, LiftingSquare)


def test_empty_generator_set_is_vacuous():
    assert llp(EDGE, [])
    assert rlp(EDGE, ())


def test_rlp_against_the_cell_is_surjectivity():
    for f in arrows_between([EMPTY, PT, D2, C2]):
        surjective = set(f.mapping) == set(range(f.target.n))
        assert rlp(f, [CELL]).holds == surjective


def test_rlp_unchanged_by_pushed_generators():
    """A cobase change of a generator imposes no new lifting condition."""
    pushed = pushout_pre(CELL, PreMap(EMPTY, C2, ())).right_inj
    assert pushed.source.n == 2 and pushed.target.n == 3
    for f in arrows_between([EMPTY, PT, D2, C2]):
        assert rlp(f, [CELL]).holds == rlp(f, [CELL, pushed]).holds


def test_generators_lift_against_their_rlp_class():
    gens = [CELL, FOLD, EDGE]
    for f in arrows_between([PT, D2, C2]):
        if rlp(f, gens):
            for s in gens:
                assert lifts_against(s, f)


def test_product_orders_pointwise():
    prod = product_pre(C2, D2)
    assert prod.n == 4
    assert prod.leq(prod.pair(0, 1), prod.pair(1, 1))
    assert not prod.leq(prod.pair(0, 0), prod.pair(0, 1))
    assert prod.split(prod.pair(1, 0)) == (1, 0)


def test_product_arrow_acts_componentwise():
    m = product_arrow(EDGE, identity_arrow(PT))
    assert m.source.n == 2 and m.target.n == 2
    for x in range(D2.n):
        assert m.mapping[m.source.pair(x, 0)] == m.target.pair(EDGE.mapping[x], 0)


def test_coproduct_prefixes_labels():
    total, (inl, inr) = coproduct_pre([C2, PT], ["u", "w"])
    assert total.points == ("u:a", "u:b", "w:p")
    assert total.leq(inl.mapping[0], inl.mapping[1])
    assert not total.leq(inl.mapping[0], inr.mapping[0])


def test_power_points_are_monotone_maps():
    power = power_pre(C2, D2)
    assert power.n == 4
    assert set(power.maps) == {(0, 0), (0, 1), (1, 0), (1, 1)}
    assert power.index_of((0, 1)) == power.maps.index((0, 1))


def test_power_of_chain_by_chain_is_a_chain():
    power = power_pre(C2, C2)
    assert power.n == 3
    chain3 = Preorder(("0", "1", "2"), (7, 6, 4))
    from finitetop.lifting import preorder_isos

    assert preorder_isos(power, chain3)


def test_exponential_law_is_a_bijection():
    for z, a, x in itertools.product([PT, D2, C2], repeat=3):
        prod = product_pre(z, a)
        power = power_pre(x, a)
        outs = list(iter_monotone_arrows(prod, x))
        ins = list(iter_monotone_arrows(z, power))
        assert len(outs) == len(ins)
        for m in outs:
            back = uncurry(curry(PreMap(prod, x, m.mapping)))
            assert back.mapping == m.mapping
            assert back.source.up == prod.up
        for m in ins:
            back = curry(uncurry(PreMap(z, power, m.mapping)))
            assert back.mapping == m.mapping


def test_curry_needs_a_product_source():
    with pytest.raises(CarrierMismatchError):
        curry(EDGE)
    with pytest.raises(CarrierMismatchError):
        uncurry(EDGE)


def test_size_caps_reject_large_objects():
    big = Preorder([f"p{i:02d}" for i in range(70)], [1 << i for i in range(70)])
    with pytest.raises(SizeError):
        power_pre(big, D2)
    with pytest.raises(SizeError):
        product_pre(big, big)


def test_pushout_product_of_cells_is_a_cell():
    pp = pushout_product(CELL, CELL)
    assert pp.source.n == 0 and pp.target.n == 1
    assert arrow_iso(pp, CELL) is not None


def test_cell_is_a_unit_for_pushout_product():
    for f in [EDGE, FOLD, identity_arrow(C2)]:
        assert arrow_iso(pushout_product(f, CELL), f) is not None
        assert arrow_iso(pushout_product(CELL, f), f) is not None


def test_pushout_product_factors_are_recorded():
    pp = pushout_product(EDGE, FOLD)
    assert pp.left_factor is EDGE or pp.left_factor == EDGE
    assert pp.right_factor == FOLD
    assert pp.target.n == EDGE.target.n * FOLD.target.n


def test_braiding_swaps_the_factors():
    for f, g in [(EDGE, FOLD), (CELL, EDGE), (identity_arrow(C2), FOLD)]:
        iso = braiding(f, g)
        assert isinstance(iso, ArrowIso)
        p1 = pushout_product(f, g)
        p2 = pushout_product(g, f)
        assert iso.top.then(p2).mapping == p1.then(iso.bottom).mapping


def test_associator_reassociates():
    for f, g, h in [(CELL, EDGE, FOLD), (EDGE, EDGE, CELL)]:
        iso = associator(f, g, h)
        lhs = pushout_product(pushout_product(f, g), h)
        rhs = pushout_product(f, pushout_product(g, h))
        assert iso.top.then(rhs).mapping == lhs.then(iso.bottom).mapping
        assert associates(f, g, h)


def test_pullback_power_by_the_cell_recovers_the_map():
    for f in [EDGE, identity_arrow(D2), FOLD]:
        pw = pullback_power(f, CELL)
        assert arrow_iso(pw, f) is not None


def test_pullback_power_shape():
    pw = pullback_power(EDGE, FOLD)
    assert pw.source.n == len(power_pre(EDGE.source, FOLD.target).maps)


def test_lifting_adjunction_on_small_triples():
    pool = [CELL, FOLD, EDGE, identity_arrow(C2)]
    for f, g, i in itertools.product(pool, repeat=3):
        assert lifting_adjunction_check(f, g, i)


def test_factorize_map_with_rlp_needs_no_stages():
    tr = bounded_factorize(identity_arrow(D2), [CELL, FOLD], 3)
    assert tr.verdict == COMPLETE and tr.complete
    assert tr.stages == ()
    assert tr.left.mapping == (0, 1)
    assert tr.right == tr.original


def test_factorize_attaches_missing_cells():
    f = PreMap(EMPTY, D2, ())
    tr = bounded_factorize(f, [CELL], 2)
    assert tr.verdict == COMPLETE
    assert len(tr.stages) == 1
    assert len(tr.stages[0].problems) == 2
    assert tr.left.target.n == 2
    assert rlp(tr.right, [CELL])
    assert tr.left.then(tr.right).mapping == f.mapping
    assert replay_trace(tr, [CELL]) is True


def test_factorize_dedups_problems_by_generator_symmetry():
    """The two fold squares over the collapse map form one orbit."""
    f = PreMap(D2, PT, (0, 0))
    tr = bounded_factorize(f, [FOLD], 3)
    assert tr.verdict == COMPLETE
    assert len(tr.stages) == 1
    assert len(tr.stages[0].problems) == 1
    assert tr.left.target.n == 1
    assert replay_trace(tr, [FOLD]) is True


def test_factorize_partial_when_out_of_steps():
    f = PreMap(EMPTY, D2, ())
    tr = bounded_factorize(f, [CELL], 0)
    assert tr.verdict == PARTIAL and not tr.complete
    assert tr.stages == ()
    assert not rlp(tr.right, [CELL])
    assert replay_trace(tr, [CELL]) is True


def test_factorize_strict_raises_on_partial():
    f = PreMap(EMPTY, D2, ())
    with pytest.raises(BoundExceeded):
        bounded_factorize(f, [CELL], 0, strict=True)


def test_replay_rejects_a_flipped_verdict():
    f = PreMap(EMPTY, D2, ())
    done = bounded_factorize(f, [CELL], 2)
    with pytest.raises(VerificationError):
        replay_trace(dataclasses.replace(done, verdict=PARTIAL), [CELL])
    stuck = bounded_factorize(f, [CELL], 0)
    with pytest.raises(VerificationError):
        replay_trace(dataclasses.replace(stuck, verdict=COMPLETE), [CELL])


def test_replay_rejects_wrong_generators():
    tr = bounded_factorize(PreMap(EMPTY, D2, ()), [CELL], 2)
    with pytest.raises(VerificationError):
        replay_trace(tr, [FOLD])


def test_factorized_right_lifts_after_each_gain():
    """Factorizing against the edge generator fills in the order."""
    f = PreMap(D2, C2, (0, 1))
    tr = bounded_factorize(f, [EDGE], 4)
    assert tr.verdict == COMPLETE
    assert rlp(tr.right, [EDGE])
    assert tr.left.then(tr.right).mapping == tr.original.mapping
    assert replay_trace(tr, [EDGE]) is True


def test_every_map_is_a_retract_of_itself():
    witness = retract_check(EDGE, EDGE)
    assert witness is not None
    a, b, c, d = witness
    assert a.then(c).mapping == (0, 1)
    assert b.then(d).mapping == (0, 1)


def test_cell_is_not_a_retract_of_the_empty_identity():
    assert retract_check(CELL, identity_arrow(EMPTY)) is None


def test_retract_witness_is_an_arrow_map():
    total, (inl, _) = coproduct_pre([PT, PT], ["l", "r"])
    wide = PreMap(total, PT, (0, 0))
    witness = retract_check(identity_arrow(PT), wide)
    assert witness is not None
    a, b, c, d = witness
    assert a.then(wide).mapping == b.mapping
    assert wide.then(d).mapping == c.then(identity_arrow(PT)).mapping


def test_retracts_inherit_rlp():
    gens = [CELL, FOLD]
    pool = arrows_between([PT, D2, C2])
    hits = 0
    for f in pool:
        for g in pool:
            if retract_check(f, g) is None:
                continue
            hits += 1
            if rlp(g, gens):
                assert rlp(f, gens)
    assert hits > len(pool)
