"""Pseudotopological spaces, convergence, and the lemma checks."""

import itertools
import random

import pytest

from finitetop import (
    CarrierMismatchError,
    EmptySubspaceError,
    PsSpace,
    all_pseudotopologies,
    check_continuity,
    discrete_ps,
    final_structure,
    indiscrete_ps,
    initial_structure,
    is_compact_ps,
    is_topological_ps,
    join_ps,
    lemma_suite,
    meet_ps,
    ps_from_space,
    pushout_ps,
    subspace_ps,
    top_modification,
)
from finitetop.pstop import (
    Collection,
    FilterRep,
    adherence,
    adherence_filter,
    all_filters,
    compact_at,
    continuous_on_ultrafilters,
    finer_ps,
    grill,
    iter_continuous_ps_maps,
    lemma_lattice_bounds,
    lemma_pushout_agreement,
    lemma_tau_iota,
    lim_filter,
    ps_spaces_up_to_iso,
    push_filter,
)

from conftest import discrete_space, indiscrete_space, sierpinski


def _kink():
    """Three points where 2 also converges to 1."""
    return PsSpace.from_lim(
        ["1", "2", "3"], {"1": ["1"], "2": ["1", "2"], "3": ["3"]}
    )


def test_ps_space_requires_reflexivity():
    with pytest.raises(ValueError):
        PsSpace(("a", "b"), (2, 2))


def test_lim_of_principal_filters():
    xi = _kink()
    at_12 = FilterRep.principal(xi, ["1", "2"])
    assert xi.label_set(xi.lim[xi.index("2")]) == ("1", "2")
    assert xi.label_set(lim_filter(xi, at_12)) == ("1",)


def test_improper_filter_converges_everywhere():
    xi = _kink()
    assert lim_filter(xi, FilterRep(xi, 0)) == xi.full


def test_identity_and_constants_are_continuous():
    xi = _kink()
    ident = tuple(range(xi.n))
    assert check_continuity(ident, xi, xi)
    for c in range(xi.n):
        assert check_continuity((c,) * xi.n, xi, xi)


def test_discrete_maps_anywhere_continuously():
    d3 = discrete_ps(["1", "2", "3"])
    for zeta in ps_spaces_up_to_iso(3):
        for mapping in itertools.product(range(3), repeat=3):
            assert check_continuity(mapping, d3, zeta)


def test_continuity_failure_carries_a_witness():
    i2 = indiscrete_ps(["1", "2"])
    d2 = discrete_ps(["1", "2"])
    report = check_continuity((0, 1), i2, d2)
    assert not report
    filt = report.witness
    assert filt is not None
    lhs = sum(1 << x for x in range(2) if lim_filter(i2, filt) >> x & 1)
    rhs = lim_filter(d2, push_filter((0, 1), d2, filt))
    assert lhs & ~rhs


def test_ultrafilter_continuity_licenses_all_filters():
    for n_src, n_tgt in [(2, 2), (2, 3), (3, 2), (3, 3)]:
        for xi in ps_spaces_up_to_iso(n_src):
            for zeta in ps_spaces_up_to_iso(n_tgt):
                for mapping in itertools.product(range(n_tgt), repeat=n_src):
                    fast = continuous_on_ultrafilters(mapping, xi, zeta)
                    slow = bool(check_continuity(mapping, xi, zeta))
                    assert fast == slow


def test_ultrafilter_licensing_spot_checks_at_four_points():
    rng = random.Random(3)
    spaces = list(all_pseudotopologies("1234"))
    for _ in range(500):
        xi = spaces[rng.randrange(len(spaces))]
        zeta = spaces[rng.randrange(len(spaces))]
        mapping = tuple(rng.randrange(4) for _ in range(4))
        fast = continuous_on_ultrafilters(mapping, xi, zeta)
        slow = bool(check_continuity(mapping, xi, zeta))
        assert fast == slow


def test_lattice_ops_bound_both_arguments():
    for xi in all_pseudotopologies("12"):
        for zeta in all_pseudotopologies("12"):
            m = meet_ps(xi, zeta)
            j = join_ps(xi, zeta)
            assert finer_ps(xi, m) and finer_ps(zeta, m)
            assert finer_ps(j, xi) and finer_ps(j, zeta)
            for eta in all_pseudotopologies("12"):
                if finer_ps(xi, eta) and finer_ps(zeta, eta):
                    assert finer_ps(m, eta)
                if finer_ps(eta, xi) and finer_ps(eta, zeta):
                    assert finer_ps(eta, j)


def test_lattice_ops_need_a_shared_carrier():
    with pytest.raises(CarrierMismatchError):
        meet_ps(discrete_ps(["1", "2"]), discrete_ps(["1", "3"]))
    with pytest.raises(CarrierMismatchError):
        join_ps(discrete_ps(["1", "2"]), discrete_ps(["1", "3"]))


def test_top_modification_of_discrete_and_indiscrete():
    assert top_modification(discrete_ps(["1", "2"])) == discrete_space(["1", "2"])
    assert top_modification(indiscrete_ps(["1", "2"])) == indiscrete_space(["1", "2"])


def test_top_modification_of_the_kink():
    xi = PsSpace.from_lim(["1", "2"], {"1": ["1"], "2": ["1", "2"]})
    space = top_modification(xi)
    assert space.opens == (0, space.mask_from_labels(["2"]), 3)


def test_top_modification_is_monotone():
    for xi in all_pseudotopologies("12"):
        for zeta in all_pseudotopologies("12"):
            if finer_ps(xi, zeta):
                assert set(top_modification(zeta).opens) <= set(
                    top_modification(xi).opens
                )


def test_topological_round_trip_is_identity():
    from finitetop.corpus import all_spaces

    for space in all_spaces(3):
        xi = ps_from_space(space)
        assert is_topological_ps(xi)
        assert top_modification(xi) == space


def test_non_topological_pseudotopology_exists():
    found = [xi for xi in ps_spaces_up_to_iso(3) if not is_topological_ps(xi)]
    assert found


def test_subspace_restriction():
    xi = _kink()
    assert subspace_ps(xi, xi.full) == xi
    single = subspace_ps(xi, xi.mask_from_labels(["2"]))
    assert single.points == ("2",)
    assert single.lim == (1,)
    with pytest.raises(EmptySubspaceError):
        subspace_ps(xi, 0)


def test_subspace_is_the_initial_structure_of_inclusion():
    from finitetop.bits import iter_bits

    for xi in ps_spaces_up_to_iso(3):
        for mask in range(1, xi.full + 1):
            members = list(iter_bits(mask))
            sub = subspace_ps(xi, mask)
            via_initial = initial_structure(
                [(tuple(members), xi)], sub.points
            )
            assert via_initial.lim == sub.lim


def test_final_structure_folds_two_points():
    pt2 = discrete_ps(["p", "q"])
    out = final_structure([(pt2, (0, 0))], ["z"])
    assert out.points == ("z",)
    assert out.lim == (1,)


def test_grill_of_a_single_set():
    xi = _kink()
    col = Collection.of(xi, [["1", "2"]])
    g = grill(col)
    expected = tuple(
        sorted(
            (m for m in range(xi.full + 1) if m & col.sets[0]),
            key=lambda m: (bin(m).count("1"), m),
        )
    )
    assert g.sets == expected


def test_adherence_of_the_whole_carrier_collection():
    for xi in ps_spaces_up_to_iso(3):
        col = Collection(xi, (xi.full,))
        assert adherence(xi, col) == xi.full


def test_adherence_filter_of_principal_point():
    xi = _kink()
    filt = FilterRep.principal(xi, ["2"])
    assert adherence_filter(xi, filt) == xi.lim[xi.index("2")]
    assert adherence_filter(xi, FilterRep(xi, 0)) == 0


def test_every_finite_ps_space_is_compact():
    for n in range(1, 4):
        for xi in ps_spaces_up_to_iso(n):
            assert is_compact_ps(xi)
            assert compact_at(xi, xi.full, xi.full)


def test_compact_at_fails_outside_adherent_sets():
    d2 = discrete_ps(["1", "2"])
    assert not compact_at(d2, 1, 2)
    assert compact_at(d2, 1, 1)


def test_filters_enumeration_covers_all_bases():
    xi = _kink()
    filters = all_filters(xi)
    assert len(filters) == (1 << xi.n)
    assert sum(1 for f in filters if not f.proper) == 1


def test_pushout_ps_glues_like_spaces():
    a = discrete_ps(["a"])
    b = PsSpace.from_lim(["1", "2"], {"1": ["1"], "2": ["1", "2"]})
    space, b_inj, c_inj = pushout_ps((a, (0,), b), (a, (0,), b))
    assert space.n == 3
    assert b_inj[0] == c_inj[0]
    assert b_inj[1] != c_inj[1]
    assert check_continuity(b_inj, b, space)
    assert check_continuity(c_inj, b, space)


def test_continuous_map_enumeration_matches_filtering():
    for xi in ps_spaces_up_to_iso(2):
        for zeta in ps_spaces_up_to_iso(2):
            fast = set(iter_continuous_ps_maps(xi, zeta))
            slow = {
                m
                for m in itertools.product(range(zeta.n), repeat=xi.n)
                if check_continuity(m, xi, zeta)
            }
            assert fast == slow


def test_lemma_suite_all_hold_at_desk_scale():
    for report in lemma_suite(2):
        assert report.holds, report


def test_tau_iota_and_lattice_lemmas_at_three_points():
    assert lemma_tau_iota(3).holds
    assert lemma_lattice_bounds(2).holds
    assert lemma_pushout_agreement(2).holds
