"""Finite pseudotopological spaces: convergence, continuity, and modification.

A pseudotopology on a finite carrier is determined by the limit sets of the
principal ultrafilters, one per point, subject only to reflexivity.  Proper
filters are principal, represented by their nonempty base set; the improper
filter gets an explicit marker (base 0) and converges everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _permutations
from itertools import product as _iterproduct

from .bits import iter_bits, popcount
from .errors import (
    CarrierMismatchError,
    EmptySubspaceError,
    SizeError,
    VerificationError,
)
from .spaces import FiniteSpace, SpaceMap, pushout_spaces

CERTIFY_POINT_CAP = 4


class PsSpace:
    """Points with one limit set per principal ultrafilter."""

    def __init__(self, points, lim, *, validate=True):
        self.points = tuple(points)
        self.lim = tuple(lim)
        self._index = {x: i for i, x in enumerate(self.points)}
        if validate:
            if sorted(self.points) != list(self.points):
                raise ValueError("points must be sorted")
            if len(set(self.points)) != len(self.points):
                raise ValueError("duplicate points")
            if len(self.lim) != self.n:
                raise ValueError("one limit set per point is needed")
            for i, m in enumerate(self.lim):
                if m >> self.n:
                    raise ValueError("limit set mentions unknown points")
                if not m >> i & 1:
                    raise ValueError(
                        f"point {self.points[i]!r} must converge to itself"
                    )

    @classmethod
    def from_lim(cls, points, assignment):
        points = tuple(sorted(points))
        index = {x: i for i, x in enumerate(points)}
        lim = [0] * len(points)
        for x, targets in assignment.items():
            m = 0
            for y in targets:
                m |= 1 << index[y]
            lim[index[x]] = m
        return cls(points, lim)

    @property
    def n(self):
        return len(self.points)

    @property
    def full(self):
        return (1 << self.n) - 1

    def index(self, x):
        return self._index[x]

    def label_set(self, mask):
        return tuple(self.points[i] for i in iter_bits(mask))

    def mask_from_labels(self, labels):
        m = 0
        for x in labels:
            m |= 1 << self._index[x]
        return m

    @property
    def is_discrete(self):
        return all(self.lim[i] == 1 << i for i in range(self.n))

    def __eq__(self, other):
        return (
            isinstance(other, PsSpace)
            and self.points == other.points
            and self.lim == other.lim
        )

    def __hash__(self):
        return hash((self.points, self.lim))

    def __repr__(self):
        parts = ", ".join(
            f"{x}->{{{','.join(self.label_set(m))}}}"
            for x, m in zip(self.points, self.lim)
        )
        return f"PsSpace({parts})"


def discrete_ps(points):
    points = tuple(sorted(points))
    return PsSpace(points, [1 << i for i in range(len(points))])


def indiscrete_ps(points):
    points = tuple(sorted(points))
    full = (1 << len(points)) - 1
    return PsSpace(points, [full] * len(points))


@dataclass(frozen=True)
class FilterRep:
    """A filter on a finite carrier: principal with nonempty base, or improper.

    Base 0 is the improper filter (all subsets, the empty meet); any other
    base A stands for the sets containing A.
    """

    space: PsSpace
    base: int

    @property
    def proper(self):
        return self.base != 0

    @classmethod
    def principal(cls, space, labels):
        return cls(space, space.mask_from_labels(labels))


def all_filters(space):
    """Every filter on the carrier: one per base subset, improper included."""
    return [FilterRep(space, m) for m in range(space.full + 1)]


def lim_filter(xi, filt):
    """Limit set of a filter: meet of the ultrafilter limits above it.

    The ultrafilters containing the principal filter at A are exactly the
    principal ultrafilters at points of A, so the limit is the intersection
    of their limit sets; the improper filter converges to every point.
    """
    if not filt.proper:
        return xi.full
    out = xi.full
    for x in iter_bits(filt.base):
        out &= xi.lim[x]
    return out


def push_filter(mapping, target, filt):
    """Pushforward along a point map: the principal filter at the image."""
    if not filt.proper:
        return FilterRep(target, 0)
    img = 0
    for x in iter_bits(filt.base):
        img |= 1 << mapping[x]
    return FilterRep(target, img)


def _image(mapping, mask):
    img = 0
    for x in iter_bits(mask):
        img |= 1 << mapping[x]
    return img


@dataclass(frozen=True)
class ContinuityReport:
    continuous: bool
    witness: FilterRep | None

    def __bool__(self):
        return self.continuous


def check_continuity(mapping, xi, zeta):
    """Continuity of a point map, quantified over every filter literally.

    Checks that the image of each limit set lands in the limit of the
    pushed filter; the first failing filter is returned as witness.
    """
    mapping = tuple(mapping)
    if len(mapping) != xi.n:
        raise CarrierMismatchError("the map must be total on the source carrier")
    for base in range(xi.full + 1):
        filt = FilterRep(xi, base)
        lhs = _image(mapping, lim_filter(xi, filt))
        rhs = lim_filter(zeta, push_filter(mapping, zeta, filt))
        if lhs & ~rhs:
            return ContinuityReport(False, filt)
    return ContinuityReport(True, None)


def continuous_on_ultrafilters(mapping, xi, zeta):
    """The principal-ultrafilter continuity condition only.

    Equivalent to full continuity on finite carriers; the equivalence is
    re-proven exhaustively by a suite rather than taken on faith, and this
    is the licensed fast path.
    """
    return all(
        _image(mapping, xi.lim[x]) & ~zeta.lim[mapping[x]] == 0
        for x in range(xi.n)
    )


def iter_continuous_ps_maps(xi, zeta):
    """All continuous point maps between two finite PsSpaces."""
    if xi.n == 0:
        yield ()
        return
    for mapping in _iterproduct(range(zeta.n), repeat=xi.n):
        if continuous_on_ultrafilters(mapping, xi, zeta):
            yield mapping


def meet_ps(xi, zeta):
    """Infimum in the pseudotopology lattice: pointwise union of limit sets."""
    if xi.points != zeta.points:
        raise CarrierMismatchError("lattice operations need a shared carrier")
    return PsSpace(xi.points, [a | b for a, b in zip(xi.lim, zeta.lim)])


def join_ps(xi, zeta):
    """Pointwise intersection of limit sets, with reflexivity re-imposed."""
    if xi.points != zeta.points:
        raise CarrierMismatchError("lattice operations need a shared carrier")
    return PsSpace(
        xi.points,
        [(a & b) | (1 << i) for i, (a, b) in enumerate(zip(xi.lim, zeta.lim))],
    )


def finer_ps(xi, zeta):
    """Whether xi is finer than zeta (identity is continuous xi -> zeta)."""
    if xi.points != zeta.points:
        raise CarrierMismatchError("comparison needs a shared carrier")
    return all(a & ~b == 0 for a, b in zip(xi.lim, zeta.lim))


def all_pseudotopologies(points):
    """Every pseudotopology on a carrier: all reflexive limit assignments."""
    points = tuple(sorted(points))
    n = len(points)
    full = (1 << n) - 1
    choices = [
        sorted({m | (1 << i) for m in range(full + 1)}) for i in range(n)
    ]
    for lim in _iterproduct(*choices):
        yield PsSpace(points, lim, validate=False)


def final_structure(pieces, points, *, certify=None):
    """Finest pseudotopology on `points` making every given map continuous.

    `pieces` is a list of (source PsSpace, mapping into the new carrier).
    On carriers up to 4 points the defining universal property is
    re-verified against every candidate pseudotopology.
    """
    points = tuple(sorted(points))
    n = len(points)
    lim = [1 << i for i in range(n)]
    for source, mapping in pieces:
        if len(mapping) != source.n:
            raise CarrierMismatchError("a piece map must be total on its source")
        for x in range(source.n):
            lim[mapping[x]] |= _image(mapping, source.lim[x])
    out = PsSpace(points, lim)
    if certify is None:
        certify = n <= CERTIFY_POINT_CAP
    if certify:
        _certify_final(pieces, out)
    return out


def _certify_final(pieces, out):
    for source, mapping in pieces:
        if not check_continuity(mapping, source, out):
            raise VerificationError("a defining map fails continuity into the final structure")
    ident = tuple(range(out.n))
    for candidate in all_pseudotopologies(out.points):
        if all(
            check_continuity(mapping, source, candidate)
            for source, mapping in pieces
        ):
            if not check_continuity(ident, out, candidate):
                raise VerificationError("the final structure is not finest")


def initial_structure(pieces, points, *, certify=None):
    """Coarsest pseudotopology on `points` making every given map continuous.

    `pieces` is a list of (mapping out of the new carrier, target PsSpace).
    Certification mirrors final_structure.
    """
    points = tuple(sorted(points))
    n = len(points)
    full = (1 << n) - 1
    lim = [full] * n
    for mapping, target in pieces:
        if len(mapping) != n:
            raise CarrierMismatchError("a piece map must be total on the carrier")
        for x in range(n):
            allowed = 0
            for z in range(n):
                if target.lim[mapping[x]] >> mapping[z] & 1:
                    allowed |= 1 << z
            lim[x] &= allowed
    lim = [m | (1 << i) for i, m in enumerate(lim)]
    out = PsSpace(points, lim)
    if certify is None:
        certify = n <= CERTIFY_POINT_CAP
    if certify:
        _certify_initial(pieces, out)
    return out


def _certify_initial(pieces, out):
    for mapping, target in pieces:
        if not check_continuity(mapping, out, target):
            raise VerificationError("a defining map fails continuity from the initial structure")
    ident = tuple(range(out.n))
    for candidate in all_pseudotopologies(out.points):
        if all(
            check_continuity(mapping, candidate, target)
            for mapping, target in pieces
        ):
            if not check_continuity(ident, candidate, out):
                raise VerificationError("the initial structure is not coarsest")


def top_modification(xi):
    """The reflection into topological spaces.

    A set is open when every point whose ultrafilter limit meets it already
    lies inside; the identity carrier map into the result is the unit of
    the adjunction and is re-verified to be continuous.
    """
    opens = []
    for m in range(xi.full + 1):
        if all(
            not (xi.lim[x] & m) or (m >> x & 1)
            for x in range(xi.n)
        ):
            opens.append(m)
    space = FiniteSpace(xi.points, opens)
    ident = tuple(range(xi.n))
    if not check_continuity(ident, xi, ps_from_space(space)):
        raise VerificationError("the modification unit failed continuity")
    return space


def ps_from_space(space):
    """A topological space as a PsSpace: x converges to its closure points."""
    return PsSpace(
        space.points,
        [space.closure(1 << i) for i in range(space.n)],
    )


def is_topological_ps(xi):
    """Whether the pseudotopology is induced by its own modification."""
    return xi == ps_from_space(top_modification(xi))


def is_hausdorff_ps(xi):
    """Every ultrafilter converges to at most one point; finitely, discreteness."""
    return xi.is_discrete


def subspace_ps(xi, mask):
    """Restriction: limits along the inclusion intersected with the subset."""
    if mask == 0:
        raise EmptySubspaceError("a subspace needs at least one point")
    members = list(iter_bits(mask))
    points = tuple(xi.points[i] for i in members)
    lim = []
    for i in members:
        m = 0
        for t, j in enumerate(members):
            if xi.lim[i] >> j & 1:
                m |= 1 << t
        lim.append(m)
    return PsSpace(points, lim)


@dataclass(frozen=True)
class Collection:
    """A family of subsets of a PsSpace carrier."""

    space: PsSpace
    sets: tuple

    @classmethod
    def of(cls, space, families):
        masks = sorted(
            {space.mask_from_labels(f) for f in families},
            key=lambda m: (popcount(m), m),
        )
        return cls(space, tuple(masks))


def grill(collection):
    """All subsets meeting every member of the collection."""
    space = collection.space
    hits = [
        m
        for m in range(space.full + 1)
        if all(m & a for a in collection.sets)
    ]
    return Collection(space, tuple(sorted(hits, key=lambda m: (popcount(m), m))))


def filter_meshes(filt, collection):
    # the improper filter has the empty set as a member, so it only meshes
    # the empty collection
    if not collection.sets:
        return True
    if not filt.proper:
        return False
    return all(filt.base & a for a in collection.sets)


def adherence(xi, collection):
    """Union of filter limits over every filter meshing the collection."""
    out = 0
    for base in range(xi.full + 1):
        filt = FilterRep(xi, base)
        if filter_meshes(filt, collection):
            out |= lim_filter(xi, filt)
    return out


def adherence_filter(xi, filt):
    """Adherence of a filter: union of limits of the ultrafilters meshing it."""
    if not filt.proper:
        return 0
    out = 0
    for x in iter_bits(filt.base):
        out |= xi.lim[x]
    return out


def compact_at(xi, a_mask, b_mask):
    """Whether A is compact at B: meshing filters adhere inside B.

    Quantifies over all filters; the improper filter never meshes a
    nonempty collection, so only proper bases contribute.
    """
    for base in range(1, xi.full + 1):
        if base & a_mask == 0:
            continue
        if adherence_filter(xi, FilterRep(xi, base)) & b_mask == 0:
            return False
    return True


def is_compact_ps(xi):
    if xi.n == 0:
        return True
    return compact_at(xi, xi.full, xi.full)


def pushout_ps(f_piece, g_piece):
    """Pushout in PsTop: final structure on the glued carrier.

    Arguments are (source, mapping, target) triples sharing the source;
    returns (space, mapping from the first target, mapping from the second).
    Carrier and labels match pushout_spaces on the underlying sets.
    """
    (a_space, f_map, b_space) = f_piece
    (a_space2, g_map, c_space) = g_piece
    if a_space2 != a_space:
        raise CarrierMismatchError("the span legs must share a source")
    total = b_space.n + c_space.n
    parent = list(range(total))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a in range(a_space.n):
        ra = find(f_map[a])
        rc = find(b_space.n + g_map[a])
        if ra != rc:
            parent[rc] = ra
    tags = [
        f"b:{b_space.points[i]}" if i < b_space.n else f"c:{c_space.points[i - b_space.n]}"
        for i in range(total)
    ]
    label = {}
    for i in range(total):
        r = find(i)
        if r not in label or tags[i] < label[r]:
            label[r] = tags[i]
    points = sorted(set(label.values()))
    index = {x: t for t, x in enumerate(points)}
    tag_point = [index[label[find(i)]] for i in range(total)]
    b_inj = tuple(tag_point[: b_space.n])
    c_inj = tuple(tag_point[b_space.n :])
    space = final_structure([(b_space, b_inj), (c_space, c_inj)], points)
    return space, b_inj, c_inj


def all_ps_spaces(n, labels="123456"):
    """Every pseudotopology on a fixed labelled n-point carrier."""
    if n > 4:
        raise SizeError("exhaustive pseudotopology corpus stops at 4 points")
    return list(all_pseudotopologies(labels[:n]))


def ps_spaces_up_to_iso(n, labels="123456"):
    """One canonical representative per isomorphism class of pseudotopologies.

    The canonical form is the least relabelled lim tuple over all carrier
    permutations, so the output is deterministic and the suites that
    quantify per space can skip isomorphic repeats.
    """
    reps = []
    seen = set()
    for xi in all_ps_spaces(n, labels):
        best = None
        for perm in _permutations(range(n)):
            relabelled = [0] * n
            for i in range(n):
                m = 0
                for j in iter_bits(xi.lim[i]):
                    m |= 1 << perm[j]
                relabelled[perm[i]] = m
            key = tuple(relabelled)
            if best is None or key < best:
                best = key
        if best not in seen:
            seen.add(best)
            reps.append(PsSpace(xi.points, best, validate=False))
    return reps


def _adherence_table(xi):
    """Adherence of every proper principal filter, indexed by base mask."""
    out = [0] * (xi.full + 1)
    for base in range(1, xi.full + 1):
        m = 0
        for x in iter_bits(base):
            m |= xi.lim[x]
        out[base] = m
    return out


def _compact_pairs(xi, adh):
    """All (A, B) with A compact at B, from a precomputed adherence table."""
    pairs = []
    for a_mask in range(1, xi.full + 1):
        bases = [b for b in range(1, xi.full + 1) if b & a_mask]
        for b_mask in range(1, xi.full + 1):
            if all(adh[b] & b_mask for b in bases):
                pairs.append((a_mask, b_mask))
    return pairs


@dataclass(frozen=True)
class LemmaReport:
    name: str
    instances: int
    failures: tuple

    @property
    def holds(self):
        return not self.failures


def _restriction(mapping, source_mask, target_mask):
    src = list(iter_bits(source_mask))
    tgt = {j: t for t, j in enumerate(iter_bits(target_mask))}
    return tuple(tgt[mapping[i]] for i in src)


def lemma_subspace_restriction(max_points=3):
    """Restrictions of continuous maps stay continuous on compatible subsets.

    Quantifies over the deduplicated corpus; the hot loop uses the licensed
    ultrafilter criterion and any hit is re-examined with the literal
    all-filters checker before it counts as a failure.
    """
    instances = 0
    failures = []
    spaces = [s for n in range(1, max_points + 1) for s in ps_spaces_up_to_iso(n)]
    for xi in spaces:
        subs_x = {a: subspace_ps(xi, a) for a in range(1, xi.full + 1)}
        for zeta in spaces:
            subs_z = {b: subspace_ps(zeta, b) for b in range(1, zeta.full + 1)}
            for mapping in iter_continuous_ps_maps(xi, zeta):
                for a_mask, sub_xi in subs_x.items():
                    fa = _image(mapping, a_mask)
                    for b_mask, sub_zeta in subs_z.items():
                        if fa & ~b_mask:
                            continue
                        instances += 1
                        sub = _restriction(mapping, a_mask, b_mask)
                        if not continuous_on_ultrafilters(sub, sub_xi, sub_zeta):
                            if not check_continuity(sub, sub_xi, sub_zeta):
                                failures.append((xi, zeta, mapping, a_mask, b_mask))
    return LemmaReport("subspace_restriction", instances, tuple(failures))


def lemma_subspace_modification(max_points=3):
    """tau of a subspace is finer than the subspace of tau."""
    instances = 0
    failures = []
    for n in range(1, max_points + 1):
        for xi in ps_spaces_up_to_iso(n):
            tau_whole = top_modification(xi)
            for a_mask in range(1, xi.full + 1):
                instances += 1
                fine = top_modification(subspace_ps(xi, a_mask))
                coarse = tau_whole.subspace(a_mask)
                if any(not fine.is_open(u) for u in coarse.opens):
                    failures.append((xi, a_mask))
    return LemmaReport("subspace_modification", instances, tuple(failures))


def lemma_compact_image(max_points=3):
    """Continuous images of compact-at pairs stay compact-at.

    Adherence and compact-at tables are hoisted out of the map loop; a table
    miss is re-checked with the literal compact_at before it is recorded.
    """
    instances = 0
    failures = []
    spaces = [s for n in range(1, max_points + 1) for s in ps_spaces_up_to_iso(n)]
    source_pairs = {id(xi): _compact_pairs(xi, _adherence_table(xi)) for xi in spaces}
    for xi in spaces:
        pairs = source_pairs[id(xi)]
        for zeta in spaces:
            adh = _adherence_table(zeta)
            for mapping in iter_continuous_ps_maps(xi, zeta):
                images = [_image(mapping, m) for m in range(xi.full + 1)]
                for a_mask, b_mask in pairs:
                    instances += 1
                    fa = images[a_mask]
                    fb = images[b_mask]
                    bases = [b for b in range(1, zeta.full + 1) if b & fa]
                    if all(adh[b] & fb for b in bases):
                        continue
                    if not compact_at(zeta, fa, fb):
                        failures.append((xi, zeta, mapping, a_mask, b_mask))
    return LemmaReport("compact_image", instances, tuple(failures))


def lemma_compact_balanced(max_points=3):
    """Continuous bijections from compact PsSpaces to Hausdorff topological ones invert."""
    instances = 0
    failures = []
    for n in range(1, max_points + 1):
        hausdorff = discrete_ps("123456"[:n])
        for xi in ps_spaces_up_to_iso(n):
            if not is_compact_ps(xi):
                continue
            for mapping in iter_continuous_ps_maps(xi, hausdorff):
                if len(set(mapping)) != n:
                    continue
                instances += 1
                inverse = [0] * n
                for i, v in enumerate(mapping):
                    inverse[v] = i
                if not check_continuity(tuple(inverse), hausdorff, xi):
                    failures.append((xi, mapping))
    return LemmaReport("compact_balanced", instances, tuple(failures))


def lemma_pushout_agreement(max_points=2):
    """Top pushouts of compact spaces with Hausdorff apex agree with PsTop ones.

    Spans of topological spaces are pushed out in Top (via open-set gluing)
    and in PsTop (final structure); whenever the Top apex is Hausdorff,
    i.e. discrete, the two structures must coincide.
    """
    from .corpus import spaces_upto

    instances = 0
    failures = []
    spaces = [s for s in spaces_upto(max_points) if s.n >= 1]
    for a_space in spaces:
        for b_space in spaces:
            maps_ab = list(iter_space_maps(a_space, b_space))
            if not maps_ab:
                continue
            for c_space in spaces:
                for f in maps_ab:
                    for g in iter_space_maps(a_space, c_space):
                        apex, ib, ic = pushout_spaces(f, g)
                        if not apex.is_discrete:
                            continue
                        instances += 1
                        ps_apex, _, _ = pushout_ps(
                            (ps_from_space(a_space), f.mapping, ps_from_space(b_space)),
                            (ps_from_space(a_space), g.mapping, ps_from_space(c_space)),
                        )
                        if ps_apex != ps_from_space(apex):
                            failures.append((a_space, b_space, c_space, f, g))
    return LemmaReport("pushout_agreement", instances, tuple(failures))


def iter_space_maps(source, target):
    from .spaces import iter_continuous_maps

    return iter_continuous_maps(source, target)


def lemma_tau_iota(max_points=3):
    """Continuity into an embedded space matches continuity out of tau.

    For every pseudotopology xi and topological space S the continuous maps
    xi -> iota(S) and tau(xi) -> S must have the same underlying point
    functions; that hom-bijection is the adjunction tau -| iota.
    """
    from .corpus import spaces_upto

    instances = 0
    failures = []
    targets = [s for s in spaces_upto(max_points) if s.n >= 1]
    for n in range(1, max_points + 1):
        for xi in ps_spaces_up_to_iso(n):
            tau = top_modification(xi)
            for target in targets:
                instances += 1
                via_ps = set(iter_continuous_ps_maps(xi, ps_from_space(target)))
                via_top = {m.mapping for m in iter_space_maps(tau, target)}
                if via_ps != via_top:
                    failures.append((xi, target, via_ps ^ via_top))
    return LemmaReport("tau_iota_adjunction", instances, tuple(failures))


def lemma_lattice_bounds(max_points=3):
    """meet_ps and join_ps are the extremal bounds for the refinement order."""
    instances = 0
    failures = []
    for n in range(1, max_points + 1):
        everything = list(all_pseudotopologies("123456"[:n]))
        for xi in everything:
            for zeta in everything:
                instances += 1
                met = meet_ps(xi, zeta)
                joined = join_ps(xi, zeta)
                ok = (
                    finer_ps(xi, met)
                    and finer_ps(zeta, met)
                    and finer_ps(joined, xi)
                    and finer_ps(joined, zeta)
                    and all(
                        finer_ps(eta, met)
                        for eta in everything
                        if finer_ps(eta, xi) and finer_ps(eta, zeta)
                    )
                    and all(
                        finer_ps(joined, eta)
                        for eta in everything
                        if finer_ps(xi, eta) and finer_ps(zeta, eta)
                    )
                )
                if not ok:
                    failures.append((xi, zeta))
    return LemmaReport("lattice_bounds", instances, tuple(failures))


def lemma_all_compact(max_points=3):
    """Every finite pseudotopological space is compact."""
    instances = 0
    failures = []
    for n in range(1, max_points + 1):
        for xi in ps_spaces_up_to_iso(n):
            instances += 1
            if not is_compact_ps(xi):
                failures.append((xi,))
    return LemmaReport("all_compact", instances, tuple(failures))


def lemma_suite(max_points=3):
    """Run every PsTop lemma check; all reports must hold."""
    return (
        lemma_subspace_restriction(max_points),
        lemma_subspace_modification(max_points),
        lemma_compact_image(max_points),
        lemma_compact_balanced(max_points),
        lemma_pushout_agreement(min(max_points, 2)),
        lemma_tau_iota(max_points),
        lemma_lattice_bounds(max_points),
        lemma_all_compact(max_points),
    )
