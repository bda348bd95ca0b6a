"""The open-sets / points correspondence for finite spaces and frames.

Points of a frame are its homs into the two-element frame.  On a finite
lattice the preimage of top under such a hom is a principal filter, so the
candidates are indexed by their least member and validated one by one;
nothing is sampled.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import HypothesisError, NotHomError, VerificationError
from .frames import FiniteFrame, FrameHom, frame_from_poset, iter_frame_homs, two
from .poset import FinitePoset
from .spaces import FiniteSpace, SpaceMap, is_sober, iter_continuous_maps


@dataclass(frozen=True)
class LocalePoint:
    """A point of a frame: a hom into 2 tagged with its filter's generator."""

    frame: FiniteFrame
    hom: FrameHom
    generator: int


def omega(space):
    """The topology of a space as a frame ordered by inclusion."""
    opens = space.opens
    labels = ["{" + ",".join(space.label_set(m)) + "}" for m in opens]
    rows = []
    for u in opens:
        row = 0
        for k, v in enumerate(opens):
            if u & ~v == 0:
                row |= 1 << k
        rows.append(row)
    return frame_from_poset(FinitePoset(labels, rows), check_distributive=False)


def omega_map(f, *, omega_source=None, omega_target=None):
    """Preimage as a frame hom from the codomain topology to the domain one."""
    if omega_source is None:
        omega_source = omega(f.source)
    if omega_target is None:
        omega_target = omega(f.target)
    position = {m: k for k, m in enumerate(f.source.opens)}
    mapping = [position[f.preimage_mask(v)] for v in f.target.opens]
    return FrameHom(omega_target, omega_source, mapping)


def locale_points(frame):
    """All frame homs into 2, one per principal prime filter.

    A hom's preimage of top is a filter containing top; on a finite lattice
    that filter is principal, so each candidate is the up-set of a single
    generator and hom validation is exactly primality of the filter.
    """
    target = two()
    out = []
    for x in range(frame.n):
        mapping = [1 if frame.leq_idx(x, a) else 0 for a in range(frame.n)]
        try:
            hom = FrameHom(frame, target, mapping)
        except NotHomError:
            continue
        out.append(LocalePoint(frame, hom, x))
    return tuple(out)


def _sigma_masks(frame, points, space):
    """Per frame element, the mask of points whose hom sends it to top."""
    out = []
    for a in range(frame.n):
        m = 0
        for p in points:
            if p.hom.mapping[a]:
                m |= 1 << space.index(frame.labels[p.generator])
        out.append(m)
    return out


def pt(frame):
    """The space of points of a frame under the Sigma-opens topology.

    A point generated by x lies in the open Sigma_a exactly when x <= a.
    The result is always sober; that is re-verified here rather than
    assumed.
    """
    points = locale_points(frame)
    labels = sorted(frame.labels[p.generator] for p in points)
    index = {x: i for i, x in enumerate(labels)}
    opens = set()
    for a in range(frame.n):
        m = 0
        for p in points:
            if p.hom.mapping[a]:
                m |= 1 << index[frame.labels[p.generator]]
        opens.add(m)
    space = FiniteSpace(labels, opens)
    if not is_sober(space):
        raise VerificationError("a point space failed to be sober")
    return space


def pt_map(hom, *, source_space=None, target_space=None):
    """The continuous action on points induced by a frame hom.

    For hom : M -> L, a point p of L is carried to p after hom, a point of
    M; the generator of the composite's filter locates the image point.
    """
    big = hom.target
    small = hom.source
    if source_space is None:
        source_space = pt(big)
    if target_space is None:
        target_space = pt(small)
    mapping = []
    for x in source_space.points:
        g = big.order.index(x)
        filter_mask = 0
        for b in range(small.n):
            if big.leq_idx(g, hom.mapping[b]):
                filter_mask |= 1 << b
        generator = small.meet_mask(filter_mask)
        mapping.append(target_space.index(small.labels[generator]))
    return SpaceMap(source_space, target_space, mapping)


@dataclass(frozen=True)
class SpatialityReport:
    """Verdict of the comparison a |-> Sigma_a, with the witness homs."""

    spatial: bool
    comparison: FrameHom
    inverse: FrameHom | None


def is_spatial(frame):
    """Whether the comparison into the opens of the point space is an iso.

    The comparison is surjective by construction, so spatiality comes down
    to injectivity; the inverse hom is returned as the witness when it
    exists.
    """
    points = locale_points(frame)
    space = pt(frame)
    opens_frame = omega(space)
    position = {m: k for k, m in enumerate(space.opens)}
    sigma = _sigma_masks(frame, points, space)
    mapping = [position[m] for m in sigma]
    comparison = FrameHom(frame, opens_frame, mapping)
    if opens_frame.n == frame.n and len(set(mapping)) == frame.n:
        inverse_map = [0] * frame.n
        for a, s in enumerate(mapping):
            inverse_map[s] = a
        return SpatialityReport(True, comparison, FrameHom(opens_frame, frame, inverse_map))
    return SpatialityReport(False, comparison, None)


def space_to_loc_transpose(g, frame, *, omega_source=None):
    """Transpose a continuous map into pt(frame) across the adjunction.

    The result sends a frame element to the preimage of its Sigma-open, a
    frame hom from the frame to the domain's topology.
    """
    if omega_source is None:
        omega_source = omega(g.source)
    points = locale_points(frame)
    sigma = _sigma_masks(frame, points, g.target)
    position = {m: k for k, m in enumerate(g.source.opens)}
    mapping = [position[g.preimage_mask(s)] for s in sigma]
    return FrameHom(frame, omega_source, mapping)


@dataclass(frozen=True)
class AdjunctionReport:
    """Both hom-sets of the adjunction and the transpose correspondence."""

    holds: bool
    count: int
    loc_homs: tuple
    space_maps: tuple
    transposes: tuple


def adjunction_check(space, frame):
    """Verify the hom-set bijection between Loc maps and continuous maps.

    Enumerates frame homs frame -> omega(space) and continuous maps
    space -> pt(frame), transposes every continuous map, and reports
    whether transposition is a bijection between the two sets.
    """
    if not is_sober(space):
        raise HypothesisError("the space side of the adjunction must be sober")
    opens_frame = omega(space)
    point_space = pt(frame)
    loc_homs = tuple(iter_frame_homs(frame, opens_frame))
    space_maps = tuple(iter_continuous_maps(space, point_space))
    points = locale_points(frame)
    sigma = _sigma_masks(frame, points, point_space)
    position = {m: k for k, m in enumerate(space.opens)}
    transposes = tuple(
        FrameHom(frame, opens_frame, [position[g.preimage_mask(s)] for s in sigma])
        for g in space_maps
    )
    holds = len(set(transposes)) == len(space_maps) and set(transposes) == set(loc_homs)
    return AdjunctionReport(holds, len(space_maps), loc_homs, space_maps, transposes)
