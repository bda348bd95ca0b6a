"""Exhaustive corpora of small posets, preorders, lattices and frames.

Generation is deterministic: posets grow by attaching a fresh maximal
element over each downset of a smaller poset (every finite poset arises
this way by deleting a maximal element), and duplicates are removed via a
minimum-over-permutations canonical certificate.  Known counts are frozen
in the test suite as an independent cross-check.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from .bits import iter_bits
from .errors import NotDistributiveError, NotLatticeError
from .frames import FiniteFrame, frame_from_poset
from .poset import FinitePoset
from .spaces import FiniteSpace, space_from_preorder

LABELS = "abcdefghijklmnop"


def poset_certificate(up_rows):
    """Canonical form of an order relation: the minimal row tuple over relabelings."""
    n = len(up_rows)
    best = None
    for perm in permutations(range(n)):
        rows = [0] * n
        for i, r in enumerate(up_rows):
            m = 0
            for j in iter_bits(r):
                m |= 1 << perm[j]
            rows[perm[i]] = m
        key = tuple(rows)
        if best is None or key < best:
            best = key
    return best


def _poset_from_rows(rows):
    n = len(rows)
    return FinitePoset(LABELS[:n], rows)


@lru_cache(maxsize=None)
def all_posets(max_n):
    """All posets with at most max_n elements, one per isomorphism class."""
    layers = {0: [()]}
    for n in range(1, max_n + 1):
        seen = {}
        for rows in layers[n - 1]:
            base = _poset_from_rows(list(rows))
            for d in base.downsets().masks:
                new_rows = [
                    rows[i] | ((1 << (n - 1)) if d >> i & 1 else 0)
                    for i in range(n - 1)
                ]
                new_rows.append(1 << (n - 1))
                cert = poset_certificate(new_rows)
                if cert not in seen:
                    seen[cert] = tuple(new_rows)
        layers[n] = sorted(seen.values())
    out = []
    for n in range(0, max_n + 1):
        out.extend(_poset_from_rows(list(rows)) for rows in layers[n])
    return tuple(out)


@lru_cache(maxsize=None)
def all_preorders_labelled(n):
    """All reflexive transitive relations on n labelled points, as row tuples."""
    if n == 0:
        return ((),)
    out = []
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    base = [1 << i for i in range(n)]

    def closed(rows):
        for k in range(n):
            for i in range(n):
                if rows[i] >> k & 1 and rows[i] | rows[k] != rows[i]:
                    return False
        return True

    for choice in range(1 << len(pairs)):
        rows = list(base)
        for t, (i, j) in enumerate(pairs):
            if choice >> t & 1:
                rows[i] |= 1 << j
        if closed(rows):
            out.append(tuple(rows))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def all_spaces(max_n, *, up_to_iso=True, t0_only=False):
    """All finite topologies with at most max_n points, via their preorders."""
    out = []
    for n in range(0, max_n + 1):
        seen = set()
        for rows in all_preorders_labelled(n):
            if t0_only and any(
                rows[i] >> j & 1 and rows[j] >> i & 1
                for i in range(n)
                for j in range(n)
                if i != j
            ):
                continue
            if up_to_iso:
                cert = poset_certificate(rows)
                if cert in seen:
                    continue
                seen.add(cert)
            out.append(space_from_preorder(LABELS[:n], rows))
    return tuple(out)


@lru_cache(maxsize=None)
def all_lattices(max_n):
    """All lattice posets with 1..max_n elements, one per isomorphism class."""
    out = []
    for p in all_posets(max_n):
        if p.n == 0:
            continue
        try:
            frame_from_poset(p, check_distributive=False)
        except NotLatticeError:
            continue
        out.append(p)
    return tuple(out)


@lru_cache(maxsize=None)
def all_frames(max_n):
    """All frames (distributive lattices) with 1..max_n elements, up to iso."""
    out = []
    for p in all_lattices(max_n):
        try:
            out.append(frame_from_poset(p))
        except NotDistributiveError:
            continue
    return tuple(out)


@lru_cache(maxsize=None)
def frame_corpus():
    """The default frame corpus: every frame with at most 5 elements."""
    return all_frames(5)


def frames_upto(max_n):
    return all_frames(max_n)


def spaces_upto(max_n, t0_only=False):
    return all_spaces(max_n, t0_only=t0_only)
