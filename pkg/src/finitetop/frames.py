"""Finite frames, frame homomorphisms, adjoints and nuclei.

A finite frame is a finite distributive lattice; binary meets and joins are
precomputed index tables so that everything downstream is table lookups and
mask folds.  Validation is eager: `frame_from_poset` rejects non-lattices
and non-distributive lattices with witnesses.
"""

from __future__ import annotations

from functools import cached_property

from .bits import iter_bits, mask_of, popcount, submasks
from .errors import (
    NotDistributiveError,
    NotHomError,
    NotLatticeError,
    NotPrenucleusError,
    SizeError,
    VerificationError,
)
from .poset import FinitePoset

DISTRIBUTIVITY_CHECK_LIMIT = 128
WAY_BELOW_CAP_BITS = 22


class FiniteFrame:
    """A finite distributive lattice with total meet/join tables."""

    def __init__(self, order, join, meet, bottom, top):
        self.order = order
        self.join = join
        self.meet = meet
        self.bottom = bottom
        self.top = top

    @property
    def n(self):
        return self.order.n

    @property
    def labels(self):
        return self.order.labels

    def leq_idx(self, i, j):
        return self.order.leq_idx(i, j)

    def join2(self, i, j):
        return self.join[i][j]

    def meet2(self, i, j):
        return self.meet[i][j]

    def join_mask(self, mask):
        acc = self.bottom
        for i in iter_bits(mask):
            acc = self.join[acc][i]
        return acc

    def meet_mask(self, mask):
        acc = self.top
        for i in iter_bits(mask):
            acc = self.meet[acc][i]
        return acc

    @cached_property
    def irreducibles(self):
        """Join-irreducible elements: strictly above the join of their strict down-set."""
        out = []
        for j in range(self.n):
            below = self.order.down[j] & ~(1 << j)
            if self.join_mask(below) != j:
                out.append(j)
        return tuple(out)

    @cached_property
    def irreducibles_below(self):
        """Per element, the mask of join-irreducibles below it."""
        irr_mask = 0
        for j in self.irreducibles:
            irr_mask |= 1 << j
        return tuple(self.order.down[x] & irr_mask for x in range(self.n))

    @cached_property
    def subset_join_table(self):
        """For carriers up to 16 elements, joins of all subsets, memoized fully."""
        if self.n > 16:
            raise SizeError("subset join table only materialized up to 16 elements")
        table = [self.bottom] * (1 << self.n)
        for m in range(1, 1 << self.n):
            low = (m & -m).bit_length() - 1
            table[m] = self.join[table[m ^ (m & -m)]][low]
        return table

    def joins_of_subsets(self, mask):
        """The set {join of X : X a subset of mask}, as a mask; includes bottom."""
        acc = 1 << self.bottom
        for a in iter_bits(mask):
            extra = 0
            for s in iter_bits(acc):
                extra |= 1 << self.join[s][a]
            acc |= extra
        return acc

    def __eq__(self, other):
        return isinstance(other, FiniteFrame) and self.order == other.order

    def __hash__(self):
        return hash(self.order)

    def __repr__(self):
        return f"FiniteFrame({self.n} elements)"


def frame_from_poset(poset, *, check_distributive=True):
    """Build a FiniteFrame, or raise NotLatticeError / NotDistributiveError.

    Pairwise bounds are located as least/greatest elements of bound sets;
    a missing one yields the offending pair.  Distributivity is checked on
    every triple, so the diamond M3 and the pentagon N5 are both rejected
    with witnesses.
    """
    n = poset.n
    if n == 0:
        raise NotLatticeError("a frame needs at least one element")
    up = poset.up
    down = poset.down
    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            ub = up[i] & up[j]
            least = _least_of(poset, ub)
            if least is None:
                raise NotLatticeError(
                    f"no least upper bound for {poset.labels[i]!r}, {poset.labels[j]!r}"
                )
            join[i][j] = join[j][i] = least
            lb = down[i] & down[j]
            greatest = _greatest_of(poset, lb)
            if greatest is None:
                raise NotLatticeError(
                    f"no greatest lower bound for {poset.labels[i]!r}, {poset.labels[j]!r}"
                )
            meet[i][j] = meet[j][i] = greatest
    bottom = 0
    top = 0
    for i in range(n):
        bottom = meet[bottom][i]
        top = join[top][i]
    frame = FiniteFrame(
        poset,
        tuple(tuple(r) for r in join),
        tuple(tuple(r) for r in meet),
        bottom,
        top,
    )
    if check_distributive:
        witness = distributivity_witness(frame)
        if witness is not None:
            a, b, c = (poset.labels[k] for k in witness)
            raise NotDistributiveError(
                f"distributivity fails on ({a!r}, {b!r}, {c!r})"
            )
    return frame


def _least_of(poset, mask):
    for u in iter_bits(mask):
        if mask & ~poset.up[u] == 0:
            return u
    return None


def _greatest_of(poset, mask):
    for u in iter_bits(mask):
        if mask & ~poset.down[u] == 0:
            return u
    return None


def distributivity_witness(frame):
    """A triple violating a&(b|c) == (a&b)|(a&c), or None."""
    n = frame.n
    join = frame.join
    meet = frame.meet
    for a in range(n):
        ma = meet[a]
        for b in range(n):
            ab = ma[b]
            for c in range(n):
                if ma[join[b][c]] != join[ab][ma[c]]:
                    return (a, b, c)
    return None


def frame_from_downsets(family):
    """The frame of downsets of a poset, ordered by inclusion."""
    return frame_from_poset(family.poset, check_distributive=False)


def downset_frame(poset):
    """All downsets of a poset as a frame; the free frame on the poset."""
    from .poset import DownsetFamily

    return frame_from_downsets(DownsetFamily(poset, tuple(poset.downsets())))


class FrameHom:
    """A map preserving bottom, top, binary joins and binary meets.

    In the finite case this forces preservation of all joins and meets, so
    these are exactly the frame homomorphisms.  Validation on construction
    is quadratic in the source; internal callers that already hold a
    construction-level certificate (a checked order isomorphism, say) may
    pass validate=False to skip the direct law sweep.
    """

    def __init__(self, source, target, mapping, *, validate=True):
        self.source = source
        self.target = target
        self.mapping = tuple(mapping)
        if validate:
            _check_hom(source, target, self.mapping)

    @classmethod
    def from_labels(cls, source, target, assignment):
        mapping = [target.order.index(assignment[x]) for x in source.labels]
        return cls(source, target, mapping)

    @classmethod
    def identity(cls, frame):
        return cls(frame, frame, range(frame.n))

    def __call__(self, i):
        return self.mapping[i]

    def apply_label(self, x):
        return self.target.labels[self.mapping[self.source.order.index(x)]]

    def then(self, other):
        assert self.target == other.source
        return FrameHom(
            self.source, other.target, [other.mapping[v] for v in self.mapping]
        )

    def is_surjective(self):
        return len(set(self.mapping)) == self.target.n

    def is_injective(self):
        return len(set(self.mapping)) == self.source.n

    def __eq__(self, other):
        return (
            isinstance(other, FrameHom)
            and self.source == other.source
            and self.target == other.target
            and self.mapping == other.mapping
        )

    def __hash__(self):
        return hash((self.source, self.target, self.mapping))

    def __repr__(self):
        pairs = ", ".join(
            f"{x}->{self.target.labels[v]}"
            for x, v in zip(self.source.labels, self.mapping)
        )
        return f"FrameHom({pairs})"


def _check_hom(source, target, mapping):
    if len(mapping) != source.n:
        raise NotHomError("mapping length does not match the source")
    if mapping[source.bottom] != target.bottom:
        raise NotHomError("bottom is not preserved")
    if mapping[source.top] != target.top:
        raise NotHomError("top is not preserved")
    for i in range(source.n):
        fi = mapping[i]
        for j in range(i, source.n):
            fj = mapping[j]
            if mapping[source.join[i][j]] != target.join[fi][fj]:
                raise NotHomError(
                    f"join of {source.labels[i]!r}, {source.labels[j]!r} not preserved"
                )
            if mapping[source.meet[i][j]] != target.meet[fi][fj]:
                raise NotHomError(
                    f"meet of {source.labels[i]!r}, {source.labels[j]!r} not preserved"
                )


def check_frame_hom(source, target, mapping):
    """Validate and wrap; this is the only way maps become FrameHoms."""
    return FrameHom(source, target, mapping)


def iter_frame_homs(source, target):
    """All frame homs source -> target.

    A hom is determined by its monotone restriction to join-irreducibles
    (every element is the join of the irreducibles below it, and in a
    distributive lattice irreducibles are join-prime, so the interpolation
    preserves joins by construction).  Candidates are then filtered by the
    top and meet laws.
    """
    irr = source.irreducibles
    if source.n == 1:
        if target.n == 1:
            yield FrameHom(source, target, [target.bottom])
        return
    ext = [i for i in source.order.linear_extension if i in set(irr)]
    pos = {j: t for t, j in enumerate(ext)}
    values = [0] * len(ext)
    tfull = (1 << target.n) - 1
    below = source.irreducibles_below

    def interpolate():
        mapping = [0] * source.n
        for x in range(source.n):
            acc = target.bottom
            for j in iter_bits(below[x]):
                acc = target.join[acc][values[pos[j]]]
            mapping[x] = acc
        return mapping

    def rec(t):
        if t == len(ext):
            mapping = interpolate()
            if mapping[source.top] != target.top:
                return
            try:
                yield FrameHom(source, target, mapping)
            except NotHomError:
                return
            return
        i = ext[t]
        cand = tfull
        for k in ext[:t]:
            if source.leq_idx(k, i):
                cand &= target.order.up[values[pos[k]]]
        for v in iter_bits(cand):
            values[t] = v
            yield from rec(t + 1)

    yield from rec(0)


class GaloisConnection:
    """A frame hom together with its validated right adjoint."""

    def __init__(self, left, right):
        self.left = left
        self.right = tuple(right)
        src = left.source
        tgt = left.target
        for x in range(src.n):
            for y in range(tgt.n):
                if tgt.leq_idx(left.mapping[x], y) != src.leq_idx(x, self.right[y]):
                    raise VerificationError("adjunction law fails")

    @property
    def source(self):
        return self.left.source

    @property
    def target(self):
        return self.left.target

    def check_laws(self):
        """Triangle identities, meet preservation and the duality pair.

        Returns a dict of named boolean outcomes; everything should be True
        for any validated connection, and suites assert exactly that.
        """
        f = self.left.mapping
        g = self.right
        src = self.source
        tgt = self.target
        fgf = all(f[g[f[x]]] == f[x] for x in range(src.n))
        gfg = all(g[f[g[y]]] == g[y] for y in range(tgt.n))
        g_top = g[tgt.top] == src.top
        g_meets = all(
            g[tgt.meet[y][z]] == src.meet[g[y]][g[z]]
            for y in range(tgt.n)
            for z in range(tgt.n)
        )
        f_inj = len(set(f)) == src.n
        g_surj = len(set(g)) == src.n
        f_surj = len(set(f)) == tgt.n
        g_inj = len(set(g)) == tgt.n
        return {
            "fgf": fgf,
            "gfg": gfg,
            "right_preserves_top": g_top,
            "right_preserves_meets": g_meets,
            "left_injective_iff_right_surjective": f_inj == g_surj,
            "left_surjective_iff_right_injective": f_surj == g_inj,
        }


def right_adjoint(hom):
    """The right adjoint g(y) = join{x : f(x) <= y}, as a GaloisConnection."""
    src = hom.source
    tgt = hom.target
    g = []
    for y in range(tgt.n):
        mask = 0
        for x in range(src.n):
            if tgt.leq_idx(hom.mapping[x], y):
                mask |= 1 << x
        g.append(src.join_mask(mask))
    return GaloisConnection(hom, g)


def way_below(frame, a, b, cap_bits=WAY_BELOW_CAP_BITS):
    """Literal evaluation: every join cover of b has a finite subcover above a.

    Quantifies over all subsets K with join K = b; the inner existential is
    witnessed by K' = K, which is complete because subset joins are bounded
    by join K.  SizeError when the carrier is too large to sweep.
    """
    if frame.n > cap_bits:
        raise SizeError(f"way-below sweep needs 2^{frame.n} subsets")
    for k_mask in submasks((1 << frame.n) - 1):
        if frame.join_mask(k_mask) != b:
            continue
        # the whole cover is itself the finite subcover candidate; smaller
        # subsets only shrink the join, so this witness is complete
        if not frame.leq_idx(a, b):
            return False
    return True


def is_locally_compact(frame, cap_bits=WAY_BELOW_CAP_BITS):
    """Every element is the join of the elements way below it."""
    for a in range(frame.n):
        wb = 0
        for x in range(frame.n):
            if way_below(frame, x, a, cap_bits):
                wb |= 1 << x
        if frame.join_mask(wb) != a:
            return False
    return True


class Prenucleus:
    """An inflationary monotone self-map with k(x) & y <= k(x & y)."""

    def __init__(self, frame, mapping):
        self.frame = frame
        self.mapping = tuple(mapping)
        err = prenucleus_violation(frame, self.mapping)
        if err is not None:
            raise NotPrenucleusError(err)

    def __call__(self, i):
        return self.mapping[i]


def prenucleus_violation(frame, mapping):
    """A message describing the first failed prenucleus law, or None."""
    n = frame.n
    if len(mapping) != n:
        return "mapping length does not match the carrier"
    for x in range(n):
        if not frame.leq_idx(x, mapping[x]):
            return f"not inflationary at {frame.labels[x]!r}"
    for x in range(n):
        for y in range(n):
            if frame.leq_idx(x, y) and not frame.leq_idx(mapping[x], mapping[y]):
                return f"not monotone on {frame.labels[x]!r} <= {frame.labels[y]!r}"
    for x in range(n):
        for y in range(n):
            lhs = frame.meet[mapping[x]][y]
            rhs = mapping[frame.meet[x][y]]
            if not frame.leq_idx(lhs, rhs):
                return (
                    f"k(x) & y <= k(x & y) fails at x={frame.labels[x]!r}, "
                    f"y={frame.labels[y]!r}"
                )
    return None


class Nucleus:
    """A meet-preserving inflationary idempotent self-map."""

    def __init__(self, frame, mapping):
        self.frame = frame
        self.mapping = tuple(mapping)
        n = frame.n
        for x in range(n):
            if not frame.leq_idx(x, self.mapping[x]):
                raise NotPrenucleusError(f"not inflationary at {frame.labels[x]!r}")
            if self.mapping[self.mapping[x]] != self.mapping[x]:
                raise NotPrenucleusError(f"not idempotent at {frame.labels[x]!r}")
        for x in range(n):
            for y in range(n):
                if self.mapping[frame.meet[x][y]] != frame.meet[self.mapping[x]][self.mapping[y]]:
                    raise NotPrenucleusError(
                        f"meets not preserved at {frame.labels[x]!r}, {frame.labels[y]!r}"
                    )

    def __call__(self, i):
        return self.mapping[i]

    @cached_property
    def fixed_mask(self):
        m = 0
        for x in range(self.frame.n):
            if self.mapping[x] == x:
                m |= 1 << x
        return m


def nucleus_from_prenucleus(pre):
    """The generated nucleus k(x) = meet of the fixed points above x.

    The fixed sets of the prenucleus and of its nucleus agree; that equality
    is re-verified here because it is the whole point of the construction.
    """
    frame = pre.frame
    fixed = 0
    for x in range(frame.n):
        if pre.mapping[x] == x:
            fixed |= 1 << x
    mapping = []
    for x in range(frame.n):
        above = fixed & frame.order.up[x]
        mapping.append(frame.meet_mask(above))
    nucleus = Nucleus(frame, mapping)
    if nucleus.fixed_mask != fixed:
        raise VerificationError("generated nucleus changed the fixed set")
    return nucleus


def frame_isomorphism(a, b):
    """An isomorphism a -> b as an index tuple, or None.

    Finite distributive lattices are isomorphic exactly when their posets
    of join-irreducibles are, and a poset isomorphism of irreducibles
    extends by joins.  The extension is re-verified by transferring every
    up-set, so the certificate does not rest on that theorem alone.
    """
    from .poset import poset_isomorphism

    if a.n != b.n:
        return None
    irr_a = a.irreducibles
    irr_b = b.irreducibles
    if len(irr_a) != len(irr_b):
        return None
    phi = poset_isomorphism(
        a.order.restrict(mask_of(irr_a)), b.order.restrict(mask_of(irr_b))
    )
    if phi is None:
        return None
    mapping = []
    for x in range(a.n):
        m = 0
        for t, j in enumerate(irr_a):
            if a.order.down[x] >> j & 1:
                m |= 1 << irr_b[phi[t]]
        mapping.append(b.join_mask(m))
    if len(set(mapping)) != a.n:
        return None
    bu = b.order.up
    for i in range(a.n):
        transferred = 0
        for j in iter_bits(a.order.up[i]):
            transferred |= 1 << mapping[j]
        if transferred != bu[mapping[i]]:
            return None
    return tuple(mapping)


def chain_frame(k):
    """The k-element chain 0 < 1 < ... as a frame; k >= 1."""
    labels = [f"c{i:02d}" for i in range(k)]
    pairs = [(labels[i], labels[i + 1]) for i in range(k - 1)]
    from .poset import validate_poset

    return frame_from_poset(validate_poset(labels, pairs))


def two():
    """The initial frame 0 < 1."""
    return chain_frame(2)
