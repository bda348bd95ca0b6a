"""Coproducts of finite frames, frame products, and pushouts of locales.

The coproduct of frames L and M is the frame of saturated downsets of the
product order on the two carriers.  A downset is a Python int with the pair
(i, j) at bit i * |M| + j; saturation closes a downset under per-row and
per-column joins.  A saturated downset is determined by the join-irreducible
pairs it contains, so the element set is enumerated as the downsets of the
irreducible-pair subposet and each element's full downset mask is
reconstructed from there; the saturation machinery stays as the per-call
cross-check on small carriers and as the slow oracle in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _iterproduct

from .bits import iter_bits, popcount, submasks
from .errors import (
    NotDistributiveError,
    NotDownsetError,
    NotFrameError,
    NotIsoError,
    NotLatticeError,
    SizeError,
    VerificationError,
)
from .frames import (
    DISTRIBUTIVITY_CHECK_LIMIT,
    FiniteFrame,
    FrameHom,
    GaloisConnection,
    distributivity_witness,
    frame_from_poset,
    right_adjoint,
)
from .poset import FinitePoset

TENSOR_ELEMENT_CAP = 20000
PRODUCT_ELEMENT_CAP = 20000
LITERAL_SIDE_CAP = 12
LITERAL_SUBSET_CAP = 16
EAGER_TABLE_LIMIT = 600
SATURATION_CHECK_LIMIT = 512


def _join_closure(frame, mask):
    # memo lives on the frame: row/column masks repeat heavily across saturations
    cache = frame.__dict__.setdefault("_join_closure_memo", {})
    out = cache.get(mask)
    if out is None:
        out = frame.joins_of_subsets(mask)
        cache[mask] = out
    return out


class TensorCarrier:
    """Bit-level workspace for downsets of the product of two frame carriers."""

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.nl = left.n
        self.nm = right.n
        self.size = self.nl * self.nm
        self.row_mask = (1 << self.nm) - 1
        self.full = (1 << self.size) - 1
        ldown = left.order.down
        rdown = right.order.down
        lup = left.order.up
        rup = right.order.up
        down = []
        up = []
        for i in range(self.nl):
            for j in range(self.nm):
                d = 0
                for k in iter_bits(ldown[i]):
                    d |= rdown[j] << (k * self.nm)
                down.append(d)
                u = 0
                for k in iter_bits(lup[i]):
                    u |= rup[j] << (k * self.nm)
                up.append(u)
        self.down = tuple(down)
        self.up = tuple(up)
        nbar = self.row_mask << (left.bottom * self.nm)
        for i in range(self.nl):
            nbar |= 1 << (i * self.nm + right.bottom)
        self.nbar = nbar
        self._sat = {}

    def pos(self, i, j):
        return i * self.nm + j

    def pairs_of(self, mask):
        for p in iter_bits(mask):
            yield divmod(p, self.nm)

    def is_downset(self, mask):
        acc = 0
        for p in iter_bits(mask):
            acc |= self.down[p]
        return acc | mask == mask

    def down_closure(self, mask):
        acc = mask
        for p in iter_bits(mask):
            acc |= self.down[p]
        return acc

    def row_pass(self, mask):
        """Close every row under joins taken in the right frame.

        Rows with no members still gain (i, bottom) from the empty join, so
        repeated passes accumulate the least element without special casing.
        """
        out = 0
        for i in range(self.nl):
            row = (mask >> (i * self.nm)) & self.row_mask
            out |= _join_closure(self.right, row) << (i * self.nm)
        return out

    def col_pass(self, mask):
        """Close every column under joins taken in the left frame."""
        nm = self.nm
        out = 0
        for j in range(nm):
            col = 0
            for i in range(self.nl):
                if mask >> (i * nm + j) & 1:
                    col |= 1 << i
            closed = _join_closure(self.left, col)
            for i in iter_bits(closed):
                out |= 1 << (i * nm + j)
        return out

    def saturate(self, mask):
        """Least saturated downset containing the given downset.

        Iterates the column pass after the row pass until nothing changes;
        both passes are inflationary and monotone, so the limit is the least
        common fixed point above the input.
        """
        out = self._sat.get(mask)
        if out is not None:
            return out
        cur = mask
        while True:
            nxt = self.col_pass(self.row_pass(cur))
            if nxt == cur:
                break
            cur = nxt
        self._sat[mask] = cur
        return cur

    def tensor_mask(self, x, y):
        """The downset of (x, y) together with the least element."""
        out = 0
        rd = self.right.order.down[y]
        for k in iter_bits(self.left.order.down[x]):
            out |= rd << (k * self.nm)
        return out | self.nbar

    def iota1_mask(self, x):
        out = 0
        for k in iter_bits(self.left.order.down[x]):
            out |= self.row_mask << (k * self.nm)
        return out | self.nbar

    def iota2_mask(self, y):
        out = 0
        rd = self.right.order.down[y]
        for i in range(self.nl):
            out |= rd << (i * self.nm)
        return out | self.nbar


def product_poset(left, right):
    """The product order of two posets, pairs laid out row-major."""
    nl = left.n
    nm = right.n
    labels = []
    rows = []
    for i in range(nl):
        for j in range(nm):
            labels.append(f"({left.labels[i]},{right.labels[j]})")
            row = 0
            for k in iter_bits(left.up[i]):
                row |= right.up[j] << (k * nm)
            rows.append(row)
    return FinitePoset(labels, rows)


def prenuclei(left, right, mask):
    """Literal evaluation of the three closure passes on one downset.

    Returns (sigma0, pi1, pihat2) where sigma0 adds joins of nonempty
    updirected subsets, pi1 adds (join X, y) for every X contained in a
    column, and pihat2 adds (x, join Y) for every Y contained in a row.
    All three quantifiers are swept directly, so sizes are capped hard.
    """
    if left.n > LITERAL_SIDE_CAP or right.n > LITERAL_SIDE_CAP:
        raise SizeError("literal prenucleus evaluation is capped at 12x12 carriers")
    carrier = TensorCarrier(left, right)
    if not carrier.is_downset(mask):
        raise NotDownsetError("prenuclei need a downward closed input")
    if popcount(mask) > LITERAL_SUBSET_CAP:
        raise SizeError("literal prenucleus evaluation is capped at 16 member pairs")

    sigma0 = mask
    up = carrier.up
    for sub in submasks(mask):
        if sub == 0:
            continue
        directed = True
        members = list(iter_bits(sub))
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                if up[members[a]] & up[members[b]] & sub == 0:
                    directed = False
                    break
            if not directed:
                break
        if directed:
            xs = 0
            ys = 0
            for p in members:
                i, j = divmod(p, carrier.nm)
                xs |= 1 << i
                ys |= 1 << j
            sigma0 |= 1 << carrier.pos(left.join_mask(xs), right.join_mask(ys))

    pi1 = mask
    for j in range(carrier.nm):
        col = 0
        for i in range(carrier.nl):
            if mask >> carrier.pos(i, j) & 1:
                col |= 1 << i
        for sub in submasks(col):
            pi1 |= 1 << carrier.pos(left.join_mask(sub), j)

    pihat2 = mask
    for i in range(carrier.nl):
        row = (mask >> (i * carrier.nm)) & carrier.row_mask
        for sub in submasks(row):
            pihat2 |= 1 << carrier.pos(i, right.join_mask(sub))

    return sigma0, pi1, pihat2


def saturate(left, right, mask):
    """Saturate one downset of the product of two frame carriers."""
    carrier = TensorCarrier(left, right)
    if not carrier.is_downset(mask):
        raise NotDownsetError("saturation needs a downward closed input")
    return carrier.saturate(mask)


class _IrrGrid:
    """The join-irreducible pairs of a coproduct, with reduced-mask tables.

    Bit a * width + b stands for the pair (irr_left[a], irr_right[b]).
    `rt[x][y]` is the reduced mask of the single-pair tensor of (x, y): the
    irreducible pairs componentwise below it.  `down` restricts the product
    order to the irreducible pairs themselves.
    """

    def __init__(self, left, right):
        self.irr_left = left.irreducibles
        self.irr_right = right.irreducibles
        self.width = len(self.irr_right)
        self.size = len(self.irr_left) * self.width
        self.full = (1 << self.size) - 1
        lpos = {x: a for a, x in enumerate(self.irr_left)}
        rpos = {y: b for b, y in enumerate(self.irr_right)}
        lbits = []
        for x in range(left.n):
            m = 0
            for j in iter_bits(left.irreducibles_below[x]):
                m |= 1 << lpos[j]
            lbits.append(m)
        rbits = []
        for y in range(right.n):
            m = 0
            for j in iter_bits(right.irreducibles_below[y]):
                m |= 1 << rpos[j]
            rbits.append(m)
        self.lbits = tuple(lbits)
        self.rbits = tuple(rbits)
        w = self.width
        rt = []
        for x in range(left.n):
            row = []
            for y in range(right.n):
                m = 0
                rb = rbits[y]
                for a in iter_bits(lbits[x]):
                    m |= rb << (a * w)
                row.append(m)
            rt.append(tuple(row))
        self.rt = tuple(rt)
        self.down = tuple(
            rt[p][q] for p in self.irr_left for q in self.irr_right
        )

    def iota1_reduced(self, x):
        out = 0
        row = (1 << self.width) - 1
        for a in iter_bits(self.lbits[x]):
            out |= row << (a * self.width)
        return out

    def iota2_reduced(self, y):
        out = 0
        rb = self.rbits[y]
        for a in range(self.size // self.width if self.width else 0):
            out |= rb << (a * self.width)
        return out


class _LazyRow:
    __slots__ = ("elems", "index", "op", "base")

    def __init__(self, elems, index, op, base):
        self.elems = elems
        self.index = index
        self.op = op
        self.base = base

    def __getitem__(self, j):
        return self.index[self.op(self.base, self.elems[j])]


class _LazyTable:
    """Row-indexable join/meet table computed per lookup.

    Stands in for the eager tuple tables above EAGER_TABLE_LIMIT, where a
    quadratic table would dominate both memory and construction time.
    """

    __slots__ = ("elems", "index", "op")

    def __init__(self, elems, index, op):
        self.elems = elems
        self.index = index
        self.op = op

    def __getitem__(self, i):
        return _LazyRow(self.elems, self.index, self.op, self.elems[i])


class TensorFrame(FiniteFrame):
    """The coproduct frame of two finite frames.

    Elements are saturated-downset masks in canonical order; `masks[k]` is
    the downset behind element k and `reduced[k]` its restriction to the
    irreducible pairs.  The injections are validated FrameHoms and
    `tensor(x, y)` locates the image of a single pair.
    """

    def __init__(
        self,
        order,
        join,
        meet,
        bottom,
        top,
        *,
        left,
        right,
        carrier,
        masks,
        grid,
        reduced,
    ):
        super().__init__(order, join, meet, bottom, top)
        self.left = left
        self.right = right
        self.carrier = carrier
        self.masks = masks
        self.mask_index = {m: k for k, m in enumerate(masks)}
        self.grid = grid
        self.reduced = reduced
        self.red_index = {m: k for k, m in enumerate(reduced)}
        self.iota1 = None
        self.iota2 = None

    def tensor(self, x, y):
        return self.red_index[self.grid.rt[x][y]]

    def element_pairs(self, k):
        """The member pairs of element k as sorted label pairs."""
        carrier = self.carrier
        out = [
            (self.left.labels[i], self.right.labels[j])
            for i, j in carrier.pairs_of(self.masks[k])
        ]
        return sorted(out)

    def cover_pairs(self):
        """All covering pairs (k, t), element t covering element k."""
        grid = self.grid
        idx = self.red_index
        for k, r in enumerate(self.reduced):
            rest = grid.full & ~r
            for p in iter_bits(rest):
                if (grid.down[p] ^ (1 << p)) & ~r == 0:
                    yield k, idx[r | (1 << p)]


def _up_rows_by_covers(n, reduced, red_index, grid):
    # masks are sorted by popcount, so walking backwards sees covers first
    up = [0] * n
    for k in range(n - 1, -1, -1):
        r = reduced[k]
        row = 1 << k
        for p in iter_bits(grid.full & ~r):
            if (grid.down[p] ^ (1 << p)) & ~r == 0:
                row |= up[red_index[r | (1 << p)]]
        up[k] = row
    return up


def coproduct(left, right, *, max_elements=TENSOR_ELEMENT_CAP):
    """The coproduct of two finite frames as a TensorFrame.

    Every saturated downset is the join of the single-pair tensors of the
    irreducible pairs it contains, and restriction to irreducible pairs is
    inverse to that join; the elements are therefore enumerated as downsets
    of the irreducible-pair subposet.  Each single-pair tensor is verified
    to appear with the stated full mask, and on small carriers every
    reconstructed element is re-checked against literal saturation.
    """
    carrier = TensorCarrier(left, right)
    grid = _IrrGrid(left, right)
    base = FinitePoset(
        tuple(f"p{k}" for k in range(grid.size)),
        tuple(
            mask_from_down(grid, p) for p in range(grid.size)
        ),
    )
    try:
        family = base.downsets(cap=max_elements)
    except SizeError:
        raise SizeError(
            f"coproduct exceeds the cap of {max_elements} elements"
        ) from None
    reduced = family.masks
    n = len(reduced)
    red_index = {m: k for k, m in enumerate(reduced)}
    nm = right.n
    rt = grid.rt
    masks = []
    for r in reduced:
        full = 0
        p = 0
        for x in range(left.n):
            row = rt[x]
            for y in range(nm):
                if row[y] & ~r == 0:
                    full |= 1 << p
                p += 1
        masks.append(full)
    masks = tuple(masks)
    for x in range(left.n):
        for y in range(nm):
            k = red_index.get(rt[x][y])
            if k is None or masks[k] != carrier.tensor_mask(x, y):
                raise VerificationError(
                    "a single-pair tensor is missing from the element set"
                )
    if n <= SATURATION_CHECK_LIMIT:
        for m in masks:
            if carrier.saturate(m) != m:
                raise VerificationError(
                    "a reconstructed element failed to be saturated"
                )
    width = max(4, len(str(n - 1)))
    order = FinitePoset(
        tuple(f"t{k:0{width}d}" for k in range(n)),
        tuple(_up_rows_by_covers(n, reduced, red_index, grid)),
    )
    if n <= EAGER_TABLE_LIMIT:
        join = tuple(
            tuple(red_index[a | b] for b in reduced) for a in reduced
        )
        meet = tuple(
            tuple(red_index[a & b] for b in reduced) for a in reduced
        )
    else:
        join = _LazyTable(reduced, red_index, int.__or__)
        meet = _LazyTable(reduced, red_index, int.__and__)
    bottom = red_index[0]
    top = red_index[grid.full]
    if masks[bottom] != carrier.nbar or masks[top] != carrier.full:
        raise VerificationError("the coproduct bounds are not the stated ones")
    frame = TensorFrame(
        order,
        join,
        meet,
        bottom,
        top,
        left=left,
        right=right,
        carrier=carrier,
        masks=masks,
        grid=grid,
        reduced=reduced,
    )
    if n <= DISTRIBUTIVITY_CHECK_LIMIT:
        if distributivity_witness(frame) is not None:
            raise VerificationError("the coproduct frame failed distributivity")
    iota1_map = []
    for x in range(left.n):
        k = red_index[grid.iota1_reduced(x)]
        if masks[k] != carrier.iota1_mask(x):
            raise VerificationError("the left injection misses its stated mask")
        iota1_map.append(k)
    iota2_map = []
    for y in range(right.n):
        k = red_index[grid.iota2_reduced(y)]
        if masks[k] != carrier.iota2_mask(y):
            raise VerificationError("the right injection misses its stated mask")
        iota2_map.append(k)
    frame.iota1 = FrameHom(left, frame, iota1_map)
    frame.iota2 = FrameHom(right, frame, iota2_map)
    return frame


def mask_from_down(grid, p):
    # up-row of the irreducible-pair subposet: everything it sits below
    row = 1 << p
    for q in range(grid.size):
        if grid.down[q] >> p & 1:
            row |= 1 << q
    return row


def _tensor_action(source, target, hom):
    """Index list of (id tensor hom) between coproducts sharing a left frame.

    The image of an element is the union of the reduced tensors of
    (p, hom(q)) over its irreducible pairs; that union is itself a downset
    of the target's irreducible pairs, so no saturation is needed.  Joins
    are preserved by construction, and meets follow because intersecting
    two reduced tensors yields the reduced tensor of the pairwise meet.
    """
    gs = source.grid
    gt = target.grid
    wt = gt.width
    per_bit = []
    for p in gs.irr_left:
        for q in gs.irr_right:
            fq = hom.mapping[q]
            m = 0
            rb = gt.rbits[fq]
            for a in iter_bits(gt.lbits[p]):
                m |= rb << (a * wt)
            per_bit.append(m)
    tindex = target.red_index
    mapping = []
    for r in source.reduced:
        img = 0
        for p in iter_bits(r):
            img |= per_bit[p]
        mapping.append(tindex[img])
    return mapping


def map_tensor(left, hom, *, source=None, target=None):
    """The hom (id tensor f) between coproduct frames.

    Sends an element to the join of a tensor f(b) over its member pairs
    (a, b).  Both triangle laws with the injections are certified before
    the hom is returned; the direct law sweep runs when the source is small
    enough to afford it.
    """
    if source is None:
        source = coproduct(left, hom.source)
    elif source.left != left or source.right != hom.source:
        raise ValueError("the given source tensor does not match the hom")
    if target is None:
        target = coproduct(left, hom.target)
    elif target.left != left or target.right != hom.target:
        raise ValueError("the given target tensor does not match the hom")
    mapping = _tensor_action(source, target, hom)
    out = FrameHom(source, target, mapping, validate=source.n <= EAGER_TABLE_LIMIT)
    for x in range(left.n):
        if out.mapping[source.iota1.mapping[x]] != target.iota1.mapping[x]:
            raise VerificationError("the left injection triangle fails")
    for y in range(hom.source.n):
        if out.mapping[source.iota2.mapping[y]] != target.iota2.mapping[hom.mapping[y]]:
            raise VerificationError("the right injection triangle fails")
    return out


def copair(f, g, *, tensor=None):
    """The mediating hom out of a coproduct for a cocone (f, g).

    Evaluates the join of f(a) meet g(b) over the member pairs of each
    element and certifies both triangle laws.
    """
    if f.target != g.target:
        raise ValueError("copairing needs a common codomain")
    codomain = f.target
    if tensor is None:
        tensor = coproduct(f.source, g.source)
    elif tensor.left != f.source or tensor.right != g.source:
        raise ValueError("the given tensor does not match the cocone")
    nm = tensor.carrier.nm
    mapping = []
    for m in tensor.masks:
        acc = codomain.bottom
        for p in iter_bits(m):
            i, j = divmod(p, nm)
            acc = codomain.join[acc][codomain.meet[f.mapping[i]][g.mapping[j]]]
        mapping.append(acc)
    out = FrameHom(tensor, codomain, mapping)
    for x in range(f.source.n):
        if out.mapping[tensor.iota1.mapping[x]] != f.mapping[x]:
            raise VerificationError("copair does not restrict to f on the left leg")
    for y in range(g.source.n):
        if out.mapping[tensor.iota2.mapping[y]] != g.mapping[y]:
            raise VerificationError("copair does not restrict to g on the right leg")
    return out


def _cover_lists(frame):
    """Per element, the indices covering it."""
    out = [[] for _ in range(frame.n)]
    if isinstance(frame, TensorFrame):
        for k, t in frame.cover_pairs():
            out[k].append(t)
        return out
    order = frame.order
    for u in range(frame.n):
        strict = order.up[u] ^ (1 << u)
        for v in iter_bits(strict):
            if order.down[v] & strict == 1 << v:
                out[u].append(v)
    return out


class ProductFrame(FiniteFrame):
    """A finite product of frames with the pointwise order."""

    def __init__(self, order, join, meet, bottom, top, *, factors, tuples):
        super().__init__(order, join, meet, bottom, top)
        self.factors = factors
        self.tuples = tuples
        self.tuple_index = {t: k for k, t in enumerate(tuples)}

    def projection(self, k):
        return FrameHom(self, self.factors[k], [t[k] for t in self.tuples])

    def pair(self, homs):
        """The mediating hom into the product for a cone of homs."""
        if len(homs) != len(self.factors):
            raise ValueError("one hom per factor is needed")
        source = homs[0].source
        for h, factor in zip(homs, self.factors):
            if h.source != source or h.target != factor:
                raise ValueError("cone homs must share a source and match the factors")
        mapping = [
            self.tuple_index[tuple(h.mapping[q] for h in homs)]
            for q in range(source.n)
        ]
        return FrameHom(source, self, mapping)


def product_frames(factors, *, max_elements=PRODUCT_ELEMENT_CAP):
    """The product of a family of frames; the empty product is the one-point frame."""
    factors = tuple(factors)
    count = 1
    for f in factors:
        count *= f.n
        if count > max_elements:
            raise SizeError(f"product exceeds the cap of {max_elements} elements")
    tuples = tuple(_iterproduct(*(range(f.n) for f in factors)))
    n = len(tuples)
    labels = tuple(
        "(" + ",".join(f.labels[t[k]] for k, f in enumerate(factors)) + ")"
        for t in tuples
    )
    index = {t: k for k, t in enumerate(tuples)}
    covers = [_cover_lists(f) for f in factors]
    ranks = [
        tuple(popcount(f.order.down[i]) for i in range(f.n)) for f in factors
    ]
    height = [sum(ranks[k][t[k]] for k in range(len(factors))) for t in tuples]
    up = [0] * n
    for x in sorted(range(n), key=lambda x: height[x], reverse=True):
        a = tuples[x]
        row = 1 << x
        for k in range(len(factors)):
            for v in covers[k][a[k]]:
                row |= up[index[a[:k] + (v,) + a[k + 1 :]]]
        up[x] = row
    order = FinitePoset(labels, tuple(up))
    bottom = index[tuple(f.bottom for f in factors)]
    top = index[tuple(f.top for f in factors)]
    if n <= EAGER_TABLE_LIMIT:
        join = tuple(
            tuple(
                index[tuple(f.join[a[k]][b[k]] for k, f in enumerate(factors))]
                for b in tuples
            )
            for a in tuples
        )
        meet = tuple(
            tuple(
                index[tuple(f.meet[a[k]][b[k]] for k, f in enumerate(factors))]
                for b in tuples
            )
            for a in tuples
        )
    else:
        def joined(a, b):
            return tuple(f.join[a[k]][b[k]] for k, f in enumerate(factors))

        def met(a, b):
            return tuple(f.meet[a[k]][b[k]] for k, f in enumerate(factors))

        join = _LazyTable(tuples, index, joined)
        meet = _LazyTable(tuples, index, met)
    frame = ProductFrame(
        order,
        join,
        meet,
        bottom,
        top,
        factors=factors,
        tuples=tuples,
    )
    if n <= DISTRIBUTIVITY_CHECK_LIMIT:
        if distributivity_witness(frame) is not None:
            raise VerificationError("a product of frames failed distributivity")
    return frame


@dataclass(frozen=True)
class DistributeIso:
    """Both directions of the distribution isomorphism, validated."""

    forward: FrameHom
    inverse: FrameHom


def distribute_iso(left, m1, m2, *, max_elements=TENSOR_ELEMENT_CAP):
    """L tensor (M1 x M2) against (L tensor M1) x (L tensor M2).

    The forward map pairs the two projection actions (id tensor p_k); it is
    certified to be a bijection that preserves and reflects the order, by a
    sweep of the covering pairs on both sides, and an order isomorphism of
    finite lattices is automatically a frame isomorphism.  NotIsoError
    otherwise.
    """
    prod = product_frames([m1, m2])
    source = coproduct(left, prod, max_elements=max_elements)
    t1 = coproduct(left, m1, max_elements=max_elements)
    t2 = coproduct(left, m2, max_elements=max_elements)
    target = product_frames([t1, t2], max_elements=max_elements)
    c1 = _tensor_action(source, t1, prod.projection(0))
    c2 = _tensor_action(source, t2, prod.projection(1))
    tindex = target.tuple_index
    fwd = [tindex[(u, v)] for u, v in zip(c1, c2)]
    if source.n != target.n or len(set(fwd)) != target.n:
        raise NotIsoError("the distribution map is not a bijection")
    inv = [0] * target.n
    for k, v in enumerate(fwd):
        inv[v] = k
    for k, t in source.cover_pairs():
        if not (t1.leq_idx(c1[k], c1[t]) and t2.leq_idx(c2[k], c2[t])):
            raise NotIsoError("the distribution map does not preserve the order")
    cov1 = _cover_lists(t1)
    cov2 = _cover_lists(t2)
    sup = source.order.up
    for (u, v), k in tindex.items():
        src = inv[k]
        for u2 in cov1[u]:
            if not sup[src] >> inv[tindex[(u2, v)]] & 1:
                raise NotIsoError("the distribution map does not reflect the order")
        for v2 in cov2[v]:
            if not sup[src] >> inv[tindex[(u, v2)]] & 1:
                raise NotIsoError("the distribution map does not reflect the order")
    forward = FrameHom(source, target, fwd, validate=False)
    inverse = FrameHom(target, source, inv, validate=False)
    return DistributeIso(forward, inverse)


@dataclass(frozen=True)
class PushoutLocaleResult:
    """Pushout of a span of localic maps, computed in the frame category.

    The apex frame is the pairs (b, c) agreeing under the span's left
    adjoints; `proj_b`/`proj_c` are the coordinate frame homs and the legs
    package them with their right adjoints, which are the localic maps
    B -> P and C -> P.
    """

    apex: FiniteFrame
    pairs: tuple
    proj_b: FrameHom
    proj_c: FrameHom
    leg_b: GaloisConnection
    leg_c: GaloisConnection
    span_left: FrameHom
    span_right: FrameHom

    def pair_index(self, b, c):
        return self.pairs.index((b, c))


def pushout_loc(f_left, g_left):
    """Pushout in the localic direction of the span given by two frame homs.

    f_left : B -> A and g_left : C -> A present localic maps A -> B and
    A -> C.  The apex is the pullback of the two homs, verified to be a
    frame under the componentwise operations; the legs come from the join
    formula over agreeing pairs and are cross-checked against the generic
    right adjoint of each projection.
    """
    if f_left.target != g_left.target:
        raise ValueError("the span needs a common codomain frame")
    b_frame = f_left.source
    c_frame = g_left.source
    pairs = tuple(
        (b, c)
        for b in range(b_frame.n)
        for c in range(c_frame.n)
        if f_left.mapping[b] == g_left.mapping[c]
    )
    labels = tuple(
        f"({b_frame.labels[b]},{c_frame.labels[c]})" for b, c in pairs
    )
    rows = []
    for b, c in pairs:
        row = 0
        for t, (b2, c2) in enumerate(pairs):
            if b_frame.leq_idx(b, b2) and c_frame.leq_idx(c, c2):
                row |= 1 << t
        rows.append(row)
    try:
        apex = frame_from_poset(FinitePoset(labels, rows))
    except (NotLatticeError, NotDistributiveError) as exc:
        raise NotFrameError(f"the agreement pairs do not form a frame: {exc}") from exc
    index = {p: k for k, p in enumerate(pairs)}
    for k, (b, c) in enumerate(pairs):
        for t, (b2, c2) in enumerate(pairs):
            componentwise = (b_frame.meet[b][b2], c_frame.meet[c][c2])
            if index.get(componentwise) != apex.meet[k][t]:
                raise NotFrameError("meets are not componentwise on the apex")
            componentwise = (b_frame.join[b][b2], c_frame.join[c][c2])
            if index.get(componentwise) != apex.join[k][t]:
                raise NotFrameError("joins are not componentwise on the apex")
    proj_b = FrameHom(apex, b_frame, [b for b, _ in pairs])
    proj_c = FrameHom(apex, c_frame, [c for _, c in pairs])
    leg_b = right_adjoint(proj_b)
    leg_c = right_adjoint(proj_c)
    for x in range(b_frame.n):
        mask = 0
        for k, (b, _) in enumerate(pairs):
            if b_frame.leq_idx(b, x):
                mask |= 1 << k
        if apex.join_mask(mask) != leg_b.right[x]:
            raise VerificationError("the stated leg formula disagrees with the adjoint")
    for y in range(c_frame.n):
        mask = 0
        for k, (_, c) in enumerate(pairs):
            if c_frame.leq_idx(c, y):
                mask |= 1 << k
        if apex.join_mask(mask) != leg_c.right[y]:
            raise VerificationError("the stated leg formula disagrees with the adjoint")
    f_radj = right_adjoint(f_left).right
    g_radj = right_adjoint(g_left).right
    for a in range(f_left.target.n):
        if leg_b.right[f_radj[a]] != leg_c.right[g_radj[a]]:
            raise VerificationError("the pushout square does not commute")
    return PushoutLocaleResult(
        apex, pairs, proj_b, proj_c, leg_b, leg_c, f_left, g_left
    )


def pushout_mediator(result, u_left, v_left):
    """The mediating hom out of a pushout cocone, with triangle checks.

    u_left : Q -> B and v_left : Q -> C present localic maps B -> Q and
    C -> Q agreeing on the span; the mediator pairs them into the apex.
    """
    if u_left.source != v_left.source:
        raise ValueError("cocone homs must share a source frame")
    if u_left.target != result.span_left.source:
        raise ValueError("the first cocone hom must land in the left span frame")
    if v_left.target != result.span_right.source:
        raise ValueError("the second cocone hom must land in the right span frame")
    if u_left.then(result.span_left) != v_left.then(result.span_right):
        raise ValueError("the cocone does not commute with the span")
    index = {p: k for k, p in enumerate(result.pairs)}
    mapping = [
        index[(u_left.mapping[q], v_left.mapping[q])]
        for q in range(u_left.source.n)
    ]
    out = FrameHom(u_left.source, result.apex, mapping)
    if out.then(result.proj_b) != u_left or out.then(result.proj_c) != v_left:
        raise VerificationError("the mediator breaks a pushout triangle")
    return out


def density_surjective(hom, generators):
    """Conclude surjectivity from generators landing in the image.

    The family must join-generate the codomain (every element is a join of
    a subfamily); the check then reports whether each generator is hit,
    which by join preservation settles surjectivity.
    """
    target = hom.target
    gen_mask = 0
    for g in generators:
        gen_mask |= 1 << g
    if target.joins_of_subsets(gen_mask) != (1 << target.n) - 1:
        raise ValueError("the family does not join-generate the codomain")
    image = set(hom.mapping)
    return all(g in image for g in iter_bits(gen_mask))


def factor_through_stage(inclusion, whole):
    """Mediating hom through a surjective stage hom, or None.

    `inclusion` and `whole` share a source; `inclusion` must be surjective
    (the frame side of an injective localic map).  A factorization exists
    exactly when `whole` is constant on the fibres of `inclusion`, and the
    values can then be read off directly.
    """
    if inclusion.source != whole.source:
        raise ValueError("both homs must share a source frame")
    if not inclusion.is_surjective():
        raise ValueError("the stage hom must be surjective")
    values = [None] * inclusion.target.n
    for u in range(inclusion.source.n):
        w = inclusion.mapping[u]
        if values[w] is None:
            values[w] = whole.mapping[u]
        elif values[w] != whole.mapping[u]:
            return None
    return FrameHom(inclusion.target, whole.target, values)
