"""Named verification suites behind the ``check`` subcommands.

Every suite packages one claim into a single runner keyed by a stable
citation label.  Reports carry the exact corpus swept and every failure
witness, so a green run documents what was checked, not just that a check
ran.  Options only scale the corpus bounds; the loops themselves are
shared with the acceptance tests, which run them at larger sizes.

Wall times are measured but excluded from `report_data`, keeping report
bytes reproducible for a fixed seed.
"""

from __future__ import annotations

import dataclasses
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from time import perf_counter

from .bits import iter_bits
from .colimits import coproduct, copair, distribute_iso, pushout_loc, pushout_mediator
from .corpus import frames_upto, spaces_upto
from .errors import FinitetopError, NotIsoError, VerificationError
from .frames import (
    Prenucleus,
    frame_isomorphism,
    iter_frame_homs,
    nucleus_from_prenucleus,
    prenucleus_violation,
    right_adjoint,
    two,
)
from .lifting import (
    COMPLETE,
    PARTIAL,
    PreMap,
    Preorder,
    arrow_iso,
    arrows_between,
    associates,
    associator,
    bounded_factorize,
    braiding,
    coproduct_pre,
    identity_arrow,
    iter_monotone_arrows,
    lifting_adjunction_check,
    product_arrow,
    pushout_product,
    replay_trace,
    rlp,
)
from .pstop import (
    lemma_all_compact,
    lemma_compact_balanced,
    lemma_compact_image,
    lemma_lattice_bounds,
    lemma_pushout_agreement,
    lemma_subspace_modification,
    lemma_subspace_restriction,
    lemma_tau_iota,
)
from .spaces import is_sober, product_spaces, spaces_homeomorphic
from .spatial import adjunction_check, is_spatial, omega, pt


@dataclass(frozen=True)
class SuiteOptions:
    """Corpus bounds shared by every suite runner.

    The defaults are desk scale; the acceptance tests pass the larger
    bounds stated with each criterion.
    """

    max_points: int = 3
    max_frame_size: int = 3
    steps: int = 4
    seed: int = 0
    samples: int = 200


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    citation: str
    group: str
    corpus: str
    cases: int
    failures: tuple
    wall_time: float

    @property
    def ok(self):
        return self.cases > 0 and not self.failures


def report_data(report):
    """The canonical dict form of a report, without the wall time."""
    return {
        "kind": "suite-report",
        "suite": report.suite,
        "citation": report.citation,
        "group": report.group,
        "corpus": report.corpus,
        "cases": report.cases,
        "failures": list(report.failures),
        "ok": report.ok,
    }


def _frame_name(frame):
    return "{" + ",".join(frame.labels) + "}"


def _space_name(space):
    return "{" + ",".join(space.points) + "|" + str(len(space.opens)) + " opens}"


def _arrow_name(m):
    pairs = ",".join(
        f"{m.source.points[i]}>{m.target.points[m.mapping[i]]}"
        for i in range(m.source.n)
    )
    return "[" + pairs + "]"


# --- frames -----------------------------------------------------------------


def _run_frame_coproduct(opt):
    """Universal property of the frame coproduct, plus the unit law.

    Sweeps every cocone out of every pair of small frames, checks the
    copairing triangles, and certifies the mediating hom as the only hom
    satisfying them.  The unit law two (x) L = L runs over the frames up
    to the same bound.
    """
    pool = frames_upto(opt.max_frame_size)
    cocones = frames_upto(opt.max_frame_size + 1)
    failures = []
    cases = 0
    for left in pool:
        for right in pool:
            tensor = coproduct(left, right)
            pair = _frame_name(left) + " (x) " + _frame_name(right)
            for target in cocones:
                fs = tuple(iter_frame_homs(left, target))
                gs = tuple(iter_frame_homs(right, target))
                if not fs or not gs:
                    continue
                mediators = tuple(iter_frame_homs(tensor, target))
                for f in fs:
                    for g in gs:
                        cases += 1
                        try:
                            h = copair(f, g, tensor=tensor)
                        except VerificationError as exc:
                            failures.append(f"{pair}: {exc}")
                            continue
                        found = [
                            m
                            for m in mediators
                            if tensor.iota1.then(m) == f and tensor.iota2.then(m) == g
                        ]
                        if found != [h]:
                            failures.append(
                                f"{pair} into {_frame_name(target)}: "
                                f"{len(found)} mediators for one cocone"
                            )
    unit = two()
    for frame in pool:
        cases += 1
        if frame_isomorphism(coproduct(unit, frame), frame) is None:
            failures.append(f"two (x) {_frame_name(frame)} is not {_frame_name(frame)}")
    corpus = (
        f"frame pairs up to {opt.max_frame_size} elements, cocones up to "
        f"{opt.max_frame_size + 1}"
    )
    return corpus, cases, failures


def _run_tensor_unit(frames):
    """The unit law two (x) L = L over an explicit frame family."""
    unit = two()
    failures = []
    cases = 0
    for frame in frames:
        cases += 1
        if frame_isomorphism(coproduct(unit, frame), frame) is None:
            failures.append(f"two (x) {_frame_name(frame)} is not {_frame_name(frame)}")
    return cases, failures


def _run_galois_laws(opt):
    """Adjoint laws and duality for every hom between corpus frames.

    Each hom is paired with its computed right adjoint; the connection
    validates the adjunction law on construction and the named laws
    (triangles, meet and top preservation, both duality equivalences)
    must all report True.
    """
    pool = frames_upto(opt.max_frame_size)
    failures = []
    cases = 0
    for left in pool:
        for right in pool:
            for hom in iter_frame_homs(left, right):
                cases += 1
                try:
                    laws = right_adjoint(hom).check_laws()
                except VerificationError as exc:
                    failures.append(
                        f"{_frame_name(left)} -> {_frame_name(right)}: {exc}"
                    )
                    continue
                broken = sorted(name for name, good in laws.items() if not good)
                if broken:
                    failures.append(
                        f"{_frame_name(left)} -> {_frame_name(right)}: "
                        + ", ".join(broken)
                    )
    corpus = f"all homs between frames up to {opt.max_frame_size} elements"
    return corpus, cases, failures


def _run_nucleus_generation(opt):
    """Seeded random prenuclei and the nuclei they generate.

    Draws an inflationary assignment, monotone-closes it, keeps it when
    the prenucleus law holds, and generates the nucleus.  The generated
    map must fix exactly the prenucleus fixed points and send each element
    to the least fixed point above it.
    """
    rng = random.Random(opt.seed)
    pool = [f for f in frames_upto(max(opt.max_frame_size, 2)) if f.n >= 2]
    failures = []
    cases = 0
    while cases < opt.samples:
        frame = pool[rng.randrange(len(pool))]
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
        if prenucleus_violation(frame, tuple(mapping)) is not None:
            continue
        cases += 1
        tag = f"{_frame_name(frame)} sample {cases}"
        try:
            nucleus = nucleus_from_prenucleus(Prenucleus(frame, tuple(mapping)))
        except FinitetopError as exc:
            failures.append(f"{tag}: {exc}")
            continue
        fix = nucleus.fixed_mask
        for x in range(frame.n):
            j = nucleus.mapping[x]
            if not fix >> j & 1:
                failures.append(f"{tag}: value at {frame.labels[x]!r} is not fixed")
                break
            for other in iter_bits(fix & frame.order.up[x]):
                if not frame.leq_idx(j, other):
                    failures.append(
                        f"{tag}: value at {frame.labels[x]!r} is not the least "
                        "fixed point above it"
                    )
                    break
            else:
                continue
            break
    corpus = (
        f"{opt.samples} seeded prenuclei on frames up to "
        f"{max(opt.max_frame_size, 2)} elements, seed {opt.seed}"
    )
    return corpus, cases, failures


# --- colimits ---------------------------------------------------------------


def _run_product_distribute(opt):
    """The distribution of a tensor over a binary product, all triples."""
    pool = frames_upto(opt.max_frame_size)
    failures = []
    cases = 0
    for left in pool:
        for m1 in pool:
            for m2 in pool:
                cases += 1
                try:
                    distribute_iso(left, m1, m2)
                except NotIsoError as exc:
                    failures.append(
                        f"{_frame_name(left)} over {_frame_name(m1)} x "
                        f"{_frame_name(m2)}: {exc}"
                    )
    corpus = f"frame triples up to {opt.max_frame_size} elements"
    return corpus, cases, failures


def _run_loc_pushout(opt):
    """Localic pushouts: legs, mediators, uniqueness, injective stability.

    Every span of corpus frame homs is pushed out; each cocone gets its
    mediator certified unique among all homs into the apex, and a
    surjective span hom must make the opposite projection surjective.
    """
    pool = frames_upto(opt.max_frame_size)
    failures = []
    cases = 0
    for apex_frame in pool:
        for b_frame in pool:
            homs_b = tuple(iter_frame_homs(b_frame, apex_frame))
            if not homs_b:
                continue
            for c_frame in pool:
                homs_c = tuple(iter_frame_homs(c_frame, apex_frame))
                for f in homs_b:
                    for g in homs_c:
                        cases += 1
                        tag = (
                            f"{_frame_name(b_frame)} <- {_frame_name(apex_frame)}"
                            f" -> {_frame_name(c_frame)}"
                        )
                        try:
                            result = pushout_loc(f, g)
                        except FinitetopError as exc:
                            failures.append(f"{tag}: {exc}")
                            continue
                        f_surj = len(set(f.mapping)) == apex_frame.n
                        g_surj = len(set(g.mapping)) == apex_frame.n
                        if f_surj and len(set(result.proj_c.mapping)) != c_frame.n:
                            failures.append(f"{tag}: pushed leg lost injectivity")
                        if g_surj and len(set(result.proj_b.mapping)) != b_frame.n:
                            failures.append(f"{tag}: pushed leg lost injectivity")
                        for q_frame in pool:
                            into_apex = None
                            for u in iter_frame_homs(q_frame, b_frame):
                                for v in iter_frame_homs(q_frame, c_frame):
                                    if u.then(f) != v.then(g):
                                        continue
                                    try:
                                        m = pushout_mediator(result, u, v)
                                    except (ValueError, VerificationError) as exc:
                                        failures.append(f"{tag}: {exc}")
                                        continue
                                    if into_apex is None:
                                        into_apex = tuple(
                                            iter_frame_homs(q_frame, result.apex)
                                        )
                                    found = [
                                        h
                                        for h in into_apex
                                        if h.then(result.proj_b) == u
                                        and h.then(result.proj_c) == v
                                    ]
                                    if found != [m]:
                                        failures.append(
                                            f"{tag}: {len(found)} mediators from "
                                            f"{_frame_name(q_frame)}"
                                        )
    corpus = f"spans and cocones over frames up to {opt.max_frame_size} elements"
    return corpus, cases, failures


# --- spatial ----------------------------------------------------------------


def _run_spatial_products(opt):
    """Tensor of opens against opens of the product, all T0 pairs.

    Includes the Sierpinski space squared, whose tensor must have exactly
    six elements.
    """
    pool = spaces_upto(opt.max_points, t0_only=True)
    opens = [omega(s) for s in pool]
    failures = []
    cases = 0
    for i, x in enumerate(pool):
        for j, y in enumerate(pool):
            cases += 1
            tensor = coproduct(opens[i], opens[j])
            prod, _, _ = product_spaces(x, y)
            if frame_isomorphism(tensor, omega(prod)) is None:
                failures.append(
                    f"{_space_name(x)} x {_space_name(y)}: tensor misses the opens"
                )
    sier = next((s for s in pool if s.n == 2 and len(s.opens) == 3), None)
    if sier is not None:
        cases += 1
        size = coproduct(omega(sier), omega(sier)).n
        if size != 6:
            failures.append(f"the Sierpinski square tensor has {size} elements")
    corpus = f"T0 space pairs up to {opt.max_points} points"
    return corpus, cases, failures


def _run_omega_pt(opt):
    """Both unit laws and the hom-set bijection of the opens/points pair.

    Sober spaces are recovered from their opens, every corpus frame is
    spatial (finite frames are frames of downsets), and transposition is a
    bijection between localic homs and continuous maps.
    """
    sobers = [s for s in spaces_upto(opt.max_points, t0_only=True) if is_sober(s)]
    pool = frames_upto(opt.max_frame_size)
    failures = []
    cases = 0
    for s in sobers:
        cases += 1
        if spaces_homeomorphic(pt(omega(s)), s) is None:
            failures.append(f"{_space_name(s)}: points of opens changed the space")
    for frame in pool:
        cases += 1
        if not is_spatial(frame).spatial:
            failures.append(f"{_frame_name(frame)}: not spatial")
    for s in sobers:
        for frame in pool:
            cases += 1
            report = adjunction_check(s, frame)
            if not report.holds:
                failures.append(
                    f"{_space_name(s)} against {_frame_name(frame)}: "
                    "transposition is not a bijection"
                )
    corpus = (
        f"sober spaces up to {opt.max_points} points, frames up to "
        f"{opt.max_frame_size} elements"
    )
    return corpus, cases, failures


# --- pstop lemmas -----------------------------------------------------------


def _wrap_lemma(func, capped=False):
    def run(opt):
        bound = min(opt.max_points, 2) if capped else opt.max_points
        report = func(bound)
        corpus = f"pseudotopologies up to {bound} points"
        return corpus, report.instances, list(report.failures)

    return run


# --- lifting ----------------------------------------------------------------


def _preorder_pool(max_points):
    return tuple(Preorder.from_space(s) for s in spaces_upto(max_points))


def _sample_arrow(rng, pool, cache):
    while True:
        i = rng.randrange(len(pool))
        j = rng.randrange(len(pool))
        maps = cache.get((i, j))
        if maps is None:
            maps = tuple(iter_monotone_arrows(pool[i], pool[j]))
            cache[(i, j)] = maps
        if maps:
            return maps[rng.randrange(len(maps))]


def _run_lifting_adjunction(opt):
    """Corner map against power map: both transposes lift together.

    Exhaustive over the arrows between preorders of up to two points, then
    seeded random triples at the full point bound.
    """
    small = arrows_between(_preorder_pool(min(opt.max_points, 2)))
    failures = []
    cases = 0
    for f in small:
        for g in small:
            for i in small:
                cases += 1
                if not lifting_adjunction_check(f, g, i):
                    failures.append(
                        f"{_arrow_name(f)} / {_arrow_name(g)} / {_arrow_name(i)}"
                    )
    rng = random.Random(opt.seed)
    pool = _preorder_pool(opt.max_points)
    cache = {}
    for _ in range(opt.samples):
        f = _sample_arrow(rng, pool, cache)
        g = _sample_arrow(rng, pool, cache)
        i = _sample_arrow(rng, pool, cache)
        cases += 1
        if not lifting_adjunction_check(f, g, i):
            failures.append(
                f"seeded {_arrow_name(f)} / {_arrow_name(g)} / {_arrow_name(i)}"
            )
    corpus = (
        f"arrow triples up to 2 points, plus {opt.samples} seeded triples up to "
        f"{opt.max_points} points, seed {opt.seed}"
    )
    return corpus, cases, failures


def _relabel_source(m):
    pre = m.source
    order = tuple(reversed(range(pre.n)))
    points = tuple(pre.points[i] for i in order)
    up = []
    for i in order:
        mask = 0
        for j in iter_bits(pre.up[i]):
            mask |= 1 << order.index(j)
        up.append(mask)
    twin = Preorder(points, tuple(up))
    return PreMap(twin, m.target, tuple(m.mapping[i] for i in order))


def _run_pushout_product_symmetry(opt):
    """Symmetry and associativity of the corner construction.

    Braidings and associators are certified arrow isomorphisms on the
    exhaustive two point corpus; associativity additionally runs as a
    partition comparison on every triple, and seeded samples repeat the
    certified checks at the full point bound.  Relabeling a factor's
    source must not change the corner up to isomorphism.
    """
    small = arrows_between(_preorder_pool(min(opt.max_points, 2)))
    failures = []
    cases = 0
    for f in small:
        for g in small:
            cases += 1
            try:
                braiding(f, g)
            except FinitetopError as exc:
                failures.append(f"braid {_arrow_name(f)} / {_arrow_name(g)}: {exc}")
    for f in small:
        for g in small:
            for h in small:
                cases += 1
                if not associates(f, g, h):
                    failures.append(
                        f"assoc {_arrow_name(f)} / {_arrow_name(g)} / {_arrow_name(h)}"
                    )
    stride = max(1, len(small) // 9)
    sample = small[::stride]
    for f in sample:
        for g in sample:
            for h in sample:
                cases += 1
                try:
                    associator(f, g, h)
                except FinitetopError as exc:
                    failures.append(
                        f"associator {_arrow_name(f)} / {_arrow_name(g)} / "
                        f"{_arrow_name(h)}: {exc}"
                    )
    for f in sample:
        for g in sample:
            cases += 1
            twin = _relabel_source(f)
            if arrow_iso(pushout_product(f, g), pushout_product(twin, g)) is None:
                failures.append(
                    f"relabel {_arrow_name(f)} / {_arrow_name(g)}: corner changed"
                )
    rng = random.Random(opt.seed)
    pool = _preorder_pool(opt.max_points)
    cache = {}
    for _ in range(opt.samples):
        f = _sample_arrow(rng, pool, cache)
        g = _sample_arrow(rng, pool, cache)
        h = _sample_arrow(rng, pool, cache)
        cases += 2
        try:
            braiding(f, g)
            associator(f, g, h)
        except FinitetopError as exc:
            failures.append(
                f"seeded {_arrow_name(f)} / {_arrow_name(g)} / {_arrow_name(h)}: {exc}"
            )
        if not associates(f, g, h):
            failures.append(
                f"seeded assoc {_arrow_name(f)} / {_arrow_name(g)} / {_arrow_name(h)}"
            )
    corpus = (
        f"arrow pairs and triples up to 2 points, plus {opt.samples} seeded "
        f"triples up to {opt.max_points} points, seed {opt.seed}"
    )
    return corpus, cases, failures


def _run_pushout_product_units(opt):
    """Corner maps out of an empty domain are plain product arrows.

    For every space A and arrow f, the corner of (empty -> A) with f must
    be isomorphic to id_A x f; the corner of the point cell with itself
    must be the point cell again.
    """
    pool = _preorder_pool(min(opt.max_points, 2))
    empty = Preorder((), ())
    point = Preorder(("p",), (1,))
    cell = PreMap(empty, point, ())
    arrows = arrows_between(pool)
    failures = []
    cases = 0
    for pre in pool:
        bang = PreMap(empty, pre, ())
        for f in arrows:
            cases += 1
            corner = pushout_product(bang, f)
            expected = product_arrow(identity_arrow(pre), f)
            if arrow_iso(corner, expected) is None:
                failures.append(f"{_space_name(pre.space())} with {_arrow_name(f)}")
    cases += 1
    corner = pushout_product(cell, cell)
    if corner.source.n != 0 or corner.target.n != 1:
        failures.append("the point cell squared is not the point cell")
    corpus = f"spaces and arrows up to {min(opt.max_points, 2)} points"
    return corpus, cases, failures


def soa_regression_cases():
    """The fixed factorization regression set: (name, map, generators, steps)."""
    empty = Preorder((), ())
    point = Preorder(("p",), (1,))
    d2 = Preorder(("x", "y"), (1, 2))
    c2 = Preorder(("x", "y"), (3, 2))
    i2 = Preorder(("x", "y"), (3, 3))
    d3 = Preorder(("x", "y", "z"), (1, 2, 4))
    c3 = Preorder(("x", "y", "z"), (7, 6, 4))
    v3 = Preorder(("r", "s", "t"), (7, 2, 4))
    l3 = Preorder(("r", "s", "t"), (1, 3, 5))
    fold_src, _ = coproduct_pre((point, point), ("0", "1"))
    g_cell = PreMap(empty, point, ())
    g_fold = PreMap(fold_src, point, (0, 0))
    g_edge = PreMap(d2, c2, (0, 1))
    g_low = PreMap(point, c2, (0,))
    g_high = PreMap(point, c2, (1,))
    return (
        ("attach-two-cells", PreMap(empty, d2, ()), (g_cell,), 2),
        ("attach-cells-no-steps", PreMap(empty, d2, ()), (g_cell,), 0),
        ("fold-pair", PreMap(d2, point, (0, 0)), (g_fold,), 2),
        ("fold-pair-no-steps", PreMap(d2, point, (0, 0)), (g_fold,), 0),
        ("fill-edge", PreMap(d2, c2, (0, 1)), (g_edge,), 2),
        ("fill-edge-no-steps", PreMap(d2, c2, (0, 1)), (g_edge,), 0),
        ("climb-chain", PreMap(point, c3, (0,)), (g_low,), 4),
        ("climb-chain-short", PreMap(point, c3, (0,)), (g_low,), 1),
        ("mixed-generators", PreMap(d2, c3, (0, 2)), (g_cell, g_fold, g_edge), 4),
        ("grow-wedge", PreMap(point, v3, (1,)), (g_cell, g_low), 3),
        ("indiscrete-edge", PreMap(d2, i2, (0, 1)), (g_edge,), 2),
        ("identity-stays", PreMap(d2, d2, (0, 1)), (g_cell, g_fold, g_edge), 2),
        ("empty-identity", PreMap(empty, empty, ()), (g_cell,), 1),
        ("single-cell", PreMap(empty, point, ()), (g_cell,), 1),
        ("merge-then-order", PreMap(d3, c2, (0, 0, 1)), (g_fold, g_edge), 3),
        ("grow-under-top", PreMap(point, l3, (1,)), (g_low,), 3),
        ("grow-under-top-no-steps", PreMap(point, l3, (1,)), (g_low,), 0),
        ("two-sided-chain", PreMap(point, c3, (0,)), (g_low, g_high), 3),
        ("collapse-chain", PreMap(c3, point, (0, 0, 0)), (g_fold,), 2),
        ("build-chain-from-nothing", PreMap(empty, c3, ()), (g_cell, g_low), 5),
    )


def _run_soa(opt):
    """Bounded factorization on the fixed regression set.

    A COMPLETE verdict must come with a right factor that actually has the
    lifting property and a trace that replays; a PARTIAL verdict must come
    with a right factor that does not, and flipping either verdict must
    make the replay fail.
    """
    failures = []
    cases = 0
    for name, f, generators, steps in soa_regression_cases():
        cases += 1
        try:
            trace = bounded_factorize(f, generators, steps)
        except FinitetopError as exc:
            failures.append(f"{name}: {exc}")
            continue
        holds = bool(rlp(trace.right, generators))
        if trace.verdict == COMPLETE and not holds:
            failures.append(f"{name}: complete verdict without the lifting property")
        if trace.verdict == PARTIAL and holds:
            failures.append(f"{name}: partial verdict despite the lifting property")
        try:
            replay_trace(trace, generators)
        except VerificationError as exc:
            failures.append(f"{name}: replay failed: {exc}")
        flip = PARTIAL if trace.verdict == COMPLETE else COMPLETE
        try:
            replay_trace(dataclasses.replace(trace, verdict=flip), generators)
            failures.append(f"{name}: a flipped verdict replayed")
        except VerificationError:
            pass
    corpus = "the fixed regression set of 20 factorization problems"
    return corpus, cases, failures


# --- registry ---------------------------------------------------------------


@dataclass(frozen=True)
class SuiteEntry:
    citation: str
    suite: str
    group: str
    runner: object


_ENTRIES = (
    SuiteEntry("FrameCoproduct", "frame-coproduct", "frames", _run_frame_coproduct),
    SuiteEntry("GaloisLaws", "galois-laws", "frames", _run_galois_laws),
    SuiteEntry(
        "NucleusGeneration", "nucleus-generation", "frames", _run_nucleus_generation
    ),
    SuiteEntry(
        "ProductDistributeLocale",
        "product-distribute",
        "colimits",
        _run_product_distribute,
    ),
    SuiteEntry("LocPushout", "loc-pushout", "colimits", _run_loc_pushout),
    SuiteEntry(
        "LocSpatialProducts", "spatial-products", "spatial", _run_spatial_products
    ),
    SuiteEntry("OmegaPtAdjunction", "omega-pt-adjunction", "spatial", _run_omega_pt),
    SuiteEntry(
        "SubspaceRestiction",
        "subspace-restriction",
        "pstop-lemmas",
        _wrap_lemma(lemma_subspace_restriction),
    ),
    SuiteEntry(
        "SubspaceLemma",
        "subspace-modification",
        "pstop-lemmas",
        _wrap_lemma(lemma_subspace_modification),
    ),
    SuiteEntry(
        "CompactImageCompact",
        "compact-image",
        "pstop-lemmas",
        _wrap_lemma(lemma_compact_image),
    ),
    SuiteEntry(
        "CompactSpacesBalanced",
        "compact-balanced",
        "pstop-lemmas",
        _wrap_lemma(lemma_compact_balanced),
    ),
    SuiteEntry(
        "PushoutsInPsTop",
        "pushout-agreement",
        "pstop-lemmas",
        _wrap_lemma(lemma_pushout_agreement, capped=True),
    ),
    SuiteEntry(
        "TauIotaAdjunction",
        "tau-iota-adjunction",
        "pstop-lemmas",
        _wrap_lemma(lemma_tau_iota),
    ),
    SuiteEntry(
        "PsTopLattice",
        "lattice-bounds",
        "pstop-lemmas",
        _wrap_lemma(lemma_lattice_bounds),
    ),
    SuiteEntry(
        "FinitePsTopCompact",
        "all-compact",
        "pstop-lemmas",
        _wrap_lemma(lemma_all_compact),
    ),
    SuiteEntry(
        "PushProdAndPullPowerLemma",
        "lifting-adjunction",
        "lifting",
        _run_lifting_adjunction,
    ),
    SuiteEntry(
        "PushProdArrowCategory",
        "pushout-product-symmetry",
        "lifting",
        _run_pushout_product_symmetry,
    ),
    SuiteEntry(
        "PushProdIdentity1",
        "pushout-product-units",
        "lifting",
        _run_pushout_product_units,
    ),
    SuiteEntry("SmallObjectArgument", "bounded-soa", "lifting", _run_soa),
)

REGISTRY = {entry.citation: entry for entry in _ENTRIES}

GROUPS = {
    group: tuple(e.citation for e in _ENTRIES if e.group == group)
    for group in ("frames", "colimits", "spatial", "pstop-lemmas", "lifting")
}


def run_suite(citation, options=None):
    """Run one registered suite and time it."""
    entry = REGISTRY[citation]
    opt = options or SuiteOptions()
    start = perf_counter()
    corpus, cases, failures = entry.runner(opt)
    elapsed = perf_counter() - start
    return SuiteReport(
        entry.suite, entry.citation, entry.group, corpus, cases, tuple(failures), elapsed
    )


def _run_remote(args):
    citation, options = args
    return run_suite(citation, options)


def run_group(group, options=None, jobs=1):
    """All suites of one group, in registry order."""
    return _run_many(GROUPS[group], options, jobs)


def run_all(options=None, jobs=1):
    """Every registered suite, in registry order."""
    return _run_many(tuple(REGISTRY), options, jobs)


def _run_many(citations, options, jobs):
    opt = options or SuiteOptions()
    if jobs > 1 and len(citations) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_remote, [(c, opt) for c in citations]))
        return tuple(reports)
    return tuple(run_suite(c, opt) for c in citations)
