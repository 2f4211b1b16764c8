"""Exact burning: schedule verification, m-burnability, burning numbers.

The m-burnability decision runs on the covering form of the problem: a tree is
m-burnable iff balls of radii m-1, m-2, ..., 0 can cover it.  A covering always
yields a valid burning sequence by simulating the rounds and re-siting any
source that is already burned, so the decision is exact and every witness
passes the full sequence characterization (coverage plus the pairwise distance
condition).  Path forests and spiders get specialized exact searches; other
trees use a memoized branch-and-prune over (radius, center) choices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .tree import Tree, TreeError, canonical_key, make_path, subdivide_edge
from . import topology as topo_mod


@dataclass(frozen=True)
class BurningSchedule:
    """Ordered burning sources x_1..x_m."""

    sources: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.sources)


@dataclass(frozen=True)
class NeighborhoodCover:
    """Associated neighbourhoods N_{m-i}[x_i] and the derived flags."""

    neighborhoods: Tuple[frozenset, ...]
    covers_all: bool
    distance_ok: bool
    pairwise_disjoint: bool
    leaves_last: bool
    branch_prefix_length: int

    @property
    def is_burning_sequence(self) -> bool:
        return self.covers_all and self.distance_ok


@dataclass(frozen=True)
class PathForest:
    """Disjoint union of paths, stored as the list of path orders."""

    path_orders: Tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.path_orders):
            raise ValueError("path orders must be positive")


@dataclass(frozen=True)
class LnEstimate:
    """Per-m minimal shortest-path thresholds guaranteeing burnability of
    n-path forests of order m*m, with counterexamples at threshold - 1."""

    n: int
    m_range: Tuple[int, ...]
    per_m: Dict[int, int]
    counterexamples: Dict[int, Optional[Tuple[int, ...]]]
    vacuous: Tuple[int, ...]


def verify_schedule(tree: Tree, schedule: BurningSchedule) -> NeighborhoodCover:
    """Compute the associated neighbourhoods and all flags exactly."""
    m = schedule.length
    if m == 0:
        raise ValueError("empty schedule")
    seen = set()
    for x in schedule.sources:
        if x not in tree.dist:
            raise ValueError(f"source {x} not in tree")
        if x in seen:
            raise ValueError(f"duplicate source {x}")
        seen.add(x)
    hoods = tuple(
        tree.ball(x, m - i) for i, x in enumerate(schedule.sources, start=1)
    )
    union = frozenset().union(*hoods)
    covers_all = union == frozenset(tree.vertices)
    distance_ok = all(
        tree.dist[schedule.sources[i]][schedule.sources[j]] >= j - i
        for i in range(m)
        for j in range(i + 1, m)
    )
    disjoint = sum(len(h) for h in hoods) == len(union)
    # a leaf burns in the last round iff its earliest fire arrives at round m
    leaves_last = covers_all and all(
        min(
            i + tree.dist[x][leaf]
            for i, x in enumerate(schedule.sources, start=1)
        )
        == m
        for leaf in tree.leaves()
    )
    branch = set(tree.branch_vertices())
    prefix = 0
    if branch:
        lead = 0
        covered = set()
        for i, x in enumerate(schedule.sources, start=1):
            if x not in branch:
                break
            lead = i
            covered |= hoods[i - 1]
        if lead and branch <= covered:
            prefix = lead
    return NeighborhoodCover(
        neighborhoods=hoods,
        covers_all=covers_all,
        distance_ok=distance_ok,
        pairwise_disjoint=disjoint,
        leaves_last=leaves_last,
        branch_prefix_length=prefix,
    )


def extremal_flags(tree: Tree, schedule: BurningSchedule) -> NeighborhoodCover:
    """Flags for a schedule that must already be a valid burning sequence."""
    cover = verify_schedule(tree, schedule)
    if not cover.is_burning_sequence:
        raise ValueError("schedule is not a valid burning sequence")
    return cover


# ---------------------------------------------------------------------------
# Path-forest coverage: assign disjoint groups of radii to the paths so that
# each path order is at most the group's total segment size sum(2r+1).

def _forest_groups(
    path_orders: Sequence[int], radii: Sequence[int]
) -> Optional[List[List[int]]]:
    """Groups of radii covering each path, or None; exact search with memo."""
    order_idx = sorted(range(len(path_orders)), key=lambda i: -path_orders[i])
    paths = [path_orders[i] for i in order_idx]
    radii = sorted(radii, reverse=True)
    nr = len(radii)
    weight = [2 * r + 1 for r in radii]
    memo = {}

    def rec(j: int, mask: int) -> Optional[List[List[int]]]:
        if j == len(paths):
            return []
        key = (j, mask)
        if key in memo:
            return None
        need = paths[j]
        avail = [i for i in range(nr) if mask & (1 << i)]
        if sum(weight[i] for i in avail) < need:
            memo[key] = False
            return None
        # choose a subset of the available radii for path j
        def pick(pos: int, acc: int, chosen: List[int]):
            if acc >= need:
                rest = rec(j + 1, mask & ~sum(1 << i for i in chosen))
                if rest is not None:
                    return [[radii[i] for i in chosen]] + rest
                return None
            if pos == len(avail):
                return None
            i = avail[pos]
            got = pick(pos + 1, acc + weight[i], chosen + [i])
            if got is not None:
                return got
            return pick(pos + 1, acc, chosen)

        got = pick(0, 0, [])
        if got is None:
            memo[key] = False
        return got

    groups = rec(0, (1 << nr) - 1)
    if groups is None:
        return None
    # undo the order sort
    result: List[List[int]] = [[] for _ in path_orders]
    for slot, grp in zip(order_idx, groups):
        result[slot] = grp
    return result


def path_forest_burnable(forest: PathForest, m: int) -> bool:
    """True iff the forest is m-burnable (exact radii-to-path assignment)."""
    if m < 1:
        return False
    return _forest_groups(forest.path_orders, range(m)) is not None


# ---------------------------------------------------------------------------
# Covering decisions per tree shape.

def _cover_path_tree(tree: Tree, m: int) -> Optional[List[Tuple[int, int]]]:
    """Coverage of a path graph; returns [(radius, center), ...] or None."""
    # order vertices along the path
    ends = [v for v in tree.vertices if tree.degree(v) <= 1]
    start = min(ends)
    d = tree.distances_from(start)
    line = sorted(tree.vertices, key=lambda v: d[v])
    groups = _forest_groups([tree.order], range(m))
    if groups is None:
        return None
    return _place_on_line(line, groups[0])


def _place_on_line(line: Sequence[int], radii: Sequence[int]) -> List[Tuple[int, int]]:
    """Place balls of the given radii left to right along a vertex line."""
    out = []
    cur = 0
    n = len(line)
    for r in sorted(radii, reverse=True):
        if cur >= n:
            break
        c = min(cur + r, n - 1)
        out.append((r, line[c]))
        cur = c + r + 1
    return out


def _spider_profile(tree: Tree) -> Optional[Tuple[int, List[List[int]]]]:
    """(head, arms as vertex paths from head outward) if tree is a spider."""
    branch = tree.branch_vertices()
    if len(branch) != 1:
        return None
    head = branch[0]
    arms = []
    for w in tree.neighbors(head):
        path = [w]
        prev, cur = head, w
        while tree.degree(cur) == 2:
            nxt = [x for x in tree.neighbors(cur) if x != prev][0]
            path.append(nxt)
            prev, cur = cur, nxt
        arms.append(path)
    return head, arms


def _cover_spider(tree: Tree, m: int) -> Optional[List[Tuple[int, int]]]:
    """Exact spider coverage.

    Branch over the ball that crosses the head (radius rho, center at depth
    delta on some arm); every other ball can be normalized to an interval
    inside a single residual arm suffix, so the rest reduces to a path-forest
    assignment.
    """
    head, arms = _spider_profile(tree)  # type: ignore[misc]
    lengths = [len(a) for a in arms]
    radii = list(range(m - 1, -1, -1))
    seen_branches = set()
    for rho in radii:
        rest = [r for r in radii if r != rho]
        for j in range(len(arms) + 1):
            if j == len(arms):
                arm_len, delta_range = 0, [0]  # center at the head itself
            else:
                arm_len = lengths[j]
                delta_range = range(1, min(rho, arm_len) + 1)
            for delta in delta_range:
                covered = []
                for k, lk in enumerate(lengths):
                    if k == j:
                        covered.append(min(lk, delta + rho))
                    else:
                        covered.append(min(lk, rho - delta))
                key = (rho, tuple(sorted(zip(lengths, covered))))
                if key in seen_branches:
                    continue
                seen_branches.add(key)
                residual = [lengths[k] - covered[k] for k in range(len(arms))]
                live = [k for k in range(len(arms)) if residual[k] > 0]
                groups = _forest_groups([residual[k] for k in live], rest)
                if groups is None:
                    continue
                center = head if j == len(arms) else arms[j][delta - 1]
                placement = [(rho, center)]
                for k, grp in zip(live, groups):
                    suffix = arms[k][covered[k]:]
                    placement.extend(_place_on_line(suffix, grp))
                return placement
    return None


def _cover_general(tree: Tree, m: int) -> Optional[List[Tuple[int, int]]]:
    """Complete covering search for arbitrary trees.

    Branches on which (radius, center) covers a farthest uncovered vertex;
    memoizes failed (remaining radii, uncovered set) states.
    """
    dist = tree.dist
    verts = tree.vertices
    n = len(verts)
    index = {v: i for i, v in enumerate(verts)}
    ecc_order = sorted(range(n), key=lambda i: -max(dist[verts[i]].values()))
    # coverage sets as bitmasks, one per (radius, center)
    radii_set = sorted({r for r in range(m)})
    ball = {}
    for r in radii_set:
        row = []
        for v in verts:
            mask = 0
            dv = dist[v]
            for w, dw in dv.items():
                if dw <= r:
                    mask |= 1 << index[w]
            row.append(mask)
        ball[r] = row
    full = (1 << n) - 1
    failed = set()

    def rec(radii: Tuple[int, ...], uncovered: int) -> Optional[List[Tuple[int, int]]]:
        if not uncovered:
            return []
        if not radii:
            return None
        key = (radii, uncovered)
        if key in failed:
            return None
        # sound capacity bound: best-case coverage per remaining radius
        need = uncovered.bit_count()
        cap = 0
        for r in radii:
            row = ball[r]
            cap += max((row[i] & uncovered).bit_count() for i in range(n))
            if cap >= need:
                break
        if cap < need:
            failed.add(key)
            return None
        for i in ecc_order:
            if uncovered >> i & 1:
                u = verts[i]
                break
        tried = set()
        for idx, r in enumerate(radii):
            rest = radii[:idx] + radii[idx + 1 :]
            row = ball[r]
            du = dist[u]
            centers = [i for i in range(n) if du[verts[i]] <= r]
            centers.sort(key=lambda i: (-(row[i] & uncovered).bit_count(), i))
            for i in centers:
                new_unc = uncovered & ~row[i]
                sig = (rest, new_unc)
                if sig in tried:
                    continue
                tried.add(sig)
                sub = rec(rest, new_unc)
                if sub is not None:
                    return [(r, verts[i])] + sub
        failed.add(key)
        return None

    return rec(tuple(range(m - 1, -1, -1)), full)


def _cover_tree(tree: Tree, m: int) -> Optional[List[Tuple[int, int]]]:
    if m < 1:
        return None
    if tree.order == 1:
        return [(m - 1, tree.vertices[0])]
    if tree.is_path():
        return _cover_path_tree(tree, m)
    if len(tree.branch_vertices()) == 1:
        return _cover_spider(tree, m)
    return _cover_general(tree, m)


_decision_cache: Dict[Tuple[str, int], bool] = {}


def _decide_cover(tree: Tree, m: int) -> bool:
    key = (canonical_key(tree), m)
    if key not in _decision_cache:
        _decision_cache[key] = _cover_tree(tree, m) is not None
    return _decision_cache[key]


def _witness_from_cover(
    tree: Tree, k: int, cover: List[Tuple[int, int]]
) -> BurningSchedule:
    """Turn a covering into a valid burning sequence by simulating the rounds.

    If the designated center is already burned when its round arrives, any
    unburned vertex may be lit instead; the farthest one keeps coverage ample.
    """
    center_for = {k - 1 - r: c for r, c in cover}  # round index (0-based) -> center
    burned: set = set()
    sources: List[int] = []
    dist = tree.dist
    for t in range(k):
        if burned:
            burned |= {
                w for v in burned for w in tree.neighbors(v)
            }
        c = center_for.get(t)
        if c is None or c in burned or c in sources:
            # any vertex respecting the pairwise distance constraints will do;
            # an unburned one exists whenever coverage is still incomplete
            candidates = [
                v
                for v in tree.vertices
                if v not in sources
                and all(dist[v][s] >= t - j for j, s in enumerate(sources))
            ]
            if not candidates:
                raise AssertionError("no admissible source; cover was invalid")
            unburned = [v for v in candidates if v not in burned]
            pool = unburned or candidates
            c = max(
                pool,
                key=lambda v: (min(dist[v][s] for s in sources) if sources else 0, -v),
            )
        burned.add(c)
        sources.append(c)
    return BurningSchedule(sources=tuple(sources))


def is_m_burnable(tree: Tree, m: int, with_witness: bool = False):
    """True iff a valid burning sequence of length <= m exists.

    With ``with_witness=True`` returns ``(bool, schedule-or-None)`` where the
    witness has length b(tree) <= m.
    """
    if m < 1:
        raise ValueError("m must be positive")
    # radii only grow with m, so deciding coverage at m itself suffices
    ok = _decide_cover(tree, m)
    if not with_witness:
        return ok
    if not ok:
        return False, None
    b, witness = burning_number(tree)
    assert b <= m
    return True, witness


def burning_number(tree: Tree) -> Tuple[int, BurningSchedule]:
    """Smallest m with a valid burning sequence, plus an optimal witness."""
    k = 1
    while not _decide_cover(tree, k):
        k += 1
    cover = _cover_tree(tree, k)
    assert cover is not None
    witness = _witness_from_cover(tree, k, cover)
    check = verify_schedule(tree, witness)
    assert check.is_burning_sequence
    return k, witness


def enumerate_optimal_schedules(tree: Tree) -> Iterator[BurningSchedule]:
    """Every valid burning sequence of length exactly b(tree), in lexicographic
    order over the source tuples."""
    k, _ = burning_number(tree)
    dist = tree.dist
    verts = tree.vertices
    maxball = [max(len(tree.ball(v, r)) for v in verts) for r in range(k)]

    def rec(placed: Tuple[int, ...], covered: frozenset) -> Iterator[Tuple[int, ...]]:
        i = len(placed) + 1
        if i > k:
            if len(covered) == tree.order:
                yield placed
            return
        r = k - i
        budget = sum(maxball[:r])  # rounds after this one
        for v in verts:
            if v in placed:
                continue
            if any(dist[v][p] < i - j for j, p in enumerate(placed, start=1)):
                continue
            new_cov = covered | tree.ball(v, r)
            if tree.order - len(new_cov) > budget:
                continue
            yield from rec(placed + (v,), new_cov)

    for sources in rec((), frozenset()):
        yield BurningSchedule(sources=sources)


def is_maximally_m_burnable(tree: Tree, m: int) -> bool:
    """True iff b(tree) = m and no single degree-2 insertion stays m-burnable.

    Insertion positions are tried once per homeomorphic class (memoized via
    canonical tree hashing inside the decision cache).
    """
    b, _ = burning_number(tree)
    if b != m:
        raise ValueError(f"tree has burning number {b}, not {m}")
    if tree.is_path():
        return not is_m_burnable(make_path(tree.order + 1), m)
    dec = topo_mod.decompose(tree)
    candidates = []
    for _, path in dec.arms:
        candidates.append((path[0], path[1]))
    for _, _, path in dec.internal_paths:
        candidates.append((path[0], path[1]))
    seen = set()
    for u, v in candidates:
        bigger = subdivide_edge(tree, u, v)
        key = canonical_key(bigger)
        if key in seen:
            continue
        seen.add(key)
        if is_m_burnable(bigger, m):
            return False
    return True


def _partitions(total: int, parts: int, cap: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Non-increasing partitions of `total` into exactly `parts` positive parts."""
    if parts == 1:
        if 1 <= total and (cap is None or total <= cap):
            yield (total,)
        return
    hi = total - (parts - 1)
    if cap is not None:
        hi = min(hi, cap)
    for first in range(hi, 0, -1):
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def ln_estimate(n: int, m_range: Sequence[int]) -> LnEstimate:
    """Per-m minimal thresholds L with property: every n-path forest of total
    order m*m and shortest path >= L is m-burnable; each threshold is certified
    by a counterexample forest at L-1 when one exists."""
    if n < 2:
        raise ValueError("n must be at least 2")
    per_m: Dict[int, int] = {}
    counterexamples: Dict[int, Optional[Tuple[int, ...]]] = {}
    vacuous = []
    for m in m_range:
        total = m * m
        if total < n:
            vacuous.append(m)
            continue
        bad = [
            p
            for p in _partitions(total, n)
            if not path_forest_burnable(PathForest(p), m)
        ]
        if not bad:
            per_m[m] = 1
            counterexamples[m] = None
        else:
            threshold = max(min(p) for p in bad) + 1
            per_m[m] = threshold
            counterexamples[m] = next(
                p for p in bad if min(p) == threshold - 1
            )
    return LnEstimate(
        n=n,
        m_range=tuple(m_range),
        per_m=per_m,
        counterexamples=counterexamples,
        vacuous=tuple(vacuous),
    )
