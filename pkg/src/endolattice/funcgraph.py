"""Structural analysis of finite self-maps.

A self-map on {0, ..., n-1} is stored as its table of images.  Drawing an
edge x -> f(x) turns the map into a functional graph: every component
contains exactly one cycle, with trees hanging off the cycle nodes.  This
module computes that decomposition and the derived quantities the order
builders consume: cycle periods, distances to a designated cyclic element,
concurrency classes (elements whose forward iterates eventually coincide),
prohibited pairs (elements no monotone-compatible order may relate), and
basins of fixed points.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class FunctionTable:
    """A finite self-map, stored as the tuple of images of 0..n-1."""

    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(v) for v in self.image)
        object.__setattr__(self, "image", image)
        n = len(image)
        if n == 0:
            raise ValueError("a self-map needs at least one element")
        for x, y in enumerate(image):
            if not 0 <= y < n:
                raise ValueError(f"image[{x}] = {y} is out of range for n = {n}")

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def iterate(self, x: int, k: int) -> int:
        """Apply the map k times to x."""
        for _ in range(k):
            x = self.image[x]
        return x


def as_table(f) -> FunctionTable:
    """Coerce a table or image sequence into a FunctionTable."""
    if isinstance(f, FunctionTable):
        return f
    return FunctionTable(tuple(f))


@dataclass(frozen=True)
class ComponentAnalysis:
    """Full structural decomposition of one self-map.

    Components are numbered by their smallest member.  Each component's
    designated cyclic element (its anchor) is the smallest index on its
    cycle; distances are measured to that anchor.  The class index of an
    element is its distance mod the component period, which partitions each
    component into concurrency classes.
    """

    table: FunctionTable
    component_id: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    cycles: tuple[tuple[int, ...], ...]
    periods: tuple[int, ...]
    anchors: tuple[int, ...]
    distances: tuple[int, ...]
    class_indices: tuple[int, ...]
    steps_to_cycle: tuple[int, ...]
    fixed_points: tuple[int, ...]
    cyclic_part: tuple[int, ...]
    acyclic_part: tuple[int, ...]
    basins: dict[int, tuple[int, ...]]

    @property
    def n(self) -> int:
        return len(self.component_id)

    def classes_of(self, cid: int) -> list[list[int]]:
        """Concurrency classes of component cid, indexed by class index."""
        cells: list[list[int]] = [[] for _ in range(self.periods[cid])]
        for x in self.components[cid]:
            cells[self.class_indices[x]].append(x)
        return cells


def components(f) -> ComponentAnalysis:
    """Decompose a self-map into components, cycles, and derived data."""
    table = as_table(f)
    n, img = table.n, table.image

    comp = [-1] * n
    raw_cycles: list[list[int]] = []
    for start in range(n):
        if comp[start] != -1:
            continue
        path: list[int] = []
        seen_at: dict[int, int] = {}
        cur = start
        while comp[cur] == -1 and cur not in seen_at:
            seen_at[cur] = len(path)
            path.append(cur)
            cur = img[cur]
        if comp[cur] != -1:
            cid = comp[cur]
        else:
            cid = len(raw_cycles)
            raw_cycles.append(path[seen_at[cur]:])
        for u in path:
            comp[u] = cid

    cycles: list[tuple[int, ...]] = []
    anchors: list[int] = []
    periods: list[int] = []
    for cyc in raw_cycles:
        anchor = min(cyc)
        k = cyc.index(anchor)
        cycles.append(tuple(cyc[k:] + cyc[:k]))
        anchors.append(anchor)
        periods.append(len(cyc))

    # d(anchor) = 0 and d(f^j(anchor)) = period - j for j >= 1; tree nodes
    # add one step per edge toward the cycle.
    dist = [-1] * n
    steps = [-1] * n
    for cid, cyc in enumerate(cycles):
        period = periods[cid]
        for j, u in enumerate(cyc):
            dist[u] = (period - j) % period
            steps[u] = 0
    for x in range(n):
        if dist[x] != -1:
            continue
        chain: list[int] = []
        cur = x
        while dist[cur] == -1:
            chain.append(cur)
            cur = img[cur]
        d, s = dist[cur], steps[cur]
        for u in reversed(chain):
            d += 1
            s += 1
            dist[u] = d
            steps[u] = s

    class_idx = [dist[x] % periods[comp[x]] for x in range(n)]
    members: list[list[int]] = [[] for _ in raw_cycles]
    for x in range(n):
        members[comp[x]].append(x)
    fixed = tuple(x for x in range(n) if img[x] == x)
    cyclic_part = tuple(x for x in range(n) if periods[comp[x]] >= 2)
    acyclic_part = tuple(x for x in range(n) if periods[comp[x]] == 1)
    basins = {c: tuple(members[comp[c]]) for c in fixed}

    return ComponentAnalysis(
        table=table,
        component_id=tuple(comp),
        components=tuple(tuple(m) for m in members),
        cycles=tuple(cycles),
        periods=tuple(periods),
        anchors=tuple(anchors),
        distances=tuple(dist),
        class_indices=tuple(class_idx),
        steps_to_cycle=tuple(steps),
        fixed_points=fixed,
        cyclic_part=cyclic_part,
        acyclic_part=acyclic_part,
        basins=basins,
    )


def period_of(x: int, analysis: ComponentAnalysis) -> int:
    """Length of the unique cycle in x's component."""
    if not 0 <= x < analysis.n:
        raise ValueError(f"element {x} is out of range for n = {analysis.n}")
    return analysis.periods[analysis.component_id[x]]


def distance(y: int, c: int, f) -> int:
    """Least t >= 0 with f^t(y) = c, for a cyclic element c.

    Computed by direct iteration, independently of any cached analysis.
    """
    table = as_table(f)
    n = table.n
    if not (0 <= y < n and 0 <= c < n):
        raise ValueError(f"elements must lie in [0, {n})")
    cur = table(c)
    hops = 1
    while cur != c:
        if hops > n:
            raise ValueError(f"element {c} is not cyclic")
        cur = table(cur)
        hops += 1
    cur = y
    for t in range(n + 1):
        if cur == c:
            return t
        cur = table(cur)
    raise ValueError(f"element {y} is not in the component of {c}")


def is_prohibited(x: int, y: int, analysis: ComponentAnalysis) -> bool:
    """True iff no order making the map monotone may relate x and y.

    Holds exactly when x and y share a component whose period n is at
    least 2 and their distances to the anchor differ by a non-multiple
    of n, i.e. when they sit in different concurrency classes of one
    cyclic component.
    """
    if analysis.component_id[x] != analysis.component_id[y]:
        return False
    cid = analysis.component_id[x]
    period = analysis.periods[cid]
    if period < 2:
        return False
    return (analysis.distances[x] - analysis.distances[y]) % period != 0


def has_proper_cycle(f, *, analysis: ComponentAnalysis | None = None) -> bool:
    """True iff some cycle of the map has length at least 2."""
    analysis = analysis if analysis is not None else components(f)
    return any(p >= 2 for p in analysis.periods)


def fixed_points(f, *, analysis: ComponentAnalysis | None = None) -> list[int]:
    analysis = analysis if analysis is not None else components(f)
    return list(analysis.fixed_points)


def split(f, *, analysis: ComponentAnalysis | None = None) -> tuple[list[int], list[int]]:
    """Partition the universe into (cyclic part, acyclic part).

    The cyclic part collects every element whose component contains a
    proper cycle; both parts are closed under the map.
    """
    analysis = analysis if analysis is not None else components(f)
    return list(analysis.cyclic_part), list(analysis.acyclic_part)


def basin(c: int, analysis: ComponentAnalysis) -> list[int]:
    """All elements whose iteration eventually reaches the fixed point c."""
    if analysis.table(c) != c:
        raise ValueError(f"element {c} is not a fixed point")
    return list(analysis.basins[c])
