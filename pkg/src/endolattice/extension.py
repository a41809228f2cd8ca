"""Monotone chain and extension builders.

The constructions here produce orders on which a given self-map stays
order-preserving: branch-lexicographic chains on sets of concurrent
elements, hub-anchored linear extensions of the acyclic part, per-class
chain families for cyclic components, and a pair-insertion linearisation
that keeps monotonicity by closing every inserted pair under the map.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .funcgraph import ComponentAnalysis, FunctionTable, as_table, components
from .order import _as_rel, check_partial_order, is_monotone, transitive_closure


@dataclass(frozen=True)
class SiblingPolicy:
    """Total order on each sibling fiber f^-1(w).

    Ties are always broken by ascending element index; the fixed-point
    modes additionally pin a fixed point to the top or bottom of its own
    fiber, which is what forces a hub to the boundary of its basin block.
    """

    mode: str = "plain"

    _MODES = ("plain", "fixed-point-max", "fixed-point-min")

    def __post_init__(self):
        if self.mode not in self._MODES:
            raise ValueError(f"unknown sibling policy {self.mode!r}")

    def fiber_key(self, x: int, table: FunctionTable) -> tuple[int, int]:
        pinned = table(x) == x
        if self.mode == "fixed-point-max":
            return (1 if pinned else 0, x)
        if self.mode == "fixed-point-min":
            return (0 if pinned else 1, x)
        return (0, x)


PLAIN = SiblingPolicy("plain")
FIXED_POINT_MAX = SiblingPolicy("fixed-point-max")
FIXED_POINT_MIN = SiblingPolicy("fixed-point-min")


class MonotoneExtensionError(RuntimeError):
    """A monotone linear extension could not be completed or verified."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def branch_lex_order(S: Iterable[int], f, policy: SiblingPolicy = PLAIN,
                     *, analysis: ComponentAnalysis | None = None) -> list[int]:
    """Chain a set of pairwise concurrent elements, least first.

    Two distinct members u, v have a least k >= 1 with f^k(u) = f^k(v);
    the order compares the distinct siblings f^(k-1)(u) and f^(k-1)(v) by
    the fiber policy.  Realised as a lexicographic key over the reversed
    iterate sequences, padded at the far end where both walks have already
    merged, so sorting by key reproduces exactly that rule.  Because the
    sibling pair of (f(u), f(v)) equals the sibling pair of (u, v) whenever
    the images still differ, the map is order-preserving from this chain
    into the image chain built with the same policy.
    """
    table = as_table(f)
    analysis = analysis if analysis is not None else components(table)
    elems = sorted({int(x) for x in S})
    if len(elems) <= 1:
        return elems
    first = elems[0]
    for u in elems[1:]:
        same = (analysis.component_id[u] == analysis.component_id[first]
                and analysis.class_indices[u] == analysis.class_indices[first])
        if not same:
            raise ValueError(
                f"elements {first} and {u} are not concurrent: "
                "their iterates never coincide")
    depth = max(analysis.steps_to_cycle[u] for u in elems)
    keys: dict[int, tuple] = {}
    for u in elems:
        orbit = [u]
        for _ in range(depth):
            orbit.append(table(orbit[-1]))
        keys[u] = tuple(policy.fiber_key(v, table) for v in reversed(orbit))
    return sorted(elems, key=keys.__getitem__)


@dataclass(frozen=True)
class TraceBlock:
    """One contiguous block of the linear order on the acyclic part."""

    kind: str  # "low-basin" | "middle" | "high-basin" | "supplied"
    fixed_point: int | None
    elements: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "fixed_point": self.fixed_point,
            "elements": list(self.elements),
        }


def hub_blocks(f, p: int, q: int,
               *, analysis: ComponentAnalysis | None = None) -> list[TraceBlock]:
    """Block layout of the acyclic part for hubs p (low) and q (high).

    The basin of p comes first with p forced to its top, every other
    acyclic component follows in ascending fixed-point order, and the
    basin of q closes the layout with q at its bottom.  This pins the
    down-set of p and the up-set of q to exactly the two hub basins.
    """
    table = as_table(f)
    analysis = analysis if analysis is not None else components(table)
    for hub in (p, q):
        if not 0 <= hub < table.n or table(hub) != hub:
            raise ValueError(f"hub {hub} is not a fixed point")
    if p == q:
        raise ValueError("hubs must be distinct fixed points")
    blocks = [TraceBlock("low-basin", p, tuple(
        branch_lex_order(analysis.basins[p], table, FIXED_POINT_MAX, analysis=analysis)))]
    for c in analysis.fixed_points:
        if c in (p, q):
            continue
        blocks.append(TraceBlock("middle", c, tuple(
            branch_lex_order(analysis.basins[c], table, PLAIN, analysis=analysis))))
    blocks.append(TraceBlock("high-basin", q, tuple(
        branch_lex_order(analysis.basins[q], table, FIXED_POINT_MIN, analysis=analysis))))
    return blocks


def acyclic_linear_extension(f, p: int, q: int,
                             *, analysis: ComponentAnalysis | None = None) -> list[int]:
    """Hub-anchored monotone total order on the acyclic part, least first.

    Guarantees: the result is total on the acyclic part, the map is
    order-preserving along it, everything at or below p is exactly the
    basin of p, and everything at or above q is exactly the basin of q.
    """
    table = as_table(f)
    analysis = analysis if analysis is not None else components(table)
    blocks = hub_blocks(table, p, q, analysis=analysis)
    return [e for blk in blocks for e in blk.elements]


def component_order(member: int, f,
                    *, analysis: ComponentAnalysis | None = None) -> list[list[int]]:
    """Per-class chains for the cyclic component containing `member`.

    Returns one chain per concurrency class, indexed by class index.  The
    classes are kept mutually unrelated: a pair from two different classes
    is prohibited and must stay incomparable, and keeping the classes as
    disjoint chains also leaves such a pair with no common bounds inside
    the component.
    """
    table = as_table(f)
    analysis = analysis if analysis is not None else components(table)
    if not 0 <= member < table.n:
        raise ValueError(f"element {member} is out of range")
    cid = analysis.component_id[member]
    if analysis.periods[cid] < 2:
        raise ValueError(f"component of {member} has no proper cycle")
    return [branch_lex_order(cell, table, PLAIN, analysis=analysis)
            for cell in analysis.classes_of(cid)]


def f_compatible_closure(order, pair: tuple[int, int], f) -> np.ndarray | None:
    """Insert a pair together with all its forward images, then close.

    Returns the transitive closure of the order plus every (f^k(a), f^k(b)),
    or None when antisymmetry breaks; a conflict is a normal outcome, not
    an error.  Monotonicity of the map is preserved by construction since
    the image of every inserted pair is inserted as well.
    """
    rel = _as_rel(order).copy()
    table = as_table(f)
    a, b = int(pair[0]), int(pair[1])
    if rel[a, b]:
        return rel
    seen: set[tuple[int, int]] = set()
    x, y = a, b
    while x != y and (x, y) not in seen:
        seen.add((x, y))
        rel[x, y] = True
        x, y = table(x), table(y)
    rel = transitive_closure(rel)
    if (rel & rel.T & ~np.eye(len(rel), dtype=bool)).any():
        return None
    return rel


def _monotone_closure(order, table: FunctionTable) -> np.ndarray | None:
    """Close an order under image-shift and transitivity; None on conflict."""
    rel = transitive_closure(_as_rel(order))
    fimg = np.fromiter(table.image, dtype=np.int64, count=table.n)
    while True:
        xs, ys = np.nonzero(rel)
        shifted = np.zeros_like(rel)
        shifted[fimg[xs], fimg[ys]] = True
        nxt = transitive_closure(rel | shifted)
        if np.array_equal(nxt, rel):
            break
        rel = nxt
    if (rel & rel.T & ~np.eye(len(rel), dtype=bool)).any():
        return None
    return rel


def szpilrajn_monotone(order, f) -> np.ndarray:
    """Map-compatible linear extension of a partial order.

    The input is first closed under image-shift (so a starting order that
    merely fails to mention some forced image pairs is accepted), then the
    smallest incomparable pair is repeatedly inserted via
    f_compatible_closure, falling back to the opposite orientation on
    conflict.  Requires a map without proper cycles; the finished chain is
    re-verified before being returned, and any failure raises
    MonotoneExtensionError with a witness instead of returning a bad order.
    """
    table = as_table(f)
    rel = _as_rel(order)
    if table.n != len(rel):
        raise ValueError(f"map on {table.n} elements vs order on {len(rel)}")
    analysis = components(table)
    for cid, period in enumerate(analysis.periods):
        if period >= 2:
            raise MonotoneExtensionError(
                "map has a proper cycle, no linear extension can be monotone",
                witness=analysis.cycles[cid])
    closed = _monotone_closure(rel, table)
    if closed is None:
        raise MonotoneExtensionError(
            "starting order conflicts with its own image pairs")
    rel = closed
    while True:
        undecided = np.argwhere(~(rel | rel.T))
        if len(undecided) == 0:
            break
        a, b = (int(v) for v in undecided[0])
        nxt = f_compatible_closure(rel, (a, b), table)
        if nxt is None:
            nxt = f_compatible_closure(rel, (b, a), table)
        if nxt is None:
            raise MonotoneExtensionError(
                f"neither orientation of ({a}, {b}) extends the order",
                witness=(a, b))
        rel = nxt
    ok, witness = check_partial_order(rel)
    if not ok:
        raise MonotoneExtensionError(f"result is not a partial order: {witness}")
    mono, pair = is_monotone(table, rel)
    if not mono:
        raise MonotoneExtensionError(
            f"result lost monotonicity at pair {pair}", witness=pair)
    return rel


@dataclass(frozen=True)
class ConstructionTrace:
    """How a glued order was assembled, for explanation and diagrams.

    blocks partitions the acyclic part in chain order; class_chains maps
    each cyclic component's anchor to its per-class chains; the glue
    counts record how many pairs tie the acyclic part below (low) and
    above (high) the cyclic part.
    """

    hub_low: int | None
    hub_high: int | None
    blocks: tuple[TraceBlock, ...]
    class_chains: dict[int, tuple[tuple[int, ...], ...]]
    low_glue_pairs: int
    high_glue_pairs: int

    def to_json_dict(self) -> dict:
        return {
            "hub_low": self.hub_low,
            "hub_high": self.hub_high,
            "blocks": [blk.to_json_dict() for blk in self.blocks],
            "class_chains": {str(k): [list(ch) for ch in v]
                             for k, v in sorted(self.class_chains.items())},
            "low_glue_pairs": self.low_glue_pairs,
            "high_glue_pairs": self.high_glue_pairs,
        }
