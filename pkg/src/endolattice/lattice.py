"""Decision and construction of lattice structures for a self-map.

decide() settles existence: a lattice making the map an endomorphism
exists iff the map has no proper cycle or has at least two fixed points.
construct() builds and verifies such a lattice.  For maps with proper
cycles the order glues a hub-anchored chain on the acyclic part to
per-class chains on each cyclic component, relating the two parts only
through the basins of the two hub fixed points p and q.  That basin
placement is what makes every "hard" join resolve to q and every hard
meet to p even after applying the map; construct_paper_literal exposes
the same gluing without the basin constraint, which can break the
endomorphism laws while still producing a lattice, and ships with a
certificate that records exactly that.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .funcgraph import ComponentAnalysis, as_table, components
from .order import (
    LatticeCertificate,
    PartialOrder,
    _as_rel,
    certify,
    check_partial_order,
    is_monotone,
    linear_sequence,
)
from .extension import (
    FIXED_POINT_MAX,
    ConstructionTrace,
    MonotoneExtensionError,
    TraceBlock,
    branch_lex_order,
    component_order,
    hub_blocks,
    szpilrajn_monotone,
    _monotone_closure,
    f_compatible_closure,
)


@dataclass(frozen=True)
class Decision:
    """Existence verdict with the evidence that settles it."""

    exists: bool
    reason: str  # "no-proper-cycle" | "two-fixed-points" | "blocked"
    fixed_points: tuple[int, ...]
    proper_cycle: tuple[int, ...] | None

    def to_json_dict(self) -> dict:
        return {
            "exists": self.exists,
            "reason": self.reason,
            "evidence": {
                "fixed_points": list(self.fixed_points),
                "proper_cycle": None if self.proper_cycle is None else list(self.proper_cycle),
            },
        }


class NoLatticeError(ValueError):
    """No lattice structure can make this map an endomorphism."""

    def __init__(self, decision: Decision):
        cyc = list(decision.proper_cycle or ())
        super().__init__(
            f"no compatible lattice exists: proper cycle {cyc} forces two distinct "
            f"fixed points, but the map has {list(decision.fixed_points)}")
        self.decision = decision


class VerificationError(RuntimeError):
    """A constructed order failed its own certificate; an internal bug."""


@dataclass(frozen=True)
class LatticeResult:
    """A constructed order together with its certificate and trace."""

    order: PartialOrder
    certificate: LatticeCertificate
    trace: ConstructionTrace
    mode: str  # "repaired" | "paper-literal" | "chain"


def decide(f, *, analysis: ComponentAnalysis | None = None) -> Decision:
    """Existence of a lattice making f an endomorphism.

    A proper cycle forces its fold of joins and fold of meets to be two
    distinct fixed points, so existence amounts to: no proper cycle, or
    at least two fixed points.
    """
    analysis = analysis if analysis is not None else components(f)
    cycle = None
    for cid, period in enumerate(analysis.periods):
        if period >= 2:
            cycle = analysis.cycles[cid]
            break
    fps = analysis.fixed_points
    if cycle is None:
        return Decision(True, "no-proper-cycle", fps, None)
    if len(fps) >= 2:
        return Decision(True, "two-fixed-points", fps, cycle)
    return Decision(False, "blocked", fps, cycle)


def _chain_fill(rel: np.ndarray, seq: list[int]) -> None:
    for i, a in enumerate(seq):
        rel[a, seq[i:]] = True


def _assemble(f, analysis: ComponentAnalysis, p: int, q: int,
              rstar_seq: list[int], blocks: tuple[TraceBlock, ...],
              class_chains: dict[int, tuple[tuple[int, ...], ...]] | None = None,
              ) -> tuple[np.ndarray, ConstructionTrace]:
    """Glue the acyclic chain, the per-class chains, and the hub basins.

    The result relates an acyclic element a below every cyclic element
    exactly when a <= p, and a cyclic element below an acyclic b exactly
    when q <= b; no other cross relations exist, and distinct classes or
    components of the cyclic part stay mutually incomparable.
    """
    table = as_table(f)
    n = table.n
    rel = np.eye(n, dtype=bool)
    _chain_fill(rel, rstar_seq)
    if class_chains is None:
        class_chains = {}
        for cid, period in enumerate(analysis.periods):
            if period < 2:
                continue
            chains = component_order(analysis.anchors[cid], table, analysis=analysis)
            class_chains[analysis.anchors[cid]] = tuple(tuple(ch) for ch in chains)
    for chains in class_chains.values():
        for ch in chains:
            _chain_fill(rel, list(ch))
    a0 = list(analysis.cyclic_part)
    pos = {e: i for i, e in enumerate(rstar_seq)}
    low = [a for a in rstar_seq if pos[a] <= pos[p]]
    high = [b for b in rstar_seq if pos[b] >= pos[q]]
    if a0:
        rel[np.ix_(low, a0)] = True
        rel[np.ix_(a0, high)] = True
    trace = ConstructionTrace(
        hub_low=p, hub_high=q, blocks=blocks, class_chains=class_chains,
        low_glue_pairs=len(low) * len(a0), high_glue_pairs=len(high) * len(a0))
    return rel, trace


def _require_verified(f, rel: np.ndarray, cert: LatticeCertificate,
                      *, need_endomorphism: bool = True) -> None:
    ok, witness = check_partial_order(rel)
    if not ok:
        raise VerificationError(f"constructed relation is not a partial order: {witness}")
    if not cert.is_lattice:
        raise VerificationError(f"constructed order is not a lattice: {cert.witnesses}")
    if need_endomorphism and not cert.is_endomorphism:
        raise VerificationError(
            f"constructed lattice breaks the endomorphism laws: {cert.witnesses}")


def construct(f) -> LatticeResult:
    """Build and verify a lattice on which f is an endomorphism.

    Maps without proper cycles get a total order (hence a distributive
    lattice); maps with proper cycles and at least two fixed points get
    the glued hub construction.  The certificate is always recomputed
    from scratch and a failure raises VerificationError, since nothing
    here is trusted on faith.
    """
    table = as_table(f)
    analysis = components(table)
    decision = decide(table, analysis=analysis)
    if not decision.exists:
        raise NoLatticeError(decision)
    fps = analysis.fixed_points
    if decision.proper_cycle is None:
        if len(fps) >= 2:
            p, q = fps[0], fps[1]
            blocks = tuple(hub_blocks(table, p, q, analysis=analysis))
        else:
            p, q = fps[0], None
            blocks = (TraceBlock("low-basin", p, tuple(
                branch_lex_order(analysis.basins[p], table, FIXED_POINT_MAX,
                                 analysis=analysis))),)
        seq = [e for blk in blocks for e in blk.elements]
        rel = np.eye(table.n, dtype=bool)
        _chain_fill(rel, seq)
        trace = ConstructionTrace(p, q, blocks, {}, 0, 0)
        mode = "chain"
    else:
        p, q = fps[0], fps[1]
        blocks = tuple(hub_blocks(table, p, q, analysis=analysis))
        seq = [e for blk in blocks for e in blk.elements]
        rel, trace = _assemble(table, analysis, p, q, seq, blocks)
        mode = "repaired"
    cert = certify(table, rel)
    _require_verified(table, rel, cert)
    return LatticeResult(PartialOrder(rel), cert, trace, mode)


def construct_paper_literal(f, rstar=None) -> LatticeResult:
    """Glue from a caller-supplied linear order on the acyclic part.

    rstar lists the acyclic part from least to greatest; it must keep the
    map order-preserving and place the low hub before the high hub, but
    unlike construct it need not pin the hub basins to the ends.  The
    assembly is always a lattice, yet when a basin element of a hub sits
    strictly between the hubs the endomorphism laws can fail; the
    certificate then records the failure and the witness pair.  That
    failure is the documented point of this mode, not a bug.
    """
    table = as_table(f)
    analysis = components(table)
    decision = decide(table, analysis=analysis)
    if not decision.exists:
        raise NoLatticeError(decision)
    if decision.proper_cycle is None:
        raise ValueError("map has no proper cycle; the glued construction does not apply")
    p, q = analysis.fixed_points[0], analysis.fixed_points[1]
    if rstar is None:
        blocks = tuple(hub_blocks(table, p, q, analysis=analysis))
        seq = [e for blk in blocks for e in blk.elements]
    else:
        seq = [int(v) for v in rstar]
        if sorted(seq) != sorted(analysis.acyclic_part):
            raise ValueError(
                f"rstar must list the acyclic part {sorted(analysis.acyclic_part)} "
                f"exactly once, got {seq}")
        pos = {e: i for i, e in enumerate(seq)}
        fpos = [pos[table(e)] for e in seq]
        if any(fpos[i] > fpos[i + 1] for i in range(len(fpos) - 1)):
            raise ValueError("map is not order-preserving along the supplied rstar")
        if pos[p] > pos[q]:
            raise ValueError(f"rstar must place hub {p} below hub {q}")
        blocks = (TraceBlock("supplied", None, tuple(seq)),)
    rel, trace = _assemble(table, analysis, p, q, seq, blocks)
    cert = certify(table, rel)
    _require_verified(table, rel, cert, need_endomorphism=False)
    return LatticeResult(PartialOrder(rel), cert, trace, "paper-literal")


@dataclass(frozen=True)
class HubAttempt:
    """Outcome of one hub orientation tried by construct_with_base."""

    hub_low: int
    hub_high: int
    ok: bool
    stage: str
    detail: str

    def to_json_dict(self) -> dict:
        return {"hub_low": self.hub_low, "hub_high": self.hub_high,
                "ok": self.ok, "stage": self.stage, "detail": self.detail}


@dataclass(frozen=True)
class WithBaseReport:
    """Best-effort result of extending a caller-supplied base order.

    result is None when no hub orientation produced a fully verified
    lattice; attempts then explain where each orientation failed.  A
    verified result is always an extension of the base.
    """

    result: LatticeResult | None
    attempts: tuple[HubAttempt, ...]

    @property
    def ok(self) -> bool:
        return self.result is not None


def _submap(analysis: ComponentAnalysis, elements: list[int]):
    """Restrict the map to an invariant element set, reindexed densely."""
    loc = {e: i for i, e in enumerate(elements)}
    table = analysis.table
    return as_table(tuple(loc[table(e)] for e in elements)), loc


def _component_chains_with_base(cid: int, analysis: ComponentAnalysis,
                                base: np.ndarray):
    """Per-class chains extending the base inside one cyclic component.

    Same-class incomparable pairs are inserted one at a time through
    f_compatible_closure, trying both orientations; since the base keeps
    the map monotone, all of its pairs inside the component already lie
    within single classes, and insertions never leak across classes.
    Returns the chains, or None when some pair admits no orientation.
    """
    members = list(analysis.components[cid])
    sub, loc = _submap(analysis, members)
    rel = base[np.ix_(members, members)].copy()
    rel |= np.eye(len(members), dtype=bool)
    rel = _monotone_closure(rel, sub)
    if rel is None:
        return None
    cls = [analysis.class_indices[e] for e in members]
    while True:
        undecided = [
            (i, j)
            for i in range(len(members))
            for j in range(i + 1, len(members))
            if cls[i] == cls[j] and not rel[i, j] and not rel[j, i]
        ]
        if not undecided:
            break
        i, j = undecided[0]
        nxt = f_compatible_closure(rel, (i, j), sub)
        if nxt is None:
            nxt = f_compatible_closure(rel, (j, i), sub)
        if nxt is None:
            return None
        rel = nxt
    # cross-class relations would break the prohibited-pair guarantee
    for i in range(len(members)):
        for j in range(len(members)):
            if cls[i] != cls[j] and i != j and rel[i, j]:
                return None
    chains: list[list[int]] = []
    for cell in analysis.classes_of(cid):
        local = [loc[e] for e in cell]
        ordered = sorted(local, key=lambda v: -int(rel[v].sum()))
        chains.append([members[v] for v in ordered])
    return chains


def construct_with_base(f, base) -> WithBaseReport:
    """Extend a base partial order to a verified compatible lattice.

    Tries every ordered pair of distinct fixed points as (low, high)
    hubs: each attempt seeds the hub-basin constraints on the acyclic
    part, linearises with szpilrajn_monotone, rebuilds the per-class
    chains around the base, assembles, and fully verifies (including
    that the result extends the base).  The first verified attempt wins;
    otherwise every failure is reported and no order is returned.
    """
    table = as_table(f)
    rel0 = _as_rel(base)
    if len(rel0) != table.n:
        raise ValueError(f"base order on {len(rel0)} elements vs map on {table.n}")
    ok, witness = check_partial_order(rel0)
    if not ok:
        raise ValueError(f"base is not a partial order: {witness[0]} fails at {witness[1]}")
    mono, pair = is_monotone(table, rel0)
    if not mono:
        raise ValueError(f"map is not monotone with respect to the base order, pair {pair}")
    analysis = components(table)
    decision = decide(table, analysis=analysis)

    if np.array_equal(rel0, np.eye(table.n, dtype=bool)):
        return WithBaseReport(construct(table), ())

    if decision.proper_cycle is None:
        try:
            rel = szpilrajn_monotone(rel0, table)
        except MonotoneExtensionError as exc:
            return WithBaseReport(None, (HubAttempt(-1, -1, False, "linearise", str(exc)),))
        cert = certify(table, rel)
        _require_verified(table, rel, cert)
        seq = linear_sequence(rel)
        trace = ConstructionTrace(None, None,
                                  (TraceBlock("supplied", None, tuple(seq)),), {}, 0, 0)
        return WithBaseReport(LatticeResult(PartialOrder(rel), cert, trace, "chain"), ())

    if not decision.exists:
        raise NoLatticeError(decision)

    astar = list(analysis.acyclic_part)
    sub, loc = _submap(analysis, astar)
    sub_base = rel0[np.ix_(astar, astar)]
    attempts: list[HubAttempt] = []
    for p, q in itertools.permutations(analysis.fixed_points, 2):
        seed = sub_base.copy()
        seed |= np.eye(len(astar), dtype=bool)
        in_p = set(analysis.basins[p])
        in_q = set(analysis.basins[q])
        for e in astar:
            if e in in_p:
                seed[loc[e], loc[p]] = True
            else:
                seed[loc[p], loc[e]] = True
            if e in in_q:
                seed[loc[q], loc[e]] = True
            else:
                seed[loc[e], loc[q]] = True
        closed = _monotone_closure(seed, sub)
        if closed is None:
            attempts.append(HubAttempt(p, q, False, "hub-constraints",
                                       "basin placement conflicts with the base order"))
            continue
        try:
            lin = szpilrajn_monotone(closed, sub)
        except MonotoneExtensionError as exc:
            attempts.append(HubAttempt(p, q, False, "linearise", str(exc)))
            continue
        order_local = sorted(range(len(astar)), key=lambda v: -int(lin[v].sum()))
        seq = [astar[v] for v in order_local]
        class_chains: dict[int, tuple[tuple[int, ...], ...]] = {}
        chains_ok = True
        for cid, period in enumerate(analysis.periods):
            if period < 2:
                continue
            chains = _component_chains_with_base(cid, analysis, rel0)
            if chains is None:
                chains_ok = False
                break
            class_chains[analysis.anchors[cid]] = tuple(tuple(ch) for ch in chains)
        if not chains_ok:
            attempts.append(HubAttempt(p, q, False, "component-chains",
                                       "a class chain cannot extend the base order"))
            continue
        pos = {e: i for i, e in enumerate(seq)}
        low_block = tuple(seq[: pos[p] + 1])
        high_block = tuple(seq[pos[q]:])
        middle = tuple(seq[pos[p] + 1: pos[q]])
        blocks = (TraceBlock("low-basin", p, low_block),
                  TraceBlock("middle", None, middle),
                  TraceBlock("high-basin", q, high_block))
        rel, trace = _assemble(table, analysis, p, q, seq, blocks, class_chains)
        if (rel0 & ~rel).any():
            attempts.append(HubAttempt(p, q, False, "extension",
                                       "assembled order drops a base pair"))
            continue
        cert = certify(table, rel)
        ok_po, _ = check_partial_order(rel)
        if ok_po and cert.is_lattice and cert.is_endomorphism:
            attempts.append(HubAttempt(p, q, True, "verified", "lattice and endomorphism laws hold"))
            return WithBaseReport(
                LatticeResult(PartialOrder(rel), cert, trace, "repaired"),
                tuple(attempts))
        attempts.append(HubAttempt(p, q, False, "verify",
                                   f"certificate failed: {cert.witnesses}"))
    return WithBaseReport(None, tuple(attempts))


def is_isomorphic_to_mn(cert: LatticeCertificate, n: int) -> bool:
    """True iff the lattice is bottom + top + an n-element antichain.

    In that shape every join of two distinct middle elements is the top
    and every meet the bottom, so checking the order suffices.
    """
    if not cert.is_lattice:
        raise ValueError("shape check needs a lattice certificate")
    rel = cert.order_matrix()
    size = len(rel)
    if size != n + 2:
        return False
    bottoms = np.nonzero(rel.all(axis=1))[0]
    tops = np.nonzero(rel.all(axis=0))[0]
    if len(bottoms) != 1 or len(tops) != 1 or bottoms[0] == tops[0]:
        return False
    mid = [x for x in range(size) if x != bottoms[0] and x != tops[0]]
    sub = rel[np.ix_(mid, mid)]
    return bool((sub == np.eye(len(mid), dtype=bool)).all())


def prohibited_violations(f, order, *, analysis: ComponentAnalysis | None = None
                          ) -> list[tuple[int, int]]:
    """Prohibited pairs that the given order wrongly relates."""
    table = as_table(f)
    analysis = analysis if analysis is not None else components(table)
    rel = _as_rel(order)
    comp = np.fromiter(analysis.component_id, dtype=np.int64, count=table.n)
    cls = np.fromiter(analysis.class_indices, dtype=np.int64, count=table.n)
    per = np.fromiter((analysis.periods[c] for c in analysis.component_id),
                      dtype=np.int64, count=table.n)
    prohibited = ((comp[:, None] == comp[None, :])
                  & (per[:, None] >= 2)
                  & (cls[:, None] != cls[None, :]))
    bad = prohibited & (rel | rel.T)
    return [(int(x), int(y)) for x, y in np.argwhere(bad) if x < y]


def cycle_extreme_violations(f, result: LatticeResult,
                             *, analysis: ComponentAnalysis | None = None) -> list[str]:
    """Check that folding join (meet) over each full cycle hits the hubs.

    Applies to orders built for maps with proper cycles; returns messages
    for any cycle whose fold misses the hub or lands on a non-fixed point.
    """
    table = as_table(f)
    analysis = analysis if analysis is not None else components(table)
    cert = result.certificate
    problems: list[str] = []
    for cid, period in enumerate(analysis.periods):
        if period < 2:
            continue
        cycle = analysis.cycles[cid]
        top = cycle[0]
        bot = cycle[0]
        for x in cycle[1:]:
            top = int(cert.join[top, x])
            bot = int(cert.meet[bot, x])
        if top != result.trace.hub_high or table(top) != top:
            problems.append(f"join over cycle {list(cycle)} gave {top}")
        if bot != result.trace.hub_low or table(bot) != bot:
            problems.append(f"meet over cycle {list(cycle)} gave {bot}")
    return problems
