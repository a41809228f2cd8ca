"""Ground truth by exhaustion on small universes.

Enumerates every labeled partial order on up to six elements, filters the
lattices once per size, and answers by brute force whether ANY lattice
makes a given self-map an endomorphism.  The sweeps cross-validate the
analytic decision procedure and the constructive builder against this
ground truth, map by map.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

import numpy as np

from .funcgraph import as_table, components
from .lattice import (
    VerificationError,
    construct,
    cycle_extreme_violations,
    decide,
    prohibited_violations,
)
from .order import (
    PartialOrder,
    _as_rel,
    check_partial_order,
    is_distributive,
    is_monotone,
)

MAX_N = 6


def enumerate_posets(n: int, base=None):
    """Yield every labeled partial order on n elements exactly once.

    Works element by element: each new element k picks a down-set D and an
    up-set U among 0..k-1 such that D is downward closed, U upward closed,
    and every member of D already sits strictly below every member of U.
    Each poset arises from exactly one (D, U) history, so there is no
    deduplication step.  An optional base order restricts the stream to
    posets containing it.
    """
    if not 1 <= n <= MAX_N:
        raise ValueError(f"poset enumeration supports 1 <= n <= {MAX_N}, got {n}")
    req_down = [0] * n
    req_up = [0] * n
    if base is not None:
        rel = _as_rel(base)
        if len(rel) != n:
            raise ValueError(f"base order on {len(rel)} elements, expected {n}")
        ok, witness = check_partial_order(rel)
        if not ok:
            raise ValueError(f"base is not a partial order: {witness[0]} fails at {witness[1]}")
        for j in range(n):
            for i in range(j):
                if rel[i, j]:
                    req_down[j] |= 1 << i
                if rel[j, i]:
                    req_up[j] |= 1 << i

    up = [0] * n   # up[i]: bitmask of j with i <= j, among elements added so far
    low = [0] * n

    def emit() -> np.ndarray:
        mat = np.zeros((n, n), dtype=bool)
        for i in range(n):
            m = up[i]
            while m:
                j = (m & -m).bit_length() - 1
                mat[i, j] = True
                m &= m - 1
        return mat

    def rec(k: int):
        if k == n:
            yield emit()
            return
        full = (1 << k) - 1
        downs = []
        for d_set in range(1 << k):
            if d_set & req_down[k] != req_down[k]:
                continue
            m = d_set
            closed = True
            while m:
                d = (m & -m).bit_length() - 1
                if low[d] & ~d_set:
                    closed = False
                    break
                m &= m - 1
            if closed:
                downs.append(d_set)
        ups = []
        for u_set in range(1 << k):
            if u_set & req_up[k] != req_up[k]:
                continue
            m = u_set
            closed = True
            while m:
                u = (m & -m).bit_length() - 1
                if up[u] & ~u_set:
                    closed = False
                    break
                m &= m - 1
            if closed:
                ups.append(u_set)
        bit_k = 1 << k
        for d_set in downs:
            above_all = full
            m = d_set
            while m:
                d = (m & -m).bit_length() - 1
                above_all &= up[d] & ~(1 << d)
                m &= m - 1
            for u_set in ups:
                if u_set & d_set or u_set & ~above_all:
                    continue
                low[k] = d_set | bit_k
                up[k] = u_set | bit_k
                m = d_set
                while m:
                    d = (m & -m).bit_length() - 1
                    up[d] |= bit_k
                    m &= m - 1
                m = u_set
                while m:
                    u = (m & -m).bit_length() - 1
                    low[u] |= bit_k
                    m &= m - 1
                yield from rec(k + 1)
                m = d_set
                while m:
                    d = (m & -m).bit_length() - 1
                    up[d] &= ~bit_k
                    m &= m - 1
                m = u_set
                while m:
                    u = (m & -m).bit_length() - 1
                    low[u] &= ~bit_k
                    m &= m - 1
        low[k] = 0
        up[k] = 0

    yield from rec(0)


def count_posets_backtracking(n: int) -> int:
    """Count labeled posets by deciding ordered pairs one at a time.

    Independent of enumerate_posets: pairs are switched in or out with
    incremental transitive propagation and antisymmetry pruning, and the
    leaves of the decision tree are exactly the posets.  Used as the
    second of the two enumeration strategies that must agree.
    """
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    state = [[0] * n for _ in range(n)]  # 0 undecided, 1 in, -1 out
    for i in range(n):
        state[i][i] = 1

    def insert(i: int, j: int, trail: list[tuple[int, int]]) -> bool:
        stack = [(i, j)]
        while stack:
            a, b = stack.pop()
            if state[a][b] == 1:
                continue
            if state[a][b] == -1 or state[b][a] == 1:
                return False
            state[a][b] = 1
            trail.append((a, b))
            for c in range(n):
                if state[c][a] == 1 and state[c][b] != 1:
                    stack.append((c, b))
                if state[b][c] == 1 and state[a][c] != 1:
                    stack.append((a, c))
        return True

    count = 0

    def rec(idx: int):
        nonlocal count
        while idx < len(pairs) and state[pairs[idx][0]][pairs[idx][1]] != 0:
            idx += 1
        if idx == len(pairs):
            count += 1
            return
        i, j = pairs[idx]
        state[i][j] = -1
        rec(idx + 1)
        state[i][j] = 0
        trail: list[tuple[int, int]] = []
        if insert(i, j, trail):
            rec(idx + 1)
        for a, b in trail:
            state[a][b] = 0

    rec(0)
    return count


def _stacked_tables(rels: np.ndarray):
    """Join/meet tables for a whole stack of posets at once.

    rels has shape (m, n, n).  Returns (join, meet, ok) where ok flags the
    posets in which every pair has both bounds.
    """
    m, n, _ = rels.shape
    down = rels.sum(axis=1)
    upc = rels.sum(axis=2)
    join = np.full((m, n, n), -1, dtype=np.int64)
    meet = np.full((m, n, n), -1, dtype=np.int64)
    ok = np.ones(m, dtype=bool)
    big = n + 1
    rows = np.arange(m)
    for x in range(n):
        for y in range(x, n):
            ub = rels[:, x, :] & rels[:, y, :]
            masked = np.where(ub, down, big)
            cand = masked.argmin(axis=1)
            good = ub.any(axis=1) & ~((ub & ~rels[rows, cand, :]).any(axis=1))
            join[good, x, y] = cand[good]
            join[good, y, x] = cand[good]
            ok &= good
            lb = rels[:, :, x] & rels[:, :, y]
            masked = np.where(lb, upc, big)
            cand = masked.argmin(axis=1)
            good = lb.any(axis=1) & ~((lb & ~rels[rows, :, cand]).any(axis=1))
            meet[good, x, y] = cand[good]
            meet[good, y, x] = cand[good]
            ok &= good
    return join, meet, ok


@functools.lru_cache(maxsize=None)
def _lattice_stack(n: int):
    """All labeled lattices on n elements with their join/meet tables."""
    rels = np.stack(list(enumerate_posets(n)))
    join, meet, ok = _stacked_tables(rels)
    return rels[ok].copy(), join[ok].copy(), meet[ok].copy()


def _endo_mask(f, join: np.ndarray, meet: np.ndarray) -> np.ndarray:
    fimg = np.fromiter(as_table(f).image, dtype=np.int64)
    gathered = join[:, fimg[:, None], fimg[None, :]]
    ok = (fimg[join] == gathered).all(axis=(1, 2))
    gathered = meet[:, fimg[:, None], fimg[None, :]]
    ok &= (fimg[meet] == gathered).all(axis=(1, 2))
    return ok


def oracle_decide(f) -> tuple[bool, PartialOrder | None]:
    """Scan every lattice on the universe for one where f is an endomorphism."""
    table = as_table(f)
    if table.n > MAX_N:
        raise ValueError(f"oracle supports up to {MAX_N} elements, got {table.n}")
    rels, join, meet = _lattice_stack(table.n)
    mask = _endo_mask(table, join, meet)
    if not mask.any():
        return False, None
    idx = int(np.argmax(mask))
    return True, PartialOrder(rels[idx])


def oracle_witnesses(f):
    """Yield every lattice on which f is an endomorphism."""
    table = as_table(f)
    if table.n > MAX_N:
        raise ValueError(f"oracle supports up to {MAX_N} elements, got {table.n}")
    rels, join, meet = _lattice_stack(table.n)
    mask = _endo_mask(table, join, meet)
    for idx in np.nonzero(mask)[0]:
        yield PartialOrder(rels[idx])


def oracle_decide_with_base(f, base) -> tuple[bool, PartialOrder | None]:
    """Brute-force search restricted to lattices containing a base order."""
    table = as_table(f)
    if table.n > MAX_N:
        raise ValueError(f"oracle supports up to {MAX_N} elements, got {table.n}")
    rels = list(enumerate_posets(table.n, base=base))
    if not rels:
        return False, None
    stack = np.stack(rels)
    join, meet, ok = _stacked_tables(stack)
    if not ok.any():
        return False, None
    mask = ok & _endo_mask(table, join, meet)
    if not mask.any():
        return False, None
    idx = int(np.argmax(mask))
    return True, PartialOrder(stack[idx])


@functools.lru_cache(maxsize=None)
def _distributive_mask(n: int) -> np.ndarray:
    rels, join, meet = _lattice_stack(n)
    m = len(rels)
    ok = np.ones(m, dtype=bool)
    rows = np.arange(m)
    for x in range(n):
        mx = meet[:, x, :]
        lhs = mx[rows[:, None, None], join]
        rhs = join[rows[:, None, None], mx[:, :, None], mx[:, None, :]]
        ok &= (lhs == rhs).all(axis=(1, 2))
    return ok


def distributive_exists(f) -> bool:
    """True iff some distributive lattice makes f an endomorphism."""
    table = as_table(f)
    if table.n > MAX_N:
        raise ValueError(f"oracle supports up to {MAX_N} elements, got {table.n}")
    _, join, meet = _lattice_stack(table.n)
    mask = _endo_mask(table, join, meet) & _distributive_mask(table.n)
    return bool(mask.any())


@dataclass
class SweepReport:
    """Tallies of a decide-vs-oracle sweep; every failure list must stay empty."""

    n: int
    total_maps: int = 0
    decide_true: int = 0
    oracle_true: int = 0
    mismatches: list[tuple[int, ...]] = field(default_factory=list)
    construct_failures: list[tuple[int, ...]] = field(default_factory=list)
    prohibited_violations: list[tuple[int, ...]] = field(default_factory=list)
    sampled: bool = False

    @property
    def ok(self) -> bool:
        return not (self.mismatches or self.construct_failures or self.prohibited_violations)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "total_maps": self.total_maps,
            "decide_true": self.decide_true,
            "oracle_true": self.oracle_true,
            "mismatches": [list(m) for m in self.mismatches],
            "construct_failures": [list(m) for m in self.construct_failures],
            "prohibited_violations": [list(m) for m in self.prohibited_violations],
            "sampled": self.sampled,
            "ok": self.ok,
        }


def _map_iter(n: int, sample: int | None, seed: int):
    if sample is None:
        yield from itertools.product(range(n), repeat=n)
        return
    rng = np.random.default_rng(seed)
    for row in rng.integers(0, n, size=(sample, n)):
        yield tuple(int(v) for v in row)


def sweep_compare(n: int, sample: int | None = None, seed: int = 2024) -> SweepReport:
    """Compare decide against the oracle on every map (or a fixed sample).

    For each decide-true map the constructive builder also runs and its
    certificate plus the prohibited-pair incomparability of both the
    constructed order and the oracle witness are checked.
    """
    report = SweepReport(n=n, sampled=sample is not None)
    for image in _map_iter(n, sample, seed):
        report.total_maps += 1
        table = as_table(image)
        analysis = components(table)
        decision = decide(table, analysis=analysis)
        exists_oracle, witness = oracle_decide(table)
        if decision.exists:
            report.decide_true += 1
        if exists_oracle:
            report.oracle_true += 1
        if decision.exists != exists_oracle:
            report.mismatches.append(image)
            continue
        if witness is not None and prohibited_violations(table, witness.rel, analysis=analysis):
            report.prohibited_violations.append(image)
        if decision.exists:
            try:
                result = construct(table)
            except VerificationError:
                report.construct_failures.append(image)
                continue
            if prohibited_violations(table, result.order.rel, analysis=analysis):
                report.prohibited_violations.append(image)
    return report


@dataclass
class ConstructSweepReport:
    """Tallies of a full construct sweep; every failure list must stay empty."""

    n: int
    total_maps: int = 0
    decide_true: int = 0
    chain_maps: int = 0
    glued_maps: int = 0
    construct_failures: list[tuple[int, ...]] = field(default_factory=list)
    chain_violations: list[tuple[int, ...]] = field(default_factory=list)
    prohibited_violations: list[tuple[int, ...]] = field(default_factory=list)
    cycle_extreme_violations: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.construct_failures or self.chain_violations
                    or self.prohibited_violations or self.cycle_extreme_violations)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "total_maps": self.total_maps,
            "decide_true": self.decide_true,
            "chain_maps": self.chain_maps,
            "glued_maps": self.glued_maps,
            "construct_failures": [list(m) for m in self.construct_failures],
            "chain_violations": [list(m) for m in self.chain_violations],
            "prohibited_violations": [list(m) for m in self.prohibited_violations],
            "cycle_extreme_violations": [list(m) for m in self.cycle_extreme_violations],
            "ok": self.ok,
        }


def construct_sweep(n: int) -> ConstructSweepReport:
    """Run the constructive builder on every decide-true map of size n.

    Checks, per map: the full certificate (construct already fails hard on
    it), prohibited pairs staying incomparable, chain outputs being total,
    monotone, and distributive, and the cycle folds hitting the hubs.
    """
    report = ConstructSweepReport(n=n)
    for image in itertools.product(range(n), repeat=n):
        report.total_maps += 1
        table = as_table(image)
        analysis = components(table)
        decision = decide(table, analysis=analysis)
        if not decision.exists:
            continue
        report.decide_true += 1
        try:
            result = construct(table)
        except VerificationError:
            report.construct_failures.append(image)
            continue
        rel = result.order.rel
        if prohibited_violations(table, rel, analysis=analysis):
            report.prohibited_violations.append(image)
        if result.mode == "chain":
            report.chain_maps += 1
            total = bool((rel | rel.T).all())
            mono, _ = is_monotone(table, rel)
            if not (total and mono and is_distributive(result.certificate)):
                report.chain_violations.append(image)
        else:
            report.glued_maps += 1
            if cycle_extreme_violations(table, result, analysis=analysis):
                report.cycle_extreme_violations.append(image)
    return report
