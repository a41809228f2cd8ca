"""Dense-matrix partial orders: axioms, closure, bounds, lattice laws.

Orders live as n x n boolean matrices with rel[x, y] meaning x <= y.  At
the universe sizes this library targets the dense representation keeps
every check a handful of vectorised scans, and the O(n^3) law checks stay
cheap enough to run on every constructed order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .funcgraph import as_table


def _as_rel(order) -> np.ndarray:
    if isinstance(order, PartialOrder):
        return order.rel
    rel = np.asarray(order, dtype=bool)
    if rel.ndim != 2 or rel.shape[0] != rel.shape[1]:
        raise ValueError(f"relation must be a square matrix, got shape {rel.shape}")
    return rel


def _compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.uint8) @ b.astype(np.uint8)) > 0


def check_partial_order(order) -> tuple[bool, tuple | None]:
    """Check reflexivity, antisymmetry, and transitivity.

    Returns (True, None) or (False, witness) where the witness names the
    failing axiom and the offending elements.
    """
    rel = _as_rel(order)
    n = len(rel)
    diag = np.diagonal(rel)
    if not diag.all():
        return False, ("reflexivity", (int(np.argmin(diag)),))
    sym = rel & rel.T & ~np.eye(n, dtype=bool)
    if sym.any():
        x, y = (int(v) for v in np.argwhere(sym)[0])
        return False, ("antisymmetry", (x, y))
    missing = _compose(rel, rel) & ~rel
    if missing.any():
        x, z = (int(v) for v in np.argwhere(missing)[0])
        y = int(np.argmax(rel[x] & rel[:, z]))
        return False, ("transitivity", (x, y, z))
    return True, None


def transitive_closure(order) -> np.ndarray:
    """Smallest transitive superset of the relation."""
    rel = _as_rel(order).copy()
    while True:
        nxt = rel | _compose(rel, rel)
        if np.array_equal(nxt, rel):
            return rel
        rel = nxt


@dataclass(frozen=True, eq=False)
class PartialOrder:
    """An immutable verified partial order on {0, ..., n-1}."""

    rel: np.ndarray

    def __post_init__(self):
        rel = np.array(self.rel, dtype=bool)
        ok, witness = check_partial_order(rel)
        if not ok:
            raise ValueError(f"not a partial order: {witness[0]} fails at {witness[1]}")
        rel.setflags(write=False)
        object.__setattr__(self, "rel", rel)

    @property
    def n(self) -> int:
        return len(self.rel)

    def leq(self, x: int, y: int) -> bool:
        return bool(self.rel[x, y])

    def covers(self) -> list[tuple[int, int]]:
        return hasse_covers(self.rel)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PartialOrder):
            return NotImplemented
        return np.array_equal(self.rel, other.rel)

    @classmethod
    def identity(cls, n: int) -> "PartialOrder":
        return cls(np.eye(n, dtype=bool))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "PartialOrder":
        """Reflexive-transitive closure of the given x <= y pairs."""
        rel = np.eye(n, dtype=bool)
        for x, y in pairs:
            if not (0 <= x < n and 0 <= y < n):
                raise ValueError(f"pair ({x}, {y}) is out of range for n = {n}")
            rel[x, y] = True
        return cls(transitive_closure(rel))

    @classmethod
    def from_chain(cls, sequence: Sequence[int]) -> "PartialOrder":
        """Total order listing the universe from least to greatest."""
        seq = [int(v) for v in sequence]
        n = len(seq)
        if sorted(seq) != list(range(n)):
            raise ValueError("chain must list every element exactly once")
        rel = np.eye(n, dtype=bool)
        for i, a in enumerate(seq):
            rel[a, seq[i:]] = True
        return cls(rel)


def linear_sequence(order) -> list[int]:
    """Elements of a total order listed from least to greatest."""
    rel = _as_rel(order)
    if not (rel | rel.T).all():
        raise ValueError("order is not total")
    return [int(i) for i in np.argsort(-rel.sum(axis=1), kind="stable")]


def is_monotone(f, order) -> tuple[bool, tuple[int, int] | None]:
    """Check x <= y implies f(x) <= f(y); returns a witness pair on failure."""
    table = as_table(f)
    rel = _as_rel(order)
    if table.n != len(rel):
        raise ValueError(f"map on {table.n} elements vs order on {len(rel)}")
    fimg = np.fromiter(table.image, dtype=np.int64, count=table.n)
    bad = rel & ~rel[np.ix_(fimg, fimg)]
    if bad.any():
        x, y = (int(v) for v in np.argwhere(bad)[0])
        return False, (x, y)
    return True, None


@dataclass
class LatticeCertificate:
    """Join/meet tables plus pass/fail flags for lattice and map laws.

    Table entries are element indices; -1 marks a pair without the bound
    (only possible when is_lattice is False).  law_report holds one entry
    per checked law; witnesses holds the first offending tuple for each
    failed check.
    """

    join: np.ndarray
    meet: np.ndarray
    is_lattice: bool
    is_endomorphism: bool = False
    law_report: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, tuple] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.join)

    def order_matrix(self) -> np.ndarray:
        """Recover x <= y as join(x, y) == y."""
        if not self.is_lattice:
            raise ValueError("order recovery needs a lattice certificate")
        return self.join == np.arange(self.n)[None, :]

    def to_json_dict(self, include_tables: bool = False) -> dict:
        out = {
            "is_lattice": bool(self.is_lattice),
            "is_endomorphism": bool(self.is_endomorphism),
            "law_report": {k: bool(v) for k, v in sorted(self.law_report.items())},
            "witnesses": {k: [int(v) for v in w] for k, w in sorted(self.witnesses.items())},
        }
        if include_tables:
            out["join"] = self.join.astype(int).tolist()
            out["meet"] = self.meet.astype(int).tolist()
        return out


def _bound_table(rel: np.ndarray) -> np.ndarray:
    """Least-upper-bound table for rel; -1 where no unique bound exists.

    For each pair the common upper bounds are intersected row-wise; if a
    least one exists it is the member with the smallest down-set, which a
    single containment scan then confirms.
    """
    n = len(rel)
    down_size = rel.sum(axis=0)
    big = n + 1
    table = np.full((n, n), -1, dtype=np.int64)
    for x in range(n):
        ub = rel[x] & rel  # row y: common upper bounds of (x, y)
        nonempty = ub.any(axis=1)
        masked = np.where(ub, down_size[None, :], big)
        cand = masked.argmin(axis=1)
        least = nonempty & ~((ub & ~rel[cand]).any(axis=1))
        table[x, least] = cand[least]
    return table


def _table_associative(table: np.ndarray) -> tuple[bool, tuple | None]:
    n = len(table)
    for x in range(n):
        lhs = table[table[x], :]
        rhs = table[x, table]
        if not np.array_equal(lhs, rhs):
            y, z = (int(v) for v in np.argwhere(lhs != rhs)[0])
            return False, (x, y, z)
    return True, None


def lattice_tables(order) -> LatticeCertificate:
    """Compute join/meet tables and check the algebraic lattice laws.

    The returned certificate carries is_lattice plus commutativity,
    associativity, and absorption verdicts; the endomorphism fields are
    left for certify / is_endomorphism.
    """
    rel = _as_rel(order)
    ok, witness = check_partial_order(rel)
    if not ok:
        raise ValueError(f"not a partial order: {witness[0]} fails at {witness[1]}")
    join = _bound_table(rel)
    meet = _bound_table(rel.T)
    cert = LatticeCertificate(join=join, meet=meet, is_lattice=True)
    for name, table in (("join", join), ("meet", meet)):
        holes = table < 0
        if holes.any():
            cert.is_lattice = False
            x, y = (int(v) for v in np.argwhere(holes)[0])
            cert.witnesses.setdefault(f"lattice-{name}", (x, y))
    if not cert.is_lattice:
        return cert

    checks: dict[str, tuple[bool, tuple | None]] = {}
    comm = np.array_equal(join, join.T) and np.array_equal(meet, meet.T)
    checks["commutativity"] = (comm, None)
    jok, jwit = _table_associative(join)
    mok, mwit = _table_associative(meet)
    checks["associativity"] = (jok and mok, jwit if not jok else mwit)
    cols = np.arange(len(rel))[None, :]
    ab1 = meet[join, cols] == cols
    ab2 = join[meet, cols] == cols
    abs_ok = bool(ab1.all() and ab2.all())
    abs_wit = None
    if not abs_ok:
        bad = ~(ab1 & ab2)
        abs_wit = tuple(int(v) for v in np.argwhere(bad)[0])
    checks["absorption"] = (abs_ok, abs_wit)
    for name, (passed, wit) in checks.items():
        cert.law_report[name] = passed
        if not passed and wit is not None:
            cert.witnesses[name] = wit
    return cert


def _endo_law(table: np.ndarray, fimg: np.ndarray) -> tuple[bool, tuple[int, int] | None]:
    lhs = fimg[table]
    rhs = table[np.ix_(fimg, fimg)]
    bad = lhs != rhs
    if bad.any():
        x, y = (int(v) for v in np.argwhere(bad)[0])
        return False, (x, y)
    return True, None


def is_endomorphism(f, cert: LatticeCertificate) -> tuple[bool, tuple | None]:
    """Check f(x v y) = f(x) v f(y) and dually for meets, on a lattice.

    The witness names the failing law and the offending pair.
    """
    if not cert.is_lattice:
        raise ValueError("endomorphism check needs a lattice certificate")
    table = as_table(f)
    if table.n != cert.n:
        raise ValueError(f"map on {table.n} elements vs lattice on {cert.n}")
    fimg = np.fromiter(table.image, dtype=np.int64, count=table.n)
    jok, jwit = _endo_law(cert.join, fimg)
    if not jok:
        return False, ("endomorphism-join", jwit)
    mok, mwit = _endo_law(cert.meet, fimg)
    if not mok:
        return False, ("endomorphism-meet", mwit)
    return True, None


def certify(f, order) -> LatticeCertificate:
    """Full certificate: lattice laws plus both endomorphism laws for f."""
    cert = lattice_tables(order)
    if not cert.is_lattice:
        return cert
    table = as_table(f)
    fimg = np.fromiter(table.image, dtype=np.int64, count=table.n)
    jok, jwit = _endo_law(cert.join, fimg)
    mok, mwit = _endo_law(cert.meet, fimg)
    cert.law_report["endomorphism-join"] = jok
    cert.law_report["endomorphism-meet"] = mok
    if not jok:
        cert.witnesses["endomorphism-join"] = jwit
    if not mok:
        cert.witnesses["endomorphism-meet"] = mwit
    cert.is_endomorphism = jok and mok
    return cert


def is_distributive(cert: LatticeCertificate) -> bool:
    """x ^ (y v z) == (x ^ y) v (x ^ z) over all triples."""
    if not cert.is_lattice:
        raise ValueError("distributivity check needs a lattice certificate")
    join, meet = cert.join, cert.meet
    for x in range(cert.n):
        mx = meet[x]
        lhs = mx[join]
        rhs = join[np.ix_(mx, mx)]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def is_modular(cert: LatticeCertificate) -> bool:
    """x <= z implies x v (y ^ z) == (x v y) ^ z over all triples."""
    if not cert.is_lattice:
        raise ValueError("modularity check needs a lattice certificate")
    join, meet = cert.join, cert.meet
    rel = cert.order_matrix()
    for x in range(cert.n):
        lhs = join[x][meet]  # [y, z] -> x v (y ^ z)
        rhs = meet[join[x]]  # [y, z] -> (x v y) ^ z
        applicable = rel[x][None, :]  # columns z with x <= z
        if (applicable & (lhs != rhs)).any():
            return False
    return True


def hasse_covers(order) -> list[tuple[int, int]]:
    """Cover pairs (x, y): x < y with nothing strictly between."""
    rel = _as_rel(order)
    ok, witness = check_partial_order(rel)
    if not ok:
        raise ValueError(f"not a partial order: {witness[0]} fails at {witness[1]}")
    strict = rel & ~np.eye(len(rel), dtype=bool)
    cov = strict & ~_compose(strict, strict)
    return [(int(x), int(y)) for x, y in np.argwhere(cov)]
