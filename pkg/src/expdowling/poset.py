"""Finite graded posets from cover relations.

Elements are dense integer indices 0..n-1; the semantic objects (partitions,
enriched partitions) live in `structures` and map to indices there.  The order
closure is stored as one bitmask row per element, which keeps Mobius-function
sweeps and interval extraction cheap even for posets with thousands of
elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence


class PosetError(ValueError):
    pass


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Poset:
    n: int
    covers_up: tuple            # covers_up[x] = sorted tuple of y with x <| y
    covers_down: tuple
    up_rows: tuple              # up_rows[x] bitmask of y >= x (reflexive)
    down_rows: tuple            # down_rows[y] bitmask of x <= y (reflexive)
    rank: Optional[tuple]       # present iff the poset is graded
    minimals: tuple
    maximals: tuple

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up_rows[x] >> y & 1)

    def interval(self, x: int, y: int) -> int:
        """Bitmask of elements z with x <= z <= y."""
        if not self.leq(x, y):
            raise PosetError(f"{x} is not <= {y}")
        return self.up_rows[x] & self.down_rows[y]

    @property
    def bottom(self) -> int:
        if len(self.minimals) != 1:
            raise PosetError("poset has no unique minimal element")
        return self.minimals[0]

    @property
    def top(self) -> int:
        if len(self.maximals) != 1:
            raise PosetError("poset has no unique maximal element")
        return self.maximals[0]

    def to_json_dict(self) -> dict:
        covers = sorted((x, y) for x in range(self.n) for y in self.covers_up[x])
        return {
            "n": self.n,
            "covers": [list(c) for c in covers],
            "ranks": list(self.rank) if self.rank is not None else None,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Poset":
        return from_covers(data["n"], [tuple(c) for c in data["covers"]])


def from_covers(n: int, covers: Iterable[tuple]) -> Poset:
    """Build a poset from its cover relations, computing closure and rank.

    Raises on cycles and on cover pairs referencing invalid indices.
    """
    up_adj = [set() for _ in range(n)]
    down_adj = [set() for _ in range(n)]
    for x, y in covers:
        if not (0 <= x < n and 0 <= y < n) or x == y:
            raise PosetError(f"invalid cover pair ({x}, {y}) for n={n}")
        up_adj[x].add(y)
        down_adj[y].add(x)

    # Kahn topological sort; leftover in-degree means a cycle.
    indeg = [len(down_adj[x]) for x in range(n)]
    queue = [x for x in range(n) if indeg[x] == 0]
    topo = []
    while queue:
        x = queue.pop()
        topo.append(x)
        for y in up_adj[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    if len(topo) != n:
        raise PosetError("cover relation contains a cycle")

    up_rows = [0] * n
    for x in reversed(topo):
        row = 1 << x
        for y in up_adj[x]:
            row |= up_rows[y]
        up_rows[x] = row
    down_rows = [0] * n
    for y in topo:
        row = 1 << y
        for x in down_adj[y]:
            row |= down_rows[x]
        down_rows[y] = row

    # Longest-path rank from the minimal elements; graded iff every cover
    # steps the rank by exactly one.
    rank = [0] * n
    for x in topo:
        if down_adj[x]:
            rank[x] = max(rank[p] + 1 for p in down_adj[x])
    graded = all(rank[y] == rank[x] + 1 for x in range(n) for y in up_adj[x])

    return Poset(
        n=n,
        covers_up=tuple(tuple(sorted(up_adj[x])) for x in range(n)),
        covers_down=tuple(tuple(sorted(down_adj[x])) for x in range(n)),
        up_rows=tuple(up_rows),
        down_rows=tuple(down_rows),
        rank=tuple(rank) if graded else None,
        minimals=tuple(x for x in range(n) if not down_adj[x]),
        maximals=tuple(x for x in range(n) if not up_adj[x]),
    )


def mobius_table(P: Poset, x: int) -> dict:
    """mu(x, y) for every y >= x, by the bottom-up recursion."""
    table = {}
    order = sorted(_bits(P.up_rows[x]), key=lambda y: P.up_rows[y].bit_count(), reverse=True)
    # Sorting by up-set size gives a linear extension of [x, ...) restricted
    # upward, so strictly smaller elements are always filled in first.
    for y in order:
        if y == x:
            table[y] = 1
            continue
        below = P.up_rows[x] & P.down_rows[y] & ~(1 << y)
        table[y] = -sum(table[z] for z in _bits(below))
    return table


def mobius_table_to_top(P: Poset, y: int) -> dict:
    """mu(x, y) for every x <= y, by the top-down recursion."""
    table = {}
    order = sorted(_bits(P.down_rows[y]), key=lambda x: P.down_rows[x].bit_count(), reverse=True)
    for x in order:
        if x == y:
            table[x] = 1
            continue
        above = P.down_rows[y] & P.up_rows[x] & ~(1 << x)
        table[x] = -sum(table[z] for z in _bits(above))
    return table


def mobius(P: Poset, x: int, y: int) -> int:
    if not P.leq(x, y):
        raise PosetError(f"{x} is not <= {y}")
    return mobius_table(P, x)[y]


def verify_mobius_identity(P: Poset, x: int) -> bool:
    """Defining identity: sum of mu(x, z) over x <= z <= y vanishes for y > x."""
    table = mobius_table(P, x)
    for y in _bits(P.up_rows[x] & ~(1 << x)):
        total = sum(table[z] for z in _bits(P.up_rows[x] & P.down_rows[y]))
        if total != 0:
            return False
    return True


def maximal_chains(P: Poset, x: int, y: int) -> list:
    """All saturated chains x = z_0 <| ... <| z_k = y, in deterministic order."""
    if not P.leq(x, y):
        raise PosetError(f"{x} is not <= {y}")
    down_y = P.down_rows[y]
    out = []
    stack = [x]

    def walk(z):
        if z == y:
            out.append(tuple(stack))
            return
        for w in P.covers_up[z]:
            if down_y >> w & 1:
                stack.append(w)
                walk(w)
                stack.pop()

    walk(x)
    return out


@dataclass
class ChainAxiomReport:
    expected_length: int
    chain_lengths_ok: bool
    has_unique_maximal: bool
    minimal_count: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.chain_lengths_ok and self.has_unique_maximal


def check_chain_axioms(P: Poset, expected_length: int) -> ChainAxiomReport:
    """Check that all bottom-to-top maximal chains have the expected element
    count and that a unique maximal element exists; also reports the number of
    minimal elements."""
    failures = []
    unique_max = len(P.maximals) == 1
    if not unique_max:
        failures.append(f"{len(P.maximals)} maximal elements")
    lengths_ok = True
    if unique_max and len(P.minimals) == 1:
        chains = maximal_chains(P, P.bottom, P.top)
        bad = {len(c) for c in chains if len(c) != expected_length}
        if bad:
            lengths_ok = False
            failures.append(f"chain element counts {sorted(bad)} != {expected_length}")
    elif unique_max:
        top = P.top
        for m in P.minimals:
            bad = {len(c) for c in maximal_chains(P, m, top) if len(c) != expected_length}
            if bad:
                lengths_ok = False
                failures.append(
                    f"chains from minimal {m} have element counts {sorted(bad)}"
                )
    return ChainAxiomReport(
        expected_length=expected_length,
        chain_lengths_ok=lengths_ok,
        has_unique_maximal=unique_max,
        minimal_count=len(P.minimals),
        failures=failures,
    )


def is_lattice(P: Poset) -> tuple[bool, str]:
    """Whether every pair of elements has a join and a meet."""
    if len(P.minimals) != 1 or len(P.maximals) != 1:
        return False, "missing unique bottom or top"
    for x in range(P.n):
        for y in range(x + 1, P.n):
            uppers = P.up_rows[x] & P.up_rows[y]
            if not any((uppers & ~P.up_rows[u]) == 0 for u in _bits(uppers)):
                return False, f"no join for {x}, {y}"
            lowers = P.down_rows[x] & P.down_rows[y]
            if not any((lowers & ~P.down_rows[u]) == 0 for u in _bits(lowers)):
                return False, f"no meet for {x}, {y}"
    return True, "ok"
