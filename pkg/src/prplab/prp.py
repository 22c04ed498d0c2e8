"""Nielsen moves, product replacement neighborhoods, balls and censuses.

Vertices are generating n-tuples; the moves R(i,j,s): g_j <- g_j * g_i^s
and L(i,j,s): g_j <- g_i^s * g_j give a 4n(n-1)-regular symmetric
multigraph. Breadth-first exploration deduplicates through backend
canonical keys, falling back to exact equality when a backend's keys are
fingerprints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Sequence

from .backends import GroupBackend


class PrpError(ValueError):
    pass


@dataclass(frozen=True)
class NielsenMove:
    """kind R multiplies entry j on the right by g_i^sign, L on the left.

    Indices are 1-based and distinct.
    """

    kind: str
    sign: int
    i: int
    j: int

    def __post_init__(self) -> None:
        if self.kind not in ("R", "L"):
            raise PrpError(f"move kind must be R or L, got {self.kind!r}")
        if self.sign not in (1, -1):
            raise PrpError("move sign must be +1 or -1")
        if self.i == self.j:
            raise PrpError("move indices must be distinct")
        if self.i < 1 or self.j < 1:
            raise PrpError("move indices are 1-based")

    def inverse(self) -> "NielsenMove":
        return NielsenMove(self.kind, -self.sign, self.i, self.j)

    def __str__(self) -> str:
        s = "+" if self.sign > 0 else "-"
        return f"{self.kind}{s}{self.i},{self.j}"

    @staticmethod
    def parse(text: str) -> "NielsenMove":
        if len(text) < 4 or text[0] not in "RL" or text[1] not in "+-":
            raise PrpError(f"malformed move {text!r}")
        i, j = text[2:].split(",")
        return NielsenMove(text[0], 1 if text[1] == "+" else -1, int(i), int(j))


def moves_for(n: int) -> list[NielsenMove]:
    """All 4n(n-1) moves on n-tuples, in a fixed deterministic order."""
    if n < 2:
        return []
    out = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            for kind in ("R", "L"):
                for sign in (1, -1):
                    out.append(NielsenMove(kind, sign, i, j))
    return out


def apply_move(backend: GroupBackend, entries: tuple, move: NielsenMove) -> tuple:
    """Apply one move; only entry j changes."""
    n = len(entries)
    if not (1 <= move.i <= n and 1 <= move.j <= n):
        raise PrpError(f"move {move} out of range for tuple of size {n}")
    gi = entries[move.i - 1]
    if move.sign < 0:
        gi = backend.invert(gi)
    gj = entries[move.j - 1]
    new = backend.multiply(gj, gi) if move.kind == "R" else backend.multiply(gi, gj)
    return entries[: move.j - 1] + (new,) + entries[move.j :]


def apply_moves(backend: GroupBackend, entries: tuple, moves: Sequence[NielsenMove]) -> tuple:
    for move in moves:
        entries = apply_move(backend, entries, move)
    return entries


def swap_invert_path(i: int, j: int) -> list[NielsenMove]:
    """Three moves sending (..., g_i, ..., g_j, ...) to (..., g_j^-1, ..., g_i, ...)."""
    if i == j:
        raise PrpError("indices must be distinct")
    return [
        NielsenMove("L", 1, i, j),
        NielsenMove("L", -1, j, i),
        NielsenMove("R", 1, i, j),
    ]


def neighbors(backend: GroupBackend, entries: tuple) -> list[tuple]:
    """All 4n(n-1) neighbor tuples, with multiplicity."""
    return [apply_move(backend, entries, m) for m in moves_for(len(entries))]


def neighbors_dedup(backend: GroupBackend, entries: tuple) -> list[tuple]:
    """Neighbor tuples with duplicates removed (loops kept once)."""
    seen = VisitedSet(backend)
    out = []
    for t in neighbors(backend, entries):
        if seen.add(t):
            out.append(t)
    return out


def append_trivial(backend: GroupBackend, entries: tuple, m: int) -> tuple:
    """Pad a tuple with m identity entries."""
    if m < 0:
        raise PrpError("m must be nonnegative")
    return entries + (backend.identity,) * m


def tuple_key(backend: GroupBackend, entries: tuple) -> Hashable:
    return tuple(backend.canonical_key(e) for e in entries)


class VisitedSet:
    """Set of tuples keyed by canonical keys.

    For backends with exact keys a plain dict suffices; for fingerprint
    keys each bucket keeps representatives and membership falls back to
    elementwise exact equality.
    """

    def __init__(self, backend: GroupBackend):
        self.backend = backend
        self.exact = backend.key_exact
        self.table: dict = {}
        self.count = 0

    def add(self, entries: tuple) -> bool:
        """Insert; True if the tuple was new."""
        key = tuple_key(self.backend, entries)
        if self.exact:
            if key in self.table:
                return False
            self.table[key] = None
            self.count += 1
            return True
        bucket = self.table.setdefault(key, [])
        for other in bucket:
            if all(self.backend.equals(x, y) for x, y in zip(entries, other)):
                return False
        bucket.append(entries)
        self.count += 1
        return True


@dataclass
class BallTable:
    """Cumulative ball sizes by radius around one tuple."""

    origin: tuple
    degree: int
    rows: list[tuple[int, int]] = field(default_factory=list)
    truncated: bool = False

    @property
    def complete_radius(self) -> int:
        return self.rows[-1][0] if self.rows else -1

    def count_at(self, radius: int) -> int:
        for r, c in self.rows:
            if r == radius:
                return c
        raise PrpError(f"radius {radius} not recorded (table complete to {self.complete_radius})")

    def csv_rows(self) -> list[str]:
        out = ["radius,ball_size"]
        out.extend(f"{r},{c}" for r, c in self.rows)
        return out


def ball(
    backend: GroupBackend,
    start: tuple,
    radius: int,
    budget: int = 5_000_000,
    collect_edges: bool = False,
) -> BallTable | tuple[BallTable, list[tuple[tuple, tuple]]]:
    """Exact BFS layer counts out to the radius or until the budget.

    The budget bounds stored vertices; when it fires the partially
    explored layer is dropped and the table is flagged truncated.
    Optionally collects the explored undirected edges for small dumps.
    """
    n = len(start)
    moves = moves_for(n)
    table = BallTable(origin=start, degree=len(moves))
    visited = VisitedSet(backend)
    visited.add(start)
    table.rows.append((0, 1))
    frontier = [start]
    edges: list[tuple[tuple, tuple]] = []
    for r in range(1, radius + 1):
        nxt = []
        for entries in frontier:
            for move in moves:
                neigh = apply_move(backend, entries, move)
                if collect_edges:
                    edges.append((entries, neigh))
                if visited.count >= budget:
                    table.truncated = True
                    return (table, edges) if collect_edges else table
                if visited.add(neigh):
                    nxt.append(neigh)
        frontier = nxt
        table.rows.append((r, visited.count))
        if not frontier:
            # saturated: every larger ball equals the component, exactly
            table.rows.extend((rr, visited.count) for rr in range(r + 1, radius + 1))
            break
    return (table, edges) if collect_edges else table


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.components = size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra
            self.components -= 1


@dataclass
class ComponentCensus:
    backend_name: str
    tuple_size: int
    vertex_count: int
    sizes: list[int]  # descending

    def summary(self) -> str:
        return f"{len(self.sizes)} components: {','.join(str(s) for s in self.sizes)}"


def components_finite(backend, n: int, max_tuples: int = 10_000_000) -> ComponentCensus:
    """Full component census of the move graph on generating n-tuples.

    The backend must enumerate its elements; the total candidate count
    backend.size() ** n must stay within max_tuples.
    """
    if not hasattr(backend, "elements"):
        raise PrpError("component census requires a finite, enumerable backend")
    total = backend.size() ** n
    if total > max_tuples:
        raise PrpError(f"candidate tuple count {total} exceeds bound {max_tuples}")
    elements = list(backend.elements())
    vertices = [
        t for t in itertools.product(elements, repeat=n) if backend.is_generating(t)
    ]
    index = {tuple_key(backend, t): i for i, t in enumerate(vertices)}
    uf = UnionFind(len(vertices))
    moves = moves_for(n)
    for i, t in enumerate(vertices):
        for move in moves:
            j = index[tuple_key(backend, apply_move(backend, t, move))]
            uf.union(i, j)
    sizes: dict[int, int] = {}
    for i in range(len(vertices)):
        root = uf.find(i)
        sizes[root] = sizes.get(root, 0) + 1
    return ComponentCensus(
        backend_name=backend.describe(),
        tuple_size=n,
        vertex_count=len(vertices),
        sizes=sorted(sizes.values(), reverse=True),
    )


def ball_to_dot(backend: GroupBackend, start: tuple, radius: int, max_vertices: int = 2000) -> str:
    """DOT dump of the explored ball; refuses above max_vertices."""
    table, edges = ball(backend, start, radius, budget=max_vertices + 1, collect_edges=True)
    if table.truncated or table.rows[-1][1] > max_vertices:
        raise PrpError(f"ball exceeds {max_vertices} vertices; refusing DOT dump")
    names: dict = {}

    def name_of(entries: tuple) -> str:
        key = tuple_key(backend, entries)
        if key not in names:
            names[key] = f"v{len(names)}"
        return names[key]

    lines = ["graph prp_ball {"]
    lines.append(f'  label="{backend.describe()} ball radius {radius}";')
    seen_pairs = set()
    for a, b in edges:
        na, nb = name_of(a), name_of(b)
        pair = (min(na, nb), max(na, nb))
        if pair in seen_pairs:
            continue
        seen_pairs.add(pair)
        lines.append(f"  {na} -- {nb};")
    lines.append("}")
    return "\n".join(lines)
