"""Level Schreier graphs of tree groups, spanning walks, conjugate families.

The Schreier graph at level m has all 2^m binary strings as vertices and
labeled edges s -> g_i(s), s -> g_i^-1(s) for each entry of a generating
tuple. When the graph is connected, a depth-first traversal of its
lexicographic spanning tree visits every vertex in a closed walk of
2*2^m - 2 labeled steps; the group elements read along that walk
conjugate a rigid-stabilizer witness into every vertex's rigid
stabilizer, one vertex at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .words import TreeWord, identity, level_strings


class SchreierError(ValueError):
    pass


Label = tuple[int, int]  # (1-based generator index, sign)


@dataclass
class SchreierGraph:
    level: int
    generators: tuple[TreeWord, ...]
    vertices: list[str]
    # out[v][l] = target vertex of the l-th label at v; labels enumerate
    # (gen 1, +), (gen 1, -), (gen 2, +), ... so every vertex has 2n out-edges.
    out: list[list[int]]
    connected: bool

    @property
    def labels(self) -> list[Label]:
        return [(i + 1, s) for i in range(len(self.generators)) for s in (1, -1)]

    def index_of(self, s: str) -> int:
        v = int(s, 2) if s else 0
        if not 0 <= v < len(self.vertices) or self.vertices[v] != s:
            raise SchreierError(f"{s!r} is not a level-{self.level} vertex")
        return v

    def to_dot(self) -> str:
        lines = ["digraph schreier {"]
        lines.append(f'  label="level {self.level}";')
        for v, s in enumerate(self.vertices):
            lines.append(f'  v{v} [label="{s}"];')
        for v in range(len(self.vertices)):
            for li, (gi, sign) in enumerate(self.labels):
                if sign < 0:
                    continue  # one arc per generator, inverses implicit
                lines.append(f'  v{v} -> v{self.out[v][li]} [label="g{gi}"];')
        lines.append("}")
        return "\n".join(lines)


def schreier(generators: tuple[TreeWord, ...], m: int, max_level: int = 14) -> SchreierGraph:
    """Labeled action graph on all level-m strings."""
    if m < 0:
        raise SchreierError("level must be nonnegative")
    if m > max_level:
        raise SchreierError(f"level {m} above configured maximum {max_level}")
    vertices = level_strings(m)
    index = {s: v for v, s in enumerate(vertices)}
    # Columns follow label order: (g1, +), (g1, -), (g2, +), ...
    out: list[list[int]] = [[] for _ in vertices]
    for gen in generators:
        inv = gen.inverse()
        for g in (gen, inv):
            for v, s in enumerate(vertices):
                out[v].append(index[g.act(s)])

    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in out[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return SchreierGraph(
        level=m,
        generators=tuple(generators),
        vertices=vertices,
        out=out,
        connected=len(seen) == len(vertices),
    )


@dataclass
class SpanningWalk:
    """Preorder visit of a lexicographic depth-first spanning tree.

    h_words[i] is the walk element from the start to visits[i], so
    act(h_words[i], start) == visits[i]; step_labels[i] are the labels
    traversed between visits i and i+1 (backtracking included), and the
    total label count is 2 * 2^m - 2.
    """

    start: str
    visits: list[str]
    h_words: list[TreeWord]
    step_labels: list[list[Label]]
    step_words: list[TreeWord] = field(default_factory=list)

    @property
    def total_steps(self) -> int:
        return sum(len(labels) for labels in self.step_labels)


def spanning_walk(graph: SchreierGraph, start: str) -> SpanningWalk:
    """Depth-first traversal from start, children in lexicographic order."""
    if not graph.connected:
        raise SchreierError("graph is disconnected; no spanning walk")
    if not graph.generators:
        raise SchreierError("need at least one generator")
    start_idx = graph.index_of(start)
    gens = graph.generators
    omega = gens[0].omega
    labels = graph.labels

    def word_of(label: Label) -> TreeWord:
        gi, sign = label
        g = gens[gi - 1]
        return g if sign > 0 else g.inverse()

    def targets(v: int):
        # Children scanned in lexicographic order of the target string,
        # ties broken by label order.
        return iter(
            sorted(
                ((graph.vertices[w], li, w) for li, w in enumerate(graph.out[v])),
                key=lambda t: (t[0], t[1]),
            )
        )

    visited = {start_idx}
    visits = [graph.vertices[start_idx]]
    h_words = [identity(omega)]
    step_labels: list[list[Label]] = []
    pending: list[Label] = []
    current_h = identity(omega)
    # Frame: (entry label used to reach the vertex, iterator of its targets).
    stack: list[tuple[Label | None, object]] = [(None, targets(start_idx))]
    while stack:
        entry, it = stack[-1]
        descended = False
        for s, li, w in it:
            if w in visited:
                continue
            visited.add(w)
            label = labels[li]
            pending.append(label)
            current_h = word_of(label) * current_h
            step_labels.append(pending)
            pending = []
            visits.append(s)
            h_words.append(current_h)
            stack.append((label, targets(w)))
            descended = True
            break
        if descended:
            continue
        stack.pop()
        if entry is not None:
            back = (entry[0], -entry[1])
            pending.append(back)
            current_h = word_of(back) * current_h

    walk = SpanningWalk(
        start=graph.vertices[start_idx],
        visits=visits,
        h_words=h_words,
        step_labels=step_labels,
    )
    walk.step_words = [_labels_to_word(gens, ls, omega) for ls in walk.step_labels]
    return walk


def _labels_to_word(gens, labels: list[Label], omega) -> TreeWord:
    # Walk steps left-multiply, so the step word is the reversed product.
    w = identity(omega)
    for gi, sign in labels:
        g = gens[gi - 1]
        w = (g if sign > 0 else g.inverse()) * w
    return w


def conjugate_family(g: TreeWord, walk: SpanningWalk) -> list[TreeWord]:
    """Conjugates h_i g h_i^-1, one per visited vertex.

    Requires g to lie in the rigid stabilizer of the walk's start; each
    conjugate then lies in the rigid stabilizer of the matching visit.
    """
    if not g.in_rist(walk.start):
        raise SchreierError(f"witness is not in the rigid stabilizer of {walk.start!r}")
    return [g.conjugate_by(h) for h in walk.h_words]
