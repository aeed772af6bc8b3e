"""Edge-labelled digraphs attached to toric words, and their canonical forms."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import PreconditionError
from .weyl_words import Orientation, ToricWord

DEFAULT_SIZE_BOUND = 16


@dataclass(frozen=True)
class LabeledDigraph:
    vertices: frozenset
    edges: frozenset  # of (u, v, label): u -> v

    def __post_init__(self):
        vs = frozenset(self.vertices)
        es = frozenset(tuple(e) for e in self.edges)
        pairs = set()
        for u, v, lab in es:
            if u not in vs or v not in vs:
                raise PreconditionError(f"edge ({u},{v}) leaves the vertex set")
            if u == v:
                raise PreconditionError("loops are not allowed")
            if lab not in (1, 2, 3):
                raise PreconditionError(f"edge label {lab} not in 1..3")
            key = frozenset((u, v))
            if key in pairs:
                raise PreconditionError(f"more than one edge between {u} and {v}")
            pairs.add(key)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)

    @classmethod
    def build(cls, vertices: Iterable, edges: Iterable) -> "LabeledDigraph":
        return cls(frozenset(vertices), frozenset(tuple(e) for e in edges))

    def sorted_vertices(self) -> list:
        return sorted(self.vertices)

    def sorted_edges(self) -> list[tuple]:
        return sorted(self.edges)

    def _need(self, v) -> None:
        if v not in self.vertices:
            raise PreconditionError(f"vertex {v!r} not in digraph")

    def out_edges(self, v) -> list[tuple]:
        self._need(v)
        return sorted((b, lab) for a, b, lab in self.edges if a == v)

    def in_edges(self, v) -> list[tuple]:
        self._need(v)
        return sorted((a, lab) for a, b, lab in self.edges if b == v)

    def out_neighbors(self, v) -> list:
        return [b for b, _ in self.out_edges(v)]

    def in_neighbors(self, v) -> list:
        return [a for a, _ in self.in_edges(v)]

    def label(self, u, v) -> int:
        for a, b, lab in self.edges:
            if a == u and b == v:
                return lab
        return 0

    @property
    def max_label(self) -> int:
        return max((lab for _, _, lab in self.edges), default=0)

    def relabel(self, mapping: Mapping) -> "LabeledDigraph":
        return LabeledDigraph.build(
            (mapping[v] for v in self.vertices),
            ((mapping[a], mapping[b], lab) for a, b, lab in self.edges),
        )

    def induced(self, verts: Iterable) -> "LabeledDigraph":
        vs = frozenset(verts)
        return LabeledDigraph(vs, frozenset(e for e in self.edges if e[0] in vs and e[1] in vs))

    def to_json(self) -> dict:
        return {"vertices": self.sorted_vertices(), "edges": [list(e) for e in self.sorted_edges()]}

    def to_dot(self, name: str = "G") -> str:
        lines = [f"digraph {name} {{"]
        for v in self.sorted_vertices():
            lines.append(f'  "{v}";')
        for a, b, lab in self.sorted_edges():
            lines.append(f'  "{a}" -> "{b}" [label={lab}];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        return json.dumps(self.to_json())


def digraph_of_word(w: ToricWord) -> LabeledDigraph:
    """Later letters point at earlier bonded letters, labelled ``-c(later, earlier)``."""
    d = w.datum
    edges = []
    L = w.letters
    for j in range(len(L)):
        for k in range(j):
            c = d.c(L[j], L[k])
            if c:
                edges.append((L[j], L[k], -c))
    return LabeledDigraph.build(L, edges)


def digraph_of_orientation(o: Orientation) -> LabeledDigraph:
    d = o.datum
    return LabeledDigraph.build(range(1, d.rank + 1), ((u, v, -d.c(u, v)) for u, v in o.arcs))


def indegree(G: LabeledDigraph, v) -> int:
    return sum(lab for _, lab in G.in_edges(v))


def indegrees(G: LabeledDigraph) -> dict:
    deg = {v: 0 for v in G.vertices}
    for _, b, lab in G.edges:
        deg[b] += lab
    return deg


def is_fano(G: LabeledDigraph) -> bool:
    return all(d <= 1 for d in indegrees(G).values())


def is_weak_fano(G: LabeledDigraph) -> bool:
    return all(d <= 2 for d in indegrees(G).values())


def sinks(G: LabeledDigraph) -> set:
    tails = {a for a, _, _ in G.edges}
    return set(G.vertices) - tails


def sources(G: LabeledDigraph) -> set:
    heads = {b for _, b, _ in G.edges}
    return set(G.vertices) - heads


def leaves(G: LabeledDigraph) -> set:
    """Vertices of undirected degree at most one."""
    deg = {v: 0 for v in G.vertices}
    for a, b, _ in G.edges:
        deg[a] += 1
        deg[b] += 1
    return {v for v, d in deg.items() if d <= 1}


def _undirected_adj(G: LabeledDigraph) -> dict:
    adj = {v: set() for v in G.vertices}
    for a, b, _ in G.edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def component_vertex_sets(G: LabeledDigraph) -> list[frozenset]:
    adj = _undirected_adj(G)
    seen: set = set()
    out = []
    for v in sorted(G.vertices):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        out.append(frozenset(comp))
    return out


def connected_components(G: LabeledDigraph) -> list[LabeledDigraph]:
    return [G.induced(c) for c in component_vertex_sets(G)]


def is_connected(G: LabeledDigraph) -> bool:
    return len(component_vertex_sets(G)) == 1


# canonical forms ---------------------------------------------------------


def _refine(cells: list[list], inc: dict) -> list[list]:
    """Equitable refinement; ``inc[v]`` lists ``(direction, label, neighbour)``."""
    while True:
        where = {v: i for i, cell in enumerate(cells) for v in cell}
        new: list[list] = []
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            groups: dict = {}
            for v in cell:
                sig = tuple(sorted((d, lab, where[u]) for d, lab, u in inc[v]))
                groups.setdefault(sig, []).append(v)
            for sig in sorted(groups):
                new.append(groups[sig])
        if len(new) == len(cells):
            return new
        cells = new


def _encode(order: list, edges) -> tuple:
    pos = {v: i for i, v in enumerate(order)}
    return (len(order),) + tuple(sorted((pos[a], pos[b], lab) for a, b, lab in edges))


def _canon_component(G: LabeledDigraph) -> tuple[tuple, list]:
    inc = {v: [] for v in G.vertices}
    for a, b, lab in G.edges:
        inc[a].append((0, lab, b))
        inc[b].append((1, lab, a))
    best: list = [None, None]

    def search(cells):
        cells = _refine(cells, inc)
        if all(len(c) == 1 for c in cells):
            order = [c[0] for c in cells]
            enc = _encode(order, G.edges)
            if best[0] is None or enc < best[0]:
                best[0], best[1] = enc, order
            return
        i = min((k for k, c in enumerate(cells) if len(c) > 1), key=lambda k: (len(cells[k]), k))
        tried_sigs = set()
        for v in sorted(cells[i]):
            # twins with identical neighbourhoods give identical subtrees
            twin_sig = tuple(sorted(inc[v]))
            if twin_sig in tried_sigs:
                continue
            tried_sigs.add(twin_sig)
            rest = [u for u in cells[i] if u != v]
            search(cells[:i] + [[v], rest] + cells[i + 1:])

    search([sorted(G.vertices)])
    return best[0], best[1]


def canonical_labeling(G: LabeledDigraph, size_bound: int = DEFAULT_SIZE_BOUND):
    """Return ``(form, order)``: the canonical bytes and a vertex order realising it."""
    if len(G.vertices) > size_bound:
        raise PreconditionError(f"digraph has {len(G.vertices)} vertices; bound is {size_bound}")
    parts = []
    for comp in connected_components(G):
        enc, order = _canon_component(comp)
        parts.append((enc, order))
    parts.sort(key=lambda p: p[0])
    blob = bytearray()
    order: list = []
    for enc, o in parts:
        n, edges = enc[0], enc[1:]
        blob += bytes([n, len(edges)])
        for e in edges:
            blob += bytes(e)
        order += o
    return bytes(blob), order


def canonical_form(G: LabeledDigraph, size_bound: int = DEFAULT_SIZE_BOUND) -> bytes:
    return canonical_labeling(G, size_bound)[0]


def are_isomorphic(G: LabeledDigraph, H: LabeledDigraph, size_bound: int = DEFAULT_SIZE_BOUND) -> bool:
    return canonical_form(G, size_bound) == canonical_form(H, size_bound)


def find_isomorphism(G: LabeledDigraph, H: LabeledDigraph, size_bound: int = DEFAULT_SIZE_BOUND):
    """A dict ``f`` with ``G.relabel(f) == H``, or None."""
    fg, og = canonical_labeling(G, size_bound)
    fh, oh = canonical_labeling(H, size_bound)
    if fg != fh:
        return None
    f = dict(zip(og, oh))
    assert G.relabel(f) == H
    return f
