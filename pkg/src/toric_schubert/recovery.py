"""Rebuild the digraph of a toric word from the product table of its cohomology ring.

Each vertex is represented by a *slot* carrying a GF(2) subspace of H^2:
sink vertices by their square-zero line, every other vertex by the eigenspace
of its eigenelement.  An eigenelement of multiplicity ``mu`` yields ``mu``
interchangeable slots sharing one subspace; when some later join pins down
which vertex a shared slot stands for, the slot records that vector as its
``identity``.

The joins in the middle steps use *contributions*: a vertex ``j`` with
out-neighbours ``S`` has ``alpha_j = sum of x_p for p in S`` and each
``x_p`` is visible, up to ``alpha_p``, inside its slot's subspace.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from . import gf2
from .bott_fan import integer_det
from .cohomology import (BottRing, Mod2Structure, ProductTable, eigen_data, format_bits,
                         product_table, ring_from_digraph, square_zero_primitives)
from .digraph import LabeledDigraph, component_vertex_sets, leaves
from .errors import BoundTooSmallError, PreconditionError, StepError

TRUSTED = "trusted"
OBFUSCATED = "obfuscated"
MOD2 = "mod2"


@dataclass(frozen=True)
class RecoveryInput:
    table: object  # ProductTable, or Mod2Structure in mod2 mode
    mode: str = TRUSTED
    bound: int = 3
    max_label: int | None = None  # provenance: largest edge label of the source ring, if known
    names: tuple | None = None  # generator names, meaningful in trusted mode

    @property
    def r(self) -> int:
        return self.table.r

    def mod2(self) -> Mod2Structure:
        return self.table if isinstance(self.table, Mod2Structure) else self.table.mod2()


def recovery_input(ring: BottRing, bound: int = 3) -> RecoveryInput:
    return RecoveryInput(product_table(ring), TRUSTED, bound, ring.max_label, tuple(ring.generators))


# slots ---------------------------------------------------------------------


@dataclass
class Slot:
    index: int
    kind: str  # "sink" or "eigen"
    space: gf2.Subspace2
    alpha: int = 0
    group: int = -1  # shared key for slots with the same eigenspace
    identity: int | None = None  # a vector of the slot's own vertex, for shared slots
    placed_in: int | None = None  # step that attached the slot

    @property
    def line(self) -> int:
        return self.space.basis[0] if self.kind == "sink" else 0


@dataclass
class SlotGraph:
    r: int
    slots: list
    edges: list = field(default_factory=list)  # (tail slot, head slot)
    trace: list = field(default_factory=list)

    def group_size(self, s: Slot) -> int:
        return sum(1 for t in self.slots if t.group == s.group) if s.kind == "eigen" else 1

    def shared(self, s: Slot) -> bool:
        return s.kind == "eigen" and self.group_size(s) > 1

    def placed(self) -> list[Slot]:
        return [s for s in self.slots if s.placed_in is not None]

    def unplaced(self) -> list[Slot]:
        return [s for s in self.slots if s.placed_in is None]

    def digraph(self) -> LabeledDigraph:
        return LabeledDigraph.build(range(1, self.r + 1), ((a + 1, b + 1, 1) for a, b in self.edges))

    def components(self) -> list[frozenset]:
        G = LabeledDigraph.build(
            (s.index for s in self.placed()), ((a, b, 1) for a, b in self.edges)
        )
        return component_vertex_sets(G)

    def add_edge(self, tail: Slot, head: Slot) -> None:
        if tail.index == head.index or (tail.index, head.index) in self.edges or (head.index, tail.index) in self.edges:
            raise StepError("edge", f"slot {tail.index} -> {head.index} drawn twice")
        self.edges.append((tail.index, head.index))


def _intersect_dim(a: Slot, b: Slot) -> int:
    return (a.space & b.space).dim


def _same_mod(u: int, v: int, alpha: int) -> bool:
    return u == v or u ^ alpha == v


# Step 1 --------------------------------------------------------------------


def step1_spaces(inp: RecoveryInput) -> SlotGraph:
    if inp.max_label is not None and inp.max_label > 1:
        raise PreconditionError(
            f"recovery requires every edge label to be 1 (source ring has label {inp.max_label})"
        )
    s = inp.mod2()
    r = s.r
    eig = eigen_data(s, check_total=False)
    total = sum(e.multiplicity for e in eig)
    if total != r:
        raise StepError(1, f"eigen multiplicities sum to {total}, expected {r}")
    zero = next((e for e in eig if e.alpha == 0), None)
    n_sinks = zero.multiplicity if zero else 0
    if isinstance(inp.table, ProductTable):
        try:
            prims = square_zero_primitives(inp.table, inp.bound)
        except BoundTooSmallError as exc:
            raise StepError(1, f"square-zero search failed: {exc}") from None
        lines = sorted({gf2.bits(z) for z in prims} - {0})
    else:
        # mod 2 only: sums of sinks are square-zero mod 2 too, so lines are certain only when E(0) is a line
        if n_sinks > 1:
            raise StepError(1, f"mod 2 data cannot single out {n_sinks} sink lines; the integral table is needed",
                            e0_dim=n_sinks)
        lines = list(zero.space.basis) if zero else []
    if len(lines) != n_sinks:
        raise StepError(1, f"found {len(lines)} square-zero lines, expected {n_sinks}", lines=lines)
    if zero and gf2.Subspace2.span(r, lines) != zero.space:
        raise StepError(1, "square-zero lines do not span E(0)")
    slots: list[Slot] = []
    for v in lines:
        slots.append(Slot(len(slots), "sink", gf2.Subspace2(r, (v,))))
    for g, e in enumerate(x for x in eig if x.alpha):
        for _ in range(e.multiplicity):
            slots.append(Slot(len(slots), "eigen", e.space, e.alpha, group=g))
    if len(slots) != r:
        raise StepError(1, f"built {len(slots)} slots for rank {r}")
    sg = SlotGraph(r, slots)
    sg.trace.append({"step": 1, "slots": [_slot_summary(x) for x in slots]})
    return sg


def _slot_summary(s: Slot) -> dict:
    return {"slot": s.index, "kind": s.kind, "alpha": s.alpha, "basis": list(s.space.basis)}


# attachments by one-dimensional intersections ------------------------------


def _attach_target(sg: SlotGraph, head: Slot, tail: Slot, step) -> Slot:
    """Pick which of ``head``'s interchangeable slots receives an edge from ``tail``."""
    if not sg.shared(head):
        return head
    inter = head.space & tail.space
    u = inter.basis[0]
    mates = [s for s in sg.slots if s.group == head.group and s.placed_in is not None]
    for s in mates:
        if s.identity is not None and _same_mod(s.identity, u, head.alpha):
            return s
    free = [s for s in mates if s.identity is None]
    if not free:
        raise StepError(step, f"no free slot of eigenspace group {head.group} for vector {u}",
                        tail=tail.index, head=head.index)
    free[0].identity = u
    return free[0]


def step2_grow(sg: SlotGraph) -> SlotGraph:
    frontier = [s for s in sg.slots if s.kind == "sink"]
    for s in frontier:
        s.placed_in = 2
    while frontier:
        nxt = []
        seen_groups: set = set()
        for a in frontier:
            key = ("g", a.group) if sg.shared(a) else ("s", a.index)
            if key in seen_groups:
                continue  # interchangeable slots see the same candidates
            seen_groups.add(key)
            for b in sg.unplaced():
                if _intersect_dim(a, b) == 1:
                    target = _attach_target(sg, a, b, 2)
                    b.placed_in = 2
                    sg.add_edge(b, target)
                    nxt.append(b)
        frontier = nxt
    sg.trace.append({"step": 2, "edges": list(sg.edges),
                     "components": [sorted(c) for c in sg.components()]})
    return sg


# decompositions of alpha ---------------------------------------------------


def _contributions(sg: SlotGraph, p: Slot) -> list[int]:
    """Vectors that can stand for ``x_p`` inside slot ``p``."""
    if p.kind == "sink":
        return [p.line]
    if p.identity is not None:
        return sorted({p.identity, p.identity ^ p.alpha})
    taken = [s.identity for s in sg.slots if s.group == p.group and s.identity is not None]
    return [v for v in p.space if v and v != p.alpha
            and not any(_same_mod(v, t, p.alpha) for t in taken)]


def _decompositions(sg: SlotGraph, alpha: int, pool: Sequence[Slot], size: int):
    """All ``(slots, vectors)`` with ``alpha = sum of vectors`` and one vector per slot."""
    out = []
    contrib = {p.index: _contributions(sg, p) for p in pool}
    for combo in itertools.combinations(pool, size):
        lists = [contrib[p.index] for p in combo]
        for vecs in itertools.product(*lists):
            acc = 0
            for v in vecs:
                acc ^= v
            if acc != alpha:
                continue
            ok = True
            for i, j in itertools.combinations(range(size), 2):
                pi, pj = combo[i], combo[j]
                if pi.kind == "eigen" and pi.group == pj.group and _same_mod(vecs[i], vecs[j], pi.alpha):
                    ok = False
            if ok:
                out.append((combo, vecs))
    return out


def _signature(sg: SlotGraph, combo, vecs) -> tuple:
    """Forget which interchangeable slot was used."""
    sig = []
    for p, v in zip(combo, vecs):
        if sg.shared(p) and p.identity is None:
            sig.append(("g", p.group))
        else:
            sig.append(("s", p.index))
    return tuple(sorted(sig))


def _subspace_key(combo) -> tuple:
    return tuple(sorted(p.space.dim for p in combo))


def _choose(sg: SlotGraph, alpha: int, pool: Sequence[Slot], sizes, step, who: Slot):
    """Smallest decomposition, unique up to interchangeable slots."""
    for size in sizes:
        sols = _decompositions(sg, alpha, pool, size)
        if not sols:
            continue
        by_sig: dict = {}
        for combo, vecs in sols:
            by_sig.setdefault(_signature(sg, combo, vecs), (combo, vecs))
        if len(by_sig) > 1:
            # prefer inclusion-minimal subspaces, then give up
            cands = list(by_sig.values())
            minimal = [c for c in cands if not any(
                d is not c and _dominates(d[0], c[0]) for d in cands)]
            if len(minimal) != 1:
                raise StepError(step, f"decomposition of alpha for slot {who.index} is not unique",
                                slot=who.index, options=[sorted(p.index for p in c[0]) for c in cands])
            return size, minimal[0]
        return size, next(iter(by_sig.values()))
    return None, None


def _dominates(d, c) -> bool:
    """``d`` uses subspaces contained in those of ``c``, strictly somewhere."""
    ds = sorted(d, key=lambda p: p.index)
    cs = sorted(c, key=lambda p: p.index)
    for perm in itertools.permutations(ds):
        if all(x.space <= y.space for x, y in zip(perm, cs)) and any(
                x.space != y.space for x, y in zip(perm, cs)):
            return True
    return False


def _commit(sg: SlotGraph, who: Slot, combo, vecs, step) -> list[int]:
    heads = []
    for p, v in zip(combo, vecs):
        target = p
        if sg.shared(p):
            mates = [s for s in sg.slots if s.group == p.group and s.placed_in is not None]
            match = [s for s in mates if s.identity is not None and _same_mod(s.identity, v, p.alpha)]
            if match:
                target = match[0]
            else:
                free = [s for s in mates if s.identity is None]
                if not free:
                    raise StepError(step, f"no free slot left in group {p.group}")
                target = free[0]
                target.identity = v
        sg.add_edge(who, target)
        heads.append(target.index)
    return heads


# Step 3 --------------------------------------------------------------------


def _literal_leaf_choice(sg: SlotGraph, alpha: int, L: Sequence[Slot], size: int):
    sols = []
    for combo in itertools.combinations(L, size):
        span = gf2.Subspace2.span(sg.r, [b for p in combo for b in p.space.basis])
        if alpha in span:
            sols.append(combo)
    if not sols:
        return None
    minimal = [c for c in sols if not any(d is not c and _dominates(d, c) for d in sols)]
    sigs = {tuple(sorted(("g", p.group) if sg.shared(p) else ("s", p.index) for p in c)) for c in minimal}
    if len(sigs) != 1:
        raise StepError(3, "minimal leaf choice is not unique", options=[sorted(p.index for p in c) for c in minimal])
    return minimal[0]


def step3_join(sg: SlotGraph, strict_leaves: bool = False) -> SlotGraph:
    R = sg.unplaced()
    placed = sg.placed()
    leaf_ids = leaves(LabeledDigraph.build((s.index for s in placed), ((a, b, 1) for a, b in sg.edges)))
    L = [s for s in placed if s.index in leaf_ids]
    pool = L if strict_leaves else placed
    R1, R2, R3 = [], [], []
    plans = []
    for j in R:
        if strict_leaves:
            combo = _literal_leaf_choice(sg, j.alpha, L, 2)
            size = 2
            if combo is None:
                combo, size = _literal_leaf_choice(sg, j.alpha, L, 3), 3
            if combo is None:
                R3.append(j)
                continue
            vecs = None
        else:
            size, choice = _choose(sg, j.alpha, pool, (2, 3), 3, j)
            if choice is None:
                R3.append(j)
                continue
            combo, vecs = choice
        (R1 if size == 2 else R2).append(j)
        plans.append((j, combo, vecs))
    joins = []
    for j, combo, vecs in plans:
        if vecs is None:
            for p in combo:
                sg.add_edge(j, p)
            heads = [p.index for p in combo]
        else:
            # identities may have been fixed by an earlier join in this step,
            # so let every placed mate of a shared slot compete again
            sub = []
            for p in combo:
                mates = [s for s in placed if sg.shared(p) and s.group == p.group] or [p]
                sub += [s for s in mates if s not in sub]
            _, choice = _choose(sg, j.alpha, sub, (len(combo),), 3, j)
            if choice is None:
                raise StepError(3, f"slot {j.index} lost its decomposition", slot=j.index)
            heads = _commit(sg, j, choice[0], choice[1], 3)
        j.placed_in = 3
        joins.append((j.index, heads))
    sg.trace.append({
        "step": 3,
        "R": [s.index for s in R], "L": sorted(leaf_ids),
        "R1": [s.index for s in R1], "R2": [s.index for s in R2], "R3": [s.index for s in R3],
        "joins": joins, "edges": list(sg.edges),
    })
    return sg


# Step 4 --------------------------------------------------------------------


def step4_trivalent(sg: SlotGraph) -> SlotGraph:
    R3 = sg.unplaced()
    if not R3:
        return sg
    placed = sg.placed()
    pairs = []
    for a in R3:
        seen_groups = set()
        for b in placed:
            key = ("g", b.group) if sg.shared(b) else ("s", b.index)
            if key in seen_groups:
                continue
            seen_groups.add(key)
            if _intersect_dim(a, b) == 1:
                pairs.append((a, b))
    if not pairs:
        # the branch vertex was already joined in the previous step
        sg.trace.append({"step": 4, "pair": None, "edges_added": [], "edges": list(sg.edges)})
        return sg
    if len(pairs) != 1:
        raise StepError(4, f"expected a unique (unplaced, placed) pair, found {len(pairs)}",
                        pairs=[(a.index, b.index) for a, b in pairs])
    a, b = pairs[0]
    b = _attach_target(sg, b, a, 4)
    a.placed_in = 4
    sg.add_edge(a, b)
    chain = [(a.index, b.index)]
    frontier = [a]
    while frontier:
        nxt = []
        for t in frontier:
            for k in sg.unplaced():
                if _intersect_dim(k, t) == 1:
                    k.placed_in = 4
                    sg.add_edge(k, t)
                    chain.append((k.index, t.index))
                    nxt.append(k)
        frontier = nxt
    sg.trace.append({"step": 4, "pair": (a.index, b.index), "edges_added": chain, "edges": list(sg.edges)})
    return sg


# Step 5 --------------------------------------------------------------------


def step5_final(sg: SlotGraph) -> SlotGraph:
    rest = sg.unplaced()
    if not rest:
        return sg
    if len(rest) != 1:
        raise StepError(5, f"expected one unplaced slot, found {len(rest)}", slots=[s.index for s in rest])
    k = rest[0]
    size, choice = _choose(sg, k.alpha, sg.placed(), (2,), 5, k)
    if choice is None:
        raise StepError(5, f"no admissible pair for slot {k.index}", slot=k.index)
    heads = _commit(sg, k, choice[0], choice[1], 5)
    k.placed_in = 5
    sg.trace.append({"step": 5, "slot": k.index, "heads": heads, "edges": list(sg.edges)})
    return sg


# orchestration -------------------------------------------------------------


@dataclass
class RecoveryResult:
    digraph: LabeledDigraph
    slots: SlotGraph
    steps_run: list
    validated: bool


def eigen_signature(s: Mod2Structure, rounds: int = 4) -> tuple:
    """Basis-independent summary of the eigen data.

    Nonzero eigenelements become nodes coloured by multiplicity and by how their
    eigenspace meets ``E(0)``; pairs are joined with the dimension of their
    intersection, and a few rounds of colour refinement mix in the neighbourhoods.
    """
    eig = eigen_data(s, check_total=False)
    zero = next((e for e in eig if e.alpha == 0), None)
    E0 = zero.space if zero else gf2.Subspace2.zero(s.r)
    nz = [e for e in eig if e.alpha]
    n = len(nz)
    inter = [[(nz[i].space & nz[j].space).dim if i != j else -1 for j in range(n)] for i in range(n)]
    colour = [(e.multiplicity, e.space.dim, e.alpha in E0, (e.space & E0).dim) for e in nz]
    for _ in range(rounds):
        colour = [(colour[i], tuple(sorted((inter[i][j], colour[j]) for j in range(n) if j != i)))
                  for i in range(n)]
        # compress so the tuples stay small
        table = {c: k for k, c in enumerate(sorted(set(colour)))}
        colour = [table[c] for c in colour]
    return (E0.dim, n, tuple(sorted(colour)),
            tuple(sorted(inter[i][j] for i, j in itertools.combinations(range(n), 2))))


def _square_zero_count(inp: RecoveryInput):
    if not isinstance(inp.table, ProductTable):
        return None
    return len(square_zero_primitives(inp.table, inp.bound))


def recover(inp, strict_leaves: bool = False, validate: bool = True) -> RecoveryResult:
    if isinstance(inp, BottRing):
        inp = recovery_input(inp)
    sg = step1_spaces(inp)
    steps = [1]
    sg = step2_grow(sg)
    steps.append(2)
    if sg.unplaced():
        sg = step3_join(sg, strict_leaves=strict_leaves)
        steps.append(3)
    if sg.unplaced():
        sg = step4_trivalent(sg)
        steps.append(4)
    if sg.unplaced():
        sg = step5_final(sg)
        steps.append(5)
    if sg.unplaced():
        raise StepError(5, "slots left unplaced", slots=[s.index for s in sg.unplaced()])
    G = sg.digraph()
    ok = False
    if validate:
        rebuilt = product_table(ring_from_digraph(G))
        if eigen_signature(rebuilt.mod2()) != eigen_signature(inp.mod2()):
            raise StepError("validate", "eigen data of the recovered digraph differs from the input",
                            edges=sorted(G.edges))
        expected = _square_zero_count(inp)
        if expected is not None and expected != len(square_zero_primitives(rebuilt, 3)):
            raise StepError("validate", "square-zero classes of the recovered digraph differ from the input",
                            edges=sorted(G.edges))
        ok = True
    return RecoveryResult(G, sg, steps, ok)


# obfuscation ---------------------------------------------------------------


def _int_inverse(P: Sequence[Sequence[int]]) -> list[list[int]]:
    """Inverse of a unimodular integer matrix via the adjugate."""
    n = len(P)
    det = integer_det(P)
    if abs(det) != 1:
        raise PreconditionError(f"matrix is not unimodular (det {det})")
    inv = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(P) if k != i]
            inv[j][i] = (-1) ** (i + j) * integer_det(minor) * det
    return inv


def obfuscate(ring_or_table, P: Sequence[Sequence[int]], U: Sequence[Sequence[int]] | None = None,
              max_label: int | None = None) -> RecoveryInput:
    """Rewrite the product table in coordinates ``c' = P c`` on H^2 (and ``U`` on H^4)."""
    if isinstance(ring_or_table, BottRing):
        max_label = ring_or_table.max_label if max_label is None else max_label
        table = product_table(ring_or_table)
    else:
        table = ring_or_table
    r, n4 = table.r, table.n4
    if len(P) != r or any(len(row) != r for row in P):
        raise PreconditionError(f"P must be {r} x {r}")
    Pinv = _int_inverse(P)
    T = table.entries
    new = [[[0] * n4 for _ in range(r)] for _ in range(r)]
    for i in range(r):
        for j in range(r):
            acc = [0] * n4
            for k in range(r):
                if not Pinv[k][i]:
                    continue
                for l in range(r):
                    c = Pinv[k][i] * Pinv[l][j]
                    if c:
                        e = T[k][l]
                        for t in range(n4):
                            acc[t] += c * e[t]
            new[i][j] = acc
    if U is not None:
        if len(U) != n4 or abs(integer_det(U)) != 1:
            raise PreconditionError("U must be a unimodular h4_dim x h4_dim matrix")
        new = [[[sum(U[s][t] * v[t] for t in range(n4)) for s in range(n4)] for v in row] for row in new]
    bound = 9 * max((abs(x) for row in P for x in row), default=1)
    out = ProductTable(r, n4, tuple(tuple(map(tuple, row)) for row in new))
    return RecoveryInput(out, OBFUSCATED, bound, max_label, None)


def random_unimodular(n: int, rng: random.Random, entry_bound: int = 2, steps: int | None = None) -> list[list[int]]:
    """Random unimodular matrix with entries in ``[-entry_bound, entry_bound]``.

    Built from a signed permutation by elementary row operations, skipping any
    operation that would leave the entry range.
    """
    perm = list(range(n))
    rng.shuffle(perm)
    M = [[(rng.choice((-1, 1)) if perm[i] == j else 0) for j in range(n)] for i in range(n)]
    if n < 2:
        return M
    steps = 4 * n if steps is None else steps
    done = tries = 0
    while done < steps and tries < 50 * steps:
        tries += 1
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-1, 1))
        row = [a + c * b for a, b in zip(M[i], M[j])]
        if max(abs(x) for x in row) > entry_bound:
            continue
        M[i] = row
        done += 1
    return M


def canonical_slot_labels(sg: SlotGraph, ring: BottRing) -> dict[int, object]:
    """Map slots to generator names of a trusted-mode ring (for trace comparisons)."""
    m = ring.m
    alpha_bits = [gf2.bits(row) for row in ring.alphas]
    out: dict = {}
    used: set = set()
    for s in sg.slots:
        if s.kind == "sink":
            pos = s.line.bit_length() - 1
            out[s.index] = ring.generators[pos]
            used.add(pos)
    for s in sg.slots:
        if s.kind != "eigen" or s.identity is None:
            continue
        for k in range(m):
            if alpha_bits[k] == s.alpha and k not in used and _same_mod(1 << k, s.identity, s.alpha):
                out[s.index] = ring.generators[k]
                used.add(k)
                break
    for s in sg.slots:
        if s.index in out:
            continue
        for k in range(m):
            if alpha_bits[k] == s.alpha and k not in used:
                out[s.index] = ring.generators[k]
                used.add(k)
                break
    return out


def describe_slot(sg: SlotGraph, s: Slot, names: Sequence) -> str:
    basis = ", ".join(format_bits(b, names) for b in sorted(s.space.basis))
    if s.kind == "sink":
        return f"<{basis}>"
    return f"E({format_bits(s.alpha, names)}) = <{basis}>"
