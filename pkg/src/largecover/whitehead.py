"""
Whitehead's algorithm for multiwords in a free group.

Vertices of the Whitehead graph are letters, indexed by ``letter_key``.  A
cyclic adjacency ``(u, v)`` contributes the edge ``u -- v^-1``.  For a
type-II move ``(A, a)`` the change in total cyclic length equals
``cap(A) - deg(a)``, so the best move for a fixed multiplier is an
``a``/``a^-1`` minimum cut.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Sequence

from .diagram import SymplecticClass
from .words import (
    CyclicWord,
    Substitution,
    Word,
    cyclic_reduce,
    letter_key,
    signed_permutation,
    to_string,
)


def key_letter(key: int) -> int:
    g, neg = divmod(key, 2)
    return -(g + 1) if neg else g + 1


@dataclass(frozen=True)
class Multiword:
    rank: int
    elements: tuple[CyclicWord, ...]

    def __post_init__(self):
        els = tuple(CyclicWord(e) for e in self.elements)
        if any(len(e) == 0 for e in els):
            raise ValueError("multiword elements must be non-trivial")
        if any(abs(a) > self.rank for e in els for a in e):
            raise ValueError("element uses a generator outside the rank")
        object.__setattr__(self, "elements", els)

    @classmethod
    def of(cls, rank: int, words: Iterable[Iterable[int]]) -> "Multiword":
        return cls(rank, tuple(CyclicWord(w) for w in words))

    @property
    def length(self) -> int:
        return sum(len(e) for e in self.elements)

    def canonical(self) -> tuple:
        return (self.rank, tuple(sorted(self.elements, key=lambda e: (len(e), [letter_key(a) for a in e]))))

    def generators_used(self) -> set[int]:
        return {abs(a) - 1 for e in self.elements for a in e}

    def apply(self, sub: Substitution) -> "Multiword":
        return Multiword(self.rank, tuple(cyclic_reduce(sub(e))[0] for e in self.elements))

    def __str__(self):
        return "{" + ", ".join(to_string(e, self.rank) for e in self.elements) + "}"


@dataclass(frozen=True)
class WhiteheadMove:
    """
    Type I: ``images`` is a signed permutation (generator g -> letter).
    Type II: multiplier letter ``a`` and letter set ``A`` with a in A and
    a^-1 not in A; a generator y maps to ``a^-1 y`` if only y^-1 is in A,
    to ``y a`` if only y is in A, and to ``a^-1 y a`` if both are.
    """

    rank: int
    a: int = 0
    A: frozenset = frozenset()
    images: tuple[int, ...] = ()

    def __post_init__(self):
        if self.images:
            if self.a or self.A:
                raise ValueError("a move is either type I or type II")
            signed_permutation(self.images)
            return
        if self.a == 0 or abs(self.a) > self.rank:
            raise ValueError("type-II move needs a multiplier letter")
        if self.a not in self.A or -self.a in self.A:
            raise ValueError("multiplier must be in A and its inverse outside")
        if any(b == 0 or abs(b) > self.rank for b in self.A):
            raise ValueError("A contains a letter outside the rank")

    @property
    def kind(self) -> str:
        return "I" if self.images else "II"

    def substitution(self) -> Substitution:
        if self.images:
            return signed_permutation(self.images)
        return _type2(self.rank, self.a, self.A)

    def inverse(self) -> "WhiteheadMove":
        if self.images:
            back = [0] * self.rank
            for g, b in enumerate(self.images):
                back[abs(b) - 1] = (g + 1) if b > 0 else -(g + 1)
            return WhiteheadMove(self.rank, images=tuple(back))
        return WhiteheadMove(self.rank, -self.a, (self.A - {self.a}) | {-self.a})

    def sort_key(self):
        if self.images:
            return (0, tuple(letter_key(b) for b in self.images))
        return (1, letter_key(self.a), tuple(sorted(letter_key(b) for b in self.A)))

    def __str__(self):
        if self.images:
            return "I[" + ",".join(to_string([b], self.rank) for b in self.images) + "]"
        letters = "".join(to_string([b], self.rank) for b in sorted(self.A, key=letter_key))
        return f"II[{to_string([self.a], self.rank)};{letters}]"


def _type2_images(rank, a, A):
    images = []
    for g in range(rank):
        y = g + 1
        if y == abs(a):
            images.append((y,))
            continue
        im = [y]
        if y in A:
            im.append(a)
        if -y in A:
            im.insert(0, -a)
        images.append(tuple(im))
    return images


def _type2(rank, a, A) -> Substitution:
    fwd = Substitution._unchecked(_type2_images(rank, a, A))
    inv = Substitution._unchecked(_type2_images(rank, -a, (A - {a}) | {-a}))
    fwd.inverse = inv
    inv.inverse = fwd
    return fwd


def all_type2_moves(rank: int) -> Iterator[WhiteheadMove]:
    """Every type-II move, excluding the inner-automorphism extremes."""
    letters = [key_letter(k) for k in range(2 * rank)]
    for a in letters:
        others = [b for b in letters if abs(b) != abs(a)]
        for mask in range(1 << len(others)):
            A = {a} | {others[i] for i in range(len(others)) if mask >> i & 1}
            if len(A) == 1 or len(A) == 2 * rank - 1:
                continue  # identity / conjugation by a
            yield WhiteheadMove(rank, a, frozenset(A))


def all_type1_moves(rank: int) -> Iterator[WhiteheadMove]:
    from itertools import permutations, product

    for perm in permutations(range(1, rank + 1)):
        for signs in product((1, -1), repeat=rank):
            yield WhiteheadMove(rank, images=tuple(s * p for s, p in zip(signs, perm)))


# -- Whitehead graph -----------------------------------------------------------

@dataclass(frozen=True)
class WhiteheadGraph:
    rank: int
    # symmetric multiplicity matrix indexed by letter_key
    weights: tuple[tuple[int, ...], ...]

    @property
    def n_vertices(self) -> int:
        return 2 * self.rank

    @property
    def edge_count(self) -> int:
        w = self.weights
        return sum(w[u][v] for u in range(len(w)) for v in range(u, len(w)))

    def edges(self) -> list[tuple[int, int, int]]:
        """``(u, v, multiplicity)`` over letters with ``key(u) <= key(v)``."""
        out = []
        for u in range(self.n_vertices):
            for v in range(u, self.n_vertices):
                if self.weights[u][v]:
                    out.append((key_letter(u), key_letter(v), self.weights[u][v]))
        return out

    def degree(self, a: int) -> int:
        return sum(self.weights[letter_key(a)])

    def components(self, vertices: Iterable[int] | None = None) -> list[list[int]]:
        """Connected components over the given letters (default: all)."""
        keep = {letter_key(v) for v in vertices} if vertices is not None else set(range(self.n_vertices))
        seen = set()
        comps = []
        for s in sorted(keep):
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            stack = [s]
            while stack:
                u = stack.pop()
                for v in range(self.n_vertices):
                    if v in keep and v not in seen and self.weights[u][v]:
                        seen.add(v)
                        comp.append(v)
                        stack.append(v)
            comps.append(sorted(key_letter(k) for k in comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def cut_vertices(self) -> list[int]:
        out = []
        for v in range(self.n_vertices):
            rest = [key_letter(u) for u in range(self.n_vertices) if u != v]
            if len(self.components(rest)) > 1:
                out.append(key_letter(v))
        return out

    def cut_capacity(self, A: Iterable[int]) -> int:
        inside = {letter_key(b) for b in A}
        return sum(
            self.weights[u][v]
            for u in inside
            for v in range(self.n_vertices)
            if v not in inside
        )


def whitehead_graph(W: Multiword) -> WhiteheadGraph:
    n = 2 * W.rank
    w = [[0] * n for _ in range(n)]
    for e in W.elements:
        for i, u in enumerate(e):
            v = e[(i + 1) % len(e)]
            p, q = letter_key(u), letter_key(-v)
            w[p][q] += 1
            if p != q:
                w[q][p] += 1
    return WhiteheadGraph(W.rank, tuple(tuple(r) for r in w))


def _min_cut(weights, s, t) -> tuple[int, set[int]]:
    """Edmonds-Karp on a small symmetric graph; returns the source-minimal side."""
    n = len(weights)
    res = [list(r) for r in weights]
    flow = 0
    while True:
        parent = [-1] * n
        parent[s] = s
        q = deque([s])
        while q and parent[t] < 0:
            u = q.popleft()
            for v in range(n):
                if parent[v] < 0 and res[u][v] > 0:
                    parent[v] = u
                    q.append(v)
        if parent[t] < 0:
            break
        push = None
        v = t
        while v != s:
            u = parent[v]
            push = res[u][v] if push is None else min(push, res[u][v])
            v = u
        v = t
        while v != s:
            u = parent[v]
            res[u][v] -= push
            res[v][u] += push
            v = u
        flow += push
    side = {u for u in range(n) if parent[u] >= 0}
    return flow, side


def best_move(W: Multiword, graph: WhiteheadGraph | None = None) -> tuple[int, WhiteheadMove | None]:
    """Largest length decrease over all type-II moves, with a deterministic tie-break."""
    graph = graph or whitehead_graph(W)
    best = (0, None)
    for key in range(graph.n_vertices):
        a = key_letter(key)
        deg = graph.degree(a)
        if deg == 0:
            continue
        cap, side = _min_cut(graph.weights, key, letter_key(-a))
        gain = deg - cap
        if gain > best[0]:
            best = (gain, WhiteheadMove(W.rank, a, frozenset(key_letter(k) for k in side)))
    return best


@dataclass(frozen=True)
class MinimizationTrace:
    initial: Multiword
    moves: tuple[WhiteheadMove, ...]
    lengths: tuple[int, ...]
    final: Multiword
    # composite substitution sending the initial multiword to the final one
    substitution: Substitution = field(repr=False)

    def moves_text(self) -> list[str]:
        return [str(mv) for mv in self.moves]


def minimize(W: Multiword) -> MinimizationTrace:
    moves = []
    lengths = [W.length]
    total = Substitution.identity(W.rank)
    cur = W
    while True:
        gain, mv = best_move(cur)
        if gain <= 0:
            break
        sub = mv.substitution()
        nxt = cur.apply(sub)
        assert nxt.length == cur.length - gain, "cut formula disagrees with rewriting"
        moves.append(mv)
        lengths.append(nxt.length)
        total = total.then(sub)
        cur = nxt
    return MinimizationTrace(W, tuple(moves), tuple(lengths), cur, total)


# -- disk busting --------------------------------------------------------------

@dataclass(frozen=True)
class DiskWitness:
    kind: str  # missing-generator | disconnected-graph | cut-vertex
    # a-part of the disk boundary, in the basis of the analysed multiword
    disk_class: tuple[int, ...]
    generator: int | None = None

    @property
    def separating(self) -> bool:
        return not any(self.disk_class)


@dataclass(frozen=True)
class DiskbustingResult:
    busting: bool
    trace: MinimizationTrace
    witness: DiskWitness | None = None
    alternatives: tuple[DiskWitness, ...] = ()

    def __bool__(self):
        return self.busting


def _transport(trace: MinimizationTrace, v: Sequence[int]) -> tuple[int, ...]:
    """
    Carry an a-part vector from the minimized basis back to the original one.

    Each move acts on a-parts by the inverse transpose of its abelianization
    matrix, so undoing the whole trace is multiplication by the transpose of
    the composite matrix.  Done over the rationals and checked integral.
    """
    M = trace.substitution.matrix()
    r = len(v)
    out = [sum(Fraction(M[i][j]) * v[i] for i in range(r)) for j in range(r)]
    if any(x.denominator != 1 for x in out):
        raise ArithmeticError("transported disk class is not integral")
    return tuple(int(x) for x in out)


def witness_disk_class(trace: MinimizationTrace, w: DiskWitness) -> tuple[int, ...]:
    if len(w.disk_class) != trace.final.rank:
        raise ValueError("witness and trace ranks differ")
    if w.kind == "missing-generator" and w.generator in trace.final.generators_used():
        raise ValueError("witness generator occurs in the minimized multiword")
    return _transport(trace, w.disk_class)


def _unit(rank, g):
    v = [0] * rank
    v[g] = 1
    return tuple(v)


def _local_witnesses(W: Multiword, limit: int) -> list[DiskWitness]:
    """Disks disjoint from an already minimized multiword, in its own basis."""
    used = W.generators_used()
    missing = [g for g in range(W.rank) if g not in used]
    if missing:
        return [DiskWitness("missing-generator", _unit(W.rank, g), g) for g in missing][:limit]
    graph = whitehead_graph(W)
    comps = graph.components()
    if len(comps) == 1:
        return []
    groups = sorted({tuple(sorted({abs(b) - 1 for b in c})) for c in comps})
    for c in comps:
        gens = {abs(b) - 1 for b in c}
        if any(-b not in c for b in c):
            raise AssertionError("component not closed under inversion at minimal length")
        assert tuple(sorted(gens)) in groups
    found = []
    for gens in groups:
        if len(found) >= limit:
            break
        index = {g: i for i, g in enumerate(gens)}
        sub_words = [
            [(index[abs(b) - 1] + 1) * (1 if b > 0 else -1) for b in e]
            for e in W.elements
            if abs(e[0]) - 1 in index
        ]
        sub = diskbusting(Multiword.of(len(gens), sub_words), limit - len(found))
        if sub.busting:
            continue
        for w in (sub.witness,) + sub.alternatives:
            if w.separating:
                continue
            v = [0] * W.rank
            for g, i in index.items():
                v[g] = w.disk_class[i]
            found.append(DiskWitness("disconnected-graph", tuple(v)))
    if not found:
        found.append(DiskWitness("disconnected-graph", (0,) * W.rank))
    return found[:limit]


def diskbusting(W: Multiword, limit: int = 1) -> DiskbustingResult:
    """
    Decide whether ``W`` is disk-busting in the handlebody of genus
    ``W.rank``.  When it is not, up to ``limit`` disjoint disks are reported,
    non-separating ones first; a zero class means only separating disks were
    found.
    """
    trace = minimize(W)
    final = trace.final
    graph = whitehead_graph(final)
    assert not (
        final.generators_used() == set(range(W.rank))
        and graph.is_connected()
        and graph.cut_vertices()
    ), "cut vertex at minimal length"
    local = _local_witnesses(final, max(1, limit))
    if not local:
        return DiskbustingResult(True, trace)
    local.sort(key=lambda w: w.separating)
    carried = [
        DiskWitness(w.kind, _transport(trace, w.disk_class), w.generator) for w in local
    ]
    return DiskbustingResult(False, trace, carried[0], tuple(carried[1:]))


def is_diskbusting(W: Multiword) -> bool:
    return diskbusting(W).busting


# -- exact linear algebra ------------------------------------------------------

def rational_rank(rows: Sequence[Sequence[int]]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def independence_test(disk: Sequence[int], curves: Sequence[SymplecticClass]) -> bool:
    """True iff the pure a-part class ``disk`` lies outside the rational span of ``curves``."""
    n = len(disk)
    rows = []
    for c in curves:
        if c.genus != n:
            raise ValueError(f"curve genus {c.genus} does not match disk rank {n}")
        rows.append(tuple(c.a) + tuple(c.b))
    probe = tuple(disk) + (0,) * n
    return rational_rank(rows + [probe]) == rational_rank(rows) + 1 if rows else any(disk)


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1
