"""
Genus-2 Heegaard diagrams drawn in the plane.

The splitting surface is the plane with four holes ``x+, x-, y+, y-``; the
``g+`` hole is glued to the ``g-`` hole by a reflection.  A relator letter
``g`` enters the surface at ``g+`` and leaves from ``g-`` (``g^-1`` does the
opposite), and consecutive letters are joined by an arc in the plane.

Circle ``2*g`` is ``g+`` and ``2*g + 1`` is ``g-``.  An edge end is
``(edge, 0)`` for the start of edge ``i`` (exit point of letter ``i``) and
``(edge, 1)`` for its end (entry point of letter ``i + 1``).

Each circle stores its edge ends as a list.  The ``g+`` list is in
counterclockwise order; the ``g-`` list is index-aligned with it (entry
``j`` on both lists belongs to the same handle crossing), so read
counterclockwise the ``g-`` circle is the reversed list.

Serialization, one line per circle in the order x+, x-, y+, y-::

    relator xyXY
    x+ 3:1 2:0
    x- 0:0 1:1
    y+ 0:1 3:0
    y- 1:0 2:1
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Sequence

from .words import CyclicWord, abelianize, is_cyclically_reduced, parse, to_string

CIRCLE_NAMES = ("x+", "x-", "y+", "y-")

End = tuple[int, int]


class DiagramError(ValueError):
    pass


class NotRealizable:
    """Returned by :func:`realize` when no planar diagram exists."""

    def __init__(self, relator, nodes_searched=0):
        self.relator = relator
        self.nodes_searched = nodes_searched

    def __bool__(self):
        return False

    def __repr__(self):
        return f"NotRealizable({to_string(self.relator, 2)!r})"


def entry_circle(a: int) -> int:
    g = abs(a) - 1
    return 2 * g if a > 0 else 2 * g + 1


def exit_circle(a: int) -> int:
    g = abs(a) - 1
    return 2 * g + 1 if a > 0 else 2 * g


def _end_crossing(end: End, n: int) -> int:
    e, t = end
    return e if t == 0 else (e + 1) % n


def _end_circle(letters, end: End) -> int:
    e, t = end
    n = len(letters)
    return exit_circle(letters[e]) if t == 0 else entry_circle(letters[(e + 1) % n])


def _crossing_ends(letters, c: int) -> tuple[End, End]:
    """Ends of crossing ``c`` on its ``(g+, g-)`` circles."""
    n = len(letters)
    into, out = ((c - 1) % n, 1), (c, 0)
    return (into, out) if letters[c] > 0 else (out, into)


@dataclass(frozen=True)
class PlanarDiagram:
    relator: CyclicWord
    endpoint_orders: tuple[tuple[End, ...], ...]

    @property
    def letters(self) -> tuple[int, ...]:
        return tuple(self.relator)

    @property
    def n_edges(self) -> int:
        return len(self.relator)

    def edge(self, i: int) -> tuple[int, int]:
        """(start circle, end circle) of edge ``i``."""
        ls = self.letters
        return exit_circle(ls[i]), entry_circle(ls[(i + 1) % len(ls)])

    def crossing_orders(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        n = self.n_edges
        return tuple(
            tuple(_end_crossing(end, n) for end in self.endpoint_orders[2 * g])
            for g in range(2)
        )

    def rotation(self, circle: int) -> tuple[End, ...]:
        """Edge ends around ``circle`` in counterclockwise order."""
        ends = self.endpoint_orders[circle]
        return ends if circle % 2 == 0 else tuple(reversed(ends))

    def serialize(self) -> str:
        lines = [f"relator {to_string(self.relator, 2)}"]
        for name, ends in zip(CIRCLE_NAMES, self.endpoint_orders):
            body = " ".join(f"{e}:{t}" for e, t in ends)
            lines.append(f"{name} {body}".rstrip())
        return "\n".join(lines) + "\n"

    @classmethod
    def deserialize(cls, text: str) -> "PlanarDiagram":
        rows = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
        if len(rows) != 5 or rows[0][0] != "relator" or len(rows[0]) != 2:
            raise DiagramError("expected a relator line and four circle lines")
        relator = CyclicWord(parse(rows[0][1], 2))
        if tuple(relator) != tuple(parse(rows[0][1], 2)):
            raise DiagramError("relator must be stored in canonical rotation")
        orders = []
        for name, row in zip(CIRCLE_NAMES, rows[1:]):
            if row[0] != name:
                raise DiagramError(f"expected circle {name}, got {row[0]}")
            ends = []
            for tok in row[1:]:
                e, _, t = tok.partition(":")
                ends.append((int(e), int(t)))
            orders.append(tuple(ends))
        return cls(relator, tuple(orders))


def from_crossing_orders(relator: CyclicWord, orders: Sequence[Sequence[int]]) -> PlanarDiagram:
    """Build the endpoint lists from the counterclockwise crossing order of each handle."""
    letters = tuple(relator)
    plus: list[list[End]] = [[], []]
    minus: list[list[End]] = [[], []]
    for g in range(2):
        for c in orders[g]:
            p, m = _crossing_ends(letters, c)
            plus[g].append(p)
            minus[g].append(m)
    return PlanarDiagram(
        relator,
        (tuple(plus[0]), tuple(minus[0]), tuple(plus[1]), tuple(minus[1])),
    )


# -- region tracing -----------------------------------------------------------

def _trace(rotations: dict[int, Sequence[End]], edges: Sequence[int]):
    """
    Trace the faces of a fat graph.

    ``rotations`` maps circle -> counterclockwise list of ends; ``edges`` are
    the edge ids present.  Returns (faces, components) where each face is
    the list of darts ``(edge, start_tag)`` it traverses.
    """
    succ: dict[End, End] = {}
    where: dict[End, int] = {}
    for circle, ends in rotations.items():
        for i, d in enumerate(ends):
            succ[d] = ends[(i + 1) % len(ends)]
            where[d] = circle
    seen: set[End] = set()
    faces = []
    for e in edges:
        for t in (0, 1):
            d = (e, t)
            if d in seen:
                continue
            face = []
            while d not in seen:
                seen.add(d)
                face.append(d)
                d = succ[(d[0], 1 - d[1])]
            faces.append(face)
    parent = {c: c for c in rotations}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for e in edges:
        a, b = find(where[(e, 0)]), find(where[(e, 1)])
        parent[a] = b
    components = len({find(c) for c in rotations})
    return faces, components


def _euler_ok(rotations, edges) -> bool:
    faces, comps = _trace(rotations, edges)
    isolated = sum(1 for ends in rotations.values() if not ends)
    return len(rotations) - len(edges) + len(faces) + isolated == 2 * comps


def diagnose(d: PlanarDiagram) -> str | None:
    """Reason ``d`` is invalid, or ``None``."""
    letters = d.letters
    n = len(letters)
    if n == 0 or not is_cyclically_reduced(letters):
        return "relator must be non-empty and cyclically reduced"
    if any(abs(a) > 2 for a in letters):
        return "relator must have rank 2"
    if len(d.endpoint_orders) != 4:
        return "need four circles"
    seen: dict[End, int] = {}
    for circle, ends in enumerate(d.endpoint_orders):
        for end in ends:
            e, t = end
            if not (0 <= e < n and t in (0, 1)):
                return f"bad edge end {end}"
            if end in seen:
                return f"edge end {end} appears twice"
            if _end_circle(letters, end) != circle:
                return f"edge end {end} on the wrong circle"
            seen[end] = circle
    if len(seen) != 2 * n:
        return "every edge needs both ends"
    for g in range(2):
        plus, minus = d.endpoint_orders[2 * g], d.endpoint_orders[2 * g + 1]
        if len(plus) != len(minus):
            return f"handle {g} circles have different sizes"
        for p, m in zip(plus, minus):
            if _end_crossing(p, n) != _end_crossing(m, n):
                return f"handle {g} pairing broken at {p}/{m}"
    rotations = {c: d.rotation(c) for c in range(4)}
    if not _euler_ok(rotations, range(n)):
        return "region count is not planar"
    return None


def validate(d: PlanarDiagram) -> bool:
    return diagnose(d) is None


# -- realization --------------------------------------------------------------

def _partial_rotations(letters, orders, placed: int):
    """Rotations using only edges whose both crossings are placed."""
    n = len(letters)
    complete = set(range(placed - 1)) if placed < n else set(range(n))
    rot: dict[int, list[End]] = {}
    for g in range(2):
        plus: list[End] = []
        minus: list[End] = []
        for c in orders[g]:
            p, m = _crossing_ends(letters, c)
            if p[0] in complete:
                plus.append(p)
            if m[0] in complete:
                minus.append(m)
        if plus:
            rot[2 * g] = plus
        if minus:
            rot[2 * g + 1] = minus[::-1]
    return rot, sorted(complete)


def realize(relator) -> PlanarDiagram | NotRealizable:
    """
    Backtracking search for a planar diagram.

    Crossings are placed in relator order; each new crossing is inserted
    into its handle's cyclic order at every gap in turn.  A branch is cut as
    soon as the completed edges fail the region count, which is sound
    because deleting edges never destroys planarity.
    """
    relator = CyclicWord(relator)
    letters = tuple(relator)
    n = len(letters)
    if n == 0:
        raise DiagramError("empty relator")
    if any(abs(a) > 2 for a in letters):
        raise DiagramError("relator must have rank 2")
    orders: list[list[int]] = [[], []]
    nodes = 0

    def ok(placed):
        rot, edges = _partial_rotations(letters, orders, placed)
        return _euler_ok(rot, edges)

    def place(i):
        nonlocal nodes
        nodes += 1
        if i == n:
            return ok(n)
        order = orders[abs(letters[i]) - 1]
        # a cyclic order of m crossings has m gaps; the first crossing has one
        for gap in range(max(1, len(order))):
            order.insert(gap + 1, i)
            if ok(i + 1) and place(i + 1):
                return True
            order.remove(i)
        return False

    if place(0):
        d = from_crossing_orders(relator, orders)
        assert validate(d), diagnose(d)
        return d
    return NotRealizable(relator, nodes)


def all_diagrams(relator) -> Iterator[PlanarDiagram]:
    """Every assignment of cyclic crossing orders, valid or not."""
    relator = CyclicWord(relator)
    letters = tuple(relator)
    per_handle = []
    for g in range(2):
        cs = [i for i, a in enumerate(letters) if abs(a) - 1 == g]
        if not cs:
            per_handle.append([()])
        else:
            per_handle.append([(cs[0],) + p for p in permutations(cs[1:])])
    for ox in per_handle[0]:
        for oy in per_handle[1]:
            yield from_crossing_orders(relator, (ox, oy))


# -- faces and dual routes ------------------------------------------------------

@dataclass(frozen=True)
class Face:
    darts: tuple[End, ...]
    # side list: ("edge", e, forward) and ("gap", circle, end_before_gap)
    sides: tuple[tuple, ...]


def outer_gaps(d: PlanarDiagram) -> list[tuple]:
    """
    The gap shared by all pieces of a disconnected drawing: for each
    connected piece, the marked gap of its lowest-numbered circle.  Pieces
    are drawn side by side in the region holding these gaps, and isolated
    circles sit there too.
    """
    letters = d.letters
    parent = {c: c for c in range(4) if d.endpoint_orders[c]}

    def find(c):
        while parent[c] != c:
            c = parent[c]
        return c

    for e in range(len(letters)):
        a, b = find(_end_circle(letters, (e, 0))), find(_end_circle(letters, (e, 1)))
        parent[max(a, b)] = min(a, b)
    roots = sorted({find(c) for c in parent})
    out = []
    for c in roots:
        ends = d.endpoint_orders[c]
        out.append(("gap", c, ends[-1] if c % 2 == 0 else ends[0]))
    return out


class FaceMap:
    """
    Faces of a valid diagram and marked gaps for dual curves.

    When the drawing has two pieces, their outer faces form one annular
    region.  It is cut along a seam joining the two outer gaps, so every
    region is a disk whose boundary is listed in :attr:`Face.sides`.
    """

    def __init__(self, d: PlanarDiagram):
        reason = diagnose(d)
        if reason:
            raise DiagramError(reason)
        self.diagram = d
        rotations = {c: d.rotation(c) for c in range(4) if d.rotation(c)}
        self.isolated = [c for c in range(4) if not d.rotation(c)]
        faces, comps = _trace(rotations, range(d.n_edges))
        self.rotations = rotations
        where = {end: c for c, ends in rotations.items() for end in ends}
        succ = {}
        for c, ends in rotations.items():
            for i, end in enumerate(ends):
                succ[end] = ends[(i + 1) % len(ends)]
        raw = []
        for darts in faces:
            sides = []
            for dart in darts:
                e, t = dart
                arrive = (e, 1 - t)
                sides.append(("edge", e, t == 0))
                sides.append(("gap", where[arrive], arrive))
            raw.append((tuple(darts), sides))
        seams = outer_gaps(d)
        if comps > 1:
            merged_darts, merged_sides, drop = [], [], set()
            for gap in seams:
                fi = next(i for i, (_, s) in enumerate(raw) if gap in s)
                darts, sides = raw[fi]
                k = sides.index(gap)
                # the seam leaves from the far end of this gap, so it comes last
                merged_sides.extend(sides[k + 1:] + sides[: k + 1])
                merged_darts.extend(darts)
                drop.add(fi)
            raw = [(tuple(merged_darts), merged_sides)] + [
                r for i, r in enumerate(raw) if i not in drop
            ]
        self.outer = 0
        if comps == 1 and seams:
            self.outer = next(i for i, (_, s) in enumerate(raw) if seams[0] in s)
        self.faces: list[Face] = []
        self.side_face: dict[tuple, int] = {}
        for fi, (darts, sides) in enumerate(raw):
            for s in sides:
                self.side_face[s] = fi
            self.faces.append(Face(darts, tuple(sides)))
        self.succ = succ

    def marked_gap(self, circle: int) -> tuple | None:
        """
        The gap a dual curve uses: on ``g+`` it precedes list entry 0, on
        ``g-`` it is the glued image of that gap.
        """
        ends = self.diagram.endpoint_orders[circle]
        if not ends:
            return None
        anchor = ends[-1] if circle % 2 == 0 else ends[0]
        return ("gap", circle, anchor)

    def gap_face(self, circle: int) -> int:
        gap = self.marked_gap(circle)
        # isolated circles sit in the outer region
        return self.outer if gap is None else self.side_face[gap]

    def dual_route(self, start: int, goal: int) -> list[tuple[int, int, bool]]:
        """
        Shortest face path; returns the crossed edges as
        ``(edge, from_face, forward_in_from_face)``.
        """
        prev: dict[int, tuple] = {start: None}
        queue = deque([start])
        while queue:
            f = queue.popleft()
            if f == goal:
                break
            for side in self.faces[f].sides:
                if side[0] != "edge":
                    continue
                _, e, fwd = side
                g = self.side_face[("edge", e, not fwd)]
                if g not in prev:
                    prev[g] = (f, e, fwd)
                    queue.append(g)
        path = []
        f = goal
        while prev[f] is not None:
            pf, e, fwd = prev[f]
            path.append((e, pf, fwd))
            f = pf
        return path[::-1]


def _route_crossings(route, n_edges: int) -> list[int]:
    """
    Signed crossing count of each relator edge with a route, as
    I(relator, route): +1 when the route passes from the right of the
    edge to its left.
    """
    out = [0] * n_edges
    for e, _, fwd in route:
        out[e] += 1 if fwd else -1
    return out


class DualCurves:
    """
    The canonical dual curves of a diagram.

    The curve dual to handle ``g`` goes through the handle at the marked gap
    and returns through the plane along the shortest face path from the
    ``g-`` marked gap to the ``g+`` marked gap.
    """

    def __init__(self, d: PlanarDiagram):
        self.faces = FaceMap(d)
        self.diagram = d
        self.routes = []
        for g in range(2):
            start = self.faces.gap_face(2 * g + 1)
            goal = self.faces.gap_face(2 * g)
            self.routes.append(self.faces.dual_route(start, goal))
        self.edge_crossings = [_route_crossings(r, d.n_edges) for r in self.routes]
        self.route_pairing = _route_intersection(self.faces, self.routes[0], self.routes[1], (0, 1))

    def relator_crossings(self, g: int) -> int:
        return sum(self.edge_crossings[g])


def _route_ports(faces: FaceMap, route, circles):
    """Per face, the (entry, exit) sides of a route's chord through it."""
    start_side = faces.marked_gap(circles[1])
    end_side = faces.marked_gap(circles[0])
    chords = {}
    cur_face = faces.gap_face(circles[1])
    cur_in = start_side
    for e, f, fwd in route:
        assert f == cur_face
        chords[f] = (cur_in, ("edge", e, fwd))
        cur_face = faces.side_face[("edge", e, not fwd)]
        cur_in = ("edge", e, not fwd)
    chords[cur_face] = (cur_in, end_side)
    return chords


def _route_intersection(faces: FaceMap, route_x, route_y, handles) -> int:
    """
    Algebraic intersection I(b_x, b_y) of the two closed dual curves.

    Both routes are chords inside faces; where they cross the same edge the
    x strand sits before the y strand along the edge direction.  Face
    boundaries are traversed with the face on the right, so a chord P and a
    chord Q whose ends alternate p1, q1, p2, q2 cross with I(P, Q) = -1.
    """
    if faces.isolated:
        return 0
    cx = _route_ports(faces, route_x, (2 * handles[0], 2 * handles[0] + 1))
    cy = _route_ports(faces, route_y, (2 * handles[1], 2 * handles[1] + 1))
    total = 0
    for f in set(cx) & set(cy):
        seq = []
        for side in faces.faces[f].sides:
            here = []
            for tag, chord in (("x", cx[f]), ("y", cy[f])):
                for k, port in enumerate(chord):
                    if port == side:
                        here.append((tag, k))
            if side[0] == "edge" and len(here) == 2:
                forward = side[2]
                here.sort(key=lambda p: p[0] == "y", reverse=not forward)
            seq.extend(here)
        pos = {p: i for i, p in enumerate(seq)}
        n = len(seq)
        p1, p2 = pos[("x", 0)], pos[("x", 1)]
        q1, q2 = pos[("y", 0)], pos[("y", 1)]

        def between(q):
            return 0 < (q - p1) % n < (p2 - p1) % n

        if between(q1) and not between(q2):
            total -= 1
        elif between(q2) and not between(q1):
            total += 1
    return total


# -- homology -----------------------------------------------------------------

@dataclass(frozen=True)
class SymplecticClass:
    """
    A class in the first homology of a closed genus-``g`` surface.

    ``a`` holds coefficients on the disk boundaries, ``b`` on the dual
    curves; the basis satisfies I(a_i, b_j) = delta_ij and all other
    pairings vanish, so :meth:`pair` is the algebraic intersection number.
    """

    a: tuple[int, ...]
    b: tuple[int, ...]

    @property
    def genus(self) -> int:
        return len(self.a)

    def pair(self, other: "SymplecticClass") -> int:
        if other.genus != self.genus:
            raise ValueError("genus mismatch")
        return sum(x * y for x, y in zip(self.a, other.b)) - sum(
            x * y for x, y in zip(other.a, self.b)
        )

    def is_zero(self) -> bool:
        return not any(self.a) and not any(self.b)

    def __neg__(self):
        return SymplecticClass(tuple(-v for v in self.a), tuple(-v for v in self.b))

    def __add__(self, other):
        return SymplecticClass(
            tuple(x + y for x, y in zip(self.a, other.a)),
            tuple(x + y for x, y in zip(self.b, other.b)),
        )


CURVES = ("relator", "alpha1", "alpha2", "disk1", "disk2")


def curve_class(d: PlanarDiagram, curve: str = "relator", duals: DualCurves | None = None) -> SymplecticClass:
    """
    Homology class of a curve carried by ``d``.

    ``curve`` is ``"relator"``, ``"alpha1"``/``"alpha2"`` (dual curves of x
    and y) or ``"disk1"``/``"disk2"`` (the disk boundaries).  The route of
    the y-dual may cross the x-dual; the class is then reported in the
    symplectic basis obtained by adding that many copies of ``[dD_x]`` to
    the y-dual.
    """
    if curve not in CURVES:
        raise DiagramError(f"curve {curve!r} is not carried by the diagram")
    if curve.startswith("disk"):
        a = [0, 0]
        a[int(curve[-1]) - 1] = 1
        return SymplecticClass(tuple(a), (0, 0))
    duals = duals or DualCurves(d)
    n_xy = duals.route_pairing
    if curve == "alpha1":
        return SymplecticClass((0, 0), (1, 0))
    if curve == "alpha2":
        return SymplecticClass((-n_xy, 0), (0, 1))
    b = abelianize(d.letters, 2)
    ix = duals.relator_crossings(0)
    iy = duals.relator_crossings(1)
    # In the corrected basis I(c, b_y) = A_y + N_xy * B_x.
    return SymplecticClass((ix, iy - n_xy * b[0]), b)


def crossing_count(d: PlanarDiagram, first: str, second: str, duals: DualCurves | None = None) -> int:
    """
    Signed intersection count of two carried curves read directly off the
    drawing: handle passages against disk boundaries, relator edges against
    dual routes, and route chords against each other.
    """
    if first not in CURVES or second not in CURVES:
        raise DiagramError("curve not carried by the diagram")
    if first == second:
        return 0
    order = {c: i for i, c in enumerate(CURVES)}
    if order[first] > order[second]:
        return -crossing_count(d, second, first, duals)
    duals = duals or DualCurves(d)
    ex = abelianize(d.letters, 2)
    if second.startswith("disk"):
        g = int(second[-1]) - 1
        if first == "relator":
            # a disk boundary meets each handle passage once, I(a_g, b_g) = +1
            return -ex[g]
        if first.startswith("alpha"):
            return -1 if int(first[-1]) - 1 == g else 0
        return 0
    if first == "relator":
        g = int(second[-1]) - 1
        return duals.relator_crossings(g)
    # alpha1 against alpha2
    return duals.route_pairing


def is_nonseparating(d: PlanarDiagram) -> bool:
    return not curve_class(d).is_zero()
