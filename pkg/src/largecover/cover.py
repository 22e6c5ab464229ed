"""
Cyclic covers of a 2-generator, 1-relator knot-manifold presentation.

After :func:`normalize`, the surjection to the integers sends ``x`` to 1 and
``y`` to 0.  Reading the relator with a running level (``+1`` after ``x``,
``-1`` after ``x^-1``) and writing each ``y``-letter as the generator of its
level gives the staggered relator on generators ``x_1 .. x_k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .diagram import DualCurves, PlanarDiagram, SymplecticClass
from .words import (
    CyclicWord,
    Substitution,
    Word,
    abelianize,
    cyclic_reduce,
    elementary,
    letter_count,
    shift,
    signed_permutation,
    to_string,
)


class AnalysisError(ValueError):
    status = "error"


class NotB1One(AnalysisError):
    status = "not-b1-one"


class MissingGenerator(AnalysisError):
    status = "missing-generator"


class WidthMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class Presentation:
    name: str
    relator: CyclicWord
    meridian: Word | None = None
    longitude: Word | None = None

    def __post_init__(self):
        object.__setattr__(self, "relator", CyclicWord(self.relator))
        for attr in ("meridian", "longitude"):
            w = getattr(self, attr)
            if w is not None:
                object.__setattr__(self, attr, Word(w))
        if any(abs(a) > 2 for a in self.relator):
            raise ValueError("relator must be a rank-2 word")

    def uses_both_generators(self) -> bool:
        return all(letter_count(self.relator, g) for g in range(2))


@dataclass(frozen=True)
class PhiData:
    phi_x: int
    phi_y: int
    b1_ok: bool = True


def compute_phi(p: Presentation) -> PhiData:
    """Primitive solution of phi . abelianize(relator) = 0, first non-zero entry positive."""
    ax, ay = abelianize(p.relator, 2)
    if ax == 0 and ay == 0:
        raise NotB1One(f"{p.name}: relator is trivial in homology")
    g = gcd(ax, ay)
    px, py = ay // g, -ax // g
    if px < 0 or (px == 0 and py < 0):
        px, py = -px, -py
    return PhiData(px, py)


@dataclass(frozen=True)
class Normalization:
    presentation: Presentation
    substitution: Substitution
    phi_chain: tuple[tuple[int, int], ...]


def normalize(p: Presentation) -> tuple[Presentation, Substitution]:
    n = normalize_with_trace(p)
    return n.presentation, n.substitution


def normalize_with_trace(p: Presentation) -> Normalization:
    """
    Euclidean reduction of the phi values by transvections.

    A step with ``|phi_x| <= |phi_y|`` replaces the basis element ``y`` by
    ``y x^-t``; in the new basis the old ``y`` reads ``y x^t``, which is the
    substitution applied to the relator.  The returned substitution is the
    composite of these rewrites (its ``inverse`` expresses the new basis in
    the old one).
    """
    phi = compute_phi(p)
    px, py = phi.phi_x, phi.phi_y
    total = Substitution.identity(2)
    chain = [(px, py)]
    while px != 0 and py != 0:
        if abs(px) <= abs(py):
            t = int(py / px)
            step = elementary(2, 1, 0, t)
            py -= t * px
        else:
            t = int(px / py)
            step = elementary(2, 0, 1, t)
            px -= t * py
        total = total.then(step)
        chain.append((px, py))
    if px == 0:
        total = total.then(signed_permutation([2, 1]))
        px, py = py, 0
        chain.append((px, py))
    if px == -1:
        total = total.then(signed_permutation([-1, 2]))
        px = 1
        chain.append((px, py))
    assert (px, py) == (1, 0)

    def image(w):
        return None if w is None else total(w)

    relator, _ = cyclic_reduce(total(p.relator))
    q = Presentation(p.name, relator, image(p.meridian), image(p.longitude))
    assert compute_phi(q) == PhiData(1, 0)
    return Normalization(q, total, tuple(chain))


def phi_of(w, phi: PhiData) -> int:
    ax, ay = abelianize(w, 2)
    return phi.phi_x * ax + phi.phi_y * ay


# -- staggered relator --------------------------------------------------------

def _levels(letters):
    """Level of each y-letter and the level after each letter."""
    level = 0
    after = []
    emitted = []
    for a in letters:
        if abs(a) == 1:
            level += 1 if a > 0 else -1
        else:
            emitted.append((level, 1 if a > 0 else -1))
        after.append(level)
    return emitted, after


def _crossing_width(letters) -> int | None:
    """Span of the x-crossing indices (larger adjacent level) plus two."""
    level = 0
    idx = []
    for a in letters:
        if a == 1:
            level += 1
            idx.append(level)
        elif a == -1:
            idx.append(level)
            level -= 1
    if not idx:
        return None
    return max(idx) - min(idx) + 2


@dataclass(frozen=True)
class StaggeredRelator:
    mu: tuple[int, ...]
    lifted_word: CyclicWord
    k: int
    source: CyclicWord
    # level of the arc leaving each relator letter, in the shifted frame of mu
    edge_levels: tuple[int, ...] = field(repr=False)

    def mu_text(self) -> str:
        return ",".join(str(v) for v in self.mu)


def staggered_rewrite(p: Presentation | CyclicWord) -> StaggeredRelator:
    relator = p.relator if isinstance(p, Presentation) else CyclicWord(p)
    letters = tuple(relator)
    if not letter_count(letters, 0) or not letter_count(letters, 1):
        raise MissingGenerator(f"relator {to_string(letters, 2)} must use both x and y")
    if abelianize(letters, 2)[0] != 0:
        raise ValueError("relator is not normalized: x exponent sum must be 0")
    return _stagger(letters)


def _stagger(letters) -> StaggeredRelator:
    emitted, after = _levels(letters)
    low = min(lv for lv, _ in emitted)
    mu = tuple(lv - low + 1 for lv, _ in emitted)
    lifted = CyclicWord(s * m for m, (_, s) in zip(mu, emitted))
    k = max(mu) - min(mu) + 1
    if any(abs(a) == 1 for a in letters):
        pw = _crossing_width(letters)
        if pw != k:
            raise WidthMismatch(f"level span {k} but crossing width {pw}")
    return StaggeredRelator(
        mu, lifted, k, CyclicWord(letters), tuple(lv - low + 1 for lv in after)
    )


def width(s: StaggeredRelator) -> int:
    return s.k


def word_width(w) -> int:
    """
    Width of a loop with zero x-exponent, e.g. a longitude.  A loop that
    never crosses the x-disk has width 1; the trivial loop has width 0.
    """
    c, _ = cyclic_reduce(w)
    letters = tuple(c)
    if abelianize(letters, 2)[0] != 0:
        raise ValueError("loop does not lift: x exponent sum is not 0")
    if not letter_count(letters, 1):
        return 0
    return _stagger(letters).k


def is_fibered(s: StaggeredRelator) -> bool:
    """Both the lowest and the highest lifted generator occur exactly once."""
    w = s.lifted_word
    return letter_count(w, 0) == 1 and letter_count(w, s.k - 1) == 1


@dataclass(frozen=True)
class CoverPresentation:
    n: int
    k: int
    relators: tuple[CyclicWord, ...]

    @property
    def rank(self) -> int:
        return self.n


def cover_presentation(s: StaggeredRelator, n: int) -> CoverPresentation:
    if n < s.k:
        raise ValueError(f"cover degree {n} is below the width {s.k}")
    rels = tuple(CyclicWord(shift(s.lifted_word, j)) for j in range(n - s.k + 1))
    return CoverPresentation(n, s.k, rels)


def lifted_relator(s: StaggeredRelator, n: int, j: int) -> CyclicWord:
    """``w_j`` (1-based) inside the rank-``n`` cover."""
    if not 1 <= j <= n - s.k + 1:
        raise IndexError(f"lift {j} out of range for n={n}, k={s.k}")
    return CyclicWord(shift(s.lifted_word, j - 1))


def lift_curve_class(
    d: PlanarDiagram, s: StaggeredRelator, n: int, j: int, duals: DualCurves | None = None
) -> SymplecticClass:
    """
    Class of the ``j``-th lift of the relator curve on the genus-``n``
    boundary of the cover handlebody cut along one lift of the x-disk.

    The basis is the y-disk boundary of each sheet and the lift of the
    y-dual curve to that sheet; since the y-dual never crosses the x-disk
    its lifts are disjoint, so the basis is symplectic.  The a-coefficient
    at sheet ``l`` sums the route crossings of the relator arcs lying in
    that sheet.
    """
    if tuple(d.relator) != tuple(s.source):
        raise ValueError("diagram does not carry this relator")
    if not 1 <= j <= n - s.k + 1:
        raise IndexError(f"lift {j} out of range for n={n}, k={s.k}")
    duals = duals or DualCurves(d)
    a = [0] * n
    for edge, level in enumerate(s.edge_levels):
        a[level + j - 2] += duals.edge_crossings[1][edge]
    b = abelianize(lifted_relator(s, n, j), n)
    return SymplecticClass(tuple(a), b)


def sheet_dual_class(n: int, sheet: int) -> SymplecticClass:
    b = [0] * n
    b[sheet - 1] = 1
    return SymplecticClass((0,) * n, tuple(b))


def surgery_bound(k: int, m: int, p: Presentation) -> tuple[int, str]:
    """
    Least cover degree for the virtually-Haken filling statement, computed
    on a normalized presentation carrying peripheral words.
    """
    if p.meridian is None or p.longitude is None:
        raise ValueError(f"{p.name}: meridian and longitude are required")
    if abelianize(p.relator, 2)[0] != 0:
        raise ValueError("presentation is not normalized")
    ax, _ = abelianize(p.longitude, 2)
    if ax != 0:
        raise ValueError(f"{p.name}: longitude has nonzero phi")
    b = abs(abelianize(p.meridian, 2)[0])
    lam = word_width(p.longitude)
    n_min = max(m + k - 1, 2 * k - 2, lam + b)
    text = f"M(n p/q) virtually Haken for p >= 2, n >= {n_min}, gcd(n p, q) = 1"
    return n_min, text


def surgery_bound_from(k: int, m: int, longitude_width: int, b: int) -> int:
    return max(m + k - 1, 2 * k - 2, longitude_width + b)
