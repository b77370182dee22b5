"""Wilson loop diagrams: admissibility, symbolic matrices, the positroid cell,
boundary and clockwise moves, rotation cycles, and the monodromy sign.

A diagram on cyclically ordered vertices [n] is a list of propagators, each
an unordered pair of edge labels (edge x spans vertices {x, x+1} mod n); the
list order fixes the rows of the symbolic matrices.  Row p is supported on
the four vertices of its propagator's two edges, plus the appended gauge
column n+1 in the augmented matrix.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .coxeter import Permutation, gale_key, length
from .diagrams import (
    GoDiagram,
    GrassmannNecklace,
    InvalidDiagramError,
    PLUS,
    WHITE,
    FerrersShape,
    dimension,
    go_diagram,
    i_b_formula,
    is_le_diagram,
)
from .fibers import FiberComponent, top_fiber_component
from .networks import (
    Matrix,
    PluckerVector,
    det,
    matrix,
    minors_of_matrix,
    sample_point,
)


class InadmissibleError(ValueError):
    pass


class MoveRejected(ValueError):
    pass


class RealizationNotFound(RuntimeError):
    pass


class RotationError(RuntimeError):
    pass


def _mod(x: int, n: int) -> int:
    """Cyclic label in 1..n (0 wraps to n)."""
    return (x - 1) % n + 1


@dataclass(frozen=True)
class WilsonLoopDiagram:
    n: int
    propagators: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        norm = []
        for i, j in self.propagators:
            i, j = _mod(i, self.n), _mod(j, self.n)
            if i == j:
                raise InadmissibleError("a propagator needs two distinct edges")
            norm.append((min(i, j), max(i, j)))
        object.__setattr__(self, "propagators", tuple(norm))

    @property
    def k(self) -> int:
        return len(self.propagators)

    def pair_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.propagators)


def support(w: WilsonLoopDiagram, props: Iterable[tuple[int, int]] | None = None) -> frozenset[int]:
    pairs = w.propagators if props is None else tuple(props)
    verts: set[int] = set()
    for i, j in pairs:
        verts |= {i, _mod(i + 1, w.n), j, _mod(j + 1, w.n)}
    return frozenset(verts)


def _edge_vertices(x: int, n: int) -> frozenset[int]:
    return frozenset({x, _mod(x + 1, n)})


def _arc_sides(p: tuple[int, int], n: int) -> tuple[frozenset[int], frozenset[int]]:
    """Edge labels strictly between the two ends of a propagator, both ways."""
    i, j = p
    side = set()
    x = _mod(i + 1, n)
    while x != j:
        side.add(x)
        x = _mod(x + 1, n)
    other = set(range(1, n + 1)) - side - {i, j}
    return frozenset(side), frozenset(other)


def _cross(p: tuple[int, int], q: tuple[int, int], n: int) -> bool:
    """Two propagators cross iff their end edges strictly interleave."""
    if set(p) & set(q):
        return False
    a, b = _arc_sides(p, n)
    return len({e in a for e in q}) == 2


@dataclass(frozen=True)
class AdmissibilityReport:
    ok: bool
    reasons: tuple[str, ...]


def admissibility_report(w: WilsonLoopDiagram) -> AdmissibilityReport:
    reasons = []
    if w.n < w.k + 4:
        reasons.append(f"need n >= k+4, got n={w.n}, k={w.k}")
    for r in range(1, w.k + 1):
        for props in itertools.combinations(w.propagators, r):
            if len(support(w, props)) < len(props) + 3:
                reasons.append(f"support of {sorted(props)} has fewer than {len(props) + 3} vertices")
    for p, q in itertools.combinations(w.propagators, 2):
        if _cross(p, q, w.n):
            reasons.append(f"propagators {p} and {q} cross")
    return AdmissibilityReport(not reasons, tuple(reasons))


def is_admissible(w: WilsonLoopDiagram) -> bool:
    return admissibility_report(w).ok


def ensure_admissible(w: WilsonLoopDiagram) -> None:
    report = admissibility_report(w)
    if not report.ok:
        raise InadmissibleError("; ".join(report.reasons))


# --- symbolic matrices and minors --------------------------------------------

Entry = tuple[int, int, int] | None  # (row, column, sign) or a structural zero


@dataclass(frozen=True)
class SymbolicMatrix:
    k: int
    m: int
    entries: tuple[tuple[Entry, ...], ...]

    def row_support(self, p: int) -> frozenset[int]:
        return frozenset(q + 1 for q, e in enumerate(self.entries[p - 1]) if e is not None)


def c_matrix(w: WilsonLoopDiagram, signs: Mapping[tuple[int, int], int] | None = None) -> SymbolicMatrix:
    rows = []
    for p, prop in enumerate(w.propagators, start=1):
        verts = support(w, [prop])
        row = tuple(
            (p, q, (signs or {}).get((p, q), 1)) if q in verts else None
            for q in range(1, w.n + 1)
        )
        rows.append(row)
    return SymbolicMatrix(w.k, w.n, tuple(rows))


def c_star_matrix(w: WilsonLoopDiagram, signs: Mapping[tuple[int, int], int] | None = None) -> SymbolicMatrix:
    base = c_matrix(w, signs)
    rows = tuple(
        row + ((p, w.n + 1, (signs or {}).get((p, w.n + 1), 1)),)
        for p, row in enumerate(base.entries, start=1)
    )
    return SymbolicMatrix(w.k, w.n + 1, rows)


@dataclass(frozen=True)
class SparsePolynomial:
    """Sum of monomials in the c_{p,q}; each monomial is a set of variables."""

    terms: tuple[tuple[tuple[tuple[int, int], ...], Fraction], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(sorted(
            (tuple(sorted(mon)), Fraction(c)) for mon, c in self.terms if c != 0
        )))

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        bits = []
        for mon, c in self.terms:
            name = "*".join(f"c[{p},{q}]" for p, q in mon)
            bits.append(f"{'+' if c > 0 else '-'} {abs(c) if abs(c) != 1 else ''}{name}")
        return " ".join(bits).lstrip("+ ")


def symbolic_minor(m: SymbolicMatrix, cols: Iterable[int]) -> SparsePolynomial:
    J = sorted(cols)
    if len(set(J)) != len(J) or len(J) != m.k:
        raise InvalidDiagramError("minor needs k distinct columns")
    terms: dict[tuple, Fraction] = {}
    for perm in itertools.permutations(range(m.k)):
        entries = [m.entries[r][J[perm[r]] - 1] for r in range(m.k)]
        if any(e is None for e in entries):
            continue
        sign = 1
        for a in range(m.k):
            for b in range(a + 1, m.k):
                if perm[a] > perm[b]:
                    sign = -sign
        coeff = Fraction(sign)
        mon = []
        for p, q, s in entries:
            coeff *= s
            mon.append((p, q))
        key = tuple(sorted(mon))
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return SparsePolynomial(tuple(terms.items()))


def _matching_bases(supports: Sequence[frozenset[int]], n: int) -> frozenset[frozenset[int]]:
    k = len(supports)
    out = set()
    for J in itertools.combinations(range(1, n + 1), k):
        for perm in itertools.permutations(J):
            if all(perm[r] in supports[r] for r in range(k)):
                out.add(frozenset(J))
                break
    return frozenset(out)


def matroid_bases(w: WilsonLoopDiagram) -> frozenset[frozenset[int]]:
    """Column sets with a symbolically nonzero minor; cross-checked against
    the transversal matching criterion on the row supports."""
    cm = c_matrix(w)
    by_minor = frozenset(
        frozenset(J)
        for J in itertools.combinations(range(1, w.n + 1), w.k)
        if not symbolic_minor(cm, J).is_zero()
    )
    supports = [support(w, [p]) for p in w.propagators]
    by_matching = _matching_bases(supports, w.n)
    if by_minor != by_matching:
        raise AssertionError("determinant and matching bases disagree")
    return by_minor


# --- the positroid cell -------------------------------------------------------

def sigma_cell(w: WilsonLoopDiagram) -> tuple[GrassmannNecklace, GoDiagram, int]:
    """Necklace, Le-diagram, and dimension of the cell carved out by the
    diagram's matrix; the dimension always comes out 3k."""
    ensure_admissible(w)
    bases = matroid_bases(w)
    n, k = w.n, w.k
    sets = []
    for m in range(1, n + 1):
        best = min(bases, key=lambda J: tuple(sorted((x - m) % n for x in J)))
        sets.append(best)
    neck = GrassmannNecklace(n, k, tuple(sets))

    shape = FerrersShape(n, k, tuple(sorted(sets[0])))
    filling: dict[tuple[int, int], str] = {}
    for b in shape.boxes():
        probe = {c: filling.get(c, WHITE) for c in shape.boxes()}
        probe[b] = PLUS
        ib = i_b_formula(go_diagram(shape, probe), b)
        filling[b] = PLUS if ib in bases else WHITE
    diagram = go_diagram(shape, filling)
    if not is_le_diagram(diagram):
        raise AssertionError("cell reconstruction did not produce a Le-diagram")
    dim = dimension(diagram)
    if dim != 3 * k:
        raise AssertionError(f"cell dimension {dim} != 3k")
    return neck, diagram, dim


def d_star_diagram(w: WilsonLoopDiagram) -> GoDiagram:
    """Diagram of the top component of the fiber over the cell; dimension 4k."""
    _, le, _ = sigma_cell(w)
    comp = top_fiber_component(le)
    if dimension(comp.extended) != 4 * w.k:
        raise AssertionError("fiber top component is not 4k-dimensional")
    return comp.extended


def positivity_violation(w: WilsonLoopDiagram) -> bool:
    """True iff some column of the cell's Le-diagram has a plus strictly above
    a white stone, i.e. the fiber leaves the nonnegative part."""
    _, le, _ = sigma_cell(w)
    fill = le.filling
    for (i, j) in le.boxes_with(WHITE):
        if any(fill.get((i2, j)) == PLUS for i2 in range(1, i)):
            return True
    return False


# --- positive realizations ----------------------------------------------------

def _row_sign_patterns(size: int) -> list[tuple[int, ...]]:
    """All-same first, then a single sign change along the ordered support."""
    out = [tuple([1] * size)]
    out += [tuple([1] * t + [-1] * (size - t)) for t in range(1, size)]
    out.append(tuple([-1] * size))
    out += [tuple([-1] * t + [1] * (size - t)) for t in range(1, size)]
    return out


def positive_realization(
    w: WilsonLoopDiagram, seed: int = 0, trials: int = 24
) -> tuple[Matrix, dict[tuple[int, int], int]]:
    """Signs and positive magnitudes making every basis minor positive.

    Searches per-row sign vectors with at most one change across the row's
    support, row 1 varying fastest, drawing seeded magnitudes until the
    basis minors all come out positive.  Raises RealizationNotFound when the
    search space is exhausted (a diagnostic, not a disproof).
    """
    ensure_admissible(w)
    bases = sorted(matroid_bases(w), key=lambda J: tuple(sorted(J)))
    supports = [sorted(support(w, [p])) for p in w.propagators]
    rng = random.Random(seed)
    draws = []
    for _ in range(trials):
        draws.append({
            (p, q): Fraction(rng.randint(2, 60), rng.randint(2, 60))
            for p, sup in enumerate(supports, start=1)
            for q in sup
        })
    pattern_lists = [_row_sign_patterns(len(sup)) for sup in supports]
    for combo in itertools.product(*reversed(pattern_lists)):
        combo = tuple(reversed(combo))
        signs = {
            (p, q): combo[p - 1][idx]
            for p, sup in enumerate(supports, start=1)
            for idx, q in enumerate(sup)
        }
        for mags in draws:
            rows = []
            for p, sup in enumerate(supports, start=1):
                row = [
                    signs[(p, q)] * mags[(p, q)] if q in sup else Fraction(0)
                    for q in range(1, w.n + 1)
                ]
                rows.append(row)
            m = matrix(rows)
            if all(det(tuple(tuple(r[j - 1] for j in sorted(J)) for r in m)) > 0 for J in bases):
                return m, signs
    raise RealizationNotFound("no positive sign pattern found in the search space")


# --- boundary moves -----------------------------------------------------------

@dataclass(frozen=True)
class BoundaryDiagram:
    """Zero pattern of a boundary matrix: per-row supports plus, for moves in
    which two propagator ends meet, the imposed two-by-two minor."""

    n: int
    supports: tuple[frozenset[int], ...]
    relation: tuple[int, int, int] | None  # (row p, row q, edge a)
    moved: tuple[int, int]  # (row p, vertex v) that produced the boundary

    def signature(self):
        rel = None
        if self.relation is not None:
            p, q, a = self.relation
            rel = (min(p, q), max(p, q), a)
        return (self.n, self.supports, rel)


def _end_edge(prop: tuple[int, int], v: int, n: int) -> int:
    for x in prop:
        if v in _edge_vertices(x, n):
            return x
    raise MoveRejected(f"vertex {v} is not in the support of {prop}")


def _edge_order_position(other_end: int, a: int, n: int) -> int:
    """Nesting depth of an end on edge a: larger sits closer to vertex a."""
    return (other_end - (a + 1)) % n


def boundary_move(w: WilsonLoopDiagram, prop: tuple[int, int], v: int) -> BoundaryDiagram:
    """Slide one end of a propagator away from vertex v until it reaches the
    next vertex or touches another propagator's end on the same edge."""
    prop = (min(_mod(prop[0], w.n), _mod(prop[1], w.n)), max(_mod(prop[0], w.n), _mod(prop[1], w.n)))
    if prop not in w.propagators:
        raise MoveRejected(f"{prop} is not a propagator of the diagram")
    p_idx = w.propagators.index(prop) + 1
    if v not in support(w, [prop]):
        raise MoveRejected(f"vertex {v} is not in the support of {prop}")
    a = _end_edge(prop, v, w.n)
    other_end = prop[0] if a == prop[1] else prop[1]
    toward = _mod(a + 1, w.n) if v == a else a

    # ends of other propagators sitting on the same edge, ordered by nesting
    here = _edge_order_position(other_end, a, w.n)
    blockers = []
    for q_idx, q in enumerate(w.propagators, start=1):
        if q_idx == p_idx or a not in q:
            continue
        q_other = q[0] if a == q[1] else q[1]
        pos = _edge_order_position(q_other, a, w.n)
        if (v == a and pos < here) or (v != a and pos > here):
            blockers.append((pos, q_idx))
    if blockers:
        # the nearest end in the direction of travel is touched first
        _, q_idx = max(blockers) if v == a else min(blockers)
        return BoundaryDiagram(
            w.n,
            tuple(support(w, [q]) for q in w.propagators),
            (p_idx, q_idx, a),
            (p_idx, v),
        )

    new_supports = [
        support(w, [q]) if idx != p_idx else support(w, [q]) - {v}
        for idx, q in enumerate(w.propagators, start=1)
    ]
    for r in range(2, w.k + 1):
        for rows in itertools.combinations(range(w.k), r):
            union = frozenset().union(*(new_supports[t] for t in rows))
            if len(union) < r + 3:
                raise MoveRejected(
                    f"rows {tuple(t + 1 for t in rows)} supported on {len(union)} < {r + 3} vertices"
                )
    return BoundaryDiagram(w.n, tuple(new_supports), None, (p_idx, v))


def boundary_minor(w: WilsonLoopDiagram, prop: tuple[int, int], v: int) -> SparsePolynomial:
    bd = boundary_move(w, prop, v)
    p_idx, _ = bd.moved
    if bd.relation is None:
        return SparsePolynomial(((((p_idx, v),), Fraction(1)),))
    p, q, a = bd.relation
    a1 = _mod(a + 1, w.n)
    return SparsePolynomial((
        (((p, a), (q, a1)), Fraction(1)),
        (((q, a), (p, a1)), Fraction(-1)),
    ))


def shares_boundary(
    w1: WilsonLoopDiagram, w2: WilsonLoopDiagram
) -> tuple[bool, tuple[tuple[tuple[int, int], int, tuple[int, int], int], ...]]:
    """Whether some boundary matrices of the two diagrams agree as zero
    patterns; returns the witnessing (propagator, vertex) pairs."""
    if (w1.n, w1.k) != (w2.n, w2.k):
        raise InadmissibleError("diagrams must share n and k")

    def boundaries(w):
        out = []
        for prop in w.propagators:
            for v in sorted(support(w, [prop])):
                try:
                    out.append((prop, v, boundary_move(w, prop, v)))
                except MoveRejected:
                    continue
        return out

    witnesses = []
    for p1, v1, b1 in boundaries(w1):
        for p2, v2, b2 in boundaries(w2):
            if b1.signature() == b2.signature():
                witnesses.append((p1, v1, p2, v2))
    return bool(witnesses), tuple(witnesses)


# --- clockwise moves and rotation ----------------------------------------------

def _is_short(prop: tuple[int, int], n: int) -> bool:
    d = (prop[1] - prop[0]) % n
    return d == 2 or d == n - 2


def clockwise_move(
    w: WilsonLoopDiagram, prop: tuple[int, int], end: int | None = None
) -> WilsonLoopDiagram:
    """Move a propagator clockwise: both ends when they are two edges apart,
    otherwise the single end given by its current edge label."""
    prop = (min(prop), max(prop))
    if prop not in w.propagators:
        raise MoveRejected(f"{prop} is not a propagator of the diagram")
    if _is_short(prop, w.n):
        new = (_mod(prop[0] - 1, w.n), _mod(prop[1] - 1, w.n))
    else:
        if end not in prop:
            raise MoveRejected("a long propagator moves one end; pass its edge label")
        other = prop[0] if end == prop[1] else prop[1]
        new = (_mod(end - 1, w.n), other)
    idx = w.propagators.index(prop)
    props = list(w.propagators)
    props[idx] = new
    moved = WilsonLoopDiagram(w.n, tuple(props))
    report = admissibility_report(moved)
    if not report.ok:
        raise MoveRejected("; ".join(report.reasons))
    return moved


def series_wld(k: int, n: int) -> WilsonLoopDiagram:
    """Propagators laid end to end: (1,3), (3,5), ..., as tight as allowed."""
    if not (n > 2 * k and n >= k + 4):
        raise InadmissibleError(f"series family needs n > 2k and n >= k+4, got ({k}, {n})")
    w = WilsonLoopDiagram(n, tuple((2 * r - 1, 2 * r + 1) for r in range(1, k + 1)))
    ensure_admissible(w)
    return w


def parallel_wld(k: int, n: int) -> WilsonLoopDiagram:
    """Nested propagators (k, k+2) inside ... inside (1, 2k+1), innermost first."""
    if not (n >= k + 4 and n >= 2 * k + 2):
        raise InadmissibleError(f"parallel family needs n >= max(k+4, 2k+2), got ({k}, {n})")
    w = WilsonLoopDiagram(n, tuple((k + 1 - r, k + 1 + r) for r in range(1, k + 1)))
    ensure_admissible(w)
    return w


@dataclass(frozen=True)
class RotationResult:
    diagrams: tuple[WilsonLoopDiagram, ...]
    sigma: Permutation  # final row r holds the pair of original row sigma(r)
    moves: tuple[tuple[int, tuple[int, int], tuple[int, int]], ...]  # (row, old, new)


def _travel(start: int, dest: int, n: int) -> int:
    return (start - dest) % n


def rotation_sequence(w: WilsonLoopDiagram, family: str) -> RotationResult:
    """Rotate each propagator clockwise to its successor slot.

    Series diagrams send row r to the original slots of row r+1 (cyclically);
    parallel diagrams send row r to the slots of row k+1-r with its two ends
    exchanged.  Moves are scheduled depth-first, preferring at every state
    the unfinished propagator with the lexicographically smallest pair; the
    search backtracks out of dead ends, so the result is deterministic.
    """
    ensure_admissible(w)
    k, n = w.k, w.n
    if k < 1:
        raise RotationError("rotation needs at least one propagator")
    ends = [tuple(p) for p in w.propagators]
    if family == "series":
        dests = [ends[(r + 1) % k] for r in range(k)]
    elif family == "parallel":
        dests = [tuple(reversed(ends[k - 1 - r])) for r in range(k)]
    else:
        raise ValueError("family must be 'series' or 'parallel'")
    remaining = [
        (_travel(ends[r][0], dests[r][0], n), _travel(ends[r][1], dests[r][1], n))
        for r in range(k)
    ]

    def admissible_state(state) -> bool:
        try:
            return is_admissible(WilsonLoopDiagram(n, tuple(state)))
        except InadmissibleError:
            return False

    seen: set[tuple] = set()
    moves: list[tuple[int, tuple[int, int], tuple[int, int]]] = []
    diagrams: list[WilsonLoopDiagram] = [w]

    def candidates(state, rem):
        order = sorted(
            (r for r in range(k) if rem[r] != (0, 0)),
            key=lambda r: tuple(sorted(state[r])),
        )
        for r in order:
            e1, e2 = state[r]
            if _is_short((min(e1, e2), max(e1, e2)), n):
                if rem[r][0] > 0 and rem[r][1] > 0:
                    yield r, (_mod(e1 - 1, n), _mod(e2 - 1, n)), (1, 1)
            else:
                if rem[r][0] > 0:
                    yield r, (_mod(e1 - 1, n), e2), (1, 0)
                if rem[r][1] > 0:
                    yield r, (e1, _mod(e2 - 1, n)), (0, 1)

    def search(state, rem) -> bool:
        if all(x == (0, 0) for x in rem):
            return True
        key = (tuple(state), tuple(rem))
        if key in seen:
            return False
        seen.add(key)
        for r, new_pair, (d1, d2) in candidates(state, rem):
            nxt = list(state)
            nxt[r] = new_pair
            if not admissible_state(nxt):
                continue
            old = state[r]
            nr = list(rem)
            nr[r] = (rem[r][0] - d1, rem[r][1] - d2)
            moves.append((r + 1, old, new_pair))
            diagrams.append(WilsonLoopDiagram(n, tuple(nxt)))
            if search(nxt, nr):
                return True
            moves.pop()
            diagrams.pop()
        return False

    if not search(list(ends), list(remaining)):
        raise RotationError(f"no valid rotation found after exploring {len(seen)} states")

    final = diagrams[-1]
    sigma = []
    used: set[int] = set()
    for r in range(k):
        target = final.propagators[r]
        s = next(
            i for i, p in enumerate(w.propagators)
            if p == target and i not in used
        )
        used.add(s)
        sigma.append(s + 1)
    return RotationResult(tuple(diagrams), tuple(sigma), tuple(moves))


def permutation_sign(sigma: Permutation) -> int:
    return -1 if length(sigma) % 2 else 1


# --- charts and monodromy -------------------------------------------------------

def chart_index(w1: WilsonLoopDiagram, w2: WilsonLoopDiagram) -> frozenset[int]:
    """Lexicographically minimal common basis of the two matroids and of a
    shared boundary's zero pattern."""
    b1, b2 = matroid_bases(w1), matroid_bases(w2)
    if w1 == w2:
        return min(b1, key=lambda J: tuple(sorted(J)))
    ok, witnesses = shares_boundary(w1, w2)
    if not ok:
        raise InadmissibleError("diagrams do not share a boundary matrix")
    prop, v, _, _ = witnesses[0]
    boundary = boundary_move(w1, prop, v)
    common = [
        J for J in sorted(b1 & b2, key=lambda J: tuple(sorted(J)))
        if not symbolic_minor(_pattern_matrix(boundary), J).is_zero()
    ]
    if not common:
        raise InadmissibleError("no common basis for the chart")
    return common[0]


def _pattern_matrix(bd: BoundaryDiagram) -> SymbolicMatrix:
    rows = []
    for p, sup in enumerate(bd.supports, start=1):
        rows.append(tuple((p, q, 1) if q in sup else None for q in range(1, bd.n + 1)))
    return SymbolicMatrix(len(bd.supports), bd.n, tuple(rows))


@dataclass(frozen=True)
class MonodromyStep:
    index: int
    chart_prev: frozenset[int]
    chart_next: frozenset[int]
    det_sign: int
    realization: str  # "signed-matrix" or "network-point"


@dataclass(frozen=True)
class MonodromyReport:
    diagrams: tuple[WilsonLoopDiagram, ...]
    charts: tuple[frozenset[int], ...]
    steps: tuple[MonodromyStep, ...]
    sigma: Permutation
    wrap_sign: int
    total: int

    def __post_init__(self) -> None:
        prod = self.wrap_sign
        for s in self.steps:
            prod *= s.det_sign
        if prod != self.total:
            raise AssertionError("total must be the product of step signs and the wrap sign")


def _interior_point(w: WilsonLoopDiagram, seed: int) -> PluckerVector:
    """An exact point of the open cell: positive weights on the Le-network."""
    _, le, _ = sigma_cell(w)
    pv = sample_point(le, seed=seed)
    bases = matroid_bases(w)
    for J in bases:
        if pv.value(J) <= 0:
            raise AssertionError("network point is not in the open cell")
    if pv.vanishing_set() != frozenset(
        frozenset(J) for J in itertools.combinations(range(1, w.n + 1), w.k)
        if frozenset(J) not in bases
    ):
        raise AssertionError("network point has the wrong vanishing pattern")
    return pv


def monodromy_sign(
    w: WilsonLoopDiagram,
    family: str,
    seed: int = 7,
    attempt_sign_patterns: bool = True,
) -> MonodromyReport:
    """Product of chart-transition determinant signs around a rotation cycle.

    Every transition is evaluated exactly at an interior point of the
    corresponding cell; the wrap step contributes the sign of the row
    permutation relating the final matrix to the initial one.  A negative
    total certifies that the chart cycle cannot be consistently oriented.
    """
    rot = rotation_sequence(w, family)
    seq = rot.diagrams
    charts = tuple(chart_index(seq[i], seq[i + 1]) for i in range(len(seq) - 1))
    attempt_sign_patterns = attempt_sign_patterns and w.k <= 3
    steps = []
    for l in range(1, len(charts)):
        point = _interior_point(seq[l], seed + l)
        a, b = point.value(charts[l - 1]), point.value(charts[l])
        if a == 0 or b == 0:
            raise AssertionError("chart coordinate vanishes at an interior point")
        realization = "network-point"
        if attempt_sign_patterns:
            try:
                positive_realization(seq[l], seed=seed + l, trials=6)
                realization = "signed-matrix"
            except RealizationNotFound:
                pass
        steps.append(MonodromyStep(l, charts[l - 1], charts[l], 1 if a * b > 0 else -1, realization))

    point = _interior_point(seq[-1], seed)
    a = point.value(charts[-1])
    b = point.value(charts[0])
    boundary_signs = 1 if a * b > 0 else -1
    wrap = permutation_sign(rot.sigma) * boundary_signs
    total = wrap
    for s in steps:
        total *= s.det_sign
    return MonodromyReport(seq, charts, tuple(steps), rot.sigma, wrap, total)


# --- serialization --------------------------------------------------------------

def wld_to_json(w: WilsonLoopDiagram) -> dict:
    return {"n": w.n, "propagators": [list(p) for p in w.propagators]}


def wld_from_json(data: Mapping) -> WilsonLoopDiagram:
    try:
        return WilsonLoopDiagram(int(data["n"]), tuple(tuple(p) for p in data["propagators"]))
    except (KeyError, TypeError) as exc:
        raise InadmissibleError(f"malformed diagram document: {exc}") from exc


def monodromy_to_json(report: MonodromyReport) -> dict:
    return {
        "diagrams": [wld_to_json(d) for d in report.diagrams],
        "charts": [sorted(c) for c in report.charts],
        "steps": [
            {
                "index": s.index,
                "chart_prev": sorted(s.chart_prev),
                "chart_next": sorted(s.chart_next),
                "det_sign": s.det_sign,
                "realization": s.realization,
            }
            for s in report.steps
        ],
        "sigma": list(report.sigma),
        "wrap_sign": report.wrap_sign,
        "total": report.total,
    }
