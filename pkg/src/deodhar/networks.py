"""Go-networks: vertex-disjoint flows, signed weighted Plucker evaluation.

A diagram's network has a boundary vertex on each edge of the southeast
border (vertical steps are sources, horizontal steps sinks) and an internal
vertex in each plus or black-stone box.  Every internal vertex receives one
horizontal edge from the nearest plus-vertex or boundary vertex strictly to
its right in its row, and sends one vertical edge down to the nearest
plus-vertex or boundary vertex strictly below in its column; white and black
stone boxes are skipped over when searching for those endpoints.  Horizontal
edges carry the weights (one per internal vertex); vertical edges weigh 1.

Crossing signs are geometric: the grid embedding places box (row r, column c)
at doubled coordinates (2r, 2c) and boundary vertices at odd coordinates just
outside the border, so two edge spans cross iff the strict interior tests
hold in integers.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .coxeter import gale_key
from .diagrams import (
    BLACK,
    Box,
    FerrersShape,
    GoDiagram,
    InvalidDiagramError,
    PLUS,
    WHITE,
    go_diagram,
)

Vertex = tuple  # ("box", i, j) | ("src", i) | ("snk", j)


class WeightConstraintError(ValueError):
    pass


class RankError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    src: Vertex
    dst: Vertex
    axis: str  # "h" or "v"
    fixed: int  # doubled row coordinate (h) or column coordinate (v)
    lo: int
    hi: int  # doubled open span (lo, hi) along the edge

    def crosses(self, other: "Edge") -> bool:
        if self.axis == other.axis:
            return False
        h, v = (self, other) if self.axis == "h" else (other, self)
        return h.lo < v.fixed < h.hi and v.lo < h.fixed < v.hi


@dataclass(frozen=True)
class GoNetwork:
    diagram: GoDiagram
    edges: tuple[Edge, ...]

    @property
    def n(self) -> int:
        return self.diagram.shape.n

    @property
    def k(self) -> int:
        return self.diagram.shape.k

    @property
    def sources(self) -> tuple[int, ...]:
        return self.diagram.shape.vertical_steps

    def out_edges(self, v: Vertex) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.src == v)

    def in_weight_box(self, e: Edge) -> Box | None:
        """The box owning a horizontal edge's weight (its target)."""
        if e.axis == "h" and e.dst[0] == "box":
            return (e.dst[1], e.dst[2])
        return None


def build_network(diagram: GoDiagram) -> GoNetwork:
    shape = diagram.shape
    fill = diagram.filling
    edges: list[Edge] = []
    for (i, j) in shape.boxes():
        if fill[(i, j)] == WHITE:
            continue
        r = shape.row_position(i)
        c = shape.column_position(j)
        # horizontal edge in from the right, skipping stone boxes
        src: Vertex = ("src", i)
        src_x = 2 * shape.row_length(i) + 1
        for j2 in sorted((jj for _, jj in shape.row_boxes(i) if jj < j), reverse=True):
            if fill[(i, j2)] == PLUS:
                src = ("box", i, j2)
                src_x = 2 * shape.column_position(j2)
                break
        edges.append(Edge(src, ("box", i, j), "h", 2 * r, 2 * c, src_x))
        # vertical edge out and down, skipping stone boxes
        dst: Vertex = ("snk", j)
        dst_y = 2 * shape.column_height(j) + 1
        for i2 in sorted(ii for ii in shape.vertical_steps if i < ii < j):
            if fill[(i2, j)] == PLUS:
                dst = ("box", i2, j)
                dst_y = 2 * shape.row_position(i2)
                break
        edges.append(Edge(("box", i, j), dst, "v", 2 * c, 2 * r, dst_y))
    return GoNetwork(diagram, tuple(edges))


@dataclass(frozen=True)
class Path:
    source: int
    sink: int
    edges: tuple[Edge, ...]

    def vertices(self) -> tuple[Vertex, ...]:
        verts: list[Vertex] = [("src", self.source)]
        verts.extend(e.dst for e in self.edges)
        return tuple(verts)


Family = tuple[Path, ...]


def enumerate_flows(net: GoNetwork, J: Iterable[int]) -> tuple[Family, ...]:
    """All collections of vertex-disjoint paths from the sources to J.

    Sources already in J are matched by empty paths.  Families come out in a
    deterministic order (sources ascending, adjacency explored in sorted
    edge order).
    """
    target = frozenset(J)
    if len(target) != net.k:
        raise InvalidDiagramError("flow target must be a k-subset")
    sources = [i for i in net.sources if i not in target]
    sinks = {j for j in target if j not in set(net.sources)}
    if len(sources) != len(sinks):
        return ()
    adjacency = {
        v: tuple(sorted(net.out_edges(v), key=lambda e: (e.axis, e.fixed, e.lo, e.hi)))
        for v in {e.src for e in net.edges}
    }

    families: list[Family] = []
    paths: list[Path] = []
    used: set[Vertex] = set()

    def walk(idx: int, here: Vertex, trail: list[Edge]) -> None:
        if here[0] == "snk":
            j = here[1]
            if j in sinks and here not in used:
                paths.append(Path(sources[idx], j, tuple(trail)))
                used.add(here)
                route(idx + 1)
                used.remove(here)
                paths.pop()
            return
        for e in adjacency.get(here, ()):
            if e.dst in used:
                continue
            if e.dst[0] != "snk":
                used.add(e.dst)
            trail.append(e)
            walk(idx, e.dst, trail)
            trail.pop()
            if e.dst[0] != "snk":
                used.remove(e.dst)

    def route(idx: int) -> None:
        if idx == len(sources):
            families.append(tuple(paths))
            return
        walk(idx, ("src", sources[idx]), [])

    route(0)
    empty = tuple(Path(i, i, ()) for i in net.sources if i in target)
    return tuple(tuple(sorted(empty + fam, key=lambda p: p.source)) for fam in families)


def has_flow(net: GoNetwork, J: Iterable[int]) -> bool:
    target = frozenset(J)
    if len(target) != net.k:
        raise InvalidDiagramError("flow target must be a k-subset")
    sources = [i for i in net.sources if i not in target]
    sinks = {j for j in target if j not in set(net.sources)}
    if len(sources) != len(sinks):
        return False
    adjacency = {
        v: tuple(net.out_edges(v)) for v in {e.src for e in net.edges}
    }
    used: set[Vertex] = set()

    def walk(idx: int, here: Vertex) -> bool:
        if here[0] == "snk":
            if here[1] in sinks and here not in used:
                used.add(here)
                ok = route(idx + 1)
                used.remove(here)
                return ok
            return False
        for e in adjacency.get(here, ()):
            if e.dst in used:
                continue
            if e.dst[0] != "snk":
                used.add(e.dst)
            ok = walk(idx, e.dst)
            if e.dst[0] != "snk":
                used.remove(e.dst)
            if ok:
                return True
        return False

    def route(idx: int) -> bool:
        if idx == len(sources):
            return True
        return walk(idx, ("src", sources[idx]))

    return route(0)


def flow_sets(net: GoNetwork) -> frozenset[frozenset[int]]:
    """All k-subsets of [n] admitting a flow."""
    return frozenset(
        frozenset(J)
        for J in itertools.combinations(range(1, net.n + 1), net.k)
        if has_flow(net, J)
    )


def flow_sign(family: Family) -> int:
    """(-1)^c for c the number of geometric crossings between path edges."""
    crossings = 0
    for a, b in itertools.combinations(range(len(family)), 2):
        for e1 in family[a].edges:
            for e2 in family[b].edges:
                if e1.crosses(e2):
                    crossings += 1
    return -1 if crossings % 2 else 1


@dataclass(frozen=True)
class WeightedGoNetwork:
    network: GoNetwork
    weights: tuple[tuple[Box, Fraction], ...]

    def __post_init__(self) -> None:
        fill = self.network.diagram.filling
        wmap = dict(self.weights)
        internals = {b for b, f in fill.items() if f in (PLUS, BLACK)}
        if set(wmap) != internals:
            raise WeightConstraintError("need exactly one weight per plus or black box")
        for b in internals:
            if fill[b] == PLUS and wmap[b] == 0:
                raise WeightConstraintError(f"weight into plus box {b} must be nonzero")
        object.__setattr__(self, "weights", tuple(sorted(wmap.items())))

    @property
    def weight_map(self) -> dict[Box, Fraction]:
        return dict(self.weights)


def weighted_network(diagram: GoDiagram, weights: Mapping[Box, Fraction | int]) -> WeightedGoNetwork:
    wmap = {b: Fraction(w) for b, w in weights.items()}
    return WeightedGoNetwork(build_network(diagram), tuple(wmap.items()))


_PRIMES = [p for p in range(2, 3000) if all(p % q for q in range(2, p))]


def seeded_weights(diagram: GoDiagram, seed: int) -> dict[Box, Fraction]:
    """Distinct prime-reciprocal weights; distinct squarefree denominators
    keep distinct path families from cancelling."""
    internals = [b for b, f in sorted(diagram.filling.items()) if f in (PLUS, BLACK)]
    rng = random.Random(seed)
    primes = rng.sample(_PRIMES[:300], len(internals))
    return {b: Fraction(1, p) for b, p in zip(internals, primes)}


@dataclass(frozen=True)
class PluckerVector:
    n: int
    k: int
    entries: tuple[tuple[tuple[int, ...], Fraction], ...]

    def __post_init__(self) -> None:
        ent = tuple(sorted((tuple(sorted(s)), Fraction(v)) for s, v in self.entries))
        object.__setattr__(self, "entries", ent)
        if all(v == 0 for _, v in ent):
            raise RankError("a Plucker vector cannot be identically zero")

    @property
    def coords(self) -> dict[frozenset[int], Fraction]:
        return {frozenset(s): v for s, v in self.entries}

    def value(self, subset: Iterable[int]) -> Fraction:
        return self.coords.get(frozenset(subset), Fraction(0))

    def vanishing_set(self) -> frozenset[frozenset[int]]:
        return frozenset(s for s, v in self.coords.items() if v == 0)

    def projectively_equal(self, other: "PluckerVector") -> bool:
        if (self.n, self.k) != (other.n, other.k):
            return False
        a, b = self.coords, other.coords
        scale = None
        for s in a:
            x, y = a[s], b.get(s, Fraction(0))
            if (x == 0) != (y == 0):
                return False
            if x != 0:
                ratio = y / x
                if scale is None:
                    scale = ratio
                elif ratio != scale:
                    return False
        return scale is not None


def plucker_vector(n: int, k: int, coords: Mapping[frozenset[int], Fraction]) -> PluckerVector:
    full = {
        frozenset(J): coords.get(frozenset(J), Fraction(0))
        for J in itertools.combinations(range(1, n + 1), k)
    }
    return PluckerVector(n, k, tuple((tuple(sorted(s)), v) for s, v in full.items()))


def plucker_of_network(wn: WeightedGoNetwork) -> PluckerVector:
    """Signed weighted flow sums over every k-subset; 1 on the source set."""
    net = wn.network
    wmap = wn.weight_map
    coords: dict[frozenset[int], Fraction] = {}
    for J in itertools.combinations(range(1, net.n + 1), net.k):
        total = Fraction(0)
        for family in enumerate_flows(net, J):
            term = Fraction(flow_sign(family))
            for path in family:
                for e in path.edges:
                    b = net.in_weight_box(e)
                    if b is not None:
                        term *= wmap[b]
            total += term
        coords[frozenset(J)] = total
    return plucker_vector(net.n, net.k, coords)


def sample_point(
    diagram: GoDiagram,
    weights: Mapping[Box, Fraction | int] | None = None,
    seed: int | None = None,
) -> PluckerVector:
    if weights is None:
        if seed is None:
            raise WeightConstraintError("provide explicit weights or a seed")
        weights = seeded_weights(diagram, seed)
    return plucker_of_network(weighted_network(diagram, weights))


def i_b_via_network(diagram: GoDiagram, box: Box) -> frozenset[int]:
    """Gale-maximal flow target of the diagram restricted around a box.

    The box becomes a plus; everything outside its open southeast quadrant
    becomes a white stone; the quadrant keeps its filling.
    """
    shape = diagram.shape
    if not shape.contains(box):
        raise InvalidDiagramError(f"box {box} is not in the shape")
    bi, bj = box
    fill = diagram.filling
    restricted = {}
    for b in shape.boxes():
        i, j = b
        if b == box:
            restricted[b] = PLUS
        elif i > bi and j < bj:
            restricted[b] = fill[b]
        else:
            restricted[b] = WHITE
    flows = flow_sets(build_network(go_diagram(shape, restricted)))
    maximal = [
        J for J in flows
        if not any(
            J != T and all(
                gale_key(1, x, shape.n) <= gale_key(1, y, shape.n)
                for x, y in zip(sorted(J), sorted(T))
            )
            for T in flows
        )
    ]
    if len(maximal) != 1:
        raise AssertionError(f"expected a unique Gale-maximal flow target at {box}")
    return maximal[0]


def network_to_json(net: GoNetwork, weights: Mapping[Box, Fraction] | None = None) -> dict:
    """Vertices and edges with their grid spans (doubled coordinates) and,
    when given, the weight carried into each internal vertex."""

    def vname(v: Vertex) -> str:
        return ":".join(str(x) for x in v)

    vertices = sorted({vname(e.src) for e in net.edges} | {vname(e.dst) for e in net.edges})
    edges = []
    for e in sorted(net.edges, key=lambda e: (e.axis, e.fixed, e.lo, e.hi)):
        doc = {
            "from": vname(e.src),
            "to": vname(e.dst),
            "axis": e.axis,
            "fixed": e.fixed,
            "span": [e.lo, e.hi],
        }
        box = net.in_weight_box(e)
        if weights is not None and box is not None:
            w = weights[box]
            doc["weight"] = f"{w.numerator}/{w.denominator}"
        edges.append(doc)
    return {"sources": list(net.sources), "vertices": vertices, "edges": edges}


# --- exact matrices ----------------------------------------------------------

Matrix = tuple[tuple[Fraction, ...], ...]


def matrix(rows: Sequence[Sequence[Fraction | int]]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def matrix_rank(m: Matrix) -> int:
    rows = [list(r) for r in m]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def det(m: Matrix) -> Fraction:
    rows = [list(r) for r in m]
    n = len(rows)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            sign = -sign
        out *= rows[c][c]
        for r in range(c + 1, n):
            if rows[r][c] != 0:
                f = rows[r][c] / rows[c][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
    return sign * out


def minors_of_matrix(m: Matrix) -> PluckerVector:
    """All k x k minors of a full-rank k x n matrix, exactly."""
    k = len(m)
    n = len(m[0]) if m else 0
    if matrix_rank(m) != k:
        raise RankError("matrix must have full row rank")
    coords = {}
    for J in itertools.combinations(range(1, n + 1), k):
        sub = tuple(tuple(row[j - 1] for j in J) for row in m)
        coords[frozenset(J)] = det(sub)
    return plucker_vector(n, k, coords)


def matrix_from_pluckers(pv: PluckerVector) -> Matrix:
    """A row-span representative whose minors reproduce pv projectively."""
    coords = pv.coords
    base = min(
        (s for s, v in coords.items() if v != 0),
        key=lambda s: tuple(sorted(s)),
    )
    anchor = sorted(base)
    scale = coords[frozenset(anchor)]
    rows = []
    for r, a in enumerate(anchor):
        row = []
        for c in range(1, pv.n + 1):
            if c in base:
                row.append(Fraction(1) if c == a else Fraction(0))
                continue
            J = sorted(set(anchor) - {a} | {c})
            positions = {col: idx for idx, col in enumerate(J)}
            perm = [positions[x] for x in anchor if x != a]
            perm.insert(r, positions[c])
            inv = sum(
                1 for x in range(len(perm)) for y in range(x + 1, len(perm))
                if perm[x] > perm[y]
            )
            row.append((-1) ** inv * coords[frozenset(J)] / scale)
        rows.append(tuple(row))
    out = tuple(rows)
    if not minors_of_matrix(out).projectively_equal(pv):
        raise AssertionError("matrix realization failed to reproduce the coordinates")
    return out
