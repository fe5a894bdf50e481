"""Finite multigraphs, finite group actions on them, and cycle-space
homology.

A graph is a finite set of vertices and directed edges (loops and
parallel edges allowed); orientation is the ordered pair (iota, tau) of
endpoints.  The first homology over the rationals is realised as edge
weightings balanced at every vertex, i.e. the kernel of the incidence
matrix, and group elements act on it through signed edge permutations:
an edge mapped with a reversed orientation picks up a minus sign.

On top of that sit the combinatorial certificates used by the rest of
the package: complete simple-loop enumeration (graphs are desk scale;
a hard edge cap keeps the exhaustive semantics honest), admissibility
via invariant forests, minimal-loop obstruction witnesses, orientation
equivariance on roses, loop-flipping involutions, and the splitting of
a graph into two trees exchanged by such an involution.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Matrix
from .symreps import FiniteRep, GroupDescriptor

DEFAULT_EDGE_CAP = 32


def _edge_cap() -> int:
    return int(os.environ.get("OUTFN_MAX_EDGES", DEFAULT_EDGE_CAP))


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: tuple
    ends: dict  # edge -> (iota, tau)

    def __post_init__(self):
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate edge ids")
        for e in self.edges:
            io, ta = self.ends[e]
            if io not in vset or ta not in vset:
                raise ValueError(f"edge {e!r} has a missing endpoint")

    def iota(self, e):
        return self.ends[e][0]

    def tau(self, e):
        return self.ends[e][1]

    def is_loop(self, e) -> bool:
        io, ta = self.ends[e]
        return io == ta

    def valence(self, v) -> int:
        total = 0
        for e in self.edges:
            io, ta = self.ends[e]
            total += (io == v) + (ta == v)
        return total

    def edges_at(self, v) -> list:
        return [e for e in self.edges if v in self.ends[e]]

    def component_count(self) -> int:
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            io, ta = self.ends[e]
            a, b = find(io), find(ta)
            if a != b:
                parent[a] = b
        return len({find(v) for v in self.vertices})

    def is_connected(self) -> bool:
        return self.component_count() <= 1

    def rank(self) -> int:
        return len(self.edges) - len(self.vertices) + self.component_count()

    def incidence_matrix(self) -> Matrix:
        """Rows indexed by vertices, columns by edges; tau minus iota.

        Loop columns vanish, so the kernel is exactly the space of edge
        weightings balanced at every vertex.
        """
        vindex = {v: i for i, v in enumerate(self.vertices)}
        rows = [[Fraction(0)] * len(self.edges) for _ in self.vertices]
        for j, e in enumerate(self.edges):
            io, ta = self.ends[e]
            rows[vindex[ta]][j] += 1
            rows[vindex[io]][j] -= 1
        return Matrix(rows, cols=len(self.edges))

    def to_json(self):
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e, "iota": self.ends[e][0], "tau": self.ends[e][1]}
                      for e in self.edges],
        }

    @classmethod
    def from_json(cls, obj) -> "Graph":
        edges = [rec["id"] for rec in obj["edges"]]
        ends = {rec["id"]: (rec["iota"], rec["tau"]) for rec in obj["edges"]}
        return cls(tuple(obj["vertices"]), tuple(edges), ends)


def make_graph(vertices, edge_records) -> Graph:
    """Build a graph from ``(id, iota, tau)`` triples."""
    edges = tuple(e for e, _, _ in edge_records)
    ends = {e: (io, ta) for e, io, ta in edge_records}
    return Graph(tuple(vertices), edges, ends)


# -- builders ----------------------------------------------------------------


def rose(n: int) -> Graph:
    """One vertex, n loops."""
    if n < 1:
        raise ValueError("a rose needs at least one petal")
    return make_graph(["v"], [(f"p{i}", "v", "v") for i in range(1, n + 1)])


def cage(n: int) -> Graph:
    """Two vertices joined by n parallel edges, all directed alike."""
    if n < 1:
        raise ValueError("a cage needs at least one edge")
    return make_graph(["u", "w"], [(f"c{i}", "u", "w") for i in range(1, n + 1)])


def daisy_chain(k: int) -> Graph:
    """A k-cycle with every edge doubled."""
    if k < 2:
        raise ValueError("a daisy chain needs at least two joints")
    verts = [f"v{i}" for i in range(1, k + 1)]
    recs = []
    for i in range(1, k + 1):
        a, b = f"v{i}", f"v{i % k + 1}"
        recs.append((f"d{i}a", a, b))
        recs.append((f"d{i}b", a, b))
    return make_graph(verts, recs)


def barbell() -> Graph:
    """Two loops joined by a bridge; the bridge separates."""
    return make_graph(["u", "w"],
                      [("lu", "u", "u"), ("lw", "w", "w"), ("b", "u", "w")])


def cover_of_rose(n: int) -> Graph:
    """The connected 2-fold cover of the n-rose trivialised off the last petal.

    Two vertices; the last petal lifts to the two connecting edges, the
    other petals lift to a loop at each vertex.  Rank is 2n - 1.
    """
    if n < 2:
        raise ValueError("needs rank at least 2")
    recs = []
    for i in range(1, n):
        recs.append((f"x{i}", "o0", "o0"))
        recs.append((f"y{i}", "o1", "o1"))
    recs.append(("n0", "o0", "o1"))
    recs.append(("n1", "o1", "o0"))
    return make_graph(["o0", "o1"], recs)


# ---------------------------------------------------------------------------
# graph automorphisms and actions


@dataclass(frozen=True)
class GraphAut:
    """A graph automorphism with per-edge orientation bookkeeping.

    ``flips[e]`` is True when the image of e carries the reversed
    orientation, i.e. iota(g.e) = g.tau(e) instead of g.iota(e).
    """

    graph: Graph
    vmap: dict
    emap: dict
    flips: dict

    def __post_init__(self):
        g = self.graph
        if set(self.vmap) != set(g.vertices) or set(self.vmap.values()) != set(g.vertices):
            raise ValueError("vertex map is not a permutation")
        if set(self.emap) != set(g.edges) or set(self.emap.values()) != set(g.edges):
            raise ValueError("edge map is not a permutation")
        for e in g.edges:
            io, ta = g.ends[e]
            im_io, im_ta = g.ends[self.emap[e]]
            flip = bool(self.flips.get(e, False))
            want = (self.vmap[ta], self.vmap[io]) if flip else (self.vmap[io], self.vmap[ta])
            if (im_io, im_ta) != want:
                raise ValueError(f"incidence equivariance fails at edge {e!r}")

    def flip(self, e) -> bool:
        return bool(self.flips.get(e, False))

    def __mul__(self, other: "GraphAut") -> "GraphAut":
        """Composition: other first, then self."""
        if self.graph != other.graph:
            raise ValueError("automorphisms of different graphs")
        g = self.graph
        vmap = {v: self.vmap[other.vmap[v]] for v in g.vertices}
        emap = {e: self.emap[other.emap[e]] for e in g.edges}
        flips = {e: other.flip(e) ^ self.flip(other.emap[e]) for e in g.edges}
        return GraphAut(g, vmap, emap, flips)

    def inverse(self) -> "GraphAut":
        g = self.graph
        vmap = {w: v for v, w in self.vmap.items()}
        emap = {f: e for e, f in self.emap.items()}
        flips = {self.emap[e]: self.flip(e) for e in g.edges}
        return GraphAut(g, vmap, emap, flips)

    def is_identity(self) -> bool:
        return (all(v == w for v, w in self.vmap.items())
                and all(e == f for e, f in self.emap.items())
                and not any(self.flips.values()))

    def same_as(self, other: "GraphAut") -> bool:
        return (self.vmap == other.vmap and self.emap == other.emap
                and all(self.flip(e) == other.flip(e) for e in self.graph.edges))

    def key(self):
        g = self.graph
        return (tuple(self.vmap[v] for v in g.vertices),
                tuple(self.emap[e] for e in g.edges),
                tuple(self.flip(e) for e in g.edges))

    def to_json(self):
        return {
            "vertex_map": {str(k): v for k, v in self.vmap.items()},
            "edge_map": {str(k): v for k, v in self.emap.items()},
            "flips": {str(e): bool(f) for e, f in self.flips.items() if f},
        }


def identity_aut(graph: Graph) -> GraphAut:
    return GraphAut(graph, {v: v for v in graph.vertices},
                    {e: e for e in graph.edges}, {})


def graph_aut_from_json(graph: Graph, obj) -> GraphAut:
    return GraphAut(
        graph,
        {k: v for k, v in obj["vertex_map"].items()},
        {k: v for k, v in obj["edge_map"].items()},
        {k: bool(v) for k, v in obj.get("flips", {}).items()},
    )


@dataclass
class GraphAction:
    """A group acting on a graph through named generator automorphisms."""

    graph: Graph
    group: GroupDescriptor
    maps: dict  # generator name -> GraphAut

    def __post_init__(self):
        for name in self.group.generators:
            if name not in self.maps:
                raise ValueError(f"no automorphism supplied for generator {name!r}")

    def aut_of(self, word) -> GraphAut:
        acc = identity_aut(self.graph)
        for name in word:
            acc = acc * self.maps[name]
        return acc

    def failed_relations(self) -> list:
        return [rel for rel in self.group.relations
                if not self.aut_of(rel).is_identity()]

    def verify_relations(self) -> bool:
        return not self.failed_relations()

    def edge_orbits(self) -> list:
        """Orbits of edges, each sorted, ordered by smallest member."""
        gens = [self.maps[name] for name in self.group.generators]
        seen = set()
        orbits = []
        for e in self.graph.edges:
            if e in seen:
                continue
            orbit = {e}
            frontier = [e]
            while frontier:
                cur = frontier.pop()
                for g in gens:
                    nxt = g.emap[cur]
                    if nxt not in orbit:
                        orbit.add(nxt)
                        frontier.append(nxt)
            seen |= orbit
            orbits.append(sorted(orbit, key=str))
        return orbits

    def elements(self, cap: int = 200000) -> list:
        """Every element of the generated group, as graph automorphisms."""
        ident = identity_aut(self.graph)
        found = {ident.key(): ident}
        frontier = [ident]
        gens = [self.maps[name] for name in self.group.generators]
        while frontier:
            cur = frontier.pop()
            for g in gens:
                nxt = g * cur
                k = nxt.key()
                if k not in found:
                    if len(found) >= cap:
                        raise ValueError("group is too large to enumerate")
                    found[k] = nxt
                    frontier.append(nxt)
        return list(found.values())

    def to_json(self):
        return {
            "group": self.group.to_json(),
            "maps": {name: aut.to_json() for name, aut in self.maps.items()},
        }


def action_from_json(graph: Graph, obj) -> GraphAction:
    group = GroupDescriptor.from_json(obj["group"])
    maps = {name: graph_aut_from_json(graph, rec)
            for name, rec in obj["maps"].items()}
    return GraphAction(graph, group, maps)


# ---------------------------------------------------------------------------
# homology


@dataclass
class CycleBasis:
    """A basis of the balanced edge weightings, one column per cycle."""

    graph: Graph
    matrix: Matrix  # |E| x dim

    def __post_init__(self):
        g = self.graph
        if self.matrix.rows != len(g.edges):
            raise ValueError("column length must match the edge count")
        if not (g.incidence_matrix() * self.matrix).is_zero():
            raise ValueError("columns are not balanced at every vertex")
        if self.matrix.cols != g.rank():
            raise ValueError("wrong number of independent cycles")

    @property
    def dim(self) -> int:
        return self.matrix.cols

    def coordinates(self, edge_vector) -> list:
        col = Matrix.column_vector(edge_vector)
        if self.dim == 0:
            if not col.is_zero():
                raise ValueError("vector is not in the cycle space")
            return []
        sol = self.matrix.solve(col)
        if sol is None:
            raise ValueError("vector is not in the cycle space")
        return sol.col(0)


def h1_basis(graph: Graph) -> CycleBasis:
    """Exact kernel of the incidence matrix."""
    return CycleBasis(graph, graph.incidence_matrix().kernel_basis())


def signed_edge_matrix(aut: GraphAut) -> Matrix:
    """Push-forward of edge weightings; orientation reversal negates."""
    g = aut.graph
    eindex = {e: i for i, e in enumerate(g.edges)}
    m = [[Fraction(0)] * len(g.edges) for _ in g.edges]
    for e in g.edges:
        sign = -1 if aut.flip(e) else 1
        m[eindex[aut.emap[e]]][eindex[e]] = Fraction(sign)
    return Matrix(m, cols=len(g.edges))


def induced_matrix(aut: GraphAut, basis: CycleBasis) -> Matrix:
    """Matrix of the automorphism on homology, in the given cycle basis."""
    if basis.dim == 0:
        raise ValueError("homology is trivial; no induced matrix")
    pushed = signed_edge_matrix(aut) * basis.matrix
    coords = basis.matrix.solve(pushed)
    if coords is None:
        raise AssertionError("pushed cycle left the cycle space")
    return coords


def induced_rep(action: GraphAction, basis: CycleBasis | None = None) -> FiniteRep:
    """Package the homology action of every generator as a matrix rep."""
    basis = basis or h1_basis(action.graph)
    gens = {name: induced_matrix(aut, basis) for name, aut in action.maps.items()}
    return FiniteRep(action.group, basis.dim, gens)


def trivial_multiplicity(action: GraphAction, basis: CycleBasis | None = None) -> int:
    """Multiplicity of the trivial module in the homology action.

    Averages traces over the full (enumerated) group, so it applies to
    any finite acting group without character bookkeeping.
    """
    basis = basis or h1_basis(action.graph)
    elements = action.elements()
    total = Fraction(0)
    for aut in elements:
        total += induced_matrix(aut, basis).trace()
    value = total / len(elements)
    if value.denominator != 1 or value < 0:
        raise AssertionError("trace average is not a nonnegative integer")
    return int(value)


# ---------------------------------------------------------------------------
# collapsing


@dataclass
class CollapseResult:
    quotient: Graph
    edge_projection: Matrix   # quotient edges x source edges, 0/1
    cycle_map: Matrix         # quotient cycle coords x source cycle coords
    source_basis: CycleBasis
    quotient_basis: CycleBasis


def collapse(graph: Graph, edge_subset) -> CollapseResult:
    """Collapse each component of the chosen subgraph to a point.

    The induced map on cycle spaces forgets the collapsed coordinates;
    it is surjective onto the quotient's cycle space, which is checked.
    """
    chosen = set(edge_subset)
    unknown = chosen - set(graph.edges)
    if unknown:
        raise ValueError(f"unknown edges: {sorted(map(str, unknown))}")
    parent = {v: v for v in graph.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in chosen:
        io, ta = graph.ends[e]
        a, b = find(io), find(ta)
        if a != b:
            parent[a] = b
    new_vertices = tuple(sorted({find(v) for v in graph.vertices}, key=str))
    survivors = [e for e in graph.edges if e not in chosen]
    recs = [(e, find(graph.iota(e)), find(graph.tau(e))) for e in survivors]
    quotient = make_graph(new_vertices, recs)

    eindex = {e: i for i, e in enumerate(graph.edges)}
    proj_rows = []
    for e in survivors:
        row = [Fraction(0)] * len(graph.edges)
        row[eindex[e]] = Fraction(1)
        proj_rows.append(row)
    projection = Matrix(proj_rows, cols=len(graph.edges))

    src = h1_basis(graph)
    dst = h1_basis(quotient)
    if dst.dim == 0 or src.dim == 0:
        cycle_map = Matrix.zeros(max(dst.dim, 1), max(src.dim, 1))
        if dst.dim > 0 and src.dim == 0:
            raise AssertionError("collapse cannot create new cycles")
    else:
        pushed = projection * src.matrix
        coords = dst.matrix.solve(pushed)
        if coords is None:
            raise AssertionError("projected cycle is not balanced downstairs")
        cycle_map = coords
        if cycle_map.rank() != dst.dim:
            raise AssertionError("collapse map failed to be onto in homology")
    return CollapseResult(quotient, projection, cycle_map, src, dst)


# ---------------------------------------------------------------------------
# simple loops


@dataclass(frozen=True)
class SimpleLoop:
    """A simple loop: cyclic edge path repeating no vertex.

    ``steps`` lists (edge, direction) with direction +1 when the edge
    is traversed from iota to tau; loops of length one (a single loop
    edge) and two (a pair of parallel edges) are included.
    """

    steps: tuple
    edge_set: frozenset

    def __len__(self):
        return len(self.steps)

    def edge_vector(self, graph: Graph) -> list:
        v = [0] * len(graph.edges)
        index = {e: i for i, e in enumerate(graph.edges)}
        for e, d in self.steps:
            v[index[e]] += d
        return v


def simple_loops(graph: Graph) -> list:
    """Complete enumeration up to rotation and reversal.

    Guarded by the edge cap (override with OUTFN_MAX_EDGES); two loops
    are the same exactly when they use the same edge set.
    """
    cap = _edge_cap()
    if len(graph.edges) > cap:
        raise ValueError(f"graph exceeds the edge cap ({cap})")
    loops = []
    seen = set()
    for e in graph.edges:
        if graph.is_loop(e):
            key = frozenset([e])
            if key not in seen:
                seen.add(key)
                loops.append(SimpleLoop(((e, 1),), key))

    order = {v: i for i, v in enumerate(graph.vertices)}
    non_loop = [e for e in graph.edges if not graph.is_loop(e)]
    at = {}
    for e in non_loop:
        io, ta = graph.ends[e]
        at.setdefault(io, []).append((e, ta, 1))
        at.setdefault(ta, []).append((e, io, -1))

    def walk(start, current, used_edges, steps, visited):
        for e, other, d in at.get(current, ()):
            if e in used_edges:
                continue
            if other == start:
                if len(steps) >= 1:
                    key = frozenset(used_edges | {e})
                    if key not in seen:
                        seen.add(key)
                        loops.append(SimpleLoop(tuple(steps + [(e, d)]), key))
                continue
            if order[other] <= order[start] or other in visited:
                continue
            walk(start, other, used_edges | {e}, steps + [(e, d)],
                 visited | {other})

    for start in graph.vertices:
        walk(start, start, frozenset(), [], frozenset())

    loops.sort(key=lambda l: (len(l), sorted(map(str, l.edge_set))))
    return loops


def min_loop_through_edge(graph: Graph, e) -> int | None:
    """Length of the shortest simple loop through e; None if e separates."""
    if e not in graph.ends:
        raise ValueError(f"unknown edge {e!r}")
    best = None
    for loop in simple_loops(graph):
        if e in loop.edge_set and (best is None or len(loop) < best):
            best = len(loop)
    return best


def separating_edges(graph: Graph) -> list:
    lengths = _min_loop_table(graph)
    return [e for e in graph.edges if lengths[e] is None]


def _min_loop_table(graph: Graph) -> dict:
    table = {e: None for e in graph.edges}
    for loop in simple_loops(graph):
        for e in loop.edge_set:
            if table[e] is None or len(loop) < table[e]:
                table[e] = len(loop)
    return table


def admissibility_obstruction(graph: Graph):
    """A witness (edge, endpoint) ruling out admissibility, or None.

    The witness property: every other edge meeting the chosen endpoint
    has a different minimal simple-loop length than the witness edge.
    Separating edges are skipped here; they are a diagnosis of their
    own (see ``separating_edges``).
    """
    table = _min_loop_table(graph)
    for e in graph.edges:
        if table[e] is None:
            continue
        for x in dict.fromkeys(graph.ends[e]):
            others = [f for f in graph.edges_at(x) if f != e]
            if all(table[f] != table[e] for f in others):
                return (e, x)
    return None


# ---------------------------------------------------------------------------
# admissibility


def is_forest(graph: Graph, edge_subset) -> bool:
    parent = {v: v for v in graph.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edge_subset:
        io, ta = graph.ends[e]
        if io == ta:
            return False
        a, b = find(io), find(ta)
        if a == b:
            return False
        parent[a] = b
    return True


def invariant_forests(action: GraphAction, orbit_cap: int = 20) -> list:
    """All nonempty unions of edge orbits that are forests.

    A union of orbits is invariant and every invariant edge set is such
    a union, so this enumeration is complete.
    """
    orbits = action.edge_orbits()
    if len(orbits) > orbit_cap:
        raise ValueError(f"too many edge orbits to enumerate ({len(orbits)})")
    forests = []
    for r in range(1, len(orbits) + 1):
        for combo in itertools.combinations(range(len(orbits)), r):
            union = [e for k in combo for e in orbits[k]]
            if is_forest(action.graph, union):
                forests.append(sorted(union, key=str))
    return forests


def is_admissible(action: GraphAction) -> bool:
    """Connected, no valence-2 vertices, and no invariant nontrivial forest."""
    g = action.graph
    if not g.is_connected():
        return False
    if any(g.valence(v) == 2 for v in g.vertices):
        return False
    return not invariant_forests(action)


# ---------------------------------------------------------------------------
# loop-flipping involutions and the double tree


def flips_all_simple_loops(graph: Graph, xi: GraphAut) -> bool:
    """Does the involution send every simple loop to itself reversed?

    Checked on cycle vectors: a loop is flipped exactly when its edge
    vector is negated by the signed push-forward.
    """
    if not (xi * xi).is_identity():
        raise ValueError("xi must be an involution")
    p = signed_edge_matrix(xi)
    for loop in simple_loops(graph):
        v = loop.edge_vector(graph)
        if p.apply(v) != [-Fraction(x) for x in v]:
            return False
    return True


@dataclass
class DoubleTree:
    """Splitting of a graph along the fixed set of a loop-flipping involution.

    All data lives on the subdivided graph in which every edge inverted
    by the involution has been cut at its midpoint.
    """

    subdivided: Graph
    xi: GraphAut
    d_vertices: frozenset
    d_edges: frozenset
    f_vertices: frozenset
    f_edges: frozenset

    def d_prime_edges(self) -> frozenset:
        return frozenset(self.xi.emap[e] for e in self.d_edges)

    def d_prime_vertices(self) -> frozenset:
        return frozenset(self.xi.vmap[v] for v in self.d_vertices)

    def conclusions(self) -> dict:
        """Structural check of the four claims describing the splitting."""
        g = self.subdivided
        d_sub = _subgraph(g, self.d_vertices, self.d_edges)
        dp_edges = self.d_prime_edges()
        dp_vertices = self.d_prime_vertices()
        dp_sub = _subgraph(g, dp_vertices, dp_edges)
        tree = d_sub.is_connected() and len(d_sub.edges) == len(d_sub.vertices) - 1
        mirror_tree = (dp_sub.is_connected()
                       and len(dp_sub.edges) == len(dp_sub.vertices) - 1)
        union = (self.d_vertices | dp_vertices == set(g.vertices)
                 and self.d_edges | dp_edges == set(g.edges))
        inter = (self.d_vertices & dp_vertices == self.f_vertices
                 and self.d_edges & dp_edges == self.f_edges)
        return {"d_is_tree": tree, "union_covers": union,
                "intersection_is_fixed_set": inter, "mirror_is_tree": mirror_tree}


def _subgraph(graph: Graph, vertices, edges) -> Graph:
    recs = [(e, graph.iota(e), graph.tau(e)) for e in graph.edges if e in edges]
    return make_graph(sorted(vertices, key=str), recs)


def subdivide_inverted_edges(graph: Graph, xi: GraphAut):
    """Cut every xi-inverted edge at its midpoint.

    Returns the subdivided graph, the lifted involution, and the set of
    new midpoint vertices.  After the cut no edge is both fixed and
    orientation-reversed, so the fixed set is a subcomplex.
    """
    inverted = [e for e in graph.edges if xi.emap[e] == e and xi.flip(e)]
    verts = list(graph.vertices) + [("mid", e) for e in inverted]
    recs = []
    for e in graph.edges:
        if e in inverted:
            recs.append((("half", e, 0), graph.iota(e), ("mid", e)))
            recs.append((("half", e, 1), ("mid", e), graph.tau(e)))
        else:
            recs.append((e, graph.iota(e), graph.tau(e)))
    sub = make_graph(verts, recs)

    vmap = {v: xi.vmap[v] for v in graph.vertices}
    for e in inverted:
        vmap[("mid", e)] = ("mid", e)
    emap = {}
    flips = {}
    for e in graph.edges:
        if e in inverted:
            # the two halves are exchanged, each reversing direction
            emap[("half", e, 0)] = ("half", e, 1)
            emap[("half", e, 1)] = ("half", e, 0)
            flips[("half", e, 0)] = True
            flips[("half", e, 1)] = True
        else:
            target = xi.emap[e]
            if target in inverted:
                raise AssertionError("involution maps a plain edge to a cut edge")
            emap[e] = target
            flips[e] = xi.flip(e)
    lifted = GraphAut(sub, vmap, emap, flips)
    return sub, lifted, frozenset(("mid", e) for e in inverted)


def double_tree_decomposition(graph: Graph, xi: GraphAut) -> DoubleTree:
    """Split the graph into a tree and its mirror image under xi.

    Requires a connected graph and an involution flipping every simple
    loop.  The complement of the fixed set falls apart into components
    paired off by xi; one component per pair, together with the fixed
    set, forms a tree D with D union xi.D the whole graph and
    D intersect xi.D the fixed set.
    """
    if not graph.is_connected():
        raise ValueError("graph must be connected")
    if not graph.edges:
        raise ValueError("graph must have at least one edge")
    if not flips_all_simple_loops(graph, xi):
        raise ValueError("xi does not flip every simple loop")

    sub, lifted, midpoints = subdivide_inverted_edges(graph, xi)
    f_vertices = frozenset(v for v in sub.vertices if lifted.vmap[v] == v)
    f_edges = frozenset(e for e in sub.edges
                        if lifted.emap[e] == e and not lifted.flip(e))

    movable = [e for e in sub.edges if e not in f_edges]
    parent = {e: e for e in movable}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_vertex: dict = {}
    for e in movable:
        for v in sub.ends[e]:
            if v not in f_vertices:
                by_vertex.setdefault(v, []).append(e)
    for group in by_vertex.values():
        for e in group[1:]:
            a, b = find(group[0]), find(e)
            if a != b:
                parent[a] = b

    components: dict = {}
    for e in movable:
        components.setdefault(find(e), set()).add(e)

    comps = list(components.values())
    claimed = set()
    chosen = []
    for comp in sorted(comps, key=lambda c: sorted(map(str, c))):
        key = frozenset(comp)
        if key in claimed:
            continue
        mirror = frozenset(lifted.emap[e] for e in comp)
        if mirror == key:
            raise AssertionError("a complement component is xi-invariant")
        claimed.add(key)
        claimed.add(mirror)
        chosen.append(comp)

    d_edges = set(f_edges)
    for comp in chosen:
        d_edges |= comp
    d_vertices = set(f_vertices)
    for e in d_edges:
        d_vertices.update(sub.ends[e])
    # fixed vertices incident only to mirrored components still belong to D
    result = DoubleTree(sub, lifted, frozenset(d_vertices), frozenset(d_edges),
                        f_vertices, f_edges)
    conclusions = result.conclusions()
    if not all(conclusions.values()):
        raise AssertionError(f"double-tree conclusions failed: {conclusions}")
    return result


# ---------------------------------------------------------------------------
# orientation equivariance on roses, and cage multiplicities


def invariant_orientation(action: GraphAction) -> dict:
    """Equivariant orientation data for a group acting on a rose.

    For each edge orbit the setwise stabiliser of a representative must
    preserve its orientation; when that holds an equivariant
    orientation is assembled (+1 keeps the stored direction).  The
    orbit count always equals the multiplicity of the trivial module in
    homology when the orientation exists, and both are reported.
    """
    g = action.graph
    if len(g.vertices) != 1 or not all(g.is_loop(e) for e in g.edges):
        raise ValueError("orientation equivariance is implemented for roses")
    elements = action.elements()
    orbits = action.edge_orbits()
    orientation: dict = {}
    obstruction = None
    for aut in elements:
        for e in g.edges:
            if aut.emap[e] == e and aut.flip(e):
                obstruction = e
                break
        if obstruction is not None:
            break
    if obstruction is None:
        for orbit in orbits:
            rep = orbit[0]
            orientation[rep] = 1
            for aut in elements:
                image = aut.emap[rep]
                sign = -1 if aut.flip(rep) else 1
                if image in orientation and orientation[image] != sign:
                    raise AssertionError("orientation transport is inconsistent")
                orientation[image] = sign
    mult = trivial_multiplicity(action)
    return {
        "orientation": None if obstruction is not None else orientation,
        "obstruction_edge": obstruction,
        "orbit_count": len(orbits),
        "trivial_multiplicity": mult,
        "counts_match": obstruction is None and len(orbits) == mult,
    }


def cage_trivial_multiplicity_check(action: GraphAction) -> dict:
    """On a cage, trivial multiplicity must be the orbit count minus one.

    Stated for perfect acting groups (they cannot swap the two cage
    vertices); the descriptor must carry the perfect flag.
    """
    g = action.graph
    verts = set(g.vertices)
    if len(verts) != 2 or any(g.is_loop(e) for e in g.edges):
        raise ValueError("not a cage")
    if not action.group.perfect:
        raise ValueError("check applies to perfect acting groups")
    failed = action.failed_relations()
    if failed:
        raise ValueError(f"action fails its defining relations: {failed}")
    orbits = action.edge_orbits()
    mult = trivial_multiplicity(action)
    return {
        "orbit_count": len(orbits),
        "trivial_multiplicity": mult,
        "ok": mult == len(orbits) - 1,
    }
