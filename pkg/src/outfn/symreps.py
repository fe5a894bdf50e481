"""Finite-group representation checks over the rationals.

Covers the pieces of representation theory the rest of the package
leans on: simultaneous eigenspace decompositions for families of
commuting involutions, the divisibility and containment laws those
decompositions satisfy, and character multiplicities for the named
symmetric-group modules (trivial, determinant, standard, permutation,
signed standard).

Group presentations are carried explicitly so that every matrix
representation can be relation-checked before any law is asserted
about it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import Matrix


# ---------------------------------------------------------------------------
# group descriptors (generators plus defining relations as positive words)


@dataclass(frozen=True)
class GroupDescriptor:
    name: str
    generators: tuple
    relations: tuple  # tuples of generator names; each must equal 1
    perfect: bool = False
    order: int | None = None

    def to_json(self):
        return {
            "name": self.name,
            "generators": list(self.generators),
            "relations": [list(r) for r in self.relations],
            "perfect": self.perfect,
            "order": self.order,
        }

    @classmethod
    def from_json(cls, obj) -> "GroupDescriptor":
        return cls(
            name=obj["name"],
            generators=tuple(obj["generators"]),
            relations=tuple(tuple(r) for r in obj.get("relations", [])),
            perfect=bool(obj.get("perfect", False)),
            order=obj.get("order"),
        )


def trivial_group() -> GroupDescriptor:
    return GroupDescriptor("1", (), (), perfect=False, order=1)


def symmetric_group(k: int) -> GroupDescriptor:
    """S_k with adjacent transpositions s1..s(k-1) and Coxeter relations."""
    if k < 1:
        raise ValueError("degree must be positive")
    gens = tuple(f"s{i}" for i in range(1, k))
    rels = []
    for i in range(1, k):
        rels.append((f"s{i}", f"s{i}"))
    for i in range(1, k - 1):
        rels.append((f"s{i}", f"s{i+1}") * 3)
    for i in range(1, k):
        for j in range(i + 2, k):
            rels.append((f"s{i}", f"s{j}") * 2)
    return GroupDescriptor(f"S{k}", gens, tuple(rels), order=math.factorial(k))


def alternating_group(k: int) -> GroupDescriptor:
    """A_k generated by the 3-cycles (1 2 i), i = 3..k.

    Relations: each generator has order 3 and every product of two
    distinct generators has order 2; this presents A_k.
    """
    if k < 3:
        raise ValueError("degree must be at least 3")
    gens = tuple(f"t{i}" for i in range(3, k + 1))
    rels = []
    for g in gens:
        rels.append((g, g, g))
    for a, b in itertools.combinations(gens, 2):
        rels.append((a, b) * 2)
    return GroupDescriptor(
        f"A{k}", gens, tuple(rels), perfect=(k >= 5), order=math.factorial(k) // 2
    )


def three_cycle(i: int, k: int) -> tuple:
    """The permutation (1 2 i) of degree k in one-line form."""
    img = list(range(1, k + 1))
    img[0], img[1], img[i - 1] = 2, i, 1
    return tuple(img)


def signed_permutation_group(n: int) -> GroupDescriptor:
    """The full signed permutation group on n letters.

    Generators: e1 (flip the first letter) and the adjacent
    transpositions; this is the type-B Coxeter presentation.
    """
    if n < 2:
        raise ValueError("need at least two letters")
    base = symmetric_group(n)
    gens = ("e1",) + base.generators
    rels = [("e1", "e1"), ("e1", "s1") * 4]
    for i in range(2, n):
        rels.append(("e1", f"s{i}") * 2)
    rels.extend(base.relations)
    return GroupDescriptor(
        f"W{n}", gens, tuple(rels), order=(2 ** n) * math.factorial(n)
    )


def cage_group(k: int) -> GroupDescriptor:
    """Direct product of an order-2 centre with S_k.

    This is the full symmetry group of the graph with two vertices and
    k parallel edges: the centre swaps the vertices reversing every
    edge, S_k permutes the edges.
    """
    base = symmetric_group(k)
    gens = ("delta",) + base.generators
    rels = [("delta", "delta")]
    for s in base.generators:
        rels.append(("delta", s) * 2)
    rels.extend(base.relations)
    return GroupDescriptor(f"G{k-1}", gens, tuple(rels), order=2 * math.factorial(k))


def with_central_involution(base: GroupDescriptor, name: str = "xi",
                            generator_orders: dict | None = None) -> GroupDescriptor:
    """Extend a descriptor by a central involution.

    Commutation relations are spelled as positive words, which needs
    the order of each base generator (default 3 for t-generators, 2
    otherwise, matching the presets above).
    """
    orders = generator_orders or {}
    gens = base.generators + (name,)
    rels = list(base.relations) + [(name, name)]
    for g in base.generators:
        o = orders.get(g, 3 if g.startswith("t") else 2)
        # xi g xi g^(o-1) = [xi, g] rewritten without inverses
        rels.append((name, g, name) + (g,) * (o - 1))
    order = None if base.order is None else 2 * base.order
    return GroupDescriptor(base.name + "x2", gens, tuple(rels),
                           perfect=False, order=order)


# ---------------------------------------------------------------------------
# matrix representations


@dataclass
class FiniteRep:
    """A matrix representation given on named generators."""

    group: GroupDescriptor
    dim: int
    generators: dict = field(default_factory=dict)

    def __post_init__(self):
        for name, m in self.generators.items():
            if not isinstance(m, Matrix) or m.shape != (self.dim, self.dim):
                raise ValueError(f"generator {name!r} has the wrong shape")
            if m.determinant() == 0:
                raise ValueError(f"generator {name!r} is singular")

    def matrix_of(self, word) -> Matrix:
        acc = Matrix.identity(self.dim)
        for name in word:
            acc = acc * self.generators[name]
        return acc

    def failed_relations(self) -> list:
        out = []
        for rel in self.group.relations:
            if not self.matrix_of(rel).is_identity():
                out.append(rel)
        return out

    def verify_relations(self) -> bool:
        return not self.failed_relations()

    def direct_sum(self, other: "FiniteRep") -> "FiniteRep":
        if self.group != other.group:
            raise ValueError("descriptors differ")
        gens = {}
        for name in self.generators:
            a, b = self.generators[name], other.generators[name]
            top = a.hstack(Matrix.zeros(a.rows, b.cols))
            bot = Matrix.zeros(b.rows, a.cols).hstack(b)
            gens[name] = top.vstack(bot)
        return FiniteRep(self.group, self.dim + other.dim, gens)

    def to_json(self):
        return {
            "group": self.group.to_json(),
            "dim": self.dim,
            "generators": {k: v.to_json() for k, v in self.generators.items()},
        }

    @classmethod
    def from_json(cls, obj) -> "FiniteRep":
        return cls(
            group=GroupDescriptor.from_json(obj["group"]),
            dim=int(obj["dim"]),
            generators={k: Matrix.from_json(v) for k, v in obj["generators"].items()},
        )


def involution_family(rep: FiniteRep, n: int) -> list:
    """The n commuting sign-flip involutions of a signed-permutation rep.

    The first one must be supplied as generator ``e1``; the others are
    produced by conjugating along the adjacent transpositions, or read
    off directly when the rep lists ``e2``..``en`` itself.
    """
    if all(f"e{i}" in rep.generators for i in range(1, n + 1)):
        return [rep.generators[f"e{i}"] for i in range(1, n + 1)]
    mats = [rep.generators["e1"]]
    for i in range(1, n):
        s = rep.generators[f"s{i}"]
        mats.append(s * mats[-1] * s)
    return mats


# ---------------------------------------------------------------------------
# eigenspace decompositions


@dataclass
class Subspace:
    ambient: int
    basis: Matrix  # columns

    def __post_init__(self):
        if self.basis.rows != self.ambient:
            raise ValueError("basis lives in the wrong ambient space")
        if self.basis.cols and self.basis.rank() != self.basis.cols:
            raise ValueError("basis columns are dependent")

    @property
    def dim(self) -> int:
        return self.basis.cols

    def contains_vector(self, v) -> bool:
        col = Matrix.column_vector(v)
        if self.dim == 0:
            return col.is_zero()
        return self.basis.solve(col) is not None

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(other.basis.col(j))
                   for j in range(other.dim))

    def same_as(self, other: "Subspace") -> bool:
        return self.dim == other.dim and self.contains(other)


def kernel(m: Matrix) -> Subspace:
    """The exact right nullspace of a matrix."""
    return Subspace(m.cols, m.kernel_basis())


def span_union(ambient: int, spaces) -> Subspace:
    cols = []
    for s in spaces:
        cols.extend(s.basis.col(j) for j in range(s.dim))
    if not cols:
        return Subspace(ambient, Matrix.from_columns([], rows=ambient))
    stacked = Matrix.from_columns(cols, rows=ambient)
    red, pivots = stacked.rref()
    keep = [stacked.col(c) for c in pivots]
    return Subspace(ambient, Matrix.from_columns(keep, rows=ambient))


@dataclass
class EpsDecomposition:
    """Joint eigenspaces of n commuting involutions.

    ``spaces`` maps each subset of {1..n} (as a frozenset) to the
    subspace on which the j-th involution acts by -1 exactly for j in
    the subset; ``layer_dims[i]`` adds up the dimensions over subsets
    of size i.
    """

    n: int
    ambient: int
    spaces: dict

    @property
    def layer_dims(self) -> tuple:
        dims = [0] * (self.n + 1)
        for subset, space in self.spaces.items():
            dims[len(subset)] += space.dim
        return tuple(dims)

    def total_dim(self) -> int:
        return sum(space.dim for space in self.spaces.values())


def simultaneous_eigenspaces(involutions) -> EpsDecomposition:
    """Split the ambient space under commuting involutions.

    Raises if any input fails to square to the identity or if any pair
    fails to commute; with those hypotheses the pieces always fill the
    whole space.
    """
    mats = list(involutions)
    if not mats:
        raise ValueError("need at least one involution")
    d = mats[0].rows
    for m in mats:
        if m.shape != (d, d):
            raise ValueError("dimension mismatch")
        if not (m * m).is_identity():
            raise ValueError("input is not an involution")
    for a, b in itertools.combinations(mats, 2):
        if a * b != b * a:
            raise ValueError("involutions do not commute")
    n = len(mats)
    ident = Matrix.identity(d)
    spaces = {}
    for mask in range(2 ** n):
        subset = frozenset(j + 1 for j in range(n) if mask >> j & 1)
        stacked = None
        for j, m in enumerate(mats):
            sign = -1 if (j + 1) in subset else 1
            block = m - ident.scale(sign)
            stacked = block if stacked is None else stacked.vstack(block)
        spaces[subset] = kernel(stacked)
    decomp = EpsDecomposition(n, d, spaces)
    if decomp.total_dim() != d:
        raise AssertionError("eigenspaces do not fill the space")
    return decomp


def check_diamond(rep: FiniteRep, decomp: EpsDecomposition, i: int, j: int) -> bool:
    """Containment law for a single transvection-type generator.

    The matrix named ``rho{i}{j}`` may move the joint eigenspace of a
    subset I only into pieces indexed by subsets differing from I
    inside {i, j}.
    """
    return not diamond_violations(rep, decomp, i, j)


def diamond_violations(rep: FiniteRep, decomp: EpsDecomposition, i: int, j: int) -> list:
    name = f"rho{i}{j}"
    if name not in rep.generators:
        raise ValueError(f"rep has no generator {name!r}")
    r = rep.generators[name]
    if r.rows != decomp.ambient:
        raise ValueError("dimension mismatch")
    out = []
    for subset, space in decomp.spaces.items():
        if space.dim == 0:
            continue
        allowed_sets = {
            subset,
            subset ^ frozenset([i]),
            subset ^ frozenset([j]),
            subset ^ frozenset([i, j]),
        }
        allowed = span_union(decomp.ambient,
                             [decomp.spaces[a] for a in allowed_sets])
        for c in range(space.dim):
            image = r.apply(space.basis.col(c))
            if not allowed.contains_vector(image):
                out.append((sorted(subset), c))
    return out


def divisibility_check(decomp: EpsDecomposition) -> dict:
    """The size-i layer must have dimension divisible by C(n, i)."""
    layers = []
    ok = True
    for i, dim in enumerate(decomp.layer_dims):
        b = math.comb(decomp.n, i)
        good = dim % b == 0
        ok = ok and good
        layers.append({"i": i, "dim": dim, "binom": b, "divisible": good})
    return {"ok": ok, "layers": layers}


# ---------------------------------------------------------------------------
# symmetric-group characters and multiplicities


def partitions(n: int):
    """All partitions of n as weakly decreasing tuples."""
    if n == 0:
        yield ()
        return
    for first in range(n, 0, -1):
        for rest in partitions(n - first):
            if not rest or rest[0] <= first:
                yield (first,) + rest


def class_size(n: int, cycle_type) -> int:
    if sum(cycle_type) != n:
        raise ValueError("not a partition of n")
    counts: dict = {}
    for part in cycle_type:
        counts[part] = counts.get(part, 0) + 1
    denom = 1
    for part, mult in counts.items():
        denom *= (part ** mult) * math.factorial(mult)
    return math.factorial(n) // denom


NAMED = ("trivial", "determinant", "standard", "permutation", "signed_standard")


def named_character(name: str, n: int, cycle_type) -> int:
    """Character value of a named module at a cycle type."""
    if sum(cycle_type) != n or any(p < 1 for p in cycle_type):
        raise ValueError("not a partition of n")
    fixed = sum(1 for p in cycle_type if p == 1)
    sign = 1
    for p in cycle_type:
        if (p - 1) % 2 == 1:
            sign = -sign
    if name == "trivial":
        return 1
    if name == "determinant":
        return sign
    if name == "permutation":
        return fixed
    if name == "standard":
        return fixed - 1
    if name == "signed_standard":
        return sign * (fixed - 1)
    raise ValueError(f"unknown module name {name!r}")


def named_dimension(name: str, n: int) -> int:
    return {"trivial": 1, "determinant": 1, "standard": n - 1,
            "permutation": n, "signed_standard": n - 1}[name]


def class_representative(cycle_type, n: int) -> tuple:
    """One-line permutation whose cycles fill 1..n in order."""
    img = list(range(1, n + 1))
    start = 0
    for part in cycle_type:
        block = list(range(start + 1, start + part + 1))
        for a, b in zip(block, block[1:] + block[:1]):
            img[a - 1] = b
        start += part
    return tuple(img)


def adjacent_factorization(perm) -> list:
    """Write a permutation as s_{i1} * ... * s_{ik}, rightmost first.

    Returned as the list of generator names whose matrix product (in
    the given order) represents the permutation; the factorization is
    re-composed and compared against the input before returning.
    """
    n = len(perm)
    p = list(perm)
    swaps = []
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            if p[i] > p[i + 1]:
                p[i], p[i + 1] = p[i + 1], p[i]
                swaps.append(i + 1)
                changed = True
    names = [f"s{i}" for i in reversed(swaps)]
    check = list(range(1, n + 1))
    for i in swaps:  # rightmost factor applied first
        image = [0] * n
        for x in range(1, n + 1):
            y = check[x - 1]
            if y == i:
                y = i + 1
            elif y == i + 1:
                y = i
            image[x - 1] = y
        check = image
    if tuple(check) != tuple(perm):
        raise AssertionError("factorization failed to recompose")
    return names


def multiplicity(rep: FiniteRep, name: str, n: int) -> int:
    """Multiplicity of a named module in a relation-checked rep of S_n.

    Computed as the character inner product over cycle types; a
    non-integral or negative answer means the supplied matrices do not
    actually represent the symmetric group.
    """
    total = Fraction(0)
    for lam in partitions(n):
        perm = class_representative(lam, n)
        word = adjacent_factorization(perm)
        tr = rep.matrix_of(word).trace()
        total += Fraction(class_size(n, lam)) * tr * named_character(name, n, lam)
    value = total / math.factorial(n)
    if value.denominator != 1 or value < 0:
        raise ValueError(f"inconsistent rep: multiplicity of {name} is {value}")
    return int(value)


def branching_check(n: int) -> dict:
    """Restrict the (n+1)-letter standard module to n letters.

    The standard module is realised concretely on the cycle space of
    the graph with two vertices and n+1 parallel edges; restriction to
    the subgroup fixing the last edge must contain the standard and
    trivial modules once each and nothing else.

    For n = 3 the signed standard module has the same character as the
    standard one (the partition (2,1) is self-conjugate), so it is
    excluded from the "nothing else" clause there.
    """
    if n < 3:
        raise ValueError("needs rank at least 3")
    from . import graphs
    from . import actions

    action = actions.symmetric_cage(n + 1)
    big = graphs.induced_rep(action)
    if not big.verify_relations():
        raise AssertionError("cage action fails its defining relations")
    small = FiniteRep(
        symmetric_group(n), big.dim,
        {f"s{i}": big.generators[f"s{i}"] for i in range(1, n)},
    )
    if not small.verify_relations():
        raise AssertionError("restricted rep fails its defining relations")
    expected = {"standard": 1, "trivial": 1, "determinant": 0, "signed_standard": 0}
    got = {}
    for name in expected:
        if n == 3 and name == "signed_standard":
            continue
        got[name] = multiplicity(small, name, n)
    ok = all(got[k] == v for k, v in expected.items() if k in got)
    return {"n": n, "multiplicities": got, "ok": ok}
