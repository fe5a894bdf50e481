"""Free-group words, Nielsen automorphisms, and outer equality.

A word in the free group of rank n is a tuple of nonzero integers:
``k`` stands for the k-th generator, ``-k`` for its inverse, and every
stored word is freely reduced.  Automorphisms carry a generator-image
table together with a certified inverse table, so inversion is free and
every identity claimed here is checked exactly.

Conventions, fixed once and used everywhere:

* a product ``f*g`` of endomorphisms means "g first, then f";
* conjugation in a group is ``g^h = h^-1 g h`` and the commutator is
  ``[g, h] = g h g^-1 h^-1``;
* the inner automorphism attached to a word w is ``c_w: x -> w^-1 x w``;
* two automorphisms are equal "outwardly" when they differ by some c_w.

Under these conventions the commutator identity
``[rho_ij^-1, rho_jk^-1] = rho_ik^-1`` holds on the nose, which is the
calibration used to validate the composition order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .linalg import Matrix


# ---------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class Word:
    """A freely reduced word; ``letters`` may be empty (the identity)."""

    letters: tuple
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be at least 1")
        for x in self.letters:
            if not isinstance(x, int) or x == 0 or abs(x) > self.rank:
                raise ValueError(f"letter {x!r} out of range for rank {self.rank}")
        for a, b in zip(self.letters, self.letters[1:]):
            if a == -b:
                raise ValueError("word is not freely reduced")

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return reduce_word(self.letters + other.letters, self.rank)

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)), self.rank)

    def is_identity(self) -> bool:
        return not self.letters

    def to_json(self):
        return list(self.letters)

    @classmethod
    def from_json(cls, data, rank: int) -> "Word":
        return cls(tuple(int(x) for x in data), rank)


def reduce_word(letters, rank: int) -> Word:
    """Freely reduce a raw letter sequence.

    Stack-based cancellation; the result does not depend on the order in
    which adjacent inverse pairs are removed (confluence of free
    reduction).
    """
    out = []
    for x in letters:
        if not isinstance(x, int) or x == 0 or abs(x) > rank:
            raise ValueError(f"letter {x!r} out of range for rank {rank}")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return Word(tuple(out), rank)


def empty_word(rank: int) -> Word:
    return Word((), rank)


def generator_word(i: int, rank: int) -> Word:
    return Word((i,), rank)


def conjugate_word(x: Word, w: Word) -> Word:
    """w^-1 x w, reduced."""
    return w.inverse() * x * w


# ---------------------------------------------------------------------------
# endomorphisms and automorphisms


@dataclass(frozen=True)
class Endomorphism:
    rank: int
    images: tuple

    def __post_init__(self):
        if len(self.images) != self.rank:
            raise ValueError("need one image per generator")
        for img in self.images:
            if not isinstance(img, Word) or img.rank != self.rank:
                raise ValueError("image rank mismatch")

    def apply(self, w: Word) -> Word:
        if w.rank != self.rank:
            raise ValueError("rank mismatch")
        out = []
        for x in w.letters:
            img = self.images[abs(x) - 1].letters
            seq = img if x > 0 else tuple(-y for y in reversed(img))
            for y in seq:
                if out and out[-1] == -y:
                    out.pop()
                else:
                    out.append(y)
        return Word(tuple(out), self.rank)

    def fixes_generators(self) -> bool:
        return all(img.letters == (i + 1,) for i, img in enumerate(self.images))


def identity_endomorphism(rank: int) -> Endomorphism:
    return Endomorphism(rank, tuple(generator_word(i, rank) for i in range(1, rank + 1)))


def compose(f: Endomorphism, g: Endomorphism) -> Endomorphism:
    """The endomorphism sending w to f(g(w))."""
    if f.rank != g.rank:
        raise ValueError("rank mismatch")
    return Endomorphism(f.rank, tuple(f.apply(img) for img in g.images))


@dataclass(frozen=True)
class Automorphism:
    """An automorphism with a certified inverse table."""

    forward: Endomorphism
    backward: Endomorphism

    def __post_init__(self):
        if self.forward.rank != self.backward.rank:
            raise ValueError("rank mismatch")
        if not compose(self.forward, self.backward).fixes_generators():
            raise ValueError("backward table is not a right inverse")
        if not compose(self.backward, self.forward).fixes_generators():
            raise ValueError("backward table is not a left inverse")

    @property
    def rank(self) -> int:
        return self.forward.rank

    def apply(self, w: Word) -> Word:
        return self.forward.apply(w)

    def inverse(self) -> "Automorphism":
        return Automorphism(self.backward, self.forward)

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        return compose_automorphisms(self, other)

    def is_identity(self) -> bool:
        return self.forward.fixes_generators()

    def to_json(self):
        return {
            "n": self.rank,
            "images": [w.to_json() for w in self.forward.images],
            "inverse_images": [w.to_json() for w in self.backward.images],
        }

    @classmethod
    def from_json(cls, obj) -> "Automorphism":
        n = int(obj["n"])
        fwd = Endomorphism(n, tuple(Word.from_json(w, n) for w in obj["images"]))
        bwd = Endomorphism(n, tuple(Word.from_json(w, n) for w in obj["inverse_images"]))
        return cls(fwd, bwd)


def compose_automorphisms(a: Automorphism, b: Automorphism) -> Automorphism:
    """a*b, i.e. apply b first."""
    return Automorphism(compose(a.forward, b.forward), compose(b.backward, a.backward))


def identity_automorphism(rank: int) -> Automorphism:
    e = identity_endomorphism(rank)
    return Automorphism(e, e)


# ---------------------------------------------------------------------------
# Nielsen generators


def _table(rank, overrides):
    images = []
    for i in range(1, rank + 1):
        images.append(Word(tuple(overrides.get(i, (i,))), rank))
    return Endomorphism(rank, tuple(images))


def rho(i: int, j: int, n: int) -> Automorphism:
    """a_i -> a_i a_j, other generators fixed."""
    _check_pair(i, j, n)
    return Automorphism(_table(n, {i: (i, j)}), _table(n, {i: (i, -j)}))


def lam(i: int, j: int, n: int) -> Automorphism:
    """a_i -> a_j a_i, other generators fixed."""
    _check_pair(i, j, n)
    return Automorphism(_table(n, {i: (j, i)}), _table(n, {i: (-j, i)}))


def eps(i: int, n: int) -> Automorphism:
    """a_i -> a_i^-1, an involution."""
    _check_index(i, n)
    t = _table(n, {i: (-i,)})
    return Automorphism(t, t)


def sigma(i: int, j: int, n: int) -> Automorphism:
    """Swap a_i and a_j, an involution."""
    _check_pair(i, j, n)
    t = _table(n, {i: (j,), j: (i,)})
    return Automorphism(t, t)


def sigma_star(i: int, n: int) -> Automorphism:
    """a_i -> a_i^-1 and a_j -> a_j a_i^-1 for j != i; an involution.

    This is the extra transposition that extends the index action of the
    symmetric group on n letters to one on n+1 letters.
    """
    _check_index(i, n)
    overrides = {i: (-i,)}
    for j in range(1, n + 1):
        if j != i:
            overrides[j] = (j, -i)
    t = _table(n, overrides)
    return Automorphism(t, t)


def delta(n: int) -> Automorphism:
    """Invert every generator; the product of all the eps_i."""
    t = _table(n, {i: (-i,) for i in range(1, n + 1)})
    return Automorphism(t, t)


def inner(w: Word) -> Automorphism:
    """The inner automorphism c_w: x -> w^-1 x w."""
    n = w.rank
    fwd = Endomorphism(n, tuple(conjugate_word(generator_word(i, n), w)
                                for i in range(1, n + 1)))
    wi = w.inverse()
    bwd = Endomorphism(n, tuple(conjugate_word(generator_word(i, n), wi)
                                for i in range(1, n + 1)))
    return Automorphism(fwd, bwd)


def nielsen(kind: str, i=None, j=None, n=None) -> Automorphism:
    """Build a named elementary automorphism.

    kind is one of rho, lambda, eps, sigma, sigma_star, delta; index
    arguments that a kind does not use may be omitted.
    """
    if n is None:
        raise ValueError("rank n is required")
    if kind == "rho":
        return rho(i, j, n)
    if kind in ("lambda", "lam"):
        return lam(i, j, n)
    if kind == "eps":
        return eps(i, n)
    if kind == "sigma":
        return sigma(i, j, n)
    if kind == "sigma_star":
        return sigma_star(i, n)
    if kind == "delta":
        return delta(n)
    raise ValueError(f"unknown generator kind {kind!r}")


def _check_index(i, n):
    if not (isinstance(i, int) and 1 <= i <= n):
        raise ValueError(f"index {i!r} out of range for rank {n}")


def _check_pair(i, j, n):
    _check_index(i, n)
    _check_index(j, n)
    if i == j:
        raise ValueError("indices must differ")


# ---------------------------------------------------------------------------
# inner detection and outer equality


def is_inner(a: Automorphism):
    """Return a conjugating word w with a = c_w, or None.

    The search is complete: if ``a = c_w`` and w is written ``a_1^t u``
    with u not starting in a_1 or its inverse, then u can be read off
    the reduced image of a_1 (it is the suffix after the middle letter)
    and ``|t|`` is bounded by half the longest generator image, because
    images of the other generators have length exactly
    ``2 len(u) + 2|t| + 1``.
    """
    n = a.rank
    if n == 1:
        return empty_word(1) if a.is_identity() else None
    u1 = a.forward.images[0]
    if len(u1) % 2 == 0:
        return None
    mid = len(u1) // 2
    if u1.letters[mid] != 1:
        return None
    tail = Word(u1.letters[mid + 1:], n)
    if conjugate_word(generator_word(1, n), tail) != u1:
        return None
    bound = max(len(img) for img in a.forward.images)
    gens = [generator_word(i, n) for i in range(1, n + 1)]
    for t in range(0, bound + 1):
        for sign in ((1,) if t == 0 else (1, -1)):
            w = Word((sign,) * t, n) * tail
            if all(a.forward.images[k] == conjugate_word(gens[k], w)
                   for k in range(n)):
                return w
    return None


def outer_equal(a: Automorphism, b: Automorphism) -> bool:
    """Equality in the outer automorphism group."""
    if a.rank != b.rank:
        raise ValueError("rank mismatch")
    return is_inner(a * b.inverse()) is not None


# ---------------------------------------------------------------------------
# the finite presentation relator suite


def _tok(kind, i=None, j=None):
    return (kind, i, j)


def _gen_from_token(tok, n):
    kind, i, j = tok
    if kind == "rho":
        return rho(i, j, n)
    if kind == "lam":
        return lam(i, j, n)
    if kind == "eps":
        return eps(i, n)
    raise ValueError(f"bad token {tok!r}")


def _comm(a, b):
    # [a, b] = a b a^-1 b^-1 as a token word
    return [(a, 1), (b, 1), (a, -1), (b, -1)]


def _inv_word(word):
    return [(g, -e) for g, e in reversed(word)]


def gersten_relators(n: int):
    """Yield ``(family, label, token_word)`` for the full relator suite.

    Every token word is a relator: it must be trivial in the outer
    automorphism group (families 1-8 are trivial already among honest
    automorphisms; family 9 is an inner automorphism).
    """
    if n < 3:
        raise ValueError("the presentation needs rank at least 3")
    idx = range(1, n + 1)

    fam = "right-right and left-left commuting pairs"
    for i, j in itertools.permutations(idx, 2):
        for k, l in itertools.permutations(idx, 2):
            if k in (i, j) or l == i:
                continue
            lab = f"i={i},j={j},k={k},l={l}"
            yield fam, "rho " + lab, _comm(_tok("rho", i, j), _tok("rho", k, l))
            yield fam, "lam " + lab, _comm(_tok("lam", i, j), _tok("lam", k, l))

    fam = "left-right commuting pairs"
    for i, j in itertools.permutations(idx, 2):
        for k, l in itertools.permutations(idx, 2):
            if k == j or l == i:
                continue
            yield fam, f"i={i},j={j},k={k},l={l}", \
                _comm(_tok("lam", i, j), _tok("rho", k, l))

    fam = "rho commutator identities"
    for i, j, k in itertools.permutations(idx, 3):
        lab = f"i={i},j={j},k={k}"
        r_ik = _tok("rho", i, k)
        a, b = _tok("rho", i, j), _tok("rho", j, k)
        c = _tok("lam", j, k)
        yield fam, "inv-inv " + lab, [(a, -1), (b, -1), (a, 1), (b, 1), (r_ik, 1)]
        yield fam, "mixed " + lab, _comm(a, c) + [(r_ik, 1)]
        yield fam, "inv-plain " + lab, [(a, -1), (b, 1), (a, 1), (b, -1), (r_ik, -1)]
        yield fam, "mixed-inv " + lab, \
            [(a, 1), (c, -1), (a, -1), (c, 1), (r_ik, -1)]

    fam = "lambda commutator identities"
    for i, j, k in itertools.permutations(idx, 3):
        lab = f"i={i},j={j},k={k}"
        l_ik = _tok("lam", i, k)
        a, b = _tok("lam", i, j), _tok("lam", j, k)
        c = _tok("rho", j, k)
        yield fam, "inv-inv " + lab, [(a, -1), (b, -1), (a, 1), (b, 1), (l_ik, 1)]
        yield fam, "mixed " + lab, _comm(a, c) + [(l_ik, 1)]
        yield fam, "inv-plain " + lab, [(a, -1), (b, 1), (a, 1), (b, -1), (l_ik, -1)]
        yield fam, "mixed-inv " + lab, \
            [(a, 1), (c, -1), (a, -1), (c, 1), (l_ik, -1)]

    fam = "quarter turns"
    for i, j in itertools.permutations(idx, 2):
        lab = f"i={i},j={j}"
        w1 = [(_tok("rho", i, j), 1), (_tok("rho", j, i), -1), (_tok("lam", i, j), 1)]
        w2 = [(_tok("lam", i, j), 1), (_tok("lam", j, i), -1), (_tok("rho", i, j), 1)]
        yield fam, "two routes " + lab, w1 + _inv_word(w2)
        yield fam, "fourth power " + lab, w1 * 4

    fam = "inversion commutes away from its index"
    e1 = _tok("eps", 1)
    for i, j in itertools.permutations(range(2, n + 1), 2):
        lab = f"i={i},j={j}"
        yield fam, "rho " + lab, _comm(e1, _tok("rho", i, j))
        yield fam, "lam " + lab, _comm(e1, _tok("lam", i, j))

    fam = "inversion twists the first pair"
    yield fam, "rho12^eps1 = lam12^-1", \
        [(e1, 1), (_tok("rho", 1, 2), 1), (e1, 1), (_tok("lam", 1, 2), 1)]
    yield fam, "rho21^eps1 = rho21^-1", \
        [(e1, 1), (_tok("rho", 2, 1), 1), (e1, 1), (_tok("rho", 2, 1), 1)]

    fam = "inversion is an involution"
    yield fam, "eps1^2", [(e1, 1), (e1, 1)]

    fam = "total twist is inner"
    for j in idx:
        word = []
        for i in idx:
            if i != j:
                word += [(_tok("rho", i, j), 1), (_tok("lam", i, j), -1)]
        yield fam, f"j={j}", word


def relator_automorphism(n: int, token_word) -> Automorphism:
    """Evaluate a token word; rightmost letter acts first."""
    acc = identity_automorphism(n)
    for tok, e in token_word:
        g = _gen_from_token(tok, n)
        if e < 0:
            g = g.inverse()
        acc = acc * g
    return acc


def _check_relator(args):
    n, token_word = args
    return is_inner(relator_automorphism(n, token_word)) is not None


def verify_gersten(n: int, jobs: int = 1) -> dict:
    """Instantiate every relator family and check it in the outer group.

    Returns a report listing, per family, how many index tuples were
    instantiated and which of them (if any) failed.
    """
    items = list(gersten_relators(n))
    if jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            results = pool.map(_check_relator, [(n, w) for (_, _, w) in items])
    else:
        results = [_check_relator((n, w)) for (_, _, w) in items]

    families: dict = {}
    for (family, label, _), ok in zip(items, results):
        entry = families.setdefault(family, {"count": 0, "failures": []})
        entry["count"] += 1
        if not ok:
            entry["failures"].append(label)
    report = {
        "n": n,
        "families": [
            {"name": name, "count": data["count"], "failures": data["failures"]}
            for name, data in families.items()
        ],
        "total": len(items),
        "ok": all(not data["failures"] for data in families.values()),
    }
    return report


# ---------------------------------------------------------------------------
# abelianisation and mod-2 functionals


def _abelian_columns(endo: Endomorphism):
    n = endo.rank
    cols = []
    for img in endo.images:
        v = [0] * n
        for x in img.letters:
            v[abs(x) - 1] += 1 if x > 0 else -1
        cols.append(v)
    return cols


def abelianize(a: Automorphism) -> Matrix:
    """The induced matrix on the abelianisation, columns = images.

    The column convention makes this a homomorphism for ``*``; the
    determinant of the result is +1 or -1.
    """
    cols = _abelian_columns(a.forward)
    m = Matrix.from_columns(cols)
    if abs(m.determinant()) != 1:
        raise ValueError("abelianised automorphism is not unimodular")
    return m


def abelianize_mod2(a: Automorphism):
    """Mod-2 abelianisation as a tuple of row tuples."""
    cols = _abelian_columns(a.forward)
    n = a.rank
    return tuple(tuple(cols[j][i] % 2 for j in range(n)) for i in range(n))


def act_on_functional(a: Automorphism, s) -> tuple:
    """Left action on nonzero mod-2 row functionals: s -> s o ab2(a^-1)."""
    s = tuple(int(x) % 2 for x in s)
    if len(s) != a.rank:
        raise ValueError("functional length mismatch")
    if not any(s):
        raise ValueError("functional must be nonzero")
    m = abelianize_mod2(a.inverse())
    n = a.rank
    return tuple(sum(s[l] * m[l][k] for l in range(n)) % 2 for k in range(n))
