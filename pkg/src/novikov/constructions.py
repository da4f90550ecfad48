"""Factories for the algebras under study.

Every factory is deterministic: equal arguments produce identical structure
constants.  Basis labels follow the conventional names (x_i, y_{i,j},
z_{i,j,k} for the free 3-step algebras, e_{i,j} for matrix algebras, e_i/f_i
for the filiform families).
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .core import Algebra, NovikovStructure, Q, QZERO, SparseVec, multiply_sparse
from .subspaces import Subspace, nullspace, rref, two_sided_ideal_witness


@dataclass(frozen=True)
class NamedAlgebra:
    """A constructed algebra: a Lie bracket, optionally with a Novikov product."""

    name: str
    lie: Algebra
    product: Algebra | None = None
    metadata: dict = field(default_factory=dict, compare=False)

    @property
    def dim(self) -> int:
        return self.lie.dim

    @property
    def structure(self) -> NovikovStructure:
        if self.product is None:
            raise ValueError(f"{self.name} carries no Novikov product")
        return NovikovStructure(self.lie, self.product)


# ---------------------------------------------------------------------------
# free 3-step nilpotent Lie algebras and their Novikov product

class Free3Basis:
    """Basis bookkeeping for the free 3-step nilpotent Lie algebra on n generators.

    Basis: x_i (1<=i<=n); y_{i,j} (1<=i<j<=n); z_{i,j,k} (1<=j<k<=n, 1<=i<=k).
    A symbol z_{i,j,k} with i > k is not a basis element and rewrites as
    -z_{j,k,i} + z_{k,j,i}.
    """

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("need at least 2 generators")
        self.n = n
        self.x = {i: i - 1 for i in range(1, n + 1)}
        labels = [f"x{i}" for i in range(1, n + 1)]
        self.y: dict[tuple[int, int], int] = {}
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                self.y[(i, j)] = len(labels)
                labels.append(f"y_{{{i},{j}}}")
        self.z: dict[tuple[int, int, int], int] = {}
        for j in range(1, n + 1):
            for k in range(j + 1, n + 1):
                for i in range(1, k + 1):
                    self.z[(i, j, k)] = len(labels)
                    labels.append(f"z_{{{i},{j},{k}}}")
        self.labels = tuple(labels)
        self.dim = len(labels)

    def zvec(self, i: int, j: int, k: int) -> SparseVec:
        """z_{i,j,k} expressed in the basis (applies the i > k rewrite)."""
        if not j < k:
            raise ValueError("z symbol needs j < k")
        if i <= k:
            return {self.z[(i, j, k)]: Q(1)}
        return {self.z[(j, k, i)]: Q(-1), self.z[(k, j, i)]: Q(1)}


def free_3step_lie(n: int) -> NamedAlgebra:
    """Free 3-step nilpotent Lie algebra on n >= 2 generators."""
    b = Free3Basis(n)
    c: dict[tuple[int, int, int], Q] = {}

    def put(i: int, j: int, vec: SparseVec) -> None:
        for k, q in vec.items():
            if q:
                c[(i, j, k)] = q
                c[(j, i, k)] = -q

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            put(b.x[i], b.x[j], {b.y[(i, j)]: Q(1)})
    for (j, k), yj in b.y.items():
        for i in range(1, n + 1):
            put(b.x[i], yj, b.zvec(i, j, k))
    return NamedAlgebra(f"free3:{n}", Algebra(b.dim, c, b.labels),
                        metadata={"generators": n})


def novikov_free_3step(n: int) -> NamedAlgebra:
    """The free 3-step nilpotent Lie algebra with its explicit Novikov product."""
    named = free_3step_lie(n)
    b = Free3Basis(n)
    c: dict[tuple[int, int, int], Q] = {}

    def put(i: int, j: int, vec: SparseVec, scale: Q = Q(1)) -> None:
        for k, q in vec.items():
            v = scale * q
            if v:
                c[(i, j, k)] = c.get((i, j, k), QZERO) + v

    half = Q(1, 2)
    for i in range(1, n + 1):
        for j in range(1, i):
            put(b.x[i], b.x[j], {b.y[(j, i)]: Q(-1)})
    for (j, k), yj in b.y.items():
        for i in range(1, n + 1):
            if i <= j:
                put(b.x[i], yj, b.zvec(i, j, k), half)
            elif i < k:
                put(b.x[i], yj, b.zvec(j, i, k), -half)
                put(b.x[i], yj, b.zvec(i, j, k))
            else:  # j < k <= i
                put(b.x[i], yj, b.zvec(i, j, k))
            if i <= j:
                put(yj, b.x[i], b.zvec(i, j, k), -half)
            elif i < k:
                put(yj, b.x[i], b.zvec(j, i, k), -half)
    product = Algebra(b.dim, c, b.labels)
    return NamedAlgebra(f"novikov-free3:{n}", named.lie, product,
                        metadata={"generators": n})


# ---------------------------------------------------------------------------
# the 13-dimensional 3-step nilpotent Lie algebra without a Novikov structure

_CEX13_BRACKETS: tuple[tuple[int, int, dict[int, int]], ...] = (
    (1, 2, {5: 1}),
    (1, 4, {6: 1}),
    (1, 6, {10: 1}),
    (1, 7, {11: 1}),
    (1, 8, {12: 1}),
    (2, 3, {7: 1}),
    (2, 4, {8: 1}),
    (2, 5, {13: 1}),
    (2, 7, {13: 1}),
    (3, 4, {5: -1}),
    (3, 5, {11: -1}),
    (3, 8, {9: 1}),
    (4, 5, {12: -1}),
    (4, 6, {9: 1}),
    (4, 7, {9: 1, 13: 1}),
)


def counterexample_13() -> NamedAlgebra:
    """The 13-dimensional, 4-generator, 3-step nilpotent Lie algebra with no Novikov structure."""
    c: dict[tuple[int, int, int], Q] = {}
    for i, j, vec in _CEX13_BRACKETS:
        for k, q in vec.items():
            c[(i - 1, j - 1, k - 1)] = Q(q)
            c[(j - 1, i - 1, k - 1)] = Q(-q)
    labels = tuple(f"x{i}" for i in range(1, 14))
    return NamedAlgebra("cex13", Algebra(13, c, labels), metadata={"generators": 4})


# ---------------------------------------------------------------------------
# triangular matrix algebras

def _matrix_lie(pairs: list[tuple[int, int]], name: str, n: int) -> NamedAlgebra:
    idx = {p: t for t, p in enumerate(pairs)}
    c: dict[tuple[int, int, int], Q] = {}
    for a, (i, j) in enumerate(pairs):
        for b, (k, l) in enumerate(pairs):
            vec: dict[int, Q] = {}
            if j == k and (i, l) in idx:
                vec[idx[(i, l)]] = vec.get(idx[(i, l)], QZERO) + 1
            if i == l and (k, j) in idx:
                vec[idx[(k, j)]] = vec.get(idx[(k, j)], QZERO) - 1
            for t, q in vec.items():
                if q:
                    c[(a, b, t)] = Q(q)
    labels = tuple(f"e_{{{i},{j}}}" for i, j in pairs)
    return NamedAlgebra(name, Algebra(len(pairs), c, labels), metadata={"n": n})


def strictly_upper_triangular(n: int) -> NamedAlgebra:
    """n(n,k): strictly upper triangular n x n matrices, dimension n(n-1)/2."""
    if n < 2:
        raise ValueError("strictly upper triangular algebra needs n >= 2")
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return _matrix_lie(pairs, f"nilt:{n}", n)


def upper_triangular(n: int) -> NamedAlgebra:
    """t(n,k): upper triangular n x n matrices, dimension n(n+1)/2."""
    if n < 1:
        raise ValueError("upper triangular algebra needs n >= 1")
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    return _matrix_lie(pairs, f"solvt:{n}", n)


def novikov_strictly_upper(n: int) -> NamedAlgebra:
    """A Novikov structure on n(n,k) for n <= 4.

    n = 2 is one-dimensional abelian (zero product).  For n = 3, 4 the algebra
    is generated by the superdiagonal, so it is a quotient of the free 3-step
    nilpotent Lie algebra on n-1 generators; the kernel of the projection is
    also an ideal for the free Novikov product, which therefore descends.
    """
    if not 2 <= n <= 4:
        raise ValueError("explicit Novikov structures on n(n,k) are only available for n <= 4")
    target = strictly_upper_triangular(n)
    tl = target.lie
    if n == 2:
        return NamedAlgebra("novikov-nilt:2", tl, Algebra(1, {}, tl.labels))
    free = novikov_free_3step(n - 1)
    b = Free3Basis(n - 1)
    sup = [tl.labels.index(f"e_{{{g},{g + 1}}}") for g in range(1, n)]
    # Map the free generators onto the superdiagonal.  Not every assignment
    # yields a kernel that is an ideal of the free Novikov product (the
    # identity assignment fails for n = 4), so try permutations in
    # lexicographic order and keep the first that works.
    img: list[SparseVec] = []
    mat: list[list[Q]] = []
    kernel: Subspace | None = None
    for perm in itertools.permutations(range(n - 1)):
        img = [{} for _ in range(free.dim)]
        for g in range(1, n):
            img[b.x[g]] = {sup[perm[g - 1]]: Q(1)}
        for (i, j), t in b.y.items():
            img[t] = multiply_sparse(tl, img[b.x[i]], img[b.x[j]])
        for (i, j, k), t in b.z.items():
            img[t] = multiply_sparse(tl, img[b.x[i]], img[b.y[(j, k)]])
        mat = [[img[s].get(t, QZERO) for s in range(free.dim)] for t in range(tl.dim)]
        cand = nullspace(mat, free.dim)
        if cand.rank == free.dim - tl.dim and \
                two_sided_ideal_witness(free.product, cand) is None:
            kernel = cand
            break
    if kernel is None:
        raise RuntimeError("no generator assignment makes the projection kernel "
                           "an ideal of the free Novikov product")
    # section: one preimage per target basis vector
    sections = [_solve(mat, [Q(1) if t == u else QZERO for t in range(tl.dim)])
                for u in range(tl.dim)]
    c: dict[tuple[int, int, int], Q] = {}
    for p in range(tl.dim):
        sp = {m: v for m, v in enumerate(sections[p]) if v}
        for q in range(tl.dim):
            sq = {m: v for m, v in enumerate(sections[q]) if v}
            w_ = multiply_sparse(free.product, sp, sq)
            out: dict[int, Q] = {}
            for m, v in w_.items():
                for t, u in img[m].items():
                    out[t] = out.get(t, QZERO) + v * u
            for t, u in out.items():
                if u:
                    c[(p, q, t)] = u
    return NamedAlgebra(f"novikov-nilt:{n}", tl, Algebra(tl.dim, c, tl.labels))


def _solve(rows: list[list[Q]], rhs: list[Q]) -> list[Q]:
    """One exact solution of rows * x = rhs (free variables set to zero)."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, pivots = rref(aug)
    if ncols in pivots:
        raise ValueError("inconsistent linear system")
    sol = [QZERO] * ncols
    for row, p in zip(m, pivots):
        sol[p] = row[-1]
    return sol


# ---------------------------------------------------------------------------
# filiform families

def _f910_coef(m: int) -> Q:
    # diagonal change of basis: e_1 = (1/6) f_1, e_m = (m-2)! f_m
    return Q(1, 6) if m == 1 else Q(math.factorial(m - 2))


def filiform_f910(n: int, basis: str = "f") -> NamedAlgebra:
    """The filiform Lie algebra with [e_2,e_5] = (9/10) e_7, in the e- or f-basis.

    The f-basis ([f_i,f_j] = 6(j-i) f_{i+j}, truncated beyond index n) is
    canonical; the e-basis is obtained by the diagonal change of basis and
    cross-checked against the closed-form e-basis brackets.
    """
    lie, _ = _f910_build(n, basis)
    return NamedAlgebra(f"filiform910:{n}:{basis}", lie, metadata={"basis": basis})


def novikov_f910(n: int, basis: str = "f") -> NamedAlgebra:
    """The filiform family together with its Novikov product."""
    lie, product = _f910_build(n, basis)
    return NamedAlgebra(f"novikov-filiform910:{n}:{basis}", lie, product,
                        metadata={"basis": basis})


def _f910_build(n: int, basis: str) -> tuple[Algebra, Algebra]:
    if n < 3:
        raise ValueError("filiform family needs n >= 3")
    if basis not in ("e", "f"):
        raise ValueError("basis must be 'e' or 'f'")
    cl: dict[tuple[int, int, int], Q] = {}
    cp: dict[tuple[int, int, int], Q] = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i + j > n:
                continue
            br = Q(6 * (j - i))
            pr = Q(6 * (j - 1))
            if basis == "e":
                scale = _f910_coef(i) * _f910_coef(j) / _f910_coef(i + j)
                br *= scale
                pr *= scale
            if br:
                cl[(i - 1, j - 1, i + j - 1)] = br
            if pr:
                cp[(i - 1, j - 1, i + j - 1)] = pr
    if basis == "e":
        _f910_crosscheck(n, cl, cp)
    labels = tuple(f"{basis}{i}" for i in range(1, n + 1))
    return Algebra(n, cl, labels), Algebra(n, cp, labels)


def _f910_crosscheck(n: int, cl: dict, cp: dict) -> None:
    # the conjugated constants must match the closed-form e-basis displays
    for j in range(2, n):
        assert cl.get((0, j - 1, j)) == Q(1), (1, j)
        assert cp.get((0, j - 1, j)) == Q(1), (1, j)
    for i in range(2, n + 1):
        for j in range(2, n + 1):
            if i + j > n:
                continue
            if i <= j:
                expect = Q(6 * (j - i), j * (j - 1) * math.comb(j + i - 2, i - 2))
                got = cl.get((i - 1, j - 1, i + j - 1), QZERO)
                assert got == expect, ("bracket", i, j, got, expect)
            expect_p = Q(6, j * math.comb(j + i - 2, i - 2))
            got_p = cp.get((i - 1, j - 1, i + j - 1), QZERO)
            assert got_p == expect_p, ("product", i, j, got_p, expect_p)


def standard_filiform(n: int) -> NamedAlgebra:
    """Standard filiform algebra [e_1,e_i] = e_{i+1} with product e_1.e_i = e_{i+1}."""
    if n < 3:
        raise ValueError("standard filiform algebra needs n >= 3")
    cl: dict[tuple[int, int, int], Q] = {}
    cp: dict[tuple[int, int, int], Q] = {}
    for i in range(2, n):
        cl[(0, i - 1, i)] = Q(1)
        cl[(i - 1, 0, i)] = Q(-1)
        cp[(0, i - 1, i)] = Q(1)
    labels = tuple(f"e{i}" for i in range(1, n + 1))
    return NamedAlgebra(f"stdfiliform:{n}", Algebra(n, cl, labels),
                        Algebra(n, cp, labels))


def abelian(n: int) -> NamedAlgebra:
    """Abelian Lie algebra with its zero Novikov product."""
    if n < 1:
        raise ValueError("dimension must be positive")
    labels = tuple(f"e{i}" for i in range(1, n + 1))
    return NamedAlgebra(f"abelian:{n}", Algebra(n, {}, labels), Algebra(n, {}, labels))


# ---------------------------------------------------------------------------
# registry

class UnknownFactory(ValueError):
    pass


_PATTERNS: tuple[tuple[re.Pattern, object], ...] = (
    (re.compile(r"^free3:(\d+)$"), lambda m: free_3step_lie(int(m.group(1)))),
    (re.compile(r"^novikov-free3:(\d+)$"), lambda m: novikov_free_3step(int(m.group(1)))),
    (re.compile(r"^cex13$"), lambda m: counterexample_13()),
    (re.compile(r"^nilt:(\d+)$"), lambda m: strictly_upper_triangular(int(m.group(1)))),
    (re.compile(r"^novikov-nilt:(\d+)$"), lambda m: novikov_strictly_upper(int(m.group(1)))),
    (re.compile(r"^solvt:(\d+)$"), lambda m: upper_triangular(int(m.group(1)))),
    (re.compile(r"^filiform910:(\d+):([ef])$"),
     lambda m: novikov_f910(int(m.group(1)), m.group(2))),
    (re.compile(r"^stdfiliform:(\d+)$"), lambda m: standard_filiform(int(m.group(1)))),
    (re.compile(r"^abelian:(\d+)$"), lambda m: abelian(int(m.group(1)))),
)

FACTORY_FORMS = ("free3:n", "novikov-free3:n", "cex13", "nilt:n", "novikov-nilt:n",
                 "solvt:n", "filiform910:n:e|f", "stdfiliform:n", "abelian:n")


def make_algebra(spec: str) -> NamedAlgebra:
    """Build a registered algebra from its name string (e.g. 'free3:4', 'cex13')."""
    for pat, fn in _PATTERNS:
        m = pat.match(spec)
        if m:
            return fn(m)
    raise UnknownFactory(
        f"unknown algebra spec {spec!r}; known forms: {', '.join(FACTORY_FORMS)}")
