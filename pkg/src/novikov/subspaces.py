"""Exact subspace arithmetic and the ideal/series theory of Novikov and Lie algebras.

Subspaces of Q^d are stored in reduced row-echelon form, which is the unique
canonical representative: two subspaces are equal iff their stored rows are
equal.  All series (lower central, derived, upper central) iterate until
stabilization, capped at the ambient dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .core import (Algebra, DimensionMismatch, Q, QZERO, SparseVec, Vector,
                   commutator_sparse, multiply_sparse, sparse_to_vector,
                   vector_to_sparse)


def rref(rows: Sequence[Sequence[Q]]) -> tuple[list[list[Q]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot column indices)."""
    m = [list(map(Q, r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


class Subspace:
    """A subspace of Q^d held as a reduced row-echelon basis."""

    __slots__ = ("ambient", "rows", "pivots")

    def __init__(self, ambient: int, vectors: Iterable[Sequence[Q]] = ()):
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise DimensionMismatch(
                    f"vector of length {len(v)} in ambient dimension {ambient}")
        rows, pivots = rref(vecs)
        self.ambient = ambient
        self.rows: tuple[Vector, ...] = tuple(tuple(r) for r in rows)
        self.pivots: tuple[int, ...] = tuple(pivots)

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient)

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, ([Q(1) if j == i else QZERO for j in range(ambient)]
                             for i in range(ambient)))

    @classmethod
    def from_sparse(cls, ambient: int, vecs: Iterable[SparseVec]) -> "Subspace":
        return cls(ambient, (sparse_to_vector(v, ambient) for v in vecs))

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.rows == other.rows)

    def __hash__(self) -> int:
        return hash((self.ambient, self.rows))

    def __repr__(self) -> str:
        return f"Subspace(ambient={self.ambient}, rank={self.rank})"

    def reduce(self, v: Sequence[Q]) -> list[Q]:
        """Residue of v modulo this subspace (eliminate pivot coordinates)."""
        if len(v) != self.ambient:
            raise DimensionMismatch("vector length does not match ambient dimension")
        w = list(map(Q, v))
        for row, p in zip(self.rows, self.pivots):
            f = w[p]
            if f:
                w = [a - f * b for a, b in zip(w, row)]
        return w

    def member(self, v: Sequence[Q]) -> bool:
        return not any(self.reduce(v))

    def contains(self, other: "Subspace") -> bool:
        return all(self.member(r) for r in other.rows)

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise DimensionMismatch("ambient dimensions differ")
        return Subspace(self.ambient, list(self.rows) + list(other.rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus double-echelon intersection."""
        if self.ambient != other.ambient:
            raise DimensionMismatch("ambient dimensions differ")
        d = self.ambient
        block = [list(r) + list(r) for r in self.rows]
        block += [list(r) + [QZERO] * d for r in other.rows]
        rows, _ = rref(block)
        inter = [r[d:] for r in rows if not any(r[:d])]
        return Subspace(d, inter)

    def is_coordinate_subspace(self) -> bool:
        """True iff the echelon basis consists of standard basis vectors."""
        return all(sum(1 for c in row if c) == 1 for row in self.rows)


def span(ambient: int, vectors: Iterable[Sequence[Q]]) -> Subspace:
    return Subspace(ambient, vectors)


def nullspace(rows: Sequence[Sequence[Q]], ncols: int) -> Subspace:
    """Kernel of the matrix with the given rows, as a subspace of Q^ncols."""
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [QZERO] * ncols
        v[f] = Q(1)
        for row, p in zip(m, pivots):
            v[p] = -row[f]
        basis.append(v)
    return Subspace(ncols, basis)


def product_space(a: Algebra, left: Subspace, right: Subspace) -> Subspace:
    """Span of all u.v for u in a basis of ``left``, v in a basis of ``right``."""
    _check_ambient(a, left, right)
    vecs = []
    for u in left.rows:
        su = vector_to_sparse(u)
        for v in right.rows:
            vecs.append(multiply_sparse(a, su, vector_to_sparse(v)))
    return Subspace.from_sparse(a.dim, vecs)


def bracket_space(a: Algebra, left: Subspace, right: Subspace) -> Subspace:
    """Span of all commutators [u, v] = u.v - v.u over the given bases."""
    _check_ambient(a, left, right)
    vecs = []
    for u in left.rows:
        su = vector_to_sparse(u)
        for v in right.rows:
            vecs.append(commutator_sparse(a, su, vector_to_sparse(v)))
    return Subspace.from_sparse(a.dim, vecs)


def _check_ambient(a: Algebra, *spaces: Subspace) -> None:
    for s in spaces:
        if s.ambient != a.dim:
            raise DimensionMismatch(
                f"subspace ambient {s.ambient} does not match algebra dimension {a.dim}")


def _ideal_witness(a: Algebra, space: Subspace, side: str):
    for i in range(a.dim):
        bi = {i: Q(1)}
        for u in space.rows:
            su = vector_to_sparse(u)
            prod = multiply_sparse(a, bi, su) if side == "left" else multiply_sparse(a, su, bi)
            if not space.member(sparse_to_vector(prod, a.dim)):
                return (i, u, prod)
    return None


def is_left_ideal(a: Algebra, space: Subspace) -> bool:
    _check_ambient(a, space)
    return _ideal_witness(a, space, "left") is None


def is_right_ideal(a: Algebra, space: Subspace) -> bool:
    _check_ambient(a, space)
    return _ideal_witness(a, space, "right") is None


def is_two_sided_ideal(a: Algebra, space: Subspace) -> bool:
    return is_left_ideal(a, space) and is_right_ideal(a, space)


def two_sided_ideal_witness(a: Algebra, space: Subspace):
    """None if ``space`` is a two-sided ideal, else (side, basis index, vector, product)."""
    _check_ambient(a, space)
    w = _ideal_witness(a, space, "left")
    if w is not None:
        return ("left",) + w
    w = _ideal_witness(a, space, "right")
    if w is not None:
        return ("right",) + w
    return None


def center(a: Algebra) -> Subspace:
    """{x : x.y = y.x for all y}, the kernel of x -> (x.b_j - b_j.x)_j."""
    d = a.dim
    rows = []
    for j in range(d):
        for k in range(d):
            row = [a.basis_product(m, j).get(k, QZERO) - a.basis_product(j, m).get(k, QZERO)
                   for m in range(d)]
            if any(row):
                rows.append(row)
    return nullspace(rows, d)


@dataclass(frozen=True)
class SeriesReport:
    kind: str  # "lower-central" | "derived" | "upper-central"
    terms: tuple[Subspace, ...]
    cls: int | None  # nilpotency/solvability class, None if not attained

    @property
    def terminated(self) -> bool:
        return self.cls is not None

    def ranks(self) -> tuple[int, ...]:
        return tuple(t.rank for t in self.terms)


def lower_central_series(a: Algebra) -> SeriesReport:
    """gamma_1 = A, gamma_{i+1} = [A, gamma_i]; class = least c with gamma_{c+1} = 0."""
    whole = Subspace.full(a.dim)
    terms = [whole]
    for _ in range(a.dim + 1):
        nxt = bracket_space(a, whole, terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
        if nxt.rank == 0:
            break
    cls = len(terms) - 1 if terms[-1].rank == 0 else None
    return SeriesReport("lower-central", tuple(terms), cls)


def derived_series(a: Algebra) -> SeriesReport:
    """A^(0) = A, A^(i+1) = [A^(i), A^(i)]; class = least k with A^(k) = 0."""
    terms = [Subspace.full(a.dim)]
    for _ in range(a.dim + 1):
        nxt = bracket_space(a, terms[-1], terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
        if nxt.rank == 0:
            break
    cls = len(terms) - 1 if terms[-1].rank == 0 else None
    return SeriesReport("derived", tuple(terms), cls)


def upper_central_series(a: Algebra) -> SeriesReport:
    """Z_1 = Z(A), Z_{i+1}/Z_i = Z(A/Z_i), via commutators of the product."""
    d = a.dim
    terms = [center(a)]
    brackets = [[commutator_sparse(a, {m: Q(1)}, {j: Q(1)}) for j in range(d)]
                for m in range(d)]
    for _ in range(d + 1):
        z = terms[-1]
        if z.rank == d:
            break
        rows = []
        for j in range(d):
            reduced = [z.reduce(sparse_to_vector(brackets[m][j], d)) for m in range(d)]
            for t in range(d):
                row = [reduced[m][t] for m in range(d)]
                if any(row):
                    rows.append(row)
        nxt = nullspace(rows, d)
        if nxt == z:
            break
        terms.append(nxt)
    cls = len(terms) if terms[-1].rank == d else None
    return SeriesReport("upper-central", tuple(terms), cls)


class NotAnIdeal(ValueError):
    def __init__(self, witness, algebra: Algebra):
        side, i, u, prod = witness
        super().__init__(
            f"not a two-sided ideal: {side} product of {algebra.labels[i]} with "
            f"{algebra.format_sparse(vector_to_sparse(u))} gives "
            f"{algebra.format_sparse(prod)}, which escapes the subspace")
        self.witness = witness


def quotient(a: Algebra, ideal: Subspace) -> tuple[Algebra, tuple[tuple[Q, ...], ...]]:
    """Quotient algebra by a two-sided ideal.

    The complement basis is the set of non-pivot standard coordinates of the
    ideal's echelon basis, in index order.  Returns (quotient algebra,
    projection matrix) where projection row m gives the quotient coordinates
    of the ambient basis vector b_m.
    """
    _check_ambient(a, ideal)
    w = two_sided_ideal_witness(a, ideal)
    if w is not None:
        raise NotAnIdeal(w, a)
    d = a.dim
    comp = [c for c in range(d) if c not in ideal.pivots]
    qdim = len(comp)
    if qdim == 0:
        raise ValueError("quotient by the whole space is zero-dimensional")

    def project(v: Sequence[Q]) -> tuple[Q, ...]:
        red = ideal.reduce(v)
        return tuple(red[c] for c in comp)

    proj = tuple(project([Q(1) if t == m else QZERO for t in range(d)]) for m in range(d))
    constants: dict[tuple[int, int, int], Q] = {}
    for p, cp in enumerate(comp):
        for q, cq in enumerate(comp):
            w_ = multiply_sparse(a, {cp: Q(1)}, {cq: Q(1)})
            for k, c in zip(range(qdim), project(sparse_to_vector(w_, d))):
                if c:
                    constants[(p, q, k)] = c
    labels = tuple(a.labels[c] for c in comp)
    return Algebra(qdim, constants, labels), proj
