"""Structure-constant algebras over exact rationals, and the defining identity checks.

An :class:`Algebra` is a finite-dimensional vector space over Q with a fixed
basis and a bilinear product given by a sparse tensor of structure constants.
All four defining checks (Lie, left-symmetry, Novikov, compatibility, plus the
operator identity L([x,y]) + ad([x,y]) - [ad x, L y] - [L x, ad y] = 0) verify
their identity only on basis tuples; multilinearity makes that equivalent to
checking all elements.

Indices are 0-based internally.  User-facing renderings (witnesses, documents)
use 1-based indices and basis labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

Q = Fraction
QZERO = Q(0)

Vector = tuple[Q, ...]
SparseVec = dict[int, Q]


class DimensionMismatch(ValueError):
    pass


def _clean(vec: SparseVec) -> SparseVec:
    return {k: v for k, v in vec.items() if v}


def sparse_to_vector(vec: Mapping[int, Q], dim: int) -> Vector:
    return tuple(Q(vec.get(i, QZERO)) for i in range(dim))


def vector_to_sparse(v: Iterable[Q]) -> SparseVec:
    return {i: Q(c) for i, c in enumerate(v) if c}


def zero_vector(dim: int) -> Vector:
    return (QZERO,) * dim


def basis_vector(dim: int, i: int) -> Vector:
    return tuple(Q(1) if j == i else QZERO for j in range(dim))


class Algebra:
    """A based algebra given by sparse structure constants c[(i,j,k)].

    b_i . b_j = sum_k c[(i,j,k)] b_k.  Zero coefficients are never stored, so
    two algebras are equal iff their constant maps are equal.  Instances are
    immutable after construction.
    """

    __slots__ = ("dim", "labels", "constants", "_rows", "_hash")

    def __init__(self, dim: int, constants: Mapping[tuple[int, int, int], Q],
                 labels: tuple[str, ...] | None = None):
        if dim <= 0:
            raise ValueError("dimension must be positive")
        if labels is None:
            labels = tuple(f"b{i + 1}" for i in range(dim))
        if len(labels) != dim:
            raise ValueError("label count does not match dimension")
        clean: dict[tuple[int, int, int], Q] = {}
        rows: dict[int, dict[int, SparseVec]] = {}
        for (i, j, k), c in constants.items():
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise ValueError(f"structure constant index ({i},{j},{k}) out of range")
            c = Q(c)
            if not c:
                continue
            clean[(i, j, k)] = c
            rows.setdefault(i, {}).setdefault(j, {})[k] = c
        self.dim = dim
        self.labels = tuple(labels)
        self.constants = clean
        self._rows = rows
        self._hash = None

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Algebra) and self.dim == other.dim
                and self.constants == other.constants)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self.constants.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Algebra(dim={self.dim}, nnz={len(self.constants)})"

    def basis_product(self, i: int, j: int) -> SparseVec:
        """b_i . b_j as a sparse vector (shared, do not mutate)."""
        return self._rows.get(i, {}).get(j, {})

    def label(self, i: int) -> str:
        return self.labels[i]

    def format_sparse(self, vec: Mapping[int, Q]) -> str:
        if not vec:
            return "0"
        parts = []
        for k in sorted(vec):
            c = vec[k]
            parts.append(f"{'+' if c > 0 and parts else ''}{c}*{self.labels[k]}")
        return " ".join(parts)


def multiply_sparse(a: Algebra, x: Mapping[int, Q], y: Mapping[int, Q]) -> SparseVec:
    out: SparseVec = {}
    for i, xi in x.items():
        row = a._rows.get(i)
        if not row:
            continue
        for j, yj in y.items():
            cell = row.get(j)
            if not cell:
                continue
            s = xi * yj
            for k, c in cell.items():
                out[k] = out.get(k, QZERO) + s * c
    return _clean(out)


def multiply(a: Algebra, x: Iterable[Q], y: Iterable[Q]) -> Vector:
    """Bilinear extension of the structure constants to full vectors."""
    xs = tuple(x)
    ys = tuple(y)
    if len(xs) != a.dim:
        raise DimensionMismatch(f"left factor has length {len(xs)}, algebra dimension is {a.dim}")
    if len(ys) != a.dim:
        raise DimensionMismatch(f"right factor has length {len(ys)}, algebra dimension is {a.dim}")
    return sparse_to_vector(multiply_sparse(a, vector_to_sparse(xs), vector_to_sparse(ys)), a.dim)


def commutator_sparse(a: Algebra, x: Mapping[int, Q], y: Mapping[int, Q]) -> SparseVec:
    out = dict(multiply_sparse(a, x, y))
    for k, c in multiply_sparse(a, y, x).items():
        out[k] = out.get(k, QZERO) - c
    return _clean(out)


def associator_sparse(a: Algebra, x: Mapping[int, Q], y: Mapping[int, Q],
                      z: Mapping[int, Q]) -> SparseVec:
    out = dict(multiply_sparse(a, x, multiply_sparse(a, y, z)))
    for k, c in multiply_sparse(a, multiply_sparse(a, x, y), z).items():
        out[k] = out.get(k, QZERO) - c
    return _clean(out)


def associator(a: Algebra, x: Iterable[Q], y: Iterable[Q], z: Iterable[Q]) -> Vector:
    """(x, y, z) = x.(y.z) - (x.y).z"""
    xs, ys, zs = tuple(x), tuple(y), tuple(z)
    for name, v in (("x", xs), ("y", ys), ("z", zs)):
        if len(v) != a.dim:
            raise DimensionMismatch(f"argument {name} has length {len(v)}, algebra dimension is {a.dim}")
    return sparse_to_vector(
        associator_sparse(a, vector_to_sparse(xs), vector_to_sparse(ys), vector_to_sparse(zs)),
        a.dim)


class Operator:
    """A square matrix over Q; column j holds the coordinates of the image of b_j."""

    __slots__ = ("dim", "cols")

    def __init__(self, dim: int, cols: Iterable[Mapping[int, Q]]):
        self.dim = dim
        self.cols = tuple(_clean(dict(c)) for c in cols)
        if len(self.cols) != dim:
            raise DimensionMismatch("operator column count does not match dimension")

    @classmethod
    def zero(cls, dim: int) -> "Operator":
        return cls(dim, ({} for _ in range(dim)))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Operator) and self.dim == other.dim and self.cols == other.cols

    def __hash__(self) -> int:
        return hash((self.dim, tuple(frozenset(c.items()) for c in self.cols)))

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def entry(self, row: int, col: int) -> Q:
        return self.cols[col].get(row, QZERO)

    def apply_sparse(self, v: Mapping[int, Q]) -> SparseVec:
        out: SparseVec = {}
        for j, c in v.items():
            for r, a in self.cols[j].items():
                out[r] = out.get(r, QZERO) + c * a
        return _clean(out)

    def __matmul__(self, other: "Operator") -> "Operator":
        if self.dim != other.dim:
            raise DimensionMismatch("operator dimensions differ")
        return Operator(self.dim, (self.apply_sparse(c) for c in other.cols))

    def __sub__(self, other: "Operator") -> "Operator":
        if self.dim != other.dim:
            raise DimensionMismatch("operator dimensions differ")
        cols = []
        for a, b in zip(self.cols, other.cols):
            col = dict(a)
            for r, c in b.items():
                col[r] = col.get(r, QZERO) - c
            cols.append(col)
        return Operator(self.dim, cols)

    def __add__(self, other: "Operator") -> "Operator":
        if self.dim != other.dim:
            raise DimensionMismatch("operator dimensions differ")
        cols = []
        for a, b in zip(self.cols, other.cols):
            col = dict(a)
            for r, c in b.items():
                col[r] = col.get(r, QZERO) + c
            cols.append(col)
        return Operator(self.dim, cols)

    def scaled(self, s: Q) -> "Operator":
        return Operator(self.dim, ({r: s * c for r, c in col.items()} for col in self.cols))

    def commutator(self, other: "Operator") -> "Operator":
        return (self @ other) - (other @ self)

    def to_rows(self) -> tuple[tuple[Q, ...], ...]:
        return tuple(tuple(self.cols[c].get(r, QZERO) for c in range(self.dim))
                     for r in range(self.dim))


def _check_index(a: Algebra, i: int) -> None:
    if not 0 <= i < a.dim:
        raise IndexError(f"basis index {i} out of range for dimension {a.dim}")


def left_mult(a: Algebra, i: int) -> Operator:
    """L(b_i): column j = b_i . b_j."""
    _check_index(a, i)
    row = a._rows.get(i, {})
    return Operator(a.dim, (row.get(j, {}) for j in range(a.dim)))


def right_mult(a: Algebra, i: int) -> Operator:
    """R(b_i): column j = b_j . b_i."""
    _check_index(a, i)
    return Operator(a.dim, (a.basis_product(j, i) for j in range(a.dim)))


def ad(lie: Algebra, i: int) -> Operator:
    """ad(b_i) = [b_i, -], equal to L(b_i) for an antisymmetric product."""
    return left_mult(lie, i)


def linear_combination_operator(a: Algebra, coeffs: Mapping[int, Q],
                                op) -> Operator:
    """sum_t coeffs[t] * op(a, t), computed sparsely."""
    out = Operator.zero(a.dim)
    for t, c in coeffs.items():
        if c:
            out = out + op(a, t).scaled(c)
    return out


@dataclass(frozen=True)
class CheckReport:
    """Outcome of an identity check over all basis tuples.

    On failure, ``witness`` holds the first failing index tuple (0-based) and
    ``lhs``/``rhs`` the two evaluated sides as sparse vectors (or operator
    column tuples), so mutation tests and debugging are deterministic.
    """

    name: str
    passed: bool
    witness: tuple[int, ...] | None = None
    lhs: object = None
    rhs: object = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed

    def describe(self, a: Algebra | None = None) -> str:
        if self.passed:
            return f"{self.name}: pass"
        w = self.witness
        ws = ""
        if w is not None:
            if a is not None:
                ws = " at (" + ", ".join(a.labels[i] for i in w) + ")"
            else:
                ws = " at " + str(tuple(i + 1 for i in w))
        msg = f"{self.name}: FAIL{ws}"
        if self.detail:
            msg += f" [{self.detail}]"
        if self.lhs is not None or self.rhs is not None:
            msg += f" lhs={self.lhs} rhs={self.rhs}"
        return msg


def check_lie(lie: Algebra) -> CheckReport:
    """Antisymmetry and the Jacobi identity over all basis tuples."""
    d = lie.dim
    for i in range(d):
        for j in range(i, d):
            fwd = lie.basis_product(i, j)
            bwd = lie.basis_product(j, i)
            neg = {k: -c for k, c in bwd.items()}
            if fwd != neg:
                return CheckReport("lie", False, (i, j), dict(fwd), neg,
                                   "antisymmetry: [b_i,b_j] != -[b_j,b_i]")
    nonzero_rows = [i for i in range(d) if lie._rows.get(i)]
    for i in nonzero_rows:
        for j in nonzero_rows:
            if j <= i:
                continue
            for l in range(j + 1, d):
                acc: SparseVec = {}
                for x, y, z in ((i, j, l), (j, l, i), (l, i, j)):
                    inner = lie.basis_product(y, z)
                    for m, c in inner.items():
                        for k, c2 in lie.basis_product(x, m).items():
                            acc[k] = acc.get(k, QZERO) + c * c2
                acc = _clean(acc)
                if acc:
                    return CheckReport("lie", False, (i, j, l), acc, {},
                                       "Jacobi identity fails")
    return CheckReport("lie", True)


def check_left_symmetric(a: Algebra) -> CheckReport:
    """(x,y,z) = (y,x,z) over all basis triples: the associator is symmetric in x,y."""
    d = a.dim
    bas = [({i: Q(1)}) for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            # identity is antisymmetric under (i, j) swap, so i < j suffices
            for k in range(d):
                lhs = associator_sparse(a, bas[i], bas[j], bas[k])
                rhs = associator_sparse(a, bas[j], bas[i], bas[k])
                if lhs != rhs:
                    return CheckReport("left-symmetric", False, (i, j, k), lhs, rhs)
    return CheckReport("left-symmetric", True)


def check_novikov(a: Algebra) -> CheckReport:
    """(x.y).z = (x.z).y on basis triples, and [R(b_i), R(b_j)] = 0 on all pairs."""
    d = a.dim
    bas = [({i: Q(1)}) for i in range(d)]
    for i in range(d):
        for j in range(d):
            for k in range(j + 1, d):
                lhs = multiply_sparse(a, a.basis_product(i, j), bas[k])
                rhs = multiply_sparse(a, a.basis_product(i, k), bas[j])
                if lhs != rhs:
                    return CheckReport("novikov", False, (i, j, k), lhs, rhs,
                                       "(x.y).z != (x.z).y")
    rights = [right_mult(a, i) for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            comm = rights[i].commutator(rights[j])
            if not comm.is_zero():
                return CheckReport("novikov", False, (i, j),
                                   comm.cols, None,
                                   "right multiplications do not commute")
    return CheckReport("novikov", True)


def check_compatibility(product: Algebra, lie: Algebra) -> CheckReport:
    """x.y - y.x equals the Lie bracket on all basis pairs."""
    if product.dim != lie.dim:
        raise DimensionMismatch("product and bracket have different dimensions")
    d = product.dim
    for i in range(d):
        for j in range(d):
            comm = commutator_sparse(product, {i: Q(1)}, {j: Q(1)})
            br = lie.basis_product(i, j)
            if comm != br:
                return CheckReport("compatibility", False, (i, j), comm, dict(br))
    return CheckReport("compatibility", True)


def check_operator_identity(product: Algebra, lie: Algebra) -> CheckReport:
    """L([x,y]) + ad([x,y]) - [ad(x), L(y)] - [L(x), ad(y)] = 0 on all basis pairs."""
    if product.dim != lie.dim:
        raise DimensionMismatch("product and bracket have different dimensions")
    d = product.dim
    lefts = [left_mult(product, i) for i in range(d)]
    ads = [ad(lie, i) for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            br = lie.basis_product(i, j)
            m = Operator.zero(d)
            for t, c in br.items():
                m = m + (lefts[t] + ads[t]).scaled(c)
            m = m - ads[i].commutator(lefts[j]) - lefts[i].commutator(ads[j])
            if not m.is_zero():
                return CheckReport("operator-identity", False, (i, j), m.cols, None)
    return CheckReport("operator-identity", True)


@dataclass(frozen=True)
class NovikovStructure:
    """A Lie algebra together with a Novikov product inducing its bracket."""

    lie: Algebra
    product: Algebra

    def __post_init__(self):
        if self.lie.dim != self.product.dim:
            raise DimensionMismatch("bracket and product have different dimensions")

    @property
    def dim(self) -> int:
        return self.lie.dim

    def checks(self) -> list[CheckReport]:
        return [
            check_lie(self.lie),
            check_left_symmetric(self.product),
            check_novikov(self.product),
            check_compatibility(self.product, self.lie),
            check_operator_identity(self.product, self.lie),
        ]

    def is_valid(self) -> bool:
        return all(r.passed for r in self.checks())
