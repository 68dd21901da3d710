"""Linear codes over F_p in canonical RREF form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

from . import kernels
from .errors import BudgetExceeded, FormatError, InternalCheckError, MismatchError, PreconditionError
from .field import FieldVector, PrimeField

#: largest dimension for which binary points are enumerated
BINARY_POINTS_MAX_DIM = 30


@dataclass(frozen=True)
class LinearCode:
    """A subspace of F_p^n stored as its reduced row-echelon generator matrix.

    Build one with :func:`span` or :meth:`from_rows`; the constructor trusts
    its arguments.  Because the RREF is canonical, ``==`` is equality of
    subspaces.
    """

    field: PrimeField
    n: int
    basis: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]

    @classmethod
    def from_rows(cls, field: PrimeField, n: int, rows: Iterable[Sequence[int]]) -> "LinearCode":
        rows = [tuple(r) for r in rows]
        for r in rows:
            if len(r) != n:
                raise MismatchError(f"row of length {len(r)} in ambient dimension {n}")
        basis, pivots = kernels.rref(rows, n, field.p)
        return cls(field, n, basis, pivots)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def rows(self) -> list[FieldVector]:
        return [FieldVector(self.field, r) for r in self.basis]

    def support(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.n) if any(r[j] for r in self.basis))

    def is_full_support(self) -> bool:
        return len(self.support()) == self.n

    def __contains__(self, v: FieldVector) -> bool:
        return membership(self, v)

    def _check(self, other: "LinearCode") -> None:
        if self.field != other.field:
            raise MismatchError(f"field mismatch: {self.field} vs {other.field}")
        if self.n != other.n:
            raise MismatchError(f"length mismatch: {self.n} vs {other.n}")

    def __le__(self, other: "LinearCode") -> bool:
        """Subspace inclusion."""
        self._check(other)
        return all(membership(other, v) for v in self.rows())

    def __repr__(self) -> str:
        return f"LinearCode(p={self.p}, n={self.n}, dim={self.dim})"


def span(vectors: Iterable[FieldVector], n: int | None = None,
         field: PrimeField | None = None) -> LinearCode:
    """Span of ``vectors``.  ``n`` and ``field`` are needed only for an empty list."""
    vectors = list(vectors)
    if not vectors:
        if n is None or field is None:
            raise PreconditionError("span of no vectors needs n and field")
        return zero_code(field, n)
    f0, n0 = vectors[0].field, vectors[0].n
    for v in vectors:
        if v.field != f0 or v.n != n0:
            raise MismatchError("vectors must share field and length")
    if (n is not None and n != n0) or (field is not None and field != f0):
        raise MismatchError("explicit n/field disagree with the vectors")
    return LinearCode.from_rows(f0, n0, (v.coords for v in vectors))


def zero_code(field: PrimeField, n: int) -> LinearCode:
    return LinearCode(field, n, (), ())


def full_space(field: PrimeField, n: int) -> LinearCode:
    basis = tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
    return LinearCode(field, n, basis, tuple(range(n)))


def ones_code(field: PrimeField, n: int) -> LinearCode:
    """span{1}, the repetition code."""
    return LinearCode.from_rows(field, n, [(1,) * n])


def dual(c: LinearCode) -> LinearCode:
    """Orthogonal complement for the standard inner product."""
    p, n = c.p, c.n
    pivset = set(c.pivots)
    rows = []
    for f in range(n):
        if f in pivset:
            continue
        x = [0] * n
        x[f] = 1
        for i, col in enumerate(c.pivots):
            x[col] = (-c.basis[i][f]) % p
        rows.append(x)
    return LinearCode.from_rows(c.field, n, rows)


def schur_product(c: LinearCode, d: LinearCode) -> LinearCode:
    """Span of all products x*y, x in c, y in d (computed on basis rows)."""
    c._check(d)
    same = c == d
    basis, pivots = kernels.schur_span(c.basis, d.basis, c.n, c.p, same)
    return LinearCode(c.field, c.n, basis, pivots)


def power_dims(c: LinearCode, k: int) -> tuple[int, ...]:
    """Dimensions of C, C^<2>, ..., C^<k> (length exactly k)."""
    if k < 1:
        raise PreconditionError("power exponent must be >= 1")
    _, _, dims = kernels.power_chain(c.basis, c.n, c.p, k)
    return dims + (dims[-1],) * (k - len(dims))


def power(c: LinearCode, k: int) -> LinearCode:
    """C^<k> = C^<k-1> * C, stopping at the first fixed point."""
    if k < 1:
        raise PreconditionError("power exponent must be >= 1")
    basis, pivots, _ = kernels.power_chain(c.basis, c.n, c.p, k)
    return LinearCode(c.field, c.n, basis, pivots)


def binary_points(c: LinearCode) -> list[FieldVector]:
    """C intersected with {0,1}^n, sorted lexicographically.

    The pivot columns of the RREF form an identity block, so a codeword is
    binary only if its coefficient vector is; the 2^dim {0,1}-combinations
    are walked depth-first and pruned as soon as a finished coordinate
    leaves {0,1}.
    """
    if c.dim > BINARY_POINTS_MAX_DIM:
        raise BudgetExceeded(
            f"enumeration too large: dim {c.dim} > {BINARY_POINTS_MAX_DIM}",
            estimate=1 << c.dim, budget=1 << BINARY_POINTS_MAX_DIM)
    pts = kernels.binary_points(c.basis, c.n, c.p)
    if len(pts) > 1 << c.dim:
        raise InternalCheckError(f"{len(pts)} binary points exceed 2^{c.dim}")
    return [FieldVector(c.field, v) for v in pts]


def count_binary_points(c: LinearCode) -> int:
    if c.dim > BINARY_POINTS_MAX_DIM:
        raise BudgetExceeded(
            f"enumeration too large: dim {c.dim} > {BINARY_POINTS_MAX_DIM}",
            estimate=1 << c.dim, budget=1 << BINARY_POINTS_MAX_DIM)
    return kernels.count_binary_points(c.basis, c.n, c.p)


def membership(c: LinearCode, v: FieldVector) -> bool:
    if v.field != c.field or v.n != c.n:
        raise MismatchError("vector and code disagree on field or length")
    p = c.p
    x = list(v.coords)
    for row, col in zip(c.basis, c.pivots):
        f = x[col]
        if f:
            x = [(a - f * b) % p for a, b in zip(x, row)]
    return not any(x)


def code_sum(c: LinearCode, d: LinearCode) -> LinearCode:
    c._check(d)
    return LinearCode.from_rows(c.field, c.n, c.basis + d.basis)


def intersect(c: LinearCode, d: LinearCode) -> LinearCode:
    c._check(d)
    return dual(code_sum(dual(c), dual(d)))


def restrict_code(c: LinearCode, subset: Iterable[int]) -> LinearCode:
    """Project every codeword onto the coordinates ``subset`` (kept in order)."""
    cols = sorted(set(subset))
    for j in cols:
        if not 0 <= j < c.n:
            raise PreconditionError(f"index {j} outside [0, {c.n})")
    return LinearCode.from_rows(c.field, len(cols), [tuple(r[j] for j in cols) for r in c.basis])


def orthogonal_to_ones(c: LinearCode) -> bool:
    """C is contained in the dual of span{1}, i.e. every codeword sums to 0."""
    return all(sum(r) % c.p == 0 for r in c.basis)


# -- text format -------------------------------------------------------------


def format_code(c: LinearCode) -> str:
    lines = [f"{c.p} {c.n}"]
    lines += [" ".join(str(x) for x in r) for r in c.basis]
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> LinearCode:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty code file")
    head = lines[0].split()
    if len(head) != 2:
        raise FormatError(f"code header must be 'p n', got {lines[0]!r}")
    try:
        p, n = int(head[0]), int(head[1])
        rows = [[int(t) for t in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise FormatError(f"non-integer token in code file: {exc}") from exc
    try:
        fld = PrimeField(p)
    except PreconditionError as exc:
        raise FormatError(str(exc)) from exc
    for r in rows:
        if len(r) != n:
            raise FormatError(f"row {r} has length {len(r)}, expected {n}")
        if any(not 0 <= x < p for x in r):
            raise FormatError(f"row {r} has residues outside [0, {p})")
    return LinearCode.from_rows(fld, n, rows)


def read_code(fh: TextIO) -> LinearCode:
    return parse_code(fh.read())


def write_code(c: LinearCode, fh: TextIO) -> None:
    fh.write(format_code(c))
