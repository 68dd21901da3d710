"""Prime fields and vectors of F_p^n with coordinate-wise operations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import FormatError, MismatchError, PreconditionError


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise PreconditionError(f"{self.p!r} is not prime")
        if self.p >= 1 << 31:
            raise PreconditionError("modulus must be below 2**31")

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def vector(self, coords: Iterable[int]) -> "FieldVector":
        return FieldVector(self, tuple(coords))

    def zeros(self, n: int) -> "FieldVector":
        return FieldVector(self, (0,) * n)

    def ones(self, n: int) -> "FieldVector":
        return FieldVector(self, (1,) * n)

    def indicator(self, n: int, subset: Iterable[int]) -> "FieldVector":
        """The {0,1}-vector 1_A of ``subset`` (0-based indices)."""
        coords = [0] * n
        for i in subset:
            if not 0 <= i < n:
                raise PreconditionError(f"index {i} outside [0, {n})")
            coords[i] = 1
        return FieldVector(self, tuple(coords))


@dataclass(frozen=True)
class FieldVector:
    """An element of F_p^n.  Coordinates are normalised into ``[0, p)``."""

    field: PrimeField
    coords: tuple[int, ...]

    def __post_init__(self):
        p = self.field.p
        object.__setattr__(self, "coords", tuple(int(x) % p for x in self.coords))

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def p(self) -> int:
        return self.field.p

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def _check(self, other: "FieldVector") -> None:
        if self.field != other.field:
            raise MismatchError(f"field mismatch: {self.field} vs {other.field}")
        if self.n != other.n:
            raise MismatchError(f"length mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "FieldVector") -> "FieldVector":
        self._check(other)
        return FieldVector(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "FieldVector") -> "FieldVector":
        self._check(other)
        return FieldVector(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "FieldVector":
        return FieldVector(self.field, tuple(-a for a in self.coords))

    def scale(self, c: int) -> "FieldVector":
        return FieldVector(self.field, tuple(c * a for a in self.coords))

    def __mul__(self, other: "FieldVector") -> "FieldVector":
        return star(self, other)

    def is_binary(self) -> bool:
        return all(x <= 1 for x in self.coords)

    def __str__(self) -> str:
        return format_vector(self)


def star(u: FieldVector, v: FieldVector) -> FieldVector:
    """Coordinate-wise (Schur) product."""
    u._check(v)
    return FieldVector(u.field, tuple(a * b for a, b in zip(u.coords, v.coords)))


def inner(u: FieldVector, v: FieldVector) -> int:
    """Standard inner product, reduced mod p."""
    u._check(v)
    return sum(a * b for a, b in zip(u.coords, v.coords)) % u.field.p


def support(u: FieldVector) -> frozenset[int]:
    """0-based indices of the nonzero coordinates."""
    return frozenset(i for i, x in enumerate(u.coords) if x)


def format_vector(v: FieldVector) -> str:
    """Digit string for p <= 7, space-separated residues otherwise."""
    if v.field.p <= 7:
        return "".join(str(x) for x in v.coords)
    return " ".join(str(x) for x in v.coords)


def parse_vector(text: str, field: PrimeField) -> FieldVector:
    text = text.strip()
    if field.p <= 7 and " " not in text:
        tokens = list(text)
    else:
        tokens = text.split()
    try:
        vals = [int(t) for t in tokens]
    except ValueError as exc:
        raise FormatError(f"bad vector text {text!r}") from exc
    if any(not 0 <= x < field.p for x in vals):
        raise FormatError(f"residue out of range in {text!r} for p={field.p}")
    return FieldVector(field, tuple(vals))
