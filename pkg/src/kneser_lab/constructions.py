"""Atomic families, the Paley Hadamard matrix of order 12, and Frankl-Odlyzko families."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian

from .errors import BudgetExceeded, FormatError, PreconditionError
from .families import SetFamily, is_kwise_divisible

ATOMIC_MAX_PARTS = 20
ATOMIC_MAX_N = 24
FRANKL_ODLYZKO_MAX_M = 3


def atomic_family(part_sizes) -> SetFamily:
    """All unions of consecutive blocks of the given sizes (the empty union included)."""
    sizes = [int(s) for s in part_sizes]
    if not sizes or any(s < 1 for s in sizes):
        raise PreconditionError("part sizes must be positive and nonempty")
    n = sum(sizes)
    if len(sizes) > ATOMIC_MAX_PARTS or n > ATOMIC_MAX_N:
        raise BudgetExceeded(
            f"atomic family too large: {len(sizes)} parts on n={n} "
            f"(caps {ATOMIC_MAX_PARTS} parts, n <= {ATOMIC_MAX_N})",
            estimate=1 << len(sizes), budget=1 << ATOMIC_MAX_PARTS)
    blocks = []
    start = 0
    for s in sizes:
        blocks.append(((1 << s) - 1) << (n - start - s))
        start += s
    members = []
    for choice in range(1 << len(blocks)):
        m = 0
        for i, b in enumerate(blocks):
            if choice >> i & 1:
                m |= b
        members.append(m)
    return SetFamily(n, tuple(members))


@dataclass(frozen=True)
class HadamardMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        h = self.entries
        order = len(h)
        if any(len(r) != order for r in h):
            raise PreconditionError("Hadamard matrix must be square")
        if any(x not in (1, -1) for r in h for x in r):
            raise PreconditionError("entries must be +1 or -1")
        for i in range(order):
            for j in range(order):
                dot = sum(a * b for a, b in zip(h[i], h[j]))
                if dot != (order if i == j else 0):
                    raise PreconditionError(f"rows {i} and {j} have inner product {dot}")

    @property
    def order(self) -> int:
        return len(self.entries)

    def normalized(self) -> "HadamardMatrix":
        """Sign-flip rows then columns so the first row and column are all +1."""
        rows = [tuple(x * r[0] for x in r) for r in self.entries]
        first = rows[0]
        return HadamardMatrix(tuple(tuple(x * c for x, c in zip(r, first)) for r in rows))


def _legendre(a: int, q: int) -> int:
    a %= q
    if a == 0:
        return 0
    return 1 if pow(a, (q - 1) // 2, q) == 1 else -1


def paley_hadamard_12() -> HadamardMatrix:
    """Paley type I over F_11: H = I + [[0, 1^T], [-1, Q]] with Q the Jacobsthal matrix, normalized."""
    q = 11
    size = q + 1
    s = [[0] * size for _ in range(size)]
    for j in range(1, size):
        s[0][j] = 1
        s[j][0] = -1
    for i in range(q):
        for j in range(q):
            s[i + 1][j + 1] = _legendre(j - i, q)
    h = tuple(tuple(s[i][j] + (1 if i == j else 0) for j in range(size)) for i in range(size))
    return HadamardMatrix(h).normalized()


def frankl_odlyzko_family(m: int = 1) -> SetFamily:
    """Row +1-sets of the normalized order-12 Hadamard matrix with their complements.

    For m > 1, members are unions of independent choices on m disjoint
    blocks of 12 coordinates (24^m members on [12m]).
    """
    if m < 1:
        raise PreconditionError("m must be >= 1")
    if m > FRANKL_ODLYZKO_MAX_M:
        raise BudgetExceeded(f"24^{m} members exceeds the cap m <= {FRANKL_ODLYZKO_MAX_M}",
                             estimate=24 ** m, budget=24 ** FRANKL_ODLYZKO_MAX_M)
    h = paley_hadamard_12()
    base = []
    for row in h.entries:
        mask = 0
        for x in row:
            mask = (mask << 1) | (x == 1)
        base.append(mask)
        base.append(mask ^ 0xFFF)
    fam = SetFamily(12, tuple(base))
    if len(fam) != 24 or not is_kwise_divisible(fam, 2, 3).passed:
        raise AssertionError("order-12 construction lost its defining properties")
    if m == 1:
        return fam
    members = []
    for choice in cartesian(fam.members, repeat=m):
        x = 0
        for b in choice:
            x = (x << 12) | b
        members.append(x)
    return SetFamily(12 * m, tuple(members))


def format_matrix(h: HadamardMatrix) -> str:
    lines = [str(h.order)] + ["".join("+" if x == 1 else "-" for x in r) for r in h.entries]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> HadamardMatrix:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].isdigit():
        raise FormatError("matrix header must be the order")
    order = int(lines[0])
    rows = lines[1:]
    if len(rows) != order or any(len(r) != order or set(r) - {"+", "-"} for r in rows):
        raise FormatError(f"expected {order} rows of {order} '+'/'-' characters")
    try:
        return HadamardMatrix(tuple(tuple(1 if ch == "+" else -1 for ch in r) for r in rows))
    except PreconditionError as exc:
        raise FormatError(str(exc)) from exc
