"""Set families on [n] as sorted tuples of bitmasks.

Bitmask convention: coordinate ``i`` (0-based) is bit ``n-1-i``, so the
bitstring of a member reads left to right and integer order is
lexicographic order on bitstrings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, TextIO

from .errors import FormatError, PreconditionError
from .report import VerificationReport


def mask_of(indices: Iterable[int], n: int) -> int:
    m = 0
    for i in indices:
        if not 0 <= i < n:
            raise PreconditionError(f"index {i} outside [0, {n})")
        m |= 1 << (n - 1 - i)
    return m


def indices_of(mask: int, n: int) -> tuple[int, ...]:
    return tuple(i for i in range(n) if (mask >> (n - 1 - i)) & 1)


def bitstring(mask: int, n: int) -> str:
    return format(mask, f"0{n}b") if n else ""


@dataclass(frozen=True)
class SetFamily:
    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        full = (1 << self.n) - 1
        ms = tuple(sorted(set(self.members)))
        for m in ms:
            if m < 0 or m & ~full:
                raise PreconditionError(f"member {m:b} is not a subset of [{self.n}]")
        object.__setattr__(self, "members", ms)

    @classmethod
    def from_bitstrings(cls, strings: Iterable[str], n: int | None = None) -> "SetFamily":
        strings = [s.strip() for s in strings]
        if n is None:
            if not strings:
                raise PreconditionError("need n for an empty family")
            n = len(strings[0])
        masks = []
        for s in strings:
            if len(s) != n or any(ch not in "01" for ch in s):
                raise FormatError(f"bad member {s!r} for n={n}")
            masks.append(int(s, 2) if s else 0)
        return cls(n, tuple(masks))

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]], n: int) -> "SetFamily":
        return cls(n, tuple(mask_of(s, n) for s in sets))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, mask: int) -> bool:
        return mask in set(self.members)

    def support_mask(self) -> int:
        s = 0
        for m in self.members:
            s |= m
        return s

    def support(self) -> tuple[int, ...]:
        return indices_of(self.support_mask(), self.n)

    def is_full_support(self) -> bool:
        return self.support_mask() == (1 << self.n) - 1

    def bitstrings(self) -> list[str]:
        return [bitstring(m, self.n) for m in self.members]

    def sets(self) -> list[tuple[int, ...]]:
        return [indices_of(m, self.n) for m in self.members]

    def vectors(self) -> list[tuple[int, ...]]:
        n = self.n
        return [tuple((m >> (n - 1 - i)) & 1 for i in range(n)) for m in self.members]

    def to_dict(self) -> dict:
        return {"n": self.n, "members": self.bitstrings()}

    def __repr__(self) -> str:
        return f"SetFamily(n={self.n}, size={len(self.members)})"


@dataclass(frozen=True)
class AtomPartition:
    n: int
    atoms: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> list[int]:
        return sorted(len(a) for a in self.atoms)

    def masks(self) -> list[int]:
        return [mask_of(a, self.n) for a in self.atoms]

    def __len__(self) -> int:
        return len(self.atoms)

    def to_dict(self) -> dict:
        return {"atoms": [list(a) for a in self.atoms], "sizes": [len(a) for a in self.atoms]}


def atoms(f: SetFamily) -> AtomPartition:
    """Classes of coordinates of supp(F) with identical membership pattern."""
    n = f.n
    groups: dict[int, list[int]] = {}
    for i in range(n):
        bit = 1 << (n - 1 - i)
        sig = 0
        for idx, m in enumerate(f.members):
            if m & bit:
                sig |= 1 << idx
        if sig:
            groups.setdefault(sig, []).append(i)
    part = AtomPartition(n, tuple(sorted(tuple(g) for g in groups.values())))
    for m in f.members:
        for a in part.masks():
            if m & a and m & a != a:
                raise AssertionError("member splits an atom")
    return part


def _closure_levels(f: SetFamily):
    """Yield ``(level, new_sets, origin)`` for F^1, F^2, ... until saturation.

    ``origin`` maps every set seen so far to a tuple of members whose
    intersection it is (shortest found).
    """
    if not f.members:
        raise PreconditionError("family is empty")
    origin = {m: (m,) for m in f.members}
    frontier = list(f.members)
    level = 1
    yield level, list(frontier), origin
    while frontier:
        new = []
        for a in frontier:
            for b in f.members:
                c = a & b
                if c not in origin:
                    origin[c] = origin[a] + (b,)
                    new.append(c)
        frontier = sorted(new)
        level += 1
        if frontier:
            yield level, frontier, origin


def product_family(f: SetFamily, k: int) -> SetFamily:
    """F^k: all intersections of k (not necessarily distinct) members."""
    if k < 1:
        raise PreconditionError("k must be >= 1")
    seen: set[int] = set()
    for level, new, _origin in _closure_levels(f):
        if level > k:
            break
        seen.update(new)
    return SetFamily(f.n, tuple(seen))


def intersection_closure(f: SetFamily) -> SetFamily:
    """F^k for k large enough that it no longer grows."""
    origin = {}
    for _level, _new, origin in _closure_levels(f):
        pass
    return SetFamily(f.n, tuple(origin))


def is_kwise_divisible(f: SetFamily, k: int, ell: int) -> VerificationReport:
    """Every intersection of k members has cardinality divisible by ell.

    On failure ``witness`` holds k members (repeats allowed) and the offending
    intersection.
    """
    if k < 1 or ell < 1:
        raise PreconditionError("k and ell must be positive")
    details = {"n": f.n, "k": k, "l": ell, "size": len(f)}
    if not f.members:
        return VerificationReport("kwise_divisible", True, True, None, details)
    for level, new, origin in _closure_levels(f):
        if level > k:
            break
        for s in new:
            card = s.bit_count()
            if card % ell:
                tup = origin[s]
                tup = tup + (tup[-1],) * (k - len(tup))
                witness = {
                    "members": [bitstring(m, f.n) for m in tup],
                    "intersection": bitstring(s, f.n),
                    "cardinality": card,
                }
                return VerificationReport("kwise_divisible", False, True, witness, details)
    return VerificationReport("kwise_divisible", True, True, None, details)


def restrict(f: SetFamily, subset: Iterable[int]) -> SetFamily:
    """F|_A = {F & A}, re-indexed onto [|A|] keeping the order of A."""
    cols = sorted(set(subset))
    n = f.n
    for i in cols:
        if not 0 <= i < n:
            raise PreconditionError(f"index {i} outside [0, {n})")
    k = len(cols)
    out = []
    for m in f.members:
        r = 0
        for pos, i in enumerate(cols):
            if (m >> (n - 1 - i)) & 1:
                r |= 1 << (k - 1 - pos)
        out.append(r)
    return SetFamily(k, tuple(out))


def restrict_to_support(f: SetFamily) -> SetFamily:
    return restrict(f, f.support())


def atomic_structure_check(f: SetFamily, ell: int) -> VerificationReport:
    """Pass iff every atom of F has exactly ell elements."""
    part = atoms(f)
    sizes = [len(a) for a in part.atoms]
    ok = all(s == ell for s in sizes)
    details = {"n": f.n, "l": ell, "atom_sizes": sorted(sizes), "n_atoms": len(sizes)}
    witness = None
    if not ok:
        witness = {"atoms": [list(a) for a in part.atoms if len(a) != ell]}
    return VerificationReport("atomic_structure", ok, True, witness, details)


def family_product_atoms_check(f: SetFamily, r: int) -> VerificationReport:
    """F^r and F have the same atoms."""
    a = atoms(f)
    b = atoms(product_family(f, r))
    ok = a == b
    details = {"r": r, "atoms_F": [list(x) for x in a.atoms], "atoms_Fr": [list(x) for x in b.atoms]}
    return VerificationReport("product_atoms", ok, True, None if ok else details, details)


def atom_in_power_check(f: SetFamily) -> VerificationReport:
    """F^a contains an atom of F, where a is the number of atoms."""
    part = atoms(f)
    a = len(part)
    if a == 0:
        return VerificationReport("atom_in_power", True, False, None, {"n_atoms": 0})
    fa = set(product_family(f, a).members)
    hits = [list(at) for at, m in zip(part.atoms, part.masks()) if m in fa]
    details = {"n_atoms": a, "atoms_found": hits}
    return VerificationReport("atom_in_power", bool(hits), True, None, details)


# -- text formats ------------------------------------------------------------


def format_family(f: SetFamily) -> str:
    return "\n".join([str(f.n)] + f.bitstrings()) + "\n"


def parse_family(text: str) -> SetFamily:
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
            return SetFamily.from_bitstrings(obj["members"], int(obj["n"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad JSON family: {exc}") from exc
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty family file")
    head = lines[0].split()
    if len(head) != 1 or not head[0].isdigit():
        raise FormatError(f"family header must be 'n', got {lines[0]!r}")
    return SetFamily.from_bitstrings(lines[1:], int(head[0]))


def read_family(fh: TextIO) -> SetFamily:
    return parse_family(fh.read())


def write_family(f: SetFamily, fh: TextIO) -> None:
    fh.write(format_family(f))
