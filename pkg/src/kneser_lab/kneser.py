"""Stabilizers, the disjoint-support decomposition, and Kneser diagnostics."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from . import kernels
from .codes import LinearCode, dual, power, power_dims, restrict_code, schur_product
from .errors import PreconditionError
from .report import VerificationReport

log = logging.getLogger(__name__)


def stabilizer(c: LinearCode) -> LinearCode:
    """St(C) = {x : x*C is contained in C}.

    x*b lies in C iff h.(x*b) = (h*b).x = 0 for every parity-check row h, so
    St(C) is the null space of the stacked constraint rows h*b.
    """
    checks = dual(c)
    constraints, pivots = kernels.schur_span(checks.basis, c.basis, c.n, c.p)
    return dual(LinearCode(c.field, c.n, constraints, pivots))


def stabilizer_dim_on_support(c: LinearCode) -> int:
    """dim St(C) after restricting C to its support (0 for the zero code)."""
    supp = c.support()
    if not supp:
        return 0
    return stabilizer(restrict_code(c, supp)).dim


@dataclass(frozen=True)
class StabDecomposition:
    parent: LinearCode
    stab: LinearCode
    parts: tuple[tuple[int, ...], ...]
    components: tuple[LinearCode, ...]

    @property
    def m(self) -> int:
        return self.stab.dim

    @property
    def component_dims(self) -> list[int]:
        return [c.dim for c in self.components]

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "parts": [list(s) for s in self.parts],
            "component_dims": self.component_dims,
            "stab_dim": self.stab.dim,
        }


def decompose(c: LinearCode) -> StabDecomposition:
    """Split a full-support code as C_1 + ... + C_m with disjoint supports.

    Coordinates are grouped by their column in a stabilizer basis; the
    stabilizer has a basis of disjoint indicator vectors, so two coordinates
    share a part exactly when every stabilizer vector agrees on them.
    """
    if c.is_zero():
        raise PreconditionError("cannot decompose the zero code")
    if not c.is_full_support():
        raise PreconditionError("code is not full-support; restrict first (restrict_code)")
    st = stabilizer(c)
    groups: dict[tuple[int, ...], list[int]] = {}
    for j in range(c.n):
        groups.setdefault(tuple(r[j] for r in st.basis), []).append(j)
    parts = tuple(sorted(tuple(g) for g in groups.values()))
    if len(parts) != st.dim:
        raise AssertionError(f"{len(parts)} parts but stabilizer has dimension {st.dim}")
    components = []
    for part in parts:
        mask = set(part)
        rows = [tuple(x if j in mask else 0 for j, x in enumerate(r)) for r in c.basis]
        components.append(LinearCode.from_rows(c.field, c.n, rows))
    if sum(x.dim for x in components) != c.dim:
        raise AssertionError("components do not form a direct sum of the parent")
    return StabDecomposition(c, st, parts, tuple(components))


def reassemble(dec: StabDecomposition) -> LinearCode:
    rows = [r for comp in dec.components for r in comp.basis]
    return LinearCode.from_rows(dec.parent.field, dec.parent.n, rows)


def kneser_check(c: LinearCode, d: LinearCode) -> VerificationReport:
    """dim CD >= dim C + dim D - dim St(CD) for nonzero codes C, D."""
    if c.is_zero() or d.is_zero():
        raise PreconditionError("Kneser's inequality is stated for nonzero codes")
    cd = schur_product(c, d)
    st = stabilizer(cd)
    lhs = cd.dim
    rhs = c.dim + d.dim - st.dim
    details = {"p": c.p, "n": c.n, "dim_C": c.dim, "dim_D": d.dim,
               "dim_CD": cd.dim, "dim_St_CD": st.dim}
    ok = lhs >= rhs
    witness = None
    if not ok:
        witness = {"C": [list(r) for r in c.basis], "D": [list(r) for r in d.basis]}
        log.critical("Kneser inequality violated: %s", details)
    return VerificationReport("kneser", ok, True, witness, details)


def kneser_chain_bound(c: LinearCode, k: int) -> VerificationReport:
    """dim C^<k> >= k dim C - k + 1 whenever C^<k> has trivial stabilizer."""
    if c.is_zero():
        raise PreconditionError("chain bound needs a nonzero code")
    cs = restrict_code(c, c.support())
    ck = power(cs, k)
    st_dim = stabilizer(ck).dim
    details = {"p": c.p, "n": c.n, "k": k, "dim_C": c.dim, "dim_Ck": ck.dim,
               "dim_St_Ck": st_dim, "bound": k * c.dim - k + 1}
    if st_dim != 1:
        return VerificationReport("kneser_chain", True, False, None, details)
    ok = ck.dim >= k * c.dim - k + 1
    witness = None if ok else {"C": [list(r) for r in c.basis]}
    if not ok:
        log.critical("chain bound violated: %s", details)
    return VerificationReport("kneser_chain", ok, True, witness, details)


def growth_check(v: LinearCode, t: int) -> VerificationReport:
    """2 (dim V^<r> - dim V^<r-1>) >= dim W for 2 <= r <= t.

    W is V restricted to the union of the parts of V^<t> whose component has
    dimension at least 2.
    """
    if v.is_zero():
        raise PreconditionError("growth check needs a nonzero code")
    if not v.is_full_support():
        raise PreconditionError("growth check needs a full-support code")
    dec = decompose(power(v, t))
    big = [i for i, comp in enumerate(dec.components) if comp.dim >= 2]
    s = sorted(j for i in big for j in dec.parts[i])
    w_dim = restrict_code(v, s).dim if s else 0
    dims = power_dims(v, t)
    bad = [r for r in range(2, t + 1) if 2 * (dims[r - 1] - dims[r - 2]) < w_dim]
    details = {"p": v.p, "n": v.n, "t": t, "dims": list(dims), "S": s,
               "dim_W": w_dim, "m": dec.m}
    witness = None
    if bad:
        witness = {"V": [list(r) for r in v.basis], "r": bad}
        log.critical("growth inequality violated: %s", details)
    return VerificationReport("growth", not bad, True, witness, details)


def stab_chain_monotone(v: LinearCode, t: int) -> bool:
    """St(V^<j>) is contained in St(V^<j+1>) for 1 <= j < t."""
    prev = stabilizer(v)
    cur_code = v
    for _ in range(1, t):
        cur_code = schur_product(cur_code, v)
        cur = stabilizer(cur_code)
        if not prev <= cur:
            return False
        prev = cur
    return True
