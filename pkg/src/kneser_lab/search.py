"""Exhaustive sweeps over subspaces and families, and the seeded property suite.

Sweeps over p-wise (or (p+1)-wise) p-divisible families run over subspaces
rather than families: every such family lies inside binary_points of its own
F_p-span, and that span satisfies the orthogonality condition, so scanning
all subspaces V with V^<k> orthogonal to 1 and counting binary points covers
every family.
"""

from __future__ import annotations

import logging
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from itertools import product as cartesian
from typing import Callable, Iterable, Iterator, Sequence

from . import kernels
from .bridge import (
    bridge_check,
    family_of_points,
    family_witness_ok,
    improved_odlyzko_check,
    improved_odlyzko_hypothesis,
    odlyzko_count,
)
from .codes import LinearCode, count_binary_points, restrict_code
from .errors import BudgetExceeded, InternalCheckError, PreconditionError
from .families import SetFamily, atomic_structure_check, bitstring, is_kwise_divisible
from .field import PrimeField, format_vector, is_prime
from .report import TheoremReport, VerificationReport
from .kneser import growth_check, kneser_chain_bound, kneser_check

log = logging.getLogger(__name__)

SUBSPACE_BUDGET = 10 ** 7
NODE_BUDGET = 10 ** 8
#: extremal instances and violations listed in a report (the rest are counted)
KEEP_CAP = 16
SUBSPACE_REDUCTION = ("subspace sweep: every k-wise p-divisible family lies in the binary "
                      "points of its F_p-span V, and V^<k> is orthogonal to 1")


def budget_override(default: int) -> int:
    raw = os.environ.get("KNESER_LAB_BUDGET")
    if not raw:
        return default
    try:
        return int(float(raw))
    except ValueError:
        raise PreconditionError(f"KNESER_LAB_BUDGET={raw!r} is not a number") from None


def gaussian_binomial(n: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of F_q^n."""
    if r < 0 or r > n:
        return 0
    num = den = 1
    for i in range(r):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def total_subspaces(n: int, q: int, dims: Iterable[int] | None = None) -> int:
    dims = range(n + 1) if dims is None else dims
    return sum(gaussian_binomial(n, r, q) for r in dims)


@dataclass(frozen=True)
class SubspaceEnumerator:
    """Every subspace of F_p^n with dimension in ``dim_range``, once each, in RREF order.

    Subspaces are grouped by pivot set; within a group the free entries run
    through F_p in odometer order with the last free position fastest.
    """

    field: PrimeField
    n: int
    dim_range: tuple[int, int] | None = None

    @property
    def dims(self) -> range:
        lo, hi = self.dim_range if self.dim_range is not None else (0, self.n)
        return range(max(lo, 0), min(hi, self.n) + 1)

    def pivot_sets(self) -> list[tuple[int, ...]]:
        return [piv for r in self.dims for piv in combinations(range(self.n), r)]

    def block_size(self, pivots: Sequence[int]) -> int:
        return self.field.p ** len(kernels.free_positions(self.n, pivots))

    def count(self) -> int:
        return sum(self.block_size(piv) for piv in self.pivot_sets())

    def expected(self) -> int:
        return total_subspaces(self.n, self.field.p, self.dims)

    def self_check(self) -> int:
        got, want = self.count(), self.expected()
        if got != want:
            raise InternalCheckError(f"enumerator covers {got} subspaces, Gaussian binomials give {want}")
        return got

    def block(self, pivots: Sequence[int]) -> Iterator[LinearCode]:
        p, n = self.field.p, self.n
        free = kernels.free_positions(n, pivots)
        template = [[0] * n for _ in pivots]
        for i, c in enumerate(pivots):
            template[i][c] = 1
        for values in cartesian(range(p), repeat=len(free)):
            for (i, j), x in zip(free, values):
                template[i][j] = x
            yield LinearCode(self.field, n, tuple(tuple(r) for r in template), tuple(pivots))

    def __iter__(self) -> Iterator[LinearCode]:
        for piv in self.pivot_sets():
            yield from self.block(piv)


def _pool_map(func: Callable, items: list, workers: int) -> list:
    """Order-preserving map; runs inline for one worker."""
    if workers <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=1))


def _check_budget(total: int, budget: int, what: str) -> None:
    if total > budget:
        raise BudgetExceeded(f"enumeration too large: {total} {what} > budget {budget}",
                             estimate=total, budget=budget)


# -- theorem 1 and 2 ------------------------------------------------------------


def _scan_job(args):
    p, n, pivots, k, keep_above = args
    return kernels.scan_block(p, n, pivots, k, keep_above)


def _sweep(p: int, n: int, k: int, keep_above: int, workers: int, budget: int | None):
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if n < 1:
        raise PreconditionError("n must be positive")
    fld = PrimeField(p)
    enum = SubspaceEnumerator(fld, n)
    expected = enum.expected()
    _check_budget(expected, budget_override(SUBSPACE_BUDGET) if budget is None else budget, "subspaces")
    jobs = [(p, n, piv, k, keep_above) for piv in enum.pivot_sets()]
    results = _pool_map(_scan_job, jobs, workers)
    scanned = n_pass = 0
    hist: dict[int, int] = {}
    kept: list[LinearCode] = []
    for (_, _, piv, _, _), (ns, npass, h, kp) in zip(jobs, results):
        scanned += ns
        n_pass += npass
        for c, m in h.items():
            hist[c] = hist.get(c, 0) + m
        kept.extend(LinearCode(fld, n, basis, tuple(piv)) for basis, _ in kp)
    if scanned != expected:
        raise InternalCheckError(f"scanned {scanned} subspaces, Gaussian binomials give {expected}")
    return fld, scanned, n_pass, hist, kept


def _basis_strings(c: LinearCode) -> list[str]:
    return [format_vector(v) for v in c.rows()]


def _instance(c: LinearCode, fam: SetFamily) -> dict:
    return {"basis": _basis_strings(c), "size": len(fam), "family": fam.bitstrings()}


def verify_theorem1(p: int, n: int, workers: int = 1, budget: int | None = None) -> TheoremReport:
    """Largest p-wise p-divisible family on [n] against 2^floor(n/p)."""
    bound = 1 << (n // p)
    fld, scanned, n_pass, hist, kept = _sweep(p, n, p, bound - 1, workers, budget)
    best = max(hist) if hist else 0
    extremal, violations = [], []
    for c in kept:
        fam = family_of_points(c)
        if len(fam) > bound:
            if not is_kwise_divisible(fam, p, p).passed or not family_witness_ok(fam, p, p):
                raise InternalCheckError("counterexample failed re-validation")
            violations.append(_instance(c, fam))
        elif len(fam) == best:
            extremal.append(_instance(c, fam))
    ok = not violations
    if not ok:
        log.critical("theorem 1 sweep found %d families above the bound", len(violations))
    return TheoremReport(
        check="theorem1", passed=ok, hypothesis_met=True,
        witness=violations[:KEEP_CAP] or None,
        details={"reduction": SUBSPACE_REDUCTION, "k": p, "passing_subspaces": n_pass,
                 "histogram": {str(c): hist[c] for c in sorted(hist)},
                 "n_violations": len(violations)},
        theorem="theorem1", params={"p": p, "n": n, "k": p}, universe=scanned,
        max_found=best, bound=bound, attained=best == bound,
        extremal=extremal[:KEEP_CAP], n_extremal=hist.get(best, 0))


def verify_theorem2(p: int, n: int, workers: int = 1, budget: int | None = None) -> TheoremReport:
    """(p+1)-wise p-divisible families above 2^(floor(n/p)-1) have all atoms of size p."""
    k = p + 1
    bound = 1 << (n // p)
    threshold = bound >> 1 if n >= p else 0
    fld, scanned, n_pass, hist, kept = _sweep(p, n, k, threshold, workers, budget)
    best = max(hist) if hist else 0
    violations, extremal = [], []
    for c in kept:
        fam = family_of_points(c)
        check = atomic_structure_check(fam, p)
        if not check.passed:
            if not (is_kwise_divisible(fam, k, p).passed and family_witness_ok(fam, k, p)):
                raise InternalCheckError("counterexample failed re-validation")
            violations.append({**_instance(c, fam), "atom_sizes": check.details["atom_sizes"]})
        elif len(fam) == best:
            extremal.append(_instance(c, fam))
    ok = not violations and best <= bound
    if not ok:
        log.critical("theorem 2 sweep: %d non-atomic families above the threshold", len(violations))
    return TheoremReport(
        check="theorem2", passed=ok, hypothesis_met=True,
        witness=violations[:KEEP_CAP] or None,
        details={"reduction": SUBSPACE_REDUCTION, "k": k, "threshold": threshold,
                 "passing_subspaces": n_pass, "above_threshold": len(kept),
                 "histogram": {str(c): hist[c] for c in sorted(hist)},
                 "n_violations": len(violations)},
        theorem="theorem2", params={"p": p, "n": n, "k": k}, universe=scanned,
        max_found=best, bound=bound, attained=best == bound,
        extremal=extremal[:KEEP_CAP], n_extremal=hist.get(best, 0))


# -- theorem 4 ------------------------------------------------------------------


def _dfs_job(args):
    n, ell, cands, first, threshold, budget, keep_cap = args
    return kernels.closure_dfs(n, ell, cands, first, threshold, budget, keep_cap)


def verify_theorem4(ell: int, n: int, workers: int = 1, budget: int | None = None) -> TheoremReport:
    """Exhaustive DFS over families whose whole intersection closure is ell-divisible.

    At this scale 4 ell^2 >= n, and any intersection of members is already an
    intersection of at most n of them, so 4 ell^2-wise ell-divisibility is
    the same as divisibility of the full closure.
    """
    if ell < 1 or n < 1:
        raise PreconditionError("ell and n must be positive")
    if 4 * ell * ell < n:
        raise PreconditionError("closure search needs 4 l^2 >= n")
    if n > 24:
        raise BudgetExceeded(f"ground set n={n} too large for the closure search", estimate=n, budget=24)
    node_budget = budget_override(NODE_BUDGET) if budget is None else budget
    bound = 1 << (n // ell)
    threshold = bound >> 1 if n >= ell else 0
    cands = tuple(m for m in range(1 << n) if m.bit_count() % ell == 0)
    jobs = [(n, ell, cands, i, threshold, node_budget, KEEP_CAP) for i in range(len(cands))]
    results = _pool_map(_dfs_job, jobs, workers)
    nodes = sum(r["nodes"] for r in results)
    exhausted = all(r["exhausted"] for r in results) and nodes <= node_budget
    best = max(r["max_size"] for r in results)
    n_max = sum(r["n_max"] for r in results if r["max_size"] == best)
    fams = [f for r in results if r["max_size"] == best for f in r["max_families"]]
    n_viol = sum(r["n_violations"] for r in results)
    viols = [f for r in results for f in r["violations"]]
    k = 4 * ell * ell
    witness = []
    for members in viols[:KEEP_CAP]:
        fam = SetFamily(n, tuple(members))
        if not is_kwise_divisible(fam, k, ell).passed or atomic_structure_check(fam, ell).passed:
            raise InternalCheckError("counterexample failed re-validation")
        witness.append({"family": fam.bitstrings(), "size": len(fam)})
    ok = exhausted and best <= bound and n_viol == 0
    if exhausted and not ok:
        log.critical("theorem 4 search: max %d, %d structural violations", best, n_viol)
    return TheoremReport(
        check="theorem4", passed=ok, hypothesis_met=True, witness=witness or None,
        details={"k": k, "threshold": threshold, "candidates": len(cands),
                 "above_threshold": sum(r["n_above"] for r in results),
                 "n_violations": n_viol, "node_budget": node_budget},
        theorem="theorem4", params={"l": ell, "n": n, "k": k}, universe=nodes,
        max_found=best, bound=bound, attained=best == bound,
        extremal=[{"family": [bitstring(m, n) for m in f], "size": len(f)} for f in fams[:KEEP_CAP]],
        n_extremal=n_max, inconclusive=not exhausted)


# -- improved counting sweep ------------------------------------------------------


def _odlyzko_job(args):
    p, n, pivots = args
    enum = SubspaceEnumerator(PrimeField(p), n)
    scanned = met = odl_bad = 0
    over = []
    for v in enum.block(pivots):
        scanned += 1
        count = count_binary_points(v)
        if count > 1 << v.dim:
            odl_bad += 1
        if count < 3:
            continue
        fam = family_of_points(v)
        if LinearCode.from_rows(v.field, n, fam.vectors()) != v:
            continue
        if not improved_odlyzko_hypothesis(v)["met"]:
            continue
        met += 1
        if count > 1 << (v.dim - 1):
            over.append((v.basis, count))
    return scanned, met, odl_bad, over


def improved_odlyzko_sweep(p: int, n: int, workers: int = 1, budget: int | None = None) -> TheoremReport:
    """Every subspace V of F_p^n spanned by at least two nonzero binary points
    with St(V^<3>) trivial on its support must have at most 2^(dim V - 1)
    binary points; the plain 2^dim V bound is checked on every subspace.
    """
    if p < 3 or not is_prime(p):
        raise PreconditionError("the improved bound needs an odd prime")
    enum = SubspaceEnumerator(PrimeField(p), n)
    expected = enum.expected()
    _check_budget(expected, budget_override(SUBSPACE_BUDGET // 10) if budget is None else budget, "subspaces")
    jobs = [(p, n, piv) for piv in enum.pivot_sets()]
    results = _pool_map(_odlyzko_job, jobs, workers)
    scanned = sum(r[0] for r in results)
    met = sum(r[1] for r in results)
    odl_bad = sum(r[2] for r in results)
    over = [{"basis": [list(row) for row in b], "count": c} for r in results for b, c in r[3]]
    if scanned != expected:
        raise InternalCheckError(f"scanned {scanned} subspaces, Gaussian binomials give {expected}")
    ok = not over and odl_bad == 0
    return TheoremReport(
        check="improved_odlyzko_sweep", passed=ok, hypothesis_met=met > 0,
        witness=over[:KEEP_CAP] or None,
        details={"hypothesis_instances": met, "odlyzko_violations": odl_bad,
                 "improved_violations": len(over)},
        theorem="improved_odlyzko", params={"p": p, "n": n}, universe=scanned)


# -- random property suite --------------------------------------------------------

SUITE_CHUNK = 250
SUITE_CHECKS = ("kneser", "kneser_chain", "growth", "bridge", "odlyzko", "improved_odlyzko")


def random_code(rng: random.Random, p: int, n: int, max_dim: int | None = None) -> LinearCode:
    """A nonzero code spanned by 1..max_dim uniformly random vectors."""
    fld = PrimeField(p)
    r = rng.randint(1, max_dim or n)
    while True:
        rows = [[rng.randrange(p) for _ in range(n)] for _ in range(r)]
        c = LinearCode.from_rows(fld, n, rows)
        if not c.is_zero():
            return c


def random_family(rng: random.Random, n: int, max_size: int = 8) -> SetFamily:
    size = rng.randint(1, max_size)
    return SetFamily(n, tuple(rng.getrandbits(n) for _ in range(size)))


def _suite_trial(rng: random.Random) -> list[tuple[str, VerificationReport]]:
    out = []
    p = rng.choice((2, 3, 5))
    n = rng.randint(1, 10)
    c = random_code(rng, p, n)
    d = random_code(rng, p, n)
    out.append(("kneser", kneser_check(c, d)))
    out.append(("kneser_chain", kneser_chain_bound(c, rng.randint(1, 4))))
    full = restrict_code(c, c.support())
    out.append(("growth", growth_check(full, rng.randint(1, 4))))
    count, bound, ok = odlyzko_count(c)
    out.append(("odlyzko", VerificationReport("odlyzko", ok, True, None,
                                             {"count": count, "bound": bound})))
    nf = rng.randint(1, 8)
    fam = random_family(rng, nf)
    out.append(("bridge", bridge_check(fam, rng.randint(1, 4), rng.choice((2, 3, 5))).to_report()))
    out.append(("improved_odlyzko", improved_odlyzko_check(fam, rng.choice((3, 5)))))
    return out


def _suite_job(args):
    seed, chunk, trials = args
    rng = random.Random(f"kneser-lab:{seed}:{chunk}")
    stats = {name: {"run": 0, "pass": 0, "hypothesis_not_met": 0, "fail": 0} for name in SUITE_CHECKS}
    failures = []
    for t in range(trials):
        for name, rep in _suite_trial(rng):
            s = stats[name]
            s["run"] += 1
            if not rep.hypothesis_met:
                s["hypothesis_not_met"] += 1
            elif rep.passed:
                s["pass"] += 1
            else:
                s["fail"] += 1
                failures.append({"chunk": chunk, "trial": t, "report": rep.to_dict()})
    return stats, failures


def random_property_suite(trials: int, seed: int, workers: int = 1) -> VerificationReport:
    """Seeded batch of the stabilizer and bridge checks on random instances.

    Trials are cut into fixed chunks, each with its own seed derived from
    ``seed`` and the chunk index, so the result does not depend on ``workers``.
    """
    if trials < 1:
        raise PreconditionError("trials must be >= 1")
    jobs = []
    start = 0
    while start < trials:
        jobs.append((seed, len(jobs), min(SUITE_CHUNK, trials - start)))
        start += SUITE_CHUNK
    results = _pool_map(_suite_job, jobs, workers)
    totals = {name: {"run": 0, "pass": 0, "hypothesis_not_met": 0, "fail": 0} for name in SUITE_CHECKS}
    failures = []
    for stats, fails in results:
        for name, s in stats.items():
            for key, val in s.items():
                totals[name][key] += val
        failures.extend(fails)
    n_fail = sum(s["fail"] for s in totals.values())
    return VerificationReport("suite", n_fail == 0, True, failures[:KEEP_CAP] or None,
                              {"trials": trials, "seed": seed, "checks": totals, "failures": n_fail})
