"""Pure-Python kernels.

Every function here has a twin of the same name and signature in the compiled
``_kernels`` extension; :mod:`kneser_lab.kernels` picks one at import time.

Conventions shared by both backends:

* a matrix is a tuple of rows, a row is a tuple of ints in ``[0, p)``;
* ``rref`` output drops zero rows and lists pivots in increasing order;
* bitset families use ``int`` masks with coordinate 0 in the most
  significant of ``n`` bits, so integer order is lexicographic order on the
  bitstrings.
"""

from __future__ import annotations

from itertools import product as _cartesian

BACKEND = "python"


def _inv(a: int, p: int) -> int:
    return pow(a, p - 2, p)


# -- row reduction ----------------------------------------------------------


class _Echelon:
    """Incremental row-echelon accumulator over F_p.

    Rows are kept normalised (leading entry 1) but only reduced downwards;
    :meth:`finish` back-substitutes to the canonical RREF.
    """

    __slots__ = ("n", "p", "rows")

    def __init__(self, n: int, p: int):
        self.n = n
        self.p = p
        self.rows: dict[int, list[int]] = {}

    def insert(self, vec) -> bool:
        p = self.p
        n = self.n
        rows = self.rows
        v = [x % p for x in vec]
        for c in range(n):
            f = v[c]
            if not f:
                continue
            row = rows.get(c)
            if row is None:
                if f != 1:
                    g = _inv(f, p)
                    v = [(x * g) % p for x in v]
                rows[c] = v
                return True
            for j in range(c, n):
                b = row[j]
                if b:
                    v[j] = (v[j] - f * b) % p
        return False

    def __len__(self) -> int:
        return len(self.rows)

    def finish(self):
        p = self.p
        pivots = sorted(self.rows)
        rows = self.rows
        for idx in range(len(pivots) - 1, -1, -1):
            c = pivots[idx]
            prow = rows[c]
            for c2 in pivots[:idx]:
                row = rows[c2]
                f = row[c]
                if f:
                    for j in range(c, self.n):
                        b = prow[j]
                        if b:
                            row[j] = (row[j] - f * b) % p
        return tuple(tuple(rows[c]) for c in pivots), tuple(pivots)


class _Echelon2:
    """F_2 variant of :class:`_Echelon` on packed ``int`` rows."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int):
        self.n = n
        self.rows: dict[int, int] = {}

    def insert_mask(self, v: int) -> bool:
        n = self.n
        rows = self.rows
        while v:
            c = n - v.bit_length()
            row = rows.get(c)
            if row is None:
                rows[c] = v
                return True
            v ^= row
        return False

    def insert(self, vec) -> bool:
        return self.insert_mask(_pack(vec))

    def __len__(self) -> int:
        return len(self.rows)

    def finish(self):
        n = self.n
        rows = self.rows
        pivots = sorted(rows)
        for idx in range(len(pivots) - 1, -1, -1):
            bit = 1 << (n - 1 - pivots[idx])
            prow = rows[pivots[idx]]
            for c2 in pivots[:idx]:
                if rows[c2] & bit:
                    rows[c2] ^= prow
        return tuple(_unpack(rows[c], n) for c in pivots), tuple(pivots)


def _pack(vec) -> int:
    m = 0
    for x in vec:
        m = (m << 1) | (x & 1)
    return m


def _unpack(m: int, n: int) -> tuple:
    return tuple((m >> (n - 1 - j)) & 1 for j in range(n))


def _echelon(n: int, p: int):
    return _Echelon2(n) if p == 2 else _Echelon(n, p)


def rref(rows, n: int, p: int):
    """Canonical reduced row-echelon form of ``rows``; returns ``(basis, pivots)``."""
    ech = _echelon(n, p)
    for r in rows:
        if len(ech) == n:
            break
        ech.insert(r)
    return ech.finish()


def schur_span(a, b, n: int, p: int, same: bool = False):
    """RREF of the span of all coordinate-wise products ``x*y``, x in a, y in b.

    With ``same=True`` the caller promises ``a is b`` and only pairs ``i <= j``
    are formed.
    """
    if p == 2:
        ech2 = _Echelon2(n)
        am = [_pack(x) for x in a]
        bm = am if same else [_pack(y) for y in b]
        for i, x in enumerate(am):
            for y in bm[i if same else 0:]:
                ech2.insert_mask(x & y)
                if len(ech2) == n:
                    return ech2.finish()
        return ech2.finish()
    ech = _Echelon(n, p)
    for i, x in enumerate(a):
        for y in b[i if same else 0:]:
            ech.insert([u * v for u, v in zip(x, y)])
            if len(ech) == n:
                return ech.finish()
    return ech.finish()


def power_chain(basis, n: int, p: int, k: int):
    """Iterated Schur powers of the code with RREF ``basis``.

    Returns ``(basis_k, pivots_k, dims)`` where ``dims[i]`` is the dimension of
    the ``(i+1)``-th power.  ``dims`` stops early at the first fixed point; all
    later powers equal the last one.
    """
    basis = tuple(basis)
    cur, piv = rref(basis, n, p)
    dims = [len(cur)]
    for _ in range(2, k + 1):
        nxt, npiv = schur_span(cur, basis, n, p)
        if nxt == cur:
            break
        cur, piv = nxt, npiv
        dims.append(len(cur))
    return cur, piv, tuple(dims)


# -- binary points ----------------------------------------------------------


def _check_schedule(basis, n: int):
    r = len(basis)
    last = [-1] * n
    for i, row in enumerate(basis):
        for j in range(n):
            if row[j]:
                last[j] = i
    sched = [[] for _ in range(r)]
    for j in range(n):
        if last[j] >= 0:
            sched[last[j]].append(j)
    return sched


def _walk_binary(basis, n: int, p: int, emit) -> None:
    # depth-first over lambda in {0,1}^r; a coordinate is final once the
    # last row touching it has been decided, and must then be 0 or 1
    r = len(basis)
    sched = _check_schedule(basis, n)

    def rec(i: int, acc: list) -> None:
        if i == r:
            emit(acc)
            return
        cols = sched[i]
        for j in cols:
            if acc[j] > 1:
                break
        else:
            rec(i + 1, acc)
        row = basis[i]
        nxt = [(x + y) % p for x, y in zip(acc, row)]
        for j in cols:
            if nxt[j] > 1:
                return
        rec(i + 1, nxt)

    rec(0, [0] * n)


def binary_points(basis, n: int, p: int):
    """All {0,1}-vectors of the code with RREF ``basis``, sorted lexicographically."""
    r = len(basis)
    if p == 2:
        out = []
        for lam in _cartesian((0, 1), repeat=r):
            acc = [0] * n
            for coef, row in zip(lam, basis):
                if coef:
                    acc = [x ^ y for x, y in zip(acc, row)]
            out.append(tuple(acc))
        out.sort()
        return out
    out = []
    _walk_binary(basis, n, p, lambda acc: out.append(tuple(acc)))
    out.sort()
    return out


def count_binary_points(basis, n: int, p: int) -> int:
    if p == 2:
        return 1 << len(basis)
    box = [0]

    def bump(_acc):
        box[0] += 1

    _walk_binary(basis, n, p, bump)
    return box[0]


# -- subspace sweep ---------------------------------------------------------


def free_positions(n: int, pivots) -> list:
    pivset = set(pivots)
    return [(i, j) for i, c in enumerate(pivots) for j in range(c + 1, n) if j not in pivset]


def scan_block(p: int, n: int, pivots, k: int, keep_above: int):
    """Sweep every subspace whose RREF has pivot columns ``pivots``.

    For each subspace V, test whether every row of the RREF of the k-th Schur
    power has coordinate sum 0 mod p (V^<k> orthogonal to the all-one vector).
    For those that pass, count binary points.

    Returns ``(n_spaces, n_pass, hist, kept)`` where ``hist`` maps a binary
    point count to the number of passing subspaces with that count, and
    ``kept`` lists ``(basis, count)`` for passing subspaces with
    ``count > keep_above`` in enumeration order.
    """
    pivots = tuple(pivots)
    r = len(pivots)
    free = free_positions(n, pivots)
    template = [[0] * n for _ in range(r)]
    for i, c in enumerate(pivots):
        template[i][c] = 1
    n_spaces = 0
    n_pass = 0
    hist: dict[int, int] = {}
    kept = []
    for values in _cartesian(range(p), repeat=len(free)):
        for (i, j), x in zip(free, values):
            template[i][j] = x
        basis = tuple(tuple(row) for row in template)
        n_spaces += 1
        pw, _, _ = power_chain(basis, n, p, k)
        if any(sum(row) % p for row in pw):
            continue
        n_pass += 1
        cnt = count_binary_points(basis, n, p)
        hist[cnt] = hist.get(cnt, 0) + 1
        if cnt > keep_above:
            kept.append((basis, cnt))
    return n_spaces, n_pass, hist, kept


# -- intersection-closure DFS -----------------------------------------------


def atom_sizes(members, n: int) -> list:
    """Sizes of the atoms (classes of equal membership pattern) on the support."""
    groups: dict[int, int] = {}
    for b in range(n):
        sig = 0
        for idx, m in enumerate(members):
            if (m >> b) & 1:
                sig |= 1 << idx
        if sig:
            groups[sig] = groups.get(sig, 0) + 1
    return sorted(groups.values())


def closure_dfs(n: int, ell: int, candidates, first: int, threshold: int,
                budget: int, keep_cap: int):
    """Enumerate every family whose smallest member is ``candidates[first]``
    and whose intersection closure has all cardinalities divisible by ``ell``.

    Members are added in increasing candidate order, so each family is visited
    once.  Families larger than ``threshold`` are checked for atoms of size
    exactly ``ell``.

    Returns a dict with ``nodes``, ``max_size``, ``n_max``, ``max_families``
    (at most ``keep_cap``), ``n_above``, ``violations`` (at most ``keep_cap``),
    ``n_violations`` and ``exhausted`` (False if ``budget`` nodes were hit).
    """
    cands = tuple(candidates)
    ncand = len(cands)
    state = {
        "nodes": 0, "max_size": 0, "n_max": 0, "max_families": [],
        "n_above": 0, "violations": [], "n_violations": 0, "exhausted": True,
    }
    members: list = []

    def visit() -> None:
        size = len(members)
        if size > state["max_size"]:
            state["max_size"] = size
            state["n_max"] = 0
            state["max_families"] = []
        if size == state["max_size"]:
            state["n_max"] += 1
            if len(state["max_families"]) < keep_cap:
                state["max_families"].append(tuple(members))
        if size > threshold:
            state["n_above"] += 1
            if any(s != ell for s in atom_sizes(members, n)):
                state["n_violations"] += 1
                if len(state["violations"]) < keep_cap:
                    state["violations"].append(tuple(members))

    def rec(start: int, closure: set) -> bool:
        state["nodes"] += 1
        if state["nodes"] > budget:
            state["exhausted"] = False
            return False
        visit()
        for idx in range(start, ncand):
            s = cands[idx]
            new = set()
            if s not in closure:
                new.add(s)
            ok = True
            for x in closure:
                y = x & s
                if y not in closure and y not in new:
                    if y.bit_count() % ell:
                        ok = False
                        break
                    new.add(y)
            if not ok:
                continue
            members.append(s)
            cont = rec(idx + 1, closure | new)
            members.pop()
            if not cont:
                return False
        return True

    first_set = cands[first]
    members.append(first_set)
    rec(first + 1, {first_set})
    members.pop()
    return state
