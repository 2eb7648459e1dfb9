"""Exact integer linear algebra and group homology.

Everything here is exact: Python integers only, no floating point and no
modular shortcuts.  The two workhorses are

* Smith normal form, in two flavours: a dense algorithm that can track
  unimodular transforms U, V with U*A*V = D, and a sparse elimination
  (Markowitz-style pivoting on +-1 entries, dense fallback for the core)
  that only reports invariant factors and rank but scales to the boundary
  matrices of bar resolutions.

* Group homology of a finite group G via the normalized bar resolution.
  C_k has one basis tuple (g_1|...|g_k) per k-tuple of non-identity
  elements; tuples that acquire an identity entry under a face map are
  dropped.  H_k(G) for k >= 1 is finite, which lets the quotient
  C_k/im(d_{k+1}) stand in for ker/im: its torsion subgroup is H_k, and a
  logged row elimination of d_{k+1} gives generator representatives and a
  class map without ever computing an explicit kernel basis.

Induced maps H_k(f) for group homomorphisms f are computed by pushing
representative cycles through the chain map and reading off classes in the
target.
"""

from __future__ import annotations

import heapq
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

__all__ = [
    "IntMatrix",
    "SmithForm",
    "smith_normal_form",
    "HomologyGroup",
    "InducedMap",
    "bar_boundary",
    "homology",
    "induced_map",
    "homology_of_chain_complex",
    "known_facts",
    "known_homology",
    "BudgetExceeded",
]


class BudgetExceeded(RuntimeError):
    """Raised when a computation would exceed its configured work budget."""


# ---------------------------------------------------------------------------
# sparse integer matrices


class IntMatrix:
    """Sparse integer matrix with exact arithmetic.

    Stored as a dict of rows, each row a dict col -> value with no zero
    entries.  Dimensions are explicit; Python integers make every operation
    overflow-free.
    """

    def __init__(self, nrows: int, ncols: int, rows: Optional[dict] = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: dict[int, dict[int, int]] = {}
        if rows:
            for r, cs in rows.items():
                if not 0 <= r < nrows:
                    raise ValueError(f"row index {r} out of range")
                clean = {}
                for c, v in cs.items():
                    if not 0 <= c < ncols:
                        raise ValueError(f"column index {c} out of range")
                    if v:
                        clean[c] = int(v)
                if clean:
                    self.rows[r] = clean

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]]) -> "IntMatrix":
        nrows = len(dense)
        ncols = len(dense[0]) if nrows else 0
        rows = {}
        for i, row in enumerate(dense):
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
            cs = {j: int(v) for j, v in enumerate(row) if v}
            if cs:
                rows[i] = cs
        return cls(nrows, ncols, rows)

    @classmethod
    def from_triples(cls, nrows: int, ncols: int,
                     triples: Iterable[tuple[int, int, int]]) -> "IntMatrix":
        rows: dict[int, dict[int, int]] = {}
        for r, c, v in triples:
            if v == 0:
                continue
            cs = rows.setdefault(r, {})
            nv = cs.get(c, 0) + v
            if nv:
                cs[c] = nv
            else:
                del cs[c]
        rows = {r: cs for r, cs in rows.items() if cs}
        return cls(nrows, ncols, rows)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, cs in self.rows.items():
            for c, v in cs.items():
                out[r][c] = v
        return out

    def nnz(self) -> int:
        return sum(len(cs) for cs in self.rows.values())

    def transpose(self) -> "IntMatrix":
        rows: dict[int, dict[int, int]] = {}
        for r, cs in self.rows.items():
            for c, v in cs.items():
                rows.setdefault(c, {})[r] = v
        return IntMatrix(self.ncols, self.nrows, rows)

    def entry(self, r: int, c: int) -> int:
        return self.rows.get(r, {}).get(c, 0)

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        rows: dict[int, dict[int, int]] = {}
        for r, cs in self.rows.items():
            acc: dict[int, int] = {}
            for c1, v in cs.items():
                orow = other.rows.get(c1)
                if orow:
                    for c2, w in orow.items():
                        nv = acc.get(c2, 0) + v * w
                        if nv:
                            acc[c2] = nv
                        elif c2 in acc:
                            del acc[c2]
            if acc:
                rows[r] = acc
        return IntMatrix(self.nrows, other.ncols, rows)

    def is_zero(self) -> bool:
        return not self.rows

    def __eq__(self, other) -> bool:
        return (isinstance(other, IntMatrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def __repr__(self) -> str:
        return f"IntMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def _dense_matmul(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    n, k = len(A), len(B)
    m = len(B[0]) if k else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        Oi = out[i]
        for t, a in enumerate(Ai):
            if a:
                Bt = B[t]
                for j in range(m):
                    if Bt[j]:
                        Oi[j] += a * Bt[j]
    return out


def _det_bareiss(M: list[list[int]]) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [row[:] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


# ---------------------------------------------------------------------------
# dense Smith normal form core


def _snf_dense(M: list[list[int]], track_u: bool = False,
               track_v: bool = False):
    """Diagonalize M in place to Smith form.

    Returns (invariant_factors, U, Uinv, V); transforms are None unless
    tracked.  U satisfies U*M_orig*V = D and Uinv is its exact inverse,
    maintained incrementally so no inversion is ever needed.  The row count
    may be small while the column count is large; V tracking is only
    sensible for genuinely small matrices.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track_u else None
    Uinv = [[int(i == j) for j in range(m)] for i in range(m)] if track_u else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if track_v else None

    def row_op(i, j, q):
        # row_i -= q * row_j
        Mi, Mj = M[i], M[j]
        for c in range(n):
            if Mj[c]:
                Mi[c] -= q * Mj[c]
        if track_u:
            Ui, Uj = U[i], U[j]
            for c in range(m):
                if Uj[c]:
                    Ui[c] -= q * Uj[c]
            # the inverse picks up the opposite op on columns:
            # col_j += q * col_i
            for r in range(m):
                if Uinv[r][i]:
                    Uinv[r][j] += q * Uinv[r][i]

    def col_op(i, j, q):
        # col_i -= q * col_j
        for r in range(m):
            if M[r][j]:
                M[r][i] -= q * M[r][j]
        if track_v:
            for r in range(n):
                if V[r][j]:
                    V[r][i] -= q * V[r][j]

    def row_swap(i, j):
        if i == j:
            return
        M[i], M[j] = M[j], M[i]
        if track_u:
            U[i], U[j] = U[j], U[i]
            for r in range(m):
                Uinv[r][i], Uinv[r][j] = Uinv[r][j], Uinv[r][i]

    def col_swap(i, j):
        if i == j:
            return
        for r in range(m):
            M[r][i], M[r][j] = M[r][j], M[r][i]
        if track_v:
            for r in range(n):
                V[r][i], V[r][j] = V[r][j], V[r][i]

    def row_negate(i):
        M[i] = [-x for x in M[i]]
        if track_u:
            U[i] = [-x for x in U[i]]
            for r in range(m):
                Uinv[r][i] = -Uinv[r][i]

    t = 0
    while True:
        piv = None
        best = None
        for i in range(t, m):
            Mi = M[i]
            for j in range(t, n):
                v = Mi[j]
                if v and (best is None or abs(v) < best):
                    piv, best = (i, j), abs(v)
                    if best == 1:
                        break
            if best == 1:
                break
        if piv is None:
            break
        row_swap(t, piv[0])
        col_swap(t, piv[1])
        while True:
            p = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                if M[i][t] % p:
                    row_op(i, t, M[i][t] // p)
                    row_swap(t, i)
                    dirty = True
                    break
            if dirty:
                continue
            for j in range(t + 1, n):
                if M[t][j] % p:
                    col_op(j, t, M[t][j] // p)
                    col_swap(t, j)
                    dirty = True
                    break
            if not dirty:
                break
        p = M[t][t]
        for i in range(t + 1, m):
            if M[i][t]:
                row_op(i, t, M[i][t] // p)
        for j in range(t + 1, n):
            if M[t][j]:
                col_op(j, t, M[t][j] // p)
        t += 1
    rank = t
    # enforce the divisibility chain d_i | d_j pairwise
    for i in range(rank):
        for j in range(i + 1, rank):
            a, b = M[i][i], M[j][j]
            if b % a == 0:
                continue
            col_op(i, j, -1)  # entry (j, i) becomes d_j
            while True:
                p = M[i][i]
                q, r = divmod(M[j][i], p)
                if r:
                    row_op(j, i, q)
                    row_swap(i, j)
                    continue
                if q:
                    row_op(j, i, q)
                break
            if M[i][j]:
                col_op(j, i, M[i][j] // M[i][i])
            assert M[j][j] % M[i][i] == 0
    for i in range(rank):
        if M[i][i] < 0:
            row_negate(i)
    inv = [M[i][i] for i in range(rank)]
    return inv, U, Uinv, V


# ---------------------------------------------------------------------------
# Smith normal form, public entry


@dataclass
class SmithForm:
    """Smith normal form U * A * V = D.

    invariant_factors lists the nonzero diagonal entries d_1 | d_2 | ...
    (including the trivial 1s).  U and V are unimodular when requested and
    None otherwise.  rank == len(invariant_factors).
    """

    nrows: int
    ncols: int
    invariant_factors: list[int]
    U: Optional[list[list[int]]] = None
    V: Optional[list[list[int]]] = None
    _source: Optional[IntMatrix] = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def torsion(self) -> list[int]:
        return [d for d in self.invariant_factors if d > 1]

    def diagonal_matrix(self) -> list[list[int]]:
        D = [[0] * self.ncols for _ in range(self.nrows)]
        for i, d in enumerate(self.invariant_factors):
            D[i][i] = d
        return D

    def verify(self) -> bool:
        """Check U*A*V == D exactly, unimodularity of both transforms, and
        the divisibility chain."""
        if self.U is None or self.V is None or self._source is None:
            raise ValueError("transforms were not requested")
        A = self._source.to_dense()
        D = _dense_matmul(_dense_matmul(self.U, A), self.V)
        if D != self.diagonal_matrix():
            return False
        if abs(_det_bareiss(self.U)) != 1:
            return False
        if abs(_det_bareiss(self.V)) != 1:
            return False
        d = self.invariant_factors
        return all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))


def smith_normal_form(A: IntMatrix, with_transforms: bool = False,
                      max_dense: int = 250_000) -> SmithForm:
    """Smith normal form of an integer matrix.

    With transforms the dense algorithm runs and U, V are returned,
    verifiable via SmithForm.verify(); the matrix must be small enough
    (nrows * ncols <= max_dense).  Without transforms a sparse unit-pivot
    elimination handles large matrices; only invariant factors and rank
    are reported.
    """
    if with_transforms:
        if A.nrows * A.ncols > max_dense:
            raise BudgetExceeded(
                f"transform-tracked SNF limited to {max_dense} entries")
        inv, U, _, V = _snf_dense(A.to_dense(), track_u=True, track_v=True)
        return SmithForm(A.nrows, A.ncols, inv, U, V, _source=A)
    elim = _Elimination(A, keep_log=False)
    inv, _, _, _ = _snf_dense(elim.core)
    factors = [1] * len(elim.pivots) + inv
    return SmithForm(A.nrows, A.ncols, factors)


# ---------------------------------------------------------------------------
# sparse unit-pivot elimination


class _Elimination:
    """Sparse elimination with pivots restricted to +-1 entries.

    Markowitz-scored pivot selection keeps fill-in down; stale heap entries
    are revalidated on pop.  What remains when no unit entries are left is
    the dense core.  The optional log records (dst, src, mult) meaning
    row_dst -= mult * row_src in application order, which is exactly the
    operation to replay on a coordinate vector when computing classes
    modulo the column lattice.
    """

    def __init__(self, mat: IntMatrix, keep_log: bool = False):
        self.nrows = mat.nrows
        self.ncols = mat.ncols
        rows = {r: dict(cs) for r, cs in mat.rows.items()}
        colrows: dict[int, set] = {}
        for r, cs in rows.items():
            for c in cs:
                colrows.setdefault(c, set()).add(r)
        heap = []
        for r, cs in rows.items():
            lr = len(cs) - 1
            for c, v in cs.items():
                if v in (1, -1):
                    heap.append((lr * (len(colrows[c]) - 1), r, c))
        heapq.heapify(heap)
        log: Optional[list] = [] if keep_log else None
        pivots: list[tuple[int, int, int]] = []  # (row, col, value)
        while heap:
            score, pr, pc = heapq.heappop(heap)
            cs = rows.get(pr)
            if cs is None:
                continue
            v = cs.get(pc)
            if v not in (1, -1):
                continue
            cur = (len(cs) - 1) * (len(colrows[pc]) - 1)
            if cur > score:
                heapq.heappush(heap, (cur, pr, pc))
                continue
            prow = rows.pop(pr)
            for c in prow:
                colrows[c].discard(pr)
            for r in list(colrows[pc]):
                rcs = rows[r]
                mult = rcs[pc] * v  # v is +-1, so this clears entry pc
                if log is not None:
                    log.append((r, pr, mult))
                for c, pv in prow.items():
                    old = rcs.get(c)
                    nv = (old or 0) - mult * pv
                    if nv:
                        rcs[c] = nv
                        if old is None:
                            colrows[c].add(r)
                        if nv in (1, -1):
                            heapq.heappush(
                                heap,
                                ((len(rcs) - 1) * (len(colrows[c]) - 1),
                                 r, c))
                    elif old is not None:
                        del rcs[c]
                        colrows[c].discard(r)
                if not rcs:
                    del rows[r]
            pivots.append((pr, pc, v))
        self.pivots = pivots
        self.log = log
        self.core_rows = sorted(rows)
        core_cols = sorted({c for cs in rows.values() for c in cs})
        self.core_cols = core_cols
        cpos = {c: i for i, c in enumerate(core_cols)}
        self.core = [[0] * len(core_cols) for _ in self.core_rows]
        for i, r in enumerate(self.core_rows):
            for c, v in rows[r].items():
                self.core[i][cpos[c]] = v

    def apply_log(self, vec: dict[int, int]) -> dict[int, int]:
        """y = U x for the accumulated row transform U."""
        out = dict(vec)
        for dst, src, mult in self.log:
            s = out.get(src)
            if s:
                nv = out.get(dst, 0) - mult * s
                if nv:
                    out[dst] = nv
                elif dst in out:
                    del out[dst]
        return out

    def unapply_log(self, vec: dict[int, int]) -> dict[int, int]:
        """x = U^-1 y, replaying the log backwards with inverted ops."""
        out = dict(vec)
        for dst, src, mult in reversed(self.log):
            s = out.get(src)
            if s:
                nv = out.get(dst, 0) + mult * s
                if nv:
                    out[dst] = nv
                elif dst in out:
                    del out[dst]
        return out


# ---------------------------------------------------------------------------
# integer lattice helpers (small, dense)


def _column_reduce(columns: list[list[int]], nrows: int, track: bool = False):
    """Column echelon reduction by unimodular column operations.

    Returns (basis, kernel): basis lists the nonzero reduced columns (a
    lattice basis of the integer span of the input columns), kernel a
    basis of the integer kernel of the column matrix (when tracked).
    """
    cols = [list(c) for c in columns]
    N = len(cols)
    V = [[int(i == j) for j in range(N)] for i in range(N)] if track else None
    used: list[int] = []
    used_set: set[int] = set()
    for r in range(nrows):
        active = [j for j in range(N) if j not in used_set and cols[j][r]]
        while len(active) > 1:
            active.sort(key=lambda j: (abs(cols[j][r]), j))
            j0 = active[0]
            nxt = [j0]
            for j in active[1:]:
                q = cols[j][r] // cols[j0][r]
                if q:
                    cj, c0 = cols[j], cols[j0]
                    for i in range(nrows):
                        cj[i] -= q * c0[i]
                    if track:
                        for i in range(N):
                            V[i][j] -= q * V[i][j0]
                if cols[j][r]:
                    nxt.append(j)
            active = nxt
        if active:
            used.append(active[0])
            used_set.add(active[0])
    basis = [cols[j] for j in used]
    kernel = None
    if track:
        kernel = []
        for j in range(N):
            if j not in used_set:
                assert all(v == 0 for v in cols[j])
                kernel.append([V[i][j] for i in range(N)])
    return basis, kernel


def _integer_kernel_basis(rows: list[list[int]],
                          ncols: int) -> list[list[int]]:
    """Basis of {x in Z^ncols : rows * x = 0}."""
    columns = [[row[c] for row in rows] for c in range(ncols)]
    _, kernel = _column_reduce(columns, len(rows), track=True)
    return kernel


def _solve_integer(L: list[list[int]], rhs_cols: list[list[int]]):
    """Solve L * X = rhs columnwise over the rationals and require the
    solution to be integral.  L must be square and nonsingular."""
    n = len(L)
    A = [[Fraction(L[i][j]) for j in range(n)] +
         [Fraction(col[i]) for col in rhs_cols] for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            raise ValueError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    out = []
    for k in range(len(rhs_cols)):
        col = []
        for i in range(n):
            v = A[i][n + k]
            if v.denominator != 1:
                raise ValueError("solution is not integral")
            col.append(int(v))
        out.append(col)
    return out


# ---------------------------------------------------------------------------
# bar resolution homology


def _check_group(G) -> None:
    if G.mult[0][0] != 0:
        raise ValueError("element 0 must be the identity")


def bar_boundary(G, k: int) -> IntMatrix:
    """Boundary d_k: C_k -> C_{k-1} of the normalized bar complex of G.

    Basis tuples are indexed in mixed radix over the non-identity elements
    1..n-1, most significant entry first.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_group(G)
    n = G.n
    m = n - 1
    mult = G.mult
    nrows = m ** (k - 1)
    ncols = m ** k
    rows: dict[int, dict[int, int]] = {}

    def add(r, c, s):
        cs = rows.setdefault(r, {})
        v = cs.get(c, 0) + s
        if v:
            cs[c] = v
        else:
            del cs[c]

    tup = [1] * k
    for col in range(ncols):
        v = col
        for i in range(k - 1, -1, -1):
            tup[i] = v % m + 1
            v //= m
        # face 0 drops g_1 (trivial coefficient action)
        r = 0
        for g in tup[1:]:
            r = r * m + (g - 1)
        add(r, col, 1)
        s = 1
        for i in range(k - 1):
            s = -s
            prod = mult[tup[i]][tup[i + 1]]
            if prod != 0:  # normalized: identity entries kill the tuple
                r = 0
                for j in range(k):
                    if j == i:
                        r = r * m + (prod - 1)
                    elif j != i + 1:
                        r = r * m + (tup[j] - 1)
                add(r, col, s)
        s = -s
        r = 0
        for g in tup[:-1]:
            r = r * m + (g - 1)
        add(r, col, s)
    rows = {r: cs for r, cs in rows.items() if cs}
    return IntMatrix(nrows, ncols, rows)


@dataclass
class HomologyGroup:
    """H_k as an abelian group: free rank plus torsion invariant factors.

    invariant_factors lists the torsion orders > 1 in divisibility order.
    For finite-group homology in positive degree free_rank is always 0
    (computed, not assumed).  Representative cycles for the torsion
    generators (sparse vectors over the degree-k basis) are populated when
    requested, together with a class map for arbitrary cycles.
    """

    degree: int
    invariant_factors: list[int]
    free_rank: int = 0
    representatives: Optional[list[dict[int, int]]] = None
    _class_fn: Optional[Callable] = field(default=None, repr=False)
    description: str = ""

    def order(self) -> int:
        if self.free_rank:
            raise ValueError("infinite group")
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def class_of(self, cycle: dict[int, int]) -> tuple[int, ...]:
        """Coordinates of a cycle's class in the invariant-factor basis."""
        if self._class_fn is None:
            raise ValueError("representatives were not requested")
        return self._class_fn(cycle)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def pretty(self) -> str:
        parts = ["Z"] * self.free_rank
        parts += [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"


def _torsion_quotient_data(B: IntMatrix):
    """Torsion of Z^nrows / column-lattice(B), with generators and classes.

    Returns (factors, reps, class_fn, rank): factors are the invariant
    factors > 1, reps are vectors in Z^nrows generating the torsion
    classes, class_fn maps any vector with torsion class to its coordinate
    tuple (raising if the class has a free component), rank is rank(B).
    """
    elim = _Elimination(B, keep_log=True)
    core = [row[:] for row in elim.core]
    ncore = len(core)
    dvec, Ucore, Uinv, _ = _snf_dense(core, track_u=True)
    rank = len(elim.pivots) + len(dvec)
    unit_rows = {r for r, _, _ in elim.pivots}
    core_index = {r: i for i, r in enumerate(elim.core_rows)}
    tor_positions = [i for i, d in enumerate(dvec) if d > 1]
    factors = [dvec[i] for i in tor_positions]

    reps = []
    for i in tor_positions:
        # vector with core coordinates Uinv e_i, zero elsewhere, pulled
        # back through the elimination's row transform
        y = {elim.core_rows[j]: Uinv[j][i] for j in range(ncore)
             if Uinv[j][i]}
        reps.append(elim.unapply_log(y))

    def class_fn(vec: dict[int, int]) -> tuple[int, ...]:
        y = elim.apply_log(vec)
        coords = [0] * ncore
        for r, v in y.items():
            if r in core_index:
                coords[core_index[r]] = v
            elif v and r not in unit_rows:
                raise ValueError("class has a free component")
        w = [sum(Ucore[i][j] * coords[j] for j in range(ncore) if coords[j])
             for i in range(ncore)]
        for i in range(len(dvec), ncore):
            if w[i]:
                raise ValueError("class has a free component")
        return tuple(w[i] % dvec[i] for i in tor_positions)

    return factors, reps, class_fn, rank


_HOMOLOGY_CACHE: dict[tuple, "HomologyGroup"] = {}

DEFAULT_BASIS_BUDGET = 60_000


def clear_cache() -> None:
    _HOMOLOGY_CACHE.clear()


def homology(G, k: int, with_representatives: bool = False,
             basis_budget: int = DEFAULT_BASIS_BUDGET) -> HomologyGroup:
    """H_k(G; Z) for a finite group G in multiplication-table form, k >= 1.

    The budget guard rejects computations whose degree-(k+1) bar basis
    exceeds basis_budget tuples; the default admits groups of order <= 16
    through degree 3 (and small groups slightly beyond that).  Pass a
    larger basis_budget to override deliberately.  Results are cached per
    multiplication table.
    """
    if k < 1 or k > 3:
        raise BudgetExceeded("homology supported for degrees 1 <= k <= 3")
    work = (G.n - 1) ** (k + 1)
    if work > basis_budget:
        raise BudgetExceeded(
            f"degree-{k + 1} basis has {work} tuples, budget {basis_budget}"
            " (raise basis_budget to override)")
    key = (G.canonical_key(), k)
    cached = _HOMOLOGY_CACHE.get(key)
    if cached is not None and (cached.representatives is not None
                               or not with_representatives):
        return cached
    Bk1 = bar_boundary(G, k + 1)
    if with_representatives:
        factors, reps, class_fn, rank_k1 = _torsion_quotient_data(Bk1)
    else:
        sf = smith_normal_form(Bk1)
        factors, rank_k1 = sf.torsion(), sf.rank
        reps = class_fn = None
    rank_k = smith_normal_form(bar_boundary(G, k)).rank
    free = (G.n - 1) ** k - rank_k - rank_k1
    hg = HomologyGroup(k, factors, free, reps, class_fn,
                       description=f"H_{k} of group of order {G.n}")
    _HOMOLOGY_CACHE[key] = hg
    return hg


# ---------------------------------------------------------------------------
# induced maps


@dataclass
class InducedMap:
    """Induced map H_k(f): H_k(src) -> H_k(dst) for a group homomorphism.

    matrix[i] is the coordinate tuple of H_k(f)(rep_i) in the target's
    invariant-factor basis; entry j is meaningful modulo the target's j-th
    invariant factor.
    """

    degree: int
    source: HomologyGroup
    target: HomologyGroup
    matrix: list[tuple[int, ...]]

    def is_zero(self) -> bool:
        tf = self.target.invariant_factors
        return all(all(x % d == 0 for x, d in zip(row, tf))
                   for row in self.matrix)

    def is_surjective(self) -> bool:
        return not self.cokernel_invariants()

    def cokernel_invariants(self) -> list[int]:
        return _cokernel_invariants(self.matrix,
                                    self.target.invariant_factors)

    def kernel_invariants(self) -> list[int]:
        return _hom_kernel_invariants(self.matrix,
                                      self.source.invariant_factors,
                                      self.target.invariant_factors)

    def is_injective(self) -> bool:
        return not self.kernel_invariants()

    def is_isomorphism(self) -> bool:
        return (self.source.order() == self.target.order()
                and self.is_surjective())


def _cokernel_invariants(cols: Sequence[tuple[int, ...]],
                         target_factors: list[int]) -> list[int]:
    """Invariants > 1 of target / image: present the target by its
    invariant factors and quotient by the image columns."""
    t = len(target_factors)
    if t == 0:
        return []
    dense = []
    for i in range(t):
        row = [col[i] for col in cols]
        row += [target_factors[i] if j == i else 0 for j in range(t)]
        dense.append(row)
    inv, _, _, _ = _snf_dense(dense)
    return [d for d in inv if d > 1]


def _hom_kernel_invariants(cols: Sequence[tuple[int, ...]],
                           src_factors: list[int],
                           tgt_factors: list[int]) -> list[int]:
    """Kernel invariants > 1 of the map (+)Z/src -> (+)Z/tgt given by cols.

    The kernel is L / D_s where D_s = diag(src_factors) and
    L = {x : M x = 0 mod tgt} is a full-rank sublattice of Z^s containing
    D_s Z^s.  With G a column basis of L, the quotient is presented by the
    integral relation matrix G^-1 D_s.
    """
    s = len(src_factors)
    t = len(tgt_factors)
    if s == 0:
        return []
    gens: list[list[int]]
    if t:
        rows = []
        for i in range(t):
            row = [cols[j][i] for j in range(s)]
            row += [-tgt_factors[i] if kk == i else 0 for kk in range(t)]
            rows.append(row)
        ker = _integer_kernel_basis(rows, s + t)
        gens = [[vec[j] for j in range(s)] for vec in ker]
    else:
        gens = [[int(i == j) for i in range(s)] for j in range(s)]
    # diag(src) columns already lie in L because the matrix comes from an
    # actual homomorphism; adding them is a cheap safety net
    gens += [[src_factors[i] if j == i else 0 for j in range(s)]
             for i in range(s)]
    basis, _ = _column_reduce(gens, s)
    if len(basis) != s:
        raise ValueError("kernel lattice is not full rank")
    L = [[basis[j][i] for j in range(s)] for i in range(s)]
    D_cols = [[src_factors[i] if j == i else 0 for j in range(s)]
              for i in range(s)]
    R_cols = _solve_integer(L, D_cols)
    dense = [[R_cols[j][i] for j in range(s)] for i in range(s)]
    inv, _, _, _ = _snf_dense(dense)
    if len(inv) != s:
        raise ValueError("kernel of a map of finite groups must be finite")
    return [d for d in inv if d > 1]


def chain_map_bar(f_images: Sequence[int], src_G, dst_G, k: int,
                  vec: dict[int, int]) -> dict[int, int]:
    """Push a degree-k bar chain through the map induced by f: src -> dst.

    f_images[g] is the image element of g.  Tuples acquiring an identity
    entry map to zero (normalized bar complex).
    """
    ms = src_G.n - 1
    md = dst_G.n - 1
    out: dict[int, int] = {}
    for idx, coef in vec.items():
        tup = []
        v = idx
        for _ in range(k):
            tup.append(v % ms + 1)
            v //= ms
        tup.reverse()
        img = [f_images[g] for g in tup]
        if 0 in img:
            continue
        r = 0
        for g in img:
            r = r * md + (g - 1)
        nv = out.get(r, 0) + coef
        if nv:
            out[r] = nv
        elif r in out:
            del out[r]
    return out


def induced_map(f, k: int,
                basis_budget: int = DEFAULT_BASIS_BUDGET) -> InducedMap:
    """H_k(f) for a finite-group homomorphism f (needs .src, .dst, .images
    as a full element map)."""
    src = homology(f.src, k, with_representatives=True,
                   basis_budget=basis_budget)
    dst = homology(f.dst, k, with_representatives=True,
                   basis_budget=basis_budget)
    cols = []
    for rep in src.representatives or []:
        pushed = chain_map_bar(f.images, f.src, f.dst, k, rep)
        cols.append(dst.class_of(pushed))
    return InducedMap(k, src, dst, cols)


# ---------------------------------------------------------------------------
# chain complexes given as boundary matrices (used by triangulations)


def homology_of_chain_complex(boundaries: dict[int, IntMatrix],
                              dims: list[int]) -> list[HomologyGroup]:
    """Homology of a finite chain complex of free Z-modules.

    boundaries[k] is d_k: C_k -> C_{k-1} for 1 <= k <= top; dims[k] is the
    rank of C_k.  Checks d_k d_{k+1} = 0 exactly.  Returns one
    HomologyGroup per degree 0..top with free ranks and torsion.
    """
    top = len(dims) - 1
    for k in range(1, top + 1):
        B = boundaries[k]
        if B.ncols != dims[k] or B.nrows != dims[k - 1]:
            raise ValueError(f"boundary {k} has wrong shape "
                             f"({B.nrows}x{B.ncols} for dims {dims})")
    for k in range(1, top):
        if not boundaries[k].matmul(boundaries[k + 1]).is_zero():
            raise ValueError(f"d_{k} d_{k + 1} != 0")
    ranks = {0: 0, top + 1: 0}
    torsion: dict[int, list[int]] = {top + 1: []}
    for k in range(1, top + 1):
        sf = smith_normal_form(boundaries[k])
        ranks[k] = sf.rank
        torsion[k] = sf.torsion()
    out = []
    for k in range(top + 1):
        free = dims[k] - ranks[k] - ranks[k + 1]
        out.append(HomologyGroup(k, torsion[k + 1], free,
                                 description=f"H_{k} of chain complex"))
    return out


# ---------------------------------------------------------------------------
# known facts


_KNOWN_FACTS = None


def known_facts() -> list[dict]:
    """Imported homology facts (data file), each with a provenance string
    naming the source computation or reference."""
    global _KNOWN_FACTS
    if _KNOWN_FACTS is None:
        path = os.path.join(os.path.dirname(__file__), "data",
                            "known_facts.json")
        with open(path, "r", encoding="utf-8") as fh:
            _KNOWN_FACTS = json.load(fh)
    return _KNOWN_FACTS


def known_homology(group_name: str, degree: int) -> Optional[dict]:
    """Look up an imported fact; None when the table has no entry."""
    for fact in known_facts():
        if fact["group"] == group_name and fact["degree"] == degree:
            return fact
    return None
