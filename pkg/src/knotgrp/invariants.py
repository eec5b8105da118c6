"""Computable invariants of finitely presented groups.

Two invariant families are implemented, both exact:

* the abelianization, read off from the Smith normal form of the
  relator exponent-sum matrix (arbitrary-precision integers, so entry
  growth during elimination is harmless);
* homomorphism counts into small finite groups given by multiplication
  tables, by brute-force enumeration of generator assignments under an
  explicit evaluation budget.

Counts and abelian invariants agree for isomorphic groups, so unequal
profiles certify non-isomorphism; equal profiles are necessary evidence
only, and reports say so.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

from .errors import BudgetError, InputError
from .presentation import Presentation

DEFAULT_MAX_EVALS = 10**8


class IntMatrix:
    """A small immutable integer matrix (arbitrary precision entries)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[int]], cols: int | None = None):
        grid = tuple(tuple(int(x) for x in row) for row in entries)
        if grid:
            width = len(grid[0])
            if any(len(row) != width for row in grid):
                raise InputError("ragged matrix rows")
        else:
            if cols is None:
                raise InputError("empty matrix needs an explicit column count")
            width = cols
        if cols is not None and grid and cols != width:
            raise InputError("column count mismatch")
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "entries", grid)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(tuple(tuple(0 for _ in range(cols)) for _ in range(rows)), cols=cols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InputError("matrix shape mismatch")
        return IntMatrix(
            tuple(
                tuple(
                    sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                    for j in range(other.cols)
                )
                for i in range(self.rows)
            ),
            cols=other.cols,
        )

    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.entries]!r}, cols={self.cols})"


def determinant(a: IntMatrix) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    if a.rows != a.cols:
        raise InputError("determinant needs a square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = [list(row) for row in a.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _find_pivot(m: list[list[int]], start: int) -> tuple[int, int] | None:
    """Deterministic pivot: minimal |value| nonzero, ties row-major."""
    best = None
    for i in range(start, len(m)):
        for j in range(start, len(m[0]) if m else 0):
            v = m[i][j]
            if v != 0 and (best is None or abs(v) < abs(m[best[0]][best[1]])):
                best = (i, j)
    return best


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Diagonalize a over the integers: returns (D, U, V) with D = U·A·V.

    U and V are unimodular; D is diagonal with nonnegative entries in a
    divisibility chain d1 | d2 | ..., zeros trailing. Pivoting is
    deterministic (smallest |value|, ties by row-major position), so
    U and V are reproducible.
    """
    rows, cols = a.rows, a.cols
    m = [list(row) for row in a.entries]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i, k):
        if i != k:
            m[i], m[k] = m[k], m[i]
            u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        if j != k:
            for row in m:
                row[j], row[k] = row[k], row[j]
            for row in v:
                row[j], row[k] = row[k], row[j]

    def add_row(dst, src, factor):
        if factor:
            m[dst] = [x + factor * y for x, y in zip(m[dst], m[src])]
            u[dst] = [x + factor * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, factor):
        if factor:
            for row in m:
                row[dst] += factor * row[src]
            for row in v:
                row[dst] += factor * row[src]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        u[i] = [-x for x in u[i]]

    def reduce_from(t: int) -> None:
        while t < min(rows, cols):
            pivot = _find_pivot(m, t)
            if pivot is None:
                return
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            if m[t][t] < 0:
                negate_row(t)
            clean = True
            for i in range(t + 1, rows):
                if m[i][t]:
                    add_row(i, t, -(m[i][t] // m[t][t]))
                    if m[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                if m[t][j]:
                    add_col(j, t, -(m[t][j] // m[t][t]))
                    if m[t][j]:
                        clean = False
            if clean:
                t += 1

    reduce_from(0)

    # Enforce the divisibility chain: a violating pair is merged by a row
    # addition and the sweep is rerun from that pivot.
    while True:
        k = min(rows, cols)
        bad = None
        for i in range(k - 1):
            di, dj = m[i][i], m[i + 1][i + 1]
            if di != 0 and dj % di != 0:
                bad = i
                break
        if bad is None:
            break
        add_row(bad, bad + 1, 1)
        reduce_from(bad)

    return (
        IntMatrix(m, cols=cols),
        IntMatrix(u, cols=rows),
        IntMatrix(v, cols=cols),
    )


def relation_matrix(p: Presentation) -> IntMatrix:
    """One row per relator, one column per generator: exponent sums."""
    positions = {gen.id: k for k, gen in enumerate(p.alphabet)}
    grid = []
    for r in p.relators:
        row = [0] * len(p.alphabet)
        for gid, e in r.syllables:
            row[positions[gid]] += e
        grid.append(tuple(row))
    return IntMatrix(grid, cols=len(p.alphabet))


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion_factors: Tuple[int, ...]  # each >= 2, divisibility chain

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion_factors)
        return " x ".join(parts) if parts else "1"

    def group_order(self):
        """Order of the abelianization: an int, or INFINITE if free rank > 0."""
        if self.free_rank:
            return float("inf")
        order = 1
        for d in self.torsion_factors:
            order *= d
        return order


def abelianization(p: Presentation) -> AbelianInvariants:
    """Invariant factors of the abelianized group, via Smith normal form."""
    d, _, _ = smith_normal_form(relation_matrix(p))
    diag = d.diagonal()
    nonzero = [x for x in diag if x != 0]
    return AbelianInvariants(
        free_rank=len(p.alphabet) - len(nonzero),
        torsion_factors=tuple(x for x in nonzero if x > 1),
    )


# --- finite group tables ----------------------------------------------------


@dataclass(frozen=True)
class FiniteGroupTable:
    name: str
    order: int
    mul: Tuple[Tuple[int, ...], ...]
    inv: Tuple[int, ...]
    identity: int = 0

    @classmethod
    def from_mul(cls, name: str, mul: Sequence[Sequence[int]]) -> "FiniteGroupTable":
        order = len(mul)
        mul = tuple(tuple(row) for row in mul)
        if any(len(row) != order for row in mul):
            raise InputError(f"{name}: multiplication table is not square")
        for i in range(order):
            if mul[0][i] != i or mul[i][0] != i:
                raise InputError(f"{name}: element 0 is not an identity")
        inv = [None] * order
        for i in range(order):
            for j in range(order):
                if mul[i][j] == 0 and mul[j][i] == 0:
                    inv[i] = j
                    break
            if inv[i] is None:
                raise InputError(f"{name}: element {i} has no inverse")
        table = cls(name, order, mul, tuple(inv))
        table._check_associativity()
        return table

    def _check_associativity(self) -> None:
        # exhaustive up to order 24; a fixed pseudorandom sample beyond
        n = self.order
        if n <= 24:
            triples = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(0)
            triples = (
                (rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(20000)
            )
        for x, y, z in triples:
            if self.mul[self.mul[x][y]][z] != self.mul[x][self.mul[y][z]]:
                raise InputError(f"{self.name}: multiplication is not associative")


def _compose(p: Tuple[int, ...], q: Tuple[int, ...]) -> Tuple[int, ...]:
    """(p ∘ q)(i) = p(q(i)): apply q first."""
    return tuple(p[q[i]] for i in range(len(p)))


def _table_from_elements(name: str, elements: Sequence[Tuple[int, ...]]) -> FiniteGroupTable:
    index = {e: k for k, e in enumerate(elements)}
    mul = [[index[_compose(x, y)] for y in elements] for x in elements]
    return FiniteGroupTable.from_mul(name, mul)


def _is_even(perm: Tuple[int, ...]) -> bool:
    inversions = sum(
        1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]
    )
    return inversions % 2 == 0


def _cyclic_table(k: int) -> FiniteGroupTable:
    mul = [[(i + j) % k for j in range(k)] for i in range(k)]
    return FiniteGroupTable.from_mul(f"Z{k}", mul)


def _symmetric_table(k: int) -> FiniteGroupTable:
    elements = list(itertools.permutations(range(k)))  # lex order, identity first
    return _table_from_elements(f"S{k}", elements)


def _alternating_table(k: int) -> FiniteGroupTable:
    elements = [p for p in itertools.permutations(range(k)) if _is_even(p)]
    return _table_from_elements(f"A{k}", elements)


def _dihedral4_table() -> FiniteGroupTable:
    # symmetries of a square on vertices 0..3: rotation r and the
    # reflection s fixing vertex 0; elements e, r, r², r³, s, rs, r²s, r³s
    r = (1, 2, 3, 0)
    s = (0, 3, 2, 1)
    e = (0, 1, 2, 3)
    rotations = [e]
    for _ in range(3):
        rotations.append(_compose(r, rotations[-1]))
    elements = rotations + [_compose(rot, s) for rot in rotations]
    return _table_from_elements("D4", elements)


def builtin_table(name: str) -> FiniteGroupTable:
    """Multiplication table of a named small group.

    Known names: Z2..Z12, S3, S4, S5, A4, A5, D4.
    """
    m = re.fullmatch(r"Z(\d+)", name)
    if m:
        k = int(m.group(1))
        if 2 <= k <= 12:
            return _cyclic_table(k)
    if name in ("S3", "S4", "S5"):
        return _symmetric_table(int(name[1]))
    if name in ("A4", "A5"):
        return _alternating_table(int(name[1]))
    if name == "D4":
        return _dihedral4_table()
    raise InputError(f"unknown group table {name!r}")


# --- homomorphism counting --------------------------------------------------


def _vector_power(mul_flat: np.ndarray, inv: np.ndarray, order: int, x: np.ndarray, e: int, identity: int) -> np.ndarray:
    if e < 0:
        x = inv[x]
        e = -e
    result = np.full(x.shape, identity, dtype=np.int64)
    base = x
    while e:
        if e & 1:
            result = mul_flat[result * order + base]
        e >>= 1
        if e:
            base = mul_flat[base * order + base]
    return result


def hom_count(p: Presentation, table: FiniteGroupTable, max_evals: int = DEFAULT_MAX_EVALS) -> int:
    """Number of homomorphisms ⟨X|R⟩ → table group (trivial one included).

    Enumerates all |T|^|X| generator assignments and keeps those sending
    every relator to the identity. Raises BudgetError before starting if
    the assignment count exceeds max_evals.
    """
    k = len(p.alphabet)
    order = table.order
    total = order**k
    if total > max_evals:
        raise BudgetError(
            f"hom_count would evaluate {total} assignments "
            f"({table.name}^{k}), exceeding the budget of {max_evals}"
        )
    mul_flat = np.asarray(table.mul, dtype=np.int64).reshape(-1)
    inv = np.asarray(table.inv, dtype=np.int64)
    positions = {gen.id: i for i, gen in enumerate(p.alphabet)}
    programs = [[(positions[g], e) for g, e in r.syllables] for r in p.relators]

    count = 0
    chunk = 1 << 16
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        assigns = [(idx // order ** (k - 1 - i)) % order for i in range(k)]
        ok = np.ones(idx.shape, dtype=bool)
        for prog in programs:
            acc = np.full(idx.shape, table.identity, dtype=np.int64)
            for pos, e in prog:
                val = _vector_power(mul_flat, inv, order, assigns[pos], e, table.identity)
                acc = mul_flat[acc * order + val]
            ok &= acc == table.identity
            if not ok.any():
                break
        count += int(ok.sum())
    return count


# --- profiles ---------------------------------------------------------------

PROFILE_NOTE = "equal profiles are necessary for isomorphism, not sufficient"


@dataclass(frozen=True)
class InvariantProfile:
    abelian: AbelianInvariants
    hom_counts: Tuple[Tuple[str, int], ...]  # (target name, count), in target order


def invariant_profile(
    p: Presentation, targets: Sequence[str], max_evals: int = DEFAULT_MAX_EVALS
) -> InvariantProfile:
    """Abelian invariants plus hom counts into the named target groups."""
    counts = tuple((name, hom_count(p, builtin_table(name), max_evals)) for name in targets)
    return InvariantProfile(abelianization(p), counts)


def profile_pairs(profile: InvariantProfile) -> list[tuple[str, str]]:
    """Stable key/value lines for reports and golden files."""
    pairs = [("note", PROFILE_NOTE), ("abelian", str(profile.abelian))]
    pairs.extend((f"hom {name}", str(count)) for name, count in profile.hom_counts)
    return pairs
