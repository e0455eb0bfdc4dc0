"""
Exact integer linear algebra.

Smith normal form with unimodular transforms, homology of chain complexes of
finitely generated free abelian groups, and Gaussian elimination of a unit
entry in a differential. Matrices are dense numpy arrays of dtype=object so
every entry stays an arbitrary-precision Python int.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)


class IntMatrix:
    """Dense row-major integer matrix"""

    __slots__ = ("_a",)

    def __init__(self, entries, rows: Optional[int] = None, cols: Optional[int] = None):
        if isinstance(entries, IntMatrix):
            self._a = entries._a.copy()
            return
        data = [[int(x) for x in row] for row in entries]
        n_rows = len(data) if rows is None else rows
        n_cols = (len(data[0]) if data else 0) if cols is None else cols
        array = np.zeros((n_rows, n_cols), dtype=object)
        if data:
            if len(data) != n_rows or any(len(row) != n_cols for row in data):
                raise ValueError(f"Matrix entries are not a {n_rows}x{n_cols} array")
            for i, row in enumerate(data):
                for j, x in enumerate(row):
                    array[i, j] = x
        elif n_rows and n_cols:
            raise ValueError(f"No entries given for a {n_rows}x{n_cols} matrix")
        self._a = array

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        m = cls.__new__(cls)
        m._a = np.zeros((rows, cols), dtype=object)
        m._a[...] = 0
        return m

    @classmethod
    def identity(cls, k: int) -> "IntMatrix":
        m = cls.zeros(k, k)
        for i in range(k):
            m._a[i, i] = 1
        return m

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: Optional[int] = None,
                 cols: Optional[int] = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        m = cls.zeros(rows, cols)
        for i, v in enumerate(values):
            m._a[i, i] = int(v)
        return m

    @classmethod
    def from_flat(cls, rows: int, cols: int, entries: Sequence[int]) -> "IntMatrix":
        if len(entries) != rows * cols:
            raise ValueError(f"Expected {rows * cols} entries, got {len(entries)}")
        m = cls.zeros(rows, cols)
        for idx, v in enumerate(entries):
            m._a[idx // cols, idx % cols] = int(v)
        return m

    @classmethod
    def _wrap(cls, array: np.ndarray) -> "IntMatrix":
        m = cls.__new__(cls)
        m._a = array
        return m

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self._a.shape

    @property
    def entries(self) -> List[int]:
        return [int(x) for x in self._a.reshape(-1)]

    def array(self) -> np.ndarray:
        return self._a.copy()

    def to_list(self) -> List[List[int]]:
        return [[int(x) for x in row] for row in self._a]

    def __getitem__(self, index: Tuple[int, int]) -> int:
        return int(self._a[index])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.shape} by {other.shape}")
        if self.cols == 0 or self.rows == 0 or other.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        return IntMatrix._wrap(self._a.dot(other._a))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError(f"Cannot add {self.shape} and {other.shape}")
        return IntMatrix._wrap(self._a + other._a)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError(f"Cannot subtract {self.shape} and {other.shape}")
        return IntMatrix._wrap(self._a - other._a)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix._wrap(-self._a)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix._wrap(self._a * int(c))

    def transpose(self) -> "IntMatrix":
        return IntMatrix._wrap(self._a.T.copy())

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "IntMatrix":
        out = IntMatrix.zeros(len(row_idx), len(col_idx))
        if len(row_idx) and len(col_idx):
            out._a[...] = self._a[np.ix_(list(row_idx), list(col_idx))]
        return out

    def is_zero(self) -> bool:
        return all(x == 0 for x in self._a.reshape(-1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.shape, tuple(self.entries)))

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_list()}, rows={self.rows}, cols={self.cols})"

    def determinant(self) -> int:
        if self.rows != self.cols:
            raise ValueError(f"Determinant of a non-square {self.shape} matrix")
        if self.rows == 0:
            return 1
        dm = DomainMatrix([[ZZ(x) for x in row] for row in self.to_list()], self.shape, ZZ)
        return int(dm.det())

    def to_schema(self):
        from app.schemas.homology import IntMatrixSchema

        return IntMatrixSchema(rows=self.rows, cols=self.cols, entries=self.to_list())


@dataclass(frozen=True)
class SmithDecomposition:
    """U . M . V = S with U, V unimodular and S diagonal in divisor-chain form"""
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    rows: int
    cols: int

    def diagonal(self) -> List[int]:
        return [self.S[i, i] for i in range(min(self.rows, self.cols))]

    def invariant_factors(self) -> List[int]:
        return [d for d in self.diagonal() if d != 0]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors())

    def verify(self, M: IntMatrix) -> None:
        """Re-check the full contract; raises ArithmeticError on violation"""
        if self.U @ M @ self.V != self.S:
            raise ArithmeticError("Smith decomposition does not satisfy U.M.V = S")
        for i in range(self.rows):
            for j in range(self.cols):
                if i != j and self.S[i, j] != 0:
                    raise ArithmeticError(f"S has off-diagonal entry at ({i}, {j})")
        diag = self.diagonal()
        if any(d < 0 for d in diag):
            raise ArithmeticError(f"S has a negative diagonal entry: {diag}")
        for a, b in zip(diag, diag[1:]):
            if (a == 0 and b != 0) or (a != 0 and b % a != 0):
                raise ArithmeticError(f"Divisor chain broken: {diag}")
        for name, T in (("U", self.U), ("V", self.V)):
            if T.determinant() not in (1, -1):
                raise ArithmeticError(f"{name} is not unimodular")


def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
    """
    Smith normal form by unimodular row and column operations.

    At each step the smallest nonzero entry of the trailing block becomes the
    pivot; the pivot row and column are cleared by Euclidean reduction, and a
    row that the pivot fails to divide is folded into the pivot row so that the
    finished pivot divides the whole trailing block.
    """
    rows, cols = M.shape
    S = M.array()
    U = IntMatrix.identity(rows).array()
    V = IntMatrix.identity(cols).array()

    def swap_rows(i, j):
        if i != j:
            S[[i, j], :] = S[[j, i], :]
            U[[i, j], :] = U[[j, i], :]

    def swap_cols(i, j):
        if i != j:
            S[:, [i, j]] = S[:, [j, i]]
            V[:, [i, j]] = V[:, [j, i]]

    t = 0
    while t < min(rows, cols):
        block = S[t:, t:]
        nonzero = [(abs(block[i, j]), i, j)
                   for i in range(block.shape[0]) for j in range(block.shape[1])
                   if block[i, j] != 0]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        swap_rows(t, t + pi)
        swap_cols(t, t + pj)

        while True:
            clean = True
            for i in range(t + 1, rows):
                if S[i, t] != 0:
                    quo = S[i, t] // S[t, t]
                    S[i, :] = S[i, :] - quo * S[t, :]
                    U[i, :] = U[i, :] - quo * U[t, :]
                    if S[i, t] != 0:
                        clean = False
            for j in range(t + 1, cols):
                if S[t, j] != 0:
                    quo = S[t, j] // S[t, t]
                    S[:, j] = S[:, j] - quo * S[:, t]
                    V[:, j] = V[:, j] - quo * V[:, t]
                    if S[t, j] != 0:
                        clean = False
            if not clean:
                # move the smallest remainder on the edge into the pivot slot
                best = (abs(S[t, t]), t, t)
                for i in range(t + 1, rows):
                    if S[i, t] != 0 and abs(S[i, t]) < best[0]:
                        best = (abs(S[i, t]), i, t)
                for j in range(t + 1, cols):
                    if S[t, j] != 0 and abs(S[t, j]) < best[0]:
                        best = (abs(S[t, j]), t, j)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue

            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if S[i, j] % S[t, t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            S[t, :] = S[t, :] + S[offender, :]
            U[t, :] = U[t, :] + U[offender, :]

        if S[t, t] < 0:
            S[t, :] = -S[t, :]
            U[t, :] = -U[t, :]
        t += 1

    logger.debug(f"Smith normal form of {rows}x{cols} matrix: rank {t}")
    return SmithDecomposition(
        U=IntMatrix._wrap(U), S=IntMatrix._wrap(S), V=IntMatrix._wrap(V),
        rows=rows, cols=cols,
    )


def invariant_factors(M: IntMatrix) -> List[int]:
    return smith_normal_form(M).invariant_factors()


def matrix_rank(M: IntMatrix) -> int:
    return smith_normal_form(M).rank


def integer_inverse(M: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular matrix, read off its Smith decomposition"""
    if M.rows != M.cols:
        raise ValueError(f"Cannot invert a non-square {M.shape} matrix")
    snf = smith_normal_form(M)
    if snf.diagonal() != [1] * M.rows:
        raise ValueError(f"Matrix is not invertible over Z: invariant factors {snf.diagonal()}")
    # U M V = I  =>  M^-1 = V U
    return snf.V @ snf.U


@dataclass(frozen=True)
class AbGroup:
    """Finitely generated abelian group Z^free + Z/d1 + ... with d1 | d2 | ..."""
    free_rank: int = 0
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError(f"Negative free rank: {self.free_rank}")
        torsion = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", torsion)
        if any(d < 2 for d in torsion):
            raise ValueError(f"Torsion coefficients must be >= 2: {torsion}")
        for a, b in zip(torsion, torsion[1:]):
            if b % a != 0:
                raise ValueError(f"Torsion is not a divisor chain: {torsion}")

    @classmethod
    def trivial(cls) -> "AbGroup":
        return cls()

    @classmethod
    def free(cls, rank: int) -> "AbGroup":
        return cls(free_rank=rank)

    @classmethod
    def from_cyclic_orders(cls, free_rank: int, orders: Iterable[int]) -> "AbGroup":
        """Canonical form of Z^free + Z/o1 + Z/o2 + ... (orders 1 are dropped)"""
        orders = [abs(int(o)) for o in orders if abs(int(o)) != 1]
        if any(o == 0 for o in orders):
            raise ValueError("Use free_rank for infinite cyclic summands")
        if not orders:
            return cls(free_rank=free_rank)
        factors = invariant_factors(IntMatrix.diagonal(orders))
        return cls(free_rank=free_rank, torsion=tuple(d for d in factors if d > 1))

    def direct_sum(self, other: "AbGroup") -> "AbGroup":
        return AbGroup.from_cyclic_orders(
            self.free_rank + other.free_rank, self.torsion + other.torsion
        )

    def __add__(self, other: "AbGroup") -> "AbGroup":
        return self.direct_sum(other)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_free(self) -> bool:
        return not self.torsion

    def __str__(self) -> str:
        from app.utils.formatting import format_group

        return format_group(self)

    def to_schema(self):
        from app.schemas.homology import AbGroupSchema

        return AbGroupSchema(free=self.free_rank, torsion=list(self.torsion))


def direct_sum(groups: Iterable[AbGroup]) -> AbGroup:
    free, orders = 0, []
    for g in groups:
        free += g.free_rank
        orders.extend(g.torsion)
    return AbGroup.from_cyclic_orders(free, orders)


def homology_at(d_in: IntMatrix, d_out: IntMatrix) -> AbGroup:
    """
    ker(d_out) / im(d_in) at the middle position of d_in followed by d_out.

    Raises:
        ValueError: if the middle ranks disagree or d_out . d_in != 0
    """
    if d_out.cols != d_in.rows:
        raise ValueError(
            f"Middle rank mismatch: d_in is {d_in.shape}, d_out is {d_out.shape}"
        )
    if not (d_out @ d_in).is_zero():
        raise ValueError("Consecutive differentials do not compose to zero")

    middle = d_in.rows
    out_rank = matrix_rank(d_out)
    in_factors = invariant_factors(d_in)
    free_rank = middle - out_rank - len(in_factors)
    return AbGroup.from_cyclic_orders(free_rank, [d for d in in_factors if d > 1])


@dataclass
class FreeChainComplex:
    """
    Cochain complex of free abelian groups on positions lo .. lo + len(ranks) - 1.

    differentials[h] is the matrix of d_h from position h to h + 1 (shape
    ranks[h + 1] x ranks[h]); absent entries are zero maps.
    """
    lo: int
    ranks: List[int]
    differentials: Dict[int, IntMatrix] = field(default_factory=dict)

    def __post_init__(self):
        for h, d in list(self.differentials.items()):
            if not (self.lo <= h < self.hi):
                raise ValueError(f"Differential at {h} outside positions {self.lo}..{self.hi}")
            expected = (self.rank(h + 1), self.rank(h))
            if d.shape != expected:
                raise ValueError(f"Differential at {h} has shape {d.shape}, expected {expected}")
        if not self.dd_is_zero():
            raise ValueError("d o d != 0 in chain complex")

    @property
    def hi(self) -> int:
        return self.lo + len(self.ranks) - 1

    @property
    def positions(self) -> range:
        return range(self.lo, self.hi + 1)

    def rank(self, h: int) -> int:
        if self.lo <= h <= self.hi:
            return self.ranks[h - self.lo]
        return 0

    def differential(self, h: int) -> IntMatrix:
        if h in self.differentials:
            return self.differentials[h]
        return IntMatrix.zeros(self.rank(h + 1), self.rank(h))

    def dd_is_zero(self) -> bool:
        for h in range(self.lo, self.hi - 1):
            if not (self.differential(h + 1) @ self.differential(h)).is_zero():
                return False
        return True


def complex_homology(C: FreeChainComplex) -> Dict[int, AbGroup]:
    return {
        h: homology_at(C.differential(h - 1), C.differential(h))
        for h in C.positions
    }


def gaussian_eliminate(C: FreeChainComplex, position: int, row: int, col: int) -> FreeChainComplex:
    """
    Cancel the unit entry d[row, col] of the differential out of `position`.

    Basis element `col` at `position` and basis element `row` at position + 1
    are removed; the differential between them becomes d - c . e^-1 . r on the
    complements, the incoming and outgoing differentials are restricted.
    """
    d = C.differential(position)
    if not (0 <= row < d.rows and 0 <= col < d.cols):
        raise ValueError(f"Entry ({row}, {col}) outside differential of shape {d.shape}")
    pivot = d[row, col]
    if pivot not in (1, -1):
        raise ValueError(f"Gaussian elimination needs a unit entry, got {pivot}")

    keep_src = [i for i in range(d.cols) if i != col]
    keep_tgt = [i for i in range(d.rows) if i != row]

    column = d.submatrix(keep_tgt, [col])
    row_vec = d.submatrix([row], keep_src)
    # pivot is its own inverse
    new_d = d.submatrix(keep_tgt, keep_src) - (column @ row_vec).scale(pivot)

    ranks = list(C.ranks)
    ranks[position - C.lo] -= 1
    ranks[position + 1 - C.lo] -= 1

    differentials: Dict[int, IntMatrix] = {}
    for h in range(C.lo, C.hi):
        if h == position:
            differentials[h] = new_d
        elif h == position - 1:
            prev = C.differential(h)
            differentials[h] = prev.submatrix(keep_src, range(prev.cols))
        elif h == position + 1:
            nxt = C.differential(h)
            differentials[h] = nxt.submatrix(range(nxt.rows), keep_tgt)
        elif h in C.differentials:
            differentials[h] = C.differentials[h]

    logger.debug(f"Eliminated unit at position {position} ({row}, {col})")
    return FreeChainComplex(lo=C.lo, ranks=ranks, differentials=differentials)
