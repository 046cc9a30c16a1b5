"""Matrices over F_p, F_p[z]/⟨f⟩, Q(ζ) and Q(ζ)[z]/⟨h⟩.

F_p-valued data lives in numpy int64 arrays: shape (rows, cols) for F_p and
(rows, cols, deg f) for the quotient ring, coefficients lowest degree first.
Cyclotomic data is nested tuples of CycloNumber or CycloPoly.

Coefficient expansion orders rows i-major: row i·rows + j of Coeff(A) holds
the z^i coefficients of row j of A, so Coeff(A ⊗ B) = Coeff(A) ⊗ B whenever
B is field-valued.
"""

from collections.abc import Sequence
from enum import StrEnum
from itertools import product

import numpy as np
from numpy.typing import NDArray

from kakeya_zn.core.errors import InternalInvariantError, InvalidInputError, ModulusMismatchError
from kakeya_zn.domain.protocols import FieldElement

from .cyclotomic import CycloNumber, CycloPoly, psi_number, psi_poly
from .fp_poly import FpQuotient, reduce_mod

IntArray = NDArray[np.int64]


class RingKind(StrEnum):
    FP = "F_p"
    FP_QUOT = "F_p[z]/f"
    CYCLO = "Q(zeta)"
    CYCLO_QUOT = "Q(zeta)[z]/h"


def _mismatch(message: str, operation: str) -> ModulusMismatchError:
    return ModulusMismatchError(message, details={"source": "exact-linalg", "operation": operation})


class RingMatrix:
    """An immutable dense matrix tagged with the ring its entries live in."""

    __slots__ = ("_data", "k", "kind", "modulus", "p")

    def __init__(
        self,
        kind: RingKind,
        p: int,
        data: IntArray | tuple[tuple[CycloNumber, ...], ...] | tuple[tuple[CycloPoly, ...], ...],
        *,
        k: int | None = None,
        modulus: tuple[int, ...] | CycloPoly | None = None,
    ) -> None:
        self.kind = kind
        self.p = p
        self.k = k
        self.modulus = modulus
        if isinstance(data, np.ndarray):
            data = np.mod(data, p).astype(np.int64)
            data.setflags(write=False)
        self._data = data

    # Constructors

    @classmethod
    def fp(cls, p: int, rows: Sequence[Sequence[int]] | IntArray) -> "RingMatrix":
        array = np.asarray(rows, dtype=np.int64)
        if array.ndim != 2:
            raise InvalidInputError(
                "an F_p matrix needs a 2-D array",
                details={"source": "exact-linalg", "operation": "fp", "ndim": int(array.ndim)},
            )
        return cls(RingKind.FP, p, array)

    @classmethod
    def fp_quot(cls, p: int, modulus: Sequence[int], coeffs: IntArray) -> "RingMatrix":
        """Entries given as a (rows, cols, any-length) coefficient stack, reduced here."""
        modulus_t = tuple(int(c) % p for c in modulus)
        array = np.asarray(coeffs, dtype=np.int64)
        if array.ndim != 3:
            raise InvalidInputError(
                "a quotient-ring matrix needs a (rows, cols, degree) array",
                details={"source": "exact-linalg", "operation": "fp_quot", "ndim": int(array.ndim)},
            )
        return cls(RingKind.FP_QUOT, p, reduce_mod(array, modulus_t, p), modulus=modulus_t)

    @classmethod
    def fp_quot_monomials(cls, p: int, modulus: Sequence[int], exponents: Sequence[Sequence[int]]) -> "RingMatrix":
        """Entry (i, j) = z^{exponents[i][j]}; exponents must lie below deg(modulus)."""
        exps = np.asarray(exponents, dtype=np.int64)
        d = len(modulus) - 1
        if exps.size and (exps.min() < 0 or exps.max() >= d):
            raise InvalidInputError(
                "monomial exponents must lie in [0, deg f)",
                details={"source": "exact-linalg", "operation": "fp_quot_monomials", "degree": d},
            )
        data = np.zeros((*exps.shape, d), dtype=np.int64)
        rows, cols = np.indices(exps.shape)
        data[rows, cols, exps] = 1
        return cls(RingKind.FP_QUOT, p, data, modulus=tuple(int(c) % p for c in modulus))

    @classmethod
    def fp_quot_entries(cls, rows: Sequence[Sequence[FpQuotient]]) -> "RingMatrix":
        first = rows[0][0]
        if any((e.p, e.modulus) != (first.p, first.modulus) for row in rows for e in row):
            raise _mismatch("entries from different quotient rings", "fp_quot_entries")
        data = np.asarray([[e.coeffs for e in row] for row in rows], dtype=np.int64)
        return cls(RingKind.FP_QUOT, first.p, data, modulus=first.modulus)

    @classmethod
    def cyclo(cls, p: int, k: int, rows: Sequence[Sequence[CycloNumber | int]]) -> "RingMatrix":
        data = tuple(
            tuple(e if isinstance(e, CycloNumber) else CycloNumber.from_scalar(p, k, e) for e in row) for row in rows
        )
        _check_rectangular(data, "cyclo")
        return cls(RingKind.CYCLO, p, data, k=k)

    @classmethod
    def cyclo_quot(cls, h: CycloPoly, rows: Sequence[Sequence[CycloPoly | CycloNumber | int]]) -> "RingMatrix":
        p, k = h.p, h.k
        data = tuple(
            tuple(
                CycloPoly(p, k, e.coeffs, h) if isinstance(e, CycloPoly) else CycloPoly(p, k, [e], h) for e in row
            )
            for row in rows
        )
        _check_rectangular(data, "cyclo_quot")
        return cls(RingKind.CYCLO_QUOT, p, data, k=k, modulus=h)

    # Shape and access

    @property
    def rows(self) -> int:
        return len(self._data)

    @property
    def cols(self) -> int:
        return len(self._data[0]) if len(self._data) else 0

    @property
    def degree(self) -> int:
        """deg f for quotient kinds, 1 otherwise."""
        if self.kind is RingKind.FP_QUOT:
            return len(self.modulus) - 1  # type: ignore[arg-type]
        if self.kind is RingKind.CYCLO_QUOT:
            return self.modulus.degree  # type: ignore[union-attr]
        return 1

    @property
    def array(self) -> IntArray:
        if not isinstance(self._data, np.ndarray):
            raise InvalidInputError(
                "only F_p-valued matrices expose a numpy array",
                details={"source": "exact-linalg", "operation": "array", "kind": self.kind.value},
            )
        return self._data

    @property
    def entries(self) -> tuple[tuple, ...]:
        if isinstance(self._data, np.ndarray):
            raise InvalidInputError(
                "F_p-valued matrices expose .array, not .entries",
                details={"source": "exact-linalg", "operation": "entries", "kind": self.kind.value},
            )
        return self._data

    def entry(self, i: int, j: int) -> int | FpQuotient | CycloNumber | CycloPoly:
        if self.kind is RingKind.FP:
            return int(self.array[i, j])
        if self.kind is RingKind.FP_QUOT:
            return FpQuotient(self.p, self.modulus, tuple(int(c) for c in self.array[i, j]))  # type: ignore[arg-type]
        return self.entries[i][j]

    def same_ring(self, other: "RingMatrix") -> bool:
        if (self.kind, self.p, self.k) != (other.kind, other.p, other.k):
            return False
        if self.kind is RingKind.CYCLO_QUOT:
            return self.modulus.coeffs == other.modulus.coeffs  # type: ignore[union-attr]
        return self.modulus == other.modulus

    def take_rows(self, indices: Sequence[int]) -> "RingMatrix":
        if isinstance(self._data, np.ndarray):
            return self._rebuild(self._data[list(indices)])
        return self._rebuild(tuple(self._data[i] for i in indices))

    def _rebuild(self, data: IntArray | tuple) -> "RingMatrix":
        return RingMatrix(self.kind, self.p, data, k=self.k, modulus=self.modulus)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingMatrix):
            return NotImplemented
        if not self.same_ring(other):
            return False
        if isinstance(self._data, np.ndarray):
            return self._data.shape == other._data.shape and bool(np.array_equal(self._data, other._data))
        return self._data == other._data

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"RingMatrix({self.kind.value}, p={self.p}, {self.rows}x{self.cols})"

    def lift_constant(self, template: "RingMatrix") -> "RingMatrix":
        """View a field-valued matrix as constants of ``template``'s quotient ring."""
        if self.kind is RingKind.FP and template.kind is RingKind.FP_QUOT:
            data = np.zeros((*self.array.shape, template.degree), dtype=np.int64)
            data[..., 0] = self.array
            return RingMatrix(RingKind.FP_QUOT, self.p, data, modulus=template.modulus)
        if self.kind is RingKind.CYCLO and template.kind is RingKind.CYCLO_QUOT:
            return RingMatrix.cyclo_quot(template.modulus, self.entries)  # type: ignore[arg-type]
        if self.same_ring(template):
            return self
        raise _mismatch(f"cannot view {self.kind.value} entries in {template.kind.value}", "lift_constant")


def _check_rectangular(data: tuple[tuple, ...], operation: str) -> None:
    if not data or not data[0] or len({len(row) for row in data}) != 1:
        raise InvalidInputError(
            "matrices must be non-empty and rectangular",
            details={"source": "exact-linalg", "operation": operation},
        )


class MatrixFamily:
    """Matrices sharing a column count and a ring, read as one vertical concatenation."""

    __slots__ = ("members",)

    def __init__(self, members: Sequence[RingMatrix]) -> None:
        if not members:
            raise InvalidInputError(
                "a matrix family needs at least one member",
                details={"source": "exact-linalg", "operation": "matrix_family"},
            )
        first = members[0]
        for member in members[1:]:
            if member.cols != first.cols:
                raise InvalidInputError(
                    "family members must share a column count",
                    details={"source": "exact-linalg", "operation": "matrix_family", "cols": [first.cols, member.cols]},
                )
            if not member.same_ring(first):
                raise _mismatch("family members must share a ring", "matrix_family")
        self.members = tuple(members)

    def stacked(self) -> RingMatrix:
        return vstack(self.members)


def vstack(matrices: Sequence[RingMatrix]) -> RingMatrix:
    first = matrices[0]
    if any(not m.same_ring(first) or m.cols != first.cols for m in matrices):
        raise _mismatch("only same-ring matrices with equal column counts stack", "vstack")
    if first.kind in (RingKind.FP, RingKind.FP_QUOT):
        return first._rebuild(np.concatenate([m.array for m in matrices], axis=0))
    return first._rebuild(tuple(row for m in matrices for row in m.entries))


# Coefficient expansion


def coeff_matrix(A: RingMatrix) -> RingMatrix:
    """Expand each entry of a quotient-ring matrix into its coefficient rows over the base field."""
    if A.kind is RingKind.FP_QUOT:
        # (r, c, d) -> (d, r, c) -> (d·r, c)
        return RingMatrix.fp(A.p, np.transpose(A.array, (2, 0, 1)).reshape(A.degree * A.rows, A.cols))
    if A.kind is RingKind.CYCLO_QUOT:
        d = A.degree
        padded = [[entry.padded(d) for entry in row] for row in A.entries]
        rows = [[padded[j][c][i] for c in range(A.cols)] for i in range(d) for j in range(A.rows)]
        return RingMatrix.cyclo(A.p, A.k, rows)  # type: ignore[arg-type]
    raise InvalidInputError(
        "coeff_matrix expects a polynomial quotient ring",
        details={"source": "exact-linalg", "operation": "coeff_matrix", "kind": A.kind.value},
    )


# Rank


def rank_mod_p(array: IntArray, p: int) -> int:
    """Rank over F_p by Gaussian elimination, first nonzero pivot in column order."""
    A = np.mod(array, p).astype(np.int64, copy=True)
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nonzero = np.flatnonzero(A[r:, c])
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            A[[r, pivot]] = A[[pivot, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        below = A[r + 1 :, c].copy()
        if below.any():
            A[r + 1 :] = (A[r + 1 :] - np.outer(below, A[r])) % p
        r += 1
    return r


def _field_rank(rows: list[list[FieldElement]]) -> int:
    rank = 0
    if not rows:
        return 0
    cols = len(rows[0])
    for c in range(cols):
        pivot = next((i for i in range(rank, len(rows)) if not rows[i][c].is_zero()), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inverse = rows[rank][c].inverse()
        pivot_row = [x * inverse for x in rows[rank]]
        rows[rank] = pivot_row
        for i in range(rank + 1, len(rows)):
            factor = rows[i][c]
            if not factor.is_zero():
                rows[i] = [x - factor * y for x, y in zip(rows[i], pivot_row, strict=True)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def rank(A: RingMatrix) -> int:
    """Exact column rank over F_p or Q(ζ)."""
    if A.kind is RingKind.FP:
        return rank_mod_p(A.array, A.p)
    if A.kind is RingKind.CYCLO:
        return _field_rank([list(row) for row in A.entries])
    raise InvalidInputError(
        "rank needs a field-valued matrix; expand quotient rings with coeff_matrix first",
        details={"source": "exact-linalg", "operation": "rank", "kind": A.kind.value},
    )


def rank_fp_quot(A: RingMatrix) -> int:
    """F_p-rank of a matrix over F_p[z]/⟨f⟩ (the rank of its coefficient matrix)."""
    if A.kind is RingKind.FP:
        return rank(A)
    if A.kind is not RingKind.FP_QUOT:
        raise InvalidInputError(
            "rank_fp_quot expects an F_p-valued matrix",
            details={"source": "exact-linalg", "operation": "rank_fp_quot", "kind": A.kind.value},
        )
    return rank(coeff_matrix(A))


def base_rank(A: RingMatrix) -> int:
    """Rank over the base field, expanding quotient entries when needed."""
    if A.kind in (RingKind.FP_QUOT, RingKind.CYCLO_QUOT):
        return rank(coeff_matrix(A))
    return rank(A)


def crank(family: MatrixFamily) -> int:
    """Rank of the vertical concatenation of a family."""
    return base_rank(family.stacked())


def invert_matrix(rows: Sequence[Sequence[CycloNumber]]) -> list[list[CycloNumber]]:
    """Gauss-Jordan inverse over Q(ζ); a singular input is an internal error."""
    size = len(rows)
    if any(len(row) != size for row in rows):
        raise InvalidInputError(
            "only square matrices are invertible",
            details={"source": "exact-linalg", "operation": "invert_matrix", "rows": size},
        )
    p, k = rows[0][0].p, rows[0][0].k
    one, zero = CycloNumber.one(p, k), CycloNumber.zero(p, k)
    work = [list(row) + [one if i == j else zero for j in range(size)] for i, row in enumerate(rows)]
    for c in range(size):
        pivot = next((i for i in range(c, size) if not work[i][c].is_zero()), None)
        if pivot is None:
            raise InternalInvariantError(
                "singular system where an invertible one was required",
                details={"source": "exact-linalg", "operation": "invert_matrix", "column": c},
            )
        work[c], work[pivot] = work[pivot], work[c]
        inverse = work[c][c].inverse()
        work[c] = [x * inverse for x in work[c]]
        for i in range(size):
            factor = work[i][c]
            if i != c and not factor.is_zero():
                work[i] = [x - factor * y for x, y in zip(work[i], work[c], strict=True)]
    return [row[size:] for row in work]


# Products


def _fp_matmul(a: IntArray, b: IntArray, p: int) -> IntArray:
    if (p - 1) ** 2 * max(a.shape[-1], 1) < 2**62:
        return (a @ b) % p
    return (a.astype(object) @ b.astype(object) % p).astype(np.int64)


def matmul(A: RingMatrix, B: RingMatrix) -> RingMatrix:
    """A·B, lifting a field-valued factor into the other factor's quotient ring."""
    if A.cols != B.rows:
        raise InvalidInputError(
            "inner dimensions differ",
            details={"source": "exact-linalg", "operation": "matmul", "shapes": [[A.rows, A.cols], [B.rows, B.cols]]},
        )
    if A.kind in (RingKind.FP_QUOT, RingKind.CYCLO_QUOT) and not B.same_ring(A):
        B = B.lift_constant(A)
    elif B.kind in (RingKind.FP_QUOT, RingKind.CYCLO_QUOT) and not A.same_ring(B):
        A = A.lift_constant(B)
    if not A.same_ring(B):
        raise _mismatch(f"cannot multiply {A.kind.value} by {B.kind.value}", "matmul")

    if A.kind is RingKind.FP:
        return A._rebuild(_fp_matmul(A.array, B.array, A.p))
    if A.kind is RingKind.FP_QUOT:
        d = A.degree
        out = np.zeros((A.rows, B.cols, 2 * d - 1), dtype=np.int64)
        for i, j in product(range(d), range(d)):
            out[..., i + j] = (out[..., i + j] + _fp_matmul(A.array[..., i], B.array[..., j], A.p)) % A.p
        return RingMatrix.fp_quot(A.p, A.modulus, out)  # type: ignore[arg-type]
    rows = []
    for i in range(A.rows):
        row = []
        for j in range(B.cols):
            total = A.entries[i][0] * B.entries[0][j]
            for m in range(1, A.cols):
                total = total + A.entries[i][m] * B.entries[m][j]
            row.append(total)
        rows.append(tuple(row))
    return A._rebuild(tuple(rows))


def kronecker(A: RingMatrix, B: RingMatrix) -> RingMatrix:
    """A ⊗ B with the A-index major on rows and columns."""
    poly_kinds = (RingKind.FP_QUOT, RingKind.CYCLO_QUOT)
    if A.kind in poly_kinds and B.kind in poly_kinds and not A.same_ring(B):
        raise _mismatch("Kronecker factors over different quotients", "kronecker")
    if A.kind in poly_kinds and B.kind not in poly_kinds:
        B = B.lift_constant(A)
    elif B.kind in poly_kinds and A.kind not in poly_kinds:
        A = A.lift_constant(B)
    if not A.same_ring(B):
        raise _mismatch(f"cannot take {A.kind.value} ⊗ {B.kind.value}", "kronecker")

    rows_out, cols_out = A.rows * B.rows, A.cols * B.cols
    if A.kind is RingKind.FP:
        return A._rebuild(np.kron(A.array, B.array) % A.p)
    if A.kind is RingKind.FP_QUOT:
        d = A.degree
        out = np.zeros((A.rows, B.rows, A.cols, B.cols, 2 * d - 1), dtype=np.int64)
        for i, j in product(range(d), range(d)):
            block = np.einsum("ac,bd->abcd", A.array[..., i], B.array[..., j])
            out[..., i + j] = (out[..., i + j] + block) % A.p
        return RingMatrix.fp_quot(A.p, A.modulus, out.reshape(rows_out, cols_out, 2 * d - 1))  # type: ignore[arg-type]
    data = tuple(
        tuple(A.entries[r1][c1] * B.entries[r2][c2] for c1 in range(A.cols) for c2 in range(B.cols))
        for r1 in range(A.rows)
        for r2 in range(B.rows)
    )
    return A._rebuild(data)


# The quotient map ψ


def psi_matrix(A: RingMatrix) -> RingMatrix:
    """Entrywise ψ_{p^k}: Q(ζ) → F_p, Q(ζ)[z]/⟨h⟩ → F_p[z]/⟨ψ(h)⟩."""
    if A.kind is RingKind.CYCLO:
        return RingMatrix.fp(A.p, [[psi_number(e) for e in row] for row in A.entries])
    if A.kind is RingKind.CYCLO_QUOT:
        return RingMatrix.fp_quot_entries([[psi_poly(e) for e in row] for row in A.entries])
    raise InvalidInputError(
        "ψ applies to cyclotomic matrices only",
        details={"source": "exact-linalg", "operation": "psi_matrix", "kind": A.kind.value},
    )


def quotient_rank_pair(A: RingMatrix) -> tuple[int, int]:
    """(rank over Q(ζ), F_p-rank of ψ(A)); the first is never smaller."""
    return base_rank(A), base_rank(psi_matrix(A))
