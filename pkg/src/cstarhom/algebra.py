"""Finite-dimensional C*-algebras as block-diagonal matrix algebras.

An algebra is a direct sum of full complex matrix blocks and is described by
its block sizes ``[n_1, ..., n_l]``. Elements are block-diagonal matrices,
stored as one dense complex array per block. All values are immutable after
construction and all operations are pure, so everything here is safe to
share between threads.

Storage convention for opposite algebras: an opposite algebra ``X^op`` is
never materialized. Any operator that the theory places in ``X (x) Y^op``
is stored as its image in ``X (x) Y`` under the blockwise transpose of the
second factor (``id (x) transpose`` is a *-isomorphism). Every quantity
computed here (traces, spectra, norms, defects) is invariant under that
identification, so verdicts are unaffected. The file format in the CLI
documents the same convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import AlgebraMismatch, IndexOutOfRange, NotHermitian


@dataclass(frozen=True)
class Algebra:
    """A direct sum of full matrix algebras, given by its block sizes.

    ``vec_dim`` is the dimension as a complex vector space (sum of squared
    block sizes); ``trace_dim`` is the rank of the identity (sum of block
    sizes). Algebras compare equal iff their block sizes agree; recorded
    tensor factors are metadata and do not affect equality.
    """

    blocks: tuple[int, ...]
    factors: tuple["Algebra", "Algebra"] | None = field(
        default=None, compare=False, repr=False
    )

    def __post_init__(self) -> None:
        blocks = tuple(int(n) for n in self.blocks)
        if len(blocks) == 0:
            raise ValueError("an algebra has at least one block")
        if any(n < 1 for n in blocks):
            raise ValueError(f"block sizes must be positive, got {blocks}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @property
    def vec_dim(self) -> int:
        return sum(n * n for n in self.blocks)

    @property
    def trace_dim(self) -> int:
        return sum(self.blocks)

    def default_tol(self) -> float:
        """Default defect tolerance, scaling with accumulated rounding error."""
        return 1e-9 * math.sqrt(self.vec_dim)

    def block_offsets(self) -> list[int]:
        """Start index of each block in the coordinate vector."""
        offs = [0]
        for n in self.blocks:
            offs.append(offs[-1] + n * n)
        return offs[:-1]

    def unit_index(self, k: int, i: int, j: int) -> int:
        """Position of the matrix unit ``(k, i, j)`` in the canonical basis.

        The canonical order is blocks ascending, then row-major ``(i, j)``
        within each block. Indices are 0-based.
        """
        n = self.blocks[k]
        if not (0 <= i < n and 0 <= j < n):
            raise IndexOutOfRange(f"unit ({i},{j}) outside {n}x{n} block {k}")
        return self.block_offsets()[k] + i * n + j

    def units(self) -> Iterable[tuple[int, int, int]]:
        """All matrix-unit labels ``(k, i, j)`` in canonical order."""
        for k, n in enumerate(self.blocks):
            for i in range(n):
                for j in range(n):
                    yield (k, i, j)

    def transpose_permutation(self) -> np.ndarray:
        """Coordinate permutation induced by the blockwise transpose."""
        perm = np.empty(self.vec_dim, dtype=np.intp)
        pos = 0
        for k, n in enumerate(self.blocks):
            for i in range(n):
                for j in range(n):
                    perm[pos + i * n + j] = pos + j * n + i
            pos += n * n
        return perm

    def block_weights(self) -> np.ndarray:
        """Per-coordinate block size, i.e. the diagonal of right-multiplication
        by the dimension operator in the canonical basis."""
        return np.concatenate(
            [np.full(n * n, float(n)) for n in self.blocks]
        )


class Element:
    """A block-diagonal complex matrix in a fixed algebra.

    Arrays are copied on construction and frozen, so elements can be shared
    freely. Arithmetic is blockwise; ``*`` is the algebra product.
    """

    __slots__ = ("algebra", "blocks")

    def __init__(self, algebra: Algebra, blocks: Sequence[np.ndarray]):
        if len(blocks) != algebra.num_blocks:
            raise AlgebraMismatch(
                f"expected {algebra.num_blocks} blocks, got {len(blocks)}"
            )
        frozen = []
        for n, b in zip(algebra.blocks, blocks):
            arr = np.array(b, dtype=np.complex128)
            if arr.shape != (n, n):
                raise AlgebraMismatch(
                    f"block shape {arr.shape} does not match size {n}"
                )
            arr.setflags(write=False)
            frozen.append(arr)
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "blocks", tuple(frozen))

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("Element is immutable")

    def __repr__(self) -> str:
        return f"Element(blocks={self.algebra.blocks}, norm={self.norm():.6g})"

    # -- linear structure -------------------------------------------------

    def _same_algebra(self, other: "Element") -> None:
        if self.algebra != other.algebra:
            raise AlgebraMismatch(
                f"{self.algebra.blocks} vs {other.algebra.blocks}"
            )

    def __add__(self, other: "Element") -> "Element":
        self._same_algebra(other)
        return Element(self.algebra, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other: "Element") -> "Element":
        self._same_algebra(other)
        return Element(self.algebra, [a - b for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self) -> "Element":
        return Element(self.algebra, [-a for a in self.blocks])

    def __mul__(self, other):
        if isinstance(other, Element):
            self._same_algebra(other)
            return Element(
                self.algebra, [a @ b for a, b in zip(self.blocks, other.blocks)]
            )
        return Element(self.algebra, [complex(other) * a for a in self.blocks])

    def __rmul__(self, scalar) -> "Element":
        return Element(self.algebra, [complex(scalar) * a for a in self.blocks])

    def adjoint(self) -> "Element":
        """Conjugate transpose, blockwise."""
        return Element(self.algebra, [a.conj().T for a in self.blocks])

    # -- coordinates -------------------------------------------------------

    def coords(self) -> np.ndarray:
        """Coordinates in the canonical matrix-unit basis (row-major blocks)."""
        return np.concatenate([b.ravel() for b in self.blocks])

    @staticmethod
    def from_coords(algebra: Algebra, v: np.ndarray) -> "Element":
        v = np.asarray(v, dtype=np.complex128).ravel()
        if v.size != algebra.vec_dim:
            raise AlgebraMismatch(
                f"coordinate length {v.size} != vec_dim {algebra.vec_dim}"
            )
        blocks, pos = [], 0
        for n in algebra.blocks:
            blocks.append(v[pos : pos + n * n].reshape(n, n))
            pos += n * n
        return Element(algebra, blocks)

    def norm(self) -> float:
        """Frobenius norm of the block-diagonal matrix."""
        return float(np.linalg.norm(self.coords()))


# -- constructors ----------------------------------------------------------


def zero(algebra: Algebra) -> Element:
    return Element(algebra, [np.zeros((n, n)) for n in algebra.blocks])


def one(algebra: Algebra) -> Element:
    return Element(algebra, [np.eye(n) for n in algebra.blocks])


def matrix_unit(algebra: Algebra, k: int, i: int, j: int) -> Element:
    """The basis element with a single 1 at row ``i``, column ``j`` of block
    ``k`` (0-based) and zeros elsewhere."""
    if not (0 <= k < algebra.num_blocks):
        raise IndexOutOfRange(f"block {k} outside 0..{algebra.num_blocks - 1}")
    n = algebra.blocks[k]
    if not (0 <= i < n and 0 <= j < n):
        raise IndexOutOfRange(f"unit ({i},{j}) outside {n}x{n} block {k}")
    blocks = [np.zeros((m, m)) for m in algebra.blocks]
    blocks[k] = np.zeros((n, n))
    blocks[k][i, j] = 1.0
    return Element(algebra, blocks)


def block_inclusion(algebra: Algebra, k: int, mat: np.ndarray) -> Element:
    """Include an ``n_k x n_k`` matrix as block ``k``, zero elsewhere."""
    if not (0 <= k < algebra.num_blocks):
        raise IndexOutOfRange(f"block {k} outside 0..{algebra.num_blocks - 1}")
    mat = np.asarray(mat, dtype=np.complex128)
    n = algebra.blocks[k]
    if mat.shape != (n, n):
        raise AlgebraMismatch(f"matrix shape {mat.shape} != block size {n}")
    blocks = [np.zeros((m, m), dtype=np.complex128) for m in algebra.blocks]
    blocks[k] = mat
    return Element(algebra, blocks)


def dimension_operator(algebra: Algebra) -> Element:
    """The central element whose block ``k`` is ``n_k`` times the identity.

    It relates the two canonical traces: the adjusted trace of ``a`` equals
    the plain trace of ``a`` times this element.
    """
    return Element(algebra, [n * np.eye(n) for n in algebra.blocks])


# -- traces ------------------------------------------------------------------


def trace(x: Element) -> complex:
    """Sum of the blockwise matrix traces (each minimal projection -> 1)."""
    return complex(sum(np.trace(b) for b in x.blocks))


def adjusted_trace(x: Element) -> complex:
    """The trace weighted by block size (each projection p -> dim of the
    ideal it generates); equals ``trace(x * dimension_operator)``."""
    return complex(sum(n * np.trace(b) for n, b in zip(x.algebra.blocks, x.blocks)))


# -- algebra constructions ---------------------------------------------------


def direct_sum(a: Algebra, b: Algebra) -> Algebra:
    """Concatenate block lists."""
    return Algebra(a.blocks + b.blocks)


def direct_sum_elements(x: Element, y: Element) -> Element:
    return Element(direct_sum(x.algebra, y.algebra), list(x.blocks) + list(y.blocks))


def tensor(a: Algebra, b: Algebra) -> Algebra:
    """Tensor product algebra.

    Blocks are ``n_k * m_r`` over all pairs ``(k, r)`` in lexicographic
    order; the factor pair is recorded so that factor-aware operations
    (swaps, one-sided map application) stay unambiguous.
    """
    sizes = tuple(n * m for n in a.blocks for m in b.blocks)
    return Algebra(sizes, factors=(a, b))


def tensor_elements(x: Element, y: Element) -> Element:
    """Kronecker product, blockwise, with the left factor outermost."""
    alg = tensor(x.algebra, y.algebra)
    blocks = [np.kron(xb, yb) for xb in x.blocks for yb in y.blocks]
    return Element(alg, blocks)


def op_transpose(x: Element) -> Element:
    """Blockwise transpose without conjugation.

    This is the canonical *-isomorphism from the opposite algebra: it is
    unital, reverses products, and preserves both traces.
    """
    return Element(x.algebra, [b.T for b in x.blocks])


# -- predicates and spectral calculus ----------------------------------------


def _resolve_tol(x: Element, tol: float | None) -> float:
    return x.algebra.default_tol() if tol is None else float(tol)


def hermitian_defect(x: Element) -> float:
    return (x - x.adjoint()).norm()


def is_hermitian(x: Element, tol: float | None = None) -> tuple[bool, float]:
    d = hermitian_defect(x)
    return d <= _resolve_tol(x, tol), d


def symmetrize(x: Element) -> tuple[Element, float]:
    """Replace ``x`` by its Hermitian part and report the discarded defect."""
    h = 0.5 * (x + x.adjoint())
    return h, (x - h).norm()


def hermitian_eigenvalues(x: Element) -> list[np.ndarray]:
    """Eigenvalues per block of the Hermitian part of ``x``."""
    h, _ = symmetrize(x)
    return [np.linalg.eigvalsh(b) for b in h.blocks]


def is_positive(x: Element, tol: float | None = None) -> tuple[bool, float]:
    """Positivity check; the defect combines the Hermitian defect with the
    magnitude of the most negative eigenvalue."""
    herm = hermitian_defect(x)
    lam_min = min(float(v.min()) if v.size else 0.0 for v in hermitian_eigenvalues(x))
    d = max(herm, max(0.0, -lam_min))
    return d <= _resolve_tol(x, tol), d


def is_projection(x: Element, tol: float | None = None) -> tuple[bool, float]:
    """Projection check; defect = max(||x^2 - x||_F, ||x* - x||_F)."""
    d = max((x * x - x).norm(), hermitian_defect(x))
    return d <= _resolve_tol(x, tol), d


@dataclass(frozen=True)
class SpectralDecomposition:
    """Clustered eigenvalues with their spectral projections.

    ``hermitian_defect`` is the norm discarded when the input was replaced
    by its Hermitian part prior to diagonalization.
    """

    eigenvalues: tuple[float, ...]
    projections: tuple[Element, ...]
    hermitian_defect: float


def spectral(
    x: Element, tol: float | None = None, cluster_tol: float = 1e-8
) -> SpectralDecomposition:
    """Eigenvalues and spectral projections of a Hermitian element.

    Raises NotHermitian when the Hermitian defect exceeds ``tol``. Nearby
    eigenvalues (gap below ``cluster_tol`` times the spectral scale) are
    merged into a single projection.
    """
    h, defect = symmetrize(x)
    if defect > _resolve_tol(x, tol):
        raise NotHermitian(f"hermitian defect {defect:.3e}")
    triples = []  # (eigenvalue, block index, eigenvector column)
    for k, b in enumerate(h.blocks):
        vals, vecs = np.linalg.eigh(b)
        for idx in range(vals.size):
            triples.append((float(vals[idx]), k, vecs[:, idx]))
    triples.sort(key=lambda t: t[0])
    scale = max(1.0, max(abs(t[0]) for t in triples))
    gap = cluster_tol * scale
    eigenvalues: list[float] = []
    projections: list[Element] = []
    group: list[tuple[float, int, np.ndarray]] = []

    def flush() -> None:
        if not group:
            return
        blocks = [np.zeros((n, n), dtype=np.complex128) for n in x.algebra.blocks]
        for _, k, v in group:
            blocks[k] += np.outer(v, v.conj())
        eigenvalues.append(sum(t[0] for t in group) / len(group))
        projections.append(Element(x.algebra, blocks))

    for t in triples:
        if group and t[0] - group[-1][0] > gap:
            flush()
            group = []
        group.append(t)
    flush()
    return SpectralDecomposition(tuple(eigenvalues), tuple(projections), defect)


def conditional_expectation_center(a: Element) -> Element:
    """Project onto the center: block ``k`` becomes ``tr(a_k)/n_k`` times the
    identity. Central elements are fixed points and the map is idempotent."""
    blocks = [
        (np.trace(b) / n) * np.eye(n)
        for n, b in zip(a.algebra.blocks, a.blocks)
    ]
    return Element(a.algebra, blocks)
