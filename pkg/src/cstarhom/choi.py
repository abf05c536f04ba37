"""Choi operators, the diagonal projection, and the projection criteria.

The diagonal projection lives in ``A (x) A^op``. Following the package-wide
convention, it is stored in the materialized ``A (x) A`` with the second
factor transposed, where it takes the closed form

    e = sum_k (1/n_k) sum_{i,j} u_{ij,k} (x) u_{ij,k}

over the matrix units ``u_{ij,k}``. A unital completely positive map is a
*-homomorphism exactly when its adjusted Choi operator is a projection;
the equivalent projection tests through the adjusted-trace adjoint and the
pulled-back (adjusted) densities are computed here as mutual cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    Algebra,
    Element,
    dimension_operator,
    is_projection,
    tensor,
)
from .errors import (
    AlgebraMismatch,
    NotATensorAlgebra,
    NotCompletelyPositive,
    NotSingleBlock,
    NotTracePreserving,
)
from .linmap import (
    LinMap,
    _block_tensor,
    apply_left,
    dagger_adjoint,
    ddagger_adjoint,
    is_completely_positive,
    is_trace_preserving,
    require_ucp,
)


def diagonal_projection(algebra: Algebra) -> Element:
    """The diagonal projection of ``A (x) A^op`` in stored form.

    Only the ``(k, k)`` tensor blocks are nonzero; each is the rank-one
    projection ``(1/n_k) |w_k><w_k|`` onto the unnormalized maximally
    entangled vector ``w_k = sum_i |ii>``.
    """
    out = tensor(algebra, algebra)
    blocks = []
    nb = algebra.num_blocks
    for k, n in enumerate(algebra.blocks):
        for r, m in enumerate(algebra.blocks):
            size = n * m
            if k != r:
                blocks.append(np.zeros((size, size), dtype=np.complex128))
                continue
            w = np.zeros(size, dtype=np.complex128)
            for i in range(n):
                w[i * n + i] = 1.0
            blocks.append(np.outer(w, w) / n)
    assert len(blocks) == nb * nb
    return Element(out, blocks)


def diagonal_projection_raw(algebra: Algebra) -> Element:
    """Coefficients of the diagonal projection before the second factor is
    transposed: ``sum_k (1/n_k) sum_{i,j} u_{ij,k} (x) u_{ji,k}``.

    Only the ``(k, k)`` tensor blocks are nonzero; each is the swap operator
    divided by the block size. Applying the partial transpose reproduces
    ``diagonal_projection``.
    """
    out = tensor(algebra, algebra)
    blocks = []
    for k, n in enumerate(algebra.blocks):
        for r, m in enumerate(algebra.blocks):
            size = n * m
            if k != r:
                blocks.append(np.zeros((size, size), dtype=np.complex128))
                continue
            swap = np.zeros((size, size), dtype=np.complex128)
            for i in range(n):
                for j in range(n):
                    swap[i * n + j, j * n + i] = 1.0
            blocks.append(swap / n)
    return Element(out, blocks)


def transpose_second_factor(x: Element) -> Element:
    """Partial transpose of the second tensor factor (the stored action of
    ``id (x) transpose``)."""
    factors = x.algebra.factors
    if factors is None:
        raise NotATensorAlgebra("element carries no tensor-factor structure")
    a, b = factors
    blocks = []
    for k, n in enumerate(a.blocks):
        for r, m in enumerate(b.blocks):
            view = x.blocks[k * b.num_blocks + r].reshape(n, m, n, m)
            blocks.append(view.transpose(0, 3, 2, 1).reshape(n * m, n * m))
    return Element(x.algebra, blocks)


def swap_factors(x: Element) -> Element:
    """The tensor-symmetry *-isomorphism ``A (x) B -> B (x) A``."""
    factors = x.algebra.factors
    if factors is None:
        raise NotATensorAlgebra("element carries no tensor-factor structure")
    a, b = factors
    out = tensor(b, a)
    blocks: list[np.ndarray | None] = [None] * (a.num_blocks * b.num_blocks)
    for k, n in enumerate(a.blocks):
        for r, m in enumerate(b.blocks):
            view = x.blocks[k * b.num_blocks + r].reshape(n, m, n, m)
            blocks[r * a.num_blocks + k] = view.transpose(1, 0, 3, 2).reshape(
                m * n, m * n
            )
    return Element(out, blocks)


def conjugate_element(x: Element) -> Element:
    """Entrywise complex conjugate in the canonical basis (no transpose)."""
    return Element(x.algebra, [b.conj() for b in x.blocks])


# -- Choi operators ------------------------------------------------------------


def choi_matrix(phi: LinMap) -> Element:
    """The Choi operator ``sum phi(u_{ij,k}) (x) u_{ij,k}`` in B (x) A."""
    return _choi(phi, adjusted=False)


def adjusted_choi(phi: LinMap) -> Element:
    """The adjusted Choi operator ``sum (1/n_k) phi(u_{ij,k}) (x) u_{ij,k}``.

    Equals the image of the stored diagonal projection under
    ``phi (x) id``; it is positive iff ``phi`` is completely positive.
    """
    return _choi(phi, adjusted=True)


def _choi(phi: LinMap, adjusted: bool) -> Element:
    a, b = phi.domain, phi.codomain
    out = tensor(b, a)
    blocks = []
    for s, m in enumerate(b.blocks):
        for k, n in enumerate(a.blocks):
            t = _block_tensor(phi, k, s)  # t[i, j, p, q]
            blk = t.transpose(2, 0, 3, 1).reshape(m * n, m * n)
            if adjusted:
                blk = blk / n
            blocks.append(blk)
    return Element(out, blocks)


def projection_criterion(
    phi: LinMap, tol: float | None = None, ucp_tol: float | None = None
) -> tuple[bool, float]:
    """Homomorphism test: is the adjusted Choi operator a projection?

    Raises NotUCP when the map is not unital completely positive, since the
    equivalence is only proved under that hypothesis.
    """
    require_ucp(phi, ucp_tol)
    return is_projection(adjusted_choi(phi), tol)


@dataclass(frozen=True)
class ProjectionVariants:
    """Projection defects of four constructions that are projections for
    exactly the same maps; disagreement indicates an internal error.

    forward: adjusted Choi operator (the map applied to the domain diagonal).
    backward: adjusted-trace adjoint applied to the codomain diagonal.
    adjusted_density: pulled-back adjusted density of the uniform state on
        the codomain diagonal, times the codomain dimension.
    density: the same state's plain density, rescaled by the inverse
        dimension operator and the codomain dimension.
    """

    forward: float
    backward: float
    adjusted_density: float
    density: float

    def defects(self) -> tuple[float, float, float, float]:
        return (self.forward, self.backward, self.adjusted_density, self.density)

    def verdicts(self, tol: float) -> tuple[bool, bool, bool, bool]:
        return tuple(d <= tol for d in self.defects())  # type: ignore[return-value]

    def agree(self, tol: float) -> bool:
        v = self.verdicts(tol)
        return all(v) or not any(v)


def projection_variants(phi: LinMap, ucp_tol: float | None = None) -> ProjectionVariants:
    """Compute all four equivalent projection defects for a UCP map.

    The four matrices are built along genuinely different floating-point
    paths (the map itself, its adjusted-trace adjoint twice, and its plain
    adjoint), so agreement is a real cross-check.
    """
    require_ucp(phi, ucp_tol)
    a, b = phi.domain, phi.codomain
    dim_b = float(b.vec_dim)
    e_b = diagonal_projection(b)
    ddag = ddagger_adjoint(phi)
    dag = dagger_adjoint(phi)

    forward = is_projection(adjusted_choi(phi))[1]
    backward = is_projection(apply_left(ddag, e_b))[1]

    # Uniform state on the codomain diagonal: adjusted density e_b / dim B,
    # plain density e_b * zeta / dim B.
    d_tilde = apply_left(ddag, (1.0 / dim_b) * e_b)
    adjusted_density = is_projection(dim_b * d_tilde)[1]

    zeta_bb = dimension_operator(e_b.algebra)
    d_plain = apply_left(dag, (1.0 / dim_b) * (e_b * zeta_bb))
    out_alg = d_plain.algebra
    zeta_inv = Element(out_alg, [np.eye(sz) / sz for sz in out_alg.blocks])
    density = is_projection(dim_b * (d_plain * zeta_inv))[1]

    return ProjectionVariants(forward, backward, adjusted_density, density)


# -- channel-state duality ------------------------------------------------------


@dataclass(frozen=True)
class CjDualReport:
    """Result of the channel-state duality check for a trace-preserving
    completely positive map between full matrix algebras."""

    is_homomorphism: bool
    projection_defect: float
    conjugate_identity_residual: float


def cj_dual_check(psi: LinMap, tol: float | None = None) -> CjDualReport:
    """Decide whether the plain adjoint of a channel is a homomorphism.

    For trace-preserving completely positive ``psi: M_m -> M_n`` this holds
    iff ``(m/n)`` times the adjusted Choi operator is a projection. The
    report also verifies that the adjusted Choi operator of the adjoint
    equals the entrywise conjugate of the factor-swapped, rescaled Choi
    operator of ``psi`` - an identity that ties the two computations
    together.
    """
    if psi.domain.num_blocks != 1 or psi.codomain.num_blocks != 1:
        raise NotSingleBlock("duality check requires full matrix algebras")
    tp_ok, tp_defect = is_trace_preserving(psi)
    if not tp_ok:
        raise NotTracePreserving(f"trace defect {tp_defect:.3e}")
    cp_ok, cp_defect = is_completely_positive(psi)
    if not cp_ok:
        raise NotCompletelyPositive(f"positivity defect {cp_defect:.3e}")

    m = psi.domain.blocks[0]
    n = psi.codomain.blocks[0]
    scaled = (m / n) * adjusted_choi(psi)
    ok, defect = is_projection(scaled, tol)
    dual_choi = adjusted_choi(dagger_adjoint(psi))
    residual = (dual_choi - conjugate_element(swap_factors(scaled))).norm()
    return CjDualReport(ok, defect, residual)


def map_from_adjusted_choi(x: Element, domain: Algebra, codomain: Algebra) -> LinMap:
    """Invert the channel-state correspondence between full matrix algebras.

    Given the adjusted Choi operator of some ``psi: M_m -> M_n``, recover
    ``psi`` from ``psi(u_ij)[u, v] = m * choi[(u, i), (v, j)]``.
    """
    if domain.num_blocks != 1 or codomain.num_blocks != 1:
        raise NotSingleBlock("inversion requires full matrix algebras")
    m = domain.blocks[0]
    n = codomain.blocks[0]
    if x.algebra.blocks != (n * m,):
        raise AlgebraMismatch(
            f"element blocks {x.algebra.blocks} do not match [{n * m}]"
        )
    view = x.blocks[0].reshape(n, m, n, m)
    images = []
    for i in range(m):
        for j in range(m):
            images.append(Element(codomain, [m * view[:, i, :, j]]))
    return LinMap.from_images(domain, codomain, images)
