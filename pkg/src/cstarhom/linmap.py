"""Linear maps between finite-dimensional C*-algebras.

A map is stored by the images of the domain's matrix-unit basis, i.e. as a
dense ``codomain.vec_dim x domain.vec_dim`` complex matrix in the canonical
coordinates. That representation is closed under everything needed here:
composition, tensoring, and both trace adjoints, which are computed exactly
(index permutations and block rescalings, never numerical optimization).
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .algebra import Algebra, Element, matrix_unit, one, tensor, tensor_elements, trace
from .errors import AlgebraMismatch, NotATensorAlgebra, NotUCP


class LinMap:
    """A linear map between two algebras, in matrix-unit coordinates."""

    __slots__ = ("domain", "codomain", "matrix")

    def __init__(self, domain: Algebra, codomain: Algebra, matrix: np.ndarray):
        matrix = np.array(matrix, dtype=np.complex128)
        if matrix.shape != (codomain.vec_dim, domain.vec_dim):
            raise AlgebraMismatch(
                f"matrix shape {matrix.shape} does not match "
                f"({codomain.vec_dim}, {domain.vec_dim})"
            )
        matrix.setflags(write=False)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("LinMap is immutable")

    def __repr__(self) -> str:
        return f"LinMap({self.domain.blocks} -> {self.codomain.blocks})"

    @staticmethod
    def from_images(
        domain: Algebra, codomain: Algebra, images: Sequence[Element]
    ) -> "LinMap":
        """Build a map from the images of the canonical basis units."""
        if len(images) != domain.vec_dim:
            raise AlgebraMismatch(
                f"expected {domain.vec_dim} images, got {len(images)}"
            )
        cols = []
        for img in images:
            if img.algebra != codomain:
                raise AlgebraMismatch("image outside the codomain")
            cols.append(img.coords())
        return LinMap(domain, codomain, np.column_stack(cols))

    @staticmethod
    def from_function(
        domain: Algebra, codomain: Algebra, fn: Callable[[Element], Element]
    ) -> "LinMap":
        """Linear extension of ``fn`` evaluated on the basis units."""
        images = [fn(matrix_unit(domain, k, i, j)) for k, i, j in domain.units()]
        return LinMap.from_images(domain, codomain, images)

    @staticmethod
    def identity(algebra: Algebra) -> "LinMap":
        return LinMap(algebra, algebra, np.eye(algebra.vec_dim))

    def images(self) -> list[Element]:
        """Images of the basis units, in canonical order."""
        return [
            Element.from_coords(self.codomain, self.matrix[:, c])
            for c in range(self.domain.vec_dim)
        ]

    def image_of_unit(self, k: int, i: int, j: int) -> Element:
        col = self.domain.unit_index(k, i, j)
        return Element.from_coords(self.codomain, self.matrix[:, col])

    def __call__(self, a: Element) -> Element:
        if a.algebra != self.domain:
            raise AlgebraMismatch("element outside the domain")
        return Element.from_coords(self.codomain, self.matrix @ a.coords())


def apply(phi: LinMap, a: Element) -> Element:
    return phi(a)


def compose(phi: LinMap, psi: LinMap) -> LinMap:
    """The composite ``phi . psi`` (apply ``psi`` first)."""
    if psi.codomain != phi.domain:
        raise AlgebraMismatch("composition shapes do not match")
    return LinMap(psi.domain, phi.codomain, phi.matrix @ psi.matrix)


def map_distance(phi: LinMap, psi: LinMap) -> float:
    """Frobenius distance between the coordinate matrices."""
    if phi.domain != psi.domain or phi.codomain != psi.codomain:
        raise AlgebraMismatch("maps with different shapes")
    return float(np.linalg.norm(phi.matrix - psi.matrix))


def tensor_maps(phi: LinMap, psi: LinMap) -> LinMap:
    """The tensor product map on the materialized tensor algebras."""
    dom = tensor(phi.domain, psi.domain)
    cod = tensor(phi.codomain, psi.codomain)
    phi_images = phi.images()
    psi_images = psi.images()
    cols = np.empty((cod.vec_dim, dom.vec_dim), dtype=np.complex128)
    col = 0
    c_blocks = psi.domain.blocks
    for k, n in enumerate(phi.domain.blocks):
        for r, c in enumerate(c_blocks):
            # Units of tensor block (k, r) in row-major order are
            # e_{ij,k} (x) f_{uv,r} with rows (i,u), cols (j,v).
            for i in range(n):
                for u in range(c):
                    for j in range(n):
                        for v in range(c):
                            left = phi_images[phi.domain.unit_index(k, i, j)]
                            right = psi_images[psi.domain.unit_index(r, u, v)]
                            cols[:, col] = tensor_elements(left, right).coords()
                            col += 1
    return LinMap(dom, cod, cols)


def tensor_with_identity(phi: LinMap, right: Algebra) -> LinMap:
    return tensor_maps(phi, LinMap.identity(right))


def _block_tensor(phi: LinMap, k: int, s: int) -> np.ndarray:
    """Action of ``phi`` from domain block ``k`` into codomain block ``s``
    as a tensor ``T[i, j, a, b]`` (unit (i,j) -> entry (a,b))."""
    n = phi.domain.blocks[k]
    m = phi.codomain.blocks[s]
    rows = phi.codomain.block_offsets()[s]
    cols = phi.domain.block_offsets()[k]
    sub = phi.matrix[rows : rows + m * m, cols : cols + n * n]
    return sub.reshape(m, m, n, n).transpose(2, 3, 0, 1)


def apply_left(phi: LinMap, x: Element) -> Element:
    """Apply ``phi (x) id`` to an element of a materialized tensor algebra."""
    factors = x.algebra.factors
    if factors is None:
        raise NotATensorAlgebra("element carries no tensor-factor structure")
    a, c = factors
    if a != phi.domain:
        raise AlgebraMismatch("left tensor factor is not the map's domain")
    out_alg = tensor(phi.codomain, c)
    out_blocks = []
    for s, m in enumerate(phi.codomain.blocks):
        for r, cr in enumerate(c.blocks):
            acc = np.zeros((m, cr, m, cr), dtype=np.complex128)
            for k, n in enumerate(a.blocks):
                xview = x.blocks[k * c.num_blocks + r].reshape(n, cr, n, cr)
                acc += np.einsum("ijab,iujv->aubv", _block_tensor(phi, k, s), xview)
            out_blocks.append(acc.reshape(m * cr, m * cr))
    return Element(out_alg, out_blocks)


def apply_right(phi: LinMap, x: Element) -> Element:
    """Apply ``id (x) phi`` to an element of a materialized tensor algebra."""
    factors = x.algebra.factors
    if factors is None:
        raise NotATensorAlgebra("element carries no tensor-factor structure")
    c, a = factors
    if a != phi.domain:
        raise AlgebraMismatch("right tensor factor is not the map's domain")
    out_alg = tensor(c, phi.codomain)
    out_blocks = []
    for r, cr in enumerate(c.blocks):
        for s, m in enumerate(phi.codomain.blocks):
            acc = np.zeros((cr, m, cr, m), dtype=np.complex128)
            for k, n in enumerate(a.blocks):
                xview = x.blocks[r * a.num_blocks + k].reshape(cr, n, cr, n)
                acc += np.einsum("uivj,ijab->uavb", xview, _block_tensor(phi, k, s))
            out_blocks.append(acc.reshape(cr * m, cr * m))
    return Element(out_alg, out_blocks)


# -- adjoints -----------------------------------------------------------------


def dagger_adjoint(phi: LinMap) -> LinMap:
    """Adjoint for the plain trace pairing: tr(phi(a) b) = tr(a phi^+(b)).

    In matrix-unit coordinates the pairing is the transpose permutation, so
    the adjoint is exact: an index permutation of the transposed matrix.
    """
    qa = phi.domain.transpose_permutation()
    qb = phi.codomain.transpose_permutation()
    return LinMap(phi.codomain, phi.domain, phi.matrix[np.ix_(qb, qa)].T)


def ddagger_adjoint(phi: LinMap) -> LinMap:
    """Adjoint for the adjusted-trace pairing.

    Related to the plain adjoint by right-multiplying with the codomain's
    dimension operator and dividing by the domain's, which in coordinates
    is an exact per-block rescaling.
    """
    dag = dagger_adjoint(phi)
    w_dom = phi.domain.block_weights()  # rows of dag live in phi.domain
    w_cod = phi.codomain.block_weights()
    scaled = dag.matrix * w_cod[np.newaxis, :] / w_dom[:, np.newaxis]
    return LinMap(phi.codomain, phi.domain, scaled)


def transpose_conjugate(phi: LinMap) -> LinMap:
    """The map ``x -> transpose(phi(transpose(x)))``.

    Conjugating by the blockwise transpose turns a map between algebras into
    the corresponding map between their opposite algebras.
    """
    qa = phi.domain.transpose_permutation()
    qb = phi.codomain.transpose_permutation()
    return LinMap(phi.domain, phi.codomain, phi.matrix[np.ix_(qb, qa)])


# -- structural checks --------------------------------------------------------


def is_unital(phi: LinMap, tol: float | None = None) -> tuple[bool, float]:
    defect = (phi(one(phi.domain)) - one(phi.codomain)).norm()
    tol = phi.codomain.default_tol() if tol is None else tol
    return defect <= tol, defect


def is_trace_preserving(phi: LinMap, tol: float | None = None) -> tuple[bool, float]:
    defect = 0.0
    for col, (k, i, j) in enumerate(phi.domain.units()):
        img = Element.from_coords(phi.codomain, phi.matrix[:, col])
        expected = 1.0 if i == j else 0.0
        defect = max(defect, abs(trace(img) - expected))
    tol = phi.codomain.default_tol() if tol is None else tol
    return defect <= tol, defect


def is_completely_positive(phi: LinMap, tol: float | None = None) -> tuple[bool, float]:
    """Complete positivity via positivity of the adjusted Choi operator."""
    from .choi import adjusted_choi
    from .algebra import is_positive

    c = adjusted_choi(phi)
    if tol is None:
        tol = c.algebra.default_tol()
    ok, defect = is_positive(c, tol)
    return ok, defect


def require_ucp(phi: LinMap, tol: float | None = None) -> tuple[float, float]:
    """Raise NotUCP unless the map is unital and completely positive;
    returns the two defects for reporting."""
    unital_ok, unital_defect = is_unital(phi, tol)
    cp_ok, cp_defect = is_completely_positive(phi, tol)
    if not (unital_ok and cp_ok):
        raise NotUCP(
            f"unital defect {unital_defect:.3e}, positivity defect {cp_defect:.3e}"
        )
    return unital_defect, cp_defect


# -- direct homomorphism oracle -----------------------------------------------


def multiplicativity_defects(phi: LinMap) -> tuple[float, float]:
    """Worst product and adjoint defects of ``phi`` over all basis pairs.

    Product defect: max ||phi(uv) - phi(u)phi(v)||_F over basis units u, v,
    using that a product of matrix units is again a unit or zero. Adjoint
    defect: max ||phi(u*) - phi(u)*||_F. Both vanish exactly on
    *-homomorphisms, so this is the brute-force oracle the structural
    criteria are compared against.
    """
    images = phi.images()
    dom = phi.domain
    unit_list = list(dom.units())
    mult = 0.0
    for k, i, j in unit_list:
        left = images[dom.unit_index(k, i, j)]
        for l, u, v in unit_list:
            right = images[dom.unit_index(l, u, v)]
            if l == k and u == j:
                prod = images[dom.unit_index(k, i, v)]
                defect = (prod - left * right).norm()
            else:
                defect = (left * right).norm()
            if defect > mult:
                mult = defect
    star = 0.0
    for k, i, j in unit_list:
        d = (images[dom.unit_index(k, j, i)] - images[dom.unit_index(k, i, j)].adjoint()).norm()
        if d > star:
            star = d
    return mult, star


def mult_defect(phi: LinMap) -> float:
    """Combined homomorphism defect (max of product and adjoint defects)."""
    mult, star = multiplicativity_defects(phi)
    return max(mult, star)


def depolarizing(algebra: Algebra) -> LinMap:
    """The completely depolarizing UCP map ``a -> (tr(a)/tr(1)) 1``."""
    unit = one(algebra)
    dim = algebra.trace_dim

    def act(a: Element) -> Element:
        return (trace(a) / dim) * unit

    return LinMap.from_function(algebra, algebra, act)
