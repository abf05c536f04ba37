"""Seeded generators for algebras' worth of test inputs.

All randomness flows through numpy's default PCG64 generator; every
function accepts either a 64-bit seed or an existing Generator, so a fixed
seed reproduces outputs bit-for-bit on one platform. The generators only
need to cover both verdict classes (homomorphisms and generic UCP maps);
no canonical measure on UCP maps is claimed.
"""

from __future__ import annotations

import itertools

import numpy as np

from .algebra import Algebra, Element, one
from .entropy import State, evaluate, state_from_density
from .errors import AlgebraMismatch, MultiplicityTooSmall, NoUnitalEmbedding
from .linmap import LinMap


def _as_generator(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_unitary(n: int, seed=0) -> np.ndarray:
    """Haar-random n x n unitary: QR of a complex Ginibre matrix with the
    phases of the R diagonal absorbed into Q."""
    rng = _as_generator(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_element(algebra: Algebra, seed=0, hermitian: bool = False) -> Element:
    """A random element with standard complex Gaussian entries per block."""
    rng = _as_generator(seed)
    blocks = []
    for n in algebra.blocks:
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        blocks.append(0.5 * (g + g.conj().T) if hermitian else g)
    return Element(algebra, blocks)


def random_projection(algebra: Algebra, seed=0) -> Element:
    """A random projection: a Haar-rotated 0/1 diagonal, blockwise."""
    rng = _as_generator(seed)
    blocks = []
    for n in algebra.blocks:
        u = random_unitary(n, rng)
        diag = rng.integers(0, 2, size=n).astype(np.complex128)
        blocks.append(u @ np.diag(diag) @ u.conj().T)
    return Element(algebra, blocks)


def random_state(algebra: Algebra, seed=0, rank_deficit: int = 0) -> State:
    """A random state: per-block Wishart densities with random block weights.

    ``rank_deficit`` zeroes that many randomly chosen eigenvalues (capped so
    at least one survives) and renormalizes; this exercises the
    0 log 0 = 0 path of the entropy functions.
    """
    rng = _as_generator(seed)
    weights = rng.dirichlet(np.ones(algebra.num_blocks))
    blocks = []
    for n, w in zip(algebra.blocks, weights):
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = g @ g.conj().T
        blocks.append(w * h / np.trace(h).real)
    if rank_deficit > 0:
        eigs = []  # (block, position, value, vector)
        decomps = []
        for k, b in enumerate(blocks):
            vals, vecs = np.linalg.eigh(b)
            decomps.append((vals.copy(), vecs))
            eigs.extend((k, i) for i in range(vals.size))
        deficit = min(rank_deficit, len(eigs) - 1)
        for pos in rng.choice(len(eigs), size=deficit, replace=False):
            k, i = eigs[int(pos)]
            decomps[k][0][i] = 0.0
        total = sum(vals.sum() for vals, _ in decomps)
        blocks = [
            (vecs * (vals / total)) @ vecs.conj().T for vals, vecs in decomps
        ]
    return state_from_density(algebra, Element(algebra, blocks))


# -- completely positive maps ---------------------------------------------------


def _representation(domain: Algebra, multiplicities: tuple[int, ...], a: Element) -> np.ndarray:
    parts = [
        np.kron(blk, np.eye(m))
        for blk, m in zip(a.blocks, multiplicities)
        if m > 0
    ]
    sizes = [p.shape[0] for p in parts]
    total = sum(sizes)
    out = np.zeros((total, total), dtype=np.complex128)
    pos = 0
    for p, s in zip(parts, sizes):
        out[pos : pos + s, pos : pos + s] = p
        pos += s
    return out


def ucp_from_stinespring(
    domain: Algebra,
    codomain: Algebra,
    multiplicities,
    isometries,
) -> LinMap:
    """Build ``a -> V_r* pi(a) V_r`` per codomain block.

    ``pi`` is the representation of the domain with the given block
    multiplicities; each codomain block gets its own isometry from its
    column space into the representation space. The result is unital and
    completely positive by construction.
    """
    mult = tuple(int(m) for m in multiplicities)
    if len(mult) != domain.num_blocks or any(m < 0 for m in mult):
        raise ValueError(f"bad multiplicities {multiplicities}")
    rep_dim = sum(m * n for m, n in zip(mult, domain.blocks))
    isometries = [np.asarray(v, dtype=np.complex128) for v in isometries]
    if len(isometries) != codomain.num_blocks:
        raise AlgebraMismatch("one isometry per codomain block required")
    for v, m in zip(isometries, codomain.blocks):
        if v.shape != (rep_dim, m):
            raise AlgebraMismatch(
                f"isometry shape {v.shape} != ({rep_dim}, {m})"
            )

    def act(a: Element) -> Element:
        pi_a = _representation(domain, mult, a)
        return Element(codomain, [v.conj().T @ pi_a @ v for v in isometries])

    return LinMap.from_function(domain, codomain, act)


def default_multiplicities(domain: Algebra, codomain: Algebra) -> tuple[int, ...]:
    """Smallest uniform multiplicity making the representation strictly
    larger than every codomain block, so sampled maps are generic."""
    target = codomain.trace_dim + 1
    m = -(-target // domain.trace_dim)  # ceil
    return tuple(m for _ in domain.blocks)


def random_ucp(
    domain: Algebra,
    codomain: Algebra,
    multiplicities=None,
    seed=0,
) -> LinMap:
    """A random unital completely positive map in Stinespring form.

    Raises MultiplicityTooSmall when the representation dimension is below
    the codomain's trace dimension.
    """
    rng = _as_generator(seed)
    if multiplicities is None:
        mult = default_multiplicities(domain, codomain)
    else:
        mult = tuple(int(m) for m in multiplicities)
    rep_dim = sum(m * n for m, n in zip(mult, domain.blocks))
    if rep_dim < codomain.trace_dim:
        raise MultiplicityTooSmall(
            f"representation dimension {rep_dim} < {codomain.trace_dim}"
        )
    isometries = [
        random_unitary(rep_dim, rng)[:, :m] for m in codomain.blocks
    ]
    return ucp_from_stinespring(domain, codomain, mult, isometries)


def embedding_multiplicities(domain: Algebra, codomain_block: int) -> list[tuple[int, ...]]:
    """All nonnegative multiplicity vectors ``c`` with sum c_k n_k equal to
    the codomain block size (bounded exhaustive search)."""
    ranges = [range(codomain_block // n + 1) for n in domain.blocks]
    return [
        c
        for c in itertools.product(*ranges)
        if sum(ck * nk for ck, nk in zip(c, domain.blocks)) == codomain_block
    ]


def random_homomorphism(domain: Algebra, codomain: Algebra, seed=0) -> LinMap:
    """A Haar-conjugated unital *-homomorphism.

    For each codomain block, block multiplicities solving the unitality
    equation are chosen uniformly among all solutions; a missing solution
    for any block raises NoUnitalEmbedding.
    """
    rng = _as_generator(seed)
    plans = []
    for m in codomain.blocks:
        sols = embedding_multiplicities(domain, m)
        if not sols:
            raise NoUnitalEmbedding(
                f"no multiplicities embed {domain.blocks} unitally into M_{m}"
            )
        plans.append(sols[int(rng.integers(len(sols)))])
    unitaries = [random_unitary(m, rng) for m in codomain.blocks]

    def act(a: Element) -> Element:
        out = []
        for m, plan, u in zip(codomain.blocks, plans, unitaries):
            rep = np.zeros((m, m), dtype=np.complex128)
            pos = 0
            for blk, c in zip(a.blocks, plan):
                if c == 0:
                    continue
                size = blk.shape[0] * c
                rep[pos : pos + size, pos : pos + size] = np.kron(blk, np.eye(c))
                pos += size
            out.append(u.conj().T @ rep @ u)
        return Element(codomain, out)

    return LinMap.from_function(domain, codomain, act)


def scrambling_map(codomain: Algebra, nu: State) -> LinMap:
    """The rank-one UCP map ``a -> nu(a) 1``."""
    unit = one(codomain)

    def act(a: Element) -> Element:
        return complex(evaluate(nu, a)) * unit

    return LinMap.from_function(nu.algebra, codomain, act)


def perturb_toward_scrambling(phi: LinMap, eps: float, seed=0) -> LinMap:
    """Convex combination ``(1-eps) phi + eps (a -> nu(a) 1)`` for a random
    state ``nu``; stays unital completely positive for eps in [0, 1]."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps {eps} outside [0, 1]")
    if eps == 0.0:
        return phi
    nu = random_state(phi.domain, seed)
    omega = scrambling_map(phi.codomain, nu)
    return LinMap(
        phi.domain,
        phi.codomain,
        (1.0 - eps) * phi.matrix + eps * omega.matrix,
    )
