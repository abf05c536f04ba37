"""States, entropies, and the entropy-based homomorphism criterion.

A state is stored via its density operator (positive, unit plain trace).
Two entropies are in play: the plain one, ``-tr(d log d)`` over the
eigenvalues of the density, and the adjusted one, ``-ttr(dt log dt)`` over
the adjusted density ``dt = d zeta^{-1}`` weighted by the adjusted trace.
They differ by the expectation of ``log zeta``, which is checked
numerically whenever both are computed.

``t log t`` is extended continuously by 0 at t = 0; eigenvalues below a
small clamp are treated as exact zeros so that rank-deficient densities
never produce NaNs.

All entropies are computed internally in natural log and rescaled to the
requested base at the end; tolerances are always interpreted in natural-log
units, which makes every verdict independent of the base.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import (
    Algebra,
    Element,
    hermitian_eigenvalues,
    is_positive,
    is_projection,
    one,
    tensor,
    trace,
)
from .choi import diagonal_projection
from .errors import (
    AlgebraMismatch,
    InternalSpectralError,
    NotADensity,
    NotAProjection,
    ZeroProjection,
)
from .linmap import LinMap, apply_left, dagger_adjoint, ddagger_adjoint, require_ucp

EIGENVALUE_CLAMP = 1e-14


def default_entropy_tol(algebra: Algebra) -> float:
    """Entropy tolerance, first order in eigenvalue error times dimension."""
    return 1e-8 * algebra.vec_dim


def _xlogx(eigenvalues: np.ndarray) -> np.ndarray:
    lam = np.where(eigenvalues < EIGENVALUE_CLAMP, 0.0, eigenvalues)
    out = np.zeros_like(lam)
    mask = lam > 0
    out[mask] = lam[mask] * np.log(lam[mask])
    return out


def _log_scale(base: float | None) -> float:
    if base is None:
        return 1.0
    b = float(base)
    if b <= 0 or b == 1.0:
        raise ValueError(f"invalid logarithm base {base}")
    return 1.0 / math.log(b)


class State:
    """A state on an algebra, stored via its density operator."""

    __slots__ = ("algebra", "density")

    def __init__(self, algebra: Algebra, density: Element):
        if density.algebra != algebra:
            raise AlgebraMismatch("density belongs to a different algebra")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "density", density)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("State is immutable")

    def __repr__(self) -> str:
        return f"State(blocks={self.algebra.blocks})"


def state_from_density(
    algebra: Algebra, density: Element, tol: float | None = None
) -> State:
    """Validate positivity and unit trace, then wrap as a state."""
    if density.algebra != algebra:
        raise AlgebraMismatch("density belongs to a different algebra")
    tol = algebra.default_tol() if tol is None else tol
    ok, defect = is_positive(density, tol)
    if not ok:
        raise NotADensity(f"positivity defect {defect:.3e}")
    tr = trace(density)
    if abs(tr - 1.0) > max(tol, 1e-12 * algebra.trace_dim):
        raise NotADensity(f"trace {tr:.6g} != 1")
    return State(algebra, density)


def adjusted_density(mu: State) -> Element:
    """The density for the adjusted trace: the plain density divided by the
    dimension operator (an exact per-block rescaling)."""
    return Element(
        mu.algebra,
        [b / n for n, b in zip(mu.algebra.blocks, mu.density.blocks)],
    )


def evaluate(mu: State, a: Element) -> complex:
    """The state applied to an element, computed redundantly through both
    trace pairings; a disagreement raises InternalSpectralError."""
    if a.algebra != mu.algebra:
        raise AlgebraMismatch("element belongs to a different algebra")
    via_trace = trace(a * mu.density)
    dt = adjusted_density(mu)
    via_adjusted = complex(
        sum(n * np.trace(x @ y) for n, x, y in zip(a.algebra.blocks, a.blocks, dt.blocks))
    )
    scale = max(1.0, abs(via_trace))
    if abs(via_trace - via_adjusted) > 1e-9 * scale * a.algebra.vec_dim:
        raise InternalSpectralError(
            f"trace pairings disagree: {via_trace} vs {via_adjusted}"
        )
    return via_trace


def uniform_state_on_projection(
    algebra: Algebra, p: Element, tol: float | None = None
) -> State:
    """The state ``a -> ttr(a p) / ttr(p)``; its density is ``p zeta/ttr(p)``."""
    if p.algebra != algebra:
        raise AlgebraMismatch("projection belongs to a different algebra")
    ok, defect = is_projection(p, tol)
    if not ok:
        raise NotAProjection(f"projection defect {defect:.3e}")
    weight = sum(
        float(n * np.trace(b).real) for n, b in zip(algebra.blocks, p.blocks)
    )
    if weight < 0.5:  # projections have integer adjusted trace >= 1
        raise ZeroProjection("uniform state on the zero projection")
    density = Element(
        algebra, [n * b / weight for n, b in zip(algebra.blocks, p.blocks)]
    )
    return State(algebra, density)


def uniform_state(algebra: Algebra) -> State:
    """The uniform state ``a -> ttr(a) / dim A``."""
    return uniform_state_on_projection(algebra, one(algebra))


def entropy(mu: State, base: float | None = None) -> float:
    """Entropy ``-tr(d log d)`` from the eigenvalues of the density."""
    total = sum(float(_xlogx(lam).sum()) for lam in hermitian_eigenvalues(mu.density))
    return -total * _log_scale(base)


def adjusted_entropy(mu: State, base: float | None = None) -> float:
    """Adjusted entropy ``-ttr(dt log dt)``.

    Computed spectrally from the adjusted density and cross-checked against
    the relation adjusted = plain + expectation of log zeta; a disagreement
    beyond 100x the entropy tolerance raises InternalSpectralError.
    """
    spectral = _adjusted_entropy_nat(mu)
    relation = _entropy_nat(mu) + _log_zeta_expectation_nat(mu)
    if abs(spectral - relation) > 100.0 * default_entropy_tol(mu.algebra):
        raise InternalSpectralError(
            f"adjusted entropy paths disagree: {spectral} vs {relation}"
        )
    return spectral * _log_scale(base)


def _entropy_nat(mu: State) -> float:
    return -sum(float(_xlogx(lam).sum()) for lam in hermitian_eigenvalues(mu.density))


def _adjusted_entropy_nat(mu: State) -> float:
    dt = adjusted_density(mu)
    total = 0.0
    for n, lam in zip(mu.algebra.blocks, hermitian_eigenvalues(dt)):
        total += n * float(_xlogx(lam).sum())
    return -total


def _log_zeta_expectation_nat(mu: State) -> float:
    return sum(
        math.log(n) * float(np.trace(b).real)
        for n, b in zip(mu.algebra.blocks, mu.density.blocks)
    )


def entropy_relation_check(mu: State, base: float | None = None) -> float:
    """Residual of adjusted = plain + expectation of log zeta."""
    residual = abs(
        _adjusted_entropy_nat(mu) - _entropy_nat(mu) - _log_zeta_expectation_nat(mu)
    )
    return residual * _log_scale(base)


def pullback(mu: State, phi: LinMap, ucp_tol: float | None = None) -> State:
    """Precompose a state with a UCP map; the new density is the plain
    adjoint applied to the old one."""
    if mu.algebra != phi.codomain:
        raise AlgebraMismatch("state does not live on the map's codomain")
    require_ucp(phi, ucp_tol)
    return state_from_density(phi.domain, dagger_adjoint(phi)(mu.density))


# -- deterministic entropy criterion -------------------------------------------


@dataclass(frozen=True)
class EntropyCriterion:
    """Outcome of the deterministic entropy test.

    ``gap`` is the adjusted entropy of the uniform diagonal state pulled
    back through the map, minus log of the codomain dimension. It vanishes
    (within tolerance) exactly for homomorphisms and is strictly positive
    otherwise; small negatives beyond the numerical floor indicate an
    internal error.
    """

    is_homomorphism: bool
    gap: float
    adjusted_entropy: float
    log_dim_codomain: float
    tol: float


def entropy_criterion(
    phi: LinMap,
    tol: float | None = None,
    base: float | None = None,
    ucp_tol: float | None = None,
) -> EntropyCriterion:
    """Homomorphism test via the adjusted entropy of the pulled-back uniform
    state on the codomain's diagonal projection."""
    require_ucp(phi, ucp_tol)
    b = phi.codomain
    dim_b = float(b.vec_dim)
    tol_nat = default_entropy_tol(b) if tol is None else float(tol)

    x = apply_left(ddagger_adjoint(phi), diagonal_projection(b))
    d_tilde = (1.0 / dim_b) * x
    total = 0.0
    for size, lam in zip(d_tilde.algebra.blocks, hermitian_eigenvalues(d_tilde)):
        # zeta of a materialized tensor block equals the block size
        total += size * float(_xlogx(lam).sum())
    s_tilde_nat = -total
    gap_nat = s_tilde_nat - math.log(dim_b)
    if gap_nat < -10.0 * tol_nat:
        raise InternalSpectralError(f"entropy gap {gap_nat:.3e} below numerical floor")

    scale = _log_scale(base)
    return EntropyCriterion(
        is_homomorphism=gap_nat <= tol_nat,
        gap=gap_nat * scale,
        adjusted_entropy=s_tilde_nat * scale,
        log_dim_codomain=math.log(dim_b) * scale,
        tol=tol_nat,
    )


# -- randomized monotonicity refuter --------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    """A state whose adjusted entropy increases under pullback.

    Its existence proves the map is not a homomorphism; the absence of one
    proves nothing (the deterministic criterion is the complete test).
    """

    trial: int
    k: int
    density: Element
    entropy_state: float
    entropy_pullback: float


def monotonicity_refuter(
    phi: LinMap,
    trials: int,
    k_max: int,
    seed: int,
    tol: float | None = None,
    base: float | None = None,
    ucp_tol: float | None = None,
) -> Counterexample | None:
    """Search for a violation of entropy monotonicity under ``phi (x) id``.

    Each trial draws a matrix-factor size ``k`` and a random state on the
    codomain tensored with ``M_k``, then compares adjusted entropies before
    and after pulling back. Deterministic given (seed, trials, k_max);
    per-trial generators are derived independently, so the first
    counterexample by trial index is well defined.
    """
    from .randgen import random_state

    require_ucp(phi, ucp_tol)
    a, b = phi.domain, phi.codomain
    dag = dagger_adjoint(phi)
    scale = _log_scale(base)
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        k = int(rng.integers(1, k_max + 1))
        factor = Algebra((k,))
        mu = random_state(tensor(b, factor), rng)
        pulled = state_from_density(
            tensor(a, factor), apply_left(dag, mu.density)
        )
        s_before = adjusted_entropy(mu)
        s_after = adjusted_entropy(pulled)
        tol_nat = (
            default_entropy_tol(mu.algebra) if tol is None else float(tol)
        )
        if s_after > s_before + tol_nat:
            return Counterexample(
                trial=t,
                k=k,
                density=mu.density,
                entropy_state=s_before * scale,
                entropy_pullback=s_after * scale,
            )
    return None
