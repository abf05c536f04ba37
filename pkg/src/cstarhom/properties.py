"""Named property suites: the numerical invariants the library must satisfy.

Each suite draws seeded random inputs, evaluates one family of identities,
and reports the number of checks, failures, and the worst residual seen.
The `verify` CLI command runs them all (or a selection) and fails when any
check fails. The acceptance tests reuse the same machinery at fixed sizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    Algebra,
    Element,
    adjusted_trace,
    conditional_expectation_center,
    dimension_operator,
    direct_sum,
    direct_sum_elements,
    hermitian_eigenvalues,
    is_positive,
    is_projection,
    matrix_unit,
    one,
    op_transpose,
    spectral,
    tensor,
    tensor_elements,
    trace,
    zero,
)
from .choi import (
    adjusted_choi,
    cj_dual_check,
    diagonal_projection,
    diagonal_projection_raw,
    projection_variants,
    transpose_second_factor,
)
from .entropy import (
    adjusted_entropy,
    default_entropy_tol,
    entropy,
    entropy_criterion,
    entropy_relation_check,
    monotonicity_refuter,
    uniform_state,
)
from .linmap import (
    LinMap,
    apply_left,
    apply_right,
    compose,
    dagger_adjoint,
    ddagger_adjoint,
    depolarizing,
    is_completely_positive,
    is_unital,
    map_distance,
    mult_defect,
    multiplicativity_defects,
    tensor_maps,
)
from .randgen import (
    perturb_toward_scrambling,
    random_element,
    random_homomorphism,
    random_projection,
    random_state,
    random_ucp,
    random_unitary,
)


@dataclass
class Config:
    """Knobs shared by all suites."""

    seeds: int = 100
    max_dim: int = 6
    trials: int = 200
    k_max: int = 2
    seed: int = 0
    poison: bool = False


@dataclass
class PropertyResult:
    name: str
    checks: int = 0
    failures: int = 0
    worst_residual: float = 0.0
    details: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def check(self, ok: bool, residual: float, message: str = "") -> None:
        self.checks += 1
        self.worst_residual = max(self.worst_residual, float(residual))
        if not ok:
            self.failures += 1
            if len(self.details) < 8:
                self.details.append(f"residual {residual:.3e} {message}".strip())

    def note(self, message: str) -> None:
        if len(self.details) < 8:
            self.details.append(message)


_ALGEBRA_POOL = [
    (1,),
    (2,),
    (3,),
    (4,),
    (1, 1),
    (1, 2),
    (2, 2),
    (2, 3),
    (1, 1, 2),
    (6,),
]

_HOM_PAIRS = [
    ((1,), (2,)),
    ((1, 1), (2,)),
    ((2,), (4,)),
    ((1, 2), (3,)),
    ((2, 2), (4,)),
    ((3,), (6,)),
    ((2, 3), (6,)),
    ((1, 1), (3,)),
]

# Pairs whose domain has more than one dimension: from a one-dimensional
# algebra every unital map is a homomorphism, so such pairs cannot supply
# generic (non-multiplicative) examples or meaningful perturbations.
_GENERIC_PAIRS = [pair for pair in _HOM_PAIRS if sum(n * n for n in pair[0]) > 1]

_UCP_PAIRS = _GENERIC_PAIRS + [
    ((2,), (3,)),
    ((3,), (2,)),
    ((2, 3), (4,)),
    ((1, 2), (2, 2)),
]


def algebra_pool(max_dim: int) -> list[Algebra]:
    return [Algebra(b) for b in _ALGEBRA_POOL if sum(b) <= max_dim]


def hom_pairs(max_dim: int) -> list[tuple[Algebra, Algebra]]:
    return [
        (Algebra(a), Algebra(b)) for a, b in _HOM_PAIRS if sum(b) <= max_dim
    ]


def ucp_pairs(max_dim: int) -> list[tuple[Algebra, Algebra]]:
    return [
        (Algebra(a), Algebra(b)) for a, b in _UCP_PAIRS if sum(b) <= max_dim
    ]


def _rng(cfg: Config, *tags: int) -> np.random.Generator:
    return np.random.default_rng([cfg.seed, *tags])


def perturbation_pairs(max_dim: int) -> list[tuple[Algebra, Algebra]]:
    return [
        (Algebra(a), Algebra(b)) for a, b in _GENERIC_PAIRS if sum(b) <= max_dim
    ]


def map_population(
    cfg: Config,
    n_hom: int,
    n_ucp: int,
    n_perturbed: int,
    eps_values: tuple[float, ...] = (0.0, 1e-3, 0.1),
) -> list[tuple[str, LinMap]]:
    """A labeled mix of homomorphisms, generic UCP maps, and perturbed
    homomorphisms, drawn round-robin over the dimension pool."""
    homs = hom_pairs(cfg.max_dim)
    ucps = ucp_pairs(cfg.max_dim)
    perturbable = perturbation_pairs(cfg.max_dim)
    population: list[tuple[str, LinMap]] = []
    for i in range(n_hom):
        a, b = homs[i % len(homs)]
        population.append(("hom", random_homomorphism(a, b, _rng(cfg, 1, i))))
    for i in range(n_ucp):
        a, b = ucps[i % len(ucps)]
        population.append(("ucp", random_ucp(a, b, seed=_rng(cfg, 2, i))))
    for i in range(n_perturbed):
        a, b = perturbable[i % len(perturbable)]
        eps = eps_values[i % len(eps_values)]
        base = random_homomorphism(a, b, _rng(cfg, 3, i))
        phi = perturb_toward_scrambling(base, eps, _rng(cfg, 4, i))
        population.append((f"perturbed:{eps:g}", phi))
    return population


# -- suites ----------------------------------------------------------------------


def suite_traces(cfg: Config) -> PropertyResult:
    """Trace pairs, faithfulness, and dimension-operator identities."""
    res = PropertyResult("traces")
    pool = algebra_pool(cfg.max_dim)
    reps = max(10, cfg.seeds // 5)
    for idx, a in enumerate(pool):
        r = abs(adjusted_trace(one(a)) - a.vec_dim)
        res.check(r <= 1e-12 * a.vec_dim, r, f"ttr(1) on {a.blocks}")
        for s in range(reps):
            rng = _rng(cfg, 10, idx, s)
            x = random_element(a, rng)
            y = random_element(a, rng)
            scale = max(1.0, x.norm() * y.norm())
            r = abs(trace(x * y) - trace(y * x)) / scale
            res.check(r <= 1e-12, r, f"tr symmetry on {a.blocks}")
            r = abs(adjusted_trace(x * y) - adjusted_trace(y * x)) / scale
            res.check(r <= 1e-12 * a.trace_dim, r, f"ttr symmetry on {a.blocks}")
            value = adjusted_trace(x.adjoint() * x)
            ok = value.real > 0 and abs(value.imag) <= 1e-10 * max(1.0, value.real)
            res.check(ok, max(0.0, -value.real), f"faithfulness on {a.blocks}")
    for i, a in enumerate(pool):
        b = pool[(i + 1) % len(pool)]
        za, zb = dimension_operator(a), dimension_operator(b)
        r = (dimension_operator(direct_sum(a, b)) - direct_sum_elements(za, zb)).norm()
        res.check(r == 0.0, r, "zeta of direct sum")
        r = (dimension_operator(tensor(a, b)) - tensor_elements(za, zb)).norm()
        res.check(r == 0.0, r, "zeta of tensor product")
        r = (op_transpose(za) - za).norm()
        res.check(r == 0.0, r, "zeta under transpose")
    return res


def suite_center_expectation(cfg: Config) -> PropertyResult:
    """The blockwise normalized-trace map projects onto the center."""
    res = PropertyResult("center_expectation")
    for idx, a in enumerate(algebra_pool(cfg.max_dim)):
        central_units = [
            Element(a, [np.eye(n) if k == j else np.zeros((n, n)) for j, n in enumerate(a.blocks)])
            for k in range(a.num_blocks)
        ]
        for s in range(max(10, cfg.seeds // 5)):
            rng = _rng(cfg, 20, idx, s)
            x = random_element(a, rng)
            e_x = conditional_expectation_center(x)
            r = (conditional_expectation_center(e_x) - e_x).norm()
            res.check(r <= 1e-12 * max(1.0, x.norm()), r, "idempotence")
            coeffs = rng.standard_normal(a.num_blocks) + 1j * rng.standard_normal(a.num_blocks)
            central = Element(
                a, [c * np.eye(n) for c, n in zip(coeffs, a.blocks)]
            )
            r = (conditional_expectation_center(central) - central).norm()
            res.check(r <= 1e-12 * max(1.0, central.norm()), r, "center fixed")
            worst = 0.0
            for z in central_units:
                worst = max(
                    worst, abs(adjusted_trace(e_x * z) - adjusted_trace(x * z))
                )
            res.check(worst <= 1e-10 * max(1.0, x.norm()), worst, "ttr characterization")
    return res


def suite_diagonal_closed_form(cfg: Config) -> PropertyResult:
    """The partial transpose carries the raw diagonal sum onto the stored
    projection, which really is a projection of full adjusted trace."""
    res = PropertyResult("diagonal_closed_form")
    for a in algebra_pool(cfg.max_dim):
        e = diagonal_projection(a)
        raw = diagonal_projection_raw(a)
        diff = transpose_second_factor(raw) - e
        r = max(abs(c) for c in diff.coords())
        res.check(r <= 1e-12, r, f"transport on {a.blocks}")
        r = is_projection(e)[1]
        res.check(r <= 1e-12, r, f"projection defect on {a.blocks}")
        r = abs(adjusted_trace(e) - a.vec_dim)
        res.check(r <= 1e-10, r, f"ttr(diagonal) on {a.blocks}")
        if all(n == 1 for n in a.blocks):
            r = (raw - e).norm()
            res.check(r == 0.0, r, "commutative: raw equals stored")
    return res


def suite_diagonal_trace_identity(cfg: Config) -> PropertyResult:
    """ttr of the diagonal projection against a (x) transpose(b) recovers
    ttr(ab)."""
    res = PropertyResult("diagonal_trace_identity")
    for idx, a in enumerate(algebra_pool(cfg.max_dim)):
        e = diagonal_projection(a)
        for s in range(cfg.seeds):
            rng = _rng(cfg, 30, idx, s)
            x = random_element(a, rng)
            y = random_element(a, rng)
            lhs = adjusted_trace(e * tensor_elements(x, op_transpose(y)))
            rhs = adjusted_trace(x * y)
            r = abs(lhs - rhs)
            res.check(r <= 1e-10, r, f"on {a.blocks}")
    return res


def suite_diagonal_orthogonality(cfg: Config) -> PropertyResult:
    """The stored diagonal projection kills p (x) transpose(1 - p) for
    every projection p."""
    res = PropertyResult("diagonal_orthogonality")
    for idx, a in enumerate(algebra_pool(cfg.max_dim)):
        e = diagonal_projection(a)
        unit = one(a)
        projections = [zero(a), unit]
        for s in range(max(10, cfg.seeds // 5)):
            rng = _rng(cfg, 40, idx, s)
            projections.append(random_projection(a, rng))
            h = random_element(a, rng, hermitian=True)
            dec = spectral(h)
            take = rng.integers(0, 2, size=len(dec.projections))
            acc = zero(a)
            for keep, p in zip(take, dec.projections):
                if keep:
                    acc = acc + p
            projections.append(acc)
        for p in projections:
            r = (e * tensor_elements(p, op_transpose(unit - p))).norm()
            res.check(r <= 1e-10, r, f"on {a.blocks}")
    return res


def suite_adjoints(cfg: Config) -> PropertyResult:
    """Defining identities and algebraic laws of the two adjoints."""
    res = PropertyResult("adjoints")
    pairs = ucp_pairs(cfg.max_dim)
    reps = max(5, cfg.seeds // 10)
    for idx, (a, b) in enumerate(pairs):
        for s in range(reps):
            rng = _rng(cfg, 50, idx, s)
            phi = random_ucp(a, b, seed=rng)
            dag = dagger_adjoint(phi)
            ddag = ddagger_adjoint(phi)
            x = random_element(a, rng)
            y = random_element(b, rng)
            scale = max(1.0, x.norm() * y.norm())
            r = abs(trace(phi(x) * y) - trace(x * dag(y))) / scale
            res.check(r <= 1e-10, r, "plain adjoint identity")
            r = abs(adjusted_trace(phi(x) * y) - adjusted_trace(x * ddag(y))) / scale
            res.check(r <= 1e-10 * b.trace_dim, r, "adjusted adjoint identity")
            r = map_distance(dagger_adjoint(dag), phi)
            res.check(r <= 1e-12, r, "dagger involution")
            r = map_distance(ddagger_adjoint(ddag), phi)
            res.check(r <= 1e-12, r, "ddagger involution")
            ok, defect = is_completely_positive(dag)
            res.check(ok, defect, "dagger of CP is CP")
            psi = random_ucp(b, a, seed=rng)
            lhs = ddagger_adjoint(compose(phi, psi))
            rhs = compose(ddagger_adjoint(psi), ddag)
            r = map_distance(lhs, rhs)
            res.check(r <= 1e-10, r, "ddagger reverses composition")
        ident = LinMap.identity(a)
        r = map_distance(ddagger_adjoint(ident), ident)
        res.check(r <= 1e-13, r, "identity is ddagger-fixed")
    small = [p for p in pairs if tensor(p[0], p[0]).vec_dim <= 64][:3]
    for idx, (a, b) in enumerate(small):
        rng = _rng(cfg, 51, idx)
        phi = random_ucp(a, b, seed=rng)
        psi = random_ucp(a, b, seed=rng)
        lhs = ddagger_adjoint(tensor_maps(phi, psi))
        rhs = tensor_maps(ddagger_adjoint(phi), ddagger_adjoint(psi))
        r = map_distance(lhs, rhs)
        res.check(r <= 1e-10, r, "ddagger distributes over tensor")
    return res


def suite_diagonal_transport(cfg: Config) -> PropertyResult:
    """Both raw transports of the diagonal projection agree: the adjusted
    adjoint applied on the left equals the map applied on the right."""
    res = PropertyResult("diagonal_transport")
    pairs = ucp_pairs(cfg.max_dim)
    for idx, (a, b) in enumerate(pairs):
        raw_a = diagonal_projection_raw(a)
        raw_b = diagonal_projection_raw(b)
        for s in range(max(10, cfg.seeds // len(pairs))):
            rng = _rng(cfg, 60, idx, s)
            phi = random_ucp(a, b, seed=rng)
            scale = float(rng.uniform(0.5, 2.0))
            scaled = LinMap(a, b, scale * phi.matrix)  # CP, not unital
            for m in (phi, scaled):
                ddag = ddagger_adjoint(m)
                if cfg.poison:
                    ddag = LinMap(ddag.domain, ddag.codomain, -ddag.matrix)
                lhs = apply_left(ddag, raw_b)
                rhs = apply_right(m, raw_a)
                r = (lhs - rhs).norm()
                res.check(r <= 1e-9, r, f"{a.blocks}->{b.blocks}")
    return res


def suite_ddagger_domination(cfg: Config) -> PropertyResult:
    """For a homomorphism, the round trip through the adjusted adjoint
    dominates every positive element."""
    res = PropertyResult("ddagger_domination")
    pairs = hom_pairs(cfg.max_dim)
    for idx, (a, b) in enumerate(pairs):
        for s in range(max(10, cfg.seeds // len(pairs))):
            rng = _rng(cfg, 70, idx, s)
            phi = random_homomorphism(a, b, rng)
            g = random_element(b, rng)
            pos = g * g.adjoint()
            gap = phi(ddagger_adjoint(phi)(pos)) - pos
            lam_min = min(
                float(v.min()) if v.size else 0.0 for v in hermitian_eigenvalues(gap)
            )
            res.check(lam_min >= -1e-9, max(0.0, -lam_min), f"{a.blocks}->{b.blocks}")
    return res


def suite_entropy_relation(cfg: Config) -> PropertyResult:
    """Adjusted entropy = plain entropy + expected log of the dimension
    operator, including on rank-deficient states."""
    res = PropertyResult("entropy_relation")
    for idx, a in enumerate(algebra_pool(cfg.max_dim)):
        for s in range(cfg.seeds):
            rng = _rng(cfg, 80, idx, s)
            deficit = int(rng.integers(0, 3)) if s % 3 == 0 else 0
            mu = random_state(a, rng, rank_deficit=deficit)
            r = entropy_relation_check(mu)
            res.check(r <= 1e-10, r, f"on {a.blocks} (deficit {deficit})")
            if all(n == 1 for n in a.blocks):
                r = abs(adjusted_entropy(mu) - entropy(mu))
                res.check(r == 0.0, r, "commutative: entropies equal")
    return res


def suite_projection_variants(cfg: Config) -> PropertyResult:
    """The four equivalent projection constructions give one verdict, and
    nearly identical defects on homomorphisms."""
    res = PropertyResult("projection_variants")
    population = map_population(
        cfg, n_hom=cfg.seeds // 4, n_ucp=cfg.seeds // 4, n_perturbed=cfg.seeds // 2
    )
    for label, phi in population:
        tol = tensor(phi.codomain, phi.domain).default_tol()
        variants = projection_variants(phi)
        res.check(variants.agree(tol), max(variants.defects()), f"agreement ({label})")
        if label == "hom":
            defects = variants.defects()
            spread = max(defects) - min(defects)
            res.check(spread <= 1e-9, spread, "defect spread on homomorphism")
    return res


def suite_entropy_gap(cfg: Config) -> PropertyResult:
    """Sign and separation of the entropy gap, and its agreement with the
    direct oracle and the projection criterion."""
    res = PropertyResult("entropy_gap")
    population = map_population(
        cfg, n_hom=cfg.seeds // 4, n_ucp=cfg.seeds // 4, n_perturbed=cfg.seeds // 2
    )
    for label, phi in population:
        tol = tensor(phi.codomain, phi.domain).default_tol()
        etol = default_entropy_tol(phi.codomain)
        criterion = entropy_criterion(phi)
        res.check(criterion.gap >= -1e-7, max(0.0, -1e-7 - criterion.gap), "gap floor")
        by_mult = mult_defect(phi) <= tol
        by_proj = is_projection(adjusted_choi(phi))[1] <= tol
        by_gap = criterion.gap <= etol
        res.check(
            by_mult == by_proj == by_gap,
            abs(criterion.gap),
            f"three-way agreement ({label})",
        )
        if label == "hom":
            res.check(criterion.gap <= etol, criterion.gap, "gap on homomorphism")
        if label == "ucp":
            res.check(criterion.gap >= 1e-4, criterion.gap, "gap on generic map")
    return res


def suite_refuter(cfg: Config) -> PropertyResult:
    """The randomized monotonicity search is sound: silent on
    homomorphisms, and quickly finds a witness for the depolarizing map."""
    res = PropertyResult("refuter")
    pairs = hom_pairs(cfg.max_dim)
    for idx in range(5):
        a, b = pairs[idx % len(pairs)]
        phi = random_homomorphism(a, b, _rng(cfg, 90, idx))
        found = monotonicity_refuter(
            phi, trials=cfg.trials, k_max=cfg.k_max, seed=cfg.seed + idx
        )
        res.check(found is None, 0.0 if found is None else 1.0, "hom refuted (bug)")
    omega = depolarizing(Algebra((2,)))
    found = monotonicity_refuter(omega, trials=50, k_max=2, seed=cfg.seed)
    res.check(found is not None, 0.0, "no witness for depolarizing map")
    if found is not None:
        res.note(
            f"depolarizing witness at trial {found.trial}: "
            f"{found.entropy_state:.6f} -> {found.entropy_pullback:.6f}"
        )
    return res


def suite_cj_duality(cfg: Config) -> PropertyResult:
    """Channel-state duality: the conjugate-swap identity and verdict
    agreement between the rescaled Choi projection test and the oracle on
    the adjoint."""
    res = PropertyResult("cj_duality")
    count = 0
    idx = 0
    while count < cfg.seeds:
        for m in range(1, 5):
            for n in range(1, 5):
                rng = _rng(cfg, 100, idx)
                idx += 1
                if m % n == 0 and idx % 2 == 0:
                    ucp = random_homomorphism(Algebra((n,)), Algebra((m,)), rng)
                else:
                    ucp = random_ucp(Algebra((n,)), Algebra((m,)), seed=rng)
                psi = dagger_adjoint(ucp)  # trace-preserving CP, M_m -> M_n
                rep = cj_dual_check(psi)
                res.check(rep.conjugate_identity_residual <= 1e-10,
                          rep.conjugate_identity_residual, f"conjugate identity m={m} n={n}")
                tol = tensor(ucp.codomain, ucp.domain).default_tol()
                oracle = mult_defect(ucp) <= tol
                res.check(rep.is_homomorphism == oracle, rep.projection_defect,
                          f"verdict match m={m} n={n}")
                count += 1
                if count >= cfg.seeds:
                    return res
    return res


def suite_generators(cfg: Config) -> PropertyResult:
    """Contracts of the random generators, including determinism."""
    res = PropertyResult("generators")
    for s in range(max(10, cfg.seeds // 5)):
        rng = _rng(cfg, 110, s)
        n = int(rng.integers(1, 7))
        u = random_unitary(n, rng)
        r = float(np.linalg.norm(u.conj().T @ u - np.eye(n)))
        res.check(r <= 1e-12, r, "unitarity")
    two = Algebra((2,))
    u1 = random_unitary(3, 12345)
    u2 = random_unitary(3, 12345)
    r = float(np.abs(u1 - u2).max())
    res.check(r == 0.0, r, "unitary determinism")
    m1 = random_ucp(two, two, seed=777).matrix
    m2 = random_ucp(two, two, seed=777).matrix
    r = float(np.abs(m1 - m2).max())
    res.check(r == 0.0, r, "ucp determinism")
    for idx, (a, b) in enumerate(ucp_pairs(cfg.max_dim)):
        phi = random_ucp(a, b, seed=_rng(cfg, 111, idx))
        ok, defect = is_unital(phi, 1e-10)
        res.check(ok, defect, "generated map unital")
        lam = min(
            float(v.min())
            for v in hermitian_eigenvalues(adjusted_choi(phi))
        )
        res.check(lam >= -1e-10, max(0.0, -lam), "generated map CP")
    for idx, (a, b) in enumerate(hom_pairs(cfg.max_dim)):
        phi = random_homomorphism(a, b, _rng(cfg, 112, idx))
        r = mult_defect(phi)
        res.check(r <= 1e-12, r, "generated homomorphism exact")
        same = perturb_toward_scrambling(phi, 0.0, _rng(cfg, 113, idx))
        res.check(map_distance(same, phi) == 0.0, 0.0, "eps=0 perturbation")
        full = perturb_toward_scrambling(phi, 1.0, _rng(cfg, 114, idx))
        if a.vec_dim > 1:
            r = mult_defect(full)
            res.check(r > 0.01, r, "eps=1 scrambles")
    worst = math.inf
    for s in range(min(cfg.seeds, 100)):
        phi = random_ucp(two, two, multiplicities=(2,), seed=_rng(cfg, 115, s))
        worst = min(worst, mult_defect(phi))
    res.check(worst > 0.01, worst, "generic maps are non-multiplicative")
    res.note(f"minimum generic mult defect over {min(cfg.seeds, 100)} seeds: {worst:.4f}")
    return res


def suite_perturbation_monotonicity(cfg: Config) -> PropertyResult:
    """Shrinking the scrambling weight shrinks all three defect families."""
    res = PropertyResult("perturbation_monotonicity")
    pairs = perturbation_pairs(cfg.max_dim)
    for idx in range(4):
        a, b = pairs[idx % len(pairs)]
        phi = random_homomorphism(a, b, _rng(cfg, 120, idx))
        rows = []
        for eps in (1e-2, 1e-4, 1e-6):
            pert = perturb_toward_scrambling(phi, eps, _rng(cfg, 121, idx))
            rows.append(
                (
                    mult_defect(pert),
                    is_projection(adjusted_choi(pert))[1],
                    entropy_criterion(pert).gap,
                )
            )
        for col in range(3):
            decreasing = rows[0][col] > rows[1][col] > rows[2][col]
            res.check(decreasing, rows[2][col], f"column {col} not decreasing")
        res.note(
            "defects at eps 1e-2/1e-4/1e-6: "
            + "; ".join(f"({m:.3e}, {p:.3e}, {g:.3e})" for m, p, g in rows)
        )
    return res


def suite_base_covariance(cfg: Config) -> PropertyResult:
    """Changing the logarithm base rescales all entropies by 1/ln(base)
    and never changes a verdict."""
    res = PropertyResult("base_covariance")
    omega = depolarizing(Algebra((2,)))
    nat = entropy_criterion(omega)
    for base in (2.0, 10.0):
        scaled = entropy_criterion(omega, base=base)
        factor = math.log(base)
        for got, want in (
            (scaled.gap * factor, nat.gap),
            (scaled.adjusted_entropy * factor, nat.adjusted_entropy),
            (scaled.log_dim_codomain * factor, nat.log_dim_codomain),
        ):
            r = abs(got - want)
            res.check(r <= 1e-10, r, f"base {base} rescaling")
        res.check(
            scaled.is_homomorphism == nat.is_homomorphism, 0.0, "verdict changed"
        )
    for idx, a in enumerate(algebra_pool(cfg.max_dim)[:4]):
        mu = random_state(a, _rng(cfg, 130, idx))
        s_nat = adjusted_entropy(mu)
        for base in (2.0, 10.0):
            r = abs(adjusted_entropy(mu, base=base) * math.log(base) - s_nat)
            res.check(r <= 1e-10, r, "state entropy rescaling")
    return res


SUITES = {
    "traces": suite_traces,
    "center_expectation": suite_center_expectation,
    "diagonal_closed_form": suite_diagonal_closed_form,
    "diagonal_trace_identity": suite_diagonal_trace_identity,
    "diagonal_orthogonality": suite_diagonal_orthogonality,
    "adjoints": suite_adjoints,
    "diagonal_transport": suite_diagonal_transport,
    "ddagger_domination": suite_ddagger_domination,
    "entropy_relation": suite_entropy_relation,
    "projection_variants": suite_projection_variants,
    "entropy_gap": suite_entropy_gap,
    "refuter": suite_refuter,
    "cj_duality": suite_cj_duality,
    "generators": suite_generators,
    "perturbation_monotonicity": suite_perturbation_monotonicity,
    "base_covariance": suite_base_covariance,
}


def run_suites(names: list[str] | None, cfg: Config) -> list[PropertyResult]:
    selected = list(SUITES) if not names else names
    unknown = [n for n in selected if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown property suites: {unknown}; known: {list(SUITES)}")
    return [SUITES[n](cfg) for n in selected]
