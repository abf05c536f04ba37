"""Acceptance suite.

Each test exercises one acceptance criterion at its stated tolerance and
prints a single PASS/FAIL line (visible with ``pytest -s``). The shared map
population (>= 500 maps: homomorphisms, generic UCP maps, and perturbed
homomorphisms at eps in {0, 1e-3, 0.1}, dimensions up to [2,3] -> [6]) is
built once and reused.
"""

import math

import numpy as np
import pytest

from cstarhom.algebra import (
    Algebra,
    Element,
    adjusted_trace,
    hermitian_eigenvalues,
    is_projection,
    matrix_unit,
    one,
    op_transpose,
    tensor,
    tensor_elements,
)
from cstarhom.choi import (
    adjusted_choi,
    cj_dual_check,
    diagonal_projection,
    diagonal_projection_raw,
    projection_criterion,
    projection_variants,
    transpose_second_factor,
)
from cstarhom.entropy import (
    adjusted_entropy,
    default_entropy_tol,
    entropy,
    entropy_criterion,
    entropy_relation_check,
    monotonicity_refuter,
    pullback,
    state_from_density,
)
from cstarhom.linmap import (
    LinMap,
    apply_left,
    apply_right,
    dagger_adjoint,
    ddagger_adjoint,
    depolarizing,
    mult_defect,
)
from cstarhom.properties import (
    Config,
    algebra_pool,
    hom_pairs,
    map_population,
    ucp_pairs,
)
from cstarhom.randgen import (
    random_element,
    random_homomorphism,
    random_state,
    random_ucp,
)

TWO = Algebra((2,))


def _line(name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"\nACCEPTANCE {name}: {status}{suffix}")
    assert ok, f"{name} failed: {detail}"


@pytest.fixture(scope="module")
def population():
    cfg = Config(seed=0, max_dim=6)
    maps = map_population(cfg, n_hom=150, n_ucp=160, n_perturbed=210)
    assert len(maps) >= 500
    rows = []
    for label, phi in maps:
        tol = tensor(phi.codomain, phi.domain).default_tol()
        etol = default_entropy_tol(phi.codomain)
        rows.append(
            {
                "label": label,
                "tol": tol,
                "etol": etol,
                "mult": mult_defect(phi),
                "projection": is_projection(adjusted_choi(phi))[1],
                "gap": entropy_criterion(phi).gap,
                "variants": projection_variants(phi),
            }
        )
    return rows


def test_criterion_1_reproduction():
    # the diagonal embedding C^2 -> M_2 with the pure corner state
    cc = Algebra((1, 1))
    img1 = Element(TWO, [np.diag([1.0, 0.0])])
    img2 = Element(TWO, [np.diag([0.0, 1.0])])
    phi = LinMap.from_images(cc, TWO, [img1, img2])
    mu = state_from_density(TWO, Element(TWO, [np.full((2, 2), 0.5)]))

    s_mu = entropy(mu)
    s_pulled = entropy(pullback(mu, phi))
    ok_entropies = abs(s_mu) <= 1e-10 and abs(s_pulled - math.log(2)) <= 1e-10

    tol = tensor(TWO, cc).default_tol()
    by_mult = mult_defect(phi) <= tol
    by_projection = projection_criterion(phi)[0]
    by_entropy = entropy_criterion(phi).is_homomorphism
    _line(
        "1 embedding-state reproduction",
        ok_entropies and by_mult and by_projection and by_entropy,
        f"S(mu)={s_mu:.2e}, S(mu.phi)-log2={s_pulled - math.log(2):.2e}, "
        f"detectors={by_mult},{by_projection},{by_entropy}",
    )


def test_criterion_2_projection_equals_oracle(population):
    mismatches = sum(
        1
        for row in population
        if (row["projection"] <= row["tol"]) != (row["mult"] <= row["tol"])
    )
    _line(
        "2 projection criterion = direct oracle",
        mismatches == 0,
        f"{len(population) - mismatches}/{len(population)} agree",
    )


def test_criterion_3_entropy_equivalence(population):
    hom_rows = [r for r in population if r["label"] in ("hom", "perturbed:0")]
    ucp_rows = [r for r in population if r["label"] == "ucp"]
    worst_hom_gap = max(r["gap"] for r in hom_rows)
    min_ucp_gap = min(r["gap"] for r in ucp_rows)
    min_gap = min(r["gap"] for r in population)
    mismatches = sum(
        1
        for r in population
        if (r["gap"] <= r["etol"]) != (r["mult"] <= r["tol"])
    )
    ok = (
        all(r["gap"] <= r["etol"] for r in hom_rows)
        and min_ucp_gap >= 1e-4
        and mismatches == 0
        and min_gap >= -1e-7
    )
    _line(
        "3 entropy criterion equivalence",
        ok,
        f"worst hom gap {worst_hom_gap:.2e}, min generic gap {min_ucp_gap:.2e}, "
        f"min gap {min_gap:.2e}, {len(population) - mismatches}/{len(population)} agree",
    )


def test_criterion_4_depolarizing_benchmark():
    omega = depolarizing(TWO)
    criterion = entropy_criterion(omega)
    defect = is_projection(adjusted_choi(omega))[1]
    err_entropy = abs(criterion.adjusted_entropy - 4 * math.log(2))
    err_gap = abs(criterion.gap - 2 * math.log(2))
    err_defect = abs(defect - 3 / 8)
    ok = err_entropy <= 1e-10 and err_gap <= 1e-10 and err_defect <= 1e-10
    _line(
        "4 depolarizing benchmark",
        ok,
        f"entropy err {err_entropy:.2e}, gap err {err_gap:.2e}, defect err {err_defect:.2e}",
    )


def test_criterion_5_identity_suite():
    pool = algebra_pool(6)

    worst_pairing = 0.0
    for idx, a in enumerate(pool):
        e = diagonal_projection(a)
        for s in range(100):
            rng = np.random.default_rng([50, idx, s])
            x = random_element(a, rng)
            y = random_element(a, rng)
            lhs = adjusted_trace(e * tensor_elements(x, op_transpose(y)))
            worst_pairing = max(worst_pairing, abs(lhs - adjusted_trace(x * y)))

    worst_closed_form = max(
        max(abs(c) for c in (transpose_second_factor(diagonal_projection_raw(a))
                             - diagonal_projection(a)).coords())
        for a in pool
    )

    worst_transport = 0.0
    pairs = ucp_pairs(6)
    for i in range(100):
        a, b = pairs[i % len(pairs)]
        rng = np.random.default_rng([51, i])
        phi = random_ucp(a, b, seed=rng)
        if i % 2:  # exercise completely positive maps beyond unital ones
            phi = LinMap(a, b, float(rng.uniform(0.5, 2.0)) * phi.matrix)
        lhs = apply_left(ddagger_adjoint(phi), diagonal_projection_raw(b))
        rhs = apply_right(phi, diagonal_projection_raw(a))
        worst_transport = max(worst_transport, (lhs - rhs).norm())

    worst_domination = 0.0
    hpairs = hom_pairs(6)
    for i in range(100):
        a, b = hpairs[i % len(hpairs)]
        rng = np.random.default_rng([52, i])
        phi = random_homomorphism(a, b, rng)
        g = random_element(b, rng)
        pos = g * g.adjoint()
        gap = phi(ddagger_adjoint(phi)(pos)) - pos
        lam_min = min(float(v.min()) for v in hermitian_eigenvalues(gap))
        worst_domination = max(worst_domination, -lam_min)

    worst_relation = 0.0
    for i in range(100):
        a = pool[i % len(pool)]
        mu = random_state(a, np.random.default_rng([53, i]), rank_deficit=i % 3)
        worst_relation = max(worst_relation, entropy_relation_check(mu))

    ok = (
        worst_pairing <= 1e-10
        and worst_closed_form <= 1e-12
        and worst_transport <= 1e-9
        and worst_domination <= 1e-9
        and worst_relation <= 1e-10
    )
    _line(
        "5 operator-identity suite",
        ok,
        f"pairing {worst_pairing:.2e}, closed form {worst_closed_form:.2e}, "
        f"transport {worst_transport:.2e}, domination {worst_domination:.2e}, "
        f"relation {worst_relation:.2e}",
    )


def test_criterion_6_variant_agreement(population):
    disagreements = sum(
        1 for r in population if not r["variants"].agree(r["tol"])
    )
    hom_spread = max(
        max(r["variants"].defects()) - min(r["variants"].defects())
        for r in population
        if r["label"] in ("hom", "perturbed:0")
    )
    ok = disagreements == 0 and hom_spread <= 1e-9
    _line(
        "6 projection-variant agreement",
        ok,
        f"{len(population) - disagreements}/{len(population)} agree, "
        f"hom defect spread {hom_spread:.2e}",
    )


def test_criterion_7_refuter_soundness():
    pairs = hom_pairs(6)
    false_positives = 0
    for i in range(20):
        a, b = pairs[i % len(pairs)]
        phi = random_homomorphism(a, b, np.random.default_rng([54, i]))
        if monotonicity_refuter(phi, trials=200, k_max=2, seed=i) is not None:
            false_positives += 1
    found = monotonicity_refuter(depolarizing(TWO), trials=50, k_max=2, seed=0)
    ok = false_positives == 0 and found is not None
    _line(
        "7 refuter soundness",
        ok,
        f"0 false positives required (got {false_positives}); depolarizing witness "
        f"at trial {found.trial if found else 'none'}",
    )


def test_criterion_8_channel_state_duality():
    worst_identity = 0.0
    mismatches = 0
    i = 0
    for rep in range(7):
        for m in range(1, 5):
            for n in range(1, 5):
                if i >= 100:
                    break
                rng = np.random.default_rng([55, i])
                if m % n == 0 and i % 3 == 0:
                    ucp = random_homomorphism(Algebra((n,)), Algebra((m,)), rng)
                else:
                    ucp = random_ucp(Algebra((n,)), Algebra((m,)), seed=rng)
                psi = dagger_adjoint(ucp)  # trace-preserving CP, M_m -> M_n
                report = cj_dual_check(psi)
                # entrywise identity residual
                scaled = (m / n) * adjusted_choi(psi)
                from cstarhom.choi import conjugate_element, swap_factors

                diff = adjusted_choi(ucp) - conjugate_element(swap_factors(scaled))
                worst_identity = max(
                    worst_identity, max(abs(c) for c in diff.coords())
                )
                tol = tensor(ucp.codomain, ucp.domain).default_tol()
                if report.is_homomorphism != (mult_defect(ucp) <= tol):
                    mismatches += 1
                i += 1
    ok = worst_identity <= 1e-10 and mismatches == 0 and i >= 100
    _line(
        "8 channel-state duality",
        ok,
        f"{i} channels, worst identity residual {worst_identity:.2e}, "
        f"{mismatches} verdict mismatches",
    )


def test_criterion_9_base_covariance():
    omega = depolarizing(TWO)
    nat = entropy_criterion(omega)
    base2 = entropy_criterion(omega, base=2.0)
    scale = 1.0 / math.log(2)
    errs = [
        abs(base2.adjusted_entropy - nat.adjusted_entropy * scale),
        abs(base2.gap - nat.gap * scale),
        abs(base2.log_dim_codomain - nat.log_dim_codomain * scale),
    ]
    ok = max(errs) <= 1e-10 and base2.is_homomorphism == nat.is_homomorphism
    _line(
        "9 base covariance",
        ok,
        f"max rescaling error {max(errs):.2e}, verdict stable "
        f"{base2.is_homomorphism == nat.is_homomorphism}",
    )
