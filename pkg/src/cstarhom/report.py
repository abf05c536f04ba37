"""Aggregate homomorphism analysis and the machine-readable report.

Three independent detectors are run on a map: the brute-force
multiplicativity oracle, the adjusted-Choi projection test (plus its three
equivalent variants), and the entropy-gap test. The verdict is

  homomorphism   every primary defect at or below its tolerance,
  indeterminate  some defect falls strictly inside (tol, 10 tol),
  not            otherwise.

A clean pass on one detector combined with a clean fail on another (both
outside the indeterminate band) is an internal-consistency failure: it is
reported as such and mapped to an error exit, never silently resolved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import is_projection, tensor
from .choi import adjusted_choi, projection_variants
from .entropy import default_entropy_tol, entropy_criterion, monotonicity_refuter
from .fileio import defect_string, format_float
from .linmap import (
    LinMap,
    is_completely_positive,
    is_unital,
    multiplicativity_defects,
)

EXIT_HOMOMORPHISM = 0
EXIT_NOT = 1
EXIT_INDETERMINATE = 2
EXIT_PRECONDITION = 3
EXIT_PARSE = 4
EXIT_INTERNAL = 5


@dataclass(frozen=True)
class AnalysisResult:
    report: dict
    verdict: str
    exit_code: int


def _band(defect: float, tol: float) -> str:
    if defect <= tol:
        return "pass"
    if defect < 10.0 * tol:
        return "band"
    return "fail"


def analyze_map(
    phi: LinMap,
    source: str,
    tol: float | None = None,
    entropy_tol: float | None = None,
    log_base: str = "e",
    seed: int = 0,
    trials: int = 0,
    k_max: int = 4,
) -> AnalysisResult:
    """Run every detector on a map and assemble the report.

    ``tol`` governs the structural defects (multiplicativity and all
    projection defects) and defaults to the Choi algebra's tolerance;
    ``entropy_tol`` governs the entropy gap, is interpreted in natural-log
    units regardless of the reporting base, and defaults to 1e-8 times the
    codomain dimension. ``trials`` > 0 additionally runs the randomized
    monotonicity refuter with the given seed.
    """
    base_value = {"e": math.e, "2": 2.0, "10": 10.0}[log_base]
    choi_algebra = tensor(phi.codomain, phi.domain)
    structural_tol = choi_algebra.default_tol() if tol is None else float(tol)
    gap_tol = (
        default_entropy_tol(phi.codomain) if entropy_tol is None else float(entropy_tol)
    )

    report: dict = {
        "map": {
            "source": source,
            "domain": {"blocks": list(phi.domain.blocks)},
            "codomain": {"blocks": list(phi.codomain.blocks)},
        },
        "tolerances": {
            "structural_tol": structural_tol,
            "entropy_tol": gap_tol,
            "log_base": log_base,
        },
    }

    unital_ok, unital_defect = is_unital(phi, structural_tol)
    cp_ok, cp_defect = is_completely_positive(phi, structural_tol)
    report["ucp"] = {
        "unital_defect": defect_string(unital_defect),
        "cp_defect": defect_string(cp_defect),
        "ok": bool(unital_ok and cp_ok),
    }
    if not (unital_ok and cp_ok):
        report["error"] = "not a unital completely positive map"
        report["verdict"] = "error"
        return AnalysisResult(report, "error", EXIT_PRECONDITION)

    mult, star = multiplicativity_defects(phi)
    combined_mult = max(mult, star)
    projection_defect = is_projection(adjusted_choi(phi), structural_tol)[1]
    variants = projection_variants(phi)
    criterion = entropy_criterion(phi, tol=gap_tol, base=base_value)

    refuter: dict = {"trials": trials, "k_max": k_max, "seed": seed}
    if trials > 0:
        found = monotonicity_refuter(phi, trials, k_max, seed, base=base_value)
        if found is None:
            refuter["counterexample"] = None
        else:
            refuter["counterexample"] = {
                "trial": found.trial,
                "k": found.k,
                "entropy_state": format_float(found.entropy_state),
                "entropy_pullback": format_float(found.entropy_pullback),
            }
    else:
        refuter["counterexample"] = None

    report["criteria"] = {
        "mult_defect": defect_string(mult),
        "star_defect": defect_string(star),
        "combined_mult_defect": defect_string(combined_mult),
        "projection_defect": defect_string(projection_defect),
        "projection_variants": {
            "forward": defect_string(variants.forward),
            "backward": defect_string(variants.backward),
            "adjusted_density": defect_string(variants.adjusted_density),
            "density": defect_string(variants.density),
        },
        "entropy": {
            "adjusted_entropy": format_float(criterion.adjusted_entropy),
            "log_dim_codomain": format_float(criterion.log_dim_codomain),
            "gap": defect_string(criterion.gap),
        },
        "refuter": refuter,
    }

    # Verdict over the three primary defects; the variant defects join the
    # consistency check but not the verdict itself. The gap is compared in
    # natural-log units so the verdict is independent of the display base.
    gap_nat = criterion.gap * math.log(base_value)
    primary = [
        (combined_mult, structural_tol),
        (projection_defect, structural_tol),
        (gap_nat, gap_tol),
    ]
    checked = primary + [(d, structural_tol) for d in variants.defects()]
    bands = [_band(d, t) for d, t in primary]
    all_bands = [_band(d, t) for d, t in checked]
    consistent = not ("pass" in all_bands and "fail" in all_bands)
    report["internal_consistency"] = "ok" if consistent else "failure"

    if all(b == "pass" for b in bands):
        verdict, code = "homomorphism", EXIT_HOMOMORPHISM
    elif "band" in bands:
        verdict, code = "indeterminate", EXIT_INDETERMINATE
    else:
        verdict, code = "not", EXIT_NOT
    if not consistent:
        code = EXIT_INTERNAL
    report["verdict"] = verdict
    return AnalysisResult(report, verdict, code)
