"""Self-check suite comparing the library against bundled reference values.

``quick`` runs the exact-arithmetic and reference-table checks in a few
seconds; ``full`` adds the envelope sweeps, the variance band, the local
approximation decay and seeded simulation concordance.

Two bundled reference entries are internally inconsistent with their own
defining formulas (the single-bank mean at a=20 and the centred prediction at
a=20, q=1).  The checks here compare against the formulas and report the
reference deviation in a note instead of failing; the discrepancies are
deliberately kept visible.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .asymptotics import (
    centred_mean_prediction,
    centring,
    decay_rate,
    exp_integral_e1,
    gumbel_cdf,
    local_pmf_approx,
    variance_bounds,
)
from .coupon import (
    BankSpec,
    cdf_oracle,
    expected_single_bank,
    expected_tests,
    expected_tests_multisum,
    single_bank_cdf,
    test_count_cdf,
    variance_tests,
)
from .simulate import SimulationConfig, run_experiment
from .tables import build_table

__all__ = ["CheckResult", "run_checks", "format_report", "LEVELS"]

LEVELS = ("quick", "full")

# Reference single-bank means as printed (2 d.p.) and as frozen evaluations
# of the defining sum a * H_a in exact rationals.  The printed a=20 entry is
# 0.0052 above its own formula; see the module docstring.
_SINGLE_PRINTED = {5: 11.42, 10: 29.29, 15: 49.77, 20: 71.96}
_SINGLE_EXACT = {
    5: 11.416666666666666,
    10: 29.28968253968254,
    15: 49.7734348984349,
    20: 71.95479314287364,
}

_MEAN_TABLE_PRINTED = {
    5: ("11.4", "17.8", "20.8", "23.8", "27.9", "31.0", "34.1"),
    10: ("29.3", "43.5", "49.9", "56.4", "65.0", "71.6", "78.1"),
    20: ("72.0", "102.0", "115.3", "128.7", "146.5", "160.0", "173.5"),
}

# Centred predictions as printed (1 d.p.).  The (a=20, q=1) entry is printed
# 68.7 but the defining formula log(a*q)/rate + gamma/rate gives 69.657; the
# check uses the formula for that cell and notes the print deviation.
_CENTRED_PRINTED = {
    5: (9.8, 17.0, 20.1, 23.2, 27.3, 30.4, 33.5),
    10: (27.3, 42.6, 49.2, 55.8, 64.5, 71.0, 77.6),
    20: (68.7, 101.0, 114.5, 128.1, 145.9, 159.4, 173.0),
}
_CENTRED_ERRATUM_CELL = (20, 1)
_CENTRED_ERRATUM_VALUE = 69.7

_SD_PRINTED = {
    2: (0.641, 2.537),
    3: (2.323, 3.823),
    4: (3.697, 5.107),
    5: (5.024, 6.390),
    10: (11.507, 12.804),
    20: (24.362, 25.630),
}

_FIG_LOW_PRINTED = {
    5: (11.4, 14, 15.7, 16.9, 17.8, 18.6, 19.2, 19.8, 20.3, 20.8,
        21.2, 21.6, 21.9, 22.2, 22.5, 22.8, 23.1, 23.3, 23.6, 23.8),
    10: (29.3, 35.2, 38.9, 41.5, 43.5, 45.2, 46.6, 47.8, 48.9, 49.9,
         50.8, 51.6, 52.3, 53, 53.7, 54.3, 54.9, 55.4, 55.9, 56.4),
    20: (72, 84.7, 92.3, 97.8, 102, 105.5, 108.5, 111, 113.3, 115.3,
         117.1, 118.8, 120.4, 121.8, 123.1, 124.4, 125.6, 126.7, 127.7, 128.7),
}
_FIG_HIGH_EXTRA_PRINTED = {
    5: (24.8, 25.6, 26.3, 26.9, 27.1, 27.3, 27.4, 27.5, 27.7, 27.9,
        28.7, 30, 31, 32.8, 34.1),
    10: (58.5, 60.2, 61.6, 62.9, 63.4, 63.8, 64, 64.2, 64.6, 65,
         66.7, 69.5, 71.6, 75.4, 78.1),
    20: (133, 136.6, 139.6, 142.2, 143.1, 144, 144.4, 144.9, 145.7, 146.5,
         150, 155.6, 160, 167.9, 173.5),
}

_MC_CONFIGS = ((10, 1), (10, 10), (5, 50), (20, 20))
_MC_REPS = 100_000
_MC_SEED = 1729


@dataclass(frozen=True)
class CheckResult:
    """One named check with its target, tolerance and observed value."""

    name: str
    target: str
    tolerance: str
    observed: str
    passed: bool
    note: str = ""


def _check_single_bank_mean() -> CheckResult:
    worst = 0.0
    notes = []
    for a, frozen in _SINGLE_EXACT.items():
        value = expected_single_bank(a)
        worst = max(worst, abs(value - frozen))
        deviation = abs(value - _SINGLE_PRINTED[a])
        if deviation > 0.005:
            notes.append(
                f"printed reference {_SINGLE_PRINTED[a]} for a={a} is {deviation:.4f} "
                "from its own defining sum; formula value used"
            )
    return CheckResult(
        name="single_bank_mean",
        target="a*H_a at a in (5, 10, 15, 20)",
        tolerance="1e-09 abs vs frozen exact values",
        observed=f"max deviation {worst:.2e}",
        passed=worst <= 1e-9,
        note="; ".join(notes),
    )


def _check_mean_table() -> CheckResult:
    table = build_table("en_q")
    worst = 0.0
    string_ok = True
    for (a, q, value, rounded), printed in zip(
        table.rows, (p for a in (5, 10, 20) for p in _MEAN_TABLE_PRINTED[a])
    ):
        worst = max(worst, abs(value - float(printed)))
        string_ok = string_ok and rounded == printed
    return CheckResult(
        name="mean_table",
        target="21 printed mean coverage times",
        tolerance="0.05 abs and exact 1 d.p. match",
        observed=f"max deviation {worst:.4f}, rounded strings {'match' if string_ok else 'differ'}",
        passed=worst <= 0.05 and string_ok,
    )


def _check_centred_table() -> CheckResult:
    worst = 0.0
    note = ""
    for a, printed_row in _CENTRED_PRINTED.items():
        for q, printed in zip((1, 5, 10, 20, 50, 100, 200), printed_row):
            predicted = centred_mean_prediction(a, q)
            reference = printed
            if (a, q) == _CENTRED_ERRATUM_CELL:
                reference = _CENTRED_ERRATUM_VALUE
                note = (
                    f"cell (a=20, q=1) printed {printed} disagrees with its defining "
                    f"formula ({predicted:.3f}); checked against the formula value"
                )
            worst = max(worst, abs(predicted - reference))
    return CheckResult(
        name="centred_table",
        target="21 printed centred predictions",
        tolerance="0.05 abs",
        observed=f"max deviation {worst:.4f}",
        passed=worst <= 0.05,
        note=note,
    )


def _check_centred_diff_band() -> CheckResult:
    lo, hi = math.inf, -math.inf
    for a in (5, 10, 20):
        for q in (20, 50, 100, 200):
            diff = expected_tests(BankSpec(a, q)).value - centred_mean_prediction(a, q)
            lo, hi = min(lo, diff), max(hi, diff)
    return CheckResult(
        name="centred_diff_band",
        target="mean minus prediction for q >= 20",
        tolerance="within [0.45, 0.65]",
        observed=f"range [{lo:.4f}, {hi:.4f}]",
        passed=lo >= 0.45 and hi <= 0.65,
    )


def _check_sd_table() -> CheckResult:
    table = build_table("sd_bounds")
    worst = 0.0
    for a, sd_min, sd_max in table.rows:
        ref_min, ref_max = _SD_PRINTED[a]
        worst = max(worst, abs(sd_min - ref_min), abs(sd_max - ref_max))
    return CheckResult(
        name="sd_bound_table",
        target="12 printed standard deviation bounds",
        tolerance="0.002 abs",
        observed=f"max deviation {worst:.5f}",
        passed=worst <= 0.002,
    )


def _check_exp_integral() -> CheckResult:
    value = exp_integral_e1(1.0)
    deviation = abs(value - 0.2194)
    return CheckResult(
        name="exp_integral_value",
        target="E1(1) = 0.2194",
        tolerance="1e-04 abs",
        observed=f"E1(1) = {value:.7f}, deviation {deviation:.2e}",
        passed=deviation <= 1e-4,
    )


def _check_oracle_agreement() -> CheckResult:
    worst = 0.0
    for a in range(1, 9):
        for y in range(a, 61):
            worst = max(worst, abs(single_bank_cdf(a, y).p - float(cdf_oracle(a, y))))
    return CheckResult(
        name="oracle_agreement",
        target="closed form vs surjection-count oracle, a <= 8, y <= 60",
        tolerance="1e-12 abs",
        observed=f"max deviation {worst:.2e}",
        passed=worst <= 1e-12,
    )


def _check_multisum_agreement() -> CheckResult:
    worst = 0.0
    cases = (
        [(a, 1) for a in range(1, 7)]
        + [(a, q) for a in range(1, 6) for q in (2, 3)]
        + [(a, 4) for a in range(1, 5)]
    )
    for a, q in cases:
        spec = BankSpec(a, q)
        worst = max(
            worst, abs(expected_tests_multisum(spec) - expected_tests(spec).value)
        )
    return CheckResult(
        name="multisum_agreement",
        target="alternating multi-sum vs series mean on the small grid",
        tolerance="1e-09 abs",
        observed=f"max deviation {worst:.2e}",
        passed=worst <= 1e-9,
    )


def _check_figure_data() -> CheckResult:
    worst = 0.0
    rounding_ok = True
    low = build_table("fig_low")
    by_cell = {(a, q): (v, r) for a, q, v, r in low.rows}
    printed_cells = [
        (a, q, printed)
        for a in (5, 10, 20)
        for q, printed in zip(range(1, 21), _FIG_LOW_PRINTED[a])
    ]
    high = build_table("fig_high")
    by_cell.update({(a, q): (v, r) for a, q, v, r in high.rows})
    extra_q = (25, 30, 35, 40, 42, 44, 45, 46, 48, 50, 60, 80, 100, 150, 200)
    printed_cells += [
        (a, q, printed)
        for a in (5, 10, 20)
        for q, printed in zip(extra_q, _FIG_HIGH_EXTRA_PRINTED[a])
    ]
    for a, q, printed in printed_cells:
        value, rounded = by_cell[(a, q)]
        worst = max(worst, abs(value - printed))
        # printed plot coordinates are mixed precision ("14" vs "14.0"),
        # so the rounding check is numeric rather than string equality
        rounding_ok = rounding_ok and float(rounded) == float(printed)
    return CheckResult(
        name="figure_data",
        target=f"{len(printed_cells)} printed plot coordinates",
        tolerance="0.05 abs and numeric 1 d.p. match",
        observed=f"max deviation {worst:.5f}, rounded values {'match' if rounding_ok else 'differ'}",
        passed=worst <= 0.05 and rounding_ok,
    )


def _cdf_values(a: int, n_max: int) -> np.ndarray:
    return np.array([single_bank_cdf(a, n).p for n in range(n_max + 1)])


def _check_sandwich_envelope() -> CheckResult:
    xs = np.arange(-3.0, 10.0 + 1e-9, 0.25)
    worst = -math.inf
    for a in (5, 10, 20):
        rate = decay_rate(a)
        for q in (10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6):
            centre = math.log(a * q) / rate
            cdf = _cdf_values(a, int(centre + xs[-1]) + 2)
            for x in xs:
                n = math.floor(centre + x)
                p = float(cdf[n]) ** q if n >= 0 else 0.0
                lower = gumbel_cdf(rate * (x - 1.0))
                upper = gumbel_cdf(rate * x)
                worst = max(worst, lower - p, p - upper)
    return CheckResult(
        name="sandwich_envelope",
        target="exact cdf against the Gumbel envelope, a in (5, 10, 20), q up to 1e6",
        tolerance="0.02 one-sided slack",
        observed=f"worst excursion {worst:.2e} (negative means strictly inside)",
        passed=worst <= 0.02,
    )


def _check_envelope_witness() -> CheckResult:
    a = 10
    rate = decay_rate(a)
    qs = np.arange(2, 10 ** 6 + 1, dtype=np.float64)
    centres = np.log(a * qs) / rate
    idx = np.floor(centres).astype(np.int64)
    cdf = _cdf_values(a, int(idx.max()) + 1)
    probs = cdf[idx] ** qs
    lo_gap = float(np.abs(probs - gumbel_cdf(-rate)).min())
    hi_gap = float(np.abs(probs - gumbel_cdf(0.0)).min())
    return CheckResult(
        name="envelope_witness",
        target="both envelope ends approached at x=0, a=10, q up to 1e6",
        tolerance="0.01",
        observed=f"closest approach {lo_gap:.2e} (lower), {hi_gap:.2e} (upper)",
        passed=lo_gap <= 0.01 and hi_gap <= 0.01,
    )


def _check_variance_band() -> CheckResult:
    worst = -math.inf
    for a in (5, 10, 20):
        value = variance_tests(BankSpec(a, 10_000)).value
        bounds = variance_bounds(a)
        worst = max(worst, bounds.var_lo - value, value - bounds.var_hi)
    return CheckResult(
        name="variance_band",
        target="series variance at q=1e4 inside the large-q band",
        tolerance="band widened by 0.5",
        observed=f"worst excursion {worst:.4f}",
        passed=worst <= 0.5,
    )


def _local_approx_error(a: int, q: int) -> float:
    spec = BankSpec(a, q)
    ceil = centring(a, q).centre_ceil
    worst = 0.0
    for offset in range(-40, 81):
        n = ceil + offset
        if n < 1:
            continue
        exact = test_count_cdf(spec, n).p - test_count_cdf(spec, n - 1).p
        worst = max(worst, abs(exact - local_pmf_approx(a, q, offset)))
    return worst


def _check_local_approx_decay() -> CheckResult:
    errors = [_local_approx_error(10, q) for q in (10 ** 2, 10 ** 4, 10 ** 6)]
    decreasing = all(errors[i + 1] <= 1.1 * errors[i] for i in range(len(errors) - 1))
    return CheckResult(
        name="local_approx_decay",
        target="max local approximation error at q = 1e2, 1e4, 1e6",
        tolerance="non-increasing with 10% slack",
        observed="errors " + ", ".join(f"{e:.2e}" for e in errors),
        passed=decreasing,
    )


def _check_simulation_concordance() -> tuple[CheckResult, CheckResult]:
    worst_sigma = 0.0
    byte_identical = True
    for a, q in _MC_CONFIGS:
        spec = BankSpec(a, q)
        result = run_experiment(SimulationConfig(spec, _MC_REPS, _MC_SEED))
        exact = expected_tests(spec).value
        worst_sigma = max(worst_sigma, abs(result.mean - exact) / result.std_error_mean)
        if (a, q) == (10, 10):
            again = run_experiment(SimulationConfig(spec, _MC_REPS, _MC_SEED, workers=2))
            byte_identical = json.dumps(result.histogram, sort_keys=True) == json.dumps(
                again.histogram, sort_keys=True
            )
    concordance = CheckResult(
        name="simulation_concordance",
        target=f"seeded means vs series means, {len(_MC_CONFIGS)} specs, {_MC_REPS} reps",
        tolerance="3 standard errors",
        observed=f"worst deviation {worst_sigma:.2f} standard errors",
        passed=worst_sigma <= 3.0,
    )
    determinism = CheckResult(
        name="simulation_determinism",
        target="identical histogram across worker counts (a=10, q=10)",
        tolerance="exact",
        observed="histograms identical" if byte_identical else "histograms differ",
        passed=byte_identical,
    )
    return concordance, determinism


def run_checks(level: str = "quick") -> list[CheckResult]:
    """Run the named check battery; ``level`` is ``quick`` or ``full``."""
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}, got {level!r}")
    results = [
        _check_single_bank_mean(),
        _check_mean_table(),
        _check_centred_table(),
        _check_centred_diff_band(),
        _check_sd_table(),
        _check_exp_integral(),
        _check_oracle_agreement(),
        _check_multisum_agreement(),
        _check_figure_data(),
    ]
    if level == "full":
        results.append(_check_sandwich_envelope())
        results.append(_check_envelope_witness())
        results.append(_check_variance_band())
        results.append(_check_local_approx_decay())
        results.extend(_check_simulation_concordance())
    return results


def format_report(results: list[CheckResult]) -> str:
    """Human-readable one-line-per-check report with a final summary."""
    width = max(len(r.name) for r in results)
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(
            f"{status} {r.name:<{width}}  {r.observed} (target: {r.target}; tol: {r.tolerance})"
        )
        if r.note:
            lines.append(f"     {'':<{width}}  note: {r.note}")
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines)
