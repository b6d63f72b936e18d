"""Built-in regression cases: each classical application encoded as a
named, machine-checkable record with its exact closed-form value.

Exact values are computed from the special-function layer alone (gamma,
the reflection factor, square roots, logarithms); the quadrature side only
ever appears in the left-hand evaluation, keeping the two routes
independent.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

from . import specfun, transforms
from .errors import RmtError
from .quadrature import EvaluationResult, QuadratureConfig
from .sequences import catalog_get
from .transforms import IdentityReport

__all__ = ["IdentityCase", "builtin_cases", "run_corpus", "scale_tolerances"]

_KINDS = ("frullani", "lemma2", "rmt", "hardy", "residue")

_SQRT_PI = specfun.gamma(0.5)

# Two-sided probe width for the residue cases.
_RESIDUE_EPS = 1e-4


@dataclass(frozen=True)
class IdentityCase:
    """One named identity check.

    ``order`` is the derivative order n, the exponent s, or the pole index
    m depending on ``kind``; scale parameters live in ``params``.
    The laguerre cases carry an absolute tolerance (their exact value is
    zero); all others are effectively relative since a report passes when
    either discrepancy is within tolerance.
    """

    name: str
    kind: str
    catalog_id: str
    params: dict = field(default_factory=dict)
    order: float = 0.0
    exact_value: float = 0.0
    tolerance: float = 1e-8
    description: str = ""

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown case kind {self.kind!r}")


def builtin_cases() -> list[IdentityCase]:
    """The standard corpus, in canonical order."""
    cases = [
        IdentityCase(
            name="euler_n3_a2",
            kind="rmt",
            catalog_id="exp",
            params={"a": 2.0},
            order=3.0,
            exact_value=specfun.gamma(3.0) / 8.0,
            tolerance=1e-9,
            description="Euler integral: x^2 e^(-2x) integrates to Gamma(3)/2^3",
        ),
        IdentityCase(
            name="euler_half",
            kind="rmt",
            catalog_id="exp",
            params={"a": 1.0},
            order=0.5,
            exact_value=_SQRT_PI,
            tolerance=1e-9,
            description="Euler integral at half order: Gamma(1/2) = sqrt(pi)",
        ),
        IdentityCase(
            name="beta_2_3",
            kind="rmt",
            catalog_id="power",
            params={"m": 5.0},
            order=2.0,
            exact_value=specfun.gamma(2.0) * specfun.gamma(3.0) / specfun.gamma(5.0),
            tolerance=1e-9,
            description="beta function B(2,3) via x/(1+x)^5; the catalog "
            "exponent m=5 is the total n+m of the classical statement",
        ),
        IdentityCase(
            name="gaussian",
            kind="lemma2",
            catalog_id="erf",
            order=1.0,
            exact_value=_SQRT_PI / 2.0,
            tolerance=1e-10,
            description="Gaussian integral: e^(-x^2) integrates to sqrt(pi)/2",
        ),
    ]
    for n in (2, 3, 4):
        cases.append(
            IdentityCase(
                name=f"hermite_{n}",
                kind="lemma2",
                catalog_id="erf",
                order=float(n),
                exact_value=(_SQRT_PI / 2.0) * specfun.gamma(float(n)),
                tolerance=1e-8,
                description=(
                    f"x^{n - 1} H_{n - 1}(x) e^(-x^2) integrates to "
                    f"sqrt(pi)/2 Gamma({n}); recovered from the erf "
                    "derivative by unwinding its Rodrigues factor"
                ),
            )
        )
    for n in (2, 3, 4):
        cases.append(
            IdentityCase(
                name=f"laguerre_zero_{n}",
                kind="lemma2",
                catalog_id="laguerre_weight",
                params={"n": float(n)},
                order=float(n),
                exact_value=0.0,
                tolerance=1e-9,
                description=(
                    f"x^{n - 1} L_{n}(x) e^(-x) integrates to 0 "
                    "(orthogonality); absolute tolerance"
                ),
            )
        )
    cases.extend(
        [
            IdentityCase(
                name="hardy_half",
                kind="hardy",
                catalog_id="geometric",
                order=0.5,
                exact_value=math.pi,
                tolerance=1e-8,
                description="x^(-1/2)/(1+x) integrates to pi/sin(pi/2) = pi",
            ),
            IdentityCase(
                name="frullani_exp",
                kind="frullani",
                catalog_id="exp",
                params={"a": 1.0, "alpha": 2.0, "beta": 1.0},
                exact_value=-math.log(2.0),
                tolerance=1e-9,
                description="Frullani integral of e^(-x) at scales 2 and 1",
            ),
        ]
    )
    for m in (0, 1, 2):
        sign = 1.0 if m % 2 == 0 else -1.0
        cases.append(
            IdentityCase(
                name=f"residue_m{m}",
                kind="residue",
                catalog_id="exp",
                params={"a": 1.0, "eps": _RESIDUE_EPS},
                order=float(m),
                exact_value=sign / specfun.gamma(m + 1.0),
                tolerance=1e-3,
                description=f"residue of Gamma at -{m} is (-1)^{m}/{m}!",
            )
        )
    cases.append(
        IdentityCase(
            name="harmonic_half",
            kind="rmt",
            catalog_id="harmonic_shifted",
            order=0.5,
            exact_value=2.0 * _SQRT_PI,
            tolerance=1e-7,
            description="x^(-3/2)(1 - e^(-x)) integrates to 2 sqrt(pi)",
        )
    )
    names = [c.name for c in cases]
    assert len(names) == len(set(names)), "case names must be unique"
    return cases


# The erf derivative carries the Rodrigues factor (-1)^(n-1) (2/sqrt(pi));
# dividing it out turns the raw lemma2 left side into the Hermite integral.
def _hermite_unwind(n: int) -> float:
    sign = 1.0 if (n - 1) % 2 == 0 else -1.0
    return sign * _SQRT_PI / 2.0


def _failed_report(identity: str, exact: float, tol: float, reason: str) -> IdentityReport:
    return IdentityReport(
        identity=identity,
        lhs=EvaluationResult(math.nan, math.inf, 0, False),
        rhs=exact,
        abs_discrepancy=math.inf,
        rel_discrepancy=math.inf,
        passed=False,
        tolerance_used=tol,
        warnings=(f"error: {reason}",),
    )


def _run_case(case: IdentityCase, cfg: QuadratureConfig | None) -> IdentityReport:
    params = dict(case.params)
    if case.kind == "frullani":
        alpha = params.pop("alpha")
        beta = params.pop("beta")
        pair = catalog_get(case.catalog_id, **params)
        return transforms.frullani(
            pair.closed_form,
            pair.f_at_zero,
            pair.f_at_infinity,
            alpha,
            beta,
            cfg,
            tolerance=case.tolerance,
        )
    if case.kind == "lemma2":
        pair = catalog_get(case.catalog_id, **params)
        n = int(case.order)
        report = transforms.lemma2(pair, n, cfg, tolerance=case.tolerance)
        if case.catalog_id == "erf":
            # Rescale the raw report to the Hermite integral it encodes.
            factor = _hermite_unwind(n)
            lhs = dataclasses.replace(
                report.lhs,
                value=factor * report.lhs.value,
                error_estimate=abs(factor) * report.lhs.error_estimate,
            )
            return transforms._report(
                report.identity, lhs, factor * report.rhs, case.tolerance,
                report.warnings,
            )
        return report
    if case.kind == "rmt":
        pair = catalog_get(case.catalog_id, **params)
        return transforms.rmt(pair, case.order, cfg, tolerance=case.tolerance)
    if case.kind == "hardy":
        pair = catalog_get(case.catalog_id, **params)
        return transforms.hardy(pair, case.order, cfg, tolerance=case.tolerance)
    if case.kind == "residue":
        eps = params.pop("eps", _RESIDUE_EPS)
        pair = catalog_get(case.catalog_id, **params)
        left, right = transforms.residue_check(pair, int(case.order), eps)
        lhs = EvaluationResult(left, abs(left - right), 2, True)
        return transforms._report("residue", lhs, right, case.tolerance)
    raise ValueError(f"unknown case kind {case.kind!r}")


def run_corpus(
    cases: list[IdentityCase],
    cfg: QuadratureConfig | None = None,
) -> list[tuple[IdentityCase, IdentityReport]]:
    """Evaluate each case; per-case errors become failed reports with the
    reason recorded, never aborting the batch.  Output preserves input
    order and is deterministic for a fixed config."""
    results = []
    for case in cases:
        try:
            report = _run_case(case, cfg)
        except RmtError as exc:
            report = _failed_report(case.kind, case.exact_value, case.tolerance, str(exc))
        except (OverflowError, ValueError) as exc:
            report = _failed_report(case.kind, case.exact_value, case.tolerance, str(exc))
        # The recorded exact value must agree with the closed-form side the
        # transform computed; a mismatch means the case itself is wrong.
        drift = abs(report.rhs - case.exact_value)
        if math.isfinite(report.rhs) and drift > max(1e-12, 1e-11 * abs(case.exact_value)):
            report = dataclasses.replace(
                report,
                passed=False,
                warnings=report.warnings
                + (f"closed form {report.rhs!r} disagrees with the recorded "
                   f"exact value {case.exact_value!r}",),
            )
        results.append((case, report))
    return results


def scale_tolerances(cases: list[IdentityCase], factor: float) -> list[IdentityCase]:
    """Copies of ``cases`` with every tolerance multiplied by ``factor``."""
    if not factor > 0.0:
        raise ValueError("tolerance scale must be positive")
    return [dataclasses.replace(c, tolerance=c.tolerance * factor) for c in cases]
