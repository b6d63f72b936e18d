"""The integral identities, each computed as two independent sides.

Every operation returns an IdentityReport whose left side comes from
adaptive quadrature and whose right side is evaluated in closed form from
the special-function layer; the two never share a code path, which is what
makes the comparison a check rather than a tautology.

Identity summary (f has limits f(0), f(inf); F(x) = sum phi(k)(-x)^k/k!):

  frullani   integral (f(ax) - f(bx))/x dx        = (f(inf)-f(0)) ln(a/b)
  lemma2     integral x^(n-1) f^(n)(x) dx         = (-1)^(n-1) (f(inf)-f(0)) Gamma(n)
  rmt        integral x^(s-1) F(x) dx             = Gamma(s) phi(-s)
  hardy      integral x^(s-1) sum phi(k)(-x)^k dx = pi/sin(pi s) phi(-s)

plus the pole machinery: the partial-fraction sum over 1/(s+k) and the
residue limit (s+m) Gamma(s) phi(-s) -> (-1)^m phi(m)/m!.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable, NamedTuple

from . import specfun
from .errors import (
    DerivativeUnavailable,
    DomainError,
    NonstandardPair,
    PoleError,
    PresentationError,
)
from .quadrature import (
    EvaluationResult,
    QuadratureConfig,
    integrate_mellin,
    integrate_semi_infinite,
)
from .sequences import PLAIN, SeriesPair

__all__ = [
    "IdentityReport",
    "FdDerivative",
    "DEFAULT_IDENTITY_TOL",
    "default_tolerance",
    "frullani",
    "lemma2",
    "rmt",
    "hardy",
    "partial_fraction_sum",
    "residue_check",
    "nth_derivative_fd",
]

# An order of magnitude looser than the quadrature tolerance, absorbing
# closed-form rounding.  Overridable per call and via RMT_DEFAULT_TOL.
DEFAULT_IDENTITY_TOL = 1e-8

# Below this point the frullani integrand is frozen at its value there;
# the 0/0 form only needs continuity of f, not differentiability.
_FRULLANI_FREEZE = 1e-8


def default_tolerance() -> float:
    env = os.environ.get("RMT_DEFAULT_TOL")
    if env is not None:
        try:
            value = float(env)
        except ValueError:
            raise DomainError(f"RMT_DEFAULT_TOL is not a number: {env!r}") from None
        if not value > 0.0:
            raise DomainError("RMT_DEFAULT_TOL must be positive")
        return value
    return DEFAULT_IDENTITY_TOL


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of checking one identity.

    passed is true when either the absolute or the relative discrepancy is
    within tolerance_used; the relative discrepancy is taken against the
    closed-form side and is +inf when that side is zero.
    """

    identity: str
    lhs: EvaluationResult
    rhs: float
    abs_discrepancy: float
    rel_discrepancy: float
    passed: bool
    tolerance_used: float
    warnings: tuple[str, ...] = ()


class FdDerivative(NamedTuple):
    value: float
    error_estimate: float


def _report(
    identity: str,
    lhs: EvaluationResult,
    rhs: float,
    tolerance: float | None,
    warnings: tuple[str, ...] = (),
) -> IdentityReport:
    tol = default_tolerance() if tolerance is None else tolerance
    if rhs == 0.0:
        rhs = 0.0  # normalise -0.0 for stable reporting
    abs_disc = abs(lhs.value - rhs)
    rel_disc = abs_disc / abs(rhs) if rhs != 0.0 else math.inf
    if not lhs.converged:
        warnings = warnings + (
            "quadrature did not converge; best-effort value used",
        )
    return IdentityReport(
        identity=identity,
        lhs=lhs,
        rhs=rhs,
        abs_discrepancy=abs_disc,
        rel_discrepancy=rel_disc,
        passed=(abs_disc <= tol) or (rel_disc <= tol),
        tolerance_used=tol,
        warnings=warnings,
    )


def frullani(
    f: Callable[[float], float],
    f0: float,
    finf: float,
    alpha: float,
    beta: float,
    cfg: QuadratureConfig | None = None,
    tolerance: float | None = None,
) -> IdentityReport:
    """Check integral of (f(alpha x) - f(beta x))/x against
    (f(inf) - f(0)) * ln(alpha/beta)."""
    if not (alpha > 0.0 and beta > 0.0):
        raise DomainError("frullani: alpha and beta must be positive")

    def integrand(x: float) -> float:
        if x < _FRULLANI_FREEZE:
            x = _FRULLANI_FREEZE
        return (f(alpha * x) - f(beta * x)) / x

    lhs = integrate_semi_infinite(integrand, cfg)
    # log(alpha) - log(beta) rather than log(alpha/beta): swapping the scale
    # arguments then negates the right side exactly.
    rhs = (finf - f0) * (math.log(alpha) - math.log(beta))
    return _report("frullani", lhs, rhs, tolerance)


def lemma2(
    pair: SeriesPair,
    n: int,
    cfg: QuadratureConfig | None = None,
    tolerance: float | None = None,
) -> IdentityReport:
    """Check integral of x^(n-1) f^(n)(x) against
    (-1)^(n-1) (f(inf) - f(0)) Gamma(n), using the pair's analytic
    derivative."""
    if n < 1:
        raise DomainError("lemma2: n must be a positive integer")
    if n > pair.derivative_max:
        raise DerivativeUnavailable(
            f"{pair.label or 'pair'}: derivative order {n} exceeds "
            f"derivative_max={pair.derivative_max}"
        )

    def integrand(x: float) -> float:
        return x ** (n - 1) * pair.derivative(n, x)

    lhs = integrate_semi_infinite(integrand, cfg)
    sign = 1.0 if (n - 1) % 2 == 0 else -1.0
    rhs = sign * (pair.f_at_infinity - pair.f_at_zero) * specfun.gamma(float(n))
    return _report("lemma2", lhs, rhs, tolerance)


def rmt(
    pair: SeriesPair,
    s: float,
    cfg: QuadratureConfig | None = None,
    tolerance: float | None = None,
) -> IdentityReport:
    """Check the Mellin integral of the closed form against
    Gamma(s) phi(-s).  Integer and non-integer s share the same path."""
    if pair.nonstandard:
        raise NonstandardPair(
            f"{pair.label or 'pair'}: phi(0) = 0, not admissible here; "
            "use lemma2 instead"
        )
    if not s > 0.0:
        raise DomainError(f"rmt: requires s > 0, got {s!r}")
    rhs = specfun.gamma(s) * pair.phi(-s)  # PoleError propagates
    if not math.isfinite(rhs):
        raise PoleError(f"rmt: Gamma(s) phi(-s) is non-finite at s={s!r}")
    lhs = integrate_mellin(pair.closed_form, s, cfg)
    regime = "integer order" if float(s).is_integer() else "real order"
    return _report(f"rmt ({regime})", lhs, rhs, tolerance)


def hardy(
    pair: SeriesPair,
    s: float,
    cfg: QuadratureConfig | None = None,
    tolerance: float | None = None,
) -> IdentityReport:
    """Check the Mellin integral of a plain series sum phi(k)(-x)^k against
    pi/sin(pi s) * phi(-s), for 0 < s < 1."""
    if pair.presentation != PLAIN or pair.phi_plain is None:
        raise PresentationError(
            f"{pair.label or 'pair'}: hardy requires the plain-series "
            "presentation"
        )
    factor = specfun.reflection_factor(s)  # PoleError at integer s
    if not 0.0 < s < 1.0:
        raise DomainError(
            f"hardy: s must lie in (0, 1) for the integral to converge, got {s!r}"
        )
    rhs = factor * pair.phi_plain(-s)
    lhs = integrate_mellin(pair.closed_form, s, cfg)
    return _report("hardy", lhs, rhs, tolerance)


def partial_fraction_sum(pair: SeriesPair, s: float, terms: int) -> float:
    """sum_{k=0}^{terms} phi(k) (-1)^k / k! * 1/(s+k), compensated.

    This is the truncated pole expansion of Gamma(s) phi(-s); its exact
    limit is the head integral over [0, 1] of x^(s-1) F(x), so it differs
    from the full Mellin transform by the (entire) tail over [1, inf).
    """
    if terms < 0:
        raise DomainError("partial_fraction_sum: terms must be >= 0")
    for k in range(terms + 1):
        if abs(s + k) <= 1e-10:
            raise PoleError(
                f"partial_fraction_sum: s={s!r} is within 1e-10 of the pole at -{k}"
            )
    total = 0.0
    comp = 0.0
    factorial = 1.0
    for k in range(terms + 1):
        if k > 0:
            factorial *= k
        term = pair.phi(float(k)) * (-1.0) ** k / (factorial * (s + k))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def residue_check(pair: SeriesPair, m: int, eps: float) -> tuple[float, float]:
    """Probe the simple pole of Gamma(s) phi(-s) at s = -m.

    left averages (s+m) Gamma(s) phi(-s) over s = -m +/- eps, which cancels
    the linear part of the regular factor and converges at O(eps^2);
    right is the residue (-1)^m phi(m)/m!.
    """
    if m < 0:
        raise DomainError("residue_check: m must be a non-negative integer")
    if not 0.0 < eps <= 1e-2:
        raise DomainError("residue_check: eps must lie in (0, 1e-2]")

    def g(s: float) -> float:
        return (s + m) * specfun.gamma(s) * pair.phi(-s)

    left = 0.5 * (g(-m + eps) + g(-m - eps))
    sign = 1.0 if m % 2 == 0 else -1.0
    right = sign * pair.phi(float(m)) / specfun.gamma(m + 1.0)
    if not (math.isfinite(left) and math.isfinite(right)):
        raise PoleError(
            f"residue_check: phi contributes its own singularity near m={m}"
        )
    return left, right


# Central-difference coefficients: f^(n)(x) ~ h^-n sum_i (-1)^i C(n,i)
# f(x + (n/2 - i) h), with error O(h^2).
def _central_difference(
    f: Callable[[float], float], x: float, n: int, h: float
) -> float:
    total = 0.0
    for i in range(n + 1):
        weight = math.comb(n, i) * (-1.0) ** i
        total += weight * f(x + (n / 2.0 - i) * h)
    return total / h**n


def nth_derivative_fd(
    f: Callable[[float], float],
    x: float,
    n: int,
    h: float,
) -> FdDerivative:
    """Finite-difference n-th derivative with one Richardson step.

    Evaluates the order-n central stencil at steps h and h/2 and
    extrapolates; the reported error estimate is the difference between the
    two levels.  Accuracy degrades with n roughly like machine-eps^(2/(n+2)),
    documented rather than guaranteed.
    """
    if not 1 <= n <= 6:
        raise DomainError(f"nth_derivative_fd: n must be in 1..6, got {n}")
    if not h > 0.0:
        raise DomainError("nth_derivative_fd: h must be positive")
    coarse = _central_difference(f, x, n, h)
    fine = _central_difference(f, x, n, h / 2.0)
    # Both levels carry O(h^2) leading error; eliminate it.
    value = (4.0 * fine - coarse) / 3.0
    return FdDerivative(value, abs(fine - coarse))
