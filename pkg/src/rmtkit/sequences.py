"""Coefficient sequences and the functions they generate.

A SeriesPair bundles a coefficient function phi(k) with the closed form of
F(x) = sum_k phi(k) (-x)^k / k!, analytic derivatives of F, and the limits
of F at 0 and infinity.  The catalog provides the built-in pairs; new pairs
can be constructed directly (the CLI does so from parsed expressions).

Series evaluation accumulates in extended precision (mpmath) because the
alternating sums are badly conditioned near the convergence radius: for
F = (1+x)^-m at x = 0.9 the condition number of the sum exceeds 1e6, which
no double-precision summation order can overcome.  Catalog entries supply
a high-precision coefficient hook so the terms themselves stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import mpmath

from . import specfun
from .errors import (
    DerivativeUnavailable,
    DomainError,
    NonConvergenceError,
    ParamDomainError,
    PoleError,
    RadiusError,
    UnknownEntry,
)

__all__ = [
    "SeriesPair",
    "CatalogEntry",
    "SeriesValue",
    "eval_series",
    "shift_sequence",
    "catalog_get",
    "catalog_ids",
    "CATALOG",
]

# Isolated mpmath context so series evaluation never mutates global state.
_MP = mpmath.mp.clone()
_MP.dps = 40

# Series presentation conventions.
FACTORIAL = "factorial"  # F(x) = sum phi(k) (-x)^k / k!
PLAIN = "plain"  # F(x) = sum phi_plain(k) (-x)^k, phi(k) = k! * phi_plain(k)


@dataclass(frozen=True)
class SeriesPair:
    """A coefficient sequence phi with the closed form it generates.

    phi must be evaluable wherever an operation needs it: non-negative
    integers for series work and -s for master-theorem right-hand sides.
    closed_form is valid on all of x >= 0, beyond the series' radius.
    derivative(order, x) is the analytic order-th derivative of closed_form,
    supported up to derivative_max.
    """

    phi: Callable[[float], float]
    closed_form: Callable[[float], float]
    derivative: Callable[[int, float], float]
    derivative_max: int
    f_at_zero: float
    f_at_infinity: float
    convergence_radius: float
    param_bindings: dict = field(default_factory=dict)
    nonstandard: bool = False
    presentation: str = FACTORIAL
    phi_plain: Callable[[float], float] | None = None
    phi_highprec: Callable[[int], "mpmath.mpf"] | None = None
    label: str = ""


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    builder: Callable[..., SeriesPair]
    description: str


class SeriesValue(NamedTuple):
    value: float
    truncation_bound: float


def eval_series(pair: SeriesPair, x: float, max_terms: int) -> SeriesValue:
    """Truncated evaluation of sum_k phi(k) (-x)^k / k! at x >= 0.

    Stops once the next term's magnitude falls below 1e-16 of the running
    partial sum; the bound returned is the magnitude of the first omitted
    term (a valid tail bound when terms are eventually alternating and
    decreasing).
    """
    if max_terms < 1:
        raise DomainError("eval_series: max_terms must be >= 1")
    if x < 0.0:
        raise DomainError(f"eval_series: requires x >= 0, got {x!r}")
    if x >= pair.convergence_radius:
        raise RadiusError(
            f"eval_series: x={x!r} is outside the convergence radius "
            f"{pair.convergence_radius!r}"
        )
    phi_hp = pair.phi_highprec or (lambda k: _MP.mpf(pair.phi(float(k))))
    if x == 0.0:
        # Only the k = 0 term survives.
        return SeriesValue(float(phi_hp(0)), 0.0)
    cutoff = _MP.mpf("1e-16")
    neg_x = -_MP.mpf(x)
    weight = _MP.mpf(1)  # (-x)^k / k!
    total = _MP.mpf(0)
    term = phi_hp(0) * weight
    for k in range(max_terms + 1):
        weight = weight * neg_x / (k + 1)
        peek = phi_hp(k + 1) * weight
        # Pairs with interleaved zero coefficients must not stop on a single
        # vanishing term, so the next term is required to be small as well.
        if total != 0 and abs(term) <= cutoff * abs(total) and abs(peek) <= cutoff * abs(total):
            return SeriesValue(float(total), float(abs(term)))
        total += term
        term = peek
    raise NonConvergenceError(
        f"eval_series: stopping rule did not fire within {max_terms} terms"
    )


def shift_sequence(pair: SeriesPair, n: int) -> SeriesPair:
    """The pair whose coefficients are phi(n + k).

    Its closed form is (-1)^n times the n-th derivative of the original
    closed form, so the series identity
    f^(n)(x) = (-1)^n sum_k phi(n+k) (-x)^k / k! carries over directly.
    """
    if n < 1:
        raise DomainError("shift_sequence: n must be a positive integer")
    if n > pair.derivative_max:
        raise DerivativeUnavailable(
            f"shift_sequence: order {n} exceeds derivative_max="
            f"{pair.derivative_max}"
        )
    sign = -1.0 if n % 2 else 1.0
    base_phi = pair.phi
    base_deriv = pair.derivative
    base_hp = pair.phi_highprec
    f0 = sign * base_deriv(n, 0.0)
    new = SeriesPair(
        phi=lambda k: base_phi(n + k),
        closed_form=lambda x: sign * base_deriv(n, x),
        derivative=lambda order, x: sign * base_deriv(n + order, x),
        derivative_max=pair.derivative_max - n,
        f_at_zero=f0,
        f_at_infinity=0.0,
        convergence_radius=pair.convergence_radius,
        param_bindings={**pair.param_bindings, "shift": n},
        nonstandard=(f0 == 0.0),
        presentation=FACTORIAL,
        phi_plain=None,
        phi_highprec=(lambda k: base_hp(n + k)) if base_hp else None,
        label=f"{pair.label or 'pair'} shifted by {n}",
    )
    return new


# ---------------------------------------------------------------------------
# Catalog builders


def _require_params(
    id_: str,
    params: dict,
    required: tuple[str, ...],
    optional: tuple[str, ...] = (),
) -> None:
    missing = [name for name in required if name not in params]
    if missing:
        raise ParamDomainError(f"catalog {id_!r}: missing parameter(s) {missing}")
    extra = [name for name in params if name not in required + optional]
    if extra:
        raise ParamDomainError(f"catalog {id_!r}: unknown parameter(s) {extra}")


def _build_exp(**params) -> SeriesPair:
    _require_params("exp", params, (), optional=("a",))
    a = float(params.get("a", 1.0))
    if not a > 0.0:
        raise ParamDomainError(f"catalog 'exp': requires a > 0, got {a!r}")
    return SeriesPair(
        phi=lambda k: a**k,
        closed_form=lambda x: math.exp(-a * x),
        derivative=lambda order, x: (-a) ** order * math.exp(-a * x),
        derivative_max=1000,
        f_at_zero=1.0,
        f_at_infinity=0.0,
        convergence_radius=math.inf,
        param_bindings={"a": a},
        phi_highprec=lambda k: _MP.mpf(a) ** k,
        label=f"exp(a={a:g})",
    )


def _build_power(**params) -> SeriesPair:
    _require_params("power", params, ("m",))
    m = float(params["m"])
    if not m > 0.0:
        raise ParamDomainError(f"catalog 'power': requires m > 0, got {m!r}")

    def phi(k: float) -> float:
        # Gamma(m+k)/Gamma(m), the natural interpolant of the rising factorial.
        return specfun.gamma(m + k) / specfun.gamma(m)

    def derivative(order: int, x: float) -> float:
        factor = specfun.gamma(m + order) / specfun.gamma(m)
        return (-1.0) ** order * factor * (1.0 + x) ** (-(m + order))

    gamma_m = _MP.gamma(_MP.mpf(m))
    return SeriesPair(
        phi=phi,
        closed_form=lambda x: (1.0 + x) ** (-m),
        derivative=derivative,
        derivative_max=100,
        f_at_zero=1.0,
        f_at_infinity=0.0,
        convergence_radius=1.0,
        param_bindings={"m": m},
        phi_highprec=lambda k: _MP.gamma(_MP.mpf(m) + k) / gamma_m,
        label=f"power(m={m:g})",
    )


_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)


def _erf_phi(k: float) -> float:
    if abs(k - round(k)) > 1e-9:
        raise DomainError("catalog 'erf': coefficients defined at integers only")
    k = int(round(k))
    if k < 0 or k % 2 == 0:
        return 0.0
    j = (k - 1) // 2
    # erf(x) = (2/sqrt(pi)) sum_j (-1)^j x^(2j+1) / (j! (2j+1)); rewriting in
    # the factorial-normalised convention gives the (2j)!/j! growth below.
    factor = 1.0
    for i in range(j + 1, 2 * j + 1):
        factor *= i
    return _TWO_OVER_SQRT_PI * (-1.0) ** (j + 1) * factor


def _erf_phi_hp(k: int):
    if k < 0 or k % 2 == 0:
        return _MP.mpf(0)
    j = (k - 1) // 2
    return (
        (2 / _MP.sqrt(_MP.pi))
        * _MP.mpf(-1) ** (j + 1)
        * _MP.factorial(2 * j)
        / _MP.factorial(j)
    )


def _build_erf(**params) -> SeriesPair:
    _require_params("erf", params, ())

    def derivative(order: int, x: float) -> float:
        if order == 0:
            return specfun.erf(x)
        sign = -1.0 if order % 2 == 0 else 1.0
        return (
            sign
            * _TWO_OVER_SQRT_PI
            * specfun.hermite(order - 1, x)
            * math.exp(-x * x)
        )

    return SeriesPair(
        phi=_erf_phi,
        closed_form=specfun.erf,
        derivative=derivative,
        derivative_max=specfun.MAX_POLY_DEGREE + 1,
        f_at_zero=0.0,
        f_at_infinity=1.0,
        convergence_radius=math.inf,
        nonstandard=True,
        phi_highprec=_erf_phi_hp,
        label="erf",
    )


def _build_laguerre_weight(**params) -> SeriesPair:
    _require_params("laguerre_weight", params, ("n",))
    n_f = float(params["n"])
    n = int(round(n_f))
    if n != n_f or n < 1 or n > 50:
        raise ParamDomainError(
            f"catalog 'laguerre_weight': requires integer 1 <= n <= 50, got {n_f!r}"
        )

    def phi(k: float) -> float:
        if abs(k - round(k)) > 1e-9:
            raise DomainError(
                "catalog 'laguerre_weight': coefficients defined at integers only"
            )
        k = int(round(k))
        if k < n:
            return 0.0
        factor = 1.0  # k!/(k-n)!
        for i in range(k - n + 1, k + 1):
            factor *= i
        return (-1.0) ** n * factor

    def phi_hp(k: int):
        if k < n:
            return _MP.mpf(0)
        return _MP.mpf(-1) ** n * _MP.factorial(k) / _MP.factorial(k - n)

    def derivative(order: int, x: float) -> float:
        # Leibniz rule on x^n * e^-x.
        total = 0.0
        for i in range(min(order, n) + 1):
            binom = math.comb(order, i)
            falling = 1.0
            for j in range(n - i + 1, n + 1):
                falling *= j
            total += binom * falling * x ** (n - i) * (-1.0) ** (order - i)
        return total * math.exp(-x)

    return SeriesPair(
        phi=phi,
        closed_form=lambda x: x**n * math.exp(-x),
        derivative=derivative,
        derivative_max=specfun.MAX_POLY_DEGREE,
        f_at_zero=0.0,
        f_at_infinity=0.0,
        convergence_radius=math.inf,
        param_bindings={"n": float(n)},
        nonstandard=True,
        phi_highprec=phi_hp,
        label=f"laguerre_weight(n={n})",
    )


def _build_geometric(**params) -> SeriesPair:
    _require_params("geometric", params, ())

    def phi(k: float) -> float:
        # k! stored so the factorial-normalised series covers the plain
        # series sum (-x)^k; the plain coefficients are identically 1.
        return specfun.gamma(k + 1.0)

    def derivative(order: int, x: float) -> float:
        return (-1.0) ** order * specfun.gamma(order + 1.0) * (1.0 + x) ** (
            -(order + 1)
        )

    return SeriesPair(
        phi=phi,
        closed_form=lambda x: 1.0 / (1.0 + x),
        derivative=derivative,
        derivative_max=100,
        f_at_zero=1.0,
        f_at_infinity=0.0,
        convergence_radius=1.0,
        presentation=PLAIN,
        phi_plain=lambda k: 1.0,
        phi_highprec=lambda k: _MP.factorial(k),
        label="geometric",
    )


def _harmonic_phi(k: float) -> float:
    if k == -1.0:
        raise PoleError("catalog 'harmonic_shifted': phi has a pole at k=-1")
    return 1.0 / (k + 1.0)


def _harmonic_closed(x: float) -> float:
    if x == 0.0:
        return 1.0
    return -math.expm1(-x) / x


def _harmonic_derivative(order: int, x: float) -> float:
    # F(x) = integral_0^1 e^(-x t) dt, so the order-th derivative is
    # (-1)^order * integral_0^1 t^order e^(-x t) dt, computed by series for
    # small x and by the stable upward recurrence otherwise.
    if order == 0:
        return _harmonic_closed(x)
    if abs(x) < 1.0:
        total = 0.0
        term = 1.0
        j = 0
        while True:
            total += term / (order + j + 1)
            j += 1
            term *= -x / j
            if abs(term) < 1e-18 * max(abs(total), 1e-30) or j > 60:
                break
        return (-1.0) ** order * total
    moment = _harmonic_closed(x)  # integral of e^(-x t)
    ex = math.exp(-x)
    for j in range(1, order + 1):
        moment = (j * moment - ex) / x
    return (-1.0) ** order * moment


def _build_harmonic_shifted(**params) -> SeriesPair:
    _require_params("harmonic_shifted", params, ())
    return SeriesPair(
        phi=_harmonic_phi,
        closed_form=_harmonic_closed,
        derivative=_harmonic_derivative,
        derivative_max=6,
        f_at_zero=1.0,
        f_at_infinity=0.0,
        convergence_radius=math.inf,
        phi_highprec=lambda k: 1 / _MP.mpf(k + 1),
        label="harmonic_shifted",
    )


CATALOG: dict[str, CatalogEntry] = {
    entry.id: entry
    for entry in (
        CatalogEntry(
            "exp",
            _build_exp,
            "exponential decay e^(-ax); coefficients a^k",
        ),
        CatalogEntry(
            "power",
            _build_power,
            "algebraic decay (1+x)^(-m); rising-factorial coefficients",
        ),
        CatalogEntry(
            "erf",
            _build_erf,
            "error function; enters through the derivative identities "
            "(leading coefficient vanishes)",
        ),
        CatalogEntry(
            "laguerre_weight",
            _build_laguerre_weight,
            "x^n e^(-x); its n-th derivative is n! L_n(x) e^(-x)",
        ),
        CatalogEntry(
            "geometric",
            _build_geometric,
            "1/(1+x) as the plain series sum (-x)^k",
        ),
        CatalogEntry(
            "harmonic_shifted",
            _build_harmonic_shifted,
            "(1 - e^(-x))/x with coefficients 1/(k+1)",
        ),
    )
}


def catalog_ids() -> list[str]:
    return sorted(CATALOG)


def catalog_get(id: str, **params: float) -> SeriesPair:
    """Construct a catalog pair by id with its named parameters."""
    try:
        entry = CATALOG[id]
    except KeyError:
        raise UnknownEntry(
            f"unknown catalog id {id!r}; known: {', '.join(catalog_ids())}"
        ) from None
    pair = entry.builder(**params)
    # Construction invariants.
    assert abs(pair.closed_form(0.0) - pair.f_at_zero) <= 1e-12 * max(
        1.0, abs(pair.f_at_zero)
    )
    return pair
