"""Independent brute-force oracles used to freeze and check expected values.

Nothing here touches the package's adaptive Gauss-Kronrod integrator: the
routines are composite Simpson / trapezoid rules on explicit meshes plus
analytic tail handling, so agreement with the library is meaningful.
"""

from __future__ import annotations

import math

import numpy as np


def simpson(f, a: float, b: float, n: int = 100_001) -> float:
    """Composite Simpson rule with n (odd) equally spaced points."""
    if n % 2 == 0:
        n += 1
    x = np.linspace(a, b, n)
    y = np.array([f(v) for v in x])
    h = (b - a) / (n - 1)
    return float(h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-2:2].sum()))


def trapezoid(f, a: float, b: float, n: int = 1_000_001) -> float:
    x = np.linspace(a, b, n)
    y = np.array([f(v) for v in x])
    return float(np.trapezoid(y, x))


def _graded_trapezoid_once(f, q: float, n: int) -> float:
    i = np.arange(n + 1, dtype=float)
    x = (i / n) ** q
    y = np.empty_like(x)
    y[0] = 0.0  # integrable singularity: zero-measure endpoint
    for j in range(1, n + 1):
        y[j] = f(x[j])
    return float(np.trapezoid(y, x))


def graded_mesh_trapezoid(f, q: float, n: int = 60_000) -> float:
    """Trapezoid rule on the graded mesh x_i = (i/n)^q over [0, 1].

    The grading clusters nodes at 0 so integrable endpoint singularities
    x^(s-1) are resolved; pick q somewhat above 2/s.  One Richardson step
    over mesh sizes n and 2n removes the leading h^2 error of the smooth
    part, bringing the rule to ~1e-11.
    """
    coarse = _graded_trapezoid_once(f, q, n)
    fine = _graded_trapezoid_once(f, q, 2 * n)
    return (4.0 * fine - coarse) / 3.0


def frullani_log_simpson(f, alpha: float, beta: float, span: float = 30.0) -> float:
    """Frullani left side via the substitution x = e^t on [-span, span]."""
    return simpson(lambda t: f(alpha * math.exp(t)) - f(beta * math.exp(t)),
                   -span, span, 200_001)


def erf_maclaurin(x: float, terms: int = 30) -> float:
    """Truncated Maclaurin series of erf, an independent small-x oracle."""
    total = 0.0
    for k in range(terms):
        total += (-1.0) ** k * x ** (2 * k + 1) / (math.factorial(k) * (2 * k + 1))
    return 2.0 / math.sqrt(math.pi) * total


def hermite_by_expansion(n: int, x: float) -> float:
    """H_n from its explicit polynomial expansion (hand-derived, n <= 4)."""
    table = {
        0: lambda t: 1.0,
        1: lambda t: 2.0 * t,
        2: lambda t: 4.0 * t * t - 2.0,
        3: lambda t: 8.0 * t**3 - 12.0 * t,
        4: lambda t: 16.0 * t**4 - 48.0 * t * t + 12.0,
    }
    return table[n](x)


def laguerre_by_expansion(n: int, x: float) -> float:
    """L_n from its explicit polynomial expansion (hand-derived, n <= 4)."""
    table = {
        0: lambda t: 1.0,
        1: lambda t: 1.0 - t,
        2: lambda t: (t * t - 4.0 * t + 2.0) / 2.0,
        3: lambda t: (-t**3 + 9.0 * t * t - 18.0 * t + 6.0) / 6.0,
        4: lambda t: (t**4 - 16.0 * t**3 + 72.0 * t * t - 96.0 * t + 24.0) / 24.0,
    }
    return table[n](x)


def hardy_quarter_integral() -> float:
    """integral of x^(-3/4)/(1+x) over [0, inf).

    The substitution x = u^4 gives the smooth integrand 4/(1+u^4); Simpson
    on [0, 10] plus the alternating tail series 4 sum (-1)^j X^(-(4j+3))/(4j+3).
    """
    head = simpson(lambda u: 4.0 / (1.0 + u**4), 0.0, 10.0, 400_001)
    tail = 0.0
    X = 10.0
    for j in range(12):
        tail += 4.0 * (-1.0) ** j * X ** (-(4 * j + 3)) / (4 * j + 3)
    return head + tail


def harmonic_half_integral() -> float:
    """integral of x^(-3/2)(1 - e^(-x)) over [0, inf).

    With x = u^2 the integrand becomes 2 (1 - e^(-u^2))/u^2, smooth at 0;
    beyond u = 12 it is 2/u^2 up to e^(-144), integrated analytically.
    """

    def g(u: float) -> float:
        if u == 0.0:
            return 2.0
        return -2.0 * math.expm1(-u * u) / (u * u)

    head = simpson(g, 0.0, 12.0, 400_001)
    return head + 2.0 / 12.0
