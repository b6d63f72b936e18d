"""Expression language: grammar, evaluation, printing, robustness."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rmtkit.errors import (
    DivisionByZero,
    DomainError,
    ExprSyntaxError,
    UnboundVariable,
    UnknownFunction,
)
from rmtkit.expr import (
    BinaryOp,
    Call,
    Constant,
    UnaryNeg,
    Variable,
    evaluate,
    parse,
    to_source,
)


class TestGrammar:
    def test_nested_calls_and_division(self):
        node = parse("gamma(m+k)/gamma(m)")
        assert isinstance(node, BinaryOp) and node.op == "/"
        assert isinstance(node.left, Call) and node.left.fn == "gamma"
        assert isinstance(node.left.args[0], BinaryOp)
        assert isinstance(node.right, Call)

    def test_exponent_may_not_start_with_minus(self):
        with pytest.raises(ExprSyntaxError) as exc_info:
            parse("2^-3")
        assert exc_info.value.offset == 2
        assert exc_info.value.expected

    def test_parenthesised_negative_exponent(self):
        assert evaluate(parse("2^(-3)"), {}) == 0.125

    def test_power_binds_tighter_than_unary_minus(self):
        node = parse("-k^2")
        assert isinstance(node, UnaryNeg)
        assert isinstance(node.child, BinaryOp) and node.child.op == "^"
        assert evaluate(node, {"k": 2.0}) == -4.0

    def test_power_right_associative(self):
        assert evaluate(parse("2^2^3"), {}) == 256.0

    def test_number_forms(self):
        assert evaluate(parse("1.5e3"), {}) == 1500.0
        assert evaluate(parse("2."), {}) == 2.0
        assert evaluate(parse("7e-2"), {}) == 0.07

    def test_whitespace_insignificant(self):
        assert to_source(parse("1+2 * k")) == to_source(parse("1 + 2*k"))

    def test_unknown_function(self):
        with pytest.raises(UnknownFunction):
            parse("sinh(1)")

    def test_arity_checked(self):
        with pytest.raises(ExprSyntaxError):
            parse("gamma(1,2)")
        with pytest.raises(ExprSyntaxError):
            parse("pow(1)")

    def test_error_offset_points_at_problem(self):
        with pytest.raises(ExprSyntaxError) as exc_info:
            parse("1 + * 2")
        assert exc_info.value.offset == 4

    def test_trailing_garbage(self):
        with pytest.raises(ExprSyntaxError):
            parse("1 + 2 )")

    def test_length_cap(self):
        with pytest.raises(ExprSyntaxError):
            parse("1+" * 40000 + "1")

    def test_deep_nesting_is_graceful(self):
        with pytest.raises(ExprSyntaxError):
            parse("(" * 3000 + "1" + ")" * 3000)


class TestEvaluate:
    def test_power_binding(self):
        assert evaluate(parse("a^k"), {"a": 2.0, "k": 3.0}) == 8.0

    def test_harmonic_coefficient(self):
        assert evaluate(parse("1/(k+1)"), {"k": 0.0}) == 1.0

    def test_reflection_product(self):
        # fact(-s) gamma(s) = pi/sin(pi s) at s = 1/2.
        value = evaluate(parse("fact(-s)*gamma(s)"), {"s": 0.5})
        assert value == pytest.approx(math.pi, abs=1e-12)

    def test_builtins(self):
        env = {"x": 0.25}
        assert evaluate(parse("exp(x)"), env) == pytest.approx(math.exp(0.25))
        assert evaluate(parse("ln(x)"), env) == pytest.approx(math.log(0.25))
        assert evaluate(parse("sqrt(x)"), env) == 0.5
        assert evaluate(parse("sin(x)^2 + cos(x)^2"), env) == pytest.approx(1.0)
        assert evaluate(parse("erf(x)"), env) == pytest.approx(0.2763263901682369)
        assert evaluate(parse("pow(x, 2)"), env) == 0.0625

    def test_unbound_variable(self):
        with pytest.raises(UnboundVariable):
            evaluate(parse("q + 1"), {})

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            evaluate(parse("1/0"), {})
        with pytest.raises(DivisionByZero):
            evaluate(parse("1/(k-k)"), {"k": 3.0})

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            evaluate(parse("ln(0-1)"), {})
        with pytest.raises(DomainError):
            evaluate(parse("sqrt(0-4)"), {})
        with pytest.raises(DomainError):
            evaluate(parse("(0-2)^0.5"), {})
        with pytest.raises(DomainError):
            evaluate(parse("gamma(0)"), {})

    def test_zero_to_negative_power(self):
        with pytest.raises(DivisionByZero):
            evaluate(parse("0^(-1)"), {})


# Fifty expressions exercising every operator, function, and nesting shape.
ROUND_TRIP_CORPUS = [
    "gamma(m+k)/gamma(m)",
    "-k^2",
    "a^k",
    "1/(k+1)",
    "fact(-s)*gamma(s)",
    "2^2^3",
    "1 - 2 - 3",
    "1 - (2 - 3)",
    "a/(b*c)",
    "a/b*c",
    "(a+b)*c",
    "-(a+b)",
    "2^(-3)",
    "exp(-x)*x^2",
    "sqrt(x)/ln(x+1)",
    "pow(x, y+1)",
    "1.5e3 + 0.25",
    "x",
    "-x",
    "- - x",
    "(x)",
    "sin(cos(x))",
    "a*b+c*d",
    "a*(b+c)*d",
    "x^2^2^2",
    "(x^2)^2",
    "-(x^2)^2",
    "k*(k-1)*(k-2)",
    "1/(1+x)^5",
    "erf(x)",
    "x/2",
    "3/4/5",
    "3/(4/5)",
    "a-b+c",
    "a-(b+c)",
    "2.0*x",
    "1e-3*x",
    "gamma(0.5)",
    "fact(n)/fact(k)/fact(n-k)",
    "x*y^2",
    "(x*y)^2",
    "x+y+z",
    "x+(y+z)",
    "exp(x)^2",
    "ln(x)^(1/2)",
    "-1",
    "0.5^k",
    "(1-x)^m",
    "a^(b^c)",
    "((a))",
]


class TestPrinting:
    def test_corpus_size(self):
        assert len(ROUND_TRIP_CORPUS) == 50

    @pytest.mark.parametrize("source", ROUND_TRIP_CORPUS)
    def test_round_trip_fixed_point(self, source):
        once = to_source(parse(source))
        twice = to_source(parse(once))
        assert once == twice

    @pytest.mark.parametrize("source", ROUND_TRIP_CORPUS)
    def test_round_trip_preserves_tree(self, source):
        assert parse(to_source(parse(source))) == parse(source)


_BINARY_OPS = ["+", "-", "*", "/", "^"]


class TestPrecedence:
    def test_adjacent_operator_pairs_match_reference_parse(self):
        """a op1 b op2 c must evaluate like its explicitly parenthesised
        reading under the precedence/associativity table."""
        prec = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}
        env = {"a": 5.0, "b": 3.0, "c": 2.0}
        for op1 in _BINARY_OPS:
            for op2 in _BINARY_OPS:
                flat = f"a {op1} b {op2} c"
                if prec[op1] >= prec[op2] and not (op1 == op2 == "^"):
                    grouped = f"(a {op1} b) {op2} c"
                else:
                    grouped = f"a {op1} (b {op2} c)"
                assert evaluate(parse(flat), env) == evaluate(parse(grouped), env), flat

    def test_unary_minus_below_power_above_multiplication(self):
        env = {"x": 3.0}
        assert evaluate(parse("-x^2"), env) == -9.0
        assert evaluate(parse("2*-x"), env) == -6.0
        assert evaluate(parse("(-x)^2"), env) == 9.0


class TestRobustness:
    @given(st.text(max_size=120))
    @settings(max_examples=2000, deadline=None)
    def test_arbitrary_text_never_crashes(self, text):
        try:
            parse(text)
        except ExprSyntaxError:
            pass

    def test_seeded_fuzz_100k(self):
        """At least 1e5 generated inputs parse or fail cleanly."""
        rng = random.Random(0xC0FFEE)
        fragments = [
            "k", "x", "m", "s", "1", "2.5", "1e3", "+", "-", "*", "/", "^",
            "(", ")", ",", " ", "gamma", "exp(", "fact(", "pow(", "q_1", ".",
        ]
        charset = "abkxms0123456789+-*/^(), .eE_#@!\\\"'"
        total = 100_000
        for i in range(total):
            if i % 3 == 0:
                source = "".join(
                    rng.choice(fragments) for _ in range(rng.randrange(0, 14))
                )
            else:
                source = "".join(
                    rng.choice(charset) for _ in range(rng.randrange(0, 30))
                )
            try:
                parse(source)
            except ExprSyntaxError:
                pass
