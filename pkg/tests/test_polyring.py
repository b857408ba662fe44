from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import to_sympy
from otk.errors import NotDivisible, ParseError, UsageError
from otk.polyring import (
    EQ,
    GT,
    LT,
    MonomialOrder,
    Polynomial,
    Ring,
    add,
    compare,
    divide_exact_by_var,
    format_polynomial,
    mul,
    substitute,
    to_qq,
)
from strategies import RING, monomials, orders, polynomials

R = Ring(("u1", "u2", "u3", "h"))
P = R.parse


# ---------------------------------------------------------------------------
# rationals and rings
# ---------------------------------------------------------------------------


def test_rationals_are_reduced():
    q = to_qq(Fraction(6, -4))
    assert (q.numerator, q.denominator) == (-3, 2)
    assert to_qq("4/6") == Fraction(2, 3)
    zero = to_qq(0)
    assert (zero.numerator, zero.denominator) == (0, 1)


def test_float_coefficients_are_rejected():
    with pytest.raises(TypeError):
        to_qq(0.5)


def test_ring_rejects_duplicate_names():
    with pytest.raises(UsageError):
        Ring(("u1", "u1"))


def test_ring_default_weights():
    assert R.weights == (1, 1, 1, 1)
    assert Ring(("a", "q"), (1, 0)).degree((2, 5)) == 2


def test_monomials_of_degree_count():
    assert len(list(R.monomials_of_degree(3))) == 20


def test_zero_weight_has_no_finite_pieces():
    with pytest.raises(UsageError):
        list(Ring(("a", "q"), (1, 0)).monomials_of_degree(1))


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------


def test_add_cancellation():
    assert add(P("u1 + u2"), P("-u2")) == P("u1")


def test_add_zero_identity():
    p = P("u1*u2 - 2/3*h^2")
    assert add(p, R.zero) == p


def test_add_disjoint_supports():
    assert add(P("u1 + u2 - h"), P("u1*u2")) == P("u1*u2 + u1 + u2 - h")


def test_mul_binomial_expansion():
    assert mul(P("u1 - h"), P("u2 - h")) == P("u1*u2 - h*u1 - h*u2 + h^2")


def test_mul_one_identity():
    p = P("u1*u3 - 5*h")
    assert mul(p, R.one) == p


def test_mul_monomials():
    assert mul(P("u1*u2"), P("u3")) == P("u1*u2*u3")


def test_mixed_rings_rejected():
    other = Ring(("x",))
    with pytest.raises(UsageError):
        add(P("u1"), other.gen("x"))
    with pytest.raises(UsageError):
        mul(P("u1"), other.gen("x"))


def test_power_and_scalars():
    assert P("u1 + 1") ** 2 == P("u1^2 + 2*u1 + 1")
    assert 3 - P("u1") == P("3 - u1")
    assert P("u1") * Fraction(1, 2) == P("1/2*u1")


# ---------------------------------------------------------------------------
# orders
# ---------------------------------------------------------------------------


def test_deglex_priority():
    ring = Ring(("u1", "u2"))
    assert compare(MonomialOrder.deglex(), (1, 0), (0, 1)) == GT
    assert ring  # names only matter for display


def test_deglex_degree_dominates():
    assert compare(MonomialOrder.deglex(), (0, 2), (1, 0)) == GT


def test_deglex_three_variables():
    # u2*u3 versus u1*u3
    assert compare(MonomialOrder.deglex(), (0, 1, 1), (1, 0, 1)) == LT


def test_degrevlex_differs_from_deglex():
    # u1*u3 vs u2^2: deglex says u1*u3 is bigger, degrevlex says u2^2 is
    a, b = (1, 0, 1), (0, 2, 0)
    assert compare(MonomialOrder.deglex(), a, b) == GT
    assert compare(MonomialOrder.degrevlex(), a, b) == LT


def test_lex_permutation():
    order = MonomialOrder.lex((2, 1, 0))
    assert compare(order, (0, 0, 1), (5, 5, 0)) == GT


def test_elimination_order_first_block_dominates():
    order = MonomialOrder.elimination([1])
    assert compare(order, (1, 0, 0), (0, 9, 9)) == GT
    assert compare(order, (0, 2, 0), (0, 1, 1)) == GT


def test_equal_monomials():
    assert compare(MonomialOrder.degrevlex(), (1, 2), (1, 2)) == EQ


def test_bad_orders_rejected():
    with pytest.raises(UsageError):
        MonomialOrder("banana")
    with pytest.raises(UsageError):
        MonomialOrder.lex((0, 0))
    with pytest.raises(UsageError):
        MonomialOrder("elimination")


@given(orders(), monomials(), monomials(), monomials())
@settings(max_examples=150)
def test_order_axioms(order, a, b, c):
    ab = order.compare(a, b)
    assert ab == -order.compare(b, a)
    assert (ab == EQ) == (a == b)
    ac, bc = tuple(x + z for x, z in zip(a, c)), tuple(y + z for y, z in zip(b, c))
    assert order.compare(ac, bc) == ab
    assert order.compare((0,) * len(a), a) in (LT, EQ)
    # transitivity against the third monomial
    if ab == GT and order.compare(b, c) == GT:
        assert order.compare(a, c) == GT


# ---------------------------------------------------------------------------
# substitution and division
# ---------------------------------------------------------------------------


def test_substitute_zero():
    assert substitute(P("u1 + u2 - h"), "h", 0) == P("u1 + u2")


def test_substitute_q_equals_one():
    ring = Ring(("u1", "u2", "h", "q"))
    quantum = ring.parse("(1 - q)*u1*u2 - q*h*(h - u1 - u2)")
    assert substitute(quantum, "q", 1) == ring.parse("-h*(h - u1 - u2)")


def test_substitute_identity():
    p = P("u1*h^2 - 3*h + u2")
    assert substitute(p, "h", R.gen("h")) == p


def test_substitute_unknown_variable():
    with pytest.raises(UsageError):
        substitute(P("u1"), "zz", 0)


def test_divide_factor_out():
    assert divide_exact_by_var(P("h*u2 - h*u1"), "h") == P("u2 - u1")


def test_divide_signed_circuit_difference():
    assert divide_exact_by_var(P("h*(u1 + u2) - h^2"), "h") == P("u1 + u2 - h")


def test_divide_not_divisible():
    with pytest.raises(NotDivisible):
        divide_exact_by_var(P("u1"), "h")


@given(polynomials(), polynomials(), polynomials())
@settings(max_examples=60)
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert p - p == R.zero


@given(polynomials(), polynomials())
@settings(max_examples=60)
def test_product_agrees_with_sympy(p, q):
    syms = sympy.symbols(list(RING.names))
    assert to_sympy(p * q, syms) == sympy.expand(to_sympy(p, syms) * to_sympy(q, syms))


@given(polynomials(), polynomials(), polynomials(max_exp=1), st.sampled_from(RING.names))
@settings(max_examples=60)
def test_substitute_is_a_homomorphism(p, q, value, var):
    assert substitute(p * q, var, value) == substitute(p, var, value) * substitute(q, var, value)
    assert substitute(p + q, var, value) == substitute(p, var, value) + substitute(q, var, value)
    assert substitute(p, var, RING.gen(var)) == p


@given(polynomials(), st.sampled_from(RING.names))
@settings(max_examples=60)
def test_divide_round_trip(p, var):
    assert divide_exact_by_var(p * RING.gen(var), var) == p


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


def test_format_example():
    assert str(P("u1*u2 - h*u3 + 2/3*h^2")) == "u1*u2 - u3*h + 2/3*h^2"


def test_format_zero_and_constants():
    assert str(R.zero) == "0"
    assert str(R.const(Fraction(-1, 2))) == "-1/2"


def test_parse_errors_have_location():
    with pytest.raises(ParseError):
        P("u1 + * u2")
    with pytest.raises(ParseError, match="position"):
        P("u9")


@given(polynomials())
@settings(max_examples=100)
def test_parse_print_round_trip(p):
    assert R.parse(str(p)) == p
    assert str(R.parse(str(p))) == str(p)


@given(polynomials(), orders())
@settings(max_examples=40)
def test_display_under_any_order_parses_back(p, order):
    assert R.parse(format_polynomial(p, order)) == p


def test_hash_and_equality_are_canonical():
    a = P("u1 + u2")
    b = Polynomial(R, {(0, 1, 0, 0): 1, (1, 0, 0, 0): Fraction(2, 2)})
    assert a == b and hash(a) == hash(b)
    assert len({a, b}) == 1


def test_homogeneity():
    assert P("u1*u2 - h^2").is_homogeneous()
    assert not P("u1*u2 - h").is_homogeneous()
    assert P("u1 + 2*u2*h").homogeneous_part(2) == P("2*u2*h")
