"""Exact sparse multivariate polynomials over the rationals.

A polynomial is a map from exponent vectors to nonzero rational coefficients,
attached to a :class:`Ring` that names the variables and assigns each one an
integer weight::

    R = Ring(("u1", "u2", "h"))
    p = R.parse("u1*u2 - h*u1 + 2/3*h^2")

Exponent vectors are plain tuples of ints of length ``R.nvars`` and play the
role of monomials throughout the package. Coefficients are ``gmpy2.mpq``
values, which are always stored in lowest terms with positive denominator.

Every variable has weight 1 unless stated otherwise. Cohomological degrees of
the hypertoric rings are twice the internal degree used here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from gmpy2 import mpq

from .errors import NotDivisible, ParseError, UsageError

QQ = mpq
Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction, "mpq"]

LT, EQ, GT = -1, 0, 1

_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


def to_qq(value) -> mpq:
    """Convert ints, Fractions, mpq values or strings like ``"-2/3"`` to mpq."""
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, float):
        raise TypeError("floating-point coefficients are not supported")
    try:
        return mpq(value)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"not a rational number: {value!r}") from exc


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """Return a/b; caller guarantees that b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(b: Monomial, a: Monomial) -> bool:
    """True if monomial b divides monomial a."""
    return all(y <= x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_support(a: Monomial) -> Tuple[int, ...]:
    return tuple(i for i, e in enumerate(a) if e)


# ---------------------------------------------------------------------------
# Rings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ring:
    """An ordered list of variable names with integer weights.

    Weights default to 1. A weight of 0 is allowed for parameters such as the
    quantum variables, which live in degree zero.
    """

    names: Tuple[str, ...]
    weights: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise UsageError(f"duplicate variable names in {names}")
        for name in names:
            if not _NAME.match(name):
                raise UsageError(f"invalid variable name {name!r}")
        if self.weights is None:
            object.__setattr__(self, "weights", (1,) * len(names))
        else:
            weights = tuple(int(w) for w in self.weights)
            if len(weights) != len(names) or any(w < 0 for w in weights):
                raise UsageError("weights must be one non-negative integer per variable")
            object.__setattr__(self, "weights", weights)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UsageError(f"unknown variable {name!r} in ring {self.names}") from None

    def unit(self, i: int) -> Monomial:
        return tuple(1 if j == i else 0 for j in range(self.nvars))

    @property
    def one_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def gen(self, name: str) -> "Polynomial":
        return Polynomial(self, {self.unit(self.index(name)): QQ(1)}, _trusted=True)

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.gen(n) for n in self.names)

    def const(self, c: Scalar) -> "Polynomial":
        return Polynomial(self, {self.one_monomial: to_qq(c)})

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {}, _trusted=True)

    @property
    def one(self) -> "Polynomial":
        return self.const(1)

    def monomial(self, exps: Monomial, coeff: Scalar = 1) -> "Polynomial":
        if len(exps) != self.nvars:
            raise UsageError("exponent vector has the wrong length")
        return Polynomial(self, {tuple(exps): to_qq(coeff)})

    def degree(self, m: Monomial) -> int:
        return sum(w * e for w, e in zip(self.weights, m))

    def extend(self, names: Sequence[str], weights: Optional[Sequence[int]] = None) -> "Ring":
        """A ring with extra variables appended after the existing ones."""
        weights = tuple(weights) if weights is not None else (1,) * len(names)
        return Ring(self.names + tuple(names), self.weights + weights)

    def monomials_of_degree(self, d: int) -> Iterable[Monomial]:
        """All monomials of weighted degree d (positive weights only)."""
        if any(w == 0 for w in self.weights):
            raise UsageError("graded pieces are infinite when a variable has weight 0")
        yield from _compositions(d, self.weights)

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


def _compositions(d: int, weights: Sequence[int]) -> Iterable[Monomial]:
    if not weights:
        if d == 0:
            yield ()
        return
    w = weights[0]
    for e in range(d // w, -1, -1):
        for rest in _compositions(d - w * e, weights[1:]):
            yield (e,) + rest


# ---------------------------------------------------------------------------
# Monomial orders
# ---------------------------------------------------------------------------

_KINDS = ("lex", "deglex", "degrevlex", "elimination", "weighted")


@dataclass(frozen=True)
class MonomialOrder:
    """A multiplicative well-order on exponent vectors.

    ``perm`` lists variable indices from highest to lowest priority (default:
    the ring order). ``blocks`` gives block sizes along ``perm`` for
    elimination orders; each block is compared by degrevlex and earlier
    blocks dominate. ``weights`` is the weight vector of a weighted order,
    ties broken by ``tie``.

    ``key(m)`` maps a monomial to a tuple whose natural comparison agrees
    with the order, so ``max(terms, key=order.key)`` is the leading monomial.
    """

    kind: str
    perm: Optional[Tuple[int, ...]] = None
    blocks: Optional[Tuple[int, ...]] = None
    weights: Optional[Tuple[int, ...]] = None
    tie: str = "degrevlex"
    _cache: Dict[Monomial, tuple] = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise UsageError(f"unknown monomial order {self.kind!r}")
        if self.perm is not None:
            object.__setattr__(self, "perm", tuple(self.perm))
            if sorted(self.perm) != list(range(len(self.perm))):
                raise UsageError("perm must be a permutation of the variable indices")
        if self.kind == "elimination" and not self.blocks:
            raise UsageError("elimination order needs block sizes")
        if self.blocks is not None:
            object.__setattr__(self, "blocks", tuple(self.blocks))
        if self.kind == "weighted":
            if self.weights is None:
                raise UsageError("weighted order needs a weight vector")
            object.__setattr__(self, "weights", tuple(self.weights))
            if any(w < 0 for w in self.weights):
                raise UsageError("weights of a weighted order must be non-negative")
            if self.tie not in ("lex", "deglex", "degrevlex"):
                raise UsageError("tie order must be lex, deglex or degrevlex")

    # constructors -----------------------------------------------------
    @classmethod
    def lex(cls, perm=None):
        return cls("lex", perm)

    @classmethod
    def deglex(cls, perm=None):
        return cls("deglex", perm)

    @classmethod
    def degrevlex(cls, perm=None):
        return cls("degrevlex", perm)

    @classmethod
    def elimination(cls, blocks, perm=None):
        return cls("elimination", perm, blocks=tuple(blocks))

    @classmethod
    def weighted(cls, weights, tie="degrevlex", perm=None):
        return cls("weighted", perm, weights=tuple(weights), tie=tie)

    @classmethod
    def by_names(cls, ring: Ring, kind: str, priority: Sequence[str] = (), **kw):
        """Order with the named variables first (in that order), then the rest in ring order."""
        head = [ring.index(n) for n in priority]
        perm = tuple(head + [i for i in range(ring.nvars) if i not in head])
        return cls(kind, perm, **kw)

    # evaluation --------------------------------------------------------
    def _perm(self, n: int) -> Tuple[int, ...]:
        if self.perm is None:
            return tuple(range(n))
        if len(self.perm) != n:
            raise UsageError("monomial order and ring have different numbers of variables")
        return self.perm

    def key(self, m: Monomial) -> tuple:
        k = self._cache.get(m)
        if k is None:
            k = self._key(m)
            self._cache[m] = k
        return k

    def _key(self, m: Monomial) -> tuple:
        p = self._perm(len(m))
        kind = self.kind
        if kind == "lex":
            return tuple(m[i] for i in p)
        if kind == "deglex":
            return (sum(m),) + tuple(m[i] for i in p)
        if kind == "degrevlex":
            return _drl(m, p)
        if kind == "weighted":
            w = sum(a * b for a, b in zip(self.weights, m))
            tie = MonomialOrder(self.tie, self.perm)
            return (w,) + tie._key(m)
        key: tuple = ()
        start = 0
        for size in self.blocks:
            key += _drl(m, p[start:start + size])
            start += size
        if start < len(p):
            key += _drl(m, p[start:])
        return key

    def compare(self, m1: Monomial, m2: Monomial) -> int:
        k1, k2 = self.key(m1), self.key(m2)
        return GT if k1 > k2 else LT if k1 < k2 else EQ

    def describe(self, ring: Optional[Ring] = None) -> str:
        if ring is None:
            names = [f"x{i}" for i in (self.perm or ())]
        else:
            names = [ring.names[i] for i in self._perm(ring.nvars)]
        s = f"{self.kind}({'>'.join(names)})" if names else self.kind
        if self.kind == "elimination":
            s += f"[blocks={list(self.blocks)}]"
        if self.kind == "weighted":
            s += f"[w={list(self.weights)}, tie={self.tie}]"
        return s


def _drl(m: Monomial, p: Sequence[int]) -> tuple:
    return (sum(m[i] for i in p),) + tuple(-m[i] for i in reversed(p))


def compare(order: MonomialOrder, m1: Monomial, m2: Monomial) -> int:
    """Return GT (1), EQ (0) or LT (-1) comparing m1 with m2 under order."""
    return order.compare(m1, m2)


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


class Polynomial:
    """An immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Optional[Mapping[Monomial, Scalar]] = None, *, _trusted=False):
        self.ring = ring
        if _trusted:
            self.terms = terms if terms is not None else {}
        else:
            clean = {}
            for m, c in (terms or {}).items():
                m = tuple(m)
                if len(m) != ring.nvars or any(e < 0 for e in m):
                    raise UsageError(f"bad exponent vector {m} for ring {ring.names}")
                c = to_qq(c)
                if c:
                    clean[m] = c
            self.terms = clean
        self._hash = None

    # basic protocol ----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, type(QQ(0)))):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    def __str__(self):
        return format_polynomial(self)

    def _check(self, other: "Polynomial"):
        if other.ring != self.ring:
            raise UsageError(f"ring mismatch: {self.ring.names} vs {other.ring.names}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.const(other)

    # arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = to_qq(other)
            if not c:
                return self.ring.zero
            return Polynomial(self.ring, {m: c * a for m, a in self.terms.items()}, _trusted=True)
        self._check(other)
        out: Dict[Monomial, mpq] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.ring, {m: c for m, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise UsageError("negative powers are not polynomials")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_term(self, m: Monomial, c: Scalar = 1) -> "Polynomial":
        c = to_qq(c)
        if not c:
            return self.ring.zero
        return Polynomial(self.ring, {mono_mul(k, m): c * a for k, a in self.terms.items()}, _trusted=True)

    # inspection --------------------------------------------------------
    def coefficient(self, m: Monomial) -> mpq:
        return self.terms.get(tuple(m), QQ(0))

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def degree(self) -> int:
        """Weighted total degree; -1 for the zero polynomial."""
        return max((self.ring.degree(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({self.ring.degree(m) for m in self.terms}) <= 1

    def variables(self) -> Tuple[str, ...]:
        used = set()
        for m in self.terms:
            used.update(mono_support(m))
        return tuple(self.ring.names[i] for i in sorted(used))

    def sorted_terms(self, order: Optional[MonomialOrder] = None):
        """Terms in descending order (degrevlex in ring order by default)."""
        order = order or _DISPLAY
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        if not self.terms:
            raise UsageError("the zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder) -> mpq:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder) -> "Polynomial":
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    # transformations ---------------------------------------------------
    def substitute(self, var: str, value) -> "Polynomial":
        return self.substitute_many({var: value})

    def substitute_many(self, values: Mapping[str, object]) -> "Polynomial":
        """Replace each named variable by a polynomial (or scalar) of the same ring."""
        idx = {}
        for name, v in values.items():
            i = self.ring.index(name)
            idx[i] = self._coerce(v)
        powers: Dict[Tuple[int, int], Polynomial] = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = idx[i] ** e
            return powers[key]

        out = self.ring.zero
        for m, c in self.terms.items():
            kept = tuple(0 if i in idx else e for i, e in enumerate(m))
            term = Polynomial(self.ring, {kept: c}, _trusted=True)
            for i in idx:
                if m[i]:
                    term = term * power(i, m[i])
            out = out + term
        return out

    def divide_exact_by_var(self, var: str) -> "Polynomial":
        i = self.ring.index(var)
        out = {}
        for m, c in self.terms.items():
            if m[i] == 0:
                raise NotDivisible(f"term {self.ring.format_monomial(m)} of {self} is not divisible by {var}")
            out[m[:i] + (m[i] - 1,) + m[i + 1:]] = c
        return Polynomial(self.ring, out, _trusted=True)

    def embed(self, ring: Ring, rename: Optional[Mapping[str, str]] = None) -> "Polynomial":
        """Map into another ring by variable name (optionally renamed)."""
        rename = rename or {}
        target = [ring.index(rename.get(n, n)) for n in self.ring.names]
        out = {}
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for j, k in zip(target, m):
                e[j] += k
            out[tuple(e)] = c
        return Polynomial(ring, out, _trusted=True)

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial(self.ring, {m: c for m, c in self.terms.items() if self.ring.degree(m) == d}, _trusted=True)


_DISPLAY = MonomialOrder("degrevlex")


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    p._check(q)
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    p._check(q)
    return p * q


def substitute(p: Polynomial, var: str, value) -> Polynomial:
    return p.substitute(var, value)


def divide_exact_by_var(p: Polynomial, var: str) -> Polynomial:
    return p.divide_exact_by_var(var)


def prod(polys: Iterable[Polynomial], ring: Ring) -> Polynomial:
    out = ring.one
    for p in polys:
        out = out * p
    return out


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


def format_polynomial(p: Polynomial, order: Optional[MonomialOrder] = None) -> str:
    if not p.terms:
        return "0"
    chunks = []
    for k, (m, c) in enumerate(p.sorted_terms(order)):
        neg = c < 0
        a = -c if neg else c
        mono = p.ring.format_monomial(m)
        if mono == "1":
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if k == 0:
            chunks.append(("-" if neg else "") + body)
        else:
            chunks.append((" - " if neg else " + ") + body)
    return "".join(chunks)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class _Parser:
    """Recursive-descent parser for sums of products with rational literals."""

    def __init__(self, ring: Ring, text: str):
        self.ring = ring
        self.text = text
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character at position {pos} in {self.text!r}")
            num, name, op = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num), m.start(1)))
            elif name is not None:
                self.tokens.append(("name", name, m.start(2)))
            else:
                self.tokens.append(("op", "^" if op == "**" else op, m.start(3)))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def _take(self):
        tok = self._peek()
        self.i += 1
        return tok

    def _fail(self, what):
        kind, val, pos = self._peek()
        raise ParseError(f"{what} at position {pos} in {self.text!r}")

    def parse(self) -> Polynomial:
        if not self.tokens:
            self._fail("empty polynomial")
        p = self._expr()
        if self.i != len(self.tokens):
            self._fail("trailing input")
        return p

    def _expr(self):
        kind, val, _ = self._peek()
        sign = 1
        if kind == "op" and val in "+-":
            self._take()
            sign = -1 if val == "-" else 1
        out = self._term() * sign
        while True:
            kind, val, _ = self._peek()
            if kind == "op" and val in "+-":
                self._take()
                t = self._term()
                out = out + t if val == "+" else out - t
            else:
                return out

    def _term(self):
        out = self._factor()
        while True:
            kind, val, _ = self._peek()
            if kind == "op" and val == "*":
                self._take()
                out = out * self._factor()
            elif kind == "op" and val == "/":
                self._take()
                d = self._factor()
                if not d.is_constant() or not d:
                    self._fail("division by a non-constant or zero")
                out = out * (1 / d.coefficient(self.ring.one_monomial))
            else:
                return out

    def _factor(self):
        kind, val, _ = self._peek()
        if kind == "op" and val == "-":
            self._take()
            return -self._factor()
        base = self._atom()
        kind, val, _ = self._peek()
        if kind == "op" and val == "^":
            self._take()
            kind, val, _ = self._peek()
            if kind != "num":
                self._fail("expected an integer exponent")
            self._take()
            return base ** val
        return base

    def _atom(self):
        kind, val, _ = self._peek()
        if kind == "num":
            self._take()
            return self.ring.const(val)
        if kind == "name":
            self._take()
            if val not in self.ring.names:
                self._fail(f"unknown variable {val!r}")
            return self.ring.gen(val)
        if kind == "op" and val == "(":
            self._take()
            p = self._expr()
            if self._peek()[:2] != ("op", ")"):
                self._fail("expected ')'")
            self._take()
            return p
        self._fail("expected a number, variable or '('")
