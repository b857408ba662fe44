"""Buchberger's algorithm and the graded-ring machinery built on it.

All arithmetic is exact. Bases are reduced and monic, and the whole pipeline
is deterministic: S-pairs are processed by (degree of lcm, pair index) and
the final basis is sorted by leading monomial, largest first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .errors import Inhomogeneous, OracleScale, UsageError
from .linalg import axpy
from .polyring import (
    QQ,
    Monomial,
    MonomialOrder,
    Polynomial,
    Ring,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    mono_support,
)

Terms = Dict[Monomial, mpq]


# ---------------------------------------------------------------------------
# data types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ideal:
    """An ideal given by generators in a fixed ring. Zero generators are dropped."""

    ring: Ring
    generators: Tuple[Polynomial, ...]

    def __init__(self, ring: Ring, generators: Iterable[Polynomial] = ()):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise UsageError("generator lives in a different ring")
            if g:
                gens.append(g)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", tuple(gens))

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def __len__(self):
        return len(self.generators)

    def to_dict(self) -> dict:
        return {"ring": list(self.ring.names), "generators": [str(g) for g in self.generators]}


class GroebnerBasis:
    """A reduced Gröbner basis together with its monomial order.

    Normal forms of monomials are memoized, so repeated normal-form
    computations in the same graded pieces are cheap.
    """

    def __init__(self, ring: Ring, order: MonomialOrder, basis: Sequence[Polynomial]):
        self.ring = ring
        self.order = order
        self.basis = tuple(basis)
        self._lead = []
        for g in self.basis:
            lm = g.leading_monomial(order)
            tail = {m: c for m, c in g.terms.items() if m != lm}
            self._lead.append((lm, tail))
        self._memo: Dict[Monomial, Terms] = {}

    @property
    def leading_monomials(self) -> List[Monomial]:
        return [lm for lm, _ in self._lead]

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def is_unit(self) -> bool:
        return any(not any(lm) for lm in self.leading_monomials)

    def _divisor(self, m: Monomial):
        for lm, tail in self._lead:
            if mono_divides(lm, m):
                return lm, tail
        return None

    def is_standard(self, m: Monomial) -> bool:
        return self._divisor(m) is None

    def normal_form_monomial(self, m: Monomial) -> Terms:
        memo = self._memo
        if m in memo:
            return memo[m]
        stack = [m]
        while stack:
            x = stack[-1]
            if x in memo:
                stack.pop()
                continue
            hit = self._divisor(x)
            if hit is None:
                memo[x] = {x: QQ(1)}
                stack.pop()
                continue
            lm, tail = hit
            q = mono_div(x, lm)
            deps = [mono_mul(t, q) for t in tail]
            missing = [y for y in deps if y not in memo]
            if missing:
                stack.extend(missing)
                continue
            res: Terms = {}
            for t, c in tail.items():
                axpy(res, -c, memo[mono_mul(t, q)])
            memo[x] = res
            stack.pop()
        return memo[m]

    def normal_form_terms(self, terms: Terms) -> Terms:
        out: Terms = {}
        for m, c in terms.items():
            axpy(out, c, self.normal_form_monomial(m))
        return out

    def normal_form(self, p: Polynomial) -> Polynomial:
        if p.ring != self.ring:
            raise UsageError("polynomial and basis live in different rings")
        return Polynomial(self.ring, self.normal_form_terms(p.terms), _trusted=True)

    def contains(self, p: Polynomial) -> bool:
        return not self.normal_form(p)

    def to_dict(self) -> dict:
        return {
            "order": self.order.describe(self.ring),
            "ring": list(self.ring.names),
            "basis": [str(g) for g in self.basis],
        }


@dataclass(frozen=True)
class HilbertSeries:
    """numerator(t) / (1-t)^denom_power in lowest terms.

    The numerator is not divisible by (1-t) unless the denominator is already
    trivial.
    """

    numerator: Tuple[int, ...]
    denom_power: int

    def __post_init__(self):
        num = [int(x) for x in self.numerator]
        k = int(self.denom_power)
        while num and num[-1] == 0:
            num.pop()
        while num and k > 0 and sum(num) == 0:
            num = _divide_one_minus_t(num)
            k -= 1
        if not num:
            k = 0
        object.__setattr__(self, "numerator", tuple(num))
        object.__setattr__(self, "denom_power", k)

    def coefficients(self, upto: int) -> List[int]:
        """dim of the graded pieces 0..upto."""
        out = []
        for d in range(upto + 1):
            if self.denom_power == 0:
                out.append(self.numerator[d] if d < len(self.numerator) else 0)
            else:
                k = self.denom_power
                out.append(sum(a * comb(d - i + k - 1, k - 1) for i, a in enumerate(self.numerator) if i <= d))
        return out

    def over_one_minus_t(self, k: int = 1) -> "HilbertSeries":
        return HilbertSeries(self.numerator, self.denom_power + k)

    def times_one_minus_t(self, k: int = 1) -> "HilbertSeries":
        num = list(self.numerator)
        power = self.denom_power - k
        while power < 0:
            num = _mul_one_minus_t(num)
            power += 1
        return HilbertSeries(tuple(num), power)

    @classmethod
    def from_h_vector(cls, h: Sequence[int], d: int) -> "HilbertSeries":
        return cls(tuple(h), d)

    def to_dict(self) -> dict:
        return {"numerator": list(self.numerator), "denom_power": self.denom_power}

    def __str__(self):
        num = _format_tpoly(self.numerator)
        if self.denom_power == 0:
            return num
        if len([a for a in self.numerator if a]) > 1:
            num = f"({num})"
        den = "(1 - t)" if self.denom_power == 1 else f"(1 - t)^{self.denom_power}"
        return f"{num}/{den}"


def _divide_one_minus_t(num: List[int]) -> List[int]:
    out, acc = [], 0
    for a in num[:-1]:
        acc += a
        out.append(acc)
    return out


def _mul_one_minus_t(num: List[int]) -> List[int]:
    return [a - b for a, b in zip(list(num) + [0], [0] + list(num))]


def _format_tpoly(coeffs: Sequence[int]) -> str:
    parts = []
    for i, a in enumerate(coeffs):
        if not a:
            continue
        mono = "" if i == 0 else "t" if i == 1 else f"t^{i}"
        body = str(abs(a)) if not mono else (mono if abs(a) == 1 else f"{abs(a)}*{mono}")
        sign = "-" if a < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


# ---------------------------------------------------------------------------
# reduction and Buchberger
# ---------------------------------------------------------------------------


def _reduce(f: Terms, basis: Sequence[Tuple[Monomial, Terms]], key) -> Terms:
    """Full reduction of f by monic polynomials given as (lm, terms)."""
    f = dict(f)
    rem: Terms = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for lm, g in basis:
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                for gm, gc in g.items():
                    t = mono_mul(gm, q)
                    v = f.get(t, 0) - c * gc
                    if v:
                        f[t] = v
                    else:
                        f.pop(t, None)
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def _monic(terms: Terms, key) -> Tuple[Monomial, Terms]:
    lm = max(terms, key=key)
    inv = 1 / terms[lm]
    return lm, {m: c * inv for m, c in terms.items()}


def _spoly(a: Tuple[Monomial, Terms], b: Tuple[Monomial, Terms]) -> Terms:
    (la, fa), (lb, fb) = a, b
    L = mono_lcm(la, lb)
    qa, qb = mono_div(L, la), mono_div(L, lb)
    out: Terms = {}
    for m, c in fa.items():
        out[mono_mul(m, qa)] = c
    for m, c in fb.items():
        t = mono_mul(m, qb)
        v = out.get(t, 0) - c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(p)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    a = _monic(f.terms, order.key)
    b = _monic(g.terms, order.key)
    return Polynomial(f.ring, _spoly(a, b), _trusted=True)


def buchberger(ideal: Ideal, order: MonomialOrder, check: bool = True) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal under the given order.

    Uses the normal selection strategy with Buchberger's coprime and chain
    criteria. With ``check`` the result is re-verified: reducedness and
    reduction of every S-polynomial to zero.
    """
    ring = ideal.ring
    key = order.key
    G: List[Tuple[Monomial, Terms]] = []
    pairs = set()

    def append(terms):
        G.append(_monic(terms, key))
        new = len(G) - 1
        for i in range(new):
            pairs.add((i, new))

    for g in ideal.generators:
        r = _reduce(g.terms, G, key)
        if r:
            append(r)

    def pair_key(p):
        return (sum(mono_lcm(G[p[0]][0], G[p[1]][0])), p)

    while pairs:
        p = min(pairs, key=pair_key)
        pairs.discard(p)
        i, j = p
        li, lj = G[i][0], G[j][0]
        if all(not (x and y) for x, y in zip(li, lj)):
            continue
        L = mono_lcm(li, lj)
        if any(
            k != i and k != j
            and mono_divides(G[k][0], L)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue
        r = _reduce(_spoly(G[i], G[j]), G, key)
        if r:
            append(r)

    basis = _interreduce(G, key)
    out = GroebnerBasis(ring, order, [Polynomial(ring, t, _trusted=True) for _, t in basis])
    if check:
        ok, witness = is_groebner_basis(out.basis, order)
        if not ok or not is_reduced(out):
            raise AssertionError(f"Buchberger produced a non-Gröbner basis; witness {witness}")
    return out


def _interreduce(G, key):
    minimal = []
    for lm, t in sorted(G, key=lambda g: key(g[0])):
        if not any(mono_divides(m, lm) for m, _ in minimal):
            minimal.append((lm, t))
    out = []
    for k, (lm, t) in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        tail = {m: c for m, c in t.items() if m != lm}
        red = _reduce(tail, others, key)
        red[lm] = QQ(1)
        out.append((lm, red))
    out.sort(key=lambda g: key(g[0]), reverse=True)
    return out


def is_groebner_basis(polys: Sequence[Polynomial], order: MonomialOrder):
    """Do all S-polynomials of the set reduce to zero? Returns (ok, witness S-pair)."""
    key = order.key
    G = [_monic(p.terms, key) for p in polys if p]
    for i, j in combinations(range(len(G)), 2):
        li, lj = G[i][0], G[j][0]
        if all(not (x and y) for x, y in zip(li, lj)):
            continue
        r = _reduce(_spoly(G[i], G[j]), G, key)
        if r:
            return False, (i, j)
    return True, None


def is_reduced(gb: GroebnerBasis) -> bool:
    lms = gb.leading_monomials
    for k, (g, lm) in enumerate(zip(gb.basis, lms)):
        if g.terms[lm] != 1:
            return False
        for j, other in enumerate(lms):
            if j == k:
                continue
            if any(mono_divides(other, m) for m in g.terms):
                return False
    return True


def ideal_membership(p: Polynomial, gb: GroebnerBasis) -> bool:
    return gb.contains(p)


def initial_ideal(gb: GroebnerBasis) -> Ideal:
    return Ideal(gb.ring, [gb.ring.monomial(lm) for lm in gb.leading_monomials])


def graded_piece_basis(gb: GroebnerBasis, degree: int) -> List[Monomial]:
    """Standard monomials of the given degree, largest first under the basis order."""
    out = [m for m in gb.ring.monomials_of_degree(degree) if gb.is_standard(m)]
    out.sort(key=gb.order.key, reverse=True)
    return out


# ---------------------------------------------------------------------------
# Hilbert series
# ---------------------------------------------------------------------------


def _minimalize(monos: Iterable[Monomial]) -> FrozenSet[Monomial]:
    ms = sorted(set(monos), key=lambda m: (sum(m), m))
    keep = []
    for m in ms:
        if not any(mono_divides(k, m) for k in keep):
            keep.append(m)
    return frozenset(keep)


@lru_cache(maxsize=None)
def _hilbert_numerator(gens: FrozenSet[Monomial], nvars: int) -> Tuple[int, ...]:
    """K-polynomial of S/I for a minimal monomial generating set, over (1-t)^nvars."""
    if not gens:
        return (1,)
    heavy = sorted((m for m in gens if sum(m) > 1), key=lambda m: (sum(m), m))
    if not heavy:
        # I generated by k variables: S/I has K-polynomial (1-t)^k
        num = [1]
        for _ in gens:
            num = _mul_one_minus_t(num)
        return tuple(num)
    first = heavy[0]
    counts = {i: sum(1 for m in gens if m[i]) for i in mono_support(first)}
    x = max(counts, key=lambda i: (counts[i], -i))
    xm = tuple(1 if j == x else 0 for j in range(nvars))
    plus = _minimalize([m for m in gens if not m[x]] + [xm])
    colon = _minimalize(tuple(e - 1 if j == x and e else e for j, e in enumerate(m)) for m in gens)
    a = _hilbert_numerator(plus, nvars)
    b = _hilbert_numerator(colon, nvars)
    out = [0] * max(len(a), len(b) + 1)
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i + 1] += c
    return tuple(out)


def monomial_hilbert_series(monos: Iterable[Monomial], nvars: int) -> HilbertSeries:
    gens = _minimalize(monos)
    return HilbertSeries(_hilbert_numerator(gens, nvars), nvars)


def hilbert_series_quotient(ideal: Ideal, order: Optional[MonomialOrder] = None, gb: Optional[GroebnerBasis] = None) -> HilbertSeries:
    """Hilbert series of ring/ideal via the initial ideal."""
    ring = ideal.ring
    if any(w != 1 for w in ring.weights):
        raise UsageError("Hilbert series are computed for standard-graded rings only")
    if not ideal.is_homogeneous():
        bad = next(g for g in ideal.generators if not g.is_homogeneous())
        raise Inhomogeneous(f"generator {bad} is not homogeneous")
    if gb is None:
        gb = buchberger(ideal, order or MonomialOrder.degrevlex())
    return monomial_hilbert_series(gb.leading_monomials, ring.nvars)


# ---------------------------------------------------------------------------
# colon, saturation, dimension
# ---------------------------------------------------------------------------


def _fresh_name(ring: Ring, base: str) -> str:
    name, k = base, 0
    while name in ring.names:
        k += 1
        name = f"{base}{k}"
    return name


def exact_quotient(p: Polynomial, f: Polynomial) -> Polynomial:
    """p / f when f divides p exactly."""
    order = MonomialOrder.degrevlex()
    lf = f.leading_monomial(order)
    cf = f.terms[lf]
    rem = dict(p.terms)
    quot: Terms = {}
    while rem:
        m = max(rem, key=order.key)
        if not mono_divides(lf, m):
            raise ArithmeticError(f"{f} does not divide {p}")
        q = mono_div(m, lf)
        c = rem[m] / cf
        quot[q] = c
        for t, a in f.terms.items():
            tq = mono_mul(t, q)
            v = rem.get(tq, 0) - c * a
            if v:
                rem[tq] = v
            else:
                rem.pop(tq, None)
    return Polynomial(p.ring, quot, _trusted=True)


def intersect_principal(I: Ideal, f: Polynomial) -> List[Polynomial]:
    """Generators of I ∩ <f> by eliminating t from t*I + (1-t)*<f>."""
    ring = I.ring
    t = _fresh_name(ring, "t")
    big = ring.extend([t], [0])
    T = big.gen(t)
    gens = [T * g.embed(big) for g in I.generators] + [(1 - T) * f.embed(big)]
    perm = (big.nvars - 1,) + tuple(range(ring.nvars))
    gb = buchberger(Ideal(big, gens), MonomialOrder.elimination([1], perm))
    ti = big.index(t)
    return [
        Polynomial(ring, {m[:ti] + m[ti + 1:]: c for m, c in g.terms.items()}, _trusted=True)
        for g in gb.basis
        if all(m[ti] == 0 for m in g.terms)
    ]


def colon_ideal(I: Ideal, f: Polynomial) -> Ideal:
    """(I : f) = {g : g f in I}."""
    if not f:
        raise UsageError("colon by zero")
    return Ideal(I.ring, [exact_quotient(g, f) for g in intersect_principal(I, f)])


def ideal_contains(gb: GroebnerBasis, J: Ideal) -> bool:
    return all(gb.contains(g) for g in J.generators)


def same_ideal(I: Ideal, J: Ideal, order: Optional[MonomialOrder] = None) -> bool:
    order = order or MonomialOrder.degrevlex()
    return ideal_contains(buchberger(I, order), J) and ideal_contains(buchberger(J, order), I)


def saturation(I: Ideal, f: Polynomial, max_steps: int = 64) -> Ideal:
    """(I : f^∞), by iterating colon ideals until they stabilise."""
    order = MonomialOrder.degrevlex()
    current = Ideal(I.ring, buchberger(I, order).basis)
    for _ in range(max_steps):
        nxt = colon_ideal(current, f)
        gb = buchberger(nxt, order)
        cur_gb = buchberger(current, order)
        if ideal_contains(cur_gb, Ideal(I.ring, gb.basis)):
            return current
        current = Ideal(I.ring, gb.basis)
    raise RuntimeError("saturation did not stabilise")


def _min_hitting_set(supports: List[FrozenSet[int]]) -> int:
    if not supports:
        return 0
    first = min(supports, key=lambda s: (len(s), sorted(s)))
    return min(1 + _min_hitting_set([s for s in supports if v not in s]) for v in sorted(first))


def krull_dimension(I: Ideal, order: Optional[MonomialOrder] = None) -> int:
    """Dimension of ring/I: the largest set of variables containing no
    initial-ideal generator's support. Returns -1 for the unit ideal."""
    gb = buchberger(I, order or MonomialOrder.degrevlex())
    lms = _minimalize(gb.leading_monomials)
    if any(not any(m) for m in lms):
        return -1
    supports = [frozenset(mono_support(m)) for m in lms]
    n = I.ring.nvars
    return n - _min_hitting_set(supports)


# ---------------------------------------------------------------------------
# the elimination oracle for the Orlik-Terao ideal
# ---------------------------------------------------------------------------

ORACLE_MAX_N = 6


def kernel_by_elimination(config, max_n: int = ORACLE_MAX_N) -> Ideal:
    """Kernel of u_i -> 1/a_i(x), computed by elimination.

    The ideal <u_i a_i(x) - 1> is the ideal of the graph of x -> (1/a_i(x))
    over the arrangement complement, which is prime, so eliminating the
    x-variables gives the kernel directly.
    """
    if config.n > max_n:
        raise OracleScale(f"elimination oracle limited to n <= {max_n}, got n = {config.n}")
    xs = [f"x{j + 1}" for j in range(config.d)]
    us = [f"u{i + 1}" for i in range(config.n)]
    big = Ring(tuple(xs + us))
    X = [big.gen(x) for x in xs]
    gens = []
    for i, a in enumerate(config.vectors):
        form = big.zero
        for c, x in zip(a, X):
            if c:
                form = form + x * c
        gens.append(big.gen(us[i]) * form - 1)
    gb = buchberger(Ideal(big, gens), MonomialOrder.elimination([config.d]))
    ring = Ring(tuple(us))
    d = config.d
    out = [
        Polynomial(ring, {m[d:]: c for m, c in g.terms.items()}, _trusted=True)
        for g in gb.basis
        if all(not any(m[:d]) for m in g.terms)
    ]
    return Ideal(ring, out)
