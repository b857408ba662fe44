"""Independent reference computations used only by the tests.

Nothing here imports the package's linear algebra or Groebner code: ranks
use dense Fraction elimination, Groebner bases come from sympy, and matroid
data is enumerated by brute force over all subsets with sympy ranks.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Sequence, Tuple

import sympy


# ---------------------------------------------------------------------------
# dense exact linear algebra
# ---------------------------------------------------------------------------


def frac_rank(rows: Sequence[Sequence]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                a = m[i][c]
                m[i] = [x - a * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


# ---------------------------------------------------------------------------
# polynomials as plain dicts {exponent tuple: Fraction}
# ---------------------------------------------------------------------------


def monomials(nvars: int, d: int) -> List[Tuple[int, ...]]:
    if nvars == 0:
        return [()] if d == 0 else []
    out = []
    for a in range(d, -1, -1):
        for rest in monomials(nvars - 1, d - a):
            out.append((a,) + rest)
    return out


def terms_of(p) -> Dict[Tuple[int, ...], Fraction]:
    return {m: Fraction(int(c.numerator), int(c.denominator)) for m, c in p.terms.items()}


def mul_mono(terms, m):
    return {tuple(a + b for a, b in zip(k, m)): c for k, c in terms.items()}


def mul(a, b):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def degree(terms) -> int:
    return max(sum(m) for m in terms)


def ideal_piece_rows(gens, nvars: int, d: int):
    """Spanning rows of I_d for a homogeneous ideal, in the monomial basis of degree d."""
    basis = monomials(nvars, d)
    index = {m: k for k, m in enumerate(basis)}
    rows = []
    for g in gens:
        e = degree(g)
        if e > d:
            continue
        for m in monomials(nvars, d - e):
            row = [0] * len(basis)
            for t, c in mul_mono(g, m).items():
                row[index[t]] = c
            rows.append(row)
    return basis, index, rows


def hilbert_function(gens, nvars: int, d: int) -> int:
    basis, _, rows = ideal_piece_rows(gens, nvars, d)
    return len(basis) - frac_rank(rows)


def colon_dim(gens, f, nvars: int, d: int) -> int:
    """dim (I : f)_d, as the kernel of S_d -> S_{d+e}/I_{d+e}, g -> g f."""
    e = degree(f)
    basis, index, rows = ideal_piece_rows(gens, nvars, d + e)
    r0 = frac_rank(rows)
    images = []
    for m in monomials(nvars, d):
        row = [0] * len(basis)
        for t, c in mul_mono(f, m).items():
            row[index[t]] = c
        images.append(row)
    r1 = frac_rank(rows + images)
    return len(images) - (r1 - r0)


def free_dims(nvars: int, upto: int) -> List[int]:
    return [comb(d + nvars - 1, nvars - 1) for d in range(upto + 1)]


# ---------------------------------------------------------------------------
# sympy bridges
# ---------------------------------------------------------------------------


def to_sympy(p, symbols):
    expr = sympy.Integer(0)
    for m, c in p.terms.items():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for s, e in zip(symbols, m):
            term *= s ** e
        expr += term
    return sympy.expand(expr)


def sympy_reduced_gb(polys, ring, order: str):
    """Reduced Groebner basis from sympy (monic under ``order``), as a set of sorted term tuples."""
    symbols = sympy.symbols(list(ring.names))
    exprs = [to_sympy(p, symbols) for p in polys]
    if not exprs:
        return set()
    G = sympy.groebner(exprs, *symbols, order=order, domain="QQ")
    return {
        tuple(sorted((m, Fraction(int(c.p), int(c.q))) for m, c in g.terms()))
        for g in G.polys
    }


def frozen_terms(p):
    return tuple(sorted(terms_of(p).items()))


# ---------------------------------------------------------------------------
# matroid data by brute force
# ---------------------------------------------------------------------------


def sub_rank(vectors, S) -> int:
    if not S:
        return 0
    return sympy.Matrix([list(vectors[i]) for i in S]).rank()


def brute_circuits(vectors) -> List[Tuple[int, ...]]:
    n = len(vectors)
    dependent = [S for k in range(1, n + 1) for S in combinations(range(n), k) if sub_rank(vectors, S) < len(S)]
    dep = set(dependent)
    return sorted(S for S in dependent if not any(set(T) < set(S) for T in dep))


def brute_closure(vectors, S) -> Tuple[int, ...]:
    r = sub_rank(vectors, S)
    return tuple(i for i in range(len(vectors)) if sub_rank(vectors, tuple(S) + (i,)) == r)


def brute_faces(vectors, forbidden) -> List[Tuple[int, ...]]:
    n = len(vectors)
    return [S for k in range(n + 1) for S in combinations(range(n), k) if not any(set(F) <= set(S) for F in forbidden)]


def h_vector_by_series(f: Sequence[int], d: int) -> List[int]:
    """h from f by expanding sum f_{i-1} t^i (1-t)^{d-i} with sympy."""
    t = sympy.symbols("t")
    expr = sum(f[i] * t ** i * (1 - t) ** (d - i) for i in range(len(f)))
    poly = sympy.Poly(sympy.expand(expr), t)
    coeffs = [int(poly.coeff_monomial(t ** k)) for k in range(poly.degree() + 1)] if expr != 0 else []
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs
