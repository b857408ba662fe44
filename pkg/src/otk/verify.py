"""Degree-by-degree checks of the algebraic identities relating the rings in
:mod:`otk.algebras`.

All subspace arithmetic for the map psi: H*_T -> R'_T happens in the
standard-monomial coordinates of GB(J0) under deglex with u1 > ... > un > h.
psi is pinned down by psi(m * u_S) = m * u_S for S independent and m a
monomial in the structure forms and h; it is built by row-reducing, for the
whole spanning family at once, each element's H-coordinates side by side
with its R'-coordinates. A combination that vanishes in H but not in R' is a
syzygy psi fails to respect, and is reported as such.

Results are per degree up to a bound, so a pass means "verified through
degree D", not a proof.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from . import algebras as alg
from .errors import InvalidConfig, PsiIllDefined, SpanFailure, UsageError
from .groebner import (
    ORACLE_MAX_N,
    GroebnerBasis,
    HilbertSeries,
    Ideal,
    buchberger,
    graded_piece_basis,
    hilbert_series_quotient,
    is_groebner_basis,
    kernel_by_elimination,
    krull_dimension,
    same_ideal,
    saturation,
)
from .linalg import Echelon, Vector, kernel_basis, mat_vec, matrix_rank, rref_rows, to_matrix
from .matroid import (
    VectorConfig,
    complex_summary,
    independent_sets,
    is_unimodular,
    one_based,
    validate,
)
from .polyring import Monomial, MonomialOrder, Polynomial, Ring

PASS, FAIL = "pass", "fail"

# checks below this size run every lex order; above it a seeded sample
FULL_LEX_MAX_N = 6
SAMPLED_PERMUTATIONS = 20
ELIMINATION_MAX_N = 5


def default_degree_bound(config: VectorConfig) -> int:
    return 2 * (config.d + 1)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    status: str
    degrees: Optional[int] = None
    details: dict = field(default_factory=dict)
    witness: Optional[dict] = None
    millis: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self, timing: bool = False) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.degrees is not None:
            out["degrees"] = self.degrees
        if self.details:
            out["details"] = self.details
        if self.witness is not None:
            out["witness"] = self.witness
        if timing and self.millis is not None:
            out["millis"] = self.millis
        return out


@dataclass
class VerificationReport:
    config: dict
    checks: List[CheckResult] = field(default_factory=list)
    series: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self, timing: bool = False) -> dict:
        return {
            "config": self.config,
            "checks": [c.to_dict(timing) for c in self.checks],
            "series": self.series,
        }


def _result(name, ok, degrees=None, details=None, witness=None) -> CheckResult:
    return CheckResult(name, PASS if ok else FAIL, degrees, details or {}, None if ok else witness)


def _report(config: VectorConfig, checks: List[CheckResult]) -> VerificationReport:
    return VerificationReport(config.to_dict(), checks)


# ---------------------------------------------------------------------------
# coordinates on graded pieces
# ---------------------------------------------------------------------------


def paper_order() -> MonomialOrder:
    """deglex with the variables in ring order (u1 > ... > un > h)."""
    return MonomialOrder.deglex()


class GradedQuotient:
    """Standard-monomial coordinates on the graded pieces of ring/ideal."""

    def __init__(self, ideal: Ideal, order: Optional[MonomialOrder] = None):
        self.ring = ideal.ring
        self.gb: GroebnerBasis = buchberger(ideal, order or paper_order())
        self._bases: Dict[int, List[Monomial]] = {}
        self._index: Dict[int, Dict[Monomial, int]] = {}

    def basis(self, d: int) -> List[Monomial]:
        if d not in self._bases:
            b = graded_piece_basis(self.gb, d)
            self._bases[d] = b
            self._index[d] = {m: k for k, m in enumerate(b)}
        return self._bases[d]

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def coords(self, p: Polynomial, d: int) -> Vector:
        self.basis(d)
        idx = self._index[d]
        nf = self.gb.normal_form_terms(p.terms)
        return {idx[m]: c for m, c in nf.items()}

    def polynomial(self, v: Vector, d: int) -> Polynomial:
        b = self.basis(d)
        return Polynomial(self.ring, {b[k]: c for k, c in v.items()})


class FormProducts:
    """Monomials in a list of linear forms, cached by exponent vector."""

    def __init__(self, forms: Sequence[Polynomial], ring: Ring):
        self.forms = list(forms)
        self.ring = ring
        self._cache: Dict[Tuple[int, ...], Polynomial] = {(0,) * len(self.forms): ring.one}

    def get(self, exps: Tuple[int, ...]) -> Polynomial:
        if exps not in self._cache:
            k = max(i for i, e in enumerate(exps) if e)
            lower = exps[:k] + (exps[k] - 1,) + exps[k + 1:]
            self._cache[exps] = self.get(lower) * self.forms[k]
        return self._cache[exps]

    def of_degree(self, d: int) -> Iterable[Tuple[Tuple[int, ...], Polynomial]]:
        for exps in _exponents(len(self.forms), d):
            yield exps, self.get(exps)


def _exponents(k: int, d: int) -> Iterable[Tuple[int, ...]]:
    """Exponent vectors of length k and total d, in lex-descending order."""
    if k == 0:
        if d == 0:
            yield ()
        return
    for a in range(d, -1, -1):
        for rest in _exponents(k - 1, d - a):
            yield (a,) + rest


class Workspace:
    """Shared data for one configuration: rings, quotients and the spanning family."""

    def __init__(self, config: VectorConfig):
        self.config = config
        self.ring = alg.hbar_ring(config.n)
        self.H = GradedQuotient(alg.build_J0(config).ideal)
        self.R = GradedQuotient(alg.build_J1prime(config).ideal)
        self.forms = alg.structure_map(config, self.ring) + [self.ring.gen("h")]
        self.products = FormProducts(self.forms, self.ring)
        self.independent = independent_sets(config)

    def spanning_family(self, d: int):
        """(S, exponents, m * u_S) for S independent and m of degree d - |S|."""
        for S in self.independent:
            if len(S) > d:
                continue
            uS = alg.u_set(self.ring, S)
            for exps, m in self.products.of_degree(d - len(S)):
                yield S, exps, m * uS

    def w_family(self, d: int):
        """(S, C, exponents, m * u_S f_C) for the pairs defining W."""
        for S, C in alg.W_pairs(self.config):
            base = len(S) + len(C.support) - 1
            if base > d:
                continue
            g = alg.u_set(self.ring, S) * alg.f_C(C, self.ring)
            for exps, m in self.products.of_degree(d - base):
                yield S, C, exps, m * g

    def describe(self, S, exps) -> str:
        names = [f"x{j + 1}" for j in range(self.config.d)] + ["h"]
        parts = [f"{n}^{e}" if e > 1 else n for n, e in zip(names, exps) if e]
        parts += [f"u{i + 1}" for i in S]
        return "*".join(parts) or "1"


# ---------------------------------------------------------------------------
# the map psi
# ---------------------------------------------------------------------------


@dataclass
class GradedPiece:
    degree: int
    source_basis: List[Monomial]
    target_basis: List[Monomial]
    columns: List[Vector]  # image of each source basis element, in target coordinates
    family_size: int
    syzygies_checked: int

    @cached_property
    def rank(self) -> int:
        return matrix_rank(self.columns, len(self.target_basis))

    def kernel(self) -> List[Vector]:
        return kernel_basis(self.columns, len(self.target_basis))

    def matrix(self) -> List[List[mpq]]:
        """Dense matrix, rows indexed by the target basis, columns by the source basis."""
        return [[col.get(r, mpq(0)) for col in self.columns] for r in range(len(self.target_basis))]


@dataclass
class GradedMap:
    source: alg.Presentation
    target: alg.Presentation
    pieces: Dict[int, GradedPiece]
    degree_bound: int

    def __call__(self, v: Vector, d: int) -> Vector:
        return mat_vec(self.pieces[d].columns, v)

    def to_dict(self) -> dict:
        ring = self.source.ring
        out = []
        for d in range(self.degree_bound + 1):
            p = self.pieces[d]
            out.append({
                "degree": d,
                "source_basis": [ring.format_monomial(m) for m in p.source_basis],
                "target_basis": [ring.format_monomial(m) for m in p.target_basis],
                "matrix": [[str(x) for x in row] for row in p.matrix()],
            })
        return {"source": self.source.name, "target": self.target.name, "pieces": out}


def _psi_piece(ws: Workspace, d: int) -> GradedPiece:
    """Row-reduce [H-coordinates | R'-coordinates] over the whole spanning family.

    With the H block first, a pivot in the R' block is a combination of the
    family that vanishes in H but not in R': a syzygy psi does not respect.
    Otherwise the first dim H rows read [I | psi^T].
    """
    H, R = ws.H, ws.R
    nh, nr = H.dim(d), R.dim(d)
    rows = []
    for S, exps, poly in ws.spanning_family(d):
        row = H.coords(poly, d)
        for k, v in R.coords(poly, d).items():
            row[nh + k] = v
        rows.append(row)
    red = rref_rows(rows, nh + nr)
    for row in red:
        if min(row) >= nh:
            image = {k - nh: v for k, v in row.items()}
            raise PsiIllDefined(
                f"degree {d}: a relation among the spanning family maps to a nonzero class",
                d,
                {"image": str(R.polynomial(image, d))},
            )
    if len(red) < nh:
        raise SpanFailure(f"degree {d}: the independent-monomial family spans {len(red)} of {nh} dimensions", d)
    columns = [{k - nh: v for k, v in red[j].items() if k >= nh} for j in range(nh)]
    return GradedPiece(d, H.basis(d), R.basis(d), columns, len(rows), len(rows) - nh)


def build_psi(config: VectorConfig, degree_bound: int, workspace: Optional[Workspace] = None) -> GradedMap:
    if degree_bound < 0:
        raise UsageError("degree bound must be non-negative")
    ws = workspace or Workspace(config)
    pieces = {d: _psi_piece(ws, d) for d in range(degree_bound + 1)}
    return GradedMap(alg.build_J0(config), alg.build_J1prime(config), pieces, degree_bound)


def kernel_dimensions(psi: GradedMap) -> List[int]:
    return [len(p.source_basis) - p.rank for _, p in sorted(psi.pieces.items())]


# ---------------------------------------------------------------------------
# Ker psi = W
# ---------------------------------------------------------------------------


def w_vectors(ws: Workspace, d: int) -> Tuple[List[str], List[Vector]]:
    """H-coordinates of the spanning family of W_d, with labels."""
    labels, vectors = [], []
    for S, C, exps, poly in ws.w_family(d):
        labels.append(f"{ws.describe((), exps)} * u_{one_based(S)} f_{one_based(C.support)}")
        vectors.append(ws.H.coords(poly, d))
    return labels, vectors


def psi_degree_table(config: VectorConfig, degree_bound: int, workspace: Optional[Workspace] = None) -> List[dict]:
    """Per degree: dim H, dim R', rank psi, dim Ker psi, dim W, and whether W lies in Ker psi."""
    ws = workspace or Workspace(config)
    psi = build_psi(config, degree_bound, ws)
    rows = []
    for d in range(degree_bound + 1):
        piece = psi.pieces[d]
        nh, nr = len(piece.source_basis), len(piece.target_basis)
        labels, W = w_vectors(ws, d)
        outside = None
        if W and nr:
            # psi(w) for every w at once: (W as rows) times psi^T
            images = to_matrix(W, nh) * to_matrix(piece.columns, nr)
            table = images.table()
            for i, row in enumerate(table):
                if any(x != 0 for x in row):
                    outside = {"degree": d, "generator": labels[i], "polynomial": str(ws.H.polynomial(W[i], d))}
                    break
        rows.append({
            "degree": d,
            "cohomological_degree": 2 * d,
            "dim_H": nh,
            "dim_R": nr,
            "rank_psi": piece.rank,
            "dim_ker": nh - piece.rank,
            "dim_W": matrix_rank(W, nh),
            "W_in_ker": outside is None,
            "witness": outside,
        })
    return rows


def verify_kernel_equals_W(config: VectorConfig, degree_bound: Optional[int] = None) -> VerificationReport:
    bound = default_degree_bound(config) if degree_bound is None else degree_bound
    checks = []
    try:
        rows = psi_degree_table(config, bound)
    except PsiIllDefined as exc:
        checks.append(_result("psi_well_defined", False, exc.degree, witness={"degree": exc.degree, **exc.witness, "message": str(exc)}))
        return _report(config, checks)
    except SpanFailure as exc:
        checks.append(_result("psi_well_defined", True, bound))
        checks.append(_result("psi_spanning", False, exc.degree, witness={"degree": exc.degree, "message": str(exc)}))
        return _report(config, checks)
    checks.append(_result("psi_well_defined", True, bound))
    checks.append(_result("psi_spanning", True, bound))
    bad = next((r for r in rows if r["rank_psi"] != r["dim_R"]), None)
    checks.append(_result("psi_surjective", bad is None, bound, {"rank": [r["rank_psi"] for r in rows], "dim_R": [r["dim_R"] for r in rows]},
                          witness=bad and {"degree": bad["degree"], "rank": bad["rank_psi"], "dim_R": bad["dim_R"]}))
    bad = next((r for r in rows if not r["W_in_ker"]), None)
    checks.append(_result("W_in_ker_psi", bad is None, bound, witness=bad and bad["witness"]))
    bad = next((r for r in rows if r["dim_W"] != r["dim_ker"]), None)
    checks.append(_result(
        "ker_psi_equals_W", bad is None and all(r["W_in_ker"] for r in rows), bound,
        {"dim_ker": [r["dim_ker"] for r in rows], "dim_W": [r["dim_W"] for r in rows]},
        witness=bad and {"degree": bad["degree"], "dim_ker": bad["dim_ker"], "dim_W": bad["dim_W"]},
    ))
    return _report(config, checks)


# ---------------------------------------------------------------------------
# the initial-ideal argument in k[u]/<u_C>
# ---------------------------------------------------------------------------


def _exponent_vectors(k: int, max_total: int):
    for total in range(max_total + 1):
        yield from _exponents(k, total)


def initial_ideal_tuples(config: VectorConfig, max_total: int = 2):
    """(S, C, d, e) with S ∪ C̄ independent and |d| + |e| <= max_total."""
    for S, C in alg.W_pairs(config):
        cbar = alg.c_bar(C)
        for d in _exponent_vectors(len(S), max_total):
            for e in _exponent_vectors(len(cbar), max_total - sum(d)):
                yield S, C, d, e


def verify_initial_ideal_argument(config: VectorConfig, max_total: int = 2) -> VerificationReport:
    """Leading terms of f(S,C,d,e) in k[u]/<u_C> under deglex, and membership in W0.

    f(S,C,d,e) = u_S f_{C,0} prod_{i in S} u_i^{d_i} prod_{j in C̄} (C_j u_j - C_jmax u_jmax)^{e_j}.
    Also checks dim W0_k = dim SR_ind_k - dim SR_bc_k, which is what the
    initial-term computation amounts to on Hilbert functions.
    """
    ring = alg.ot_ring(config.n)
    Q = GradedQuotient(alg.build_SR(config, "ind").ideal)
    bc = GradedQuotient(alg.build_SR(config, "bc").ideal)
    products = FormProducts(alg.structure_map(config, ring), ring)
    pairs = [(S, C, alg.u_set(ring, S) * alg.f_C0(C.support, C.eta, ring)) for S, C in alg.W_pairs(config)]
    spans: Dict[int, Echelon] = {}

    def w0(k):
        if k not in spans:
            e = Echelon()
            for S, C, g in pairs:
                base = g.degree()
                if base <= k:
                    for _, m in products.of_degree(k - base):
                        e.add(Q.coords(m * g, k))
            spans[k] = e
        return spans[k]

    count = 0
    top = 0
    for S, C, dv, ev in initial_ideal_tuples(config, max_total):
        count += 1
        cbar = alg.c_bar(C)
        jm = alg.jmax(C)
        f = alg.u_set(ring, S) * alg.f_C0(C.support, C.eta, ring)
        expected = [0] * config.n
        for i in S + cbar:
            expected[i] += 1
        for i, a in zip(S, dv):
            f = f * ring.gen(f"u{i + 1}") ** a
            expected[i] += a
        for j, a in zip(cbar, ev):
            if a:
                lin = ring.gen(f"u{j + 1}") * C.coefficient(j) - ring.gen(f"u{jm + 1}") * C.coefficient(jm)
                f = f * lin ** a
                expected[j] += a
        k = f.degree()
        top = max(top, k)
        nf = Q.polynomial(Q.coords(f, k), k)
        lm = nf.leading_monomial(paper_order()) if nf else None
        tag = {"S": one_based(S), "C": one_based(C.support), "d": list(dv), "e": list(ev)}
        if lm != tuple(expected) or abs(nf.terms[lm]) != 1:
            got = ring.format_monomial(lm) if lm else "0"
            return _report(config, [_result("initial_terms", False, witness={**tag, "leading": got, "expected": ring.format_monomial(tuple(expected))})])
        if not w0(k).contains(Q.coords(f, k)):
            return _report(config, [
                _result("initial_terms", True, details={"tuples": count}),
                _result("W0_membership", False, witness={**tag, "polynomial": str(nf)}),
            ])
    checks = [
        _result("initial_terms", True, details={"tuples": count}),
        _result("W0_membership", True, details={"tuples": count}),
    ]
    dims = [(w0(k).rank, Q.dim(k) - bc.dim(k)) for k in range(top + 1)]
    bad = next((k for k, (a, b) in enumerate(dims) if a != b), None)
    checks.append(_result("W0_hilbert_function", bad is None, top, {"dim_W0": [a for a, _ in dims]},
                          witness={"degree": bad, "dim_W0": dims[bad][0] if bad is not None else None,
                                   "expected": dims[bad][1] if bad is not None else None}))
    return _report(config, checks)


# ---------------------------------------------------------------------------
# universal Groebner basis
# ---------------------------------------------------------------------------


def default_orders(n: int, seed: int = 0) -> List[MonomialOrder]:
    """All n! lex orders for small n, else a seeded sample; plus deglex and degrevlex."""
    if n <= FULL_LEX_MAX_N:
        orders = [MonomialOrder.lex(p) for p in permutations(range(n))]
        return orders + [MonomialOrder.deglex(), MonomialOrder.degrevlex()]
    rng = random.Random(seed)
    perms = []
    for _ in range(SAMPLED_PERMUTATIONS):
        p = list(range(n))
        rng.shuffle(p)
        perms.append(tuple(p))
    return [make(p) for make in (MonomialOrder.lex, MonomialOrder.deglex, MonomialOrder.degrevlex) for p in perms]


def parse_orders(text: str, n: int, seed: int = 0) -> List[MonomialOrder]:
    """Comma-separated kinds: lex (all or sampled), deglex, degrevlex, default."""
    out = []
    for word in [w.strip() for w in text.split(",") if w.strip()]:
        if word == "default":
            out += default_orders(n, seed)
        elif word == "lex":
            out += [o for o in default_orders(n, seed) if o.kind == "lex"]
        elif word in ("deglex", "degrevlex"):
            out.append(MonomialOrder.deglex() if word == "deglex" else MonomialOrder.degrevlex())
        else:
            raise UsageError(f"unknown order {word!r}; use lex, deglex, degrevlex or default")
    return out


def verify_universal_groebner(config: VectorConfig, orders: Optional[Sequence[MonomialOrder]] = None,
                              seed: int = 0, oracle_max_n: int = ELIMINATION_MAX_N) -> VerificationReport:
    """The circuit polynomials f_{C,0} form a Groebner basis under every sampled order.

    Below ``oracle_max_n`` the ideal they generate is also compared with the
    elimination kernel of u_i -> 1/a_i.
    """
    ring = alg.ot_ring(config.n)
    gens = alg.ot_generators(config, ring)
    orders = list(orders) if orders is not None else default_orders(config.n, seed)
    checks = []
    failure = None
    for order in orders:
        ok, pair = is_groebner_basis(gens, order)
        if not ok:
            i, j = pair
            failure = {"order": order.describe(ring), "pair": [str(gens[i]), str(gens[j])]}
            break
    checks.append(_result("universal_groebner", failure is None, details={"orders": len(orders), "generators": len(gens)}, witness=failure))
    if config.n <= min(oracle_max_n, ORACLE_MAX_N):
        kernel = kernel_by_elimination(config)
        gb_ot = buchberger(Ideal(ring, gens), MonomialOrder.degrevlex())
        gb_kernel = buchberger(kernel, MonomialOrder.degrevlex())
        missing = next((g for g in kernel.generators if not gb_ot.contains(g)), None)
        extra = next((g for g in gens if not gb_kernel.contains(g)), None)
        witness = None
        if missing is not None:
            witness = {"kernel_element_outside": str(missing)}
        elif extra is not None:
            witness = {"generator_outside_kernel": str(extra)}
        checks.append(_result("elimination_oracle", witness is None, details={"kernel_basis": len(gb_kernel)}, witness=witness))
    return _report(config, checks)


# ---------------------------------------------------------------------------
# flatness and Hilbert series
# ---------------------------------------------------------------------------


def _series_pair(a: HilbertSeries, b: HilbertSeries) -> dict:
    return {"left": str(a), "right": str(b)}


def verify_flatness(config: VectorConfig) -> VerificationReport:
    """OT_h and AOT_h are h-torsion free with the Hilbert series of a free k[h]-module."""
    checks = []
    for deformed_name, plain_name, deformed, plain in (
        ("OT", "OT", alg.build_OTh(config), alg.build_OT(config)),
        ("AOT", "AOT", alg.build_AOT(config, True), alg.build_AOT(config, False)),
    ):
        h = deformed.ring.gen("h")
        sat = saturation(deformed.ideal, h)
        ok = same_ideal(sat, deformed.ideal)
        checks.append(_result(f"{deformed_name}_h_torsion_free", ok,
                              witness={"saturation": [str(g) for g in sat.generators]}))
        hd = hilbert_series_quotient(deformed.ideal, MonomialOrder.degrevlex())
        hp = hilbert_series_quotient(plain.ideal, MonomialOrder.degrevlex())
        ok = hd == hp.over_one_minus_t()
        details = {"deformed": str(hd), "special_fibre": str(hp)}
        if plain_name == "AOT":
            details["dimension"] = sum(hp.numerator) if hp.denom_power == 0 else None
        checks.append(_result(f"{deformed_name}_h_hilbert", ok, details=details, witness=_series_pair(hd, hp.over_one_minus_t())))
    return _report(config, checks)


def series_summary(config: VectorConfig) -> dict:
    """Hilbert series of every standard-graded presentation, plus h-vectors."""
    out = {}
    unimodular = is_unimodular(config)
    pres = [alg.build_OT(config), alg.build_SR(config, "ind"), alg.build_SR(config, "bc"), alg.build_AOT(config, False)]
    if unimodular:
        pres += [alg.build_OTh(config), alg.build_AOT(config, True)]
        if config.theta is not None:
            pres += [alg.build_J0(config)]
    for p in pres:
        out[p.name] = str(hilbert_series_quotient(p.ideal, MonomialOrder.degrevlex()))
    out["h_bc"] = list(complex_summary(config, "bc").h_vector)
    out["h_ind"] = list(complex_summary(config, "ind").h_vector)
    return dict(sorted(out.items()))


def verify_hilbert_identities(config: VectorConfig) -> VerificationReport:
    d = config.d
    h_bc = complex_summary(config, "bc").h_vector
    h_ind = complex_summary(config, "ind").h_vector
    expected_bc = HilbertSeries.from_h_vector(h_bc, d)
    expected_ind = HilbertSeries.from_h_vector(h_ind, d)
    ot = alg.build_OT(config)
    checks = []

    series_by_order = {}
    for order in (MonomialOrder.degrevlex(), MonomialOrder.deglex(), MonomialOrder.lex()):
        series_by_order[order.describe(ot.ring)] = hilbert_series_quotient(ot.ideal, order)
    values = list(series_by_order.values())
    checks.append(_result("OT_order_independent", all(v == values[0] for v in values),
                          witness={k: str(v) for k, v in series_by_order.items()}))
    hot = values[0]
    checks.append(_result("OT_equals_h_bc", hot == expected_bc, details={"series": str(hot), "h_bc": list(h_bc)},
                          witness=_series_pair(hot, expected_bc)))
    hbc = hilbert_series_quotient(alg.build_SR(config, "bc").ideal)
    checks.append(_result("SRbc_equals_h_bc", hbc == expected_bc, details={"series": str(hbc)}, witness=_series_pair(hbc, expected_bc)))
    hind = hilbert_series_quotient(alg.build_SR(config, "ind").ideal)
    checks.append(_result("SRind_equals_h_ind", hind == expected_ind, details={"series": str(hind), "h_ind": list(h_ind)},
                          witness=_series_pair(hind, expected_ind)))
    if config.theta is not None:
        hH = hilbert_series_quotient(alg.build_J0(config).ideal)
        checks.append(_result("H_T_degenerates_to_SRind", hH == hind.over_one_minus_t(), details={"series": str(hH)},
                              witness=_series_pair(hH, hind.over_one_minus_t())))
    return _report(config, checks)


# ---------------------------------------------------------------------------
# spanning by independent monomials
# ---------------------------------------------------------------------------


def span_targets(config: VectorConfig):
    """(name, quotient, forms) for every ring whose spanning statement is checked."""
    ring = alg.ot_ring(config.n)
    forms = alg.structure_map(config, ring)
    out = [
        ("OT", GradedQuotient(alg.build_OT(config).ideal), forms),
        ("SRind", GradedQuotient(alg.build_SR(config, "ind").ideal), forms),
        ("SRbc", GradedQuotient(alg.build_SR(config, "bc").ideal), forms),
    ]
    hring = alg.hbar_ring(config.n)
    hforms = alg.structure_map(config, hring) + [hring.gen("h")]
    out.append(("R_prime", GradedQuotient(alg.build_J1prime(config).ideal), hforms))
    out.append(("H_T", GradedQuotient(alg.build_J0(config).ideal), hforms))
    return out


def verify_monomial_span(config: VectorConfig, degree_bound: Optional[int] = None) -> VerificationReport:
    bound = default_degree_bound(config) if degree_bound is None else degree_bound
    independent = independent_sets(config)
    checks = []
    for name, Q, forms in span_targets(config):
        products = FormProducts(forms, Q.ring)
        failure = None
        dims = []
        for d in range(bound + 1):
            family = []
            for S in independent:
                if len(S) <= d:
                    uS = alg.u_set(Q.ring, S)
                    for _, m in products.of_degree(d - len(S)):
                        family.append(Q.coords(m * uS, d))
            dims.append(Q.dim(d))
            r = matrix_rank(family, Q.dim(d))
            if r != Q.dim(d):
                failure = {"ring": name, "degree": d, "rank": r, "dim": Q.dim(d)}
                break
        checks.append(_result(f"span_{name}", failure is None, bound, {"dims": dims}, witness=failure))
    return _report(config, checks)


# ---------------------------------------------------------------------------
# toric dimension and the T*P^1 example
# ---------------------------------------------------------------------------


def verify_toric_dimension(config: VectorConfig) -> VerificationReport:
    I = alg.build_toric_I1(config)
    dim = krull_dimension(I.ideal)
    expected = config.d + config.n
    return _report(config, [_result("toric_dimension", dim == expected, details={"dimension": dim, "expected": expected},
                                    witness={"dimension": dim, "expected": expected})])


TP1 = VectorConfig(1, ((1,), (-1,)), (0, -1), name="tp1")


def verify_tp1(degree_bound: int = 4) -> VerificationReport:
    """The presentations of T*P^1 with x = u1, y = u2, and its kernel dimensions."""
    config = TP1
    ring = alg.hbar_ring(2)
    P = ring.parse
    checks = []

    j0 = alg.build_J0(config)
    checks.append(_result("J0", list(j0.generators) == [P("u1*u2")], witness={"got": [str(g) for g in j0.generators]}))

    qh = alg.build_QH(config)
    qring = qh.ring
    quantum = qh.generators[0]
    written = qring.parse("(1 - q1)*u1*u2 - q1*h*(h - u1 - u2)")
    checks.append(_result("QH_generator", quantum == written, witness={"got": str(quantum), "expected": str(written)}))
    at_one = alg.specialize_q(quantum, 2)
    target = P("-h*(h - u1 - u2)")
    checks.append(_result("QH_at_q_equals_1", at_one == target, witness={"got": str(at_one), "expected": str(target)}))

    j1 = alg.build_J1(config)
    checks.append(_result("J1", list(j1.generators) == [target], witness={"got": [str(g) for g in j1.generators]}))

    j1p = alg.build_J1prime(config)
    L = P("h - u1 - u2")
    gens = list(j1p.generators)
    ok = len(gens) == 1 and gens[0] in (L, -L)
    checks.append(_result("J1prime", ok, details={"generator": str(gens[0]) if gens else None, "sign": -1 if ok and gens[0] == -L else 1},
                          witness={"got": [str(g) for g in gens]}))

    rows = psi_degree_table(config, degree_bound)
    ker = [r["dim_ker"] for r in rows]
    w = [r["dim_W"] for r in rows]
    expected = list(range(degree_bound + 1))
    checks.append(_result("kernel_dimensions", ker == w == expected and all(r["W_in_ker"] for r in rows), degree_bound,
                          {"dim_ker": ker, "dim_W": w}, witness={"dim_ker": ker, "dim_W": w, "expected": expected}))
    return _report(config, checks)


# ---------------------------------------------------------------------------
# everything
# ---------------------------------------------------------------------------

CHECK_GROUPS = ("kernel", "initial", "groebner", "flatness", "hilbert", "span", "toric")


def _run_group(group: str, config: VectorConfig, max_degree: Optional[int], orders, seed: int) -> List[CheckResult]:
    start = time.perf_counter()
    if group == "kernel":
        rep = verify_kernel_equals_W(config, max_degree)
    elif group == "initial":
        rep = verify_initial_ideal_argument(config)
    elif group == "groebner":
        rep = verify_universal_groebner(config, orders, seed)
    elif group == "flatness":
        rep = verify_flatness(config)
    elif group == "hilbert":
        rep = verify_hilbert_identities(config)
    elif group == "span":
        rep = verify_monomial_span(config, max_degree)
    elif group == "toric":
        rep = verify_toric_dimension(config)
    else:
        raise UsageError(f"unknown check group {group!r}")
    millis = int(1000 * (time.perf_counter() - start))
    for c in rep.checks:
        c.millis = millis
    return rep.checks


def verify_all(config: VectorConfig, max_degree: Optional[int] = None, orders: Optional[Sequence[MonomialOrder]] = None,
               skip: Sequence[str] = (), seed: int = 0, jobs: int = 1) -> VerificationReport:
    """Run every check group. Raises InvalidConfig if the configuration fails validation."""
    for s in skip:
        if s not in CHECK_GROUPS:
            raise UsageError(f"unknown check group {s!r}; choose from {', '.join(CHECK_GROUPS)}")
    start = time.perf_counter()
    report = validate(config)
    if not report.ok:
        raise InvalidConfig("configuration fails validation", report)
    groups = [g for g in CHECK_GROUPS if g not in skip]
    bound = default_degree_bound(config) if max_degree is None else max_degree
    checks = [CheckResult("validate", PASS, details=report.to_dict(), millis=int(1000 * (time.perf_counter() - start)))]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_group, g, config, bound, orders, seed) for g in groups]
            for fut in futures:
                checks += fut.result()
    else:
        for g in groups:
            checks += _run_group(g, config, bound, orders, seed)
    out = _report(config, checks)
    out.series = series_summary(config)
    return out
