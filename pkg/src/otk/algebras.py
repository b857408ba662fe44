"""Ideals and graded presentations attached to a hypertoric configuration.

Variable conventions: ``u1..un`` for the divisor classes, ``h`` for the
equivariant parameter, ``q1..qr`` and ``qb1..qbr`` (with q_k*qb_k = 1) for
the quantum parameters on a basis of the curve-class lattice, and
``v1..vn`` for the second set of variables of the toric ideal.

Presentation names and what they present:

=========  ==================================================
J0         equivariant cohomology, generators u_{C+} (h - u)_{C-}
J          polynomial quantum cohomology over q, qb
J1         the q = 1 specialization (h * f_C)
J1prime    J1 with the h-annihilator removed (f_C); also OTh
OT         Orlik-Terao ideal, generators f_{C,0}
SRind      Stanley-Reisner ideal of the independence complex
SRbc       Stanley-Reisner ideal of the broken circuit complex
AOT, AOTh  Artinian Orlik-Terao ideal and its h-deformation
ToricI1    circuit binomials in u, v
=========  ==================================================

Generators are stored exactly as the defining formulas produce them, never
pre-reduced against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import MissingTheta, NotDivisible, NotUnimodular
from .groebner import Ideal
from .matroid import (
    IndexSet,
    SignedCircuit,
    VectorConfig,
    circuit_relation,
    circuits,
    is_independent,
    is_unimodular,
    kernel_lattice_basis,
    lattice_coordinates,
    one_based,
    signed_circuit,
)
from .polyring import Polynomial, Ring, prod


@dataclass(frozen=True)
class Presentation:
    name: str
    ring: Ring
    ideal: Ideal
    structure_map: Tuple[Polynomial, ...] = ()
    description: str = ""

    @property
    def generators(self) -> Tuple[Polynomial, ...]:
        return self.ideal.generators

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "ring": list(self.ring.names),
            "weights": list(self.ring.weights),
            "generators": [str(g) for g in self.generators],
            "structure_map": [str(f) for f in self.structure_map],
        }


# ---------------------------------------------------------------------------
# rings and small helpers
# ---------------------------------------------------------------------------


def u_names(n: int) -> List[str]:
    return [f"u{i + 1}" for i in range(n)]


def ot_ring(n: int) -> Ring:
    return Ring(tuple(u_names(n)))


def hbar_ring(n: int) -> Ring:
    return Ring(tuple(u_names(n) + ["h"]))


def u_set(ring: Ring, S: Sequence[int]) -> Polynomial:
    """The squarefree monomial u_S."""
    e = [0] * ring.nvars
    for i in S:
        e[i] += 1
    return ring.monomial(tuple(e))


def structure_map(config: VectorConfig, ring: Optional[Ring] = None) -> List[Polynomial]:
    """Images of the coordinate functionals x_1..x_d: sum_i (a_i)_j u_i."""
    ring = ring or ot_ring(config.n)
    forms = []
    for j in range(config.d):
        terms = {}
        for i, a in enumerate(config.vectors):
            if a[j]:
                terms[ring.unit(i)] = a[j]
        forms.append(Polynomial(ring, terms))
    return forms


def oriented_circuits(config: VectorConfig) -> List[SignedCircuit]:
    """Signed circuits in circuit order; theta decides orientation when present."""
    out = []
    for C in circuits(config):
        out.append(signed_circuit(config, C))
    return out


def _require_unimodular(config: VectorConfig):
    if not is_unimodular(config):
        raise NotUnimodular("configuration is not unimodular")


def _require_theta(config: VectorConfig):
    if config.theta is None:
        raise MissingTheta("this presentation needs theta")


def jmax(C: SignedCircuit) -> int:
    return max(C.support)


def c_bar(C: SignedCircuit) -> IndexSet:
    return C.support[:-1]


# ---------------------------------------------------------------------------
# circuit polynomials
# ---------------------------------------------------------------------------


def _products(C: SignedCircuit, ring: Ring, second_var: str = "h", toric: bool = False):
    """The two products whose difference defines f_C (or the toric binomial)."""
    u = lambda i: ring.gen(f"u{i + 1}")
    if toric:
        v = lambda i: ring.gen(f"v{i + 1}")
        first = prod([u(i) for i in C.plus] + [v(j) for j in C.minus], ring)
        second = prod([v(i) for i in C.plus] + [u(j) for j in C.minus], ring)
        return first, second
    h = ring.gen(second_var)
    first = prod([u(i) for i in C.plus] + [u(j) - h for j in C.minus], ring)
    second = prod([u(i) - h for i in C.plus] + [u(j) for j in C.minus], ring)
    return first, second


def f_C0(C: Sequence[int], eta: Dict[int, object], ring: Ring) -> Polynomial:
    """sum_{i in C} eta_i u_{C minus i}."""
    out = ring.zero
    for i in C:
        out = out + u_set(ring, [j for j in C if j != i]) * eta[i]
    return out


def f_C(C: SignedCircuit, ring: Ring) -> Polynomial:
    """h^{-1} (u_{C+} (u-h)_{C-} - (u-h)_{C+} u_{C-})."""
    first, second = _products(C, ring)
    try:
        return (first - second).divide_exact_by_var("h")
    except NotDivisible as exc:  # pragma: no cover - unreachable for genuine signed circuits
        raise AssertionError(f"signed-circuit difference not divisible by h: {exc}") from exc


def j0_generator(C: SignedCircuit, ring: Ring) -> Polynomial:
    h = ring.gen("h")
    return prod([ring.gen(f"u{i + 1}") for i in C.plus] + [h - ring.gen(f"u{j + 1}") for j in C.minus], ring)


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def build_J0(config: VectorConfig) -> Presentation:
    _require_theta(config)
    _require_unimodular(config)
    ring = hbar_ring(config.n)
    gens = [j0_generator(C, ring) for C in oriented_circuits(config)]
    return Presentation("J0", ring, Ideal(ring, gens), tuple(structure_map(config, ring)),
                        "equivariant cohomology H*_T")


def ot_generators(config: VectorConfig, ring: Ring) -> List[Polynomial]:
    if is_unimodular(config):
        return [f_C0(C.support, {i: C.coefficient(i) for i in C.support}, ring) for C in oriented_circuits(config)]
    return [f_C0(C, circuit_relation(config, C), ring) for C in circuits(config)]


def build_OT(config: VectorConfig) -> Presentation:
    """Orlik-Terao ideal; accepts any configuration (general rational relations)."""
    ring = ot_ring(config.n)
    return Presentation("OT", ring, Ideal(ring, ot_generators(config, ring)), tuple(structure_map(config, ring)),
                        "Orlik-Terao algebra")


def build_OTh(config: VectorConfig, name: str = "OTh") -> Presentation:
    _require_unimodular(config)
    ring = hbar_ring(config.n)
    base = ot_ring(config.n)
    gens = []
    for C in oriented_circuits(config):
        f = f_C(C, ring)
        at_zero = f.substitute("h", 0)
        expected = f_C0(C.support, {i: C.coefficient(i) for i in C.support}, base).embed(ring)
        if at_zero != expected:
            raise AssertionError(f"f_C at h=0 is {at_zero}, expected {expected}")
        gens.append(f)
    desc = "h-deformed Orlik-Terao algebra" if name == "OTh" else "R'_T = R_T / Ann(h)"
    return Presentation(name, ring, Ideal(ring, gens), tuple(structure_map(config, ring)), desc)


def build_J1prime(config: VectorConfig) -> Presentation:
    _require_theta(config)
    return build_OTh(config, name="J1prime")


def build_J1(config: VectorConfig) -> Presentation:
    _require_theta(config)
    _require_unimodular(config)
    ring = hbar_ring(config.n)
    gens = []
    for C in oriented_circuits(config):
        first, second = _products(C, ring)
        gens.append(first - second)
    return Presentation("J1", ring, Ideal(ring, gens), tuple(structure_map(config, ring)),
                        "R_T: quantum cohomology at q = 1")


def build_SR(config: VectorConfig, which: str) -> Presentation:
    ring = ot_ring(config.n)
    if which == "ind":
        gens = [u_set(ring, C) for C in circuits(config)]
        name, desc = "SRind", "Stanley-Reisner ring of the independence complex"
    elif which == "bc":
        seen = []
        for C in circuits(config):
            if C[:-1] not in seen:
                seen.append(C[:-1])
        gens = [u_set(ring, B) for B in seen]
        name, desc = "SRbc", "Stanley-Reisner ring of the broken circuit complex"
    else:
        raise ValueError(f"unknown Stanley-Reisner ring {which!r}")
    return Presentation(name, ring, Ideal(ring, gens), tuple(structure_map(config, ring)), desc)


def build_AOT(config: VectorConfig, deformed: bool) -> Presentation:
    if deformed:
        base = build_OTh(config)
        ring = base.ring
        h = ring.gen("h")
        extra = [ring.gen(x) * (ring.gen(x) - h) for x in u_names(config.n)]
        return Presentation("AOTh", ring, Ideal(ring, list(base.generators) + extra), base.structure_map,
                            "h-deformed Artinian Orlik-Terao algebra")
    base = build_OT(config)
    ring = base.ring
    extra = [ring.gen(x) ** 2 for x in u_names(config.n)]
    return Presentation("AOT", ring, Ideal(ring, list(base.generators) + extra), base.structure_map,
                        "Artinian Orlik-Terao algebra")


def toric_ring(n: int) -> Ring:
    names = []
    for i in range(n):
        names += [f"u{i + 1}", f"v{i + 1}"]
    return Ring(tuple(names))


def build_toric_I1(config: VectorConfig) -> Presentation:
    _require_unimodular(config)
    ring = toric_ring(config.n)
    gens = []
    for C in oriented_circuits(config):
        first, second = _products(C, ring, toric=True)
        gens.append(first - second)
    return Presentation("ToricI1", ring, Ideal(ring, gens), (), "circuit binomial ideal in u, v")


# ---------------------------------------------------------------------------
# curve classes and quantum cohomology
# ---------------------------------------------------------------------------


@dataclass
class CurveClassLattice:
    """A Z-basis of P = ker(Z^n -> N) and the coordinates of each beta_C."""

    basis: List[Tuple[int, ...]]
    circuits: List[SignedCircuit]
    beta_coords: Dict[IndexSet, Tuple[int, ...]] = field(default_factory=dict)

    @classmethod
    def of(cls, config: VectorConfig) -> "CurveClassLattice":
        basis = kernel_lattice_basis(config)
        circs = oriented_circuits(config)
        coords = {C.support: lattice_coordinates(basis, C.beta(config.n)) for C in circs}
        return cls(basis, circs, coords)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def vector(self, coords: Sequence[int]) -> Tuple[int, ...]:
        n = len(self.basis[0]) if self.basis else 0
        return tuple(sum(c * b[i] for c, b in zip(coords, self.basis)) for i in range(n))

    def coordinates(self, beta: Sequence[int]) -> Tuple[int, ...]:
        return lattice_coordinates(self.basis, beta)

    def to_dict(self) -> dict:
        return {
            "basis": [list(b) for b in self.basis],
            "beta": {
                ",".join(map(str, one_based(C.support))): {"vector": list(C.beta(len(self.basis[0]))), "coords": list(self.beta_coords[C.support])}
                for C in self.circuits
            },
        }


def qh_ring(n: int, r: int) -> Ring:
    names = u_names(n) + ["h"] + [f"q{k + 1}" for k in range(r)] + [f"qb{k + 1}" for k in range(r)]
    return Ring(tuple(names), (1,) * (n + 1) + (0,) * (2 * r))


def q_monomial(ring: Ring, coords: Sequence[int]) -> Polynomial:
    e = [0] * ring.nvars
    for k, c in enumerate(coords):
        if c > 0:
            e[ring.index(f"q{k + 1}")] = c
        elif c < 0:
            e[ring.index(f"qb{k + 1}")] = -c
    return ring.monomial(tuple(e))


def build_QH(config: VectorConfig) -> Presentation:
    _require_theta(config)
    _require_unimodular(config)
    lattice = CurveClassLattice.of(config)
    r = lattice.rank
    ring = qh_ring(config.n, r)
    gens = []
    for C in lattice.circuits:
        first, second = _products(C, ring)
        gens.append(first - q_monomial(ring, lattice.beta_coords[C.support]) * second)
    units = [ring.gen(f"q{k + 1}") * ring.gen(f"qb{k + 1}") - 1 for k in range(r)]
    pres = Presentation("J", ring, Ideal(ring, gens + units), tuple(structure_map(config, ring)),
                        "polynomial quantum cohomology QH_pol")
    # q -> 1 must recover the J1 generators term by term
    j1 = build_J1(config)
    ones = {name: 1 for name in ring.names[config.n + 1:]}
    for g, expected in zip(gens, j1.generators):
        if g.substitute_many(ones) != expected.embed(ring):
            raise AssertionError(f"q=1 specialization of {g} differs from {expected}")
    return pres


def specialize_q(p: Polynomial, n: int) -> Polynomial:
    """Set every quantum variable to 1 and land in k[u, h]."""
    ring = p.ring
    ones = {name: 1 for name in ring.names[n + 1:]}
    target = hbar_ring(n)
    q = p.substitute_many(ones)
    return Polynomial(target, {m[: n + 1]: c for m, c in q.terms.items()})


# ---------------------------------------------------------------------------
# the module W
# ---------------------------------------------------------------------------


def W_pairs(config: VectorConfig) -> List[Tuple[IndexSet, SignedCircuit]]:
    """(S, C) with S disjoint from C and S ∪ C̄ independent; circuit-major, S by size then lex."""
    out = []
    for C in oriented_circuits(config):
        rest = [i for i in range(config.n) if i not in C.support]
        for size in range(len(rest) + 1):
            for S in combinations(rest, size):
                if is_independent(config, tuple(sorted(S + c_bar(C)))):
                    out.append((S, C))
    return out


def build_W_generators(config: VectorConfig, with_hbar: bool = True) -> List[Polynomial]:
    """u_S f_C (or u_S f_{C,0} in k[u] when with_hbar is false)."""
    _require_unimodular(config)
    ring = hbar_ring(config.n) if with_hbar else ot_ring(config.n)
    out = []
    for S, C in W_pairs(config):
        if with_hbar:
            f = f_C(C, ring)
        else:
            f = f_C0(C.support, {i: C.coefficient(i) for i in C.support}, ring)
        out.append(u_set(ring, S) * f)
    return out


def all_presentations(config: VectorConfig) -> List[Presentation]:
    """Every presentation that the configuration supports, in a fixed order."""
    out = []
    unimodular = is_unimodular(config)
    if config.theta is not None and unimodular:
        out += [build_J0(config), build_QH(config), build_J1(config), build_J1prime(config)]
    out.append(build_OT(config))
    if unimodular:
        out.append(build_OTh(config))
    out += [build_SR(config, "ind"), build_SR(config, "bc"), build_AOT(config, False)]
    if unimodular:
        out += [build_AOT(config, True), build_toric_I1(config)]
    return out
