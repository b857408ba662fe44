"""Combinatorics of integer vector configurations.

A configuration is a list of n primitive integer vectors a_1..a_n in Z^d,
optionally with integers theta_1..theta_n that place the affine hyperplanes
{x : <a_i, x> + theta_i = 0}. Index sets are sorted tuples of 0-based
indices internally; anything shown to a person is 1-based.

Everything is computed by brute force over subsets, which is fine for the
desk-scale configurations (n <= 12) this package targets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, gcd
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .errors import DegenerateTheta, InvalidConfig, MissingTheta, NotUnimodular, ParseError
from .linalg import int_det, int_rank, nullspace

IndexSet = Tuple[int, ...]


def one_based(s: Sequence[int]) -> List[int]:
    return [i + 1 for i in s]


@dataclass(frozen=True)
class VectorConfig:
    """n nonzero primitive vectors in Z^d, with optional affine parameters."""

    rank: int
    vectors: Tuple[Tuple[int, ...], ...]
    theta: Optional[Tuple[int, ...]] = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        vectors = tuple(tuple(int(x) for x in v) for v in self.vectors)
        object.__setattr__(self, "vectors", vectors)
        if self.rank < 1:
            raise InvalidConfig("lattice rank must be positive")
        if len(vectors) < self.rank:
            raise InvalidConfig(f"need at least d={self.rank} vectors, got {len(vectors)}")
        for i, v in enumerate(vectors, 1):
            if len(v) != self.rank:
                raise InvalidConfig(f"vector {i} has length {len(v)}, expected {self.rank}")
            if not any(v):
                raise InvalidConfig(f"vector {i} is zero")
            if gcd(*v) != 1:
                raise InvalidConfig(f"vector {i} = {list(v)} is not primitive")
        if self.theta is not None:
            theta = tuple(int(t) for t in self.theta)
            if len(theta) != len(vectors):
                raise InvalidConfig("theta must have one entry per vector")
            object.__setattr__(self, "theta", theta)

    @property
    def n(self) -> int:
        return len(self.vectors)

    @property
    def d(self) -> int:
        return self.rank

    def with_theta(self, theta) -> "VectorConfig":
        return VectorConfig(self.rank, self.vectors, None if theta is None else tuple(theta), self.name)

    def to_dict(self) -> dict:
        out = {"rank": self.rank, "vectors": [list(v) for v in self.vectors]}
        if self.theta is not None:
            out["theta"] = list(self.theta)
        return out

    @classmethod
    def from_dict(cls, data, name: str = "") -> "VectorConfig":
        if not isinstance(data, dict):
            raise ParseError("configuration must be a JSON object")
        try:
            rank = data["rank"]
            vectors = data["vectors"]
        except KeyError as exc:
            raise ParseError(f"missing key {exc.args[0]!r}") from None
        theta = data.get("theta")
        if not isinstance(rank, int) or isinstance(rank, bool):
            raise ParseError("'rank' must be an integer")
        if not isinstance(vectors, list) or not all(
            isinstance(v, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in v) for v in vectors
        ):
            raise ParseError("'vectors' must be a list of integer lists")
        if theta is not None and not (
            isinstance(theta, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in theta)
        ):
            raise ParseError("'theta' must be a list of integers")
        return cls(rank, tuple(tuple(v) for v in vectors), tuple(theta) if theta is not None else None, name)

    @classmethod
    def from_json(cls, text: str, name: str = "") -> "VectorConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        return cls.from_dict(data, name)


# ---------------------------------------------------------------------------
# rank, validation
# ---------------------------------------------------------------------------


def rank(config: VectorConfig, subset: Sequence[int]) -> int:
    """Rank over Q of the selected vectors."""
    return int_rank([config.vectors[i] for i in subset])


def is_independent(config: VectorConfig, subset: Sequence[int]) -> bool:
    return rank(config, subset) == len(subset)


def _consistent(config: VectorConfig, subset: Sequence[int]) -> bool:
    """Is {x : <a_i, x> = -theta_i for i in subset} nonempty (over Q)?"""
    rows = [config.vectors[i] for i in subset]
    aug = [list(config.vectors[i]) + [-config.theta[i]] for i in subset]
    return int_rank(rows) == int_rank(aug)


@dataclass
class ValidationReport:
    full_rank: bool
    no_coloops: bool
    unimodular: bool
    simple: Optional[bool]
    violations: List[str]

    @property
    def ok(self) -> bool:
        return self.full_rank and self.no_coloops and self.unimodular and self.simple is not False

    def to_dict(self) -> dict:
        return {
            "full_rank": self.full_rank,
            "no_coloops": self.no_coloops,
            "unimodular": self.unimodular,
            "simple": self.simple,
            "violations": list(self.violations),
        }


def maximal_minors(config: VectorConfig):
    """Yield (index set, determinant) for every d-subset."""
    for s in combinations(range(config.n), config.d):
        yield s, int_det([config.vectors[i] for i in s])


def validate(config: VectorConfig, check_simple: Optional[bool] = None) -> ValidationReport:
    """Check full rank, no co-loops, unimodularity and (with theta) simplicity."""
    if check_simple is None:
        check_simple = config.theta is not None
    if check_simple and config.theta is None:
        raise MissingTheta("simplicity needs theta")
    violations = []
    everything = range(config.n)
    full_rank = rank(config, everything) == config.d
    if not full_rank:
        violations.append(f"full_rank: the vectors span a rank {rank(config, everything)} sublattice, not rank {config.d}")
    coloops = [i for i in everything if rank(config, [j for j in everything if j != i]) < config.d]
    for i in coloops:
        violations.append(f"no_coloops: removing vector {i + 1} drops the rank")
    unimodular = True
    for s, det in maximal_minors(config):
        if det not in (-1, 0, 1):
            unimodular = False
            violations.append(f"unimodular: minor on {one_based(s)} is {det}")
    simple = None
    if check_simple:
        simple = True
        # a consistent dependent system of size > d+1 contains one of size d+1
        for size in range(1, config.d + 2):
            for s in combinations(everything, size):
                if _consistent(config, s) and rank(config, s) < size:
                    simple = False
                    violations.append(f"simple: hyperplanes {one_based(s)} meet in codimension < {size}")
    return ValidationReport(full_rank, not coloops, unimodular, simple, violations)


# ---------------------------------------------------------------------------
# circuits
# ---------------------------------------------------------------------------


def circuits(config: VectorConfig) -> List[IndexSet]:
    """All minimal dependent subsets, sorted lexicographically."""
    out = []
    for size in range(1, config.d + 2):
        for s in combinations(range(config.n), size):
            if rank(config, s) < size and all(
                rank(config, s[:k] + s[k + 1:]) == size - 1 for k in range(size)
            ):
                out.append(s)
    return sorted(out)


def circuit_relation(config: VectorConfig, C: Sequence[int]) -> Dict[int, int]:
    """The primitive integer relation sum eta_i a_i = 0 on C, with eta_{min C} > 0."""
    C = tuple(sorted(C))
    columns = [{k: mpq(x) for k, x in enumerate(config.vectors[i]) if x} for i in C]
    null = nullspace(columns)
    if len(null) != 1 or len(null[0]) != len(C):
        raise InvalidConfig(f"{one_based(C)} is not a circuit")
    v = null[0]
    den = 1
    for x in v.values():
        den = den * x.denominator // gcd(den, x.denominator)
    ints = {k: int(x * den) for k, x in v.items()}
    g = gcd(*ints.values())
    sign = 1 if ints[0] > 0 else -1
    return {C[k]: sign * c // g for k, c in sorted(ints.items())}


@dataclass(frozen=True)
class SignedCircuit:
    """A circuit C = plus ⊔ minus with sum_{plus} a_i - sum_{minus} a_j = 0."""

    plus: IndexSet
    minus: IndexSet

    @property
    def support(self) -> IndexSet:
        return tuple(sorted(self.plus + self.minus))

    @property
    def eta(self) -> Dict[int, int]:
        out = {i: 1 for i in self.plus}
        out.update({j: -1 for j in self.minus})
        return dict(sorted(out.items()))

    def coefficient(self, i: int) -> int:
        """C_i in {-1, 0, +1}."""
        return 1 if i in self.plus else -1 if i in self.minus else 0

    def opposite(self) -> "SignedCircuit":
        return SignedCircuit(self.minus, self.plus)

    def beta(self, n: int) -> Tuple[int, ...]:
        """The curve class sum C_i e_i in Z^n."""
        return tuple(self.coefficient(i) for i in range(n))

    def tau(self, theta: Sequence[int]) -> int:
        return sum(theta[i] for i in self.plus) - sum(theta[j] for j in self.minus)

    def to_dict(self) -> dict:
        return {"plus": one_based(self.plus), "minus": one_based(self.minus)}


def signed_circuit(config: VectorConfig, C: Sequence[int]) -> SignedCircuit:
    """The ±1 relation on circuit C, oriented by theta when present.

    With theta the orientation has sum_{C+} theta - sum_{C-} theta < 0, which
    is exactly when the half-spaces H_i^+ (i in C+) and H_j^- (j in C-) have
    empty intersection. Without theta, min(C) goes into C+.
    """
    C = tuple(sorted(C))
    eta = circuit_relation(config, C)
    if any(abs(c) != 1 for c in eta.values()):
        raise NotUnimodular(f"circuit {one_based(C)} has relation coefficients {list(eta.values())}")
    sc = SignedCircuit(
        tuple(i for i in C if eta[i] == 1),
        tuple(i for i in C if eta[i] == -1),
    )
    if config.theta is not None:
        t = sc.tau(config.theta)
        if t == 0:
            raise DegenerateTheta(f"theta does not orient circuit {one_based(C)}")
        if t > 0:
            sc = sc.opposite()
    return sc


def signed_circuits(config: VectorConfig) -> List[SignedCircuit]:
    return [signed_circuit(config, C) for C in circuits(config)]


def is_unimodular(config: VectorConfig) -> bool:
    return all(det in (-1, 0, 1) for _, det in maximal_minors(config))


# ---------------------------------------------------------------------------
# flats and complexes
# ---------------------------------------------------------------------------


def closure(config: VectorConfig, S: Sequence[int]) -> IndexSet:
    """All i whose vector lies in the Q-span of the vectors indexed by S."""
    r = rank(config, S)
    return tuple(i for i in range(config.n) if i in S or rank(config, tuple(S) + (i,)) == r)


def _subsets(n: int):
    for size in range(n + 1):
        yield from combinations(range(n), size)


def flats(config: VectorConfig) -> List[IndexSet]:
    return sorted((S for S in _subsets(config.n) if closure(config, S) == S), key=lambda s: (len(s), s))


def broken_circuits(config: VectorConfig) -> List[IndexSet]:
    return sorted({C[:-1] for C in circuits(config)})


def independent_sets(config: VectorConfig, max_size: Optional[int] = None) -> List[IndexSet]:
    """Independent subsets ordered by size, then lexicographically."""
    top = config.d if max_size is None else min(max_size, config.d)
    return [S for size in range(top + 1) for S in combinations(range(config.n), size) if is_independent(config, S)]


def f_to_h(f: Sequence[int], D: int) -> List[int]:
    """h(t) = sum_i f_{i-1} t^i (1-t)^(D-i); trailing zeros dropped."""
    h = [0] * (D + 1)
    for i, fi in enumerate(f):
        # coefficients of t^i (1-t)^(D-i)
        for k in range(D - i + 1):
            h[i + k] += fi * comb(D - i, k) * (-1) ** k
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    return h


def h_to_f(h: Sequence[int], D: int) -> List[int]:
    """Inverse of f_to_h: sum_i f_{i-1} x^(D-i) = sum_i h_i (x+1)^(D-i)."""
    f = [0] * (D + 1)
    for i, hi in enumerate(h):
        # (x+1)^(D-i) = sum_k C(D-i,k) x^k ; x^k corresponds to f_{D-k-1}
        for k in range(D - i + 1):
            f[D - k] += hi * comb(D - i, k)
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return f


@dataclass
class ComplexSummary:
    which: str
    f_vector: List[int]
    h_vector: List[int]
    n: int
    dim: int

    def to_dict(self) -> dict:
        return {"complex": self.which, "f_vector": self.f_vector, "h_vector": self.h_vector, "n": self.n, "dim": self.dim}


def faces(config: VectorConfig, which: str) -> List[IndexSet]:
    if which in ("independence", "ind"):
        bad = circuits(config)
    elif which in ("broken_circuit", "bc"):
        bad = broken_circuits(config)
    else:
        raise ValueError(f"unknown complex {which!r}")
    bad_sets = [set(b) for b in bad]
    return [S for S in _subsets(config.n) if not any(b <= set(S) for b in bad_sets)]


def complex_summary(config: VectorConfig, which: str) -> ComplexSummary:
    fs = faces(config, which)
    top = max(len(S) for S in fs)
    f = [0] * (top + 1)
    for S in fs:
        f[len(S)] += 1
    return ComplexSummary(which, f, f_to_h(f, config.d), config.n, top - 1)


# ---------------------------------------------------------------------------
# integer lattices
# ---------------------------------------------------------------------------


def hermite_rows(rows: Sequence[Sequence[int]]) -> List[List[int]]:
    """Row Hermite normal form; zero rows are kept at the bottom."""
    m = [list(map(int, r)) for r in rows]
    if not m:
        return m
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(m[i][c]), i))
            m[r], m[p] = m[p], m[r]
            clean = True
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if m[i][c]:
                        clean = False
            if clean:
                break
        if not m[r][c]:
            continue
        if m[r][c] < 0:
            m[r] = [-x for x in m[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[r])]
        r += 1
    return m


def kernel_lattice_basis(config: VectorConfig) -> List[Tuple[int, ...]]:
    """Canonical (Hermite) Z-basis of P = ker(Z^n -> N, e_i -> a_i)."""
    n, d = config.n, config.d
    aug = [list(config.vectors[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    red = hermite_rows(aug)
    kernel = [row[d:] for row in red if not any(row[:d])]
    return [tuple(r) for r in hermite_rows(kernel) if any(r)]


def lattice_coordinates(basis: Sequence[Sequence[int]], v: Sequence[int]) -> Tuple[int, ...]:
    """Integer coordinates of v in a Hermite basis; raises if v is not in the lattice."""
    rest = list(v)
    coords = []
    for row in basis:
        p = next(k for k, x in enumerate(row) if x)
        if rest[p] % row[p]:
            raise ValueError(f"{list(v)} is not in the lattice")
        c = rest[p] // row[p]
        coords.append(c)
        rest = [x - c * y for x, y in zip(rest, row)]
    if any(rest):
        raise ValueError(f"{list(v)} is not in the lattice")
    return tuple(coords)
