"""Integral lattices, short-vector enumeration, theta series, eta products,
and the equivariant two-sector trace assembled from them.

A lattice is its Gram matrix.  Positive definiteness is certified at
construction by an exact LDL decomposition (all pivots positive); the same
decomposition drives the short-vector enumeration, which walks coordinates
from the last to the first propagating exact rational norm budgets.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import modular
from ._leech import LEECH_GRAM
from ._linalg import int_kernel
from .qseries import RationalSeries, TruncationError

__all__ = [
    "Lattice",
    "CycleShape",
    "EquivariantSpec",
    "enumerate_vectors",
    "theta_series",
    "twisted_theta",
    "eta_product",
    "equivariant_z",
    "fixed_sublattice_from_automorphism",
    "leech_lattice",
    "identity_spec",
]


class Lattice:
    """Positive-definite integral lattice given by its Gram matrix.

    Rank 0 is allowed (the ambient-fixed sublattice of the identity).
    """

    __slots__ = ("gram", "_pivots", "_mu")

    def __init__(self, gram):
        g = tuple(tuple(int(x) for x in row) for row in gram)
        r = len(g)
        if any(len(row) != r for row in g):
            raise ValueError("gram matrix must be square")
        for i in range(r):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise ValueError("gram matrix must be symmetric")
        self.gram = g
        # LDL: gram = U^T diag(d) U with U unitriangular; positive pivots
        # certify definiteness and feed the enumeration bounds.
        a = [[Fraction(x) for x in row] for row in g]
        d = []
        mu = [[Fraction(0)] * r for _ in range(r)]
        for k in range(r):
            piv = a[k][k]
            if piv <= 0:
                raise ValueError("gram matrix is not positive definite")
            d.append(piv)
            mu[k][k] = Fraction(1)
            for j in range(k + 1, r):
                mu[k][j] = a[k][j] / piv
            for i in range(k + 1, r):
                for j in range(k + 1, r):
                    a[i][j] -= a[i][k] * a[k][j] / piv
        self._pivots = tuple(d)
        self._mu = tuple(tuple(row) for row in mu)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def inner(self, v, w) -> Fraction:
        g = self.gram
        return sum(
            Fraction(v[i]) * sum(g[i][j] * Fraction(w[j]) for j in range(len(g)))
            for i in range(len(g))
        ) if g else Fraction(0)

    def norm(self, v) -> Fraction:
        return self.inner(v, v)

    def to_json_obj(self) -> dict:
        return {"rank": self.rank, "gram": [list(row) for row in self.gram]}

    @classmethod
    def from_json_obj(cls, obj) -> "Lattice":
        lat = cls(obj["gram"])
        if lat.rank != obj["rank"]:
            raise ValueError("declared rank does not match the gram matrix")
        return lat

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        return f"Lattice(rank={self.rank})"


def leech_lattice() -> Lattice:
    return Lattice(LEECH_GRAM)


def _enumerate_with_norms(lat: Lattice, maxnorm: int):
    """(vector, norm) pairs for all vectors of norm <= maxnorm, lex sorted.

    Exact Fincke-Pohst walk on the LDL decomposition: at level i the norm
    splits off d_i (x_i + sum mu_ij x_j)^2, bounding x_i by an exact rational
    inequality.  The consumed budget is the norm, so nothing is recomputed.
    Cost grows quickly with maxnorm and rank; callers bound it.
    """
    if maxnorm < 0:
        raise ValueError("maxnorm must be nonnegative")
    r = lat.rank
    if r == 0:
        return [((), Fraction(0))]
    d = lat._pivots
    mu = lat._mu
    top = Fraction(maxnorm)
    out = []
    coords = [0] * r

    def descend(level, budget):
        if level < 0:
            out.append((tuple(coords), top - budget))
            return
        murow = mu[level]
        c = Fraction(0)
        for j in range(level + 1, r):
            if coords[j]:
                c += murow[j] * coords[j]
        # integer x with d[level] (x + c)^2 <= budget, scanned outward from -c
        center = round(-c)
        x = center
        while d[level] * (x + c) ** 2 <= budget:
            coords[level] = x
            descend(level - 1, budget - d[level] * (x + c) ** 2)
            x += 1
        x = center - 1
        while d[level] * (x + c) ** 2 <= budget:
            coords[level] = x
            descend(level - 1, budget - d[level] * (x + c) ** 2)
            x -= 1

    descend(r - 1, top)
    out.sort()
    return out


def enumerate_vectors(lat: Lattice, maxnorm: int):
    """All lattice vectors of norm <= maxnorm, lexicographically sorted."""
    return [v for v, _ in _enumerate_with_norms(lat, maxnorm)]


def _half_norm_bound(order: Fraction) -> int:
    """Largest integer norm m with m/2 strictly below `order`."""
    maxnorm = int(2 * order)
    if maxnorm == 2 * order:
        maxnorm -= 1
    return maxnorm


def theta_series(lat: Lattice, order) -> RationalSeries:
    """Sum of q^{norm/2} over all lattice vectors with norm/2 below `order`."""
    order = Fraction(order)
    if order <= 0:
        return RationalSeries.zero(order)
    counts: dict = {}
    for _, n in _enumerate_with_norms(lat, _half_norm_bound(order)):
        counts[n] = counts.get(n, 0) + 1
    terms = [(n / 2, Fraction(c)) for n, c in counts.items()]
    return RationalSeries.from_terms(terms, order)


@dataclass(frozen=True)
class CycleShape:
    """Formal product data for an eta product: pairs (a_i, m_i), m_i nonzero."""

    pairs: tuple

    def __init__(self, pairs):
        norm = tuple((int(a), int(m)) for a, m in pairs)
        seen = set()
        for a, m in norm:
            if a <= 0:
                raise ValueError("cycle lengths must be positive")
            if m == 0:
                raise ValueError("cycle multiplicities must be nonzero")
            if a in seen:
                raise ValueError("cycle lengths must be distinct")
            seen.add(a)
        object.__setattr__(self, "pairs", norm)

    @property
    def degree(self) -> int:
        return sum(a * m for a, m in self.pairs)

    def check_rank(self, rank: int):
        if self.degree != rank:
            raise ValueError(f"cycle shape degree {self.degree} != rank {rank}")

    def to_json_obj(self):
        return [[a, m] for a, m in self.pairs]

    @classmethod
    def from_json_obj(cls, obj) -> "CycleShape":
        return cls(tuple((a, m) for a, m in obj))


def eta_product(shape: CycleShape, scale, order) -> RationalSeries:
    """prod over (a, m) of eta(a * scale * tau)^m, truncated at `order`."""
    scale = Fraction(scale)
    if scale <= 0:
        raise ValueError("scale must be positive")
    order = Fraction(order)
    margin = Fraction(3)
    for _ in range(6):
        out = None
        for a, m in shape.pairs:
            r = a * scale
            base = modular.eta((order + margin) / r).pow_int(m).rescale(r)
            out = base if out is None else out * base
        if out is None:
            return RationalSeries.one(order)
        if out.order >= order:
            return out.truncate(order)
        margin *= 2
    raise TruncationError("could not reach the requested order")


class EquivariantSpec:
    """Inputs of the equivariant trace: ambient lattice, the sublattice fixed
    by -a (with its embedding), the character vector xi, the vector alpha,
    the opaque twisted-sector trace trT, and the two frame shapes.
    """

    __slots__ = (
        "ambient",
        "fixed_sublattice",
        "embedding",
        "xi",
        "alpha",
        "trT",
        "shape_a",
        "shape_minus_a",
    )

    def __init__(
        self,
        ambient: Lattice,
        fixed_sublattice: Lattice,
        embedding,
        xi,
        alpha,
        trT,
        shape_a: CycleShape,
        shape_minus_a: CycleShape,
    ):
        self.ambient = ambient
        self.fixed_sublattice = fixed_sublattice
        emb = tuple(tuple(int(x) for x in row) for row in embedding)
        if len(emb) != fixed_sublattice.rank:
            raise ValueError("embedding must have one row per sublattice basis vector")
        for row in emb:
            if len(row) != ambient.rank:
                raise ValueError("embedding rows must have ambient length")
        self.embedding = emb
        # the embedding must induce exactly the declared Gram
        for i, ri in enumerate(emb):
            for j, rj in enumerate(emb):
                if ambient.inner(ri, rj) != fixed_sublattice.gram[i][j]:
                    raise ValueError("embedding does not induce the sublattice gram")
        self.xi = tuple(Fraction(x) for x in xi)
        if len(self.xi) != ambient.rank:
            raise ValueError("xi must have ambient length")
        self.alpha = tuple(int(x) for x in alpha)
        if len(self.alpha) != ambient.rank:
            raise ValueError("alpha must have ambient length")
        # 2 xi must pair integrally with the ambient lattice (phases are +-1)
        for i in range(ambient.rank):
            basis = [0] * ambient.rank
            basis[i] = 1
            if (2 * ambient.inner(self.xi, basis)).denominator != 1:
                raise ValueError("2*xi must pair integrally with the lattice")
        # alpha is orthogonal to the fixed sublattice
        for row in emb:
            if ambient.inner(self.alpha, row) != 0:
                raise ValueError("alpha must be orthogonal to the fixed sublattice")
        self.trT = Fraction(trT)
        self.shape_a = shape_a
        self.shape_minus_a = shape_minus_a

    def to_json_obj(self) -> dict:
        return {
            "ambient": self.ambient.to_json_obj(),
            "fixed_sublattice": {
                **self.fixed_sublattice.to_json_obj(),
                "embedding": [list(r) for r in self.embedding],
            },
            "xi": [str(x) for x in self.xi],
            "alpha": list(self.alpha),
            "trT": str(self.trT),
            "shape_a": self.shape_a.to_json_obj(),
            "shape_minus_a": self.shape_minus_a.to_json_obj(),
        }

    @classmethod
    def from_json_obj(cls, obj) -> "EquivariantSpec":
        sub = obj["fixed_sublattice"]
        return cls(
            ambient=Lattice.from_json_obj(obj["ambient"]),
            fixed_sublattice=Lattice.from_json_obj(sub),
            embedding=sub["embedding"],
            xi=[Fraction(x) for x in obj["xi"]],
            alpha=obj["alpha"],
            trT=Fraction(obj["trT"]),
            shape_a=CycleShape.from_json_obj(obj["shape_a"]),
            shape_minus_a=CycleShape.from_json_obj(obj["shape_minus_a"]),
        )

    @classmethod
    def load(cls, path) -> "EquivariantSpec":
        with open(path) as fh:
            return cls.from_json_obj(json.load(fh))

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json_obj(), fh, indent=1)
            fh.write("\n")


def _phase(pairing: Fraction) -> int:
    """e^{2 pi i p} for half-integral p; anything else is out of scope."""
    doubled = 2 * pairing
    if doubled.denominator != 1:
        raise ValueError(f"pairing {pairing} is not half-integral; phase not in {{+1,-1}}")
    return -1 if doubled.numerator % 2 else 1


def twisted_theta(spec: EquivariantSpec, order) -> RationalSeries:
    """Theta series of the fixed sublattice, each vector signed by its xi-phase."""
    order = Fraction(order)
    if order <= 0:
        return RationalSeries.zero(order)
    lat = spec.fixed_sublattice
    # <xi, emb_i> once per basis row; the phase of gamma is then a dot product
    xi_emb = [spec.ambient.inner(spec.xi, row) for row in spec.embedding]
    acc: dict = {}
    for gamma, n in _enumerate_with_norms(lat, _half_norm_bound(order)):
        pairing = sum((g * p for g, p in zip(gamma, xi_emb)), Fraction(0))
        sign = _phase(pairing)
        acc[n] = acc.get(n, 0) + sign
    terms = [(n / 2, Fraction(c)) for n, c in acc.items() if c]
    return RationalSeries.from_terms(terms, order)


def equivariant_z(spec: EquivariantSpec, L: int, order) -> RationalSeries:
    """Two-sector equivariant trace.

    First summand: phase(<xi,alpha>) * twisted_theta / eta_{-a}(tau) * (theta1/2)^L.
    Second: trT * ( eta_a(tau)/eta_a(tau/2) * (theta2/2)^L
                    - eta_{-a}(tau)/eta_{-a}(tau/2) * (theta3/2)^L ).
    The theta factor sums over the -a-fixed sublattice.
    """
    if L <= 0 or L % 2:
        raise ValueError("L must be a positive even integer")
    order = Fraction(order)
    head = order + 4
    sign = _phase(spec.ambient.inner(spec.xi, spec.alpha))
    th = twisted_theta(spec, head)
    e_minus = eta_product(spec.shape_minus_a, 1, head)
    t1 = (modular.theta(1, head) / 2).pow_int(L)
    first = (th / e_minus) * t1 * sign

    e_a = eta_product(spec.shape_a, 1, head)
    e_a_half = eta_product(spec.shape_a, Fraction(1, 2), head)
    e_minus_half = eta_product(spec.shape_minus_a, Fraction(1, 2), head)
    t2 = (modular.theta(2, head) / 2).pow_int(L)
    t3 = (modular.theta(3, head) / 2).pow_int(L)
    second = ((e_a / e_a_half) * t2 - (e_minus / e_minus_half) * t3) * spec.trT
    return (first + second).truncate(order)


def fixed_sublattice_from_automorphism(ambient: Lattice, matrix):
    """Sublattice fixed by -a, i.e. the saturated integer kernel of (a + 1).

    `matrix` acts on coordinate rows (v -> v @ a) and must preserve the Gram.
    Returns (sublattice, embedding rows).
    """
    r = ambient.rank
    a = [[int(x) for x in row] for row in matrix]
    if len(a) != r or any(len(row) != r for row in a):
        raise ValueError("automorphism must be square of ambient rank")
    g = ambient.gram
    aga = [
        [
            sum(a[i][k] * g[k][l] * a[j][l] for k in range(r) for l in range(r))
            for j in range(r)
        ]
        for i in range(r)
    ]
    if aga != [list(row) for row in g]:
        raise ValueError("matrix does not preserve the gram form")
    a_plus = [[a[i][j] + (i == j) for j in range(r)] for i in range(r)]
    # right kernel of (a+1)^T is the left kernel of (a+1): rows v with v(a+1)=0
    transpose = [[a_plus[j][i] for j in range(r)] for i in range(r)]
    basis = int_kernel(transpose)
    emb = [tuple(v) for v in basis]
    gram = [[ambient.inner(x, y) for y in emb] for x in emb]
    return Lattice(gram), emb


_IDENTITY_ALPHA_INDEX = {16: 1, 24: 0}  # bundled basis vectors of norm L/4


def identity_spec(L: int) -> EquivariantSpec:
    """Spec for a = identity on the Leech lattice: rank-0 fixed sublattice,
    xi = 0, trT = 2^12, frame shapes 1^24 and 1^-24 2^24.
    """
    amb = leech_lattice()
    try:
        idx = _IDENTITY_ALPHA_INDEX[L]
    except KeyError:
        raise ValueError(f"no bundled alpha of norm {L}/4 for the identity spec")
    alpha = [0] * amb.rank
    alpha[idx] = 1
    return EquivariantSpec(
        ambient=amb,
        fixed_sublattice=Lattice(()),
        embedding=(),
        xi=[0] * amb.rank,
        alpha=alpha,
        trT=Fraction(2) ** 12,
        shape_a=CycleShape([(1, 24)]),
        shape_minus_a=CycleShape([(1, -24), (2, 24)]),
    )
