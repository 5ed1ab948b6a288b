"""Contraction action of dual polynomials, annihilators, apolar algebras.

Dual polynomials act on polynomials by iterated true partial
derivatives (not divided powers); with p >= 11 every factorial that can
appear is a unit, so the two conventions differ only by unit scalars.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .fields import Field, PrimeField
from .linalg import FormSpace, Matrix
from .poly import Poly, monomial_basis, monomial_index


class DependentContractions(ValueError):
    """The three contractions d_i(F) failed to be linearly independent."""


def contract(d: Poly, f: Poly) -> Poly:
    """Apply the dual polynomial d to f as a constant-coefficient
    differential operator.  Linear in both arguments."""
    if d.nvars != f.nvars:
        raise ValueError("variable count mismatch")
    if d.field != f.field:
        raise ValueError("field mismatch")
    k = f.field
    if isinstance(k, PrimeField) and k.p <= f.degree():
        raise ValueError("field too small: p must exceed deg f")
    out = Poly.zero(k, f.nvars)
    for alpha, cd in d.terms.items():
        for beta, cf in f.terms.items():
            if any(a > b for a, b in zip(alpha, beta)):
                continue
            c = k.mul(cd, cf)
            for a, b in zip(alpha, beta):
                for step in range(a):
                    c = k.mul(c, k.of(b - step))
            gamma = tuple(b - a for a, b in zip(alpha, beta))
            out = out + Poly(k, f.nvars, {gamma: c})
    return out


@dataclass
class HilbertFunction:
    """Non-negative values with trailing zeros trimmed; sums to the
    length of the scheme."""

    values: list[int]

    def __post_init__(self):
        vals = list(self.values)
        while vals and vals[-1] == 0:
            vals.pop()
        self.values = vals

    def length(self) -> int:
        return sum(self.values)

    def __eq__(self, other):
        if isinstance(other, (list, tuple)):
            return self.values == list(other)
        return isinstance(other, HilbertFunction) and self.values == other.values

    def __repr__(self):
        return f"HF{tuple(self.values)}"


@dataclass
class GradedIdeal:
    """Graded pieces of an ideal, degree -> FormSpace (dual variables)."""

    pieces: dict[int, FormSpace]

    def piece(self, d: int) -> FormSpace:
        return self.pieces[d]

    def closure_holds(self) -> bool:
        """Sym^1 * piece[d] contained in piece[d+1] for stored consecutive d."""
        for d in sorted(self.pieces):
            if d + 1 not in self.pieces:
                continue
            lower, upper = self.pieces[d], self.pieces[d + 1]
            for p in lower.polys():
                for i in range(p.nvars):
                    if not upper.contains(Poly.variable(p.field, p.nvars, i) * p):
                        return False
        return True


@dataclass
class QuadricPlane:
    """A 3-dimensional space of quadrics in four variables."""

    space: FormSpace

    def __post_init__(self):
        if self.space.nvars != 4 or self.space.degree != 2:
            raise ValueError("QuadricPlane needs quadrics in 4 variables")
        if self.space.dim != 3:
            raise ValueError(f"QuadricPlane needs dimension 3, got {self.space.dim}")

    @property
    def field(self) -> Field:
        return self.space.field

    def basis_polys(self) -> list[Poly]:
        return self.space.polys()

    @classmethod
    def from_polys(cls, quadrics: list[Poly]) -> "QuadricPlane":
        return cls(FormSpace.from_polys(quadrics, nvars=4, degree=2))

    def __eq__(self, other):
        return isinstance(other, QuadricPlane) and self.space == other.space


def _contraction_constraint_matrix(space: FormSpace, d: int) -> Matrix:
    """Rows = linear constraints on a degree-d dual operator D from
    requiring D(q) = 0 for every q in the space."""
    k = space.field
    nvars = space.nvars
    cols = monomial_basis(nvars, d)
    rows = []
    for q in space.polys():
        dq = space.degree
        if d > dq:
            continue
        tgt_idx = monomial_index(nvars, dq - d)
        block = k.zeros((len(tgt_idx), len(cols)))
        for j, alpha in enumerate(cols):
            res = contract(Poly.monomial(k, alpha), q)
            for gamma, c in res.terms.items():
                block[tgt_idx[gamma], j] = c
        rows.append(block)
    if not rows:
        return Matrix.zeros(k, 0, len(cols))
    return Matrix(k, np.concatenate(rows, axis=0))


def annihilator(space: FormSpace, up_to: int) -> GradedIdeal:
    """Graded pieces of the ideal of dual operators annihilating the
    given space of forms, degrees 0..up_to."""
    if up_to < space.degree:
        raise ValueError("up_to must be at least the degree of the space")
    k = space.field
    pieces = {}
    for d in range(up_to + 1):
        if d > space.degree:
            pieces[d] = FormSpace.full(k, space.nvars, d)
            continue
        m = _contraction_constraint_matrix(space, d)
        ker = m.right_kernel()
        pieces[d] = FormSpace.from_matrix(k, space.nvars, d, ker)
    return GradedIdeal(pieces)


@dataclass
class ApolarHF:
    """Hilbert functions of the apolar algebra of L + V and of L alone."""

    with_linear: HilbertFunction
    plain: HilbertFunction


def apolar_hilbert_function(plane: QuadricPlane) -> ApolarHF:
    """Hilbert function of the apolar algebra of the plane.

    ``with_linear`` always comes out (1, 4, 3): adjoining the linear
    forms stabilizes the length at 8.  ``plain`` can be smaller when
    the first partials of the plane span a proper subspace.
    """
    ann = annihilator(plane.space, 3)
    k = plane.field
    dims = [len(monomial_basis(4, d)) for d in range(4)]
    plain = [dims[d] - ann.piece(d).dim for d in range(4)]
    with_linear = [1, 4] + [dims[d] - ann.piece(d).dim for d in range(2, 4)]
    return ApolarHF(HilbertFunction(with_linear), HilbertFunction(plain))


def partials_space(f: Poly) -> FormSpace:
    """Span of the four coordinate partial derivatives of a cubic."""
    if f.is_zero() or not f.is_homogeneous() or f.degree() != 3:
        raise ValueError("need a nonzero homogeneous cubic")
    k = f.field
    parts = [contract(Poly.variable(k, 4, i), f) for i in range(4)]
    return FormSpace.from_polys(parts, nvars=4, degree=2)


def plane_from_cubic(f: Poly, d1: Poly, d2: Poly, d3: Poly) -> QuadricPlane:
    """The plane spanned by the three contractions d_i(F)."""
    qs = [contract(d, f) for d in (d1, d2, d3)]
    space = FormSpace.from_polys(qs, nvars=4, degree=2)
    if space.dim != 3:
        raise DependentContractions(
            "contractions are dependent; resample the operators or the cubic")
    return QuadricPlane(space)


# ---------------------------------------------------------------------------
# Recovering a cubic certificate
# ---------------------------------------------------------------------------


def _contraction_system(ds: list, k: Field):
    """Matrix of F -> (d_1 F, d_2 F, d_3 F) in coefficient coordinates.

    ds are length-4 coefficient vectors of linear dual operators; the
    30x20 result maps cubic coefficients to three quadric coefficient
    vectors stacked."""
    cubes = monomial_basis(4, 3)
    quads = monomial_index(4, 2)
    a = k.zeros((30, 20))
    for col, beta in enumerate(cubes):
        for j in range(4):
            if beta[j] == 0:
                continue
            gamma = tuple(b - (1 if idx == j else 0)
                          for idx, b in enumerate(beta))
            row_in_block = quads[gamma]
            for i in range(3):
                w = ds[i][j]
                if w != k.zero:
                    a[10 * i + row_in_block, col] = k.add(
                        a[10 * i + row_in_block, col], k.mul(w, k.of(beta[j])))
    return a


def _attempt_certificate(plane: QuadricPlane, w) -> tuple | None:
    """Try the kernel vector w = (w1, w2, w3); candidate operators are
    (w3, w2, w1).  Returns (F, d1, d2, d3) or None."""
    k = plane.field
    ds = [w[8:12], w[4:8], w[0:4]]
    dmat = Matrix(k, np.stack([np.asarray(d) for d in ds])
                  if k.kind == "prime" else _obj_rows(ds))
    if dmat.rank() < 3:
        return None
    a = _contraction_system(ds, k)
    b = np.concatenate([q.coeff_vector(2) for q in plane.basis_polys()])
    sol = Matrix(k, a).solve(b)
    if sol is None:
        return None
    f = Poly.from_coeff_vector(k, 4, 3, sol)
    dpolys = [Poly(k, 4, {tuple(1 if j == i else 0 for j in range(4)): d[i]
                          for i in range(4)}) for d in ds]
    for dp, q in zip(dpolys, plane.basis_polys()):
        if contract(dp, f) != q:
            return None
    return (f, *dpolys)


def _obj_rows(rows):
    out = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, r in enumerate(rows):
        out[i, :] = r
    return out


def recover_cubic(plane: QuadricPlane, seed: int = 0, budget: int = 200):
    """Best-effort search for (F, d1, d2, d3) with d_i F = q_i exactly.

    Strategy: kernel vectors of the 12x12 skew certificate matrix encode
    candidate operator triples; scan single kernel vectors, pencils of
    kernel vectors (solving for the pencil parameter exactly), coordinate
    operator triples, and random kernel combinations, up to the budget.
    Returns None when the budget is exhausted; absence of a certificate
    is never proof that no cubic exists.
    """
    from .loci import smoothable_block_matrix

    k = plane.field
    m = smoothable_block_matrix(plane.basis_polys())
    kernel = m.right_kernel()
    rng = random.Random(seed)
    tried = 0

    def attempts():
        nonlocal tried
        # single kernel vectors
        for i in range(kernel.rows):
            yield kernel.data[i]
        # coordinate operator triples (cheap; handles degenerate planes)
        from itertools import permutations
        for perm in permutations(range(4), 3):
            w = k.zeros(12)
            w[8 + perm[0]] = k.one
            w[4 + perm[1]] = k.one
            w[perm[2]] = k.one
            yield w
        # pencils of pairs of kernel vectors, exact parameter scan
        for i in range(kernel.rows):
            for j in range(i + 1, kernel.rows):
                yield from _pencil_candidates(plane, kernel.data[i],
                                              kernel.data[j])
        # random kernel combinations
        while True:
            coeffs = [k.random_element(rng) for _ in range(kernel.rows)]
            w = k.zeros(12)
            for c, row in zip(coeffs, kernel.data):
                w = k.reduce(w + c * row)
            yield w

    if kernel.rows == 0:
        return None
    for w in attempts():
        tried += 1
        if tried > budget:
            return None
        got = _attempt_certificate(plane, w)
        if got is not None:
            return got
    return None


def _pencil_candidates(plane: QuadricPlane, u, v):
    """Parameters t for which w = u + t v can carry a certificate.

    Consistency of the linear system in F along the pencil is detected
    through the determinant of a randomly compressed augmented system,
    which is a polynomial in t; its roots are the only candidates."""
    from .unipoly import interpolate, roots_any_degree

    k = plane.field
    b = np.concatenate([q.coeff_vector(2) for q in plane.basis_polys()])
    if not isinstance(k, PrimeField):
        for t in range(-20, 21):
            yield u + k.of(t) * v
        return

    def aug_at(t):
        w = k.reduce(u + t * v)
        ds = [w[8:12], w[4:8], w[0:4]]
        a = _contraction_system(ds, k)
        return np.concatenate([a, k.reduce(-b).reshape(-1, 1)], axis=1)

    rng = random.Random(int(np.sum(u) + 7 * np.sum(v)))
    r = k.array([[rng.randrange(k.p) for _ in range(30)] for _ in range(21)])
    ts = list(range(23))
    samples = [(t, Matrix(k, k.reduce(r @ aug_at(t))).det()) for t in ts]
    delta = interpolate(k, samples)
    if delta.is_zero():
        # compressed system degenerate for all t; probe a few directly
        for t in [rng.randrange(k.p) for _ in range(20)]:
            yield k.reduce(u + t * v)
        return
    for t in roots_any_degree(delta):
        yield k.reduce(u + t * v)
