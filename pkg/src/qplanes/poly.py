"""Dense-ish multivariate polynomials over a configured exact field.

Terms are stored as a dict from exponent tuple to nonzero coefficient.
All degrees in this project are <= 8 in <= 7 variables, so there is no
need for anything cleverer.  The monomial order used everywhere is
graded lexicographic: degrees ascending blockwise, and inside one degree
block exponent tuples in lexicographically *descending* order (so x0^d
comes first).
"""

from __future__ import annotations

import re
from functools import lru_cache

import numpy as np

from .fields import Field


@lru_cache(maxsize=None)
def monomial_basis(nvars: int, d: int) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples of total degree d, graded-lex order."""
    if nvars < 1 or d < 0:
        raise ValueError("need nvars >= 1 and d >= 0")
    if nvars == 1:
        return ((d,),)
    out = []
    for e0 in range(d, -1, -1):
        for rest in monomial_basis(nvars - 1, d - e0):
            out.append((e0,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, d: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(monomial_basis(nvars, d))}


class Poly:
    """A multivariate polynomial; ``terms`` maps exponent tuple -> coeff."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms: dict | None = None):
        self.field = field
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, c in terms.items():
                c = field.of(c)
                if c != field.zero:
                    if len(e) != nvars:
                        raise ValueError("exponent length != nvars")
                    self.terms[tuple(e)] = c

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars)

    @classmethod
    def constant(cls, field, nvars, c):
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field, nvars, i, power: int = 1):
        e = [0] * nvars
        e[i] = power
        return cls(field, nvars, {tuple(e): field.one})

    @classmethod
    def monomial(cls, field, exponents, c=1):
        return cls(field, len(exponents), {tuple(exponents): c})

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.field, self.nvars,
                    {e: c for e, c in self.terms.items() if sum(e) == d})

    def coefficient(self, exponents) -> object:
        return self.terms.get(tuple(exponents), self.field.zero)

    # -- arithmetic ---------------------------------------------------

    def _check(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        if self.field != other.field:
            raise ValueError("field mismatch")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.field
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = f.add(terms.get(e, f.zero), c)
            if s == f.zero:
                terms.pop(e, None)
            else:
                terms[e] = s
        out = Poly(f, self.nvars)
        out.terms = terms
        return out

    def __neg__(self) -> "Poly":
        f = self.field
        out = Poly(f, self.nvars)
        out.terms = {e: f.neg(c) for e, c in self.terms.items()}
        return out

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        f = self.field
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = f.add(terms.get(e, f.zero), f.mul(c1, c2))
                if s == f.zero:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        out = Poly(f, self.nvars)
        out.terms = terms
        return out

    def scale(self, c) -> "Poly":
        f = self.field
        c = f.of(c)
        out = Poly(f, self.nvars)
        if c != f.zero:
            out.terms = {e: f.mul(v, c) for e, v in self.terms.items()}
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly) and self.nvars == other.nvars
                and self.field == other.field and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- evaluation and substitution ----------------------------------

    def evaluate(self, point):
        """Evaluate at a tuple of field elements."""
        f = self.field
        acc = f.zero
        for e, c in self.terms.items():
            v = c
            for xi, ei in zip(point, e):
                for _ in range(ei):
                    v = f.mul(v, xi)
            acc = f.add(acc, v)
        return acc

    def substitute_linear(self, mat) -> "Poly":
        """Substitute x_i -> sum_j mat[i][j] x_j (mat over the field)."""
        f = self.field
        subs = [Poly(f, self.nvars,
                     {tuple(1 if k == j else 0 for k in range(self.nvars)):
                      mat[i][j] for j in range(self.nvars)})
                for i in range(self.nvars)]
        out = Poly.zero(f, self.nvars)
        for e, c in self.terms.items():
            term = Poly.constant(f, self.nvars, c)
            for i, ei in enumerate(e):
                for _ in range(ei):
                    term = term * subs[i]
            out = out + term
        return out

    def substitute_polys(self, polys: list["Poly"]) -> "Poly":
        """Substitute x_i -> polys[i] (all in the same target ring)."""
        f = polys[0].field
        nv = polys[0].nvars
        out = Poly.zero(f, nv)
        for e, c in self.terms.items():
            term = Poly.constant(f, nv, c)
            for i, ei in enumerate(e):
                for _ in range(ei):
                    term = term * polys[i]
            out = out + term
        return out

    def set_var_zero(self, i: int) -> "Poly":
        """Drop all terms containing variable i and remove that variable."""
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                terms[e[:i] + e[i + 1:]] = c
        return Poly(self.field, self.nvars - 1, terms)

    # -- coefficient vectors ------------------------------------------

    def coeff_vector(self, d: int) -> np.ndarray:
        """Coefficient vector over the degree-d monomial basis.

        The polynomial must be homogeneous of degree d (or zero).
        """
        idx = monomial_index(self.nvars, d)
        vec = self.field.zeros(len(idx))
        for e, c in self.terms.items():
            if sum(e) != d:
                raise ValueError("not homogeneous of the requested degree")
            vec[idx[e]] = c
        return vec

    @classmethod
    def from_coeff_vector(cls, field, nvars, d, vec) -> "Poly":
        basis = monomial_basis(nvars, d)
        return cls(field, nvars, {basis[i]: vec[i] for i in range(len(basis))})

    # -- printing -----------------------------------------------------

    def format(self, varnames: list[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if varnames is None:
            varnames = [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, key=lambda m: (sum(m), tuple(-x for x in m))):
            c = self.terms[e]
            factors = []
            for name, ei in zip(varnames, e):
                if ei == 1:
                    factors.append(name)
                elif ei > 1:
                    factors.append(f"{name}^{ei}")
            body = "*".join(factors)
            cs = str(c)
            if body and cs == "1":
                term = body
            elif body:
                term = f"{cs}*{body}"
            else:
                term = cs
            parts.append(term)
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self.format()})"


_FACTOR_RE = re.compile(r"([a-z]+\d*)(?:\^(\d+))?")


def parse_poly(text: str, varnames: list[str], field: Field) -> Poly:
    """Parse the shared polynomial grammar.

    Terms joined by + / -; each term is an optional integer coefficient
    and '*'-separated powers like ``x1^2``.  Example: ``3*x0^2*x1 - x2^3``.
    """
    nvars = len(varnames)
    var_idx = {v: i for i, v in enumerate(varnames)}
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    # split into signed terms
    chunks = re.split(r"(?=[+-])", s.replace(" ", ""))
    result = Poly.zero(field, nvars)
    for chunk in chunks:
        if not chunk:
            continue
        sign = 1
        while chunk and chunk[0] in "+-":
            if chunk[0] == "-":
                sign = -sign
            chunk = chunk[1:]
        if not chunk:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = field.one
        exps = [0] * nvars
        for factor in chunk.split("*"):
            if not factor:
                raise ValueError(f"empty factor in {text!r}")
            if factor[0].isdigit():
                if "^" in factor or not factor.isdigit():
                    raise ValueError(f"bad coefficient {factor!r} in {text!r}")
                coeff = field.mul(coeff, field.of(int(factor)))
                continue
            m = _FACTOR_RE.fullmatch(factor)
            if not m or m.group(1) not in var_idx:
                raise ValueError(f"unknown variable in factor {factor!r}")
            exps[var_idx[m.group(1)]] += int(m.group(2) or 1)
        if sign < 0:
            coeff = field.neg(coeff)
        result = result + Poly(field, nvars, {tuple(exps): coeff})
    return result


# Variable name conventions shared across the CLI and file formats.
VARS_P3 = ["x0", "x1", "x2", "x3"]
VARS_P4 = ["x0", "x1", "x2", "x3", "x4"]
VARS_PLANE = ["a0", "a1", "a2"]
VARS_TARGET = ["y0", "y1", "y2", "y3", "y4", "y5", "y6"]
