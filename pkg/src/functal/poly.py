"""Sparse exact polynomials: multivariate over Q, pencil specializations, roots.

Multivariate polynomials are dictionaries mapping exponent tuples to nonzero
Fraction coefficients.  The canonical term order everywhere (serialization,
leading terms, normalization) is graded lexicographic, descending.

The two-variable pencil polynomial det(lam*P + mu*Q) has its own subclass
``BivariatePoly`` with the fixed variable pair ("lam", "mu"); it is produced
exactly either by Bareiss elimination over the polynomial domain or, for
larger matrices, by interpolating the univariate slice det(t*P + Q) at
integer nodes and homogenizing.
"""

from __future__ import annotations

import json
import math
import random
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import linalg
from .errors import ZeroPolynomial
from .linalg import RatMatrix
from .scalars import ComplexApprox, rat, rat_str

PENCIL_VARS = ("lam", "mu")

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def _grlex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


class MultivariatePoly:
    """Sparse polynomial in an ordered tuple of named variables."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.variables: tuple[str, ...] = tuple(variables)
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            nvars = len(self.variables)
            for exp, c in terms.items():
                c = rat(c)
                if c == 0:
                    continue
                exp = tuple(int(e) for e in exp)
                if len(exp) != nvars or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent vector {exp} for {nvars} variables")
                clean[exp] = c
        # store in canonical graded-lex descending order
        self.terms: dict[tuple[int, ...], Fraction] = {
            e: clean[e] for e in sorted(clean, key=_grlex_key, reverse=True)
        }

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "MultivariatePoly":
        c = rat(c)
        if c == 0:
            return make_poly(variables, {})
        zero_exp = (0,) * len(tuple(variables))
        return make_poly(variables, {zero_exp: c})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "MultivariatePoly":
        variables = tuple(variables)
        i = variables.index(name)
        exp = tuple(1 if j == i else 0 for j in range(len(variables)))
        return make_poly(variables, {exp: Fraction(1)})

    # -- predicates / accessors ---------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def valuation_in(self, name: str) -> int:
        """Smallest exponent of `name` over all terms; 0 for the zero polynomial."""
        i = self.variables.index(name)
        return min((e[i] for e in self.terms), default=0)

    def degree_in(self, name: str) -> int:
        i = self.variables.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        exp = next(iter(self.terms))
        return exp, self.terms[exp]

    def coefficient(self, exp: tuple[int, ...]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: "MultivariatePoly"):
        if self.variables != other.variables:
            raise ValueError("polynomials over different variable tuples")

    def __add__(self, other):
        if not isinstance(other, MultivariatePoly):
            other = MultivariatePoly.constant(self.variables, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return make_poly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return make_poly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultivariatePoly):
            other = MultivariatePoly.constant(self.variables, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultivariatePoly):
            c = rat(other)
            return make_poly(self.variables, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return make_poly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MultivariatePoly.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def exact_div(self, other: "MultivariatePoly") -> "MultivariatePoly":
        """Exact quotient self / other; raises if the division is not exact."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = self
        out: dict[tuple[int, ...], Fraction] = {}
        lead_e, lead_c = other.leading()
        while not rem.is_zero():
            e, c = rem.leading()
            q_exp = tuple(a - b for a, b in zip(e, lead_e))
            if any(x < 0 for x in q_exp):
                raise ValueError("inexact polynomial division")
            q_c = c / lead_c
            out[q_exp] = out.get(q_exp, Fraction(0)) + q_c
            q_term = make_poly(self.variables, {q_exp: q_c})
            rem = rem - q_term * other
        return make_poly(self.variables, out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultivariatePoly)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.variables, tuple(self.terms.items())))

    # -- normalization ---------------------------------------------------

    def canonical(self) -> "MultivariatePoly":
        """Divide by the graded-lex leading coefficient (zero stays zero)."""
        if self.is_zero():
            return self
        _, c = self.leading()
        return make_poly(self.variables, {e: v / c for e, v in self.terms.items()})

    def proportional_to(self, other: "MultivariatePoly") -> bool:
        """Equality up to a nonzero scalar multiple (the canonical comparison)."""
        if self.variables != other.variables:
            return False
        return self.canonical() == other.canonical()

    # -- evaluation --------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, Fraction]) -> Fraction:
        vals = [rat(assignment[v]) for v in self.variables]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(vals, e):
                if k:
                    term *= x**k
            total += term
        return total

    def restrict_to(self, keep: Sequence[str], assignment: Mapping[str, Fraction]) -> "MultivariatePoly":
        """Substitute values for all variables except `keep` (order preserved)."""
        keep = tuple(keep)
        keep_idx = [self.variables.index(v) for v in keep]
        other_idx = [i for i, v in enumerate(self.variables) if v not in keep]
        vals = [rat(assignment[self.variables[i]]) for i in other_idx]
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            scale = c
            for x, i in zip(vals, other_idx):
                if e[i]:
                    scale *= x ** e[i]
            if scale == 0:
                continue
            new_e = tuple(e[i] for i in keep_idx)
            s = out.get(new_e, Fraction(0)) + scale
            if s == 0:
                out.pop(new_e, None)
            else:
                out[new_e] = s
        return make_poly(keep, out)

    # -- serialization ---------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for e, c in self.terms.items():
            mags = "*".join(
                f"{v}^{k}" if k > 1 else v for v, k in zip(self.variables, e) if k > 0
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mags:
                body = rat_str(a)
            elif a == 1:
                body = mags
            else:
                body = f"{rat_str(a)}*{mags}"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    @classmethod
    def from_text(cls, variables: Sequence[str], text: str) -> "MultivariatePoly":
        variables = tuple(variables)
        text = text.strip()
        if text == "0":
            return make_poly(variables, {})
        chunks = re.split(r"\s+([+-])\s+", text)
        signed: list[tuple[int, str]] = []
        head = chunks[0]
        if head.startswith("-"):
            signed.append((-1, head[1:]))
        else:
            signed.append((1, head))
        for i in range(1, len(chunks), 2):
            signed.append((-1 if chunks[i] == "-" else 1, chunks[i + 1]))
        terms: dict[tuple[int, ...], Fraction] = {}
        for sign, body in signed:
            coef = Fraction(sign)
            exp = [0] * len(variables)
            for factor in body.split("*"):
                factor = factor.strip()
                if _RATIONAL_RE.match(factor):
                    coef *= Fraction(factor)
                    continue
                if "^" in factor:
                    name, power = factor.rsplit("^", 1)
                    k = int(power)
                else:
                    name, k = factor, 1
                exp[variables.index(name)] += k
            e = tuple(exp)
            terms[e] = terms.get(e, Fraction(0)) + coef
        return make_poly(variables, terms)

    def to_json_dict(self) -> dict:
        return {
            "variables": list(self.variables),
            "terms": {",".join(str(k) for k in e): rat_str(c) for e, c in self.terms.items()},
        }

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "MultivariatePoly":
        variables = tuple(d["variables"])
        terms = {
            tuple(int(k) for k in key.split(",")) if key else (): Fraction(val)
            for key, val in d["terms"].items()
        }
        return make_poly(variables, terms)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json(cls, s: str) -> "MultivariatePoly":
        return cls.from_json_dict(json.loads(s))

    def __repr__(self):
        return f"{type(self).__name__}({self.to_text()!r})"


class BivariatePoly(MultivariatePoly):
    """MultivariatePoly fixed to the pencil variable pair (lam, mu)."""

    def __init__(self, terms: Mapping[tuple[int, ...], Fraction] | None = None, variables=PENCIL_VARS):
        if tuple(variables) != PENCIL_VARS:
            raise ValueError("BivariatePoly is fixed to variables (lam, mu)")
        super().__init__(PENCIL_VARS, terms)

    @classmethod
    def from_lam_mu_coeffs(cls, coeffs: Mapping[tuple[int, int], Fraction]) -> "BivariatePoly":
        return cls({(i, j): c for (i, j), c in coeffs.items()})

    def lam_valuation(self) -> int:
        return self.valuation_in("lam")

    def mu_valuation(self) -> int:
        return self.valuation_in("mu")

    def dehomogenize(self) -> "UnivariatePoly":
        """p(x) = chi(x, -1): the pencil polynomial in one variable."""
        if self.is_zero():
            return UnivariatePoly([])
        coeffs = [Fraction(0)] * (self.degree_in("lam") + 1)
        for (i, j), c in self.terms.items():
            coeffs[i] += c * (-1) ** j
        return UnivariatePoly(coeffs)


def make_poly(variables: Sequence[str], terms) -> MultivariatePoly:
    """Factory keeping the (lam, mu) pair closed under arithmetic."""
    if tuple(variables) == PENCIL_VARS:
        return BivariatePoly(terms)
    return MultivariatePoly(variables, terms)


def bivariate(terms: Mapping[tuple[int, int], Fraction] | None = None) -> BivariatePoly:
    return BivariatePoly(terms)


LAM = BivariatePoly({(1, 0): Fraction(1)})
MU = BivariatePoly({(0, 1): Fraction(1)})


class UnivariatePoly:
    """Dense univariate polynomial over Fraction, coefficients low to high."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, UnivariatePoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x) -> Fraction:
        x = rat(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UnivariatePoly(
            [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
        )

    def __neg__(self):
        return UnivariatePoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UnivariatePoly):
            c = rat(other)
            return UnivariatePoly([c * x for x in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UnivariatePoly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UnivariatePoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UnivariatePoly":
        if n < 0:
            raise ValueError("negative power")
        out = UnivariatePoly([1])
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other: "UnivariatePoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lead = other.leading()
        while len(rem) - 1 >= d and any(c != 0 for c in rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            k = len(rem) - 1 - d
            f = rem[-1] / lead
            q[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= f * c
            rem.pop()
        return UnivariatePoly(q), UnivariatePoly(rem)

    def monic(self) -> "UnivariatePoly":
        if self.is_zero():
            return self
        lead = self.leading()
        return UnivariatePoly([c / lead for c in self.coeffs])

    def derivative(self) -> "UnivariatePoly":
        return UnivariatePoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def x_valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return 0

    def shift_down(self, k: int) -> "UnivariatePoly":
        """Divide by x^k (requires valuation >= k)."""
        if any(c != 0 for c in self.coeffs[:k]):
            raise ValueError("not divisible by x^k")
        return UnivariatePoly(self.coeffs[k:])

    def companion(self) -> RatMatrix:
        """Companion matrix of the monic normalization."""
        p = self.monic()
        n = p.degree
        if n < 1:
            raise ValueError("companion matrix needs degree >= 1")
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i in range(1, n):
            rows[i][i - 1] = Fraction(1)
        for i in range(n):
            rows[i][n - 1] = -p.coeffs[i]
        return RatMatrix(rows)

    def __repr__(self):
        return f"UnivariatePoly({[str(c) for c in self.coeffs]})"


def uni_gcd(a: UnivariatePoly, b: UnivariatePoly) -> UnivariatePoly:
    while not b.is_zero():
        _, r = divmod(a, b)
        a, b = b, r
    return a.monic() if not a.is_zero() else a


def squarefree_decomposition(p: UnivariatePoly) -> list[tuple[UnivariatePoly, int]]:
    """Yun decomposition: [(factor, multiplicity)] with factors squarefree, monic."""
    if p.is_zero():
        raise ZeroPolynomial("squarefree decomposition of zero")
    p = p.monic()
    if p.degree == 0:
        return []
    out: list[tuple[UnivariatePoly, int]] = []
    g = uni_gcd(p, p.derivative())
    w, _ = divmod(p, g)
    i = 1
    while w.degree > 0:
        y = uni_gcd(w, g)
        factor, _ = divmod(w, y)
        if factor.degree > 0:
            out.append((factor.monic(), i))
        w = y
        g, _ = divmod(g, y)
        i += 1
    return out


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, rng: random.Random) -> int:
    while True:
        c = rng.randrange(1, n)
        f = lambda x: (x * x + c) % n
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def _factorize(n: int) -> dict[int, int]:
    n = abs(n)
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    w = 0
    while d * d <= n and d < 1_000_00:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += wheel[w]
        w = (w + 1) % 8
    if n == 1:
        return out
    rng = random.Random(0xF1A7)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m, rng)
        stack.append(d)
        stack.append(m // d)
    return out


def _divisors(n: int) -> list[int]:
    facs = _factorize(n)
    divs = [1]
    for p, k in facs.items():
        divs = [d * p**e for d in divs for e in range(k + 1)]
    return divs


def _rational_roots_of_squarefree(p: UnivariatePoly) -> list[Fraction]:
    """All rational roots of a squarefree polynomial, found exactly."""
    if p.degree < 1:
        return []
    denom = math.lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * denom) for c in p.coeffs]
    content = math.gcd(*ints)
    ints = [c // content for c in ints]
    roots: list[Fraction] = []
    v = 0
    while ints[v] == 0:
        v += 1
    if v:
        roots.append(Fraction(0))
        ints = ints[v:]
    if len(ints) <= 1:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    p_int = UnivariatePoly(ints)
    p1, pm1 = p_int(1), p_int(-1)
    for num in _divisors(a0):
        for den in _divisors(an):
            if math.gcd(num, den) != 1:
                continue
            # cheap filters: (num - den) | p(1) and (num + den) | p(-1)
            for cand in (Fraction(num, den), Fraction(-num, den)):
                pq = cand.numerator
                if p1 != 0 and (pq - den) != 0 and p1 % (pq - den) != 0:
                    continue
                if pm1 != 0 and (pq + den) != 0 and pm1 % (pq + den) != 0:
                    continue
                if p_int(cand) == 0:
                    roots.append(cand)
    return sorted(set(roots))


def uni_roots(p: UnivariatePoly) -> list[tuple[Fraction | ComplexApprox, int]]:
    """All roots with multiplicities; rational roots exact, the rest float.

    Multiplicities always sum to deg p.  Raises ZeroPolynomial on the zero
    polynomial.
    """
    if p.is_zero():
        raise ZeroPolynomial("roots of the zero polynomial")
    out: list[tuple[Fraction | ComplexApprox, int]] = []
    for factor, mult in squarefree_decomposition(p):
        rational = _rational_roots_of_squarefree(factor)
        rest = factor
        for r in rational:
            rest, rem = divmod(rest, UnivariatePoly([-r, 1]))
            if not rem.is_zero():
                raise AssertionError("exact deflation failed")
            out.append((r, mult))
        if rest.degree > 0:
            cs = [float(c) for c in rest.coeffs]
            for z in np.roots(list(reversed(cs))):
                out.append((ComplexApprox.from_complex(complex(z)), mult))
    return out


def pencil_det(p: RatMatrix, q: RatMatrix) -> BivariatePoly:
    """Exact det(lam*P + mu*Q) for square rational P, Q of equal size.

    Computed by interpolating r(t) = det(t*P + Q) at t = 0..n and
    homogenizing: chi(lam, mu) = sum r_k lam^k mu^(n-k).
    """
    if not (p.is_square() and q.is_square() and p.rows == q.rows):
        raise ValueError("pencil_det needs equal square matrices")
    n = p.rows
    if n == 0:
        return BivariatePoly({(0, 0): Fraction(1)})
    nodes = [Fraction(t) for t in range(n + 1)]
    values = [linalg.det(p.scale(t) + q) for t in nodes]
    coeffs = _interpolate(nodes, values)
    return BivariatePoly({(k, n - k): c for k, c in enumerate(coeffs) if c != 0})


def _interpolate(nodes: list[Fraction], values: list[Fraction]) -> list[Fraction]:
    """Coefficients (low to high) of the interpolating polynomial, exact."""
    n = len(nodes)
    # Newton divided differences
    table = list(values)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            table[i] = (table[i] - table[i - 1]) / (nodes[i] - nodes[i - j])
    coeffs = [Fraction(0)] * n
    basis = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for k in range(n):
        for i in range(n):
            coeffs[i] += table[k] * basis[i]
        if k < n - 1:
            new_basis = [Fraction(0)] * n
            for i in range(n - 1):
                if basis[i] != 0:
                    new_basis[i + 1] += basis[i]
                    new_basis[i] -= nodes[k] * basis[i]
            basis = new_basis
    return coeffs


def symbolic_pencil_det(entries: list[list[MultivariatePoly]]) -> MultivariatePoly:
    """Bareiss determinant of a square matrix of polynomials, exact."""
    n = len(entries)
    if n == 0:
        raise ValueError("symbolic determinant of an empty matrix needs a domain")
    zero = make_poly(entries[0][0].variables, {})
    one = MultivariatePoly.constant(entries[0][0].variables, 1)
    if n == 1:
        return entries[0][0]
    return linalg.ff_det(entries, zero=zero, one=one)


def generalized_resultant(p: UnivariatePoly, q: UnivariatePoly) -> BivariatePoly:
    """prod over root pairs (a_i of p, b_j of q) of (lam*a_i + mu*b_j), scaled.

    Computed without root extraction as
    lc(p)^deg(q) * lc(q)^deg(p) * det(lam*(C_p (x) I) + mu*(I (x) C_q)),
    which is exact and independent of any root ordering.
    """
    if p.is_zero() or q.is_zero():
        raise ZeroPolynomial("generalized resultant needs nonzero polynomials")
    dp, dq = p.degree, q.degree
    scale = p.leading() ** dq * q.leading() ** dp
    if dp == 0 or dq == 0:
        return BivariatePoly({(0, 0): scale})
    cp = p.companion()
    cq = q.companion()
    big_p = linalg.kron(cp, RatMatrix.identity(dq))
    big_q = linalg.kron(RatMatrix.identity(dp), cq)
    return pencil_det(big_p, big_q) * scale
