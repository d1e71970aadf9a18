"""Kronecker-product determinant identities and tensor-pair experiments.

Exact facts exercised here:

* det(A (x) B) = det(A)^m det(B)^n for n x n A and m x m B;
* the perfect-shuffle permutation U with U (A (x) B) U^-1 = B (x) A;
* the pairing matrix of a product functional F (x) G is the Kronecker
  product of the factors' pairing matrices, so the characteristic
  polynomial of a tensor pair is an ordinary pencil determinant of
  Kronecker blocks;
* det(lam A (x) C + mu B (x) D) equals det of the matrix-substituted
  pencil polynomial of (A, B) evaluated at (lam C, mu D), checked
  numerically because the substitution needs the pencil's linear factors.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .algebra import Algebra, mat, tensor_product
from .errors import AlgebraMismatch, DegeneratePencil, NoRegularAlpha0, NotType1
from .functional import ALPHA_INF, Alpha, Functional, Subspace, gram, nil, stab
from .linalg import RatMatrix, Vector
from .poly import pencil_det
from .sampling import SamplerConfig
from .spectrum import (
    TYPE1,
    CheckResult,
    classify,
    constant_spectrum_alphas,
    find_regular,
    index,
    jordan_spaces,
    spectrum,
)


def kronecker(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    return linalg.kron(a, b)


def kronecker_swap_matrix(k: int, m: int) -> RatMatrix:
    """Permutation U with U (A (x) B) U^-1 = B (x) A for all k x k A, m x m B."""
    if k < 1 or m < 1:
        raise ValueError("factor sizes must be positive")
    n = k * m
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(k):
        for j in range(m):
            rows[j * k + i][i * m + j] = Fraction(1)
    return RatMatrix(rows)


@dataclass(frozen=True)
class IdentityReport:
    identity_name: str
    instances_checked: int
    mode: str  # "exact" or "numeric"
    pass_: bool
    max_relative_error: float = 0.0
    tolerance: float | None = None
    failing_instance: str | None = None
    seed: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "kind": "identity",
            "identity": self.identity_name,
            "instances_checked": self.instances_checked,
            "mode": self.mode,
            "pass": self.pass_,
            "max_relative_error": self.max_relative_error,
            "tolerance": self.tolerance,
            "failing_instance": self.failing_instance,
            "seed": self.seed,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "IdentityReport":
        return cls(
            identity_name=d["identity"],
            instances_checked=d["instances_checked"],
            mode=d["mode"],
            pass_=d["pass"],
            max_relative_error=d["max_relative_error"],
            tolerance=d["tolerance"],
            failing_instance=d["failing_instance"],
            seed=d["seed"],
        )


# ---------------------------------------------------------------------------
# extended Cayley identity
# ---------------------------------------------------------------------------


def _float_matrix(m: RatMatrix) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in m.data], dtype=complex)


def _numeric_poly_matmul(p, q, deg_p, deg_q):
    """Product of m x m matrices of homogeneous (lam, mu) float polynomials.

    Entry polynomials are arrays indexed by the lam-degree.
    """
    m = p.shape[0]
    out = np.zeros((m, m, deg_p + deg_q + 1), dtype=complex)
    for i in range(m):
        for k in range(m):
            pik = p[i, k]
            if not pik.any():
                continue
            for j in range(m):
                qkj = q[k, j]
                if qkj.any():
                    out[i, j] += np.convolve(pik, qkj)
    return out


def _numeric_poly_det(mat, deg):
    """Determinant of an m x m matrix of homogeneous float polynomials."""
    m = mat.shape[0]
    if m == 0:
        out = np.zeros(1, dtype=complex)
        out[0] = 1.0
        return out
    if m == 1:
        return mat[0, 0]
    out = np.zeros(m * deg + 1, dtype=complex)
    for j in range(m):
        minor = np.delete(np.delete(mat, 0, axis=0), j, axis=1)
        sub = _numeric_poly_det(minor, deg)
        term = np.convolve(mat[0, j], sub)
        sign = -1.0 if j % 2 else 1.0
        out[: term.size] += sign * term
    return out


def _balance(m: RatMatrix) -> RatMatrix:
    scale = max((abs(x) for row in m.data for x in row), default=Fraction(1))
    if scale == 0:
        return m
    return m.scale(Fraction(1) / scale)


def extended_cayley_check(
    a: RatMatrix, b: RatMatrix, c: RatMatrix, d: RatMatrix, tolerance: float = 1e-6
) -> IdentityReport:
    """det(lam A(x)C + mu B(x)D) versus the factored pencil substitution.

    The left side is an exact bivariate determinant.  The right side uses
    the linear-factor form of chi(lam, mu) = det(lam A + mu B): the factor
    roots come from a float companion matrix, each factor is evaluated at
    matrices (lam C, mu D), the factors are multiplied in ascending root
    order, and the determinant coefficients are compared at the relative
    tolerance.  Inputs are balanced by their max-entry scale first; the
    identity is scale-covariant so the balanced instance is equivalent.
    """
    a, b, c, d = _balance(a), _balance(b), _balance(c), _balance(d)
    n = a.rows
    m = c.rows
    chi = pencil_det(a, b)
    if chi.is_zero():
        raise DegeneratePencil("det(lam A + mu B) vanishes identically")
    lhs = pencil_det(kronecker(a, c), kronecker(b, d))

    # factor chi = lead * mu^(n-k) * prod (lam - t_i mu) with k = lam-degree
    p = [complex(0)] * (n + 1)
    for (i, _j), coeff in chi.terms.items():
        p[i] = complex(float(coeff))
    deg = max(i for i in range(n + 1) if p[i] != 0)
    lead = p[deg]
    roots = np.roots(list(reversed(p[: deg + 1]))) if deg > 0 else np.array([])
    roots = np.sort_complex(roots)

    cf = _float_matrix(c)
    df = _float_matrix(d)
    eye = np.eye(m, dtype=complex)
    # running product of linear matrix factors, entries indexed by lam-degree
    acc = np.empty((m, m), dtype=object)
    for i in range(m):
        for j in range(m):
            acc[i, j] = np.array([lead * eye[i, j]], dtype=complex)
    deg_acc = 0
    for _ in range(n - deg):
        factor = np.empty((m, m), dtype=object)
        for i in range(m):
            for j in range(m):
                factor[i, j] = np.array([df[i, j], 0.0], dtype=complex)
        acc = _numeric_poly_matmul(acc, factor, deg_acc, 1)
        deg_acc += 1
    for t in roots:
        factor = np.empty((m, m), dtype=object)
        for i in range(m):
            for j in range(m):
                factor[i, j] = np.array([-t * df[i, j], cf[i, j]], dtype=complex)
        acc = _numeric_poly_matmul(acc, factor, deg_acc, 1)
        deg_acc += 1
    rhs_coeffs = _numeric_poly_det(_dense_stack(acc, deg_acc), deg_acc)

    lhs_coeffs = np.zeros(n * m + 1, dtype=complex)
    for (i, _j), coeff in lhs.terms.items():
        lhs_coeffs[i] = complex(float(coeff))
    pad = max(lhs_coeffs.size, rhs_coeffs.size)
    lc = np.zeros(pad, dtype=complex)
    rc = np.zeros(pad, dtype=complex)
    lc[: lhs_coeffs.size] = lhs_coeffs
    rc[: rhs_coeffs.size] = rhs_coeffs
    scale = max(1.0, float(np.max(np.abs(lc))), float(np.max(np.abs(rc))))
    max_err = float(np.max(np.abs(lc - rc)) / scale)
    ok = max_err <= tolerance
    return IdentityReport(
        "extended-cayley",
        1,
        "numeric",
        ok,
        max_relative_error=max_err,
        tolerance=tolerance,
        failing_instance=None if ok else json.dumps({"lhs": [str(x) for x in lc], "rhs": [str(x) for x in rc]}),
    )


def _dense_stack(acc, deg) -> np.ndarray:
    m = acc.shape[0]
    out = np.zeros((m, m, deg + 1), dtype=complex)
    for i in range(m):
        for j in range(m):
            arr = acc[i, j]
            out[i, j, : arr.size] = arr
    return out


def random_cayley_instances(
    count: int = 30, seed: int = 0, max_size: int = 4, entry_bound: int = 5, tolerance: float = 1e-6
) -> IdentityReport:
    """Seeded batch of extended-Cayley checks on random integer matrices."""
    rng = random.Random(seed)
    worst = 0.0
    checked = 0
    while checked < count:
        n = rng.randint(1, max_size)
        m = rng.randint(1, max_size)
        mk = lambda size: RatMatrix(
            [[rng.randint(-entry_bound, entry_bound) for _ in range(size)] for _ in range(size)]
        )
        a, b, c, d = mk(n), mk(n), mk(m), mk(m)
        if pencil_det(a, b).is_zero():
            continue
        rep = extended_cayley_check(a, b, c, d, tolerance)
        checked += 1
        worst = max(worst, rep.max_relative_error)
        if not rep.pass_:
            return IdentityReport(
                "extended-cayley", checked, "numeric", False, worst, tolerance,
                failing_instance=json.dumps(
                    {
                        "a": [[str(x) for x in row] for row in a.data],
                        "b": [[str(x) for x in row] for row in b.data],
                        "c": [[str(x) for x in row] for row in c.data],
                        "d": [[str(x) for x in row] for row in d.data],
                    }
                ),
                seed=seed,
            )
    return IdentityReport("extended-cayley", checked, "numeric", True, worst, tolerance, seed=seed)


# ---------------------------------------------------------------------------
# tensor pairs
# ---------------------------------------------------------------------------


def tensor_functional(tensor_alg: Algebra, f: Functional, g: Functional) -> Functional:
    """Product functional with value F(x)G(y) on x (x) y, in the tensor basis."""
    if tensor_alg.dim != f.algebra.dim * g.algebra.dim:
        raise AlgebraMismatch("tensor algebra dimension does not match the factors")
    coords = tuple(x * y for x in f.coords for y in g.coords)
    return Functional(tensor_alg, coords)


def tensor_char_check(
    alg_a: Algebra, f: Functional, alg_b: Algebra, g: Functional, tolerance: float = 1e-6
) -> IdentityReport:
    """Characteristic polynomial of a tensor pair, three ways.

    Exact path 1: chi of (A (x) B, F (x) G) from the tensor algebra itself.
    Exact path 2: pencil determinant of the Kronecker products of the
    factors' pairing matrices.  The two must agree bit for bit.  When both
    factor pencils are nonzero a numeric factored-substitution check (as in
    the extended Cayley identity) is run as well.
    """
    ta = tensor_product(alg_a, alg_b)
    fg = tensor_functional(ta, f, g)
    mf = gram(f)
    mg = gram(g)
    m_fg = gram(fg)
    chi_tensor = pencil_det(m_fg, m_fg.transpose())
    chi_kron = pencil_det(kronecker(mf, mg), kronecker(mf.transpose(), mg.transpose()))
    exact_ok = chi_tensor.canonical() == chi_kron.canonical()
    numeric_err = 0.0
    numeric_ok = True
    if exact_ok and not pencil_det(mf, mf.transpose()).is_zero():
        rep = extended_cayley_check(mf, mf.transpose(), mg, mg.transpose(), tolerance)
        numeric_err = rep.max_relative_error
        numeric_ok = rep.pass_
    ok = exact_ok and numeric_ok
    return IdentityReport(
        "tensor-characteristic",
        1,
        "exact+numeric",
        ok,
        max_relative_error=numeric_err,
        tolerance=tolerance,
        failing_instance=None if ok else json.dumps({"F": f.to_dict(), "G": g.to_dict()}),
    )


@dataclass(frozen=True)
class SuiteReport:
    name: str
    checks: tuple[CheckResult, ...]
    seed: int

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_dict(self) -> dict:
        return {
            "kind": "suite",
            "name": self.name,
            "passed": self.passed,
            "seed": self.seed,
            "checks": [c.to_json_dict() for c in self.checks],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "SuiteReport":
        return cls(
            d["name"],
            tuple(CheckResult(c["name"], c["passed"], c.get("detail", "")) for c in d["checks"]),
            d["seed"],
        )


def _tensor_spanners(u: Subspace, w: Subspace) -> list[Vector]:
    """Spanning vectors x (x) y for x in a basis of u, y in a basis of w."""
    out = []
    for x in u.basis:
        for y in w.basis:
            out.append(tuple(xi * yj for xi in x for yj in y))
    return out


def tensor_stab_suite(
    alg_a: Algebra, f: Functional, alg_b: Algebra, g: Functional, seed: int = 0
) -> SuiteReport:
    """Inclusion laws tying factor stabilizers to tensor-pair stabilizers.

    Checks, by exact membership of spanning vectors:
      stab_F(a) (x) stab_G(b) inside stab_{F(x)G}(a*b) for spectral a, b;
      stab_F(0) (x) stab_G(inf) and stab_F(inf) (x) stab_G(0) inside nil;
      stab_F(0) (x) B + A (x) stab_G(0) inside stab(0), same for infinity.
    """
    ta = tensor_product(alg_a, alg_b)
    fg = tensor_functional(ta, f, g)
    checks: list[CheckResult] = []

    alphas_a = spectrum(f).exact_alphas()
    alphas_b = spectrum(g).exact_alphas()
    for a in alphas_a:
        for b in alphas_b:
            try:
                ab = a.times(b)
            except ValueError:
                continue  # 0 * inf pairs are covered by the nil check
            vecs = _tensor_spanners(stab(f, a), stab(g, b))
            target = stab(fg, ab)
            ok = all(target.contains(v) for v in vecs)
            checks.append(
                CheckResult(f"stab({a}) (x) stab({b}) in stab({ab})", ok)
            )

    nil_fg = nil(fg)
    mixed = _tensor_spanners(stab(f, Alpha(0)), stab(g, ALPHA_INF))
    mixed += _tensor_spanners(stab(f, ALPHA_INF), stab(g, Alpha(0)))
    checks.append(
        CheckResult(
            "stab(0)(x)stab(inf) + stab(inf)(x)stab(0) in nil",
            all(nil_fg.contains(v) for v in mixed),
        )
    )

    whole_a = Subspace.whole(alg_a)
    whole_b = Subspace.whole(alg_b)
    for alpha, name in ((Alpha(0), "0"), (ALPHA_INF, "inf")):
        target = stab(fg, alpha)
        vecs = _tensor_spanners(stab(f, alpha), whole_b)
        vecs += _tensor_spanners(whole_a, stab(g, alpha))
        checks.append(
            CheckResult(
                f"stab({name})(x)B + A(x)stab({name}) in stab({name})",
                all(target.contains(v) for v in vecs),
            )
        )
    return SuiteReport("tensor-stab", tuple(checks), seed)


def tensor_vk_suite(
    alg_a: Algebra, f: Functional, alg_b: Algebra, g: Functional, seed: int = 0, max_level: int = 2
) -> SuiteReport:
    """V_k(a) (x) V_m(b) inside V_{k+m-1}(ab) for k + m <= max_level + 1.

    Applies only when the product functional F (x) G is pencil-regular; when
    it is not (e.g. both factor spectra contain 0 and infinity, which forces
    a nonzero nil space on the product), the deep levels are undefined along
    the operator route and the whole pair is skipped.  The k = m = 1 layer
    of the law is the stabilizer inclusion covered by tensor_stab_suite.
    """
    ta = tensor_product(alg_a, alg_b)
    fg = tensor_functional(ta, f, g)
    checks: list[CheckResult] = []
    alphas_a = spectrum(f).exact_alphas()
    alphas_b = spectrum(g).exact_alphas()
    for a in alphas_a:
        for b in alphas_b:
            if {a, b} == {Alpha(0), ALPHA_INF}:
                continue
            try:
                ab = a.times(b)
            except ValueError:
                continue
            try:
                ft = jordan_spaces(fg, ab)
            except NoRegularAlpha0:
                return SuiteReport("tensor-vk", tuple(checks), seed)
            fa = jordan_spaces(f, a)
            fb = jordan_spaces(g, b)
            for k in range(1, max_level + 1):
                for m_lvl in range(1, max_level + 2 - k):
                    vecs = _tensor_spanners(fa.level(k), fb.level(m_lvl))
                    target = ft.level(k + m_lvl - 1)
                    ok = all(target.contains(x) for x in vecs)
                    checks.append(
                        CheckResult(f"V_{k}({a}) (x) V_{m_lvl}({b}) in V_{k + m_lvl - 1}({ab})", ok)
                    )
    return SuiteReport("tensor-vk", tuple(checks), seed)


# ---------------------------------------------------------------------------
# index experiments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TensorIndexReport:
    n: int
    factor_index: int
    product_index: int
    expected: int
    one_precise_checked: bool
    one_precise: bool | None
    warning: str | None
    seed: int

    @property
    def passed(self) -> bool:
        return self.product_index == self.expected and self.one_precise is not False

    def to_json_dict(self) -> dict:
        return {
            "kind": "tensor-index",
            "n": self.n,
            "factor_index": self.factor_index,
            "product_index": self.product_index,
            "expected": self.expected,
            "one_precise_checked": self.one_precise_checked,
            "one_precise": self.one_precise,
            "warning": self.warning,
            "seed": self.seed,
            "passed": self.passed,
        }


def mat_tensor_index_experiment(
    n: int, alg_b: Algebra, sampler: SamplerConfig = SamplerConfig(), max_exact_chi_dim: int = 40
) -> TensorIndexReport:
    """Index of mat(n) (x) B versus n times the index of B.

    Also verifies the witness is 1-precise (dim stab(1) equals the order of
    the root 1 of the pencil polynomial) when the product dimension permits
    the exact determinant.
    """
    warning = None
    if alg_b.unity is None:
        warning = "factor is not unital; the product-index law is not guaranteed"
    idx_b = index(alg_b, sampler)
    if idx_b.value != 1 and warning is None:
        warning = f"factor has index {idx_b.value} != 1; the product-index law is not guaranteed"
    ta = tensor_product(mat(n), alg_b)
    idx_prod = index(ta, sampler)
    expected = n * idx_b.value
    one_precise = None
    checked = False
    if ta.dim <= max_exact_chi_dim:
        checked = True
        rep = spectrum(idx_prod.witness)
        one = [e for e in rep.all_entries() if isinstance(e.alpha, Alpha) and not e.alpha.is_infinite and e.alpha.value == 1]
        one_precise = bool(one) and one[0].stab_dim == idx_prod.value and one[0].precise
    return TensorIndexReport(
        n, idx_b.value, idx_prod.value, expected, checked, one_precise, warning, sampler.seed
    )


@dataclass(frozen=True)
class ConjectureProbeReport:
    product_index: int
    index_product: int
    resonance_sum: int
    resonant_alphas: tuple[str, ...]
    hypothesis: str
    hypothesis_consistent: bool
    seed: int

    def to_json_dict(self) -> dict:
        return {
            "kind": "conjecture-probe",
            "product_index": self.product_index,
            "index_product": self.index_product,
            "resonance_sum": self.resonance_sum,
            "resonant_alphas": list(self.resonant_alphas),
            "hypothesis": self.hypothesis,
            "hypothesis_consistent": self.hypothesis_consistent,
            "seed": self.seed,
        }


def conjecture_probe(
    alg_a: Algebra, alg_b: Algebra, sampler: SamplerConfig = SamplerConfig()
) -> ConjectureProbeReport:
    """Raw numbers around the product-index question, asserted of nothing.

    Reports ind(A (x) B), ind(A) * ind(B), and the resonance sum over
    constant spectral values alpha != 1 present in A whose inverse is
    present in B, weighting each by dim stab_F(alpha) * dim stab_G(1/alpha)
    at regular witnesses.  The identity
    ind(A (x) B) = ind(A) * ind(B) + resonance_sum is reported as a
    corrected-reading hypothesis only, never as a verified statement.
    """
    for name, alg in (("left", alg_a), ("right", alg_b)):
        verdict = classify(alg, sampler).verdict
        if verdict != TYPE1:
            raise NotType1(f"{name} factor classifies as {verdict}")
    idx_a = index(alg_a, sampler)
    idx_b = index(alg_b, sampler)
    prod_idx = index(tensor_product(alg_a, alg_b), sampler)
    const_a = constant_spectrum_alphas(alg_a, sampler)
    const_b = constant_spectrum_alphas(alg_b, sampler)
    one = Alpha(1)
    resonance = 0
    resonant = []
    for a in sorted(const_a, key=str):
        if a == one:
            continue
        inv = a.inverse()
        if inv not in const_b:
            continue
        fa, da = find_regular(alg_a, a, sampler)
        gb, db = find_regular(alg_b, inv, sampler)
        resonance += da * db
        resonant.append(str(a))
    hypothesis = (
        f"corrected reading: ind(A(x)B) = ind(A)*ind(B) + resonance "
        f"({prod_idx.value} = {idx_a.value * idx_b.value} + {resonance}); "
        "reported as a hypothesis, not a verified identity"
    )
    return ConjectureProbeReport(
        prod_idx.value,
        idx_a.value * idx_b.value,
        resonance,
        tuple(resonant),
        hypothesis,
        prod_idx.value == idx_a.value * idx_b.value + resonance,
        sampler.seed,
    )
