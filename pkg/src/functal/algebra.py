"""Finite-dimensional associative algebras given by rational structure constants.

An algebra is a labeled basis e_0..e_{n-1} together with the full table of
products e_i * e_j expressed in coordinates.  All desk constructors live
here: full matrix algebras, upper-triangular algebras, seaweed patterns,
the two-step nilpotent family V*V -> W, unital extensions, tensor products,
direct sums and opposites.  Validation checks associativity on every basis
triple and reports the failing triples instead of raising.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import AlgebraMismatch, AlgebraParseError, AssociativityViolation
from .linalg import Vector, vec, vec_add, vec_is_zero, vec_scale
from .scalars import rat, rat_str


class Algebra:
    """Associative algebra over Q with a fixed labeled basis.

    ``table[i][j]`` holds the coordinates of e_i * e_j.  Instances are
    treated as immutable; construction does not validate associativity
    (use :func:`validate` or :func:`parse_algebra`, which does).
    """

    def __init__(self, labels: Sequence[str], table, unity=None):
        self.labels: tuple[str, ...] = tuple(labels)
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise ValueError("basis labels must be distinct")
        self.table: tuple[tuple[Vector, ...], ...] = tuple(
            tuple(vec(cell) for cell in row) for row in table
        )
        if len(self.table) != n or any(
            len(row) != n or any(len(cell) != n for cell in row) for row in self.table
        ):
            raise ValueError("structure table must be n x n cells of n coordinates")
        self.unity: Vector | None = vec(unity) if unity is not None else None
        if self.unity is not None and len(self.unity) != n:
            raise ValueError("unity vector has wrong length")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def basis_vector(self, i: int) -> Vector:
        return tuple(Fraction(1) if j == i else Fraction(0) for j in range(self.dim))

    def label_index(self, label: str) -> int:
        return self.labels.index(label)

    def product_coords(self, x: Vector, y: Vector) -> Vector:
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = self.table[i]
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                cell = row[j]
                f = xi * yj
                for k, ck in enumerate(cell):
                    if ck != 0:
                        out[k] += f * ck
        return tuple(out)

    def element(self, coords) -> "AlgebraElement":
        return AlgebraElement(self, vec(coords))

    def basis_element(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, self.basis_vector(i))

    def is_unital(self) -> bool:
        return self.unity is not None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Algebra)
            and self.labels == other.labels
            and self.table == other.table
            and self.unity == other.unity
        )

    def __hash__(self):
        return hash((self.labels, self.table, self.unity))

    def __repr__(self):
        return f"Algebra(dim={self.dim}, labels={list(self.labels)})"


@dataclass(frozen=True)
class AlgebraElement:
    algebra: Algebra
    coords: Vector

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise ValueError("coordinate length does not match algebra dimension")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if self.algebra != other.algebra:
            raise AlgebraMismatch("elements of different algebras")
        return AlgebraElement(self.algebra, vec_add(self.coords, other.coords))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return AlgebraElement(self.algebra, vec_scale(rat(other), self.coords))

    __rmul__ = __mul__

    def __neg__(self):
        return AlgebraElement(self.algebra, vec_scale(Fraction(-1), self.coords))

    def is_zero(self) -> bool:
        return vec_is_zero(self.coords)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    if a.algebra != b.algebra:
        raise AlgebraMismatch("product of elements from different algebras")
    return AlgebraElement(a.algebra, a.algebra.product_coords(a.coords, b.coords))


@dataclass(frozen=True)
class Violation:
    kind: str  # "associativity" | "unity"
    triple: tuple[int, ...]
    detail: str


def validate(alg: Algebra) -> list[Violation]:
    """Check associativity on all basis triples; empty list means ok.

    If a unity vector is declared it must act as a two-sided identity on
    every basis element; failures are reported as "unity" violations.
    """
    out: list[Violation] = []
    n = alg.dim
    for i in range(n):
        for j in range(n):
            left_ij = alg.table[i][j]
            for k in range(n):
                left = alg.product_coords(left_ij, alg.basis_vector(k))
                right = alg.product_coords(alg.basis_vector(i), alg.table[j][k])
                if left != right:
                    out.append(
                        Violation(
                            "associativity",
                            (i, j, k),
                            f"(e{i}*e{j})*e{k} != e{i}*(e{j}*e{k})",
                        )
                    )
    if alg.unity is not None:
        for i in range(n):
            e = alg.basis_vector(i)
            if alg.product_coords(alg.unity, e) != e or alg.product_coords(e, alg.unity) != e:
                out.append(Violation("unity", (i,), f"declared unity does not fix e{i}"))
    return out


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def _matrix_unit_algebra(positions: list[tuple[int, int]], n: int) -> Algebra:
    """Span of the matrix units at `positions` inside the n x n matrix algebra.

    Requires the position set to be closed under (i,j),(j,l) -> (i,l).
    Basis is ordered row-major; unity is the sum of the diagonal units.
    """
    index = {pos: k for k, pos in enumerate(positions)}
    dim = len(positions)
    labels = [f"E_{{{i + 1},{j + 1}}}" for i, j in positions]
    zero = tuple(Fraction(0) for _ in range(dim))
    table = []
    for (i, j) in positions:
        row = []
        for (k, l) in positions:
            if j == k:
                target = index.get((i, l))
                if target is None:
                    raise ValueError(f"position set not closed: ({i},{l}) missing")
                cell = list(zero)
                cell[target] = Fraction(1)
                row.append(tuple(cell))
            else:
                row.append(zero)
        table.append(tuple(row))
    unity = [Fraction(0)] * dim
    for d in range(n):
        if (d, d) in index:
            unity[index[(d, d)]] = Fraction(1)
    diag_complete = all((d, d) in index for d in range(n))
    return Algebra(labels, table, unity if diag_complete else None)


def mat(n: int) -> Algebra:
    """Full matrix algebra of n x n matrices in the basis of matrix units."""
    if n < 1:
        raise ValueError("mat(n) needs n >= 1")
    positions = [(i, j) for i in range(n) for j in range(n)]
    return _matrix_unit_algebra(positions, n)


def ut(n: int) -> Algebra:
    """Upper-triangular n x n matrices; dimension n(n+1)/2."""
    if n < 1:
        raise ValueError("ut(n) needs n >= 1")
    positions = [(i, j) for i in range(n) for j in range(i, n)]
    return _matrix_unit_algebra(positions, n)


def _block_index(composition: Sequence[int], row: int) -> int:
    acc = 0
    for b, size in enumerate(composition):
        acc += size
        if row < acc:
            return b
    raise IndexError(row)


def seaweed(top: Sequence[int], bottom: Sequence[int]) -> Algebra:
    """Seaweed pattern subalgebra of mat(n) for two compositions of n.

    A matrix position (r, c) is kept when it is block upper-triangular with
    respect to the top composition and block lower-triangular with respect
    to the bottom one; the two flags preserved are the ascending span flag
    of the top composition and the descending tail flag of the bottom one.
    """
    top = [int(x) for x in top]
    bottom = [int(x) for x in bottom]
    if any(x < 1 for x in top + bottom):
        raise ValueError("composition parts must be positive")
    n = sum(top)
    if sum(bottom) != n:
        raise ValueError("top and bottom compositions must have the same total")
    positions = [
        (r, c)
        for r in range(n)
        for c in range(n)
        if _block_index(top, r) <= _block_index(top, c)
        and _block_index(bottom, r) >= _block_index(bottom, c)
    ]
    return _matrix_unit_algebra(positions, n)


def nilpotent_pair(b_tensor) -> Algebra:
    """Algebra on V (+) W with V*V landing in W via the coefficient tensor.

    ``b_tensor`` is a k x k array whose entries are either scalars (then
    dim W = 1) or equal-length coordinate vectors in W.  Every product of
    three elements vanishes, so the result is associative for any input.
    """
    k = len(b_tensor)
    if any(len(row) != k for row in b_tensor):
        raise ValueError("coefficient tensor must be square")
    first = b_tensor[0][0] if k else 0
    scalar_entries = isinstance(first, (int, str, Fraction))
    if scalar_entries:
        m = 1
        cells = [[(rat(x),) for x in row] for row in b_tensor]
    else:
        m = len(first)
        cells = [[vec(x) for x in row] for row in b_tensor]
        if any(len(c) != m for row in cells for c in row):
            raise ValueError("ragged W-coordinate vectors")
    dim = k + m
    labels = [f"v{i + 1}" for i in range(k)] + (
        ["w"] if m == 1 else [f"w{i + 1}" for i in range(m)]
    )
    zero = tuple(Fraction(0) for _ in range(dim))
    table = []
    for i in range(dim):
        row = []
        for j in range(dim):
            if i < k and j < k:
                row.append(tuple(Fraction(0) for _ in range(k)) + cells[i][j])
            else:
                row.append(zero)
        table.append(tuple(row))
    return Algebra(labels, table, None)


def unital_extension(alg: Algebra) -> Algebra:
    """Adjoin a two-sided unity as the first basis element (label "one")."""
    if "one" in alg.labels:
        raise ValueError('label "one" already in use')
    n = alg.dim
    labels = ["one"] + list(alg.labels)
    zero = tuple(Fraction(0) for _ in range(n + 1))

    def ext(v: Vector) -> Vector:
        return (Fraction(0),) + tuple(v)

    def unit_vec(i: int) -> Vector:
        return tuple(Fraction(1) if j == i else Fraction(0) for j in range(n + 1))

    table = []
    for i in range(n + 1):
        row = []
        for j in range(n + 1):
            if i == 0:
                row.append(unit_vec(j))
            elif j == 0:
                row.append(unit_vec(i))
            else:
                row.append(ext(alg.table[i - 1][j - 1]))
        table.append(tuple(row))
    return Algebra(labels, table, unit_vec(0))


def tensor_product(a: Algebra, b: Algebra) -> Algebra:
    """Tensor product with basis e_{i*m+j} = a_i (x) b_j (second index fastest)."""
    n, m = a.dim, b.dim
    dim = n * m
    labels = [f"{la}⊗{lb}" for la in a.labels for lb in b.labels]
    table = []
    for i1 in range(n):
        for j1 in range(m):
            row = []
            for i2 in range(n):
                for j2 in range(m):
                    ca = a.table[i1][i2]
                    cb = b.table[j1][j2]
                    cell = [Fraction(0)] * dim
                    for k1, x in enumerate(ca):
                        if x == 0:
                            continue
                        base = k1 * m
                        for k2, y in enumerate(cb):
                            if y != 0:
                                cell[base + k2] = x * y
                    row.append(tuple(cell))
            table.append(tuple(row))
    unity = None
    if a.unity is not None and b.unity is not None:
        unity = tuple(x * y for x in a.unity for y in b.unity)
    return Algebra(labels, table, unity)


def direct_sum(a: Algebra, b: Algebra) -> Algebra:
    """Block-diagonal sum; right-hand labels get a prime on collision."""
    n, m = a.dim, b.dim
    labels = list(a.labels)
    for lb in b.labels:
        while lb in labels:
            lb += "'"
        labels.append(lb)
    zero = tuple(Fraction(0) for _ in range(n + m))
    table = []
    for i in range(n + m):
        row = []
        for j in range(n + m):
            if i < n and j < n:
                row.append(tuple(a.table[i][j]) + (Fraction(0),) * m)
            elif i >= n and j >= n:
                row.append((Fraction(0),) * n + tuple(b.table[i - n][j - n]))
            else:
                row.append(zero)
        table.append(tuple(row))
    unity = None
    if a.unity is not None and b.unity is not None:
        unity = tuple(a.unity) + tuple(b.unity)
    return Algebra(labels, table, unity)


def opposite(alg: Algebra) -> Algebra:
    """Same space with reversed multiplication a*b := ba."""
    n = alg.dim
    table = [[alg.table[j][i] for j in range(n)] for i in range(n)]
    return Algebra(alg.labels, table, alg.unity)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def serialize_algebra(alg: Algebra) -> str:
    doc = {
        "dim": alg.dim,
        "basis": list(alg.labels),
        "table": [[[rat_str(c) for c in cell] for cell in row] for row in alg.table],
        "unity": [rat_str(c) for c in alg.unity] if alg.unity is not None else None,
    }
    return json.dumps(doc, sort_keys=True, indent=2)


def parse_algebra(text: str) -> Algebra:
    """Parse and fully validate an algebra document.

    Shape problems raise AlgebraParseError naming the offending row; an
    associative check failure raises AssociativityViolation with the triple.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise AlgebraParseError(f"invalid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise AlgebraParseError("top-level document must be an object")
    for key in ("dim", "basis", "table"):
        if key not in doc:
            raise AlgebraParseError(f"missing field {key!r}")
    n = doc["dim"]
    labels = doc["basis"]
    if not isinstance(n, int) or n < 1:
        raise AlgebraParseError("dim must be a positive integer")
    if len(labels) != n:
        raise AlgebraParseError(f"basis has {len(labels)} labels, expected {n}")
    table = doc["table"]
    if len(table) != n:
        raise AlgebraParseError(f"table has {len(table)} rows, expected {n}")
    for i, row in enumerate(table):
        if len(row) != n:
            raise AlgebraParseError(f"table row {i} ({labels[i]!r}) has {len(row)} cells, expected {n}")
        for j, cell in enumerate(row):
            if len(cell) != n:
                raise AlgebraParseError(
                    f"table entry ({i},{j}) has {len(cell)} coordinates, expected {n}"
                )
    try:
        alg = Algebra(labels, table, doc.get("unity"))
    except (ValueError, TypeError) as e:
        raise AlgebraParseError(str(e)) from e
    violations = validate(alg)
    if violations:
        v = violations[0]
        if v.kind == "associativity":
            raise AssociativityViolation(v.triple)
        raise AlgebraParseError(v.detail)
    return alg
