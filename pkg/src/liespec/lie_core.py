"""Lie algebras given by structure constants.

An algebra is a basis (names) plus the coefficient vector of [e_i, e_j] for
every i < j; antisymmetry is synthesized by the accessor, so inconsistent
input cannot be expressed.  Subspaces keep their bases in reduced echelon
form, which makes equality of spans a tuple comparison.

Chain terminology below: a full flag of ideals L_0 ⊂ L_1 ⊂ ... ⊂ L_n with
dim L_i = i and [L_i, L_j] ⊆ L_{i-1} for i < j.  Such flags exist exactly
for nilpotent algebras and are built here by refining the ascending central
series one dimension at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .numeric import (
    EXACT,
    Matrix,
    Scalar,
    TAU,
    col_vector,
    echelon_vectors,
    make_scalar,
    matrix_from_rows,
    nullspace_basis,
    sc_abs,
    sc_is_zero,
    sc_one,
    sc_zero,
    scalar_from_json,
    scalar_key,
    scalar_to_json,
)


class NotNilpotent(Exception):
    """Operation requires a nilpotent algebra."""


class NotAnIdeal(Exception):
    """The given subspace is not an ideal of its parent algebra."""


class NotACharacter(Exception):
    """The functional does not vanish on the derived subalgebra."""


Vector = Tuple[Scalar, ...]


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants stored for i < j only, zero rows omitted."""

    names: Tuple[str, ...]
    table: Tuple[Tuple[int, int, Vector], ...]
    backend: str
    _map: Dict[Tuple[int, int], Vector] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )

    def __post_init__(self):
        n = len(self.names)
        seen = {}
        for i, j, coeffs in self.table:
            assert 0 <= i < j < n, f"bad bracket index pair ({i},{j})"
            assert len(coeffs) == n
            assert (i, j) not in seen, f"duplicate bracket ({i},{j})"
            seen[(i, j)] = coeffs
        object.__setattr__(self, "_map", seen)

    @property
    def n(self) -> int:
        return len(self.names)

    def zero_vector(self) -> Vector:
        return (sc_zero(self.backend),) * self.n

    def structure(self, i: int, j: int) -> Vector:
        """Coefficients of [e_i, e_j]; antisymmetry built in."""
        if i == j:
            return self.zero_vector()
        if i < j:
            return self._map.get((i, j), self.zero_vector())
        coeffs = self._map.get((j, i))
        if coeffs is None:
            return self.zero_vector()
        return tuple(-c for c in coeffs)


def lie_algebra(
    names: Sequence[str],
    brackets: Mapping[Tuple[int, int], Sequence],
    backend: str = EXACT,
) -> LieAlgebra:
    """Build an algebra, coercing bracket coefficients into the backend."""
    n = len(names)
    table = []
    for (i, j), coeffs in sorted(brackets.items()):
        assert i < j, f"brackets must be given for i<j, got ({i},{j})"
        vec = tuple(make_scalar(c, backend) for c in coeffs)
        assert len(vec) == n
        if not all(sc_is_zero(c) for c in vec):
            table.append((i, j, vec))
    return LieAlgebra(tuple(names), tuple(table), backend)


def abelian_algebra(names: Sequence[str], backend: str = EXACT) -> LieAlgebra:
    return lie_algebra(names, {}, backend)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """Span inside the coefficient space of the parent algebra, basis in
    reduced echelon form (canonical: equal spans compare equal)."""

    algebra: LieAlgebra
    basis: Tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def span(L: LieAlgebra, vectors: Sequence[Sequence[Scalar]], tol: Optional[float] = None) -> Subspace:
    ech = echelon_vectors([tuple(v) for v in vectors], L.backend, tol)
    return Subspace(L, ech)


def zero_subspace(L: LieAlgebra) -> Subspace:
    return Subspace(L, ())


def full_subspace(L: LieAlgebra) -> Subspace:
    one, zero = sc_one(L.backend), sc_zero(L.backend)
    rows = [tuple(one if i == j else zero for i in range(L.n)) for j in range(L.n)]
    return Subspace(L, tuple(rows))


def _membership_threshold(S: Subspace, vec: Sequence[Scalar], tol: Optional[float]) -> float:
    if S.algebra.backend == EXACT:
        return 0.0
    mx = max((sc_abs(x) for row in S.basis for x in row), default=0.0)
    mx = max(mx, max((sc_abs(x) for x in vec), default=0.0), 1.0)
    return (TAU if tol is None else tol) * mx


def reduce_mod(S: Subspace, vec: Sequence[Scalar], tol: Optional[float] = None) -> Vector:
    """Subtract off the echelon basis of S; result has zeros in all pivot
    coordinates of S."""
    thr = _membership_threshold(S, vec, tol)
    out = list(vec)
    for row in S.basis:
        p = next(k for k, x in enumerate(row) if not sc_is_zero(x, thr))
        c = out[p]
        if not sc_is_zero(c, thr):
            out = [a - c * b for a, b in zip(out, row)]
    return tuple(out)


def contains(S: Subspace, vec: Sequence[Scalar], tol: Optional[float] = None) -> bool:
    thr = _membership_threshold(S, vec, tol)
    return all(sc_is_zero(x, thr) for x in reduce_mod(S, vec, tol))


def contains_subspace(outer: Subspace, inner: Subspace, tol: Optional[float] = None) -> bool:
    return all(contains(outer, v, tol) for v in inner.basis)


# ---------------------------------------------------------------------------
# bracket and validation
# ---------------------------------------------------------------------------


def bracket(L: LieAlgebra, u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    """[u, v] by bilinear expansion through the structure constants."""
    n = L.n
    assert len(u) == n and len(v) == n
    out = list(L.zero_vector())
    for i in range(n):
        if sc_is_zero(u[i]):
            continue
        for j in range(n):
            if sc_is_zero(v[j]) or i == j:
                continue
            c = u[i] * v[j]
            for k, s in enumerate(L.structure(i, j)):
                out[k] = out[k] + c * s
    return tuple(out)


def _basis_vector(L: LieAlgebra, i: int) -> Vector:
    return tuple(sc_one(L.backend) if k == i else sc_zero(L.backend) for k in range(L.n))


def validate_lie_algebra(L: LieAlgebra, tol: Optional[float] = None) -> List[Tuple[Tuple[int, int, int], Vector]]:
    """Jacobi check over all basis triples i<j<k.

    Returns the list of violations, each the triple together with the
    residual vector [[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej]; empty list
    means the constants define a Lie algebra.
    """
    thr = 0.0
    if L.backend != EXACT:
        mx = max((sc_abs(c) for _, _, row in L.table for c in row), default=0.0)
        thr = (TAU if tol is None else tol) * max(1.0, mx * mx)
    violations = []
    basis = [_basis_vector(L, i) for i in range(L.n)]
    for i in range(L.n):
        for j in range(i + 1, L.n):
            for k in range(j + 1, L.n):
                r1 = bracket(L, L.structure(i, j), basis[k])
                r2 = bracket(L, L.structure(j, k), basis[i])
                r3 = bracket(L, L.structure(k, i), basis[j])
                residual = tuple(a + b + c for a, b, c in zip(r1, r2, r3))
                if not all(sc_is_zero(x, thr) for x in residual):
                    violations.append(((i, j, k), residual))
    return violations


# ---------------------------------------------------------------------------
# series and nilpotency
# ---------------------------------------------------------------------------


def _bracket_span(L: LieAlgebra, A: Subspace, B: Subspace, tol: Optional[float] = None) -> Subspace:
    prods = [bracket(L, a, b) for a in A.basis for b in B.basis]
    return span(L, prods, tol) if prods else zero_subspace(L)


def derived_subalgebra(L: LieAlgebra, tol: Optional[float] = None) -> Subspace:
    prods = [L.structure(i, j) for i in range(L.n) for j in range(i + 1, L.n)]
    return span(L, prods, tol) if prods else zero_subspace(L)


def lower_central_series(L: LieAlgebra, tol: Optional[float] = None) -> List[Subspace]:
    """L ⊇ [L,L] ⊇ [L,[L,L]] ⊇ ... until stabilization."""
    series = [full_subspace(L)]
    whole = series[0]
    while True:
        nxt = _bracket_span(L, whole, series[-1], tol)
        if nxt.dim == series[-1].dim:
            break
        series.append(nxt)
        if nxt.dim == 0:
            break
    return series


def derived_series(L: LieAlgebra, tol: Optional[float] = None) -> List[Subspace]:
    series = [full_subspace(L)]
    while True:
        cur = series[-1]
        nxt = _bracket_span(L, cur, cur, tol)
        if nxt.dim == cur.dim:
            break
        series.append(nxt)
        if nxt.dim == 0:
            break
    return series


def is_nilpotent(L: LieAlgebra) -> bool:
    return lower_central_series(L)[-1].dim == 0


def is_solvable(L: LieAlgebra) -> bool:
    return derived_series(L)[-1].dim == 0


def is_ideal(L: LieAlgebra, S: Subspace, tol: Optional[float] = None) -> bool:
    for i in range(L.n):
        e = _basis_vector(L, i)
        for b in S.basis:
            if not contains(S, bracket(L, e, b), tol):
                return False
    return True


# ---------------------------------------------------------------------------
# full flags of ideals
# ---------------------------------------------------------------------------


def _ascending_central_series(L: LieAlgebra, tol: Optional[float] = None) -> List[Subspace]:
    """0 = Z_0 ⊆ Z_1 ⊆ ... with Z_{k+1}/Z_k the center of L/Z_k."""
    series = [zero_subspace(L)]
    backend = L.backend
    while True:
        zk = series[-1]
        # v lies in Z_{k+1} iff [v, e_j] reduces to 0 mod Z_k for all j;
        # rows of the condition matrix: one block per basis element e_j.
        cond_rows: List[List[Scalar]] = []
        for j in range(L.n):
            cols = []
            for i in range(L.n):
                cols.append(reduce_mod(zk, L.structure(i, j), tol))
            for coord in range(L.n):
                cond_rows.append([cols[i][coord] for i in range(L.n)])
        mat = matrix_from_rows(cond_rows, backend, cols=L.n)
        kernel = nullspace_basis(mat, tol)
        nxt = span(L, [tuple(k.at(r, 0) for r in range(L.n)) for k in kernel], tol)
        if nxt.dim == zk.dim:
            return series
        series.append(nxt)
        if nxt.dim == L.n:
            return series


def _normalize_leading(vec: Vector, thr: float = 0.0) -> Vector:
    lead = next(x for x in vec if not sc_is_zero(x, thr))
    return tuple(x / lead for x in vec)


def jordan_holder_chain(L: LieAlgebra, tol: Optional[float] = None) -> List[Subspace]:
    """Full flag 0 = L_0 ⊂ L_1 ⊂ ... ⊂ L_n = L with [L_i, L_j] ⊆ L_{i-1}.

    Built by refining the ascending central series; inside each central
    layer the lexicographically smallest reduced candidate vector is taken,
    so the output is deterministic.
    """
    if not is_nilpotent(L):
        raise NotNilpotent("a full flag of ideals with the bracket-drop "
                           "property requires a nilpotent algebra")
    asc = _ascending_central_series(L, tol)
    chain = [zero_subspace(L)]
    for target in asc[1:]:
        while chain[-1].dim < target.dim:
            current = chain[-1]
            candidates = []
            for b in target.basis:
                r = reduce_mod(current, b, tol)
                thr = 0.0
                if L.backend != EXACT:
                    thr = (TAU if tol is None else tol) * max(sc_abs(x) for x in r)
                if not all(sc_is_zero(x, thr) for x in r):
                    candidates.append(_normalize_leading(r, thr))
            pick = min(candidates, key=lambda v: tuple(scalar_key(x) for x in v))
            chain.append(span(L, list(current.basis) + [pick], tol))
    return chain


def verify_chain(L: LieAlgebra, chain: Sequence[Subspace], tol: Optional[float] = None) -> List[str]:
    """Explicit check of the flag conditions; empty list means ok.

      i.  L_0 = 0 and L_n = L;
      ii. L_i ⊆ L_{i+1} with dim L_i = i;
      iii.[L_i, L_j] ⊆ L_{i-1} for 1 ≤ i < j ≤ n.
    """
    problems = []
    if len(chain) != L.n + 1:
        problems.append(f"condition ii fails: chain length {len(chain)} != {L.n + 1}")
        return problems
    if chain[0].dim != 0:
        problems.append("condition i fails: L_0 != 0")
    if chain[-1].dim != L.n:
        problems.append("condition i fails: L_n != L")
    for i in range(len(chain)):
        if chain[i].dim != i:
            problems.append(f"condition ii fails: dim L_{i} = {chain[i].dim}")
        if i > 0 and not contains_subspace(chain[i], chain[i - 1], tol):
            problems.append(f"condition ii fails: L_{i-1} not inside L_{i}")
    if problems:
        return problems
    for i in range(1, L.n + 1):
        for j in range(i + 1, L.n + 1):
            for u in chain[i].basis:
                for v in chain[j].basis:
                    w = bracket(L, u, v)
                    if not contains(chain[i - 1], w, tol):
                        problems.append(
                            f"condition iii fails at (i,j)=({i},{j}): "
                            f"[L_{i},L_{j}] not inside L_{i-1}"
                        )
                        break
                else:
                    continue
                break
    return problems


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Character:
    """Linear functional on the algebra vanishing on [L, L]."""

    algebra: LieAlgebra
    coeffs: Vector

    def value(self, vec: Sequence[Scalar]) -> Scalar:
        acc = sc_zero(self.algebra.backend)
        for c, x in zip(self.coeffs, vec):
            acc = acc + c * x
        return acc


def is_character(L: LieAlgebra, coeffs: Sequence[Scalar], tol: Optional[float] = None) -> bool:
    thr = 0.0
    if L.backend != EXACT:
        mx = max((sc_abs(c) for c in coeffs), default=0.0)
        thr = (TAU if tol is None else tol) * max(1.0, mx)
    for b in derived_subalgebra(L, tol).basis:
        val = sum((c * x for c, x in zip(coeffs, b)), start=sc_zero(L.backend))
        if not sc_is_zero(val, thr):
            return False
    return True


def character(L: LieAlgebra, values: Sequence, tol: Optional[float] = None) -> Character:
    coeffs = tuple(make_scalar(v, L.backend) for v in values)
    if not is_character(L, coeffs, tol):
        raise NotACharacter(f"functional {values!r} does not vanish on [L, L]")
    return Character(L, coeffs)


def zero_character(L: LieAlgebra) -> Character:
    return Character(L, L.zero_vector())


def restrict_character(f: Character, ideal: Subspace, tol: Optional[float] = None) -> Vector:
    """Values of f on the echelon basis of the ideal, in basis order."""
    L = f.algebra
    if not is_ideal(L, ideal, tol):
        raise NotAnIdeal("restriction target must be an ideal")
    return tuple(f.value(b) for b in ideal.basis)


def induced_algebra(ideal: Subspace, names: Optional[Sequence[str]] = None,
                    tol: Optional[float] = None) -> LieAlgebra:
    """The ideal as an algebra in its own echelon basis.

    Coordinates of [b_i, b_j] are read off the reduced form: each echelon
    basis vector contributes its pivot coordinate.
    """
    L = ideal.algebra
    if not is_ideal(L, ideal, tol):
        raise NotAnIdeal("induced structure constants need an ideal")
    d = ideal.dim
    if names is None:
        names = [f"b{k}" for k in range(d)]
    pivots = []
    for row in ideal.basis:
        pivots.append(next(k for k, x in enumerate(row) if not sc_is_zero(x)))
    brackets = {}
    for i in range(d):
        for j in range(i + 1, d):
            w = bracket(L, ideal.basis[i], ideal.basis[j])
            # reduced echelon basis: coefficient on b_k is the pivot coordinate
            coeffs = tuple(w[p] for p in pivots)
            brackets[(i, j)] = coeffs
    return lie_algebra(names, brackets, L.backend)


def opposite_algebra(L: LieAlgebra) -> LieAlgebra:
    table = tuple((i, j, tuple(-c for c in coeffs)) for i, j, coeffs in L.table)
    return LieAlgebra(L.names, table, L.backend)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def algebra_to_json(L: LieAlgebra) -> dict:
    return {
        "dim": L.n,
        "basis": list(L.names),
        "brackets": [
            {"i": i, "j": j, "coeffs": [scalar_to_json(c) for c in coeffs]}
            for i, j, coeffs in L.table
        ],
    }


def algebra_from_json(obj: dict, backend: str = EXACT) -> LieAlgebra:
    if not isinstance(obj, dict):
        raise ValueError("algebra: expected an object")
    try:
        n = obj["dim"]
        names = obj["basis"]
    except KeyError as e:
        raise ValueError(f"algebra: missing field {e.args[0]!r}") from None
    if not isinstance(names, list) or len(names) != n:
        raise ValueError("algebra.basis: expected a list of dim names")
    brackets = {}
    for idx, entry in enumerate(obj.get("brackets", [])):
        try:
            i, j, coeffs = entry["i"], entry["j"], entry["coeffs"]
        except (KeyError, TypeError) as e:
            raise ValueError(f"algebra.brackets[{idx}]: malformed entry") from None
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < j < n):
            raise ValueError(f"algebra.brackets[{idx}]: need 0 <= i < j < dim")
        if not isinstance(coeffs, list) or len(coeffs) != n:
            raise ValueError(f"algebra.brackets[{idx}].coeffs: expected {n} scalars")
        try:
            brackets[(i, j)] = [scalar_from_json(c, backend) for c in coeffs]
        except ValueError as e:
            raise ValueError(f"algebra.brackets[{idx}].coeffs: {e}") from None
    return lie_algebra(names, brackets, backend)
