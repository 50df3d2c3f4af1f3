"""Joint spectra of a representation.

Two independent routes:

  * homology route: evaluate Betti numbers of the complex of rho - f over a
    finite candidate set and assemble each spectrum kind as a union of
    per-degree membership sets;
  * eigencharacter route: enumerate joint eigenvectors directly.  For
    nilpotent algebras the two routes agree; for merely solvable ones they
    can differ, and cross_validate reports how.

The candidate set is {w - g} where w runs over the triangularization
weights of rho and g over the homology support of the algebra's
one-dimensional modules.  Soundness: filter the complex by a rho-invariant
flag; each graded piece is the complex of a one-dimensional module with
weight w - f, so nonvanishing total homology forces f = w - g for some
weight w and some g with nonvanishing one-dimensional homology.  On a
nilpotent algebra the support is {0} and the candidates are exactly the
weights.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .lie_core import (
    Character,
    LieAlgebra,
    Subspace,
    is_character,
    is_nilpotent,
    is_solvable,
    restrict_character,
)
from .koszul import BettiVector, DEFAULT_CAP, homology_dims
from .numeric import (
    EXACT,
    Matrix,
    Scalar,
    col_vector,
    eigenvalues,
    identity,
    intersect_subspaces,
    inverse,
    matrix_from_columns,
    nullspace_basis,
    complement_positions,
    sc_abs,
    sc_one,
    sc_zero,
    scalar_key,
    scalar_to_json,
)
from .representation import Representation, adjoint_action, adjoint_rep, restrict_rep

# float-backend threshold for merging candidate and member characters
CHAR_MERGE = 1e-6


class NotSolvable(Exception):
    """Triangularization-based candidates need a solvable algebra."""


class HypothesisViolation(Exception):
    """The eigencharacter shortcut is only a theorem for nilpotent algebras."""


Vector = Tuple[Scalar, ...]

ANN_CLOSED_RANGE = (
    "closed-range clause dropped: every subspace of a finite-dimensional "
    "space is closed"
)
ANN_CLOSED_RANGE_READINGS = (
    "clause read both as R(d_(n-k)(rho-f)) and as R(d_(n-k)(rho)); "
    "vacuous either way in finite dimension"
)
ANN_ESSENTIAL = (
    "essential membership never occurs in finite dimension: homology is "
    "finite-dimensional and the identity operator is compact"
)
ANN_SPLIT = (
    "split membership computed from homology: a finite-dimensional complex "
    "splits at p exactly when H_p = 0"
)


# ---------------------------------------------------------------------------
# spectrum kinds
# ---------------------------------------------------------------------------

_FAMILIES = {"taylor", "delta", "pi"}


@dataclass(frozen=True)
class SpectrumKind:
    family: str  # taylor | delta | pi
    split: bool
    essential: bool
    k: Optional[int]

    def __post_init__(self):
        assert self.family in _FAMILIES
        if self.family == "taylor":
            assert self.k is None
        else:
            assert self.k is not None and self.k >= 0

    def render(self) -> str:
        if self.family == "taylor":
            if self.essential:
                return "split_e" if self.split else "fredholm"
            return "split" if self.split else "taylor"
        name = self.family
        if self.essential:
            name += "_e"
        if self.split:
            name = "split_" + name
        return f"{name}:{self.k}"

    def degree_range(self, n: int) -> range:
        if self.family == "taylor":
            return range(0, n + 1)
        k = min(self.k, n)
        if self.family == "delta":
            return range(0, k + 1)
        return range(n - k, n + 1)


def taylor_kind(split: bool = False, essential: bool = False) -> SpectrumKind:
    return SpectrumKind("taylor", split, essential, None)


def parse_kind(text: str) -> SpectrumKind:
    """Accepts taylor, delta:K, pi:K, fredholm, delta_e:K, pi_e:K, split,
    split_delta:K, split_pi:K, split_e, split_delta_e:K, split_pi_e:K."""
    s = text.strip()
    simple = {
        "taylor": SpectrumKind("taylor", False, False, None),
        "fredholm": SpectrumKind("taylor", False, True, None),
        "split": SpectrumKind("taylor", True, False, None),
        "split_e": SpectrumKind("taylor", True, True, None),
    }
    if s in simple:
        return simple[s]
    m = _re.match(
        r"^(?P<split>split_)?(?P<family>delta|pi)(?P<ess>_e)?:(?P<k>\d+)$", s
    )
    if m is None:
        raise ValueError(f"unknown spectrum kind: {text!r}")
    return SpectrumKind(
        m.group("family"),
        m.group("split") is not None,
        m.group("ess") is not None,
        int(m.group("k")),
    )


def all_kinds(n: int) -> List[SpectrumKind]:
    """Every kind meaningful for an n-dimensional algebra."""
    kinds = [
        SpectrumKind("taylor", False, False, None),
        SpectrumKind("taylor", False, True, None),
        SpectrumKind("taylor", True, False, None),
        SpectrumKind("taylor", True, True, None),
    ]
    for family in ("delta", "pi"):
        for split in (False, True):
            for ess in (False, True):
                for k in range(n + 1):
                    kinds.append(SpectrumKind(family, split, ess, k))
    return kinds


# ---------------------------------------------------------------------------
# character bookkeeping
# ---------------------------------------------------------------------------


def char_sort_key(coeffs: Vector) -> Tuple[str, ...]:
    return tuple(str(scalar_to_json(c)) for c in coeffs)


def _char_close(a: Vector, b: Vector, thr: float) -> bool:
    return all(sc_abs(x - y) <= thr for x, y in zip(a, b))


def dedup_characters(tuples: Sequence[Vector], backend: str) -> Tuple[Vector, ...]:
    """Canonical sorted deduplication; float merges within CHAR_MERGE."""
    if backend == EXACT:
        return tuple(sorted(set(tuples), key=char_sort_key))
    ordered = sorted(tuples, key=lambda t: tuple(scalar_key(x) for x in t))
    reps: List[Vector] = []
    for t in ordered:
        if not any(_char_close(t, r, CHAR_MERGE) for r in reps):
            reps.append(t)
    return tuple(sorted(reps, key=char_sort_key))


def same_character_sets(a: Sequence[Vector], b: Sequence[Vector], backend: str) -> bool:
    if backend == EXACT:
        return set(a) == set(b)
    aa, bb = list(a), list(b)
    if len(aa) != len(bb):
        return False
    used = [False] * len(bb)
    for t in aa:
        hit = next(
            (i for i, s in enumerate(bb) if not used[i] and _char_close(t, s, CHAR_MERGE)),
            None,
        )
        if hit is None:
            return False
        used[hit] = True
    return True


def char_subset(a: Sequence[Vector], b: Sequence[Vector], backend: str) -> bool:
    if backend == EXACT:
        return set(a) <= set(b)
    return all(any(_char_close(t, s, CHAR_MERGE) for s in b) for t in a)


# ---------------------------------------------------------------------------
# eigencharacter route
# ---------------------------------------------------------------------------


def _full_space(m: int, backend: str) -> List[Matrix]:
    one, zero = sc_one(backend), sc_zero(backend)
    return [col_vector([one if i == j else zero for i in range(m)], backend) for j in range(m)]


def _unique_eigenvalues(mat: Matrix, tol: Optional[float]) -> List[Scalar]:
    vals = eigenvalues(mat, tol)
    out: List[Scalar] = []
    for v in vals:
        if not out or out[-1] != v:
            out.append(v)
    return out


def joint_eigencharacters(
    rep: Representation, tol: Optional[float] = None
) -> List[Tuple[Character, Matrix]]:
    """All characters f with a nonzero joint eigenvector, with witnesses.

    Exhaustive branch over per-matrix eigenvalues, narrowing the joint
    eigenspace at each level; leaves that fail the character test are
    dropped (cannot happen for genuine representations, but checked).
    """
    L = rep.algebra
    backend = rep.backend
    found: List[Tuple[Vector, Matrix]] = []

    def descend(k: int, space: List[Matrix], lams: Tuple[Scalar, ...]):
        if not space:
            return
        if k == L.n:
            if is_character(L, lams, tol):
                found.append((tuple(lams), space[0]))
            return
        eye = identity(rep.m, backend)
        for lam in _unique_eigenvalues(rep.mats[k], tol):
            shifted = rep.mats[k] - eye.scale(lam)
            kernel = nullspace_basis(shifted, tol)
            if not kernel:
                continue
            if len(space) == rep.m:
                nxt = kernel  # first level: the ambient space is everything
            else:
                nxt = intersect_subspaces(space, kernel, tol)
            descend(k + 1, nxt, lams + (lam,))

    if rep.m >= 1:
        descend(0, _full_space(rep.m, backend), ())
    ordered = dedup_characters(tuple(c for c, _ in found), backend)
    out = []
    for c in ordered:
        if backend == EXACT:
            witness = next(w for cc, w in found if cc == c)
        else:
            witness = next(w for cc, w in found if _char_close(cc, c, CHAR_MERGE))
        out.append((Character(L, c), witness))
    return out


# ---------------------------------------------------------------------------
# triangularization weights
# ---------------------------------------------------------------------------


def _first_joint_eigenpair(rep: Representation, tol: Optional[float]) -> Tuple[Vector, Matrix]:
    """One joint eigenvalue tuple and eigenvector, deterministic branch order."""
    L, backend = rep.algebra, rep.backend

    def descend(k: int, space: List[Matrix], lams: Tuple[Scalar, ...]):
        if not space:
            return None
        if k == L.n:
            return lams, space[0]
        eye = identity(rep.m, backend)
        for lam in _unique_eigenvalues(rep.mats[k], tol):
            shifted = rep.mats[k] - eye.scale(lam)
            kernel = nullspace_basis(shifted, tol)
            if not kernel:
                continue
            nxt = kernel if len(space) == rep.m else intersect_subspaces(space, kernel, tol)
            hit = descend(k + 1, nxt, lams + (lam,))
            if hit is not None:
                return hit
        return None

    hit = descend(0, _full_space(rep.m, backend), ())
    if hit is None:
        raise NotSolvable("no joint eigenvector found; algebra action is not triangularizable")
    return hit


def triangular_weights(rep: Representation, tol: Optional[float] = None) -> List[Vector]:
    """Diagonal weight tuples of a simultaneous triangularization, with
    multiplicity, obtained by repeated eigenvector extraction and quotient."""
    L = rep.algebra
    if not is_solvable(L):
        raise NotSolvable("simultaneous triangularization needs a solvable algebra")
    backend = rep.backend
    work = rep
    weights: List[Vector] = []
    while work.m > 0:
        lams, v = _first_joint_eigenpair(work, tol)
        weights.append(lams)
        if work.m == 1:
            break
        comp = complement_positions([v], work.m, backend, tol)
        ext = [
            col_vector(
                [sc_one(backend) if i == j else sc_zero(backend) for i in range(work.m)],
                backend,
            )
            for j in comp
        ]
        basis = matrix_from_columns([v] + ext, work.m, backend)
        inv = inverse(basis, tol)
        sub_mats = []
        for mat in work.mats:
            moved = inv * mat * basis
            rows = [[moved.at(i, j) for j in range(1, work.m)] for i in range(1, work.m)]
            sub_mats.append(
                Matrix(work.m - 1, work.m - 1, tuple(x for row in rows for x in row), backend)
            )
        work = Representation(L, work.m - 1, tuple(sub_mats))
    return weights


def weight_candidates(rep: Representation, tol: Optional[float] = None) -> Tuple[Vector, ...]:
    """Deduplicated triangularization weights, each checked to be a character."""
    weights = dedup_characters(triangular_weights(rep, tol), rep.backend)
    for w in weights:
        assert is_character(rep.algebra, w, tol), f"non-character weight {w!r}"
    return weights


# ---------------------------------------------------------------------------
# candidate enlargement through one-dimensional homology support
# ---------------------------------------------------------------------------


def _one_dim_rep(L: LieAlgebra, g: Vector) -> Representation:
    mats = tuple(Matrix(1, 1, (c,), L.backend) for c in g)
    return Representation(L, 1, mats)


@lru_cache(maxsize=64)
def _homology_support_cached(L: LieAlgebra) -> Tuple[Vector, ...]:
    ad = adjoint_action(L)
    ad_weights = triangular_weights(ad)
    zero = L.zero_vector()
    sums = {zero}
    for w in ad_weights:
        sums |= {tuple(a + b for a, b in zip(s, w)) for s in sums}
    support = []
    for s in sorted(sums, key=char_sort_key):
        g = tuple(-x for x in s)
        if not is_character(L, g):
            continue
        if homology_dims(_one_dim_rep(L, g)).total > 0:
            support.append(g)
    return dedup_characters(support, L.backend)


def homology_support(L: LieAlgebra, tol: Optional[float] = None) -> Tuple[Vector, ...]:
    """Characters g with nonvanishing homology of the one-dimensional module
    with weight g.  Candidates are negated subset sums of adjoint weights;
    each candidate is tested directly, so the result is exact, not an
    estimate.  For nilpotent algebras this is {0}."""
    if L.backend == EXACT and tol is None:
        return _homology_support_cached(L)
    ad = adjoint_action(L)
    ad_weights = triangular_weights(ad, tol)
    zero = L.zero_vector()
    sums = {zero}
    for w in ad_weights:
        sums |= {tuple(a + b for a, b in zip(s, w)) for s in sums}
    support = []
    for s in dedup_characters(tuple(sums), L.backend):
        g = tuple(-x for x in s)
        if not is_character(L, g, tol):
            continue
        if homology_dims(_one_dim_rep(L, g), tol=tol).total > 0:
            support.append(g)
    return dedup_characters(support, L.backend)


def spectral_candidates(rep: Representation, tol: Optional[float] = None) -> Tuple[Vector, ...]:
    """Finite superset of every homology spectrum: weights minus support."""
    weights = weight_candidates(rep, tol)
    support = homology_support(rep.algebra, tol)
    out = []
    for w in weights:
        for g in support:
            c = tuple(a - b for a, b in zip(w, g))
            assert is_character(rep.algebra, c, tol)
            out.append(c)
    return dedup_characters(out, rep.backend)


# ---------------------------------------------------------------------------
# homology table and spectra
# ---------------------------------------------------------------------------


def homology_table(
    rep: Representation,
    cap: int = DEFAULT_CAP,
    tol: Optional[float] = None,
) -> Tuple[Tuple[Vector, BettiVector], ...]:
    """Betti vectors of rho - f over the full candidate set, sorted."""
    table = []
    for c in spectral_candidates(rep, tol):
        betti = homology_dims(rep, Character(rep.algebra, c), cap, tol)
        table.append((c, betti))
    return tuple(table)


def sigma_p(
    rep: Representation,
    p: int,
    cap: int = DEFAULT_CAP,
    tol: Optional[float] = None,
) -> Tuple[Vector, ...]:
    """Characters whose shifted complex has nonzero homology in degree p."""
    assert 0 <= p <= rep.algebra.n
    return tuple(c for c, betti in homology_table(rep, cap, tol) if betti.h[p] != 0)


@dataclass(frozen=True)
class SpectrumReport:
    kind: SpectrumKind
    members: Tuple[Character, ...]
    betti: Tuple[Tuple[Vector, BettiVector], ...]
    route: str
    candidates: Tuple[Vector, ...]
    annotations: Tuple[str, ...]

    @property
    def member_coeffs(self) -> Tuple[Vector, ...]:
        return tuple(f.coeffs for f in self.members)


def _report_from_table(
    rep: Representation,
    kind: SpectrumKind,
    table: Tuple[Tuple[Vector, BettiVector], ...],
) -> SpectrumReport:
    L = rep.algebra
    annotations: List[str] = []
    if kind.family == "pi":
        annotations.append(ANN_CLOSED_RANGE)
        if kind.essential:
            annotations.append(ANN_CLOSED_RANGE_READINGS)
    if kind.essential:
        annotations.append(ANN_ESSENTIAL)
        return SpectrumReport(kind, (), (), "homology", (), tuple(annotations))
    if kind.split:
        annotations.append(ANN_SPLIT)
    degrees = kind.degree_range(L.n)
    members = []
    member_betti = []
    for coeffs, betti in table:
        if any(betti.h[p] != 0 for p in degrees):
            members.append(Character(L, coeffs))
            member_betti.append((coeffs, betti))
    return SpectrumReport(
        kind,
        tuple(members),
        tuple(member_betti),
        "homology",
        tuple(c for c, _ in table),
        tuple(annotations),
    )


def all_spectra(
    rep: Representation,
    kinds: Optional[Sequence[SpectrumKind]] = None,
    cap: int = DEFAULT_CAP,
    tol: Optional[float] = None,
) -> Dict[str, SpectrumReport]:
    """Reports for many kinds off one shared homology table."""
    if kinds is None:
        kinds = all_kinds(rep.algebra.n)
    table = None
    if any(not k.essential for k in kinds):
        table = homology_table(rep, cap, tol)
    out = {}
    for kind in kinds:
        out[kind.render()] = _report_from_table(rep, kind, table or ())
    return out


def spectrum(
    rep: Representation,
    kind: SpectrumKind | str,
    cap: int = DEFAULT_CAP,
    tol: Optional[float] = None,
) -> SpectrumReport:
    if isinstance(kind, str):
        kind = parse_kind(kind)
    return all_spectra(rep, [kind], cap, tol)[kind.render()]


def spectrum_via_eigencharacters(
    rep: Representation,
    override: bool = False,
    tol: Optional[float] = None,
) -> SpectrumReport:
    """The Taylor/Slodkowski spectrum read off joint eigenvectors.

    A theorem only for nilpotent algebras; solvable non-nilpotent input is
    refused unless explicitly overridden, because the characterization can
    genuinely fail there.
    """
    L = rep.algebra
    if not is_nilpotent(L) and not override:
        raise HypothesisViolation(
            "eigencharacter route requested for a non-nilpotent algebra; "
            "pass the override to force it"
        )
    pairs = joint_eigencharacters(rep, tol)
    members = tuple(f for f, _ in pairs)
    return SpectrumReport(
        kind=taylor_kind(),
        members=members,
        betti=(),
        route="eigencharacter",
        candidates=tuple(f.coeffs for f in members),
        annotations=("members are joint eigencharacters with explicit witnesses",),
    )


# ---------------------------------------------------------------------------
# cross-validation, projection, duality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CrossValidation:
    nilpotent: bool
    homology_members: Tuple[Vector, ...]
    eigen_members: Tuple[Vector, ...]
    equal: bool
    eigen_contained: bool
    strict: bool


def cross_validate(
    rep: Representation,
    cap: int = DEFAULT_CAP,
    tol: Optional[float] = None,
) -> CrossValidation:
    """Computes both routes and compares.

    Nilpotent algebras must agree (a disagreement would be an
    implementation bug, so it raises); for solvable non-nilpotent input the
    report states containment of the eigencharacter set in the homology
    spectrum and whether it is strict.
    """
    L = rep.algebra
    if not is_solvable(L):
        raise NotSolvable("joint spectra here are defined for solvable algebras")
    backend = rep.backend
    nilp = is_nilpotent(L)
    hom = spectrum(rep, taylor_kind(), cap, tol).member_coeffs
    eig = tuple(f.coeffs for f, _ in joint_eigencharacters(rep, tol))
    equal = same_character_sets(hom, eig, backend)
    contained = char_subset(eig, hom, backend)
    strict = contained and not equal
    if nilp and not equal:
        raise RuntimeError(
            "dual-route disagreement on a nilpotent algebra: "
            f"homology {hom!r} vs eigencharacters {eig!r}"
        )
    return CrossValidation(nilp, hom, eig, equal, contained, strict)


@dataclass(frozen=True)
class ProjectionReport:
    kind: SpectrumKind
    projected: Tuple[Vector, ...]
    restricted: Tuple[Vector, ...]
    equal: bool


def projection_check(
    rep: Representation,
    ideal: Subspace,
    kind: SpectrumKind | str,
    cap: int = DEFAULT_CAP,
    tol: Optional[float] = None,
) -> ProjectionReport:
    """Restriction of the spectrum to an ideal vs the spectrum of the
    restricted representation.  Essential kinds are refused: both sides are
    empty in finite dimension, so the check would be vacuous."""
    if isinstance(kind, str):
        kind = parse_kind(kind)
    if kind.essential:
        raise ValueError("projection check is for non-essential kinds")
    big = spectrum(rep, kind, cap, tol)
    projected = dedup_characters(
        tuple(restrict_character(f, ideal, tol) for f in big.members),
        rep.backend,
    )
    small_rep = restrict_rep(rep, ideal, tol)
    small = spectrum(small_rep, kind, cap, tol)
    restricted = small.member_coeffs
    return ProjectionReport(
        kind, projected, restricted,
        same_character_sets(projected, restricted, rep.backend),
    )


@dataclass(frozen=True)
class DualityReport:
    k: int
    delta_side: Tuple[Vector, ...]
    pi_side_dual: Tuple[Vector, ...]
    equal: bool


def adjoint_duality_check(
    rep: Representation,
    k: int,
    cap: int = DEFAULT_CAP,
    tol: Optional[float] = None,
) -> DualityReport:
    """{0} union sigma_delta_k(rho) against {0} union sigma_pi_k(rho*)."""
    L = rep.algebra
    if not is_nilpotent(L):
        raise HypothesisViolation("duality comparison stated for nilpotent algebras")
    zero = L.zero_vector()
    delta_side = spectrum(rep, SpectrumKind("delta", False, False, k), cap, tol).member_coeffs
    dual = adjoint_rep(rep)
    pi_side = spectrum(dual, SpectrumKind("pi", False, False, k), cap, tol).member_coeffs
    left = dedup_characters(delta_side + (zero,), rep.backend)
    right = dedup_characters(pi_side + (zero,), rep.backend)
    return DualityReport(k, left, right, same_character_sets(left, right, rep.backend))
