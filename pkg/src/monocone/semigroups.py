"""Finitely generated affine semigroups in Z^n.

Membership is exact whenever the semigroup is positive (a strictly positive
functional bounds the coefficients of any representation a priori); the
universally quantified properties (normality, fullness) are decided on a
bounded box and their verdicts carry a ``bounded`` flag, with re-verifiable
witnesses on failure.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from . import linalg
from .errors import DimensionMismatch, NotNormal, NotSubsemigroup

IntVec = tuple[int, ...]


@lru_cache(maxsize=4096)
def _positive_functional(gens: tuple[IntVec, ...], dim: int):
    return linalg.strict_positive_functional([linalg.vec(g) for g in gens], dim)


@dataclass(frozen=True)
class Verdict:
    value: bool
    witness: Optional[tuple] = None
    bounded: bool = False

    def payload(self) -> dict:
        return {
            "value": self.value,
            "witness": list(self.witness) if self.witness is not None else None,
            "bounded": self.bounded,
        }


def _as_intvec(v: Sequence[int]) -> IntVec:
    return tuple(int(x) for x in v)


@dataclass(frozen=True)
class AffineSemigroup:
    ambient_dim: int
    generators: tuple[IntVec, ...]
    search_bound: int = 0

    def __post_init__(self):
        gens: list[IntVec] = []
        seen = set()
        for g in self.generators:
            g = _as_intvec(g)
            if len(g) != self.ambient_dim:
                raise DimensionMismatch(
                    f"generator {g} has dimension {len(g)}, ambient is {self.ambient_dim}"
                )
            if any(g) and g not in seen:
                seen.add(g)
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))
        max_coord = max((abs(c) for g in gens for c in g), default=1)
        bound = max(self.search_bound, 3 * max_coord)
        object.__setattr__(self, "search_bound", bound)

    def to_doc(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "generators": [list(g) for g in self.generators],
            "search_bound": self.search_bound,
        }

    @staticmethod
    def from_doc(doc: dict) -> "AffineSemigroup":
        return AffineSemigroup(
            ambient_dim=int(doc["ambient_dim"]),
            generators=tuple(tuple(int(x) for x in g) for g in doc["generators"]),
            search_bound=int(doc.get("search_bound", 0)),
        )


def _box_points(dim: int, radius: int) -> Iterator[IntVec]:
    return itertools.product(range(-radius, radius + 1), repeat=dim)


def membership(s: AffineSemigroup, v: Sequence[int]) -> Verdict:
    """Is v a nonnegative-integer combination of the generators?

    Exact (bounded=False) when a strictly positive functional exists for the
    generators: L(v) then bounds every coefficient.  Otherwise the search is
    capped and the verdict is marked bounded.
    """
    v = _as_intvec(v)
    if len(v) != s.ambient_dim:
        raise DimensionMismatch(f"vector dimension {len(v)} != ambient {s.ambient_dim}")
    if not any(v):
        return Verdict(True, witness=())
    gens = s.generators
    if not gens:
        return Verdict(False)
    L = _positive_functional(gens, s.ambient_dim)
    if L is not None:
        found = _rep_search(gens, v, L=L, cap=None)
        return Verdict(found is not None, witness=found)
    # non-pointed: cap coefficients from the norms involved
    norm_v = sum(abs(c) for c in v)
    cap = max(2 * s.search_bound, 2 * norm_v, 8)
    found = _rep_search(gens, v, L=None, cap=cap)
    return Verdict(found is not None, witness=found, bounded=True)


def _rep_search(gens: Sequence[IntVec], v: IntVec, L, cap: Optional[int]) -> Optional[IntVec]:
    """Depth-first search for c >= 0 with sum c_i g_i = v.

    With a strictly positive functional L the residual L-value prunes the
    search exactly; otherwise the per-coefficient cap bounds it.
    """
    n = len(gens)
    dim = len(v)
    lvals = [L(g) for g in gens] if L is not None else None

    def rec(idx: int, residual: IntVec, acc: list[int]) -> Optional[IntVec]:
        if not any(residual):
            return tuple(acc + [0] * (n - idx))
        if idx == n:
            return None
        if L is not None:
            lres = L(residual)
            if lres < 0:
                return None
            limit = int(lres / lvals[idx])
        else:
            limit = cap
        g = gens[idx]
        for c in range(limit + 1):
            rem = tuple(residual[d] - c * g[d] for d in range(dim))
            out = rec(idx + 1, rem, acc + [c])
            if out is not None:
                return out
        return None

    return rec(0, v, [])


def is_positive(s: AffineSemigroup) -> Verdict:
    """No nonzero invertible element; equivalently the generator cone is pointed."""
    if not s.generators:
        return Verdict(True)
    gens = [linalg.vec(g) for g in s.generators]
    pointed, g_bad = linalg.cone_is_pointed(gens, s.ambient_dim)
    if pointed:
        return Verdict(True)
    # -g_bad = sum(q_i g_i); clear denominators for an integer unit witness
    coeffs = linalg.nonneg_combination(gens, linalg.vec_scale(-1, g_bad))
    denom = 1
    for c in coeffs:
        denom = denom * c.denominator // math.gcd(denom, c.denominator)
    witness = tuple(int(denom * x) for x in g_bad)
    return Verdict(False, witness=witness)


@lru_cache(maxsize=4096)
def _group_form(gens: tuple[IntVec, ...], dim: int):
    cols = [[g[i] for g in gens] for i in range(dim)]  # dim x m matrix B with B z = v
    U, D, _ = linalg.smith_normal_form(cols)
    diag = [D[i][i] if i < min(dim, len(gens)) else 0 for i in range(dim)]
    return U, diag


def group_membership(gens: Sequence[IntVec], v: IntVec) -> bool:
    """Is v in the subgroup of Z^n generated by the given vectors?"""
    if not any(v):
        return True
    if not gens:
        return False
    dim = len(v)
    U, diag = _group_form(tuple(_as_intvec(g) for g in gens), dim)
    for i in range(dim):
        q = sum(U[i][j] * v[j] for j in range(dim))
        d = diag[i]
        if d == 0:
            if q != 0:
                return False
        elif q % d != 0:
            return False
    return True


@lru_cache(maxsize=4096)
def _dual_for(gens: tuple[IntVec, ...], dim: int):
    if dim > linalg.MAX_DUAL_DIMENSION:
        return None
    return linalg.dual_description([linalg.vec(g) for g in gens], dim)


def cone_membership_rational(gens: Sequence[IntVec], v: Sequence[int]) -> bool:
    """Is v in the Q>=0-cone of the generators?  Farkas test via the cached dual."""
    gens = tuple(_as_intvec(g) for g in gens)
    dim = len(v)
    dual = _dual_for(gens, dim)
    if dual is not None:
        rays, lines = dual
        vv = linalg.vec(v)
        return all(linalg.vec_dot(r, vv) >= 0 for r in rays) and all(
            linalg.vec_dot(l, vv) == 0 for l in lines
        )
    return linalg.cone_member([linalg.vec(g) for g in gens], linalg.vec(v))


def is_normal(s: AffineSemigroup) -> Verdict:
    """Box-bounded saturation check: cone(gens) ∩ group(gens) ∩ box ⊆ semigroup."""
    gens = s.generators
    if not gens:
        return Verdict(True, bounded=True)
    for p in _box_points(s.ambient_dim, s.search_bound):
        if not any(p):
            continue
        if not cone_membership_rational(gens, p):
            continue
        if not group_membership(gens, p):
            continue
        if not membership(s, p).value:
            return Verdict(False, witness=p, bounded=True)
    return Verdict(True, bounded=True)


def _elements_in_box(s: AffineSemigroup, radius: int) -> list[IntVec]:
    out = []
    for p in _box_points(s.ambient_dim, radius):
        if membership(s, p).value:
            out.append(p)
    return out


def is_full(sub: AffineSemigroup, sup: AffineSemigroup) -> Verdict:
    """h - h' in sup forces h - h' in sub, for box elements h, h' of sub."""
    if sub.ambient_dim != sup.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    for g in sub.generators:
        if not membership(sup, g).value:
            raise NotSubsemigroup("generator of sub not in sup", witness=g)
    radius = min(sub.search_bound, sup.search_bound)
    elems = _elements_in_box(sub, radius)
    elem_set = set(elems)
    for h in elems:
        for hp in elems:
            d = tuple(a - b for a, b in zip(h, hp))
            if not any(d):
                continue
            if d in elem_set:
                continue
            if membership(sup, d).value and not membership(sub, d).value:
                return Verdict(False, witness=d, bounded=True)
    return Verdict(True, bounded=True)


def split_positive(s: AffineSemigroup) -> tuple[int, list[list[int]], AffineSemigroup]:
    """Exhibit s ≅ Z^k ⊕ C' with C' positive, via the unit group.

    Returns (k, embedding, positive_part): the embedding is a unimodular
    matrix U sending the unit group onto Z^k x {0}; positive_part is the
    semigroup of the last n-k coordinates of U·g over all generators.
    """
    nz = is_normal(s)
    if not nz.value:
        raise NotNormal("split requires a normal semigroup", witness=nz.witness)
    n = s.ambient_dim
    unit_gens = [g for g in s.generators if membership(s, tuple(-x for x in g)).value]
    if not unit_gens:
        ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return 0, ident, s
    cols = [[g[i] for g in unit_gens] for i in range(n)]
    U, D, V = linalg.smith_normal_form(cols)
    k = sum(1 for i in range(min(n, len(unit_gens))) if D[i][i] != 0)
    # U maps the saturation of the unit lattice onto Z^k x {0}
    embedded = []
    for g in s.generators:
        embedded.append(tuple(sum(U[i][j] * g[j] for j in range(n)) for i in range(n)))
    pos_gens = [g[k:] for g in embedded if any(g[k:])]
    positive_part = AffineSemigroup(n - k, tuple(pos_gens)) if n - k > 0 else AffineSemigroup(0, ())
    if positive_part.generators:
        assert is_positive(positive_part).value, "complement still has a unit"
    return k, U, positive_part


def saturate_in_box(points: Sequence[IntVec], ambient_dim: int) -> AffineSemigroup:
    """Bounded saturation: all box lattice points of cone ∩ group of the inputs."""
    pts = [_as_intvec(p) for p in points if any(p)]
    base = AffineSemigroup(ambient_dim, tuple(pts))
    extra = []
    for p in _box_points(ambient_dim, base.search_bound):
        if not any(p):
            continue
        if cone_membership_rational(base.generators, p) and group_membership(base.generators, p):
            extra.append(p)
    return AffineSemigroup(ambient_dim, tuple(pts) + tuple(extra), search_bound=base.search_bound)


def filtration(points: Iterable[IntVec], depth: int) -> list[AffineSemigroup]:
    """Ascending chain of box-saturated (hence box-normal) semigroups.

    The inclusion of each stage in the next is verified on generators.
    """
    pts = []
    chain = []
    it = iter(points)
    for _ in range(depth):
        p = next(it, None)
        if p is not None and _as_intvec(p) not in pts:
            pts.append(_as_intvec(p))
        if not pts:
            continue
        chain.append(saturate_in_box(pts, len(pts[0])))
    for small, big in zip(chain, chain[1:]):
        for g in small.generators:
            assert membership(big, g).value, "filtration stage lost a generator"
    return chain


def group_rank(s: AffineSemigroup) -> int:
    """Rank of the group generated by the generators (Krull dimension of k[H])."""
    if not s.generators:
        return 0
    _, D, _ = linalg.smith_normal_form([list(g) for g in s.generators])
    n = min(len(s.generators), s.ambient_dim)
    return sum(1 for i in range(n) if D[i][i] != 0)
