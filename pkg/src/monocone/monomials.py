"""Monomial ideals in polynomial rings: Taylor complexes, Betti numbers,
projective dimension, radicals, heights, cohomological dimension.

Monomials are bare exponent vectors; variable names only matter to the
parser/formatter layer.  Betti numbers are read off the Taylor complex
reduced over the field: the differential entry on (S, S - {i}) survives as
+-1 exactly when the lcm is unchanged by deleting i.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import GeneratorCap, ImproperIdeal, NotCoprime
from .linalg import int_rank

DEFAULT_GENERATOR_CAP = 12


@dataclass(frozen=True)
class Monomial:
    exponents: tuple[int, ...]

    def __post_init__(self):
        assert all(e >= 0 for e in self.exponents)

    @property
    def nvars(self) -> int:
        return len(self.exponents)

    def is_unit(self) -> bool:
        return not any(self.exponents)

    def degree(self) -> int:
        return sum(self.exponents)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def mul(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def div(self, other: "Monomial") -> "Monomial":
        assert other.divides(self)
        return Monomial(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def support(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self.exponents) if e)


def mono(*exps: int) -> Monomial:
    return Monomial(tuple(exps))


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return Monomial(tuple(max(x, y) for x, y in zip(a.exponents, b.exponents)))


def gcd(a: Monomial, b: Monomial) -> Monomial:
    return Monomial(tuple(min(x, y) for x, y in zip(a.exponents, b.exponents)))


@dataclass(frozen=True)
class MonomialIdeal:
    nvars: int
    min_gens: tuple[Monomial, ...]

    def is_proper(self) -> bool:
        return all(not g.is_unit() for g in self.min_gens)

    def is_zero(self) -> bool:
        return not self.min_gens

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.min_gens)

    def is_subideal_of(self, other: "MonomialIdeal") -> bool:
        return all(other.contains(g) for g in self.min_gens)

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.min_gens == other.min_gens

    def __hash__(self):
        return hash((self.nvars, self.min_gens))


def min_gens(raw: Sequence[Monomial], nvars: Optional[int] = None) -> MonomialIdeal:
    """The unique minimal monomial generating set, order-canonical."""
    mons = list(dict.fromkeys(raw))
    if nvars is None:
        nvars = mons[0].nvars if mons else 0
    kept = []
    for m in mons:
        if any(o != m and o.divides(m) for o in mons):
            continue
        if m not in kept:
            kept.append(m)
    kept.sort(key=lambda m: m.exponents)
    return MonomialIdeal(nvars, tuple(kept))


def ideal(mons: Sequence[Monomial], nvars: Optional[int] = None) -> MonomialIdeal:
    return min_gens(mons, nvars)


def intersect(i: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    """Generated by lcm(u, v) over generator pairs."""
    if i.is_zero() or j.is_zero():
        return MonomialIdeal(max(i.nvars, j.nvars), ())
    return min_gens([lcm(u, v) for u in i.min_gens for v in j.min_gens], i.nvars)


def colon(i: MonomialIdeal, u: Monomial) -> MonomialIdeal:
    """(i : u), generated by g / gcd(g, u)."""
    return min_gens([g.div(gcd(g, u)) for g in i.min_gens], i.nvars)


def radical(i: MonomialIdeal) -> MonomialIdeal:
    """Exponents clamped to 0/1; idempotent."""
    return min_gens(
        [Monomial(tuple(1 if e else 0 for e in g.exponents)) for g in i.min_gens], i.nvars
    )


# ---------------------------------------------------------------------------
# Taylor and Koszul complexes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FreeComplex:
    """Ranks, sparse signed-monomial differentials, and subset labels.

    ``differentials[k]`` maps degree k to degree k-1 and is stored as
    {(row, col): (sign, Monomial)}.  ``labels[k]`` lists (bitmask, lcm) for
    the basis of degree k, in increasing bitmask order.
    """

    ranks: tuple[int, ...]
    differentials: tuple[dict, ...]
    labels: tuple[tuple[tuple[int, Monomial], ...], ...]


def _subset_lcms(gens: Sequence[Monomial]) -> list[Monomial]:
    n = len(gens)
    nv = gens[0].nvars
    unit = Monomial(tuple(0 for _ in range(nv)))
    out = [unit] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & (-mask)
        out[mask] = lcm(out[mask ^ low], gens[low.bit_length() - 1])
    return out


def _sigma(mask: int, i: int) -> int:
    """Number of set bits of mask strictly below position i."""
    return bin(mask & ((1 << i) - 1)).count("1")


def _complex_on_subsets(gens: Sequence[Monomial], entry_fn) -> FreeComplex:
    """Shared scaffolding for Taylor and Koszul complexes.

    entry_fn(mask, i, lcms) returns the monomial placed on (mask, mask^bit).
    """
    n = len(gens)
    lcms = _subset_lcms(gens)
    masks_by_size = [[] for _ in range(n + 1)]
    for mask in range(1 << n):
        masks_by_size[bin(mask).count("1")].append(mask)
    index_of = {}
    for size, masks in enumerate(masks_by_size):
        for idx, mask in enumerate(masks):
            index_of[mask] = idx
    ranks = tuple(len(m) for m in masks_by_size)
    diffs = [dict()]
    for k in range(1, n + 1):
        d = {}
        for mask in masks_by_size[k]:
            col = index_of[mask]
            for i in range(n):
                if mask & (1 << i):
                    sub = mask ^ (1 << i)
                    sign = -1 if _sigma(mask, i) % 2 else 1
                    d[(index_of[sub], col)] = (sign, entry_fn(mask, i, lcms))
        diffs.append(d)
    labels = tuple(
        tuple((mask, lcms[mask]) for mask in masks) for masks in masks_by_size
    )
    cplx = FreeComplex(ranks, tuple(diffs), labels)
    _verify_dd_zero(cplx, masks_by_size, index_of, n)
    return cplx


def _verify_dd_zero(cplx: FreeComplex, masks_by_size, index_of, n) -> None:
    """Sparse exact check that consecutive differentials compose to zero."""
    for k in range(2, n + 1):
        dk = cplx.differentials[k]
        dk1 = cplx.differentials[k - 1]
        for mask in masks_by_size[k]:
            col = index_of[mask]
            acc: dict[tuple[int, Monomial], int] = {}
            bits = [i for i in range(n) if mask & (1 << i)]
            for i in bits:
                mid = mask ^ (1 << i)
                s1, m1 = dk[(index_of[mid], col)]
                for j in bits:
                    if j == i:
                        continue
                    tgt = mid ^ (1 << j)
                    s2, m2 = dk1[(index_of[tgt], index_of[mid])]
                    key = (index_of[tgt], m1.mul(m2))
                    acc[key] = acc.get(key, 0) + s1 * s2
            assert all(v == 0 for v in acc.values()), "d . d != 0"


def taylor_complex(gens: Sequence[Monomial], cap: int = DEFAULT_GENERATOR_CAP) -> FreeComplex:
    """Taylor complex on the given monomials: entries +-lcm(S)/lcm(S - {i})."""
    gens = list(gens)
    if not gens or any(g.is_unit() for g in gens):
        raise ImproperIdeal("taylor complex needs nonempty, nonunit generators")
    if len(gens) > cap:
        raise GeneratorCap(f"{len(gens)} generators exceed cap {cap}", witness=len(gens))
    return _complex_on_subsets(gens, lambda mask, i, lcms: lcms[mask].div(lcms[mask ^ (1 << i)]))


def koszul_complex(gens: Sequence[Monomial], cap: int = DEFAULT_GENERATOR_CAP) -> FreeComplex:
    """Koszul (exterior algebra) complex: entries +-x_i."""
    gens = list(gens)
    if not gens or any(g.is_unit() for g in gens):
        raise ImproperIdeal("koszul complex needs nonempty, nonunit generators")
    if len(gens) > cap:
        raise GeneratorCap(f"{len(gens)} generators exceed cap {cap}", witness=len(gens))
    return _complex_on_subsets(gens, lambda mask, i, lcms: gens[i])


def koszul_compare(gens: Sequence[Monomial], cap: int = DEFAULT_GENERATOR_CAP) -> tuple[FreeComplex, bool]:
    """Koszul complex plus the diagonal comparison into the Taylor complex.

    The canonical chain map sends e_S to (prod_{i in S} x_i / lcm_S) e_S; all
    of its diagonal entries are the unit monomial exactly when the inputs are
    pairwise coprime, in which case the comparison is an isomorphism and the
    top Koszul homology vanishes.
    """
    gens = list(gens)
    for a, b in itertools.combinations(gens, 2):
        if not gcd(a, b).is_unit():
            raise NotCoprime("generators share a variable", witness=(a.exponents, b.exponents))
    kz = koszul_complex(gens, cap)
    lcms = _subset_lcms(gens)
    nv = gens[0].nvars
    ok = True
    for mask in range(1 << len(gens)):
        prod = Monomial(tuple(0 for _ in range(nv)))
        for i in range(len(gens)):
            if mask & (1 << i):
                prod = prod.mul(gens[i])
        if not lcms[mask].divides(prod) or not prod.div(lcms[mask]).is_unit():
            ok = False
    return kz, ok


# ---------------------------------------------------------------------------
# Betti numbers, projective dimension, cohomological dimension
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BettiTable:
    total: tuple[int, ...]
    pd: int


def betti_totals_from_exponents(gens: Sequence[tuple[int, ...]]) -> tuple[int, ...]:
    """Total Betti numbers of A/I from the field-reduced Taylor complex.

    ``gens`` must already be a minimal generating set (no divisibilities).
    Kept free of Monomial objects: this is the hot loop of the acceptance
    sweeps.
    """
    n = len(gens)
    if n == 0:
        return (1,)
    nv = len(gens[0])
    lcms: list[tuple[int, ...]] = [tuple(0 for _ in range(nv))] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & (-mask)
        prev = lcms[mask ^ low]
        g = gens[low.bit_length() - 1]
        lcms[mask] = tuple(a if a >= b else b for a, b in zip(prev, g))
    masks_by_size = [[] for _ in range(n + 1)]
    for mask in range(1 << n):
        masks_by_size[bin(mask).count("1")].append(mask)
    index_of = {}
    for masks in masks_by_size:
        for idx, mask in enumerate(masks):
            index_of[mask] = idx
    ranks_of_d = [0] * (n + 2)
    for k in range(1, n + 1):
        rows = len(masks_by_size[k - 1])
        cols = len(masks_by_size[k])
        mat = [[0] * cols for _ in range(rows)]
        nonzero = False
        for mask in masks_by_size[k]:
            col = index_of[mask]
            big = lcms[mask]
            for i in range(n):
                if mask & (1 << i):
                    sub = mask ^ (1 << i)
                    if lcms[sub] == big:
                        mat[index_of[sub]][col] = -1 if _sigma(mask, i) % 2 else 1
                        nonzero = True
        ranks_of_d[k] = int_rank(mat) if nonzero else 0
    totals = []
    for k in range(n + 1):
        totals.append(len(masks_by_size[k]) - ranks_of_d[k] - ranks_of_d[k + 1])
    while totals and totals[-1] == 0:
        totals.pop()
    return tuple(totals)


def betti_table(i: MonomialIdeal, cap: int = DEFAULT_GENERATOR_CAP) -> BettiTable:
    """Betti numbers of A/i and the projective dimension."""
    if not i.is_proper():
        raise ImproperIdeal("unit monomial generates the ideal")
    if len(i.min_gens) > cap:
        raise GeneratorCap(f"{len(i.min_gens)} generators exceed cap {cap}", witness=len(i.min_gens))
    totals = betti_totals_from_exponents([g.exponents for g in i.min_gens])
    return BettiTable(totals, len(totals) - 1)


def frobenius_power(i: MonomialIdeal, t: int) -> MonomialIdeal:
    """Generated by u^t over the generators; preserves the Betti table."""
    assert t >= 1
    return min_gens([Monomial(tuple(t * e for e in g.exponents)) for g in i.min_gens], i.nvars)


def polarize(i: MonomialIdeal) -> tuple[MonomialIdeal, list[int]]:
    """Standard polarization into squarefree monomials in fresh variables.

    Returns the polarized ideal together with ``back_map``: for every new
    variable index, the original variable it came from.  Squarefree ideals
    are fixed points up to this renaming.
    """
    max_exp = [0] * i.nvars
    for g in i.min_gens:
        for v, e in enumerate(g.exponents):
            max_exp[v] = max(max_exp[v], e)
    slots: list[tuple[int, int]] = []  # (orig var, copy index)
    for v, m in enumerate(max_exp):
        for k in range(m):
            slots.append((v, k))
    slot_index = {pair: idx for idx, pair in enumerate(slots)}
    new_gens = []
    for g in i.min_gens:
        exps = [0] * len(slots)
        for v, e in enumerate(g.exponents):
            for k in range(e):
                exps[slot_index[(v, k)]] = 1
        new_gens.append(Monomial(tuple(exps)))
    back_map = [v for v, _ in slots]
    return min_gens(new_gens, len(slots)), back_map


def height(i: MonomialIdeal) -> int:
    """Minimum size of a variable set meeting every generator's support."""
    if not i.is_proper():
        raise ImproperIdeal("unit monomial generates the ideal")
    supports = [g.support() for g in i.min_gens]
    if not supports:
        return 0
    universe = sorted(set().union(*supports))
    for size in range(0, len(universe) + 1):
        for cover in itertools.combinations(universe, size):
            cset = set(cover)
            if all(cset & s for s in supports):
                return size
    return len(universe)


def cd(i: MonomialIdeal, cap: int = DEFAULT_GENERATOR_CAP) -> int:
    """Cohomological dimension: pd of A/radical(i) (exact for monomial ideals).

    The inequality cd(i) <= pd(A/i) is re-checked on every call.
    """
    if not i.is_proper():
        raise ImproperIdeal("unit monomial generates the ideal")
    value = betti_table(radical(i), cap).pd
    assert value <= betti_table(i, cap).pd
    return value
