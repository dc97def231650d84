"""Exact rational and integer linear algebra.

Everything here is computed over Q with ``fractions.Fraction`` (or plain
Python integers); no floating point is used anywhere.  The cone machinery
(dual descriptions, separating functionals) is restricted to ambient
dimension <= 4, which is all the rest of the package ever asks for.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    DependentGenerators,
    DimensionMismatch,
    LineInCone,
    NoSeparator,
    UnsupportedDimension,
)

Vector = tuple[Fraction, ...]

MAX_DUAL_DIMENSION = 4


def vec(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a: Vector) -> Vector:
    c = Fraction(c)
    return tuple(c * x for x in a)


def vec_dot(a: Vector, b: Vector) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def is_zero_vector(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q by exact Gaussian elimination."""
    work = [list(map(Fraction, r)) for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    for r in work:
        if len(r) != ncols:
            raise DimensionMismatch("ragged matrix")
    rk = 0
    col = 0
    while rk < len(work) and col < ncols:
        pivot = next((i for i in range(rk, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        work[rk], work[pivot] = work[pivot], work[rk]
        p = work[rk][col]
        for i in range(rk + 1, len(work)):
            if work[i][col] != 0:
                f = work[i][col] / p
                work[i] = [a - f * b for a, b in zip(work[i], work[rk])]
        rk += 1
        col += 1
    return rk


def int_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of a small integer matrix by fraction-free elimination.

    Faster than :func:`rank` in the inner loops of Betti computations,
    where the matrices have entries in {-1, 0, 1}.
    """
    work = [list(r) for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rk = 0
    col = 0
    while rk < len(work) and col < ncols:
        pivot = next((i for i in range(rk, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        work[rk], work[pivot] = work[pivot], work[rk]
        p = work[rk][col]
        prow = work[rk]
        for i in range(rk + 1, len(work)):
            row = work[i]
            c = row[col]
            if c:
                work[i] = [p * a - c * b for a, b in zip(row, prow)]
        rk += 1
        col += 1
    return rk


def solve_linear(columns: Sequence[Vector], target: Vector) -> Optional[Vector]:
    """Solve ``sum_j x_j * columns[j] = target`` exactly.

    Returns one solution (free variables set to 0) or None when the system
    is inconsistent.
    """
    n = len(target)
    m = len(columns)
    for c in columns:
        if len(c) != n:
            raise DimensionMismatch("column/target length mismatch")
    aug = [[Fraction(columns[j][i]) for j in range(m)] + [Fraction(target[i])] for i in range(n)]
    pivots: list[tuple[int, int]] = []
    rk = 0
    for col in range(m):
        pivot = next((i for i in range(rk, n) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[rk], aug[pivot] = aug[pivot], aug[rk]
        p = aug[rk][col]
        aug[rk] = [a / p for a in aug[rk]]
        for i in range(n):
            if i != rk and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[rk])]
        pivots.append((rk, col))
        rk += 1
        if rk == n:
            break
    for i in range(rk, n):
        if aug[i][m] != 0:
            return None
    x = [Fraction(0)] * m
    for row, col in pivots:
        x[col] = aug[row][m]
    return tuple(x)


def cone_coordinates(gamma: Sequence[Vector], v: Vector) -> Optional[Vector]:
    """Coefficients of ``v`` over a linearly independent family, if nonnegative.

    Returns the unique c with sum(c_i * gamma_i) == v when every c_i >= 0;
    returns None when the solve fails or some coefficient is negative.
    Raises DependentGenerators when ``gamma`` is not independent.
    """
    gamma = [vec(g) for g in gamma]
    v = vec(v)
    if rank(gamma) < len(gamma):
        raise DependentGenerators("generators are linearly dependent", witness=len(gamma))
    if not gamma:
        return () if is_zero_vector(v) else None
    sol = solve_linear(gamma, v)
    if sol is None or any(c < 0 for c in sol):
        return None
    recon = tuple(sum((c * g[i] for c, g in zip(sol, gamma)), Fraction(0)) for i in range(len(v)))
    assert recon == v
    return sol


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def int_det(mat: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix, expansion-free via fractions."""
    n = len(mat)
    work = [list(map(Fraction, r)) for r in mat]
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if work[i][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        det *= work[col][col]
        p = work[col][col]
        for i in range(col + 1, n):
            if work[i][col] != 0:
                f = work[i][col] / p
                work[i] = [a - f * b for a, b in zip(work[i], work[col])]
    assert det.denominator == 1
    return int(det)


def smith_normal_form(mat: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (U, D, V) with U*mat*V = D in Smith normal form.

    D is diagonal with d_i | d_{i+1} and d_i >= 0; U and V are unimodular.
    The identity U*mat*V == D is re-verified before returning.
    """
    D = [list(map(int, r)) for r in mat]
    nrows = len(D)
    ncols = len(D[0]) if nrows else 0
    U = _identity(nrows)
    V = _identity(ncols)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        D[dst] = [a + c * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for row in D:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    def negate_row(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        # find a pivot of least absolute value in the trailing block
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if D[i][j] != 0 and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        if D[t][t] < 0:
            negate_row(t)
        dirty = False
        for i in range(t + 1, nrows):
            if D[i][t] != 0:
                q = D[i][t] // D[t][t]
                add_row(t, i, -q)
                if D[i][t] != 0:
                    dirty = True
        for j in range(t + 1, ncols):
            if D[t][j] != 0:
                q = D[t][j] // D[t][t]
                add_col(t, j, -q)
                if D[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility d_t | trailing entries
        bad = None
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if D[i][j] % D[t][t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(bad, t, 1)
            continue
        t += 1

    check = _mat_mul(_mat_mul(U, [list(map(int, r)) for r in mat]), V)
    assert check == D, "Smith normal form verification failed"
    if nrows:
        assert int_det(U) in (1, -1)
    if ncols:
        assert int_det(V) in (1, -1)
    return U, D, V


def unimodular_inverse(mat: Sequence[Sequence[int]]) -> list[list[int]]:
    """Inverse of a unimodular integer matrix, exact."""
    n = len(mat)
    det = int_det(mat)
    assert det in (1, -1)
    # adjugate via cofactors; n is tiny everywhere this is used
    def minor(m, i, j):
        return [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]

    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sign = -1 if (i + j) % 2 else 1
            sub = minor([list(r) for r in mat], i, j)
            adj[j][i] = sign * (int_det(sub) if sub else 1)
    return [[a // det for a in row] for row in adj]


# ---------------------------------------------------------------------------
# Fourier-Motzkin feasibility (exact, with back-substitution)
# ---------------------------------------------------------------------------


def _fm_feasible(constraints: list[tuple[list[Fraction], Fraction]], nvars: int) -> Optional[list[Fraction]]:
    """Find x with a . x >= b for every (a, b), or None.

    Pure Fourier-Motzkin elimination; the per-level systems are retained so a
    witness can be reconstructed by back-substitution.
    """

    def normalize(level):
        seen = {}
        for a, b in level:
            nz = next((x for x in a if x != 0), None)
            if nz is None:
                key_a = tuple(a)
                scale = Fraction(1)
            else:
                scale = abs(nz)
                key_a = tuple(x / scale for x in a)
            key = (key_a,)
            b_s = b / scale
            if key not in seen or seen[key] < b_s:
                seen[key] = b_s
        return [(list(k[0]), b) for k, b in seen.items()]

    levels = [normalize(constraints)]
    for var in range(nvars - 1, -1, -1):
        cur = levels[-1]
        pos, neg, zero = [], [], []
        for a, b in cur:
            c = a[var]
            if c > 0:
                pos.append((a, b))
            elif c < 0:
                neg.append((a, b))
            else:
                zero.append((a, b))
        nxt = list(zero)
        for ap, bp in pos:
            for an, bn in neg:
                # eliminate: ap[var] * (an-row) + (-an[var]) * (ap-row)
                cp, cn = ap[var], -an[var]
                a_new = [cn * x + cp * y for x, y in zip(ap, an)]
                b_new = cn * bp + cp * bn
                a_new[var] = Fraction(0)
                nxt.append((a_new, b_new))
        levels.append(normalize(nxt))
    for a, b in levels[-1]:
        if b > 0:
            return None
    # back-substitute: levels[nvars - var] holds constraints on vars 0..var
    x = [Fraction(0)] * nvars
    for var in range(nvars):
        level = levels[nvars - 1 - var]
        lo, hi = None, None
        for a, b in level:
            c = a[var]
            if c == 0:
                continue
            rest = b - sum(a[j] * x[j] for j in range(var))
            bound = rest / c
            if c > 0:
                lo = bound if lo is None or bound > lo else lo
            else:
                hi = bound if hi is None or bound < hi else hi
        if lo is not None:
            x[var] = lo
        elif hi is not None:
            x[var] = min(hi, Fraction(0))
        else:
            x[var] = Fraction(0)
        if lo is not None and hi is not None:
            assert lo <= hi
    return x


def nonneg_combination(vectors: Sequence[Vector], target: Vector) -> Optional[Vector]:
    """Rational lambda >= 0 with sum(lambda_i * vectors[i]) == target, or None.

    Decides membership of ``target`` in the Q>=0-cone of ``vectors`` in any
    ambient dimension, and produces an explicit witness.
    """
    vectors = [vec(v) for v in vectors]
    target = vec(target)
    m = len(vectors)
    if m == 0:
        return () if is_zero_vector(target) else None
    cons: list[tuple[list[Fraction], Fraction]] = []
    for i in range(len(target)):
        row = [Fraction(v[i]) for v in vectors]
        cons.append((row, Fraction(target[i])))
        cons.append(([-x for x in row], -Fraction(target[i])))
    for j in range(m):
        row = [Fraction(0)] * m
        row[j] = Fraction(1)
        cons.append((row, Fraction(0)))
    sol = _fm_feasible(cons, m)
    if sol is None:
        return None
    recon = tuple(sum((sol[j] * vectors[j][i] for j in range(m)), Fraction(0)) for i in range(len(target)))
    assert recon == target and all(s >= 0 for s in sol)
    return tuple(sol)


# ---------------------------------------------------------------------------
# Dual cone description (double description with lineality handling)
# ---------------------------------------------------------------------------


def _primitive(v: Vector) -> Vector:
    from math import gcd

    denoms = 1
    for x in v:
        denoms = denoms * x.denominator // gcd(denoms, x.denominator)
    ints = [int(x * denoms) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return tuple(Fraction(0) for _ in v)
    return tuple(Fraction(x // g) for x in ints)


def dual_description(generators: Sequence[Vector], dim: int) -> tuple[list[Vector], list[Vector]]:
    """Generators (rays, lines) of the dual cone {f : f.g >= 0 for all g}.

    Only supported for dim <= 4; the package never needs more.
    """
    if dim > MAX_DUAL_DIMENSION:
        raise UnsupportedDimension(f"dual-cone search limited to dimension {MAX_DUAL_DIMENSION}", witness=dim)
    gens = [vec(g) for g in generators if not is_zero_vector(g)]
    lines: list[Vector] = [tuple(Fraction(1 if i == j else 0) for j in range(dim)) for i in range(dim)]
    rays: list[Vector] = []
    processed: list[Vector] = []

    def prune(rays_in: list[Vector]) -> list[Vector]:
        uniq: dict[Vector, Vector] = {}
        for r in rays_in:
            p = _primitive(r)
            if not is_zero_vector(p):
                uniq[p] = p
        out = list(uniq.values())
        if not processed:
            return out
        amat_rank = rank(processed)
        kept = []
        for r in out:
            active = [g for g in processed if vec_dot(g, r) == 0]
            if rank(active) >= amat_rank - 1:
                kept.append(r)
        return kept

    for a in gens:
        pivot_idx = next((i for i, l in enumerate(lines) if vec_dot(a, l) != 0), None)
        if pivot_idx is not None:
            pivot = lines[pivot_idx]
            if vec_dot(a, pivot) < 0:
                pivot = vec_scale(-1, pivot)
            pa = vec_dot(a, pivot)
            new_lines = []
            for i, l in enumerate(lines):
                if i == pivot_idx:
                    continue
                new_lines.append(vec_sub(l, vec_scale(vec_dot(a, l) / pa, pivot)))
            rays = [vec_sub(r, vec_scale(vec_dot(a, r) / pa, pivot)) for r in rays]
            rays.append(pivot)
            lines = new_lines
            processed.append(a)
            rays = prune(rays)
            continue
        vals = [vec_dot(a, r) for r in rays]
        if all(v >= 0 for v in vals):
            processed.append(a)
            continue
        pos = [r for r, v in zip(rays, vals) if v > 0]
        zero = [r for r, v in zip(rays, vals) if v == 0]
        neg = [r for r, v in zip(rays, vals) if v < 0]
        new_rays = pos + zero
        for p in pos:
            vp = vec_dot(a, p)
            for n in neg:
                vn = vec_dot(a, n)
                new_rays.append(vec_add(vec_scale(vp, n), vec_scale(-vn, p)))
        processed.append(a)
        rays = prune(new_rays)
    rays = sorted(prune(rays))
    lines = [l for l in (_primitive(l) for l in lines) if not is_zero_vector(l)]
    return rays, lines


def cone_member(generators: Sequence[Vector], x: Vector) -> bool:
    """Exact membership of x in the Q>=0-cone of the generators (any dim)."""
    return nonneg_combination(generators, x) is not None


def cone_is_pointed(generators: Sequence[Vector], dim: int) -> tuple[bool, Optional[Vector]]:
    """Whether the cone contains no line; witness is a generator g with -g in the cone.

    The cone of g_1..g_m contains a line iff -g_j lies in the cone for some
    nonzero g_j.
    """
    gens = [vec(g) for g in generators if not is_zero_vector(g)]
    for g in gens:
        if cone_member(gens, vec_scale(-1, g)):
            return False, g
    return True, None


@dataclass(frozen=True)
class LinearFunctional:
    """An exact linear form on Q^n."""

    coefficients: Vector

    def __call__(self, v: Sequence) -> Fraction:
        if len(v) != len(self.coefficients):
            raise DimensionMismatch("functional applied to wrong dimension")
        return vec_dot(self.coefficients, vec(v))


def strict_positive_functional(generators: Sequence[Vector], dim: int) -> Optional[LinearFunctional]:
    """A functional positive on every nonzero generator, if one exists.

    Fast path: when all generators are componentwise nonnegative the all-ones
    form works in any dimension.  Otherwise falls back to the dual-cone
    search (dimension <= 4).
    """
    gens = [vec(g) for g in generators if not is_zero_vector(g)]
    if not gens:
        return LinearFunctional(tuple(Fraction(0) for _ in range(dim)))
    ones = tuple(Fraction(1) for _ in range(dim))
    if all(vec_dot(ones, g) > 0 and all(x >= 0 for x in g) for g in gens):
        return LinearFunctional(ones)
    if dim > MAX_DUAL_DIMENSION:
        return None
    rays, lines = dual_description(gens, dim)
    if rank(rays + lines) < dim:
        return None  # cone contains a line
    cand = tuple(sum((r[i] for r in rays), Fraction(0)) for i in range(dim))
    if all(vec_dot(cand, g) > 0 for g in gens):
        return LinearFunctional(cand)
    return None


def separating_functional(cone_gens: Sequence[Sequence], x: Sequence, strict: bool = False) -> LinearFunctional:
    """A linear form nonnegative on the cone generators and negative on x.

    In strict mode the form is additionally positive on every nonzero
    generator (requires the cone to contain no line).  The sign contract is
    re-verified exactly before returning.
    """
    gens = [vec(g) for g in cone_gens]
    xv = vec(x)
    dim = len(xv)
    for g in gens:
        if len(g) != dim:
            raise DimensionMismatch("generator/point dimension mismatch")
    rays, lines = dual_description([g for g in gens if not is_zero_vector(g)], dim)
    viol_ray = next((r for r in rays if vec_dot(r, xv) < 0), None)
    viol_line = next((l for l in lines if vec_dot(l, xv) != 0), None)
    if viol_ray is None and viol_line is None:
        raise NoSeparator("point lies in the cone", witness=[str(c) for c in xv])
    if viol_line is not None and viol_ray is None:
        sep = viol_line if vec_dot(viol_line, xv) < 0 else vec_scale(-1, viol_line)
    else:
        sep = viol_ray
    if strict:
        if rank(rays + lines) < dim:
            raise LineInCone("strict separation requires a pointed cone")
        base = tuple(sum((r[i] for r in rays), Fraction(0)) for i in range(dim))
        bx = vec_dot(base, xv)
        sx = vec_dot(sep, xv)
        lam = Fraction(0) if bx < 0 else bx / (-sx) + 1
        coeffs = vec_add(base, vec_scale(lam, sep))
    else:
        coeffs = sep
    L = LinearFunctional(coeffs)
    assert L(xv) < 0
    for g in gens:
        val = L(g)
        assert val >= 0
        if strict and not is_zero_vector(g):
            assert val > 0
    return L
