"""Quasi-rational plane cones and the four model semigroups.

A cone is the intersection of two rational half-planes, each independently
open or closed.  When the two boundary lines coincide (the angle-pi family)
each flag governs its own boundary ray: the first form owns the
counterclockwise rotation of its normal, the second the clockwise one --
these are the limits of the wedge rays as the second normal rotates onto
the first.  All angle comparisons are exact 2D orientation tests; nothing
is ever computed numerically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence

from . import linalg
from .errors import (
    CertificateUnverified,
    DependentGenerators,
    FinitelyGeneratedInput,
    InvalidInput,
    NotPositive,
    UnitInput,
    UnsupportedTag,
)
from .semigroups import AffineSemigroup, Verdict, membership

IntPair = tuple[int, int]

MODEL_TAGS = ("H", "H'", "H1", "H2")
DEFAULT_POWER_BOUND = 8
DEFAULT_BOX_RADIUS = 20


@dataclass(frozen=True)
class HalfPlane:
    """{(x, y) : a*x + b*y >= 0}, or strict > 0 when ``strict`` is set."""

    a: int
    b: int
    strict: bool = False

    def __post_init__(self):
        if self.a == 0 and self.b == 0:
            raise InvalidInput("half-plane form must be nonzero")
        g = gcd(abs(self.a), abs(self.b))
        object.__setattr__(self, "a", self.a // g)
        object.__setattr__(self, "b", self.b // g)

    def value(self, p: Sequence[int]):
        return self.a * p[0] + self.b * p[1]

    def holds(self, p: Sequence[int]) -> bool:
        v = self.value(p)
        return v > 0 if self.strict else v >= 0

    def to_doc(self) -> dict:
        return {"a": self.a, "b": self.b, "strict": self.strict}


def _cross(l1: HalfPlane, l2: HalfPlane) -> int:
    return l1.a * l2.b - l1.b * l2.a


def _dot(l1: HalfPlane, l2: HalfPlane) -> int:
    return l1.a * l2.a + l1.b * l2.b


def _primitive(p: IntPair) -> IntPair:
    g = gcd(abs(p[0]), abs(p[1]))
    return (p[0] // g, p[1] // g) if g else p


@dataclass(frozen=True)
class QuasiRationalCone:
    l1: HalfPlane
    l2: HalfPlane

    def __post_init__(self):
        if _cross(self.l1, self.l2) == 0 and _dot(self.l1, self.l2) < 0:
            # opposite normals: a line when both closed, else empty
            if self.l1.strict or self.l2.strict:
                raise InvalidInput("intersection contains no nonzero point")

    def is_parallel(self) -> bool:
        return _cross(self.l1, self.l2) == 0 and _dot(self.l1, self.l2) > 0

    def boundary_rays(self) -> tuple[tuple[IntPair, bool], tuple[IntPair, bool]]:
        """((d1, included1), (d2, included2)) for positive cones.

        For a genuine wedge d_i is the boundary direction of l_i on which the
        other constraint is positive; for coincident boundaries d1 is the
        counterclockwise rotation of the first normal and d2 the clockwise
        rotation of the second.
        """
        l1, l2 = self.l1, self.l2
        if self.is_parallel():
            d1 = _primitive((-l1.b, l1.a))
            d2 = _primitive((l2.b, -l2.a))
            return (d1, not l1.strict), (d2, not l2.strict)
        cr = _cross(l1, l2)
        if cr > 0:
            d1 = _primitive((-l1.b, l1.a))
            d2 = _primitive((l2.b, -l2.a))
        else:
            d1 = _primitive((l1.b, -l1.a))
            d2 = _primitive((-l2.b, l2.a))
        return (d1, not l1.strict), (d2, not l2.strict)

    def contains_line(self) -> bool:
        if self.is_parallel():
            return not self.l1.strict and not self.l2.strict
        if _cross(self.l1, self.l2) == 0:  # opposite normals, both closed
            return True
        return False

    def to_doc(self) -> dict:
        return {"l1": self.l1.to_doc(), "l2": self.l2.to_doc()}


def cone_lattice_membership(c: QuasiRationalCone, p: Sequence[int]) -> bool:
    """Exact membership of a lattice point; the origin is always included."""
    p = (int(p[0]), int(p[1]))
    if p == (0, 0):
        return True
    if not c.is_parallel():
        return c.l1.holds(p) and c.l2.holds(p)
    v = c.l1.value(p)
    if v > 0:
        return True
    if v < 0:
        return False
    (d1, inc1), (d2, inc2) = c.boundary_rays()
    if _on_ray(p, d1):
        return inc1
    if _on_ray(p, d2):
        return inc2
    return False


def _on_ray(p: IntPair, d: IntPair) -> bool:
    if d[0] * p[1] != d[1] * p[0]:
        return False
    t = p[0] * d[0] + p[1] * d[1]
    return t > 0


def model_membership(tag: str, p: Sequence[int]) -> bool:
    """Closed-form membership in the four model semigroups."""
    a, b = int(p[0]), int(p[1])
    if tag == "H":
        return (a >= 1 and b >= 0) or (a, b) == (0, 0)
    if tag == "H'":
        return (a >= 1 and b >= 1) or (a, b) == (0, 0)
    if tag == "H1":
        return b >= 1 or (b == 0 and a >= 0)
    if tag == "H2":
        return b >= 1 or (a, b) == (0, 0)
    raise UnsupportedTag(f"no closed-form membership for tag {tag!r}")


@lru_cache(maxsize=256)
def model_points(tag: str, radius: int) -> tuple[IntPair, ...]:
    """Nonunit model elements within the coordinate box."""
    out = []
    for a in range(-radius, radius + 1):
        for b in range(-radius, radius + 1):
            if (a, b) != (0, 0) and model_membership(tag, (a, b)):
                out.append((a, b))
    return tuple(out)


@dataclass(frozen=True)
class ModelType:
    tag: str
    map: tuple[tuple[int, int], tuple[int, int]]
    scale: int

    def apply(self, p: Sequence[int]) -> IntPair:
        return (
            self.map[0][0] * p[0] + self.map[0][1] * p[1],
            self.map[1][0] * p[0] + self.map[1][1] * p[1],
        )

    def to_doc(self) -> dict:
        return {"tag": self.tag, "map": [list(r) for r in self.map], "scale": self.scale}


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def _inverse_2x2(m: tuple[tuple[int, int], tuple[int, int]]) -> tuple[tuple[int, int], tuple[int, int]]:
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    assert det in (1, -1)
    return (
        (m[1][1] // det, -m[0][1] // det),
        (-m[1][0] // det, m[0][0] // det),
    )


def _columns(d1: IntPair, d2: IntPair) -> tuple[tuple[int, int], tuple[int, int]]:
    return ((d1[0], d2[0]), (d1[1], d2[1]))


def classify(c: QuasiRationalCone, box_radius: int = DEFAULT_BOX_RADIUS) -> ModelType:
    """Model type of a positive quasi-rational cone, with its normalizing map.

    The map/scale pair satisfies: p is a cone lattice point iff
    scale*(map . p) lies in the model, verified exactly on the box before
    returning.
    """
    if c.contains_line():
        raise NotPositive("cone contains a line")
    identity = ((1, 0), (0, 1))
    if not c.is_parallel():
        if not c.l1.strict and not c.l2.strict:
            return ModelType("FinitelyGenerated", identity, 1)
        (d1, inc1), (d2, inc2) = c.boundary_rays()
        if inc1 or inc2:
            tag = "H"
            d_first, d_second = (d1, d2) if inc1 else (d2, d1)
        else:
            tag = "H'"
            d_first, d_second = d1, d2
        m = _columns(d_first, d_second)
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        assert det != 0
        s = abs(det)
        # s * M^{-1} = +-adjugate, an integer matrix sending d_first to (s, 0)
        sign = 1 if det > 0 else -1
        phi = (
            (sign * m[1][1], sign * -m[0][1]),
            (sign * -m[1][0], sign * m[0][0]),
        )
        model = ModelType(tag, phi, s)
    else:
        (d1, inc1), (d2, inc2) = c.boundary_rays()
        if inc1 and inc2:
            raise NotPositive("cone contains a line")
        if inc1 or inc2:
            tag = "H1"
            d = d1 if inc1 else d2
        else:
            tag = "H2"
            d = d1
        g, x, y = _xgcd(d[0], d[1])
        assert g == 1
        v = (-y, x)  # det [d v] = d0*x + d1*y = 1
        if c.l1.value(v) < 0:
            v = (-v[0], -v[1])
        eta = _inverse_2x2(_columns(d, v))
        model = ModelType(tag, eta, 1)
    verdict = verify_model_agreement(c, model, box_radius)
    assert verdict.value, f"model agreement failed at {verdict.witness}"
    return model


def verify_model_agreement(c: QuasiRationalCone, model: ModelType, radius: int) -> Verdict:
    """Exact two-way box check of the classification.

    Cone points must land in the model after the map (and after multiplying
    by the scale); conversely every model box point must have a multiple
    t <= scale whose preimage is a cone lattice point.
    """
    if model.tag == "FinitelyGenerated":
        return Verdict(True, bounded=True)
    det = model.map[0][0] * model.map[1][1] - model.map[0][1] * model.map[1][0]
    for p in itertools.product(range(-radius, radius + 1), repeat=2):
        img = model.apply(p)
        scaled = (model.scale * img[0], model.scale * img[1])
        if cone_lattice_membership(c, p) != model_membership(model.tag, scaled):
            return Verdict(False, witness=p, bounded=True)
    for x in itertools.product(range(-radius, radius + 1), repeat=2):
        if x == (0, 0) or not model_membership(model.tag, x):
            continue
        found = False
        for t in range(1, model.scale + 1):
            tx = (t * x[0], t * x[1])
            # preimage of tx under the map, if integral
            adj = ((model.map[1][1], -model.map[0][1]), (-model.map[1][0], model.map[0][0]))
            qx = adj[0][0] * tx[0] + adj[0][1] * tx[1]
            qy = adj[1][0] * tx[0] + adj[1][1] * tx[1]
            if qx % det or qy % det:
                continue
            q = (qx // det, qy // det)
            if cone_lattice_membership(c, q):
                found = True
                break
        if not found:
            return Verdict(False, witness=x, bounded=True)
    return Verdict(True, bounded=True)


def normalize_map(generators: Sequence[IntPair]) -> tuple[int, tuple[tuple[int, int], tuple[int, int]], Verdict]:
    """The least t with t*e1, t*e2 in Za + Zb and the map a -> t*e1, b -> t*e2.

    ``a`` and ``b`` are the first two Q-independent generators.  The map is
    integral on all of Z^2 (that is exactly how t is chosen); the returned
    verdict box-checks integrality of the images, that t*N^2 lands in the
    image of the semigroup, and that no image meets the open third quadrant.
    """
    gens = [(int(g[0]), int(g[1])) for g in generators]
    pair = None
    for i, j in itertools.combinations(range(len(gens)), 2):
        if gens[i][0] * gens[j][1] - gens[i][1] * gens[j][0] != 0:
            pair = (gens[i], gens[j])
            break
    if pair is None:
        raise DependentGenerators("no two independent generators")
    a, b = pair
    cols = [[a[0], b[0]], [a[1], b[1]]]
    _, D, _ = linalg.smith_normal_form(cols)
    t = abs(D[1][1])
    det = cols[0][0] * cols[1][1] - cols[0][1] * cols[1][0]
    adj = ((cols[1][1], -cols[0][1]), (-cols[1][0], cols[0][0]))
    phi_frac = [[Fraction(t * adj[r][cidx], det) for cidx in range(2)] for r in range(2)]
    assert all(x.denominator == 1 for row in phi_frac for x in row)
    phi = tuple(tuple(int(x) for x in row) for row in phi_frac)

    def apply(p):
        return (phi[0][0] * p[0] + phi[0][1] * p[1], phi[1][0] * p[0] + phi[1][1] * p[1])

    assert apply(a) == (t, 0) and apply(b) == (0, t)
    s = AffineSemigroup(2, tuple(gens))
    phi_gens = tuple(apply(g) for g in gens)
    s_phi = AffineSemigroup(2, phi_gens)
    radius = s.search_bound
    witness = None
    ok = True
    elements = [
        p
        for p in itertools.product(range(-radius, radius + 1), repeat=2)
        if membership(s, p).value
    ]
    for p in elements:
        img = apply(p)
        if img[0] < 0 and img[1] < 0:
            ok = False
            witness = ("third_quadrant", p)
            break
    if ok:
        for p in itertools.product(range(0, radius + 1), repeat=2):
            if p == (0, 0):
                continue
            tp = (t * p[0], t * p[1])
            if not membership(s_phi, tp).value:
                ok = False
                witness = ("scaled_point_missing", p)
                break
    return t, phi, Verdict(ok, witness=witness, bounded=True)


def bounding_halflines(
    c: QuasiRationalCone, box_radius: int = DEFAULT_BOX_RADIUS, multiple_bound: int = 8
) -> tuple[dict, dict, tuple[Verdict, Verdict, Verdict]]:
    """Boundary rays with the three structural facts.

    Fact 1: box cone points lie in the closed convex span of the rays.
    Fact 2: interior box points have a multiple t <= bound in the cone.
    Fact 3: the cone meets at most one of the two rays (decided from flags).
    """
    if c.contains_line():
        raise NotPositive("cone contains a line")
    if not c.is_parallel() and not c.l1.strict and not c.l2.strict:
        raise FinitelyGeneratedInput("closed-closed wedge is finitely generated")
    (d1, inc1), (d2, inc2) = c.boundary_rays()

    def closed_hull(p) -> bool:
        if c.is_parallel():
            return c.l1.value(p) >= 0
        return c.l1.value(p) >= 0 and c.l2.value(p) >= 0

    def interior(p) -> bool:
        if c.is_parallel():
            return c.l1.value(p) > 0
        return c.l1.value(p) > 0 and c.l2.value(p) > 0

    w1 = w2 = w3 = None
    ok1 = ok2 = True
    for p in itertools.product(range(-box_radius, box_radius + 1), repeat=2):
        if p == (0, 0):
            continue
        if cone_lattice_membership(c, p) and not closed_hull(p):
            ok1, w1 = False, p
            break
    for p in itertools.product(range(-box_radius, box_radius + 1), repeat=2):
        if p == (0, 0) or not interior(p):
            continue
        if not any(
            cone_lattice_membership(c, (t * p[0], t * p[1])) for t in range(1, multiple_bound + 1)
        ):
            ok2, w2 = False, p
            break
    meet_count = int(inc1) + int(inc2)
    ok3 = meet_count <= 1
    if not ok3:
        w3 = (d1, d2)
    facts = (
        Verdict(ok1, witness=w1, bounded=True),
        Verdict(ok2, witness=w2, bounded=True),
        Verdict(ok3, witness=w3, bounded=False),
    )
    ray1 = {"direction": list(d1), "included": inc1}
    ray2 = {"direction": list(d2), "included": inc2}
    return ray1, ray2, facts


# ---------------------------------------------------------------------------
# Monomial pairs in the model rings
# ---------------------------------------------------------------------------


def _model_sub(tag: str, p: IntPair, q: IntPair) -> bool:
    return model_membership(tag, (p[0] - q[0], p[1] - q[1]))


def param_pair_reject(
    tag: str, f: IntPair, g: IntPair, power_bound: int = DEFAULT_POWER_BOUND
) -> tuple[IntPair, dict]:
    """Collapse certificate h with rad(f, g) = rad(h), verified by power search.

    Candidates are tried in the fixed order (1,0), (1,1) (restricted to
    members of the model); the certificate must verify both containments --
    some power of h in (f, g) and some power of f and of g in (h) -- within
    the bound.  An unverified certificate is an error, never a silent pass.
    """
    if tag not in MODEL_TAGS:
        raise UnsupportedTag(f"unknown model tag {tag!r}")
    f = (int(f[0]), int(f[1]))
    g = (int(g[0]), int(g[1]))
    for p in (f, g):
        if p == (0, 0):
            raise UnitInput("pair entries must be nonunit")
        if not model_membership(tag, p):
            raise InvalidInput(f"exponent {p} is not in model {tag}", witness=p)
    failures = []
    for h in ((1, 0), (1, 1)):
        if not model_membership(tag, h):
            continue
        k_h = next(
            (
                k
                for k in range(1, power_bound + 1)
                if _model_sub(tag, (k * h[0], k * h[1]), f) or _model_sub(tag, (k * h[0], k * h[1]), g)
            ),
            None,
        )
        k_f = next(
            (k for k in range(1, power_bound + 1) if _model_sub(tag, (k * f[0], k * f[1]), h)),
            None,
        )
        k_g = next(
            (k for k in range(1, power_bound + 1) if _model_sub(tag, (k * g[0], k * g[1]), h)),
            None,
        )
        if k_h is not None and k_f is not None and k_g is not None:
            return h, {"h_power": k_h, "f_power": k_f, "g_power": k_g}
        failures.append({"candidate": h, "h_power": k_h, "f_power": k_f, "g_power": k_g})
    raise CertificateUnverified(
        f"no candidate certificate verifies within power bound {power_bound}",
        witness=failures,
    )


def model_regular_pair(
    tag: str, f: IntPair, g: IntPair, radius: Optional[int] = None
) -> tuple[bool, Optional[IntPair]]:
    """Is X^g regular on k[model]/(X^f)?  Bounded witness search.

    A witness is c in the model with c + g - f in the model but c - f not;
    it re-verifies by two membership evaluations.
    """
    if tag not in MODEL_TAGS:
        raise UnsupportedTag(f"unknown model tag {tag!r}")
    f = (int(f[0]), int(f[1]))
    g = (int(g[0]), int(g[1]))
    for p in (f, g):
        if p == (0, 0):
            raise UnitInput("pair entries must be nonunit")
        if not model_membership(tag, p):
            raise InvalidInput(f"exponent {p} is not in model {tag}", witness=p)
    if radius is None:
        radius = max(abs(x) for x in f + g) + 4
    for c in ((0, 0),) + model_points(tag, radius):
        shifted = (c[0] + g[0] - f[0], c[1] + g[1] - f[1])
        reduced = (c[0] - f[0], c[1] - f[1])
        if model_membership(tag, shifted) and not model_membership(tag, reduced):
            return False, c
    return True, None
