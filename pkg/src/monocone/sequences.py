"""Finitely presented rational sequences and independent-family constructions.

Elements of the infinite product of Q are represented as a finite prefix plus
a constant rational tail (``FinSeq``); every construction here only ever
inspects finitely many irregular coordinates and one uniform tail, which
makes rank and sign questions decidable.

The central routine peels one subtracted element off a nonnegative
presentation at a time, splitting off a fresh "prime" sequence that is
strictly squeezed between the leading summand and the subtracted element on
the support set.  Primes are chosen by a proportional formula and, when the
rank test demands it, the window is extended and one prefix coordinate is
perturbed by 1/l for the least l >= 2 that works; this replaces a
cardinality argument with a deterministic, testable rule.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import linalg
from .errors import (
    DependentGenerators,
    InvalidInput,
    NoSolution,
    NotNormal,
    NotPositive,
    NotSupported,
    WindowTooSmall,
)
from .semigroups import AffineSemigroup, Verdict, is_normal, is_positive, membership, saturate_in_box

PERTURB_MAX_DENOM = 64
TAIL = -1  # sentinel index for the constant tail regime


@dataclass(frozen=True)
class FinSeq:
    """A rational sequence with eventually constant value.

    Canonical form: the prefix never ends with the tail value.
    """

    prefix: tuple[Fraction, ...]
    tail: Fraction

    @property
    def window(self) -> int:
        return len(self.prefix)

    def at(self, i: int) -> Fraction:
        if i == TAIL:
            return self.tail
        return self.prefix[i] if i < len(self.prefix) else self.tail

    def is_nonneg(self) -> bool:
        return self.tail >= 0 and all(x >= 0 for x in self.prefix)

    def is_zero(self) -> bool:
        return self.tail == 0 and not self.prefix

    def add(self, other: "FinSeq") -> "FinSeq":
        w = max(self.window, other.window)
        return finseq([self.at(i) + other.at(i) for i in range(w)], self.tail + other.tail)

    def sub(self, other: "FinSeq") -> "FinSeq":
        w = max(self.window, other.window)
        return finseq([self.at(i) - other.at(i) for i in range(w)], self.tail - other.tail)

    def scale(self, c) -> "FinSeq":
        c = Fraction(c)
        return finseq([c * x for x in self.prefix], c * self.tail)

    def as_vector(self, width: int) -> tuple[Fraction, ...]:
        """Faithful linearization: padded prefix plus the tail as a last coordinate.

        Requires width >= window; linear combinations of sequences then agree
        with combinations of these vectors.
        """
        assert width >= self.window
        return tuple(self.at(i) for i in range(width)) + (self.tail,)

    def with_coord(self, i: int, value: Fraction) -> "FinSeq":
        w = max(self.window, i + 1)
        vals = [self.at(j) for j in range(w)]
        vals[i] = Fraction(value)
        return finseq(vals, self.tail)

    def to_doc(self) -> dict:
        return {"prefix": [str(x) for x in self.prefix], "tail": str(self.tail)}

    @staticmethod
    def from_doc(doc: dict) -> "FinSeq":
        return finseq([Fraction(x) for x in doc["prefix"]], Fraction(doc["tail"]))


def finseq(prefix: Iterable, tail) -> FinSeq:
    tail = Fraction(tail)
    vals = [Fraction(x) for x in prefix]
    while vals and vals[-1] == tail:
        vals.pop()
    return FinSeq(tuple(vals), tail)


@dataclass(frozen=True)
class SupportPattern:
    """An infinite index set: all i > threshold, toggled on a finite exception set.

    Exceptions above the threshold are excluded from the set; exceptions at or
    below it are included.
    """

    threshold: int
    exceptions: frozenset[int] = frozenset()

    def contains(self, i: int) -> bool:
        if i == TAIL:
            return True  # all sufficiently large indices lie in the set
        return (i > self.threshold) != (i in self.exceptions)

    def restrict_above(self, cut: int) -> "SupportPattern":
        """The pattern intersected with {i > cut}."""
        return SupportPattern(
            max(self.threshold, cut), frozenset(e for e in self.exceptions if e > cut)
        )

    def without(self, indices: Iterable[int]) -> "SupportPattern":
        """Remove finitely many indices from the set."""
        exc = set(self.exceptions)
        for i in indices:
            if self.contains(i):
                if i > self.threshold:
                    exc.add(i)
                else:
                    exc.discard(i)
        return SupportPattern(self.threshold, frozenset(exc))

    def to_doc(self) -> dict:
        return {"threshold": self.threshold, "exceptions": sorted(self.exceptions)}

    @staticmethod
    def from_doc(doc: dict) -> "SupportPattern":
        return SupportPattern(int(doc["threshold"]), frozenset(int(x) for x in doc.get("exceptions", ())))


ALL_INDICES = SupportPattern(-1)


def classify_sequence(a: FinSeq, I: SupportPattern) -> tuple[bool, bool]:
    """(supported, almost_nonneg): nonzero at every index of I; negatives only
    in the prefix with a nonnegative tail."""
    supported = a.tail != 0 and all(
        a.prefix[i] != 0 for i in range(a.window) if I.contains(i)
    )
    almost_nonneg = a.tail >= 0
    return supported, almost_nonneg


def family_rank(seqs: Sequence[FinSeq]) -> int:
    if not seqs:
        return 0
    w = max(s.window for s in seqs)
    return linalg.rank([s.as_vector(w) for s in seqs])


def seq_cone_coordinates(family: Sequence[FinSeq], v: FinSeq) -> Optional[tuple[Fraction, ...]]:
    """Nonnegative exact coordinates of v over an independent family of sequences."""
    w = max([s.window for s in family] + [v.window]) if family else v.window
    return linalg.cone_coordinates([s.as_vector(w) for s in family], v.as_vector(w))


@dataclass(frozen=True)
class IndependentFamily:
    members: tuple[FinSeq, ...]
    support: SupportPattern

    def validate(self, require_nonneg: bool = False) -> None:
        assert family_rank(self.members) == len(self.members), "family is dependent"
        for m in self.members:
            supported, almost = classify_sequence(m, self.support)
            assert supported, "family member not supported on the index set"
            assert almost, "family member has a negative tail"
            if require_nonneg:
                assert m.is_nonneg()

    def coordinates(self, v: FinSeq) -> Optional[tuple[Fraction, ...]]:
        return seq_cone_coordinates(self.members, v)

    def to_doc(self) -> dict:
        return {
            "members": [m.to_doc() for m in self.members],
            "support": self.support.to_doc(),
        }


def _require_supported_nonneg(seqs: Sequence[FinSeq], I: SupportPattern, what: str) -> None:
    for s in seqs:
        supported, _ = classify_sequence(s, I)
        if not supported:
            raise NotSupported(f"{what} is not supported on the index set", witness=s.to_doc())
        if not s.is_nonneg():
            raise InvalidInput(f"{what} has a negative coordinate", witness=s.to_doc())


# ---------------------------------------------------------------------------
# The peeling step
# ---------------------------------------------------------------------------


def _proportional_prime(summands: Sequence[FinSeq], target: FinSeq, mixed: bool) -> FinSeq:
    """Candidate prime for the leading summand: target * lead / sum(summands).

    Pointwise.  In the nonnegative regime an index where the summands all
    vanish gets 0 (the target is forced to vanish there too); in the mixed
    regime such low indices are unconstrained and the candidate simply takes
    the whole remaining target there.
    """
    lead = summands[0]
    w = max([s.window for s in summands] + [target.window])

    def share(i):
        total = sum((s.at(i) for s in summands), Fraction(0))
        if total > 0:
            return target.at(i) * lead.at(i) / total
        return target.at(i) if mixed else Fraction(0)

    return finseq([share(i) for i in range(w)], share(TAIL))


def _step_ok(
    cand: FinSeq,
    lead: FinSeq,
    target: FinSeq,
    rest: Sequence[FinSeq],
    I: SupportPattern,
    mixed: bool,
) -> bool:
    """Interval and survivability constraints for one peeling step.

    On the support set everything is strict: 0 < cand < lead, cand < target,
    and the surviving presentation sum(rest) - (target - cand) stays strictly
    positive.  Off the set the weak versions must hold in the nonnegative
    regime; in the mixed regime the finitely many off-set coordinates are
    unconstrained (members only need to be almost nonnegative).
    """
    w = max([s.window for s in (cand, lead, target, *rest)])
    for i in list(range(w)) + [TAIL]:
        in_set = I.contains(i)
        if not in_set and mixed:
            continue
        cv, lv, tv = cand.at(i), lead.at(i), target.at(i)
        rsum = sum((r.at(i) for r in rest), Fraction(0))
        if in_set:
            if not (0 < cv < lv and cv < tv):
                return False
            if rest and rsum - (tv - cv) <= 0:
                return False
        else:
            if not (0 <= cv <= lv and cv <= tv):
                return False
            if rest and rsum - (tv - cv) < 0:
                return False
    return True


def _fresh_prime(
    summands: Sequence[FinSeq],
    target: FinSeq,
    span: Sequence[FinSeq],
    I: SupportPattern,
    mixed: bool = False,
) -> FinSeq:
    """A prime for the leading summand, independent of the given span.

    Starts from the proportional candidate.  If that lies in the span, one
    prefix coordinate is perturbed by 1/l for the least l >= 2 that fits the
    interval constraints at that coordinate; a coordinate whose perturbation
    stays in the span is dead for every perturbation size and is skipped.
    As a last resort the window is extended past every member's window (and
    past the pattern's irregular indices): at such a fresh coordinate the
    span's vectors all agree with their tails, so the perturbed candidate is
    guaranteed to leave the span.
    """
    lead = summands[0]
    rest = list(summands[1:])
    cand = _proportional_prime(summands, target, mixed)
    assert _step_ok(cand, lead, target, rest, I, mixed)

    def extends(c: FinSeq) -> bool:
        return family_rank(list(span) + [c]) == len(span) + 1

    if extends(cand):
        return cand

    def room(i0: int, sign: int) -> Fraction:
        """Largest perturbation magnitude the step constraints allow at i0."""
        in_set = I.contains(i0)
        cv, lv, tv = cand.at(i0), lead.at(i0), target.at(i0)
        if mixed and not in_set:
            return Fraction(1)
        slack = min(lv - cv, tv - cv) if sign > 0 else cv
        if rest and sign < 0:
            rsum = sum((r.at(i0) for r in rest), Fraction(0))
            slack = min(slack, rsum - (tv - cv))
        return slack

    def try_coordinate(i0: int):
        for sign in (1, -1):
            gap = room(i0, sign)
            if gap <= 0:
                continue
            denom = max(2, int(1 / gap) + 1)
            for l in range(denom, denom + PERTURB_MAX_DENOM):
                trial = cand.with_coord(i0, cand.at(i0) + Fraction(sign, l))
                if not _step_ok(trial, lead, target, rest, I, mixed):
                    continue
                if extends(trial):
                    return trial
                # the perturbation direction lies in the span; no size helps
                break
        return None

    w = max(s.window for s in (*span, cand, lead, target))
    for i0 in range(w - 1, -1, -1):
        found = try_coordinate(i0)
        if found is not None:
            return found
    fresh = max(w, I.threshold + 1, max(I.exceptions, default=-1) + 1, len(span) + 1)
    for i0 in range(fresh, fresh + 4):
        found = try_coordinate(i0)
        if found is not None:
            return found
    raise WindowTooSmall("no independent prime found within the perturbation budget")


def _peel(
    summands: Sequence[FinSeq],
    target: FinSeq,
    passengers: Sequence[FinSeq],
    I: SupportPattern,
    mixed: bool = False,
) -> list[FinSeq]:
    """Decompose sum(summands) - target, yielding the member list of the family.

    Splits a prime off the leading summand while at least two summands
    remain; the two-element tail case keeps the reduced target and the final
    difference directly.
    """
    members = list(passengers)
    span = list(passengers) + list(summands) + [target]
    queue = list(summands)
    tgt = target
    while len(queue) >= 2:
        prime = _fresh_prime(queue, tgt, span, I, mixed)
        members.append(queue[0].sub(prime))
        members.append(prime)
        span.append(prime)
        tgt = tgt.sub(prime)
        queue.pop(0)
    members.append(tgt)
    members.append(queue[0].sub(tgt))
    return members


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def split_off(
    betas: Sequence[FinSeq], I: SupportPattern, passengers: Sequence[FinSeq] = ()
) -> tuple[FinSeq, IndependentFamily]:
    """One splitting step: betas = [b_m, ..., b_n] with

        alpha = b_m + ... + b_{n-1} - b_n  >= 0 and supported on I

    returns the prime b' and the family {b_m - b', b_{m+1}, ..., b_{n-1},
    b_n - b', b'} (plus passengers), of size len(betas) + 1.
    """
    betas = list(betas)
    if len(betas) < 3:
        raise InvalidInput(
            "need at least two positive summands: the two-element case forces "
            "b_n - b' = 0, which cannot be supported"
        )
    _require_supported_nonneg(betas, I, "input")
    _require_supported_nonneg(passengers, I, "passenger")
    if family_rank(list(passengers) + betas) != len(passengers) + len(betas):
        raise DependentGenerators("inputs are linearly dependent")
    alpha = betas[0]
    for b in betas[1:-1]:
        alpha = alpha.add(b)
    alpha = alpha.sub(betas[-1])
    if not alpha.is_nonneg():
        raise InvalidInput("the signed sum of the inputs is not nonnegative", witness=alpha.to_doc())
    supported, _ = classify_sequence(alpha, I)
    if not supported:
        raise NotSupported("the signed sum has a zero on the index set", witness=alpha.to_doc())
    lead, mids, target = betas[0], betas[1:-1], betas[-1]
    span = list(passengers) + betas
    prime = _fresh_prime([lead] + mids, target, span, I)
    members = list(passengers) + [lead.sub(prime)] + mids + [target.sub(prime), prime]
    family = IndependentFamily(tuple(members), I)
    family.validate(require_nonneg=True)
    for b in betas:
        coords = family.coordinates(b)
        assert coords is not None
    return prime, family


def resolve_one_negative(
    betas: Sequence[FinSeq],
    eta: Sequence[int],
    I: SupportPattern,
    passengers: Sequence[FinSeq] = (),
) -> IndependentFamily:
    """Family absorbing alpha = sum(eta_i b_i) - b_n with eta in {0,1}.

    Iterates the splitting step along the chain of reduced targets; the
    one-summand case swaps the summand for alpha directly.
    """
    betas = list(betas)
    if len(betas) < 2 or len(eta) != len(betas) - 1:
        raise InvalidInput("need n >= 2 sequences and n-1 flags")
    if any(e not in (0, 1) for e in eta):
        raise InvalidInput("flags must be 0 or 1")
    _require_supported_nonneg(betas, I, "input")
    _require_supported_nonneg(passengers, I, "passenger")
    if family_rank(list(passengers) + betas) != len(passengers) + len(betas):
        raise DependentGenerators("inputs are linearly dependent")
    summands = [b for b, e in zip(betas[:-1], eta) if e == 1]
    riders = [b for b, e in zip(betas[:-1], eta) if e == 0]
    target = betas[-1]
    if not summands:
        raise InvalidInput("all flags zero: the signed sum is negative")
    alpha = summands[0]
    for b in summands[1:]:
        alpha = alpha.add(b)
    alpha = alpha.sub(target)
    if not alpha.is_nonneg():
        raise InvalidInput("the signed sum of the inputs is not nonnegative", witness=alpha.to_doc())
    supported, _ = classify_sequence(alpha, I)
    if not supported:
        raise NotSupported("the signed sum has a zero on the index set", witness=alpha.to_doc())
    all_passengers = list(passengers) + riders
    if len(summands) == 1:
        members = all_passengers + [target, alpha]
    else:
        members = _peel(summands, target, all_passengers, I)
    family = IndependentFamily(tuple(members), I)
    family.validate(require_nonneg=True)
    for v in betas + [alpha] + list(passengers):
        assert family.coordinates(v) is not None
    return family


def resolve(betas: Sequence[FinSeq], alpha: FinSeq, I: SupportPattern) -> IndependentFamily:
    """Family absorbing an arbitrary supported nonnegative alpha.

    Independent alpha is adjoined as-is; otherwise its exact expression over
    the betas is normalized by positive rescaling and the subtracted terms
    are peeled one at a time, recursing with strictly fewer negatives.
    """
    betas = list(betas)
    _require_supported_nonneg(betas, I, "input")
    if family_rank(betas) != len(betas):
        raise DependentGenerators("base family is dependent")
    if alpha.is_zero():
        raise InvalidInput("alpha must be nonzero")
    supported, _ = classify_sequence(alpha, I)
    if not supported:
        raise NotSupported("alpha has a zero on the index set", witness=alpha.to_doc())
    if not alpha.is_nonneg():
        raise InvalidInput("alpha has a negative coordinate", witness=alpha.to_doc())
    if family_rank(betas + [alpha]) == len(betas) + 1:
        family = IndependentFamily(tuple(betas) + (alpha,), I)
        family.validate(require_nonneg=True)
        return family
    w = max([s.window for s in betas + [alpha]])
    eps = linalg.solve_linear([b.as_vector(w) for b in betas], alpha.as_vector(w))
    assert eps is not None
    pos = [i for i, e in enumerate(eps) if e > 0]
    neg = [i for i, e in enumerate(eps) if e < 0]
    zero = [i for i, e in enumerate(eps) if e == 0]
    if not neg:
        family = IndependentFamily(tuple(betas), I)
        for v in betas + [alpha]:
            assert family.coordinates(v) is not None
        return family
    assert pos, "a nonzero nonnegative alpha cannot be a nonpositive combination"
    if len(pos) == 1:
        members = [alpha if i == pos[0] else b for i, b in enumerate(betas)]
        family = IndependentFamily(tuple(members), I)
        family.validate(require_nonneg=True)
        for v in betas + [alpha]:
            assert family.coordinates(v) is not None
        return family
    scaled_pos = [betas[i].scale(eps[i]) for i in pos]
    scaled_neg = [betas[i].scale(-eps[i]) for i in neg]
    riders = [betas[i] for i in zero]
    step = resolve_one_negative(
        scaled_pos + [scaled_neg[0]],
        [1] * len(scaled_pos),
        I,
        passengers=riders + scaled_neg[1:],
    )
    return resolve(list(step.members), alpha, I)


def adjoin_closure(betas: Sequence[FinSeq], I: SupportPattern) -> IndependentFamily:
    """Fold of :func:`resolve` over the inputs; independence is not required."""
    betas = list(betas)
    if not betas:
        raise InvalidInput("need at least one sequence")
    _require_supported_nonneg(betas, I, "input")
    members = [betas[0]]
    for b in betas[1:]:
        members = list(resolve(members, b, I).members)
    family = IndependentFamily(tuple(members), I)
    family.validate(require_nonneg=True)
    for b in betas:
        assert family.coordinates(b) is not None
    return family


def extend_mixed(betas: Sequence[FinSeq], alpha: FinSeq, I: SupportPattern) -> IndependentFamily:
    """Absorb almost-nonnegative inputs by splitting at the last negative index.

    Degenerate presentations are dispatched first: an independent alpha is
    adjoined directly, an alpha that is already a nonnegative combination
    changes nothing, and a single-positive-coefficient presentation swaps
    alpha in.  Only a genuinely mixed-sign presentation takes the low/high
    split: the nonnegative high parts go through :func:`adjoin_closure` over
    the pattern restricted above the cut, and the finitely many low
    coordinates are corrected by solving one exact linear system per
    coordinate.  The returned support pattern may exclude finitely many low
    indices where the corrected members vanish.
    """
    betas = list(betas)
    inputs = betas + [alpha]
    for s in inputs:
        supported, almost = classify_sequence(s, I)
        if not almost:
            raise InvalidInput("input is not almost nonnegative (negative tail)", witness=s.to_doc())
        if not supported:
            raise NotSupported("input has a zero on the index set", witness=s.to_doc())
        if any(s.prefix[i] < 0 for i in range(s.window) if I.contains(i)):
            raise NotSupported(
                "input is negative on the index set; no nonnegative combination "
                "of supported members can reach it",
                witness=s.to_doc(),
            )
    if betas and family_rank(betas) != len(betas):
        raise DependentGenerators("base family is dependent")
    if all(s.is_nonneg() for s in inputs):
        if not betas or family_rank(inputs) == len(inputs):
            family = IndependentFamily(tuple(inputs), I)
            family.validate(require_nonneg=True)
            return family
        return resolve(betas, alpha, I)
    if not betas or family_rank(inputs) == len(inputs):
        family = IndependentFamily(tuple(inputs), I)
        family.validate()
        return family
    w = max(s.window for s in inputs)
    eps = linalg.solve_linear([b.as_vector(w) for b in betas], alpha.as_vector(w))
    assert eps is not None
    pos = [i for i, e in enumerate(eps) if e > 0]
    neg = [i for i, e in enumerate(eps) if e < 0]
    if not neg:
        family = IndependentFamily(tuple(betas), I)
        family.validate()
        assert family.coordinates(alpha) is not None
        return family
    if len(pos) == 1:
        members = [alpha if i == pos[0] else b for i, b in enumerate(betas)]
        family = IndependentFamily(tuple(members), I)
        family.validate()
        for v in inputs:
            assert family.coordinates(v) is not None
        return family
    # normalized mixed presentation: alpha = sum(pos-scaled) - sum(neg-scaled)
    riders = [betas[i] for i, e in enumerate(eps) if e == 0]
    inputs = (
        [betas[i].scale(eps[i]) for i in pos]
        + [betas[i].scale(-eps[i]) for i in neg]
        + riders
        + [alpha]
    )
    cut = max(
        i for s in inputs for i in range(s.window) if s.prefix[i] < 0
    )
    I_high = I.restrict_above(cut)

    def split(s: FinSeq) -> tuple[FinSeq, FinSeq]:
        low = finseq([s.at(i) for i in range(cut + 1)], 0)
        high = s.sub(low)
        return low, high

    lows, highs = zip(*(split(s) for s in inputs))
    for h in highs:
        assert h.is_nonneg()
    last_error = None
    for attempt in range(2):
        rotated = list(highs[attempt:]) + list(highs[:attempt])
        try:
            closure = adjoin_closure(rotated, I_high)
        except (WindowTooSmall, NotSupported) as exc:
            last_error = NoSolution("closure of the high parts failed", witness=str(exc))
            continue
        gammas = list(closure.members)
        for g in gammas:
            assert all(g.at(i) == 0 for i in range(cut + 1)), "closure member leaks below the cut"
        coords = [seq_cone_coordinates(gammas, h) for h in highs]
        assert all(c is not None for c in coords)
        s_count = len(gammas)
        columns = [tuple(coords[t][k] for t in range(len(inputs))) for k in range(s_count)]
        solved = []
        consistent = True
        for i in range(cut + 1):
            b = tuple(lows[t].at(i) for t in range(len(inputs)))
            y = linalg.solve_linear(columns, b)
            if y is None:
                consistent = False
                break
            solved.append(y)
        if not consistent:
            last_error = NoSolution(
                "low-coordinate correction system is inconsistent", witness={"cut": cut}
            )
            continue
        corrections = [
            finseq([solved[i][k] for i in range(cut + 1)], 0) for k in range(s_count)
        ]
        members = [g.add(c) for g, c in zip(gammas, corrections)]
        # members must stay strictly positive on the support set so that later
        # stages can feed on them; drop the finitely many low indices where
        # the correction spoiled that
        dead = [
            i
            for i in range(cut + 1)
            if I.contains(i) and any(m.at(i) <= 0 for m in members)
        ]
        support_out = I.without(dead)
        family = IndependentFamily(tuple(members), support_out)
        family.validate()
        for t, v in enumerate(inputs):
            got = family.coordinates(v)
            assert got == tuple(coords[t])
        for v in betas + [alpha]:
            assert family.coordinates(v) is not None
        return family
    # inconsistency is independent of the closure choice: peel the mixed
    # sequences directly (low coordinates are unconstrained in this regime)
    try:
        return _absorb_mixed(betas, alpha, I)
    except (WindowTooSmall, InvalidInput, NotSupported):
        raise last_error


def _absorb_mixed(betas: list[FinSeq], alpha: FinSeq, I: SupportPattern) -> IndependentFamily:
    """Resolve-style recursion in the almost-nonnegative regime."""
    if family_rank(betas + [alpha]) == len(betas) + 1:
        family = IndependentFamily(tuple(betas) + (alpha,), I)
        family.validate()
        return family
    w = max(s.window for s in betas + [alpha])
    eps = linalg.solve_linear([b.as_vector(w) for b in betas], alpha.as_vector(w))
    assert eps is not None
    pos = [i for i, e in enumerate(eps) if e > 0]
    neg = [i for i, e in enumerate(eps) if e < 0]
    if not neg:
        family = IndependentFamily(tuple(betas), I)
        family.validate()
        assert family.coordinates(alpha) is not None
        return family
    assert pos, "alpha is supported, so its presentation has a positive part"
    if len(pos) == 1:
        members = [alpha if i == pos[0] else b for i, b in enumerate(betas)]
        family = IndependentFamily(tuple(members), I)
        family.validate()
        for v in betas + [alpha]:
            assert family.coordinates(v) is not None
        return family
    riders = [betas[i] for i, e in enumerate(eps) if e == 0]
    scaled_pos = [betas[i].scale(eps[i]) for i in pos]
    scaled_neg = [betas[i].scale(-eps[i]) for i in neg]
    members = _peel(scaled_pos, scaled_neg[0], riders + scaled_neg[1:], I, mixed=True)
    family = IndependentFamily(tuple(members), I)
    family.validate()
    return _absorb_mixed(list(family.members), alpha, I)


def build_direct_system(
    points: Sequence[FinSeq], I: SupportPattern, depth: int
) -> tuple[list[IndependentFamily], list[list[list[int]]]]:
    """Stages of independent families with nonnegative-integer transitions.

    Stage n absorbs the n-th point of the stream (the last point repeats if
    the stream is shorter); after each stage the members are rescaled by the
    least common denominators so that all tracked points and the previous
    stage lie in the N-span.  Transition matrices express each stage in the
    next one; they compose exactly.
    """
    if depth < 1:
        raise InvalidInput("depth must be at least 1")
    if not points:
        raise InvalidInput("need at least one point")
    families: list[IndependentFamily] = []
    transitions: list[list[list[int]]] = []
    tracked: list[FinSeq] = []
    members: list[FinSeq] = []
    support = I
    for n in range(depth):
        h = points[min(n, len(points) - 1)]
        if h not in tracked:
            tracked.append(h)
        if not members:
            supported, almost = classify_sequence(h, I)
            if not supported:
                raise NotSupported("stream point has a zero on the index set", witness=h.to_doc())
            if not almost:
                raise InvalidInput("stream point has a negative tail", witness=h.to_doc())
            members = [h]
        else:
            fam = extend_mixed(members, h, support)
            members = list(fam.members)
            support = fam.support
        prev = list(families[-1].members) if families else []
        to_clear = tracked + prev
        denominators = [1] * len(members)
        for v in to_clear:
            coords = seq_cone_coordinates(members, v)
            assert coords is not None
            for k, c in enumerate(coords):
                denominators[k] = _lcm(denominators[k], c.denominator)
        members = [m.scale(Fraction(1, d)) for m, d in zip(members, denominators)]
        family = IndependentFamily(tuple(members), support)
        family.validate()
        families.append(family)
        if prev:
            matrix = []
            for j, p in enumerate(prev):
                coords = seq_cone_coordinates(members, p)
                assert coords is not None and all(c.denominator == 1 for c in coords)
                matrix.append([int(c) for c in coords])
            # columns indexed by previous-stage members
            transitions.append([[matrix[j][k] for j in range(len(prev))] for k in range(len(members))])
    return families, transitions


def _lcm(a: int, b: int) -> int:
    import math

    return a * b // math.gcd(a, b)


# ---------------------------------------------------------------------------
# Dual-functional embedding of a plane semigroup
# ---------------------------------------------------------------------------


def embed_full(h: AffineSemigroup, depth: int) -> tuple[list[FinSeq], Verdict]:
    """Truncated embedding of a positive normal plane semigroup by stagewise duals.

    Builds the box filtration from the generator stream; each stage
    contributes one strictly positive functional followed by the dual-cone
    generators of that stage.  The certificate checks injectivity (rank of
    the functional stack) and box fullness against the final stage's duals.
    """
    pos = is_positive(h)
    if not pos.value:
        raise NotPositive("semigroup has a unit", witness=pos.witness)
    nz = is_normal(h)
    if not nz.value:
        raise NotNormal("semigroup is not normal", witness=nz.witness)
    gens = list(h.generators)
    if not gens:
        raise InvalidInput("semigroup has no generators")
    stages = []
    for i in range(1, depth + 1):
        stages.append(saturate_in_box(gens[: min(i, len(gens))], h.ambient_dim))
    functionals: list[tuple[Fraction, ...]] = []
    stage_duals = []
    for s in stages:
        rays, lines = linalg.dual_description([linalg.vec(g) for g in s.generators], h.ambient_dim)
        gpos = tuple(sum((r[k] for r in rays), Fraction(0)) for k in range(h.ambient_dim))
        stage_funcs = [gpos] + rays + lines + [linalg.vec_scale(-1, l) for l in lines]
        functionals.extend(stage_funcs)
        stage_duals.append((gpos, rays, lines))
    gpos_last, rays_last, lines_last = stage_duals[-1]
    images = []
    for g in gens:
        vals = [linalg.vec_dot(f, linalg.vec(g)) for f in functionals]
        tail = linalg.vec_dot(gpos_last, linalg.vec(g))
        images.append(finseq(vals, tail))
    inj = linalg.rank(functionals) == h.ambient_dim
    witness = None
    box_pts = itertools.product(range(-h.search_bound, h.search_bound + 1), repeat=h.ambient_dim)
    elems = [p for p in box_pts if membership(h, p).value]
    full_ok = True
    for x in elems:
        for y in elems:
            d = tuple(a - b for a, b in zip(x, y))
            if not any(d):
                continue
            dv = linalg.vec(d)
            in_final_cone = all(linalg.vec_dot(r, dv) >= 0 for r in rays_last) and all(
                linalg.vec_dot(l, dv) == 0 for l in lines_last
            )
            if in_final_cone and not membership(h, d).value:
                full_ok = False
                witness = d
                break
        if not full_ok:
            break
    return images, Verdict(inj and full_ok, witness=witness, bounded=True)
