"""Level-indexed multiplicative coset algebra of a valued field.

At level g >= 0 two nonzero elements fall into the same class exactly
when their difference is negligible relative to their size:
v(x - y) > g + v(x).  Multiplication descends to classes and every class
keeps the valuation of its representatives.  Addition of classes is
multivalued; instead of enumerating the infinite answer we carry a finite
descriptor: the class of the plain sum as center, the radius
g + min(vx, vy), and a flag recording whether the zero class belongs.
Membership, value sets and bounded certificates for iterated sums are
all decided from the descriptor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .oag import INF, TropSet

__all__ = [
    "GammaCoset",
    "HyperSum",
    "IteratedResult",
    "coset_of",
    "coset_eq",
    "coset_mul",
    "coset_inv",
    "coset_neg",
    "coset_value",
    "canonical_key",
    "hyperadd",
    "hypersum_contains",
    "hypersum_same_set",
    "hypersum_value_set",
    "iterated_contains",
    "member_candidates",
]


class GammaCoset:
    """The class of a field element at a given nonnegative level.

    Stored by representative; equality is the relative-error predicate,
    not structural comparison, so instances are unhashable.
    """

    __slots__ = ("field", "level", "rep")

    def __init__(self, field, level, rep):
        level = int(level)
        if level < 0:
            raise ValueError("levels must be >= 0")
        self.field = field
        self.level = level
        self.rep = field.check(rep)

    def is_zero(self):
        return self.field.is_zero(self.rep)

    def value(self):
        return self.field.valuation(self.rep)

    def __eq__(self, other):
        if not isinstance(other, GammaCoset):
            return NotImplemented
        return coset_eq(self, other)

    __hash__ = None

    def __repr__(self):
        return f"[{self.rep!r}]_{self.level}"

    def to_json(self):
        return {"level": self.level, "rep": self.field.to_json(self.rep)}


def _same_world(a, b):
    if a.field != b.field:
        raise ValueError("cosets from different fields")
    if a.level != b.level:
        raise ValueError(f"level mismatch: {a.level} vs {b.level}")


def coset_of(field, x, gamma):
    """The class of x at level gamma."""
    return GammaCoset(field, gamma, x)


def coset_eq(a, b):
    """Whether two classes at the same level coincide.

    Zero is its own class; otherwise the representatives must agree up
    to relative error beyond the level: v(x - y) > level + v(x).
    """
    _same_world(a, b)
    az, bz = a.is_zero(), b.is_zero()
    if az or bz:
        return az and bz
    return a.field.sub_valuation(a.rep, b.rep) > a.level + a.value()


def coset_mul(a, b):
    _same_world(a, b)
    return GammaCoset(a.field, a.level, a.field.mul(a.rep, b.rep))


def coset_inv(a):
    if a.is_zero():
        raise ZeroDivisionError("inverse of the zero class")
    return GammaCoset(a.field, a.level, a.field.inv(a.rep))


def coset_neg(a):
    return GammaCoset(a.field, a.level, a.field.neg(a.rep))


def coset_value(a):
    """Valuation of the class: shared by all representatives, INF for zero."""
    return a.value()


def canonical_key(a):
    """Hashable normal form (valuation, unit residue) -- rational field only.

    Two rational classes are equal exactly when their keys match, which
    makes the key usable for dict/set indexing where the equality
    predicate itself cannot be.
    """
    if a.field.kind != "rational":
        raise ValueError("canonical keys are only defined over the rationals")
    if a.is_zero():
        return ("zero", a.level)
    p = a.field.p
    e = a.value()
    u = a.rep / a.field.uniformizer_pow(e)
    m = p ** (a.level + 1)
    return (e, u.numerator * pow(u.denominator, -1, m) % m, a.level)


@dataclass(frozen=True)
class HyperSum:
    """Descriptor of the multivalued sum of two classes.

    When ``singleton`` is set (one operand was the zero class) the sum is
    exactly that class.  Otherwise it is the open ball of classes around
    ``center`` of the given radius, with ``contains_zero`` recording
    whether full cancellation is reachable.
    """

    field: object
    level: int
    center: GammaCoset
    radius: object  # int, or None in the singleton case
    contains_zero: bool
    singleton: GammaCoset = None

    def to_json(self):
        return {
            "level": self.level,
            "center": self.center.to_json(),
            "radius": self.radius,
            "zero": self.contains_zero,
            "singleton": self.singleton.to_json() if self.singleton else None,
        }


def hyperadd(a, b):
    """Descriptor of the multivalued sum of two classes."""
    _same_world(a, b)
    f, g = a.field, a.level
    if a.is_zero() or b.is_zero():
        other = b if a.is_zero() else a
        return HyperSum(f, g, other, None, other.is_zero(), singleton=other)
    center = GammaCoset(f, g, f.add(a.rep, b.rep))
    radius = g + min(a.value(), b.value())
    return HyperSum(f, g, center, radius, center.value() > radius)


def hypersum_contains(s, c):
    """Whether the class c belongs to the multivalued sum."""
    if s.field != c.field:
        raise ValueError("cosets from different fields")
    if s.level != c.level:
        raise ValueError(f"level mismatch: {s.level} vs {c.level}")
    if s.singleton is not None:
        return coset_eq(c, s.singleton)
    if c.is_zero():
        return s.contains_zero
    return s.field.sub_valuation(c.rep, s.center.rep) > s.radius


def hypersum_same_set(s1, s2):
    """Whether two descriptors denote the same set of classes.

    Open balls coincide exactly when the radii agree and either center
    lies inside the other ball; center classes themselves may differ.
    """
    if s1.field != s2.field or s1.level != s2.level:
        return False
    if (s1.singleton is None) != (s2.singleton is None):
        return False
    if s1.singleton is not None:
        return coset_eq(s1.singleton, s2.singleton)
    return (
        s1.radius == s2.radius
        and s1.contains_zero == s2.contains_zero
        and s1.field.sub_valuation(s1.center.rep, s2.center.rep) > s1.radius
    )


def hypersum_value_set(s):
    """The set of valuations attained across the sum, as a descriptor.

    Away from cancellation every member shares the center's value.  When
    the zero class belongs, the attained values are exactly the extended
    values strictly above the radius.
    """
    if s.singleton is not None:
        v = s.singleton.value()
        return TropSet.singleton(v if v is INF else int(v))
    if not s.contains_zero:
        return TropSet.singleton(s.center.value())
    return TropSet.up_interval(s.radius, open_lower=True)


@dataclass(frozen=True)
class IteratedResult:
    """Outcome of the bounded membership search for an iterated sum."""

    verdict: str  # "member" | "non_member" | "unknown"
    chain: tuple = None

    def is_member(self):
        return self.verdict == "member"


def member_candidates(s, depth=3, width=2):
    """A finite, deduplicated spread of classes inside a sum descriptor.

    Every candidate is a genuine member (center, zero when admitted, and
    perturbations of the center by elements just below the radius).
    """
    if s.singleton is not None:
        return [s.singleton]
    f, g = s.field, s.level
    out = [s.center]
    if s.contains_zero:
        out.append(GammaCoset(f, g, f.zero()))
    for k in range(1, depth + 1):
        for i in range(width):
            w = f.mul(f.uniformizer_pow(s.radius + k), f.unit_digit(i))
            cand = GammaCoset(f, g, f.add(s.center.rep, w))
            if not any(coset_eq(cand, seen) for seen in out):
                out.append(cand)
    return out


def _chain_search(summands, target, budget):
    """Backward search for a witness chain, exact at every binary step.

    Membership in a left-folded sum is peeled one summand at a time:
    the target belongs to fold(x0..xk) exactly when some member z of
    target (+) (-xk) belongs to fold(x0..x(k-1)); candidate z's are drawn
    from the descriptor and each link is checked with the exact binary
    predicate, so any chain found is a certificate.
    """
    if len(summands) == 2:
        if hypersum_contains(hyperadd(summands[0], summands[1]), target):
            return []
        return None
    ball = hyperadd(target, coset_neg(summands[-1]))
    for z in member_candidates(ball):
        if budget[0] <= 0:
            return None
        budget[0] -= 1
        sub = _chain_search(summands[:-1], z, budget)
        if sub is not None:
            return sub + [z]
    return None


def iterated_contains(summands, c, search_bound=64):
    """Three-valued membership of a class in an iterated multivalued sum.

    Member comes with a witness chain; NonMember is only concluded from
    the exact necessary bound available when every summand lies in the
    valuation ring; everything else is Unknown.  The iterated sum itself
    is never materialized.
    """
    summands = list(summands)
    if len(summands) < 2:
        raise ValueError("need at least 2 summands")
    field, level = summands[0].field, summands[0].level
    for s in summands[1:]:
        _same_world(summands[0], s)
    _same_world(summands[0], c)

    if all(s.is_zero() for s in summands):
        verdict = "member" if c.is_zero() else "non_member"
        return IteratedResult(verdict, () if c.is_zero() else None)

    total = field.zero()
    partials = []
    for s in summands:
        total = field.add(total, s.rep)
        partials.append(GammaCoset(field, level, total))

    # the full sum always belongs, with the partial sums as its chain
    if coset_eq(partials[-1], c):
        return IteratedResult("member", tuple(partials[1:-1]))

    in_ring = all(
        s.is_zero() or s.value() >= 0 for s in summands
    )
    if in_ring:
        gap = field.sub_valuation(total, c.rep)
        if not gap > level:
            return IteratedResult("non_member")

    budget = [max(1, int(search_bound))]
    chain = _chain_search(summands, c, budget)
    if chain is not None:
        return IteratedResult("member", tuple(chain))
    return IteratedResult("unknown")
