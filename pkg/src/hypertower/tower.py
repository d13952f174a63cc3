"""Projections between coset levels and sampled checkers for their laws.

Lowering the level of a class keeps its representative, commutes with
composition, and never changes the value.  Together with the value maps
into the min-based extended-value algebra this yields a family of
commuting triangles; the checkers here verify those laws on explicit
samples and report counterexamples instead of raising, so that corrupted
maps can be exercised as negative controls.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .oag import GroupElement, INF, group_add, trop_hyperadd, trop_member
from .cosets import (
    GammaCoset,
    coset_eq,
    coset_mul,
    coset_of,
    coset_value,
    hyperadd,
    hypersum_contains,
    member_candidates,
)

__all__ = [
    "LevelPair",
    "LawReport",
    "project",
    "check_slice_triangles",
    "check_hom_law",
    "cone_over_diagram",
    "check_projection_containment",
    "CosetCarrier",
    "TropCarrier",
]


@dataclass(frozen=True)
class LevelPair:
    lower: int
    upper: int

    def __post_init__(self):
        if not 0 <= self.lower <= self.upper:
            raise ValueError(f"need 0 <= lower <= upper, got {self}")


@dataclass
class LawReport:
    """Outcome of a sampled law check: counterexamples, not exceptions."""

    law: str
    samples: int = 0
    failures: list = dc_field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def tick(self):
        self.samples += 1

    def fail(self, **ctx):
        self.failures.append(dict(sorted(ctx.items())))

    def to_json(self):
        return {
            "law": self.law,
            "samples": self.samples,
            "failures": sorted(self.failures, key=repr),
            "pass": self.passed,
        }

    @staticmethod
    def combine(name, reports):
        out = LawReport(name)
        for r in reports:
            out.samples += r.samples
            out.failures.extend(
                dict(r0, law=r.law) for r0 in r.failures
            )
        return out


def project(c, gamma):
    """Lower a class to level gamma, keeping the representative."""
    gamma = int(gamma)
    if gamma < 0:
        raise ValueError("levels must be >= 0")
    if gamma > c.level:
        raise ValueError(f"cannot project level {c.level} up to {gamma}")
    return GammaCoset(c.field, gamma, c.rep)


def check_slice_triangles(field, pairs, elements, projector=project):
    """Value preservation and functoriality of level-lowering on samples.

    ``elements`` are raw field elements; classes are built at the upper
    level of each pair and pushed down.  A replacement ``projector`` can
    be supplied to exercise corrupted maps.
    """
    report = LawReport("slice-triangles")
    levels = sorted({p.lower for p in pairs} | {p.upper for p in pairs})
    for pair in pairs:
        for x in elements:
            report.tick()
            upper = coset_of(field, x, pair.upper)
            lowered = projector(upper, pair.lower)
            if coset_value(lowered) != coset_value(upper):
                report.fail(
                    law_part="value-preservation",
                    element=field.to_json(x),
                    upper=pair.upper,
                    lower=pair.lower,
                )
    for i, lo in enumerate(levels):
        for mid in levels[i:]:
            for hi in levels[levels.index(mid):]:
                if not (lo <= mid <= hi):
                    continue
                for x in elements:
                    report.tick()
                    top = coset_of(field, x, hi)
                    direct = projector(top, lo)
                    via = projector(projector(top, mid), lo)
                    if not coset_eq(direct, via):
                        report.fail(
                            law_part="functoriality",
                            element=field.to_json(x),
                            levels=[lo, mid, hi],
                        )
    return report


class CosetCarrier:
    """The level-g coset algebra of a field, packaged for the hom checker."""

    def __init__(self, field, level):
        self.field = field
        self.level = level

    def zero(self):
        return coset_of(self.field, self.field.zero(), self.level)

    def eq(self, a, b):
        return coset_eq(a, b)

    def mul(self, a, b):
        return coset_mul(a, b)

    def hyperadd(self, a, b):
        return hyperadd(a, b)

    def contains(self, s, m):
        return hypersum_contains(s, m)

    def members(self, s, rng, count):
        cands = member_candidates(s, depth=3, width=2)
        if len(cands) <= count:
            return cands
        return rng.sample(cands, count)

    def random(self, rng, height=30):
        f = self.field
        x = f.random_nonzero(rng, height)
        shift = rng.randint(-2, 4)
        if shift:
            x = f.mul(x, f.uniformizer_pow(shift))
        if rng.random() < 0.05:
            x = f.zero()
        return coset_of(f, x, self.level)

    def describe(self, x):
        return x.to_json()


class TropCarrier:
    """Extended values under min-based multivalued addition, for the checker."""

    def __init__(self, arity=1):
        self.arity = arity

    def zero(self):
        return INF

    def eq(self, a, b):
        return a == b

    def mul(self, a, b):
        return group_add(a, b)

    def hyperadd(self, a, b):
        return trop_hyperadd(a, b)

    def contains(self, s, m):
        return trop_member(m, s)

    def members(self, s, rng, count):
        if s.kind == "singleton":
            return [s.value]
        out = [INF]
        base = s.value
        start = 1 if s.open_lower else 0
        for _ in range(count):
            bump = rng.randint(start, start + 6)
            out.append(base + GroupElement((bump,) + (0,) * (self.arity - 1)))
        return out

    def random(self, rng, height=30):
        if rng.random() < 0.05:
            return INF
        return GroupElement(tuple(rng.randint(-height, height) for _ in range(self.arity)))

    def describe(self, x):
        return repr(x)


def check_hom_law(dom, cod, fn, rng, samples=64, members=4):
    """Zero preservation, multiplicativity, and sum containment for a map.

    Containment is tested member-wise: the image of every sampled member
    of a sum descriptor must belong to the image descriptor.
    """
    report = LawReport("hom-law")
    report.tick()
    if not cod.eq(fn(dom.zero()), cod.zero()):
        report.fail(law_part="zero", detail="f(0) != 0")
    for _ in range(samples):
        report.tick()
        x, y = dom.random(rng), dom.random(rng)
        fx, fy = fn(x), fn(y)
        if not cod.eq(fn(dom.mul(x, y)), cod.mul(fx, fy)):
            report.fail(
                law_part="multiplicative",
                x=dom.describe(x),
                y=dom.describe(y),
            )
            continue
        s = dom.hyperadd(x, y)
        image = cod.hyperadd(fx, fy)
        for m in dom.members(s, rng, members):
            if not cod.contains(image, fn(m)):
                report.fail(
                    law_part="sum-containment",
                    x=dom.describe(x),
                    y=dom.describe(y),
                    member=dom.describe(m),
                )
    return report


def check_projection_containment(field, pairs, elements):
    """Descriptor-level fast path: lowering maps sum balls into sum balls.

    The lowered center is the center of the lowered sum and the radius
    can only shrink, so ball containment holds without sampling members.
    """
    report = LawReport("projection-ball-containment")
    for pair in pairs:
        for i, x in enumerate(elements):
            for y in elements[i:]:
                if field.is_zero(x) and field.is_zero(y):
                    continue
                report.tick()
                su = hyperadd(coset_of(field, x, pair.upper), coset_of(field, y, pair.upper))
                sl = hyperadd(coset_of(field, x, pair.lower), coset_of(field, y, pair.lower))
                if su.singleton is not None:
                    ok = sl.singleton is not None and coset_eq(
                        project(su.singleton, pair.lower), sl.singleton
                    )
                else:
                    ok = (
                        sl.singleton is None
                        and coset_eq(project(su.center, pair.lower), sl.center)
                        and sl.radius <= su.radius
                        and hypersum_contains(sl, project(su.center, pair.lower))
                    )
                if not ok:
                    report.fail(
                        x=field.to_json(x),
                        y=field.to_json(y),
                        upper=pair.upper,
                        lower=pair.lower,
                    )
    return report


def cone_over_diagram(sides, pairs, samples, projector=project):
    """Compatibility of a family of per-level maps with level-lowering.

    ``sides(level)`` returns the map from vertex elements to classes at
    that level.  Lowering the image at the upper level must reproduce the
    image at the lower level, and the value of the image must not depend
    on the level.
    """
    report = LawReport("cone-compatibility")
    levels = sorted({p.lower for p in pairs} | {p.upper for p in pairs})
    for x in samples:
        values = []
        for g in levels:
            values.append(coset_value(sides(g)(x)))
        if any(v != values[0] for v in values[1:]):
            report.fail(law_part="value-constancy", element=repr(x))
        for pair in pairs:
            report.tick()
            upper = sides(pair.upper)(x)
            lower = sides(pair.lower)(x)
            if not coset_eq(projector(upper, pair.lower), lower):
                report.fail(
                    law_part="triangle",
                    element=repr(x),
                    upper=pair.upper,
                    lower=pair.lower,
                )
    return report
