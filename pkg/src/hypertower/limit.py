"""Elements of the completion as compatible families of level classes.

A coherent element materializes one class per level, lazily and
memoized; adjacent levels must agree under level-lowering and all
nonzero classes must share one valuation.  Arithmetic works level-wise
on representatives.  Multiplication, negation and inversion lose no
precision; addition can cancel, and the exact compensation rule is that
a result correct at level g needs the inputs at level
g + (v(sum) - min(v(a), v(b))).  A precision ledger records every such
loss.  Equality of coherent elements is only semi-decidable: agreement
up to a level is evidence, a disagreement at some level is a proof.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .oag import INF
from .basefields import Approximation
from .cosets import GammaCoset, coset_eq, coset_of, hyperadd, hypersum_contains
from .tower import LawReport, project

__all__ = [
    "CoherenceError",
    "PrecisionError",
    "LossEntry",
    "PrecisionLedger",
    "EqResult",
    "RepresentativeFinder",
    "CoherentElement",
    "from_field",
    "from_cosets",
    "zero_element",
    "limit_arith",
    "limit_add",
    "limit_mul",
    "limit_neg",
    "limit_inv",
    "limit_eq",
    "to_approximation",
    "rebuild_from_digits",
    "sigma_embed",
    "hensel_finder",
    "check_singlevalued",
    "check_universal_property",
]

DEFAULT_ZERO_PROBE = 64


class CoherenceError(RuntimeError):
    """A materialized class contradicts an adjacent level or the known value."""

    def __init__(self, level, message):
        super().__init__(f"level {level}: {message}")
        self.level = level


class PrecisionError(RuntimeError):
    """The probe bound was exhausted before the question was settled."""


@dataclass(frozen=True)
class LossEntry:
    """One cancellation event: how far the sum fell below its inputs."""

    op: str
    min_valuation: int
    result_valuation: int
    discovered_at: int

    @property
    def loss(self):
        return self.result_valuation - self.min_valuation

    def to_json(self):
        return {
            "op": self.op,
            "min_valuation": self.min_valuation,
            "result_valuation": self.result_valuation,
            "loss": self.loss,
            "discovered_at": self.discovered_at,
        }


@dataclass(frozen=True)
class PrecisionLedger:
    """Additive record of cancellation losses along an element's history."""

    entries: tuple = ()

    @property
    def total_loss(self):
        return sum(e.loss for e in self.entries)

    def query_level(self, delivered):
        """Input level needed so the output is exact at ``delivered``."""
        return delivered + self.total_loss

    def merged(self, *others, extra=None):
        entries = list(self.entries)
        for o in others:
            entries.extend(o.entries)
        if extra is not None:
            entries.append(extra)
        return PrecisionLedger(tuple(entries))

    def to_json(self, delivered=0):
        return {
            "requested": self.query_level(delivered),
            "delivered": delivered,
            "losses": [e.to_json() for e in self.entries],
        }


@dataclass(frozen=True)
class EqResult:
    """Outcome of comparing two coherent elements level by level."""

    equal: bool
    level: int
    witness: tuple = None

    def __bool__(self):
        return self.equal


@dataclass(frozen=True)
class RepresentativeFinder:
    """Per-level source of base-field representatives for foreign elements.

    The callback must return, for (x, level), an element of the base
    field whose level class is the image of x's class; the returned
    classes are checked for value constancy and cross-level agreement as
    they materialize.
    """

    base: object
    foreign: object
    fn: object

    def __call__(self, x, level):
        return self.fn(x, level)


class CoherentElement:
    """A lazily materialized, compatibility-checked family of classes."""

    def __init__(
        self,
        field,
        generator,
        *,
        exact,
        known_valuation=None,
        zero_probe_bound=DEFAULT_ZERO_PROBE,
        ledger=None,
        provenance=None,
    ):
        self.field = field
        self._generator = generator
        self.exact = exact
        self._valuation = known_valuation
        self.zero_probe_bound = zero_probe_bound
        self.ledger = ledger or PrecisionLedger()
        self.provenance = provenance or {"kind": "opaque"}
        self._memo = {}
        self._lock = threading.Lock()

    def at(self, level):
        """The class at a level; materializes once, then is frozen.

        Each new class is checked against the nearest already-known
        levels on both sides and against the recorded valuation, so a
        misbehaving generator is surfaced with the offending level.
        """
        level = int(level)
        if level < 0:
            raise ValueError("levels must be >= 0")
        got = self._memo.get(level)
        if got is not None:
            return got
        with self._lock:
            got = self._memo.get(level)
            if got is not None:
                return got
            c = self._generator(level)
            if not isinstance(c, GammaCoset) or c.field != self.field:
                raise CoherenceError(level, "generator returned a foreign class")
            if c.level != level:
                raise CoherenceError(level, f"generator returned level {c.level}")
            self._check_value(level, c)
            self._check_neighbors(level, c)
            self._memo[level] = c
            return c

    def _check_value(self, level, c):
        if self._valuation is None:
            return
        if self._valuation is INF:
            if not c.is_zero():
                raise CoherenceError(level, "nonzero class on a zero element")
        elif not c.is_zero() and c.value() != self._valuation:
            raise CoherenceError(
                level,
                f"value {c.value()} contradicts recorded value {self._valuation}",
            )

    def _check_neighbors(self, level, c):
        below = [l for l in self._memo if l < level]
        if below:
            l0 = max(below)
            if not coset_eq(project(c, l0), self._memo[l0]):
                raise CoherenceError(level, f"disagrees with stored level {l0}")
        above = [l for l in self._memo if l > level]
        if above:
            l1 = min(above)
            if not coset_eq(project(self._memo[l1], level), c):
                raise CoherenceError(level, f"stored level {l1} disagrees")

    def valuation(self):
        """The shared valuation of the element's classes.

        Exact elements answer immediately.  Otherwise levels are probed
        up to the zero-probe bound; an element that stays zero that long
        without an exactness guarantee is indistinguishable from zero and
        raises ``PrecisionError``.
        """
        if self._valuation is not None:
            return self._valuation
        if self.exact:
            v = self.field.valuation(self.at(0).rep)
            self._valuation = v
            return v
        for level in range(self.zero_probe_bound + 1):
            c = self.at(level)
            if not c.is_zero():
                v = c.value()
                self._valuation = v
                return v
        raise PrecisionError(
            f"no nonzero class within probe bound {self.zero_probe_bound}"
        )

    def is_zero_within_probe(self):
        try:
            return self.valuation() is INF
        except PrecisionError:
            return True

    def to_json(self, levels=4):
        return {
            "provenance": self.provenance,
            "field": self.field.descriptor(),
            "cosets": [self.at(v).to_json() for v in range(levels)],
        }


def from_field(field, x):
    """The coherent family of a plain field element (exact at all levels)."""
    x = field.check(x)
    return CoherentElement(
        field,
        lambda level: coset_of(field, x, level),
        exact=True,
        known_valuation=field.valuation(x),
        provenance={"kind": "from_field", "element": field.to_json(x)},
    )


def zero_element(field):
    return from_field(field, field.zero())


def from_cosets(field, chain, *, exact=False, known_valuation=None):
    """Coherent element backed by an explicit per-level chain of classes.

    The chain may be a list (prefix) or a callable; coherence is checked
    lazily at materialization like for any other element.
    """
    if callable(chain):
        gen = chain
    else:
        stored = list(chain)

        def gen(level):
            if level >= len(stored):
                raise PrecisionError(
                    f"chain only materializes levels below {len(stored)}"
                )
            return stored[level]

    return CoherentElement(
        field,
        gen,
        exact=exact,
        known_valuation=known_valuation,
        provenance={"kind": "chain"},
    )


def _add_elements(a, b):
    field = a.field
    va = a.valuation() if not a.is_zero_within_probe() else INF
    vb = b.valuation() if not b.is_zero_within_probe() else INF
    if va is INF and vb is INF:
        out = zero_element(field)
        return out, a.ledger.merged(b.ledger)
    if va is INF or vb is INF:
        src = b if va is INF else a
        ledger = a.ledger.merged(b.ledger)
        out = CoherentElement(
            field,
            src.at,
            exact=src.exact,
            known_valuation=src._valuation,
            zero_probe_bound=src.zero_probe_bound,
            ledger=ledger,
            provenance={"kind": "arith", "op": "add"},
        )
        return out, ledger
    m = min(va, vb)
    bound = max(a.zero_probe_bound, b.zero_probe_bound)

    if a.exact and b.exact:
        # exact representatives are the elements themselves
        s = field.add(a.at(0).rep, b.at(0).rep)
        vs = field.valuation(s)
        if vs is INF:
            return zero_element(field), a.ledger.merged(b.ledger)
        discovered = vs - m
    else:
        # discover the valuation of the sum: a nonzero level sum whose
        # value does not exceed level + m pins it down exactly
        vs = None
        discovered = None
        for level in range(bound + 1):
            s = field.add(a.at(level).rep, b.at(level).rep)
            if not field.is_zero(s):
                v = field.valuation(s)
                if v <= level + m:
                    vs, discovered = v, level
                    break
        if vs is None:
            # indistinguishable from zero within the probe bound
            out = zero_element(field)
            ledger = a.ledger.merged(b.ledger)
            out.provenance = {"kind": "arith", "op": "add", "apparent_zero_at": bound}
            return out, ledger

    loss = vs - m
    entry = LossEntry("add", m, vs, discovered)
    ledger = a.ledger.merged(b.ledger, extra=entry)

    def gen(level):
        q = level + loss
        return coset_of(field, field.add(a.at(q).rep, b.at(q).rep), level)

    out = CoherentElement(
        field,
        gen,
        exact=a.exact and b.exact,
        known_valuation=vs,
        zero_probe_bound=bound,
        ledger=ledger,
        provenance={"kind": "arith", "op": "add"},
    )
    return out, ledger


def _mul_elements(a, b):
    field = a.field
    ledger = a.ledger.merged(b.ledger)
    za, zb = a.is_zero_within_probe(), b.is_zero_within_probe()
    if za or zb:
        return zero_element(field), ledger
    va, vb = a.valuation(), b.valuation()
    out = CoherentElement(
        field,
        lambda level: coset_of(
            field, field.mul(a.at(level).rep, b.at(level).rep), level
        ),
        exact=a.exact and b.exact,
        known_valuation=va + vb,
        zero_probe_bound=max(a.zero_probe_bound, b.zero_probe_bound),
        ledger=ledger,
        provenance={"kind": "arith", "op": "mul"},
    )
    return out, ledger


def _neg_element(a):
    field = a.field
    out = CoherentElement(
        field,
        lambda level: coset_of(field, field.neg(a.at(level).rep), level),
        exact=a.exact,
        known_valuation=a._valuation,
        zero_probe_bound=a.zero_probe_bound,
        ledger=a.ledger,
        provenance={"kind": "arith", "op": "neg"},
    )
    return out, a.ledger


def _inv_element(a):
    field = a.field
    try:
        va = a.valuation()
    except PrecisionError as exc:
        raise PrecisionError(
            f"cannot invert: probe bound {a.zero_probe_bound} reached "
            "without a nonzero witness"
        ) from exc
    if va is INF:
        raise ZeroDivisionError("inverse of the zero element")
    out = CoherentElement(
        field,
        lambda level: coset_of(field, field.inv(a.at(level).rep), level),
        exact=a.exact,
        known_valuation=-va,
        zero_probe_bound=a.zero_probe_bound,
        ledger=a.ledger,
        provenance={"kind": "arith", "op": "inv"},
    )
    return out, a.ledger


def limit_arith(op, a, b=None):
    """Level-wise arithmetic on coherent elements, with its precision ledger.

    add compensates for cancellation by querying the inputs deeper, so
    the delivered level is always exact; mul/neg/inv are loss-free.
    """
    if op == "add":
        return _add_elements(a, b)
    if op == "mul":
        return _mul_elements(a, b)
    if op == "neg":
        return _neg_element(a)
    if op == "inv":
        return _inv_element(a)
    raise ValueError(f"unknown operation: {op!r}")


def limit_add(a, b):
    return limit_arith("add", a, b)


def limit_mul(a, b):
    return limit_arith("mul", a, b)


def limit_neg(a):
    return limit_arith("neg", a)


def limit_inv(a):
    return limit_arith("inv", a)


def limit_eq(a, b, n):
    """Compare two coherent elements through level n.

    A disagreement pinpoints the first separating level with the two
    representatives as witness; agreement up to n is explicitly not a
    proof of equality, only of indistinguishability at that depth.
    """
    if a.field != b.field:
        raise ValueError("elements of different fields")
    for level in range(n + 1):
        ca, cb = a.at(level), b.at(level)
        if not coset_eq(ca, cb):
            return EqResult(False, level, (ca.rep, cb.rep))
    return EqResult(True, n)


def to_approximation(e, n):
    """First n digits of a coherent element, straight from a deep class.

    A class at level n-1 pins the element to relative error beyond
    n-1 + v, which covers the whole n-digit window after the valuation.
    """
    if n < 1:
        raise ValueError("precision must be >= 1")
    v = e.valuation()
    if v is INF:
        return Approximation(0, (0,) * n, e.field.p)
    rep = e.at(max(n - 1, 0)).rep
    return e.field.expand(rep, n)


def rebuild_from_digits(field, appr):
    """Coherent element resummed from a digit window (exact from there on)."""
    return from_field(field, field.from_approximation(appr))


def sigma_embed(x, rf):
    """Embed a foreign element through per-level representatives.

    The element's classes are those of rf(x, level) in the base field;
    the foreign valuation is recorded up front, and any representative
    that breaks value constancy or cross-level agreement is surfaced as
    a ``CoherenceError`` naming the level.
    """
    w = rf.foreign.valuation(x)
    base = rf.base
    return CoherentElement(
        base,
        lambda level: coset_of(base, rf(x, level), level),
        exact=False,
        known_valuation=w,
        provenance={"kind": "sigma", "element": rf.foreign.to_json(x)},
    )


def hensel_finder(ext, base):
    """Representative finder for the quadratic extension over the rationals.

    Representatives are truncations of the embedded digit expansion, one
    digit past the requested level.
    """
    if ext.p != base.p:
        raise ValueError("extension and base disagree on p")
    return RepresentativeFinder(base, ext, lambda x, level: ext.representative(x, level))


def check_singlevalued(a, b, n, rng, chains=8):
    """Every coherent member-choice of a level-wise sum collapses to one element.

    For the sum of a and b, alternative per-level members are sampled
    inside each level's sum descriptor.  A choice that stays coherent
    (and really is a member at every level) must be indistinguishable
    from the canonical sum through level n; a choice that drifts is
    rejected by the compatibility check.  Both outcomes confirm
    single-valuedness; a coherent full member-choice that separates from
    the sum would be a counterexample.
    """
    report = LawReport("singlevalued-sum")
    field = a.field
    total, _ = limit_add(a, b)
    try:
        vs = total.valuation()
    except PrecisionError:
        vs = INF
    if a.is_zero_within_probe() or b.is_zero_within_probe():
        # singleton descriptors at every level: the canonical choice is
        # the only member, nothing to vary
        report.tick()
        if not limit_eq(total, b if a.is_zero_within_probe() else a, n).equal:
            report.fail(law_part="degenerate-sum")
        return report
    m = min(a.valuation(), b.valuation())

    for i in range(chains):
        report.tick()
        unit = field.unit_digit(rng.randrange(8))
        # just past the tightest slack that still keeps membership: for a
        # finite sum value the choice stays coherent and must collapse
        # onto the sum; past total cancellation no coherent choice exists
        off = (vs + 1 - m) if vs is not INF else (1 + rng.randrange(3))

        def gen(level, _u=unit, _off=off):
            bump = field.mul(_u, field.uniformizer_pow(level + m + _off))
            base_rep = total.at(level).rep if vs is not INF else field.zero()
            return coset_of(field, field.add(base_rep, bump), level)

        choice = from_cosets(field, gen, known_valuation=None)
        coherent = True
        member_ok = True
        for level in range(n + 1):
            s = hyperadd(a.at(level), b.at(level))
            try:
                c = choice.at(level)
            except CoherenceError:
                coherent = False
                break
            if not hypersum_contains(s, c):
                member_ok = False
                break
        if not coherent:
            # rejected by the compatibility invariant: consistent collapse
            continue
        if not member_ok:
            # never a full member-choice; says nothing either way
            continue
        verdict = limit_eq(choice, total, n)
        if not verdict.equal:
            report.fail(chain=i, separates_at=verdict.level)
    return report


def check_universal_property(field, samples, sides, candidates, n):
    """Factorization and uniqueness of the map into the family of levels.

    ``sides(x, level)`` is the given per-level class of a vertex element.
    The mediating element is assembled directly from the sides; any
    candidate map that agrees with every side up to level n must be
    indistinguishable from the mediating element, and a candidate that
    disagrees with some side is reported as failing to factor at all.
    """
    report = LawReport("universal-property")

    def mediate(x):
        return CoherentElement(
            field,
            lambda level: sides(x, level),
            exact=False,
            provenance={"kind": "mediating"},
        )

    for x in samples:
        report.tick()
        h = mediate(x)
        try:
            for level in range(n + 1):
                if not coset_eq(h.at(level), sides(x, level)):
                    report.fail(law_part="factorization", element=repr(x), level=level)
                    break
        except CoherenceError as exc:
            report.fail(law_part="cone-coherence", element=repr(x), level=exc.level)
            continue
        for label, make in candidates:
            agrees = True
            first_bad = None
            try:
                e = make(x)
                for level in range(n + 1):
                    if not coset_eq(e.at(level), sides(x, level)):
                        agrees = False
                        first_bad = level
                        break
            except CoherenceError as exc:
                agrees = False
                first_bad = exc.level
            if not agrees:
                report.fail(
                    law_part="not-a-factorization",
                    candidate=label,
                    element=repr(x),
                    level=first_bad,
                )
                continue
            verdict = limit_eq(e, mediate(x), n)
            if not verdict.equal:
                report.fail(
                    law_part="uniqueness",
                    candidate=label,
                    element=repr(x),
                    level=verdict.level,
                )
    return report
