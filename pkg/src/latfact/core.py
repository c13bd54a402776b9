"""Language-level contract for multiplicative lattices.

A multiplicative lattice here is a complete lattice carrying a commutative
monoid multiplication whose identity is the top element and which
distributes over arbitrary joins.  Backends come in two kinds:

* finite, table-driven lattices that quantify exhaustively, and
* presented infinite lattices (``instances``) whose operations are closed
  forms and whose quantifiers run over a recorded :class:`TestWindow`.

Derived operations (residual, radical, localization, the principal-element
predicate family, dimension) have generic exhaustive implementations in
this module; instance backends override them with closed forms and remain
answerable to the defining formulas on their windows.

Lattice contexts are immutable after construction and every operation is
a pure read (the internal caches only memoize); concurrent use needs no
synchronization, and reports iterate elements in canonical order so the
output does not depend on evaluation order.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Optional, Sequence

from .errors import CapabilityMissing, ForeignElement, InvariantViolation, NotPrime


@dataclass(frozen=True)
class ElemRef:
    """Opaque handle naming one element of a specific lattice context.

    Handles compare equal only inside one context; every backend operation
    rejects handles carrying a foreign ``lattice_id``.
    """

    lattice_id: str
    key: Hashable


@dataclass(frozen=True)
class Capabilities:
    """What a backend can enumerate, plus declared structural flags.

    Declared flags are backed either by exhaustive verification (finite
    backends) or by the justification notes recorded here.
    """

    finite_enumerable: bool = False
    primes_enumerable: bool = False
    maximals_enumerable: bool = False
    domain_declared: bool = False
    modular_declared: bool = False
    c_lattice_declared: bool = False
    element_count: Optional[int] = None  # None means infinite
    notes: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class TestWindow:
    """Finite quantification surface for an infinite presented lattice.

    Contains top and bottom and is closed under pairwise mul/join/meet up
    to the size budget under which it was generated; verdicts obtained by
    quantifying over a window are labelled "window-verified", never proved.
    """

    sample: tuple[ElemRef, ...]
    generation_note: str

    __test__ = False  # keep pytest collection away from the Test- prefix

    def __iter__(self):
        return iter(self.sample)

    def __len__(self):
        return len(self.sample)


PREDICATE_NAMES = (
    "cancellative",
    "weak_meet_principal",
    "meet_principal",
    "weak_join_principal",
    "join_principal",
    "ell_principal",
    "ell_invertible",
    "compact",
    "ell_radical",
    "ell_prime",
    "maximal",
)


@dataclass
class PredicateRecord:
    """Element predicate flags with a witness for every false flag.

    ``ell_principal`` is meet principal and join principal together;
    ``ell_invertible`` adds cancellativity.  ``mode`` records whether the
    quantified flags were evaluated exhaustively or over a window.
    """

    element: ElemRef
    mode: str  # "exhaustive" | "window-verified"
    cancellative: bool = True
    weak_meet_principal: bool = True
    meet_principal: bool = True
    weak_join_principal: bool = True
    join_principal: bool = True
    ell_principal: bool = True
    ell_invertible: bool = True
    compact: bool = True
    ell_radical: bool = True
    ell_prime: bool = True
    maximal: bool = True
    witnesses: dict = field(default_factory=dict)

    def flag(self, name: str) -> bool:
        return getattr(self, name)


@dataclass
class LatticePredicates:
    """Whole-lattice flags: modularity, domain, principal generation."""

    mode: str
    modular: bool
    domain: bool
    principally_generated: bool
    witnesses: dict = field(default_factory=dict)


class MultLattice:
    """Abstract multiplicative lattice backend.

    Subclasses provide the primitive operations (order, mul, binary join
    and meet, top/bottom) and enumeration or window machinery; the derived
    operations below work for any finite backend and are overridden with
    closed forms by the shipped instances.
    """

    def __init__(self, lattice_id: str, capabilities: Capabilities):
        self.id = lattice_id
        self.capabilities = capabilities
        self._radical_cache: dict = {}
        self._localize_cache: dict = {}
        self._primes_cache: Optional[list] = None
        self._maximals_cache: Optional[list] = None

    # ------------------------------------------------------------------
    # primitives
    # ------------------------------------------------------------------

    @property
    def top(self) -> ElemRef:
        raise NotImplementedError

    @property
    def bottom(self) -> ElemRef:
        raise NotImplementedError

    def leq(self, x: ElemRef, y: ElemRef) -> bool:
        raise NotImplementedError

    def mul(self, x: ElemRef, y: ElemRef) -> ElemRef:
        raise NotImplementedError

    def join2(self, x: ElemRef, y: ElemRef) -> ElemRef:
        raise NotImplementedError

    def meet2(self, x: ElemRef, y: ElemRef) -> ElemRef:
        raise NotImplementedError

    def label(self, x: ElemRef) -> str:
        return repr(x.key)

    # ------------------------------------------------------------------
    # enumeration surface
    # ------------------------------------------------------------------

    def elements(self) -> Sequence[ElemRef]:
        raise CapabilityMissing(f"{self.id}: carrier is not finitely enumerable")

    def window(self, budget: int = 48, seed: int = 0) -> TestWindow:
        """Quantification sample; finite backends return the whole carrier."""
        if self.capabilities.finite_enumerable:
            return TestWindow(tuple(self.elements()), "entire finite carrier")
        raise CapabilityMissing(f"{self.id}: no window generator")

    def is_compact(self, x: ElemRef) -> bool:
        """Compactness; exhaustively true on finite carriers, declared on
        instances with a justification note in the capabilities."""
        self._own(x)
        if self.capabilities.finite_enumerable:
            return True
        raise CapabilityMissing(f"{self.id}: no compactness declaration")

    # ------------------------------------------------------------------
    # guards and folds
    # ------------------------------------------------------------------

    def _own(self, *refs: ElemRef) -> None:
        for ref in refs:
            if not isinstance(ref, ElemRef) or ref.lattice_id != self.id:
                raise ForeignElement(f"element {ref!r} does not belong to lattice {self.id!r}")

    def join(self, refs: Iterable[ElemRef]) -> ElemRef:
        """Finite join fold; the empty join is the bottom element."""
        acc = self.bottom
        for ref in refs:
            acc = self.join2(acc, ref)
        return acc

    def meet(self, refs: Iterable[ElemRef]) -> ElemRef:
        """Finite meet fold; the empty meet is the top element."""
        acc = self.top
        for ref in refs:
            acc = self.meet2(acc, ref)
        return acc

    def power(self, x: ElemRef, n: int) -> ElemRef:
        self._own(x)
        acc = self.top
        for _ in range(n):
            acc = self.mul(acc, x)
        return acc

    def lt(self, x: ElemRef, y: ElemRef) -> bool:
        return self.leq(x, y) and x != y

    # ------------------------------------------------------------------
    # derived operations (generic exhaustive forms)
    # ------------------------------------------------------------------

    def residual(self, y: ElemRef, x: ElemRef) -> ElemRef:
        """Largest a with a*x <= y, computed as the join over all such a."""
        self._own(y, x)
        return self.join(a for a in self.elements() if self.leq(self.mul(a, x), y))

    def radical(self, x: ElemRef) -> ElemRef:
        """Join of all y with some power below x.

        Finite backends compute both the power-join form and the meet of
        the primes above x and insist the two agree; the prime-meet value
        is returned.
        """
        self._own(x)
        cached = self._radical_cache.get(x)
        if cached is not None:
            return cached
        qualifiers = [y for y in self.elements() if self._some_power_below(y, x)]
        by_powers = self.join(qualifiers)
        by_primes = self.meet(q for q in self.primes() if self.leq(x, q))
        if by_powers != by_primes:
            raise InvariantViolation(
                f"{self.id}: radical forms disagree at {self.label(x)}: "
                f"power-join {self.label(by_powers)} vs prime-meet {self.label(by_primes)}"
            )
        self._radical_cache[x] = by_primes
        return by_primes

    def _some_power_below(self, y: ElemRef, x: ElemRef) -> bool:
        seen = set()
        cur = y
        while cur not in seen:
            if self.leq(cur, x):
                return True
            seen.add(cur)
            cur = self.mul(cur, y)
        return False

    def localize(self, x: ElemRef, p: ElemRef) -> ElemRef:
        """Join of compact a admitting a compact b not below p with a*b <= x."""
        self._own(x, p)
        if not self.is_prime_elem(p):
            raise NotPrime(f"{self.label(p)} is not a prime element of {self.id}")
        key = (x, p)
        cached = self._localize_cache.get(key)
        if cached is not None:
            return cached
        carrier = list(self.elements())
        outside = [b for b in carrier if not self.leq(b, p)]
        result = self.join(
            a for a in carrier if any(self.leq(self.mul(a, b), x) for b in outside)
        )
        self._localize_cache[key] = result
        return result

    # ------------------------------------------------------------------
    # prime / maximal structure
    # ------------------------------------------------------------------

    def is_prime_elem(self, p: ElemRef) -> bool:
        self._own(p)
        if p == self.top:
            return False
        for a, b in itertools.combinations_with_replacement(self.elements(), 2):
            if self.leq(self.mul(a, b), p) and not (self.leq(a, p) or self.leq(b, p)):
                return False
        return True

    def is_maximal_elem(self, m: ElemRef) -> bool:
        self._own(m)
        if m == self.top:
            return False
        return not any(self.lt(m, y) and y != self.top for y in self.elements())

    def is_radical_elem(self, x: ElemRef) -> bool:
        return self.radical(x) == x

    def primes(self) -> list[ElemRef]:
        if self._primes_cache is None:
            if not self.capabilities.finite_enumerable:
                raise CapabilityMissing(f"{self.id}: prime catalog unavailable")
            self._primes_cache = [p for p in self.elements() if self.is_prime_elem(p)]
        return self._primes_cache

    def maximals(self) -> list[ElemRef]:
        if self._maximals_cache is None:
            if not self.capabilities.finite_enumerable:
                raise CapabilityMissing(f"{self.id}: maximal catalog unavailable")
            self._maximals_cache = [m for m in self.elements() if self.is_maximal_elem(m)]
        return self._maximals_cache

    def minimal_primes_above(self, x: ElemRef) -> list[ElemRef]:
        self._own(x)
        above = [p for p in self.primes() if self.leq(x, p)]
        return [p for p in above if not any(self.lt(q, p) for q in above)]

    def dimension(self) -> int:
        """Length of the longest chain of prime elements, minus one."""
        primes = self.primes()
        order = sorted(range(len(primes)), key=lambda i: sum(
            1 for j in range(len(primes)) if self.leq(primes[j], primes[i])
        ))
        height = [1] * len(primes)
        for pos, i in enumerate(order):
            for j in order[:pos]:
                if self.lt(primes[j], primes[i]):
                    height[i] = max(height[i], height[j] + 1)
        return max(height, default=0) - 1

    # ------------------------------------------------------------------
    # predicate family
    # ------------------------------------------------------------------

    def _quantifier_sample(self, sample: Optional[TestWindow]) -> tuple[tuple[ElemRef, ...], str]:
        if sample is not None:
            return tuple(sample.sample), "window-verified"
        if self.capabilities.finite_enumerable:
            return tuple(self.elements()), "exhaustive"
        return tuple(self.window().sample), "window-verified"

    def element_predicates(self, x: ElemRef, sample: Optional[TestWindow] = None) -> PredicateRecord:
        """Evaluate the full predicate family at x from the defining formulas.

        Quantified flags run over the whole carrier (finite backends) or a
        window; compactness, primality and maximality use the backend's
        exact catalogs where they exist.  A witness is recorded for every
        false flag.
        """
        self._own(x)
        refs, mode = self._quantifier_sample(sample)
        rec = PredicateRecord(element=x, mode=mode)
        zero_res = self.residual(self.bottom, x)
        mul_x = {y: self.mul(x, y) for y in refs}
        res_to_x = {y: self.residual(y, x) for y in refs}

        first_with_product: dict = {}
        for y in refs:
            other = first_with_product.setdefault(mul_x[y], y)
            if other != y:
                rec.cancellative = False
                rec.witnesses["cancellative"] = (other, y)
                break

        for y in refs:
            if self.meet2(x, y) != self.mul(res_to_x[y], x):
                rec.weak_meet_principal = False
                rec.witnesses["weak_meet_principal"] = (y,)
                break

        if not rec.weak_meet_principal:
            rec.meet_principal = False  # meet principal implies the weak form
            rec.witnesses["meet_principal"] = rec.witnesses["weak_meet_principal"]
        else:
            for y, z in itertools.product(refs, refs):
                if self.meet2(y, mul_x[z]) != self.mul(self.meet2(res_to_x[y], z), x):
                    rec.meet_principal = False
                    rec.witnesses["meet_principal"] = (y, z)
                    break

        for y in refs:
            if not self.leq(self.residual(mul_x[y], x), self.join2(y, zero_res)):
                rec.weak_join_principal = False
                rec.witnesses["weak_join_principal"] = (y,)
                break

        if not rec.weak_join_principal:
            rec.join_principal = False  # join principal implies the weak form
            rec.witnesses["join_principal"] = rec.witnesses["weak_join_principal"]
        else:
            for y, z in itertools.product(refs, refs):
                if self.join2(y, res_to_x[z]) != self.residual(
                    self.join2(mul_x[y], z), x
                ):
                    rec.join_principal = False
                    rec.witnesses["join_principal"] = (y, z)
                    break

        rec.ell_principal = rec.meet_principal and rec.join_principal
        if not rec.ell_principal:
            rec.witnesses.setdefault(
                "ell_principal",
                rec.witnesses.get("meet_principal", rec.witnesses.get("join_principal")),
            )
        rec.ell_invertible = rec.ell_principal and rec.cancellative
        if not rec.ell_invertible:
            rec.witnesses.setdefault(
                "ell_invertible",
                rec.witnesses.get("ell_principal", rec.witnesses.get("cancellative")),
            )

        rec.compact = self.is_compact(x)
        rec.ell_radical = self.is_radical_elem(x)
        if not rec.ell_radical:
            rec.witnesses["ell_radical"] = (self.radical(x),)
        rec.ell_prime = self.is_prime_elem(x)
        rec.maximal = self.is_maximal_elem(x)
        return rec

    def lattice_predicates(self, sample: Optional[TestWindow] = None) -> LatticePredicates:
        """Modularity, domain, and principal generation over the sample."""
        refs, mode = self._quantifier_sample(sample)
        out = LatticePredicates(mode=mode, modular=True, domain=True, principally_generated=True)

        for x, y, z in itertools.product(refs, refs, refs):
            if self.leq(x, z) and self.meet2(self.join2(x, y), z) != self.join2(x, self.meet2(y, z)):
                out.modular = False
                out.witnesses["modular"] = (x, y, z)
                break

        for a, b in itertools.combinations_with_replacement(refs, 2):
            if a != self.bottom and b != self.bottom and self.mul(a, b) == self.bottom:
                out.domain = False
                out.witnesses["domain"] = (a, b)
                break

        hook = getattr(self, "principal_join_below", None)
        if hook is not None:
            # the backend knows the join of the principal elements below x
            # in the full lattice; windows cannot attain such joins when
            # they are proper limits of principals
            out.witnesses["principally_generated_scope"] = "closed-form"
            for x in refs:
                if hook(x) != x:
                    out.principally_generated = False
                    out.witnesses["principally_generated"] = (x,)
                    break
        else:
            window = TestWindow(refs, "shared predicate sample")
            principal = [r for r in refs if self.element_predicates(r, window).ell_principal]
            for x in refs:
                below = [p for p in principal if self.leq(p, x)]
                if self.join(below) != x:
                    out.principally_generated = False
                    out.witnesses["principally_generated"] = (x,)
                    break
        return out


def grow_window(
    lattice: MultLattice,
    seeds: Sequence[ElemRef],
    budget: int,
    note: str,
    extra: Sequence[ElemRef] = (),
) -> TestWindow:
    """Deterministically close a seed sample under mul/join/meet up to budget.

    Elements are kept in first-seen order with top, bottom and the seeds in
    front, so reports quantified over the window are reproducible.
    """
    ordered: list[ElemRef] = []
    seen = set()

    def add(ref):
        if ref not in seen:
            seen.add(ref)
            ordered.append(ref)

    add(lattice.top)
    add(lattice.bottom)
    for ref in seeds:
        add(ref)
    for ref in extra:
        add(ref)
    frontier = 0
    while len(ordered) < budget:
        before = len(ordered)
        pool = list(ordered)
        for a in pool[frontier:]:
            for b in pool:
                for combined in (lattice.mul(a, b), lattice.join2(a, b), lattice.meet2(a, b)):
                    add(combined)
                    if len(ordered) >= budget:
                        break
                if len(ordered) >= budget:
                    break
            if len(ordered) >= budget:
                break
        if len(ordered) == before:
            break
        frontier = before
    return TestWindow(tuple(ordered), note)


def seeded_rng(seed: int) -> random.Random:
    """Local RNG so sampled suites never touch global random state."""
    return random.Random(seed)
