"""Acceptance suites: every headline result exercised at desk scale.

Each criterion is a callable returning a CriterionResult; the CLI props
command and the acceptance test module share them.  All randomness is
seeded, so two runs with the same configuration produce identical
reports.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import factor, finite, idealsys, instances, represent, usc
from .core import seeded_rng
from .errors import LatFactError


@dataclass
class CriterionResult:
    key: str
    name: str
    passed: bool
    detail: str
    elapsed: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.key} {self.name}: {self.detail} ({self.elapsed:.2f}s)"


def _result(key, name, started, failures, detail_ok):
    elapsed = time.perf_counter() - started
    if failures:
        return CriterionResult(key, name, False, "; ".join(failures[:4]), elapsed)
    return CriterionResult(key, name, True, detail_ok, elapsed)


# ---------------------------------------------------------------------------
# localization properties shared by criterion 1 and the module tests
# ---------------------------------------------------------------------------


def localization_checks(L, elems=None) -> dict:
    """The localization identities, quantified over the whole carrier or a
    supplied window.

    Covers: the unit criterion, multiplicativity, meets, fixed powers of
    maximals, recovery as a meet over maximals, residuals of compact
    elements, the prime-meet radical, radical/localization commutation,
    and the radical of a localization at a minimal covering prime.
    """
    elems = list(elems) if elems is not None else L.elements()
    primes = L.primes()
    maxes = L.maximals()
    out = {}

    def record(name, ok, *parts):
        if name not in out:
            out[name] = (True, "")
        if not ok and out[name][0]:
            out[name] = (False, " ".join(L.label(p) for p in parts))

    for p in primes:
        loc = {x: L.localize(x, p) for x in elems}
        for x in elems:
            record("localize_unit_iff_not_below",
                   (loc[x] == L.top) == (not L.leq(x, p)), x, p)
            record("radical_commutes_with_localization",
                   L.radical(loc[x]) == loc[L.radical(x)], x, p)
        def at(ref):
            if ref not in loc:
                loc[ref] = L.localize(ref, p)
            return loc[ref]

        for x in elems:
            for y in elems:
                record("localize_multiplicative",
                       at(L.mul(x, y)) == at(L.mul(loc[x], loc[y])), x, y, p)
                record("localize_meet",
                       at(L.meet2(x, y)) == L.meet2(loc[x], loc[y]), x, y, p)
                if L.is_compact(x):
                    record("residual_localizes_for_compacts",
                           at(L.residual(y, x)) == L.residual(loc[y], loc[x]), y, x, p)
    for m in maxes:
        power = m
        seen = set()
        for _ in range(8):  # power chains repeat on finite carriers only
            if power in seen:
                break
            seen.add(power)
            record("maximal_powers_fixed", L.localize(power, m) == power, m, power)
            power = L.mul(power, m)
    for x in elems:
        record("meet_over_maximals",
               L.meet(L.localize(x, m) for m in maxes) == x, x)
        above = [q for q in primes if L.leq(x, q)]
        record("radical_is_prime_meet", L.radical(x) == L.meet(above), x)
        for p in L.minimal_primes_above(x):
            record("radical_of_minimal_localization",
                   L.radical(L.localize(x, p)) == p, x, p)
    return out


def criterion_axioms_and_localization() -> CriterionResult:
    """Axioms plus the localization identity suite on five divisor lattices."""
    started = time.perf_counter()
    failures = []
    moduli = (8, 12, 30, 36, 360)
    for n in moduli:
        L = finite.materialize_from_divisors(n)
        report = L.validate()
        if not report.all_axioms_pass:
            failures.append(f"zmod:{n} axiom {report.first_failure().name}")
            continue
        for name, (ok, witness) in localization_checks(L).items():
            if not ok:
                failures.append(f"zmod:{n} {name} at {witness}")
    elapsed = time.perf_counter() - started
    if elapsed >= 10.0:
        failures.append(f"runtime {elapsed:.2f}s exceeds 10s")
    return _result("criterion-1", "axioms and localization identities", started,
                   failures, f"all axioms and 8 identities on zmod {moduli}")


def criterion_engine_all_moduli(limit: int = 1000) -> CriterionResult:
    """The factorization engine on every proper ideal of every Z/n."""
    started = time.perf_counter()
    failures = []
    ideals = 0
    for n in range(2, limit + 1):
        L = finite.materialize_from_divisors(n)
        for x in L.elements():
            if x == L.top:
                continue
            ideals += 1
            try:
                chain = factor.radical_factor(L, x)
            except LatFactError as exc:
                failures.append(f"zmod:{n} element {L.label(x)}: {exc}")
                if len(failures) > 3:
                    break
                continue
            if not chain.product_check:
                failures.append(f"zmod:{n} element {L.label(x)}: product check failed")
        if len(failures) > 3:
            break
    elapsed = time.perf_counter() - started
    if elapsed >= 30.0:
        failures.append(f"runtime {elapsed:.2f}s exceeds 30s")
    return _result("criterion-2", "factorization engine over all moduli", started,
                   failures, f"{ideals} proper ideals factored, moduli up to {limit}")


def criterion_sp_agreement() -> CriterionResult:
    """All-true agreement on the positive instances, all-false with the
    expected witnesses on the negative ones."""
    started = time.perf_counter()
    failures = []
    for k in (1, 2, 3, 5):
        L = instances.dedekind(k)
        report = factor.check_sp_conditions(L, "domain-7.7")
        if not report.agreement or set(report.values()) != {True}:
            failures.append(f"dedekind:{k} expected all-true agreement, "
                            f"got {report.values()}")
    neg = [
        (instances.rank2_valuation(), "monoid-8.5", 3, "Limit(0)"),
        (instances.numerical_monoid((2, 3)), "monoid-8.5", 5, "M"),
    ]
    for L, flavor, number, token in neg:
        report = factor.check_sp_conditions(L, flavor)
        if not report.agreement or set(report.values()) != {False}:
            failures.append(f"{L.id} expected all-false agreement, got {report.values()}")
            continue
        witness = next(c.witness for c in report.conditions if c.number == number)
        if not witness or token not in witness:
            failures.append(f"{L.id} condition {number} witness {witness!r} "
                            f"lacks {token!r}")
    return _result("criterion-3", "SP condition agreement", started, failures,
                   "dedekind 1/2/3/5 all-true; rank2 and numerical 2,3 all-false "
                   "with the expected witnesses")


def criterion_unique_chains(samples: int = 200, seed: int = 20240901) -> CriterionResult:
    """Exhaustive chain search agrees with the engine and finds one chain."""
    started = time.perf_counter()
    failures = []
    L = instances.dedekind(3)
    rng = seeded_rng(seed)
    for trial in range(samples):
        vec = {i: rng.randrange(0, 5) for i in range(3)}
        x = L.element(vec)
        search = factor.verify_uniqueness(L, x, bound=5)
        if not search.unique:
            failures.append(f"trial {trial} vector {vec}: {len(search.chains)} chains")
            if len(failures) > 3:
                break
    return _result("criterion-4", "uniqueness of ascending radical chains", started,
                   failures, f"{samples} random exponent vectors, bound 5, one chain each")


def criterion_representation() -> CriterionResult:
    """The function-lattice picture on three primes with a 100-element window."""
    started = time.perf_counter()
    failures = []
    L = instances.dedekind(3)
    window = L.window(budget=100)
    try:
        phi = represent.build_phi(L)
    except LatFactError as exc:
        return _result("criterion-5", "representation of dedekind:3", started,
                       [f"hypotheses: {exc}"], "")
    report = represent.verify_iso(phi, window)
    for check in report.checks:
        if not check.passed:
            failures.append(f"{check.name}: {check.witness}")
    spectrum = phi.spectrum
    maxes = L.maximals()
    nonzero = [x for x in window if x != L.bottom]
    for x in nonzero:
        for y in nonzero:
            for m in maxes:
                if represent.v(L, L.mul(x, y), m) != represent.v(L, x, m) + represent.v(L, y, m):
                    failures.append(f"valuation not additive at {L.label(x)}, {L.label(y)}")
                    break
            else:
                continue
            break
        else:
            continue
        break
    for x in nonzero:
        image = represent.alpha(L, x, spectrum)
        support = {p for p, v_ in image.values if v_}
        expected = {represent.point_of(spectrum, L, m)
                    for m in maxes if L.leq(L.radical(x), m)}
        if support != expected:
            failures.append(f"support of alpha({L.label(x)}) is {support}, "
                            f"expected {expected}")
            break
    return _result("criterion-5", "representation of dedekind:3", started, failures,
                   f"iso checks, valuation additivity and supports over a "
                   f"{len(window)}-element window")


def criterion_usc_suite(per_kind: int = 1000, seed: int = 7) -> CriterionResult:
    """Decompose/recompose round trips, the radical characterization against
    its definitional form, and primality of the bottom."""
    started = time.perf_counter()
    failures = []
    rng = seeded_rng(seed)
    spaces = (usc.finite_discrete(5), usc.countable_discrete(), usc.one_point_compactified())
    for space in spaces:
        for trial in range(per_kind):
            f = usc.random_function(space, rng)
            d = usc.decompose(f)
            if usc.recompose(d) != f:
                failures.append(f"{space.kind} trial {trial}: recompose mismatch")
                break
            chain = d.radical_chain()
            total = usc.USCFun.zero(space)
            for piece in chain:
                ok, _ = usc.is_radical(piece)
                if not ok:
                    failures.append(f"{space.kind} trial {trial}: non-radical factor")
                    break
                total = usc.add(total, piece)
            if total != f:
                failures.append(f"{space.kind} trial {trial}: chain does not sum back")
                break
    probe = usc.finite_discrete(4)
    fragment = list(usc.all_functions(probe, 3))
    for f in fragment:
        flag, _ = usc.is_radical(f)
        definitional = usc.definitional_radical(f, fragment) == f
        if flag != definitional:
            failures.append(f"radical characterization splits at {f.values}")
            break
    b = usc.USCFun.bottom(probe)
    for _ in range(200):
        f = usc.random_function(probe, rng, max_value=3)
        g = usc.random_function(probe, rng, max_value=3)
        if usc.add(f, g).is_bottom:
            failures.append("sum of proper functions hit the bottom")
            break
        if not usc.add(f, b).is_bottom or not usc.add(b, g).is_bottom:
            failures.append("bottom is not absorbing")
            break
    return _result("criterion-6", "usc function lattice suite", started, failures,
                   f"{per_kind} round trips per space kind; radical characterization "
                   f"exhaustive on 4 points, values <= 3")


def criterion_power_sublattice(samples: int = 100, seed: int = 11) -> CriterionResult:
    """The sublattice of elements containing a power of a squarefree j."""
    started = time.perf_counter()
    failures = []
    L = instances.power_of_j_from_int(30)
    rng = seeded_rng(seed)
    indices = list(L.indices)
    for trial in range(samples):
        vec = {i: rng.randrange(0, 5) for i in indices}
        x = L.element(vec)
        search = factor.verify_uniqueness(L, x, bound=6)
        if not search.unique:
            failures.append(f"trial {trial} vector {vec}: {len(search.chains)} chains")
            break
    spectrum = represent.build_spectrum(L)
    reference = represent.MaxSpectrum("reference", usc.finite_discrete(3), True,
                                      points=(0, 1, 2))
    if not represent.homeomorphic(spectrum, reference):
        failures.append("spectrum is not the three-point discrete space")
    try:
        phi = represent.build_phi(L)
        report = represent.verify_iso(phi, L.window(budget=48))
        for check in report.checks:
            if not check.passed:
                failures.append(f"{check.name}: {check.witness}")
    except LatFactError as exc:
        failures.append(f"representation: {exc}")
    for trial in range(20):
        vec = {i: rng.randrange(0, 4) for i in indices}
        x = L.element(vec)
        if x == L.bottom:
            continue
        if not represent.engine_agrees_with_decomposition(L, x):
            failures.append(f"engine/decomposition mismatch at {vec}")
            break
    return _result("criterion-7", "power-of-j sublattice", started, failures,
                   f"{samples} unique factorizations; spectrum of 3 discrete points; "
                   f"iso suite green")


def criterion_ideal_systems() -> CriterionResult:
    """The s-system on the multiplicative monoid mod 4 and the ring system
    mod 12: axioms, modularity, the invertibility bridge, and the carrier
    comparison with the divisor lattice."""
    started = time.perf_counter()
    failures = []
    s4 = idealsys.WeakIdealSystem.s_system(idealsys.zmod_mult_monoid(4))
    d12 = idealsys.WeakIdealSystem.d_system(idealsys.zmod_mult_monoid(12),
                                            idealsys.zmod_addition(12))
    for system in (s4, d12):
        report = idealsys.validate_system(system)
        if not report.all_axioms_pass:
            failures.append(f"{system.name}: axiom failure")
            continue
        if not report.is_modular:
            failures.append(f"{system.name}: not modular")
        failures.extend(_invertibility_bridge(system))
    if s4.closure(idealsys.mask_of([2])) != idealsys.mask_of([0, 2]):
        failures.append("s-closure of {2} in zmod-mult:4 is wrong")
    # carrier comparison: ring ideals of zmod 12 against the divisor table
    lattice = idealsys.build_ideal_lattice(d12)
    divisors = finite.materialize_from_divisors(12)
    mapping = {}
    for i, d in enumerate(int(lbl) for lbl in divisors.labels):
        mask = idealsys.mask_of((d * k) % 12 for k in range(12))
        if mask not in lattice.ideal_masks:
            failures.append(f"divisor {d} has no matching ring ideal")
            break
        mapping[i] = lattice.ideal_masks.index(mask)
    if len(mapping) == divisors.n == lattice.n:
        for i in range(divisors.n):
            for j in range(divisors.n):
                if divisors._leq[i][j] != lattice._leq[mapping[i]][mapping[j]]:
                    failures.append(f"order tables differ at ({i},{j})")
                if mapping[divisors._mul[i][j]] != lattice._mul[mapping[i]][mapping[j]]:
                    failures.append(f"mul tables differ at ({i},{j})")
    else:
        failures.append("carrier sizes differ between the two mod-12 lattices")
    elapsed = time.perf_counter() - started
    if elapsed >= 10.0:
        failures.append(f"runtime {elapsed:.2f}s exceeds 10s")
    return _result("criterion-8", "ideal system suite", started, failures,
                   "axioms, modularity, invertibility bridge, and the mod-12 "
                   "carrier comparison")


def _invertibility_bridge(system) -> list:
    """The three-way bridge between system invertibility and the lattice
    predicates, checked over every ideal of both materialized lattices."""
    failures = []
    lattice = idealsys.build_ideal_lattice(system)
    masks = lattice.ideal_masks
    records = {m: lattice.element_predicates(lattice.ref(i))
               for i, m in enumerate(masks)}
    invertible = {m: system.r_invertible(m)[0] for m in masks}
    for m in masks:
        if invertible[m]:
            rec = records[m]
            if not (rec.weak_meet_principal and rec.cancellative):
                failures.append(
                    f"{system.name}: invertible ideal {system.monoid.set_label(m)} "
                    f"is not weak meet principal cancellative")
            if not rec.ell_invertible:  # the system is modular here
                failures.append(
                    f"{system.name}: invertible ideal {system.monoid.set_label(m)} "
                    f"fails lattice invertibility")
    regular = idealsys.build_ideal_lattice(system, regular_only=True)
    for i, m in enumerate(regular.ideal_masks):
        rec = regular.element_predicates(regular.ref(i))
        if rec.ell_invertible and not system.r_invertible(m)[0]:
            failures.append(
                f"{system.name}: regular-lattice invertible "
                f"{system.monoid.set_label(m)} is not system-invertible")
    return failures


def criterion_mutation_detection(seed: int = 5) -> CriterionResult:
    """Twenty single-entry corruptions, all caught with witnesses."""
    started = time.perf_counter()
    failures = []
    rng = seeded_rng(seed)
    doc = finite.save(finite.materialize_from_divisors(12))
    detected = 0
    for trial in range(10):
        mutated = {"name": doc["name"], "elements": list(doc["elements"]),
                   "leq": [row[:] for row in doc["leq"]],
                   "mul": [row[:] for row in doc["mul"]]}
        n = len(doc["elements"])
        if trial < 6:
            i, j = rng.randrange(n), rng.randrange(n)
            old = mutated["mul"][i][j]
            mutated["mul"][i][j] = (old + 1 + rng.randrange(n - 1)) % n
        else:
            i, j = rng.randrange(n), rng.randrange(n)
            mutated["leq"][i][j] = 1 - mutated["leq"][i][j]
        report = finite.validate_document(mutated)
        if report.all_axioms_pass:
            failures.append(f"lattice mutation {trial} went undetected")
        else:
            bad = report.first_failure()
            if bad.witness is None and not bad.detail:
                failures.append(f"lattice mutation {trial} detected without witness")
            else:
                detected += 1
    s4 = idealsys.WeakIdealSystem.s_system(idealsys.zmod_mult_monoid(4))
    table = dict(s4.materialized)
    for trial in range(10):
        mutated_table = dict(table)
        mask = rng.randrange(1, 1 << 4)
        old = mutated_table[mask]
        flip = 1 << rng.randrange(4)
        mutated_table[mask] = old ^ flip
        system = idealsys.WeakIdealSystem.from_table(s4.monoid, mutated_table,
                                                     name="mutated-s")
        report = idealsys.validate_system(system)
        if report.all_axioms_pass:
            failures.append(f"system mutation {trial} (mask {mask}) went undetected")
        else:
            bad = next(e for e in report.entries
                       if e.name.startswith("axiom") and not e.passed)
            if bad.witness is None:
                failures.append(f"system mutation {trial} detected without witness")
            else:
                detected += 1
    if detected != 20 and not failures:
        failures.append(f"only {detected}/20 mutations detected")
    return _result("criterion-9", "mutation detection", started, failures,
                   f"{detected}/20 injected corruptions caught with witnesses")


CRITERIA = {
    "1": criterion_axioms_and_localization,
    "2": criterion_engine_all_moduli,
    "3": criterion_sp_agreement,
    "4": criterion_unique_chains,
    "5": criterion_representation,
    "6": criterion_usc_suite,
    "7": criterion_power_sublattice,
    "8": criterion_ideal_systems,
    "9": criterion_mutation_detection,
}


def run_criteria(keys=None) -> list:
    results = []
    for key in keys or sorted(CRITERIA):
        results.append(CRITERIA[key]())
    return results
