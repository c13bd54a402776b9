import pytest

from latfact import finite, instances


@pytest.fixture(scope="session")
def zmod12():
    return finite.materialize_from_divisors(12)


@pytest.fixture(scope="session")
def dedekind3():
    return instances.dedekind(3)


class ZModSetOracle:
    """Independent arithmetic over the ideals of Z/n as explicit subsets.

    Products, residuals and radicals are computed from the ring elements
    so the divisor-table lattice can be checked against something that
    never looks at gcd formulas.
    """

    def __init__(self, n):
        self.n = n
        self.ideals = {}
        for d in range(1, n + 1):
            if n % d == 0:
                self.ideals[d] = frozenset((d * k) % n for k in range(n))

    def generated(self, elements):
        current = set(elements) | {0}
        while True:
            nxt = set(current)
            nxt.update((a + b) % self.n for a in current for b in current)
            nxt.update((r * a) % self.n for r in range(self.n) for a in current)
            if nxt == current:
                return frozenset(current)
            current = nxt

    def product(self, d, e):
        pairs = {(a * b) % self.n for a in self.ideals[d] for b in self.ideals[e]}
        return self.generated(pairs)

    def residual(self, d, e):
        keep = {r for r in range(self.n)
                if all((r * a) % self.n in self.ideals[d] for a in self.ideals[e])}
        return frozenset(keep)

    def radical(self, d):
        target = self.ideals[d]
        keep = set()
        for r in range(self.n):
            power = 1
            for _ in range(self.n):
                power = (power * r) % self.n
                if power in target:
                    keep.add(r)
                    break
        return frozenset(keep)

    def divisor_of(self, subset):
        for d, members in self.ideals.items():
            if members == subset:
                return d
        raise AssertionError(f"subset {sorted(subset)} is not an ideal of Z/{self.n}")


@pytest.fixture(scope="session")
def zmod12_oracle():
    return ZModSetOracle(12)
