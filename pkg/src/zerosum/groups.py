"""Finite abelian groups in invariant-factor form.

A group is represented by its invariant factors (n_1 | n_2 | ... | n_r, all
>= 2); ``make_group`` normalizes an arbitrary factor list into this form via
prime-power decomposition.  Elements are immutable coordinate tuples with
componentwise arithmetic.  The module also provides the structural constants
used throughout the package (exponent, order, the combinatorial lower bound
``d_star``) and brute-force automorphism enumeration for homocyclic groups.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    GroupMismatchError,
    InvalidFactorError,
    InvalidInputError,
    ResourceLimitError,
    UnsupportedGroupError,
)

# Groups larger than this are refused by the enumerators so that downstream
# tables stay bounded.
ENUMERATION_CAP = 10**6


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (orders here are small)."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class GroupSpec:
    """C_{n_1} + ... + C_{n_r} with 1 < n_1 | n_2 | ... | n_r.

    The empty factor tuple is the trivial group.  Construct directly only
    with a valid divisibility chain; use ``make_group`` to normalize.
    """

    factors: tuple[int, ...] = ()

    def __post_init__(self):
        for n in self.factors:
            if not isinstance(n, int) or n < 2:
                raise InvalidFactorError(f"factors must be integers >= 2: {self.factors}")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise InvalidFactorError(f"not a divisibility chain: {self.factors}")

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def exponent(self) -> int:
        return self.factors[-1] if self.factors else 1

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    def is_homocyclic(self) -> bool:
        return self.rank >= 1 and len(set(self.factors)) == 1

    def p_group_prime(self) -> int | None:
        """The prime p if |G| is a nontrivial power of p, else None."""
        if not self.factors:
            return None
        primes = factorize(self.order)
        if len(primes) == 1:
            return next(iter(primes))
        return None

    def element(self, coords) -> "GroupElement":
        coords = tuple(coords)
        if len(coords) != self.rank:
            raise InvalidInputError(
                f"expected {self.rank} coordinates, got {len(coords)}"
            )
        return GroupElement(self, tuple(c % n for c, n in zip(coords, self.factors)))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def e(self, i: int) -> "GroupElement":
        """The i-th standard generator (1-based)."""
        if not 1 <= i <= self.rank:
            raise InvalidInputError(f"basis index {i} out of range 1..{self.rank}")
        return GroupElement(self, tuple(1 if j == i - 1 else 0 for j in range(self.rank)))

    def __str__(self) -> str:
        if not self.factors:
            return "C1"
        parts = []
        for n, run in itertools.groupby(self.factors):
            count = len(list(run))
            parts.append(f"C{n}^{count}" if count > 1 else f"C{n}")
        return "x".join(parts)


@dataclass(frozen=True)
class GroupElement:
    """An element of a GroupSpec; coordinates are stored reduced."""

    group: GroupSpec
    coords: tuple[int, ...]

    def __post_init__(self):
        fs = self.group.factors
        if len(self.coords) != len(fs):
            raise InvalidInputError("coordinate count does not match group rank")
        if any(not 0 <= c < n for c, n in zip(self.coords, fs)):
            raise InvalidInputError(f"coordinates not reduced: {self.coords}")

    def _check(self, other: "GroupElement"):
        if self.group != other.group:
            raise GroupMismatchError(f"{self.group} vs {other.group}")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(
            self.group,
            tuple((a + b) % n for a, b, n in zip(self.coords, other.coords, self.group.factors)),
        )

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(
            self.group,
            tuple((a - b) % n for a, b, n in zip(self.coords, other.coords, self.group.factors)),
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(
            self.group, tuple((-a) % n for a, n in zip(self.coords, self.group.factors))
        )

    def __rmul__(self, c: int) -> "GroupElement":
        return GroupElement(
            self.group, tuple((c * a) % n for a, n in zip(self.coords, self.group.factors))
        )

    def __lt__(self, other: "GroupElement") -> bool:
        return self.coords < other.coords

    def order(self) -> int:
        return math.lcm(*(n // math.gcd(c, n) for c, n in zip(self.coords, self.group.factors))) if self.coords else 1

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coords)


# --- module-level operations ----------------------------------------------


def make_group(raw_factors) -> GroupSpec:
    """Normalize a factor list to invariant-factor form.

    Decomposes each factor into prime powers and remerges them so that the
    result is a divisibility chain presenting the same group, e.g.
    [2, 3] -> (6,) and [4, 2] -> (2, 4).
    """
    per_prime: dict[int, list[int]] = {}
    for n in raw_factors:
        if not isinstance(n, int) or n < 2:
            raise InvalidFactorError(f"factors must be integers >= 2: {list(raw_factors)}")
        for p, e in factorize(n).items():
            per_prime.setdefault(p, []).append(e)
    for exps in per_prime.values():
        exps.sort(reverse=True)
    depth = max((len(v) for v in per_prime.values()), default=0)
    invariant = []
    for i in range(depth):
        f = 1
        for p, exps in per_prime.items():
            if i < len(exps):
                f *= p ** exps[i]
        invariant.append(f)
    invariant.reverse()
    return GroupSpec(tuple(invariant))


def add(a: GroupElement, b: GroupElement) -> GroupElement:
    return a + b


def neg(a: GroupElement) -> GroupElement:
    return -a


def scalar_mul(c: int, a: GroupElement) -> GroupElement:
    return c * a


def zero(G: GroupSpec) -> GroupElement:
    return G.zero()


def order(a: GroupElement) -> int:
    return a.order()


def d_star(G: GroupSpec) -> int:
    """1 + sum(n_i - 1): the classical lower bound for the Davenport constant."""
    return 1 + sum(n - 1 for n in G.factors)


def d_equals_dstar_known(G: GroupSpec) -> bool:
    """True iff G belongs to a family where the Davenport constant is known
    to equal d_star(G); False means unknown, not a strict inequality."""
    fs = G.factors
    r = G.rank
    if r <= 2:
        return True
    if G.p_group_prime() is not None:
        return True
    # p-group direct-summed with a coprime cyclic factor, provided the p-part
    # G' satisfies d_star(G') <= 2*exp(G') - 1.  The coprime part is cyclic
    # exactly when every factor below the top one is a power of one prime.
    head = factorize(fs[0])
    if len(head) == 1:
        (p,) = head
        if all(len(factorize(n)) == 1 and n % p == 0 for n in fs[:-1]):
            top_p = p ** factorize(fs[-1]).get(p, 0)
            p_part = [*fs[:-1], top_p] if top_p > 1 else list(fs[:-1])
            exp_p = max(p_part)
            if 1 + sum(n - 1 for n in p_part) <= 2 * exp_p - 1:
                return True
    if r == 3:
        if fs[0] == 2:
            return True
        if fs[0] == 3 and fs[1] % 6 == 0:
            return True
        if all(n % 2 == 0 for n in fs):
            odd_primes = set()
            for n in fs:
                odd_primes.update(factorize(n // 2))
            if len(odd_primes) <= 1:
                return True
    if r == 4 and fs[:3] == (2, 2, 2):
        return True
    return False


def enumerate_elements(G: GroupSpec):
    """All elements in lexicographic coordinate order (zero first)."""
    if G.order > ENUMERATION_CAP:
        raise ResourceLimitError(f"group order {G.order} exceeds enumeration cap")
    for coords in itertools.product(*(range(n) for n in G.factors)):
        yield GroupElement(G, coords)


def _det(mat: list[list[int]]) -> int:
    n = len(mat)
    if n == 0:
        return 1
    if n == 1:
        return mat[0][0]
    total = 0
    for j in range(n):
        if mat[0][j]:
            minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
            total += (-1) ** j * mat[0][j] * _det(minor)
    return total


@dataclass(frozen=True)
class Automorphism:
    """An automorphism of a homocyclic group C_n^r, given as an invertible
    r x r matrix over Z_n acting by phi(a)_i = sum_j M[i][j] a_j."""

    group: GroupSpec
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.group.is_homocyclic():
            raise UnsupportedGroupError("automorphisms implemented for homocyclic groups only")
        n = self.group.exponent
        r = self.group.rank
        if len(self.matrix) != r or any(len(row) != r for row in self.matrix):
            raise InvalidInputError("matrix shape does not match group rank")
        if math.gcd(_det([list(row) for row in self.matrix]) % n, n) != 1:
            raise InvalidInputError("matrix is not invertible mod n")

    def apply(self, a: GroupElement) -> GroupElement:
        if a.group != self.group:
            raise GroupMismatchError(f"{a.group} vs {self.group}")
        n = self.group.exponent
        return GroupElement(
            self.group,
            tuple(sum(m * c for m, c in zip(row, a.coords)) % n for row in self.matrix),
        )

    def __call__(self, a: GroupElement) -> GroupElement:
        return self.apply(a)


def enumerate_automorphisms(G: GroupSpec):
    """All automorphisms of a homocyclic group, by brute force over matrices.

    Deterministic order (row-major lexicographic over entries); the identity
    is always among the results.
    """
    if not G.is_homocyclic():
        raise UnsupportedGroupError("automorphisms implemented for homocyclic groups only")
    n = G.exponent
    r = G.rank
    if n ** (r * r) > ENUMERATION_CAP:
        raise ResourceLimitError(f"{n}^{r * r} candidate matrices exceed the enumeration cap")
    for flat in itertools.product(range(n), repeat=r * r):
        mat = tuple(flat[i * r : (i + 1) * r] for i in range(r))
        if math.gcd(_det([list(row) for row in mat]) % n, n) != 1:
            continue
        yield Automorphism(G, mat)


# --- group-spec grammar ----------------------------------------------------

_TERM_RE = re.compile(r"^[Cc]?(\d+)(?:\^(\d+))?$")


def parse_group(text: str) -> GroupSpec:
    """Parse 'C3^3', 'C2xC4', or '2,4' into a normalized GroupSpec."""
    text = text.strip()
    if not text:
        raise InvalidInputError("empty group spec")
    raw: list[int] = []
    if "," in text:
        for part in text.split(","):
            part = part.strip()
            if not part.isdigit():
                raise InvalidInputError(f"bad group factor: {part!r}")
            raw.append(int(part))
    else:
        for token in re.split(r"[xX]", text):
            m = _TERM_RE.match(token.strip())
            if not m:
                raise InvalidInputError(f"bad group term: {token!r}")
            n = int(m.group(1))
            rep = int(m.group(2)) if m.group(2) else 1
            raw.extend([n] * rep)
    return make_group(raw)


# --- indexed tables (internal) ---------------------------------------------


class GroupTable:
    """Indexed view of a small group: elements in enumeration order, the
    negation permutation, and per-element addition permutations."""

    __slots__ = ("group", "elements", "index", "neg", "_add_rows")

    def __init__(self, G: GroupSpec):
        if G.order > ENUMERATION_CAP:
            raise ResourceLimitError(f"group order {G.order} exceeds enumeration cap")
        self.group = G
        self.elements = tuple(itertools.product(*(range(n) for n in G.factors)))
        self.index = {c: i for i, c in enumerate(self.elements)}
        fs = G.factors
        self.neg = tuple(
            self.index[tuple((-c) % n for c, n in zip(coords, fs))] for coords in self.elements
        )
        self._add_rows: dict[int, tuple[int, ...]] = {}

    def add_row(self, gi: int) -> tuple[int, ...]:
        """Permutation s -> s + g, as element indices."""
        row = self._add_rows.get(gi)
        if row is None:
            fs = self.group.factors
            g = self.elements[gi]
            row = tuple(
                self.index[tuple((a + b) % n for a, b, n in zip(coords, g, fs))]
                for coords in self.elements
            )
            self._add_rows[gi] = row
        return row

    def sub_row(self, gi: int) -> tuple[int, ...]:
        """Permutation s -> s - g, as element indices."""
        return self.add_row(self.neg[gi])

    def element(self, i: int) -> GroupElement:
        return GroupElement(self.group, self.elements[i])


@lru_cache(maxsize=None)
def group_table(G: GroupSpec) -> GroupTable:
    return GroupTable(G)
