"""Sequences (finite multisets) over a finite abelian group.

Provides the canonical multiset type, the text format used by the CLI
(``coords^mult`` items separated by semicolons), subsequence-sum feasibility
tables, exact and modular subsequence counting, and the even/odd counting
split used by the mod-p machinery.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GroupMismatchError, InvalidInputError, ResourceLimitError
from .groups import (
    Automorphism,
    GroupElement,
    GroupSpec,
    enumerate_automorphisms,
    group_table,
)

# Cap on |G| * (|S|+1) feasibility/counting table cells.
TABLE_CELL_CAP = 2**26


@dataclass(frozen=True)
class Sequence:
    """A finite multiset of group elements.

    Terms are stored as (element, multiplicity) pairs sorted by coordinates,
    so two equal multisets compare equal bit-for-bit.
    """

    group: GroupSpec
    terms: tuple[tuple[GroupElement, int], ...]

    def __post_init__(self):
        prev = None
        for g, m in self.terms:
            if g.group != self.group:
                raise GroupMismatchError("sequence term from a different group")
            if m < 1:
                raise InvalidInputError("multiplicities must be >= 1")
            if prev is not None and not prev < g:
                raise InvalidInputError("terms must be strictly sorted; use from_pairs")
            prev = g

    # -- constructors --------------------------------------------------

    @classmethod
    def empty(cls, G: GroupSpec) -> "Sequence":
        return cls(G, ())

    @classmethod
    def from_pairs(cls, G: GroupSpec, pairs) -> "Sequence":
        acc: dict[GroupElement, int] = {}
        for g, m in pairs:
            if m < 0:
                raise InvalidInputError("multiplicities must be >= 0")
            if m:
                acc[g] = acc.get(g, 0) + m
        return cls(G, tuple(sorted(acc.items())))

    @classmethod
    def from_elements(cls, G: GroupSpec, elements) -> "Sequence":
        return cls.from_pairs(G, ((g, 1) for g in elements))

    @classmethod
    def parse(cls, G: GroupSpec, text: str) -> "Sequence":
        """Parse the ``coords^mult`` text format, e.g. ``1,0^2; 0,1^1``."""
        text = text.strip()
        if not text:
            return cls.empty(G)
        pairs = []
        for item in text.split(";"):
            item = item.strip()
            if not item:
                continue
            if "^" in item:
                coords_part, _, mult_part = item.partition("^")
                try:
                    mult = int(mult_part.strip())
                except ValueError:
                    raise InvalidInputError(f"bad multiplicity in {item!r}") from None
            else:
                coords_part, mult = item, 1
            try:
                coords = [int(c.strip()) for c in coords_part.split(",")]
            except ValueError:
                raise InvalidInputError(f"bad coordinates in {item!r}") from None
            pairs.append((G.element(coords), mult))
        return cls.from_pairs(G, pairs)

    # -- views -----------------------------------------------------------

    @property
    def length(self) -> int:
        return sum(m for _, m in self.terms)

    def __len__(self) -> int:
        return self.length

    def multiplicity(self, g: GroupElement) -> int:
        for h, m in self.terms:
            if h == g:
                return m
        return 0

    def support(self) -> tuple[GroupElement, ...]:
        return tuple(g for g, _ in self.terms)

    def max_multiplicity(self) -> int:
        return max((m for _, m in self.terms), default=0)

    def expand(self):
        """Iterate elements with repetition, in canonical order."""
        for g, m in self.terms:
            for _ in range(m):
                yield g

    def with_term(self, g: GroupElement, mult: int = 1) -> "Sequence":
        return Sequence.from_pairs(self.group, list(self.terms) + [(g, mult)])

    def without_term(self, g: GroupElement, mult: int = 1) -> "Sequence":
        have = self.multiplicity(g)
        if have < mult:
            raise InvalidInputError(f"cannot remove {mult} copies of {g}")
        pairs = [(h, m if h != g else m - mult) for h, m in self.terms]
        return Sequence.from_pairs(self.group, pairs)

    def format(self) -> str:
        return "; ".join(f"{g}^{m}" for g, m in self.terms)

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class LengthSet:
    """A set L of allowed zero-sum lengths.

    Kinds: ``interval`` = [1, k], ``singleton`` = {m}, ``explicit`` = a finite
    set, ``all`` = every positive length.
    """

    kind: str
    k: int | None = None
    members: frozenset[int] | None = None

    def __post_init__(self):
        if self.kind == "interval":
            if self.k is None or self.k < 1:
                raise InvalidInputError("interval bound must be >= 1")
        elif self.kind == "singleton":
            if self.k is None or self.k < 1:
                raise InvalidInputError("singleton length must be >= 1")
        elif self.kind == "explicit":
            if not self.members or min(self.members) < 1:
                raise InvalidInputError("explicit length set must be nonempty, entries >= 1")
        elif self.kind != "all":
            raise InvalidInputError(f"unknown length-set kind {self.kind!r}")

    @classmethod
    def up_to(cls, k: int) -> "LengthSet":
        return cls("interval", k=k)

    @classmethod
    def exactly(cls, m: int) -> "LengthSet":
        return cls("singleton", k=m)

    @classmethod
    def of(cls, lengths) -> "LengthSet":
        return cls("explicit", members=frozenset(lengths))

    @classmethod
    def all_positive(cls) -> "LengthSet":
        return cls("all")

    def __contains__(self, length: int) -> bool:
        if length < 1:
            return False
        if self.kind == "interval":
            return length <= self.k
        if self.kind == "singleton":
            return length == self.k
        if self.kind == "explicit":
            return length in self.members
        return True

    def mask(self, limit: int) -> int:
        """Bitmask of the members in [1, limit]."""
        if self.kind == "interval":
            top = min(self.k, limit)
            return (1 << (top + 1)) - 2 if top >= 1 else 0
        if self.kind == "singleton":
            return 1 << self.k if self.k <= limit else 0
        if self.kind == "explicit":
            out = 0
            for m in self.members:
                if m <= limit:
                    out |= 1 << m
            return out
        return (1 << (limit + 1)) - 2 if limit >= 1 else 0

    def label(self) -> str:
        if self.kind == "interval":
            return f"[1,{self.k}]"
        if self.kind == "singleton":
            return f"{{{self.k}}}"
        if self.kind == "explicit":
            return "{" + ",".join(str(m) for m in sorted(self.members)) + "}"
        return "N"


@dataclass(frozen=True)
class FeasibilityTable:
    """Which (sum, length) pairs are realized by subsequences of S.

    ``masks[i]`` is a bitmask over lengths 0..|S| for the element with
    enumeration index i; bit 0 of ``masks[0]`` (the empty subsequence) is
    always set.
    """

    group: GroupSpec
    size: int
    masks: tuple[int, ...]

    def possible(self, g: GroupElement, length: int) -> bool:
        if g.group != self.group:
            raise GroupMismatchError("element from a different group")
        if not 0 <= length <= self.size:
            return False
        return bool(self.masks[group_table(self.group).index[g.coords]] >> length & 1)

    def lengths(self, g: GroupElement) -> tuple[int, ...]:
        if g.group != self.group:
            raise GroupMismatchError("element from a different group")
        mask = self.masks[group_table(self.group).index[g.coords]]
        return tuple(l for l in range(self.size + 1) if mask >> l & 1)

    def zero_sum_lengths(self) -> tuple[int, ...]:
        """Nonempty zero-sum subsequence lengths."""
        mask = self.masks[0]
        return tuple(l for l in range(1, self.size + 1) if mask >> l & 1)


def sigma(S: Sequence) -> GroupElement:
    """The sum of all terms of S."""
    fs = S.group.factors
    acc = [0] * len(fs)
    for g, m in S.terms:
        for i, c in enumerate(g.coords):
            acc[i] += m * c
    return S.group.element(acc)


def feasibility(S: Sequence, cell_cap: int = TABLE_CELL_CAP) -> FeasibilityTable:
    """Dynamic-programming table of achievable (sum, length) pairs."""
    table = group_table(S.group)
    m = len(table.elements)
    n = S.length
    if m * (n + 1) > cell_cap:
        raise ResourceLimitError(f"feasibility table {m}x{n + 1} exceeds cap")
    masks = [0] * m
    masks[0] = 1  # empty subsequence
    for g in S.expand():
        row = table.sub_row(table.index[g.coords])
        masks = [masks[s] | (masks[row[s]] << 1) for s in range(m)]
    return FeasibilityTable(S.group, n, tuple(masks))


def min_zero_sum_length(S: Sequence) -> int | None:
    """Length of the shortest nonempty zero-sum subsequence, or None."""
    lengths = feasibility(S).zero_sum_lengths()
    return lengths[0] if lengths else None


def has_zero_sum_in(S: Sequence, L: LengthSet) -> bool:
    """True iff S has a zero-sum subsequence whose length lies in L."""
    return bool(feasibility(S).masks[0] & L.mask(S.length))


def subsequence_count_table(S: Sequence, mod: int | None = None, max_len: int | None = None):
    """counts[i][l] = number of index subsets of S of size l summing to the
    element with enumeration index i (exact integers, or mod ``mod``)."""
    table = group_table(S.group)
    m = len(table.elements)
    n = S.length
    top = n if max_len is None else min(max_len, n)
    if m * (top + 1) > TABLE_CELL_CAP:
        raise ResourceLimitError(f"count table {m}x{top + 1} exceeds cap")
    counts = [[0] * (top + 1) for _ in range(m)]
    counts[0][0] = 1
    for g in S.expand():
        row = table.sub_row(table.index[g.coords])
        prev = [r[:] for r in counts]
        for s in range(m):
            src = prev[row[s]]
            dst = counts[s]
            for l in range(1, top + 1):
                v = dst[l] + src[l - 1]
                dst[l] = v % mod if mod else v
    return counts

def count_subseq(S: Sequence, g: GroupElement, k: int, mod: int | None = None) -> int:
    """Number of subsequences of S (as index subsets) of length k with sum g."""
    if g.group != S.group:
        raise GroupMismatchError("element from a different group")
    if k < 0 or k > S.length:
        return 0
    counts = subsequence_count_table(S, mod=mod, max_len=k)
    return counts[group_table(S.group).index[g.coords]][k]


def n_plus_minus(S: Sequence, g: GroupElement, p: int) -> tuple[int, int]:
    """(even-length count, odd-length count) of subsequences summing to g,
    both mod p.  The empty subsequence counts toward the even side of g=0."""
    if g.group != S.group:
        raise GroupMismatchError("element from a different group")
    counts = subsequence_count_table(S, mod=p)
    row = counts[group_table(S.group).index[g.coords]]
    even = sum(row[l] for l in range(0, len(row), 2)) % p
    odd = sum(row[l] for l in range(1, len(row), 2)) % p
    return even, odd


def apply_automorphism(phi: Automorphism, S: Sequence) -> Sequence:
    if phi.group != S.group:
        raise GroupMismatchError("automorphism of a different group")
    return Sequence.from_pairs(S.group, ((phi(g), m) for g, m in S.terms))


def orbit_canonical(S: Sequence) -> Sequence:
    """Lexicographically least image of S under the automorphism group
    (homocyclic groups only; small orders)."""
    index = group_table(S.group).index
    best = None
    best_key = None
    for phi in enumerate_automorphisms(S.group):
        image = apply_automorphism(phi, S)
        key = tuple(index[g.coords] for g in image.expand())
        if best_key is None or key < best_key:
            best, best_key = image, key
    return best if best is not None else S
