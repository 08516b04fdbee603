"""Exact zero-sum invariants by pruned exhaustive search.

The invariant s_L(G) is the least l such that every sequence over G of
length l has a nonempty zero-sum subsequence with length in L; equivalently
1 + (maximum length of an L-free sequence).  L-freeness is closed under
taking subsequences, so the L-free sequences form a prefix tree of canonical
(index-sorted) multisets which a DFS can exhaust.

Pruning is incremental: the searcher carries, per group element s, the
bitmask of lengths realized by subsequences summing to s.  Appending g can
only create zero-sum subsequences that use the new copy, i.e. extensions of
subsequences summing to -g, so the L-freeness check for a candidate costs a
single AND against the mask at -g.

Optional symmetry reduction (homocyclic groups of prime exponent only): in
canonical order, the j-th appended element that leaves the subgroup generated
by the previous ones can be forced to the j-th member of a fixed flag,
because the stabilizer of the flag prefix acts transitively on the elements
outside its span and fixes the span pointwise.  This changes witnesses but
not values; it is off by default.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import InvalidInputError
from .groups import GroupSpec, d_star, factorize, group_table
from .sequences import LengthSet, Sequence, apply_automorphism, feasibility, sigma
from .groups import enumerate_automorphisms

_DEFAULT_NODE_BUDGET = 10**8


@dataclass(frozen=True)
class SearchConfig:
    """Budgets and strategy knobs for the DFS.

    The time budget is wall-clock and therefore not reproducible across
    machines; results are deterministic when the search finishes or stops on
    the node budget.  ``stem`` restricts the search to canonical sequences
    extending the given multiset (symmetry reduction is disabled then).
    """

    node_budget: int = _DEFAULT_NODE_BUDGET
    time_budget: float | None = None
    symmetry_reduction: bool = False
    parallel_depth: int = 0
    workers: int = 1
    horizon: int | None = None  # None -> 4 * d_star(G)
    stem: Sequence | None = None

    def __post_init__(self):
        if self.node_budget < 1:
            raise InvalidInputError("node_budget must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise InvalidInputError("time_budget must be positive")
        if self.horizon is not None and self.horizon < 1:
            raise InvalidInputError("horizon must be >= 1")
        if self.parallel_depth < 0 or self.workers < 1:
            raise InvalidInputError("bad parallel settings")


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    pruned: int
    seconds: float


@dataclass(frozen=True)
class SearchResult:
    """Outcome of an invariant search.

    ``value`` is set only when the search completed and the invariant is
    finite; ``infinite`` marks a certified failure of finiteness; otherwise
    (budget or horizon exhausted) the value is unknown but ``best_length``
    and ``witness`` carry the longest L-free sequence found.
    """

    group: GroupSpec
    L: LengthSet
    value: int | None
    infinite: bool
    complete: bool
    witness: Sequence | None
    best_length: int | None
    stats: SearchStats

    def value_label(self) -> str:
        if self.infinite:
            return "infinite"
        if self.value is None:
            return "unknown"
        return str(self.value)


class _Budget(Exception):
    pass


class _Searcher:
    """DFS over canonical L-free multisets, maximizing depth."""

    def __init__(self, G, L, horizon, node_budget, deadline, symmetry):
        table = group_table(G)
        self.table = table
        self.m = len(table.elements)
        self.horizon = horizon
        self.ban_half = L.mask(horizon) >> 1
        self.node_budget = node_budget
        self.deadline = deadline
        self.nodes = 0
        self.pruned = 0
        self.best = -1
        self.best_stack: tuple[int, ...] | None = None
        self.hit_horizon = False
        self.stack: list[int] = []
        self.sub_rows = [table.sub_row(gi) for gi in range(self.m)]
        self.neg = table.neg
        self.symmetry = symmetry
        if symmetry:
            n = G.exponent
            self.flags = [n**j for j in range(G.rank)]
            self.sym_n = n

    def initial_masks(self) -> list[int]:
        masks = [0] * self.m
        masks[0] = 1  # empty subsequence
        return masks

    def replay(self, masks, indices):
        """Append the given element indices (checking L-freeness as we go)."""
        for gi in indices:
            if masks[self.neg[gi]] & self.ban_half:
                raise InvalidInputError("stem has a zero-sum subsequence with length in L")
            row = self.sub_rows[gi]
            masks = [masks[s] | (masks[row[s]] << 1) for s in range(self.m)]
            self.stack.append(gi)
        return masks

    def span_of(self, indices):
        """Subgroup generated by the given element indices, as an index set,
        with the number of independent generators met in canonical order."""
        span = {0}
        dim = 0
        for gi in indices:
            if gi not in span:
                span = self.grow_span(span, gi)
                dim += 1
        return span, dim

    def grow_span(self, span, gi):
        row = self.table.add_row(gi)
        new = set(span)
        cur = list(span)
        for _ in range(self.sym_n - 1):
            cur = [row[s] for s in cur]
            new.update(cur)
        return new

    def run(self, masks, start, span, dim):
        self._dfs(masks, start, len(self.stack), span, dim)

    def _tick(self):
        self.nodes += 1
        if self.nodes >= self.node_budget:
            raise _Budget
        if self.deadline is not None and self.nodes % 4096 == 0 and time.monotonic() > self.deadline:
            raise _Budget

    def _dfs(self, masks, start, depth, span, dim):
        self._tick()
        if depth > self.best:
            self.best = depth
            self.best_stack = tuple(self.stack)
        if depth >= self.horizon:
            self.hit_horizon = True
            return
        ban = self.ban_half
        neg = self.neg
        sub_rows = self.sub_rows
        m = self.m
        sym = self.symmetry
        flag = self.flags[dim] if sym and dim < len(self.flags) else None
        last = depth + 1 >= self.horizon
        for gi in range(start, m):
            if masks[neg[gi]] & ban:
                self.pruned += 1
                continue
            child_span = span
            child_dim = dim
            if sym and gi not in span:
                if gi != flag:
                    continue
                child_span = self.grow_span(span, gi)
                child_dim = dim + 1
            self.stack.append(gi)
            if last:
                # Cut at the horizon: record without building the child table.
                self._tick()
                if depth + 1 > self.best:
                    self.best = depth + 1
                    self.best_stack = tuple(self.stack)
                self.hit_horizon = True
            else:
                row = sub_rows[gi]
                child = [masks[s] | (masks[row[s]] << 1) for s in range(m)]
                self._dfs(child, gi, depth + 1, child_span, child_dim)
            self.stack.pop()


class _Collector(_Searcher):
    """DFS that collects all L-free canonical multisets of a fixed length."""

    def __init__(self, G, L, horizon, node_budget, deadline, symmetry, target):
        super().__init__(G, L, horizon, node_budget, deadline, symmetry)
        self.target = target
        self.found: list[tuple[int, ...]] = []

    def _dfs(self, masks, start, depth, span, dim):
        self._tick()
        if depth >= self.target:
            self.found.append(tuple(self.stack))
            return
        neg = self.neg
        ban = self.ban_half
        m = self.m
        sym = self.symmetry
        flag = self.flags[dim] if sym and dim < len(self.flags) else None
        last = depth + 1 == self.target
        for gi in range(start, m):
            if masks[neg[gi]] & ban:
                self.pruned += 1
                continue
            child_span = span
            child_dim = dim
            if sym and gi not in span:
                if gi != flag:
                    continue
                child_span = self.grow_span(span, gi)
                child_dim = dim + 1
            self.stack.append(gi)
            if last:
                self._tick()
                self.found.append(tuple(self.stack))
            else:
                row = self.sub_rows[gi]
                child = [masks[s] | (masks[row[s]] << 1) for s in range(m)]
                self._dfs(child, gi, depth + 1, child_span, child_dim)
            self.stack.pop()


def _effective_horizon(G: GroupSpec, cfg: SearchConfig) -> int:
    return cfg.horizon if cfg.horizon is not None else max(4 * d_star(G), 1)


def _symmetry_applicable(G: GroupSpec, cfg: SearchConfig) -> bool:
    # Flag forcing relies on the stabilizer acting transitively outside the
    # span, which holds when the coordinate ring is a field: prime exponent.
    if not cfg.symmetry_reduction or cfg.stem is not None:
        return False
    if not G.is_homocyclic():
        return False
    return factorize(G.exponent) == {G.exponent: 1}


def _stem_indices(G: GroupSpec, stem: Sequence | None) -> tuple[int, ...]:
    if stem is None:
        return ()
    if stem.group != G:
        raise InvalidInputError("stem is over a different group")
    index = group_table(G).index
    return tuple(index[g.coords] for g in stem.expand())


def _run_serial(G, L, cfg, horizon, symmetry):
    deadline = time.monotonic() + cfg.time_budget if cfg.time_budget else None
    searcher = _Searcher(G, L, horizon, cfg.node_budget, deadline, symmetry)
    masks = searcher.initial_masks()
    prefix = _stem_indices(G, cfg.stem)
    masks = searcher.replay(masks, prefix)
    if symmetry:
        span, dim = searcher.span_of(prefix)
    else:
        span, dim = None, 0
    budget_ok = True
    try:
        searcher.run(masks, prefix[-1] if prefix else 0, span, dim)
    except _Budget:
        budget_ok = False
    return searcher, budget_ok


def _subtree_task(args):
    (factors, l_kind, l_k, l_members, prefix, horizon, node_budget, symmetry,
     deadline) = args
    G = GroupSpec(factors)
    L = LengthSet(l_kind, k=l_k, members=l_members)
    searcher = _Searcher(G, L, horizon, node_budget, deadline, symmetry)
    masks = searcher.initial_masks()
    masks = searcher.replay(masks, prefix)
    if symmetry:
        span, dim = searcher.span_of(prefix)
    else:
        span, dim = None, 0
    budget_ok = True
    try:
        searcher.run(masks, prefix[-1] if prefix else 0, span, dim)
    except _Budget:
        budget_ok = False
    return (searcher.best, searcher.best_stack, searcher.nodes, searcher.pruned,
            budget_ok, searcher.hit_horizon)


def _merge_best(current_best, current_stack, cand_best, cand_stack):
    if cand_stack is not None and (
        cand_best > current_best
        or (cand_best == current_best and (current_stack is None or cand_stack < current_stack))
    ):
        return cand_best, cand_stack
    return current_best, current_stack


def _run_partitioned(G, L, cfg, horizon, symmetry):
    """Split the DFS tree at a fixed depth into independent subtasks; merge
    is (max, then lexicographically least witness), so the outcome does not
    depend on scheduling or worker count."""
    deadline = time.monotonic() + cfg.time_budget if cfg.time_budget else None
    prefix = _stem_indices(G, cfg.stem)
    target = min(len(prefix) + cfg.parallel_depth, horizon)
    coll = _Collector(G, L, horizon, cfg.node_budget, deadline, symmetry, target)
    masks = coll.initial_masks()
    masks = coll.replay(masks, prefix)
    if symmetry:
        span, dim = coll.span_of(prefix)
    else:
        span, dim = None, 0
    budget_ok = True
    try:
        coll.run(masks, prefix[-1] if prefix else 0, span, dim)
    except _Budget:
        budget_ok = False
    if not coll.found or not budget_ok:
        # The whole tree is shallower than the partition depth (or the
        # partitioning itself ran out of budget): search serially.
        searcher, ok = _run_serial(G, L, cfg, horizon, symmetry)
        return (searcher.best, searcher.best_stack, searcher.nodes + coll.nodes,
                searcher.pruned + coll.pruned, ok and budget_ok,
                searcher.hit_horizon)
    tasks = [
        (G.factors, L.kind, L.k, L.members, pfx, horizon, cfg.node_budget,
         symmetry, deadline)
        for pfx in coll.found
    ]
    best, best_stack = -1, None
    nodes, pruned = coll.nodes, coll.pruned
    hit_horizon = target >= horizon and coll.hit_horizon
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            outcomes = list(pool.map(_subtree_task, tasks, chunksize=1))
    else:
        outcomes = [_subtree_task(t) for t in tasks]
    for sub_best, sub_stack, sub_nodes, sub_pruned, sub_ok, sub_hit in outcomes:
        best, best_stack = _merge_best(best, best_stack, sub_best, sub_stack)
        nodes += sub_nodes
        pruned += sub_pruned
        budget_ok = budget_ok and sub_ok
        hit_horizon = hit_horizon or sub_hit
    return best, best_stack, nodes, pruned, budget_ok, hit_horizon


def _sequence_from_indices(G: GroupSpec, indices) -> Sequence:
    table = group_table(G)
    return Sequence.from_elements(G, (table.element(i) for i in indices))


def s_L(G: GroupSpec, L: LengthSet, cfg: SearchConfig | None = None) -> SearchResult:
    """Compute s_L(G) by exhaustive search.

    For interval L = [1, k] with k < exp(G), powers of a maximal-order
    element are L-free at every length, so the result is certified infinite
    without searching.  For other L the search runs to the configured
    horizon and reports unknown if any branch was cut there.  With a stem,
    the value reported is 1 + the longest L-free extension of the stem.
    """
    cfg = cfg or SearchConfig()
    t0 = time.monotonic()
    if L.kind == "interval" and L.k < G.exponent:
        return SearchResult(G, L, None, True, True, None, None,
                            SearchStats(0, 0, time.monotonic() - t0))
    horizon = _effective_horizon(G, cfg)
    symmetry = _symmetry_applicable(G, cfg)

    if cfg.parallel_depth > 0:
        best, best_stack, nodes, pruned, budget_ok, hit_horizon = _run_partitioned(
            G, L, cfg, horizon, symmetry)
    else:
        searcher, budget_ok = _run_serial(G, L, cfg, horizon, symmetry)
        best, best_stack = searcher.best, searcher.best_stack
        nodes, pruned, hit_horizon = searcher.nodes, searcher.pruned, searcher.hit_horizon

    seconds = time.monotonic() - t0
    complete = budget_ok and not hit_horizon
    witness = _sequence_from_indices(G, best_stack) if best_stack is not None else None
    value = best + 1 if complete and best >= 0 else None
    best_length = best if best >= 0 else None
    return SearchResult(G, L, value, False, complete, witness, best_length,
                        SearchStats(nodes, pruned, seconds))


# --- named invariants -------------------------------------------------------


def davenport(G: GroupSpec, cfg: SearchConfig | None = None) -> SearchResult:
    return s_L(G, LengthSet.all_positive(), cfg)


def s_leq(G: GroupSpec, k: int, cfg: SearchConfig | None = None) -> SearchResult:
    return s_L(G, LengthSet.up_to(k), cfg)


def eta(G: GroupSpec, cfg: SearchConfig | None = None) -> SearchResult:
    return s_L(G, LengthSet.up_to(G.exponent), cfg)


def s_egz(G: GroupSpec, cfg: SearchConfig | None = None) -> SearchResult:
    return s_L(G, LengthSet.exactly(G.exponent), cfg)


def s_kexp(G: GroupSpec, k: int, cfg: SearchConfig | None = None) -> SearchResult:
    if k < 1:
        raise InvalidInputError("k must be >= 1")
    return s_L(G, LengthSet.exactly(k * G.exponent), cfg)


# --- enumeration ------------------------------------------------------------


@dataclass(frozen=True)
class ExtremalSet:
    group: GroupSpec
    L: LengthSet
    length: int
    sequences: tuple[Sequence, ...]
    up_to_automorphism: bool
    complete: bool


def orbit_key(S: Sequence) -> tuple[int, ...]:
    """Lexicographically least index tuple over the automorphism orbit."""
    index = group_table(S.group).index
    best = None
    for phi in enumerate_automorphisms(S.group):
        image = apply_automorphism(phi, S)
        key = tuple(index[g.coords] for g in image.expand())
        if best is None or key < best:
            best = key
    return best if best is not None else ()


def enumerate_extremal(G: GroupSpec, L: LengthSet, length: int,
                       cfg: SearchConfig | None = None,
                       up_to_automorphism: bool = False) -> ExtremalSet:
    """All L-free sequences over G of the given length (canonical multisets),
    optionally reduced to lexicographically-least orbit representatives."""
    if length < 0:
        raise InvalidInputError("length must be >= 0")
    cfg = cfg or SearchConfig()
    deadline = time.monotonic() + cfg.time_budget if cfg.time_budget else None
    coll = _Collector(G, L, max(length, 1), cfg.node_budget, deadline, False, length)
    masks = coll.initial_masks()
    prefix = _stem_indices(G, cfg.stem)
    masks = coll.replay(masks, prefix)
    complete = True
    try:
        coll.run(masks, prefix[-1] if prefix else 0, None, 0)
    except _Budget:
        complete = False
    seqs = [_sequence_from_indices(G, idx) for idx in coll.found]
    if up_to_automorphism:
        index = group_table(G).index
        seqs = [S for S in seqs
                if tuple(index[g.coords] for g in S.expand()) == orbit_key(S)]
    return ExtremalSet(G, L, length, tuple(seqs), up_to_automorphism, complete)


def enumerate_minimal_zero_sum(G: GroupSpec, length: int,
                               cfg: SearchConfig | None = None) -> ExtremalSet:
    """All minimal zero-sum sequences of the given length.

    Built by extending each zero-sum-free sequence W of length-1 with the
    negated sum -sigma(W), then discarding non-minimal results (those where
    some proper subsequence of W already attains sigma(W)).
    """
    if length < 1:
        raise InvalidInputError("length must be >= 1")
    free = enumerate_extremal(G, LengthSet.all_positive(), length - 1, cfg)
    out = {}
    for W in free.sequences:
        g = -sigma(W)
        if length > 1:
            tab = feasibility(W)
            target = sigma(W)
            if any(tab.possible(target, l) for l in range(1, length - 1)):
                continue
        S = W.with_term(g)
        out[S.terms] = S
    index = group_table(G).index
    seqs = sorted(out.values(),
                  key=lambda S: tuple(index[g.coords] for g in S.expand()))
    return ExtremalSet(G, LengthSet.all_positive(), length, tuple(seqs), False,
                       free.complete)
