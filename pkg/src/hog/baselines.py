"""Reference overlap-marking algorithms and the brute-force oracle.

Three published-style alternatives to the lazy-blackening marker, all
producing bit-identical mark vectors on the same trie:

``cazaux``
    Per-node suffix lists plus an upward ancestor scan from every
    whole-string node, deduplicating with a timestamp array.  Simple, but
    carries the quadratic-flavor Σ|suffix lists on ancestors| term — kept
    deliberately unoptimized as the slow baseline.
``parkcpr``
    Walks each suffix-link path and decides "does this subtree still contain
    an unclaimed target?" with a segment tree over sorted string indices
    (range count of uncovered positions, range cover, journaled rollback).
``khan``
    One Euler tour of the trie maintaining, per string id, a stack of the
    suffix-list nodes currently on the root path; at every whole-string node
    an upward scan marks the ancestors that are some id's deepest live node.

``oracle`` marks nodes by literal string comparison against the quadratic
brute-force overlap set — tiny inputs only, used for verification.

All markers share the signature ``f(trie, counters=None, deadline=None,
**extras)`` and are reachable through :data:`MARKERS` / :func:`get_marker`.
"""

from __future__ import annotations

import time
import zlib
from array import array
from dataclasses import dataclass
from typing import Callable, Sequence

from .marking import MarkTimeout, mark_hog_new
from .trie import MarkVector, OverlapTrie

_DEADLINE_STRIDE = 16384  # marker ops between cooperative deadline checks


def ov_length(p: bytes, q: bytes) -> int:
    """Length of the longest proper suffix of ``p`` that is a proper prefix
    of ``q`` (0 when only the empty string qualifies)."""
    for ln in range(min(len(p), len(q)) - 1, 0, -1):
        if p[len(p) - ln :] == q[:ln]:
            return ln
    return 0


def brute_force_ov(strings: Sequence[bytes]) -> set[bytes]:
    """All distinct maximal pairwise overlaps, by direct slice comparison.

    Ordered pairs, self-pairs included; the empty string appears whenever
    some pair only overlaps trivially.  Quadratic in every direction —
    oracle use only.
    """
    out: set[bytes] = set()
    for p in strings:
        for q in strings:
            out.add(q[: ov_length(p, q)])
    return out


def mark_hog_oracle(
    t: OverlapTrie,
    counters: dict[str, int] | None = None,
    deadline: float | None = None,
) -> MarkVector:
    """Mark by membership of each node's path string in the brute-force
    overlap set.  Exact by construction; cost is O(nodes × depth) plus the
    quadratic pair scan."""
    targets = brute_force_ov(t.strings.strings)
    marks = bytearray(t.n_nodes)
    marks[0] = 1
    string_of = t.string_of
    for v in range(1, t.n_nodes):
        if string_of[v] != -1 or t.node_string(v) in targets:
            marks[v] = 1
        if deadline is not None and v % _DEADLINE_STRIDE == 0:
            if time.monotonic() > deadline:
                raise MarkTimeout(f"oracle marking passed its deadline at node {v}")
    return marks


@dataclass(frozen=True)
class SuffixLists:
    """Per-node lists of string ids: ``lists[v]`` holds every ``i`` such
    that node ``v``'s path string is a *proper* suffix of string ``i``.
    The root is excluded.  ``total`` is Σ|lists[v]|."""

    lists: list[list[int]]
    total: int


def build_suffix_lists(t: OverlapTrie) -> SuffixLists:
    """Walk each string's suffix-link path, recording the string id at every
    node strictly between the string's own node and the root."""
    if t.kind not in ("act", "ehog"):
        raise ValueError(f"suffix lists are built on act/ehog structures, got {t.kind!r}")
    lists: list[list[int]] = [[] for _ in range(t.n_nodes)]
    sl = t.suffix_link
    leaf_of = t.leaf_of
    total = 0
    for i in range(1, t.k + 1):
        v = sl[leaf_of[i]]
        while v:
            lists[v].append(i)
            total += 1
            v = sl[v]
    return SuffixLists(lists=lists, total=total)


def mark_hog_cazaux(
    t: OverlapTrie,
    counters: dict[str, int] | None = None,
    deadline: float | None = None,
    suffix_lists: SuffixLists | None = None,
) -> MarkVector:
    """Suffix-list ancestor scan with a per-string timestamp "found" array.

    For each whole-string node (by ascending sorted index j), ascend the
    parent chain; at each ancestor, every suffix-list id ``i`` not yet seen
    during pass ``j`` marks the ancestor as ``ov(i, j)`` — the first (=
    deepest) occurrence wins, later ones are skipped via the timestamp.
    Scans start at the whole-string node itself so ids whose deepest live
    node *is* that node are consumed there (the node is a whole string, so
    the mark itself is redundant but harmless).
    """
    if suffix_lists is None:
        suffix_lists = build_suffix_lists(t)
    lists = suffix_lists.lists
    n = t.n_nodes
    k = t.k
    marks = bytearray(n)
    marks[0] = 1
    parent = t.parent
    leaf_of = t.leaf_of
    found = array("i", bytes(4 * (k + 1)))  # last pass j that consumed id i
    ops = 0
    next_check = _DEADLINE_STRIDE
    for j in range(1, k + 1):
        u = leaf_of[j]
        marks[u] = 1
        while u:
            fresh = False
            for i in lists[u]:
                if found[i] != j:
                    found[i] = j
                    fresh = True
            ops += len(lists[u])
            if fresh:
                marks[u] = 1
            u = parent[u]
            if deadline is not None and ops >= next_check:
                next_check = ops + _DEADLINE_STRIDE
                if time.monotonic() > deadline:
                    raise MarkTimeout(
                        f"suffix-list scan passed its deadline at string {j}/{k}"
                    )
    if counters is not None:
        counters["scan_ops"] = ops
        counters["suffix_list_total"] = suffix_lists.total
    return marks


class IntervalCoverTree:
    """Segment tree over positions ``1..k``: count uncovered positions in a
    range, cover a range, and roll everything back to a checkpoint.

    Covering is "assign zero" with pruning: a subtree whose uncovered count
    is already 0 is never entered, which (with the journal) keeps each
    string's pass linear in what it actually touches.  The journal records
    ``(index, previous value)`` pairs; :meth:`rollback` pops to a
    checkpoint, so nesting follows stack discipline.
    """

    __slots__ = ("k", "size", "uncov", "journal")

    def __init__(self, k: int) -> None:
        if k < 1:
            raise ValueError("need at least one position")
        size = 1
        while size < k:
            size <<= 1
        self.k = k
        self.size = size
        self.uncov = array("i", bytes(4 * 2 * size))
        uncov = self.uncov
        for pos in range(k):
            uncov[size + pos] = 1
        for node in range(size - 1, 0, -1):
            uncov[node] = uncov[2 * node] + uncov[2 * node + 1]
        self.journal: list[tuple[int, int]] = []

    def uncovered(self, lo: int, hi: int) -> int:
        """Number of uncovered positions in ``[lo, hi]`` (1-based, inclusive)."""
        return self._query(1, 1, self.size, lo, hi)

    def _query(self, node: int, nlo: int, nhi: int, lo: int, hi: int) -> int:
        u = self.uncov[node]
        if u == 0 or hi < nlo or nhi < lo:
            return 0
        if lo <= nlo and nhi <= hi:
            return u
        mid = (nlo + nhi) // 2
        return self._query(2 * node, nlo, mid, lo, hi) + self._query(
            2 * node + 1, mid + 1, nhi, lo, hi
        )

    def cover(self, lo: int, hi: int) -> None:
        """Mark every position in ``[lo, hi]`` covered (journaled)."""
        self._cover(1, 1, self.size, lo, hi)

    def _cover(self, node: int, nlo: int, nhi: int, lo: int, hi: int) -> None:
        uncov = self.uncov
        u = uncov[node]
        if u == 0 or hi < nlo or nhi < lo:
            return
        if lo <= nlo and nhi <= hi:
            # zero at an internal node doubles as a "fully covered" flag:
            # both query and cover prune on it, so stale child values are
            # never observed while it is in force, and rollback restores it
            self.journal.append((node, u))
            uncov[node] = 0
            return
        mid = (nlo + nhi) // 2
        self._cover(2 * node, nlo, mid, lo, hi)
        self._cover(2 * node + 1, mid + 1, nhi, lo, hi)
        fresh = uncov[2 * node] + uncov[2 * node + 1]
        if fresh != u:
            self.journal.append((node, u))
            uncov[node] = fresh

    def checkpoint(self) -> int:
        return len(self.journal)

    def rollback(self, mark: int) -> None:
        """Undo journaled writes back to (and excluding) ``mark``."""
        journal = self.journal
        uncov = self.uncov
        while len(journal) > mark:
            node, old = journal.pop()
            uncov[node] = old

    def state_hash(self) -> int:
        """CRC of the full counter array — cheap reset-invariant checks."""
        return zlib.crc32(self.uncov.tobytes())


def mark_hog_parkcpr(
    t: OverlapTrie,
    counters: dict[str, int] | None = None,
    deadline: float | None = None,
    check_reset: bool = False,
) -> MarkVector:
    """Suffix-path walk deciding marks with an :class:`IntervalCoverTree`.

    A path node is marked iff its sorted-index interval still contains an
    uncovered position; marking covers the interval, so deeper path nodes
    (visited first) shadow shallower ones exactly as maximality requires.
    Each string's covers are rolled back before the next string starts.
    """
    if t.kind not in ("act", "ehog"):
        raise ValueError(f"marking runs on act/ehog structures, got {t.kind!r}")
    n = t.n_nodes
    k = t.k
    marks = bytearray(n)
    marks[0] = 1
    sl = t.suffix_link
    leaf_of = t.leaf_of
    start = t.start
    end = t.end
    tree = IntervalCoverTree(k)
    clean = tree.state_hash() if check_reset else 0
    queries = 0
    for j in range(1, k + 1):
        cp = tree.checkpoint()
        x = leaf_of[j]
        marks[x] = 1
        v = sl[x]
        while v:
            queries += 1
            if tree.uncovered(start[v], end[v]):
                marks[v] = 1
                tree.cover(start[v], end[v])
            v = sl[v]
        tree.rollback(cp)
        if check_reset and tree.state_hash() != clean:
            raise AssertionError(f"cover tree not reset after string {j}")
        if deadline is not None and time.monotonic() > deadline:
            raise MarkTimeout(f"cover-tree marking passed its deadline at string {j}/{k}")
    if counters is not None:
        counters["interval_queries"] = queries
    return marks


def mark_hog_khan(
    t: OverlapTrie,
    counters: dict[str, int] | None = None,
    deadline: float | None = None,
    suffix_lists: SuffixLists | None = None,
) -> MarkVector:
    """Euler-tour marking with per-string-id stacks of live list nodes.

    Entering a node pushes it on the stack of every id in its suffix list
    (deactivating that id's previous top); leaving reverses this.  A node is
    "active" while it is some id's stack top, i.e. the deepest node on the
    current root path whose path string is a proper suffix of that id's
    string.  At each whole-string node, an upward scan over strict ancestors
    marks the active ones — each is the maximal overlap for the pairs whose
    ids it currently tops.
    """
    if suffix_lists is None:
        suffix_lists = build_suffix_lists(t)
    lists = suffix_lists.lists
    n = t.n_nodes
    k = t.k
    marks = bytearray(n)
    marks[0] = 1
    parent = t.parent
    string_of = t.string_of
    active = array("i", bytes(4 * n))
    tops: list[list[int]] = [[] for _ in range(k + 1)]
    stack: list[tuple[int, bool]] = [(0, False)]
    scans = 0
    next_check = _DEADLINE_STRIDE
    while stack:
        u, leaving = stack.pop()
        if leaving:
            for i in reversed(lists[u]):
                st = tops[i]
                st.pop()
                active[u] -= 1
                if st:
                    active[st[-1]] += 1
            continue
        stack.append((u, True))
        for i in lists[u]:
            st = tops[i]
            if st:
                active[st[-1]] -= 1
            st.append(u)
            active[u] += 1
        if string_of[u] != -1:
            marks[u] = 1
            a = parent[u]
            while a > 0:
                if active[a]:
                    marks[a] = 1
                a = parent[a]
                scans += 1
            if deadline is not None and scans >= next_check:
                next_check = scans + _DEADLINE_STRIDE
                if time.monotonic() > deadline:
                    raise MarkTimeout(
                        f"euler-tour marking passed its deadline at node {u}"
                    )
        c = t.first_child[u]
        while c != -1:
            stack.append((c, False))
            c = t.next_sibling[c]
    if counters is not None:
        counters["ancestor_scans"] = scans
    return marks


MarkFn = Callable[..., MarkVector]

MARKERS: dict[str, MarkFn] = {
    "cazaux": mark_hog_cazaux,
    "parkcpr": mark_hog_parkcpr,
    "khan": mark_hog_khan,
    "new": mark_hog_new,
    "oracle": mark_hog_oracle,
}


def get_marker(name: str) -> MarkFn:
    try:
        return MARKERS[name]
    except KeyError:
        valid = ", ".join(sorted(MARKERS))
        raise ValueError(f"unknown algorithm {name!r} (valid: {valid})") from None


def algorithm_names(include_oracle: bool = True) -> list[str]:
    """Registry names in canonical order."""
    names = ["new", "khan", "parkcpr", "cazaux"]
    if include_oracle:
        names.append("oracle")
    return names
