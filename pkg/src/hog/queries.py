"""Pairwise suffix-prefix overlap queries over a contracted structure.

A :class:`QueryEngine` wraps a minimal (``hog``) structure — the extended
(``ehog``) kind works too and answers identically, just with longer walks.
Lookups rest on one fact: walking the suffix-link path from string ``i``'s
node, the nodes whose sorted-index interval contains ``j`` are exactly the
suffix-prefix matches of the pair ``(i, j)``, and the deepest of them is the
maximal overlap ``ov(i, j)`` — except that ``j``'s own node must be skipped,
since an overlap has to be a *proper* prefix of string ``j``.

Batched one-against-all queries reuse a skip-pointer array (union-find with
path halving over sorted positions) so each query touches every answered
index once; a touch journal restores the identity map afterwards, keeping
the engine stateless between calls without O(k) resets.

Query inputs are 1-based *original* (pre-deduplication) string positions;
answer vectors and reported indices live in sorted-index space, because
that is the space intervals are defined over (duplicated inputs share one
sorted index).
"""

from __future__ import annotations

import time
import zlib
from array import array

from .trie import KIND_EHOG, KIND_HOG, OverlapTrie


class QueryEngine:
    """Overlap queries over one structure; reusable across many queries."""

    __slots__ = ("t", "_next", "_touched")

    def __init__(self, t: OverlapTrie) -> None:
        if t.kind not in (KIND_HOG, KIND_EHOG):
            raise ValueError(
                f"query engine needs a contracted structure, got kind={t.kind!r}"
            )
        self.t = t
        # identity skip pointers over 1..k, plus a sentinel at k+1 so a
        # splice can always point one past its position
        self._next = array("i", range(t.k + 2))
        self._touched: list[int] = []

    # -- plumbing ---------------------------------------------------------

    def _orig(self, i: int) -> int:
        o2s = self.t.strings.orig_to_sorted
        if not 1 <= i < len(o2s):
            raise IndexError(f"string position {i} out of range 1..{len(o2s) - 1}")
        return o2s[i]

    def _find(self, j: int) -> int:
        """Next not-yet-answered position ≥ j (path-halving, journaled)."""
        nxt = self._next
        touched = self._touched
        while True:
            p = nxt[j]
            if p == j:
                return j
            g = nxt[p]
            if g == p:
                return p
            nxt[j] = g
            touched.append(j)
            j = g

    def _unwind(self) -> None:
        nxt = self._next
        for idx in self._touched:
            nxt[idx] = idx
        self._touched.clear()

    def scratch_is_clean(self) -> bool:
        """True iff the reusable scratch is back to its identity state."""
        nxt = self._next
        return not self._touched and all(nxt[j] == j for j in range(len(nxt)))

    def state_fingerprint(self) -> int:
        """Hash of the mutable engine state; equal before and after any
        query when the journal unwound correctly."""
        return zlib.crc32(self._next.tobytes()) ^ len(self._touched)

    def _collect(
        self, si: int, min_depth: int, cap: int | None
    ) -> list[tuple[int, int]]:
        """Deepest-covering (sorted index, overlap length) pairs for string
        ``si``, walking only nodes of depth ≥ ``min_depth`` (the root takes
        part only when ``min_depth`` is 0), stopping after ``cap`` pairs.

        Pair order: descending overlap length, ascending index within equal
        lengths (suffix-path depths strictly decrease, interval scans
        ascend).
        """
        out: list[tuple[int, int]] = []
        if cap is not None and cap <= 0:
            return out
        t = self.t
        sl = t.suffix_link
        depth = t.depth
        start = t.start
        end = t.end
        string_of = t.string_of
        nxt = self._next
        touched = self._touched
        v = sl[t.leaf_of[si]]
        while True:
            d = depth[v]
            if d < min_depth:
                break
            e = end[v]
            own = string_of[v]
            j = self._find(start[v])
            while j <= e:
                if j == own:
                    # j's own node: not a proper prefix of string j; leave j
                    # pending for the next covering (shallower) node
                    j = self._find(j + 1)
                    continue
                out.append((j, d))
                nxt[j] = j + 1
                touched.append(j)
                if cap is not None and len(out) >= cap:
                    self._unwind()
                    return out
                j = self._find(j + 1)
            if v == 0:
                break
            v = sl[v]
        self._unwind()
        return out

    # -- queries ----------------------------------------------------------

    def one_to_one(self, i: int, j: int) -> tuple[int, bytes]:
        """Maximal overlap of the ordered pair ``(i, j)``: length and string."""
        si = self._orig(i)
        sj = self._orig(j)
        t = self.t
        own_node = t.leaf_of[sj]
        sl = t.suffix_link
        start = t.start
        end = t.end
        v = sl[t.leaf_of[si]]
        while v:
            if start[v] <= sj <= end[v] and v != own_node:
                return t.depth[v], t.node_string(v)
            v = sl[v]
        return 0, b""

    def one_to_all(self, i: int) -> list[int]:
        """Vector of maximal overlap lengths from ``i`` to every string, in
        sorted-index order (entry ``j - 1`` is ``ov(i, j)``)."""
        si = self._orig(i)
        vec = [0] * self.t.k
        for j, d in self._collect(si, 1, None):
            vec[j - 1] = d
        return vec

    def report(self, i: int, min_len: int) -> list[int]:
        """Ascending sorted indices ``j`` with ``ov(i, j) ≥ min_len``.

        With ``min_len`` 0 this is every index (any pair overlaps at least
        trivially); the walk stops before any node shallower than
        ``min_len``, so the cost scales with the answer, not with k.
        """
        if min_len < 0:
            raise ValueError("min_len must be non-negative")
        si = self._orig(i)
        return sorted(j for j, _ in self._collect(si, min_len, None))

    def count(self, i: int, min_len: int) -> int:
        """How many ``j`` satisfy ``ov(i, j) ≥ min_len``."""
        if min_len < 0:
            raise ValueError("min_len must be non-negative")
        si = self._orig(i)
        return len(self._collect(si, min_len, None))

    def top(self, i: int, c: int) -> list[int]:
        """Sorted indices of the ``min(c, k)`` largest overlaps from ``i``,
        in non-increasing overlap order (ties broken by ascending index);
        zero-overlap indices pad the tail when fewer than ``c`` overlaps are
        positive, and ``c > k`` clamps to ``k``."""
        if c < 0:
            raise ValueError("c must be non-negative")
        si = self._orig(i)
        return [j for j, _ in self._collect(si, 0, min(c, self.t.k))]


# -- batch format -----------------------------------------------------------

_BATCH_ARITY = {"O": 2, "A": 1, "R": 2, "C": 2, "T": 2}


def parse_batch(text: str) -> list[tuple]:
    """Parse batch query lines: ``O i j | A i | R i l | C i l | T i c``.

    Blank lines and ``#`` comments are ignored.  Raises ``ValueError`` with
    the offending line number on malformed input.
    """
    queries: list[tuple] = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        op = parts[0]
        arity = _BATCH_ARITY.get(op)
        if arity is None:
            raise ValueError(f"batch line {ln}: unknown op {op!r}")
        if len(parts) != arity + 1:
            raise ValueError(
                f"batch line {ln}: {op} takes {arity} argument(s), got {len(parts) - 1}"
            )
        try:
            args = [int(p) for p in parts[1:]]
        except ValueError:
            raise ValueError(f"batch line {ln}: non-integer argument") from None
        queries.append((op, *args))
    return queries


def run_batch(
    engine: QueryEngine, queries: list[tuple]
) -> tuple[list[str], dict[str, list[float]]]:
    """Answer parsed queries; returns one text line per query plus raw
    per-op latencies (seconds) keyed by op letter.

    Formats: ``O`` → ``<len> <string>`` (just ``0`` for no overlap); ``A`` →
    space-separated vector; ``R`` → ascending indices; ``C`` → count; ``T``
    → indices in rank order.
    """
    lines: list[str] = []
    latency: dict[str, list[float]] = {op: [] for op in _BATCH_ARITY}
    for q in queries:
        op = q[0]
        t0 = time.perf_counter()
        if op == "O":
            d, s = engine.one_to_one(q[1], q[2])
            out = f"{d} {s.decode('latin-1')}" if d else "0"
        elif op == "A":
            out = " ".join(map(str, engine.one_to_all(q[1])))
        elif op == "R":
            out = " ".join(map(str, engine.report(q[1], q[2])))
        elif op == "C":
            out = str(engine.count(q[1], q[2]))
        else:  # T
            out = " ".join(map(str, engine.top(q[1], q[2])))
        latency[op].append(time.perf_counter() - t0)
        lines.append(out)
    return lines, latency
