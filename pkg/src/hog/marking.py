"""Overlap-node marking by lazy subtree blackening (the fast algorithm).

Marks, on an ``act`` or ``ehog`` trie, exactly the nodes of the minimal
overlap structure: the root, every whole string, and every node that is the
longest suffix-prefix overlap of some ordered string pair.  Feeding the
result to :func:`hog.trie.contract` yields the ``hog``.

How it works, in brief: for each string ``p`` (by ascending sorted index),
walk the suffix-link path from ``p``'s node toward the root.  A path node
``v`` is the overlap of ``(p, q)`` for precisely the strings ``q`` in ``v``'s
subtree interval that were not already claimed by a deeper path node.  So the
walk marks ``v`` exactly when ``v``'s subtree still contains an unclaimed
("white") target, then blackens the whole subtree — and both operations are
O(1) amortized thanks to two precomputed shortcuts:

- ``fav_desc[v]``: the top of every maximal unary non-string chain is
  redirected to the chain's bottom ("favoured") node, so a subtree's
  whiteness is readable from one counter;
- ``fav_panc[u]``: favoured-ancestor links let a blackening charge its
  parent-unit removals only along favoured nodes.

``count[f]`` for a favoured node ``f`` is the number of ``f``'s units (one
per child subtree, plus one for ``f`` itself when it is a whole string) that
still contain white targets.  A journal of touched counters restores state
between strings, so the whole pass over all strings does O(total length)
work on an ``act`` (and O(structure size + total suffix-path length) on an
``ehog``).
"""

from __future__ import annotations

import time
from array import array
from dataclasses import dataclass, field

from .trie import MarkVector, OverlapTrie


class MarkTimeout(RuntimeError):
    """Raised by a marking algorithm that ran past its cooperative deadline."""


@dataclass
class FavStructure:
    """Precomputed shortcuts for lazy blackening on one trie.

    ``count`` is live working state (always equal to ``base_count`` between
    passes); ``v_m`` is the journal of counters touched by the current pass.
    """

    count: array
    base_count: array
    fav_desc: array
    fav_panc: array
    v_m: list[int] = field(default_factory=list)


def precompute_fav(t: OverlapTrie) -> FavStructure:
    """Build :class:`FavStructure` for ``t`` in three linear sweeps.

    A node is *favoured* when it has ≥ 2 children or is a whole string
    (leaves are whole strings, so every chain bottoms out at a favoured
    node).  ``base_count[v]`` = number of children, plus 1 if ``v`` is a
    whole string — the extra unit stands for ``v`` itself as an overlap
    target, and is what lets a string node report "still white" even when
    all its child subtrees are blackened.
    """
    if t.kind not in ("act", "ehog"):
        raise ValueError(f"marking runs on act/ehog structures, got {t.kind!r}")
    n = t.n_nodes
    parent = t.parent
    string_of = t.string_of
    child_cnt = array("i", bytes(4 * n))
    for v in range(1, n):
        child_cnt[parent[v]] += 1

    base = array("i", child_cnt)
    favoured = bytearray(n)
    for v in range(n):
        if string_of[v] != -1:
            base[v] += 1
            favoured[v] = 1
        elif child_cnt[v] >= 2:
            favoured[v] = 1

    first_child = t.first_child
    fav_desc = array("i", bytes(4 * n))
    for v in range(n - 1, -1, -1):
        # non-favoured nodes have exactly one child (0 children implies a
        # leaf, and leaves are whole strings, hence favoured)
        fav_desc[v] = v if favoured[v] else fav_desc[first_child[v]]

    fav_panc = array("i", bytes(4 * n))
    for v in range(1, n):
        p = parent[v]
        fav_panc[v] = p if (p == 0 or favoured[p]) else fav_panc[p]

    return FavStructure(
        count=array("i", base),
        base_count=base,
        fav_desc=fav_desc,
        fav_panc=fav_panc,
    )


def op_counters(run) -> dict[str, int]:
    """Extract the two linearity counters from an instrumented marking run.

    ``run`` is either the counters mapping passed to ``mark_hog_new`` or any
    object carrying one as a ``counters`` attribute (e.g. a benchmark run).
    ``suffix_hops`` counts suffix-path nodes processed (so a string whose
    path is just the root contributes 0); ``count_updates`` counts counter
    writes, restores included.
    """
    counters = run if isinstance(run, dict) else run.counters
    return {
        "suffix_hops": counters["suffix_hops"],
        "count_updates": counters["count_updates"],
    }


def mark_hog_new(
    t: OverlapTrie,
    counters: dict[str, int] | None = None,
    deadline: float | None = None,
    fav: FavStructure | None = None,
    check_restore: bool = False,
) -> MarkVector:
    """Mark overlap nodes on ``t`` by lazy subtree blackening.

    Returns a mark vector whose set bits are the root, all whole-string
    nodes, and all pairwise-overlap nodes.  ``counters`` (when given) is
    filled with ``suffix_hops`` (suffix-path nodes processed across all
    strings), ``count_updates`` (counter writes, journal restores included)
    and ``vm_lengths`` (per-string journal lengths, for bound checks).
    ``check_restore`` re-verifies the between-pass counter invariant after
    every string — for tests; it is quadratic-ish and off by default.
    """
    if t.kind not in ("act", "ehog"):
        raise ValueError(f"marking runs on act/ehog structures, got {t.kind!r}")
    if fav is None:
        fav = precompute_fav(t)
    n = t.n_nodes
    marks = bytearray(n)
    marks[0] = 1
    sl = t.suffix_link
    leaf_of = t.leaf_of
    count = fav.count
    base = fav.base_count
    fdesc = fav.fav_desc
    fpanc = fav.fav_panc
    vm = fav.v_m
    hops = 0
    updates = 0
    vm_lengths: list[int] | None = [] if counters is not None else None

    for j in range(1, t.k + 1):
        x = leaf_of[j]
        marks[x] = 1
        v = sl[x]
        while v:
            hops += 1
            fd = fdesc[v]
            if count[fd]:
                marks[v] = 1
                u = fd
                while u:
                    vm.append(u)
                    if u == fd:
                        count[u] = 0
                    else:
                        c = count[u] - 1
                        count[u] = c
                        if c > 0:
                            break
                    u = fpanc[u]
            v = sl[v]
        updates += 2 * len(vm)  # every journaled write is paired with a restore
        if vm_lengths is not None:
            vm_lengths.append(len(vm))
        for w in vm:
            count[w] = base[w]
        vm.clear()
        if check_restore and count != base:
            raise AssertionError(f"counter state not restored after string {j}")
        if deadline is not None and time.monotonic() > deadline:
            raise MarkTimeout(f"lazy marking passed its deadline at string {j}/{t.k}")

    if counters is not None:
        counters["suffix_hops"] = hops
        counters["count_updates"] = updates
        counters["vm_lengths"] = vm_lengths
    return marks
