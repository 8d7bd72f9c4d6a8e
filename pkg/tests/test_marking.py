"""The lazy-blackening marker: correctness, counters, and state restore."""

import pytest
from hypothesis import given, settings, strategies as st

from hog.baselines import mark_hog_oracle
from hog.datasets import normalize
from hog.ehog import mark_ehog
from hog.marking import MarkTimeout, mark_hog_new, op_counters, precompute_fav
from hog.trie import KIND_EHOG, KIND_HOG, build_act, contract

string_sets = st.lists(
    st.text(alphabet="ab", min_size=1, max_size=10).map(str.encode),
    min_size=1,
    max_size=10,
)


def ehog_of(raw):
    act = build_act(normalize(raw))
    return contract(act, mark_ehog(act), KIND_EHOG)


def marked_strings(t, marks):
    return {t.node_string(v) for v in range(t.n_nodes) if marks[v]}


# -- marked sets on pinned instances -------------------------------------------

def test_fig1_marked_set():
    e = ehog_of([b"aabaa", b"aadbd", b"dbdaa"])
    marks = mark_hog_new(e)
    assert marked_strings(e, marks) == {
        b"", b"aa", b"dbd", b"aabaa", b"aadbd", b"dbdaa"
    }


def test_self_border_of_a_single_string():
    # ov(aa, aa) = "a": the unary chain through "a" must still be markable
    e = ehog_of([b"aa"])
    assert marked_strings(e, mark_hog_new(e)) == {b"", b"a", b"aa"}
    e = ehog_of([b"aaa"])
    assert marked_strings(e, mark_hog_new(e)) == {b"", b"aa", b"aaa"}


def test_every_node_marked_when_everything_overlaps():
    e = ehog_of([b"ab", b"ba"])
    marks = mark_hog_new(e)
    assert marked_strings(e, marks) == {b"", b"a", b"b", b"ab", b"ba"}
    assert sum(marks) == e.n_nodes


def test_no_overlaps_marks_only_root_and_strings():
    e = ehog_of([b"ab", b"cd"])
    assert marked_strings(e, mark_hog_new(e)) == {b"", b"ab", b"cd"}


# -- precomputed shortcut structure -------------------------------------------

def test_fav_structure_on_fig1():
    e = ehog_of([b"aabaa", b"aadbd", b"dbdaa"])
    fav = precompute_fav(e)
    by = {e.node_string(v): v for v in range(e.n_nodes)}

    base = {s: fav.base_count[v] for s, v in by.items()}
    assert base == {
        b"": 2, b"a": 1, b"aa": 2, b"d": 1, b"dbd": 1,
        b"aabaa": 1, b"aadbd": 1, b"dbdaa": 1,
    }
    # unary non-string chains point at their bottom
    assert fav.fav_desc[by[b"a"]] == by[b"aa"]
    assert fav.fav_desc[by[b"d"]] == by[b"dbdaa"]
    assert fav.fav_desc[by[b"dbd"]] == by[b"dbdaa"]
    assert fav.fav_desc[by[b"aa"]] == by[b"aa"]
    # favoured-ancestor links skip unfavoured interior nodes
    assert fav.fav_panc[by[b"aabaa"]] == by[b"aa"]
    assert fav.fav_panc[by[b"dbdaa"]] == 0
    assert fav.fav_panc[by[b"aa"]] == 0


def test_terminal_string_node_counts_itself():
    e = ehog_of([b"ab", b"abc"])
    fav = precompute_fav(e)
    v = e.find_node(b"ab")
    assert fav.base_count[v] == 2  # one child subtree + itself as a target


def test_precompute_rejects_contracted_result_kind():
    e = ehog_of([b"ab"])
    h = contract(e, mark_hog_oracle(e), KIND_HOG)
    with pytest.raises(ValueError):
        precompute_fav(h)
    with pytest.raises(ValueError):
        mark_hog_new(h)


# -- counters -------------------------------------------------------------------

def test_counters_single_string_trivial_path():
    e = ehog_of([b"a"])
    c = {}
    mark_hog_new(e, counters=c)
    assert c["suffix_hops"] == 0
    assert c["count_updates"] == 0
    assert c["vm_lengths"] == [0]


def test_counters_fig1():
    e = ehog_of([b"aabaa", b"aadbd", b"dbdaa"])
    c = {}
    mark_hog_new(e, counters=c)
    # suffix paths: aabaa -> aa -> a; aadbd -> dbd -> d; dbdaa -> aa -> a
    assert c["suffix_hops"] == 6
    assert c["count_updates"] == 6
    assert c["vm_lengths"] == [1, 1, 1]


def test_op_counters_accepts_mapping_or_run_object():
    e = ehog_of([b"aa"])
    c = {}
    mark_hog_new(e, counters=c)
    assert op_counters(c) == {"suffix_hops": 1, "count_updates": 2}

    class Run:
        counters = c

    assert op_counters(Run()) == op_counters(c)


@given(string_sets)
@settings(max_examples=200, deadline=None)
def test_journal_bound_and_restore(raw):
    ss = normalize(raw)
    act = build_act(ss)
    e = contract(act, mark_ehog(act), KIND_EHOG)
    c = {}
    marks = mark_hog_new(e, counters=c, check_restore=True)
    assert bytes(marks) == bytes(mark_hog_oracle(e))
    # each pass journals at most one counter per path node plus the
    # blackening charges, all bounded by the string's own length
    for j, vm_len in enumerate(c["vm_lengths"], start=1):
        assert vm_len <= 3 * len(ss.string(j))
    assert c["count_updates"] == 2 * sum(c["vm_lengths"])


@given(string_sets)
@settings(max_examples=100, deadline=None)
def test_same_marked_strings_on_full_and_extended(raw):
    ss = normalize(raw)
    act = build_act(ss)
    e = contract(act, mark_ehog(act), KIND_EHOG)
    on_act = marked_strings(act, mark_hog_new(act))
    on_ehog = marked_strings(e, mark_hog_new(e))
    assert on_act == on_ehog


def test_fav_structure_is_reusable_across_runs():
    e = ehog_of([b"abab", b"bab", b"ba"])
    fav = precompute_fav(e)
    first = mark_hog_new(e, fav=fav)
    second = mark_hog_new(e, fav=fav)
    assert bytes(first) == bytes(second)


def test_deadline_aborts():
    e = ehog_of([b"abab", b"bab"])
    with pytest.raises(MarkTimeout):
        mark_hog_new(e, deadline=0.0)
