"""Loading, validation and deterministic generation of string sets.

Every structure in this package is built over a :class:`StringSet`: a
non-empty collection of distinct byte strings, held in lexicographically
sorted order.  Sorted order is load-bearing — the trie builder relies on it
to insert each string along the rightmost spine, and leaf intervals over the
sorted indices are what make interval-based marking and queries work.

Indices are 1-based throughout ("string j" means ``ss.string(j)`` with
``1 <= j <= k``), matching the interval convention ``[start, end] ⊆ [1, k]``
used by the trie layer.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64 pseudo-random generator (Steele, Lea & Flood 2014).

    Chosen because it is trivially portable: the whole state is one 64-bit
    integer and the output function is a fixed sequence of xor-shift-multiply
    steps, so the same seed yields the same stream on every platform and
    Python version.  Random byte strings are derived as follows: each 64-bit
    output is expanded to 8 bytes little-endian, and each byte ``b`` maps to
    ``alphabet[b % len(alphabet)]`` over the byte-sorted alphabet.  The
    modulo step is exactly uniform when the alphabet size divides 256 (in
    particular for sizes 1, 2 and 4) and carries a bias of at most 1/64 for
    other sizes ≤ 64.
    """

    __slots__ = ("_state",)

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def byte_block(self, nbytes: int) -> bytearray:
        """Return the next ``nbytes`` bytes of the stream (little-endian per word)."""
        out = bytearray()
        for _ in range((nbytes + 7) // 8):
            out += self.next_u64().to_bytes(8, "little")
        del out[nbytes:]
        return out


@dataclass(frozen=True)
class StringSet:
    """Distinct byte strings in sorted order, plus original-order bookkeeping.

    Attributes
    ----------
    strings : tuple[bytes, ...]
        The k distinct strings, lexicographically ascending.  ``strings[0]``
        is string 1; prefer :meth:`string` which takes 1-based indices.
    k, n : int
        Number of strings and total length in bytes.
    orig_to_sorted : tuple[int, ...]
        1-based map from pre-deduplication input position to sorted index.
        Duplicated inputs map to the same sorted index.  Entry 0 is unused.
    sorted_to_orig : tuple[int, ...]
        1-based map from sorted index to the first input position holding
        that string.  Entry 0 is unused.
    alphabet : bytes
        Sorted distinct bytes occurring across all strings.
    """

    strings: tuple[bytes, ...]
    orig_to_sorted: tuple[int, ...]
    sorted_to_orig: tuple[int, ...]
    alphabet: bytes
    k: int = field(init=False)
    n: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "k", len(self.strings))
        object.__setattr__(self, "n", sum(len(s) for s in self.strings))

    def string(self, j: int) -> bytes:
        """Return string ``j`` (1-based sorted index)."""
        if not 1 <= j <= self.k:
            raise IndexError(f"string index {j} out of range 1..{self.k}")
        return self.strings[j - 1]

    @property
    def orig_count(self) -> int:
        """Number of input strings before deduplication."""
        return len(self.orig_to_sorted) - 1


def normalize(raw: list[bytes]) -> StringSet:
    """Sort, deduplicate and index-map raw input strings.

    Raises ``ValueError`` on an empty collection or on any empty string —
    the trie layer requires every string to be non-empty.
    """
    if not raw:
        raise ValueError("string set is empty")
    for pos, s in enumerate(raw, 1):
        if not s:
            raise ValueError(f"empty string at input position {pos}")
    ordered = sorted(set(raw))
    rank = {s: j for j, s in enumerate(ordered, 1)}
    orig_to_sorted = [0] + [rank[s] for s in raw]
    sorted_to_orig = [0] * (len(ordered) + 1)
    for pos in range(len(raw), 0, -1):
        sorted_to_orig[orig_to_sorted[pos]] = pos
    alphabet = bytes(sorted(set(b"".join(ordered))))
    return StringSet(
        strings=tuple(ordered),
        orig_to_sorted=tuple(orig_to_sorted),
        sorted_to_orig=tuple(sorted_to_orig),
        alphabet=alphabet,
    )


def load_lines(path: str | os.PathLike[str]) -> StringSet:
    """Load one string per line (LF or CRLF, raw bytes otherwise untouched)."""
    with open(path, "rb") as fh:
        data = fh.read()
    lines = data.split(b"\n")
    if lines and lines[-1] == b"":
        lines.pop()  # trailing newline, not an empty record
    raw = [ln[:-1] if ln.endswith(b"\r") else ln for ln in lines]
    if not raw:
        raise ValueError(f"{os.fspath(path)!s}: no strings found")
    return normalize(raw)


def load_fasta(
    path: str | os.PathLike[str], filter_alphabet: bytes | None = None
) -> StringSet:
    """Load FASTA records; each record's concatenated sequence is one string.

    ``filter_alphabet`` (when given) drops any record containing a byte
    outside the allowed set.  It is an error for no records to survive.
    """
    records: list[bytes] = []
    current: list[bytes] | None = None
    with open(path, "rb") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith(b">"):
                if current is not None:
                    records.append(b"".join(current))
                current = []
            else:
                if current is None:
                    raise ValueError(f"{os.fspath(path)!s}: sequence before first header")
                current.append(line)
    if current is not None:
        records.append(b"".join(current))
    if not records:
        raise ValueError(f"{os.fspath(path)!s}: no FASTA records found")
    if filter_alphabet is not None:
        allowed = frozenset(filter_alphabet)
        records = [r for r in records if allowed.issuperset(r)]
        if not records:
            raise ValueError(
                f"{os.fspath(path)!s}: no records left after alphabet filtering"
            )
    return normalize(records)


_MAX_REDRAWS = 100  # per-string redraw budget before giving up on distinctness


def generate_random(k: int, n: int, alphabet: bytes, seed: int) -> StringSet:
    """Generate ``k`` distinct random strings of total length ``n``.

    Lengths are balanced: the first ``n % k`` strings get ``n // k + 1``
    bytes, the rest ``n // k``.  Bytes come from a seeded :class:`SplitMix64`
    stream (see its docstring for the exact derivation), so results are
    reproducible bit-for-bit across platforms.  Collisions are resolved by
    redrawing the colliding string from the continuing stream; if ``k``
    distinct strings cannot be produced (tiny alphabet, short lengths) a
    ``ValueError`` is raised rather than returning fewer.
    """
    if k <= 0 or n <= 0:
        raise ValueError("k and n must be positive")
    if n < k:
        raise ValueError(f"total length n={n} cannot cover k={k} non-empty strings")
    if not alphabet:
        raise ValueError("alphabet must be non-empty")
    alphabet = bytes(sorted(set(alphabet)))
    table = bytes(alphabet[b % len(alphabet)] for b in range(256))

    base, extra = divmod(n, k)
    lengths = [base + 1] * extra + [base] * (k - extra)
    rng = SplitMix64(seed)
    block = rng.byte_block(n).translate(table)

    raw: list[bytes] = []
    seen: set[bytes] = set()
    pos = 0
    for length in lengths:
        s = bytes(block[pos : pos + length])
        pos += length
        redraws = 0
        while s in seen:
            redraws += 1
            if redraws > _MAX_REDRAWS:
                raise ValueError(
                    f"cannot generate {k} distinct strings of length ~{base} "
                    f"over a {len(alphabet)}-letter alphabet"
                )
            s = bytes(rng.byte_block(length).translate(table))
        seen.add(s)
        raw.append(s)
    return normalize(raw)


def dump_lines(ss: StringSet, path: str | os.PathLike[str]) -> None:
    """Write the sorted strings one per line (LF), mirroring ``load_lines``."""
    with open(path, "wb") as fh:
        for s in ss.strings:
            fh.write(s)
            fh.write(b"\n")
