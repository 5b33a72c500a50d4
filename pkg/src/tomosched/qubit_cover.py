"""Pauli-word covers for qubit k-RDM tomography via binary partitions.

A Pauli word assigns one of X/Y/Z to every qubit; sampling the word samples
every operator whose non-identity sites match it.  The families built here
guarantee every k-qubit operator is contained in at least one word:

* k = 1: the three uniform words.
* k = 2: for each binary digit position of the qubit index, the six words
  with letter A on digit-0 qubits and letter B != A on digit-1 qubits, plus
  the three uniform words - exactly 6*ceil(log2 N) + 3 words.
* k >= 3: recursive k-ary partitions.  A k-subset is split by its highest
  differing index bit into two groups, each handled by a lower-arity
  partition on the bits below; words take all 3^k letter assignments over
  the parts.  The family size is O(3^k log^{k-1} N); the count is measured,
  never assumed, and coverage is the tested contract.

Words are plain strings over {X,Y,Z}, qubit 0 leftmost.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from tomosched.algebra import PauliString

_LETTERS = "XYZ"


@dataclass(frozen=True, slots=True)
class BinaryPartition:
    """Qubits split by one binary digit of their index."""

    n_qubits: int
    level: int
    part0: tuple[int, ...]
    part1: tuple[int, ...]


def _n_levels(n_qubits: int) -> int:
    # ceil(log2 N); every pair of indices below N differs in these bits
    return (n_qubits - 1).bit_length()


def binary_partition(n_qubits: int, level: int) -> BinaryPartition:
    if n_qubits < 2:
        raise ValueError("binary partitions need at least 2 qubits")
    if not 0 <= level < _n_levels(n_qubits):
        raise ValueError(f"level {level} out of range for {n_qubits} qubits")
    bits = [(i >> level) & 1 for i in range(n_qubits)]
    return BinaryPartition(
        n_qubits,
        level,
        tuple(i for i, b in enumerate(bits) if b == 0),
        tuple(i for i, b in enumerate(bits) if b == 1),
    )


def qubit_words_k2(n_qubits: int) -> list[str]:
    """The 6*ceil(log2 N) + 3 words containing every 2-qubit operator."""
    if n_qubits < 2:
        raise ValueError("k = 2 cover needs N >= 2 (N = 1 is the k = 1 cover)")
    words = [letter * n_qubits for letter in _LETTERS]
    for level in range(_n_levels(n_qubits)):
        part = binary_partition(n_qubits, level)
        in_part1 = set(part.part1)
        for a, b in itertools.permutations(_LETTERS, 2):
            words.append(
                "".join(b if q in in_part1 else a for q in range(n_qubits))
            )
    return list(dict.fromkeys(words))


def _partition_trees(k: int, max_bit: int):
    """All k-part splits realizable with index bits below max_bit.

    A part is a list of (bit, value) constraints; an index belongs to the
    part when all its constrained bits match.  The root split always uses
    the highest bit in the tree, matching the largest-splitting-bit search
    order used by the coverage argument.
    """
    if k == 1:
        return [[[]]]
    out = []
    for bit in range(max_bit):
        for k0 in range(1, k):
            for left in _partition_trees(k0, bit):
                for right in _partition_trees(k - k0, bit):
                    out.append(
                        [cond + [(bit, 0)] for cond in left]
                        + [cond + [(bit, 1)] for cond in right]
                    )
    return out


def _materialize(partition, n_qubits: int) -> list[tuple[int, ...]]:
    parts = []
    for cond in partition:
        members = tuple(
            i
            for i in range(n_qubits)
            if all((i >> bit) & 1 == val for bit, val in cond)
        )
        if members:
            parts.append(members)
    return parts


def qubit_words_k(n_qubits: int, k: int) -> list[str]:
    """Words containing every k-qubit operator; k = 1 and 2 use the direct
    families, larger k the recursive partition scheme."""
    if not 1 <= k <= n_qubits:
        raise ValueError(f"k must be in [1, {n_qubits}], got {k}")
    if k == 1:
        return [letter * n_qubits for letter in _LETTERS]
    if k == 2:
        return qubit_words_k2(n_qubits)
    words = [letter * n_qubits for letter in _LETTERS]
    for partition in _partition_trees(k, _n_levels(n_qubits)):
        parts = _materialize(partition, n_qubits)
        for letters in itertools.product(_LETTERS, repeat=len(parts)):
            word = [""] * n_qubits
            for part, letter in zip(parts, letters):
                for q in part:
                    word[q] = letter
            words.append("".join(word))
    return list(dict.fromkeys(words))


def word_contains(word: str, p: PauliString) -> bool:
    """True iff every non-identity site of p matches the word's letter."""
    if len(word) != p.n_qubits:
        raise ValueError("word and operator sizes differ")
    return all(word[q] == p.letter_at(q) for q in p.support())
