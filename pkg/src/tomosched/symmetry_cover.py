"""Symmetry-aware clique generation.

Pauli-word symmetries split the Majorana modes into bins by commutation
signature; a product operator conserves the symmetries exactly when the XOR
of its modes' signatures is zero.  Only those operators need covering:

* within one bin (all four signatures equal): each bin runs its own
  quadruple cover, all bins advancing in lockstep;
* one pair in bin s and one in bin t: every combination of internal
  pairing rounds across bins, realized with all-pairs covering rows;
* four distinct bins: for each signature offset beta (first bit zero),
  bins are matched with their beta-partners and cross-paired; covering rows
  over the per-bin-pair shift families make every two cross edges co-occur.

For zero symmetries this degrades to the plain quadruple cover.  Bins are
whatever the supplied symmetries produce; balance is never assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from tomosched.algebra import (
    MajoranaMonomial,
    PauliString,
    jw_map,
    pauli_commutes,
    pauli_multiply,
)
from tomosched.majorana_cover import (
    Pairing,
    _greedy_complete,
    cross_rounds,
    intra_rounds,
    quad_cover_rounds,
)
from tomosched.tuple_iter import cover_rows


class SymmetryValidationError(ValueError):
    """Supplied symmetry operators are not commuting Hermitian involutions."""


@dataclass(frozen=True, slots=True)
class SymmetrySet:
    """Mutually commuting Pauli-word symmetries, each squaring to identity."""

    operators: tuple[PauliString, ...]

    def __post_init__(self):
        ops = tuple(self.operators)
        object.__setattr__(self, "operators", ops)
        if not ops:
            return
        n = ops[0].n_qubits
        for s in ops:
            if s.n_qubits != n:
                raise SymmetryValidationError("symmetries act on mixed sizes")
            if pauli_multiply(s, s) != PauliString.identity(n):
                raise SymmetryValidationError(
                    f"{s} is not a Hermitian involution"
                )
        for a, b in itertools.combinations(ops, 2):
            if not pauli_commutes(a, b):
                raise SymmetryValidationError(f"{a} and {b} do not commute")

    @property
    def n_sym(self) -> int:
        return len(self.operators)


def bin_majoranas(n_fermions: int, syms: SymmetrySet) -> dict[tuple[int, ...], list[int]]:
    """Assign each mode its anticommutation signature against the symmetries.

    Bit i of the label is 1 iff the mode's JW image anticommutes with
    symmetry i.  The bins partition all 2N modes.
    """
    if syms.operators and syms.operators[0].n_qubits != n_fermions:
        raise SymmetryValidationError(
            "symmetries must act on the JW register of the fermion count"
        )
    bins: dict[tuple[int, ...], list[int]] = {}
    for mode in range(2 * n_fermions):
        img = jw_map(MajoranaMonomial((mode,)), n_fermions)
        label = tuple(
            0 if pauli_commutes(img, s) else 1 for s in syms.operators
        )
        bins.setdefault(label, []).append(mode)
    return bins


def monomial_label(m: MajoranaMonomial, mode_labels) -> tuple[int, ...]:
    """XOR of the constituent modes' bin labels.

    ``mode_labels`` maps mode index to label tuple (a dict or sequence).
    """
    label = None
    for mode in m.modes:
        bits = mode_labels[mode]
        label = bits if label is None else tuple(
            a ^ b for a, b in zip(label, bits)
        )
    if label is None:
        raise ValueError("empty monomial has no label")
    return label


def mode_label_map(bins) -> dict[int, tuple[int, ...]]:
    return {mode: label for label, modes in bins.items() for mode in modes}


def cover_from_bins(n_fermions: int, bins) -> list[Pairing]:
    """Clique cover of all signature-conserving quadruples for given bins.

    ``bins`` maps label tuples to mode lists; empty bins may be absent.
    Every emitted clique is completed to a perfect matching of all 2N modes
    (filler pairs are harmless extra measurements).
    """
    u = 2 * n_fermions
    ordered = sorted((label, sorted(modes)) for label, modes in bins.items())
    if sum(len(m) for _, m in ordered) != u:
        raise ValueError("bins must partition all 2N modes")
    out: list[Pairing] = []

    def emit(pairs, label):
        out.append(Pairing(u, tuple(_greedy_complete(u, pairs)), label))

    # within-bin quadruples: per-bin covers advanced in lockstep; exhausted
    # bins drop out and their modes fall to the greedy filler
    bin_quads = [
        [pairs for pairs, _ in quad_cover_rounds(len(modes))]
        for _, modes in ordered
    ]
    for t in range(max((len(q) for q in bin_quads), default=0)):
        pairs = []
        for (_, modes), rounds in zip(ordered, bin_quads):
            if t < len(rounds):
                pairs += [(modes[a], modes[b]) for a, b in rounds[t]]
        emit(pairs, f"sym:quad t={t}")

    # cross-bin pair*pair: all combinations of internal pairing rounds
    pairable = [
        (label, intra_rounds(modes)) for label, modes in ordered if len(modes) >= 2
    ]
    if len(pairable) >= 2:
        for r, row in enumerate(cover_rows([len(f) for _, f in pairable])):
            pairs = []
            for (_, fam), idx in zip(pairable, row):
                pairs += fam[idx]
            emit(pairs, f"sym:intra r={r}")

    # cross-bin edges: bins matched with their beta-partners, cross-pairing
    # shifts combined through covering rows
    n_sym = len(ordered[0][0]) if ordered else 0
    by_label = dict(ordered)
    for beta in itertools.product((0, 1), repeat=max(n_sym - 1, 0)):
        beta = (0,) + beta
        if len(beta) != n_sym or not any(beta):
            continue
        fams = []
        for label, modes in ordered:
            partner = tuple(a ^ b for a, b in zip(label, beta))
            if partner <= label or partner not in by_label:
                continue
            fams.append(cross_rounds(modes, by_label[partner]))
        fams = [f for f in fams if f]
        if not fams:
            continue
        beta_txt = "".join(map(str, beta))
        for r, row in enumerate(cover_rows([len(f) for f in fams])):
            pairs = []
            for fam, idx in zip(fams, row):
                pairs += fam[idx]
            emit(pairs, f"sym:cross b={beta_txt} r={r}")

    return out


def symmetry_cover(n_fermions: int, syms: SymmetrySet) -> list[Pairing]:
    """Cover of every symmetry-conserved 4-mode operator under real symmetries."""
    return cover_from_bins(n_fermions, bin_majoranas(n_fermions, syms))


def synthetic_balanced_bins(n_fermions: int, n_sym: int) -> dict[tuple[int, ...], list[int]]:
    """2^n_sym equal contiguous bins, the idealized balanced-split scenario."""
    n_bins = 1 << n_sym
    if (2 * n_fermions) % n_bins:
        raise ValueError(
            f"2N = {2 * n_fermions} does not split into {n_bins} equal bins"
        )
    size = 2 * n_fermions // n_bins
    return {
        tuple((i >> b) & 1 for b in range(max(n_sym, 1)))[:n_sym]: list(
            range(i * size, (i + 1) * size)
        )
        for i in range(n_bins)
    }


def predicted_count(n_fermions: int, n_sym: int) -> float:
    """Leading-order clique count for balanced bins."""
    n = n_fermions
    return n * n * (10 / 3 * 4.0 ** (-n_sym) + 2.0 ** (1 - n_sym))
