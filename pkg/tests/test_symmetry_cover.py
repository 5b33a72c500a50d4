"""Symmetry binning and conserved-quadruple coverage.

The coverage oracle enumerates every quadruple, computes its XOR signature
from the bin map, and demands tiling only for signature-zero quadruples.
"""

import itertools

import pytest

from tomosched.algebra import MajoranaMonomial, PauliString
from tomosched.majorana_cover import (
    cliques_commute,
    covers_quadruple,
    four_majorana_cover,
)
from tomosched.symmetry_cover import (
    SymmetrySet,
    SymmetryValidationError,
    bin_majoranas,
    cover_from_bins,
    mode_label_map,
    monomial_label,
    predicted_count,
    symmetry_cover,
    synthetic_balanced_bins,
)


def zero_label_missing(n_fermions, bins, family):
    labels = mode_label_map(bins)
    missing = []
    for quad in itertools.combinations(range(2 * n_fermions), 4):
        sig = labels[quad[0]]
        for m in quad[1:]:
            sig = tuple(a ^ b for a, b in zip(sig, labels[m]))
        if any(sig):
            continue
        if not covers_quadruple(family, quad):
            missing.append(quad)
    return missing


class TestBins:
    def test_single_z_symmetry(self):
        syms = SymmetrySet((PauliString.from_label("ZI"),))
        bins = bin_majoranas(2, syms)
        assert bins[(1,)] == [0, 1]
        assert bins[(0,)] == [2, 3]

    def test_global_parity_gives_one_bin(self):
        # every mode anticommutes with the all-Z word
        n = 3
        syms = SymmetrySet((PauliString.from_label("Z" * n),))
        bins = bin_majoranas(n, syms)
        assert set(bins) == {(1,)}
        assert bins[(1,)] == list(range(2 * n))

    def test_no_symmetries(self):
        bins = bin_majoranas(3, SymmetrySet(()))
        assert bins == {(): list(range(6))}

    def test_validation(self):
        with pytest.raises(SymmetryValidationError):
            SymmetrySet((PauliString.from_label("i^1·Z"),))  # squares to -1
        with pytest.raises(SymmetryValidationError):
            SymmetrySet(
                (PauliString.from_label("XI"), PauliString.from_label("ZI"))
            )
        with pytest.raises(SymmetryValidationError):
            bin_majoranas(3, SymmetrySet((PauliString.from_label("ZZ"),)))


class TestMonomialLabel:
    def test_same_bin_pair_is_zero(self):
        labels = {0: (1, 0), 1: (1, 0)}
        assert monomial_label(MajoranaMonomial((0, 1)), labels) == (0, 0)

    def test_xor_of_two(self):
        labels = {0: (1, 0), 1: (0, 1)}
        assert monomial_label(MajoranaMonomial((0, 1)), labels) == (1, 1)

    def test_conserved_quadruple_form(self):
        s, d, a = (1, 0), (0, 1), (1, 1)
        x = lambda u, v: tuple(i ^ j for i, j in zip(u, v))
        labels = {0: s, 1: x(s, d), 2: x(s, a), 3: x(s, x(a, d))}
        assert monomial_label(MajoranaMonomial((0, 1, 2, 3)), labels) == (0, 0)


class TestCover:
    def test_no_symmetries_reduces_to_plain_cover(self):
        fam_plain = four_majorana_cover(4)
        fam_sym = symmetry_cover(4, SymmetrySet(()))
        assert [p.pairs for p in fam_sym] == [p.pairs for p in fam_plain]

    @pytest.mark.parametrize(
        "n,labels",
        [
            (4, ["Z" + "I" * 3]),
            (6, ["Z" + "I" * 5]),
            (8, ["Z" + "I" * 7]),
            (8, ["Z" + "I" * 7, "IZ" + "I" * 6]),
            (6, ["ZZ" + "I" * 4, "Z" * 6]),
        ],
    )
    def test_real_symmetry_coverage_exhaustive(self, n, labels):
        syms = SymmetrySet(tuple(PauliString.from_label(s) for s in labels))
        bins = bin_majoranas(n, syms)
        fam = cover_from_bins(n, bins)
        assert zero_label_missing(n, bins, fam) == []

    @pytest.mark.parametrize("n,n_sym", [(8, 1), (8, 2), (4, 1), (6, 1)])
    def test_synthetic_balanced_coverage_exhaustive(self, n, n_sym):
        bins = synthetic_balanced_bins(n, n_sym)
        fam = cover_from_bins(n, bins)
        assert zero_label_missing(n, bins, fam) == []

    def test_within_clique_commutation(self):
        bins = synthetic_balanced_bins(8, 2)
        for pairing in cover_from_bins(8, bins):
            assert cliques_commute(pairing, 2)

    def test_count_tracks_prediction_smoke(self):
        for n_sym in (1, 2, 3):
            fam = cover_from_bins(16, synthetic_balanced_bins(16, n_sym))
            ratio = len(fam) / predicted_count(16, n_sym)
            assert 0.5 <= ratio <= 2.0, (n_sym, ratio)

    def test_unbalanced_bins_degrade_gracefully(self):
        # one tiny bin, one large: the tiny bin has no internal quadruples
        syms = SymmetrySet((PauliString.from_label("Z" + "I" * 7),))
        bins = bin_majoranas(8, syms)
        assert sorted(len(m) for m in bins.values()) == [2, 14]
        fam = cover_from_bins(8, bins)
        assert zero_label_missing(8, bins, fam) == []

    def test_synthetic_bins_validation(self):
        with pytest.raises(ValueError):
            synthetic_balanced_bins(6, 3)  # 12 modes into 8 bins
