"""Pauli/Majorana algebra: multiplication phases, commutation, JW mapping.

The Jordan-Wigner round trip is the independent oracle for the Majorana
commutation parity rule, and single-qubit multiplication tables pin the
phase convention.
"""

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tomosched.algebra import (
    DimensionError,
    MajoranaMonomial,
    PauliString,
    jw_map,
    majorana_commutes,
    majorana_multiply,
    measurable_monomial,
    parity_monomial,
    pauli_commutes,
    pauli_multiply,
)


def P(label):
    return PauliString.from_label(label)


class TestPauliMultiply:
    def test_single_qubit_table(self):
        # X*Y = iZ, Y*Z = iX, Z*X = iY and the reversed products
        assert pauli_multiply(P("X"), P("Y")) == P("i^1·Z")
        assert pauli_multiply(P("Y"), P("X")) == P("i^3·Z")
        assert pauli_multiply(P("Y"), P("Z")) == P("i^1·X")
        assert pauli_multiply(P("Z"), P("Y")) == P("i^3·X")
        assert pauli_multiply(P("Z"), P("X")) == P("i^1·Y")
        assert pauli_multiply(P("X"), P("Z")) == P("i^3·Y")

    @pytest.mark.parametrize("label", ["X", "Y", "Z", "XYZI", "i^2·ZZ", "YY"])
    def test_hermitian_squares_to_identity(self, label):
        p = P(label)
        assert p.is_hermitian
        assert pauli_multiply(p, p) == PauliString.identity(p.n_qubits)

    def test_mismatched_lengths_raise(self):
        with pytest.raises(DimensionError):
            pauli_multiply(P("XX"), P("X"))
        with pytest.raises(DimensionError):
            pauli_commutes(P("XX"), P("X"))

    @given(st.data())
    def test_associativity_with_phases(self, data):
        n = data.draw(st.integers(1, 5))
        ps = [
            PauliString(
                n,
                data.draw(st.integers(0, 2**n - 1)),
                data.draw(st.integers(0, 2**n - 1)),
                data.draw(st.integers(0, 3)),
            )
            for _ in range(3)
        ]
        a, b, c = ps
        left = pauli_multiply(pauli_multiply(a, b), c)
        right = pauli_multiply(a, pauli_multiply(b, c))
        assert left == right


class TestPauliCommutes:
    def test_examples(self):
        assert not pauli_commutes(P("XI"), P("ZI"))
        assert pauli_commutes(P("XX"), P("ZZ"))
        assert pauli_commutes(P("II"), P("XY"))

    def test_agrees_with_multiplication(self):
        # oracle: commutation iff the two products share a phase
        for xa, za, xb, zb in itertools.product(range(4), repeat=4):
            a = PauliString(2, xa, za)
            b = PauliString(2, xb, zb)
            ab = pauli_multiply(a, b)
            ba = pauli_multiply(b, a)
            assert (ab == ba) == pauli_commutes(a, b)


class TestLabels:
    @pytest.mark.parametrize(
        "label", ["I", "XIZY", "i^1·Z", "i^3·YYX", "ZZZZZ", "i^2·X"]
    )
    def test_roundtrip(self, label):
        assert P(label).to_label() == label

    def test_y_embedded_phase(self):
        # Y displays with no prefix even though it stores i*XZ internally
        y = PauliString.from_letter(1, 0, "Y")
        assert y.phase == 1
        assert y.to_label() == "Y"

    def test_bad_labels(self):
        with pytest.raises(ValueError):
            P("XQ")
        with pytest.raises(ValueError):
            P("i^4·X")


def all_monomials(n_modes, max_degree):
    for d in range(max_degree + 1):
        for modes in itertools.combinations(range(n_modes), d):
            yield MajoranaMonomial(modes)


class TestMajorana:
    def test_commutes_examples(self):
        g = MajoranaMonomial
        assert majorana_commutes(g((0, 1)), g((2, 3)))
        assert not majorana_commutes(g((0, 1)), g((1, 2)))
        assert majorana_commutes(g((0,)), g((0,)))

    def test_commutes_matches_jw_oracle_exhaustive(self):
        # parity rule vs the Pauli-level answer, 2N = 12 modes, degree <= 4
        n_fermions = 6
        mons = list(all_monomials(2 * n_fermions, 4))
        images = [jw_map(m, n_fermions) for m in mons]
        for i, a in enumerate(mons):
            for j in range(i, len(mons)):
                assert majorana_commutes(a, mons[j]) == pauli_commutes(
                    images[i], images[j]
                ), (a, mons[j])

    def test_degree_one_images_anticommute_and_square(self):
        n = 6
        singles = [jw_map(MajoranaMonomial((m,)), n) for m in range(2 * n)]
        for i, p in enumerate(singles):
            assert pauli_multiply(p, p) == PauliString.identity(n)
            for q in singles[i + 1 :]:
                assert not pauli_commutes(p, q)

    def test_jw_pair_is_z(self):
        # i*g0*g1 -> Z_0
        assert jw_map(MajoranaMonomial((0, 1), phase=1), 1) == P("Z")
        for n in (2, 4):
            for q in range(n):
                pair = measurable_monomial((2 * q, 2 * q + 1))
                assert jw_map(pair, n) == PauliString.from_letter(n, q, "Z")

    def test_jw_degree_one_letters(self):
        assert jw_map(MajoranaMonomial((0,)), 2) == P("XI")
        assert jw_map(MajoranaMonomial((2,)), 2) == P("ZX")
        # odd modes are Y-terminated up to the oracle-fixed sign
        img = jw_map(MajoranaMonomial((3,)), 2)
        assert img.letter_at(1) == "Y" and img.letter_at(0) == "Z"

    def test_jw_is_multiplicative(self):
        # homomorphism check by enumeration at N = 3
        n = 3
        mons = list(all_monomials(2 * n, 3))
        for a in mons:
            for b in mons:
                lhs = jw_map(majorana_multiply(a, b), n)
                rhs = pauli_multiply(jw_map(a, n), jw_map(b, n))
                assert lhs == rhs

    def test_jw_g1g2_matches_paulis(self):
        got = jw_map(MajoranaMonomial((1, 2)), 2)
        expected = pauli_multiply(jw_map(MajoranaMonomial((1,)), 2),
                                  jw_map(MajoranaMonomial((2,)), 2))
        assert got == expected
        assert (got.x, got.z) == (P("XX").x, P("XX").z)

    @given(
        st.sets(st.integers(0, 9), max_size=5),
        st.sets(st.integers(0, 9), max_size=5),
        st.integers(0, 3),
        st.integers(0, 3),
    )
    def test_multiply_involution_property(self, ma, mb, pa, pb):
        a = MajoranaMonomial(tuple(sorted(ma)), pa)
        b = MajoranaMonomial(tuple(sorted(mb)), pb)
        ab = majorana_multiply(a, b)
        # multiplying by b's inverse recovers a: b^{-1} = b with phase fixed
        b_sq = majorana_multiply(b, b)
        assert b_sq.modes == ()
        b_inv = MajoranaMonomial(b.modes, (b.phase - b_sq.phase) % 4)
        assert majorana_multiply(ab, b_inv) == a

    def test_measurable_prefactors(self):
        assert measurable_monomial((0, 1)).phase == 1
        assert measurable_monomial((0, 1, 2, 3)).phase == 0
        with pytest.raises(ValueError):
            measurable_monomial((0, 1, 2))

    def test_measurable_squares_to_plus_one(self):
        for modes in [(0, 1), (0, 3), (0, 1, 2, 3), (1, 2, 5, 6)]:
            m = measurable_monomial(modes)
            sq = majorana_multiply(m, m)
            assert sq == MajoranaMonomial((), 0)

    def test_validation(self):
        with pytest.raises(ValueError):
            MajoranaMonomial((1, 1))
        with pytest.raises(ValueError):
            MajoranaMonomial((2, 1))
        with pytest.raises(DimensionError):
            jw_map(MajoranaMonomial((4,)), 2)

    def test_parity_commutes_with_pairs(self):
        par = parity_monomial(4)
        for modes in itertools.combinations(range(8), 2):
            assert majorana_commutes(MajoranaMonomial(modes), par)
