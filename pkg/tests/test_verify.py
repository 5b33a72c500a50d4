"""The oracles themselves: coverage checks, conjugation vs dense agreement,
clique maxima, sampling estimator, and the closed-form bounds."""

import itertools
import math

import numpy as np
import pytest

from tomosched.algebra import (
    PauliString,
    jw_map,
    measurable_monomial,
)
from tomosched.circuits import (
    basis_rotation_circuit,
    majorana_rotation,
    swap_network,
)
from tomosched.majorana_cover import (
    Pairing,
    four_majorana_cover,
    pairing_cliques_1rdm,
)
from tomosched.qubit_cover import qubit_words_k, qubit_words_k2
from tomosched.symmetry_cover import (
    bin_majoranas,
    mode_label_map,
    SymmetrySet,
    cover_from_bins,
)
from tomosched.verify import (
    UnsupportedGateError,
    bound_values,
    check_cover_majorana,
    check_cover_qubit,
    circuit_unitary,
    clifford_conjugate,
    dense_simulate,
    max_anticommuting_clique,
    max_commuting_triples,
    pauli_dense,
    pauli_expectation,
    random_state,
    sample_estimate,
)


class TestCheckCoverQubit:
    def test_generated_families_pass(self):
        assert check_cover_qubit(qubit_words_k2(8), 8, 2).covered
        assert check_cover_qubit(qubit_words_k(8, 3), 8, 3).covered

    def test_uniform_words_miss_mixed_operators(self):
        report = check_cover_qubit(["XXXX", "YYYY", "ZZZZ"], 4, 2)
        assert not report.covered
        assert PauliString.from_label("XZII") in report.missing

    def test_k1_uniform_covered(self):
        assert check_cover_qubit(["XXXX", "YYYY", "ZZZZ"], 4, 1).covered

    def test_sampled_mode_downgrade(self):
        report = check_cover_qubit(qubit_words_k2(64), 64, 2, mode="sampled")
        assert report.mode == "sampled"
        assert report.covered


class TestCheckCoverMajorana:
    def test_one_rdm_families(self):
        assert check_cover_majorana(pairing_cliques_1rdm(8), 8, 1).covered

    def test_quad_cover(self):
        assert check_cover_majorana(four_majorana_cover(8), 8, 2).covered

    def test_single_pairing_misses(self):
        fam = [Pairing(8, ((0, 1), (2, 3), (4, 5), (6, 7)))]
        report = check_cover_majorana(fam, 4, 1)
        assert not report.covered and report.missing

    def test_quad_negative(self):
        fam = [Pairing(8, ((0, 1), (2, 3), (4, 5), (6, 7)))]
        report = check_cover_majorana(fam, 4, 2)
        assert not report.covered
        assert (0, 2, 4, 6) in report.missing

    def test_label_restriction(self):
        syms = SymmetrySet((PauliString.from_label("Z" + "I" * 5),))
        bins = bin_majoranas(6, syms)
        fam = cover_from_bins(6, bins)
        labels = mode_label_map(bins)
        assert check_cover_majorana(fam, 6, 2, labels=labels).covered

    def test_matches_python_oracle(self):
        # kernel path vs naive covers_quadruple loop
        from tomosched.majorana_cover import covers_quadruple

        fam = four_majorana_cover(3)[:7]
        report = check_cover_majorana(fam, 3, 2)
        naive = [
            q
            for q in itertools.combinations(range(6), 4)
            if not covers_quadruple(fam, q)
        ]
        assert sorted(report.missing) == sorted(naive)


class TestConjugationOracle:
    def test_empty_circuit(self):
        c = basis_rotation_circuit("ZZ")
        p = PauliString.from_label("XY")
        assert clifford_conjugate(c, p) == p

    def test_same_pair_swap_fixes_z(self):
        c = swap_network(Pairing(4, ((0, 1), (2, 3))), 2)
        z0 = PauliString.from_label("ZI")
        assert clifford_conjugate(c, z0) == z0

    def test_rejects_rotations(self):
        from tomosched.circuits import MeasurementCircuit

        c = MeasurementCircuit(2, (majorana_rotation(0, 2, 0.3),), ((0,),), ())
        with pytest.raises(UnsupportedGateError):
            clifford_conjugate(c, PauliString.from_label("ZI"))

    def test_agrees_with_dense_on_cliffords(self):
        rng = np.random.default_rng(11)
        n = 3
        for pairing in four_majorana_cover(n)[:8]:
            circ = swap_network(pairing, n)
            u = circuit_unitary(circ)
            for _ in range(20):
                x = int(rng.integers(0, 1 << n))
                z = int(rng.integers(0, 1 << n))
                p = PauliString(n, x, z, (x & z).bit_count() % 2)
                lhs = pauli_dense(clifford_conjugate(circ, p))
                rhs = u.conj().T @ pauli_dense(p) @ u
                assert np.abs(lhs - rhs).max() < 1e-10

    def test_agrees_with_dense_exhaustively_small(self):
        # every Pauli on a 4-qubit register for one representative circuit
        n = 4
        circ = swap_network(four_majorana_cover(n)[7], n)
        u = circuit_unitary(circ)
        for x in range(1 << n):
            for z in range(1 << n):
                p = PauliString(n, x, z, (x & z).bit_count() % 2)
                lhs = pauli_dense(clifford_conjugate(circ, p))
                rhs = u.conj().T @ pauli_dense(p) @ u
                assert np.abs(lhs - rhs).max() < 1e-10


class TestDense:
    def test_empty_circuit_is_identity(self):
        c = basis_rotation_circuit("ZZZ")
        psi = random_state(3, np.random.default_rng(0))
        assert np.allclose(dense_simulate(c, psi), psi)

    def test_z_eigenstate_phase(self):
        # exp(-i pi/4 Z) on |0> only changes the global phase
        c = swap_network(Pairing(2, ((0, 1),)), 1)
        psi = np.array([1.0, 0.0], dtype=complex)
        out = dense_simulate(c, psi)
        assert abs(abs(out[0]) - 1) < 1e-12

    def test_norm_preserved(self):
        rng = np.random.default_rng(2)
        psi = random_state(4, rng)
        for pairing in four_majorana_cover(4)[:5]:
            out = dense_simulate(swap_network(pairing, 4), psi)
            assert abs(np.linalg.norm(out) - 1) < 1e-12

    def test_pauli_expectation(self):
        psi = np.array([1.0, 0.0], dtype=complex)
        assert pauli_expectation(PauliString.from_label("Z"), psi) == 1.0
        assert pauli_expectation(PauliString.from_label("X"), psi) == 0.0


class TestCliqueMaxima:
    @pytest.mark.parametrize("n,want", [(1, 3), (2, 5), (3, 7)])
    def test_anticommuting_maximum(self, n, want):
        assert max_anticommuting_clique(n) == want

    def test_out_of_regime(self):
        with pytest.raises(ValueError):
            max_anticommuting_clique(4)

    def test_commuting_triples_stretch(self):
        # the shared-element bound floor((l-1)/2) breaks below l = 15: a
        # 7-element triple system with no common mode exists on 7 modes
        values = {l: max_commuting_triples(l) for l in range(3, 9)}
        assert values[3] == 1
        assert values[7] == 7
        assert values[8] == 7
        known = [
            (0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5),
            (1, 4, 6), (2, 3, 6), (2, 4, 5),
        ]
        for a, b in itertools.combinations(known, 2):
            assert len(set(a) & set(b)) % 2 == 1


class TestSampling:
    def test_deterministic_computational_basis(self):
        # |0..0> is a +1 eigenstate of every i g_{2n} g_{2n+1}
        n = 2
        pairing = Pairing(4, ((0, 1), (2, 3)))
        res = sample_estimate(
            np.eye(1 << n, dtype=complex)[:, 0],
            [pairing],
            shots=100,
            k=1,
            include_pairs=False,
            seed=0,
        )
        assert res.operators[(0, 1)].mean == 1.0
        assert res.operators[(2, 3)].mean == 1.0

    def test_mixed_state_statistics(self):
        fam = four_majorana_cover(4)
        res = sample_estimate("mixed", fam, shots=2048, k=2, seed=7)
        assert len(res.operators) == math.comb(8, 4)
        for est in res.operators.values():
            sigma = 1 / math.sqrt(est.shots)
            assert abs(est.mean) < 5 * sigma
            # worst-case saturation: the bound evaluated at the estimate
            # stays within a factor two of the zero-expectation value
            assert 0.5 <= 4 * est.shots * est.variance_bound <= 2.0

    def test_random_state_matches_dense(self):
        rng = np.random.default_rng(123)
        n = 3
        psi = random_state(n, rng)
        fam = four_majorana_cover(n)
        res = sample_estimate(psi, fam, shots=20_000, k=2, seed=5)
        for modes, est in res.operators.items():
            truth = pauli_expectation(
                jw_map(measurable_monomial(modes), n), psi
            )
            sigma = math.sqrt(max(1e-12, 1 - truth * truth) / est.shots)
            assert abs(est.mean - truth) <= 5 * sigma + 1e-9

    def test_unestimated_targets_reported(self):
        pairing = Pairing(4, ((0, 1), (2, 3)))
        res = sample_estimate(
            "mixed", [pairing], shots=16, k=2, seed=1,
            targets=[(0, 1, 2, 3), (0, 1, 2, 4)],
        )
        assert res.unestimated == [(0, 1, 2, 4)]


class TestBounds:
    def test_examples(self):
        reports = {b.formula: b for b in bound_values(8, k=2, n_sym=None)}
        assert reports["quad-cover-lower"].value_int == 65
        assert reports["pair-cover-count"].value_int == 15
        assert reports["clique-size"].value_int == math.comb(8, 2)
        r16 = {b.formula: b for b in bound_values(16, n_sym=2)}
        assert r16["symmetry-leading"].value == pytest.approx(
            256 * (10 / 3 / 16 + 0.5)
        )

    def test_quad_lower_is_exact_fraction(self):
        r = {b.formula: b for b in bound_values(4)}["quad-cover-lower"]
        assert r.value == pytest.approx(4 / 3 * 16 - 8 / 3 * 4 + 1)
        assert r.value_int == 12

    def test_anticommuting_max_formula(self):
        for n in (1, 2, 3, 5):
            r = {b.formula: b for b in bound_values(n)}["anticommuting-max"]
            assert r.value_int == 2 * n + 1
