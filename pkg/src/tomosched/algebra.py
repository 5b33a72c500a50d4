"""Exact Pauli and Majorana operator algebra with a Jordan-Wigner bridge.

Conventions used throughout the package:

* An N-qubit Pauli operator is held in symplectic form: two N-bit integers
  ``x`` and ``z`` plus a phase exponent ``phase`` (mod 4).  The operator is
  ``i**phase * prod_j X_j**x_j * Z_j**z_j`` with X applied before Z on each
  qubit, so Y = i*X*Z carries one intrinsic factor of i.
* Majorana modes are indexed 0 .. 2N-1 (0-based everywhere).  A monomial is
  a strictly increasing mode tuple plus a phase exponent:
  ``i**phase * g_m0 * g_m1 * ...``.
* The Jordan-Wigner image of an even mode 2j is ``Z_0..Z_{j-1} X_j``; the
  image of an odd mode 2j+1 is ``-Z_0..Z_{j-1} Y_j``.  The odd-mode sign is
  the unique choice making ``i * g_{2n} * g_{2n+1}`` map to ``+Z_n`` exactly,
  which is the identity the measurement circuits rely on.

All operations are pure value computations with exact integer phases; they
are safe under any amount of concurrency.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass


class DimensionError(ValueError):
    """Operands live on different registers, or an index is out of range."""


_LETTER_BITS = {"I": (0, 0, 0), "X": (1, 0, 0), "Y": (1, 1, 1), "Z": (0, 1, 0)}
_BITS_LETTER = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
_LABEL_RE = re.compile(r"^(?:i\^(?P<k>[0-3])[·*])?(?P<letters>[IXYZ]+)$")


@dataclass(frozen=True, slots=True)
class PauliString:
    """N-qubit Pauli operator in symplectic bitvector form.

    The represented operator is ``i**phase * prod_j X_j**x_j Z_j**z_j``
    where bit j of ``x``/``z`` belongs to qubit j.
    """

    n_qubits: int
    x: int
    z: int
    phase: int = 0

    def __post_init__(self):
        if self.n_qubits < 0:
            raise DimensionError("n_qubits must be non-negative")
        mask = (1 << self.n_qubits) - 1
        if self.x & ~mask or self.z & ~mask:
            raise DimensionError("bitvector exceeds register size")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls(n_qubits, 0, 0, 0)

    @classmethod
    def from_letter(cls, n_qubits: int, qubit: int, letter: str) -> "PauliString":
        """Single-site operator, e.g. ``from_letter(3, 1, 'Y')`` is I Y I."""
        if not 0 <= qubit < n_qubits:
            raise DimensionError(f"qubit {qubit} out of range for {n_qubits}")
        xb, zb, ph = _LETTER_BITS[letter]
        return cls(n_qubits, xb << qubit, zb << qubit, ph)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse ``"XIZY"`` or ``"i^2·XIZY"``; leftmost letter is qubit 0."""
        m = _LABEL_RE.match(label.strip())
        if m is None:
            raise ValueError(f"not a Pauli label: {label!r}")
        letters = m.group("letters")
        x = z = 0
        phase = int(m.group("k") or 0)
        for q, letter in enumerate(letters):
            xb, zb, ph = _LETTER_BITS[letter]
            x |= xb << q
            z |= zb << q
            phase += ph
        return cls(len(letters), x, z, phase)

    def to_label(self) -> str:
        """Serialize as letters over {I,X,Y,Z} with an ``i^k·`` prefix if needed."""
        letters = "".join(self.letter_at(q) for q in range(self.n_qubits))
        k = (self.phase - (self.x & self.z).bit_count()) % 4
        return letters if k == 0 else f"i^{k}·{letters}"

    def letter_at(self, qubit: int) -> str:
        return _BITS_LETTER[(self.x >> qubit) & 1, (self.z >> qubit) & 1]

    def support(self) -> tuple[int, ...]:
        return tuple(q for q in range(self.n_qubits) if (self.x | self.z) >> q & 1)

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0 and self.phase == 0

    @property
    def is_hermitian(self) -> bool:
        # dagger flips the phase and contributes (-1)^|x&z| from XZ -> ZX
        return (self.phase - (self.x & self.z).bit_count()) % 2 == 0

    def __str__(self) -> str:
        return self.to_label()


def pauli_multiply(p: PauliString, q: PauliString) -> PauliString:
    """Exact product p*q with the phase exponent tracked mod 4."""
    if p.n_qubits != q.n_qubits:
        raise DimensionError("Pauli operands act on different register sizes")
    # moving Z^pz past X^qx costs (-1) per overlapping site
    phase = p.phase + q.phase + 2 * (p.z & q.x).bit_count()
    return PauliString(p.n_qubits, p.x ^ q.x, p.z ^ q.z, phase)


def pauli_commutes(p: PauliString, q: PauliString) -> bool:
    """True iff pq = qp (symplectic inner product is even)."""
    if p.n_qubits != q.n_qubits:
        raise DimensionError("Pauli operands act on different register sizes")
    return ((p.x & q.z).bit_count() + (p.z & q.x).bit_count()) % 2 == 0


@dataclass(frozen=True, slots=True)
class MajoranaMonomial:
    """Product of distinct Majorana modes with an explicit i**phase prefactor.

    ``modes`` is strictly increasing; g_i^2 = 1 is normalized away at
    construction time by :func:`majorana_multiply`.
    """

    modes: tuple[int, ...]
    phase: int = 0

    def __post_init__(self):
        if any(m < 0 for m in self.modes):
            raise DimensionError("mode indices must be non-negative")
        if any(a >= b for a, b in zip(self.modes, self.modes[1:])):
            raise ValueError("modes must be strictly increasing")
        object.__setattr__(self, "modes", tuple(self.modes))
        object.__setattr__(self, "phase", self.phase % 4)

    @property
    def degree(self) -> int:
        return len(self.modes)

    @property
    def sign(self) -> int:
        """+1 or -1 for real monomials; raises if the prefactor is imaginary."""
        if self.phase == 0:
            return 1
        if self.phase == 2:
            return -1
        raise ValueError("monomial carries an imaginary prefactor")

    def __str__(self) -> str:
        body = "".join(f"g{m}" for m in self.modes) or "1"
        return body if self.phase == 0 else f"i^{self.phase}·{body}"


def measurable_monomial(modes) -> MajoranaMonomial:
    """Hermitian 2k-mode monomial: i for k odd, +1 for k even.

    This is the prefactor that makes the operator square to +1, so its
    measurement outcomes are genuine ±1 eigenvalues (i*g_i*g_j for pairs,
    g_i*g_j*g_k*g_l unsigned for quadruples).
    """
    modes = tuple(sorted(modes))
    if len(modes) % 2:
        raise ValueError("measurable monomials have even degree")
    return MajoranaMonomial(modes, (len(modes) // 2) % 2)


def majorana_multiply(a: MajoranaMonomial, b: MajoranaMonomial) -> MajoranaMonomial:
    """Normal-ordered product with the anticommutation sign tracked exactly."""
    out: list[int] = []
    inversions = 0
    am, bm = a.modes, b.modes
    i = j = 0
    while i < len(am) and j < len(bm):
        if am[i] < bm[j]:
            out.append(am[i])
            i += 1
        elif am[i] > bm[j]:
            # bm[j] hops over every remaining element of am
            inversions += len(am) - i
            out.append(bm[j])
            j += 1
        else:
            # equal modes cancel: hop bm[j] next to am[i], then g^2 = 1
            inversions += len(am) - i - 1
            i += 1
            j += 1
    out.extend(am[i:])
    out.extend(bm[j:])
    phase = a.phase + b.phase + 2 * (inversions % 2)
    return MajoranaMonomial(tuple(out), phase)


def majorana_commutes(a: MajoranaMonomial, b: MajoranaMonomial) -> bool:
    """True iff ab = ba; parity rule deg(a)*deg(b) - |shared modes| even."""
    shared = len(set(a.modes) & set(b.modes))
    return (a.degree * b.degree - shared) % 2 == 0


@functools.lru_cache(maxsize=None)
def _jw_single(mode: int, n_fermions: int) -> PauliString:
    j, odd = divmod(mode, 2)
    zstring = (1 << j) - 1
    if not odd:
        return PauliString(n_fermions, 1 << j, zstring, 0)
    # -Z..Z Y_j; Y contributes i, the minus sign contributes i^2
    return PauliString(n_fermions, 1 << j, zstring | (1 << j), 3)


def jw_map(m: MajoranaMonomial, n_fermions: int) -> PauliString:
    """Jordan-Wigner image of a monomial on an n-fermion (n-qubit) register."""
    if m.modes and m.modes[-1] >= 2 * n_fermions:
        raise DimensionError(
            f"mode {m.modes[-1]} out of range for {n_fermions} fermions"
        )
    out = PauliString(n_fermions, 0, 0, m.phase)
    for mode in m.modes:
        out = pauli_multiply(out, _jw_single(mode, n_fermions))
    return out


def parity_monomial(n_fermions: int) -> MajoranaMonomial:
    """Hermitian global-parity operator, the product of all 2N modes."""
    return measurable_monomial(range(2 * n_fermions))
