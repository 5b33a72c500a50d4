"""Jordan-Wigner measurement circuits.

Two circuit families are synthesized:

* Majorana swap networks route every matched pair of a pairing onto
  adjacent positions (2n, 2n+1) with odd-even rounds of the swap unitary
  exp((pi/4) g_i g_j), after which qubit n reads out the pair operator
  i g_a g_b with a tracked sign.
* Anticommuting rotation networks fold a real linear combination of
  pairwise-anticommuting operators onto a single surviving term with
  exp(theta g_u g_v) partial swaps (adjacent terms differ in one mode pair,
  so every generator is a two-mode product), then route that term to a
  Z-string for readout.

Every generator used commutes with the global Majorana parity, so parity
rides along as the product of all readout qubits.

Gate unitaries are defined algebraically: each gate is exp(i*theta*G) for a
Hermitian Pauli G obtained through the JW map, which is what the Clifford
and dense oracles consume.  Native-cost accounting follows the JW locality
of the generators: a swap on (2n, 2n+1) is a single-qubit phase rotation
(cost 1); swaps across a qubit boundary and general two-mode rotations are
two-qubit gates (cost 2); local basis changes cost 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from tomosched.algebra import (
    MajoranaMonomial,
    PauliString,
    jw_map,
    majorana_commutes,
    majorana_multiply,
    measurable_monomial,
    parity_monomial,
)
from tomosched.majorana_cover import Pairing, _greedy_complete, pair_product

SWAP = "majorana-swap"
ROTATION = "majorana-rotation"
BASIS = "basis-rotation"


@dataclass(frozen=True, slots=True)
class Gate:
    kind: str
    modes: tuple[int, ...] = ()
    angle: float | None = None
    qubit: int | None = None
    letter: str | None = None

    def pauli_rotation(self, n_qubits: int):
        """(G, theta) with unitary exp(i*theta*G); None for an identity gate."""
        if self.kind == BASIS:
            if self.letter == "Z":
                return None
            g_letter, theta = ("Y", math.pi / 4) if self.letter == "X" else (
                "X",
                -math.pi / 4,
            )
            return PauliString.from_letter(n_qubits, self.qubit, g_letter), theta
        image = jw_map(MajoranaMonomial(self.modes), n_qubits)
        herm_phase = (image.x & image.z).bit_count() % 2
        g = PauliString(n_qubits, image.x, image.z, herm_phase)
        diff = (image.phase - herm_phase) % 4  # 1 or 3: image = +iG or -iG
        sign = 1.0 if diff == 1 else -1.0
        base = math.pi / 4 if self.kind == SWAP else self.angle
        return g, sign * base

    @property
    def native_cost(self) -> int:
        if self.kind == BASIS:
            return 1
        if self.kind == SWAP and self.modes[0] % 2 == 0:
            return 1  # same-qubit pair: a single-qubit phase rotation
        return 2

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.modes:
            d["modes"] = list(self.modes)
        if self.angle is not None:
            d["angle"] = format(self.angle, ".17g")
        if self.qubit is not None:
            d["qubit"] = self.qubit
            d["letter"] = self.letter
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Gate":
        return cls(
            kind=d["kind"],
            modes=tuple(d.get("modes", ())),
            angle=float(d["angle"]) if "angle" in d else None,
            qubit=d.get("qubit"),
            letter=d.get("letter"),
        )


def majorana_swap(pos: int) -> Gate:
    """Adjacent swap exp((pi/4) g_pos g_{pos+1})."""
    return Gate(SWAP, modes=(pos, pos + 1))


def majorana_rotation(u: int, v: int, angle: float) -> Gate:
    """exp(angle * g_u g_v)."""
    return Gate(ROTATION, modes=(u, v), angle=angle)


def basis_rotation(qubit: int, letter: str) -> Gate:
    return Gate(BASIS, qubit=qubit, letter=letter)


@dataclass(frozen=True, slots=True)
class ReadoutEntry:
    """How measured qubits map back to an estimated operator.

    kind "pair": qubit q estimates sign * (i g_a g_b).
    kind "letter": qubit q estimates the single-qubit Pauli 'letter'.
    kind "combination": the product of the listed qubits estimates
        sign * (1/scale) * sum_i c_i T_i.
    kind "parity": the product of the listed qubits estimates the global
        parity operator with the given sign.
    """

    kind: str
    qubits: tuple[int, ...]
    sign: int = 1
    scale: float = 1.0
    modes: tuple[int, ...] = ()
    letter: str | None = None
    terms: tuple[tuple[int, ...], ...] = ()
    coeffs: tuple[float, ...] = ()


@dataclass(frozen=True, slots=True)
class MeasurementCircuit:
    n_qubits: int
    gates: tuple[Gate, ...]
    layers: tuple[tuple[int, ...], ...]
    readout: tuple[ReadoutEntry, ...]
    provenance: str = ""

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def native_depth(self) -> int:
        return sum(
            max(self.gates[i].native_cost for i in layer)
            for layer in self.layers
            if layer
        )

    @property
    def native_gate_count(self) -> int:
        return sum(g.native_cost for g in self.gates)


class AntiCommutingValidationError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class AntiCommutingSet:
    """Pairwise-anticommuting terms with real combination coefficients."""

    n_fermions: int
    terms: tuple[MajoranaMonomial, ...]
    coeffs: tuple[float, ...] = ()

    def __post_init__(self):
        terms = tuple(self.terms)
        coeffs = tuple(self.coeffs) if self.coeffs else (1.0,) * len(terms)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "coeffs", coeffs)
        if not terms:
            raise AntiCommutingValidationError("empty set")
        if len(coeffs) != len(terms):
            raise AntiCommutingValidationError("one coefficient per term")
        if not any(coeffs):
            raise AntiCommutingValidationError("coefficients are all zero")
        if len(terms) > 2 * self.n_fermions + 1:
            raise AntiCommutingValidationError(
                "anticommuting sets cannot exceed 2N+1 terms"
            )
        for a, b in itertools.combinations(terms, 2):
            if majorana_commutes(a, b):
                raise AntiCommutingValidationError(f"{a} and {b} commute")


def anticommuting_groups(n_fermions: int, omega: int) -> list[AntiCommutingSet]:
    """Disjoint partition of all 4-mode operators into anticommuting sets.

    Each quadruple is filed under its three largest modes; the members of
    one file share those modes, hence pairwise anticommute, and files are
    sliced to at most omega terms.
    """
    u = 2 * n_fermions
    if not 1 <= omega <= max(u - 3, 1):
        raise ValueError(f"omega must be in [1, {u - 3}]")
    out = []
    for j, k, l in itertools.combinations(range(u), 3):
        if j == 0:
            continue
        members = [measurable_monomial((i, j, k, l)) for i in range(j)]
        for start in range(0, len(members), omega):
            out.append(
                AntiCommutingSet(
                    n_fermions, tuple(members[start : start + omega])
                )
            )
    return out


def _conjugate_through_swap(mon: MajoranaMonomial, p: int, q: int) -> MajoranaMonomial:
    """U^dag mon U for U = exp((pi/4) g_p g_q): g_p -> g_q, g_q -> -g_p."""
    modes = []
    phase = mon.phase
    for m in mon.modes:
        if m == p:
            modes.append(q)
        elif m == q:
            modes.append(p)
            phase += 2
        else:
            modes.append(m)
    # restore ascending order, tracking the anticommutation parity
    inv = 0
    for i in range(1, len(modes)):
        j = i
        while j > 0 and modes[j - 1] > modes[j]:
            modes[j - 1], modes[j] = modes[j], modes[j - 1]
            inv += 1
            j -= 1
    return MajoranaMonomial(tuple(modes), phase + 2 * (inv % 2))


def _pullback(mon: MajoranaMonomial, gates) -> MajoranaMonomial:
    """Conjugate a post-circuit operator back through swap gates."""
    for g in reversed(gates):
        if g.kind != SWAP:
            raise ValueError("pullback only defined over swap gates")
        mon = _conjugate_through_swap(mon, *g.modes)
    return mon


def _sort_network(n_modes: int, dest: list[int]):
    """Odd-even transposition routing to the destination permutation."""
    cur = list(range(n_modes))
    gates: list[Gate] = []
    layers: list[tuple[int, ...]] = []
    for _ in range(n_modes // 2):
        moved = False
        for par in (0, 1):
            layer = []
            for pos in range(par, n_modes - 1, 2):
                if dest[cur[pos]] > dest[cur[pos + 1]]:
                    cur[pos], cur[pos + 1] = cur[pos + 1], cur[pos]
                    layer.append(len(gates))
                    gates.append(majorana_swap(pos))
                    moved = True
            if layer:
                layers.append(tuple(layer))
        if not moved:
            break
    if any(dest[lab] != pos for pos, lab in enumerate(cur)):
        raise AssertionError("odd-even routing failed to converge")
    return gates, layers


def _sign_vs_canonical(mon: MajoranaMonomial) -> int:
    canonical = measurable_monomial(mon.modes)
    diff = (mon.phase - canonical.phase) % 4
    if diff == 0:
        return 1
    if diff == 2:
        return -1
    raise AssertionError("operator picked up an imaginary factor")


def _parity_entry(swap_gates, n_fermions: int) -> ReadoutEntry:
    n_modes = 2 * n_fermions
    pulled = _pullback(parity_monomial(n_fermions), swap_gates)
    sigma = _sign_vs_canonical(pulled)
    slot_pairs = [(2 * k, 2 * k + 1) for k in range(n_fermions)]
    _, phi = pair_product(slot_pairs)
    assert pulled.modes == tuple(range(n_modes))
    return ReadoutEntry(
        kind="parity",
        qubits=tuple(range(n_fermions)),
        sign=sigma * phi,
        modes=tuple(range(n_modes)),
    )


def swap_network(p: Pairing, n_fermions: int) -> MeasurementCircuit:
    """Route each matched pair to a qubit for local Z readout."""
    if p.n_modes != 2 * n_fermions:
        raise ValueError("pairing size does not match the register")
    dest = [0] * p.n_modes
    for slot, (a, b) in enumerate(p.pairs):
        dest[a], dest[b] = 2 * slot, 2 * slot + 1
    gates, layers = _sort_network(p.n_modes, dest)

    readout = []
    pair_set = set(p.pairs)
    for slot in range(n_fermions):
        pulled = _pullback(measurable_monomial((2 * slot, 2 * slot + 1)), gates)
        assert pulled.modes in pair_set
        readout.append(
            ReadoutEntry(
                kind="pair",
                qubits=(slot,),
                sign=_sign_vs_canonical(pulled),
                modes=pulled.modes,
            )
        )
    readout.append(_parity_entry(gates, n_fermions))
    return MeasurementCircuit(
        n_qubits=n_fermions,
        gates=tuple(gates),
        layers=tuple(layers),
        readout=tuple(readout),
        provenance=f"swap-network:{p.label}",
    )


def rotation_network(s: AntiCommutingSet) -> MeasurementCircuit:
    """Fold sum_i c_i T_i onto sqrt(sum c^2) times one surviving term.

    Terms are eliminated from both ends at once, meeting at term
    ceil(L/2); the survivor is then routed to adjacent positions and read
    out as a two-qubit Z product.
    """
    live = [
        (t, c) for t, c in zip(s.terms, s.coeffs) if c != 0.0
    ]
    terms = [t for t, _ in live]
    coeffs = [float(c) for _, c in live]
    n = s.n_fermions
    length = len(terms)
    survivor = (length + 1) // 2 - 1  # 0-based index of the ceil(L/2)-th term

    # elimination schedule: each layer kills one term from the top and one
    # from the bottom, both rotating toward the survivor
    plan: list[list[tuple[int, int]]] = []
    top, bot = 0, length - 1
    while top < survivor or bot > survivor:
        layer = []
        if top < survivor:
            layer.append((top, top + 1))
            top += 1
        if bot > survivor:
            layer.append((bot, bot - 1))
            bot -= 1
        plan.append(layer)

    gates: list[Gate] = []
    layers: list[tuple[int, ...]] = []
    angles: list[float] = []
    c = list(coeffs)
    for layer_plan in plan:
        layer_ids = []
        for e, t in layer_plan:
            theta = math.atan2(c[e], c[t])
            c[t] = math.hypot(c[e], c[t])
            c[e] = 0.0
            prod = pair_product_of_terms(terms[e], terms[t])
            eps, (u, v) = prod
            # conjugation by exp(g A) rotates by 2g; A = eps * g_u g_v
            gates.append(majorana_rotation(u, v, -(theta / 2) * eps))
            angles.append(theta)
            layer_ids.append(len(gates) - 1)
        if layer_ids:
            layers.append(tuple(layer_ids))
    scale = c[survivor]  # sqrt(sum c^2) after elimination; c_0 itself at L=1

    # route the survivor to adjacent slots for Z-string readout
    fin = terms[survivor]
    anchor_pairs = [
        (fin.modes[i], fin.modes[i + 1]) for i in range(0, fin.degree, 2)
    ]
    routing = Pairing(
        2 * n, tuple(_greedy_complete(2 * n, anchor_pairs)), "readout-routing"
    )
    dest = [0] * (2 * n)
    for slot, (a, b) in enumerate(routing.pairs):
        dest[a], dest[b] = 2 * slot, 2 * slot + 1
    tail_gates, tail_layers = _sort_network(2 * n, dest)
    offset = len(gates)
    gates.extend(tail_gates)
    layers.extend(tuple(i + offset for i in lay) for lay in tail_layers)

    slots = sorted(routing.pairs.index(pr) for pr in anchor_pairs)
    slot_modes = tuple(
        m for k in slots for m in (2 * k, 2 * k + 1)
    )
    pulled = _pullback(measurable_monomial(slot_modes), tail_gates)
    assert pulled.modes == fin.modes
    sigma = _sign_vs_canonical(pulled) * fin.sign
    _, phi = pair_product([(2 * k, 2 * k + 1) for k in slots])
    readout = [
        ReadoutEntry(
            kind="combination",
            qubits=tuple(slots),
            sign=sigma * phi,
            scale=scale,
            modes=fin.modes,
            terms=tuple(t.modes for t in terms),
            coeffs=tuple(coeffs),
        ),
        _parity_entry(tail_gates, n),
    ]
    circ = MeasurementCircuit(
        n_qubits=n,
        gates=tuple(gates),
        layers=tuple(layers),
        readout=tuple(readout),
        provenance=(
            f"rotation-network:L={length},angles="
            + ",".join(format(a, ".6g") for a in angles)
        ),
    )
    return circ


def pair_product_of_terms(a: MajoranaMonomial, b: MajoranaMonomial):
    """Reduce the product of two adjacent anticommuting terms to eps*g_u*g_v."""
    prod = majorana_multiply(a, b)
    if prod.degree != 2:
        raise AntiCommutingValidationError(
            "adjacent terms must differ in exactly one mode pair"
        )
    if prod.phase == 0:
        return 1, prod.modes
    if prod.phase == 2:
        return -1, prod.modes
    raise AntiCommutingValidationError("adjacent product is not real")


def basis_rotation_circuit(word: str) -> MeasurementCircuit:
    """Single layer of local basis changes measuring a Pauli word."""
    n = len(word)
    gates = []
    layer = []
    for q, letter in enumerate(word):
        if letter not in "XYZ":
            raise ValueError(f"bad word letter {letter!r}")
        if letter != "Z":
            layer.append(len(gates))
            gates.append(basis_rotation(q, letter))
    readout = tuple(
        ReadoutEntry(kind="letter", qubits=(q,), letter=word[q])
        for q in range(n)
    )
    return MeasurementCircuit(
        n_qubits=n,
        gates=tuple(gates),
        layers=(tuple(layer),) if layer else (),
        readout=readout,
        provenance=f"basis:{word}",
    )


def parity_preserved(c: MeasurementCircuit, n_fermions: int) -> bool:
    """True iff every gate generator commutes with the global parity."""
    par = parity_monomial(n_fermions)
    for g in c.gates:
        if g.kind == BASIS:
            if g.letter != "Z":
                return False
        elif not majorana_commutes(MajoranaMonomial(g.modes), par):
            return False
    return True
