"""Schedule data model and canonical JSON serialization.

A schedule is the artifact a generator emits: a header (register size, k,
symmetries, format version) plus an ordered list of cliques.  Clique
payloads are the generating objects (word / pairing / anticommuting set);
the operators they contain are re-derivable and therefore not serialized
unless expansion is requested.

Serialization is canonical: sorted keys, compact separators, angles as
17-significant-digit decimal strings.  Equal schedules serialize to equal
bytes, so repeated runs of a deterministic generator produce byte-identical
files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from tomosched.algebra import measurable_monomial
from tomosched.circuits import AntiCommutingSet, Gate, MeasurementCircuit, ReadoutEntry
from tomosched.majorana_cover import Pairing, clique_operators

FORMAT_VERSION = "1"

QUBIT_WORD = "qubit-word"
MAJORANA_PAIRING = "majorana-pairing"
ANTICOMMUTING_SET = "anticommuting-set"


class ScheduleParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


@dataclass(frozen=True, slots=True)
class Clique:
    kind: str
    payload: dict
    provenance: str = ""
    circuit: MeasurementCircuit | None = None

    def pairing(self, n_modes: int) -> Pairing:
        if self.kind != MAJORANA_PAIRING:
            raise ValueError(f"clique is a {self.kind}, not a pairing")
        return Pairing(
            n_modes,
            tuple(tuple(p) for p in self.payload["pairs"]),
            self.provenance,
        )

    def word(self) -> str:
        if self.kind != QUBIT_WORD:
            raise ValueError(f"clique is a {self.kind}, not a word")
        return self.payload["word"]

    def anticommuting_set(self, n_fermions: int) -> AntiCommutingSet:
        if self.kind != ANTICOMMUTING_SET:
            raise ValueError(f"clique is a {self.kind}, not an anticommuting set")
        return AntiCommutingSet(
            n_fermions,
            tuple(
                measurable_monomial(tuple(t)) for t in self.payload["terms"]
            ),
            tuple(float(c) for c in self.payload.get("coeffs", ())),
        )


@dataclass(frozen=True, slots=True)
class Schedule:
    kind: str
    n_qubits: int | None = None
    n_fermions: int | None = None
    k: int | None = None
    omega: int | None = None
    symmetries: tuple[str, ...] = ()
    cliques: tuple[Clique, ...] = ()
    stats: tuple[tuple[str, object], ...] = ()
    format_version: str = FORMAT_VERSION

    @property
    def register_size(self) -> int:
        if self.n_qubits is not None:
            return self.n_qubits
        return self.n_fermions


def _readout_to_dict(e: ReadoutEntry) -> dict:
    d: dict = {"kind": e.kind, "qubits": list(e.qubits), "sign": e.sign}
    if e.scale != 1.0:
        d["scale"] = format(e.scale, ".17g")
    if e.modes:
        d["modes"] = list(e.modes)
    if e.letter is not None:
        d["letter"] = e.letter
    if e.terms:
        d["terms"] = [list(t) for t in e.terms]
        d["coeffs"] = [format(c, ".17g") for c in e.coeffs]
    return d


def _readout_from_dict(d: dict) -> ReadoutEntry:
    return ReadoutEntry(
        kind=d["kind"],
        qubits=tuple(d["qubits"]),
        sign=d["sign"],
        scale=float(d.get("scale", 1.0)),
        modes=tuple(d.get("modes", ())),
        letter=d.get("letter"),
        terms=tuple(tuple(t) for t in d.get("terms", ())),
        coeffs=tuple(float(c) for c in d.get("coeffs", ())),
    )


def _circuit_to_dict(c: MeasurementCircuit) -> dict:
    return {
        "n_qubits": c.n_qubits,
        "gates": [g.to_dict() for g in c.gates],
        "layers": [list(lay) for lay in c.layers],
        "readout": [_readout_to_dict(e) for e in c.readout],
        "provenance": c.provenance,
    }


def _circuit_from_dict(d: dict) -> MeasurementCircuit:
    return MeasurementCircuit(
        n_qubits=d["n_qubits"],
        gates=tuple(Gate.from_dict(g) for g in d["gates"]),
        layers=tuple(tuple(lay) for lay in d["layers"]),
        readout=tuple(_readout_from_dict(e) for e in d["readout"]),
        provenance=d.get("provenance", ""),
    )


def to_json_dict(s: Schedule, expanded: bool = False) -> dict:
    d: dict = {
        "format_version": s.format_version,
        "kind": s.kind,
        "cliques": [],
    }
    for name in ("n_qubits", "n_fermions", "k", "omega"):
        val = getattr(s, name)
        if val is not None:
            d[name] = val
    if s.symmetries:
        d["symmetries"] = list(s.symmetries)
    if s.stats:
        d["stats"] = dict(s.stats)
    for cl in s.cliques:
        cd: dict = {"kind": cl.kind, "payload": cl.payload}
        if cl.provenance:
            cd["provenance"] = cl.provenance
        if cl.circuit is not None:
            cd["circuit"] = _circuit_to_dict(cl.circuit)
        if expanded and cl.kind == MAJORANA_PAIRING and s.k:
            pairing = cl.pairing(2 * s.n_fermions)
            cd["operators"] = [
                list(m.modes) for m in clique_operators(pairing, s.k)
            ]
        d["cliques"].append(cd)
    return d


def serialize(s: Schedule, expanded: bool = False) -> bytes:
    """Canonical bytes; byte-stable for equal schedules."""
    text = json.dumps(
        to_json_dict(s, expanded=expanded),
        sort_keys=True,
        separators=(",", ":"),
        ensure_ascii=False,
    )
    return (text + "\n").encode("utf-8")


def deserialize(data: bytes) -> Schedule:
    try:
        obj = json.loads(data.decode("utf-8"))
    except json.JSONDecodeError as exc:
        raise ScheduleParseError(
            f"malformed schedule JSON at byte {exc.pos}: {exc.msg}",
            position=exc.pos,
        ) from exc
    if not isinstance(obj, dict):
        raise ScheduleParseError("schedule must be a JSON object")
    version = obj.get("format_version")
    if version != FORMAT_VERSION:
        raise ScheduleParseError(
            f"unsupported format_version {version!r}; expected {FORMAT_VERSION!r}"
        )
    cliques = []
    for i, cd in enumerate(obj.get("cliques", [])):
        try:
            circuit = (
                _circuit_from_dict(cd["circuit"]) if "circuit" in cd else None
            )
            cliques.append(
                Clique(
                    kind=cd["kind"],
                    payload=cd["payload"],
                    provenance=cd.get("provenance", ""),
                    circuit=circuit,
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ScheduleParseError(f"malformed clique #{i}: {exc}") from exc
    sched = Schedule(
        kind=obj.get("kind", ""),
        n_qubits=obj.get("n_qubits"),
        n_fermions=obj.get("n_fermions"),
        k=obj.get("k"),
        omega=obj.get("omega"),
        symmetries=tuple(obj.get("symmetries", ())),
        cliques=tuple(cliques),
        stats=tuple(sorted(obj.get("stats", {}).items())),
        format_version=version,
    )
    _validate(sched)
    return sched


def _validate(s: Schedule) -> None:
    if s.n_qubits is None and s.n_fermions is None:
        raise ScheduleParseError("schedule header needs n_qubits or n_fermions")
    for i, cl in enumerate(s.cliques):
        try:
            if cl.kind == QUBIT_WORD:
                word = cl.payload.get("word", "")
                if len(word) != s.n_qubits or any(c not in "XYZ" for c in word):
                    raise ValueError("word does not match the header register")
            elif cl.kind == MAJORANA_PAIRING:
                cl.pairing(2 * s.n_fermions)  # validates the matching
            elif cl.kind == ANTICOMMUTING_SET:
                cl.anticommuting_set(s.n_fermions)
            else:
                raise ValueError(f"unknown kind {cl.kind!r}")
        except (KeyError, TypeError, ValueError) as exc:
            raise ScheduleParseError(f"malformed clique #{i}: {exc}") from exc


# constructors used by the generators and the CLI


def schedule_from_words(n_qubits: int, k: int, words) -> Schedule:
    return Schedule(
        kind="qubit-cover",
        n_qubits=n_qubits,
        k=k,
        cliques=tuple(
            Clique(QUBIT_WORD, {"word": w}) for w in words
        ),
    )


def schedule_from_pairings(kind: str, n_fermions: int, k: int, pairings,
                           symmetries=(), stats=()) -> Schedule:
    import math

    n_ops = math.comb(n_fermions, k)
    return Schedule(
        kind=kind,
        n_fermions=n_fermions,
        k=k,
        symmetries=tuple(symmetries),
        cliques=tuple(
            Clique(
                MAJORANA_PAIRING,
                {"pairs": [list(p) for p in pr.pairs], "n_operators": n_ops},
                provenance=pr.label,
            )
            for pr in pairings
        ),
        stats=tuple(stats),
    )


def schedule_from_acsets(n_fermions: int, omega: int, sets) -> Schedule:
    return Schedule(
        kind="anticommuting-groups",
        n_fermions=n_fermions,
        omega=omega,
        cliques=tuple(
            Clique(
                ANTICOMMUTING_SET,
                {
                    "terms": [list(t.modes) for t in s.terms],
                    "coeffs": [format(c, ".17g") for c in s.coeffs],
                },
            )
            for s in sets
        ),
    )
