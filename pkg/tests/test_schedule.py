"""Serialization round trips, byte determinism, and parse errors."""

import json

import pytest

from tomosched.circuits import swap_network
from tomosched.majorana_cover import four_majorana_cover
from tomosched.qubit_cover import qubit_words_k2
from tomosched.schedule import (
    Clique,
    Schedule,
    ScheduleParseError,
    deserialize,
    schedule_from_pairings,
    schedule_from_words,
    serialize,
)


def quad_schedule(n=4, with_circuits=False):
    fam = four_majorana_cover(n)
    sched = schedule_from_pairings("majorana-cover", n, 2, fam)
    if with_circuits:
        cliques = tuple(
            Clique(
                cl.kind,
                cl.payload,
                cl.provenance,
                swap_network(cl.pairing(2 * n), n),
            )
            for cl in sched.cliques
        )
        sched = Schedule(
            kind=sched.kind, n_fermions=n, k=2, cliques=cliques
        )
    return sched


class TestRoundTrip:
    def test_pairing_schedule(self):
        sched = quad_schedule()
        assert deserialize(serialize(sched)) == sched

    def test_with_circuits(self):
        sched = quad_schedule(with_circuits=True)
        assert deserialize(serialize(sched)) == sched

    def test_word_schedule(self):
        sched = schedule_from_words(8, 2, qubit_words_k2(8))
        assert deserialize(serialize(sched)) == sched

    def test_byte_determinism(self):
        a = serialize(quad_schedule(with_circuits=True))
        b = serialize(quad_schedule(with_circuits=True))
        assert a == b

    def test_expanded_mode_includes_operators(self):
        sched = quad_schedule()
        obj = json.loads(serialize(sched, expanded=True))
        assert "operators" in obj["cliques"][0]
        assert len(obj["cliques"][0]["operators"]) == 6  # C(4,2)


class TestParseErrors:
    def test_truncated_names_position(self):
        data = serialize(quad_schedule())[: len(serialize(quad_schedule())) // 2]
        with pytest.raises(ScheduleParseError) as err:
            deserialize(data)
        assert err.value.position is not None
        assert "byte" in str(err.value)

    def test_version_mismatch(self):
        obj = json.loads(serialize(quad_schedule()))
        obj["format_version"] = "0"
        with pytest.raises(ScheduleParseError, match="format_version"):
            deserialize(json.dumps(obj).encode())

    def test_malformed_payload(self):
        obj = json.loads(serialize(quad_schedule()))
        obj["cliques"][0]["payload"]["pairs"][0] = [0, 0]
        with pytest.raises(ScheduleParseError, match="clique #0"):
            deserialize(json.dumps(obj).encode())

    def test_header_payload_dimension_mismatch(self):
        obj = json.loads(serialize(schedule_from_words(4, 2, ["XXXX"])))
        obj["cliques"][0]["payload"]["word"] = "XXX"
        with pytest.raises(ScheduleParseError):
            deserialize(json.dumps(obj).encode())
