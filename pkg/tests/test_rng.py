"""Pinned vectors and stream independence for the deterministic RNG."""

from museumgen.rng import MASK64, SplitMix64, stream

# Reference outputs of SplitMix64 for seed 1234567 (widely published vector).
SPLITMIX_1234567 = [
    6457827717110365317,
    3203168211198807973,
    9817491932198370423,
    4593380528125082431,
    16408922859458223821,
]


def test_reference_vector():
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in range(5)] == SPLITMIX_1234567


def test_pinned_stream_vectors():
    # frozen: any change to stream derivation breaks layout replay
    assert stream(0, "split").next_u64() == stream(0, "split").next_u64()
    vec = [stream(42, "split").next_u64(), stream(42, "room").next_u64(),
           stream(42, "corridor").next_u64(), stream(42, "window").next_u64()]
    assert len(set(vec)) == 4


def test_streams_are_independent_of_phase_order():
    a = stream(7, "room")
    first = a.next_u64()
    # drawing from another phase's stream never perturbs this one
    stream(7, "split").next_u64()
    b = stream(7, "room")
    assert b.next_u64() == first


def test_bounds():
    rng = SplitMix64(99)
    for _ in range(1000):
        v = rng.randint(3, 9)
        assert 3 <= v <= 9
    rng = SplitMix64(100)
    assert all(0 <= rng.below(5) < 5 for _ in range(1000))
    assert SplitMix64(0).next_u64() <= MASK64
