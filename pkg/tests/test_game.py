import pytest

from gks import (
    FixedAdversary,
    FloodStrategy,
    RandomAdversary,
    Sampled,
    SweepAdversary,
    run_game,
    verify_augmented,
    verify_exhaustive,
)
from gks.errors import AdversaryProtocolError, BudgetExceeded, MultipleOnes
from gks.game import AugmentedStrategy, Transcript, complete_as_alice


def bits(s):
    return [int(c) for c in s]


def test_flood_examples():
    f = FloodStrategy(5)
    r = run_game(f, FixedAdversary([1, 2, 4, 5, 3], 1))
    assert r.transcript.bob_set == {3} and r.win
    r = run_game(f, FixedAdversary([1, 2, 4, 5, 3], 0))
    assert r.transcript.bob_set == {1, 2, 3, 4, 5} and r.set_size == 5 and r.win


def test_flood_decode():
    f = FloodStrategy(5)
    assert f.decode(bits("00100")) == (frozenset({3}), 1)
    assert f.decode(bits("00000")) == (frozenset({1, 2, 3, 4, 5}), 0)
    with pytest.raises(MultipleOnes):
        f.decode(bits("01100"))


def test_flood6_exhaustive():
    report = verify_exhaustive(FloodStrategy(6))
    assert report.passed
    assert report.stats["games"] == 1440 == report.stats["wins"]
    assert report.stats["max_set_size"] == 6


def test_flood1():
    r = run_game(FloodStrategy(1), FixedAdversary([1], 1))
    assert r.transcript.bob_set == {1} and r.win
    assert verify_exhaustive(FloodStrategy(1)).passed


class EmptyBob(FloodStrategy):
    def decode(self, word):
        return frozenset(), 0


def test_broken_strategy_counterexample():
    report = verify_exhaustive(EmptyBob(3))
    assert not report.passed
    cx = report.counterexample
    assert cx["bob_set"] == [] and cx["arrival_order"][-1] == cx["merlin_pos"]


def test_budget():
    with pytest.raises(BudgetExceeded):
        verify_exhaustive(FloodStrategy(9))


@pytest.mark.parametrize("order", [[1, 1, 2, 3], [0, 1, 2, 3], [5, 1, 2, 3], [1, 2]])
def test_protocol_errors(order):
    with pytest.raises(AdversaryProtocolError):
        run_game(FloodStrategy(4), FixedAdversary(order, 0))


def test_bad_merlin_bit():
    with pytest.raises(AdversaryProtocolError):
        run_game(FloodStrategy(3), FixedAdversary([1, 2, 3], 2))


def test_conservation_and_determinism(t2):
    a = run_game(t2, RandomAdversary(7)).transcript
    b = run_game(t2, RandomAdversary(7)).transcript
    assert a == b
    assert sorted(a.arrival_order) == list(range(1, 109))
    assert a.arrival_order[-1] == a.merlin_pos
    assert a.written_bits[a.merlin_pos - 1] == a.merlin_bit
    assert len(a.written_bits) == 108


def test_transcript_roundtrip(t2):
    t = run_game(t2, RandomAdversary(3)).transcript
    assert Transcript.from_dict(t.to_dict()) == t
    assert t.to_text().splitlines()[2] == f"merlin {t.merlin_pos} {t.merlin_bit}"


def test_sweep_is_permutation():
    for fid in range(40):
        order = list(SweepAdversary(fid).arrivals(10, [None] * 10))
        assert sorted(order) == list(range(1, 11))
        assert run_game(FloodStrategy(10), SweepAdversary(fid)).win


def test_flood_set_sizes():
    for seed in range(50):
        r = run_game(FloodStrategy(7), RandomAdversary(seed))
        assert r.set_size in (1, 7)
        ones = [i for i, b in enumerate(r.transcript.written_bits, 1) if b]
        assert (r.set_size == 1) == (len(ones) == 1)


def test_verify_augmented_flood5():
    report = verify_augmented(FloodStrategy(5), "exhaustive")
    assert report.passed
    assert report.stats["runs"] == 240


def test_verify_augmented_catches_lost_bit():
    class Forgetful(FloodStrategy):
        def session(self):
            s = super().session()

            class S:
                fill = s.fill

                def fill_final(self, index, bit):
                    return 0

            return S()

    report = verify_augmented(Forgetful(3), "exhaustive", bits=(1,))
    assert not report.passed and report.stats["failures"] == 6


def test_block_transmits_zero(table):
    from gks import code_block_strategy, decode, OneError

    block = code_block_strategy(table)
    assert verify_augmented(block, Sampled(200, 1)).passed
    word = complete_as_alice(block, [1, 2, 3] + list(range(4, 13)), 0)
    assert decode(table, word) == OneError(1, 12)


def test_augmented_is_abstract():
    with pytest.raises(TypeError):
        AugmentedStrategy()
