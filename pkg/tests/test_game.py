import math

import numpy as np
import pytest

from entropia import (
    DomainError,
    StateError,
    alphabet_from_entries,
    answer,
    current_question,
    simulate_plays,
    start_session,
)
from entropia.cli import demo_alphabet_path
from entropia.game import load_alphabet, play_transcript


@pytest.fixture(scope="module")
def flowers(tmp_path_factory):
    path = tmp_path_factory.mktemp("deck") / "flowers.csv"
    path.write_text("symbol,weight\nrose,0.5\ntulip,0.25\ndaisy,0.125\nlily,0.125\n")
    return load_alphabet(path)


class TestLoadAlphabet:
    def test_dyadic_expected_questions(self, flowers):
        assert flowers.expected_questions == pytest.approx(1.75)
        assert flowers.entropy_bits == pytest.approx(1.75)
        assert flowers.book.codes == {
            "rose": "0",
            "tulip": "10",
            "daisy": "110",
            "lily": "111",
        }

    def test_single_entry(self):
        deck = alphabet_from_entries([("only", 1.0)])
        assert deck.expected_questions == 1.0
        session = answer(start_session(deck), 0)
        assert session.finished and session.answer_label == "only"
        assert session.asked == 1

    def test_uniform_2_20_scale(self):
        deck = alphabet_from_entries([(f"w{i}", 1.0) for i in range(1 << 20)])
        assert deck.expected_questions == pytest.approx(20.0)

    def test_duplicate_labels_rejected(self, tmp_path):
        path = tmp_path / "dup.csv"
        path.write_text("symbol,weight\na,1\na,2\n")
        with pytest.raises(DomainError):
            load_alphabet(path)

    def test_nonpositive_weight_rejected(self):
        with pytest.raises(DomainError):
            alphabet_from_entries([("a", 1.0), ("b", 0.0)])

    def test_bundled_corpus_loads(self):
        deck = load_alphabet(demo_alphabet_path())
        assert len(deck.dist.labels) == 1024
        h = deck.entropy_bits
        assert h <= deck.expected_questions < h + 1


class TestSessions:
    def test_fresh_session(self, flowers):
        session = start_session(flowers)
        assert not session.finished
        assert session.asked == 0
        assert session.transcript == ()

    def test_distinct_ids(self, flowers):
        assert start_session(flowers).id != start_session(flowers).id

    def test_root_question_is_even_split(self, flowers):
        view = current_question(start_session(flowers))
        assert view.p_no == pytest.approx(0.5)
        assert view.p_yes == pytest.approx(0.5)
        assert view.pending_bits == pytest.approx(1.0)
        assert view.no_labels == ("rose",)
        assert set(view.yes_labels) == {"tulip", "daisy", "lily"}

    def test_single_zero_reaches_rose(self, flowers):
        session = answer(start_session(flowers), 0)
        assert session.finished and session.answer_label == "rose"
        with pytest.raises(StateError):
            current_question(session)

    def test_skewed_split_information(self):
        deck = alphabet_from_entries([("a", 0.9), ("b", 0.1)])
        view = current_question(start_session(deck))
        assert view.pending_bits == pytest.approx(0.4689955936, abs=1e-9)

    def test_yes_no_reaches_tulip(self, flowers):
        session = play_transcript(flowers, [1, 0])
        assert session.finished
        assert session.answer_label == "tulip"
        assert session.asked == 2
        assert session.transcript == (1, 0)

    def test_answer_after_finish_rejected(self, flowers):
        session = play_transcript(flowers, [1, 0])
        with pytest.raises(StateError):
            answer(session, 0)

    def test_non_bit_rejected(self, flowers):
        with pytest.raises(DomainError):
            answer(start_session(flowers), 2)

    def test_transcript_tracks_asked(self, flowers):
        session = start_session(flowers)
        for bit in (1, 1, 0):
            session = answer(session, bit)
            assert session.asked == len(session.transcript)
        assert session.answer_label == "daisy"

    def test_replay_reproduces_state(self, flowers):
        a = play_transcript(flowers, [1, 1, 1])
        b = play_transcript(flowers, [1, 1, 1])
        assert (a.asked, a.transcript, a.finished, a.answer_label) == (
            b.asked,
            b.transcript,
            b.finished,
            b.answer_label,
        )


class TestTranscriptCodewordIdentity:
    def test_transcript_equals_codeword_exhaustive(self):
        rng = np.random.default_rng(31)
        for size in (2, 3, 7, 64, 257, 1 << 12):
            deck = alphabet_from_entries(
                [(f"s{i}", float(w)) for i, w in enumerate(rng.random(size) + 1e-3)]
            )
            for label, code in deck.book.codes.items():
                session = play_transcript(deck, (int(b) for b in code))
                assert session.finished
                assert session.answer_label == label
                assert "".join(str(b) for b in session.transcript) == code

    def test_weighted_exhaustive_play_equals_expected_length(self):
        rng = np.random.default_rng(32)
        deck = alphabet_from_entries(
            [(f"s{i}", float(w)) for i, w in enumerate(rng.random(40) + 1e-3)]
        )
        mean = math.fsum(
            deck.dist.prob_of(label) * len(code) for label, code in deck.book.codes.items()
        )
        assert mean == pytest.approx(deck.expected_questions, abs=1e-12)


class TestSimulatePlays:
    def test_dyadic_mean(self, flowers):
        report = simulate_plays(flowers, 10**5, seed=42)
        assert report.scalars["mean_questions"] == pytest.approx(1.75, abs=0.01)
        assert report.checks["mean_in_entropy_band"]

    def test_point_mass_exact(self):
        deck = alphabet_from_entries([("only", 1.0)])
        report = simulate_plays(deck, 1000, seed=0)
        assert report.scalars["mean_questions"] == 1.0

    def test_4_symbol_mean(self):
        deck = alphabet_from_entries([("a", 0.4), ("b", 0.3), ("c", 0.2), ("d", 0.1)])
        report = simulate_plays(deck, 10**5, seed=42)
        assert report.scalars["mean_questions"] == pytest.approx(1.9, abs=0.01)

    def test_bad_m(self, flowers):
        with pytest.raises(DomainError):
            simulate_plays(flowers, 0, seed=0)
