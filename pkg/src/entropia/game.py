"""20-questions over a Huffman tree: sessions walk the tree bit by bit.

Bit 0 descends to the left child ("no"), bit 1 to the right ("yes").
Sessions are immutable; answer() returns the successor state, so
replaying a transcript always reproduces the same session.
"""

from __future__ import annotations

import math
import secrets
from dataclasses import dataclass, replace

import numpy as np

from .coding import (
    CodeBook,
    Distribution,
    HuffmanNode,
    HuffmanTree,
    entropy,
    expected_code_length,
    huffman_build,
    load_distribution_csv,
)
from .errors import DomainError, StateError
from .report import ExperimentReport


@dataclass(frozen=True)
class AlphabetSpec:
    entries: tuple  # (label, weight) pairs, labels unique, weights > 0


@dataclass(frozen=True)
class LoadedAlphabet:
    """An alphabet with its Huffman tree, ready to serve games."""

    spec: AlphabetSpec
    dist: Distribution
    tree: HuffmanTree
    book: CodeBook
    entropy_bits: float
    expected_questions: float


@dataclass(frozen=True)
class GameSession:
    id: str
    node: HuffmanNode
    asked: int
    transcript: tuple
    finished: bool
    answer_label: str | None


@dataclass(frozen=True)
class QuestionView:
    no_labels: tuple
    yes_labels: tuple
    p_no: float
    p_yes: float
    pending_bits: float


def _deck_from_distribution(spec: AlphabetSpec, dist: Distribution) -> LoadedAlphabet:
    tree, book = huffman_build(dist)
    return LoadedAlphabet(
        spec=spec,
        dist=dist,
        tree=tree,
        book=book,
        entropy_bits=entropy(dist, base=2.0),
        expected_questions=expected_code_length(book).length,
    )


def load_alphabet(path) -> LoadedAlphabet:
    """Build the deterministic Huffman deck from a symbol,weight CSV."""
    dist = load_distribution_csv(path)
    if np.any(dist.probs <= 0):
        raise DomainError(f"{path}: alphabet weights must be positive")
    spec = AlphabetSpec(entries=tuple(zip(dist.labels, dist.probs)))
    return _deck_from_distribution(spec, dist)


def alphabet_from_entries(entries) -> LoadedAlphabet:
    """Same as load_alphabet but from in-memory (label, weight) pairs."""
    labels = [label for label, _ in entries]
    weights = [w for _, w in entries]
    if any(w <= 0 for w in weights):
        raise DomainError("alphabet weights must be positive")
    dist = Distribution.from_weights(labels, weights)
    spec = AlphabetSpec(entries=tuple(zip(labels, weights)))
    return _deck_from_distribution(spec, dist)


def start_session(deck: LoadedAlphabet) -> GameSession:
    return GameSession(
        id=secrets.token_hex(8),
        node=deck.tree.root,
        asked=0,
        transcript=(),
        finished=False,
        answer_label=None,
    )


def _leaf_labels(node: HuffmanNode) -> tuple:
    if node.is_leaf:
        return (node.symbol,)
    return _leaf_labels(node.left) + _leaf_labels(node.right)


def current_question(session: GameSession) -> QuestionView:
    """The pending split: what a "no" (0) and a "yes" (1) would mean."""
    if session.finished:
        raise StateError("session is finished; no question is pending")
    node = session.node
    if node.is_leaf:
        # degenerate one-symbol deck: the single mandatory question
        p_no, p_yes = 1.0, 0.0
        no_labels, yes_labels = (node.symbol,), ()
    else:
        p_left = node.left.prob
        p_right = node.right.prob
        total = p_left + p_right
        p_no, p_yes = p_left / total, p_right / total
        no_labels, yes_labels = _leaf_labels(node.left), _leaf_labels(node.right)
    pending = 0.0
    for q in (p_no, p_yes):
        if 0.0 < q < 1.0:
            pending -= q * math.log2(q)
    return QuestionView(
        no_labels=no_labels,
        yes_labels=yes_labels,
        p_no=p_no,
        p_yes=p_yes,
        pending_bits=pending,
    )


def answer(session: GameSession, bit: int) -> GameSession:
    """Descend one edge; pure in (session, bit)."""
    if session.finished:
        raise StateError("session is finished; no more answers accepted")
    if bit not in (0, 1):
        raise DomainError(f"answer bit must be 0 or 1, got {bit!r}")
    node = session.node
    if node.is_leaf:
        # one-symbol deck: any first answer reveals the only label
        return replace(
            session,
            asked=session.asked + 1,
            transcript=session.transcript + (bit,),
            finished=True,
            answer_label=node.symbol,
        )
    nxt = node.left if bit == 0 else node.right
    finished = nxt.is_leaf
    return replace(
        session,
        node=nxt,
        asked=session.asked + 1,
        transcript=session.transcript + (bit,),
        finished=finished,
        answer_label=nxt.symbol if finished else None,
    )


def play_transcript(deck: LoadedAlphabet, bits) -> GameSession:
    """Replay a bit sequence from a fresh session."""
    session = start_session(deck)
    for bit in bits:
        session = answer(session, bit)
    return session


def simulate_plays(deck: LoadedAlphabet, m: int, seed: int) -> ExperimentReport:
    """Optimal play against m seeded draws from the deck distribution."""
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    lengths = np.array(
        [len(deck.book.codes[label]) for label in deck.dist.labels], dtype=np.int64
    )
    rng = np.random.default_rng(seed)
    draws = rng.choice(len(lengths), size=m, p=deck.dist.probs)
    mean_questions = float(lengths[draws].mean())
    h = deck.entropy_bits
    return ExperimentReport(
        name="game-simulation",
        n_limit=m,
        scalars={
            "mean_questions": mean_questions,
            "entropy_bits": h,
            "expected_questions": deck.expected_questions,
        },
        checks={"mean_in_entropy_band": h <= mean_questions < h + 1.0},
    )
