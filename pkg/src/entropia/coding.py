"""Information measures, Huffman/Kraft machinery and coding experiments.

Huffman ties are broken by (probability, earliest creation index); a
merged node inherits the smaller index of its children and the first
node popped becomes the left (bit 0) child.  This makes every codebook
reproducible across runs and platforms.
"""

from __future__ import annotations

import csv
import heapq
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import DomainError, InfeasibleCodeError
from .report import ExperimentReport

PROB_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Distribution:
    """Finite probability vector with unique symbol labels."""

    labels: tuple
    probs: np.ndarray

    def __post_init__(self):
        probs = np.array(self.probs, dtype=np.float64)  # private copy
        probs.flags.writeable = False
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) != probs.shape[0]:
            raise DomainError("labels and probs must have the same length")
        if len(set(self.labels)) != len(self.labels):
            raise DomainError("labels must be unique")
        if probs.shape[0] == 0:
            raise DomainError("distribution must have at least one symbol")
        if np.any(probs < 0):
            raise DomainError("probabilities must be non-negative")
        if abs(float(probs.sum()) - 1.0) > PROB_TOLERANCE:
            raise DomainError(f"probabilities sum to {probs.sum()}, not 1")

    @classmethod
    def from_weights(cls, labels, weights) -> "Distribution":
        w = np.asarray(weights, dtype=np.float64)
        if np.any(w < 0):
            raise DomainError("weights must be non-negative")
        total = float(w.sum())
        if total <= 0:
            raise DomainError("weights must have positive total")
        return cls(tuple(labels), w / total)

    def prob_of(self, label) -> float:
        return float(self.probs[self.labels.index(label)])


@dataclass(frozen=True)
class HuffmanNode:
    prob: float
    symbol: object = None
    left: "HuffmanNode | None" = None
    right: "HuffmanNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None


@dataclass(frozen=True)
class HuffmanTree:
    root: HuffmanNode

    def depths(self) -> dict:
        """Symbol -> leaf depth; the degenerate one-leaf tree has depth 1."""
        book = codes_from_tree(self)
        return {sym: len(code) for sym, code in book.items()}


@dataclass(frozen=True)
class CodeBook:
    """Prefix-free code; ``source`` is None for bare canonical codes."""

    codes: dict
    source: Distribution | None = None


class CodeLengthBound(NamedTuple):
    length: float
    within_entropy_bound: bool


def entropy(dist: Distribution, base: float = 2.0) -> float:
    """-sum p log_base p with the 0 log 0 := 0 convention."""
    if base <= 1.0:
        raise DomainError(f"entropy base must exceed 1, got {base}")
    p = dist.probs[dist.probs > 0]
    return float(-np.sum(p * np.log(p)) / math.log(base))


def kl_divergence(p: Distribution, q: Distribution) -> float:
    """KL(p || q) in bits; requires q to dominate p on shared labels."""
    if set(p.labels) != set(q.labels):
        raise DomainError("distributions must share the same label set")
    q_by_label = dict(zip(q.labels, q.probs))
    qv = np.array([q_by_label[lab] for lab in p.labels], dtype=np.float64)
    pv = p.probs
    bad = (qv == 0) & (pv > 0)
    if np.any(bad):
        raise DomainError("q assigns zero probability inside p's support")
    mask = pv > 0
    return float(np.sum(pv[mask] * np.log2(pv[mask] / qv[mask])))


def huffman_build(dist: Distribution) -> tuple[HuffmanTree, CodeBook]:
    """Deterministic Huffman tree and codebook for ``dist``."""
    n = len(dist.labels)
    if n == 1:
        leaf = HuffmanNode(prob=float(dist.probs[0]), symbol=dist.labels[0])
        tree = HuffmanTree(root=leaf)
        return tree, CodeBook(codes={dist.labels[0]: "0"}, source=dist)

    heap = [
        (float(p), i, HuffmanNode(prob=float(p), symbol=lab))
        for i, (lab, p) in enumerate(zip(dist.labels, dist.probs))
    ]
    heapq.heapify(heap)
    while len(heap) > 1:
        p_left, i_left, left = heapq.heappop(heap)
        p_right, i_right, right = heapq.heappop(heap)
        merged = HuffmanNode(prob=p_left + p_right, left=left, right=right)
        heapq.heappush(heap, (merged.prob, min(i_left, i_right), merged))
    tree = HuffmanTree(root=heap[0][2])
    return tree, CodeBook(codes=codes_from_tree(tree), source=dist)


def codes_from_tree(tree: HuffmanTree) -> dict:
    codes: dict = {}

    def walk(node: HuffmanNode, prefix: str) -> None:
        if node.is_leaf:
            codes[node.symbol] = prefix or "0"
            return
        walk(node.left, prefix + "0")
        walk(node.right, prefix + "1")

    walk(tree.root, "")
    return codes


def is_prefix_free(codes: dict) -> bool:
    words = sorted(codes.values())
    for a, b in zip(words, words[1:]):
        if b.startswith(a):
            return False
    return True


def kraft_sum(lengths, alphabet_size: int = 2) -> float:
    """Sum of s^-k over the given codeword lengths."""
    if alphabet_size < 2:
        raise DomainError(f"alphabet size must be >= 2, got {alphabet_size}")
    lengths = list(lengths)
    if any(k < 1 for k in lengths):
        raise DomainError("codeword lengths must be >= 1")
    return float(sum(float(alphabet_size) ** -k for k in sorted(lengths, reverse=True)))


def expected_code_length(book: CodeBook) -> CodeLengthBound:
    """Weighted codeword length, flagged against H <= L < H + 1."""
    if book.source is None:
        raise DomainError("codebook has no source distribution")
    by_label = dict(zip(book.source.labels, book.source.probs))
    length = math.fsum(float(by_label[sym]) * len(code) for sym, code in book.codes.items())
    h = entropy(book.source, base=2.0)
    return CodeLengthBound(length=length, within_entropy_bound=h <= length < h + 1.0)


def canonical_code_from_lengths(lengths) -> CodeBook:
    """Canonical prefix code with the given lengths, keyed by position."""
    lengths = [int(k) for k in lengths]
    if kraft_sum(lengths, 2) > 1.0 + 1e-12:
        raise InfeasibleCodeError(f"lengths {lengths} violate the Kraft inequality")
    order = sorted(range(len(lengths)), key=lambda i: (lengths[i], i))
    codes: dict = {}
    counter = 0
    prev_len = lengths[order[0]]
    for rank, i in enumerate(order):
        k = lengths[i]
        if rank > 0:
            counter = (counter + 1) << (k - prev_len)
        codes[i] = format(counter, "b").zfill(k)
        prev_len = k
    return CodeBook(codes=codes, source=None)


def source_coding_trial(dist: Distribution, n: int, seed: int) -> ExperimentReport:
    """Huffman-encode n seeded i.i.d. draws and report bits per symbol."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    _, book = huffman_build(dist)
    lengths = np.array([len(book.codes[lab]) for lab in dist.labels], dtype=np.int64)
    rng = np.random.default_rng(seed)
    draws = rng.choice(len(dist.labels), size=n, p=dist.probs)
    total_bits = int(lengths[draws].sum())
    bps = total_bits / n
    h = entropy(dist, base=2.0)
    expected = expected_code_length(book).length
    return ExperimentReport(
        name="source-coding",
        n_limit=n,
        scalars={
            "bits_per_symbol": bps,
            "entropy_bits": h,
            "expected_code_length": expected,
            "total_bits": float(total_bits),
        },
        checks={"within_entropy_band": h <= bps < h + 1.0},
    )


def incompressibility_census(code_lengths: dict, n: int, c: int) -> float:
    """Fraction of length-n strings whose code is shorter than n - c.

    ``code_lengths`` must cover all 2^n strings and be realizable by an
    injective code: no more than 2^l strings may sit at any length l.
    """
    if n < 1 or n > 20:
        raise DomainError(f"n must be in [1, 20], got {n}")
    if not 0 <= c < n:
        raise DomainError(f"c must be in [0, {n - 1}], got {c}")
    total = 1 << n
    if len(code_lengths) != total:
        raise DomainError(f"expected {total} strings of length {n}, got {len(code_lengths)}")
    per_length = Counter(code_lengths.values())
    for length, count in per_length.items():
        if length < 0:
            raise DomainError(f"negative code length {length}")
        if count > (1 << length):
            raise DomainError(
                f"{count} strings at length {length} cannot be coded injectively"
            )
    short = sum(count for length, count in per_length.items() if length < n - c)
    return short / total


def lz78_phrase_complexity(bits) -> tuple[int, float]:
    """Incremental-parsing phrase count and its normalized rate.

    normalized = phrases * log2(phrases) / len, an estimate of
    finite-state compressibility in bits per symbol.
    """
    arr = np.asarray(bits, dtype=np.uint8)
    if arr.ndim != 1 or arr.shape[0] == 0:
        raise DomainError("bit vector must be nonempty and one-dimensional")
    if np.any(arr > 1):
        raise DomainError("bit vector entries must be 0 or 1")
    phrases = int(kernels.lz78_phrase_count(arr))
    normalized = phrases * math.log2(phrases) / arr.shape[0] if phrases > 1 else 0.0
    return phrases, normalized


# ---------------------------------------------------------------------------
# CSV interfaces


def load_distribution_csv(path) -> Distribution:
    """Read a `symbol,weight` CSV; weights are auto-normalized."""
    labels: list[str] = []
    weights: list[float] = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or "symbol" not in reader.fieldnames:
            raise DomainError(f"{path}: expected a header with 'symbol,weight'")
        weight_col = "weight" if "weight" in reader.fieldnames else None
        if weight_col is None:
            raise DomainError(f"{path}: expected a header with 'symbol,weight'")
        for row in reader:
            labels.append(row["symbol"])
            weights.append(float(row[weight_col]))
    if not labels:
        raise DomainError(f"{path}: no rows")
    if len(set(labels)) != len(labels):
        raise DomainError(f"{path}: duplicate symbols")
    return Distribution.from_weights(labels, weights)


def export_codebook_csv(book: CodeBook, path) -> Path:
    """Write `symbol,code,probability` rows for a sourced codebook."""
    if book.source is None:
        raise DomainError("codebook has no source distribution")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    by_label = dict(zip(book.source.labels, book.source.probs))
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["symbol", "code", "probability"])
        for sym in book.source.labels:
            writer.writerow([sym, book.codes[sym], repr(float(by_label[sym]))])
    return path
