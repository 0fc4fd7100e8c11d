"""Nucleotide identities and their qubit encodings.

Two faces of a base are modeled. The recognition face carries 2 qubits
(first bit: purine/pyrimidine, second bit: imino/enol); the pairing face
carries 3 qubits whose bit values mark proton presence on each bonding atom.
A rare tautomer relocates the proton that the second recognition bit tracks,
so its recognition pattern is the canonical one with that bit flipped.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .statevec import StateVector, basis_state

BASES = ("A", "T", "G", "C")

# Recognition-face (2-qubit) patterns of the canonical bases.
H_CANONICAL = {"A": (0, 1), "T": (1, 0), "G": (0, 0), "C": (1, 1)}

# Pairing-face (3-qubit) patterns before recognition; rare forms are not
# assigned a pattern at this level.
WC_INITIAL = {"A": (1, 0, 1), "T": (0, 1, 0), "G": (0, 1, 1), "C": (1, 0, 0)}

# Basis kets spanned by each base's post-recognition superposition; exactly
# one per base classifies canonical, the rest are tautomer components.
WC_SUPPORT = {
    "A": {(0, 1, 1), (1, 0, 1)},
    "T": {(0, 1, 0), (1, 0, 0)},
    "G": {(0, 1, 1), (1, 0, 1), (1, 1, 0)},
    "C": {(1, 0, 0), (0, 1, 0), (0, 0, 1)},
}


class UnsupportedEncodingError(ValueError):
    """Raised when an encoding is requested that no base provides."""


@dataclass(frozen=True)
class BaseCode:
    """A nucleotide identity: base letter plus tautomer flag."""

    base: str
    rare: bool = False

    def __post_init__(self) -> None:
        if self.base not in BASES:
            raise ValueError(f"base must be one of {BASES}, got {self.base!r}")

    @classmethod
    def parse(cls, text: str) -> BaseCode:
        """Parse 'A', 'C*', etc."""
        if len(text) == 2 and text[1] == "*":
            return cls(text[0], rare=True)
        return cls(text)

    @property
    def label(self) -> str:
        return self.base + ("*" if self.rare else "")

    def __str__(self) -> str:
        return self.label


ALL_CODES = tuple(BaseCode(b, rare) for b in BASES for rare in (False, True))


@dataclass(frozen=True)
class EdgePattern:
    """A bit pattern on one face: 2 bits (edge 'H') or 3 bits (edge 'WC')."""

    edge: str
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.edge not in ("H", "WC"):
            raise ValueError(f"edge must be 'H' or 'WC', got {self.edge!r}")
        want = 2 if self.edge == "H" else 3
        if len(self.bits) != want or any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"edge {self.edge} takes {want} bits, got {self.bits}")

    @property
    def text(self) -> str:
        return "".join(str(b) for b in self.bits)


def h_edge_pattern(b: BaseCode) -> EdgePattern:
    """Recognition-face pattern; a rare tautomer flips the imino/enol bit."""
    first, second = H_CANONICAL[b.base]
    if b.rare:
        second ^= 1
    return EdgePattern("H", (first, second))


def h_edge_state(b: BaseCode) -> StateVector:
    return basis_state(h_edge_pattern(b).bits)


def wc_initial_pattern(b: BaseCode) -> EdgePattern:
    if b.rare:
        raise UnsupportedEncodingError(
            f"no pairing-face pattern is defined for rare tautomer {b.label}"
        )
    return EdgePattern("WC", WC_INITIAL[b.base])


def wc_initial_state(b: BaseCode) -> StateVector:
    return basis_state(wc_initial_pattern(b).bits)


def complement_pattern(p: EdgePattern) -> EdgePattern:
    """Bitwise complement of a recognition-face pattern."""
    if p.edge != "H":
        raise ValueError(f"complement is defined on edge 'H' only, got {p.edge!r}")
    return EdgePattern("H", tuple(b ^ 1 for b in p.bits))


def is_complementary(b1: BaseCode, b2: BaseCode) -> bool:
    """True when the recognition patterns are bitwise complements."""
    return h_edge_pattern(b1).bits == complement_pattern(h_edge_pattern(b2)).bits


def classify_component(b: BaseCode, ket: str | Sequence[int]) -> str:
    """Classify a pairing-face basis ket of base ``b``: canonical or rare.

    The ket must lie in the support of the base's post-recognition
    superposition; anything else is a domain error.
    """
    if isinstance(ket, str):
        bits = tuple(int(c) for c in ket)
    else:
        bits = tuple(int(x) for x in ket)
    if bits not in WC_SUPPORT[b.base]:
        raise ValueError(f"ket {bits} is not a tautomer component of {b.label}")
    return "canonical" if bits == WC_INITIAL[b.base] else "rare"


def recognition_matches(pattern: EdgePattern, include_rare: bool = False) -> list[BaseCode]:
    """Bases whose recognition pattern complements the given one.

    This is the selection rule for an incoming nucleotide: it pairs with a
    template whose exposed pattern is the bitwise complement of its own.
    """
    target = complement_pattern(pattern).bits
    return [
        c
        for c in ALL_CODES
        if (include_rare or not c.rare) and h_edge_pattern(c).bits == target
    ]
