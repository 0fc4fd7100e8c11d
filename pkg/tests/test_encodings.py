"""Nucleotide codes, edge patterns, complementarity, tautomer classification."""
from __future__ import annotations

import numpy as np
import pytest

from dnaswap.encodings import (
    ALL_CODES,
    BaseCode,
    EdgePattern,
    UnsupportedEncodingError,
    classify_component,
    complement_pattern,
    h_edge_pattern,
    h_edge_state,
    is_complementary,
    recognition_matches,
    wc_initial_pattern,
    wc_initial_state,
)
from dnaswap.statevec import basis_state

A, T, G, C = (BaseCode(b) for b in "ATGC")
A_r, T_r, G_r, C_r = (BaseCode(b, rare=True) for b in "ATGC")


def test_base_code_parsing_and_labels():
    assert BaseCode.parse("C*") == C_r
    assert BaseCode.parse("A") == A
    assert C_r.label == "C*"
    assert str(G) == "G"
    assert len(ALL_CODES) == 8
    with pytest.raises(ValueError):
        BaseCode("X")


@pytest.mark.parametrize(
    "code,bits",
    [(A, (0, 1)), (T, (1, 0)), (G, (0, 0)), (C, (1, 1)),
     (A_r, (0, 0)), (T_r, (1, 1)), (G_r, (0, 1)), (C_r, (1, 0))],
)
def test_recognition_patterns(code, bits):
    assert h_edge_pattern(code).bits == bits
    assert np.allclose(h_edge_state(code).amplitudes, basis_state(bits).amplitudes)


@pytest.mark.parametrize(
    "code,bits", [(A, (1, 0, 1)), (T, (0, 1, 0)), (G, (0, 1, 1)), (C, (1, 0, 0))]
)
def test_pairing_face_initial_patterns(code, bits):
    assert wc_initial_pattern(code).bits == bits
    assert np.allclose(wc_initial_state(code).amplitudes, basis_state(bits).amplitudes)


def test_rare_tautomer_has_no_pairing_face_encoding():
    with pytest.raises(UnsupportedEncodingError):
        wc_initial_state(A_r)


def test_complement_pattern_examples():
    assert complement_pattern(h_edge_pattern(A)).bits == h_edge_pattern(T).bits
    assert complement_pattern(h_edge_pattern(G)).bits == h_edge_pattern(C).bits


def test_complement_is_an_involution():
    for code in ALL_CODES:
        p = h_edge_pattern(code)
        assert complement_pattern(complement_pattern(p)).bits == p.bits


def test_complement_rejects_pairing_face_patterns():
    with pytest.raises(ValueError, match="edge 'H'"):
        complement_pattern(EdgePattern("WC", (1, 0, 1)))


def test_canonical_patterns_are_distinct_and_closed_under_complement():
    patterns = {code.base: h_edge_pattern(code).bits for code in (A, T, G, C)}
    assert len(set(patterns.values())) == 4
    assert complement_pattern(EdgePattern("H", patterns["A"])).bits == patterns["T"]
    assert complement_pattern(EdgePattern("H", patterns["G"])).bits == patterns["C"]


@pytest.mark.parametrize(
    "b1,b2,expected",
    [(A, T, True), (G, C, True), (A, C_r, True), (G_r, T, True),
     (A, C, False), (A, G, False), (T, C, False)],
)
def test_complementarity_including_mispairs(b1, b2, expected):
    assert is_complementary(b1, b2) is expected
    assert is_complementary(b2, b1) is expected


def test_classify_component_examples():
    assert classify_component(A, "101") == "canonical"
    assert classify_component(A, "011") == "rare"
    assert classify_component(G, "110") == "rare"
    with pytest.raises(ValueError, match="not a tautomer component"):
        classify_component(G, "000")


def test_exactly_one_canonical_component_per_base(cfg):
    from dnaswap.encodings import WC_SUPPORT
    from dnaswap.protocol import recognize

    for code in (A, T, G, C):
        support = WC_SUPPORT[code.base]
        kinds = [classify_component(code, bits) for bits in support]
        assert kinds.count("canonical") == 1
        # the static support table matches the recognized state's support
        state = recognize(code, cfg)
        live = {
            tuple(int(c) for c in format(i, "03b"))
            for i, amp in enumerate(state.amplitudes)
            if abs(amp) > 1e-12
        }
        assert live == support


def test_initial_pattern_weights_are_the_conserved_constants():
    weights = {code.base: sum(wc_initial_pattern(code).bits) for code in (A, T, G, C)}
    assert weights == {"A": 2, "T": 1, "G": 2, "C": 1}


def test_recognition_matches_canonical_only():
    assert recognition_matches(h_edge_pattern(A)) == [T]
    assert recognition_matches(h_edge_pattern(G)) == [C]


def test_recognition_matches_with_tautomers():
    assert set(recognition_matches(h_edge_pattern(A), include_rare=True)) == {T, C_r}
    assert set(recognition_matches(h_edge_pattern(G), include_rare=True)) == {C, T_r}


def test_edge_pattern_validation():
    with pytest.raises(ValueError):
        EdgePattern("H", (1, 0, 1))
    with pytest.raises(ValueError):
        EdgePattern("WC", (1, 0))
    with pytest.raises(ValueError):
        EdgePattern("S", (1, 0))
