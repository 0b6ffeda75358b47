import random

import pytest
from hypothesis import given, settings

from fswkit import fsw, swu
from fswkit.errors import MalformedSign, MappingFileError, UnknownCodepoint
from fswkit.fuzzing import random_utterance

from test_fsw import utterances

TABLE = swu.default_mapping()


class TestMappingTable:
    def test_packaged_table_constants(self):
        assert TABLE.marker_base == 0x1D800
        assert TABLE.number_base == 0x1D80C
        assert TABLE.symbol_base == 0x40001

    def test_checksum_mismatch_rejected(self):
        text = (
            "version 1\n"
            "marker_base U+1D800\n"
            "number_base U+1D80C\n"
            "symbol_base U+40001\n"
            "checksum sha256 deadbeef\n"
        )
        with pytest.raises(MappingFileError):
            swu.load_mapping_text(text)

    def test_missing_checksum_rejected(self):
        with pytest.raises(MappingFileError):
            swu.load_mapping_text("version 1\nmarker_base U+1D800\n")

    def test_valid_file_with_exception_line(self):
        payload = [
            "version 1",
            "marker_base U+1D800",
            "number_base U+1D80C",
            "symbol_base U+40001",
            "exception M U+0FFF",
        ]
        text = "\n".join(payload) + f"\nchecksum sha256 {swu.mapping_checksum(payload)}\n"
        table = swu.load_mapping_text(text)
        assert table.marker_cp("M") == 0x0FFF
        assert table.classify(0x0FFF) == ("marker", "M")
        # the default codepoint for M is shadowed by the override
        with pytest.raises(UnknownCodepoint):
            table.classify(0x1D803)

    def test_exception_colliding_with_default_rejected(self):
        payload = [
            "version 1",
            "marker_base U+1D800",
            "number_base U+1D80C",
            "symbol_base U+40001",
            "exception M U+1D80C",
        ]
        text = "\n".join(payload) + f"\nchecksum sha256 {swu.mapping_checksum(payload)}\n"
        with pytest.raises(MappingFileError):
            swu.load_mapping_text(text)

    def test_bijection_samples(self):
        rng = random.Random(3)
        for _ in range(2000):
            sym = fsw.SymbolId(rng.randint(0x100, 0x38B), rng.randint(0, 5), rng.randint(0, 15))
            kind, back = TABLE.classify(TABLE.symbol_cp(sym))
            assert (kind, back) == ("symbol", sym)
        for v in range(250, 751):
            assert TABLE.classify(TABLE.number_cp(v)) == ("number", v)
        for m in "ABLMR":
            assert TABLE.classify(TABLE.marker_cp(m)) == ("marker", m)


class TestConvert:
    def test_box_only_sign_is_three_codepoints(self):
        out = swu.fsw_to_swu("M500x500")
        assert len(out) == 3
        assert ord(out[0]) == TABLE.marker_cp("M")
        assert ord(out[1]) == ord(out[2]) == TABLE.number_cp(500)
        assert swu.swu_to_fsw(out) == "M500x500"

    def test_empty(self):
        assert swu.fsw_to_swu("") == ""
        assert swu.swu_to_fsw("") == ""

    def test_golden_round_trip(self, golden_fsw):
        assert swu.swu_to_fsw(swu.fsw_to_swu(golden_fsw)) == golden_fsw

    def test_unknown_codepoint(self):
        with pytest.raises(UnknownCodepoint):
            swu.swu_to_fsw("hello")

    def test_dangling_number_rejected(self):
        text = chr(TABLE.marker_cp("M")) + chr(TABLE.number_cp(500))
        with pytest.raises(MalformedSign):
            swu.swu_to_fsw(text)

    def test_prefix_and_punctuation(self):
        text = "AS14c20S27106M518x529S14c20481x471S27106503x489 S38800464x496"
        converted = swu.fsw_to_swu(text)
        assert swu.swu_to_fsw(converted) == text
        # 1 sign separator space survives
        assert converted.count(" ") == 1

    def test_symbol_codepoint_count_matches_symbol_count(self, golden_fsw):
        converted = swu.fsw_to_swu(golden_fsw)
        assert swu.count_symbol_codepoints(converted) == 7

    def test_non_canonical_input_normalizes(self):
        # uppercase hex on input maps to the same codepoints as lowercase
        assert swu.fsw_to_swu("M500x500S1F010500x500") == swu.fsw_to_swu(
            "M500x500S1f010500x500"
        )


@given(utterances)
@settings(max_examples=200)
def test_bijectivity_property(u):
    text = fsw.serialize_utterance(u)
    converted = swu.fsw_to_swu(text)
    assert swu.swu_to_fsw(converted) == text


def test_seeded_bijectivity_sample():
    rng = random.Random(5)
    for _ in range(500):
        text = fsw.serialize_utterance(random_utterance(rng))
        assert swu.swu_to_fsw(swu.fsw_to_swu(text)) == text


def count_symbols_in_tree(u):
    total = 0
    for sign in u.signs:
        if isinstance(sign, fsw.PunctuationSign):
            total += 1
        else:
            total += len(sign.box.placements)
            if sign.prefix is not None:
                total += len(sign.prefix.symbols)
    return total


@given(utterances)
@settings(max_examples=150)
def test_symbol_codepoint_count_preserved(u):
    converted = swu.fsw_to_swu(fsw.serialize_utterance(u))
    assert swu.count_symbol_codepoints(converted) == count_symbols_in_tree(u)
