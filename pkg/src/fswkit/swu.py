"""Lossless conversion between FSW text and its Unicode codepoint encoding.

The mapping is arithmetic over three base codepoints loaded from a versioned
data file: the five structural markers A B L M R sit consecutively from
``marker_base``, positional number 250 maps to ``number_base``, and symbol
S10000 maps to ``symbol_base`` with index ``(base - 0x100)*96 + col*16 +
row``. The packaged table follows the Internet-Draft codepoint layout for
SignWriting; the data file format is documented in load_mapping_text.

Coordinates lose their ``x`` separator in codepoint form, so decoding pairs
numbers back up positionally: the first number after a marker or symbol is
the x component, the second the y component.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import MalformedSign, MappingFileError, UnknownCodepoint
from .fsw import (
    COORD_MAX,
    COORD_MIN,
    SYMBOL_BASE_MAX,
    SYMBOL_BASE_MIN,
    BoxedSign,
    SymbolId,
    Utterance,
    parse_utterance,
)

_MARKER_LETTERS = "ABLMR"
_NUMBER_COUNT = COORD_MAX - COORD_MIN + 1
_SYMBOL_COUNT = (SYMBOL_BASE_MAX - SYMBOL_BASE_MIN) * 96 + 5 * 16 + 15 + 1


@dataclass(frozen=True)
class SwuMappingTable:
    """Base codepoints plus optional per-token exception overrides."""

    marker_base: int
    number_base: int
    symbol_base: int
    exceptions: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        seen_tokens, seen_cps = set(), set()
        for token, cp in self.exceptions:
            if token in seen_tokens or cp in seen_cps:
                raise MappingFileError(f"duplicate exception for {token!r} / U+{cp:04X}")
            seen_tokens.add(token)
            seen_cps.add(cp)
            if self._default_classify(cp) is not None:
                raise MappingFileError(
                    f"exception target U+{cp:04X} collides with a default codepoint"
                )

    # --- encoding ---

    def _exception_cp(self, token: str) -> int | None:
        for t, cp in self.exceptions:
            if t == token:
                return cp
        return None

    def marker_cp(self, letter: str) -> int:
        cp = self._exception_cp(letter)
        return cp if cp is not None else self.marker_base + _MARKER_LETTERS.index(letter)

    def number_cp(self, value: int) -> int:
        cp = self._exception_cp(f"{value:03d}")
        return cp if cp is not None else self.number_base + (value - COORD_MIN)

    def symbol_cp(self, sym: SymbolId) -> int:
        cp = self._exception_cp(sym.text())
        if cp is not None:
            return cp
        index = (sym.base - SYMBOL_BASE_MIN) * 96 + sym.col * 16 + sym.row
        return self.symbol_base + index

    # --- decoding ---

    def _default_classify(self, cp: int):
        if self.marker_base <= cp < self.marker_base + len(_MARKER_LETTERS):
            return ("marker", _MARKER_LETTERS[cp - self.marker_base])
        if self.number_base <= cp < self.number_base + _NUMBER_COUNT:
            return ("number", COORD_MIN + cp - self.number_base)
        if self.symbol_base <= cp < self.symbol_base + _SYMBOL_COUNT:
            index = cp - self.symbol_base
            base = SYMBOL_BASE_MIN + index // 96
            return ("symbol", SymbolId(base, (index % 96) // 16, index % 16))
        return None

    def classify(self, cp: int):
        """Return ("marker", letter), ("number", value), or ("symbol", SymbolId)."""
        shadowed = set()
        for token, exc_cp in self.exceptions:
            if cp == exc_cp:
                return self._classify_token(token)
            shadowed.add(self._default_cp_of(token))
        if cp in shadowed:
            raise UnknownCodepoint(f"U+{cp:04X} is shadowed by a mapping exception")
        kind = self._default_classify(cp)
        if kind is None:
            raise UnknownCodepoint(f"U+{cp:04X} is not in the SWU mapping domain")
        return kind

    def _classify_token(self, token: str):
        if token in _MARKER_LETTERS:
            return ("marker", token)
        if token.isdigit():
            return ("number", int(token))
        from .fsw import parse_symbol

        return ("symbol", parse_symbol(token))

    def _default_cp_of(self, token: str) -> int:
        if token in _MARKER_LETTERS:
            return self.marker_base + _MARKER_LETTERS.index(token)
        if token.isdigit():
            return self.number_base + int(token) - COORD_MIN
        from .fsw import parse_symbol

        sym = parse_symbol(token)
        return self.symbol_base + (sym.base - SYMBOL_BASE_MIN) * 96 + sym.col * 16 + sym.row


def _parse_codepoint(text: str) -> int:
    if not text.upper().startswith("U+"):
        raise MappingFileError(f"codepoint {text!r} must be written U+XXXX")
    try:
        return int(text[2:], 16)
    except ValueError:
        raise MappingFileError(f"codepoint {text!r} is not hexadecimal") from None


def mapping_checksum(payload_lines: list[str]) -> str:
    return hashlib.sha256("\n".join(payload_lines).encode("utf-8")).hexdigest()


def load_mapping_text(text: str) -> SwuMappingTable:
    """Parse a mapping data file.

    Format: comment lines start with ``#``; payload lines are ``version N``,
    ``marker_base U+XXXX``, ``number_base U+XXXX``, ``symbol_base U+XXXX``,
    and optional ``exception <token> U+XXXX`` overrides; the final line is
    ``checksum sha256 <hex>`` over the newline-joined payload lines.
    """
    payload: list[str] = []
    fields: dict[str, int] = {}
    exceptions: list[tuple[str, int]] = []
    checksum = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if checksum is not None:
            raise MappingFileError("content after checksum line")
        parts = line.split()
        if parts[0] == "checksum":
            if len(parts) != 3 or parts[1] != "sha256":
                raise MappingFileError("checksum line must be 'checksum sha256 <hex>'")
            checksum = parts[2]
            continue
        payload.append(line)
        if parts[0] == "version":
            continue
        if parts[0] in ("marker_base", "number_base", "symbol_base") and len(parts) == 2:
            fields[parts[0]] = _parse_codepoint(parts[1])
        elif parts[0] == "exception" and len(parts) == 3:
            exceptions.append((parts[1], _parse_codepoint(parts[2])))
        else:
            raise MappingFileError(f"unrecognized mapping line {line!r}")
    if checksum is None:
        raise MappingFileError("missing checksum line")
    if checksum != mapping_checksum(payload):
        raise MappingFileError("mapping file checksum mismatch")
    missing = {"marker_base", "number_base", "symbol_base"} - fields.keys()
    if missing:
        raise MappingFileError(f"mapping file missing {sorted(missing)}")
    return SwuMappingTable(exceptions=tuple(exceptions), **fields)


@lru_cache(maxsize=1)
def default_mapping() -> SwuMappingTable:
    text = resources.files("fswkit").joinpath("data/swu_mapping.txt").read_text("utf-8")
    return load_mapping_text(text)


def load_mapping(path=None) -> SwuMappingTable:
    if path is None:
        return default_mapping()
    with open(path, encoding="utf-8") as f:
        return load_mapping_text(f.read())


def fsw_to_swu(text: str, table: SwuMappingTable | None = None) -> str:
    """Encode FSW text as codepoints; inter-sign spaces are preserved."""
    if not text.strip():
        return ""
    table = table or default_mapping()
    u = parse_utterance(text)
    out: list[str] = []
    for sign in u.signs:
        chunk: list[int] = []
        if isinstance(sign, BoxedSign):
            if sign.prefix is not None:
                chunk.append(table.marker_cp("A"))
                chunk.extend(table.symbol_cp(s) for s in sign.prefix.symbols)
            chunk.append(table.marker_cp(sign.box.marker))
            chunk.append(table.number_cp(sign.box.extent.x))
            chunk.append(table.number_cp(sign.box.extent.y))
            for p in sign.box.placements:
                chunk.append(table.symbol_cp(p.symbol))
                chunk.append(table.number_cp(p.position.x))
                chunk.append(table.number_cp(p.position.y))
        else:
            chunk.append(table.symbol_cp(sign.symbol))
            chunk.append(table.number_cp(sign.position.x))
            chunk.append(table.number_cp(sign.position.y))
        out.append("".join(chr(cp) for cp in chunk))
    return " ".join(out)


def swu_to_fsw(text: str, table: SwuMappingTable | None = None) -> str:
    """Exact inverse of fsw_to_swu; the result is validated by the parser."""
    if text == "":
        return ""
    table = table or default_mapping()
    out: list[str] = []
    pending_pair = False  # saw the x component of a coordinate, y outstanding
    for ch in text:
        if ch == " ":
            if pending_pair:
                raise MalformedSign("positional number pair interrupted by a space")
            out.append(" ")
            continue
        kind, value = table.classify(ord(ch))
        if kind == "number":
            out.append(f"{value:03d}" if not pending_pair else f"x{value:03d}")
            pending_pair = not pending_pair
        else:
            if pending_pair:
                raise MalformedSign(
                    f"positional number pair interrupted by a {kind} codepoint"
                )
            out.append(value if kind == "marker" else value.text())
    if pending_pair:
        raise MalformedSign("dangling positional number at end of SWU text")
    fsw = "".join(out)
    parse_utterance(fsw)  # guarantees the result is in the FSW domain
    return fsw


def count_symbol_codepoints(swu_text: str, table: SwuMappingTable | None = None) -> int:
    """Number of codepoints in the symbol range (used by alignment checks)."""
    table = table or default_mapping()
    count = 0
    for ch in swu_text:
        if ch == " ":
            continue
        kind, _ = table.classify(ord(ch))
        if kind == "symbol":
            count += 1
    return count


def utterance_to_swu(u: Utterance, table: SwuMappingTable | None = None) -> str:
    from .fsw import serialize_utterance

    return fsw_to_swu(serialize_utterance(u), table)
