"""FSW grammar: typed values plus lossless parse/serialize.

An utterance is whitespace-separated sign tokens. A sign token is either a
boxed sign (optional sort prefix ``A<symbols>``, then a box marker B/L/M/R,
an extent coordinate, and placed symbols) or a standalone punctuation symbol
followed by a coordinate. Symbols are 6-character keys ``S`` + 3 hex digits
(base) + 1 digit 0-5 (column) + 1 hex digit (row). Coordinates are
``\\d{3}x\\d{3}`` with both components in 250..750.

Hex digits are accepted in either case on input; serialization always emits
lowercase. All values are immutable after construction; parse and serialize
are pure functions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    CoordinateOutOfRange,
    EmptyInput,
    MalformedSign,
    MalformedSymbol,
    OutOfRangeBase,
)

SYMBOL_BASE_MIN = 0x100
SYMBOL_BASE_MAX = 0x38B
PUNCTUATION_BASE_MIN = 0x387
PUNCTUATION_BASE_MAX = 0x38B
COORD_MIN = 250
COORD_MAX = 750
COORD_MAX_STRICT = 749  # tightened upper bound under strict coordinate mode

BOX_MARKERS = "BLMR"
SORT_MARKER = "A"

_HEX = frozenset("0123456789abcdef")
_COORD_RE = re.compile(r"(\d{3})x(\d{3})")


@dataclass(frozen=True)
class SymbolId:
    """One SignWriting grapheme: base grapheme plus column/row orientation."""

    base: int
    col: int
    row: int

    def __post_init__(self):
        if not SYMBOL_BASE_MIN <= self.base <= SYMBOL_BASE_MAX:
            raise OutOfRangeBase(
                f"symbol base 0x{self.base:x} outside "
                f"[0x{SYMBOL_BASE_MIN:x}, 0x{SYMBOL_BASE_MAX:x}]"
            )
        if not 0 <= self.col <= 5:
            raise MalformedSymbol(f"symbol column {self.col} outside [0, 5]")
        if not 0 <= self.row <= 15:
            raise MalformedSymbol(f"symbol row {self.row} outside [0, 15]")

    @property
    def core(self) -> str:
        """Base grapheme key, e.g. ``S1f0``."""
        return f"S{self.base:03x}"

    def text(self) -> str:
        """Canonical 6-character key, e.g. ``S1f010``."""
        return f"S{self.base:03x}{self.col}{self.row:x}"


@dataclass(frozen=True)
class Coordinate:
    """Position on the sign plane, both components in 250..750."""

    x: int
    y: int

    def __post_init__(self):
        for name, v in (("x", self.x), ("y", self.y)):
            if not COORD_MIN <= v <= COORD_MAX:
                raise CoordinateOutOfRange(
                    f"coordinate {name}={v} outside [{COORD_MIN}, {COORD_MAX}]"
                )

    def text(self) -> str:
        return f"{self.x:03d}x{self.y:03d}"


def is_punctuation(s: SymbolId) -> bool:
    """True iff the symbol base lies in the punctuation range 0x387..0x38b."""
    return PUNCTUATION_BASE_MIN <= s.base <= PUNCTUATION_BASE_MAX


@dataclass(frozen=True)
class Placement:
    """A symbol placed at a position inside a sign box."""

    symbol: SymbolId
    position: Coordinate

    def __post_init__(self):
        # Punctuation bases are standalone signs by definition; allowing them
        # inside boxes would make factor streams ambiguous to reassemble.
        if is_punctuation(self.symbol):
            raise MalformedSign(
                f"punctuation symbol {self.symbol.text()} cannot be placed "
                "inside a sign box"
            )


@dataclass(frozen=True)
class SignBox:
    """Box marker, its extent coordinate, and the placed symbols in source order."""

    marker: str
    extent: Coordinate
    placements: tuple[Placement, ...]

    def __post_init__(self):
        if self.marker not in BOX_MARKERS:
            raise MalformedSign(f"invalid box marker {self.marker!r}")


@dataclass(frozen=True)
class SortPrefix:
    """Leading ``A`` sequence of coordinate-less symbols used for sorting."""

    symbols: tuple[SymbolId, ...]

    def __post_init__(self):
        if not self.symbols:
            raise MalformedSign("sort prefix must contain at least one symbol")


@dataclass(frozen=True)
class BoxedSign:
    prefix: SortPrefix | None
    box: SignBox


@dataclass(frozen=True)
class PunctuationSign:
    symbol: SymbolId
    position: Coordinate

    def __post_init__(self):
        if not is_punctuation(self.symbol):
            raise MalformedSign(
                f"symbol {self.symbol.text()} is not a punctuation symbol"
            )


Sign = BoxedSign | PunctuationSign


@dataclass(frozen=True)
class Utterance:
    signs: tuple[Sign, ...]


def parse_symbol(text: str) -> SymbolId:
    """Decompose a 6-character symbol key into base, column, and row."""
    if len(text) != 6 or text[0] != "S":
        raise MalformedSymbol(f"symbol {text!r} is not 'S' + 5 hex/digit characters")
    body = text[1:].lower()
    if any(c not in _HEX for c in body):
        raise MalformedSymbol(f"symbol {text!r} contains a non-hex digit")
    if body[3] not in "012345":
        raise MalformedSymbol(f"symbol {text!r} has column {body[3]!r} > 5")
    base = int(body[:3], 16)
    if not SYMBOL_BASE_MIN <= base <= SYMBOL_BASE_MAX:
        raise OutOfRangeBase(
            f"symbol {text!r} has base 0x{base:x} outside "
            f"[0x{SYMBOL_BASE_MIN:x}, 0x{SYMBOL_BASE_MAX:x}]"
        )
    return SymbolId(base=base, col=int(body[3]), row=int(body[4], 16))


def _take_symbol(token: str, pos: int, offset: int) -> tuple[SymbolId, int]:
    chunk = token[pos : pos + 6]
    try:
        sym = parse_symbol(chunk)
    except (MalformedSymbol, OutOfRangeBase) as exc:
        if exc.column is None:
            exc.column = offset + pos + 1
        raise
    return sym, pos + 6


def _take_coordinate(
    token: str, pos: int, offset: int, strict: bool
) -> tuple[Coordinate, int]:
    m = _COORD_RE.match(token, pos)
    if m is None:
        raise MalformedSign(
            f"expected coordinate at {token[pos:pos + 7]!r}",
            column=offset + pos + 1,
        )
    x, y = int(m.group(1)), int(m.group(2))
    upper = COORD_MAX_STRICT if strict else COORD_MAX
    for name, v in (("x", x), ("y", y)):
        if not COORD_MIN <= v <= upper:
            raise CoordinateOutOfRange(
                f"coordinate {name}={v} outside [{COORD_MIN}, {upper}]",
                column=offset + pos + 1,
            )
    return Coordinate(x, y), m.end()


def _parse_sign_token(token: str, offset: int = 0, strict: bool = False) -> Sign:
    n = len(token)
    pos = 0
    prefix_symbols: list[SymbolId] = []

    if token[0] == SORT_MARKER:
        pos = 1
        while pos < n and token[pos] == "S":
            sym, pos = _take_symbol(token, pos, offset)
            prefix_symbols.append(sym)
        if not prefix_symbols:
            raise MalformedSign("sort prefix 'A' with no symbols", column=offset + 1)
        if pos >= n or token[pos] not in BOX_MARKERS:
            raise MalformedSign(
                "sort prefix must be followed by a box marker",
                column=offset + pos + 1,
            )

    if pos < n and token[pos] in BOX_MARKERS:
        marker = token[pos]
        pos += 1
        extent, pos = _take_coordinate(token, pos, offset, strict)
        placements: list[Placement] = []
        while pos < n:
            if token[pos] != "S":
                raise MalformedSign(
                    f"expected symbol, found {token[pos]!r}",
                    column=offset + pos + 1,
                )
            sym, pos = _take_symbol(token, pos, offset)
            coord, pos = _take_coordinate(token, pos, offset, strict)
            try:
                placements.append(Placement(sym, coord))
            except MalformedSign as exc:
                exc.column = offset + pos - 12
                raise
        prefix = SortPrefix(tuple(prefix_symbols)) if prefix_symbols else None
        return BoxedSign(prefix, SignBox(marker, extent, tuple(placements)))

    # no box marker: the only legal form left is a punctuation sign
    if token[0] != "S":
        raise MalformedSign(
            f"expected box marker or symbol, found {token[0]!r}",
            column=offset + 1,
        )
    sym, pos = _take_symbol(token, 0, offset)
    if not is_punctuation(sym):
        raise MalformedSign(
            f"symbol {sym.text()} without a box marker is not a punctuation sign",
            column=offset + 1,
        )
    coord, pos = _take_coordinate(token, pos, offset, strict)
    if pos != n:
        raise MalformedSign(
            "trailing characters after punctuation sign",
            column=offset + pos + 1,
        )
    return PunctuationSign(sym, coord)


def parse_utterance(text: str, strict: bool = False) -> Utterance:
    """Parse whitespace-separated FSW sign tokens into a parse tree.

    Token order is preserved. ``strict`` tightens the coordinate upper bound
    from 750 to 749.
    """
    if not text.strip():
        raise EmptyInput("empty utterance text")
    signs = []
    for m in re.finditer(r"\S+", text):
        signs.append(_parse_sign_token(m.group(), offset=m.start(), strict=strict))
    return Utterance(tuple(signs))


def serialize_sign(sign: Sign) -> str:
    """Canonical text of one sign (lowercase hex, no surrounding spaces)."""
    if isinstance(sign, PunctuationSign):
        return sign.symbol.text() + sign.position.text()
    parts = []
    if sign.prefix is not None:
        parts.append(SORT_MARKER + "".join(s.text() for s in sign.prefix.symbols))
    parts.append(sign.box.marker + sign.box.extent.text())
    for p in sign.box.placements:
        parts.append(p.symbol.text() + p.position.text())
    return "".join(parts)


def serialize_utterance(u: Utterance) -> str:
    """Canonical FSW text: signs joined by single spaces."""
    return " ".join(serialize_sign(s) for s in u.signs)


def strip_sort_prefixes(u: Utterance) -> Utterance:
    """Copy of the utterance with every sort prefix removed."""
    signs: list[Sign] = []
    for sign in u.signs:
        if isinstance(sign, BoxedSign) and sign.prefix is not None:
            signs.append(BoxedSign(None, sign.box))
        else:
            signs.append(sign)
    return Utterance(tuple(signs))


def sign_to_dict(sign: Sign) -> dict:
    """JSON-friendly form of one sign."""
    if isinstance(sign, PunctuationSign):
        return {
            "type": "punctuation",
            "symbol": sign.symbol.text(),
            "x": sign.position.x,
            "y": sign.position.y,
        }
    return {
        "type": "boxed",
        "prefix": [s.text() for s in sign.prefix.symbols] if sign.prefix else None,
        "marker": sign.box.marker,
        "extent": [sign.box.extent.x, sign.box.extent.y],
        "placements": [
            {"symbol": p.symbol.text(), "x": p.position.x, "y": p.position.y}
            for p in sign.box.placements
        ],
    }


def utterance_to_dict(u: Utterance) -> dict:
    return {"signs": [sign_to_dict(s) for s in u.signs]}


def sign_from_dict(d: dict) -> Sign:
    if d["type"] == "punctuation":
        return PunctuationSign(parse_symbol(d["symbol"]), Coordinate(d["x"], d["y"]))
    if d["type"] == "boxed":
        prefix = None
        if d.get("prefix"):
            prefix = SortPrefix(tuple(parse_symbol(s) for s in d["prefix"]))
        placements = tuple(
            Placement(parse_symbol(p["symbol"]), Coordinate(p["x"], p["y"]))
            for p in d["placements"]
        )
        box = SignBox(d["marker"], Coordinate(*d["extent"]), placements)
        return BoxedSign(prefix, box)
    raise MalformedSign(f"unknown sign type {d.get('type')!r}")


def utterance_from_dict(d: dict) -> Utterance:
    return Utterance(tuple(sign_from_dict(s) for s in d["signs"]))
