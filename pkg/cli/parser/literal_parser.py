"""
Line-oriented literal grammar for rings, modules, complexes and graded A-modules.

    ring Z/4
    module M = coker [[2,0],[0,4]]
    module F = free 2
    complex X = deg 1..0 : [[1]]
    complex Y = deg 1..0 : [[2]] over free 1 | coker [[4]]
    amodule K = deg 0..0 : over coker [[2]]
    expect gpd M == Gpd = 0 (quasi-Frobenius collapse); pd = ∞

Matrices are nested bracket lists of integers, or zeros(r,c) for empty shapes.
Complex boundaries are listed from the top degree downward; without "over" every
term is free of the rank the matrices imply.
"""

import json
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from core.complexes.chain_complex import ChainComplex
from core.graded.graded_bridge import GradedAModule, psi
from core.linear.exact_linear import ExactMatrix, RingDesc
from core.modules.fp_module import FPModule
from shared.errors import GorhomError, InvariantViolationError, LiteralParseError
from shared.logging_mixin import LoggingMixin

ParsedObject = Union[FPModule, ChainComplex, GradedAModule]

_ZEROS = re.compile(r"^zeros\(\s*(\d+)\s*,\s*(\d+)\s*\)$")
_DEGREES = re.compile(r"^deg\s+(-?\d+)\s*\.\.\s*(-?\d+)\s*:")
_DECLARATION = re.compile(r"^(module|complex|amodule)\s+([A-Za-z_][A-Za-z0-9_']*)\s*=\s*(.*)$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


@dataclass(frozen=True)
class Expectation:
    """One "expect" line: a command over named objects and its expected first output line."""

    command: str
    args: Tuple[str, ...]
    expected: str
    line: int


@dataclass
class ParsedDocument:
    ring: Optional[RingDesc] = None
    objects: Dict[str, ParsedObject] = field(default_factory=dict)
    expectations: List[Expectation] = field(default_factory=list)

    def resolve(self, name: str, line: int = 1) -> ParsedObject:
        if name not in self.objects:
            raise LiteralParseError(f"unknown object '{name}'", line, 1)
        return self.objects[name]


def _split_top_level(text: str, separator: str) -> List[Tuple[str, int]]:
    """Splits at separators outside brackets and parentheses; keeps each piece's offset."""
    pieces, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        elif ch == separator and depth == 0:
            pieces.append((text[start:i], start))
            start = i + 1
    pieces.append((text[start:], start))
    return pieces


def _strip_with_offset(text: str, offset: int) -> Tuple[str, int]:
    stripped = text.lstrip()
    return stripped.rstrip(), offset + len(text) - len(stripped)


class LiteralParser(LoggingMixin):
    """
    Parses literal text into verified objects. Every constructor re-checks its
    invariants, and any failure is reported with the line and column where the
    offending literal starts.
    """

    def __init__(self, ring: Optional[RingDesc] = None):
        self.ring = ring

    def _require_ring(self, line: int) -> RingDesc:
        if self.ring is None:
            raise LiteralParseError("no ring declared; add a 'ring' line or pass --ring", line, 1)
        return self.ring

    def parse_matrix(self, text: str, line: int = 1, column: int = 1) -> ExactMatrix:
        ring = self._require_ring(line)
        text = text.strip()
        zeros = _ZEROS.match(text)
        if zeros:
            return ExactMatrix.zeros(ring, int(zeros.group(1)), int(zeros.group(2)))
        try:
            rows = json.loads(text)
        except json.JSONDecodeError as e:
            raise LiteralParseError(f"malformed matrix: {e.msg}", line, column + e.colno - 1)
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise LiteralParseError("a matrix is a list of rows", line, column)
        if not rows:
            raise LiteralParseError("empty matrix; write zeros(r,c)", line, column)
        for r in rows:
            if not all(isinstance(v, int) and not isinstance(v, bool) for v in r):
                raise LiteralParseError("matrix entries must be integers", line, column)
        if len({len(r) for r in rows}) != 1 or not rows[0]:
            raise LiteralParseError("matrix rows must be non-empty and of equal length", line, column)
        return ExactMatrix.from_rows(ring, rows)

    def parse_module(self, text: str, line: int = 1, column: int = 1) -> FPModule:
        ring = self._require_ring(line)
        body, column = _strip_with_offset(text, column)
        if body.startswith("free"):
            rank = body[len("free"):].strip()
            if not rank.isdigit():
                raise LiteralParseError(f"expected a rank after 'free', got '{rank}'", line, column)
            return FPModule.free(ring, int(rank))
        if body.startswith("coker"):
            offset = len(body) - len(body[len("coker"):].lstrip())
            rels = self.parse_matrix(body[offset:], line, column + offset)
            return FPModule(ring, rels.rows, rels)
        raise LiteralParseError("expected 'free n' or 'coker [[...]]'", line, column)

    def parse_complex(self, text: str, line: int = 1, column: int = 1) -> ChainComplex:
        ring = self._require_ring(line)
        body, column = _strip_with_offset(text, column)
        head = _DEGREES.match(body)
        if not head:
            raise LiteralParseError("expected 'deg hi..lo :'", line, column)
        hi, lo = int(head.group(1)), int(head.group(2))
        if hi < lo:
            raise LiteralParseError(f"degree window {hi}..{lo} must run downward", line, column)
        rest, rest_col = body[head.end():], column + head.end()

        over_at = re.search(r"\bover\b", rest)
        mats_text = rest[: over_at.start()] if over_at else rest
        mats = []
        if mats_text.strip():
            for piece, offset in _split_top_level(mats_text, ","):
                piece, col = _strip_with_offset(piece, rest_col + offset)
                mats.append(self.parse_matrix(piece, line, col))
        if len(mats) != hi - lo:
            raise LiteralParseError(
                f"window {hi}..{lo} needs {hi - lo} boundary matrices, got {len(mats)}", line, column
            )

        if over_at:
            terms = []
            start = rest_col + over_at.end()
            for piece, offset in _split_top_level(rest[over_at.end():], "|"):
                terms.append(self.parse_module(piece, line, start + offset))
            if len(terms) != hi - lo + 1:
                raise LiteralParseError(
                    f"window {hi}..{lo} needs {hi - lo + 1} terms after 'over'", line, column
                )
        else:
            terms = self._free_terms(mats, line, column)

        # literal order is top-down, ChainComplex.build runs bottom-up
        try:
            return ChainComplex.build(ring, lo, terms[::-1], mats[::-1])
        except InvariantViolationError as e:
            degree = e.degree if e.degree is not None else hi
            raise LiteralParseError(f"∂∘∂ ≠ 0 at degree {degree}", line, column) from e
        except GorhomError as e:
            raise LiteralParseError(str(e), line, column) from e

    def _free_terms(self, mats: List[ExactMatrix], line: int, column: int) -> List[FPModule]:
        if not mats:
            raise LiteralParseError("a single-degree complex needs 'over <module>'", line, column)
        ranks = [mats[0].cols]
        for upper, lower in zip(mats, mats[1:]):
            if upper.rows != lower.cols:
                raise LiteralParseError(
                    f"boundary shapes {upper.rows}x{upper.cols} and {lower.rows}x{lower.cols} do not compose",
                    line,
                    column,
                )
            ranks.append(upper.rows)
        ranks.append(mats[-1].rows)
        return [FPModule.free(self.ring, r) for r in ranks]

    def parse_amodule(self, text: str, line: int = 1, column: int = 1) -> GradedAModule:
        """A graded A-module is written as its complex Φ(M): pieces plus the x-action."""
        return psi(self.parse_complex(text, line, column))

    def parse_object(self, text: str, line: int = 1, column: int = 1) -> Union[FPModule, ChainComplex]:
        if text.strip().startswith("deg"):
            return self.parse_complex(text, line, column)
        return self.parse_module(text, line, column)

    def parse_document(self, text: str) -> ParsedDocument:
        document = ParsedDocument(ring=self.ring)
        for number, raw in enumerate(text.splitlines(), start=1):
            stripped = raw.split("#", 1)[0].strip()
            if not stripped:
                continue
            column = len(raw) - len(raw.lstrip()) + 1
            keyword = stripped.split(None, 1)[0]
            if keyword == "ring":
                self.ring = self._parse_ring(stripped[len("ring"):], number, column)
                document.ring = self.ring
            elif keyword == "expect":
                document.expectations.append(self._parse_expect(stripped, number))
            else:
                name, value = self._parse_declaration(stripped, number, column)
                if name in document.objects:
                    raise LiteralParseError(f"'{name}' is declared twice", number, column)
                document.objects[name] = value
        self.logger.debug(
            "Parsed %d objects and %d expectations", len(document.objects), len(document.expectations)
        )
        return document

    def _parse_ring(self, text: str, line: int, column: int) -> RingDesc:
        try:
            return RingDesc.parse(text)
        except ValueError as e:
            raise LiteralParseError(str(e), line, column) from e

    def _parse_declaration(self, text: str, line: int, column: int) -> Tuple[str, ParsedObject]:
        match = _DECLARATION.match(text)
        if not match:
            raise LiteralParseError(
                "expected 'ring', 'module', 'complex', 'amodule' or 'expect'", line, column
            )
        kind, name, body = match.groups()
        body_col = column + match.start(3)
        if kind == "module":
            return name, self.parse_module(body, line, body_col)
        if kind == "complex":
            return name, self.parse_complex(body, line, body_col)
        return name, self.parse_amodule(body, line, body_col)

    @staticmethod
    def _parse_expect(text: str, line: int) -> Expectation:
        if "==" not in text:
            raise LiteralParseError("an expect line reads 'expect <command> <args> == <output>'", line, 1)
        call, expected = text[len("expect"):].split("==", 1)
        words = call.split()
        if not words:
            raise LiteralParseError("expect line without a command", line, 1)
        return Expectation(words[0], tuple(words[1:]), expected.strip(), line)


def parse_literal(text: str, ring: RingDesc) -> Union[FPModule, ChainComplex]:
    return LiteralParser(ring).parse_object(text)


def is_name(token: str) -> bool:
    return bool(_NAME.match(token))
