"""
Line-oriented text format for block algebras and block operators.

    # comment
    algebra: shapes=[2, 1] weights_prefix=[0.5, 0.25] tail_ratio=0.5
    block 0: 1+0i 0; 0 -1
    block 1: 2.5i
    tail: kind=ScalarFormulaTail formula=k

Rows of a block are separated by ``;`` and entries by whitespace; entries are
complex numbers written ``a+bi``. A file with only the header describes an algebra.
Values are parsed as double precision; decimal round-trips are not bit-exact.
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from mvnlab.blockvn import BlockOperator, FiniteBlockAlgebra, TailKind, TailRule, make_algebra
from mvnlab.exceptions import BadWeights, DimensionMismatch, ParseError
from mvnlab.grammar import Formula, parse_formula
from mvnlab.utils.observability import Observability

logger = Observability.get_logger("opformat")

_HEADER = re.compile(r"^\s*algebra\s*:")
_BLOCK = re.compile(r"^\s*block\s+(?P<index>\d+)\s*:")
_TAIL = re.compile(r"^\s*tail\s*:")
_FIELD = re.compile(r"(?P<key>[A-Za-z_]+)\s*=\s*(?P<value>\[[^\]]*\]|\S+)")

_ALGEBRA_KEYS = {"shapes", "weights_prefix", "tail_ratio", "tail_mass", "tail_dim"}


def _fields(body: str, offset: int, line: int) -> dict[str, tuple[str, int]]:
    found: dict[str, tuple[str, int]] = {}
    pos = 0
    for match in _FIELD.finditer(body):
        gap = body[pos : match.start()]
        if gap.strip():
            raise ParseError(f"unexpected text {gap.strip()!r}", line=line, column=offset + pos + 1)
        found[match.group("key")] = (match.group("value"), offset + match.start("value") + 1)
        pos = match.end()
    if body[pos:].strip():
        raise ParseError(f"unexpected text {body[pos:].strip()!r}", line=line, column=offset + pos + 1)
    return found


def _number_list(value: str, column: int, line: int, kind: type) -> list:
    if not (value.startswith("[") and value.endswith("]")):
        raise ParseError(f"expected a bracketed list, got {value!r}", line=line, column=column)
    items = [item.strip() for item in value[1:-1].split(",") if item.strip()]
    try:
        return [kind(item) for item in items]
    except ValueError as e:
        raise ParseError(f"bad list entry in {value!r}: {e}", line=line, column=column) from e


def _scalar(value: str, column: int, line: int, kind: type):
    try:
        return kind(value)
    except ValueError as e:
        raise ParseError(f"bad value {value!r}", line=line, column=column) from e


def _parse_header(text: str, line: int) -> FiniteBlockAlgebra:
    offset = text.index(":") + 1
    fields = _fields(text[offset:], offset, line)
    unknown = set(fields) - _ALGEBRA_KEYS
    if unknown:
        key = sorted(unknown)[0]
        raise ParseError(f"unknown algebra field {key!r}", line=line, column=fields[key][1])
    if "shapes" not in fields or "weights_prefix" not in fields:
        raise ParseError("algebra header needs shapes=[...] and weights_prefix=[...]", line=line, column=1)
    shapes = _number_list(*fields["shapes"], line, int)
    weights = _number_list(*fields["weights_prefix"], line, float)
    tail_ratio = _scalar(*fields["tail_ratio"], line, float) if "tail_ratio" in fields else None
    tail_mass = _scalar(*fields["tail_mass"], line, float) if "tail_mass" in fields else None
    tail_dim = _scalar(*fields["tail_dim"], line, int) if "tail_dim" in fields else 1
    try:
        return make_algebra(shapes, weights, tail_ratio=tail_ratio, tail_mass=tail_mass, tail_dim=tail_dim)
    except (BadWeights, DimensionMismatch) as e:
        raise type(e)(f"line {line}: {e}") from e


def parse_complex(token: str) -> complex:
    """Parse ``a+bi``, ``bi``, ``a`` or a parenthesized form of these."""
    return complex(token.replace("i", "j"))


def _parse_block(text: str, line: int) -> tuple[int, np.ndarray]:
    match = _BLOCK.match(text)
    assert match is not None
    index = int(match.group("index"))
    body = text[match.end() :]
    rows: list[list[complex]] = []
    column = match.end()
    for row_text in body.split(";"):
        row: list[complex] = []
        for entry in re.finditer(r"\S+", row_text):
            try:
                row.append(parse_complex(entry.group()))
            except ValueError as e:
                raise ParseError(
                    f"bad matrix entry {entry.group()!r}", line=line, column=column + entry.start() + 1
                ) from e
        rows.append(row)
        column += len(row_text) + 1
    if not rows or any(len(r) != len(rows) for r in rows):
        raise DimensionMismatch(f"line {line}: block {index} is not square ({[len(r) for r in rows]} entries per row)")
    return index, np.array(rows, dtype=np.complex128)


def _parse_tail(text: str, line: int) -> TailRule:
    offset = text.index(":") + 1
    body = text[offset:]
    formula_at = body.find("formula=")
    head, formula_text = (body, None) if formula_at < 0 else (body[:formula_at], body[formula_at + len("formula=") :])
    fields = _fields(head, offset, line)
    kind_text, kind_column = fields.get("kind", (None, offset + 1))
    formula = Formula()
    if formula_text is not None:
        formula = parse_formula(formula_text.strip(), line=line, column=offset + formula_at + len("formula="))
    if kind_text is not None:
        try:
            kind = TailKind(kind_text)
        except ValueError as e:
            raise ParseError(f"unknown tail kind {kind_text!r}", line=line, column=kind_column) from e
        if kind is TailKind.ZERO and not formula.is_zero:
            raise ParseError("ZeroTail cannot carry a nonzero formula", line=line, column=kind_column)
    return TailRule(formula)


def parse_operator_text(text: str) -> BlockOperator | FiniteBlockAlgebra:
    """
    Parse the text format.

    Returns:
        The algebra for header-only input, otherwise the operator

    Raises:
        ParseError: Malformed lines, with line and column
        DimensionMismatch: Blocks that disagree with the algebra shape
        BadWeights: Invalid weights in the header
    """
    algebra: FiniteBlockAlgebra | None = None
    blocks: list[np.ndarray] = []
    tail: TailRule | None = None
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].rstrip()
        if not content.strip():
            continue
        if _HEADER.match(content):
            if algebra is not None:
                raise ParseError("duplicate algebra header", line=number, column=1)
            algebra = _parse_header(content, number)
        elif algebra is None:
            raise ParseError("the algebra header must come first", line=number, column=1)
        elif _BLOCK.match(content):
            if tail is not None:
                raise ParseError("block lines must precede the tail line", line=number, column=1)
            index, matrix = _parse_block(content, number)
            if index != len(blocks):
                raise ParseError(f"expected block {len(blocks)}, got block {index}", line=number, column=1)
            blocks.append(matrix)
        elif _TAIL.match(content):
            if tail is not None:
                raise ParseError("duplicate tail line", line=number, column=1)
            tail = _parse_tail(content, number)
        else:
            raise ParseError(f"unrecognized line {content.strip()!r}", line=number, column=1)

    if algebra is None:
        raise ParseError("missing algebra header", line=1, column=1)
    if not blocks and tail is None:
        return algebra
    operator = BlockOperator(algebra=algebra, prefix=tuple(blocks), tail=tail or TailRule.zero())
    logger.debug("Parsed operator", extra={"blocks": len(blocks), "tail": operator.tail.kind.value})
    return operator


def read_operator_file(path: str | Path) -> BlockOperator | FiniteBlockAlgebra:
    return parse_operator_text(Path(path).read_text(encoding="utf-8"))


def _complex_text(z: complex) -> str:
    sign = "-" if z.imag < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def format_algebra(algebra: FiniteBlockAlgebra) -> str:
    header = f"algebra: shapes={list(algebra.shape)} weights_prefix={[float(w) for w in algebra.weights]}"
    if algebra.tail_ratio is not None:
        header += f" tail_ratio={algebra.tail_ratio!r}"
        if algebra.tail_dim != 1:
            header += f" tail_dim={algebra.tail_dim}"
    return header + "\n"


def format_operator(operator: BlockOperator) -> str:
    lines = [format_algebra(operator.algebra).rstrip("\n")]
    for k, block in enumerate(operator.prefix):
        rows = "; ".join(" ".join(_complex_text(complex(z)) for z in row) for row in block)
        lines.append(f"block {k}: {rows}")
    lines.append(f"tail: {operator.tail.to_text()}")
    return "\n".join(lines) + "\n"


def write_operator_file(path: str | Path, item: BlockOperator | FiniteBlockAlgebra) -> None:
    text = format_algebra(item) if isinstance(item, FiniteBlockAlgebra) else format_operator(item)
    Path(path).write_text(text, encoding="utf-8")


__all__ = [
    "parse_complex",
    "parse_operator_text",
    "read_operator_file",
    "format_algebra",
    "format_operator",
    "write_operator_file",
]
