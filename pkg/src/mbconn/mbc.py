"""Reader and writer for MBC, the line-oriented grid/connectivity format.

    MBC 1
    blocks <n>
    block <id> <ni> <nj> <nk>
    interfaces <m>
    interface <A> <ilo> <ihi> <jlo> <jhi> <klo> <khi>  <B> <ilo> ... <khi>  <t1> <t2> <t3>

``#`` starts a comment; blank lines are ignored. The writer emits one
canonical layout, so ``write_mbc(*parse_mbc(text))`` is a fixed point.
"""

from __future__ import annotations

import re
from typing import Iterator, Sequence, Union

from .errors import MalformedSyntax, MBCError, UnknownBlockId
from .grid import BlockDims, Grid, IndexRange, InterfacePatch, validate_patch

_INT = re.compile(r"[+-]?[0-9]+\Z")

_INTERFACE_FIELDS = 17


class _Token(str):
    column: int


def _lines(text: str) -> Iterator[tuple[int, list[_Token]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = []
        for m in re.finditer(r"\S+", body):
            tok = _Token(m.group())
            tok.column = m.start() + 1
            tokens.append(tok)
        if tokens:
            yield lineno, tokens


def _int(tok: _Token, lineno: int) -> int:
    if not _INT.match(tok):
        raise MalformedSyntax(f"expected an integer, got {tok!r}", lineno, tok.column)
    return int(tok)


def _expect(tokens: list[_Token], keyword: str, nargs: int, lineno: int) -> list[int]:
    if tokens[0] != keyword:
        raise MalformedSyntax(f"expected '{keyword}', got {tokens[0]!r}", lineno, tokens[0].column)
    if len(tokens) != nargs + 1:
        col = tokens[min(len(tokens), nargs + 1) - 1].column
        raise MalformedSyntax(f"'{keyword}' takes {nargs} fields, got {len(tokens) - 1}", lineno, col)
    return [_int(t, lineno) for t in tokens[1:]]


def parse_mbc(text: Union[str, bytes]) -> tuple[Grid, list[InterfacePatch]]:
    """Parse an MBC document, rejecting anything that is not exactly valid."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedSyntax(f"not UTF-8: {exc.reason}", 1) from exc

    lines = _lines(text)

    def next_line(what: str) -> tuple[int, list[_Token]]:
        try:
            return next(lines)
        except StopIteration:
            raise MalformedSyntax(f"unexpected end of file, expected {what}", text.count("\n") + 1) from None

    lineno, tokens = next_line("'MBC 1' header")
    (version,) = _expect(tokens, "MBC", 1, lineno)
    if version != 1:
        raise MalformedSyntax(f"unsupported MBC version {version}", lineno, tokens[1].column)

    lineno, tokens = next_line("'blocks <n>'")
    (n,) = _expect(tokens, "blocks", 1, lineno)
    if n < 1:
        raise MalformedSyntax("a grid needs at least one block", lineno, tokens[1].column)

    blocks = []
    for expected_id in range(1, n + 1):
        lineno, tokens = next_line(f"block {expected_id}")
        bid, ni, nj, nk = _expect(tokens, "block", 4, lineno)
        if bid != expected_id:
            raise UnknownBlockId(f"line {lineno}: expected block id {expected_id}, got {bid}")
        for tok, v in zip(tokens[2:], (ni, nj, nk)):
            if v < 2:
                raise MalformedSyntax(f"block dimension {v} < 2", lineno, tok.column)
        blocks.append(BlockDims(bid, ni, nj, nk))
    grid = Grid(tuple(blocks))

    lineno, tokens = next_line("'interfaces <m>'")
    (m,) = _expect(tokens, "interfaces", 1, lineno)
    if m < 0:
        raise MalformedSyntax("negative interface count", lineno, tokens[1].column)

    patches = []
    for _ in range(m):
        lineno, tokens = next_line("an interface record")
        f = _expect(tokens, "interface", _INTERFACE_FIELDS, lineno)
        for bid in (f[0], f[7]):
            if not 1 <= bid <= n:
                raise UnknownBlockId(f"line {lineno}: interface refers to unknown block {bid}")
        patch = InterfacePatch(
            f[0], IndexRange.from_bounds(*f[1:7]), f[7], IndexRange.from_bounds(*f[8:14]), tuple(f[14:17])
        )
        try:
            validate_patch(grid, patch)
        except MBCError as exc:
            # keep the error class, add the location
            raise type(exc)(f"line {lineno}: {exc}") from None
        patches.append(patch)

    extra = next(lines, None)
    if extra is not None:
        lineno, tokens = extra
        raise MalformedSyntax(f"trailing content {tokens[0]!r}", lineno, tokens[0].column)
    return grid, patches


def write_mbc(grid: Grid, patches: Sequence[InterfacePatch]) -> str:
    out = ["MBC 1", f"blocks {grid.n_blocks}"]
    out += [f"block {b.id} {b.ni} {b.nj} {b.nk}" for b in grid.blocks]
    out.append(f"interfaces {len(patches)}")
    for p in patches:
        fields = [p.block_a, *p.range_a.bounds(), p.block_b, *p.range_b.bounds(), *p.transform]
        out.append("interface " + " ".join(str(x) for x in fields))
    return "\n".join(out) + "\n"
