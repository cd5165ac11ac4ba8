"""A small S-expression reader for SMT-LIB text.

Atoms come back as :class:`Sym` (a ``str`` subclass) and lists as
:class:`SList`; both remember the line and column where they started.
"""

from __future__ import annotations


class SexprError(Exception):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {message}" if line else message)
        self.line = line
        self.col = col


class Sym(str):
    line = 0
    col = 0

    def __new__(cls, text, line=0, col=0):
        s = super().__new__(cls, text)
        s.line = line
        s.col = col
        return s


class SList(list):
    line = 0
    col = 0


def parse_sexprs(text: str) -> list:
    """Read every top-level S-expression in ``text``."""
    stack: list[SList] = []
    out: list = []
    i, n = 0, len(text)
    line, col = 1, 1

    def advance(k):
        nonlocal i, line, col
        for ch in text[i:i + k]:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1
        i += k

    def emit(item):
        (stack[-1] if stack else out).append(item)

    while i < n:
        ch = text[i]
        if ch.isspace():
            advance(1)
        elif ch == ";":
            j = text.find("\n", i)
            advance((n if j < 0 else j) - i)
        elif ch == "(":
            lst = SList()
            lst.line, lst.col = line, col
            stack.append(lst)
            advance(1)
        elif ch == ")":
            if not stack:
                raise SexprError("unbalanced ')'", line, col)
            lst = stack.pop()
            advance(1)
            emit(lst)
        elif ch == '"':
            j = i + 1
            while True:
                j = text.find('"', j)
                if j < 0:
                    raise SexprError("unterminated string literal", line, col)
                if j + 1 < n and text[j + 1] == '"':
                    j += 2
                    continue
                break
            tok = Sym(text[i:j + 1], line, col)
            advance(j + 1 - i)
            emit(tok)
        elif ch == "|":
            j = text.find("|", i + 1)
            if j < 0:
                raise SexprError("unterminated quoted symbol", line, col)
            tok = Sym(text[i + 1:j], line, col)
            advance(j + 1 - i)
            emit(tok)
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in '();"|':
                j += 1
            tok = Sym(text[i:j], line, col)
            advance(j - i)
            emit(tok)
    if stack:
        raise SexprError("unbalanced '('", stack[-1].line, stack[-1].col)
    return out


def to_text(x) -> str:
    if isinstance(x, list):
        return "(" + " ".join(to_text(c) for c in x) + ")"
    return str(x)
