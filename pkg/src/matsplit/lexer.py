"""Tokenizer shared by the expression parser and the problem-file parser."""

from fractions import Fraction

from .errors import ParseError

# Single-character tokens; the kind equals the character itself.
_PUNCT = "+-*^()[],;="

# '/' is only a token of its own between parenthesized groups (local-ring
# fractions); inside a number it is consumed as part of a rational literal.


class Token:
    __slots__ = ("kind", "value", "position", "line", "column")

    def __init__(self, kind, value, position, line, column):
        self.kind = kind  # "number" | "name" | one of _PUNCT | "/" | "end"
        self.value = value
        self.position = position
        self.line = line
        self.column = column

    def __repr__(self):
        return f"Token({self.kind!r}, {self.value!r})"


def tokenize(text):
    """Return the list of tokens in *text*, ending with an 'end' token.

    Raises ParseError on any character outside the grammar. Comments run
    from '#' to end of line.
    """
    tokens = []
    i = 0
    line = 1
    col = 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start, start_line, start_col = i, line, col
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            num = int(text[i:j])
            # rational literal a/b: only when '/' is directly followed by digits
            if j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                k = j + 1
                while k < n and text[k].isdigit():
                    k += 1
                den = int(text[j + 1 : k])
                if den == 0:
                    raise ParseError("zero denominator in rational literal",
                                     start, start_line, start_col)
                tokens.append(Token("number", Fraction(num, den),
                                    start, start_line, start_col))
                col += k - i
                i = k
            else:
                tokens.append(Token("number", Fraction(num),
                                    start, start_line, start_col))
                col += j - i
                i = j
            continue
        if c.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("name", text[i:j], start, start_line, start_col))
            col += j - i
            i = j
            continue
        if c in _PUNCT or c == "/":
            tokens.append(Token(c, c, start, start_line, start_col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {c!r}", i, line, col)
    tokens.append(Token("end", None, n, line, col))
    return tokens


class TokenStream:
    """Cursor over a token list with one-token lookahead."""

    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    @property
    def current(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        if tok.kind != "end":
            self.pos += 1
        return tok

    def expect(self, kind, what=None):
        tok = self.current
        if tok.kind != kind:
            expected = what or f"'{kind}'"
            raise ParseError(
                f"expected {expected}, found {_describe(tok)}",
                tok.position, tok.line, tok.column)
        return self.advance()

    def at(self, *kinds):
        return self.current.kind in kinds


def _describe(tok):
    if tok.kind == "end":
        return "end of input"
    if tok.kind in ("name", "number"):
        return f"{tok.kind} '{tok.value}'"
    return f"'{tok.kind}'"
