"""Text form of polynomials and rational functions.

The printed form is ``num`` or ``num/den`` (parenthesised where needed) with
terms in descending graded-lex order, e.g. ``(t^2*z - w)/(z - w)``.  ``parse`` accepts that form
and general expressions built from integers, variables, ``+ - * / ^`` and
parentheses, so ``parse(format_rational(r)) == r``.
"""

import re

from . import poly as P

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    pass


def format_poly(p):
    if not p:
        return "0"
    parts = []
    for k in P.sort_keys(p):
        c = p[k]
        mono = []
        for i, e in enumerate(P.unpack(k)):
            if e == 1:
                mono.append(P.VARS[i])
            elif e:
                mono.append("%s^%d" % (P.VARS[i], e))
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = "*".join(mono)
        else:
            body = "%d*%s" % (a, "*".join(mono))
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += " %s %s" % (sign, body)
    return out


def format_rational(r):
    n = format_poly(r.num)
    if r.den == P.ONE:
        return n
    d = format_poly(r.den)
    if len(r.num) > 1:
        n = "(%s)" % n
    if " " in d or "*" in d:
        d = "(%s)" % d
    return "%s/%s" % (n, d)


def _tokens(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character at %d in %r" % (pos, text))
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("var", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if op is not None and tok != ("op", op):
            raise ParseError("expected %r, found %r" % (op, tok[1]))
        self.i += 1
        return tok

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            val = val * rhs if op == "*" else val / rhs
        return val

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            kind, val = self.take()
            if kind == "op" and val == "(":
                e = self.expr()
                self.take(")")
                if not e.is_constant() or e.constant_value().denominator != 1:
                    raise ParseError("exponent must be an integer")
                n = int(e.constant_value())
            elif kind == "num":
                n = val
            else:
                raise ParseError("bad exponent %r" % (val,))
            base = base ** (-n if neg else n)
        return base

    def atom(self):
        from .rational import RationalFunction
        kind, val = self.take()
        if kind == "num":
            return RationalFunction.from_int(val)
        if kind == "var":
            if val not in P.VAR_INDEX:
                raise ParseError("unknown variable %r" % val)
            return RationalFunction.var(val)
        if (kind, val) == ("op", "("):
            v = self.expr()
            self.take(")")
            return v
        raise ParseError("unexpected token %r" % (val,))


def parse(text):
    """Parse a rational expression in the variables of ``VARS``."""
    toks = _tokens(text)
    if not toks:
        raise ParseError("empty expression")
    p = _Parser(toks)
    val = p.expr()
    if p.i != len(toks):
        raise ParseError("trailing input at token %d in %r" % (p.i, text))
    return val
