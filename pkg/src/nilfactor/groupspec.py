"""
Parser for the group-spec mini-language used on the command line.

Grammar (whitespace between tokens is ignored)::

    spec := atom | spec "x" atom
    atom := "cyclic:" INT | "abelian:" INT ("," INT)* | "dihedral:" INT
          | "quaternion" | "heisenberg:" INT | "elem-abelian:" INT "^" INT
          | "table:" PATH | "perm:" PATH | "(" spec ")"

``x`` builds direct products left-associatively.  A PATH runs up to the
next whitespace or unmatched ``)``.  ``table:`` files hold the Cayley-table
JSON (``{"order": n, "table": [[...]], "labels": [...]}``); ``perm:`` files
hold ``{"degree": d, "generators": [...]}`` with each generator an image list
or a cycle string such as ``"(0 1 2)(3 4)"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ParseError
from .group import (
    GroupTable,
    group_from_json,
    make_abelian,
    make_cyclic,
    make_dihedral,
    make_direct_product,
    make_from_permutations,
    make_heisenberg,
    make_quaternion,
)

_KEYWORDS = ("elem-abelian", "abelian", "cyclic", "dihedral", "heisenberg", "quaternion", "table", "perm")


@dataclass(frozen=True)
class SpecNode:
    kind: str
    args: tuple = ()
    children: tuple["SpecNode", ...] = ()

    def __str__(self):
        return format_spec(self)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ParseError(msg, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def path(self) -> str:
        self.skip()
        start = self.pos
        depth = 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch.isspace():
                break
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0:
                    break
                depth -= 1
            self.pos += 1
        if start == self.pos:
            self.error("expected a file path")
        return self.text[start:self.pos]

    def spec(self) -> SpecNode:
        node = self.atom()
        while self.peek() == "x":
            self.pos += 1
            node = SpecNode("product", children=(node, self.atom()))
        return node

    def atom(self) -> SpecNode:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            node = self.spec()
            self.expect(")")
            return node
        for kw in _KEYWORDS:
            if self.text.startswith(kw, self.pos):
                self.pos += len(kw)
                break
        else:
            self.error("expected a group constructor")
        if kw == "quaternion":
            return SpecNode("quaternion")
        self.expect(":")
        if kw in ("cyclic", "dihedral", "heisenberg"):
            return SpecNode(kw, (self.integer(),))
        if kw == "abelian":
            factors = [self.integer()]
            while self.peek() == ",":
                self.pos += 1
                factors.append(self.integer())
            return SpecNode(kw, tuple(factors))
        if kw == "elem-abelian":
            p = self.integer()
            self.expect("^")
            return SpecNode(kw, (p, self.integer()))
        return SpecNode(kw, (self.path(),))


def parse_spec(text: str) -> SpecNode:
    p = _Parser(text)
    node = p.spec()
    p.skip()
    if p.pos != len(text):
        p.error("unexpected trailing input")
    return node


def format_spec(node: SpecNode) -> str:
    """Canonical text for a parsed spec."""
    if node.kind == "product":
        left, right = node.children
        rhs = format_spec(right)
        if right.kind == "product":
            rhs = f"({rhs})"
        return f"{format_spec(left)} x {rhs}"
    if node.kind == "quaternion":
        return "quaternion"
    if node.kind == "elem-abelian":
        return f"elem-abelian:{node.args[0]}^{node.args[1]}"
    return f"{node.kind}:" + ",".join(str(a) for a in node.args)


def build_group(node: SpecNode) -> GroupTable:
    kind, args = node.kind, node.args
    if kind == "product":
        return make_direct_product(build_group(node.children[0]), build_group(node.children[1]))
    if kind == "cyclic":
        return make_cyclic(args[0])
    if kind == "abelian":
        return make_abelian(args)
    if kind == "elem-abelian":
        return make_abelian([args[0]] * args[1])
    if kind == "dihedral":
        return make_dihedral(args[0])
    if kind == "quaternion":
        return make_quaternion()
    if kind == "heisenberg":
        return make_heisenberg(args[0])
    with open(args[0]) as fh:
        obj = json.load(fh)
    if kind == "table":
        return group_from_json(obj)
    return make_from_permutations(int(obj["degree"]), obj["generators"])


def parse_group_spec(text: str) -> GroupTable:
    """Parse a group spec and build its Cayley table."""
    return build_group(parse_spec(text))
