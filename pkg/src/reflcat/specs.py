"""Group-spec grammar.

    spec  := "G(" int "," int "," int ")" | "G" int
           | "Sym(" int ")" | "Cyc(" int ")" | "Dih(" int ")"

``G(m,p,n)`` uses Shephard-Todd notation: m = d*e, p = e.  Whitespace is
ignored everywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import factorial


class SpecParseError(ValueError):
    pass


class UnsupportedGroup(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    """A parsed group description.

    ``kind`` is ``"imprimitive"`` (params m, p, n), ``"exceptional"``
    (params (k,)) or ``"symmetric"`` (params (n,)).  ``alias`` keeps the
    spelling used by Cyc/Dih so output can echo it.
    """

    kind: str
    params: tuple[int, ...]
    alias: str = ""

    @property
    def text(self) -> str:
        if self.alias:
            return self.alias
        if self.kind == "imprimitive":
            m, p, n = self.params
            return f"G({m},{p},{n})"
        if self.kind == "exceptional":
            return f"G{self.params[0]}"
        return f"Sym({self.params[0]})"

    def __str__(self) -> str:
        return self.text

    @property
    def rank(self) -> int | None:
        if self.kind == "imprimitive":
            return self.params[2]
        if self.kind == "symmetric":
            return self.params[0] - 1
        return None

    def estimated_order(self) -> int | None:
        if self.kind == "imprimitive":
            m, p, n = self.params
            return m**n * factorial(n) // p
        if self.kind == "symmetric":
            return factorial(self.params[0])
        return None


def Imprimitive(m: int, p: int, n: int) -> GroupSpec:
    return _check(GroupSpec("imprimitive", (m, p, n)))


def ShephardTodd(k: int) -> GroupSpec:
    if not 4 <= k <= 37:
        raise UnsupportedGroup(f"G{k} is not an exceptional Shephard-Todd group")
    return GroupSpec("exceptional", (k,))


def Sym(n: int) -> GroupSpec:
    return _check(GroupSpec("symmetric", (n,)))


def Cyc(d: int) -> GroupSpec:
    return _check(GroupSpec("imprimitive", (d, 1, 1), alias=f"Cyc({d})"))


def Dih(e: int) -> GroupSpec:
    return _check(GroupSpec("imprimitive", (e, e, 2), alias=f"Dih({e})"))


def _check(spec: GroupSpec) -> GroupSpec:
    if spec.kind == "symmetric":
        (n,) = spec.params
        if n < 2:
            raise UnsupportedGroup(f"Sym({n}) has no reflection representation")
        return spec
    m, p, n = spec.params
    if min(m, p, n) < 1:
        raise UnsupportedGroup(f"{spec.text}: parameters must be positive")
    if m % p:
        raise UnsupportedGroup(f"{spec.text}: p must divide m")
    if m == 1:
        raise UnsupportedGroup(f"{spec.text}: request the symmetric group as Sym({n})")
    if n == 1 and m == p:
        raise UnsupportedGroup(f"{spec.text} is the trivial group")
    if (m, p, n) == (2, 2, 2):
        raise UnsupportedGroup("G(2,2,2) is reducible")
    return spec


_TOKEN = {
    "G3": re.compile(r"G\((\d+),(\d+),(\d+)\)"),
    "G1": re.compile(r"G(\d+)"),
    "Sym": re.compile(r"Sym\((\d+)\)"),
    "Cyc": re.compile(r"Cyc\((\d+)\)"),
    "Dih": re.compile(r"Dih\((\d+)\)"),
}


def parse_spec(text: str) -> GroupSpec:
    """Parse a group spec such as ``G(4,2,2)``, ``G12`` or ``Sym(3)``."""
    s = "".join(text.split())
    if not s:
        raise SpecParseError("empty group spec")
    head = s[0]
    if head == "G":
        if len(s) > 1 and s[1] == "(":
            m = _TOKEN["G3"].fullmatch(s)
            if not m:
                raise SpecParseError(f"cannot parse {text!r}: expected G(m,p,n)")
            return Imprimitive(*(int(x) for x in m.groups()))
        m = _TOKEN["G1"].fullmatch(s)
        if not m:
            raise SpecParseError(f"cannot parse {text!r}: expected G<k>")
        return ShephardTodd(int(m.group(1)))
    for name, ctor in (("Sym", Sym), ("Cyc", Cyc), ("Dih", Dih)):
        if s.startswith(name):
            m = _TOKEN[name].fullmatch(s)
            if not m:
                raise SpecParseError(f"cannot parse {text!r}: expected {name}(n)")
            return ctor(int(m.group(1)))
    raise SpecParseError(f"cannot parse {text!r}: unknown group family")
