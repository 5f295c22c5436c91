"""Group descriptors: the catalog of real semisimple groups we know root data for."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "GroupDescriptor",
    "UnsupportedDescriptor",
    "parse_group",
    "SPLIT_TYPES",
]

# Cartan types accepted for split groups, with the rank constraint for each.
SPLIT_TYPES = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E6": lambda n: n == 6,
    "E7": lambda n: n == 7,
    "E8": lambda n: n == 8,
    "F4": lambda n: n == 4,
    "G2": lambda n: n == 2,
}


class UnsupportedDescriptor(ValueError):
    """Raised for group parameters outside the supported catalog."""


@dataclass(frozen=True)
class GroupDescriptor:
    """A real group family plus its integer parameter.

    family is one of "SLnR", "SLnC", "Sp2nR", "SOn1", "SUn1", "Spn1",
    "split".  For matrix families ``param`` is the n of the family name
    (e.g. SLnR(3) = SL(3,R), Sp2nR(2) = Sp(4,R), SOn1(4) = SO(4,1)).
    For "split", ``cartan_type`` names the type and ``param`` its rank.
    """

    family: str
    param: int
    cartan_type: str = ""

    def __post_init__(self):
        fam = self.family
        n = self.param
        if fam in ("SLnR", "SLnC", "SOn1", "SUn1", "Spn1", "Sp2nR"):
            if n < 2:
                raise UnsupportedDescriptor(f"{fam} needs parameter >= 2, got {n}")
        elif fam == "split":
            check = SPLIT_TYPES.get(self.cartan_type)
            if check is None:
                raise UnsupportedDescriptor(f"unknown Cartan type {self.cartan_type!r}")
            if not check(n):
                raise UnsupportedDescriptor(
                    f"rank {n} out of range for split type {self.cartan_type}"
                )
        else:
            raise UnsupportedDescriptor(f"unknown family {fam!r}")

    @property
    def rank(self) -> int:
        if self.family in ("SLnR", "SLnC"):
            return self.param - 1
        if self.family == "Sp2nR":
            return self.param
        if self.family in ("SOn1", "SUn1", "Spn1"):
            return 1
        return self.param

    def __str__(self) -> str:
        n = self.param
        return {
            "SLnR": f"SL({n},R)",
            "SLnC": f"SL({n},C)",
            "Sp2nR": f"Sp({2 * n},R)",
            "SOn1": f"SO({n},1)",
            "SUn1": f"SU({n},1)",
            "Spn1": f"Sp({n},1)",
            "split": f"split:{self.cartan_type}{'' if len(self.cartan_type) > 1 else n}",
        }[self.family]


def parse_group(text: str) -> GroupDescriptor:
    """Parse strings like "SL(3,R)", "Sp(4,R)", "SO(4,1)", "SU(2,1)",
    "Sp(2,1)", "split:E8", "split:A3"."""
    s = text.strip().replace(" ", "")
    if s.lower().startswith("split:"):
        tag = s[6:].upper()
        if tag in ("E6", "E7", "E8", "F4", "G2"):
            return GroupDescriptor("split", int(tag[1]), tag)
        if len(tag) >= 2 and tag[0] in "ABCD":
            try:
                rank = int(tag[1:])
            except ValueError:
                raise UnsupportedDescriptor(f"cannot parse split type in {text!r}")
            return GroupDescriptor("split", rank, tag[0])
        raise UnsupportedDescriptor(f"cannot parse split type in {text!r}")

    import re

    m = re.fullmatch(r"(SL|SU|SO|Sp)\((\d+),([RC1])\)", s, flags=re.IGNORECASE)
    if not m:
        raise UnsupportedDescriptor(f"cannot parse group string {text!r}")
    head, num, tail = m.group(1).upper(), int(m.group(2)), m.group(3).upper()
    if head == "SL" and tail == "R":
        return GroupDescriptor("SLnR", num)
    if head == "SL" and tail == "C":
        return GroupDescriptor("SLnC", num)
    if head == "SP" and tail == "R":
        if num % 2 != 0:
            raise UnsupportedDescriptor(f"Sp({num},R): even size required")
        return GroupDescriptor("Sp2nR", num // 2)
    if head == "SO" and tail == "1":
        return GroupDescriptor("SOn1", num)
    if head == "SU" and tail == "1":
        return GroupDescriptor("SUn1", num)
    if head == "SP" and tail == "1":
        return GroupDescriptor("Spn1", num)
    raise UnsupportedDescriptor(f"cannot parse group string {text!r}")
