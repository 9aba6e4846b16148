"""Cochain value tables shared by the chain and cocycle modules."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable


def is_degenerate(gen: tuple) -> bool:
    """A generator ``(x, a_1, ..., a_n)`` is degenerate if two consecutive ``a_i`` agree."""
    return any(gen[i] == gen[i + 1] for i in range(1, len(gen) - 1))


@dataclass
class CochainTable:
    """A cochain with values in Z_m on flat generator tuples.

    ``theory`` is ``"SB"``, ``"LB"`` or ``"N"``.  For SB/LB tables the tuple is
    ``(x, a_1, ..., a_n)`` and degenerate tuples evaluate to 0.  N tables are
    indexed by plain ``(x_0, ..., x_{n+1})`` tuples with no quotient rule.
    """

    theory: str
    degree: int
    modulus: int
    values: dict[tuple, int] = field(default_factory=dict)
    name: str = ""

    def __call__(self, gen) -> int:
        gen = tuple(int(g) for g in gen)
        if self.theory != "N" and is_degenerate(gen):
            return 0
        return self.values.get(gen, 0)

    def items(self):
        return sorted(self.values.items())

    def scaled(self, c: int) -> "CochainTable":
        m = self.modulus
        return CochainTable(
            self.theory, self.degree, m, {g: (c * v) % m for g, v in self.values.items() if (c * v) % m},
            f"{c}*{self.name}" if self.name else "",
        )

    def nonzero(self) -> bool:
        return any(v % self.modulus for v in self.values.values())

    @classmethod
    def from_function(
        cls, theory: str, degree: int, modulus: int, gens: Iterable[tuple], fn: Callable[..., int], name: str = ""
    ) -> "CochainTable":
        values = {}
        for g in gens:
            v = int(fn(*g)) % modulus
            if v:
                values[tuple(int(a) for a in g)] = v
        return cls(theory, degree, modulus, values, name)

    def to_json(self) -> dict:
        return {
            "kind": "cochain",
            "theory": self.theory,
            "mod": self.modulus,
            "degree": self.degree,
            "values": [[list(g), v] for g, v in self.items()],
        }
