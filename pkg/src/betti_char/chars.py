"""
Class functions and decomposition into irreducible characters.

Character tables are input data (rational values only); shipped tables for
S_2, S_3 and S_4 live in the package's data directory.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Mapping, Sequence

from .action import GroupData
from .ring import MalformedInput

ClassFunction = tuple  # of Fractions, one per class in GroupData order


class NonIntegralDecomposition(ValueError):
    pass


class CharacterTableError(MalformedInput):
    pass


def class_function(values: Sequence) -> ClassFunction:
    return tuple(Fraction(v) for v in values)


def inner_product(chi: Sequence, psi: Sequence, G: GroupData) -> Fraction:
    """(1/|G|) sum_k |C_k| chi(g_k) psi(g_k^-1)."""
    n = len(G.classes)
    if len(chi) != n or len(psi) != n:
        raise MalformedInput(f"class functions must have {n} values")
    total = Fraction(0)
    for k, c in enumerate(G.classes):
        total += c.size * Fraction(chi[k]) * Fraction(psi[c.inverse_index])
    return total / G.order


@dataclass(frozen=True)
class Irreducible:
    name: str
    character: ClassFunction

    def dimension(self, identity_index: int) -> int:
        return int(self.character[identity_index])


@dataclass(frozen=True)
class CharacterTable:
    class_names: tuple[str, ...]
    irreducibles: tuple[Irreducible, ...]

    @property
    def names(self) -> list[str]:
        return [chi.name for chi in self.irreducibles]

    def aligned(self, G: GroupData) -> "CharacterTable":
        """Reorder columns to follow the class order of G."""
        if sorted(self.class_names) != sorted(G.names):
            raise CharacterTableError(
                f"character table classes {list(self.class_names)} do not match group classes {G.names}")
        perm = [self.class_names.index(name) for name in G.names]
        irr = tuple(Irreducible(chi.name, tuple(chi.character[p] for p in perm)) for chi in self.irreducibles)
        return CharacterTable(tuple(G.names), irr)

    def validate(self, G: GroupData) -> list[str]:
        problems = []
        if tuple(G.names) != self.class_names:
            problems.append("class order differs from the group data; call aligned() first")
            return problems
        if len(self.irreducibles) != len(G.classes):
            problems.append(f"{len(self.irreducibles)} irreducibles for {len(G.classes)} classes")
        for chi in self.irreducibles:
            d = chi.character[G.identity_index]
            if d.denominator != 1 or d < 1:
                problems.append(f"{chi.name}: dimension {d} is not a positive integer")
        for a, chi in enumerate(self.irreducibles):
            for b, psi in enumerate(self.irreducibles):
                if b < a:
                    continue
                ip = inner_product(chi.character, psi.character, G)
                if ip != (a == b):
                    problems.append(f"<{chi.name}, {psi.name}> = {ip}, expected {int(a == b)}")
        return problems

    def to_dict(self) -> dict:
        return {
            "classes": list(self.class_names),
            "irreducibles": [{"name": chi.name, "values": [str(v) for v in chi.character]}
                             for chi in self.irreducibles],
        }

    @classmethod
    def from_dict(cls, data: Mapping, where: str = "characterTable") -> "CharacterTable":
        if "classes" not in data:
            raise CharacterTableError(f"{where}.classes is missing")
        names = tuple(str(n) for n in data["classes"])
        irr = []
        for k, row in enumerate(data.get("irreducibles", [])):
            here = f"{where}.irreducibles[{k}]"
            if "name" not in row or "values" not in row:
                raise CharacterTableError(f"{here} needs 'name' and 'values'")
            try:
                values = class_function(row["values"])
            except (ValueError, TypeError, ZeroDivisionError):
                raise CharacterTableError(f"{here}: values must be rationals (irrational tables are unsupported)") from None
            if len(values) != len(names):
                raise CharacterTableError(f"{here}: {len(values)} values for {len(names)} classes")
            irr.append(Irreducible(str(row["name"]), values))
        if not irr:
            raise CharacterTableError(f"{where}.irreducibles is empty")
        return cls(names, tuple(irr))


def load_character_table(data, G: GroupData) -> CharacterTable:
    """Parse, align to G's class order and check orthonormality."""
    if isinstance(data, str):
        data = json.loads(data)
    T = CharacterTable.from_dict(data).aligned(G)
    problems = T.validate(G)
    if problems:
        raise CharacterTableError("invalid character table: " + "; ".join(problems))
    return T


def shipped_table(name: str) -> dict:
    """Raw data of a bundled table: "S2", "S3" or "S4"."""
    path = resources.files("betti_char") / "data" / f"chartable_{name}.json"
    return json.loads(path.read_text())


def decompose(beta: Sequence, T: CharacterTable, G: GroupData) -> list[tuple[str, int]]:
    """Multiplicities <beta, chi> of every irreducible, in table order."""
    beta = class_function(beta)
    mults = []
    for chi in T.irreducibles:
        m = inner_product(beta, chi.character, G)
        if m.denominator != 1 or m < 0:
            raise NonIntegralDecomposition(f"multiplicity of {chi.name} is {m}; not a character")
        mults.append((chi.name, int(m)))
    rebuilt = [sum(m * chi.character[k] for (_, m), chi in zip(mults, T.irreducibles))
               for k in range(len(G.classes))]
    if tuple(rebuilt) != beta:
        raise NonIntegralDecomposition("multiplicities do not reconstruct the class function")
    return mults
