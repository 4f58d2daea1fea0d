"""
Finite groups acting linearly on the variables of a graded ring.

A representative acts by x_v -> sum_u A[u][v] x_u (columns are images), so
the permutation sigma given as images [sigma(1), ..., sigma(n)] has a 1 in
row sigma(v), column v.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .freemod import GradedFreeModule, GradedMatrix, ShapeError, identity, validate_graded
from .ring import GradedRing, MalformedInput, Monomial, Polynomial, linear_substitute
from .solve import determinant, inverse


class InstabilityError(ValueError):
    """The group element does not permute the given generators (up to scalars)."""


class UnsupportedAction(ValueError):
    pass


@dataclass(frozen=True)
class GroupElementAction:
    matrix: tuple[tuple[Fraction, ...], ...]
    permutation: tuple[int, ...] = None

    def __post_init__(self):
        A = tuple(tuple(Fraction(a) for a in row) for row in self.matrix)
        n = len(A)
        if n == 0 or any(len(row) != n for row in A):
            raise MalformedInput("action matrix must be square and nonempty")
        object.__setattr__(self, "matrix", A)
        if self.permutation is not None:
            object.__setattr__(self, "permutation", tuple(self.permutation))

    @classmethod
    def from_permutation(cls, images: Sequence[int]) -> "GroupElementAction":
        images = tuple(int(i) for i in images)
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise MalformedInput(f"{list(images)} is not a permutation of 1..{n}")
        A = [[0] * n for _ in range(n)]
        for v, s in enumerate(images):
            A[s - 1][v] = 1
        return cls(A, images)

    @classmethod
    def identity(cls, n: int) -> "GroupElementAction":
        return cls.from_permutation(range(1, n + 1))

    @property
    def size(self) -> int:
        return len(self.matrix)

    def is_identity(self) -> bool:
        n = self.size
        return all(self.matrix[u][v] == (u == v) for u in range(n) for v in range(n))

    def is_monomial(self) -> bool:
        return self.variable_images() is not None

    def variable_images(self):
        """[(u, c)] with x_v -> c x_u for a monomial action, else None."""
        out = []
        n = self.size
        for v in range(n):
            nz = [(u, self.matrix[u][v]) for u in range(n) if self.matrix[u][v]]
            if len(nz) != 1:
                return None
            out.append(nz[0])
        return out

    def determinant(self) -> Fraction:
        return determinant(self.matrix)

    def inverse(self) -> "GroupElementAction":
        return inverse_action(self)

    def apply(self, f: Polynomial) -> Polynomial:
        return linear_substitute(f, self)

    def apply_monomial(self, m: Monomial):
        """(c, m') with g·x^m = c·x^m'; only for monomial actions."""
        images = self.variable_images()
        if images is None:
            raise UnsupportedAction("action is not monomial")
        new = [0] * self.size
        c = Fraction(1)
        for v, e in enumerate(m):
            if e:
                u, a = images[v]
                new[u] += e
                c *= a ** e
        return c, tuple(new)

    def to_dict(self) -> dict:
        if self.permutation is not None:
            return {"permutation": list(self.permutation)}
        return {"matrix": [[str(a) for a in row] for row in self.matrix]}

    @classmethod
    def from_dict(cls, data: Mapping, where: str = "representative") -> "GroupElementAction":
        if "permutation" in data:
            return cls.from_permutation(data["permutation"])
        if "matrix" in data:
            return cls([[Fraction(a) for a in row] for row in data["matrix"]])
        raise MalformedInput(f"{where}: need 'permutation' or 'matrix'")


def inverse_action(g: GroupElementAction) -> GroupElementAction:
    if g.permutation is not None:
        n = len(g.permutation)
        inv = [0] * n
        for v, s in enumerate(g.permutation):
            inv[s - 1] = v + 1
        return GroupElementAction.from_permutation(inv)
    return GroupElementAction(inverse(g.matrix))


@dataclass(frozen=True)
class ConjugacyClass:
    name: str
    representative: GroupElementAction
    size: int
    inverse_index: int


@dataclass(frozen=True)
class GroupData:
    order: int
    classes: tuple[ConjugacyClass, ...]
    identity_index: int
    _by_name: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        object.__setattr__(self, "_by_name", {c.name: i for i, c in enumerate(self.classes)})

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.classes]

    @property
    def sizes(self) -> list[int]:
        return [c.size for c in self.classes]

    def __len__(self):
        return len(self.classes)

    def index(self, name: str) -> int:
        try:
            return self._by_name[name]
        except KeyError:
            raise MalformedInput(f"unknown conjugacy class {name!r}") from None

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "classes": [
                {"name": c.name, **c.representative.to_dict(), "size": c.size,
                 "inverse": self.classes[c.inverse_index].name}
                for c in self.classes
            ],
            "identity": self.classes[self.identity_index].name,
        }

    @classmethod
    def from_dict(cls, data: Mapping, where: str = "group") -> "GroupData":
        for key in ("order", "classes", "identity"):
            if key not in data:
                raise MalformedInput(f"{where}.{key} is missing")
        raw = data["classes"]
        names = []
        for k, c in enumerate(raw):
            if "name" not in c:
                raise MalformedInput(f"{where}.classes[{k}].name is missing")
            names.append(str(c["name"]))
        if len(set(names)) != len(names):
            raise MalformedInput(f"{where}.classes: duplicate class names")
        index = {n: i for i, n in enumerate(names)}
        classes = []
        for k, c in enumerate(raw):
            here = f"{where}.classes[{k}]"
            if "size" not in c:
                raise MalformedInput(f"{here}.size is missing")
            inv = c.get("inverse", names[k])
            if inv not in index:
                raise MalformedInput(f"{here}.inverse: unknown class {inv!r}")
            rep = GroupElementAction.from_dict(c, here)
            classes.append(ConjugacyClass(names[k], rep, int(c["size"]), index[inv]))
        ident = data["identity"]
        if ident not in index:
            raise MalformedInput(f"{where}.identity: unknown class {ident!r}")
        return cls(int(data["order"]), classes, index[ident])


def validate_group_data(G: GroupData, R: GradedRing) -> list[str]:
    """Arithmetic sanity of the class data; an empty list means ok.

    Classhood itself is not checked (that would need the whole group).
    """
    problems = []
    if G.order < 1:
        problems.append(f"group order {G.order} is not positive")
    if sum(G.sizes) != G.order:
        problems.append(f"class sizes sum to {sum(G.sizes)}, not the group order {G.order}")
    n = len(G.classes)
    if not 0 <= G.identity_index < n:
        problems.append("identity class index out of range")
    else:
        ident = G.classes[G.identity_index]
        if not ident.representative.is_identity():
            problems.append(f"identity class {ident.name!r} has a non-identity representative")
        if ident.size != 1:
            problems.append(f"identity class {ident.name!r} has size {ident.size}")
    for k, c in enumerate(G.classes):
        if c.size < 1:
            problems.append(f"class {c.name!r} has non-positive size {c.size}")
        if G.order and G.order % max(c.size, 1):
            problems.append(f"class {c.name!r}: size {c.size} does not divide {G.order}")
        if not 0 <= c.inverse_index < n:
            problems.append(f"class {c.name!r}: inverse index out of range")
        elif G.classes[c.inverse_index].inverse_index != k:
            problems.append(f"class {c.name!r}: inverse-class map is not an involution")
        A = c.representative.matrix
        if len(A) != R.nvars:
            problems.append(f"class {c.name!r}: representative is {len(A)}x{len(A)}, ring has {R.nvars} variables")
            continue
        if determinant(A) == 0:
            problems.append(f"class {c.name!r}: representative is singular")
        for u in range(R.nvars):
            for v in range(R.nvars):
                if A[u][v] and R.degrees[u] != R.degrees[v]:
                    problems.append(
                        f"class {c.name!r}: sends {R.variables[v]} to {R.variables[u]} of a different degree")
    return problems


def act_on_matrix(g: GroupElementAction, A: GradedMatrix) -> GradedMatrix:
    """[g·a_uv], same domain and codomain."""
    if g.size != A.ring.nvars:
        raise ShapeError(f"action on {g.size} variables, ring has {A.ring.nvars}")
    return GradedMatrix(A.ring, A.domain, A.codomain,
                        [[linear_substitute(a, g) if a else a for a in row] for row in A.entries])


def induced_psi0(generators: Sequence[Monomial], g: GroupElementAction, F0: GradedFreeModule,
                 ring: GradedRing) -> GradedMatrix:
    """Matrix of the action on the span of monomial generators.

    Column v holds c in row u when g·m_v = c·m_u.
    """
    gens = [tuple(m) for m in generators]
    if len(gens) != F0.rank:
        raise ShapeError(f"{len(gens)} generators but F0 has rank {F0.rank}")
    if g.variable_images() is None:
        raise UnsupportedAction("psi0 can only be induced from a monomial action; supply it explicitly")
    where = {m: u for u, m in enumerate(gens)}
    z = ring.zero()
    A = [[z] * len(gens) for _ in gens]
    for v, m in enumerate(gens):
        c, image = g.apply_monomial(m)
        u = where.get(image)
        if u is None:
            raise InstabilityError(
                f"generator {ring.format(ring.monomial(m))} maps to "
                f"{ring.format(ring.monomial(image, c))}, which is not a generator")
        A[u][v] = ring.const(c)
    return GradedMatrix(ring, F0, F0, A)


def trivial_psi0(F0: GradedFreeModule, G: GroupData, ring: GradedRing) -> list[GradedMatrix]:
    """Identity on F0 for every class (the R/I case, where F0 = R)."""
    return [identity(ring, F0) for _ in G.classes]


def validate_psi0(P: Sequence[GradedMatrix], F0: GradedFreeModule, G: GroupData) -> list[str]:
    problems = []
    if len(P) != len(G.classes):
        problems.append(f"{len(P)} psi0 matrices for {len(G.classes)} classes")
    for c, M in zip(G.classes, P):
        if M.domain != F0 or M.codomain != F0:
            problems.append(f"psi0[{c.name}] is not an endomorphism of F0")
            continue
        if not M.is_constant():
            problems.append(f"psi0[{c.name}] has non-constant entries")
            continue
        for b in validate_graded(M):
            problems.append(f"psi0[{c.name}] {b}")
        if determinant([[a.constant_value() for a in row] for row in M.entries]) == 0:
            problems.append(f"psi0[{c.name}] is singular")
    if problems:
        return problems
    ident = P[G.identity_index]
    if ident != identity(ident.ring, F0):
        problems.append("psi0 of the identity class is not the identity")
    return problems
