"""Finite commuting permutation actions: validated construction, element
realization from exponent vectors, exact uniform sampling, breadth-first
enumeration, orbits with Schreier tables, stabilizers and kernels."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from random import Random
from typing import Iterator, Sequence

from .perms import DegreeMismatch, Perm, Point, compose, element_order

DEFAULT_CAP = 10**6


class NonCommutingGenerators(ValueError):
    """A pair of generators fails to commute; carries their indices."""

    def __init__(self, i: int, j: int) -> None:
        super().__init__(f"generators {i} and {j} do not commute")
        self.i = i
        self.j = j


class ArityMismatch(ValueError):
    """Exponent vector length differs from the number of generators."""


class CapExceeded(ValueError):
    """Exhaustive enumeration grew past the configured cap."""

    def __init__(self, cap: int) -> None:
        super().__init__(f"enumeration exceeded cap of {cap} elements")
        self.cap = cap


class NotInOrbit(ValueError):
    """Requested point is not reachable from the orbit base."""

    def __init__(self, point: Point) -> None:
        super().__init__(f"point {point} is not in the orbit")
        self.point = point


class GroupFileError(ValueError):
    """Malformed group-definition file; carries the offending line number."""

    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class AbelianActionGroup:
    """Public group acting on {0, ..., degree-1} through commuting generator
    permutations.  ``orders[i]`` is the multiplicative order of ``generators[i]``.

    Construct through :func:`build_group`, which validates commutation and
    computes the orders; the raw constructor trusts its caller.
    """

    degree: int
    generators: tuple[Perm, ...]
    orders: tuple[int, ...]
    name: str = "group"

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    @property
    def abstract_order(self) -> int:
        """Order of the product of cyclic groups the exponent vectors range over."""
        n = 1
        for o in self.orders:
            n *= o
        return n

    def identity(self) -> Perm:
        return Perm.identity(self.degree)


@dataclass(frozen=True, eq=False)
class GroupElement:
    """A group element as an exponent vector over the generators plus the
    permutation it realizes.

    Two elements compare equal when they realize the same permutation; for a
    non-faithful action distinct exponent vectors may collide, and only the
    realized permutation is observable through the action.
    """

    exponents: tuple[int, ...]
    realized: Perm

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.realized == other.realized

    def __hash__(self) -> int:
        return hash(self.realized)


@dataclass(frozen=True, eq=False)
class SchreierTable:
    """Breadth-first orbit tree rooted at ``base``.

    ``reached`` maps every orbit point to ``(parent, generator_index)`` for the
    edge that discovered it; the base maps to ``None``.  Insertion order is the
    deterministic BFS discovery order (FIFO queue, generators in index order).
    """

    group: AbelianActionGroup
    base: Point
    reached: dict[Point, tuple[Point, int] | None]

    def points(self) -> tuple[Point, ...]:
        return tuple(self.reached)

    def __contains__(self, point: Point) -> bool:
        return point in self.reached

    def __len__(self) -> int:
        return len(self.reached)


@dataclass(frozen=True)
class PermSet:
    """Deduplicated set of permutations.

    ``closed`` is True only when closure under composition was verified by an
    exhaustive pairwise check (or by construction as a full BFS closure).
    """

    members: frozenset[Perm]
    closed: bool = False

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Perm]:
        return iter(sorted(self.members, key=lambda p: p.images))

    def __contains__(self, p: Perm) -> bool:
        return p in self.members


@dataclass(frozen=True)
class KernelResult:
    """Kernel of the action: the realized permutations acting trivially (always
    just the identity) together with the number of exponent vectors that
    realize the identity, which is the kernel size of the exponent-to-action map."""

    realized: PermSet
    abstract_size: int


def build_group(degree: int, generators: Sequence[Perm], name: str = "group") -> AbelianActionGroup:
    """Validated constructor: checks degrees, rejects non-commuting generators,
    and computes generator orders.

    Pairwise commutation of the generators suffices for the whole generated
    group to be commutative.
    """
    if degree < 1:
        raise ValueError(f"degree must be at least 1, got {degree}")
    gens = tuple(generators)
    for idx, gen in enumerate(gens):
        if gen.degree != degree:
            raise DegreeMismatch(f"generator {idx} has degree {gen.degree}, expected {degree}")
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if compose(gens[i], gens[j]) != compose(gens[j], gens[i]):
                raise NonCommutingGenerators(i, j)
    orders = tuple(element_order(g) for g in gens)
    return AbelianActionGroup(degree=degree, generators=gens, orders=orders, name=name)


@lru_cache(maxsize=None)
def _power_table(group: AbelianActionGroup) -> tuple[tuple[Perm, ...], ...]:
    """All powers gen_i**e for 0 <= e < orders[i], per generator."""
    table: list[tuple[Perm, ...]] = []
    for gen, order in zip(group.generators, group.orders):
        powers = [group.identity()]
        for _ in range(order - 1):
            powers.append(compose(powers[-1], gen))
        table.append(tuple(powers))
    return tuple(table)


def realize(group: AbelianActionGroup, exponents: Sequence[int]) -> GroupElement:
    """Group element with exponents reduced mod the generator orders and the
    realized permutation prod_i generators[i]**exponents[i]."""
    if len(exponents) != group.num_generators:
        raise ArityMismatch(
            f"expected {group.num_generators} exponents, got {len(exponents)}"
        )
    reduced = tuple(e % o for e, o in zip(exponents, group.orders))
    table = _power_table(group)
    realized = group.identity()
    for i, e in enumerate(reduced):
        realized = compose(realized, table[i][e])
    return GroupElement(exponents=reduced, realized=realized)


def sample_uniform(group: AbelianActionGroup, rng: Random) -> GroupElement:
    """Draw each exponent independently and uniformly from [0, orders[i]).

    The realized permutation is then exactly uniform over the generated
    permutation group: exponent reduction is a surjective homomorphism from
    the product of cyclic groups onto it, and a surjective homomorphism pushes
    the uniform distribution forward to the uniform distribution.
    """
    exponents = tuple(rng.randrange(o) for o in group.orders)
    return realize(group, exponents)


@lru_cache(maxsize=None)
def _closure_words(group: AbelianActionGroup, cap: int) -> dict[Perm, tuple[int, ...]]:
    """BFS closure of {identity} under right-multiplication by the generators,
    mapping each realized permutation to the first exponent word reaching it."""
    identity = group.identity()
    words: dict[Perm, tuple[int, ...]] = {identity: (0,) * group.num_generators}
    queue = [identity]
    while queue:
        nxt: list[Perm] = []
        for p in queue:
            word = words[p]
            for i, gen in enumerate(group.generators):
                q = compose(p, gen)
                if q not in words:
                    bumped = list(word)
                    bumped[i] += 1
                    words[q] = tuple(bumped)
                    nxt.append(q)
                    if len(words) > cap:
                        raise CapExceeded(cap)
        queue = nxt
    return words


def element_words(group: AbelianActionGroup, cap: int = DEFAULT_CAP) -> dict[Perm, tuple[int, ...]]:
    """Every distinct realized permutation with one exponent word realizing it,
    in deterministic BFS discovery order."""
    return dict(_closure_words(group, cap))


def enumerate_elements(group: AbelianActionGroup, cap: int = DEFAULT_CAP) -> PermSet:
    """All distinct realized permutations (the image of the action map).

    The reported size is the realized group order, which divides the exponent
    box order ``group.abstract_order``.
    """
    return PermSet(members=frozenset(_closure_words(group, cap)), closed=True)


@lru_cache(maxsize=None)
def orbit(group: AbelianActionGroup, a: Point) -> SchreierTable:
    """BFS orbit of ``a`` with the generator edge used to first reach each point.

    Generators are applied in index order from a FIFO queue, so the table is
    deterministic.  Inverses need not be applied separately: each inverse is a
    positive generator power, so generator edges alone cover the orbit.
    Results are cached; treat returned tables as immutable.
    """
    if not 0 <= a < group.degree:
        raise ValueError(f"point {a} outside [0, {group.degree})")
    reached: dict[Point, tuple[Point, int] | None] = {a: None}
    queue = [a]
    while queue:
        nxt: list[Point] = []
        for point in queue:
            for i, gen in enumerate(group.generators):
                image = gen.images[point]
                if image not in reached:
                    reached[image] = (point, i)
                    nxt.append(image)
        queue = nxt
    return SchreierTable(group=group, base=a, reached=reached)


def transversal_word(table: SchreierTable, b: Point) -> list[int]:
    """Exponent vector e with base o realize(e) = b, read off the orbit tree.

    Edge labels along the path are counted per generator; because the
    generators commute their order along the path is irrelevant.  Counts are
    reduced mod the generator orders.
    """
    if b not in table.reached:
        raise NotInOrbit(b)
    counts = [0] * table.group.num_generators
    node = b
    while True:
        edge = table.reached[node]
        if edge is None:
            break
        parent, gen_index = edge
        counts[gen_index] += 1
        node = parent
    return [c % o for c, o in zip(counts, table.group.orders)]


def _closure_verified(members: frozenset[Perm], budget: int = 10**6) -> bool:
    """Exhaustively check closure under composition, within a pair budget."""
    if len(members) ** 2 > budget:
        return False
    return all(compose(p, q) in members for p in members for q in members)


def stabilizer(group: AbelianActionGroup, a: Point, cap: int = DEFAULT_CAP) -> PermSet:
    """Realized permutations fixing ``a``, filtered from the full enumeration."""
    if not 0 <= a < group.degree:
        raise ValueError(f"point {a} outside [0, {group.degree})")
    members = frozenset(p for p in _closure_words(group, cap) if p.images[a] == a)
    return PermSet(members=members, closed=_closure_verified(members))


def kernel(group: AbelianActionGroup, cap: int = DEFAULT_CAP) -> KernelResult:
    """Intersection of all point stabilizers, plus the exponent-box kernel size.

    As realized permutations the kernel is always the identity alone; the
    abstract size counts exponent vectors realizing the identity, found by
    exhaustive enumeration of the exponent box (subject to ``cap``).
    """
    members = frozenset(_closure_words(group, cap))
    for x in range(group.degree):
        members = frozenset(p for p in members if p.images[x] == x)
    if group.abstract_order > cap:
        raise CapExceeded(cap)
    identity = group.identity()
    abstract_size = 0
    for exps in itertools.product(*(range(o) for o in group.orders)):
        if realize(group, exps).realized == identity:
            abstract_size += 1
    return KernelResult(
        realized=PermSet(members=members, closed=_closure_verified(members)),
        abstract_size=abstract_size,
    )


def is_transitive(group: AbelianActionGroup) -> bool:
    """True iff the orbit of point 0 covers every point."""
    return len(orbit(group, 0)) == group.degree


def parse_group_text(text: str, name: str = "group") -> AbelianActionGroup:
    """Parse the group-definition text format.

    First significant line is ``degree <n>``; each following significant line
    is ``gen <n space-separated images>``.  Lines starting with ``#`` are
    comments; blank lines are ignored.  Errors carry 1-based line numbers.
    """
    degree: int | None = None
    generators: list[Perm] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if degree is None:
            if fields[0] != "degree" or len(fields) != 2:
                raise GroupFileError(line_no, f"expected 'degree <n>', got {line!r}")
            try:
                degree = int(fields[1])
            except ValueError:
                raise GroupFileError(line_no, f"degree {fields[1]!r} is not an integer") from None
            if degree < 1:
                raise GroupFileError(line_no, f"degree must be at least 1, got {degree}")
            continue
        if fields[0] != "gen":
            raise GroupFileError(line_no, f"expected 'gen <images>', got {line!r}")
        try:
            images = [int(f) for f in fields[1:]]
        except ValueError:
            raise GroupFileError(line_no, "generator images must be integers") from None
        if len(images) != degree:
            raise GroupFileError(
                line_no, f"expected {degree} images, got {len(images)}"
            )
        try:
            generators.append(Perm(tuple(images)))
        except ValueError as exc:
            raise GroupFileError(line_no, str(exc)) from None
    if degree is None:
        raise GroupFileError(1, "missing 'degree <n>' line")
    return build_group(degree, generators, name=name)


def load_group_file(path: str | Path) -> AbelianActionGroup:
    """Read a group definition from ``path``; the group is named by the file stem."""
    path = Path(path)
    return parse_group_text(path.read_text(encoding="ascii"), name=path.stem)


def format_group_text(group: AbelianActionGroup) -> str:
    """Serialize a group in the group-definition text format."""
    lines = [f"# {group.name}", f"degree {group.degree}"]
    lines.extend("gen " + " ".join(str(i) for i in g.images) for g in group.generators)
    return "\n".join(lines) + "\n"
