"""Passive eavesdropping on the three-pass exchange.

Eve sees only the public group and the three points (c1, c2, c3) on the wire.
Any group element h' sending c1 to c2 differs from Bob's h by a stabilizer of
c1, and that difference cancels when she computes c3 . h'^-1 — so one orbit
walk recovers the key outright:

    c3 . h'^-1 = (c1 . h . g^-1) . h^-1 . alpha^-1 = c1 . g^-1 = k

The walk is a breadth-first Schreier table over the orbit of c1, costing on
the order of degree x num_generators point lookups.  It never touches the
group order, so making the group astronomically large does not help; the
brute-force enumeration here serves only as an independent test oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .groups import (
    AbelianActionGroup,
    GroupElement,
    NotInOrbit,
    PermSet,
    enumerate_elements,
    is_transitive,
    orbit,
    realize,
    stabilizer,
    transversal_word,
)
from .perms import Perm, Point, apply, compose, inverse
from .protocol import Transcript


class AttackMethod(Enum):
    SCHREIER_WORD = "schreier-word"
    BRUTE_FORCE = "brute-force"


@dataclass(frozen=True)
class EveResult:
    """Outcome of one transcript attack: the sender element Eve constructed
    (c1 . h' = c2 holds by construction) and the key she computed from it."""

    h_prime: GroupElement
    recovered_k: Point
    method: AttackMethod


@dataclass(frozen=True)
class AttackCost:
    """Exact point-lookup counts for one single-point key recovery.

    ``bfs_lookups`` is generators x orbit size (each orbit point has every
    generator applied once), ``inverse_table_lookups`` builds the generator
    inverses, and ``walk_lookups`` steps the recovered point up the orbit
    tree.  Parent-link reads are not point lookups and are excluded.
    """

    degree: int
    num_generators: int
    orbit_size: int
    bfs_lookups: int
    inverse_table_lookups: int
    walk_lookups: int
    recovered_k: Point

    @property
    def total_lookups(self) -> int:
        return self.bfs_lookups + self.inverse_table_lookups + self.walk_lookups


def eve_find_h_prime(group: AbelianActionGroup, c1: Point, c2: Point) -> GroupElement:
    """Some group element sending c1 to c2, from the orbit tree of c1.

    Cost is linear in degree x num_generators, independent of the group
    order.  Raises NotInOrbit when no element sends c1 to c2, which cannot
    happen for an honestly produced transcript (Bob's own h is a witness).
    """
    table = orbit(group, c1)
    return realize(group, transversal_word(table, c2))


def eve_recover_key(group: AbelianActionGroup, t: Transcript) -> EveResult:
    """Recover the transported key from the public transcript alone."""
    h_prime = eve_find_h_prime(group, t.c1, t.c2)
    recovered = apply(t.c3, inverse(h_prime.realized))
    return EveResult(h_prime=h_prime, recovered_k=recovered, method=AttackMethod.SCHREIER_WORD)


def count_attack_operations(group: AbelianActionGroup, t: Transcript) -> AttackCost:
    """Run the key recovery tracking the exact number of point lookups.

    Instead of realizing h' as a full permutation, the recovered point is
    walked directly: following the orbit tree from c2 up to c1 and applying
    the inverse of each edge generator to the tracked point.  The generators
    commute, so edge order is irrelevant.  The result always matches
    :func:`eve_recover_key`.
    """
    table = orbit(group, t.c1)
    if t.c2 not in table.reached:
        raise NotInOrbit(t.c2)
    m = group.num_generators
    bfs_lookups = m * len(table)
    inverse_generators = [inverse(g) for g in group.generators]
    inverse_table_lookups = m * group.degree
    point = t.c3
    walk_lookups = 0
    node = t.c2
    while True:
        edge = table.reached[node]
        if edge is None:
            break
        parent, gen_index = edge
        point = inverse_generators[gen_index].images[point]
        walk_lookups += 1
        node = parent
    return AttackCost(
        degree=group.degree,
        num_generators=m,
        orbit_size=len(table),
        bfs_lookups=bfs_lookups,
        inverse_table_lookups=inverse_table_lookups,
        walk_lookups=walk_lookups,
        recovered_k=point,
    )


def brute_force_senders(
    group: AbelianActionGroup, a: Point, b: Point, cap: int = 10**6
) -> PermSet:
    """All realized permutations sending a to b, by full enumeration.

    This is the expensive route whose cost scales with the group order; it is
    the independent oracle for :func:`eve_find_h_prime` and for counting how
    many elements send any point to any other.
    """
    members = frozenset(p for p in enumerate_elements(group, cap).members if p.images[a] == b)
    return PermSet(members=members)


def verify_coset_structure(
    group: AbelianActionGroup, a: Point, b: Point, cap: int = 10**6
) -> bool:
    """Check that the senders from a to b are exactly one stabilizer coset.

    Verifies, by brute force: the sender set equals {s * h' : s in
    stabilizer(a)} for the h' found by the orbit walk; any two senders differ
    by a stabilizer element; and in the transitive case the senders collapse
    to a single permutation exactly when the stabilizer is trivial.  For b
    outside the orbit of a the sender set must be empty.
    """
    senders = brute_force_senders(group, a, b, cap)
    table = orbit(group, a)
    if b not in table.reached:
        return len(senders) == 0
    h_prime = eve_find_h_prime(group, a, b)
    stab = stabilizer(group, a, cap)
    coset = frozenset(compose(s, h_prime.realized) for s in stab.members)
    if senders.members != coset:
        return False
    for g1 in senders.members:
        for g2 in senders.members:
            if compose(g1, inverse(g2)) not in stab.members:
                return False
    if is_transitive(group):
        identity_only = stab.members == frozenset({group.identity()})
        if (len(senders) == 1) != identity_only:
            return False
    return True


def format_attack_report_line(
    t: Transcript, recovered_k: Point, true_k: Point | None
) -> str:
    """``<group-id> <c1> <c2> <c3> <recovered-k> <match:0|1>``; the match
    column is ``-`` when no true key is available for cross-checking."""
    match = "-" if true_k is None else str(int(recovered_k == true_k))
    return f"{t.group_id} {t.c1} {t.c2} {t.c3} {recovered_k} {match}"
