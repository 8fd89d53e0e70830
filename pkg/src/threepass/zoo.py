"""Built-in groups covering the interesting action shapes: the Klein
four-group in its natural action, cyclic and product-of-cyclic groups acting
regularly on themselves, a two-orbit (non-transitive) cyclic action, and a
non-faithful action where distinct exponent vectors collide."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .groups import AbelianActionGroup, build_group, load_group_file
from .perms import Perm


def klein() -> AbelianActionGroup:
    """Klein four-group on 4 points: double transpositions, every element
    its own inverse."""
    tau1 = Perm((1, 0, 3, 2))
    tau2 = Perm((2, 3, 0, 1))
    return build_group(4, [tau1, tau2], name="klein")


def cyclic(n: int) -> AbelianActionGroup:
    """Cyclic group of order n acting regularly on n points by +1 shifts."""
    if n < 1:
        raise ValueError(f"cyclic group size must be at least 1, got {n}")
    shift = Perm(tuple((i + 1) % n for i in range(n)))
    return build_group(n, [shift], name=f"cyclic:{n}")


def cyclic_product(orders: Sequence[int]) -> AbelianActionGroup:
    """Product of cyclic groups acting regularly on itself.

    Points are mixed-radix encodings of coordinate tuples; generator i adds 1
    to coordinate i mod orders[i].
    """
    orders = list(orders)
    if not orders or any(o < 1 for o in orders):
        raise ValueError(f"orders must be a non-empty list of positive integers, got {orders}")
    degree = 1
    for o in orders:
        degree *= o
    strides = [0] * len(orders)
    stride = 1
    for i in reversed(range(len(orders))):
        strides[i] = stride
        stride *= orders[i]
    generators = []
    for i, o in enumerate(orders):
        images = []
        for point in range(degree):
            coord = (point // strides[i]) % o
            images.append(point + ((coord + 1) % o - coord) * strides[i])
        generators.append(Perm(tuple(images)))
    name = "product:" + "x".join(str(o) for o in orders)
    return build_group(degree, generators, name=name)


def two_orbit_cyclic(n: int) -> AbelianActionGroup:
    """Cyclic group of order n acting on 2n points as two disjoint n-cycles:
    a non-transitive action with two orbits."""
    if n < 1:
        raise ValueError(f"cycle length must be at least 1, got {n}")
    gen = Perm.from_cycles(2 * n, [tuple(range(n)), tuple(range(n, 2 * n))])
    return build_group(2 * n, [gen], name=f"two_orbit_cyclic:{n}")


def nonfaithful_z2z2() -> AbelianActionGroup:
    """Two order-2 generators both realizing the swap on 2 points: a 4-vector
    exponent box acting through only 2 distinct permutations."""
    swap = Perm((1, 0))
    return build_group(2, [swap, swap], name="nonfaithful_z2z2")


def parse_group_spec(spec: str) -> AbelianActionGroup:
    """Build a group from a spec string.

    Builtins: ``klein``, ``cyclic:N``, ``product:AxBx...``,
    ``two_orbit_cyclic:N``, ``nonfaithful_z2z2``.  Anything else is treated as
    a group-definition file path.
    """
    spec = spec.strip()
    if spec == "klein":
        return klein()
    if spec == "nonfaithful_z2z2":
        return nonfaithful_z2z2()
    head, sep, params = spec.partition(":")
    if sep:
        try:
            if head == "cyclic":
                return cyclic(int(params))
            if head == "two_orbit_cyclic":
                return two_orbit_cyclic(int(params))
            if head == "product":
                return cyclic_product([int(p) for p in params.split("x")])
        except ValueError as exc:
            raise ValueError(f"bad group spec {spec!r}: {exc}") from None
    if Path(spec).is_file():
        return load_group_file(spec)
    raise ValueError(
        f"unknown group spec {spec!r}: expected klein, cyclic:N, product:AxB, "
        "two_orbit_cyclic:N, nonfaithful_z2z2, or a group file path"
    )
