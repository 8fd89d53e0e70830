"""The three-pass key transport over a public commuting permutation action.

Alice wants to hand the key point k to Bob with no pre-shared secret.  Both
hold the public group; each picks a private element.

    Alice: pick k, g        --  c1 = k . g  -->   Bob: pick h
                            <-- c2 = c1 . h --
           c3 = c2 . g^-1   --  c3          -->        k = c3 . h^-1

Because the private elements commute, Alice's g cancels out of c3 and Bob's
final step recovers k exactly.  Every message crosses one in-process channel
whose taps hand immutable copies to any registered observer, so the public
view of a session is exactly the transcript (c1, c2, c3).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from random import Random
from typing import Callable, Sequence

from .groups import AbelianActionGroup, GroupElement, sample_uniform
from .perms import Point, PointOutOfRange, apply, inverse


class PhaseViolation(RuntimeError):
    """A protocol operation was invoked out of order."""


class AlicePhase(Enum):
    INIT = "init"
    SENT_C1 = "sent_c1"
    DONE = "done"


class BobPhase(Enum):
    INIT = "init"
    SENT_C2 = "sent_c2"
    RECOVERED = "recovered"


@dataclass
class AliceState:
    """Initiator state: the key to transport and the private element g."""

    group: AbelianActionGroup
    k: Point
    g: GroupElement
    phase: AlicePhase = AlicePhase.INIT


@dataclass
class BobState:
    """Responder state: the private element h and, eventually, the key."""

    group: AbelianActionGroup
    h: GroupElement
    phase: BobPhase = BobPhase.INIT
    recovered_k: Point | None = None


@dataclass(frozen=True)
class Transcript:
    """The public channel view of one session: the three points on the wire
    plus the public group's identifier.  Never contains k, g, or h."""

    group_id: str
    c1: Point
    c2: Point
    c3: Point


@dataclass(frozen=True)
class SessionSecrets:
    """Private session values, kept strictly out of transcript serialization."""

    k: Point
    g: GroupElement
    h: GroupElement


class TappedChannel:
    """In-process FIFO message queue; every sent point is also copied to each
    registered tap, modelling a wire open to passive observers."""

    def __init__(self) -> None:
        self._queue: deque[Point] = deque()
        self._taps: list[Callable[[Point], None]] = []

    def add_tap(self, observer: Callable[[Point], None]) -> None:
        self._taps.append(observer)

    def send(self, point: Point) -> None:
        for observer in self._taps:
            observer(point)
        self._queue.append(point)

    def recv(self) -> Point:
        return self._queue.popleft()


def draw_key(degree: int, key_dist: Sequence[float] | None, rng: Random) -> Point:
    """Draw a key point: uniform when ``key_dist`` is None, otherwise weighted
    by the given per-point weights (not necessarily normalized)."""
    if key_dist is None:
        return rng.randrange(degree)
    if len(key_dist) != degree:
        raise ValueError(f"key distribution has {len(key_dist)} weights, expected {degree}")
    return rng.choices(range(degree), weights=key_dist)[0]


def alice_init(
    group: AbelianActionGroup,
    key_dist: Sequence[float] | None = None,
    rng: Random | None = None,
    *,
    k: Point | None = None,
    g: GroupElement | None = None,
) -> tuple[AliceState, Point]:
    """First pass: pick (or accept forced) k and g, emit c1 = k . g.

    Forcing k and g reproduces fixed walkthroughs and drives exhaustive tests;
    otherwise both are drawn from ``rng``.
    """
    if k is None or g is None:
        if rng is None:
            raise ValueError("rng is required unless both k and g are forced")
    if k is None:
        k = draw_key(group.degree, key_dist, rng)
    if not 0 <= k < group.degree:
        raise PointOutOfRange(f"key {k} outside [0, {group.degree})")
    if g is None:
        g = sample_uniform(group, rng)
    state = AliceState(group=group, k=k, g=g, phase=AlicePhase.SENT_C1)
    return state, apply(k, g.realized)


def bob_respond(
    group: AbelianActionGroup,
    c1: Point,
    rng: Random | None = None,
    *,
    h: GroupElement | None = None,
) -> tuple[BobState, Point]:
    """Second pass: pick (or accept forced) h, emit c2 = c1 . h."""
    if h is None:
        if rng is None:
            raise ValueError("rng is required unless h is forced")
        h = sample_uniform(group, rng)
    state = BobState(group=group, h=h, phase=BobPhase.SENT_C2)
    return state, apply(c1, h.realized)


def alice_finalize(state: AliceState, c2: Point) -> Point:
    """Third pass: strip Alice's own blinding, emit c3 = c2 . g^-1.

    Since the group commutes, c3 = k . (g * h * g^-1) = k . h.
    """
    if state.phase is not AlicePhase.SENT_C1:
        raise PhaseViolation(f"alice_finalize in phase {state.phase.value}")
    c3 = apply(c2, inverse(state.g.realized))
    state.phase = AlicePhase.DONE
    return c3


def bob_recover(state: BobState, c3: Point) -> Point:
    """Final step: Bob strips his own element, k = c3 . h^-1."""
    if state.phase is not BobPhase.SENT_C2:
        raise PhaseViolation(f"bob_recover in phase {state.phase.value}")
    recovered = apply(c3, inverse(state.h.realized))
    state.recovered_k = recovered
    state.phase = BobPhase.RECOVERED
    return recovered


def run_session(
    group: AbelianActionGroup,
    key_dist: Sequence[float] | None = None,
    rng: Random | None = None,
    *,
    k: Point | None = None,
    g: GroupElement | None = None,
    h: GroupElement | None = None,
    channel: TappedChannel | None = None,
) -> tuple[Transcript, SessionSecrets, Point]:
    """Drive one honest session over a tapped channel.

    The transcript is assembled from the channel tap (the observer's view of
    the wire), never from party state.  Returns (transcript, secrets,
    Bob's recovered key); in every honest run the recovered key equals k.
    """
    if channel is None:
        channel = TappedChannel()
    wire: list[Point] = []
    channel.add_tap(wire.append)

    alice, c1 = alice_init(group, key_dist, rng, k=k, g=g)
    channel.send(c1)
    bob, c2 = bob_respond(group, channel.recv(), rng, h=h)
    channel.send(c2)
    c3 = alice_finalize(alice, channel.recv())
    channel.send(c3)
    recovered = bob_recover(bob, channel.recv())

    transcript = Transcript(group_id=group.name, c1=wire[0], c2=wire[1], c3=wire[2])
    secrets = SessionSecrets(k=alice.k, g=alice.g, h=bob.h)
    return transcript, secrets, recovered


def format_transcript_line(t: Transcript) -> str:
    """One session per line: ``<group-id> <c1> <c2> <c3>``, 0-based decimal."""
    return f"{t.group_id} {t.c1} {t.c2} {t.c3}"


def parse_transcript_line(line: str) -> Transcript:
    """Inverse of :func:`format_transcript_line`."""
    fields = line.split()
    if len(fields) != 4:
        raise ValueError(f"expected 'group-id c1 c2 c3', got {line!r}")
    try:
        c1, c2, c3 = (int(f) for f in fields[1:])
    except ValueError:
        raise ValueError(f"non-integer point in {line!r}") from None
    return Transcript(group_id=fields[0], c1=c1, c2=c2, c3=c3)
