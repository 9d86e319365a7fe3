"""Scope worlds, scoped names, and world-extension links.

A `World` is the immutable list of binder slots currently in scope, newest
last; a `Name` is a slot of a particular world.  Extending a world by one
binder yields a `Link`: *weak* links may shadow an existing key, *strong*
links carry a key guaranteed fresh for the source world.  A `Fresh` value is
a supply of strong links, threading its serial counter explicitly so there
is no global state anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable

from .errors import UnmappedName, WorldMismatch


@dataclass(frozen=True)
class World:
    """Binder slots in scope, each a (display key, unique serial) pair."""

    slots: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "slots", tuple(tuple(s) for s in self.slots))
        serials = [serial for _, serial in self.slots]
        if any(b <= a for a, b in zip(serials, serials[1:])):
            raise WorldMismatch("world serials must be strictly increasing")

    def __len__(self) -> int:
        return len(self.slots)

    def resolve(self, key: str) -> int | None:
        """Innermost slot bound to ``key``, or None."""
        for slot in reversed(range(len(self.slots))):
            if self.slots[slot][0] == key:
                return slot
        return None

    def next_serial(self) -> int:
        return self.slots[-1][1] + 1 if self.slots else 0

    def keys(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self.slots)


EMPTY = World()


@dataclass(frozen=True)
class Name:
    """A slot of a specific world; meaningless relative to any other world."""

    world: World
    slot: int

    def __post_init__(self):
        if not 0 <= self.slot < len(self.world):
            raise WorldMismatch(f"slot {self.slot} out of range for a world of size {len(self.world)}")

    @property
    def key(self) -> str:
        return self.world.slots[self.slot][0]

    @property
    def serial(self) -> int:
        return self.world.slots[self.slot][1]


class LinkKind(Enum):
    WEAK = "weak"
    STRONG = "strong"


@dataclass(frozen=True)
class Link:
    """A one-slot world extension; strong links guarantee a fresh key."""

    kind: LinkKind
    source: World
    target: World

    def __post_init__(self):
        if self.target.slots[: len(self.source)] != self.source.slots:
            raise WorldMismatch("link target must extend its source")
        if len(self.target) != len(self.source) + 1:
            raise WorldMismatch("a link adds exactly one slot")
        if self.kind is LinkKind.STRONG:
            key = self.target.slots[-1][0]
            if key in self.source.keys():
                raise WorldMismatch(f"strong link reuses key {key!r}")

    @property
    def bound_slot(self) -> int:
        return len(self.source)

    @property
    def name(self) -> Name:
        """The newly bound name, in the target world."""
        return Name(self.target, self.bound_slot)

    def weakened(self) -> Link:
        """Forget freshness: the same extension viewed as a weak link."""
        return Link(LinkKind.WEAK, self.source, self.target)


def extend_weak(world: World, key: str) -> Link:
    """Bind ``key`` over ``world``, possibly shadowing an earlier binding."""
    target = World(world.slots + ((key, world.next_serial()),))
    return Link(LinkKind.WEAK, world, target)


@dataclass(frozen=True)
class Fresh:
    """A supply of strong links over ``world``."""

    world: World
    next_serial: int

    def __post_init__(self):
        if self.world.slots and self.next_serial <= self.world.slots[-1][1]:
            raise WorldMismatch("fresh serial must exceed every serial in scope")

    def extend(self, key: str | None = None) -> tuple[Link, Fresh]:
        """One strong link plus the supply for the extended world."""
        if key is None:
            key = f"n{self.next_serial}"
        while key in self.world.keys():
            key += "_"
        target = World(self.world.slots + ((key, self.next_serial),))
        link = Link(LinkKind.STRONG, self.world, target)
        return link, Fresh(target, self.next_serial + 1)


def fresh_empty() -> Fresh:
    """The primitively available supply: strong links over the empty world."""
    return Fresh(EMPTY, 0)


def fresh_after(world: World) -> Fresh:
    """A supply resuming after every binder already in ``world``."""
    return Fresh(world, world.next_serial())


class Env:
    """Partial map from the slots of one world to payload values."""

    __slots__ = ("world", "_table")

    def __init__(self, world: World, table: dict[int, Any] | None = None):
        self.world = world
        self._table = dict(table) if table else {}

    @classmethod
    def empty(cls, world: World = EMPTY) -> Env:
        return cls(world)

    def lookup(self, name: Name) -> Any:
        if name.world != self.world:
            raise WorldMismatch(f"{name.key!r} belongs to a different world")
        if name.slot not in self._table:
            raise UnmappedName(f"no binding for {name.key!r} (slot {name.slot})")
        return self._table[name.slot]

    def insert(self, link: Link, payload: Any) -> Env:
        """Bind the slot ``link`` introduces; the result is over ``link.target``."""
        if link.source != self.world:
            raise WorldMismatch("link does not extend this environment's world")
        table = dict(self._table)
        table[link.bound_slot] = payload
        return Env(link.target, table)

    def map_values(self, f: Callable[[Any], Any]) -> Env:
        return Env(self.world, {slot: f(v) for slot, v in self._table.items()})

    def __repr__(self) -> str:
        return f"Env({len(self.world)} slots, {len(self._table)} bound)"


@dataclass(frozen=True)
class LinkPath:
    """A chain of strong links; earlier slots keep their indices throughout."""

    start: World
    links: tuple[Link, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "links", tuple(self.links))
        world = self.start
        for link in self.links:
            if link.kind is not LinkKind.STRONG:
                raise WorldMismatch("link paths are chains of strong links")
            if link.source != world:
                raise WorldMismatch("links in a path must chain")
            world = link.target

    @property
    def end(self) -> World:
        return self.links[-1].target if self.links else self.start

    def extend(self, link: Link) -> LinkPath:
        return LinkPath(self.start, self.links + (link,))

    def join(self, other: LinkPath) -> LinkPath:
        if other.start != self.end:
            raise WorldMismatch("paths do not chain")
        return LinkPath(self.start, self.links + other.links)


def import_through(link: Link, name: Name) -> Name:
    """View a name of the link's source world in its target world."""
    if name.world != link.source:
        raise WorldMismatch(f"{name.key!r} does not live at the link's source")
    return Name(link.target, name.slot)


def import_name(path: LinkPath, name: Name) -> Name:
    """Transport a name along a whole path of strong links."""
    if name.world != path.start:
        raise WorldMismatch(f"{name.key!r} does not live at the path's start")
    return Name(path.end, name.slot)
