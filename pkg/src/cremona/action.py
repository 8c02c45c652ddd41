"""Group actions: matched generator lists plus their enumerated closure."""

from __future__ import annotations

from functools import cached_property
from pathlib import Path

from .fileio import read_action, write_action
from .projgeom import FiniteLinearGroup, ProjectiveTransform, close_group

DEFAULT_ORDER_BOUND = 5000


class GroupAction:
    """A finite group acting on P^1 or P^2 through named generator matrices.

    Two actions of the same abstract group must list corresponding
    generators in the same order; every comparison in the package relies on
    that matching.
    """

    def __init__(self, generators, names=None, family=None, params=None,
                 order_bound: int = DEFAULT_ORDER_BOUND):
        if not generators:
            raise ValueError("an action needs generators")
        self.generators = list(generators)
        self.names = list(names) if names else [f"g{i + 1}" for i in range(len(generators))]
        if len(self.names) != len(self.generators):
            raise ValueError("one name per generator")
        self.family = family
        self.params = dict(params or {})
        self.order_bound = order_bound

    @cached_property
    def group(self) -> FiniteLinearGroup:
        return close_group(self.generators, self.order_bound)

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def dim(self) -> int:
        return self.generators[0].dim

    def conjugate_by(self, h: ProjectiveTransform) -> "GroupAction":
        """The action g -> h g h^-1."""
        return GroupAction([g.conjugate_by(h) for g in self.generators], self.names,
                           self.family, self.params, self.order_bound)

    def with_generators(self, generators) -> "GroupAction":
        return GroupAction(generators, self.names, None, None, self.order_bound)

    def to_text(self) -> str:
        return write_action(self.generators, self.names, self.family, self.params)

    @classmethod
    def from_text(cls, text: str, order_bound: int = DEFAULT_ORDER_BOUND) -> "GroupAction":
        info = read_action(text)
        names = [n for n, _ in info["generators"]]
        gens = [g for _, g in info["generators"]]
        return cls(gens, names, info["family"], info["params"], order_bound)

    @classmethod
    def load(cls, path, order_bound: int = DEFAULT_ORDER_BOUND) -> "GroupAction":
        return cls.from_text(Path(path).read_text(), order_bound)

    def __repr__(self):
        tag = f" {self.family}" if self.family else ""
        return f"<GroupAction{tag} {self.params} gens={self.names}>"
