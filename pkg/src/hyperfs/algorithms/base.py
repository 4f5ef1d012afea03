"""Common algorithm interface."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import ClassVar


@dataclass
class Algorithm:
    """An update rule applied component-wise to every hypercomplex coefficient.

    The same implementation serves D = 1, 4 and 8; the quaternion and
    octonion variants only differ in the search space they are run on.
    """

    name: ClassVar[str] = ""

    def setup(self, pop, ctx) -> None:
        """Create algorithm state in ``pop.aux`` after initialization."""

    def step(self, pop, ctx) -> None:
        raise NotImplementedError

    def params(self) -> dict:
        return asdict(self)
