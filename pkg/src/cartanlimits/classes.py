"""The five conjugacy classes of limit groups and the degenerate triangle configurations."""

from __future__ import annotations

import enum

from .linalg import H1, H2, Plane2, diag, elementary, madd


class LimitClass(enum.Enum):
    C = "C"
    F = "F"
    N1 = "N1"
    N2 = "N2"
    N3 = "N3"

    @property
    def canonical_algebra(self) -> Plane2:
        return _ALGEBRAS[self]

    @property
    def group_form(self) -> str:
        """Parametrized matrix form of the canonical group (a, b > 0; s, t real)."""
        return _GROUP_FORMS[self]

    @classmethod
    def parse(cls, label: str) -> LimitClass:
        key = label.strip().upper().replace("₁", "1").replace("₂", "2").replace("₃", "3").replace("_", "")
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown limit class {label!r}; expected one of C, F, N1, N2, N3") from None

    def __str__(self) -> str:
        return self.value


E12, E13, E23 = elementary(1, 2), elementary(1, 3), elementary(2, 3)

_ALGEBRAS = {
    LimitClass.C: Plane2(H1, H2),
    LimitClass.F: Plane2(diag(1, 1, -2), E12),
    LimitClass.N1: Plane2(madd(E12, E23), E13),
    LimitClass.N2: Plane2(E12, E13),
    LimitClass.N3: Plane2(E13, E23),
}

_GROUP_FORMS = {
    LimitClass.C: "[[a, 0, 0], [0, b, 0], [0, 0, 1/(a*b)]]",
    LimitClass.F: "[[a, t, 0], [0, a, 0], [0, 0, 1/a^2]]",
    LimitClass.N1: "[[1, s, t], [0, 1, s], [0, 0, 1]]",
    LimitClass.N2: "[[1, s, t], [0, 1, 0], [0, 0, 1]]",
    LimitClass.N3: "[[1, 0, t], [0, 1, s], [0, 0, 1]]",
}


class ConfigClass(enum.Enum):
    """Degenerate triangle configurations keyed by (points, lines)."""

    TC = (3, 3)
    TF = (2, 2)
    TN1 = (1, 1)
    TN2 = (1, 3)
    TN3 = (3, 1)
    TN2p = (1, 2)
    TN3p = (2, 1)

    @property
    def points(self) -> int:
        return self.value[0]

    @property
    def lines(self) -> int:
        return self.value[1]

    @property
    def label(self) -> str:
        return self.name.replace("p", "'")

    @classmethod
    def from_counts(cls, points: int, lines: int) -> ConfigClass:
        try:
            return cls((points, lines))
        except ValueError:
            raise ValueError(f"no degenerate triangle configuration has {points} points and {lines} lines") from None

    def dual(self) -> ConfigClass:
        return ConfigClass((self.lines, self.points))

    def __str__(self) -> str:
        return self.label
