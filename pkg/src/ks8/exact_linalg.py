"""Exact integer and rational linear algebra for small real vector spaces.

Everything here works on Python ints and :class:`fractions.Fraction`; there is
no floating point anywhere.  Vectors stand for rays: ``v`` and ``-v`` (or any
nonzero multiple) name the same yes/no proposition, and :meth:`ExactVector.ray`
picks one representative per ray.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Sequence

__all__ = [
    "AngleClass",
    "Context",
    "ExactVector",
    "Projector",
    "RationalMatrix",
    "angle_class",
    "format_vectors",
    "identity_matrix",
    "inner",
    "is_resolution_of_identity",
    "parse_vectors",
]

RationalMatrix = tuple[tuple[Fraction, ...], ...]

# Squared norm used for canonical rays in dimension 8 (components 0, +-1, +-2).
CANONICAL_NORM_SQ = {8: 4}


@dataclass(frozen=True, order=True)
class ExactVector:
    """A nonzero vector with integer components."""

    components: tuple[int, ...]

    def __post_init__(self) -> None:
        comps = tuple(int(c) for c in self.components)
        if not comps:
            raise ValueError("vector must have at least one component")
        if not any(comps):
            raise ValueError("zero vector does not define a ray")
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, *components: int) -> ExactVector:
        return cls(tuple(components))

    @classmethod
    def parse(cls, text: str) -> ExactVector:
        """Parse a vector literal.

        Two spellings are accepted: whitespace-separated integers
        (``"1 0 0 -1 0 -1 -1 0"``) and the compact one-digit-per-component
        form where ``-`` or ``\\=`` negates the following digit
        (``"100-10-1-10"``, ``"100\\=10\\=1\\=10"``).
        """
        text = text.strip()
        if not text:
            raise ValueError("empty vector literal")
        if any(ch.isspace() for ch in text) or "," in text:
            return cls(tuple(int(tok) for tok in text.replace(",", " ").split()))
        text = text.replace("\\=", "-")
        comps: list[int] = []
        negate = False
        for ch in text:
            if ch == "-":
                if negate:
                    raise ValueError(f"dangling sign in {text!r}")
                negate = True
            elif ch.isdigit():
                comps.append(-int(ch) if negate else int(ch))
                negate = False
            else:
                raise ValueError(f"unexpected character {ch!r} in {text!r}")
        if negate:
            raise ValueError(f"trailing sign in {text!r}")
        return cls(tuple(comps))

    @property
    def dim(self) -> int:
        return len(self.components)

    @property
    def norm_sq(self) -> int:
        return sum(c * c for c in self.components)

    def __neg__(self) -> ExactVector:
        return ExactVector(tuple(-c for c in self.components))

    def __mul__(self, k: int) -> ExactVector:
        return ExactVector(tuple(k * c for c in self.components))

    __rmul__ = __mul__

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> int:
        return self.components[i]

    def ray(self) -> ExactVector:
        """Canonical representative of the ray through this vector.

        The components are divided by their gcd and the sign is fixed so the
        first nonzero entry is positive.  In dimension 8 the result is then
        rescaled to squared norm 4 when an integer factor achieves it, so unit
        vectors come out as ``20000000`` and four-term vectors as ``11110000``.
        """
        g = reduce(math.gcd, self.components)
        comps = [c // g for c in self.components]
        lead = next(c for c in comps if c)
        if lead < 0:
            comps = [-c for c in comps]
        target = CANONICAL_NORM_SQ.get(len(comps))
        if target is not None:
            n2 = sum(c * c for c in comps)
            if target % n2 == 0:
                k = math.isqrt(target // n2)
                if k * k * n2 == target:
                    comps = [k * c for c in comps]
        return ExactVector(tuple(comps))

    def is_ray(self) -> bool:
        return self.ray() == self

    def compact(self) -> str:
        """Compact one-digit-per-component spelling, e.g. ``100-10-1-10``."""
        if any(abs(c) > 9 for c in self.components):
            return self.text()
        return "".join(str(c) for c in self.components)

    def text(self) -> str:
        return " ".join(str(c) for c in self.components)

    def __str__(self) -> str:
        return self.compact()


def inner(u: ExactVector, v: ExactVector) -> int:
    if u.dim != v.dim:
        raise ValueError(f"dimension mismatch: {u.dim} vs {v.dim}")
    return sum(a * b for a, b in zip(u.components, v.components))


class AngleClass(enum.Enum):
    ORTHOGONAL = "orthogonal"
    ACUTE_OBTUSE_HALF = "acute_obtuse_half"
    OTHER = "other"


def angle_class(u: ExactVector, v: ExactVector) -> AngleClass:
    """Classify the angle between two canonical rays of squared norm 4.

    ``|inner| = 2`` means ``cos = +-1/2``, i.e. 60 or 120 degrees.
    """
    for w in (u, v):
        if w.norm_sq != 4:
            raise ValueError(f"{w} is not canonical (squared norm {w.norm_sq}, expected 4)")
    ip = inner(u, v)
    if ip == 0:
        return AngleClass.ORTHOGONAL
    if abs(ip) == 2:
        return AngleClass.ACUTE_OBTUSE_HALF
    return AngleClass.OTHER


def identity_matrix(d: int) -> RationalMatrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))


def _outer_over_norm(v: ExactVector) -> list[list[Fraction]]:
    n2 = v.norm_sq
    c = v.components
    return [[Fraction(a * b, n2) for b in c] for a in c]


class Projector:
    """Orthogonal projector onto the span of mutually orthogonal vectors.

    Equality and hashing go through the exact projection matrix, so two
    projectors compare equal whenever they project onto the same subspace,
    regardless of the order or signs of the spanning vectors.
    """

    def __init__(self, span: Iterable[ExactVector]):
        span = tuple(span)
        if not span:
            raise ValueError("projector needs at least one spanning vector")
        d = span[0].dim
        if any(v.dim != d for v in span):
            raise ValueError("spanning vectors have different dimensions")
        if len(span) > d:
            raise ValueError(f"rank {len(span)} exceeds dimension {d}")
        for i in range(len(span)):
            for j in range(i + 1, len(span)):
                if inner(span[i], span[j]) != 0:
                    raise ValueError(f"spanning vectors {span[i]} and {span[j]} are not orthogonal")
        self.span = tuple(sorted(v.ray() for v in span))

    @classmethod
    def of(cls, *vectors: ExactVector) -> Projector:
        return cls(vectors)

    @property
    def rank(self) -> int:
        return len(self.span)

    @property
    def dim(self) -> int:
        return self.span[0].dim

    @cached_property
    def matrix(self) -> RationalMatrix:
        d = self.dim
        acc = [[Fraction(0)] * d for _ in range(d)]
        for v in self.span:
            m = _outer_over_norm(v)
            for i in range(d):
                row = acc[i]
                for j in range(d):
                    row[j] += m[i][j]
        return tuple(tuple(r) for r in acc)

    def is_orthogonal_to(self, other: Projector) -> bool:
        return all(inner(u, v) == 0 for u in self.span for v in other.span)

    def sort_key(self) -> tuple:
        return (self.rank, self.span)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Projector):
            return NotImplemented
        if self.rank != other.rank or self.dim != other.dim:
            return False
        return self.matrix == other.matrix

    def __hash__(self) -> int:
        try:
            return self._hash
        except AttributeError:
            self._hash = hash(self.matrix)
            return self._hash

    def __repr__(self) -> str:
        return f"Projector({', '.join(map(str, self.span))})"


@dataclass(frozen=True)
class Context:
    """A candidate resolution of identity: a list of projectors.

    Construction does not validate; use :func:`is_resolution_of_identity`.
    """

    members: tuple[Projector, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(self.members))

    @classmethod
    def of_vectors(cls, vectors: Iterable[ExactVector]) -> Context:
        return cls(tuple(Projector.of(v) for v in vectors))

    @property
    def vectors(self) -> tuple[ExactVector, ...]:
        return tuple(v for p in self.members for v in p.span)

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(p.rank for p in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def is_resolution_of_identity(c: Context) -> bool:
    """True iff the member projectors sum exactly to the identity matrix."""
    try:
        members = tuple(c.members)
        if not members:
            return False
        d = members[0].dim
        if any(p.dim != d for p in members):
            return False
        if sum(p.rank for p in members) != d:
            return False
        acc = [[Fraction(0)] * d for _ in range(d)]
        for p in members:
            m = p.matrix
            for i in range(d):
                for j in range(d):
                    acc[i][j] += m[i][j]
    except (AttributeError, TypeError, ValueError, IndexError):
        return False
    return tuple(tuple(r) for r in acc) == identity_matrix(d)


def parse_vectors(text: str) -> list[ExactVector]:
    """Read the line-oriented vector format (``#`` starts a comment line)."""
    out = []
    dim = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            v = ExactVector(tuple(int(tok) for tok in line.split()))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if dim is None:
            dim = v.dim
        elif v.dim != dim:
            raise ValueError(f"line {lineno}: expected {dim} components, got {v.dim}")
        out.append(v)
    return out


def format_vectors(vectors: Sequence[ExactVector], header: str | None = None) -> str:
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    lines.extend(v.text() for v in vectors)
    return "\n".join(lines) + "\n"
