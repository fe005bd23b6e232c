"""Mermin's commuting Pauli words and their joint eigenbases.

Component indices of a vector in dimension ``2**n`` are read as ``n``-bit
binary numbers with qubit 1 as the most significant bit; bit value 0 is the
"up" (``Z = +1``) state of that qubit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from math import gcd

import numpy as np

from ks8.exact_linalg import Context, ExactVector

__all__ = [
    "OperatorSet",
    "PauliWord",
    "commutes",
    "commutes_by_matrix",
    "defining_operator_sets",
    "factor_set",
    "generate_defining_octads",
    "joint_eigenbasis",
    "mermin_words",
    "operator_value_assignments",
    "product_sign",
    "realize",
]

_SINGLE = {
    "I": np.array([[1, 0], [0, 1]], dtype=np.int64),
    "X": np.array([[0, 1], [1, 0]], dtype=np.int64),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.int64),
}


@dataclass(frozen=True)
class PauliWord:
    """Signed tensor product of single-qubit ``I``, ``X``, ``Z``."""

    letters: str
    sign: int = 1

    def __post_init__(self) -> None:
        letters = self.letters.upper()
        if not letters:
            raise ValueError("empty Pauli word")
        bad = set(letters) - set(_SINGLE)
        if bad:
            raise ValueError(f"unsupported Pauli letters {sorted(bad)} in {self.letters!r}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str) -> PauliWord:
        text = text.strip()
        sign = 1
        if text[:1] in "+-":
            sign = -1 if text[0] == "-" else 1
            text = text[1:]
        return cls(text, sign)

    @property
    def n(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return ("-" if self.sign < 0 else "") + self.letters


def realize(w: PauliWord) -> np.ndarray:
    """Integer matrix of ``w``: the Kronecker product, qubit 1 leftmost."""
    m = reduce(np.kron, (_SINGLE[c] for c in w.letters))
    return w.sign * m


def commutes(a: PauliWord, b: PauliWord) -> bool:
    """Two words commute iff they clash (one X, other Z) at an even number of sites."""
    if a.n != b.n:
        raise ValueError(f"length mismatch: {a} vs {b}")
    clashes = sum(1 for p, q in zip(a.letters, b.letters) if {p, q} == {"X", "Z"})
    return clashes % 2 == 0


def commutes_by_matrix(a: PauliWord, b: PauliWord) -> bool:
    if a.n != b.n:
        raise ValueError(f"length mismatch: {a} vs {b}")
    ma, mb = realize(a), realize(b)
    return bool(np.array_equal(ma @ mb, mb @ ma))


@dataclass(frozen=True)
class OperatorSet:
    words: tuple[PauliWord, ...]
    expected_product_sign: int | None = None

    def __post_init__(self) -> None:
        words = tuple(PauliWord.parse(w) if isinstance(w, str) else w for w in self.words)
        if not words:
            raise ValueError("operator set is empty")
        if len({w.n for w in words}) != 1:
            raise ValueError("words have different lengths")
        object.__setattr__(self, "words", words)

    @classmethod
    def of(cls, *words: str | PauliWord, expected_product_sign: int | None = None) -> OperatorSet:
        return cls(tuple(words), expected_product_sign)

    @property
    def n(self) -> int:
        return self.words[0].n

    def pairwise_commuting(self) -> bool:
        return all(commutes(a, b) for a, b in itertools.combinations(self.words, 2))

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.words)) + "}"


def product_sign(s: OperatorSet) -> int:
    """Sign ``s`` with ``prod(words) = s * I``; raises if the product is not +-I."""
    if not s.pairwise_commuting():
        raise ValueError(f"words of {s} do not pairwise commute")
    prod = reduce(np.matmul, (realize(w) for w in s.words))
    eye = np.eye(prod.shape[0], dtype=np.int64)
    if np.array_equal(prod, eye):
        return 1
    if np.array_equal(prod, -eye):
        return -1
    raise ValueError(f"product of {s} is not proportional to the identity")


def _eigenlabel_key(label: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(0 if x == 1 else 1 for x in label)


def joint_eigenbasis(s: OperatorSet) -> list[tuple[ExactVector, tuple[int, ...]]]:
    """Common eigenvectors of a complete commuting set, with their eigenvalues.

    Each word ``W`` splits the space with the integer matrices ``I + W`` and
    ``I - W`` (twice the spectral projectors).  After all words the surviving
    products are ``2**k`` times the joint spectral projectors; their traces give
    the eigenspace dimensions exactly, and every one must be 1.  Any nonzero
    column of a rank-one product spans its eigenspace.

    The result is sorted by eigenvalue label with +1 before -1.
    """
    if not s.pairwise_commuting():
        raise ValueError(f"words of {s} do not pairwise commute")
    d = 2 ** s.n
    eye = np.eye(d, dtype=np.int64)
    branches: list[tuple[tuple[int, ...], np.ndarray]] = [((), eye)]
    for w in s.words:
        m = realize(w)
        nxt = []
        for label, p in branches:
            for lam in (1, -1):
                q = p @ (eye + lam * m)
                if q.any():
                    nxt.append((label + (lam,), q))
        branches = nxt
    scale = 2 ** len(s.words)
    out = []
    for label, p in branches:
        dim, rem = divmod(int(np.trace(p)), scale)
        if rem or dim != 1:
            raise ValueError(
                f"{s} is not a complete commuting set: eigenspace {label} has dimension {int(np.trace(p)) / scale}"
            )
        col = p[:, int(np.flatnonzero(np.abs(p).sum(axis=0))[0])]
        g = reduce(gcd, (int(x) for x in col))
        vec = ExactVector(tuple(int(x) // g for x in col)).ray()
        out.append((vec, label))
    out.sort(key=lambda item: _eigenlabel_key(item[1]))
    return out


def mermin_words(n: int) -> list[PauliWord]:
    """All-Z word plus every word obtained by swapping an even number of Z for X.

    Ordered by number of X, then by the X positions read as a binary number
    (Z = 0, X = 1).  For ``n = 3`` this is ZZZ, ZXX, XZX, XXZ.
    """
    if n < 2:
        raise ValueError(f"need at least 2 qubits, got {n}")
    words = []
    for k in range(0, n + 1, 2):
        for xs in itertools.combinations(range(n), k):
            words.append("".join("X" if i in xs else "Z" for i in range(n)))
    words.sort(key=lambda w: (w.count("X"), w.replace("Z", "0").replace("X", "1")))
    return [PauliWord(w) for w in words]


def factor_set(w: PauliWord) -> OperatorSet:
    """Single-site factors of ``w``, e.g. ZXX -> {ZII, IXI, IIX}."""
    n = w.n
    factors = []
    for i, c in enumerate(w.letters):
        if c == "I":
            raise ValueError(f"{w} has an identity factor; its single-site set is incomplete")
        factors.append(PauliWord("I" * i + c + "I" * (n - i - 1)))
    return OperatorSet(tuple(factors))


def defining_operator_sets(n: int) -> list[OperatorSet]:
    """The complete commuting sets whose joint eigenbases are the defining bases.

    One single-site factor set per Mermin word, then the Mermin words themselves.
    """
    words = mermin_words(n)
    sets = [factor_set(w) for w in words]
    whole = OperatorSet(tuple(words))
    try:
        sign = product_sign(whole)
    except ValueError:
        sign = None
    sets.append(OperatorSet(tuple(words), sign))
    return sets


def generate_defining_octads(n: int = 3) -> list[Context]:
    """Joint eigenbases of :func:`defining_operator_sets` as rank-one contexts.

    For three qubits these are the five octads of the 40-vector configuration.
    For other ``n`` the same recipe is applied; whether the resulting bases
    carry a parity contradiction is left to the caller.
    """
    if n < 2:
        raise ValueError(f"need at least 2 qubits, got {n}")
    return [Context.of_vectors(v for v, _ in joint_eigenbasis(s)) for s in defining_operator_sets(n)]


def operator_value_assignments(n: int = 3) -> list[dict[str, int]]:
    """Noncontextual +-1 values for single-site Z and X that reproduce every word.

    A word's value is the product of its factors' values; the Mermin set's
    product must equal ``product_sign`` (the operator identity).  Returns all
    consistent assignments over the ``2**(2n)`` candidates, which is empty when
    the identity carries a minus sign.
    """
    words = mermin_words(n)
    sign = product_sign(OperatorSet(tuple(words)))
    names = [f"{c}{i + 1}" for i in range(n) for c in "ZX"]
    hits = []
    for values in itertools.product((1, -1), repeat=len(names)):
        val = dict(zip(names, values))
        word_values = [
            int(np.prod([val[f"{c}{i + 1}"] for i, c in enumerate(w.letters)])) for w in words
        ]
        if int(np.prod(word_values)) == sign:
            hits.append(val)
    return hits
