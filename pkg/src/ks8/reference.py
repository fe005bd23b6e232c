"""Reference configuration for three qubits, in compact vector notation.

``-`` negates the following digit, so ``100-10-1-10`` is ``(1,0,0,-1,0,-1,-1,0)``.
Entries name rays; :func:`vec` turns one into its canonical vector.
"""

from __future__ import annotations

from ks8.exact_linalg import Context, ExactVector
from ks8.ks_engine import PlaneSpec

# Joint eigenbases of the five complete commuting sets, signs as usually
# printed (compare as rays).
DEFINING_OCTADS: tuple[tuple[str, ...], ...] = (
    ("20000000", "02000000", "00200000", "00020000", "00002000", "00000200", "00000020", "00000002"),
    ("11110000", "11-1-10000", "1-11-10000", "1-1-110000", "00001111", "000011-1-1", "00001-11-1", "00001-1-11"),
    ("11001100", "1100-1-100", "1-1001-100", "1-100-1100", "00110011", "001100-1-1", "001-1001-1", "001-100-11"),
    ("10101010", "1010-10-10", "10-1010-10", "10-10-1010", "01010101", "01010-10-1", "010-1010-1", "010-10-101"),
    ("100101-10", "100-10110", "10010-110", "100-10-1-10", "0110-1001", "01-101001", "0-1101001", "0-1-10-1001"),
)

# Eleven octads whose union covers 36 of the 40 vectors, each an even number
# of times: the state-independent parity proof.
PARITY_OCTADS: tuple[tuple[str, ...], ...] = (
    ("02000000", "00200000", "00002000", "00000002", "100101-10", "100-10110", "10010-110", "100-10-1-10"),
    ("11110000", "1-1-110000", "000011-1-1", "00001-11-1", "100-10110", "100-10-1-10", "01-101001", "01-10-100-1"),
    ("1100-1-100", "1-1001-100", "00110011", "001-100-11", "100101-10", "100-10110", "01-101001", "0110100-1"),
    ("10101010", "10-10-1010", "01010-10-1", "010-1010-1", "100101-10", "100-10-1-10", "0110-1001", "01-101001"),
    ("100101-10", "100-10110", "10010-110", "100-10-1-10", "0110-1001", "01-101001", "01-10-100-1", "0110100-1"),
    ("00002000", "00000200", "00000020", "00000002", "11110000", "11-1-10000", "1-11-10000", "1-1-110000"),
    ("00200000", "00020000", "00000020", "00000002", "11001100", "1100-1-100", "1-1001-100", "1-100-1100"),
    ("02000000", "00020000", "00000200", "00000002", "10101010", "1010-10-10", "10-1010-10", "10-10-1010"),
    ("1-11-10000", "1-1-110000", "00001-11-1", "00001-1-11", "11001100", "1100-1-100", "00110011", "001100-1-1"),
    ("11-1-10000", "1-1-110000", "000011-1-1", "00001-1-11", "10101010", "1010-10-10", "01010101", "01010-10-1"),
    ("1100-1-100", "1-100-1100", "001100-1-1", "001-100-11", "10101010", "10-1010-10", "01010101", "010-1010-1"),
)

# The four mutually orthogonal vectors left out of every parity octad.
EXCLUDED_QUADRUPLE: tuple[str, ...] = ("20000000", "00001111", "001-1001-1", "010-10-101")

# Lines of mutually orthogonal vectors; adjacent vectors on a line span a plane.
PLANE_LINES: tuple[tuple[str, ...], ...] = (
    ("02000000", "00000002", "00000020"),
    ("11110000", "1-1-110000", "00001-1-11"),
    ("1-1001-100", "1100-1-100", "001100-1-1"),
    ("10-10-1010", "10101010", "01010101"),
    ("10010-110", "100101-10", "01-101001", "0-1101001"),
    ("0-1-10-1001", "100-10110", "100-10-1-10", "0110-1001"),
)

REFERENCE_STATE = "100-10-1-10"

# 2 * state = sum(sign * vector) for each four-vector context of the
# state-specific proof.
STATE_EXPANSIONS: tuple[tuple[tuple[int, str], ...], ...] = (
    ((1, "1010-10-10"), (1, "10-1010-10"), (-1, "00020000"), (-1, "00000200")),
    ((1, "1100-1-100"), (1, "1-1001-100"), (-1, "00020000"), (-1, "00000020")),
    ((1, "11-1-10000"), (1, "1-11-10000"), (-1, "00000200"), (-1, "00000020")),
    ((1, "11-1-10000"), (1, "00001-1-11"), (1, "1010-10-10"), (-1, "01010101")),
    ((1, "1-11-10000"), (1, "00001-1-11"), (1, "1100-1-100"), (-1, "00110011")),
    ((1, "1100-1-100"), (1, "1-1001-100"), (1, "001-100-11"), (-1, "00110011")),
    ((1, "1100-1-100"), (1, "001-100-11"), (1, "10-1010-10"), (-1, "01010101")),
)


def vec(s: str) -> ExactVector:
    return ExactVector.parse(s).ray()


def defining_octads() -> list[Context]:
    return [Context.of_vectors(vec(s) for s in block) for block in DEFINING_OCTADS]


def parity_octads() -> list[Context]:
    return [Context.of_vectors(vec(s) for s in col) for col in PARITY_OCTADS]


def excluded_quadruple() -> tuple[ExactVector, ...]:
    return tuple(vec(s) for s in EXCLUDED_QUADRUPLE)


def plane_spec() -> PlaneSpec:
    return PlaneSpec.parse(PLANE_LINES)


def reference_state() -> ExactVector:
    return vec(REFERENCE_STATE)
