# Python
from __future__ import annotations

import logging
from enum import Enum
from pathlib import Path
from dataclasses import dataclass
from typing import Optional

# 3rd Party
import numpy as np
import scipy.sparse as sps

# 1st Party
from .file_operations import FileOperations
from ..linalg import matrix_core
from ..linalg.dataclasses_and_types import MatrixMarketParseError


""" Matrix Market exchange format

Reads both layouts ('coordinate' for sparse, 'array' for dense) with 'real', 'integer' or 'pattern' entries and
'general', 'symmetric' or 'skew-symmetric' storage. Indices in the file are 1-based, in memory they are 0-based.

Writes 'general' storage only, with every real value printed to 17 significant digits, so that a written file reads
back bit-exact and identical matrices always produce identical files.
"""


BANNER = "%%MatrixMarket"


class Layout(Enum):
    Coordinate = "coordinate"
    Array = "array"


class Field(Enum):
    Real = "real"
    Integer = "integer"
    Pattern = "pattern"


class Symmetry(Enum):
    General = "general"
    Symmetric = "symmetric"
    SkewSymmetric = "skew-symmetric"


@dataclass(frozen=True)
class MatrixMarketHeader():
    layout: Layout
    field: Field
    symmetry: Symmetry

    def banner(self) -> str:
        return f"{BANNER} matrix {self.layout.value} {self.field.value} {self.symmetry.value}"


def _parse_banner(line: str) -> MatrixMarketHeader:
    tokens = line.strip().split()
    if len(tokens) != 5 or tokens[0] != BANNER or tokens[1].lower() != "matrix":
        raise MatrixMarketParseError(f"expected '{BANNER} matrix <layout> <field> <symmetry>', got '{line.strip()}'", 1)

    layout, field, symmetry = (token.lower() for token in tokens[2:])
    try:
        header = MatrixMarketHeader(Layout(layout), Field(field), Symmetry(symmetry))
    except ValueError as error:
        raise MatrixMarketParseError(f"unsupported banner '{line.strip()}': {error}", 1) from error

    if header.layout == Layout.Array and header.field == Field.Pattern:
        raise MatrixMarketParseError("'pattern' entries require the coordinate layout", 1)

    return header


def _parse_numbers(tokens: list[str], count: int, line_number: int, converter=float) -> list:
    if len(tokens) != count:
        raise MatrixMarketParseError(f"expected {count} values, found {len(tokens)}", line_number)
    try:
        return [converter(token) for token in tokens]
    except ValueError as error:
        raise MatrixMarketParseError(f"malformed number: {error}", line_number) from error


def _content_lines(text: str):
    """ Yields (line number, tokens) for every line after the banner that is neither a comment nor blank. """
    for line_number, line in enumerate(text.splitlines(), start=1):
        if line_number == 1:
            continue
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        yield line_number, stripped.split()


def _check_size(sizes: list[int], line_number: int):
    if any(size < 0 for size in sizes):
        raise MatrixMarketParseError(f"size line holds a negative value: {' '.join(map(str, sizes))}", line_number)


def _check_square(header: MatrixMarketHeader, m: int, n: int, line_number: int):
    if header.symmetry != Symmetry.General and m != n:
        raise MatrixMarketParseError(f"{header.symmetry.value} storage requires a square matrix, got {m} x {n}",
                                     line_number)


def _read_coordinate(header: MatrixMarketHeader, lines) -> sps.csr_array:
    try:
        line_number, tokens = next(lines)
    except StopIteration:
        raise MatrixMarketParseError("missing size line")

    m, n, entries = _parse_numbers(tokens, 3, line_number, int)
    _check_size([m, n, entries], line_number)
    _check_square(header, m, n, line_number)

    values_per_line = 2 if header.field == Field.Pattern else 3
    rows = np.empty(entries, dtype=np.int64)
    cols = np.empty(entries, dtype=np.int64)
    values = np.ones(entries)

    count = 0
    for line_number, tokens in lines:
        if count == entries:
            raise MatrixMarketParseError(f"more than the {entries} declared entries", line_number)

        i, j = _parse_numbers(tokens[:2], 2, line_number, int)
        if not (1 <= i <= m and 1 <= j <= n):
            raise MatrixMarketParseError(f"index ({i}, {j}) outside the {m} x {n} matrix", line_number)
        if header.symmetry != Symmetry.General and i < j:
            raise MatrixMarketParseError(f"entry ({i}, {j}) above the diagonal of {header.symmetry.value} storage",
                                         line_number)
        if header.symmetry == Symmetry.SkewSymmetric and i == j:
            raise MatrixMarketParseError("skew-symmetric storage has no diagonal entries", line_number)

        if values_per_line == 3:
            values[count] = _parse_numbers(tokens[2:], 1, line_number)[0]
        elif len(tokens) != 2:
            raise MatrixMarketParseError(f"pattern entries take 2 values, found {len(tokens)}", line_number)

        rows[count] = i - 1
        cols[count] = j - 1
        count += 1

    if count != entries:
        raise MatrixMarketParseError(f"declared {entries} entries, found {count}")

    if header.symmetry != Symmetry.General:
        off_diagonal = rows != cols
        sign = -1.0 if header.symmetry == Symmetry.SkewSymmetric else 1.0
        rows, cols, values = (
            np.concatenate([rows, cols[off_diagonal]]),
            np.concatenate([cols, rows[off_diagonal]]),
            np.concatenate([values, sign * values[off_diagonal]]),
        )

    # Duplicate coordinates are summed
    return sps.coo_array((values, (rows, cols)), shape=(m, n)).tocsr()


def _read_array(header: MatrixMarketHeader, lines) -> np.ndarray:
    try:
        line_number, tokens = next(lines)
    except StopIteration:
        raise MatrixMarketParseError("missing size line")

    m, n = _parse_numbers(tokens, 2, line_number, int)
    _check_size([m, n], line_number)
    _check_square(header, m, n, line_number)

    values = []
    for line_number, tokens in lines:
        values.append(_parse_numbers(tokens, 1, line_number)[0])

    # Column-major, lower triangle only for the symmetric flavors
    if header.symmetry == Symmetry.General:
        positions = [(i, j) for j in range(n) for i in range(m)]
    elif header.symmetry == Symmetry.Symmetric:
        positions = [(i, j) for j in range(n) for i in range(j, m)]
    else:
        positions = [(i, j) for j in range(n) for i in range(j + 1, m)]

    if len(values) != len(positions):
        raise MatrixMarketParseError(f"expected {len(positions)} values for a {m} x {n} array, found {len(values)}")

    dense = np.zeros((m, n))
    if positions:
        row_index, column_index = (np.array(axis) for axis in zip(*positions))
        dense[row_index, column_index] = values
        if header.symmetry == Symmetry.Symmetric:
            dense[column_index, row_index] = values
        elif header.symmetry == Symmetry.SkewSymmetric:
            dense[column_index, row_index] = -np.asarray(values)

    return dense


def read_matrix(path_to_file: Path) -> matrix_core.Matrix:
    """ Reads a Matrix Market file. Coordinate files come back as CSR arrays, array files as dense arrays.

    Raises:
        MatrixMarketParseError: malformed banner, size line, entry or index, with the offending line number.
    """
    try:
        text = FileOperations.read_utf8_string(path_to_file)
    except (OSError, UnicodeDecodeError) as error:
        raise MatrixMarketParseError(f"cannot read '{path_to_file}': {error}") from error

    first_line = text.split("\n", 1)[0]
    header = _parse_banner(first_line)
    lines = _content_lines(text)

    if header.layout == Layout.Coordinate:
        matrix = _read_coordinate(header, lines)
    else:
        matrix = _read_array(header, lines)

    logging.debug(f"Read {header.banner()} of shape {matrix.shape} from '{path_to_file}'")
    return matrix


def _format_real(value: float) -> str:
    return f"{value:.17g}"


def write_matrix(path_to_file: Path, M: matrix_core.Matrix, comment: Optional[str] = None):
    """ Writes M in general storage: coordinate layout for sparse M, array layout for dense M. """
    lines = []

    if matrix_core.is_sparse(M):
        coordinates = sps.coo_array(M)
        coordinates.sum_duplicates()
        order = np.lexsort((coordinates.row, coordinates.col))
        lines.append(MatrixMarketHeader(Layout.Coordinate, Field.Real, Symmetry.General).banner())
        if comment:
            lines.append(f"% {comment}")
        lines.append(f"{M.shape[0]} {M.shape[1]} {coordinates.nnz}")
        for i, j, value in zip(coordinates.row[order], coordinates.col[order], coordinates.data[order]):
            lines.append(f"{i + 1} {j + 1} {_format_real(value)}")
    else:
        dense = np.asarray(M, dtype=np.float64)
        if dense.ndim == 1:
            dense = dense[:, np.newaxis]
        lines.append(MatrixMarketHeader(Layout.Array, Field.Real, Symmetry.General).banner())
        if comment:
            lines.append(f"% {comment}")
        lines.append(f"{dense.shape[0]} {dense.shape[1]}")
        lines.extend(_format_real(value) for value in dense.ravel(order="F"))

    FileOperations.write_utf8_string(path_to_file, "\n".join(lines) + "\n")


def write_index_vector(path_to_file: Path, indices: np.ndarray, comment: Optional[str] = None):
    """ Writes 0-based indices as a 1-based integer column vector. """
    lines = [MatrixMarketHeader(Layout.Array, Field.Integer, Symmetry.General).banner()]
    if comment:
        lines.append(f"% {comment}")
    lines.append(f"{len(indices)} 1")
    lines.extend(str(int(index) + 1) for index in indices)

    FileOperations.write_utf8_string(path_to_file, "\n".join(lines) + "\n")


def read_index_vector(path_to_file: Path) -> np.ndarray:
    """ Reads a 1-based index column vector written by write_index_vector() and returns 0-based indices. """
    vector = read_matrix(path_to_file)
    if matrix_core.is_sparse(vector):
        vector = vector.toarray()
    if vector.ndim != 2 or vector.shape[1] != 1:
        raise MatrixMarketParseError(f"'{path_to_file}' does not hold a column vector, shape {vector.shape}")

    indices = vector[:, 0]
    if np.any(indices < 1) or np.any(indices != np.round(indices)):
        raise MatrixMarketParseError(f"'{path_to_file}' holds non-positive or fractional indices")

    return indices.astype(np.int64) - 1
