# Python
from pathlib import Path

# 3rd Party
import numpy as np

# 1st Party
from ..components import FileOperations
from ..components import read_matrix, write_matrix
from ..components import read_index_vector, write_index_vector
from ..linalg import matrix_core
from ..linalg.dataclasses_and_types import MatrixMarketParseError
from ..cur.dataclasses_and_types import CurDecomposition, CurDiagnostics


""" On-disk layout of a decomposition

    C.mtx, U.mtx, R.mtx                         dense arrays, 17 significant digits
    column_indices.mtx, row_indices.mtx         1-based integer column vectors
    column_scales.mtx, row_scales.mtx           sampling scales folded into U
"""

FILENAME_C = "C.mtx"
FILENAME_U = "U.mtx"
FILENAME_R = "R.mtx"
FILENAME_COLUMN_INDICES = "column_indices.mtx"
FILENAME_ROW_INDICES = "row_indices.mtx"
FILENAME_COLUMN_SCALES = "column_scales.mtx"
FILENAME_ROW_SCALES = "row_scales.mtx"


def write_decomposition(path_to_dir: Path, decomposition: CurDecomposition):
    path_to_dir = FileOperations.ensure_directory(path_to_dir)

    write_matrix(path_to_dir / FILENAME_C, decomposition.c_matrix)
    write_matrix(path_to_dir / FILENAME_U, decomposition.u_matrix)
    write_matrix(path_to_dir / FILENAME_R, decomposition.r_matrix)

    write_index_vector(path_to_dir / FILENAME_COLUMN_INDICES, decomposition.column_indices)
    write_index_vector(path_to_dir / FILENAME_ROW_INDICES, decomposition.row_indices)

    write_matrix(path_to_dir / FILENAME_COLUMN_SCALES, np.asarray(decomposition.diagnostics.column_scales))
    write_matrix(path_to_dir / FILENAME_ROW_SCALES, np.asarray(decomposition.diagnostics.row_scales))


def _read_dense(path_to_file: Path) -> np.ndarray:
    return matrix_core.to_dense(read_matrix(path_to_file), label="decomposition artifact")


def read_decomposition(path_to_dir: Path, k: int) -> CurDecomposition:
    """ Loads what write_decomposition() wrote. Scale files are optional.

    Raises:
        MatrixMarketParseError: a file is missing or malformed, or the pieces do not fit together.
    """
    path_to_dir = Path(path_to_dir)

    c_matrix = _read_dense(path_to_dir / FILENAME_C)
    u_matrix = _read_dense(path_to_dir / FILENAME_U)
    r_matrix = _read_dense(path_to_dir / FILENAME_R)
    column_indices = read_index_vector(path_to_dir / FILENAME_COLUMN_INDICES)
    row_indices = read_index_vector(path_to_dir / FILENAME_ROW_INDICES)

    if c_matrix.shape[1] != column_indices.shape[0] or r_matrix.shape[0] != row_indices.shape[0]:
        raise MatrixMarketParseError(f"'{path_to_dir}': index files do not match the shapes of C and R")

    diagnostics = CurDiagnostics(rank=k)
    for filename, attribute in ((FILENAME_COLUMN_SCALES, "column_scales"), (FILENAME_ROW_SCALES, "row_scales")):
        if (path_to_dir / filename).exists():
            setattr(diagnostics, attribute, _read_dense(path_to_dir / filename)[:, 0].tolist())

    return CurDecomposition(
        column_indices=column_indices,
        row_indices=row_indices,
        c_matrix=c_matrix,
        u_matrix=u_matrix,
        r_matrix=r_matrix,
        k=k,
        diagnostics=diagnostics,
    )
