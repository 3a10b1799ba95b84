from .object_factory import ObjectFactory

from .file_operations import FileOperations

from .miscellaneous import get_percentage_and_amount_string
from .miscellaneous import format_ratio

from .matrix_market import read_matrix
from .matrix_market import write_matrix
from .matrix_market import read_index_vector
from .matrix_market import write_index_vector
