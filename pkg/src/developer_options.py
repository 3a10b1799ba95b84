# Python
import logging
from enum import Enum, auto


# 3rd Party


# 1st Party


class DeveloperOptions():
    """ Developer options for OptimalCur """


    """ Major options """

    # Version is represented as a string so we can graduate to x.y.z versioning in the near-future
    version: str = "0.3.0"

    class ExecutionMode(Enum):
        # Standard internal release. Should override all debugging related options.
        ReleaseInternal = auto()

        ReleaseExternal = auto()

        # DEBUG-level logging, e.g. the stage banners of every pipeline
        PipelineDebugging = auto()

    execution_mode = ExecutionMode.ReleaseInternal
    #execution_mode = ExecutionMode.PipelineDebugging

    @classmethod
    def is_release(cls):
        return cls.execution_mode == cls.ExecutionMode.ReleaseExternal

    # 'bench' can run suite entries on a thread pool. numpy/scipy release the GIL for the heavy kernels, so threads are
    # enough. Setting this flag to false forces every suite to run sequentially, which eases debugging.
    bench_concurrency_enabled = True
    #bench_concurrency_enabled = False

    @classmethod
    def is_bench_concurrency_enabled(cls):
        return cls.is_release() or cls.bench_concurrency_enabled


    # Report schema shared by 'decompose', 'verify' and 'bench'. Bump alongside any RunReport field change.
    # MAJOR version when you make incompatible API changes,
    # MINOR version when you add functionality in a backwards compatible manner, and
    # PATCH version when you make backwards compatible bug fixes.
    json_schema_version = "1.0.0"


    logging_level = logging.INFO
    #logging_level = logging.DEBUG

    @classmethod
    def get_logging_level(cls):
        if cls.is_release():
            return logging.INFO
        elif cls.execution_mode == cls.ExecutionMode.PipelineDebugging:
            return logging.DEBUG
        else:
            return cls.logging_level

    """ Minor options """

    # Environment variable consulted for the default '--out-dir'
    out_dir_environment_variable = "OPTIMAL_CUR_OUT_DIR"

    # Rows per block when a sparse A is compared against a dense CUR product during evaluation.
    evaluation_row_block_size = 512

    # Inputs with at most this many entries are densified for evaluation, larger ones are compared block by block and
    # their optimum comes from ARPACK.
    evaluation_dense_entry_limit = 50_000_000
