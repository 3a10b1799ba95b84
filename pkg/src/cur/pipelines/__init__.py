from .cur_pipeline_base import CurPipelineBase
from .cur_pipeline_base import IndexSelection
from .cur_pipeline_base import projected_row_solve
from .cur_pipeline_linear_time import CurPipelineLinearTime
from .cur_pipeline_input_sparsity import CurPipelineInputSparsity
from .cur_pipeline_deterministic import CurPipelineDeterministic
