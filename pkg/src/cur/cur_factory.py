# Python
from __future__ import annotations

import dataclasses
from typing import TYPE_CHECKING, Optional

# 3rd Party
import numpy as np

# 1st Party
from ..components import ObjectFactory
from ..linalg import matrix_core
from .dataclasses_and_types import CurVariant, CurDecomposition
from .pipelines import CurPipelineBase
from .pipelines import CurPipelineLinearTime
from .pipelines import CurPipelineInputSparsity
from .pipelines import CurPipelineDeterministic

if TYPE_CHECKING:
    from ..cur_processing_config import CurConfig


def create_cur_pipeline_factory() -> ObjectFactory[CurPipelineBase]:
    factory = ObjectFactory[CurPipelineBase]()
    factory.register_builder(CurVariant.Linear, CurPipelineLinearTime)
    factory.register_builder(CurVariant.Sparse, CurPipelineInputSparsity)
    factory.register_builder(CurVariant.Deterministic, CurPipelineDeterministic)
    return factory


_pipeline_factory = create_cur_pipeline_factory()


def create_cur_pipeline(config: CurConfig) -> CurPipelineBase:
    return _pipeline_factory.create(config.variant, config=config)


def _with_variant(config: CurConfig, variant: CurVariant) -> CurConfig:
    if config.variant == variant:
        return config
    return dataclasses.replace(config, variant=variant)


def cur_linear_time(A: matrix_core.Matrix, config: CurConfig,
                    rng: Optional[np.random.Generator] = None) -> CurDecomposition:
    return create_cur_pipeline(_with_variant(config, CurVariant.Linear)).decompose(A, rng)


def cur_input_sparsity(A: matrix_core.Matrix, config: CurConfig,
                       rng: Optional[np.random.Generator] = None) -> CurDecomposition:
    return create_cur_pipeline(_with_variant(config, CurVariant.Sparse)).decompose(A, rng)


def cur_deterministic(A: matrix_core.Matrix, config: CurConfig) -> CurDecomposition:
    return create_cur_pipeline(_with_variant(config, CurVariant.Deterministic)).decompose(A)
