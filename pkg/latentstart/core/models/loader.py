"""
Loading conditional mixture models from JSON documents.

A document looks like::

    {
      "name": "two-mode",
      "shape": [8, 8, 1],
      "labels": [
        {"name": "a", "components": [{"mean": 1.0, "scale": 1.0, "weight": 1.0}]},
        {"name": "b", "components": [{"mean": [[...]], "scale": 0.5, "weight": 1.0}],
         "embedding": {"style": [...], "content": [...]}}
      ]
    }

``mean`` is either a scalar (a constant grid) or a nested array of the
document's shape. Labels without an embedding get the extractor embedding of
their weighted-mean prototype.
"""
import json
import logging
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ...errors import (
    ConfigError,
    ErrorCode,
    LatentStartError,
    config_error_from_validation,
)
from ...types import ConditionEmbedding, GridShape, shape_of
from ..schedule import NoiseSchedule
from .gaussian import (
    ConditionalMixtureModel,
    ConditionLabel,
    GaussianComponent,
    GaussianMixture,
    make_conditional_mixture,
)

logger = logging.getLogger(__name__)


class ComponentDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    mean: Union[float, List]
    scale: float = Field(gt=0)
    weight: float = Field(default=1.0, gt=0)


class EmbeddingDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    style: List[float]
    content: List[float]


class LabelDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    components: List[ComponentDocument] = Field(min_length=1)
    embedding: Optional[EmbeddingDocument] = None


class ModelDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = "model"
    shape: List[int] = Field(min_length=3, max_length=3)
    labels: List[LabelDocument] = Field(default_factory=list)
    normalize_weights: bool = False


def _component(doc: ComponentDocument, shape: GridShape) -> GaussianComponent:
    if isinstance(doc.mean, (int, float)):
        mean = np.full(shape, float(doc.mean))
    else:
        mean = np.asarray(doc.mean, dtype=np.float64)
        if mean.ndim == 2:
            mean = mean[:, :, np.newaxis]
        if mean.shape != shape:
            raise ConfigError(
                f"component mean has shape {mean.shape}, document shape is {shape}",
                code=ErrorCode.MODEL_DOCUMENT,
            )
    return GaussianComponent(mean, doc.scale, doc.weight)


def build_model(document: ModelDocument, schedule: NoiseSchedule) -> ConditionalMixtureModel:
    """Turn a validated document into a conditional mixture model."""
    shape = shape_of(document.shape)
    labels = []
    for label in document.labels:
        components = [_component(c, shape) for c in label.components]
        embedding = None
        if label.embedding is not None:
            embedding = ConditionEmbedding(
                np.asarray(label.embedding.style),
                np.asarray(label.embedding.content),
                label=label.name,
            )
        mixture = GaussianMixture(components, normalize=document.normalize_weights)
        labels.append(ConditionLabel(label.name, mixture, embedding))
    return make_conditional_mixture(labels, schedule)


def parse_model(text: str, schedule: NoiseSchedule) -> ConditionalMixtureModel:
    """
    Parse a model document from JSON text.

    Raises:
        ConfigError: malformed JSON, unknown keys or wrong types.
        ModelError: the document describes an invalid mixture.
    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"model document is not valid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})",
            code=ErrorCode.MODEL_DOCUMENT,
        ) from exc
    try:
        document = ModelDocument.model_validate(payload)
    except ValidationError as exc:
        raise config_error_from_validation(exc, "model document") from exc
    return build_model(document, schedule)


def load_model(path: Union[str, Path], schedule: NoiseSchedule) -> ConditionalMixtureModel:
    """Read and parse the model document at ``path``."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"model file not found: {path}", code=ErrorCode.FILE_NOT_FOUND)
    try:
        model = parse_model(path.read_text(encoding="utf-8"), schedule)
    except LatentStartError as exc:
        exc.hints.append(f"while loading {path}")
        raise
    logger.info("loaded model %s with labels %s", path, model.label_names)
    return model
