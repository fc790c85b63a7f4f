"""
Analytic Gaussian and Gaussian-mixture score models.

A component N(mu, s^2 I) noised to level ᾱ has marginal
N(sqrt(ᾱ) mu, (ᾱ s^2 + 1 - ᾱ) I), so its ε-prediction is
sqrt(1 - ᾱ) (z - sqrt(ᾱ) mu) / (ᾱ s^2 + 1 - ᾱ). A mixture weights those
by the posterior responsibilities of its components.
"""
import logging
from dataclasses import dataclass
from typing import List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import logsumexp, softmax

from ...errors import ErrorCode, ModelError, ShapeError
from ...types import ConditionEmbedding, GridShape, Injection, as_grid
from ...utils import SeededRng
from ..schedule import NoiseSchedule
from .base import ScoreModel, check_alpha_bar
from .features import label_embedding

logger = logging.getLogger(__name__)

WEIGHT_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class GaussianComponent:
    """Isotropic Gaussian N(mean, scale^2 I) with a mixture weight."""
    mean: np.ndarray
    scale: float
    weight: float = 1.0

    def __post_init__(self):
        mean = as_grid(self.mean, "component mean")
        mean.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        if not np.isfinite(self.scale) or self.scale <= 0:
            raise ModelError(f"component scale must be positive, got {self.scale}")
        if not np.isfinite(self.weight) or self.weight <= 0:
            raise ModelError(f"component weight must be positive, got {self.weight}")


class GaussianMixture:
    """Finite mixture of isotropic Gaussians sharing one grid shape."""

    def __init__(self, components: Sequence[GaussianComponent], normalize: bool = False):
        components = list(components)
        if not components:
            raise ModelError("a mixture needs at least one component")
        shape = components[0].mean.shape
        for component in components[1:]:
            if component.mean.shape != shape:
                raise ShapeError(
                    f"component means differ in shape: {shape} vs {component.mean.shape}"
                )

        weights = np.array([c.weight for c in components], dtype=np.float64)
        if normalize:
            weights = weights / weights.sum()
        elif abs(weights.sum() - 1.0) > WEIGHT_TOLERANCE:
            raise ModelError(
                f"mixture weights must sum to 1, got {weights.sum():.12g}",
                hints=["pass normalize=True to rescale the weights"],
            )

        self.components = [
            GaussianComponent(c.mean, c.scale, float(w)) for c, w in zip(components, weights)
        ]
        self.means = np.stack([c.mean for c in components])
        self.scales = np.array([c.scale for c in components], dtype=np.float64)
        self.weights = weights

    @property
    def shape(self) -> GridShape:
        return tuple(self.means.shape[1:])

    def __len__(self) -> int:
        return len(self.components)

    def _log_terms(self, z: np.ndarray, abar: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Per-component (log w_k p_k(z), z - sqrt(ᾱ) mu_k, marginal variance)."""
        variances = abar * self.scales ** 2 + (1.0 - abar)
        diffs = z[np.newaxis] - np.sqrt(abar) * self.means
        sq = np.sum(diffs ** 2, axis=(1, 2, 3))
        n = z.size
        log_terms = (
            np.log(self.weights)
            - 0.5 * n * np.log(2.0 * np.pi * variances)
            - sq / (2.0 * variances)
        )
        return log_terms, diffs, variances

    def responsibilities(self, z: np.ndarray, abar: float) -> np.ndarray:
        """Posterior probability of each component given the noised latent."""
        log_terms, _, _ = self._log_terms(z, check_alpha_bar(abar))
        return softmax(log_terms)

    def eps(self, z: np.ndarray, abar: float) -> np.ndarray:
        abar = check_alpha_bar(abar)
        log_terms, diffs, variances = self._log_terms(z, abar)
        resp = softmax(log_terms)
        return np.sqrt(1.0 - abar) * np.tensordot(resp / variances, diffs, axes=1)

    def log_density(self, z: np.ndarray, abar: float) -> float:
        log_terms, _, _ = self._log_terms(z, check_alpha_bar(abar))
        return float(logsumexp(log_terms))

    def prototype(self) -> np.ndarray:
        """Weighted mean of the component means."""
        return np.tensordot(self.weights, self.means, axes=1)

    def draw(self, rng: SeededRng) -> np.ndarray:
        """One sample of the clean (ᾱ = 1) distribution."""
        k = int(rng.generator.choice(len(self.components), p=self.weights))
        return self.means[k] + self.scales[k] * rng.normal(self.shape)

    def to_dict(self) -> dict:
        return {
            "components": [
                {"mean": c.mean.tolist(), "scale": c.scale, "weight": c.weight}
                for c in self.components
            ]
        }


class GaussianMixtureModel(ScoreModel):
    """Unconditional model; the condition is accepted and ignored."""

    def __init__(self, mixture: GaussianMixture, schedule: NoiseSchedule):
        super().__init__(mixture.shape, schedule)
        self.mixture = mixture

    def eps_from_alpha_bar(self, z, abar, cond=None):
        return self.mixture.eps(self.check_grid(z), abar)

    def log_density(self, z, abar, cond=None):
        return self.mixture.log_density(self.check_grid(z), abar)


def isotropic_model(
    mean: np.ndarray, scale: float, schedule: NoiseSchedule
) -> GaussianMixtureModel:
    """Single-Gaussian model N(mean, scale^2 I)."""
    return GaussianMixtureModel(GaussianMixture([GaussianComponent(mean, scale)]), schedule)


@dataclass(frozen=True, eq=False)
class ConditionLabel:
    """A registered condition: its mixture and the embedding it answers to."""
    name: str
    mixture: GaussianMixture
    embedding: Optional[ConditionEmbedding] = None

    def resolved_embedding(self) -> ConditionEmbedding:
        if self.embedding is not None:
            return self.embedding
        try:
            return label_embedding(self.mixture.prototype(), label=self.name)
        except ShapeError as exc:
            raise ModelError(
                f"cannot derive an embedding for label {self.name!r}: {exc.message}",
                code=ErrorCode.INVALID_EMBEDDING,
                hints=["give the label an explicit embedding"],
            ) from exc


class ConditionalMixtureModel(ScoreModel):
    """
    Model whose condition selects one registered mixture.

    A condition is matched to the nearest registered embedding (L2 over the
    slots its injection mode reads, lower label index on ties). The null
    condition, or no condition, pools every label with equal weight.
    """

    def __init__(self, labels: Sequence[ConditionLabel], schedule: NoiseSchedule):
        labels = list(labels)
        if not labels:
            raise ModelError("conditional model needs at least one label",
                             code=ErrorCode.EMPTY_REGISTRY)
        shape = labels[0].mixture.shape
        for label in labels[1:]:
            if label.mixture.shape != shape:
                raise ShapeError(
                    f"label {label.name!r} has shape {label.mixture.shape}, expected {shape}"
                )
        super().__init__(shape, schedule)

        self.labels = labels
        self.embeddings = [label.resolved_embedding() for label in labels]
        style_dims = {e.style_dim for e in self.embeddings}
        content_dims = {e.content_dim for e in self.embeddings}
        if len(style_dims) != 1 or len(content_dims) != 1:
            raise ModelError("registered embeddings differ in slot dimensions",
                             code=ErrorCode.INVALID_EMBEDDING)
        self._full_table = np.stack([np.concatenate([e.style_slot, e.content_slot])
                                     for e in self.embeddings])
        self._style_table = np.stack([e.style_slot for e in self.embeddings])

        pooled = []
        for label in labels:
            for component in label.mixture.components:
                pooled.append(GaussianComponent(
                    component.mean, component.scale, component.weight / len(labels)
                ))
        self.pooled = GaussianMixture(pooled, normalize=True)

    @property
    def label_names(self) -> List[str]:
        return [label.name for label in self.labels]

    @property
    def style_dim(self) -> int:
        return self._style_table.shape[1]

    @property
    def content_dim(self) -> int:
        return self._full_table.shape[1] - self._style_table.shape[1]

    def embedding_of(self, name: str) -> ConditionEmbedding:
        for label, embedding in zip(self.labels, self.embeddings):
            if label.name == name:
                return embedding
        raise ModelError(f"unknown label {name!r}; registered: {self.label_names}",
                         code=ErrorCode.INVALID_EMBEDDING)

    def null_condition(self) -> ConditionEmbedding:
        return ConditionEmbedding.null(self.style_dim, self.content_dim)

    def match(self, cond: Optional[ConditionEmbedding]) -> Optional[int]:
        """Index of the label ``cond`` selects, or None for the pooled mixture."""
        if cond is None or cond.null_flag:
            return None
        if cond.style_dim != self.style_dim or cond.content_dim != self.content_dim:
            raise ModelError(
                f"condition slots ({cond.style_dim}, {cond.content_dim}) do not match "
                f"registered slots ({self.style_dim}, {self.content_dim})",
                code=ErrorCode.INVALID_EMBEDDING,
            )
        table = self._style_table if cond.injection is Injection.STYLE else self._full_table
        distances = np.linalg.norm(table - cond.vector(), axis=1)
        return int(np.argmin(distances))

    def mixture_for(self, cond: Optional[ConditionEmbedding]) -> GaussianMixture:
        index = self.match(cond)
        return self.pooled if index is None else self.labels[index].mixture

    def eps_from_alpha_bar(self, z, abar, cond=None):
        return self.mixture_for(cond).eps(self.check_grid(z), abar)

    def log_density(self, z, abar, cond=None):
        return self.mixture_for(cond).log_density(self.check_grid(z), abar)


LabelSource = Union[Sequence[ConditionLabel], Mapping[str, Sequence[GaussianComponent]]]


def make_conditional_mixture(
    labels: LabelSource, schedule: NoiseSchedule
) -> ConditionalMixtureModel:
    """
    Build a conditional model from labels or a ``name -> components`` mapping.

    Raises:
        ModelError: empty registry (EMPTY_REGISTRY) or invalid components.
    """
    if isinstance(labels, Mapping):
        labels = [ConditionLabel(name, GaussianMixture(components))
                  for name, components in labels.items()]
    labels = list(labels)
    if not labels:
        raise ModelError("conditional model needs at least one label",
                         code=ErrorCode.EMPTY_REGISTRY)
    model = ConditionalMixtureModel(labels, schedule)
    logger.debug("registered %d labels: %s", len(labels), ", ".join(model.label_names))
    return model
