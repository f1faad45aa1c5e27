"""Text embeddings: unit-norm vectors, a hash-based offline provider, a wire client."""

from __future__ import annotations

import hashlib

import numpy as np

from tutorkit.errors import ProviderError

NORM_TOLERANCE = 1e-6


class Embedding:
    """A fixed-length, L2-normalized vector. Dot product == cosine similarity."""

    __slots__ = ("values",)

    def __init__(self, values):
        vec = np.asarray(values, dtype=np.float64)
        if vec.ndim != 1 or vec.size == 0:
            raise ValueError("embedding must be a non-empty 1-d vector")
        norm = float(np.linalg.norm(vec))
        if norm == 0.0:
            raise ValueError("cannot normalize a zero vector")
        if abs(norm - 1.0) > NORM_TOLERANCE:
            vec = vec / norm
        self.values = vec
        self.values.setflags(write=False)

    @property
    def dim(self) -> int:
        return int(self.values.size)

    def cosine(self, other: "Embedding") -> float:
        return float(np.dot(self.values, other.values))

    def tolist(self) -> list[float]:
        return self.values.tolist()

    def __eq__(self, other) -> bool:
        return (isinstance(other, Embedding)
                and np.array_equal(self.values, other.values))

    def __hash__(self) -> int:
        return hash(self.values.tobytes())

    def __repr__(self):
        return f"Embedding(dim={self.dim})"


class EmbeddingProvider:
    """Interface: embed(text) -> Embedding, deterministic per provider instance."""

    dim: int

    def embed(self, text: str) -> Embedding:
        raise NotImplementedError


class HashEmbeddingProvider(EmbeddingProvider):
    """Deterministic hash-to-vector map for offline runs and tests.

    The text's SHA-256 digest seeds a PRNG that draws the vector, so equal
    texts always map to equal vectors with no network involved.
    """

    def __init__(self, dim: int = 32):
        if dim <= 0:
            raise ValueError("dim must be positive")
        self.dim = dim

    def embed(self, text: str) -> Embedding:
        if not text:
            raise ValueError("cannot embed empty text")
        seed = int.from_bytes(hashlib.sha256(text.encode("utf-8")).digest()[:8], "big")
        rng = np.random.default_rng(seed)
        return Embedding(rng.standard_normal(self.dim))


class WireEmbeddingProvider(EmbeddingProvider):
    """Client for an embeddings HTTP endpoint in the common JSON shape."""

    def __init__(self, client, model: str, dim: int):
        self._client = client
        self._model = model
        self.dim = dim

    def embed(self, text: str) -> Embedding:
        if not text:
            raise ValueError("cannot embed empty text")
        try:
            response = self._client.post(
                "/embeddings", json={"model": self._model, "input": text}
            )
            response.raise_for_status()
            values = response.json()["data"][0]["embedding"]
        except Exception as exc:
            raise ProviderError(f"embedding request failed: {exc}") from exc
        if len(values) != self.dim:
            raise ProviderError(
                f"provider returned dim {len(values)}, configured dim is {self.dim}"
            )
        return Embedding(values)
