"""Request and response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class SubspaceDecl(BaseModel):
    name: str
    vectors: list[list[float]] | None = None
    angle: float | str | None = None


class CompositionDecl(BaseModel):
    name: str
    apply: list[str]


class SceneModel(BaseModel):
    """Inline scene document; mirrors the scene file format."""

    name: str = "scene"
    ambient: int
    subspaces: list[SubspaceDecl]
    compositions: list[CompositionDecl] = Field(default_factory=list)

    def to_document(self) -> dict:
        doc = self.model_dump()
        for decl in doc["subspaces"]:
            if decl.get("vectors") is None:
                decl.pop("vectors", None)
            if decl.get("angle") is None:
                decl.pop("angle", None)
        return doc


class FixRequest(BaseModel):
    scene: SceneModel
    composition: str
    tol: float | None = None


class FixResponse(BaseModel):
    scene: str
    composition: str
    operator_notation: str
    ambient: int
    dim: int
    basis: list[list[float]]        # one fixed-set basis vector per row
    residuals: list[float]
    worst_residual: float
    operator_norm: float
    nonexpansive: bool


class RandomSpecModel(BaseModel):
    ambient: int
    dims: list[int]
    seed: int = 0
    trials: int = 1


class VerifyRequest(BaseModel):
    """Exactly one of ``scene`` / ``random`` selects the instances."""

    scene: SceneModel | None = None
    random: RandomSpecModel | None = None
    checks: list[str]
    tol: float | None = None


class CheckRow(BaseModel):
    check: str
    instance: str
    residual: float
    tolerance: float
    passed: bool


class VerifyResponse(BaseModel):
    reports: list[CheckRow]
    total: int
    failures: int
    all_passed: bool


class DRRequest(BaseModel):
    scene: SceneModel
    u1: str
    u2: str
    x0: list[float]
    eps: float = 1e-6
    max_iter: int = 10000


class DRRow(BaseModel):
    k: int
    iterate_norm: float
    shadow_error: float


class DRResponse(BaseModel):
    rows: list[DRRow]
    iterations: int
    final_error: float
    predicted_rate: float | None
    converged: bool


class PlotRequest(BaseModel):
    scene: SceneModel
    compositions: list[str] | None = None
    width: int = 900
    height: int = 600
    axis_range: float = 1.5


class HealthResponse(BaseModel):
    status: str
    version: str
