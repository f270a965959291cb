"""HTTP service wrapping the toolkit.

Stateless compute endpoints over inline scene documents: fixed-point
subspaces, check suites, two-reflector iterations and SVG figures.  Run with
``python -m fixref.service`` or ``uvicorn fixref.service:app``.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, HTTPException, Response

from . import __version__, verify
from .linalg import Tolerance
from .operators import dr_iterate, fixed_subspace
from .scene import (Scene, SceneError, builtin_scene_names, load_builtin_scene,
                    scene_from_dict)
from .schemas import (CheckRow, DRRequest, DRResponse, DRRow, FixRequest,
                      FixResponse, HealthResponse, PlotRequest, SceneModel,
                      VerifyRequest, VerifyResponse)
from .subspace import AmbientMismatchError
from .svgfig import FigureSpec, render_scene_figure

app = FastAPI(
    title="fixref",
    version=__version__,
    description="Fixed-point subspaces of reflector compositions on R^n: "
                "per-scene computations, randomized law checks, "
                "two-reflector iterations, and SVG figures.",
)


def _scene(model: SceneModel) -> Scene:
    try:
        return scene_from_dict(model.to_document())
    except SceneError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


def _bad_request(exc: Exception) -> HTTPException:
    return HTTPException(status_code=400, detail=str(exc))


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.get("/scenes", response_model=list[str])
def list_scenes() -> list[str]:
    return builtin_scene_names()


@app.get("/scenes/{name}")
def get_scene(name: str) -> dict:
    try:
        return load_builtin_scene(name).source
    except SceneError as exc:
        raise HTTPException(status_code=404, detail=str(exc))


@app.post("/fix", response_model=FixResponse)
def fix(request: FixRequest) -> FixResponse:
    scene = _scene(request.scene)
    tol = Tolerance(eq_abs=request.tol) if request.tol is not None else None
    try:
        report = fixed_subspace(scene.composition_matrix(request.composition),
                                tol=tol)
        notation = scene.operator_notation(request.composition)
    except (SceneError, ValueError) as exc:
        raise _bad_request(exc)
    return FixResponse(
        scene=scene.name,
        composition=request.composition,
        operator_notation=notation,
        ambient=scene.ambient,
        dim=report.dim,
        basis=[list(map(float, col)) for col in report.subspace.basis.T],
        residuals=[float(r) for r in report.residuals],
        worst_residual=report.worst_residual,
        operator_norm=report.operator_norm,
        nonexpansive=report.nonexpansive,
    )


@app.post("/verify", response_model=VerifyResponse)
def run_checks(request: VerifyRequest) -> VerifyResponse:
    if (request.scene is None) == (request.random is None):
        raise HTTPException(
            status_code=400,
            detail="give exactly one of 'scene' or 'random'")
    try:
        if request.random is not None:
            spec = verify.RandomSpec(
                ambient=request.random.ambient,
                dims=tuple(request.random.dims),
                seed=request.random.seed,
                trials=request.random.trials,
            )
            reports = verify.run_suite(spec, request.checks, tol=request.tol)
        else:
            scene = _scene(request.scene)
            reports = verify.run_named_checks(
                list(scene.subspaces.items()), request.checks, tol=request.tol)
    except (SceneError, AmbientMismatchError, ValueError) as exc:
        raise _bad_request(exc)
    rows = [CheckRow(check=r.check_name, instance=r.instance,
                     residual=r.worst_residual, tolerance=r.tolerance,
                     passed=r.passed) for r in reports]
    failures = sum(not r.passed for r in rows)
    return VerifyResponse(reports=rows, total=len(rows), failures=failures,
                          all_passed=failures == 0)


@app.post("/dr", response_model=DRResponse)
def douglas_rachford(request: DRRequest) -> DRResponse:
    scene = _scene(request.scene)
    try:
        trace = dr_iterate(scene.subspace(request.u1),
                           scene.subspace(request.u2),
                           np.array(request.x0, dtype=np.float64),
                           max_iter=request.max_iter, eps=request.eps)
    except (SceneError, AmbientMismatchError, ValueError) as exc:
        raise _bad_request(exc)
    rows = [DRRow(k=k, iterate_norm=float(np.linalg.norm(x)),
                  shadow_error=float(err))
            for k, (x, err) in enumerate(zip(trace.iterates, trace.errors))]
    return DRResponse(rows=rows, iterations=trace.iterations,
                      final_error=trace.final_error,
                      predicted_rate=trace.predicted_rate,
                      converged=trace.converged)


@app.post("/plot")
def plot(request: PlotRequest) -> Response:
    scene = _scene(request.scene)
    names = (tuple(request.compositions) if request.compositions
             else tuple(scene.compositions))
    try:
        spec = FigureSpec(compositions=names, width=request.width,
                          height=request.height,
                          axis_range=request.axis_range)
        svg = render_scene_figure(scene, spec)
    except (SceneError, ValueError) as exc:
        raise _bad_request(exc)
    return Response(content=svg, media_type="image/svg+xml")


def main() -> None:
    import argparse

    import uvicorn

    parser = argparse.ArgumentParser(description="Serve the fixref API.")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    args = parser.parse_args()
    uvicorn.run(app, host=args.host, port=args.port)


if __name__ == "__main__":
    main()
