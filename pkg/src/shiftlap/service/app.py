"""The HTTP service: every calculus operation behind a POST endpoint.

All state lives in the request; handlers are pure, so the service is safe for
any number of concurrent clients.  Domain errors map to 400 with a stable
error code (422 for malformed function specs), and incompatible Neumann data
carries its exact defect vector in the response body.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__, boundary, forms, verification
from ..errors import FunctionSpecError, IncompatibleBoundaryError, ShiftCalculusError
from ..functions import CylinderFunction, restrict
from ..green import GreenApplication, green_kernel
from ..scalars import format_scalar
from ..specs import function_spec, parse_boundary_data, parse_function
from ..words import Alphabet, VertexWord
from . import models


def _alphabet(n: int) -> Alphabet:
    return Alphabet(n)


def _point(literal: str, alphabet: Alphabet) -> VertexWord:
    try:
        return VertexWord.from_literal(literal, alphabet)
    except ValueError as exc:
        raise FunctionSpecError(str(exc)) from exc


def _echo(req, seed=None) -> models.ConfigEcho:
    return models.ConfigEcho(N=req.N, mode=getattr(req, "mode", "rational"), seed=seed)


def _exact_u(spec: dict, alphabet, mode):
    u = parse_function(spec, alphabet, mode)
    if not isinstance(u, (CylinderFunction, boundary.SolutionFunction)):
        raise FunctionSpecError(
            "this operation needs exact operator values: give a cylinder or solution spec"
        )
    return u


def create_app() -> FastAPI:
    app = FastAPI(
        title="shiftlap",
        description="Exact Laplacian calculus on one-sided full shift spaces.",
        version=__version__,
    )

    @app.exception_handler(ShiftCalculusError)
    async def domain_error(request, exc: ShiftCalculusError):
        body = {"error": exc.code, "detail": str(exc)}
        if isinstance(exc, IncompatibleBoundaryError):
            body["defect"] = {k: format_scalar(v) for k, v in exc.defect.items()}
        status = 422 if isinstance(exc, FunctionSpecError) else 400
        return JSONResponse(status_code=status, content=body)

    @app.exception_handler(ValueError)
    async def value_error(request, exc: ValueError):
        return JSONResponse(status_code=422, content={"error": "invalid-value", "detail": str(exc)})

    @app.get("/health", response_model=models.HealthResponse)
    def health():
        return models.HealthResponse(status="ok", version=__version__)

    @app.post("/green/kernel", response_model=models.ValueResponse)
    def kernel(req: models.GreenKernelRequest):
        alphabet = _alphabet(req.N)
        value = green_kernel(_point(req.x, alphabet), _point(req.y, alphabet), req.mode)
        return models.ValueResponse(value=format_scalar(value), config=_echo(req))

    @app.post("/green/apply", response_model=models.PointValuesResponse)
    def apply_green_operator(req: models.GreenApplyRequest):
        alphabet = _alphabet(req.N)
        image = GreenApplication(parse_function(req.f, alphabet, req.mode))
        records = [
            models.PointValue(
                point=literal,
                value=format_scalar(
                    image.evaluate(_point(literal, alphabet), resolution=req.resolution)
                ),
            )
            for literal in req.points
        ]
        return models.PointValuesResponse(records=records, config=_echo(req))

    @app.post("/functions/evaluate", response_model=models.PointValuesResponse)
    def evaluate(req: models.EvaluateRequest):
        alphabet = _alphabet(req.N)
        u = parse_function(req.u, alphabet, req.mode)
        records = [
            models.PointValue(
                point=literal,
                value=format_scalar(u.evaluate(_point(literal, alphabet))),
            )
            for literal in req.points
        ]
        return models.PointValuesResponse(records=records, config=_echo(req))

    @app.post("/forms/dirichlet", response_model=models.DirichletFormResponse)
    def dirichlet(req: models.DirichletFormRequest):
        alphabet = _alphabet(req.N)
        u = restrict(parse_function(req.u, alphabet, req.mode), req.m)
        v = restrict(parse_function(req.v, alphabet, req.mode), req.m)
        algorithms = (
            [forms.OPERATOR_FORM, forms.DIFFERENCE_FORM]
            if req.algorithm == "both"
            else [req.algorithm]
        )
        records = []
        for algorithm in algorithms:
            report = forms.dirichlet_form(req.m, u, v, algorithm)
            records.append(
                models.DirichletRecord(
                    m=report.level,
                    value=format_scalar(report.value),
                    algorithm=report.algorithm,
                )
            )
        return models.DirichletFormResponse(records=records, config=_echo(req))

    @app.post("/forms/energy", response_model=models.EnergySequenceResponse)
    def energy(req: models.EnergySequenceRequest):
        alphabet = _alphabet(req.N)
        f = parse_function(req.f, alphabet, req.mode)
        seq = forms.energy_sequence(f, req.mmax)
        return models.EnergySequenceResponse(
            records=[
                models.EnergyRecord(m=m, value=format_scalar(v), algorithm=forms.OPERATOR_FORM)
                for m, v in seq.entries
            ],
            increments=[format_scalar(g) for g in seq.increments],
            monotone=seq.monotone,
            limit_lower_bound=format_scalar(seq.limit_lower_bound),
            config=_echo(req),
        )

    @app.post("/boundary/laplacian", response_model=models.LaplacianResponse)
    def laplacian(req: models.LaplacianRequest):
        alphabet = _alphabet(req.N)
        u = _exact_u(req.u, alphabet, req.mode)
        f = parse_function(req.f, alphabet, req.mode)
        estimate = boundary.laplacian_estimate(u, f, req.M, req.mmax)
        bounds = dict(estimate.bounds) if estimate.bounds is not None else {}
        records = [
            models.ResidualRecord(
                m=m,
                residual=format_scalar(r),
                bound=format_scalar(bounds[m]) if m in bounds else None,
            )
            for m, r in estimate.residuals
        ]
        return models.LaplacianResponse(
            records=records,
            boundary_level=estimate.boundary_level,
            nonincreasing=estimate.nonincreasing,
            all_zero=estimate.all_zero,
            config=_echo(req),
        )

    @app.post("/boundary/weak-residual", response_model=models.ValueResponse)
    def weak(req: models.WeakResidualRequest):
        alphabet = _alphabet(req.N)
        u = _exact_u(req.u, alphabet, req.mode)
        f = parse_function(req.f, alphabet, req.mode)
        value = boundary.weak_residual(u, f, req.M, req.m)
        return models.ValueResponse(value=format_scalar(value), config=_echo(req))

    @app.post("/boundary/neumann-derivative", response_model=models.NeumannDerivativeResponse)
    def neumann(req: models.NeumannDerivativeRequest):
        alphabet = _alphabet(req.N)
        u = parse_function(req.u, alphabet, req.mode)
        report = boundary.neumann_derivative(
            u, _point(req.p, alphabet), req.M, m_max=req.mmax
        )
        return models.NeumannDerivativeResponse(
            point=req.p,
            boundary_level=report.boundary_level,
            value=format_scalar(report.value),
            exact=report.exact,
            tail_bound=(
                format_scalar(report.tail_bound) if report.tail_bound is not None else None
            ),
            sequence=(
                [models.SequenceRecord(m=m, value=format_scalar(v)) for m, v in report.sequence]
                if report.sequence is not None
                else None
            ),
            config=_echo(req),
        )

    @app.post("/boundary/solve-dirichlet", response_model=models.SolveResponse)
    def dirichlet_problem(req: models.SolveDirichletRequest):
        alphabet = _alphabet(req.N)
        f = parse_function(req.f, alphabet, req.mode)
        zeta = parse_boundary_data(req.zeta, alphabet, req.mode)
        solution = boundary.solve_dirichlet(f, zeta)
        return _solve_response(req, alphabet, solution)

    @app.post("/boundary/solve-neumann", response_model=models.SolveResponse)
    def neumann_problem(req: models.SolveNeumannRequest):
        alphabet = _alphabet(req.N)
        f = parse_function(req.f, alphabet, req.mode)
        xi = parse_boundary_data(req.xi, alphabet, req.mode)
        solution = boundary.solve_neumann(f, xi)
        return _solve_response(req, alphabet, solution)

    def _solve_response(req, alphabet, solution) -> models.SolveResponse:
        evaluations = None
        if req.points:
            evaluations = [
                models.PointValue(
                    point=literal,
                    value=format_scalar(solution.evaluate(_point(literal, alphabet))),
                )
                for literal in req.points
            ]
        return models.SolveResponse(
            solution=function_spec(solution),
            boundary_values={
                alphabet.format_symbol(l): format_scalar(v)
                for l, v in zip(alphabet.symbols, solution.boundary_values())
            },
            evaluations=evaluations,
            config=_echo(req),
        )

    @app.post("/boundary/gauss-green", response_model=models.GaussGreenResponse)
    def gauss_green(req: models.GaussGreenRequest):
        alphabet = _alphabet(req.N)
        u = _exact_u(req.u, alphabet, req.mode)
        v = _exact_u(req.v, alphabet, req.mode)
        report = boundary.gauss_green_check(u, v, req.M)
        return models.GaussGreenResponse(
            boundary_level=report.boundary_level,
            lhs=format_scalar(report.lhs),
            rhs=format_scalar(report.rhs),
            residual=format_scalar(report.residual),
            conservation_residuals=[
                format_scalar(c) for c in report.conservation_residuals
            ],
            config=_echo(req),
        )

    @app.post("/verify", response_model=models.VerifyResponse)
    def verify(req: models.VerifyRequest):
        results = verification.run_suite(req.N, m_max=req.mmax, seed=req.seed, checks=req.checks)
        return models.VerifyResponse(
            records=[
                models.CheckRecord(check=r.name, passed=r.passed, detail=r.detail)
                for r in results
            ],
            passed=all(r.passed for r in results),
            config=models.ConfigEcho(N=req.N, mode="rational", seed=req.seed),
        )

    return app


app = create_app()
