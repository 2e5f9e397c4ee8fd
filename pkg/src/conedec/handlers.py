"""Request handlers shared by the HTTP service and the CLI.

Each handler maps a request model to a response model and raises
package errors on bad input; transport concerns (HTTP codes, exit
codes) stay with the callers.
"""

from __future__ import annotations

from .cones import cone_of
from .decompose import decompose, decompose_counts, get_strategy
from .errors import ShapeError
from .genfunc import zy_rational
from .linalg import Mat
from .schemas import (CrossRequest, CrossResponse, DecomposeRequest,
                      DecomposeResponse, FailureOut, GFOut, GFTermOut,
                      ReciprocityRequest, ReportOut, SnfRequest, SnfResponse,
                      SystemIn, TermOut, UnityEvalRequest, UnityEvalResponse,
                      VerifyRequest)
from .sysfile import SystemFile
from .unimodular import build_hat, denumerant_task, homogenize_cone, unity_root_eval
from .verify import (VerifyReport, cross_strategy_check, pointwise_check,
                     reciprocity_check)


def system_of(model: SystemIn):
    if len(model.a) != model.r or any(len(row) != model.n for row in model.a):
        raise ShapeError(f"matrix must be {model.r}x{model.n}")
    if len(model.b) != model.r:
        raise ShapeError(f"right-hand side must have {model.r} entries")
    sf = SystemFile(n=model.n, r=model.r, a=Mat(model.a), b=tuple(model.b),
                    mode=model.mode)
    return sf.effective_system()


def term_models(dec, with_gf: bool) -> list:
    out = []
    for t in dec.terms:
        cone = cone_of(t)
        red = t.form.reduced_matrix()
        matrix = [[str(red[i, j]) for j in range(red.ncols)]
                  for i in range(red.nrows)]
        gf = None
        if with_gf:
            g = zy_rational(cone)
            gf = GFOut(
                numerator=[GFTermOut(coeff=c, exponents=list(e))
                           for e, c in sorted(g.numerator.items())],
                denominator=[list(d) for d in g.denominator])
        out.append(TermOut(
            weight=str(t.weight),
            cols=list(t.cols()),
            matrix=matrix,
            generators=[[str(x) for x in gen] for gen in cone.gens],
            vertex=[str(x) for x in cone.vertex],
            gf=gf))
    return out


def report_out(rep: VerifyReport) -> ReportOut:
    failures = [FailureOut(point=[str(x) for x in point],
                           expected=str(want), got=str(got))
                for point, want, got in rep.failures]
    return ReportOut(passed=rep.passed, checked_points=rep.checked_points,
                     failures=failures)


def handle_decompose(req: DecomposeRequest) -> DecomposeResponse:
    a, b = system_of(req.system)
    strategy = get_strategy(req.strategy)
    dec = decompose(a, b, strategy)
    return DecomposeResponse(
        strategy=strategy.name,
        n=dec.n,
        r=dec.r,
        homogeneous=dec.homogeneous,
        term_count=len(dec.terms),
        rounds=list(dec.rounds),
        terms=term_models(dec, req.gf))


def handle_verify(req: VerifyRequest) -> ReportOut:
    a, b = system_of(req.system)
    dec = decompose(a, b, get_strategy(req.strategy))
    return report_out(pointwise_check(dec, req.box))


def handle_cross(req: CrossRequest) -> CrossResponse:
    a, b = system_of(req.system)
    strategies = [get_strategy(s) for s in req.strategies]
    rep = cross_strategy_check(a, b, strategies, n_points=req.points,
                               seed=req.seed)
    counts = {s.name: decompose_counts(a, b, s)[0] for s in strategies}
    base = report_out(rep)
    return CrossResponse(term_counts=counts, **base.model_dump())


def handle_snf(req: SnfRequest) -> SnfResponse:
    a, b = system_of(req.system)
    hat = build_hat(a, b, req.cols)
    task = denumerant_task(hat)
    return SnfResponse(
        cols=list(hat.cols),
        perm=list(hat.perm),
        stage_scales=list(hat.stage_scales()),
        identity_ok=hat.identity_check(),
        is_denumerant=task.is_denumerant,
        task_text=task.to_text())


def handle_reciprocity(req: ReciprocityRequest) -> ReportOut:
    a, b = system_of(req.system)
    if any(x != 0 for x in b):
        raise ShapeError("reciprocity needs a homogeneous system (b = 0)")
    rep = reciprocity_check(a, n_points=req.points, seed=req.seed, box=req.box)
    return report_out(rep)


def handle_unity_eval(req: UnityEvalRequest) -> UnityEvalResponse:
    bmat = Mat(req.dual_matrix)
    d = bmat.nrows
    if any(len(p) != 2 for p in req.point):
        raise ShapeError("each point coordinate must be a [re, im] pair")
    point = [complex(re, im) for re, im in req.point]
    a, _ = homogenize_cone(bmat)
    hat = build_hat(a, (0,) * d, tuple(range(1, d + 1)))
    rep = unity_root_eval(hat, point, n_trunc=req.n_trunc)
    return UnityEvalResponse(
        term_count=rep.term_count,
        value=[rep.value.real, rep.value.imag],
        truncation_value=[rep.truncation_value.real, rep.truncation_value.imag],
        abs_error=rep.abs_error,
        tail_estimate=rep.tail_estimate,
        n_trunc=rep.n_trunc)
