"""헬릭스 부분다양체 정리들의 수치 검증기.

각 검증기는 가설 잔차와 결론 잔차를 모아 `TheoremReport`를 만듭니다.
판정 규칙:

    * 가설 잔차 중 하나라도 tol 초과       → hypothesis-not-met
    * 동치 판정에 쓰인 원 잔차가 (tol, floor] → inconclusive
    * 결론 잔차 중 하나라도 tol 초과       → violated
    * 그 밖                                → confirmed

"동치"(A ⇔ B) 형태의 결론은 원 잔차를 직접 비교하지 않고 소멸 지표
(잔차 ≤ tol)의 차이로 판정합니다. 원 잔차는 ``observations``에 남깁니다.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Callable, Final, Mapping, Sequence

import numpy as np

from shared.primitives.result import Result, Ok, Err
from shared.modeling.exceptions import DomainError, invalid_parameter_err, too_few_samples_err, unknown_theorem_err
from shared.modeling.value_object import all_of, ensure_finite, ensure_integer, ensure_range
from contexts.helix.domain.expr import Binary, BinaryOp, Const, Unary, UnaryFn, Var, to_text
from contexts.helix.domain.connection import (
    AmbientField,
    HelixNormalField,
    HelixTangentField,
    NormalField,
    TangentField,
    derivative_along,
    second_normal_space_at,
    shape_operator_at,
    weingarten_along,
)
from contexts.helix.domain.curves import (
    MIN_SAMPLES,
    CurveOnManifold,
    frames_along,
    frenet,
    geodesic_residual,
    helix_line,
    integral_curve,
    interior,
    line_of_curvature_residual,
    asymptotic_residual,
    normal_connection_norms,
    normal_curvature,
    straightness_residual,
)
from contexts.helix.domain.helix import HelixVerdict, check_helix, helix_system_residual_at
from contexts.helix.domain.manifold import Immersion, frame_at, is_full, random_points, sample_grid

__all__ = [
    "Verdict",
    "VerificationParams",
    "TheoremInstance",
    "TheoremReport",
    "Verifier",
    "VERIFIERS",
    "THEOREM_TITLES",
    "get_verifier",
    "contrapositive_reading",
    "verify_prop_2_1",
    "verify_rem_2_2",
    "verify_thm_3_1",
    "verify_thm_3_2",
    "verify_lemma_3_1",
    "verify_thm_3_3",
    "verify_thm_3_4",
    "verify_thm_3_5",
    "verify_thm_3_6",
    "verify_thm_3_8",
    "verify_cor_3_2",
]

_log = logging.getLogger(__name__)

_ANGLE_EDGE: Final[float] = 1e-10


class Verdict(StrEnum):
    CONFIRMED = "confirmed"
    HYPOTHESIS_NOT_MET = "hypothesis-not-met"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"


# ──────────────────────────────────────────────────────────────
# 파라미터 / 인스턴스 / 리포트
# ──────────────────────────────────────────────────────────────
_TOL_OK = all_of(ensure_finite("tol"), ensure_range("tol", min_=0.0, max_=1.0, exclusive_min=True))
_FLOOR_OK = all_of(ensure_finite("nonzero_floor"), ensure_range("nonzero_floor", min_=0.0, max_=1.0, exclusive_min=True))
_STEP_OK = all_of(ensure_finite("step"), ensure_range("step", min_=0.0, max_=1.0, exclusive_min=True))
_SMAX_OK = all_of(ensure_finite("s_max"), ensure_range("s_max", min_=0.0, exclusive_min=True))
_KFLOOR_OK = all_of(ensure_finite("k_floor"), ensure_range("k_floor", min_=0.0, exclusive_min=True))


@dataclass(frozen=True, slots=True, kw_only=True)
class VerificationParams:
    """검증기 공통 수치 파라미터.

    Attributes:
        tol: "0"으로 볼 잔차 상한.
        nonzero_floor: "확실히 0이 아님"으로 볼 하한. (tol, floor]는 판정 보류 구간.
        grid: 헬릭스 판정용 축당 격자 점 수.
        step: 곡선 적분 보폭.
        s_max: 곡선 길이.
        seed: 난수 시드(표본점, 무작위 벡터장).
        n_seeds: 곡선 시작점 개수.
        n_random_probes: 무작위 탐침(벡터장/접벡터) 개수.
        k_floor: 이 값 미만의 곡률은 직선으로 봅니다.
    """

    tol: float = 1e-6
    nonzero_floor: float = 1e-3
    grid: int = 20
    step: float = 1e-2
    s_max: float = 1.0
    seed: int = 42
    n_seeds: int = 5
    n_random_probes: int = 3
    k_floor: float = 1e-6

    @classmethod
    def create(cls, **overrides: float | int) -> Result[VerificationParams, DomainError]:
        """기본값에 ``overrides``를 덮어쓰고 검증합니다."""
        p = cls(**overrides)  # type: ignore[arg-type]
        checks = [
            _TOL_OK(p.tol),
            _FLOOR_OK(p.nonzero_floor),
            ensure_integer("grid", min_=2)(p.grid),
            _STEP_OK(p.step),
            _SMAX_OK(p.s_max),
            ensure_integer("seed", min_=0)(p.seed),
            ensure_integer("n_seeds", min_=1)(p.n_seeds),
            ensure_integer("n_random_probes", min_=1)(p.n_random_probes),
            _KFLOOR_OK(p.k_floor),
        ]
        return Result.collect(checks).and_then(
            lambda _: Ok(p) if p.nonzero_floor > p.tol
            else Err(invalid_parameter_err(name="nonzero_floor", detail=f"must exceed tol={p.tol}"))
        )

    def as_dict(self) -> dict[str, float | int]:
        return {
            "tol": self.tol,
            "nonzero_floor": self.nonzero_floor,
            "grid": self.grid,
            "step": self.step,
            "s_max": self.s_max,
            "seed": self.seed,
            "n_seeds": self.n_seeds,
            "n_random_probes": self.n_random_probes,
            "k_floor": self.k_floor,
        }


@dataclass(frozen=True, slots=True, kw_only=True, eq=False)
class TheoremInstance:
    """검증 대상 구체화: 방향, 곡선 시작점, 곡선용 접벡터장, 법벡터장."""

    directions: tuple[np.ndarray, ...] = ()
    seeds: tuple[np.ndarray, ...] = ()
    curve_field: TangentField | None = None
    normal: AmbientField | None = None


@dataclass(frozen=True, slots=True, kw_only=True)
class TheoremReport:
    theorem_id: str
    title: str
    instance: Mapping[str, object]
    hypotheses: Mapping[str, float]
    conclusions: Mapping[str, float]
    observations: Mapping[str, float]
    tolerance: float
    verdict: Verdict
    samples: int
    notes: tuple[str, ...] = field(default_factory=tuple)


Verifier = Callable[[Immersion, TheoremInstance, VerificationParams], Result[TheoremReport, DomainError]]


def _judge(
    hypotheses: Mapping[str, float],
    conclusions: Mapping[str, float],
    params: VerificationParams,
    legs: Sequence[float] = (),
) -> Verdict:
    tol = params.tol
    if any(not v <= tol for v in hypotheses.values()):
        return Verdict.HYPOTHESIS_NOT_MET
    if any(tol < v <= params.nonzero_floor for v in legs):
        return Verdict.INCONCLUSIVE
    if any(not v <= tol for v in conclusions.values()):
        return Verdict.VIOLATED
    return Verdict.CONFIRMED


def _vanishes(value: float, tol: float) -> bool:
    return value <= tol


def _equivalence(legs: Sequence[float], tol: float) -> float:
    """소멸 지표가 모두 같으면 0, 하나라도 다르면 1."""
    flags = {_vanishes(v, tol) for v in legs}
    return 0.0 if len(flags) <= 1 else 1.0


def _flag(ok: bool) -> float:
    return 0.0 if ok else 1.0


def _field_text(f: AmbientField | TangentField | None) -> object:
    match f:
        case None:
            return None
        case TangentField(components=cs) | NormalField(components=cs):
            return [to_text(c) for c in cs]
        case HelixNormalField(direction=d):
            return {"helix_normal_of": d.tolist()}
    return type(f).__name__


def _describe(M: Immersion, inst: TheoremInstance, seeds: Sequence[np.ndarray]) -> dict[str, object]:
    return {
        "manifold": M.name,
        "m": M.m,
        "n": M.n,
        "directions": [d.tolist() for d in inst.directions],
        "seeds": [np.asarray(s, dtype=float).tolist() for s in seeds],
        "curve_field": _field_text(inst.curve_field),
        "normal": _field_text(inst.normal),
    }


def _report(
    theorem_id: str,
    M: Immersion,
    inst: TheoremInstance,
    params: VerificationParams,
    seeds: Sequence[np.ndarray],
    *,
    hypotheses: Mapping[str, float],
    conclusions: Mapping[str, float],
    observations: Mapping[str, float] | None = None,
    legs: Sequence[float] = (),
    samples: int,
    notes: Sequence[str] = (),
) -> TheoremReport:
    verdict = _judge(hypotheses, conclusions, params, legs)
    _log.info("theorem %s on %s: %s", theorem_id, M.name, verdict.value)
    return TheoremReport(
        theorem_id=theorem_id,
        title=THEOREM_TITLES[theorem_id],
        instance=_describe(M, inst, seeds),
        hypotheses=dict(hypotheses),
        conclusions=dict(conclusions),
        observations=dict(observations or {}),
        tolerance=params.tol,
        verdict=verdict,
        samples=samples,
        notes=tuple(notes),
    )


# ──────────────────────────────────────────────────────────────
# 공통 준비
# ──────────────────────────────────────────────────────────────
def _first_direction(inst: TheoremInstance) -> Result[np.ndarray, DomainError]:
    if not inst.directions:
        return Err(invalid_parameter_err(name="direction", detail="this theorem needs a helix direction"))
    return Ok(inst.directions[0])


def _seeds(M: Immersion, inst: TheoremInstance, params: VerificationParams) -> list[np.ndarray]:
    if inst.seeds:
        return [np.asarray(s, dtype=float) for s in inst.seeds]
    rng = np.random.default_rng(params.seed)
    return list(random_points(M, params.n_seeds, rng, margin=0.1))


def _helix_gate(M: Immersion, d: np.ndarray, params: VerificationParams) -> Result[HelixVerdict, DomainError]:
    return check_helix(M, d, sample_grid(M, params.grid), params.tol)


def _angle_gates(v: HelixVerdict, *, need_T: bool = True, need_xi: bool = False) -> dict[str, float]:
    gates: dict[str, float] = {"helix_theta_spread": v.theta_spread}
    if need_T:
        gates["tangential_part_present"] = _flag(v.theta_max < math.pi / 2 - _ANGLE_EDGE)
    if need_xi:
        gates["normal_part_present"] = _flag(v.theta_min > _ANGLE_EDGE)
    return gates


def _helix_lines(M: Immersion, d: np.ndarray, seeds: Sequence[np.ndarray], params: VerificationParams) -> Result[list[CurveOnManifold], DomainError]:
    curves: list[CurveOnManifold] = []
    last_error: DomainError | None = None
    for u0 in seeds:
        r = helix_line(M, d, u0, params.s_max, params.step)
        if isinstance(r, Err):
            last_error = r.error
            _log.debug("no helix line from %s: %s", u0.tolist(), r.error.message)
            continue
        if len(r.value) >= MIN_SAMPLES:
            curves.append(r.value)
    if curves:
        return Ok(curves)
    return Err(last_error or too_few_samples_err(need=MIN_SAMPLES, got=0))


def _max_over(curves: Sequence[CurveOnManifold], f: Callable[[CurveOnManifold], Result[float, DomainError]]) -> Result[float, DomainError]:
    return Result.collect(f(c) for c in curves).map(lambda vs: float(max(vs)))


def _samples(curves: Sequence[CurveOnManifold]) -> int:
    return sum(len(c) for c in curves)


def _gated(
    theorem_id: str,
    M: Immersion,
    inst: TheoremInstance,
    params: VerificationParams,
    gates: Mapping[str, float],
    seeds: Sequence[np.ndarray],
) -> TheoremReport:
    """가설이 성립하지 않아 결론을 계산할 수 없을 때의 리포트."""
    return _report(theorem_id, M, inst, params, seeds, hypotheses=gates, conclusions={}, samples=0)


def _unmet(gates: Mapping[str, float], tol: float) -> bool:
    return any(not v <= tol for v in gates.values())


# ──────────────────────────────────────────────────────────────
# 검증기
# ──────────────────────────────────────────────────────────────
def verify_prop_2_1(M: Immersion, inst: TheoremInstance, params: VerificationParams) -> Result[TheoremReport, DomainError]:
    """헬릭스 선은 측지선이다: 헬릭스 선을 따라 max ‖tang(dT/ds)‖ ≤ tol."""
    def _run(d: np.ndarray, v: HelixVerdict) -> Result[TheoremReport, DomainError]:
        seeds = _seeds(M, inst, params)
        gates = _angle_gates(v)
        if _unmet(gates, params.tol):
            return Ok(_gated("prop2.1", M, inst, params, gates, seeds))
        return _helix_lines(M, d, seeds, params).and_then(
            lambda curves: _max_over(curves, geodesic_residual).map(
                lambda g: _report(
                    "prop2.1", M, inst, params, seeds,
                    hypotheses=gates,
                    conclusions={"geodesic_residual": g},
                    observations={"theta": v.theta_mean, "curves": float(len(curves))},
                    samples=_samples(curves),
                )
            )
        )
    return _first_direction(inst).and_then(lambda d: _helix_gate(M, d, params).and_then(lambda v: _run(d, v)))


def _random_chart_vectors(m: int, count: int, rng: np.random.Generator) -> list[np.ndarray]:
    return [v / np.linalg.norm(v) for v in rng.standard_normal((count, m))]


def verify_rem_2_2(M: Immersion, inst: TheoremInstance, params: VerificationParams) -> Result[TheoremReport, DomainError]:
    """헬릭스 연립식 잔차 (r1, r2)가 표본점과 탐침 X 전부에서 0인지."""
    def _run(d: np.ndarray, v: HelixVerdict) -> Result[TheoremReport, DomainError]:
        seeds = _seeds(M, inst, params)
        gates = _angle_gates(v, need_xi=True)
        if _unmet(gates, params.tol):
            return Ok(_gated("rem2.2", M, inst, params, gates, seeds))
        rng = np.random.default_rng(params.seed + 1)
        probes = [TangentField.coordinate(i, M.m) for i in range(M.m)]
        probes += [TangentField.constant(a) for a in _random_chart_vectors(M.m, params.n_random_probes, rng)]
        r1_max = r2_max = 0.0
        count = 0
        for u in seeds:
            fr = frame_at(M, u)
            if isinstance(fr, Err):
                return Err(fr.error)
            for X in probes:
                r = helix_system_residual_at(fr.value, d, X)
                if isinstance(r, Err):
                    return Err(r.error)
                r1_max, r2_max = max(r1_max, r.value[0]), max(r2_max, r.value[1])
                count += 1
        return Ok(_report(
            "rem2.2", M, inst, params, seeds,
            hypotheses=gates,
            conclusions={"tangential_equation_residual": r1_max, "normal_equation_residual": r2_max},
            observations={"theta": v.theta_mean, "probes": float(count)},
            samples=count,
        ))
    return _first_direction(inst).and_then(lambda d: _helix_gate(M, d, params).and_then(lambda v: _run(d, v)))


def _curve_for(M: Immersion, d: np.ndarray, inst: TheoremInstance, seeds: Sequence[np.ndarray], params: VerificationParams) -> Result[list[CurveOnManifold], DomainError]:
    if inst.curve_field is None:
        return _helix_lines(M, d, seeds, params)
    curves = Result.collect(integral_curve(M, inst.curve_field, u0, params.s_max, params.step) for u0 in seeds)
    return curves.map(lambda cs: [c for c in cs if len(c) >= MIN_SAMPLES]).and_then(
        lambda cs: Ok(cs) if cs else Err(too_few_samples_err(need=MIN_SAMPLES, got=0))
    )


def _normal_part_of_T_derivative(c: CurveOnManifold, d: np.ndarray) -> Result[float, DomainError]:
    """곡선을 따라 max ‖normal(D_T T_j)‖ (T_j는 d가 유도하는 접벡터장)."""
    T_j = HelixTangentField(d)

    def _max(frames: list) -> Result[float, DomainError]:
        jets = Result.collect(derivative_along(F, T_j, T) for F, T in zip(frames, c.T))
        return jets.map(lambda js: max(float(np.linalg.norm(F.normal(j.derivative))) for F, j in zip(frames, js)))
    return frames_along(c).and_then(_max)


def verify_thm_3_1(M: Immersion, inst: TheoremInstance, params: VerificationParams) -> Result[TheoremReport, DomainError]:
    """곡선 α를 따라 ∇⊥_T ξ_j = 0 ⇔ T_j′의 법성분 = 0."""
    def _run(d: np.ndarray, v: HelixVerdict) -> Result[TheoremReport, DomainError]:
        seeds = _seeds(M, inst, params)
        gates = _angle_gates(v, need_xi=True)
        if _unmet(gates, params.tol):
            return Ok(_gated("3.1", M, inst, params, gates, seeds))
        xi_j = HelixNormalField(d)

        def _legs(curves: list[CurveOnManifold]) -> Result[TheoremReport, DomainError]:
            a = _max_over(curves, lambda c: normal_connection_norms(c, xi_j).map(lambda xs: float(xs.max())))
            b = _max_over(curves, lambda c: _normal_part_of_T_derivative(c, d))
            if isinstance(a, Err):
                return Err(a.error)
            if isinstance(b, Err):
                return Err(b.error)
            legs = (a.value, b.value)
            return Ok(_report(
                "3.1", M, inst, params, seeds,
                hypotheses=gates,
                conclusions={"equivalence": _equivalence(legs, params.tol)},
                observations={"normal_connection_of_xi": legs[0], "normal_part_of_T_derivative": legs[1]},
                legs=legs,
                samples=_samples(curves),
            ))
        return _curve_for(M, d, inst, seeds, params).and_then(_legs)
    return _first_direction(inst).and_then(lambda d: _helix_gate(M, d, params).and_then(lambda v: _run(d, v)))


def verify_thm_3_2(M: Immersion, inst: TheoremInstance, params: VerificationParams) -> Result[TheoremReport, DomainError]:
    """헬릭스 선의 법곡률은 그 첫 곡률 k_j와 같다."""
    def _gap(c: CurveOnManifold) -> Result[tuple[float, float, float], DomainError]:
        fd = frenet(c, k_floor=params.k_floor)
        nc = normal_curvature(c)
        if isinstance(fd, Err):
            return Err(fd.error)
        if isinstance(nc, Err):
            return Err(nc.error)
        idx = interior(c)
        k, kn = fd.value.k[idx], nc.value[idx]
        return Ok((float(np.abs(kn - k).max()), float(kn.max()), float(k.max())))

    def _run(d: np.ndarray, v: HelixVerdict) -> Result[TheoremReport, DomainError]:
        seeds = _seeds(M, inst, params)
        gates = _angle_gates(v)
        if _unmet(gates, params.tol):
            return Ok(_gated("3.2", M, inst, params, gates, seeds))

        def _collect(curves: list[CurveOnManifold]) -> Result[TheoremReport, DomainError]:
            return Result.collect(_gap(c) for c in curves).map(lambda rows: _report(
                "3.2", M, inst, params, seeds,
                hypotheses=gates,
                conclusions={"normal_curvature_minus_k": max(r[0] for r in rows)},
                observations={"normal_curvature_max": max(r[1] for r in rows), "k_max": max(r[2] for r in rows)},
                samples=_samples(curves),
            ))
        return _helix_lines(M, d, seeds, params).and_then(_collect)
    return _first_direction(inst).and_then(lambda d: _helix_gate(M, d, params).and_then(lambda v: _run(d, v)))


def verify_lemma_3_1(M: Immersion, inst: TheoremInstance, params: VerificationParams) -> Result[TheoremReport, DomainError]:
    """곡선인 헬릭스 선의 단위 주법선 V₂_j는 법벡터다."""
    def _run(d: np.ndarray, v: HelixVerdict) -> Result[TheoremReport, DomainError]:
        seeds = _seeds(M, inst, params)
        gates = _angle_gates(v)
        if _unmet(gates, params.tol):
            return Ok(_gated("lem3.1", M, inst, params, gates, seeds))

        def _collect(curves: list[CurveOnManifold]) -> Result[TheoremReport, DomainError]:
            k_min = math.inf
            tang = 0.0
            for c in curves:
                fd = frenet(c, k_floor=params.k_floor)
                fr = frames_along(c)
                if isinstance(fd, Err):
                    return Err(fd.error)
                if isinstance(fr, Err):
                    return Err(fr.error)
                for i in interior(c):
                    k_min = min(k_min, float(fd.value.k[i]))
                    tang = max(tang, fd.value.V2[i].map_or(0.0, lambda V2, F=fr.value[i]: float(np.linalg.norm(F.tangential(V2)))))
            hyp = {**gates, "curved": _flag(k_min >= params.k_floor)}
            return Ok(_report(
                "lem3.1", M, inst, params, seeds,
                hypotheses=hyp,
                conclusions={"tangential_part_of_V2": tang},
                observations={"k_min": k_min},
                samples=_samples(curves),
            ))
        return _helix_lines(M, d, seeds, params).and_then(_collect)
    return _first_direction(inst).and_then(lambda d: _helix_gate(M, d, params).and_then(lambda v: _run(d, v)))


def _wavy_field(m: int, rng: np.random.Generator, i: int) -> TangentField:
    """a_k + 0.25·sin(u_{(k mod m)+1}) 꼴의 무작위 접벡터장."""
    a = rng.uniform(-1.0, 1.0, m)
    comps = tuple(
        Binary(BinaryOp.ADD, Const(float(a[k])), Binary(BinaryOp.MUL, Const(0.25), Unary(UnaryFn.SIN, Var((k + i) % m + 1))))
        for k in range(m)
    )
    return TangentField(comps)


def verify_thm_3_3(M: Immersion, inst: TheoremInstance, params: VerificationParams) -> Result[TheoremReport, DomainError]:
    """제2 법공간의 ξ에 대해 모든 곡선은 점근곡선이다.

    시험 곡선은 좌표 벡터장과 무작위 벡터장의 적분곡선이며, 곡선의 각 표본에서
    그 점의 제2 법공간 기저 ξ마다 |⟨A^ξ(T), T⟩|를 잽니다.
    """
    seeds = _seeds(M, inst, params)
    rng = np.random.default_rng(params.seed + 2)
    fields = [TangentField.coordinate(i, M.m) for i in range(M.m)]
    fields += [_wavy_field(M.m, rng, i) for i in range(params.n_random_probes)]
    if inst.curve_field is not None:
        fields.append(inst.curve_field)

    dims: list[int] = []
    for u in seeds:
        fr = frame_at(M, u)
        if isinstance(fr, Err):
            return Err(fr.error)
        dims.append(second_normal_space_at(fr.value).shape[1])
    gates = {"second_normal_space_nonempty": _flag(min(dims) >= 1)}
    if _unmet(gates, params.tol):
        return Ok(_report(
            "3.3", M, inst, params, seeds,
            hypotheses=gates, conclusions={},
            observations={"second_normal_dimension_min": float(min(dims))},
            samples=len(seeds),
        ))

    worst = 0.0
    samples = 0
    for i, W in enumerate(fields):
        u0 = seeds[i % len(seeds)]
        cr = integral_curve(M, W, u0, params.s_max, params.step)
        if isinstance(cr, Err):
            return Err(cr.error)
        fr = frames_along(cr.value)
        if isinstance(fr, Err):
            return Err(fr.error)
        for F, T in zip(fr.value, cr.value.T):
            basis = second_normal_space_at(F)
            Et = F.tangent_basis.T @ T
            for j in range(basis.shape[1]):
                S = shape_operator_at(F, basis[:, j])
                if isinstance(S, Err):
                    return Err(S.error)
                worst = max(worst, abs(float(Et @ S.value @ Et)))
            samples += 1
    return Ok(_report(
        "3.3", M, inst, params, seeds,
        hypotheses=gates,
        conclusions={"asymptotic_residual": worst},
        observations={"second_normal_dimension_min": float(min(dims)), "test_curves": float(len(fields))},
        samples=samples,
    ))


def _probe_vectors(F, rng: np.random.Generator, count: int) -> list[np.ndarray]:
    E = F.tangent_basis
    m = E.shape[1]
    out = [E[:, i] for i in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            out.append((E[:, i] + E[:, j]) / math.sqrt(2.0))
    out += [E @ c for c in _random_chart_vectors(m, count, rng)]
    return out


def verify_thm_3_4(M: Immersion, inst: TheoremInstance, params: VerificationParams) -> Result[TheoremReport, DomainError]:
    """T_j가 평행 ⇔ 모든 접방향 X가 ξ_j 방향으로 점근적."""
    def _run(d: np.ndarray, v: HelixVerdict) -> Result[TheoremReport, DomainError]:
        seeds = _seeds(M, inst, params)
        gates = _angle_gates(v, need_xi=True)
        if _unmet(gates, params.tol):
            return Ok(_gated("3.4", M, inst, params, gates, seeds))
        rng = np.random.default_rng(params.seed + 3)
        T_j, xi_j = HelixTangentField(d), HelixNormalField(d)
        parallel = asymptotic = 0.0
        count = 0
        for u in seeds:
            fr = frame_at(M, u)
            if isinstance(fr, Err):
                return Err(fr.error)
            F = fr.value
            for x in _probe_vectors(F, rng, params.n_random_probes):
                jt = derivative_along(F, T_j, x)
                wx = weingarten_along(F, xi_j, x)
                if isinstance(jt, Err):
                    return Err(jt.error)
                if isinstance(wx, Err):
                    return Err(wx.error)
                parallel = max(parallel, float(np.linalg.norm(F.tangential(jt.value.derivative))))
                asymptotic = max(asymptotic, abs(float(wx.value.A_xi_X @ x)))
                count += 1
        legs = (parallel, asymptotic)
        return Ok(_report(
            "3.4", M, inst, params, seeds,
            hypotheses=gates,
            conclusions={"equivalence": _equivalence(legs, params.tol)},
            observations={"nabla_T_max": parallel, "asymptotic_form_max": asymptotic},
            legs=legs,
            samples=count,
        ))
    return _first_direction(inst).and_then(lambda d: _helix_gate(M, d, params).and_then(lambda v: _run(d, v)))


def verify_thm_3_5(M: Immersion, inst: TheoremInstance, params: VerificationParams) -> Result[TheoremReport, DomainError]:
    """헬릭스 선 α_j는 ξ_j 방향의 점근곡선이다."""
    def _run(d: np.ndarray, v: HelixVerdict) -> Result[TheoremReport, DomainError]:
        seeds = _seeds(M, inst, params)
        gates = _angle_gates(v, need_xi=True)
        if _unmet(gates, params.tol):
            return Ok(_gated("3.5", M, inst, params, gates, seeds))
        xi_j = HelixNormalField(d)
        return _helix_lines(M, d, seeds, params).and_then(
            lambda curves: _max_over(curves, lambda c: asymptotic_residual(c, xi_j)).map(
                lambda r: _report(
                    "3.5", M, inst, params, seeds,
                    hypotheses=gates,
                    conclusions={"asymptotic_residual": r},
                    observations={"theta": v.theta_mean},
                    samples=_samples(curves),
                )
            )
        )
    return _first_direction(inst).and_then(lambda d: _helix_gate(M, d, params).and_then(lambda v: _run(d, v)))


def _span_distance(d: np.ndarray, xi: np.ndarray, T: np.ndarray) -> float:
    Q, _ = np.linalg.qr(np.column_stack([xi, T]))
    return float(np.linalg.norm(d - Q @ (Q.T @ d)))


def verify_thm_3_6(M: Immersion, inst: TheoremInstance, params: VerificationParams) -> Result[TheoremReport, DomainError]:
    """곡률선 α(직선 아님, ξ′ 접)를 따라 모든 헬릭스 방향 d_j ∉ Sp{ξ, T}."""
    if not inst.directions:
        return Err(invalid_parameter_err(name="direction", detail="this theorem needs at least one helix direction"))
    if inst.curve_field is None or inst.normal is None:
        return Err(invalid_parameter_err(name="curve", detail="this theorem needs --curve-field and --normal"))
    xi = inst.normal
    seeds = _seeds(M, inst, params)[:1]

    spreads: list[float] = []
    for d in inst.directions:
        v = _helix_gate(M, d, params)
        if isinstance(v, Err):
            return Err(v.error)
        spreads.append(v.value.theta_spread)

    cr = integral_curve(M, inst.curve_field, seeds[0], params.s_max, params.step)
    if isinstance(cr, Err):
        return Err(cr.error)
    c = cr.value
    loc = line_of_curvature_residual(c, xi)
    fd = frenet(c, k_floor=params.k_floor)
    xi_prime = normal_connection_norms(c, xi)
    values = frames_along(c).and_then(lambda frames: Result.collect(xi.value(F) for F in frames))
    for r in (loc, fd, xi_prime, values):
        if isinstance(r, Err):
            return Err(r.error)

    idx = interior(c)
    k_min = float(fd.value.k[idx].min())
    hyp = {
        "helix_theta_spread": max(spreads),
        "line_of_curvature_residual": loc.value[0],
        "not_straight": _flag(k_min >= params.k_floor),
        "xi_prime_normal_part": float(xi_prime.value.max()),
    }
    xis = values.value
    distances = [
        min(_span_distance(d, xis[i], c.T[i]) for i in range(len(c)))
        for d in inst.directions
    ]
    d_min = min(distances)
    obs = {f"min_distance_d{j + 1}": dist for j, dist in enumerate(distances)}
    obs["k_min"] = k_min
    obs["lambda_mean"] = float(loc.value[1].mean())
    return Ok(_report(
        "3.6", M, inst, params, seeds,
        hypotheses=hyp,
        conclusions={"direction_in_span": _flag(d_min > params.tol)},
        observations=obs,
        legs=(d_min,),
        samples=len(c),
    ))


def verify_thm_3_8(M: Immersion, inst: TheoremInstance, params: VerificationParams) -> Result[TheoremReport, DomainError]:
    """완전(full) 헬릭스에서 ∇⊥_T ξ = 0 ⇔ 헬릭스 선의 법곡률 = 0 ⇔ 헬릭스 선이 직선."""
    def _run(d: np.ndarray, v: HelixVerdict) -> Result[TheoremReport, DomainError]:
        seeds = _seeds(M, inst, params)
        full = is_full(M, sample_grid(M, params.grid))
        if isinstance(full, Err):
            return Err(full.error)
        gates = {**_angle_gates(v, need_xi=True), "full": _flag(full.value)}
        if _unmet(gates, params.tol):
            return Ok(_gated("3.8", M, inst, params, gates, seeds))
        xi = HelixNormalField(d)

        def _legs(curves: list[CurveOnManifold]) -> Result[TheoremReport, DomainError]:
            a = _max_over(curves, lambda c: normal_connection_norms(c, xi).map(lambda xs: float(xs.max())))
            b = _max_over(curves, lambda c: normal_curvature(c).map(lambda ks: float(ks.max())))
            s = _max_over(curves, straightness_residual)
            for r in (a, b, s):
                if isinstance(r, Err):
                    return Err(r.error)
            legs = (a.value, b.value, s.value)
            return Ok(_report(
                "3.8", M, inst, params, seeds,
                hypotheses=gates,
                conclusions={"equivalence": _equivalence(legs, params.tol)},
                observations={"normal_connection_of_xi": legs[0], "normal_curvature": legs[1], "straightness": legs[2]},
                legs=legs,
                samples=_samples(curves),
            ))
        return _helix_lines(M, d, seeds, params).and_then(_legs)
    return _first_direction(inst).and_then(lambda d: _helix_gate(M, d, params).and_then(lambda v: _run(d, v)))


def verify_cor_3_2(M: Immersion, inst: TheoremInstance, params: VerificationParams) -> Result[TheoremReport, DomainError]:
    """헬릭스 초곡면의 헬릭스 선은 직선이다."""
    def _run(d: np.ndarray, v: HelixVerdict) -> Result[TheoremReport, DomainError]:
        seeds = _seeds(M, inst, params)
        gates = {"hypersurface": _flag(M.n == M.m + 1), **_angle_gates(v)}
        if _unmet(gates, params.tol):
            return Ok(_gated("cor3.2", M, inst, params, gates, seeds))

        def _collect(curves: list[CurveOnManifold]) -> Result[TheoremReport, DomainError]:
            s = _max_over(curves, straightness_residual)
            k = _max_over(curves, lambda c: normal_curvature(c).map(lambda ks: float(ks.max())))
            if isinstance(s, Err):
                return Err(s.error)
            if isinstance(k, Err):
                return Err(k.error)
            return Ok(_report(
                "cor3.2", M, inst, params, seeds,
                hypotheses=gates,
                conclusions={"straightness": s.value, "normal_curvature": k.value},
                samples=_samples(curves),
            ))
        return _helix_lines(M, d, seeds, params).and_then(_collect)
    return _first_direction(inst).and_then(lambda d: _helix_gate(M, d, params).and_then(lambda v: _run(d, v)))


def contrapositive_reading(report: TheoremReport) -> dict[str, bool]:
    """3.6 리포트를 대우로 읽습니다: d_j ∈ Sp{ξ, T} 이면 곡률선 가설 중 하나가 깨진다.

    Returns:
        ``direction_in_span`` (전제), ``some_hypothesis_fails`` (귀결),
        ``consistent`` (전제 → 귀결).
    """
    in_span = report.conclusions.get("direction_in_span", 0.0) > 0.0
    fails = any(not v <= report.tolerance for v in report.hypotheses.values())
    return {"direction_in_span": in_span, "some_hypothesis_fails": fails, "consistent": (not in_span) or fails}


# ──────────────────────────────────────────────────────────────
# 레지스트리
# ──────────────────────────────────────────────────────────────
THEOREM_TITLES: Final[dict[str, str]] = {
    "prop2.1": "helix lines are geodesics",
    "rem2.2": "helix system residuals vanish",
    "3.1": "parallel normal along a curve iff normal part of T_j' vanishes",
    "3.2": "normal curvature of helix lines equals their curvature",
    "lem3.1": "principal normal of a curved helix line is normal",
    "3.3": "every curve is asymptotic for the second normal space",
    "3.4": "T_j parallel iff every direction is asymptotic for xi_j",
    "3.5": "helix lines are asymptotic for xi_j",
    "3.6": "helix directions avoid span{xi, T} along lines of curvature",
    "3.8": "ruled iff helix lines have zero normal curvature",
    "cor3.2": "helix lines of helix hypersurfaces are straight",
}

VERIFIERS: Final[dict[str, Verifier]] = {
    "prop2.1": verify_prop_2_1,
    "rem2.2": verify_rem_2_2,
    "3.1": verify_thm_3_1,
    "3.2": verify_thm_3_2,
    "lem3.1": verify_lemma_3_1,
    "3.3": verify_thm_3_3,
    "3.4": verify_thm_3_4,
    "3.5": verify_thm_3_5,
    "3.6": verify_thm_3_6,
    "3.8": verify_thm_3_8,
    "cor3.2": verify_cor_3_2,
}


def get_verifier(theorem_id: str) -> Result[Verifier, DomainError]:
    return Result.from_optional(VERIFIERS.get(theorem_id), unknown_theorem_err(theorem_id))
