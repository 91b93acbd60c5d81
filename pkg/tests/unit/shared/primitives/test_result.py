import pytest
from dataclasses import FrozenInstanceError

from shared.primitives.maybe import Maybe, Nothing
from shared.primitives.result import Ok, Err, Result
from shared.modeling.exceptions import DomainError, all_singular_err, zero_direction_err

# 마커: unit + monad
pytestmark = [pytest.mark.unit, pytest.mark.monad]

SINGULAR = DomainError("singular_frame", "rank-deficient Jacobian")


def _inverse(x: float) -> Result[float, DomainError]:
    return Ok(value=1.0 / x) if x != 0.0 else Err(error=zero_direction_err())


# ---------------------------------------------------------------------------
# 기본 동작/불변성
# ---------------------------------------------------------------------------
class TestResultBasics:
    def test_ok_and_err_are_frozen(self):
        """GIVEN Ok(1.0)와 Err(SINGULAR)
           WHEN 필드에 값을 대입하려고 하면
           THEN 둘 다 FrozenInstanceError가 발생한다
        """
        with pytest.raises(FrozenInstanceError):
            Ok(value=1.0).value = 2.0  # type: ignore[misc]
        with pytest.raises(FrozenInstanceError):
            Err(error=SINGULAR).error = all_singular_err()  # type: ignore[misc]

    @pytest.mark.parametrize(
        ("r", "ok"),
        [(Ok(value=0.5), True), (Err(error=SINGULAR), False)],
    )
    def test_is_ok_is_err(self, r: Result[float, DomainError], ok: bool):
        """GIVEN Ok/Err 인스턴스
           WHEN is_ok()/is_err()를 호출하면
           THEN 두 판정은 서로 반대다
        """
        assert r.is_ok() is ok
        assert r.is_err() is (not ok)

    def test_equality_is_by_value(self):
        """GIVEN 같은 오류 코드/메시지로 만든 두 Err
           WHEN 비교하면
           THEN 같다고 본다
        """
        assert Err(error=DomainError("x", "y")) == Err(error=DomainError("x", "y"))


# ---------------------------------------------------------------------------
# map / and_then / map_err / unwrap_or
# ---------------------------------------------------------------------------
class TestResultCombinators:
    def test_map_on_ok_transforms_value(self):
        """GIVEN Ok(0.25)
           WHEN map(제곱근)
           THEN Ok(0.5)
        """
        assert Ok(value=0.25).map(lambda x: x ** 0.5) == Ok(value=0.5)

    def test_map_on_err_is_noop(self):
        """GIVEN Err(SINGULAR)
           WHEN map(...)
           THEN 함수는 호출되지 않고 같은 Err가 남는다
        """
        def explode(_: float) -> float:
            raise AssertionError("must not be called")

        assert Err(error=SINGULAR).map(explode) == Err(error=SINGULAR)

    @pytest.mark.parametrize(
        ("start", "expected"),
        [
            (Ok(value=4.0), Ok(value=0.25)),
            (Ok(value=0.0), Err(error=zero_direction_err())),
            (Err(error=SINGULAR), Err(error=SINGULAR)),
        ],
    )
    def test_and_then_chains_or_short_circuits(self, start, expected):
        """GIVEN 0이면 실패하는 역수 계산
           WHEN and_then으로 연결하면
           THEN Ok는 계산되고, 실패는 그 자리에서 멈춘다
        """
        assert start.and_then(_inverse) == expected

    def test_map_err_translates_only_errors(self):
        """GIVEN Err(OSError)와 Ok(7)
           WHEN map_err로 DomainError 번역
           THEN Err만 바뀌고 Ok는 그대로다
        """
        translate = lambda exc: DomainError("io_failure", str(exc))
        assert Err(error=OSError("gone")).map_err(translate) == Err(error=DomainError("io_failure", "gone"))
        assert Ok(value=7).map_err(translate) == Ok(value=7)

    @pytest.mark.parametrize(
        ("r", "expected"),
        [(Ok(value=0.7853981634), 0.7853981634), (Err(error=SINGULAR), -1.0)],
    )
    def test_unwrap_or(self, r: Result[float, DomainError], expected: float):
        """GIVEN Result와 기본값 -1.0
           WHEN unwrap_or(-1.0)
           THEN Ok는 값, Err는 기본값
        """
        assert r.unwrap_or(-1.0) == expected


# ---------------------------------------------------------------------------
# collect / to_maybe / from_optional
# ---------------------------------------------------------------------------
class TestResultHelpers:
    def test_collect_all_ok_keeps_order(self):
        """GIVEN 전부 성공인 결과 열
           WHEN collect
           THEN 순서를 지킨 값 목록
        """
        assert Result.collect(_inverse(x) for x in (1.0, 2.0, 4.0)) == Ok(value=[1.0, 0.5, 0.25])

    def test_collect_stops_at_first_err(self):
        """GIVEN 중간에 실패가 있는 지연 이터러블
           WHEN collect
           THEN 첫 실패를 돌려주고 그 뒤는 평가하지 않는다
        """
        seen: list[float] = []

        def recorded(x: float) -> Result[float, DomainError]:
            seen.append(x)
            return _inverse(x)

        r = Result.collect(recorded(x) for x in (1.0, 0.0, 3.0))
        assert r == Err(error=zero_direction_err())
        assert seen == [1.0, 0.0]

    def test_collect_of_empty_is_ok_empty(self):
        """GIVEN 빈 입력
           WHEN collect
           THEN Ok([])
        """
        assert Result.collect([]) == Ok(value=[])

    def test_to_maybe(self):
        """GIVEN Ok(7)과 Err(SINGULAR)
           WHEN to_maybe()
           THEN Some(7)과 Nothing
        """
        some = Ok(value=7).to_maybe()
        assert isinstance(some, Maybe)
        assert some.unwrap_or(0) == 7
        assert Err(error=SINGULAR).to_maybe() is Nothing

    @pytest.mark.parametrize(("value", "ok"), [(0.0, True), (None, False)])
    def test_from_optional(self, value, ok: bool):
        """GIVEN 값 또는 None
           WHEN Result.from_optional(value, err)
           THEN 0.0 같은 falsy 값도 Ok로, None만 Err로 승격된다
        """
        r = Result.from_optional(value, all_singular_err())
        assert r.is_ok() is ok
        if not ok:
            assert r.error.code == "all_singular"
