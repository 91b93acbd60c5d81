import pytest
from pathlib import Path
from typing import Callable

from shared.primitives.io import IO
from shared.primitives.result import Ok, Err

# 모듈 전체 태그
pytestmark = [pytest.mark.unit, pytest.mark.monad]


# ─────────────────────────────────────────────────────────────────────────────
# 생성/기본 동작
# ─────────────────────────────────────────────────────────────────────────────
class TestIOBasics:
    def test_kw_only_constructor(self):
        """GIVEN IO dataclass(kw_only=True)
           WHEN 위치 인자로 생성 시도
           THEN TypeError가 발생한다
        """
        with pytest.raises(TypeError):
            IO(lambda: 1)  # type: ignore[misc]
        assert isinstance(IO(thunk=lambda: 1), IO)

    def test_call_is_run(self):
        """GIVEN IO.of(5)
           WHEN 호출 구문과 run()으로 각각 실행
           THEN 같은 값을 얻는다
        """
        io = IO.of(5)
        assert io() == io.run() == 5

    def test_repr_hides_thunk(self):
        """GIVEN 임의 IO
           WHEN repr 호출
           THEN 'IO(<thunk>)'를 반환한다
        """
        assert repr(IO.delay(lambda: 1)) == "IO(<thunk>)"


# ─────────────────────────────────────────────────────────────────────────────
# 지연성 & 실행 횟수
# ─────────────────────────────────────────────────────────────────────────────
class TestIOLaziness:
    def test_chain_is_lazy_until_run(self):
        """GIVEN 호출 카운터 thunk에 map/and_then/tap 연결
           WHEN run 이전과 이후
           THEN run 이전에는 한 번도 실행되지 않고, run 후 정확히 한 번 실행된다
        """
        calls = {"thunk": 0, "tap": 0}

        def thunk() -> int:
            calls["thunk"] += 1
            return 3

        io = (
            IO.delay(thunk)
            .map(lambda x: x * 2)
            .and_then(lambda x: IO.of(x + 1))
            .tap(lambda _: calls.__setitem__("tap", calls["tap"] + 1))
        )
        assert calls == {"thunk": 0, "tap": 0}
        assert io.run() == 7
        assert calls == {"thunk": 1, "tap": 1}

    def test_each_run_repeats_effect(self):
        """GIVEN 카운터를 돌려주는 IO
           WHEN 두 번 run
           THEN 효과도 두 번 일어난다
        """
        calls = {"n": 0}

        def thunk() -> int:
            calls["n"] += 1
            return calls["n"]

        io = IO.delay(thunk)
        assert (io.run(), io.run()) == (1, 2)

    def test_and_then_effect_order(self):
        """GIVEN 두 부수효과를 가진 체인
           WHEN and_then으로 연결 후 run
           THEN 효과 순서는 a → b 이다
        """
        log: list[str] = []

        def b(x: int) -> IO[int]:
            return IO.delay(lambda: log.append(f"b({x})") or x + 1)

        assert IO.delay(lambda: log.append("a") or 1).and_then(b).run() == 2
        assert log == ["a", "b(1)"]


# ─────────────────────────────────────────────────────────────────────────────
# 예외 데이터화(attempt)
# ─────────────────────────────────────────────────────────────────────────────
class TestIOAttempt:
    def test_attempt_ok_wraps_in_ok(self):
        """GIVEN 성공 IO.of(5)
           WHEN attempt()
           THEN Ok(5)
        """
        assert IO.of(5).attempt().run() == Ok(value=5)

    def test_attempt_catches_listed_exception(self):
        """GIVEN OSError를 던지는 thunk
           WHEN attempt(OSError)
           THEN Err(OSError 인스턴스)
        """
        def boom() -> str:
            raise OSError("disk full")

        rr = IO.delay(boom).attempt(OSError).run()
        assert isinstance(rr, Err)
        assert isinstance(rr.error, OSError)
        assert str(rr.error) == "disk full"

    def test_attempt_does_not_catch_unlisted_exception(self):
        """GIVEN ValueError를 던지는 thunk
           WHEN attempt(OSError)로 다른 예외만 포착
           THEN ValueError가 그대로 전파된다
        """
        def boom() -> int:
            raise ValueError("nope")

        with pytest.raises(ValueError):
            IO.delay(boom).attempt(OSError).run()

    def test_attempt_default_catches_exception(self):
        """GIVEN RuntimeError를 던지는 thunk
           WHEN attempt() (기본 Exception 포착)
           THEN Err(RuntimeError)
        """
        def boom() -> int:
            raise RuntimeError("x")

        rr = IO.delay(boom).attempt().run()
        assert isinstance(rr, Err)
        assert isinstance(rr.error, RuntimeError)


# ─────────────────────────────────────────────────────────────────────────────
# 파일 효과: read_text / write_text
# ─────────────────────────────────────────────────────────────────────────────
class TestIOFiles:
    def test_write_is_deferred_and_creates_parents(self, tmp_path: Path):
        """GIVEN 아직 없는 하위 디렉터리의 경로
           WHEN write_text를 만들기만 하고, 그다음 run
           THEN run 전에는 파일이 없고, run 후에는 상위 디렉터리와 내용이 생긴다
        """
        target = tmp_path / "reports" / "cone.json"
        io = IO.write_text(target, "{}\n")
        assert not target.exists()
        assert io.run() == target
        assert target.read_text(encoding="utf-8") == "{}\n"

    def test_read_after_write_roundtrips_utf8(self, tmp_path: Path):
        """GIVEN 한글과 기호가 섞인 문서
           WHEN write_text 후 read_text
           THEN 같은 문자열을 돌려받는다
        """
        target = tmp_path / "note.mfd"
        text = "name: 원뿔 # θ = π/4\n"
        got = IO.write_text(target, text).and_then(IO.read_text).run()
        assert got == text

    def test_missing_file_becomes_err(self, tmp_path: Path):
        """GIVEN 존재하지 않는 파일
           WHEN read_text(...).attempt(OSError)
           THEN FileNotFoundError를 담은 Err
        """
        rr = IO.read_text(tmp_path / "absent.mfd").attempt(OSError).run()
        assert isinstance(rr, Err)
        assert isinstance(rr.error, FileNotFoundError)


# ─────────────────────────────────────────────────────────────────────────────
# 법칙: Functor/Monad
# ─────────────────────────────────────────────────────────────────────────────
class TestIOLaws:
    def test_functor_identity(self):
        """GIVEN IO.of(x)
           WHEN map(id)
           THEN 동일 값
        """
        id_fn: Callable[[int], int] = lambda x: x
        assert IO.of(3).map(id_fn).run() == 3

    def test_functor_composition(self):
        """GIVEN f, g
           WHEN map(g∘f) 와 map(f).map(g)
           THEN 결과가 같다
        """
        f = lambda x: x + 1
        g = lambda y: y * 2
        assert IO.of(3).map(lambda x: g(f(x))).run() == IO.of(3).map(f).map(g).run()

    @pytest.mark.parametrize("a", [0, 5, -2])
    def test_monad_left_identity(self, a: int):
        """GIVEN a와 f: T→IO[U]
           WHEN IO.of(a).and_then(f)
           THEN f(a)와 같다
        """
        f = lambda x: IO.of(x + 10)
        assert IO.of(a).and_then(f).run() == f(a).run()

    def test_monad_right_identity(self):
        """GIVEN m = IO.of(x)
           WHEN m.and_then(IO.of)
           THEN m과 같다
        """
        m = IO.of(7)
        assert m.and_then(IO.of).run() == m.run()

    def test_monad_associativity(self):
        """GIVEN m, f, g
           WHEN 결합 순서를 바꿔 연결
           THEN 결과가 같다
        """
        m = IO.of(1)
        f = lambda x: IO.of(x + 2)
        g = lambda y: IO.of(y * 3)
        assert m.and_then(f).and_then(g).run() == m.and_then(lambda x: f(x).and_then(g)).run()
