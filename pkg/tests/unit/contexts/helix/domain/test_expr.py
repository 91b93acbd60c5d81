from __future__ import annotations

import math
import pytest

from shared.primitives.result import Ok, Err
from contexts.helix.domain.expr import (
    Binary,
    BinaryOp,
    Const,
    Unary,
    UnaryFn,
    Var,
    parse,
    to_text,
    variables,
)

pytestmark = pytest.mark.unit


# ─────────────────────────────────────────────────────────────────────────────
# 파싱 성공 / 우선순위
# ─────────────────────────────────────────────────────────────────────────────
class TestParsePrecedence:
    def test_mul_binds_tighter_than_add(self):
        """GIVEN '1 + 2*u1'
           WHEN parse
           THEN 덧셈의 오른쪽 가지가 곱셈이다
        """
        assert parse("1 + 2*u1", 1) == Ok(
            value=Binary(BinaryOp.ADD, Const(1.0), Binary(BinaryOp.MUL, Const(2.0), Var(1)))
        )

    def test_power_is_right_associative(self):
        """GIVEN 'u1^2^3'
           WHEN parse
           THEN u1^(2^3) 으로 묶인다
        """
        assert parse("u1^2^3", 1).value == Binary(
            BinaryOp.POW, Var(1), Binary(BinaryOp.POW, Const(2.0), Const(3.0))
        )

    def test_unary_minus_below_power(self):
        """GIVEN '-u1^2'
           WHEN parse
           THEN -(u1^2) 이다
        """
        assert parse("-u1^2", 1).value == Unary(UnaryFn.NEG, Binary(BinaryOp.POW, Var(1), Const(2.0)))

    def test_subtraction_is_left_associative(self):
        """GIVEN 'u1 - u2 - 1'
           WHEN parse
           THEN (u1 - u2) - 1
        """
        assert parse("u1 - u2 - 1", 2).value == Binary(
            BinaryOp.SUB, Binary(BinaryOp.SUB, Var(1), Var(2)), Const(1.0)
        )

    @pytest.mark.parametrize(
        ("text", "expected"),
        [
            ("pi", Const(math.pi)),
            ("2.5e-1", Const(0.25)),
            (".5", Const(0.5)),
            ("sqrt(u2)", Unary(UnaryFn.SQRT, Var(2))),
            ("  atan ( u1 )  ", Unary(UnaryFn.ATAN, Var(1))),
        ],
    )
    def test_atoms(self, text: str, expected):
        """GIVEN 숫자/상수/함수 호출
           WHEN parse(m=2)
           THEN 기대한 원자 노드
        """
        assert parse(text, 2).value == expected


# ─────────────────────────────────────────────────────────────────────────────
# 파싱 실패: 코드와 위치
# ─────────────────────────────────────────────────────────────────────────────
class TestParseErrors:
    @pytest.mark.parametrize(
        ("text", "code", "position"),
        [
            ("u1 +", "expr_syntax", 4),
            ("(u1", "expr_syntax", 3),
            ("u1 $ 2", "expr_syntax", 3),
            ("2 u1", "expr_syntax", 2),
            ("foo(u1)", "expr_unknown_identifier", 0),
            ("u1 + x", "expr_unknown_identifier", 5),
            ("u1 + u3", "expr_variable_range", 5),
            ("u0", "expr_variable_range", 0),
        ],
    )
    def test_error_code_and_position(self, text: str, code: str, position: int):
        """GIVEN 잘못된 수식
           WHEN parse(m=2)
           THEN 오류 코드가 맞고 메시지에 문자 위치가 들어간다
        """
        r = parse(text, 2)
        assert isinstance(r, Err)
        assert r.error.code == code
        assert f"position {position}" in r.error.message

    def test_non_ascii_is_rejected(self):
        """GIVEN 'u1·2' (가운뎃점)
           WHEN parse
           THEN expr_syntax, 위치 2
        """
        r = parse("u1·2", 1)
        assert r.error.code == "expr_syntax"
        assert "position 2" in r.error.message

    def test_function_without_parentheses(self):
        """GIVEN 'sin u1'
           WHEN parse
           THEN '(' 를 기대했다는 구문 오류
        """
        r = parse("sin u1", 1)
        assert r.error.code == "expr_syntax"
        assert "expected '('" in r.error.message


# ─────────────────────────────────────────────────────────────────────────────
# 정규 출력 / 변수 집합
# ─────────────────────────────────────────────────────────────────────────────
class TestCanonicalText:
    @pytest.mark.parametrize(
        "text",
        ["u1^2 + 3*u2", "-sin(u1)/sqrt(2)", "u2*cos(u1) - exp(-u2)", "log(1 + u1^2)^0.5"],
    )
    def test_reparse_gives_same_tree(self, text: str):
        """GIVEN 수식
           WHEN parse → to_text → parse
           THEN 같은 트리
        """
        tree = parse(text, 2).value
        assert parse(to_text(tree), 2).value == tree

    @pytest.mark.parametrize(
        "tree",
        [
            Const(-1.5),
            Binary(BinaryOp.MUL, Const(-0.5), Var(2)),
            Binary(BinaryOp.POW, Var(1), Const(-2.0)),
            Unary(UnaryFn.SIN, Binary(BinaryOp.SUB, Const(-3.0), Var(1))),
        ],
    )
    def test_negative_constants_survive_reparse(self, tree):
        """GIVEN 음수 상수를 담은 트리 (scaled 등으로 직접 만든 것)
           WHEN to_text → parse
           THEN 같은 트리, 음수 상수는 괄호로 출력된다
        """
        text = to_text(tree)
        assert "(-" in text
        assert parse(text, 2).value == tree

    def test_negated_literal_is_a_constant(self):
        """GIVEN '-2' 와 '-2^2'
           WHEN parse
           THEN 앞은 음수 상수, 뒤는 거듭제곱의 부정 (단항 − 가 ^ 보다 약함)
        """
        assert parse("-2", 1).value == Const(-2.0)
        assert parse("-2^2", 1).value == Unary(UnaryFn.NEG, Binary(BinaryOp.POW, Const(2.0), Const(2.0)))

    def test_fully_parenthesized(self):
        """GIVEN 'u1 + u2*2'
           WHEN to_text
           THEN 모든 이항 연산이 괄호로 감싸진다
        """
        assert to_text(parse("u1 + u2*2", 2).value) == "(u1 + (u2 * 2.0))"

    def test_variables(self):
        """GIVEN u2와 u3만 쓰는 식
           WHEN variables
           THEN {2, 3}
        """
        assert variables(parse("u3*sin(u2) + 4", 3).value) == frozenset({2, 3})
        assert variables(Const(1.0)) == frozenset()
