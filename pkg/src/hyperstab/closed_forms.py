"""Closed-form negative-sign counts for aligned GHZ blocks.

``c_binomial(m)`` sums binomial(m, k) over k = 2 (mod 4).  ``c_cases`` is
the four-branch power-of-two form of the same number.  ``case_difference``
evaluates the ten published difference expressions exactly as printed and
recomputes each difference from block counts.  All arithmetic is exact:
integers, or ``Fraction`` where a printed expression has a negative power
of two.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable

from .errors import DomainError


def c_binomial(m: int) -> int:
    if m < 2:
        raise DomainError(f"block size must be >= 2, got {m}")
    return sum(comb(m, k) for k in range(2, m + 1, 4))


def _p2(e: int) -> Fraction:
    return Fraction(2) ** e


def _s(e: int) -> int:
    return -1 if e % 2 else 1


def c_cases(m: int) -> int:
    if m < 2:
        raise DomainError(f"block size must be >= 2, got {m}")
    r = m % 4
    if r == 2:  # m = 4x - 2
        val = _p2(m - 2)
    elif r == 3:  # m = 4x - 1
        val = _s((m + 5) // 4) * _p2((m - 3) // 2) + _p2(m - 2)
    elif r == 0:  # m = 4x
        val = _s((m + 4) // 4) * _p2((m - 2) // 2) + _p2(m - 2)
    else:  # m = 4x + 1
        val = _s((m + 3) // 4) * _p2((m - 3) // 2) + _p2(m - 2)
    return int(val)


def composite_negatives(block_sizes: list[int]) -> int:
    """Negative count of a product of aligned GHZ blocks."""
    n = sum(block_sizes)
    prod = 1
    for m in block_sizes:
        prod *= (1 << m) - 2 * c_binomial(m)
    return ((1 << n) - prod) // 2


def c_three_blocks(m: int) -> int:
    return composite_negatives([m, m, m])


def c_two_blocks(n: int) -> int:
    return composite_negatives([n, n])


def c_one_block(l: int) -> int:
    return c_binomial(l)


# Printed expressions, one pair (expanded form, simplified form) per case.
# ``(-1)^{(x+1)/4}`` in cases 1 and 2 is read as (-1)^(x+1): it comes from
# (-1)^{(m+5)/4} with m = 4x-1 and (-1)^{(m+3)/4} with m = 4x+1.


def _case1_expanded(x):
    s = _s(x + 1)
    c = s * _p2(2 * x - 2) + _p2(4 * x - 3)
    return (
        3 * c * (_p2(4 * x - 1) - c) ** 2 + c ** 3
        - (_s(3 * x) * _p2(6 * x - 3) + _p2(12 * x - 5))
    )


def _case1_simplified(x):
    return -3 * _p2(-7 + 6 * x) * (
        8 * _s(x) + _s(x) * _p2(1 + 4 * x) + Fraction(4) ** (1 + x) - Fraction(64) ** x
    )


def _case2_expanded(x):
    s = _s(x + 1)
    c = s * _p2(2 * x - 1) + _p2(4 * x - 1)
    return (
        3 * c * (_p2(4 * x + 1) - c) ** 2 + c ** 3
        - (_s(3 * x + 2) * _p2(6 * x) + _p2(12 * x + 1))
    )


def _case2_simplified(x):
    return -3 * _p2(-1 + 6 * x) * (
        Fraction(-16) ** x + _s(x) + Fraction(4) ** x - Fraction(64) ** x
    )


def _case3_expanded(x):
    cn = _s(3 * x + 2) * _p2(6 * x) + _p2(12 * x + 1)
    return (
        3 * _p2(8 * x) * (_p2(8 * x + 2) - _p2(8 * x)) ** 2 + _p2(8 * x) ** 3
        - 2 * cn * (_p2(12 * x + 3) - cn)
    )


def _case3_simplified(x):
    return _p2(1 + 12 * x) + Fraction(4) ** (1 + 12 * x) - _s(x) * Fraction(8) ** (1 + 6 * x)


def _case4_expanded(x):
    cn = _s(3 * x) * _p2(6 * x - 3) + _p2(12 * x - 5)
    return (
        3 * _p2(8 * x - 4) * (_p2(8 * x - 2) - _p2(8 * x - 4)) ** 2 + _p2(8 * x - 4) ** 3
        - 2 * cn * (_p2(12 * x - 3) - cn)
    )


def _case4_simplified(x):
    return Fraction(4) ** (-5 + 6 * x) * (
        32 + Fraction(4) ** (6 * x) - _s(x) * Fraction(4) ** (2 + 3 * x)
    )


def _case5_expanded(x):
    cm = _s(2 * x + 2) * _p2(4 * x + 1) + _p2(8 * x + 2)
    return (
        3 * cm * (_p2(8 * x + 4) - cm) ** 2 + cm ** 3
        - 2 * _p2(12 * x + 4) * (_p2(12 * x + 6) - _p2(12 * x + 4))
    )


def _case5_simplified(x):
    return _p2(5 + 12 * x) * (
        1 - 3 * _p2(1 + 4 * x) + 3 * Fraction(4) ** (1 + 4 * x) + Fraction(8) ** (1 + 4 * x)
    )


def _case6_expanded(x):
    cm = _s(2 * x + 1) * _p2(4 * x - 1) + _p2(8 * x - 2)
    cn = _s(3 * x + 1) * _p2(6 * x - 1) + _p2(12 * x - 2)
    return 3 * cm * (_p2(8 * x) - cm) ** 2 + cm ** 3 - 2 * cn * (_p2(12 * x) - cn)


def _case6_simplified(x):
    return Fraction(16) ** (-1 + 4 * x) * (
        -12 + _s(x) * _p2(3 + 2 * x) - 3 * _p2(1 + 4 * x) + Fraction(256) ** x
    )


def _case7_expanded(x):
    # Printed with an unclosed parenthesis; closed after the second factor.
    return 2 * _p2(4 * x - 4) * (_p2(4 * x - 2) - _p2(4 * x - 4)) - (
        _s(2 * x) * _p2(4 * x - 3) + _p2(8 * x - 6)
    )


def _case7_simplified(x):
    return _p2(-7 + 4 * x) * (-16 + Fraction(16) ** x)


def _case8_expanded(x):
    cn = _s(x + 1) * _p2(2 * x - 1) + _p2(4 * x - 2)
    return 2 * cn * (_p2(4 * x) - cn) - (_s(2 * x + 1) * _p2(4 * x - 1) + _p2(8 * x - 2))


def _case8_simplified(x):
    return Fraction(8) ** (-1 + 2 * x) * (-4 * _s(x) + Fraction(4) ** x)


def _case9_expanded(x):
    cn = _s(x + 1) * _p2(2 * x - 2) + _p2(4 * x - 3)
    return 2 * cn * (_p2(4 * x - 1) - cn) - _p2(8 * x - 4)


def _case9_simplified(x):
    return _p2(-5 + 4 * x) * (-4 - _s(x) * Fraction(4) ** (1 + x) + Fraction(16) ** x)


def _case10_expanded(x, top_exponent):
    cn = _s(x + 1) * _p2(2 * x - 1) + _p2(4 * x - 1)
    return 2 * cn * (_p2(top_exponent) - cn) - _p2(8 * x)


def _case10_simplified(x):
    return _p2(-1 + 4 * x) * (-1 - _s(x) * _p2(1 + 2 * x) + Fraction(16) ** x)


@dataclass(frozen=True)
class _Case:
    x_min: int
    sizes: Callable[[int], tuple[str, int, str, int]]
    expanded: Callable[[int], Fraction]
    simplified: Callable[[int], Fraction]


def _c(kind: str, size: int) -> int:
    return {"m": c_three_blocks, "n": c_two_blocks, "l": c_one_block}[kind](size)


CASES: dict[int, _Case] = {
    1: _Case(1, lambda x: ("m", 4 * x - 1, "l", 12 * x - 3), _case1_expanded, _case1_simplified),
    2: _Case(1, lambda x: ("m", 4 * x + 1, "l", 12 * x + 3), _case2_expanded, _case2_simplified),
    3: _Case(0, lambda x: ("m", 8 * x + 2, "n", 12 * x + 3), _case3_expanded, _case3_simplified),
    4: _Case(1, lambda x: ("m", 8 * x - 2, "n", 12 * x - 3), _case4_expanded, _case4_simplified),
    5: _Case(0, lambda x: ("m", 8 * x + 4, "n", 12 * x + 6), _case5_expanded, _case5_simplified),
    6: _Case(1, lambda x: ("m", 8 * x, "n", 12 * x), _case6_expanded, _case6_simplified),
    7: _Case(2, lambda x: ("n", 4 * x - 2, "l", 8 * x - 4), _case7_expanded, _case7_simplified),
    8: _Case(1, lambda x: ("n", 4 * x, "l", 8 * x), _case8_expanded, _case8_simplified),
    9: _Case(1, lambda x: ("n", 4 * x - 1, "l", 8 * x - 2), _case9_expanded, _case9_simplified),
    10: _Case(
        1,
        lambda x: ("n", 4 * x + 1, "l", 8 * x + 2),
        lambda x: _case10_expanded(x, 4 * x + 11),
        _case10_simplified,
    ),
}


@dataclass(frozen=True)
class CaseResult:
    """One published case at one value of ``x``.

    ``printed_value`` is the simplified right-hand side, ``printed_expanded``
    the expanded left-hand side as printed, ``corrected_expanded`` the
    expanded side with the 2^{4x+11} term read as 2^{4x+1} (case 10 only).
    ``difference`` is the first-principles value and decides ``positive``.
    """

    case_id: int
    x: int
    m_or_n: int
    compared: str
    printed_value: Fraction
    printed_expanded: Fraction
    corrected_expanded: Fraction | None
    difference: int

    @property
    def positive(self) -> bool:
        return self.difference > 0

    @property
    def printed_matches(self) -> bool:
        return self.printed_value == self.difference

    @property
    def expanded_matches(self) -> bool:
        return self.printed_expanded == self.difference


def case_difference(case_id: int, x: int) -> CaseResult:
    try:
        case = CASES[case_id]
    except KeyError:
        raise DomainError(f"case_id must be 1..10, got {case_id}") from None
    if x < case.x_min:
        raise DomainError(f"case {case_id} is stated for x >= {case.x_min}, got x={x}")
    k1, s1, k2, s2 = case.sizes(x)
    diff = _c(k1, s1) - _c(k2, s2)
    corrected = _case10_expanded(x, 4 * x + 1) if case_id == 10 else None
    return CaseResult(
        case_id=case_id,
        x=x,
        m_or_n=s1,
        compared=f"C({k1}={s1}) - C({k2}={s2})",
        printed_value=Fraction(case.simplified(x)),
        printed_expanded=Fraction(case.expanded(x)),
        corrected_expanded=corrected,
        difference=diff,
    )


def case_grid(x_max: int) -> list[CaseResult]:
    if x_max < 0:
        raise DomainError(f"x_max must be non-negative, got {x_max}")
    return [
        case_difference(cid, x)
        for cid, case in CASES.items()
        for x in range(case.x_min, x_max + 1)
    ]


@dataclass(frozen=True)
class OrderingReport:
    q: int
    c1: int
    c2: int
    c3: int

    @property
    def ordered(self) -> bool:
        return self.c1 > self.c2 > self.c3


def ordering_report(q: int) -> OrderingReport:
    """Counts for three-, two- and one-block GHZ states of ``q`` qubits.

    The ordering is reported, not assumed: it fails at q = 6.
    """
    if q < 6 or q % 6:
        raise DomainError(f"total qubits must be a positive multiple of 6, got {q}")
    from .stabilizer import HyperState, count_negative_closed

    return OrderingReport(
        q,
        count_negative_closed(HyperState.aligned(q // 3, q // 3, q // 3)),
        count_negative_closed(HyperState.aligned(q // 2, q // 2)),
        count_negative_closed(HyperState.aligned(q)),
    )
