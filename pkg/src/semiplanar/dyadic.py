from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

SIGMA_DIGITS = 16


@total_ordering
@dataclass(frozen=True, eq=False)
class DyadicValue:
    """The exact number ``count * 2**shift``.

    Equality and ordering are by value, so ``DyadicValue(254, -1) == 127``.
    """

    count: int
    shift: int

    def _scaled(self, other: "DyadicValue") -> tuple[int, int]:
        lo = min(self.shift, other.shift)
        return self.count << (self.shift - lo), other.count << (other.shift - lo)

    @staticmethod
    def _coerce(other: object) -> "DyadicValue | None":
        if isinstance(other, DyadicValue):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return DyadicValue(other, 0)
        if isinstance(other, Fraction) and other.denominator & (other.denominator - 1) == 0:
            return DyadicValue(other.numerator, -(other.denominator.bit_length() - 1))
        return None

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._scaled(o)
        return a == b

    def __lt__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._scaled(o)
        return a < b

    def __hash__(self) -> int:
        return hash(self.to_fraction())

    def to_fraction(self) -> Fraction:
        if self.shift >= 0:
            return Fraction(self.count << self.shift)
        return Fraction(self.count, 1 << -self.shift)

    def decimal(self, digits: int = SIGMA_DIGITS) -> str:
        """Exact decimal expansion with at least ``digits`` fractional digits."""
        if self.shift >= 0:
            return f"{self.count << self.shift}.{'0' * digits}"
        k = -self.shift
        # count / 2^k == count * 5^k / 10^k
        scaled = self.count * 5 ** k
        whole, frac = divmod(scaled, 10 ** k)
        frac_text = f"{frac:0{k}d}"
        if k < digits:
            frac_text += "0" * (digits - k)
        else:
            frac_text = frac_text.rstrip("0").ljust(digits, "0")
        return f"{whole}.{frac_text}"

    def __str__(self) -> str:
        return self.decimal()

    def __repr__(self) -> str:
        return f"DyadicValue({self.count}, {self.shift})"


def parse_decimal(text: str) -> Fraction:
    return Fraction(text)
