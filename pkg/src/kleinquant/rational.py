"""Exact rational and complex-rational parameter vectors, with "p/q" text forms."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["ParamVector", "parse_rational", "parse_int_vector", "fmt_rational"]

_RAT = r"\d+(?:/\d+)?"


def parse_rational(token: str) -> Fraction:
    token = token.strip()
    if not re.fullmatch(rf"[+-]?{_RAT}", token):
        raise ValueError(f"malformed rational {token!r}")
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {token!r}") from None


def fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_complex(token: str) -> tuple[Fraction, Fraction]:
    t = token.strip().replace(" ", "")
    if not t.endswith("i"):
        return parse_rational(t), Fraction(0)
    body = t[:-1]
    k = max(body.rfind("+"), body.rfind("-"))
    if k > 0:
        re_s, im_s = body[:k], body[k:]
    else:
        re_s, im_s = "0", body
    if im_s in ("", "+", "-"):
        im_s += "1"
    return parse_rational(re_s), parse_rational(im_s)


def parse_int_vector(text: str) -> tuple[int, ...]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not re.fullmatch(r"[+-]?\d+", tok):
            raise ValueError(f"malformed integer {tok!r}")
        out.append(int(tok))
    return tuple(out)


@dataclass(frozen=True)
class ParamVector:
    """A vector in C^I with exact rational real and imaginary parts."""

    re: tuple[Fraction, ...]
    im: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.re) != len(self.im):
            raise ValueError("real and imaginary parts differ in length")

    @classmethod
    def real(cls, values: Sequence) -> "ParamVector":
        re_ = tuple(Fraction(v) for v in values)
        return cls(re_, tuple(Fraction(0) for _ in re_))

    @classmethod
    def parse(cls, text: str) -> "ParamVector":
        pairs = [_parse_complex(tok) for tok in text.split(",")]
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    def __len__(self) -> int:
        return len(self.re)

    @property
    def is_real(self) -> bool:
        return not any(self.im)

    def dot(self, alpha) -> tuple[Fraction, Fraction]:
        """Pairing with an integer vector, as (real part, imaginary part)."""
        return (
            sum((x * a for x, a in zip(self.re, alpha)), Fraction(0)),
            sum((y * a for y, a in zip(self.im, alpha)), Fraction(0)),
        )

    def shift(self, xi) -> "ParamVector":
        return ParamVector(tuple(x + v for x, v in zip(self.re, xi)), self.im)

    def to_strings(self) -> list[str]:
        out = []
        for x, y in zip(self.re, self.im):
            if y == 0:
                out.append(fmt_rational(x))
            else:
                sign = "-" if y < 0 else "+"
                mag = abs(y)
                im_s = "" if mag == 1 else fmt_rational(mag)
                out.append(f"{fmt_rational(x)}{sign}{im_s}i")
        return out

    def __str__(self) -> str:
        return ",".join(self.to_strings())
