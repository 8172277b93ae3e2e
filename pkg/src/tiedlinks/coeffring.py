"""Exact arithmetic in the coefficient field of the invariant.

Values live in Q(u, v, x, y, w, z)[l] / (l^2 - L) with

    L = (z - (u - 1/u)*x) / z,

so every scalar has a unique normal form c0 + c1*l with c0, c1 rational
functions.  Rational functions are stored as pairs of integer-coefficient
Laurent polynomials; the pair is normalized (common monomial extracted,
integer content reduced, positive leading denominator coefficient) but a
full multivariate gcd is never computed.  Equality is decided exactly by
cross-multiplication, which is sound because Laurent polynomials over Q
form an integral domain.

All values are immutable and safe to share between tasks.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from functools import lru_cache
from math import gcd

_backend = os.environ.get("TIEDLINKS_KERNEL", "")
if _backend == "py":
    from . import _kernel_py as _K
elif _backend == "c":
    from . import _kernel_c as _K  # type: ignore[no-redef]
else:
    try:
        from . import _kernel_c as _K  # type: ignore[no-redef]
    except ImportError:
        from . import _kernel_py as _K  # type: ignore[no-redef]

VARS = ("u", "v", "x", "y", "w", "z")
VAR_INDEX = {name: i for i, name in enumerate(VARS)}
NVARS = 6
ZERO_EXP = (0,) * NVARS

_P_ONE = {ZERO_EXP: 1}


def kernel_backend() -> str:
    """Name of the polynomial kernel in use ('c' or 'py')."""
    return "c" if _K.__name__.endswith("_c") else "py"


class UnknownConstant(ValueError):
    pass


class DegenerateNorm(ArithmeticError):
    """Norm of a nonzero scalar vanished; indicates an internal bug."""


def _exp(name: str, power: int = 1) -> tuple:
    e = [0] * NVARS
    e[VAR_INDEX[name]] = power
    return tuple(e)


def _fraction_poly_to_pair(terms: dict) -> tuple[dict, dict]:
    """Convert {exp: Fraction} to (int numerator poly, int constant denominator)."""
    lcm = 1
    for c in terms.values():
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    num = {}
    for e, c in terms.items():
        v = int(c * lcm)
        if v:
            num[e] = v
    return num, {ZERO_EXP: lcm}


class RatFn:
    """A rational function num/den in u, v, x, y, w, z, exactly normalized."""

    __slots__ = ("num", "den")

    def __init__(self, num: dict, den: dict):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num = {}
            self.den = dict(_P_ONE)
            return
        shift = _K.p_min_exps(num, den)
        if shift != ZERO_EXP:
            neg = tuple(-s for s in shift)
            num = _K.p_shift(num, neg)
            den = _K.p_shift(den, neg)
        g = gcd(_K.p_content(num), _K.p_content(den))
        if _K.p_lead_coeff(den) < 0:
            g = -g
        if g != 1:
            num = {e: c // g for e, c in num.items()}
            den = {e: c // g for e, c in den.items()}
        self.num = num
        self.den = den

    @staticmethod
    def from_int(k: int) -> "RatFn":
        return RatFn({ZERO_EXP: k} if k else {}, dict(_P_ONE))

    @staticmethod
    def from_fraction(q: Fraction) -> "RatFn":
        return RatFn({ZERO_EXP: q.numerator} if q else {}, {ZERO_EXP: q.denominator})

    @staticmethod
    def var(name: str, power: int = 1) -> "RatFn":
        return RatFn({_exp(name, power): 1}, dict(_P_ONE))

    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other: "RatFn") -> "RatFn":
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            return RatFn(_K.p_add(self.num, other.num), self.den)
        return RatFn(
            _K.p_add(_K.p_mul(self.num, other.den), _K.p_mul(other.num, self.den)),
            _K.p_mul(self.den, other.den),
        )

    def __neg__(self) -> "RatFn":
        return RatFn(_K.p_neg(self.num), self.den)

    def __sub__(self, other: "RatFn") -> "RatFn":
        return self + (-other)

    def __mul__(self, other: "RatFn") -> "RatFn":
        if not self.num or not other.num:
            return _RF_ZERO
        return RatFn(_K.p_mul(self.num, other.num), _K.p_mul(self.den, other.den))

    def inv(self) -> "RatFn":
        if not self.num:
            raise ZeroDivisionError("inverting zero rational function")
        return RatFn(self.den, self.num)

    def __truediv__(self, other: "RatFn") -> "RatFn":
        return self * other.inv()

    def __pow__(self, e: int) -> "RatFn":
        base = self if e >= 0 else self.inv()
        e = abs(e)
        out = _RF_ONE
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatFn):
            return NotImplemented
        if self.num == other.num and self.den == other.den:
            return True
        return _K.p_mul(self.num, other.den) == _K.p_mul(other.num, self.den)

    __hash__ = None  # structurally different representatives may be equal

    def key(self) -> tuple:
        """Hashable canonical key (sorted term lists)."""
        return (
            tuple(sorted(self.num.items())),
            tuple(sorted(self.den.items())),
        )

    def subs(self, values: dict) -> "RatFn":
        """Substitute Fractions for a subset of the variables, exactly."""
        num_f = _subs_poly(self.num, values)
        den_f = _subs_poly(self.den, values)
        n_num, n_den = _fraction_poly_to_pair(num_f)
        d_num, d_den = _fraction_poly_to_pair(den_f)
        return RatFn(_K.p_mul(n_num, d_den), _K.p_mul(d_num, n_den))

    def __repr__(self) -> str:
        return f"RatFn({ratfn_str(self)})"


def _subs_poly(p: dict, values: dict) -> dict:
    idx = {VAR_INDEX[name]: Fraction(v) for name, v in values.items()}
    for i, v in idx.items():
        if v == 0:
            raise ZeroDivisionError(f"substituting 0 for {VARS[i]} in a Laurent polynomial")
    out: dict = {}
    for e, c in p.items():
        f = Fraction(c)
        new_e = list(e)
        for i, v in idx.items():
            if e[i]:
                f *= v ** e[i]
            new_e[i] = 0
        ne = tuple(new_e)
        s = out.get(ne, Fraction(0)) + f
        if s:
            out[ne] = s
        elif ne in out:
            del out[ne]
    return out


_RF_ZERO = RatFn.from_int(0)
_RF_ONE = RatFn.from_int(1)


class Scalar:
    """An element c0 + c1*l of the quadratic extension, in normal form."""

    __slots__ = ("c0", "c1")

    def __init__(self, c0: RatFn, c1: RatFn):
        self.c0 = c0
        self.c1 = c1

    @staticmethod
    def from_int(k: int) -> "Scalar":
        return Scalar(RatFn.from_int(k), _RF_ZERO)

    @staticmethod
    def from_fraction(q: Fraction) -> "Scalar":
        return Scalar(RatFn.from_fraction(q), _RF_ZERO)

    def is_zero(self) -> bool:
        return self.c0.is_zero() and self.c1.is_zero()

    def __add__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.c0 + other.c0, self.c1 + other.c1)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.c0, -self.c1)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.c0 - other.c0, self.c1 - other.c1)

    def __mul__(self, other: "Scalar") -> "Scalar":
        a0, a1, b0, b1 = self.c0, self.c1, other.c0, other.c1
        # l^2 reduces to L, never stored
        if a1.is_zero() and b1.is_zero():
            return Scalar(a0 * b0, _RF_ZERO)
        return Scalar(a0 * b0 + a1 * b1 * _L_RF, a0 * b1 + a1 * b0)

    def inv(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverting zero scalar")
        nrm = self.c0 * self.c0 - self.c1 * self.c1 * _L_RF
        if nrm.is_zero():
            raise DegenerateNorm("nonzero scalar with zero norm")
        return Scalar(self.c0 / nrm, -(self.c1 / nrm))

    def __truediv__(self, other: "Scalar") -> "Scalar":
        return self * other.inv()

    def __pow__(self, e: int) -> "Scalar":
        if e < 0:
            return self.inv() ** (-e)
        out = _S_ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.c0 == other.c0 and self.c1 == other.c1

    __hash__ = None

    def key(self) -> tuple:
        return (self.c0.key(), self.c1.key())

    def subs(self, values: dict) -> "Scalar":
        return Scalar(self.c0.subs(values), self.c1.subs(values))

    def __repr__(self) -> str:
        return f"Scalar({scalar_str(self)})"


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def scalar_inv(a: Scalar) -> Scalar:
    return a.inv()


def scalar_eq(a: Scalar, b: Scalar) -> bool:
    return a == b


# ---------------------------------------------------------------------------
# named constants

_RF_X = RatFn.var("x")
_RF_Z = RatFn.var("z")
# L = (z - (u - 1/u)x)/z
_L_RF = (RatFn.var("z") - (RatFn.var("u") - RatFn.var("u", -1)) * RatFn.var("x")) / RatFn.var("z")

_S_ZERO = Scalar.from_int(0)
_S_ONE = Scalar.from_int(1)
_S_LAMBDA = Scalar(_RF_ZERO, _RF_ONE)

_DELTA_U = RatFn.var("u") - RatFn.var("u", -1)
_DELTA_V = RatFn.var("v") - RatFn.var("v", -1)

_CONSTANTS = {
    "u": Scalar(RatFn.var("u"), _RF_ZERO),
    "v": Scalar(RatFn.var("v"), _RF_ZERO),
    "x": Scalar(RatFn.var("x"), _RF_ZERO),
    "y": Scalar(RatFn.var("y"), _RF_ZERO),
    "w": Scalar(RatFn.var("w"), _RF_ZERO),
    "z": Scalar(RatFn.var("z"), _RF_ZERO),
    "l": _S_LAMBDA,
    "lambda": _S_LAMBDA,
    "L": Scalar(_L_RF, _RF_ZERO),
    "D": Scalar(_RF_ZERO, (_RF_Z * _L_RF).inv()),  # 1/(z*sqrt(L)) = l/(z*L)
    "one": _S_ONE,
    "zero": _S_ZERO,
    "delta_u": Scalar(_DELTA_U, _RF_ZERO),
    "delta_v": Scalar(_DELTA_V, _RF_ZERO),
    "du": Scalar(_DELTA_U, _RF_ZERO),
    "dv": Scalar(_DELTA_V, _RF_ZERO),
}


def constant(name: str) -> Scalar:
    try:
        return _CONSTANTS[name]
    except KeyError:
        raise UnknownConstant(f"unknown constant {name!r}") from None


@lru_cache(maxsize=None)
def lambda_power(e: int) -> Scalar:
    """l**e with negative powers rationalized through 1/l = l/L."""
    return _S_LAMBDA**e


# ---------------------------------------------------------------------------
# the mirror substitution
#
# Crossing-sign reversal acts on invariant values by the unique field
# automorphism with u -> 1/u, v -> 1/v, l -> 1/l.  Well-definedness on the
# quadratic extension forces the trace parameters along:
#   z -> z*L = z - (u - 1/u)x,   y -> y - (v - 1/v)x,   w -> w - (v - 1/v)x,
# and x is fixed.  Then L -> 1/L, so l -> l/L squares correctly, and the
# whole map is an involution.

_MIRROR_IMAGES = {
    VAR_INDEX["u"]: RatFn.var("u", -1),
    VAR_INDEX["v"]: RatFn.var("v", -1),
    VAR_INDEX["x"]: RatFn.var("x"),
    VAR_INDEX["y"]: RatFn.var("y") - _DELTA_V * _RF_X,
    VAR_INDEX["w"]: RatFn.var("w") - _DELTA_V * _RF_X,
    VAR_INDEX["z"]: _RF_Z * _L_RF,
}


def _mirror_poly(p: dict) -> RatFn:
    out = _RF_ZERO
    for e, c in p.items():
        term = RatFn.from_int(c)
        for i, k in enumerate(e):
            if k:
                term = term * _MIRROR_IMAGES[i] ** k
        out = out + term
    return out


def _mirror_ratfn(r: RatFn) -> RatFn:
    return _mirror_poly(r.num) / _mirror_poly(r.den)


def mirror_map(a: Scalar) -> Scalar:
    return Scalar(_mirror_ratfn(a.c0), _mirror_ratfn(a.c1) / _L_RF)


# ---------------------------------------------------------------------------
# rendering

def _monomial_str(e: tuple) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 0:
            continue
        parts.append(VARS[i] if k == 1 else f"{VARS[i]}^{k}")
    return "*".join(parts)


def poly_str(p: dict) -> str:
    if not p:
        return "0"
    out = []
    for e, c in sorted(p.items()):
        mono = _monomial_str(e)
        if mono:
            body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
        else:
            body = str(abs(c))
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(out)


def _ratfn_str_embedded(r: RatFn) -> str:
    """Render for use inside a product, parenthesizing where needed."""
    num = poly_str(r.num)
    if r.den == _P_ONE:
        return f"({num})" if len(r.num) > 1 else num
    return f"({num})/({poly_str(r.den)})"


def ratfn_str(r: RatFn) -> str:
    num = poly_str(r.num)
    if r.den == _P_ONE:
        return num
    return f"({num})/({poly_str(r.den)})"


def scalar_str(s: Scalar) -> str:
    parts = []
    if not s.c0.is_zero():
        parts.append(ratfn_str(s.c0))
    if not s.c1.is_zero():
        if s.c1 == _RF_ONE:
            parts.append("l")
        else:
            parts.append(f"l*{_ratfn_str_embedded(s.c1)}")
    if not parts:
        return "0"
    return " + ".join(parts)


def _monomial_latex(e: tuple) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 0:
            continue
        v = VARS[i]
        parts.append(v if k == 1 else f"{v}^{{{k}}}")
    return " ".join(parts)


def _poly_latex(p: dict) -> str:
    if not p:
        return "0"
    out = []
    for e, c in sorted(p.items()):
        mono = _monomial_latex(e)
        body = mono if (mono and abs(c) == 1) else (f"{abs(c)} {mono}".strip())
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(out)


def _ratfn_latex(r: RatFn) -> str:
    if r.den == _P_ONE:
        return _poly_latex(r.num)
    return f"\\frac{{{_poly_latex(r.num)}}}{{{_poly_latex(r.den)}}}"


def scalar_latex(s: Scalar) -> str:
    parts = []
    if not s.c0.is_zero():
        parts.append(_ratfn_latex(s.c0))
    if not s.c1.is_zero():
        if s.c1 == _RF_ONE:
            parts.append("\\lambda")
        else:
            parts.append(f"\\lambda \\left({_ratfn_latex(s.c1)}\\right)")
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# JSON serialization (canonical: terms sorted by the exponent order)

def _poly_to_json(p: dict) -> list:
    return [
        {"coeff": str(c), "exp": {VARS[i]: e[i] for i in range(NVARS)}}
        for e, c in sorted(p.items())
    ]


def _ratfn_to_json(r: RatFn) -> dict:
    if r.is_zero():
        return {}
    return {"num": _poly_to_json(r.num), "den": _poly_to_json(r.den)}


def scalar_to_json(s: Scalar) -> dict:
    return {"lambda0": _ratfn_to_json(s.c0), "lambda1": _ratfn_to_json(s.c1)}


def _poly_from_json(terms: list) -> tuple[dict, dict]:
    acc: dict = {}
    for t in terms:
        q = Fraction(t["coeff"])
        e = tuple(int(t["exp"].get(v, 0)) for v in VARS)
        s = acc.get(e, Fraction(0)) + q
        if s:
            acc[e] = s
        elif e in acc:
            del acc[e]
    return _fraction_poly_to_pair(acc)


def _ratfn_from_json(obj: dict) -> RatFn:
    if not obj:
        return _RF_ZERO
    n_num, n_den = _poly_from_json(obj["num"])
    d_num, d_den = _poly_from_json(obj["den"])
    return RatFn(_K.p_mul(n_num, d_den), _K.p_mul(d_num, n_den))


def scalar_from_json(obj: dict) -> Scalar:
    return Scalar(_ratfn_from_json(obj["lambda0"]), _ratfn_from_json(obj["lambda1"]))


def scalar_json_dumps(s: Scalar) -> str:
    return json.dumps(scalar_to_json(s), sort_keys=True)
