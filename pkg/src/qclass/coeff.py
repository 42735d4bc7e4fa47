"""Exact coefficient arithmetic.

Everything downstream is linear algebra over one coefficient field: the
fraction field of Laurent polynomials in s = q^(1/2), the formal block
parameters z1..zl and an optional generic parameter t, with Gaussian
rational coefficients.  Exponents of q are always represented through s
(q^k is s^(2k)) so that half-integer powers of q stay in the ring, and
the fourth root of unity i is carried either in a Monomial unit or in
the Gaussian coefficients.

Fractions are kept unreduced apart from cheap normalizations (rational
content, monomial gcd, a unit-canonical denominator and opportunistic
exact division); equality is decided by cross-multiplication, which is
sound without polynomial gcd.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from qclass._core import padd, pmul, pneg, pnorm, pscale, zexp_add

# unit exponent u (i^u) acting on a Gaussian pair (re, im)
_UNIT_MUL = (
    lambda a, b: (a, b),
    lambda a, b: (-b, a),
    lambda a, b: (-a, -b),
    lambda a, b: (b, -a),
)


class NearZeroDenominator(ArithmeticError):
    """Numeric evaluation hit a denominator below the safety threshold."""


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """Element of Q(i) with exact rational real and imaginary parts."""

    re: Fraction
    im: Fraction

    @staticmethod
    def of(re, im=0) -> "GaussianRational":
        return GaussianRational(Fraction(re), Fraction(im))

    def __add__(self, other):
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __mul__(self, other):
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("gaussian rational inverse of 0")
        return GaussianRational(self.re / n, -self.im / n)

    def as_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}*i)"


@dataclass(frozen=True, slots=True)
class Monomial:
    """Invertible monomial: i^unit * s^s_exp * prod z_k^z_exps[k] * t^t_exp."""

    unit: int = 0
    s_exp: int = 0
    z_exps: tuple = ()
    t_exp: int = 0

    def __post_init__(self):
        object.__setattr__(self, "unit", self.unit % 4)
        z = self.z_exps
        if z and z[-1] == 0:
            while z and z[-1] == 0:
                z = z[:-1]
            object.__setattr__(self, "z_exps", z)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(
            self.unit + other.unit,
            self.s_exp + other.s_exp,
            zexp_add(self.z_exps, other.z_exps),
            self.t_exp + other.t_exp,
        )

    def inverse(self) -> "Monomial":
        return Monomial(
            -self.unit, -self.s_exp, tuple(-v for v in self.z_exps), -self.t_exp
        )

    def __pow__(self, k: int) -> "Monomial":
        return Monomial(
            self.unit * k,
            self.s_exp * k,
            tuple(v * k for v in self.z_exps),
            self.t_exp * k,
        )

    def is_one(self) -> bool:
        return self.unit == 0 and self.s_exp == 0 and not self.z_exps and self.t_exp == 0

    def key(self):
        return (self.unit, self.s_exp, self.z_exps, self.t_exp)

    def limit_s1(self):
        """Signed-monomial limit as s -> 1: drops the s exponent."""
        return (self.unit, self.z_exps, self.t_exp)

    def eval(self, assign) -> complex:
        v = 1j ** self.unit * assign["s"] ** self.s_exp
        for k, e in enumerate(self.z_exps):
            if e:
                v *= assign[f"z{k + 1}"] ** e
        if self.t_exp:
            v *= assign["t"] ** self.t_exp
        return v

    def __str__(self):
        parts = []
        if self.unit:
            parts.append({1: "i", 2: "-1", 3: "-i"}[self.unit])
        if self.s_exp:
            parts.append(f"s^{self.s_exp}")
        for k, e in enumerate(self.z_exps):
            if e:
                parts.append(f"z{k + 1}^{e}")
        if self.t_exp:
            parts.append(f"t^{self.t_exp}")
        return "*".join(parts) if parts else "1"


S = Monomial(s_exp=1)
Q = Monomial(s_exp=2)
I_UNIT = Monomial(unit=1)


def q_power(k: int) -> Monomial:
    """The monomial q^k = s^(2k)."""
    return Monomial(s_exp=2 * k)


def z_var(i: int) -> Monomial:
    """The block parameter z_i (1-based)."""
    z = [0] * i
    z[i - 1] = 1
    return Monomial(z_exps=tuple(z))


T_VAR = Monomial(t_exp=1)


class LaurentPoly:
    """Laurent polynomial backed by a canonical (terms, den) kernel datum."""

    __slots__ = ("terms", "den")

    def __init__(self, terms=None, den=1):
        self.terms = terms if terms is not None else {}
        self.den = den

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly({}, 1)

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({(0, (), 0): (1, 0)}, 1)

    @staticmethod
    def from_int(n: int) -> "LaurentPoly":
        if n == 0:
            return LaurentPoly.zero()
        return LaurentPoly({(0, (), 0): (n, 0)}, 1)

    @staticmethod
    def from_gaussian(c: GaussianRational) -> "LaurentPoly":
        if c.is_zero():
            return LaurentPoly.zero()
        d = c.re.denominator * c.im.denominator // gcd(
            c.re.denominator, c.im.denominator
        )
        t = {(0, (), 0): (int(c.re * d), int(c.im * d))}
        return LaurentPoly(*pnorm(t, d))

    @staticmethod
    def from_monomial(m: Monomial, coeff: int = 1) -> "LaurentPoly":
        if coeff == 0:
            return LaurentPoly.zero()
        re, im = _UNIT_MUL[m.unit](coeff, 0)
        return LaurentPoly({(m.s_exp, m.z_exps, m.t_exp): (re, im)}, 1)

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        return LaurentPoly(*padd(self.terms, self.den, other.terms, other.den))

    def __sub__(self, other):
        nt, nd = pneg(other.terms, other.den)
        return LaurentPoly(*padd(self.terms, self.den, nt, nd))

    def __neg__(self):
        return LaurentPoly(*pneg(self.terms, self.den))

    def __mul__(self, other):
        return LaurentPoly(*pmul(self.terms, self.den, other.terms, other.den))

    def scale(self, c: GaussianRational) -> "LaurentPoly":
        d = c.re.denominator * c.im.denominator // gcd(
            c.re.denominator, c.im.denominator
        )
        return LaurentPoly(
            *pscale(self.terms, self.den, int(c.re * d), int(c.im * d), d)
        )

    def mul_monomial(self, m: Monomial) -> "LaurentPoly":
        out = {}
        f = _UNIT_MUL[m.unit]
        for (s, z, t), (a, b) in self.terms.items():
            out[(s + m.s_exp, zexp_add(z, m.z_exps), t + m.t_exp)] = f(a, b)
        return LaurentPoly(out, self.den)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.den == other.den and self.terms == other.terms

    def __hash__(self):
        return hash((self.den, frozenset(self.terms.items())))

    def n_terms(self) -> int:
        return len(self.terms)

    def leading_key(self):
        """Largest key in the padded lexicographic monomial order.

        Trimmed z tuples must be compared as zero-padded vectors, or the
        order would not be translation invariant; when every key has the
        same z width the plain tuple order already agrees.
        """
        if not self.terms:
            return None
        it = iter(self.terms)
        width = len(next(it)[1])
        for k in it:
            if len(k[1]) != width:
                width = max(len(kk[1]) for kk in self.terms)
                return max(self.terms, key=lambda kk: _padded(kk, width))
        return max(self.terms)

    def coeff(self, m: Monomial) -> GaussianRational:
        re, im = self.terms.get((m.s_exp, m.z_exps, m.t_exp), (0, 0))
        # fold the queried unit back out of the stored coefficient
        re, im = _UNIT_MUL[(-m.unit) % 4](re, im)
        return GaussianRational(Fraction(re, self.den), Fraction(im, self.den))

    def iter_terms(self):
        """Yield (Monomial with unit 0, GaussianRational) pairs, sorted."""
        for k in sorted(self.terms):
            a, b = self.terms[k]
            yield (
                Monomial(0, k[0], k[1], k[2]),
                GaussianRational(Fraction(a, self.den), Fraction(b, self.den)),
            )

    def single_term(self):
        """If the poly is a single term, return (key, (re, im)); else None."""
        if len(self.terms) == 1:
            return next(iter(self.terms.items()))
        return None

    # -- division -----------------------------------------------------
    def divide_exact(self, divisor: "LaurentPoly", step_cap: int = 4096):
        """Return self/divisor if the division is exact, else None.

        Laurent division by the leading term always proceeds; the loop is
        bounded by step_cap to guarantee termination when the quotient is
        not a polynomial.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("poly division by zero")
        if self.is_zero():
            return LaurentPoly.zero()
        if len(divisor.terms) > 1:
            if len(self.terms) == 1:
                return None  # a monomial has no multi-term divisor
            # necessary condition: the s-spread cannot shrink
            s_self = [k[0] for k in self.terms]
            s_div = [k[0] for k in divisor.terms]
            if max(s_self) - min(s_self) < max(s_div) - min(s_div):
                return None
        single = divisor.single_term()
        if single is not None:
            (s, z, t), (a, b) = single
            inv = GaussianRational(
                Fraction(a, divisor.den), Fraction(b, divisor.den)
            ).inverse()
            m = Monomial(0, -s, tuple(-v for v in z), -t)
            return self.mul_monomial(m).scale(inv)
        width = max(len(k[1]) for k in self.terms)
        width = max(width, max(len(k[1]) for k in divisor.terms))
        lead = divisor.leading_key()
        la, lb = divisor.terms[lead]
        lead_inv = GaussianRational(
            Fraction(la, divisor.den), Fraction(lb, divisor.den)
        ).inverse()
        rem = self
        quot = LaurentPoly.zero()
        steps = 0
        while not rem.is_zero():
            steps += 1
            if steps > step_cap:
                return None
            rk = rem.leading_key()
            a, b = rem.terms[rk]
            c = GaussianRational(Fraction(a, rem.den), Fraction(b, rem.den)) * lead_inv
            qm = Monomial(0, rk[0] - lead[0], zexp_add(rk[1], tuple(-v for v in lead[1])), rk[2] - lead[2])
            piece = LaurentPoly.from_monomial(qm).scale(c)
            quot = quot + piece
            rem = rem - piece * divisor
            new_lead = rem.leading_key()
            if new_lead is not None and _padded(new_lead, width) >= _padded(rk, width):
                return None
        return quot

    # -- evaluation ---------------------------------------------------
    def eval_numeric(self, assign) -> complex:
        total = 0j
        for (s, z, t), (a, b) in self.terms.items():
            v = complex(a, b) * assign["s"] ** s
            for k, e in enumerate(z):
                if e:
                    v *= assign[f"z{k + 1}"] ** e
            if t:
                v *= assign["t"] ** t
            total += v
        return total / self.den

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for m, c in self.iter_terms():
            cs = str(c)
            ms = str(m)
            bits.append(cs if ms == "1" else (ms if cs == "1" else f"{cs}*{ms}"))
        out = " + ".join(bits)
        return out if self.den == 1 else f"({out})/{self.den}"

    __repr__ = __str__


def _padded(key, width):
    """Key with the z tuple zero-padded for order comparisons."""
    z = key[1]
    if len(z) < width:
        z = z + (0,) * (width - len(z))
    return (key[0], z, key[2])


def _monomial_shift(num: LaurentPoly, den: LaurentPoly):
    """Divide num and den by their common monomial gcd (min exponents)."""
    keys = list(num.terms) + list(den.terms)
    s_min = min(k[0] for k in keys)
    t_min = min(k[2] for k in keys)
    zlen = max((len(k[1]) for k in keys), default=0)
    z_min = [0] * zlen
    for j in range(zlen):
        z_min[j] = min(k[1][j] if j < len(k[1]) else 0 for k in keys)
    if s_min == 0 and t_min == 0 and not any(z_min):
        return num, den
    m = Monomial(0, -s_min, tuple(-v for v in z_min), -t_min)
    return num.mul_monomial(m), den.mul_monomial(m)


_EXACT_DIV_NUM_TERMS = 64
_EXACT_DIV_DEN_TERMS = 8


class FracScalar:
    """Element of the fraction field: num/den with den a nonzero LaurentPoly.

    Kept unreduced except for rational content, monomial gcd, a
    unit-canonical denominator and a bounded exact-division attempt;
    equality is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = None, normalize=True):
        if den is None:
            den = LaurentPoly.one()
        if den.is_zero():
            raise ZeroDivisionError("FracScalar with zero denominator")
        if normalize:
            num, den = self._normalize(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def _normalize(num, den):
        if num.is_zero():
            return LaurentPoly.zero(), LaurentPoly.one()
        if den.single_term() is not None:
            return num.divide_exact(den), LaurentPoly.one()
        if (
            den.n_terms() <= _EXACT_DIV_DEN_TERMS
            and num.n_terms() <= _EXACT_DIV_NUM_TERMS
        ):
            q = num.divide_exact(den, step_cap=_EXACT_DIV_NUM_TERMS)
            if q is not None:
                return q, LaurentPoly.one()
        num, den = _monomial_shift(num, den)
        # joint rational content: value = (num/a)/(den/b) = num*b / den*a
        nt, nd = num.terms, num.den
        dt, dd = den.terms, den.den
        nt2 = nt if dd == 1 else {k: (a * dd, b * dd) for k, (a, b) in nt.items()}
        dt2 = dt if nd == 1 else {k: (a * nd, b * nd) for k, (a, b) in dt.items()}
        g = 0
        for a, b in nt2.values():
            g = gcd(g, a, b)
            if g == 1:
                break
        if g != 1:
            for a, b in dt2.values():
                g = gcd(g, a, b)
                if g == 1:
                    break
        if g > 1:
            nt2 = {k: (a // g, b // g) for k, (a, b) in nt2.items()}
            dt2 = {k: (a // g, b // g) for k, (a, b) in dt2.items()}
        num = LaurentPoly(nt2, 1)
        den = LaurentPoly(dt2, 1)
        # canonical unit on the leading denominator coefficient
        la, lb = den.terms[den.leading_key()]
        if la > 0:
            u = 0
        elif la < 0:
            u = 2
        elif lb > 0:
            u = 3
        else:
            u = 1
        if u:
            m = Monomial(unit=u)
            num = num.mul_monomial(m)
            den = den.mul_monomial(m)
        return num, den

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero() -> "FracScalar":
        return FracScalar(LaurentPoly.zero(), LaurentPoly.one(), normalize=False)

    @staticmethod
    def one() -> "FracScalar":
        return FracScalar(LaurentPoly.one(), LaurentPoly.one(), normalize=False)

    @staticmethod
    def from_int(n: int) -> "FracScalar":
        return FracScalar(LaurentPoly.from_int(n), normalize=False)

    @staticmethod
    def from_monomial(m: Monomial, coeff: int = 1) -> "FracScalar":
        return FracScalar(LaurentPoly.from_monomial(m, coeff), normalize=False)

    @staticmethod
    def from_poly(p: LaurentPoly) -> "FracScalar":
        return FracScalar(p, normalize=False)

    # -- field operations ----------------------------------------------
    def __add__(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return FracScalar(self.num + other.num, self.den)
        return FracScalar(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return FracScalar(-self.num, self.den, normalize=False)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return FracScalar.zero()
        return FracScalar(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        return self * other.inverse()

    def inverse(self) -> "FracScalar":
        if self.is_zero():
            raise ZeroDivisionError("FracScalar inverse of 0")
        return FracScalar(self.den, self.num)

    def mul_monomial(self, m: Monomial) -> "FracScalar":
        return FracScalar(self.num.mul_monomial(m), self.den, normalize=False)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def __eq__(self, other):
        if not isinstance(other, FracScalar):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):  # pragma: no cover - identity-style hashing unused
        raise TypeError("FracScalar is not hashable; compare with ==")

    def eval_numeric(self, assign, den_floor: float = 1e-120) -> complex:
        d = self.den.eval_numeric(assign)
        if abs(d) < den_floor:
            raise NearZeroDenominator(
                f"denominator evaluates to {d!r} (|.| < {den_floor})"
            )
        return self.num.eval_numeric(assign) / d

    def __str__(self):
        if self.den == LaurentPoly.one():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    __repr__ = __str__


# ----------------------------------------------------------------------
# named operations
# ----------------------------------------------------------------------

Q_MINUS_QINV = LaurentPoly.from_monomial(q_power(1)) - LaurentPoly.from_monomial(
    q_power(-1)
)


def gauss_bracket(m: Monomial) -> FracScalar:
    """(m - m^{-1}) / (q - q^{-1}), reduced to denominator 1 when exact.

    This is the action value of (q^h - q^{-h})/(q - q^{-1}) on a weight
    vector whose Cartan monomial is m; the denominator does not depend
    on the root.
    """
    num = LaurentPoly.from_monomial(m) - LaurentPoly.from_monomial(m.inverse())
    return FracScalar(num, Q_MINUS_QINV)


def bracket_int(m: int, base: Monomial) -> LaurentPoly:
    """[m]_base = (base^m - base^-m)/(base - base^-1) as a polynomial."""
    if m < 0:
        raise ValueError("bracket_int needs m >= 0")
    out = LaurentPoly.zero()
    for j in range(m):
        out = out + LaurentPoly.from_monomial(base ** (m - 1 - 2 * j))
    return out


def qbinom(n: int, k: int, base: Monomial = Q) -> LaurentPoly:
    """q-binomial coefficient [n choose k] in the given bracket base."""
    if k < 0 or k > n:
        raise ValueError(f"qbinom out of range: n={n}, k={k}")
    num = LaurentPoly.one()
    den = LaurentPoly.one()
    for j in range(1, k + 1):
        num = num * bracket_int(n - k + j, base)
        den = den * bracket_int(j, base)
    out = num.divide_exact(den, step_cap=16384)
    if out is None:  # pragma: no cover - the ratio is always polynomial
        raise ArithmeticError("qbinom division was not exact")
    return out


def eval_numeric(x, assign, den_floor: float = 1e-120) -> complex:
    """Floating evaluation of a FracScalar or LaurentPoly.

    assign maps variable names ("s", "z1", "z2", ..., "t") to complex
    values; a denominator with modulus below den_floor raises
    NearZeroDenominator.
    """
    if isinstance(x, FracScalar):
        return x.eval_numeric(assign, den_floor)
    return x.eval_numeric(assign)
