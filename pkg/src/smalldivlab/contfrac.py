"""Exact continued-fraction core.

Partial quotients, convergents, Legendre multiplier bounds, quotient
products and rational sandwiches of an irrational frequency, all in
big-integer arithmetic.  A frequency is never held as a float: every
order comparison against a rational goes through a nested convergent
interval (a "sandwich") and is only reported once both endpoints agree.

Index conventions: (p_0, q_0) = (0, 1), p_1 = 1, q_1 = a_1 and
q_k = a_k q_{k-1} + q_{k-2} for k >= 2.  Products M_n = a_1 ... a_n and
M'_n = (a_1 + 1) ... (a_n + 1) are stored with the empty products
M_0 = M'_0 = 1 at index 0.  ``astar[k]`` is the Legendre multiplier
bound attached to the quotient a_{k+1}, so the admissible convergent
multiples at level k are 1 <= a <= astar[k]; that enumeration starts at
k = 0, while the weighted series over denominators start at n = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional

import mpmath

DEFAULT_DEPTH_CAP = 10_000
DEFAULT_BIT_CAP = 1_000_000

_RULE_NAMES = ("omega-star", "exp-liouville")


class ExpansionError(ValueError):
    """Structural problem with a frequency spec or an expansion request."""


class DepthExhausted(ExpansionError):
    """The available expansion cannot resolve a comparison; expand deeper."""


class RuleDefect(ExpansionError):
    """A quotient rule produced an invalid partial quotient (internal defect)."""


@dataclass(frozen=True)
class FrequencySpec:
    """Recipe producing the partial quotients of a frequency in (0, 1).

    ``kind`` is one of ``literal`` (explicit finite quotient list),
    ``periodic`` (eventually periodic quotients, i.e. a quadratic surd),
    ``rule`` (quotients produced by a pure function of the index and the
    denominators so far) or ``rational`` (exact Euclidean expansion of
    numerator/denominator).  ``bit_cap`` bounds the bit size of any
    denominator q_n before the expansion is truncated; truncation is
    reported, never silent.
    """

    kind: str
    quotients: tuple = ()
    preperiod: tuple = ()
    period: tuple = ()
    rule: str = ""
    params: tuple = ()  # sorted (name, value-string) pairs
    numerator: int = 0
    denominator: int = 0
    depth_cap: int = DEFAULT_DEPTH_CAP
    bit_cap: int = DEFAULT_BIT_CAP

    def __post_init__(self):
        if self.kind not in ("literal", "periodic", "rule", "rational"):
            raise ExpansionError(f"unknown spec kind {self.kind!r}")
        if self.depth_cap < 1 or self.bit_cap < 8:
            raise ExpansionError("depth_cap/bit_cap too small")
        for a in (*self.quotients, *self.preperiod, *self.period):
            if not isinstance(a, int) or a < 1:
                raise ExpansionError(f"partial quotients must be integers >= 1, got {a!r}")
        if self.kind == "literal" and not self.quotients:
            raise ExpansionError("literal spec needs at least one quotient")
        if self.kind == "periodic" and not self.period:
            raise ExpansionError("periodic spec needs a nonempty period")
        if self.kind == "rule":
            if self.rule not in _RULE_NAMES:
                raise ExpansionError(f"unknown rule {self.rule!r}; known: {_RULE_NAMES}")
            alpha = self.param("alpha")
            if self.rule == "omega-star" and alpha not in (None, "1/n"):
                raise ExpansionError("omega-star supports only alpha=1/n")
            if self.rule == "exp-liouville":
                try:
                    c = Fraction(self.param("c", "0.5"))
                except (ValueError, ZeroDivisionError) as exc:
                    raise ExpansionError(f"bad exp-liouville rate c: {exc}")
                if c <= 0:
                    raise ExpansionError("exp-liouville needs c > 0")
            try:
                a1 = int(self.param("a1", "1"))
            except ValueError as exc:
                raise ExpansionError(f"bad rule parameter a1: {exc}")
            if a1 < 1:
                raise ExpansionError("rule parameter a1 must be >= 1")
        if self.kind == "rational":
            if not (0 < self.numerator < self.denominator):
                raise ExpansionError("rational spec needs 0 < numerator < denominator")

    # -- constructors ------------------------------------------------------

    @classmethod
    def literal(cls, quotients, **caps) -> "FrequencySpec":
        return cls(kind="literal", quotients=tuple(int(a) for a in quotients), **caps)

    @classmethod
    def periodic(cls, preperiod, period, **caps) -> "FrequencySpec":
        return cls(
            kind="periodic",
            preperiod=tuple(int(a) for a in preperiod),
            period=tuple(int(a) for a in period),
            **caps,
        )

    @classmethod
    def golden(cls, **caps) -> "FrequencySpec":
        """The all-ones expansion, i.e. the golden-mean conjugate (sqrt(5)-1)/2."""
        return cls.periodic((), (1,), **caps)

    @classmethod
    def make_rule(cls, name, **params) -> "FrequencySpec":
        caps = {k: params.pop(k) for k in ("depth_cap", "bit_cap") if k in params}
        items = tuple(sorted((k, str(v)) for k, v in params.items()))
        return cls(kind="rule", rule=name, params=items, **caps)

    @classmethod
    def rational(cls, numerator, denominator, **caps) -> "FrequencySpec":
        g = math.gcd(numerator, denominator)
        return cls(
            kind="rational", numerator=numerator // g, denominator=denominator // g, **caps
        )

    # -- helpers -----------------------------------------------------------

    def param(self, name: str, default: Optional[str] = None) -> Optional[str]:
        for key, value in self.params:
            if key == name:
                return value
        return default

    def describe(self) -> str:
        """Render the spec back in the frequency mini-language."""
        if self.kind == "literal":
            return "quotients:[" + ",".join(map(str, self.quotients)) + "]"
        if self.kind == "periodic":
            if not self.preperiod and self.period == (1,):
                return "golden"
            pre = ",".join(map(str, self.preperiod))
            per = ",".join(map(str, self.period))
            return f"surd:[{pre};{per}]"
        if self.kind == "rational":
            return f"rational:{self.numerator}/{self.denominator}"
        args = ",".join(f"{k}={v}" for k, v in self.params)
        return f"rule:{self.rule}({args})"


@dataclass(frozen=True)
class RationalInterval:
    """Open interval (lo, hi) with exact rational endpoints and lo < omega < hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ExpansionError("degenerate sandwich")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo < x < self.hi

    def strictly_inside(self, other: "RationalInterval") -> bool:
        """Proper subset as open intervals; consecutive sandwiches share one endpoint."""
        return (
            other.lo <= self.lo
            and self.hi <= other.hi
            and (self.lo, self.hi) != (other.lo, other.hi)
        )


@dataclass(frozen=True)
class ContinuedFraction:
    """Expanded frequency: quotients a_1..a_d with all derived exact data.

    ``exact`` is set only for rational specs whose expansion terminated;
    in that case the final convergent equals the represented value and no
    strict sandwich exists at the last level.
    """

    spec: FrequencySpec
    quotients: tuple  # a_1 .. a_d
    p: tuple  # p_0 .. p_d
    q: tuple  # q_0 .. q_d
    M: tuple  # M_0 = 1, M_1 .. M_d
    Mprime: tuple  # M'_0 = 1, M'_1 .. M'_d
    astar: tuple  # astar[k] bounds multiples of (q_k, p_k); k = 0 .. d-1
    truncated: bool
    exact: Optional[Fraction] = None

    @property
    def depth(self) -> int:
        return len(self.quotients)

    def convergent(self, n: int) -> Fraction:
        return Fraction(self.p[n], self.q[n])

    def sandwich(self, m: int) -> RationalInterval:
        """Interval with endpoints p_m/q_m, p_{m+1}/q_{m+1} containing omega.

        The width is exactly 1/(q_m q_{m+1}).  Even-index convergents lie
        below omega, odd-index ones above.
        """
        top = self.depth if self.exact is None else self.depth - 1
        if m < 0 or m + 1 > top:
            raise DepthExhausted(
                f"sandwich level {m} needs depth {m + 1}"
                + ("" if self.exact is None else " strictly inside the exact expansion")
                + f"; have {self.depth} quotients -- expand deeper"
            )
        a = self.convergent(m)
        b = self.convergent(m + 1)
        return RationalInterval(a, b) if m % 2 == 0 else RationalInterval(b, a)

    def finest_sandwich(self) -> RationalInterval:
        top = self.depth if self.exact is None else self.depth - 1
        return self.sandwich(top - 1)

    def omega_float(self) -> float:
        """Float midpoint of the finest sandwich (exact value when rational)."""
        if self.exact is not None:
            return float(self.exact)
        return float(self.finest_sandwich().midpoint)


def mul_big_float(big: int, x: float) -> float:
    """big * x with one exact rounding; +-inf instead of OverflowError.

    Plain int * float converts the integer first and blows up beyond
    1e308 even when the product itself is representable.
    """
    if big.bit_length() <= 1020:
        return big * x
    try:
        return float(Fraction(big) * Fraction(x))
    except OverflowError:
        return math.copysign(math.inf, x)


def legendre_astar(a_next: int) -> int:
    """Largest integer strictly below sqrt((a_next + 2) / 2).

    Equivalently the floor of that square root, decremented when the root
    is itself an integer.  Computed exactly: t < sqrt((a+2)/2) iff
    2 t^2 <= a + 1 for integers, so the answer is isqrt((a + 1) // 2).
    """
    if a_next < 1:
        raise ExpansionError("partial quotient must be >= 1")
    return max(1, isqrt((a_next + 1) // 2))


# ---------------------------------------------------------------------------
# expansion
# ---------------------------------------------------------------------------


def _exact_exp_ratio(x: Fraction, divisor: int, mode: str) -> int:
    """Exact floor/ceil of exp(x)/divisor for rational x > 0.

    exp of a nonzero rational is transcendental, hence never an integer
    multiple of ``divisor``; interval evaluation at growing precision
    always settles the floor/ceil.
    """
    # enough bits for the result plus the argument
    est_bits = int(float(x) / math.log(2)) + x.denominator.bit_length() + 64
    prec = max(est_bits, x.numerator.bit_length() + 64)
    for _ in range(8):
        old = mpmath.iv.prec
        try:
            mpmath.iv.prec = prec
            val = mpmath.iv.exp(
                mpmath.iv.mpf(x.numerator) / mpmath.iv.mpf(x.denominator)
            ) / mpmath.iv.mpf(divisor)
            f = mpmath.floor if mode == "floor" else mpmath.ceil
            lo = int(f(val.a))
            hi = int(f(val.b))
        finally:
            mpmath.iv.prec = old
        if lo == hi:
            return lo
        prec *= 2
    raise RuleDefect("interval floor of exp() failed to settle")  # pragma: no cover


def _rule_next(spec: FrequencySpec, n: int, q_n: int, bit_cap: int):
    """Quotient a_{n+1} for a rule spec, or None when it would blow bit_cap.

    ``n`` is the index of the last computed quotient (n >= 1), ``q_n`` the
    matching denominator.
    """
    if spec.rule == "omega-star":
        # a_{n+1} = max(1, floor(exp(q_n / n) / q_n) - 1)
        x = Fraction(q_n, n)
    else:  # exp-liouville: a_{n+1} = ceil(exp(c * q_n) / q_n)
        x = Fraction(spec.param("c", "0.5")) * q_n
    # cheap overshoot test before any big evaluation
    try:
        x_float = x.numerator / x.denominator
    except OverflowError:
        return None
    est_bits = x_float / math.log(2) - math.log2(q_n) + q_n.bit_length()
    if est_bits > bit_cap + 64:
        return None
    if spec.rule == "omega-star":
        a = _exact_exp_ratio(x, q_n, "floor") - 1
        return max(1, a)
    return _exact_exp_ratio(x, q_n, "ceil")


def expand(spec: FrequencySpec, depth: int) -> ContinuedFraction:
    """Expand a frequency spec to ``depth`` partial quotients.

    All invariant lists are filled to min(depth, cap-limited length); the
    ``truncated`` flag is set whenever a cap fired.  A rule producing a
    quotient < 1 after clamping raises RuleDefect; exceeding ``bit_cap``
    truncates gracefully.
    """
    if depth < 1:
        raise ExpansionError("depth must be >= 1")
    target = min(depth, spec.depth_cap)
    hit_cap = depth > spec.depth_cap

    a_list: list = []
    p_list, q_list = [0], [1]
    p_prev, q_prev = 1, 0  # index -1
    m_list, mp_list = [1], [1]
    exact = None
    rat_state = None
    if spec.kind == "rational":
        rat_state = (spec.denominator, spec.numerator)

    def next_quotient():
        nonlocal rat_state
        n = len(a_list)
        if spec.kind == "literal":
            return spec.quotients[n] if n < len(spec.quotients) else None
        if spec.kind == "periodic":
            if n < len(spec.preperiod):
                return spec.preperiod[n]
            return spec.period[(n - len(spec.preperiod)) % len(spec.period)]
        if spec.kind == "rational":
            den, num = rat_state
            if num == 0:
                return None
            a = den // num
            rat_state = (num, den - a * num)
            return a
        # rule specs: a_1 comes from the parameter, later terms from the rule
        if n == 0:
            return int(spec.param("a1", "1"))
        return _rule_next(spec, n, q_list[-1], spec.bit_cap)

    while len(a_list) < target:
        a = next_quotient()
        if a is None:
            if spec.kind == "rational" and rat_state[1] == 0:
                exact = Fraction(spec.numerator, spec.denominator)
            else:
                hit_cap = True  # literal list exhausted or rule over bit_cap
            break
        if a < 1:
            raise RuleDefect(f"rule produced quotient {a} < 1 at index {len(a_list) + 1}")
        q_next = a * q_list[-1] + q_prev
        if q_next.bit_length() > spec.bit_cap:
            hit_cap = True
            break
        p_next = a * p_list[-1] + p_prev
        p_prev, q_prev = p_list[-1], q_list[-1]
        a_list.append(a)
        p_list.append(p_next)
        q_list.append(q_next)
        m_list.append(m_list[-1] * a)
        mp_list.append(mp_list[-1] * (a + 1))

    if not a_list:
        raise ExpansionError("expansion produced no quotients")
    return ContinuedFraction(
        spec=spec,
        quotients=tuple(a_list),
        p=tuple(p_list),
        q=tuple(q_list),
        M=tuple(m_list),
        Mprime=tuple(mp_list),
        astar=tuple(legendre_astar(a) for a in a_list),
        truncated=hit_cap,
        exact=exact,
    )


def sandwich(cf: ContinuedFraction, m: int) -> RationalInterval:
    """Module-level alias for :meth:`ContinuedFraction.sandwich`."""
    return cf.sandwich(m)


# ---------------------------------------------------------------------------
# exact comparisons against omega
# ---------------------------------------------------------------------------


def cmp_omega(cf: ContinuedFraction, target: Fraction) -> int:
    """Exact sign of omega - target (-1, 0, +1); 0 only for rational specs."""
    if cf.exact is not None:
        d = cf.exact - target
        return (d > 0) - (d < 0)
    box = cf.finest_sandwich()
    if target <= box.lo:
        return 1
    if target >= box.hi:
        return -1
    raise DepthExhausted(
        f"cannot separate omega from {target}; expand beyond depth {cf.depth}"
    )


def floor_mult(cf: ContinuedFraction, n: int) -> int:
    """Exact floor(n * omega) for an integer n >= 1."""
    if n < 1:
        raise ExpansionError("floor_mult needs n >= 1")
    if cf.exact is not None:
        return (n * cf.exact.numerator) // cf.exact.denominator
    box = cf.finest_sandwich()
    f_lo = (n * box.lo.numerator) // box.lo.denominator
    f_hi = (n * box.hi.numerator) // box.hi.denominator
    if f_lo == f_hi:
        return f_lo
    raise DepthExhausted(
        f"floor({n}*omega) unresolved at depth {cf.depth}; expand deeper"
    )


def divisor_interval(cf: ContinuedFraction, q: int, p: int):
    """Exact rational enclosure (lo, hi) of the small divisor q*omega - p.

    Signed; lo <= q*omega - p <= hi with equality only for rational specs
    (or q = 0, where the value is the exact integer -p).
    """
    if q == 0:
        v = Fraction(-p)
        return v, v
    if cf.exact is not None:
        v = q * cf.exact - p
        return v, v
    box = cf.finest_sandwich()
    lo = q * box.lo - p
    hi = q * box.hi - p
    return (lo, hi) if q > 0 else (hi, lo)


def resolve_depth_for_box(cf: ContinuedFraction, box_radius: int) -> int:
    """Smallest sandwich level m with q_m > 2 * box_radius.

    At that level every floor(q * omega) with 0 < q <= box_radius is
    determined: the sandwich width q/(q_m q_{m+1}) is below the distance
    from q*omega to the nearest integer, which is at least |q_{m-1}
    omega - p_{m-1}| > 1/(2 q_m) for q < q_m.
    """
    for m in range(cf.depth + 1):
        if cf.q[m] > 2 * box_radius:
            if m + 1 <= (cf.depth if cf.exact is None else cf.depth - 1):
                return m
            break
    raise DepthExhausted(
        f"expansion of depth {cf.depth} too shallow for box radius {box_radius};"
        " expand deeper"
    )


# ---------------------------------------------------------------------------
# nearest-integer lemma verification
# ---------------------------------------------------------------------------


def verify_nint_lemma(cf: ContinuedFraction, k_max: int):
    """Check |a q_k omega - a p_k| < 1/2 for k <= k_max, 1 <= a <= astar[k].

    Returns a list of (k, a, verdict) triples, all expected True.  When
    a_1 = 1 the frequency exceeds 1/2 and the level-0 primitive pair
    coincides with the level-1 convergent (q_0 = q_1 = 1, and the nearest
    integer to q_0*omega is p_1, not p_0); level 0 carries no separate
    multiple in that case and is skipped.
    """
    if k_max + 1 > cf.depth:
        raise DepthExhausted(
            f"verify_nint_lemma(k_max={k_max}) needs depth >= {k_max + 1}"
        )
    half = Fraction(1, 2)
    results = []
    for k in range(k_max + 1):
        if k == 0 and cf.quotients[0] == 1:
            continue
        qk, pk = cf.q[k], cf.p[k]
        for a in range(1, cf.astar[k] + 1):
            lo, hi = divisor_interval(cf, a * qk, a * pk)
            if -half < lo and hi < half:
                results.append((k, a, True))
            elif lo >= half or hi <= -half:
                results.append((k, a, False))
            else:
                raise DepthExhausted(
                    f"nint check unresolved at (k={k}, a={a}); expand deeper"
                )
    return results
