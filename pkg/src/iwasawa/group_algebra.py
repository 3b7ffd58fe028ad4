"""Group rings over (Z/m)^x: Stickelberger elements, finite-level p-adic
L-elements, idempotents, character evaluation and the interpolation checks.

Coefficients stay exact rationals as long as possible (Stickelberger
denominators 1/(N p^r) would otherwise force negative-valuation bookkeeping
everywhere); p-adic digits appear when a character is evaluated or when a
character with irrational values (a nontrivial Teichmuller power) enters a
coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import exactq
from .characters import (
    DirichletCharacter,
    L_neg,
    gen_bernoulli,
    least_primitive_root,
    teichmuller_char,
)
from .iwaseries import TruncatedSeries
from .padic import PadicNumber, from_rational_abs, int_vp, teichmuller, unit_power, vp_diff


class GroupRingElement:
    """Element of Q[G_m] (or its p-adic counterpart), G_m = (Z/mZ)^x.

    Coefficient values are Fractions or PadicNumbers, keyed by the unit
    residue a indexing sigma_a.  Zero coefficients are dropped.
    """

    __slots__ = ("modulus", "coeffs")

    def __init__(self, modulus: int, coeffs: dict):
        self.modulus = modulus
        clean = {}
        for a, c in coeffs.items():
            a %= modulus
            if gcd(a, modulus) != 1:
                raise ValueError(f"{a} is not a unit mod {modulus}")
            if _is_zero_coeff(c):
                continue
            clean[a] = c
        self.coeffs = clean

    def __add__(self, other):
        if not isinstance(other, GroupRingElement) or other.modulus != self.modulus:
            return NotImplemented
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            out[a] = out[a] + c if a in out else c
        return GroupRingElement(self.modulus, out)

    def __neg__(self):
        return GroupRingElement(self.modulus, {a: -c for a, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, GroupRingElement) or other.modulus != self.modulus:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, GroupRingElement) or other.modulus != self.modulus:
            return NotImplemented
        m = self.modulus
        out: dict[int, object] = {}
        for a, c in self.coeffs.items():
            for b, d in other.coeffs.items():
                k = a * b % m
                cd = c * d
                out[k] = out[k] + cd if k in out else cd
        return GroupRingElement(m, out)

    def scalar_mul(self, s) -> "GroupRingElement":
        return GroupRingElement(self.modulus, {a: c * s for a, c in self.coeffs.items()})

    def coefficient(self, a: int):
        return self.coeffs.get(a % self.modulus, Fraction(0))

    def mass(self):
        """Sum of all coefficients (the image under the trivial character)."""
        total = Fraction(0)
        for c in self.coeffs.values():
            total = c + total
        return total

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.modulus == other.modulus and self.coeffs == other.coeffs

    def __repr__(self):
        n = len(self.coeffs)
        return f"<group ring element mod {self.modulus} with {n} terms>"


def _is_zero_coeff(c) -> bool:
    if isinstance(c, PadicNumber):
        return c.is_zero
    return c == 0


# -- Stickelberger elements and projections ---------------------------------


def stickelberger(m: int) -> GroupRingElement:
    """Sigma_m = -(1/m) sum over units a of a * sigma_a^(-1), exact rationals."""
    if m < 2:
        raise ValueError("need m >= 2")
    coeffs = {}
    for a in range(1, m):
        if gcd(a, m) == 1:
            coeffs[pow(a, -1, m)] = Fraction(-a, m)
    return GroupRingElement(m, coeffs)


def project(x: GroupRingElement, new_modulus: int) -> GroupRingElement:
    """Pushforward along sigma_a -> sigma_(a mod m'), coefficients summed on fibers."""
    if x.modulus % new_modulus != 0:
        raise ValueError("target modulus must divide the source modulus")
    out: dict[int, object] = {}
    for a, c in x.coeffs.items():
        k = a % new_modulus
        out[k] = out[k] + c if k in out else c
    return GroupRingElement(new_modulus, out)


# -- finite-level p-adic L-elements ------------------------------------------


def mu_chi_level(chi: DirichletCharacter, r: int, prec: int = 20) -> GroupRingElement:
    """The level-r element -(1/(N p^r)) sum a chi(a) sigma_(a mod p^r)^(-1).

    For nontrivial chi every coefficient lands in Z_p (checked); for the
    trivial character of conductor 1 the coefficients have valuation >= -r
    (the pseudo-measure case).  Rational-valued characters give exact
    Fraction coefficients.
    """
    p = chi.prime
    N = chi.modulus
    if N % p == 0:
        raise ValueError("conductor must be coprime to p")
    if not chi.is_primitive():
        raise ValueError("character must be primitive")
    if r < 1:
        raise ValueError("need r >= 1")
    pr = p**r
    top = N * pr
    buckets: dict[int, dict[int, int]] = {}
    for a in range(1, top + 1):
        if gcd(a, N * p) != 1:
            continue
        e = chi.exponent(a)
        slot = buckets.setdefault(a % pr, {})
        slot[e] = slot.get(e, 0) + a
    rational = all(e == 0 or 2 * e == p - 1 for e in _exponent_range(chi))
    half = (p - 1) // 2
    zeta = teichmuller(least_primitive_root(p), p, prec + r).mantissa
    zpow = [pow(zeta, e, p ** (prec + r)) for e in range(p - 1)]
    coeffs: dict[int, object] = {}
    for c, slot in buckets.items():
        key = pow(c, -1, pr)
        if rational:
            num = slot.get(0, 0) - slot.get(half, 0)
            val = Fraction(-num, N * pr)
            if not chi.is_trivial() and val != 0 and exactq.vp(val, p) < 0:
                raise AssertionError("nontrivial character produced a non-integral coefficient")
        else:
            acc = sum(zpow[e] * s for e, s in slot.items())
            val = from_rational_abs(Fraction(-acc, N * pr), p, prec)
            if not val.is_zero and val.valuation < 0:
                raise AssertionError("nontrivial character produced a non-integral coefficient")
        coeffs[key] = val
    return GroupRingElement(pr, coeffs)


def _exponent_range(chi: DirichletCharacter):
    return set(chi.exponents.values())


def h_element(N: int, r: int, p: int) -> GroupRingElement:
    """h_N = 1 - (1+Np) sigma_(1+Np)^(-1) at level r."""
    pr = p**r
    key = pow(1 + N * p, -1, pr)
    coeffs = {1: Fraction(1)}
    coeffs[key] = coeffs.get(key, Fraction(0)) - (1 + N * p)
    return GroupRingElement(pr, coeffs)


def idempotent(i: int, r: int, p: int, prec: int = 20) -> GroupRingElement:
    """e_(omega^i) = (1/(p-1)) sum_c omega^i(c)^(-1) delta_c at level r."""
    pr = p**r
    g0 = least_primitive_root(p)
    zeta = teichmuller(g0, p, prec)
    coeffs: dict[int, object] = {}
    x = 1
    for k in range(p - 1):
        delta_key = teichmuller(x, p, r).mantissa % pr
        val = zeta ** ((-i * k) % (p - 1)) / (p - 1)
        coeffs[delta_key] = val
        x = x * g0 % p
    return GroupRingElement(pr, coeffs)


def h_i_element(N: int, i: int, r: int, p: int, prec: int = 20) -> GroupRingElement:
    """h_N^(i) = 1 - (1+Np) e_(omega^i) sigma_(1+Np)^(-1) at level r."""
    pr = p**r
    one = GroupRingElement(pr, {1: Fraction(1)})
    sig_inv = GroupRingElement(pr, {pow(1 + N * p, -1, pr): Fraction(1)})
    return one - (idempotent(i, r, p, prec) * sig_inv).scalar_mul(1 + N * p)


# -- character evaluation -----------------------------------------------------


@dataclass(frozen=True)
class PadicCharSpec:
    """The character omega^i kappa_0^s of G = Gal(Q(mu_p^infty)/Q)."""

    teich_exponent: int
    wild_exponent: object  # int or PadicNumber in Z_p


def evaluate_char(x: GroupRingElement, spec: PadicCharSpec, p: int, prec: int = 20) -> PadicNumber:
    """sum_a coeff(a) * omega^i(a) * <a>^s for an element at level p^r.

    The result of evaluating a level-r element is canonical modulo p^r; it
    is computed here at the requested precision from integer lifts.
    """
    r = _p_power_level(x.modulus, p)
    norm, shift, window = _normalized_coeffs(x, p)
    K = prec + shift
    pK = p**K
    tables = _eval_tables(p, K)
    s = spec.wild_exponent
    i = spec.teich_exponent % (p - 1)
    s_int = isinstance(s, int)
    if s_int:
        s_red = s % p ** max(K - 1, 1)
    acc = 0
    for a, (num_q, extra) in norm.items():
        num = _coeff_numerator(num_q, extra, p, pK)
        abar = a % p
        w = tables.zeta_pow[(i * tables.ind[abar]) % (p - 1)]
        u = a * tables.teich_inv[abar] % pK
        if s_int:
            ks = pow(u, s_red, pK)
        else:
            ks_p = unit_power(PadicNumber(p, 0, u, K), s)
            ks = ks_p.mantissa % pK if not ks_p.is_zero else 0
        acc = (acc + num * w % pK * ks) % pK
    absprec = min(prec, window - shift) if window is not None else prec
    if absprec < 1:
        raise ValueError("coefficients carry too little precision for this evaluation")
    return from_rational_abs(Fraction(acc, p**shift), p, absprec)


def _p_power_level(m: int, p: int) -> int:
    r = 0
    while m % p == 0:
        m //= p
        r += 1
    if m != 1 or r < 1:
        raise ValueError("element must live at a level p^r, r >= 1")
    return r


def _normalized_coeffs(x: GroupRingElement, p: int):
    """Coefficients as (p-free rational, extra shift) with value q*p^extra / p^max_shift.

    Returns (table, max_shift, window) where window bounds the absolute
    precision of the evaluation (None when every coefficient is exact).
    """
    shifts = {}
    max_shift = 0
    window = None
    for a, c in x.coeffs.items():
        if isinstance(c, PadicNumber):
            e = max(0, -c.valuation)
            window = c.abs_precision if window is None else min(window, c.abs_precision)
        else:
            e = max(0, int_vp(Fraction(c).denominator, p))
        shifts[a] = e
        max_shift = max(max_shift, e)
    out = {}
    for a, c in x.coeffs.items():
        q = (c.lift() if isinstance(c, PadicNumber) else Fraction(c)) * p ** shifts[a]
        out[a] = (q, max_shift - shifts[a])
    return out, max_shift, (window + max_shift if window is not None else None)


class _EvalTables:
    __slots__ = ("zeta_pow", "ind", "teich_inv")

    def __init__(self, p, K):
        g0 = least_primitive_root(p)
        pK = p**K
        t = {}
        x = 1
        ind = {}
        for k in range(p - 1):
            ind[x] = k
            t[x] = teichmuller(x, p, K).mantissa
            x = x * g0 % p
        self.ind = ind
        self.zeta_pow = [t[pow(g0, e, p)] for e in range(p - 1)]
        self.teich_inv = {c: t[pow(c, -1, p)] for c in t}


_EVAL_CACHE: dict[tuple[int, int], _EvalTables] = {}


def _eval_tables(p: int, K: int) -> _EvalTables:
    key = (p, K)
    if key not in _EVAL_CACHE:
        _EVAL_CACHE[key] = _EvalTables(p, K)
    return _EVAL_CACHE[key]


def _coeff_numerator(q: Fraction, extra_shift: int, p: int, pK: int) -> int:
    """Integer residue mod p^K of the normalized coefficient q * p^extra_shift."""
    q = q * p**extra_shift
    den = q.denominator
    if den % p == 0:
        raise AssertionError("normalization left a p in the denominator")
    return q.numerator * pow(den, -1, pK) % pK


# -- special values and checks ------------------------------------------------


@dataclass(frozen=True)
class InterpReport:
    p: int
    chi_conductor: int
    chi_trivial: bool
    j: int
    n: int
    r: int
    lhs: PadicNumber
    rhs: PadicNumber
    agreement_valuation: float
    threshold: int
    passed: bool

    def as_dict(self):
        return {
            "p": self.p,
            "chi_conductor": self.chi_conductor,
            "chi_trivial": self.chi_trivial,
            "j": self.j,
            "n": self.n,
            "r": self.r,
            "agreement_valuation": self.agreement_valuation,
            "threshold": self.threshold,
            "pass": self.passed,
        }

    def as_text(self):
        return "\n".join(f"{k}: {v}" for k, v in self.as_dict().items())


def h_char_value(N: int, p: int, spec: PadicCharSpec, prec: int = 20) -> PadicNumber:
    """The regularizer h_N at omega^i kappa_0^s, exactly: 1 - (1+Np)^(1-s).

    Unlike evaluating the level-r image of h_N (canonical only mod p^r),
    this closed form carries full precision; that matters on the branch
    where the interpolated L-values have negative valuation.
    """
    s = spec.wild_exponent
    if isinstance(s, int):
        return PadicNumber.from_rational(1 - Fraction(1 + N * p) ** (1 - s), p, prec)
    u = PadicNumber.from_int(1 + N * p, p, prec)
    return 1 - unit_power(u, 1 - s)


def interp_check(
    chi: DirichletCharacter,
    j: int,
    n: int,
    r: int,
    prec: int | None = None,
    _mu_cache: dict | None = None,
) -> InterpReport:
    """Compare both sides of the finite-level interpolation formula.

    lhs = (h_N mu_chi at level r) evaluated at psi^(-1) kappa^(1-n) with
    psi = omega^j; rhs = h_N at the same character (closed form) times the
    Euler-corrected L(chi psi, 1-n).  Reports v_p(lhs - rhs); the congruence
    sharpens with r and the acceptance threshold is r - 1.
    """
    p = chi.prime
    if n < 1:
        raise ValueError("interpolation index n must be >= 1 (n = 0 is the "
                         "excluded character where the regularizer h vanishes)")
    if r < 2:
        raise ValueError("need level r >= 2")
    if prec is None:
        prec = r + 6
    N = chi.modulus
    key = (N, r, prec)
    if _mu_cache is not None and key in _mu_cache:
        mu = _mu_cache[key]
    else:
        mu = mu_chi_level(chi, r, prec)
        if _mu_cache is not None:
            _mu_cache[key] = mu
    h = h_element(N, r, p)
    hmu = h * mu
    spec = PadicCharSpec((1 - n - j) % (p - 1), 1 - n)
    lhs = evaluate_char(hmu, spec, p, prec)
    hval = h_char_value(N, p, spec, prec)
    if hval.is_zero:
        raise ValueError("the regularizer h vanishes at this character (the p-adic zeta pole)")
    chipsi = chi.multiply(teichmuller_char(p, j)).primitivize()
    cp = chipsi(p, prec)
    euler = PadicNumber.one(p, prec) if cp.is_zero else 1 - cp * p ** (n - 1)
    lval = L_neg(chipsi, n, prec)
    rhs = hval * euler * lval
    val = vp_diff(lhs, rhs)
    return InterpReport(p, chipsi.modulus, chi.is_trivial(), j, n, r, lhs, rhs, val, r - 1, val >= r - 1)


def mu1_at_omega(i: int, p: int, prec: int = 20) -> PadicNumber:
    """The level-1 Stickelberger image under omega^i; equals -B_(1, omega^(-i))."""
    sigma_p = stickelberger(p)
    return evaluate_char(sigma_p, PadicCharSpec(i, 0), p, prec)


@dataclass(frozen=True)
class ResidueUnitReport:
    p: int
    residue: int
    passed: bool

    def as_dict(self):
        return {"p": self.p, "residue": self.residue, "pass": self.passed}

    def as_text(self):
        return "\n".join(f"{k}: {v}" for k, v in self.as_dict().items())


def residue_unit_check(p: int, prec: int = 12) -> ResidueUnitReport:
    """Check p * B_(1, omega^(-1)) = -1 mod p (the p-adic zeta residue is a unit)."""
    b = gen_bernoulli(1, teichmuller_char(p, -1), prec)
    pb = b * p
    if pb.is_zero or pb.valuation != 0:
        return ResidueUnitReport(p, -1, False)
    res = pb.residue()
    return ResidueUnitReport(p, res, res == p - 1)


# -- the elementary continuous-extension oracle (section 5.2 style) -----------


BERNOULLI_INDEX_LIMIT = 1500


def branch_limit_index(p: int, n: int, k: int) -> int:
    """The approximation index n + p^k (p-1): Kummer-congruent to n, same branch.

    Staying in n's residue class mod p-1 makes the oracle converge to the
    value the interpolation formula assigns to the trivial tame twist, which
    is the quantity the other two constructions produce.
    """
    m = n + p**k * (p - 1)
    if m > BERNOULLI_INDEX_LIMIT:
        raise ValueError(f"Bernoulli index {m} beyond the exact-cache budget")
    return m


def branch_limit_oracle(p: int, n: int, k: int, c: int, prec: int = 12) -> PadicNumber:
    """Approximate (1 - p^(n-1)) zeta(1-n) from the Kummer-congruence limit.

    Evaluates the regularized value at the congruent index m and divides the
    (1 - c^m) factor back out, exactly as the continuity construction does;
    the division cancels in exact rationals, so c only enters the companion
    `branch_limit_regularized`.  Guaranteed agreement scale: p^(k+1) on the
    regularized values; on the plain values one p-digit per unit of
    v_p(1 - c^n) less on the branch with (p-1) | n.
    """
    if c % p == 0:
        raise ValueError("c must be prime to p")
    m = branch_limit_index(p, n, k)
    f_m = exactq.kummer_regularized_value(m, p, c)
    reg = 1 - Fraction(c) ** m
    val = -f_m / reg
    return PadicNumber.from_rational(val, p, prec)


def branch_limit_regularized(p: int, n: int, k: int, c: int) -> Fraction:
    """(1 - c^m)(1 - p^(m-1)) B_m / m at the approximation index m, exact."""
    if c % p == 0:
        raise ValueError("c must be prime to p")
    m = branch_limit_index(p, n, k)
    return exactq.kummer_regularized_value(m, p, c)


# -- eigenspace components as series ------------------------------------------


def principal_unit_dlog(u: int, p: int, r: int) -> int:
    """j with (1+p)^j = u mod p^r, for u = 1 mod p; returned mod p^(r-1)."""
    if r == 1:
        return 0
    R = r + 2
    lg_u = _int_plog(u % p**r, p, R)
    lg_g = _int_plog(1 + p, p, R)
    mod = p ** (r - 1)
    return (lg_u // p) * pow(lg_g // p, -1, mod) % mod


def _int_plog(u: int, p: int, R: int) -> int:
    """log(u) mod p^R for u = 1 mod p, as the integer residue."""
    x = u - 1
    if x % p**R == 0:
        return 0
    total = Fraction(0)
    m = 1
    while m - _ilogp(m, p) <= R:
        total += Fraction((-1) ** (m + 1), m) * Fraction(x) ** m
        m += 1
    num, den = total.numerator, total.denominator
    return num * pow(den, -1, p**R) % p**R


def _ilogp(m: int, p: int) -> int:
    v = 0
    while p ** (v + 1) <= m:
        v += 1
    return v


def component_series(x: GroupRingElement, i: int, p: int, prec: int = 12) -> TruncatedSeries:
    """Image of e_(omega^i) x in Z_p[T]/(omega_(r-1)) with gamma = 1 + T.

    Each sigma_a splits as (Teichmuller part, principal part); the principal
    part contributes (1+T)^(dlog a), the torsion part a factor omega^i(a).
    The result must have coefficients in Z_p at the working precision.
    """
    r = _p_power_level(x.modulus, p)
    norm, shift, window = _normalized_coeffs(x, p)
    K = prec + shift
    pK = p**K
    tables = _eval_tables(p, K)
    deg = p ** (r - 1)
    acc = [0] * deg
    pascal_cache: dict[int, list[int]] = {}
    for a, (num_q, extra) in norm.items():
        num = _coeff_numerator(num_q, extra, p, pK)
        abar = a % p
        w = tables.zeta_pow[(i * tables.ind[abar]) % (p - 1)]
        u = a * tables.teich_inv[abar] % (p**r)
        jdx = principal_unit_dlog(u, p, r)
        row = pascal_cache.get(jdx)
        if row is None:
            row = _binomial_row(jdx, pK)
            pascal_cache[jdx] = row
        nw = num * w % pK
        for mdeg, b in enumerate(row):
            if b:
                acc[mdeg] = (acc[mdeg] + nw * b) % pK
    coeffs = []
    pshift = p**shift
    for v in acc:
        if v % pshift:
            raise ValueError("component has a non-integral coefficient at this precision")
        coeffs.append(v // pshift)
    return TruncatedSeries(p, coeffs, prec)


def _binomial_row(j: int, mod: int) -> list[int]:
    row = [1]
    c = 1
    for t in range(1, j + 1):
        c = c * (j - t + 1) // t
        row.append(c % mod)
    return row


def reassemble_components(comps: dict[int, TruncatedSeries], p: int, r: int, prec: int = 12) -> GroupRingElement:
    """Inverse of component_series summed over all branches (test helper)."""
    pr = p**r
    gamma = GroupRingElement(pr, {(1 + p) % pr: Fraction(1)})
    one = GroupRingElement(pr, {1: Fraction(1)})
    tminus = gamma - one
    total = GroupRingElement(pr, {})
    for i, series in comps.items():
        e_i = idempotent(i, r, p, prec)
        poly = GroupRingElement(pr, {})
        power = one
        for m in range(series.trunc):
            c = series.coeff(m)
            if not c.is_zero:
                poly = poly + power.scalar_mul(c)
            power = power * tminus
        total = total + e_i * poly
    return total
