import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from iwasawa.iwaseries import (
    IndeterminateWithinTruncation,
    TruncatedSeries,
    nu_rm_poly,
    omega_poly,
    phi_poly,
    poly_divmod_monic,
    poly_mul,
    resultant,
    sylvester_resultant,
)
from iwasawa.padic import int_vp


def series(p, coeffs, M=24, N=8, **kw):
    return TruncatedSeries.from_integer_poly(coeffs, p, M, N, **kw) if isinstance(coeffs, list) else coeffs


def random_series(rng, p, M, N, unit_by=4):
    coeffs = [rng.randrange(p**N) for _ in range(M)]
    pos = rng.randrange(unit_by)
    coeffs[pos] = coeffs[pos] * p + rng.randrange(1, p)
    return TruncatedSeries(p, coeffs, N)


def test_ring_basics():
    p, M, N = 5, 24, 8
    one = TruncatedSeries.one(p, M, N)
    t = TruncatedSeries.variable(p, M, N)
    f = TruncatedSeries(p, range(1, M + 1), N)
    assert f * one == f
    # (1+T)^p by repeated multiplication matches binomial coefficients
    g = one + t
    acc = one
    for _ in range(p):
        acc = acc * g
    assert all(acc.coeffs[k] == comb(p, k) % p**N for k in range(M))
    # T^a T^b = T^(a+b), truncated away when a+b >= M
    t10 = TruncatedSeries.from_integer_poly([0] * 10 + [1], p, M, N)
    t20 = TruncatedSeries.from_integer_poly([0] * 20 + [1], p, M, N)
    assert (t10 * t10) == t20
    assert all(c == 0 for c in (t20 * t10).coeffs)


coeff_lists = st.lists(st.integers(0, 5**6 - 1), min_size=12, max_size=12)


@given(coeff_lists, coeff_lists, coeff_lists)
def test_ring_laws_hold_exactly(a, b, c):
    p, N = 5, 6
    f, g, h = (TruncatedSeries(p, x, N) for x in (a, b, c))
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f


def test_shape_mismatch_raises():
    a = TruncatedSeries.one(5, 10, 6)
    b = TruncatedSeries.one(5, 11, 6)
    with pytest.raises(ValueError):
        a + b


def test_invert_unit():
    p, M, N = 5, 20, 6
    one = TruncatedSeries.one(p, M, N)
    assert one.invert_unit() == one
    geom = TruncatedSeries.from_integer_poly([1, -1], p, M, N).invert_unit()
    assert all(c == 1 for c in geom.coeffs)
    rng = random.Random(11)
    for _ in range(100):
        f = random_series(rng, p, M, N, unit_by=1)
        assert f * f.invert_unit() == one
    with pytest.raises(ValueError):
        TruncatedSeries.from_integer_poly([5, 1], p, M, N).invert_unit()


def test_weierstrass_degree():
    p, M, N = 5, 24, 8
    f = TruncatedSeries.from_integer_poly([p, 1], p, M, N)
    assert f.weierstrass_degree() == 1
    for r in (1, 2):
        om = TruncatedSeries.from_integer_poly(omega_poly(p, r), p, 30, N)
        assert om.weierstrass_degree() == p**r
        ph = TruncatedSeries.from_integer_poly(phi_poly(p, r), p, 30, N)
        assert ph.weierstrass_degree() == p**r - p ** (r - 1)
    with pytest.raises(IndeterminateWithinTruncation):
        TruncatedSeries.from_integer_poly([p, p * 3], p, M, N).weierstrass_degree()


def test_mu_lambda():
    p, M, N = 5, 24, 8
    f = TruncatedSeries.from_integer_poly([p, p, 1], p, M, N)
    assert f.mu_lambda() == (0, 2)
    g = TruncatedSeries.from_integer_poly([p * c for c in phi_poly(p, 1)], p, M, N)
    assert g.mu_lambda() == (1, p - 1)
    u = TruncatedSeries.from_integer_poly([3, 1, 4], p, M, N)
    assert u.mu_lambda() == (0, 0)


def _residual(g, f, quot, rem):
    """g - f*quot - rem on the quotient window, as exact integer residues."""
    p, N = g.prime, g.prec
    mod = p**N
    W = quot.trunc
    out = []
    for j in range(W):
        s = g.coeffs[j] - (rem[j] if j < len(rem) else 0)
        for i in range(j + 1):
            s -= f.coeffs[i] * quot.coeffs[j - i]
        out.append(s % mod)
    return out


def test_divide_by_variable():
    p, M, N = 5, 20, 6
    g = TruncatedSeries(p, range(2, M + 2), N)
    t = TruncatedSeries.variable(p, M, N)
    q, r = g.divide(t)
    assert r == [2]
    assert q.coeffs == g.coeffs[1:]


def test_divide_omega_by_phi():
    for p in (3, 5):
        M, N = 30, 8
        om = TruncatedSeries.from_integer_poly(omega_poly(p, 1), p, M, N)
        ph = TruncatedSeries.from_integer_poly(phi_poly(p, 1), p, M, N)
        q, r = om.divide(ph)
        assert all(c == 0 for c in r)
        assert q.coeffs[1] == 1 and all(c == 0 for i, c in enumerate(q.coeffs) if i != 1)


def test_divide_residual_vanishes_on_random_pairs():
    rng = random.Random(12)
    for _ in range(100):
        p = rng.choice((3, 5, 7))
        M, N = 24, 8
        g = TruncatedSeries(p, [rng.randrange(p**N) for _ in range(M)], N)
        f = random_series(rng, p, M, N, unit_by=6)
        q, r = g.divide(f)
        assert all(c == 0 for c in _residual(g, f, q, r))


def _alternating_scheme_division(g, f):
    """Independent implementation of the division by the alternating scheme:
    split f = T^nu*unit + p*R, iterate g_(n+1) = R unit^(-1) g_n', and sum
    quotient = sum (-1)^n p^n unit^(-1) g_n', remainder = sum (-1)^n p^n r_n.
    Works on a shrinking T-window; returns (quot list, rem list, reliable W).
    """
    p, M, N = g.prime, g.trunc, g.prec
    mod = p**N
    nu = f.weierstrass_degree()
    W = M - nu
    R = [c // p for c in f.coeffs[:nu]]
    unit = TruncatedSeries(p, f.coeffs[nu:], N)
    unit_inv = unit.invert_unit()
    quot = [0] * W
    rem = [0] * nu
    cur = list(g.coeffs)
    for n in range(N):
        head, tail = cur[:nu], cur[nu:nu + W]
        a_n = [0] * W
        for i, x in enumerate(tail):
            if x:
                for j in range(W - i):
                    y = unit_inv.coeffs[j]
                    if y:
                        a_n[i + j] = (a_n[i + j] + x * y) % mod
        sign = (-1) ** n
        for j in range(W):
            quot[j] = (quot[j] + sign * p**n * a_n[j]) % mod
        for i in range(nu):
            rem[i] = (rem[i] + sign * p**n * head[i]) % mod
        nxt = [0] * M
        for i, x in enumerate(R):
            if x:
                for j in range(min(W, M - i)):
                    y = a_n[j]
                    if y:
                        nxt[i + j] = (nxt[i + j] + x * y) % mod
        cur = nxt
    return quot, rem, W


def test_divide_agrees_with_alternating_scheme():
    # two independent runs of the division (stage-wise mod-p solving vs the
    # alternating series) must agree within the triangular window
    rng = random.Random(23)
    for _ in range(15):
        p, M, N = 5, 24, 6
        g = TruncatedSeries(p, [rng.randrange(p**N) for _ in range(M)], N)
        f = random_series(rng, p, M, N, unit_by=3)
        nu = f.weierstrass_degree()
        q, r = g.divide(f)
        q2, r2, W = _alternating_scheme_division(g, f)
        for j in range(W):
            tol = min(N, (W - j - 1) // max(nu, 1) + 1)
            assert (q.coeffs[j] - q2[j]) % p**tol == 0, (j, nu)
        rem_tol = min(N, (W - 1) // max(nu, 1))
        assert all((a - b) % p**rem_tol == 0 for a, b in zip(r, r2))


def test_divide_uniqueness_translation():
    # divide(g + f*h, f) must return (quot + h, rem) by uniqueness; against
    # truncated data the quotient's j-th coefficient is only pinned modulo
    # p^((W-j-1)/nu + 1), so the comparison uses that triangular window
    rng = random.Random(13)
    p, M, N = 5, 24, 8
    for _ in range(20):
        g = TruncatedSeries(p, [rng.randrange(p**N) for _ in range(M)], N)
        f = random_series(rng, p, M, N, unit_by=4)
        nu = f.weierstrass_degree()
        h = TruncatedSeries(p, [rng.randrange(p**N) for _ in range(M)], N)
        q1, r1 = g.divide(f)
        q2, r2 = (g + f * h).divide(f)
        W = q1.trunc
        for j in range(W):
            tol = min(N, (W - j - 1) // max(nu, 1) + 1)
            assert (q2.coeffs[j] - q1.coeffs[j] - h.coeffs[j]) % p**tol == 0
        rem_tol = min(N, (W - 1) // max(nu, 1))
        assert all((a - b) % p**rem_tol == 0 for a, b in zip(r1, r2))


def test_weierstrass_prep_unit_and_omega():
    p, M, N = 5, 30, 8
    u = TruncatedSeries.from_integer_poly([2, 3, 4], p, M, N)
    fac = u.weierstrass_prep()
    assert fac.mu == 0 and fac.distinguished == [1] and fac.matches_source()
    om = TruncatedSeries.from_integer_poly(omega_poly(p, 1), p, 14, N)
    fac = om.weierstrass_prep()
    assert fac.mu == 0
    assert fac.distinguished == omega_poly(p, 1)
    assert all(fac.unit.coeffs[i] == (1 if i == 0 else 0) for i in range(fac.unit.trunc))


def test_weierstrass_prep_random_roundtrip():
    rng = random.Random(14)
    for _ in range(60):
        p = rng.choice((3, 5, 7))
        M, N = 24, 8
        mu = rng.randrange(3)
        f = random_series(rng, p, M, N - mu, unit_by=5)
        f = TruncatedSeries(p, [c * p**mu for c in f.coeffs], N)
        fac = f.weierstrass_prep()
        assert fac.mu == mu
        assert fac.matches_source()


def test_weierstrass_prep_recovers_constructed_factorizations():
    # build f = p^mu * unit * P with known distinguished P and check the
    # preparation recovers exactly that data
    rng = random.Random(24)
    for _ in range(30):
        p = rng.choice((3, 5))
        M, N = 26, 7
        mu = rng.randrange(2)
        deg = rng.randrange(4)
        P = [rng.randrange(0, p**3) * p for _ in range(deg)] + [1]
        unit_coeffs = [rng.randrange(1, p)] + [rng.randrange(p**N) for _ in range(M - 1)]
        unit = TruncatedSeries(p, unit_coeffs, N)
        f = unit * TruncatedSeries.from_integer_poly(P, p, M, N)
        f = TruncatedSeries(p, [c * p**mu for c in f.coeffs], N)
        fac = f.weierstrass_prep()
        assert fac.mu == mu
        assert fac.weierstrass_degree == deg
        n_eff = N - mu
        assert all((a - b) % p**n_eff == 0 for a, b in zip(fac.distinguished, P))
        # the unit is pinned triangularly: multiplying by the distinguished
        # factor is injective only up to p-torsion at the truncation edge
        W = fac.unit.trunc
        for j in range(W):
            tol = n_eff if deg == 0 else min(n_eff, (W - j - 1) // deg + 1)
            assert (fac.unit.coeffs[j] - unit.coeffs[j]) % p**tol == 0


def test_mu_lambda_additive_under_multiplication():
    rng = random.Random(15)
    for _ in range(40):
        p = rng.choice((3, 5))
        M, N = 30, 8
        f = random_series(rng, p, M, N - 1, unit_by=5)
        g = random_series(rng, p, M, N - 1, unit_by=5)
        sf = rng.randrange(2)
        sg = rng.randrange(2)
        f = TruncatedSeries(p, [c * p**sf for c in f.coeffs], N)
        g = TruncatedSeries(p, [c * p**sg for c in g.coeffs], N)
        mf, lf = f.mu_lambda()
        mg, lg = g.mu_lambda()
        if lf + lg >= M or mf + mg >= N:
            continue
        assert (f * g).mu_lambda() == (mf + mg, lf + lg)


def test_cyclotomic_polynomials():
    assert omega_poly(3, 0) == [0, 1]
    p = 5
    assert phi_poly(p, 1) == [comb(p, k + 1) for k in range(p)]
    for p in (3, 5):
        for r in (1, 2, 3, 4):
            assert poly_mul(phi_poly(p, r), omega_poly(p, r - 1)) == omega_poly(p, r)
    assert nu_rm_poly(3, 2, 2) == [1]
    with pytest.raises(ValueError):
        nu_rm_poly(3, 1, 2)


def test_substitute_basics_and_associativity():
    p, M, N = 5, 26, 6
    t = TruncatedSeries.variable(p, M, N)
    rng = random.Random(16)
    f = TruncatedSeries(p, [rng.randrange(p**N) for _ in range(M)], N)
    assert f.substitute(t) == f
    g = TruncatedSeries(p, [5 * rng.randrange(p ** (N - 1))] + [rng.randrange(p**N) for _ in range(M - 1)], N)
    t2 = TruncatedSeries.from_integer_poly([0, 0, 1], p, M, N)
    assert t2.substitute(g) == g * g
    # associativity holds on the reliable triangular window
    h = TruncatedSeries(p, [5 * rng.randrange(p ** (N - 1))] + [rng.randrange(p**N) for _ in range(M - 1)], N)
    lhs = f.substitute(g).substitute(h)
    rhs = f.substitute(g.substitute(h))
    for j in range(M):
        window = min(N, M - j - 1)
        if window <= 0:
            break
        assert (lhs.coeffs[j] - rhs.coeffs[j]) % p**window == 0


def test_substitute_rejects_unit_constant():
    p, M, N = 5, 10, 4
    f = TruncatedSeries.one(p, M, N)
    with pytest.raises(ValueError):
        f.substitute(TruncatedSeries.one(p, M, N))


def test_nu_involution():
    p, M, N = 5, 28, 6
    const = TruncatedSeries.from_integer_poly([7], p, M, N)
    assert const.nu_involution() == const
    # nu(1 - (1+p)(1+T)^(-1)) = -T
    one = TruncatedSeries.one(p, M, N)
    inv1t = TruncatedSeries.from_integer_poly([1, 1], p, M, N).invert_unit()
    f = one - inv1t.scalar_mul(1 + p)
    img = f.nu_involution()
    for j in range(M):
        window = min(N, M - j - 1)
        if window <= 0:
            break
        expect = -1 if j == 1 else 0
        assert (img.coeffs[j] - expect) % p**window == 0


def test_nu_involution_is_involutive():
    rng = random.Random(17)
    p, M, N = 5, 28, 6
    for _ in range(10):
        f = TruncatedSeries(p, [rng.randrange(p**N) for _ in range(M)], N)
        g = f.nu_involution().nu_involution()
        for j in range(M):
            window = min(N, M - j - 2)
            if window <= 0:
                break
            assert (g.coeffs[j] - f.coeffs[j]) % p**window == 0


def test_d_operator():
    p, M, N = 5, 20, 6
    t = TruncatedSeries.variable(p, M, N)
    dt = t.d_operator()
    assert dt.coeffs[0] == 1 and dt.coeffs[1] == 1 and all(c == 0 for c in dt.coeffs[2:])
    # D((1+T)^a) = a (1+T)^a
    for a in (2, 3, 7):
        f = TruncatedSeries.from_integer_poly([comb(a, k) for k in range(a + 1)], p, M, N)
        lhs = f.d_operator()
        rhs = f.scalar_mul(a)
        assert lhs.coeffs == rhs.coeffs[: M - 1]
    # moments preview: (D^n at 0) of (1+T)^a equals a^n
    a = 3
    f = TruncatedSeries.from_integer_poly([comb(a, k) for k in range(a + 1)], p, M, N)
    g = f
    for n in range(1, 6):
        g = g.d_operator()
        assert g.coeffs[0] % p**N == a**n % p**N


def test_deriv_shrinks():
    p, M, N = 5, 10, 4
    f = TruncatedSeries(p, range(M), N)
    assert f.deriv().trunc == M - 1


def test_resultants():
    p = 5
    assert resultant([0, 1], phi_poly(p, 1)) == p
    for r, e in ((1, 0), (2, 0), (2, 1), (3, 1)):
        res = resultant([-p, 1], nu_rm_poly(p, r, e))
        assert int_vp(res, p) == r - e
    rng = random.Random(18)
    for _ in range(25):
        a = [rng.randrange(-9, 10) for _ in range(rng.randrange(1, 5))] + [rng.randrange(1, 6)]
        b = [rng.randrange(-9, 10) for _ in range(rng.randrange(1, 5))] + [rng.randrange(1, 6)]
        m, n = len(a) - 1, len(b) - 1
        assert sylvester_resultant(a, b) == (-1) ** (m * n) * sylvester_resultant(b, a)
        assert resultant(a, b) == sylvester_resultant(a, b)


def test_phi_mod_distinguished_is_p_times_unit():
    # for distinguished P of degree d and p^(s-1) >= d, Phi_s mod P = p * unit
    for p, P in ((3, [3, 1]), (3, [6, 3, 1]), (5, [5, 10, 1])):
        d = len(P) - 1
        s = 1
        while p ** (s - 1) < d:
            s += 1
        _, rem = poly_divmod_monic(phi_poly(p, s), P)
        assert all(c % p == 0 for c in rem)
        assert (rem[0] // p) % p != 0  # unit constant term after dividing by p


def test_serialization_roundtrip():
    rng = random.Random(19)
    f = TruncatedSeries(5, [rng.randrange(5**6) for _ in range(12)], 6)
    g = TruncatedSeries.from_text(f.to_text())
    assert f == g and g.prec == 6 and g.trunc == 12
