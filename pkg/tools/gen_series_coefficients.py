#!/usr/bin/env python3
"""Regenerate the frozen expansion tables in sawlen/gamma.py.

Everything is derived symbolically with sympy and printed in the source
format of gamma.py, so a diff against the checked-in tables is the review.
Run with --check to also compare every coefficient against the live
package and a 60-digit mpmath evaluation of the Temme brackets.

Derivation route:

  1. eta(1+xi)/xi = sqrt(2 (xi - log(1+xi)) / xi^2), expanded in xi.
  2. Gamma*(n): exponentiate the Bernoulli tail of the Stirling series.
  3. b_k(r) of the fixed-ratio expansion, by Watson's lemma applied to
     Gamma(a) Q(a, x) = x^a e^-x Int_0^inf exp(-x (t - r log(1+t))) dt,
     r = a/x < 1: invert u = t - r log(1+t) and read k! [u^k] of
     t'(u)/(1 + t(u)).
  4. q_k(xi): expand the consistency identity
         lam Gamma*(a) sum_k (-1)^k q_k(xi) / (a xi^2)^k
             = xi sum_k b_k(1/lam) / (a lam)^k,      lam = 1 + xi,
     order by order in 1/a and solve; each q_k closing to a polynomial
     of degree 2k is the nontrivial consistency check.
  5. T_k(xi) = (-1)^k [q_k(xi)/xi^{2k+1} - (2k-1)!!/eta(1+xi)^{2k+1}]:
     the singular parts cancel and the Taylor series in xi remains.
"""

import argparse
import math
import sys

import sympy as sp

XI_TERMS = 12        # Taylor length of the T_k bracket series
ETA_TERMS = 5        # Taylor length of eta(1+xi)/xi
GSTAR_TERMS = 6      # Stirling series length for Gamma*
MAX_K = 2            # highest q_k / b_k index

xi, u, t, r = sp.symbols("xi u t r", positive=True)


def eta_over_xi_series(order: int) -> sp.Expr:
    """eta(1+xi)/xi as a polynomial in xi with exact coefficients."""
    inner = 2 * (xi - sp.log(1 + xi)) / xi**2
    return sp.sqrt(inner).series(xi, 0, order).removeO()


def gamma_star_series(order: int) -> list:
    """g_k with Gamma*(n) ~ sum g_k n^-k, via exp of the Stirling tail."""
    s = sp.Symbol("s", positive=True)  # stands for 1/n
    log_gs = sum(
        sp.bernoulli(2 * j) / (2 * j * (2 * j - 1)) * s ** (2 * j - 1)
        for j in range(1, order + 2))
    series = sp.exp(log_gs).series(s, 0, order).removeO().expand()
    return [series.coeff(s, k) for k in range(order)]


def tricomi_b_polys(max_k: int) -> list:
    """b_k(r) = k! [u^k] t'(u)/(1 + t(u)) after inverting the phase
    u = t - r log(1+t), coefficient by coefficient."""
    order = max_k + 2
    t_of_u = sp.Integer(0)
    for m in range(1, order + 1):
        cm = sp.Symbol(f"c{m}")
        trial = t_of_u + cm * u**m
        phase = (trial - r * sp.log(1 + trial)).series(u, 0, m + 1).removeO()
        target = 1 if m == 1 else 0
        cm_value = sp.solve(sp.Eq(phase.coeff(u, m), target), cm)[0]
        t_of_u = trial.subs(cm, sp.cancel(cm_value))
    f = (sp.diff(t_of_u, u) / (1 + t_of_u)).series(u, 0, max_k + 1).removeO()
    return [sp.factor(sp.cancel(f.coeff(u, k) * sp.factorial(k)))
            for k in range(max_k + 1)]


def temme_q_polys(max_k: int, b_polys: list, gstar: list) -> list:
    """Solve the consistency identity order by order in 1/a."""
    lam = 1 + xi
    qs = [sp.Integer(1)]
    for k in range(1, max_k + 1):
        rhs = sp.expand(xi * sp.cancel(b_polys[k].subs(r, 1 / lam)) / lam**k)
        unknown = sp.Symbol("q_k")
        lhs = sp.Integer(0)
        for j in range(k + 1):
            q_j = unknown if j == k else qs[j]
            lhs += lam * gstar[k - j] * (-1) ** j * q_j / xi ** (2 * j)
        poly = sp.solve(sp.Eq(sp.expand(lhs), rhs), unknown)[0]
        poly = sp.expand(sp.cancel(sp.together(poly)))
        if not poly.is_polynomial(xi) or sp.degree(poly, xi) != 2 * k:
            raise RuntimeError(f"q_{k} did not close to a degree-{2 * k} "
                               f"polynomial: {poly}")
        qs.append(poly)
    return qs


def bracket_series(k: int, q_poly: sp.Expr, order: int) -> list:
    """Taylor coefficients of T_k(xi), exact rationals."""
    work = order + 2 * k + 4
    eta_expr = xi * eta_over_xi_series(work)
    afac = sp.Integer(math.prod(range(1, 2 * k, 2)) if k else 1)
    expr = (-1) ** k * (q_poly / xi ** (2 * k + 1)
                        - afac / eta_expr ** (2 * k + 1))
    series = sp.series(expr, xi, 0, order).removeO().expand()
    for j in range(1, 2 * k + 2):
        if series.coeff(xi, -j) != 0:
            raise RuntimeError(f"T_{k} kept a singular part at xi^-{j}")
    return [series.coeff(xi, j) for j in range(order)]


def fmt_floats(name: str, coeffs: list) -> str:
    body, line = "", "   "
    for c in coeffs:
        piece = f" {float(c)!r},"
        if len(line) + len(piece) > 79:
            body += line + "\n"
            line = "   "
        line += piece
    return f"{name} = (\n{body + line}\n)"


def fmt_fraction(c: sp.Rational) -> str:
    c = sp.Rational(c)
    return f"Fraction({c.p})" if c.q == 1 else f"Fraction({c.p}, {c.q})"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--check", action="store_true",
                        help="compare against the live package and a "
                             "60-digit oracle")
    args = parser.parse_args(argv)

    gstar = gamma_star_series(GSTAR_TERMS)
    b_polys = tricomi_b_polys(MAX_K)
    q_polys = temme_q_polys(MAX_K, b_polys, gstar)
    eta_coeffs = [eta_over_xi_series(ETA_TERMS).coeff(xi, j)
                  for j in range(ETA_TERMS)]
    brackets = [bracket_series(k, q_polys[k], XI_TERMS)
                for k in range(MAX_K + 1)]

    print("# q_k polynomial triangle (ExpansionTables.temme_a)")
    for k, poly in enumerate(q_polys):
        print(f"#   q_{k} = {sp.expand(poly)}")
        cells = ", ".join(
            f"({k}, {j}): {fmt_fraction(poly.coeff(xi, j))}"
            for j in range(2 * k + 1))
        print(f"    {cells},")
    print()
    print("# b_k(r) of the fixed-ratio expansion")
    for k, poly in enumerate(b_polys):
        print(f"#   b_{k}(r) = {poly}")
    print()
    for k in range(MAX_K + 1):
        print(fmt_floats(f"_T{k}_SERIES", brackets[k]))
        print()
    print(f"_ETA_SERIES = ({', '.join(str(c) for c in eta_coeffs)})")
    print()
    print(fmt_floats("_GAMMA_STAR_SERIES", gstar))

    if not args.check:
        return 0

    import mpmath

    from sawlen import gamma as live
    from sawlen.gamma import TABLES

    bad = 0

    def close(got, want, what, tol=1e-15):
        nonlocal bad
        err = abs(float(got) - float(want)) / max(abs(float(want)), 1e-300)
        if err > tol:
            bad += 1
            print(f"MISMATCH {what}: generated {want}, live {got}")

    for k, poly in enumerate(q_polys):
        for j in range(2 * k + 1):
            if TABLES.temme_a.get((k, j), 0) != sp.Rational(poly.coeff(xi, j)):
                bad += 1
                print(f"MISMATCH temme_a[{k},{j}]")
    for k, series_k in enumerate(brackets):
        for j, c in enumerate(TABLES.bracket_series[k]):
            close(c, series_k[j], f"_T{k}_SERIES[{j}]")
    for j, c in enumerate(TABLES.eta_series):
        close(c, eta_coeffs[j], f"_ETA_SERIES[{j}]")
    for j, c in enumerate(TABLES.gamma_star_series):
        close(c, gstar[j], f"_GAMMA_STAR_SERIES[{j}]")

    mpmath.mp.dps = 60
    for k in range(MAX_K + 1):
        qk = sp.lambdify(xi, q_polys[k], "mpmath")
        for point in (0.01, 0.03, -0.02):
            x = mpmath.mpf(point)
            eta_x = mpmath.sign(x) * mpmath.sqrt(2 * (x - mpmath.log(1 + x)))
            afac = math.prod(range(1, 2 * k, 2)) if k else 1
            direct = (-1) ** k * (qk(x) / x ** (2 * k + 1)
                                  - afac / eta_x ** (2 * k + 1))
            horner = mpmath.polyval(
                [mpmath.mpf(float(c)) for c in reversed(brackets[k])], x)
            close(horner, direct, f"T_{k}({point}) vs 60-digit oracle",
                  tol=5e-13)

    for point in (0.04, 0.5, -0.3):
        got = live.eta(1.0 + point)
        x = mpmath.mpf(point)
        want = mpmath.sign(x) * mpmath.sqrt(2 * (x - mpmath.log(1 + x)))
        close(got, want, f"eta(1+{point})", tol=5e-15)

    print()
    print("check: all tables agree" if bad == 0
          else f"check: {bad} mismatches")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
