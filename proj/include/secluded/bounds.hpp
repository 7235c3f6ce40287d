#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "bigfloat.hpp"
#include "rational.hpp"

namespace secluded {

enum class NormKind { l1, l2, linf };

inline const char* norm_name(NormKind n) {
    switch (n) {
        case NormKind::l1: return "l1";
        case NormKind::l2: return "l2";
        default: return "linf";
    }
}

inline std::optional<NormKind> norm_from_name(const std::string& s) {
    if (s == "l1") return NormKind::l1;
    if (s == "l2") return NormKind::l2;
    if (s == "linf" || s == "loo") return NormKind::linf;
    return std::nullopt;
}

struct OutOfRegime : std::domain_error {
    using std::domain_error::domain_error;
};

/// Volume of the unit ball as coeff * pi^pi_power. Exact rational for l1/linf
/// (pi_power 0); for l2 the Gamma half-integer closed form leaves a single power of pi.
struct BallVolume {
    Rational coeff;
    unsigned pi_power = 0;

    bool exact_rational() const { return pi_power == 0; }

    BigFloat evaluate(mpfr_prec_t prec, mpfr_rnd_t rnd) const {
        BigFloat v = BigFloat::from_rational(coeff, prec, rnd);
        if (pi_power > 0) {
            BigFloat p = BigFloat::pi(prec, rnd);
            p.pow_ui(pi_power, rnd);
            v.mul(p, rnd);
        }
        return v;
    }

    std::string decimal(int sig_digits) const {
        return evaluate(static_cast<mpfr_prec_t>(sig_digits * 4 + 64), MPFR_RNDN)
            .decimal(sig_digits, MPFR_RNDN);
    }
};

/// 2^d / d!  (l1),  pi^{d/2} / Gamma(d/2 + 1)  (l2),  2^d  (linf).
inline BallVolume unit_ball_volume(NormKind norm, int d) {
    if (d < 1) throw std::invalid_argument("unit_ball_volume: d must be >= 1");
    const unsigned long ud = static_cast<unsigned long>(d);
    switch (norm) {
        case NormKind::linf:
            return {Rational(Integer::pow(Integer(2), ud)), 0};
        case NormKind::l1:
            return {Rational(Integer::pow(Integer(2), ud), Integer::factorial(ud)), 0};
        case NormKind::l2: {
            if (d % 2 == 0) {
                unsigned long k = ud / 2;  // pi^k / k!
                return {Rational(Integer(1), Integer::factorial(k)), static_cast<unsigned>(k)};
            }
            unsigned long k = (ud - 1) / 2;  // pi^k * 4^{k+1} (k+1)! / (2k+2)!
            Integer num = Integer::pow(Integer(4), k + 1) * Integer::factorial(k + 1);
            return {Rational(num, Integer::factorial(2 * k + 2)), static_cast<unsigned>(k)};
        }
    }
    throw std::logic_error("unit_ball_volume: unreachable");
}

namespace detail {

/// Exact d-th root of a nonnegative rational, when one exists.
inline std::optional<Rational> rational_root(const Rational& x, unsigned long d) {
    if (x.sgn() < 0) return std::nullopt;
    Integer num = x.numerator(), den = x.denominator();
    Integer rn, rd;
    if (mpz_root(rn.raw(), num.raw(), d) == 0) return std::nullopt;
    if (mpz_root(rd.raw(), den.raw(), d) == 0) return std::nullopt;
    return Rational(rn, rd);
}

/// ceil((1 + eps * (value)^{1/d})^d) where value = coeff * pi^pi_power, by interval
/// refinement with directed rounding. The expression is monotone in every positive
/// subterm, so rounding every operation down/up brackets the true value. When the two
/// ceilings disagree at the precision cap, the upper one is returned (never
/// under-reported).
inline Integer ceil_power_expression(const Rational& eps, const BallVolume& value, int d) {
    const unsigned long ud = static_cast<unsigned long>(d);
    for (mpfr_prec_t prec = 128; prec <= 2048; prec *= 2) {
        auto eval = [&](mpfr_rnd_t rnd) {
            BigFloat t = value.evaluate(prec, rnd);
            t.root_ui(ud, rnd);
            BigFloat e = BigFloat::from_rational(eps, prec, rnd);
            t.mul(e, rnd);
            t.add_ui(1, rnd);
            t.pow_ui(ud, rnd);
            return t;
        };
        Integer lo = eval(MPFR_RNDD).ceil_to_integer();
        Integer hi = eval(MPFR_RNDU).ceil_to_integer();
        if (lo == hi) return lo;
        if (prec == 2048) return hi;
    }
    throw std::logic_error("ceil_power_expression: unreachable");
}

}  // namespace detail

/// k = ceil((1 + eps (v_d / M)^{1/d})^d): the degree forced on any partition with
/// member outer measure at most M, for the given norm. Exact in rationals whenever the
/// d-th root is rational (always for linf with M = 1); otherwise directed rounding
/// guarantees the ceiling is never under-reported.
inline Integer lower_bound_k_measure(int d, const Rational& eps, const Rational& M,
                                     NormKind norm) {
    if (d < 1) throw std::invalid_argument("lower_bound_k_measure: d must be >= 1");
    if (eps.sgn() <= 0 || M.sgn() <= 0)
        throw std::invalid_argument("lower_bound_k_measure: eps and M must be > 0");
    BallVolume v = unit_ball_volume(norm, d);
    Rational ratio = v.coeff / M;
    if (v.pi_power == 0) {
        if (auto root = detail::rational_root(ratio, static_cast<unsigned long>(d))) {
            Rational base = Rational(1) + eps * *root;
            return Rational::pow(base, static_cast<unsigned long>(d)).ceil();
        }
    }
    BallVolume scaled{ratio, v.pi_power};
    return detail::ceil_power_expression(eps, scaled, d);
}

/// k = ceil((1 + 2 eps / D)^d): the diameter form, exact.
inline Integer lower_bound_k_diameter(int d, const Rational& eps, const Rational& D) {
    if (d < 1) throw std::invalid_argument("lower_bound_k_diameter: d must be >= 1");
    if (eps.sgn() <= 0 || D.sgn() <= 0)
        throw std::invalid_argument("lower_bound_k_diameter: eps and D must be > 0");
    Rational base = Rational(1) + Rational(2) * eps / D;
    return Rational::pow(base, static_cast<unsigned long>(d)).ceil();
}

struct BoundValue {
    double value = 0;      // directed double (see each operation)
    std::string decimal;   // 30 significant digits, same direction
};

/// ln(k)/d, rounded up (a safe upper bound on the tolerance). Valid only for k <= 2^d.
inline BoundValue tolerance_upper(int d, const Integer& k) {
    if (d < 1) throw std::invalid_argument("tolerance_upper: d must be >= 1");
    if (k < Integer(1)) throw std::invalid_argument("tolerance_upper: k must be >= 1");
    if (k > Integer::pow(Integer(2), static_cast<unsigned long>(d)))
        throw OutOfRegime("tolerance_upper: requires k <= 2^d");
    const mpfr_prec_t prec = 256;
    BigFloat t = BigFloat::from_rational(Rational(k), prec, MPFR_RNDU);
    t.log(MPFR_RNDU);
    t.div_ui(static_cast<unsigned long>(d), MPFR_RNDU);
    return {t.to_double(MPFR_RNDU), t.decimal(30, MPFR_RNDU)};
}

/// Gluing construction parameters: k = (f(d)+1)^ceil(d/f(d)), eps = 1/(2 f(d)).
inline std::pair<Integer, Rational> construction_params(long fd, int d) {
    if (d < 1 || fd < 1) throw std::invalid_argument("construction_params: need d, f(d) >= 1");
    long blocks = (d + fd - 1) / fd;
    return {Integer::pow(Integer(fd + 1), static_cast<unsigned long>(blocks)),
            Rational(1, 2 * fd)};
}

/// max(eps0, eps0 * d / (4 ln(2k))), rounded down (a safe lower bound on the accuracy
/// loss any universal rounding scheme must incur).
inline BoundValue nfl_lower(const Rational& eps0, int d, const Integer& k) {
    if (eps0.sgn() <= 0) throw std::invalid_argument("nfl_lower: eps0 must be > 0");
    if (d < 1 || k < Integer(1)) throw std::invalid_argument("nfl_lower: need d, k >= 1");
    const mpfr_prec_t prec = 256;
    BigFloat t = BigFloat::from_rational(Rational(k) * Rational(2), prec, MPFR_RNDU);
    t.log(MPFR_RNDU);  // denominator rounded up => quotient rounded down
    t.mul_ui(4, MPFR_RNDU);
    BigFloat num = BigFloat::from_rational(eps0 * Rational(d), prec, MPFR_RNDD);
    num.div(t, MPFR_RNDD);
    if (num.cmp(eps0) < 0) num = BigFloat::from_rational(eps0, prec, MPFR_RNDD);
    return {num.to_double(MPFR_RNDD), num.decimal(30, MPFR_RNDD)};
}

/// floor((2 + 2 eps)^d): every unit cube partition is (k, eps)-secluded with this k.
inline Integer trivial_k(int d, const Rational& eps) {
    if (d < 1) throw std::invalid_argument("trivial_k: d must be >= 1");
    if (eps.sgn() < 0) throw std::invalid_argument("trivial_k: eps must be >= 0");
    Rational base = Rational(2) + Rational(2) * eps;
    return Rational::pow(base, static_cast<unsigned long>(d)).floor();
}

struct BoundsTableRow {
    int d = 1;
    NormKind norm = NormKind::linf;
    Integer k;                    // exact ceiling of the lower-bound expression
    std::string expression30;     // the expression to 30 significant digits (round-down)
    std::string stirling_approx;  // documentation only, never asserted
};

/// Rows of the lower-bound table for the given dimensions and norms at measure bound M.
inline std::vector<BoundsTableRow> bounds_table(int d_lo, int d_hi, const Rational& eps,
                                                const Rational& M,
                                                const std::vector<NormKind>& norms) {
    std::vector<BoundsTableRow> rows;
    const mpfr_prec_t prec = 256;
    for (int d = d_lo; d <= d_hi; ++d) {
        for (NormKind norm : norms) {
            BoundsTableRow row;
            row.d = d;
            row.norm = norm;
            row.k = lower_bound_k_measure(d, eps, M, norm);
            BallVolume v = unit_ball_volume(norm, d);
            BallVolume scaled{v.coeff / M, v.pi_power};
            BigFloat t = scaled.evaluate(prec, MPFR_RNDD);
            t.root_ui(static_cast<unsigned long>(d), MPFR_RNDD);
            BigFloat e = BigFloat::from_rational(eps, prec, MPFR_RNDD);
            t.mul(e, MPFR_RNDD);
            t.add_ui(1, MPFR_RNDD);
            t.pow_ui(static_cast<unsigned long>(d), MPFR_RNDD);
            row.expression30 = t.decimal(30, MPFR_RNDD);
            // Stirling columns from the table caption: (d!)^{1/d} ~ d/e and
            // Gamma(d/2+1)^{1/d} ~ sqrt(d/(2e)).
            double ed = static_cast<double>(d);
            double epsd = eps.to_double();
            double Md = std::pow(M.to_double(), 1.0 / ed);
            double approx = 0;
            switch (norm) {
                case NormKind::l1:
                    approx = std::pow(1 + epsd * 2 * std::exp(1.0) / (Md * ed), ed);
                    break;
                case NormKind::l2:
                    approx = std::pow(
                        1 + epsd * std::sqrt(2 * 3.141592653589793 * std::exp(1.0)) /
                                (Md * std::sqrt(ed)),
                        ed);
                    break;
                case NormKind::linf:
                    approx = std::pow(1 + epsd * 2 / Md, ed);
                    break;
            }
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.6g", approx);
            row.stirling_approx = buf;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace secluded
