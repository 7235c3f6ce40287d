#pragma once

#include <mpfr.h>

#include <string>

#include "rational.hpp"

namespace secluded {

/// Thin RAII wrapper over mpfr_t. Every operation takes an explicit rounding mode so
/// directed (interval) evaluation stays visible at the call site.
class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t prec = 128) {
        mpfr_init2(f_, prec);
        mpfr_set_zero(f_, 1);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(f_, mpfr_get_prec(o.f_));
        mpfr_set(f_, o.f_, MPFR_RNDN);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(f_, mpfr_get_prec(o.f_));
            mpfr_set(f_, o.f_, MPFR_RNDN);
        }
        return *this;
    }
    ~BigFloat() { mpfr_clear(f_); }

    static BigFloat from_rational(const Rational& r, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        BigFloat x(prec);
        mpfr_set_q(x.f_, r.raw(), rnd);
        return x;
    }
    static BigFloat pi(mpfr_prec_t prec, mpfr_rnd_t rnd) {
        BigFloat x(prec);
        mpfr_const_pi(x.f_, rnd);
        return x;
    }

    void mul(const BigFloat& o, mpfr_rnd_t rnd) { mpfr_mul(f_, f_, o.f_, rnd); }
    void add(const BigFloat& o, mpfr_rnd_t rnd) { mpfr_add(f_, f_, o.f_, rnd); }
    void div(const BigFloat& o, mpfr_rnd_t rnd) { mpfr_div(f_, f_, o.f_, rnd); }
    void add_ui(unsigned long u, mpfr_rnd_t rnd) { mpfr_add_ui(f_, f_, u, rnd); }
    void mul_ui(unsigned long u, mpfr_rnd_t rnd) { mpfr_mul_ui(f_, f_, u, rnd); }
    void div_ui(unsigned long u, mpfr_rnd_t rnd) { mpfr_div_ui(f_, f_, u, rnd); }
    void pow_ui(unsigned long e, mpfr_rnd_t rnd) { mpfr_pow_ui(f_, f_, e, rnd); }
    void root_ui(unsigned long n, mpfr_rnd_t rnd) { mpfr_rootn_ui(f_, f_, n, rnd); }
    void log(mpfr_rnd_t rnd) { mpfr_log(f_, f_, rnd); }

    int cmp(const BigFloat& o) const { return mpfr_cmp(f_, o.f_); }
    int cmp(const Rational& r) const { return mpfr_cmp_q(f_, r.raw()); }
    double to_double(mpfr_rnd_t rnd) const { return mpfr_get_d(f_, rnd); }

    /// Smallest integer >= value (value rounded per construction already).
    Integer ceil_to_integer() const {
        mpfr_t c;
        mpfr_init2(c, mpfr_get_prec(f_));
        mpfr_ceil(c, f_);
        Integer z;
        mpfr_get_z(z.raw(), c, MPFR_RNDN);
        mpfr_clear(c);
        return z;
    }

    /// Scientific-notation string with the given number of significant digits.
    std::string decimal(int sig_digits, mpfr_rnd_t rnd) const {
        char fmt[32];
        std::snprintf(fmt, sizeof(fmt), "%%.%dRe", sig_digits - 1);
        char buf[256];
        mpfr_snprintf(buf, sizeof(buf), fmt, rnd, f_);
        return std::string(buf);
    }

    mpfr_t& raw() { return f_; }
    const mpfr_t& raw() const { return f_; }

  private:
    mpfr_t f_;
};

}  // namespace secluded
