#pragma once

#include <gmp.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace secluded {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Arbitrary-precision integer (GMP mpz) with value semantics.
class Integer {
  public:
    Integer() { mpz_init(z_); }
    Integer(long v) { mpz_init_set_si(z_, v); }
    Integer(const Integer& o) { mpz_init_set(z_, o.z_); }
    Integer(Integer&& o) noexcept {
        mpz_init(z_);
        mpz_swap(z_, o.z_);
    }
    Integer& operator=(const Integer& o) {
        if (this != &o) mpz_set(z_, o.z_);
        return *this;
    }
    Integer& operator=(Integer&& o) noexcept {
        mpz_swap(z_, o.z_);
        return *this;
    }
    ~Integer() { mpz_clear(z_); }

    static Integer from_string(std::string_view s) {
        Integer r;
        std::string t(s);
        if (t.empty() || mpz_set_str(r.z_, t.c_str(), 10) != 0)
            throw ParseError("bad integer: '" + t + "'");
        return r;
    }

    std::string str() const {
        char* c = mpz_get_str(nullptr, 10, z_);
        std::string s(c);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(c, s.size() + 1);
        return s;
    }

    bool fits_long() const { return mpz_fits_slong_p(z_) != 0; }
    long to_long() const {
        if (!fits_long()) throw std::overflow_error("Integer does not fit long");
        return mpz_get_si(z_);
    }
    double to_double() const { return mpz_get_d(z_); }

    friend Integer operator+(const Integer& a, const Integer& b) {
        Integer r;
        mpz_add(r.z_, a.z_, b.z_);
        return r;
    }
    friend Integer operator-(const Integer& a, const Integer& b) {
        Integer r;
        mpz_sub(r.z_, a.z_, b.z_);
        return r;
    }
    friend Integer operator*(const Integer& a, const Integer& b) {
        Integer r;
        mpz_mul(r.z_, a.z_, b.z_);
        return r;
    }
    friend Integer operator-(const Integer& a) {
        Integer r;
        mpz_neg(r.z_, a.z_);
        return r;
    }
    Integer& operator+=(const Integer& b) {
        mpz_add(z_, z_, b.z_);
        return *this;
    }
    Integer& operator-=(const Integer& b) {
        mpz_sub(z_, z_, b.z_);
        return *this;
    }
    Integer& operator++() {
        mpz_add_ui(z_, z_, 1);
        return *this;
    }

    static Integer pow(const Integer& base, unsigned long e) {
        Integer r;
        mpz_pow_ui(r.z_, base.z_, e);
        return r;
    }
    static Integer factorial(unsigned long n) {
        Integer r;
        mpz_fac_ui(r.z_, n);
        return r;
    }

    int cmp(const Integer& o) const { return mpz_cmp(z_, o.z_); }
    friend bool operator==(const Integer& a, const Integer& b) { return a.cmp(b) == 0; }
    friend bool operator!=(const Integer& a, const Integer& b) { return a.cmp(b) != 0; }
    friend bool operator<(const Integer& a, const Integer& b) { return a.cmp(b) < 0; }
    friend bool operator<=(const Integer& a, const Integer& b) { return a.cmp(b) <= 0; }
    friend bool operator>(const Integer& a, const Integer& b) { return a.cmp(b) > 0; }
    friend bool operator>=(const Integer& a, const Integer& b) { return a.cmp(b) >= 0; }

    const mpz_t& raw() const { return z_; }
    mpz_t& raw() { return z_; }

  private:
    mpz_t z_;
};

/// Exact rational scalar (GMP mpq), always canonical: denominator > 0, lowest terms.
class Rational {
  public:
    Rational() { mpq_init(q_); }
    Rational(long n) {
        mpq_init(q_);
        mpq_set_si(q_, n, 1);
    }
    Rational(long num, long den) {
        if (den == 0) throw std::invalid_argument("zero denominator");
        mpq_init(q_);
        mpq_set_si(q_, num, den);
        mpq_canonicalize(q_);
    }
    Rational(const Integer& n) {
        mpq_init(q_);
        mpq_set_z(q_, n.raw());
    }
    Rational(const Integer& num, const Integer& den) {
        if (mpz_sgn(den.raw()) == 0) throw std::invalid_argument("zero denominator");
        mpq_init(q_);
        mpz_set(mpq_numref(q_), num.raw());
        mpz_set(mpq_denref(q_), den.raw());
        mpq_canonicalize(q_);
    }
    Rational(const Rational& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rational() { mpq_clear(q_); }

    /// Accepts "p/q", a plain integer, or a finite decimal ("-1.25").
    static Rational from_string(std::string_view s) {
        auto r = try_parse(s);
        if (!r) throw ParseError("bad rational: '" + std::string(s) + "'");
        return *r;
    }

    static std::optional<Rational> try_parse(std::string_view s) {
        if (s.empty()) return std::nullopt;
        auto slash = s.find('/');
        if (slash != std::string_view::npos) {
            auto num = parse_decimal(s.substr(0, slash));
            auto den = parse_decimal(s.substr(slash + 1));
            if (!num || !den || mpq_sgn(den->q_) == 0) return std::nullopt;
            return *num / *den;
        }
        return parse_decimal(s);
    }

    /// Every finite double is a dyadic rational; this conversion is exact.
    static Rational from_double_exact(double v) {
        Rational r;
        mpq_set_d(r.q_, v);
        return r;
    }

    /// Canonical text form: "num/den" in lowest terms (den always printed).
    std::string str() const {
        char* c = mpq_get_str(nullptr, 10, q_);
        std::string s(c);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(c, s.size() + 1);
        if (s.find('/') == std::string::npos) s += "/1";
        return s;
    }

    double to_double() const { return mpq_get_d(q_); }
    Integer numerator() const {
        Integer n;
        mpz_set(n.raw(), mpq_numref(q_));
        return n;
    }
    Integer denominator() const {
        Integer n;
        mpz_set(n.raw(), mpq_denref(q_));
        return n;
    }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }
    int sgn() const { return mpq_sgn(q_); }

    Integer floor() const {
        Integer r;
        mpz_fdiv_q(r.raw(), mpq_numref(q_), mpq_denref(q_));
        return r;
    }
    Integer ceil() const {
        Integer r;
        mpz_cdiv_q(r.raw(), mpq_numref(q_), mpq_denref(q_));
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        Rational r;
        mpq_add(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        Rational r;
        mpq_sub(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Rational r;
        mpq_mul(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (mpq_sgn(b.q_) == 0) throw std::domain_error("division by zero");
        Rational r;
        mpq_div(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator-(const Rational& a) {
        Rational r;
        mpq_neg(r.q_, a.q_);
        return r;
    }
    Rational& operator+=(const Rational& b) {
        mpq_add(q_, q_, b.q_);
        return *this;
    }
    Rational& operator-=(const Rational& b) {
        mpq_sub(q_, q_, b.q_);
        return *this;
    }
    Rational& operator*=(const Rational& b) {
        mpq_mul(q_, q_, b.q_);
        return *this;
    }

    Rational abs() const {
        Rational r;
        mpq_abs(r.q_, q_);
        return r;
    }

    static Rational pow(const Rational& base, unsigned long e) {
        Rational r(1);
        mpz_pow_ui(mpq_numref(r.q_), mpq_numref(base.q_), e);
        mpz_pow_ui(mpq_denref(r.q_), mpq_denref(base.q_), e);
        return r;
    }

    int cmp(const Rational& o) const { return mpq_cmp(q_, o.q_); }
    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return a.cmp(b) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.cmp(b) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.cmp(b) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.cmp(b) >= 0; }

    const mpq_t& raw() const { return q_; }

  private:
    static std::optional<Rational> parse_decimal(std::string_view s) {
        if (s.empty()) return std::nullopt;
        size_t i = 0;
        bool neg = false;
        if (s[i] == '+' || s[i] == '-') {
            neg = (s[i] == '-');
            ++i;
        }
        std::string digits;
        long frac_digits = -1;
        bool any = false;
        for (; i < s.size(); ++i) {
            char c = s[i];
            if (c == '.') {
                if (frac_digits >= 0) return std::nullopt;
                frac_digits = 0;
            } else if (c >= '0' && c <= '9') {
                digits += c;
                any = true;
                if (frac_digits >= 0) ++frac_digits;
            } else {
                return std::nullopt;
            }
        }
        if (!any) return std::nullopt;
        Rational r;
        if (mpz_set_str(mpq_numref(r.q_), digits.c_str(), 10) != 0) return std::nullopt;
        if (frac_digits > 0) mpz_ui_pow_ui(mpq_denref(r.q_), 10, static_cast<unsigned long>(frac_digits));
        mpq_canonicalize(r.q_);
        if (neg) mpq_neg(r.q_, r.q_);
        return r;
    }

    mpq_t q_;
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace secluded
