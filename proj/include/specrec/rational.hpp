#ifndef SPECREC_RATIONAL_HPP
#define SPECREC_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace specrec {

/// Arbitrary-precision rational, canonical form: gcd(|num|, den) = 1, den > 0.
/// Serializes as "p/q", or "p" when q = 1.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long n, long d) : v_(n, d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit Rational(const mpz_class& n) : v_(n) {}

    /// Parses "p/q" or "p" (arbitrary precision, optional sign).
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) {
                return Rational(mpq_class(mpz_class(s)));
            }
            mpz_class num(s.substr(0, slash));
            mpz_class den(s.substr(slash + 1));
            if (den == 0) throw std::domain_error("Rational: zero denominator");
            mpq_class q(num);
            q /= mpq_class(den);
            return Rational(q);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("Rational: cannot parse '" + s + "'");
        }
    }

    std::string str() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    /// Integer power, negative exponents allowed for nonzero values.
    Rational pow(long e) const {
        if (e == 0) return Rational(1);
        if (e < 0) {
            if (is_zero()) throw std::domain_error("Rational: 0^negative");
            return (Rational(1) / *this).pow(-e);
        }
        mpq_class r;
        mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(v_.get_mpq_t()), static_cast<unsigned long>(e));
        mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(v_.get_mpq_t()), static_cast<unsigned long>(e));
        return Rational(r);
    }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    size_t hash() const { return std::hash<std::string>{}(str()); }

  private:
    mpq_class v_;
};

inline Rational operator*(long a, const Rational& b) { return Rational(a) * b; }
inline Rational operator*(const Rational& a, long b) { return a * Rational(b); }
inline Rational operator+(long a, const Rational& b) { return Rational(a) + b; }
inline Rational operator-(long a, const Rational& b) { return Rational(a) - b; }
inline Rational operator/(const Rational& a, long b) { return a / Rational(b); }

/// n! as a Rational (n small).
inline Rational factorial(int n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

/// Binomial coefficient C(n, k).
inline Rational binomial(int n, int k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

}  // namespace specrec

#endif
