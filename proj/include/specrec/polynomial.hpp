#ifndef SPECREC_POLYNOMIAL_HPP
#define SPECREC_POLYNOMIAL_HPP

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace specrec {

/// Univariate polynomial over Q, ascending coefficients, no trailing zeros.
class Polynomial {
  public:
    Polynomial() = default;
    Polynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { normalize(); }
    explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }
    explicit Polynomial(const Rational& constant) {
        if (!constant.is_zero()) c_.push_back(constant);
    }

    static Polynomial monomial(int deg, const Rational& coeff = Rational(1)) {
        if (coeff.is_zero()) return Polynomial();
        std::vector<Rational> c(static_cast<size_t>(deg) + 1);
        c.back() = coeff;
        return Polynomial(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
        return c_[static_cast<size_t>(k)];
    }
    Rational leading() const { return is_zero() ? Rational(0) : c_.back(); }

    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !is_zero() && leading() == Rational(1); }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial operator-() const {
        std::vector<Rational> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
        return Polynomial(std::move(r));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return Polynomial(std::move(r));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(const Polynomial& a, const Rational& s) {
        std::vector<Rational> r(a.c_.size());
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i] * s;
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(const Rational& s, const Polynomial& a) { return a * s; }

    /// Quotient and remainder; divisor must be nonzero.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
        if (b.is_zero()) throw std::domain_error("Polynomial: division by zero");
        std::vector<Rational> rem = a.c_;
        int db = b.degree();
        if (a.degree() < db) return {Polynomial(), a};
        std::vector<Rational> quo(static_cast<size_t>(a.degree() - db) + 1);
        Rational lead = b.leading();
        for (int k = a.degree(); k >= db; --k) {
            Rational q = rem[static_cast<size_t>(k)] / lead;
            if (q.is_zero()) continue;
            quo[static_cast<size_t>(k - db)] = q;
            for (int j = 0; j <= db; ++j)
                rem[static_cast<size_t>(k - db + j)] -= q * b.c_[static_cast<size_t>(j)];
        }
        while (!rem.empty() && rem.back().is_zero()) rem.pop_back();
        return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
    }

    /// Monic gcd via Euclid.
    static Polynomial gcd(Polynomial a, Polynomial b) {
        while (!b.is_zero()) {
            auto [q, r] = divmod(a, b);
            (void)q;
            a = std::move(b);
            b = std::move(r);
        }
        if (a.is_zero()) return a;
        return a * (Rational(1) / a.leading());
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial();
        std::vector<Rational> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
        return Polynomial(std::move(r));
    }

    Rational eval(const Rational& x) const {
        Rational r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    /// Multiplicity of x as a root (0 if not a root).
    int root_multiplicity(const Rational& x) const {
        if (is_zero()) throw std::domain_error("Polynomial: root multiplicity of zero polynomial");
        Polynomial p = *this;
        Polynomial lin{-x, Rational(1)};
        int m = 0;
        while (!p.is_zero() && p.eval(x).is_zero()) {
            auto [q, r] = divmod(p, lin);
            if (!r.is_zero()) break;
            p = std::move(q);
            ++m;
        }
        return m;
    }

    Polynomial pow(int e) const {
        Polynomial r{Rational(1)};
        Polynomial b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    /// Coefficients reversed: z^deg * p(1/z).
    Polynomial reversed() const {
        std::vector<Rational> r(c_.rbegin(), c_.rend());
        return Polynomial(std::move(r));
    }

    std::string str(const std::string& var = "z") const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            Rational a = coeff(k);
            if (a.is_zero()) continue;
            if (!out.empty()) out += a.sign() > 0 ? " + " : " - ";
            else if (a.sign() < 0) out += "-";
            Rational mag = a.abs();
            bool unit = (mag == Rational(1)) && k > 0;
            if (!unit) out += mag.str();
            if (k > 0) {
                if (!unit) out += "*";
                out += var;
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out;
    }

  private:
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rational> c_;
};

}  // namespace specrec

#endif
