#ifndef SPECREC_LAURENT_HPP
#define SPECREC_LAURENT_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polynomial.hpp"
#include "rational.hpp"

namespace specrec {

/// Requested coefficient lies beyond the tracked truncation window.
struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& m) : std::runtime_error(m) {}
};

/// Truncated Laurent series sum_{k>=lo} c_k t^k; coefficients are exact up to
/// t^hi and unknown beyond. Multiplication shrinks the window accordingly, so
/// exactness is tracked through arbitrary arithmetic.
class LocalSeries {
  public:
    LocalSeries() : lo_(0) {}
    LocalSeries(int lo, std::vector<Rational> coeffs) : lo_(lo), c_(std::move(coeffs)) {
        if (c_.empty()) throw std::invalid_argument("LocalSeries: empty window");
    }

    static LocalSeries zero(int hi, int lo = 0) {
        return LocalSeries(lo, std::vector<Rational>(static_cast<size_t>(hi - lo) + 1));
    }
    static LocalSeries constant(const Rational& v, int hi) {
        LocalSeries s = zero(hi);
        s.c_[0] = v;
        return s;
    }
    /// t^k within window [k, hi].
    static LocalSeries monomial(int k, int hi, const Rational& v = Rational(1)) {
        LocalSeries s = zero(hi, k);
        s.c_[0] = v;
        return s;
    }
    /// p(t) as a series with window [0, hi].
    static LocalSeries from_poly(const Polynomial& p, int hi) {
        LocalSeries s = zero(hi);
        for (int k = 0; k <= std::min(p.degree(), hi); ++k) s.c_[static_cast<size_t>(k)] = p.coeff(k);
        return s;
    }
    /// p(a+t) as a series with window [0, hi].
    static LocalSeries from_poly_shifted(const Polynomial& p, const Rational& a, int hi) {
        LocalSeries pt = zero(hi);
        pt.c_[0] = a;
        if (hi >= 1) pt.c_[1] = Rational(1);
        LocalSeries s = zero(hi);
        for (int k = p.degree(); k >= 0; --k) s = s * pt + constant(p.coeff(k), hi);
        return s;
    }
    /// Expansion of 1/(c+t)^k at t=0 (c != 0), window [−0.. derived].
    static LocalSeries geometric_pow(const Rational& c, int k, int hi) {
        if (c.is_zero()) throw std::domain_error("LocalSeries: geometric at zero");
        LocalSeries g = zero(hi);
        Rational cur = Rational(1) / c;
        Rational step = -Rational(1) / c;
        for (int j = 0; j <= hi; ++j) {
            g.c_[static_cast<size_t>(j)] = cur;
            cur *= step;
        }
        return k == 1 ? g : g.pow(k);
    }
    /// log(c+t) - log(c) = log(1 + t/c), c != 0.
    static LocalSeries log_shift(const Rational& c, int hi) {
        if (c.is_zero()) throw std::domain_error("LocalSeries: log expansion at branch point");
        LocalSeries s = zero(hi);
        Rational p(1);
        for (int k = 1; k <= hi; ++k) {
            p /= c;
            s.c_[static_cast<size_t>(k)] = Rational((k % 2) ? 1 : -1, k) * p;
        }
        return s;
    }

    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(c_.size()) - 1; }

    Rational coeff(int k) const {
        if (k > hi())
            throw TruncationError("LocalSeries: coefficient t^" + std::to_string(k) +
                                  " beyond window [" + std::to_string(lo_) + "," + std::to_string(hi()) + "]");
        if (k < lo_) return Rational(0);
        return c_[static_cast<size_t>(k - lo_)];
    }

    /// Lowest exponent with nonzero coefficient, if any within the window.
    std::optional<int> valuation() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return lo_ + static_cast<int>(i);
        return std::nullopt;
    }

    bool window_zero() const { return !valuation().has_value(); }

    LocalSeries operator-() const {
        LocalSeries r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    friend LocalSeries operator+(const LocalSeries& a, const LocalSeries& b) {
        int lo = std::min(a.lo_, b.lo_);
        int hi = std::min(a.hi(), b.hi());
        if (hi < lo) throw TruncationError("LocalSeries: empty window in addition");
        LocalSeries r = zero(hi, lo);
        for (int k = lo; k <= hi; ++k) {
            Rational v(0);
            if (k >= a.lo_ && k <= a.hi()) v += a.c_[static_cast<size_t>(k - a.lo_)];
            if (k >= b.lo_ && k <= b.hi()) v += b.c_[static_cast<size_t>(k - b.lo_)];
            r.c_[static_cast<size_t>(k - lo)] = v;
        }
        return r;
    }
    friend LocalSeries operator-(const LocalSeries& a, const LocalSeries& b) { return a + (-b); }

    friend LocalSeries operator*(const LocalSeries& a, const LocalSeries& b) {
        int lo = a.lo_ + b.lo_;
        int hi = std::min(a.lo_ + b.hi(), b.lo_ + a.hi());
        if (hi < lo) throw TruncationError("LocalSeries: empty window in product");
        LocalSeries r = zero(hi, lo);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            int ka = a.lo_ + static_cast<int>(i);
            if (ka + b.lo_ > hi) break;
            size_t jmax = std::min(b.c_.size(), static_cast<size_t>(hi - ka - b.lo_) + 1);
            for (size_t j = 0; j < jmax; ++j) {
                if (b.c_[j].is_zero()) continue;
                r.c_[static_cast<size_t>(ka + b.lo_ + static_cast<int>(j) - lo)] += a.c_[i] * b.c_[j];
            }
        }
        return r;
    }
    friend LocalSeries operator*(const LocalSeries& a, const Rational& s) {
        LocalSeries r = a;
        for (auto& v : r.c_) v *= s;
        return r;
    }
    friend LocalSeries operator*(const Rational& s, const LocalSeries& a) { return a * s; }

    LocalSeries inverse() const {
        auto v = valuation();
        if (!v) throw std::domain_error("LocalSeries: inverting a series that vanishes through its window");
        int val = *v;
        int n = hi() - val;
        std::vector<Rational> a(static_cast<size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) a[static_cast<size_t>(i)] = coeff(val + i);
        std::vector<Rational> b(static_cast<size_t>(n) + 1);
        b[0] = Rational(1) / a[0];
        for (int k = 1; k <= n; ++k) {
            Rational acc(0);
            for (int j = 1; j <= k; ++j) acc += a[static_cast<size_t>(j)] * b[static_cast<size_t>(k - j)];
            b[static_cast<size_t>(k)] = -acc / a[0];
        }
        return LocalSeries(-val, std::move(b));
    }

    friend LocalSeries operator/(const LocalSeries& a, const LocalSeries& b) { return a * b.inverse(); }

    LocalSeries derivative() const {
        LocalSeries r = zero(hi() - 1, lo_ - 1);
        for (size_t i = 0; i < c_.size(); ++i) {
            int k = lo_ + static_cast<int>(i);
            if (k != 0) r.c_[static_cast<size_t>(k - 1 - r.lo_)] = c_[i] * Rational(k);
        }
        return r;
    }

    /// self(o(t)); requires lo() >= 0 and o of valuation >= 1.
    LocalSeries compose(const LocalSeries& o) const {
        if (lo_ < 0) throw std::domain_error("LocalSeries: composing a Laurent tail");
        auto ov = o.valuation();
        if (o.lo() < 0 || (ov && *ov < 1))
            throw std::domain_error("LocalSeries: inner series must vanish at 0");
        LocalSeries res = constant(Rational(0), o.hi());
        LocalSeries pw = constant(Rational(1), o.hi());
        for (size_t i = 0; i < c_.size(); ++i) {
            if (!c_[i].is_zero()) res = res + pw * c_[i];
            if (i + 1 < c_.size()) {
                pw = pw * o;
                if (pw.window_zero()) break;
            }
        }
        return res;
    }

    LocalSeries pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        if (e == 0) return constant(Rational(1), hi() - std::min(lo_, 0));
        LocalSeries acc = *this;
        for (int i = 1; i < e; ++i) acc = acc * *this;
        return acc;
    }

    /// Residue pairing: [t^{-1}] (a*b) computed without forming the product.
    static Rational residue_of_product(const LocalSeries& a, const LocalSeries& b) {
        // exactness: every split a_k * b_{-1-k} with k in [a.lo, a.hi] must be known in b
        if (-1 - a.lo_ > b.hi() || -1 - b.lo_ > a.hi())
            throw TruncationError("LocalSeries: residue pairing exceeds window");
        Rational tot(0);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            int ka = a.lo_ + static_cast<int>(i);
            int kb = -1 - ka;
            if (kb < b.lo_ || kb > b.hi()) continue;
            const Rational& bv = b.c_[static_cast<size_t>(kb - b.lo_)];
            if (!bv.is_zero()) tot += a.c_[i] * bv;
        }
        return tot;
    }

    std::string str() const {
        std::string out;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += c_[i].str() + "*t^" + std::to_string(lo_ + static_cast<int>(i));
        }
        return out.empty() ? "0" : out;
    }

  private:
    int lo_;
    std::vector<Rational> c_;
};

}  // namespace specrec

#endif
