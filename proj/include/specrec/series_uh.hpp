#ifndef SPECREC_SERIES_UH_HPP
#define SPECREC_SERIES_UH_HPP

#include <map>
#include <stdexcept>
#include <utility>

#include "laurent.hpp"
#include "ratfunc.hpp"

namespace specrec {

/// Bivariate truncated series in (u, hbar) with RationalFunction coefficients.
/// Absent entries are zero; all stored degrees lie within the bounds.
class SeriesUH {
  public:
    SeriesUH(int max_u, int max_hbar) : max_u_(max_u), max_hbar_(max_hbar) {
        if (max_u < 0 || max_hbar < 0) throw std::invalid_argument("SeriesUH: negative bounds");
    }

    int max_u() const { return max_u_; }
    int max_hbar() const { return max_hbar_; }
    const std::map<std::pair<int, int>, RationalFunction>& coeffs() const { return c_; }

    void add(int u_deg, int hbar_deg, const RationalFunction& v) {
        if (u_deg > max_u_ || hbar_deg > max_hbar_) return;  // truncated away
        if (u_deg < 0 || hbar_deg < 0) throw std::domain_error("SeriesUH: negative degree");
        if (v.is_zero()) return;
        auto key = std::make_pair(u_deg, hbar_deg);
        auto it = c_.find(key);
        if (it == c_.end()) {
            c_.emplace(key, v);
        } else {
            it->second = it->second + v;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    /// Exact stored coefficient (zero if absent); out-of-bounds degrees error.
    RationalFunction extract(int u_deg, int hbar_deg) const {
        if (u_deg < 0 || u_deg > max_u_ || hbar_deg < 0 || hbar_deg > max_hbar_)
            throw std::out_of_range("SeriesUH: coefficient (" + std::to_string(u_deg) + "," +
                                    std::to_string(hbar_deg) + ") outside bounds");
        auto it = c_.find({u_deg, hbar_deg});
        return it == c_.end() ? RationalFunction() : it->second;
    }

    bool has_constant_term() const { return c_.count({0, 0}) > 0; }

    friend SeriesUH operator+(const SeriesUH& a, const SeriesUH& b) {
        SeriesUH r(std::min(a.max_u_, b.max_u_), std::min(a.max_hbar_, b.max_hbar_));
        for (const auto& [k, v] : a.c_) r.add(k.first, k.second, v);
        for (const auto& [k, v] : b.c_) r.add(k.first, k.second, v);
        return r;
    }

    friend SeriesUH operator*(const SeriesUH& a, const SeriesUH& b) {
        SeriesUH r(std::min(a.max_u_, b.max_u_), std::min(a.max_hbar_, b.max_hbar_));
        for (const auto& [ka, va] : a.c_) {
            for (const auto& [kb, vb] : b.c_) {
                int u = ka.first + kb.first, h = ka.second + kb.second;
                if (u > r.max_u_ || h > r.max_hbar_) continue;
                r.add(u, h, va * vb);
            }
        }
        return r;
    }

    friend SeriesUH operator*(const SeriesUH& a, const Rational& s) {
        SeriesUH r(a.max_u_, a.max_hbar_);
        for (const auto& [k, v] : a.c_) r.add(k.first, k.second, v * s);
        return r;
    }

    /// exp(s) by the finite sum sum_k s^k/k!; requires no (0,0) term, so every
    /// monomial has positive total degree and the sum terminates.
    SeriesUH exp() const {
        if (has_constant_term()) throw std::domain_error("SeriesUH::exp: nonzero constant term");
        SeriesUH result(max_u_, max_hbar_);
        result.add(0, 0, RationalFunction::constant(Rational(1)));
        SeriesUH power = *this;
        Rational kfact(1);
        for (int k = 1; !power.c_.empty(); ++k) {
            kfact *= Rational(k);
            for (const auto& [key, v] : power.c_) result.add(key.first, key.second, v * (Rational(1) / kfact));
            if (k > max_u_ + max_hbar_) break;
            power = power * *this;
        }
        return result;
    }

    /// 1/s; requires the (0,0) coefficient to equal the constant 1.
    SeriesUH reciprocal() const {
        auto it = c_.find({0, 0});
        if (it == c_.end() || it->second != RationalFunction::constant(Rational(1)))
            throw std::domain_error("SeriesUH::reciprocal: constant term must be 1");
        SeriesUH rest = *this;  // s - 1
        rest.c_.erase({0, 0});
        SeriesUH result(max_u_, max_hbar_);
        result.add(0, 0, RationalFunction::constant(Rational(1)));
        SeriesUH power = rest;
        for (int k = 1; !power.c_.empty(); ++k) {
            Rational sign((k % 2) ? -1 : 1);
            for (const auto& [key, v] : power.c_) result.add(key.first, key.second, v * sign);
            if (k > max_u_ + max_hbar_) break;
            power = power * rest;
        }
        return result;
    }

    /// Injects a univariate even series w(t) as w(u*hbar) with constant
    /// rational-function coefficients (used for the 1/S(u hbar) denominator).
    static SeriesUH from_uhbar_series(const LocalSeries& w, int max_u, int max_hbar) {
        if (w.lo() < 0) throw std::domain_error("SeriesUH: Laurent tail in (u hbar) injection");
        SeriesUH r(max_u, max_hbar);
        for (int k = 0; k <= w.hi() && k <= std::min(max_u, max_hbar); ++k) {
            Rational ck = w.coeff(k);
            if (!ck.is_zero()) r.add(k, k, RationalFunction::constant(ck));
        }
        return r;
    }

  private:
    int max_u_, max_hbar_;
    std::map<std::pair<int, int>, RationalFunction> c_;
};

}  // namespace specrec

#endif
