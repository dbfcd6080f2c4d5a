#ifndef SPECREC_RATFUNC_HPP
#define SPECREC_RATFUNC_HPP

#include <stdexcept>
#include <string>
#include <utility>

#include "laurent.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace specrec {

/// A point of P^1(Q): a rational number or the point at infinity.
struct CurvePoint {
    bool infinite = false;
    Rational value;

    CurvePoint() = default;
    CurvePoint(const Rational& v) : infinite(false), value(v) {}  // NOLINT: implicit by design
    static CurvePoint infinity() {
        CurvePoint p;
        p.infinite = true;
        return p;
    }
    friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
        if (a.infinite != b.infinite) return false;
        return a.infinite || a.value == b.value;
    }
    friend bool operator!=(const CurvePoint& a, const CurvePoint& b) { return !(a == b); }
    friend bool operator<(const CurvePoint& a, const CurvePoint& b) {
        if (a.infinite != b.infinite) return !a.infinite;  // finite points first
        if (a.infinite) return false;
        return a.value < b.value;
    }
    std::string str() const { return infinite ? "inf" : value.str(); }
};

/// Laurent expansion of a function at a point of P^1 in the local coordinate
/// t = z - point (or t = 1/z at infinity).
struct LaurentExpansion {
    CurvePoint point;
    LocalSeries series;
    int min_degree() const { return series.valuation().value_or(series.hi() + 1); }
    int truncation_order() const { return series.hi(); }
};

/// Rational function over Q in canonical form: denominator monic and coprime
/// to the numerator; zero is 0/1.
class RationalFunction {
  public:
    RationalFunction() : num_(), den_{Rational(1)} {}
    RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
        reduce();
    }
    explicit RationalFunction(const Polynomial& p) : num_(p), den_{Rational(1)} {}
    explicit RationalFunction(const Rational& c) : num_(Polynomial(c)), den_{Rational(1)} {}

    static RationalFunction z() { return RationalFunction(Polynomial{Rational(0), Rational(1)}); }
    static RationalFunction constant(const Rational& c) { return RationalFunction(c); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return a + (-b);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const Rational& s) {
        return RationalFunction(a.num_ * s, a.den_);
    }
    friend RationalFunction operator*(const Rational& s, const RationalFunction& a) { return a * s; }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw std::domain_error("RationalFunction: division by zero function");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }

    RationalFunction derivative() const {
        return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    /// Exact value at a finite point; throws on a pole.
    Rational eval(const Rational& x) const {
        Rational d = den_.eval(x);
        if (d.is_zero()) throw std::domain_error("RationalFunction: evaluation at a pole");
        return num_.eval(x) / d;
    }

    /// Order of the pole at the given point (0 if regular; zeros count negative).
    int pole_order_at(const CurvePoint& p) const {
        if (is_zero()) return 0;
        if (p.infinite) return num_.degree() - den_.degree();
        return den_.root_multiplicity(p.value) - num_.root_multiplicity(p.value);
    }

    /// Laurent expansion in t = z - point (or t = 1/z at infinity), exact
    /// through t^order.
    LaurentExpansion expand_at(const CurvePoint& p, int order) const {
        if (is_zero()) return {p, LocalSeries::zero(order)};
        if (!p.infinite) {
            int md = den_.root_multiplicity(p.value);
            int window = order + 2 * md + 2;  // inverse of a valuation-md series costs 2*md of window
            if (window < 1) window = 1;
            LocalSeries n = LocalSeries::from_poly_shifted(num_, p.value, window);
            LocalSeries d = LocalSeries::from_poly_shifted(den_, p.value, window);
            LocalSeries s = n * d.inverse();
            // clamp window to requested order
            if (s.hi() < order) throw TruncationError("expand_at: window shortfall");
            if (s.lo() > order) return {p, LocalSeries::zero(order, order)};
            std::vector<Rational> cc;
            for (int k = s.lo(); k <= order; ++k) cc.push_back(s.coeff(k));
            return {p, LocalSeries(s.lo(), std::move(cc))};
        }
        // at infinity: f(1/t) = t^{deg den - deg num} * rev(num)(t)/rev(den)(t)
        int dn = num_.degree(), dd = den_.degree();
        int window = order + std::max(0, dn - dd) + 2;
        if (window < 1) window = 1;
        LocalSeries rn = LocalSeries::from_poly(num_.reversed(), window);
        LocalSeries rd = LocalSeries::from_poly(den_.reversed(), window);
        LocalSeries s = rn * rd.inverse();
        LocalSeries shifted(s.lo() + dd - dn, [&] {
            std::vector<Rational> v;
            for (int k = s.lo(); k <= s.hi(); ++k) v.push_back(s.coeff(k));
            return v;
        }());
        if (shifted.hi() < order) throw TruncationError("expand_at: window shortfall at infinity");
        if (shifted.lo() > order) return {CurvePoint::infinity(), LocalSeries::zero(order, order)};
        std::vector<Rational> cc;
        for (int k = shifted.lo(); k <= order; ++k) cc.push_back(shifted.coeff(k));
        return {CurvePoint::infinity(), LocalSeries(shifted.lo(), std::move(cc))};
    }

    /// Residue of f dz at the point. At infinity Res f dz = -[t^1] f(1/t),
    /// the orientation that makes the total residue sum vanish.
    Rational residue_at(const CurvePoint& p) const {
        if (is_zero()) return Rational(0);
        if (p.infinite) return -expand_at(p, 1).series.coeff(1);
        if (den_.root_multiplicity(p.value) == 0) return Rational(0);
        return expand_at(p, -1).series.coeff(-1);
    }

    std::string str(const std::string& var = "z") const {
        if (is_polynomial()) return num_.str(var);
        return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
    }

  private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = Polynomial{Rational(1)};
            return;
        }
        Polynomial g = Polynomial::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = Polynomial::divmod(num_, g).first;
            den_ = Polynomial::divmod(den_, g).first;
        }
        Rational lead = den_.leading();
        if (lead != Rational(1)) {
            Rational inv = Rational(1) / lead;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Polynomial num_, den_;
};

}  // namespace specrec

#endif
