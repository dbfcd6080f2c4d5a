#ifndef SPECREC_APPENDIX_HPP
#define SPECREC_APPENDIX_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ratfunc.hpp"
#include "special_series.hpp"

namespace specrec {

/// The a_{n,g} table built from an even series A = 1 + sum b_k t^{2k}:
/// a_{n,g} = sum_{i=0}^n [t^{2g}] A^{2g+i+1} / (2g+i+1) * (-1)^{n-i} / (i!(n-i)!).
struct ANGTable {
    int g;
    std::map<int, Rational> values;  // n in 0..g-1
};

inline ANGTable compute_ang(int g, const LocalSeries& A) {
    if (g < 1) throw std::invalid_argument("compute_ang: g >= 1");
    if (A.lo() > 0 || A.coeff(0) != Rational(1))
        throw std::invalid_argument("compute_ang: A must have constant term 1");
    if (A.hi() < 2 * g) throw std::invalid_argument("compute_ang: A truncation below 2g");
    for (int k = 1; k <= A.hi(); k += 2)
        if (!A.coeff(k).is_zero()) throw std::invalid_argument("compute_ang: A must be even");
    ANGTable out;
    out.g = g;
    // powers A^{2g+i+1} for i = 0..g-1
    LocalSeries pw = A.pow(2 * g + 1);
    for (int n = 0; n < g; ++n) out.values[n] = Rational(0);
    LocalSeries cur = pw;
    for (int i = 0; i < g; ++i) {
        Rational t2g = cur.coeff(2 * g);
        for (int n = i; n < g; ++n) {
            Rational sign((n - i) % 2 ? -1 : 1);
            out.values[n] += t2g * sign /
                             (Rational(2 * g + i + 1) * factorial(i) * factorial(n - i));
        }
        if (i + 1 < g) cur = cur * A;
    }
    return out;
}

/// Verdict for the alternating factorial sum of Lemma A.1:
/// lhs = sum_{n=0}^{g-1} (-1)^{2g+n-1} (2g+n-1)! a_{n,g} with
/// A = (t/2)/tanh(t/2), compared against -b_g(2g-1)! and +b_g(2g-1)!.
struct LemmaA1Row {
    int g;
    Rational lhs;
    Rational minus_candidate;  // -b_g (2g-1)!
    Rational plus_candidate;
    std::string match;  // "minus", "plus", or "neither"
};

inline std::vector<LemmaA1Row> lemmaA1_check(int g_max) {
    if (g_max < 1) throw std::invalid_argument("lemmaA1_check: g_max >= 1");
    std::vector<LemmaA1Row> rows;
    for (int g = 1; g <= g_max; ++g) {
        LocalSeries A = a_cotangent_series(2 * g);
        ANGTable tab = compute_ang(g, A);
        Rational lhs(0);
        for (int n = 0; n < g; ++n) {
            Rational sign((2 * g + n - 1) % 2 ? -1 : 1);
            lhs += sign * factorial(2 * g + n - 1) * tab.values.at(n);
        }
        Rational bg = bernoulli(2 * g) / factorial(2 * g);
        Rational minus = -bg * factorial(2 * g - 1);
        Rational plus = -minus;
        std::string match = (lhs == minus) ? "minus" : (lhs == plus) ? "plus" : "neither";
        rows.push_back({g, lhs, minus, plus, match});
    }
    return rows;
}

namespace detail {

/// x(y) = const - sum_b log(Q_b - y); dx/dy = sum_b 1/(Q_b - y).
inline RationalFunction log_frame_xprime(const std::vector<Rational>& Q) {
    RationalFunction s;
    for (const auto& q : Q)
        s = s + RationalFunction(Polynomial{Rational(1)}, Polynomial{q, Rational(-1)});
    return s;
}

}  // namespace detail

/// Pole-order drop of (d/dx - (n_a - 1)) f/(Q_a - y)^{n_a - 1} at y = Q_a.
struct DegreeShift {
    int pole_order_before;
    int pole_order_after;
};

inline DegreeShift degree_shift_check(const std::vector<Rational>& Q, size_t a_index, int n_a,
                                      const RationalFunction& f) {
    if (n_a < 2) throw std::invalid_argument("degree_shift_check: n_a >= 2");
    if (a_index >= Q.size()) throw std::invalid_argument("degree_shift_check: bad index");
    const Rational& Qa = Q[a_index];
    if (f.pole_order_at(CurvePoint(Qa)) > 0)
        throw std::invalid_argument("degree_shift_check: f must be regular at Q_a");
    RationalFunction xp = detail::log_frame_xprime(Q);
    RationalFunction base =
        f / RationalFunction(Polynomial{Qa, Rational(-1)}.pow(n_a - 1));  // f/(Q_a - y)^{n_a-1}
    RationalFunction shifted = base.derivative() / xp - base * Rational(n_a - 1);
    return {base.pole_order_at(CurvePoint(Qa)), shifted.pole_order_at(CurvePoint(Qa))};
}

/// Brute-force arbitration of the residue identity
/// Res_{y->Q_a} f/(y-Q_a)^{n_a} (d_x + n_a-1)...(d_x + 1) g(y):
/// the identity as usually quoted, g(Q_a) f^{(n_a-1)}(Q_a), against the
/// variant carrying the standard 1/(n_a-1)! of the residue formula.
struct ResidueLemmaVerdict {
    Rational brute_force;
    Rational quoted_form;
    Rational factorial_form;
    std::string match;  // "quoted", "factorial", "both", or "neither"
};

inline ResidueLemmaVerdict residue_lemma_oracle(const std::vector<Rational>& Q, size_t a_index, int n_a,
                                                const RationalFunction& f, const RationalFunction& gfun) {
    if (n_a < 1) throw std::invalid_argument("residue_lemma_oracle: n_a >= 1");
    if (a_index >= Q.size()) throw std::invalid_argument("residue_lemma_oracle: bad index");
    const Rational& Qa = Q[a_index];
    if (f.pole_order_at(CurvePoint(Qa)) > 0 || gfun.pole_order_at(CurvePoint(Qa)) > 0)
        throw std::invalid_argument("residue_lemma_oracle: f and g must be regular at Q_a");
    RationalFunction xp = detail::log_frame_xprime(Q);
    RationalFunction op = gfun;
    for (int j = 1; j <= n_a - 1; ++j) op = op.derivative() / xp + op * Rational(j);
    RationalFunction integrand =
        f / RationalFunction(Polynomial{-Qa, Rational(1)}.pow(n_a)) * op;
    Rational brute = integrand.residue_at(CurvePoint(Qa));
    RationalFunction fd = f;
    for (int j = 0; j < n_a - 1; ++j) fd = fd.derivative();
    Rational quoted = gfun.eval(Qa) * fd.eval(Qa);
    Rational fact = quoted / factorial(n_a - 1);
    std::string match;
    if (brute == quoted && brute == fact)
        match = "both";
    else if (brute == quoted)
        match = "quoted";
    else if (brute == fact)
        match = "factorial";
    else
        match = "neither";
    return {brute, quoted, fact, match};
}

/// Measures the constant term of (d_x + n_a-1)...(d_x + 1) g at Q_a and checks
/// the lower-order vanishing: the expansion is C g(Q_a) + O((y-Q_a)^{n_a}).
/// Returns the measured C (the proof display omits its factorial).
struct OperatorExpansion {
    Rational measured_constant_over_g;  // C, when g(Q_a) != 0
    bool vanishing_orders_hold;         // coefficients 1..n_a-1 vanish
};

inline OperatorExpansion operator_expansion_check(const std::vector<Rational>& Q, size_t a_index,
                                                  int n_a, const RationalFunction& gfun) {
    const Rational& Qa = Q[a_index];
    if (gfun.eval(Qa).is_zero())
        throw std::invalid_argument("operator_expansion_check: need g(Q_a) != 0");
    RationalFunction xp = detail::log_frame_xprime(Q);
    RationalFunction op = gfun;
    for (int j = 1; j <= n_a - 1; ++j) op = op.derivative() / xp + op * Rational(j);
    LaurentExpansion e = op.expand_at(CurvePoint(Qa), n_a - 1);
    bool ok = true;
    for (int k = 1; k <= n_a - 1; ++k)
        if (!e.series.coeff(k).is_zero()) ok = false;
    return {e.series.coeff(0) / gfun.eval(Qa), ok};
}

}  // namespace specrec

#endif
