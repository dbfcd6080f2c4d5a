#ifndef SPECREC_PARTIAL_FRACTIONS_HPP
#define SPECREC_PARTIAL_FRACTIONS_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ratfunc.hpp"

namespace specrec {

/// A denominator factor is irreducible over Q; carries the offending factor.
struct IrrationalPoleError : std::runtime_error {
    Polynomial factor;
    explicit IrrationalPoleError(const Polynomial& f)
        : std::runtime_error("irrational pole: denominator factor " + f.str() + " has no rational root"),
          factor(f) {}
};

namespace detail {

inline std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> divs;
    if (n == 0) return divs;
    std::vector<std::pair<mpz_class, int>> fac;
    mpz_class d = 2;
    while (d * d <= n) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            fac.emplace_back(d, e);
        }
        d += (d == 2) ? 1 : 2;
    }
    if (n > 1) fac.emplace_back(n, 1);
    divs.push_back(1);
    for (auto& [p, e] : fac) {
        size_t sz = divs.size();
        mpz_class pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

}  // namespace detail

/// All rational roots of p with multiplicities, plus the rootless cofactor.
struct RationalRoots {
    std::vector<std::pair<Rational, int>> roots;
    Polynomial cofactor;  // monic, no rational roots (constant 1 when fully split)
};

inline RationalRoots rational_roots(const Polynomial& p) {
    if (p.is_zero()) throw std::domain_error("rational_roots: zero polynomial");
    RationalRoots out;
    Polynomial q = p * (Rational(1) / p.leading());
    // strip roots at zero
    int zmult = 0;
    while (!q.is_zero() && q.coeff(0).is_zero()) {
        std::vector<Rational> shifted(q.coeffs().begin() + 1, q.coeffs().end());
        q = Polynomial(std::move(shifted));
        ++zmult;
    }
    if (zmult > 0) out.roots.emplace_back(Rational(0), zmult);
    if (q.degree() <= 0) {
        out.cofactor = Polynomial{Rational(1)};
        return out;
    }
    // integer-coefficient image: candidates num/den with num | a0, den | an
    mpz_class lcm_den = 1;
    for (const auto& c : q.coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.den().get_mpz_t());
    std::vector<mpz_class> ic;
    for (const auto& c : q.coeffs()) ic.push_back(c.num() * (lcm_den / c.den()));
    auto nums = detail::divisors(ic.front());
    auto dens = detail::divisors(ic.back());
    std::vector<Rational> candidates;
    for (const auto& n : nums)
        for (const auto& d : dens) {
            mpq_class q(n);
            q /= mpq_class(d);
            Rational r{q};
            candidates.push_back(r);
            candidates.push_back(-r);
        }
    for (const auto& cand : candidates) {
        if (q.degree() <= 0) break;
        int m = 0;
        while (q.degree() > 0 && q.eval(cand).is_zero()) {
            q = Polynomial::divmod(q, Polynomial{-cand, Rational(1)}).first;
            ++m;
        }
        if (m > 0) out.roots.emplace_back(cand, m);
    }
    out.cofactor = q.degree() > 0 ? q : Polynomial{Rational(1)};
    return out;
}

/// One principal-part term coefficient/(z - pole)^order.
struct PoleTerm {
    Rational pole;
    int order;
    Rational coefficient;
};

struct PartialFractions {
    Polynomial polynomial_part;
    std::vector<PoleTerm> terms;
};

/// Exact decomposition f = polynomial_part + sum coeff/(z-pole)^order.
/// Throws IrrationalPoleError if the denominator has a non-rational root.
inline PartialFractions partial_fractions(const RationalFunction& f) {
    PartialFractions out;
    auto [quo, rem] = Polynomial::divmod(f.num(), f.den());
    out.polynomial_part = quo;
    if (rem.is_zero()) return out;
    RationalFunction proper(rem, f.den());
    auto roots = rational_roots(proper.den());
    if (roots.cofactor.degree() > 0) throw IrrationalPoleError(roots.cofactor);
    for (const auto& [pole, mult] : roots.roots) {
        // (z-pole)^mult * f expanded at the pole gives the principal coefficients
        RationalFunction shifted = proper * RationalFunction(Polynomial{-pole, Rational(1)}.pow(mult));
        LaurentExpansion e = shifted.expand_at(CurvePoint(pole), mult - 1);
        for (int j = 0; j < mult; ++j) {
            Rational c = e.series.coeff(j);
            if (!c.is_zero()) out.terms.push_back({pole, mult - j, c});
        }
    }
    return out;
}

/// Rebuild a rational function from its decomposition (test helper and
/// integration-path inverse).
inline RationalFunction from_partial_fractions(const PartialFractions& pf) {
    RationalFunction f(pf.polynomial_part);
    for (const auto& t : pf.terms)
        f = f + RationalFunction(Polynomial{t.coefficient}, Polynomial{-t.pole, Rational(1)}.pow(t.order));
    return f;
}

}  // namespace specrec

#endif
