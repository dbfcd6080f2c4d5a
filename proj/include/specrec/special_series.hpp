#ifndef SPECREC_SPECIAL_SERIES_HPP
#define SPECREC_SPECIAL_SERIES_HPP

#include <stdexcept>
#include <vector>

#include "laurent.hpp"
#include "rational.hpp"

namespace specrec {

/// Bernoulli number B_n for even n >= 2, via the defining recurrence
/// sum_{k=0}^{n} C(n+1,k) B_k = 0.
inline Rational bernoulli(int n) {
    if (n < 2 || n % 2 != 0) throw std::domain_error("bernoulli: n must be even and >= 2");
    std::vector<Rational> b(static_cast<size_t>(n) + 1);
    b[0] = Rational(1);
    b[1] = Rational(-1, 2);
    for (int m = 2; m <= n; ++m) {
        if (m % 2 == 1) {
            b[static_cast<size_t>(m)] = Rational(0);
            continue;
        }
        Rational acc(0);
        for (int k = 0; k < m; ++k) acc += binomial(m + 1, k) * b[static_cast<size_t>(k)];
        b[static_cast<size_t>(m)] = -acc / binomial(m + 1, m);
    }
    return b[static_cast<size_t>(n)];
}

enum class SKind { S, InverseS, Power };

/// Truncated expansion of S(t) = (e^{t/2} - e^{-t/2})/t, of 1/S, or of S^e.
/// Only even powers of t appear; [t^{2k}] S = 1/(4^k (2k+1)!).
inline LocalSeries s_function_series(SKind kind, int max_deg, int e = 1) {
    LocalSeries s = LocalSeries::zero(max_deg);
    std::vector<Rational> c(static_cast<size_t>(max_deg) + 1);
    for (int k = 0; 2 * k <= max_deg; ++k)
        c[static_cast<size_t>(2 * k)] = Rational(1) / (Rational(4).pow(k) * factorial(2 * k + 1));
    LocalSeries S(0, std::move(c));
    switch (kind) {
        case SKind::S:
            return S;
        case SKind::InverseS:
            return S.inverse();
        case SKind::Power:
            if (e == 0) return LocalSeries::constant(Rational(1), max_deg);
            return e > 0 ? S.pow(e) : S.inverse().pow(-e);
    }
    throw std::logic_error("s_function_series: bad kind");
}

/// A = (t/2)/tanh(t/2) = sum B_{2n} t^{2n} / (2n)!, truncated.
inline LocalSeries a_cotangent_series(int max_deg) {
    LocalSeries a = LocalSeries::zero(max_deg);
    std::vector<Rational> c(static_cast<size_t>(max_deg) + 1);
    c[0] = Rational(1);
    for (int n = 1; 2 * n <= max_deg; ++n)
        c[static_cast<size_t>(2 * n)] = bernoulli(2 * n) / factorial(2 * n);
    return LocalSeries(0, std::move(c));
}

}  // namespace specrec

#endif
