#ifndef SPECREC_TR_ENGINE_HPP
#define SPECREC_TR_ENGINE_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "curve.hpp"
#include "multidiff.hpp"
#include "special_series.hpp"

namespace specrec {

/// The TR path cannot run for this curve (e.g. irrational ramification).
struct TRPathError : std::runtime_error {
    explicit TRPathError(const std::string& m) : std::runtime_error(m) {}
};

struct FreeEnergyValue {
    int genus;
    Rational value;
    enum class Path { TR, Duality, ClosedForm } path;
};

struct Lemma31Report {
    Rational lhs;
    Rational rhs;
    bool holds;
    std::string side;  // "primal" (identity as stated) or "dual" (x-y swapped form)
    std::vector<std::pair<Rational, Rational>> lhs_per_point;
    std::vector<std::pair<Rational, Rational>> rhs_per_point;
};

struct TREngineOptions {
    int truncation_order = 0;  // 0: derive 6*g_max + 8 per call
    int max_euler = 8;         // guard: 2g+n-2 <= max_euler
    int max_vars = 4;          // guard: n <= max_vars
};

/// Log-TR on a genus-zero curve: the Eynard-Orantin residue recursion over
/// the ramification points of x, plus the logarithmic correction to
/// omega_{g,1} at log-vital points of y. All arithmetic is exact.
class TREngine {
  public:
    explicit TREngine(SpectralCurve curve, TREngineOptions opts = {})
        : curve_(std::move(curve)), opts_(opts), fingerprint_(curve_.fingerprint()) {
        if (curve_.y().kind() == FunctionKind::Plain && !curve_.y().log_atoms().empty() &&
            !ram_x_or_empty().empty())
            throw TRPathError("TR path: y with general log atoms is only supported on unramified x");
        points_ = classify_residue_points(curve_);
        if (!points_.ram_x_complete)
            throw TRPathError("TR path unavailable: dx has non-rational zeros");
        if (curve_.y().is_log_of_z()) {
            // a log-vital point of y at infinity has no implemented correction
            RationalFunction dx = curve_.x().differential();
            LaurentExpansion e = dx.expand_at(CurvePoint::infinity(), 2);
            if (e.min_degree() - 2 >= 0)
                throw TRPathError("TR path unavailable: log-vital point of y at infinity");
        }
    }

    const SpectralCurve& curve() const { return curve_; }
    const ResiduePointSet& points() const { return points_; }
    const std::string& fingerprint() const { return fingerprint_; }

    /// omega_{g,n}; omega_{0,1} is not represented (use the curve), and
    /// omega_{0,2} returns the Bergman marker.
    MultiDifferential omega(int g, int n) {
        if (g < 0 || n < 1) throw std::invalid_argument("omega: bad indices");
        if (g == 0 && n == 1) throw std::invalid_argument("omega_{0,1} is y dx, not a pole-basis tensor");
        if (g == 0 && n == 2) return MultiDifferential::bergman();
        if (2 * g + n - 2 > opts_.max_euler || n > opts_.max_vars)
            throw std::invalid_argument("omega: complexity guard exceeded (configurable)");
        {
            std::shared_lock lk(memo_mutex_);
            auto it = memo_.find(memo_key(g, n));
            if (it != memo_.end()) return it->second;
        }
        MultiDifferential w = [&] {
            int order = opts_.truncation_order > 0 ? opts_.truncation_order : 6 * (g + n) + 8;
            for (int attempt = 0;; ++attempt) {
                try {
                    return compute_omega(g, n, order);
                } catch (const TruncationError&) {
                    if (attempt >= 2) throw;
                    order *= 2;
                }
            }
        }();
        std::unique_lock lk(memo_mutex_);
        auto [it, inserted] = memo_.emplace(memo_key(g, n), std::move(w));
        (void)inserted;  // concurrent recomputation is benign: results identical
        return it->second;
    }

    /// The delta_{n,0} correction of Log-TR: one-variable differential with
    /// poles at the log-vital points of y. Zero when there are none.
    MultiDifferential logtr_correction(int g) {
        if (g < 1) throw std::invalid_argument("logtr_correction: g >= 1");
        MultiDifferential corr(g, 1);
        RationalFunction xp = curve_.x().differential();
        LocalSeries invS = s_function_series(SKind::InverseS, 2 * g);
        for (const auto& atom : points_.log_y) {
            // residue of dy at the atom is the atom coefficient = 1/alpha
            Rational alpha = Rational(1) / atom.coefficient;
            // [hbar^{2g}] (1/(alpha S(alpha hbar d_x))) log(q - a)
            //   = invS[2g] alpha^{2g-1} * D_x^{2g} log(q - a), D_x = (1/x') d/dq
            RationalFunction dxlog(Polynomial{Rational(1)}, Polynomial{-atom.branch_point, Rational(1)});
            RationalFunction term = dxlog / xp;  // D_x^1 log(q-a)
            for (int j = 2; j <= 2 * g; ++j) term = term.derivative() / xp;
            term = term * (invS.coeff(2 * g) * alpha.pow(2 * g - 1));
            // Res_{q->a} (1/(z-q) - 1/(z-a)) term(q) x'(q) dq
            RationalFunction density = term * xp;
            int depth = density.pole_order_at(CurvePoint(atom.branch_point));
            if (depth <= 1) continue;
            LaurentExpansion e = density.expand_at(CurvePoint(atom.branch_point), depth + 2);
            for (int j = 1; j < depth; ++j) {
                Rational c = e.series.coeff(-j - 1);
                if (!c.is_zero()) corr.add_term({BasisFactor{atom.branch_point, j + 1}}, c);
            }
        }
        return corr;
    }

    /// F_g by the dilaton equation: (1/(2-2g)) sum_{p_i} Res Phi omega_{g,1}.
    FreeEnergyValue dilaton_free_energy(int g) {
        if (g < 2) throw std::invalid_argument("dilaton_free_energy: g >= 2");
        MultiDifferential w = omega(g, 1);
        if (!w.is_residue_free())
            throw std::logic_error("dilaton_free_energy: omega_{g,1} is not residue-free");
        CurveFunction phi = primitive_phi(curve_, PrimitiveSide::Primal);
        Rational tot(0);
        for (const auto& p : points_.ram_x) {
            int depth = w.max_order_at(p);
            if (depth == 0) continue;
            // log constants of Phi pair only with order-1 terms, which vanish
            LogLocal phil = specrec::expand_curve_function(phi, p, depth + 1);
            for (const auto& [key, c] : w.terms()) {
                if (key[0].point != p) continue;
                tot += c * phil.plain.coeff(key[0].order - 1);
            }
        }
        return {g, tot / Rational(2 - 2 * g), FreeEnergyValue::Path::TR};
    }

    /// Loop-equation residue identity (the x-y symmetrization lemma).
    /// Evaluated on the side carrying the logarithmic data: for a curve whose
    /// x has log atoms and y is an unramified plain coordinate, the x-y
    /// swapped form is checked (lhs over Ram(y), rhs over the atoms of x).
    Lemma31Report lemma31_check(int g);

    /// Linear loop equation: omega_{g,1}(z) + omega_{g,1}(sigma_i(z)) has a
    /// zero of order >= 1 at each ramification point, to the given order.
    bool linear_loop_check(int g, int check_order = 0) {
        MultiDifferential w = omega(g, 1);
        int order = check_order > 0 ? check_order : 6 * g + 4;
        for (const auto& p : points_.ram_x) {
            DeckSeries deck = deck_transformation(curve_, p, order + w.max_order_at(p) + 2);
            LocalSeries f = local_eval(w, p, order + w.max_order_at(p) + 2);
            LocalSeries pullback = compose_with_jacobian(f, deck.sigma);
            LocalSeries sum = f + pullback;
            auto v = sum.valuation();
            if (v && *v < 1) return false;
        }
        return true;
    }

    /// Local Laurent expansion of a one-variable tensor at z = p + t.
    static LocalSeries local_eval(const MultiDifferential& w, const Rational& p, int window) {
        LocalSeries acc = LocalSeries::zero(window);
        for (const auto& [key, c] : w.terms()) {
            const auto& f = key[0];
            if (f.point == p) {
                acc = acc + LocalSeries::monomial(-f.order, window, c);
            } else {
                acc = acc + LocalSeries::geometric_pow(p - f.point, f.order, window) * c;
            }
        }
        return acc;
    }

  private:
    struct PointData {
        LocalSeries sigma{0, {Rational(0)}};
        LocalSeries sigma_prime{0, {Rational(0)}};
        LocalSeries inv_den{0, {Rational(0)}};
        std::vector<LocalSeries> sigma_pows;  // sigma^k
        std::vector<LocalSeries> halfker;     // (1/2)(t^k - sigma^k) * inv_den
        int window = 0;
    };

    std::string memo_key(int g, int n) const {
        return fingerprint_ + "#" + std::to_string(g) + "," + std::to_string(n);
    }

    std::vector<Rational> ram_x_or_empty() const {
        try {
            return ramification_points(curve_, 'x');
        } catch (const IrrationalPoleError&) {
            return {};
        }
    }

    static LocalSeries compose_with_jacobian(const LocalSeries& f, const LocalSeries& sigma) {
        // f has a Laurent tail; compose termwise: split principal part
        LocalSeries sp = sigma.derivative();
        LocalSeries acc = LocalSeries::zero(sigma.hi());
        for (int k = f.lo(); k <= f.hi(); ++k) {
            Rational c = f.coeff(k);
            if (c.is_zero()) continue;
            LocalSeries pw = k >= 0 ? sigma.pow(k) : sigma.pow(k);  // pow handles negatives via inverse
            acc = acc + pw * c;
        }
        return acc * sp;
    }

    PointData& point_data(const Rational& p, int window) {
        auto it = pdata_.find(p.str());
        if (it != pdata_.end() && it->second.window >= window) return it->second;
        PointData d;
        d.window = window;
        DeckSeries deck = deck_transformation(curve_, p, window);
        d.sigma = deck.sigma;
        d.sigma_prime = d.sigma.derivative();
        LocalSeries dy = y_difference(p, d.sigma, window);
        LocalSeries xp = expand_xy(curve_, 'x', p, window).derivative();
        d.inv_den = (dy * xp).inverse();
        d.sigma_pows.push_back(LocalSeries::constant(Rational(1), window));
        d.sigma_pows.push_back(d.sigma);
        d.halfker.push_back(LocalSeries::zero(window));  // k = 0 unused
        auto [slot, ins] = pdata_.insert_or_assign(p.str(), std::move(d));
        (void)ins;
        return slot->second;
    }

    static LocalSeries expand_xy(const SpectralCurve& c, char which, const Rational& p, int window) {
        const CurveFunction& f = (which == 'x') ? c.x() : c.y();
        return specrec::expand_curve_function(f, p, window).plain;
    }

    /// y(p+t) - y(p+sigma(t)): rational series even when y = log z.
    LocalSeries y_difference(const Rational& p, const LocalSeries& sigma, int window) {
        const CurveFunction& y = curve_.y();
        if (y.is_log_of_z()) {
            // log((p+t)/(p+sigma)) = log(1 + (t - sigma)/(p + sigma))
            LocalSeries t = LocalSeries::monomial(1, window);
            LocalSeries num = t - sigma;
            LocalSeries den = LocalSeries::constant(p, window) + sigma;
            LocalSeries w = num * den.inverse();  // vanishes at 0
            LocalSeries acc = LocalSeries::zero(window);
            LocalSeries pw = w;
            for (int k = 1; k <= window; ++k) {
                acc = acc + pw * Rational((k % 2) ? 1 : -1, k);
                if (k < window) pw = pw * w;
                if (pw.window_zero()) break;
            }
            return acc;
        }
        // atom constants cancel in the difference, so the plain part suffices
        LocalSeries ys = specrec::expand_curve_function(y, p, window).plain;
        return ys - ys.compose(sigma);
    }

    const LocalSeries& sigma_pow(PointData& d, int k) {
        while (static_cast<int>(d.sigma_pows.size()) <= k)
            d.sigma_pows.push_back(d.sigma_pows.back() * d.sigma);
        return d.sigma_pows[static_cast<size_t>(k)];
    }

    const LocalSeries& half_kernel(PointData& d, int k) {
        while (static_cast<int>(d.halfker.size()) <= k) {
            int kk = static_cast<int>(d.halfker.size());
            LocalSeries tk = LocalSeries::monomial(kk, d.window);
            d.halfker.push_back((tk - sigma_pow(d, kk)) * d.inv_den * Rational(1, 2));
        }
        return d.halfker[static_cast<size_t>(k)];
    }

    /// Expansion of the basis factor xi_{k,bp} at q = p + t, optionally pulled
    /// back through sigma (with the Jacobian sigma').
    LocalSeries basis_series(PointData& d, const Rational& p, const Rational& bp, int k, bool at_sigma) {
        if (!at_sigma) {
            if (bp == p) return LocalSeries::monomial(-k, d.window - k);
            return LocalSeries::geometric_pow(p - bp, k, d.window);
        }
        if (bp == p) return sigma_pow(d, k).inverse() * d.sigma_prime;
        return LocalSeries::geometric_pow(p - bp, k, d.window).compose(d.sigma) * d.sigma_prime;
    }

    /// omega_{g,m}(z_S, q or sigma q): map from I-slot basis assignments to
    /// scalar t-series. nullopt marks an excluded factor (omega_{0,1}).
    using FactorMap = std::map<TensorKey, LocalSeries>;

    std::optional<FactorMap> factor(int g, int nI, PointData& d, const Rational& p, bool at_sigma,
                                    int b02_depth) {
        int m = nI + 1;
        if (g == 0 && m == 1) return std::nullopt;
        if (g == 0 && m == 2) {
            // B(z_j, q): sum_k (k+1) t^k xi_{k+2,p}(z_j)
            FactorMap out;
            for (int k = 0; k <= b02_depth; ++k) {
                LocalSeries s = at_sigma ? sigma_pow(d, k) * d.sigma_prime * Rational(k + 1)
                                         : LocalSeries::monomial(k, d.window, Rational(k + 1));
                TensorKey key{BasisFactor{p, k + 2}};
                auto it = out.find(key);
                if (it == out.end())
                    out.emplace(std::move(key), std::move(s));
                else
                    it->second = it->second + s;
            }
            return out;
        }
        MultiDifferential w = omega(g, m);
        FactorMap out;
        for (const auto& [key, c] : w.terms()) {
            TensorKey ikey(key.begin(), key.end() - 1);
            const BasisFactor& last = key.back();
            LocalSeries s = basis_series(d, p, last.point, last.order, at_sigma) * c;
            auto it = out.find(ikey);
            if (it == out.end())
                out.emplace(std::move(ikey), std::move(s));
            else
                it->second = it->second + s;
        }
        return out;
    }

    MultiDifferential compute_omega(int g, int n, int order);

    SpectralCurve curve_;
    TREngineOptions opts_;
    std::string fingerprint_;
    ResiduePointSet points_;
    std::map<std::string, PointData> pdata_;
    std::map<std::string, MultiDifferential> memo_;
    mutable std::shared_mutex memo_mutex_;
};

inline MultiDifferential TREngine::compute_omega(int g, int n, int order) {
    int nI = n - 1;
    MultiDifferential result(g, n);
    for (const auto& p : points_.ram_x) {
        PointData& d = point_data(p, order);
        std::map<TensorKey, LocalSeries> bracket;
        auto accumulate = [&](const TensorKey& ikey, const LocalSeries& s) {
            auto it = bracket.find(ikey);
            if (it == bracket.end())
                bracket.emplace(ikey, s);
            else
                it->second = it->second + s;
        };

        // omega_{g-1, n+1}(I, q, sigma q)
        if (g >= 1) {
            if (g - 1 == 0 && nI == 0) {
                LocalSeries t = LocalSeries::monomial(1, d.window);
                LocalSeries diff = t - d.sigma;
                accumulate({}, d.sigma_prime * diff.pow(2).inverse());
            } else if (2 * (g - 1) + (nI + 2) - 2 > 0) {
                MultiDifferential wa = omega(g - 1, nI + 2);
                for (const auto& [key, c] : wa.terms()) {
                    TensorKey ikey(key.begin(), key.end() - 2);
                    const BasisFactor& fq = key[key.size() - 2];
                    const BasisFactor& fs = key[key.size() - 1];
                    LocalSeries s = basis_series(d, p, fq.point, fq.order, false) *
                                    basis_series(d, p, fs.point, fs.order, true) * c;
                    accumulate(ikey, s);
                }
            }
        }

        // stable splittings omega_{g1,|S|+1}(S, q) omega_{g2,|S^c|+1}(S^c, sigma q)
        for (int g1 = 0; g1 <= g; ++g1) {
            int g2 = g - g1;
            for (unsigned mask = 0; mask < (1u << nI); ++mask) {
                std::vector<int> s1, s2;
                for (int i = 0; i < nI; ++i) ((mask >> i) & 1u ? s1 : s2).push_back(i);
                if ((g1 == 0 && s1.empty()) || (g2 == 0 && s2.empty())) continue;
                bool f1_is_b02 = (g1 == 0 && s1.size() == 1);
                bool f2_is_b02 = (g2 == 0 && s2.size() == 1);
                // depth hint for Bergman factors from the partner's deepest pole
                auto partner_depth = [&](int gg, size_t ss, bool is02) -> int {
                    if (is02) return 4;
                    if (gg == 0 && ss + 1 <= 2) return 4;
                    MultiDifferential w = omega(gg, static_cast<int>(ss) + 1);
                    int depth = 2;
                    for (const auto& [key, c] : w.terms()) {
                        (void)c;
                        depth = std::max(depth, key.back().order);
                    }
                    return depth + 3;
                };
                auto f1 = factor(g1, static_cast<int>(s1.size()), d, p, false,
                                 f1_is_b02 ? partner_depth(g2, s2.size(), f2_is_b02) : 0);
                if (!f1) continue;
                auto f2 = factor(g2, static_cast<int>(s2.size()), d, p, true,
                                 f2_is_b02 ? partner_depth(g1, s1.size(), f1_is_b02) : 0);
                if (!f2) continue;
                for (const auto& [k1, ser1] : *f1) {
                    for (const auto& [k2, ser2] : *f2) {
                        TensorKey ikey(static_cast<size_t>(nI));
                        for (size_t i = 0; i < s1.size(); ++i) ikey[static_cast<size_t>(s1[i])] = k1[i];
                        for (size_t i = 0; i < s2.size(); ++i) ikey[static_cast<size_t>(s2[i])] = k2[i];
                        accumulate(ikey, ser1 * ser2);
                    }
                }
            }
        }

        // kernel application: z-slot basis (p, k+1) gets
        // Res_t[(1/2)(t^k - sigma^k) inv_den * bracket]
        for (const auto& [ikey, ser] : bracket) {
            auto v = ser.valuation();
            if (!v) {
                if (ser.hi() < 1) throw TruncationError("compute_omega: bracket window collapsed");
                continue;
            }
            int kmax = std::max(0, 1 - *v);
            for (int k = 1; k <= kmax; ++k) {
                Rational r = LocalSeries::residue_of_product(half_kernel(d, k), ser);
                if (!r.is_zero()) {
                    TensorKey key = ikey;
                    key.push_back(BasisFactor{p, k + 1});
                    result.add_term(std::move(key), r);
                }
            }
        }
    }

    // Log-TR correction contributes to omega_{g,1} only
    if (n == 1 && g >= 1 && !points_.log_y.empty()) result = result + logtr_correction(g);
    return result;
}

inline Lemma31Report TREngine::lemma31_check(int g) {
    // choose the side that carries the logarithmic data
    bool use_dual = points_.log_y.empty() && !points_.log_x.empty() && points_.ram_y.empty() &&
                    points_.ram_y_complete;
    if (use_dual) {
        SpectralCurve swapped("dual of " + curve_.label(), curve_.y(), curve_.x());
        TREngine dual(swapped, opts_);
        Lemma31Report r = dual.lemma31_check(g);
        r.side = "dual";
        return r;
    }
    // lhs = sum_p Res_p x y omega_{g,1}; transcendental parts must cancel
    MultiDifferential w = omega(g, 1);
    if (!w.is_residue_free()) throw std::logic_error("lemma31_check: omega_{g,1} not residue-free");
    Rational lhs(0);
    std::vector<std::pair<Rational, Rational>> lhs_pts, rhs_pts;
    for (const auto& p : points_.ram_x) {
        int depth = w.max_order_at(p);
        if (depth == 0) continue;
        int window = depth + 2;
        LogLocal xl = specrec::expand_curve_function(curve_.x(), p, window);
        LogLocal f{LocalSeries::zero(window), {}};
        if (curve_.y().is_log_of_z()) {
            // y = log(p) + log(1 + t/p): the constant rides a symbol whose
            // residue pairing vanishes by residue-freeness of omega_{g,1}
            LocalSeries ys = LocalSeries::log_shift(p, window);
            f = xl.mul(ys);
            auto it = f.symbols.find(Rational(0));
            if (it == f.symbols.end())
                f.symbols.emplace(Rational(0), xl.plain);
            else
                it->second = it->second + xl.plain;
        } else {
            f = xl.mul(specrec::expand_curve_function(curve_.y(), p, window).plain);
        }
        LocalSeries wp = LocalSeries::zero(window, -depth);
        for (const auto& [key, c] : w.terms())
            if (key[0].point == p) wp = wp + LocalSeries::monomial(-key[0].order, window, c);
        auto [plain, syms] = f.residue_with(wp);
        for (const auto& [a, r] : syms)
            if (!r.is_zero())
                throw std::logic_error("lemma31_check: transcendental residue survives at p = " + p.str());
        lhs += plain;
        lhs_pts.emplace_back(p, plain);
    }
    // rhs = (1/2) sum_{a in logY} Res_a (x/x') sum_{g1+g2=g, gi>0} w_{g1,1} w_{g2,1}
    Rational rhs(0);
    RationalFunction xp = curve_.x().differential();
    for (const auto& atom : points_.log_y) {
        const Rational& a = atom.branch_point;
        int depth = 0;
        for (int g1 = 1; g1 < g; ++g1) depth = std::max(depth, omega(g1, 1).max_order_at(a) + omega(g - g1, 1).max_order_at(a));
        int window = depth + 4;
        LogLocal xl = specrec::expand_curve_function(curve_.x(), a, window);
        LocalSeries invxp = xp.expand_at(CurvePoint(a), window).series.inverse();
        LogLocal xoverxp = xl.mul(invxp);
        LocalSeries prod_sum = LocalSeries::zero(window, -std::max(depth, 1));
        for (int g1 = 1; g1 < g; ++g1) {
            LocalSeries w1 = local_eval(omega(g1, 1), a, window);
            LocalSeries w2 = local_eval(omega(g - g1, 1), a, window);
            prod_sum = prod_sum + w1 * w2;
        }
        auto [plain, syms] = xoverxp.residue_with(prod_sum);
        for (const auto& [aa, r] : syms)
            if (!r.is_zero())
                throw std::logic_error("lemma31_check: transcendental residue survives at a = " + a.str());
        rhs += plain * Rational(1, 2);
        rhs_pts.emplace_back(a, plain * Rational(1, 2));
    }
    return {lhs, rhs, lhs == rhs, "primal", std::move(lhs_pts), std::move(rhs_pts)};
}

}  // namespace specrec

#endif
