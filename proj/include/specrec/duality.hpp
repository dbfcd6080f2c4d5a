#ifndef SPECREC_DUALITY_HPP
#define SPECREC_DUALITY_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "curve.hpp"
#include "multidiff.hpp"
#include "series_uh.hpp"
#include "special_series.hpp"
#include "tr_engine.hpp"

namespace specrec {

/// The curve has no closed dual data (ramified y, or an unsupported y shape).
struct UnsupportedDualError : std::runtime_error {
    explicit UnsupportedDualError(const std::string& m) : std::runtime_error(m) {}
};

enum class DualRegime { YPlainXPlain, YPlainXLog, YLogXPlain, YLogXLog };
enum class DenominatorKind { UHbar, UHbarS };

struct DualExponent {
    SeriesUH series;
    DualRegime regime;
    DenominatorKind denominator;
    int g_max;
};

struct DualityCoefficients {
    int g;
    std::map<int, RationalFunction> per_m;  // m -> c_{g,m}(z), m in 2..3g
};

struct DualityFreeEnergy {
    FreeEnergyValue value;
    std::vector<std::pair<CurvePoint, Rational>> per_point;
};

struct InvariantizedFreeEnergy {
    Rational value;
    std::string classification_note;
};

namespace detail {

/// Rewrites the curve so that y is literally the coordinate: supports y = z
/// already, y affine (y = alpha z + beta, substituted away), and y = log z.
inline SpectralCurve dual_normalize(const SpectralCurve& curve) {
    const CurveFunction& y = curve.y();
    if (y.is_log_of_z()) return curve;
    if (!y.log_atoms().empty())
        throw UnsupportedDualError("duality: y with log atoms has no supported normalization");
    const RationalFunction& yr = y.rational_part();
    if (yr == RationalFunction::z()) return curve;
    if (!yr.is_polynomial() || yr.num().degree() != 1)
        throw UnsupportedDualError("duality: y must be affine in z or log z");
    Rational alpha = yr.num().coeff(1);
    Rational beta = yr.num().coeff(0);
    // w = alpha z + beta, z = (w - beta)/alpha
    Polynomial lin{-beta / alpha, Rational(1) / alpha};
    auto substitute = [&](const Polynomial& p) {
        Polynomial out;
        for (int k = p.degree(); k >= 0; --k) out = out * lin + Polynomial(p.coeff(k));
        return out;
    };
    const CurveFunction& x = curve.x();
    CurveFunction nx;
    if (x.is_log_of_z()) {
        // log z = log(w - beta) - log alpha
        nx = CurveFunction(RationalFunction(), {{beta, Rational(1)}});
    } else {
        RationalFunction nr(substitute(x.rational_part().num()), substitute(x.rational_part().den()));
        std::vector<LogAtom> atoms;
        for (const auto& a : x.log_atoms())
            atoms.push_back({alpha * a.branch_point + beta, a.coefficient});
        nx = CurveFunction(std::move(nr), std::move(atoms));
    }
    return SpectralCurve(curve.label(), std::move(nx),
                         CurveFunction(RationalFunction::z()));
}

}  // namespace detail

/// Implements the x-y duality residue formulas for curves with a trivial dual
/// side (unramified y): the closed dual omega data collapses the duality
/// transform to explicit (u, hbar) series built from x alone.
class DualityEngine {
  public:
    explicit DualityEngine(const SpectralCurve& curve)
        : original_(curve), curve_(detail::dual_normalize(curve)) {
        // the normalized y is z or log z, hence unramified; reject odd inputs early
        if (!curve_.y().is_log_of_z() && curve_.y().rational_part() != RationalFunction::z())
            throw UnsupportedDualError("duality: normalization failed");
        points_ = classify_residue_points(curve_);
        y_log_ = curve_.y().is_log_of_z();
    }

    const SpectralCurve& normalized_curve() const { return curve_; }
    const ResiduePointSet& points() const { return points_; }

    /// d^{m-1}y/dx^{m-1} as a rational function: ((1/x')(d/dz))^{m-1} y.
    RationalFunction dy_dx_iterate(int m) const {
        if (m < 2) throw std::invalid_argument("dy_dx_iterate: m >= 2");
        RationalFunction xp = curve_.x().differential();
        RationalFunction yp = curve_.y().differential();  // 1 or 1/z
        RationalFunction cur = yp / xp;  // first application on y
        for (int j = 3; j <= m; ++j) cur = cur.derivative() / xp;
        return cur;
    }

    /// The exponent of the duality formula, assembled from x alone:
    /// (S(u hbar D)-1) x u + u S(u hbar D) sum_i (1/S(alpha_i hbar D)-1)
    ///   log(z-a_i)/alpha_i,  D = d/dz (y=z) or z d/dz (y=log z).
    DualExponent build_exponent(int g_max) const {
        if (g_max < 1) throw std::invalid_argument("build_exponent: g_max >= 1");
        int max_u = 3 * g_max + 1;
        int max_h = 2 * g_max;
        SeriesUH expo(max_u, max_h);
        LocalSeries S = s_function_series(SKind::S, max_h);
        LocalSeries invS = s_function_series(SKind::InverseS, max_h);

        auto D = [&](const RationalFunction& f) {
            RationalFunction d = f.derivative();
            return y_log_ ? RationalFunction(Polynomial{Rational(0), Rational(1)}) * d : d;
        };

        // derivatives of x: Dx[j] = D^j x, j >= 1 (rational for every j)
        std::vector<RationalFunction> Dx(static_cast<size_t>(2 * max_h) + 2);
        {
            RationalFunction x1 = curve_.x().differential();
            if (y_log_) x1 = RationalFunction(Polynomial{Rational(0), Rational(1)}) * x1;
            Dx[1] = x1;
            for (int j = 2; j <= 2 * max_h + 1; ++j) Dx[static_cast<size_t>(j)] = D(Dx[static_cast<size_t>(j - 1)]);
        }
        for (int k = 1; 2 * k <= max_h; ++k)
            expo.add(2 * k + 1, 2 * k, Dx[static_cast<size_t>(2 * k)] * S.coeff(2 * k));

        // log-vital atoms of x (for y = z every finite atom; the parser
        // rejects an atom at 0 when y = log z)
        for (const auto& atom : vital_x_atoms()) {
            Rational alpha = Rational(1) / atom.coefficient;
            // L[j] = D^j log(z - a)
            std::vector<RationalFunction> L(static_cast<size_t>(2 * max_h) + 2);
            RationalFunction dlog(Polynomial{Rational(1)}, Polynomial{-atom.branch_point, Rational(1)});
            L[1] = y_log_ ? RationalFunction(Polynomial{Rational(0), Rational(1)}) * dlog : dlog;
            for (int j = 2; j <= 2 * max_h + 1; ++j) L[static_cast<size_t>(j)] = D(L[static_cast<size_t>(j - 1)]);
            for (int k = 1; 2 * k <= max_h; ++k) {
                for (int j = 0; 2 * j + 2 * k <= max_h && 2 * j + 1 <= max_u; ++j) {
                    Rational coeff = S.coeff(2 * j) * invS.coeff(2 * k) * alpha.pow(2 * k - 1);
                    expo.add(2 * j + 1, 2 * j + 2 * k, L[static_cast<size_t>(2 * j + 2 * k)] * coeff);
                }
            }
        }

        DualRegime regime;
        bool has_logs = !vital_x_atoms().empty();
        if (y_log_)
            regime = has_logs ? DualRegime::YLogXLog : DualRegime::YLogXPlain;
        else
            regime = has_logs ? DualRegime::YPlainXLog : DualRegime::YPlainXPlain;
        return {expo.exp(), regime,
                y_log_ ? DenominatorKind::UHbarS : DenominatorKind::UHbar, g_max};
    }

    /// c_{g,m} = [hbar^{2g-1} u^m] exp/denominator, via the index shift
    /// [hbar^{2g} u^{m+1}] of exp (times 1/S(u hbar) when y = log z).
    DualityCoefficients duality_coefficients(const DualExponent& e, int g) const {
        if (g > e.g_max) throw std::out_of_range("duality_coefficients: g exceeds exponent bounds");
        SeriesUH series = e.series;
        if (e.denominator == DenominatorKind::UHbarS) {
            LocalSeries invS = s_function_series(SKind::InverseS, std::min(series.max_u(), series.max_hbar()));
            series = series * SeriesUH::from_uhbar_series(invS, series.max_u(), series.max_hbar());
        }
        DualityCoefficients out;
        out.g = g;
        for (int m = 2; m <= 3 * g; ++m) {
            RationalFunction c = series.extract(m + 1, 2 * g);
            if (!c.is_zero()) out.per_m.emplace(m, std::move(c));
        }
        return out;
    }

    /// Integrand density of the free-energy residue formula at genus g.
    RationalFunction integrand(int g) const {
        DualExponent e = exponent_for(g);
        DualityCoefficients c = duality_coefficients(e, g);
        RationalFunction acc;
        for (const auto& [m, cm] : c.per_m) acc = acc + dy_dx_iterate(m) * cm;
        return acc * curve_.y().differential();
    }

    /// Residue points of the free-energy formula: log atoms of x, the b-point
    /// sets of both sides, 0 and infinity for y = log z, and infinity always
    /// (regular points contribute zero).
    std::vector<CurvePoint> residue_points() const {
        std::vector<CurvePoint> pts;
        auto push = [&](const CurvePoint& p) {
            if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
        };
        for (const auto& a : points_.log_x) push(CurvePoint(a.branch_point));
        for (const auto& p : points_.poles_primal) push(p);
        for (const auto& p : points_.poles_dual) push(p);
        if (y_log_) {
            push(CurvePoint(Rational(0)));
            push(CurvePoint::infinity());
        }
        push(CurvePoint::infinity());
        return pts;
    }

    DualityFreeEnergy free_energy(int g) const {
        if (g < 2) throw std::invalid_argument("free_energy_duality: g >= 2");
        RationalFunction f = integrand(g);
        DualityFreeEnergy out;
        Rational tot(0);
        for (const auto& pt : residue_points()) {
            Rational r = f.residue_at(pt);
            out.per_point.emplace_back(pt, r);
            tot += r;
        }
        out.value = {g, tot / Rational(2 - 2 * g), FreeEnergyValue::Path::Duality};
        return out;
    }

    /// omega_{g,1} through the duality transform:
    /// [hbar^{2g-1}] sum_m (-d(1/dx))^m [u^m] (-dy) exp/denominator,
    /// converted to the pole basis at Ram(x) and the log-vital points of y.
    /// Requires y to be literally z or log z (no reparametrization, so the
    /// result is comparable with tr_omega).
    MultiDifferential omega_g1(int g) const {
        if (g < 1) throw std::invalid_argument("omega_g1_duality: g >= 1");
        if (!(original_.y().is_log_of_z() || original_.y().rational_part() == RationalFunction::z()))
            throw UnsupportedDualError("omega_g1_duality: y must be z or log z");
        DualExponent e = exponent_for(g);
        SeriesUH series = e.series;
        if (e.denominator == DenominatorKind::UHbarS) {
            LocalSeries invS = s_function_series(SKind::InverseS, std::min(series.max_u(), series.max_hbar()));
            series = series * SeriesUH::from_uhbar_series(invS, series.max_u(), series.max_hbar());
        }
        RationalFunction xp = curve_.x().differential();
        RationalFunction yp = curve_.y().differential();
        RationalFunction density;
        for (int m = 0; m <= 3 * g; ++m) {
            RationalFunction em = series.extract(m + 1, 2 * g);
            if (em.is_zero()) continue;
            RationalFunction term = -yp * em;
            for (int j = 0; j < m; ++j) term = -(term / xp).derivative();
            density = density + term;
        }
        // convert to the pole basis; poles sit at Ram(x) and log-vital y-points
        MultiDifferential w(g, 1);
        std::vector<Rational> candidates = ramification_points(curve_, 'x');
        ResiduePointSet rp = classify_residue_points(curve_);
        for (const auto& a : rp.log_y) candidates.push_back(a.branch_point);
        RationalFunction reconstructed;
        for (const auto& p : candidates) {
            int depth = density.pole_order_at(CurvePoint(p));
            if (depth <= 0) continue;
            LaurentExpansion le = density.expand_at(CurvePoint(p), -1);
            for (int k = 1; k <= depth; ++k) {
                Rational c = le.series.coeff(-k);
                if (c.is_zero()) continue;
                w.add_term({BasisFactor{p, k}}, c);
                reconstructed = reconstructed + RationalFunction(Polynomial{c}, Polynomial{-p, Rational(1)}.pow(k));
            }
        }
        if (reconstructed != density)
            throw std::logic_error("omega_g1_duality: density has poles outside Ram(x) and the log-vital set");
        return w;
    }

    /// The swap-invariant free energy: F_g minus the residue contributions at
    /// the primal points {a_i, b_i}. Points carrying both a primal and a dual
    /// classification are reported under both readings.
    InvariantizedFreeEnergy invariantized_free_energy(int g) const {
        DualityFreeEnergy fe = free_energy(g);
        std::vector<CurvePoint> primal, dual;
        for (const auto& a : points_.log_y) primal.emplace_back(a.branch_point);
        for (const auto& p : points_.poles_primal) primal.push_back(p);
        for (const auto& a : points_.log_x) dual.emplace_back(a.branch_point);
        for (const auto& p : points_.poles_dual) dual.push_back(p);
        auto in = [](const std::vector<CurvePoint>& v, const CurvePoint& p) {
            return std::find(v.begin(), v.end(), p) != v.end();
        };
        Rational subtract_all_primal(0), subtract_pure_primal(0);
        std::string note;
        for (const auto& [pt, r] : fe.per_point) {
            if (!in(primal, pt)) continue;
            subtract_all_primal += r;
            if (in(dual, pt)) {
                note += (note.empty() ? "" : "; ") + std::string("z = ") + pt.str() +
                        " carries both classifications (residue " + r.str() + ")";
            } else {
                subtract_pure_primal += r;
            }
        }
        Rational base = fe.value.value;
        Rational v_primal = base - subtract_all_primal / Rational(2 - 2 * g);
        Rational v_pure = base - subtract_pure_primal / Rational(2 - 2 * g);
        if (v_primal != v_pure)
            note += (note.empty() ? "" : "; ") + std::string("dual-kept reading gives ") + v_pure.str();
        else if (note.empty())
            note = "no ambiguous points";
        return {v_primal, note};
    }

  private:
    std::vector<LogAtom> vital_x_atoms() const {
        // log atoms of x sitting on a pole of dy carry no dual correction
        // (classification filters them), e.g. after a framing rewrite
        return points_.log_x;
    }

    const DualExponent& exponent_for(int g) const {
        if (!cached_ || cached_->g_max < g) cached_ = build_exponent(g);
        return *cached_;
    }

    SpectralCurve original_;
    SpectralCurve curve_;
    ResiduePointSet points_;
    bool y_log_ = false;
    mutable std::optional<DualExponent> cached_;
};

}  // namespace specrec

#endif
