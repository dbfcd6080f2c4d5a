#ifndef SPECREC_CURVE_HPP
#define SPECREC_CURVE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "partial_fractions.hpp"
#include "ratfunc.hpp"

namespace specrec {

struct CurveError : std::runtime_error {
    explicit CurveError(const std::string& m) : std::runtime_error(m) {}
};

/// A logarithmic atom coefficient*log(z - branch_point). The differential of
/// the atom is coefficient/(z - branch_point), so dx has residue coefficient
/// there (the paper's 1/alpha).
struct LogAtom {
    Rational branch_point;
    Rational coefficient;
};

enum class FunctionKind { Plain, LogOfZ };

/// x or y of a spectral curve: rational part plus log atoms, or exactly log z.
class CurveFunction {
  public:
    CurveFunction() = default;
    explicit CurveFunction(RationalFunction rat, std::vector<LogAtom> atoms = {})
        : kind_(FunctionKind::Plain), rat_(std::move(rat)), atoms_(std::move(atoms)) {
        for (const auto& a : atoms_)
            if (a.coefficient.is_zero()) throw CurveError("log atom with zero coefficient");
        merge_atoms();
    }
    static CurveFunction log_of_z() {
        CurveFunction f;
        f.kind_ = FunctionKind::LogOfZ;
        return f;
    }

    FunctionKind kind() const { return kind_; }
    bool is_log_of_z() const { return kind_ == FunctionKind::LogOfZ; }
    const RationalFunction& rational_part() const { return rat_; }
    const std::vector<LogAtom>& log_atoms() const { return atoms_; }
    bool is_plain_rational() const { return kind_ == FunctionKind::Plain && atoms_.empty(); }
    bool is_constant() const { return kind_ == FunctionKind::Plain && atoms_.empty() && rat_.is_constant(); }

    /// Exact derivative d/dz as a rational function (1-form density).
    RationalFunction differential() const {
        if (kind_ == FunctionKind::LogOfZ)
            return RationalFunction(Polynomial{Rational(1)}, Polynomial{Rational(0), Rational(1)});
        RationalFunction d = rat_.derivative();
        for (const auto& a : atoms_)
            d = d + RationalFunction(Polynomial{a.coefficient}, Polynomial{-a.branch_point, Rational(1)});
        return d;
    }

    /// Sum of atom coefficients; the function is meromorphic at infinity iff
    /// this vanishes (the -log t contributions cancel).
    Rational atom_coefficient_sum() const {
        Rational s(0);
        for (const auto& a : atoms_) s += a.coefficient;
        return s;
    }

    CurveFunction plus_constant_times(const CurveFunction& other, const Rational& c) const {
        if (kind_ != FunctionKind::Plain) throw CurveError("cannot combine with log z on the left");
        CurveFunction r = *this;
        if (other.kind_ == FunctionKind::LogOfZ) {
            r.atoms_.push_back({Rational(0), c});
        } else {
            r.rat_ = r.rat_ + other.rat_ * c;
            for (const auto& a : other.atoms_) r.atoms_.push_back({a.branch_point, a.coefficient * c});
        }
        r.merge_atoms();
        return r;
    }

    bool has_atom_at(const Rational& p) const {
        for (const auto& a : atoms_)
            if (a.branch_point == p) return true;
        return kind_ == FunctionKind::LogOfZ && p.is_zero();
    }

  private:
    void merge_atoms() {
        std::map<Rational, Rational> merged;
        for (const auto& a : atoms_) merged[a.branch_point] += a.coefficient;
        atoms_.clear();
        for (const auto& [p, c] : merged)
            if (!c.is_zero()) atoms_.push_back({p, c});
    }

    FunctionKind kind_ = FunctionKind::Plain;
    RationalFunction rat_;
    std::vector<LogAtom> atoms_;
};

/// Local expansion of a function with log atoms: a plain Laurent part plus,
/// for each atom regular at the point, a formal constant log(point - a) whose
/// coefficient is tracked as a series. Residues are well-defined only when the
/// symbol parts contribute none, which callers must check.
struct LogLocal {
    LocalSeries plain;
    std::map<Rational, LocalSeries> symbols;  // keyed by atom branch point

    LogLocal mul(const LocalSeries& s) const {
        LogLocal r{plain * s, {}};
        for (const auto& [a, ls] : symbols) r.symbols.emplace(a, ls * s);
        return r;
    }
    /// Residue pairing against a Laurent series: returns the plain residue and
    /// the residues multiplying each transcendental constant.
    std::pair<Rational, std::map<Rational, Rational>> residue_with(const LocalSeries& s) const {
        std::pair<Rational, std::map<Rational, Rational>> out;
        out.first = LocalSeries::residue_of_product(plain, s);
        for (const auto& [a, ls] : symbols) {
            Rational r = LocalSeries::residue_of_product(ls, s);
            if (!r.is_zero()) out.second.emplace(a, r);
        }
        return out;
    }
};

/// Expansion of f(point + t); additive transcendental constants of the atoms
/// are kept as symbols. The point must not be a branch point of any atom.
inline LogLocal expand_curve_function(const CurveFunction& f, const Rational& point, int window) {
    LogLocal out{LocalSeries::zero(window), {}};
    if (f.is_log_of_z()) {
        if (point.is_zero()) throw CurveError("expansion of log z at its branch point");
        out.plain = LocalSeries::log_shift(point, window);
        out.symbols.emplace(Rational(0), LocalSeries::constant(Rational(1), window));
        return out;
    }
    out.plain = f.rational_part().expand_at(CurvePoint(point), window).series;
    for (const auto& a : f.log_atoms()) {
        Rational c = point - a.branch_point;
        if (c.is_zero()) throw CurveError("expansion of a log atom at its branch point");
        out.plain = out.plain + LocalSeries::log_shift(c, window) * a.coefficient;
        out.symbols[a.branch_point] = LocalSeries::constant(a.coefficient, window);
    }
    return out;
}

/// Deck transformation series sigma_hat at a simple ramification point:
/// x(p + sigma_hat(t)) = x(p + t), sigma_hat(t) = -t + O(t^2).
struct DeckSeries {
    Rational center;
    LocalSeries sigma;  // window [0, order]
};

struct RamificationPoint {
    Rational location;
    DeckSeries deck;
};

/// The classified residue points of a spectral curve.
struct ResiduePointSet {
    std::vector<Rational> ram_x;          // p_i, zeros of dx (rational ones)
    std::vector<Rational> ram_y;          // p_i^vee
    std::vector<LogAtom> log_y;           // a_i, log-vital atoms of y
    std::vector<LogAtom> log_x;           // a_i^vee, log-vital atoms of x
    std::vector<CurvePoint> poles_primal; // b_i: poles of y with Res y dx != 0
    std::vector<CurvePoint> poles_dual;   // b_i^vee: non-log poles of x with Res x dy != 0
    bool ram_x_complete = true;           // false when dx has irrational zeros
    bool ram_y_complete = true;
};

class SpectralCurve {
  public:
    SpectralCurve(std::string label, CurveFunction x, CurveFunction y)
        : label_(std::move(label)), x_(std::move(x)), y_(std::move(y)) {
        if (x_.is_constant()) throw CurveError("x must not be constant");
        if (y_.is_constant()) throw CurveError("y must not be constant");
    }

    const std::string& label() const { return label_; }
    const CurveFunction& x() const { return x_; }
    const CurveFunction& y() const { return y_; }

    /// Canonical serialization hash; memoization key for the engines.
    std::string fingerprint() const {
        auto fn = [](const CurveFunction& f) {
            if (f.is_log_of_z()) return std::string("log_z");
            std::string s = f.rational_part().str();
            for (const auto& a : f.log_atoms())
                s += "+" + a.coefficient.str() + "*log(z-" + a.branch_point.str() + ")";
            return s;
        };
        std::string canon = "x=" + fn(x_) + ";y=" + fn(y_);
        return std::to_string(std::hash<std::string>{}(canon)) + ":" + std::to_string(canon.size());
    }

  private:
    std::string label_;
    CurveFunction x_, y_;
};

namespace detail {

/// Zeros of the 1-form f'(z)dz on P^1 with simplicity/regularity checks.
/// `other` must be regular at every ramification point.
struct RamScan {
    std::vector<Rational> points;
    bool complete;  // false if irrational zeros were skipped
};

inline bool function_regular_at(const CurveFunction& f, const Rational& p) {
    if (f.is_log_of_z()) return !p.is_zero();
    if (f.rational_part().pole_order_at(CurvePoint(p)) > 0) return false;
    return !f.has_atom_at(p);
}

inline RamScan scan_ramification(const CurveFunction& f, const CurveFunction& other) {
    RationalFunction d = f.differential();
    if (d.is_zero()) throw CurveError("constant covering has no ramification data");
    RamScan out;
    out.complete = true;
    auto roots = rational_roots(d.num());
    for (const auto& [r, mult] : roots.roots) {
        if (mult != 1)
            throw CurveError("non-simple ramification at z = " + r.str() + " (order " +
                             std::to_string(mult + 1) + " branching)");
        if (!function_regular_at(other, r))
            throw CurveError("covering companion is singular at the ramification point z = " + r.str());
        out.points.push_back(r);
    }
    if (roots.cofactor.degree() > 0) out.complete = false;
    // a vanishing differential at infinity is outside the supported regime
    LaurentExpansion at_inf = d.expand_at(CurvePoint::infinity(), 2);
    // density of the 1-form in t = 1/z is -f(1/t)/t^2
    int val = at_inf.min_degree() - 2;
    if (val > 0) throw CurveError("ramification at infinity is not supported");
    return out;
}

}  // namespace detail

/// Ramification points of x (of = 'x') or y (of = 'y'): simple zeros of the
/// differential at rational points, with the companion function regular there.
/// The deck series is computed separately (deck_transformation).
inline std::vector<Rational> ramification_points(const SpectralCurve& curve, char of, bool* complete = nullptr) {
    const CurveFunction& f = (of == 'x') ? curve.x() : curve.y();
    const CurveFunction& o = (of == 'x') ? curve.y() : curve.x();
    auto scan = detail::scan_ramification(f, o);
    if (complete) *complete = scan.complete;
    return scan.points;
}

/// sigma_hat with x(p + sigma_hat(t)) = x(p + t) to the requested order,
/// solved by order-by-order refinement of the series equation.
inline DeckSeries deck_transformation(const SpectralCurve& curve, const Rational& p, int order) {
    if (order < 2) throw std::invalid_argument("deck_transformation: order must be >= 2");
    int m = order + 3;
    LocalSeries X = expand_curve_function(curve.x(), p, m).plain;
    X = X - LocalSeries::constant(X.coeff(0), m);
    if (!X.coeff(1).is_zero() || X.coeff(2).is_zero())
        throw CurveError("deck_transformation: z = " + p.str() + " is not a simple ramification point");
    Rational x2 = X.coeff(2);
    LocalSeries sigma = LocalSeries::zero(m);
    sigma = sigma + LocalSeries::monomial(1, m, Rational(-1));
    for (int k = 2; k <= order; ++k) {
        LocalSeries err = X.compose(sigma) - X;
        Rational e = err.coeff(k + 1);
        if (!e.is_zero()) {
            // a t^k correction shifts X(sigma) by X'(sigma)*t^k ~ -2*x2*t^{k+1}
            sigma = sigma + LocalSeries::monomial(k, m, e / (Rational(2) * x2));
        }
    }
    LocalSeries err = X.compose(sigma) - X;
    for (int k = 0; k <= order + 1; ++k)
        if (!err.coeff(k).is_zero())
            throw CurveError("deck_transformation: refinement failed at order " + std::to_string(k));
    std::vector<Rational> cc;
    for (int k = 0; k <= order; ++k) cc.push_back(sigma.coeff(k));
    return {p, LocalSeries(0, std::move(cc))};
}

enum class PrimitiveSide { Primal, Dual };

/// A primitive of y dx (primal) or x dy (dual), as rational part + log atoms,
/// with zero integration constant. The integrand must be a rational function:
/// primal needs plain rational y, dual needs plain rational x.
inline CurveFunction primitive_phi(const SpectralCurve& curve, PrimitiveSide side) {
    RationalFunction integrand;
    if (side == PrimitiveSide::Primal) {
        if (!curve.y().is_plain_rational())
            throw CurveError("primitive_phi: primal primitive needs a plain rational y");
        integrand = curve.y().rational_part() * curve.x().differential();
    } else {
        if (!curve.x().is_plain_rational())
            throw CurveError("primitive_phi: dual primitive needs a plain rational x");
        integrand = curve.x().rational_part() * curve.y().differential();
    }
    PartialFractions pf = partial_fractions(integrand);
    // integrate the polynomial part
    std::vector<Rational> anti(static_cast<size_t>(pf.polynomial_part.degree()) + 2);
    for (int k = 0; k <= pf.polynomial_part.degree(); ++k)
        anti[static_cast<size_t>(k) + 1] = pf.polynomial_part.coeff(k) / Rational(k + 1);
    RationalFunction rat{Polynomial(std::move(anti))};
    std::vector<LogAtom> atoms;
    for (const auto& t : pf.terms) {
        if (t.order == 1) {
            atoms.push_back({t.pole, t.coefficient});
        } else {
            rat = rat + RationalFunction(Polynomial{-t.coefficient / Rational(t.order - 1)},
                                         Polynomial{-t.pole, Rational(1)}.pow(t.order - 1));
        }
    }
    return CurveFunction(std::move(rat), std::move(atoms));
}

namespace detail {

/// Finite poles of a plain rational function, requiring rationality.
inline std::vector<Rational> finite_poles(const RationalFunction& f, const char* what) {
    std::vector<Rational> out;
    if (f.is_zero()) return out;
    auto roots = rational_roots(f.den());
    if (roots.cofactor.degree() > 0)
        throw IrrationalPoleError(roots.cofactor);
    (void)what;
    for (const auto& [r, m] : roots.roots) {
        (void)m;
        out.push_back(r);
    }
    return out;
}

/// Res x dy at a candidate point when x may carry log atoms. The symbol parts
/// must not contribute; otherwise the residue is transcendental and we refuse.
inline Rational residue_x_dy(const SpectralCurve& curve, const CurvePoint& pt) {
    RationalFunction yp = curve.y().differential();
    const CurveFunction& x = curve.x();
    if (!pt.infinite) {
        for (const auto& a : x.log_atoms())
            if (a.branch_point == pt.value)
                throw CurveError("residue of x dy at a log point of x is not rational");
        int pole = std::max(yp.pole_order_at(pt), 0) +
                   std::max(x.rational_part().pole_order_at(pt), 0);
        int window = pole + 2;
        LogLocal xl = expand_curve_function(x, pt.value, window);
        LocalSeries yps = yp.expand_at(pt, window).series;
        auto [plain, syms] = xl.residue_with(yps);
        if (!syms.empty())
            throw CurveError("transcendental residue of x dy at z = " + pt.str());
        return plain;
    }
    // at infinity: log t parts cancel only if the atom coefficients sum to zero
    if (!x.log_atoms().empty() && !x.atom_coefficient_sum().is_zero())
        throw CurveError("residue of x dy at infinity with a logarithmic x");
    int window = std::max(4, x.rational_part().num().degree() + yp.num().degree() + 4);
    LocalSeries xs = x.rational_part().expand_at(CurvePoint::infinity(), window).series;
    for (const auto& a : x.log_atoms()) {
        // log(1/t - a) = -log t + log(1 - a t); the log t terms cancel in total
        LocalSeries l = LocalSeries::zero(window);
        Rational pw(1);
        for (int k = 1; k <= window; ++k) {
            pw *= a.branch_point;
            l = l + LocalSeries::monomial(k, window, -pw / Rational(k));
        }
        xs = xs + l * a.coefficient;
    }
    LocalSeries yps = yp.expand_at(CurvePoint::infinity(), window).series;
    // Res_inf f dz = -[t^1] f(1/t)
    return -(xs * yps).coeff(1);
}

}  // namespace detail

/// Full classification of the residue points {p_i, p_i^vee, a_i, a_i^vee,
/// b_i, b_i^vee}. Log-vitality: an atom of y (resp. x) is vital when dx
/// (resp. dy) is regular there.
inline ResiduePointSet classify_residue_points(const SpectralCurve& curve) {
    ResiduePointSet out;
    try {
        out.ram_x = ramification_points(curve, 'x', &out.ram_x_complete);
    } catch (const IrrationalPoleError&) {
        out.ram_x_complete = false;
    }
    try {
        out.ram_y = ramification_points(curve, 'y', &out.ram_y_complete);
    } catch (const IrrationalPoleError&) {
        out.ram_y_complete = false;
    }

    RationalFunction dx = curve.x().differential();
    RationalFunction dy = curve.y().differential();

    auto vital_atoms = [](const CurveFunction& f, const RationalFunction& d_other) {
        std::vector<LogAtom> vital;
        if (f.is_log_of_z()) {
            if (d_other.pole_order_at(CurvePoint(Rational(0))) <= 0)
                vital.push_back({Rational(0), Rational(1)});
            return vital;
        }
        for (const auto& a : f.log_atoms())
            if (d_other.pole_order_at(CurvePoint(a.branch_point)) <= 0) vital.push_back(a);
        return vital;
    };
    out.log_y = vital_atoms(curve.y(), dx);
    out.log_x = vital_atoms(curve.x(), dy);

    // b_i: non-logarithmic singular points of y with Res y dx != 0
    if (curve.y().kind() == FunctionKind::Plain) {
        RationalFunction ydx = curve.y().rational_part() * dx;  // y log atoms live elsewhere: none for plain y
        std::vector<CurvePoint> candidates;
        for (const auto& p : detail::finite_poles(curve.y().rational_part(), "y"))
            candidates.emplace_back(p);
        if (curve.y().rational_part().pole_order_at(CurvePoint::infinity()) > 0)
            candidates.push_back(CurvePoint::infinity());
        for (const auto& pt : candidates)
            if (!ydx.residue_at(pt).is_zero()) out.poles_primal.push_back(pt);
    }

    // b_i^vee: non-logarithmic singular points of x with Res x dy != 0
    {
        std::vector<CurvePoint> candidates;
        if (curve.x().kind() == FunctionKind::Plain) {
            for (const auto& p : detail::finite_poles(curve.x().rational_part(), "x")) {
                if (curve.x().has_atom_at(p))
                    throw CurveError("pole of x coinciding with a log atom is not supported");
                candidates.emplace_back(p);
            }
            bool merom_at_inf = curve.x().atom_coefficient_sum().is_zero();
            if (merom_at_inf && curve.x().rational_part().pole_order_at(CurvePoint::infinity()) > 0)
                candidates.push_back(CurvePoint::infinity());
        }
        for (const auto& pt : candidates)
            if (!detail::residue_x_dy(curve, pt).is_zero()) out.poles_dual.push_back(pt);
    }
    return out;
}

}  // namespace specrec

#endif
