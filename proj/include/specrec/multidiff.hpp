#ifndef SPECREC_MULTIDIFF_HPP
#define SPECREC_MULTIDIFF_HPP

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace specrec {

/// One pole-basis factor xi_{order,point}(z) = dz/(z - point)^order.
struct BasisFactor {
    Rational point;
    int order = 1;
    friend bool operator<(const BasisFactor& a, const BasisFactor& b) {
        if (a.point != b.point) return a.point < b.point;
        return a.order < b.order;
    }
    friend bool operator==(const BasisFactor& a, const BasisFactor& b) {
        return a.point == b.point && a.order == b.order;
    }
};

using TensorKey = std::vector<BasisFactor>;

/// Symmetric n-variable differential stored as a finite combination of
/// pole-basis products; omega_{0,2} is special-cased as the Bergman kernel
/// and never materialized.
class MultiDifferential {
  public:
    MultiDifferential() = default;
    MultiDifferential(int genus, int nvars) : genus_(genus), nvars_(nvars) {}

    static MultiDifferential bergman() {
        MultiDifferential m(0, 2);
        m.bergman_ = true;
        return m;
    }

    int genus() const { return genus_; }
    int nvars() const { return nvars_; }
    bool is_bergman() const { return bergman_; }
    bool is_zero() const { return !bergman_ && terms_.empty(); }
    const std::map<TensorKey, Rational>& terms() const { return terms_; }

    void add_term(TensorKey key, const Rational& coeff) {
        if (bergman_) throw std::logic_error("MultiDifferential: Bergman kernel has no stored terms");
        if (static_cast<int>(key.size()) != nvars_)
            throw std::invalid_argument("MultiDifferential: key arity mismatch");
        if (coeff.is_zero()) return;
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(std::move(key), coeff);
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend MultiDifferential operator+(const MultiDifferential& a, const MultiDifferential& b) {
        if (a.bergman_ || b.bergman_) throw std::logic_error("MultiDifferential: cannot add Bergman kernels");
        if (a.nvars_ != b.nvars_ || a.genus_ != b.genus_)
            throw std::invalid_argument("MultiDifferential: shape mismatch");
        MultiDifferential r = a;
        for (const auto& [k, v] : b.terms_) r.add_term(k, v);
        return r;
    }

    friend MultiDifferential operator*(const MultiDifferential& a, const Rational& s) {
        MultiDifferential r = a;
        if (s.is_zero()) {
            r.terms_.clear();
            return r;
        }
        for (auto& [k, v] : r.terms_) v *= s;
        return r;
    }

    friend bool operator==(const MultiDifferential& a, const MultiDifferential& b) {
        return a.bergman_ == b.bergman_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    /// Density value at rational sample points (no dz factors).
    Rational evaluate(const std::vector<Rational>& pts) const {
        if (bergman_) {
            if (pts.size() != 2) throw std::invalid_argument("Bergman kernel takes two points");
            Rational d = pts[0] - pts[1];
            return Rational(1) / (d * d);
        }
        if (static_cast<int>(pts.size()) != nvars_)
            throw std::invalid_argument("MultiDifferential: wrong number of sample points");
        Rational tot(0);
        for (const auto& [key, c] : terms_) {
            Rational v = c;
            for (int i = 0; i < nvars_; ++i) v *= (pts[static_cast<size_t>(i)] - key[static_cast<size_t>(i)].point).pow(-key[static_cast<size_t>(i)].order);
            tot += v;
        }
        return tot;
    }

    /// True when invariant under every permutation of the variable slots.
    bool is_symmetric() const {
        if (bergman_ || nvars_ <= 1) return true;
        std::vector<int> perm(static_cast<size_t>(nvars_));
        for (int i = 0; i < nvars_; ++i) perm[static_cast<size_t>(i)] = i;
        while (std::next_permutation(perm.begin(), perm.end())) {
            for (const auto& [key, c] : terms_) {
                TensorKey pk(key.size());
                for (size_t i = 0; i < key.size(); ++i) pk[static_cast<size_t>(perm[i])] = key[i];
                auto it = terms_.find(pk);
                if (it == terms_.end() || it->second != c) return false;
            }
        }
        return true;
    }

    /// Sum of order-1 coefficients at each pole in each slot must vanish.
    bool is_residue_free() const {
        if (bergman_) return true;
        std::map<std::pair<int, Rational>, Rational> res;
        for (const auto& [key, c] : terms_)
            for (int i = 0; i < nvars_; ++i)
                if (key[static_cast<size_t>(i)].order == 1) res[{i, key[static_cast<size_t>(i)].point}] += c;
        for (const auto& [k, v] : res)
            if (!v.is_zero()) return false;
        return true;
    }

    /// All distinct basis points used in any slot.
    std::vector<Rational> basis_points() const {
        std::vector<Rational> pts;
        for (const auto& [key, c] : terms_) {
            (void)c;
            for (const auto& f : key)
                if (std::find(pts.begin(), pts.end(), f.point) == pts.end()) pts.push_back(f.point);
        }
        return pts;
    }

    int max_order_at(const Rational& p) const {
        int m = 0;
        for (const auto& [key, c] : terms_) {
            (void)c;
            for (const auto& f : key)
                if (f.point == p) m = std::max(m, f.order);
        }
        return m;
    }

  private:
    int genus_ = 0;
    int nvars_ = 0;
    bool bergman_ = false;
    std::map<TensorKey, Rational> terms_;
};

}  // namespace specrec

#endif
