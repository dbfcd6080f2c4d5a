#ifndef SPECREC_REPORT_HPP
#define SPECREC_REPORT_HPP

#include <chrono>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "catalog.hpp"
#include "duality.hpp"
#include "tr_engine.hpp"

namespace specrec {

struct FreeEnergyRow {
    int g = 0;
    std::optional<Rational> tr;       // nullopt: PATH_UNAVAILABLE (or not requested)
    std::optional<Rational> duality;  // nullopt: UNSUPPORTED_DUAL (or not requested)
    std::optional<Rational> closed_form;
    std::string tr_note, duality_note;
    bool agree = true;  // all available values identical
};

struct FreeEnergyReport {
    std::string curve_label;
    std::vector<FreeEnergyRow> rows;
    long tr_ms = 0, duality_ms = 0;
    bool all_agree = true;
};

enum class Method { TR, Duality, Both, All };

/// agree = true iff all available values for the row are identical rationals.
inline void finalize_row_agreement(FreeEnergyRow& row) {
    std::vector<Rational> avail;
    if (row.tr) avail.push_back(*row.tr);
    if (row.duality) avail.push_back(*row.duality);
    if (row.closed_form) avail.push_back(*row.closed_form);
    row.agree = true;
    for (const auto& v : avail) row.agree = row.agree && (v == avail.front());
}

inline FreeEnergyReport run_free_energy(const SpectralCurve& curve, int g_max, Method method,
                                        const CatalogEntry* entry = nullptr,
                                        TREngineOptions opts = {}) {
    if (g_max < 2) throw std::invalid_argument("free energy needs gmax >= 2");
    FreeEnergyReport rep;
    rep.curve_label = curve.label();
    bool want_tr = method == Method::TR || method == Method::Both || method == Method::All;
    bool want_dual = method == Method::Duality || method == Method::Both || method == Method::All;
    bool want_closed = method == Method::All && entry != nullptr;

    std::optional<TREngine> tr;
    std::string tr_fail;
    if (want_tr) {
        try {
            tr.emplace(curve, opts);
        } catch (const TRPathError& e) {
            tr_fail = e.what();
        }
    }
    std::optional<DualityEngine> dual;
    std::string dual_fail;
    if (want_dual) {
        try {
            dual.emplace(curve);
        } catch (const UnsupportedDualError& e) {
            dual_fail = e.what();
        }
    }

    for (int g = 2; g <= g_max; ++g) {
        FreeEnergyRow row;
        row.g = g;
        if (want_tr) {
            if (tr) {
                auto t0 = std::chrono::steady_clock::now();
                try {
                    row.tr = tr->dilaton_free_energy(g).value;
                } catch (const TRPathError& e) {
                    row.tr_note = e.what();
                } catch (const std::invalid_argument& e) {
                    row.tr_note = std::string("PATH_UNAVAILABLE: ") + e.what();
                }
                rep.tr_ms += std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
            } else {
                row.tr_note = "PATH_UNAVAILABLE: " + tr_fail;
            }
        }
        if (want_dual) {
            if (dual) {
                auto t0 = std::chrono::steady_clock::now();
                row.duality = dual->free_energy(g).value.value;
                rep.duality_ms += std::chrono::duration_cast<std::chrono::milliseconds>(
                                      std::chrono::steady_clock::now() - t0)
                                      .count();
            } else {
                row.duality_note = "UNSUPPORTED_DUAL: " + dual_fail;
            }
        }
        if (want_closed && entry->closed_form) row.closed_form = entry->closed_form(g);
        finalize_row_agreement(row);
        rep.all_agree = rep.all_agree && row.agree;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

inline nlohmann::json report_to_json(const FreeEnergyReport& rep) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rep.rows) {
        nlohmann::json row;
        row["g"] = r.g;
        row["tr"] = r.tr ? nlohmann::json(r.tr->str())
                         : (r.tr_note.empty() ? nlohmann::json(nullptr) : nlohmann::json("PATH_UNAVAILABLE"));
        row["duality"] = r.duality ? nlohmann::json(r.duality->str())
                                   : (r.duality_note.empty() ? nlohmann::json(nullptr)
                                                             : nlohmann::json("UNSUPPORTED_DUAL"));
        row["closed_form"] = r.closed_form ? nlohmann::json(r.closed_form->str()) : nlohmann::json(nullptr);
        row["agree"] = r.agree;
        rows.push_back(row);
    }
    // timing stays out of the canonical report so identical inputs produce
    // byte-identical JSON; the CLI reports it on stderr
    return {{"curve", rep.curve_label}, {"rows", rows}, {"all_agree", rep.all_agree}};
}

inline std::string report_to_csv(const FreeEnergyReport& rep) {
    std::ostringstream o;
    o << "curve,g,tr,duality,closed_form,agree\n";
    for (const auto& r : rep.rows) {
        o << rep.curve_label << "," << r.g << ","
          << (r.tr ? r.tr->str() : (r.tr_note.empty() ? "" : "PATH_UNAVAILABLE")) << ","
          << (r.duality ? r.duality->str() : (r.duality_note.empty() ? "" : "UNSUPPORTED_DUAL")) << ","
          << (r.closed_form ? r.closed_form->str() : "") << "," << (r.agree ? "true" : "false")
          << "\n";
    }
    return o.str();
}

inline std::string report_to_markdown(const FreeEnergyReport& rep) {
    std::ostringstream o;
    o << "### " << rep.curve_label << "\n\n";
    o << "| g | TR | duality | closed form | agree |\n|---|----|---------|-------------|-------|\n";
    for (const auto& r : rep.rows) {
        o << "| " << r.g << " | " << (r.tr ? r.tr->str() : (r.tr_note.empty() ? "-" : "PATH_UNAVAILABLE"))
          << " | "
          << (r.duality ? r.duality->str() : (r.duality_note.empty() ? "-" : "UNSUPPORTED_DUAL")) << " | "
          << (r.closed_form ? r.closed_form->str() : "-") << " | " << (r.agree ? "yes" : "NO") << " |\n";
    }
    return o.str();
}

/// Pole-basis dump: list of {points, orders, coeff}.
inline nlohmann::json omega_to_json(const MultiDifferential& w) {
    if (w.is_bergman()) return {{"bergman", true}, {"note", "dz1 dz2/(z1-z2)^2"}};
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [key, c] : w.terms()) {
        nlohmann::json points = nlohmann::json::array(), orders = nlohmann::json::array();
        for (const auto& f : key) {
            points.push_back(f.point.str());
            orders.push_back(f.order);
        }
        terms.push_back({{"points", points}, {"orders", orders}, {"coeff", c.str()}});
    }
    return terms;
}

}  // namespace specrec

#endif
