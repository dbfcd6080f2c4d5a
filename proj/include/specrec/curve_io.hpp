#ifndef SPECREC_CURVE_IO_HPP
#define SPECREC_CURVE_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "curve.hpp"

namespace specrec {

struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& m) : std::runtime_error("curve config: " + m) {}
};

namespace detail {

inline Rational parse_rat_field(const nlohmann::json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) {
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const std::exception& e) {
            throw SchemaError(where + ": " + e.what());
        }
    }
    throw SchemaError(where + ": expected integer or \"p/q\" string");
}

inline Polynomial parse_poly(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array()) throw SchemaError(where + ": expected ascending coefficient array");
    std::vector<Rational> c;
    for (const auto& e : j) c.push_back(parse_rat_field(e, where));
    return Polynomial(std::move(c));
}

inline CurveFunction parse_function(const nlohmann::json& j, const std::string& where, bool allow_logs) {
    if (!j.is_object()) throw SchemaError(where + ": expected object");
    if (j.contains("kind")) {
        if (j.at("kind") != "log_z") throw SchemaError(where + ".kind: only \"log_z\" is recognized");
        return CurveFunction::log_of_z();
    }
    RationalFunction rat;
    if (j.contains("rational")) {
        const auto& r = j.at("rational");
        if (!r.is_object() || !r.contains("num")) throw SchemaError(where + ".rational: expected {num, den}");
        Polynomial num = parse_poly(r.at("num"), where + ".rational.num");
        Polynomial den =
            r.contains("den") ? parse_poly(r.at("den"), where + ".rational.den") : Polynomial{Rational(1)};
        if (den.is_zero()) throw SchemaError(where + ".rational.den: zero denominator");
        rat = RationalFunction(num, den);
    }
    std::vector<LogAtom> atoms;
    if (j.contains("logs")) {
        if (!allow_logs) throw SchemaError(where + ".logs: log atoms are not allowed here");
        for (const auto& a : j.at("logs")) {
            if (!a.is_object() || !a.contains("a") || !a.contains("coeff"))
                throw SchemaError(where + ".logs: expected {a, coeff}");
            atoms.push_back({parse_rat_field(a.at("a"), where + ".logs.a"),
                             parse_rat_field(a.at("coeff"), where + ".logs.coeff")});
        }
    }
    return CurveFunction(std::move(rat), std::move(atoms));
}

}  // namespace detail

/// Builds and validates a spectral curve from its config document.
/// Schema: { "label": str,
///           "x": {"rational": {"num": [...], "den": [...]}, "logs": [{"a","coeff"},...]} | {"kind":"log_z"},
///           "y": same shape (no general logs: y is plain rational or log z),
///           "framing": optional integer, rewriting x -> x + f*y }
inline SpectralCurve parse_curve(const nlohmann::json& j) {
    if (!j.is_object()) throw SchemaError("expected a JSON object");
    std::string label = j.contains("label") ? j.at("label").get<std::string>() : "curve";
    if (!j.contains("x") || !j.contains("y")) throw SchemaError("missing x or y");
    CurveFunction x = detail::parse_function(j.at("x"), "x", /*allow_logs=*/true);
    CurveFunction y = detail::parse_function(j.at("y"), "y", /*allow_logs=*/false);
    if (j.contains("framing")) {
        if (!j.at("framing").is_number_integer()) throw SchemaError("framing: expected integer");
        long f = j.at("framing").get<long>();
        if (f != 0) {
            if (x.is_log_of_z()) throw SchemaError("framing with x = log z is not supported");
            x = x.plus_constant_times(y, Rational(f));
        }
    }
    SpectralCurve curve(label, std::move(x), std::move(y));
    // validation: simple ramification (rational zeros of dx); irrational zeros
    // only disable the TR path and are diagnosed there.
    try {
        (void)ramification_points(curve, 'x');
    } catch (const IrrationalPoleError&) {
        // acceptable: duality path remains available
    }
    return curve;
}

inline SpectralCurve parse_curve_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    return parse_curve(j);
}

inline nlohmann::json curve_to_json(const SpectralCurve& curve) {
    auto fn = [](const CurveFunction& f) {
        nlohmann::json j;
        if (f.is_log_of_z()) {
            j["kind"] = "log_z";
            return j;
        }
        nlohmann::json num = nlohmann::json::array(), den = nlohmann::json::array();
        for (const auto& c : f.rational_part().num().coeffs()) num.push_back(c.str());
        for (const auto& c : f.rational_part().den().coeffs()) den.push_back(c.str());
        j["rational"] = {{"num", num}, {"den", den}};
        if (!f.log_atoms().empty()) {
            nlohmann::json logs = nlohmann::json::array();
            for (const auto& a : f.log_atoms())
                logs.push_back({{"a", a.branch_point.str()}, {"coeff", a.coefficient.str()}});
            j["logs"] = logs;
        }
        return j;
    };
    return {{"label", curve.label()}, {"x", fn(curve.x())}, {"y", fn(curve.y())}};
}

}  // namespace specrec

#endif
