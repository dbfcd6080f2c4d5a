// Command-line front end: free-energy comparison reports, identity
// verification suites, and pole-basis dumps of the multidifferentials.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <specrec/appendix.hpp>
#include <specrec/catalog.hpp>
#include <specrec/curve_io.hpp>
#include <specrec/duality.hpp>
#include <specrec/report.hpp>
#include <specrec/tr_engine.hpp>

using namespace specrec;

namespace {

ParamMap parse_params(const std::vector<std::string>& raw) {
    ParamMap out;
    for (const auto& kv : raw) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--param expects key=value, got " + kv);
        std::string key = kv.substr(0, eq);
        std::string vals = kv.substr(eq + 1);
        std::vector<Rational> list;
        size_t pos = 0;
        while (pos <= vals.size()) {
            size_t comma = vals.find(',', pos);
            std::string item = vals.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (item.empty()) throw std::invalid_argument("--param " + key + ": empty value");
            list.push_back(Rational::parse(item));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        out[key] = std::move(list);
    }
    return out;
}

TREngineOptions engine_options() {
    TREngineOptions opts;
    if (const char* env = std::getenv("SPECREC_TRUNC_ORDER")) {
        opts.truncation_order = std::atoi(env);
        if (opts.truncation_order < 8)
            throw std::invalid_argument("SPECREC_TRUNC_ORDER must be >= 8");
    }
    return opts;
}

struct CurveArgs {
    std::string name;
    std::string config_path;
    std::vector<std::string> params;
};

std::pair<SpectralCurve, std::optional<CatalogEntry>> resolve_curve(const CurveArgs& a) {
    if (!a.config_path.empty()) {
        std::ifstream in(a.config_path);
        if (!in) throw std::invalid_argument("cannot open config file " + a.config_path);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        SpectralCurve c = parse_curve_string(text);
        if (!a.name.empty())
            throw std::invalid_argument("--curve and --config are mutually exclusive");
        return {c, std::nullopt};
    }
    if (a.name.empty()) throw std::invalid_argument("need --curve <name> or --config <file>");
    CatalogEntry entry = catalog_get(a.name, parse_params(a.params));
    return {entry.curve, entry};
}

void emit(const std::string& text, const std::string& output) {
    if (output.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(output);
    if (!out) throw std::invalid_argument("cannot write " + output);
    out << text;
}

int cmd_freeenergy(const CurveArgs& cargs, int gmax, const std::string& method_s,
                   const std::string& format, const std::string& output) {
    Method method = Method::All;
    if (method_s == "tr") method = Method::TR;
    else if (method_s == "duality") method = Method::Duality;
    else if (method_s == "both") method = Method::Both;
    else if (method_s != "all") throw std::invalid_argument("unknown method " + method_s);
    auto [curve, entry] = resolve_curve(cargs);
    FreeEnergyReport rep =
        run_free_energy(curve, gmax, method, entry ? &*entry : nullptr, engine_options());
    std::cerr << "timing: tr " << rep.tr_ms << " ms, duality " << rep.duality_ms << " ms\n";
    if (format == "json") emit(report_to_json(rep).dump(2), output);
    else if (format == "csv") emit(report_to_csv(rep), output);
    else if (format == "md") emit(report_to_markdown(rep), output);
    else throw std::invalid_argument("unknown format " + format);
    return rep.all_agree ? 0 : 2;
}

int cmd_emit_omega(const CurveArgs& cargs, int g, int n, const std::string& output) {
    auto [curve, entry] = resolve_curve(cargs);
    (void)entry;
    nlohmann::json j;
    if (g == 0 && n == 2) {
        j = omega_to_json(MultiDifferential::bergman());
    } else {
        TREngine eng(curve, engine_options());
        j = omega_to_json(eng.omega(g, n));
    }
    emit(j.dump(2), output);
    return 0;
}

int cmd_verify(const std::string& suite, int gmax, const CurveArgs& cargs, const std::string& output) {
    nlohmann::json out = nlohmann::json::array();
    bool failed = false;
    bool do_appendix = suite == "appendix" || suite == "all";
    bool do_loops = suite == "loop-equations" || suite == "all";
    if (!do_appendix && !do_loops) throw std::invalid_argument("unknown suite " + suite);

    if (do_appendix) {
        for (const auto& row : lemmaA1_check(gmax)) {
            nlohmann::json r = {{"lemma", "A.1"},
                                {"g", row.g},
                                {"lhs", row.lhs.str()},
                                {"minus_candidate", row.minus_candidate.str()},
                                {"plus_candidate", row.plus_candidate.str()},
                                {"verdict", row.match}};
            if (row.match == "neither") failed = true;
            out.push_back(r);
        }
        std::vector<Rational> Q{Rational(0), Rational(2), Rational(5)};
        for (int na = 2; na <= 5; ++na) {
            RationalFunction f(Polynomial{Rational(1), Rational(1), Rational(1)});  // 1 + y + y^2
            auto shift = degree_shift_check(Q, 0, na, f);
            nlohmann::json r = {{"lemma", "A.2"},
                                {"n_a", na},
                                {"pole_order_before", shift.pole_order_before},
                                {"pole_order_after", shift.pole_order_after},
                                {"drops", shift.pole_order_after <= shift.pole_order_before - 1}};
            if (shift.pole_order_after > shift.pole_order_before - 1) failed = true;
            out.push_back(r);
        }
        std::string common;
        for (int na = 1; na <= 5; ++na) {
            RationalFunction f(Polynomial{Rational(1), Rational(2), Rational(1), Rational(1)});
            RationalFunction gf(Polynomial{Rational(3), Rational(1), Rational(0), Rational(2)});
            auto v = residue_lemma_oracle(Q, 0, na, f, gf);
            std::string verdict = v.match == "both" ? "quoted" : v.match;
            nlohmann::json r = {{"lemma", "A.3"},
                                {"n_a", na},
                                {"brute_force", v.brute_force.str()},
                                {"quoted_form", v.quoted_form.str()},
                                {"factorial_form", v.factorial_form.str()},
                                {"verdict", verdict}};
            if (v.match == "neither") failed = true;
            if (na > 1) {
                if (common.empty()) common = verdict;
                else if (common != verdict) failed = true;  // inconsistent verdicts across n_a
            }
            out.push_back(r);
        }
    }
    if (do_loops) {
        CurveArgs ca = cargs;
        if (ca.name.empty() && ca.config_path.empty()) ca.name = "harer-zagier";
        auto [curve, entry] = resolve_curve(ca);
        (void)entry;
        TREngine eng(curve, engine_options());
        int gm = std::min(gmax, 3);
        for (int g = 1; g <= gm; ++g) {
            bool ok = eng.linear_loop_check(g);
            out.push_back({{"identity", "linear-loop"}, {"g", g}, {"holds", ok}});
            if (!ok) failed = true;
        }
        for (int g = 2; g <= gm; ++g) {
            auto lem = eng.lemma31_check(g);
            out.push_back({{"identity", "lemma-3.1"},
                           {"g", g},
                           {"lhs", lem.lhs.str()},
                           {"rhs", lem.rhs.str()},
                           {"side", lem.side},
                           {"holds", lem.holds}});
            if (!lem.holds) failed = true;
        }
    }
    emit(out.dump(2), output);
    return failed ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact topological recursion and x-y duality free energies on genus-zero curves"};
    app.require_subcommand(1);

    CurveArgs cargs;
    int gmax = 2, og = 0, on = 1;
    std::string method = "all", format = "json", output, suite = "all";

    auto add_curve_opts = [&](CLI::App* cmd, bool required) {
        cmd->add_option("--curve", cargs.name, "catalog curve name");
        cmd->add_option("--config", cargs.config_path, "curve config JSON file");
        cmd->add_option("--param", cargs.params, "catalog parameter key=v1,v2,...")->take_all();
        (void)required;
    };

    auto* fe = app.add_subcommand("freeenergy", "compute F_g on the requested paths and compare");
    add_curve_opts(fe, true);
    fe->add_option("--gmax", gmax, "highest genus (>= 2)")->default_val(2);
    fe->add_option("--method", method, "tr|duality|both|all")->default_val("all");
    fe->add_option("--format", format, "json|csv|md")->default_val("json");
    fe->add_option("--output", output, "write report to file instead of stdout");

    auto* vi = app.add_subcommand("verify-identities", "run the identity verification suites");
    vi->add_option("--suite", suite, "appendix|loop-equations|all")->default_val("all");
    vi->add_option("--gmax", gmax, "genus bound for the suites")->default_val(5);
    add_curve_opts(vi, false);
    vi->add_option("--output", output, "write verdicts to file instead of stdout");

    auto* eo = app.add_subcommand("emit-omega", "dump omega_{g,n} in the pole basis");
    add_curve_opts(eo, true);
    eo->add_option("--g", og, "genus")->required();
    eo->add_option("--n", on, "number of variables")->required();
    eo->add_option("--output", output, "write dump to file instead of stdout");

    auto* cat = app.add_subcommand("catalog", "catalog inspection");
    auto* catlist = cat->add_subcommand("list", "list catalog curves and parameter schemas");

    try {
        app.parse(argc, argv);
        if (fe->parsed()) return cmd_freeenergy(cargs, gmax, method, format, output);
        if (vi->parsed()) return cmd_verify(suite, gmax, cargs, output);
        if (eo->parsed()) return cmd_emit_omega(cargs, og, on, output);
        if (cat->parsed() || catlist->parsed()) {
            for (const auto& entry : catalog_list())
                std::cout << entry.name << "  " << entry.parameter_schema
                          << (entry.has_closed_form ? "  [closed form]" : "") << "\n";
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const TRPathError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
