#pragma once

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "bounds.hpp"
#include "excitations.hpp"
#include "oracle.hpp"
#include "polytope_io.hpp"
#include "scenarios.hpp"

namespace qmarg::cli {

enum ExitCode : int { Ok = 0, Usage = 1, Unsupported = 2, Internal = 3 };

struct RunConfig {
    std::string scenario;
    std::string output;
    std::uint64_t seed = 0;
    std::size_t count = 10000;
    double tol = 1e-8;
    std::string format = "json";
    std::string mask;
    std::string against = "reference";
    unsigned threads = 0;
    std::string spectrum_file;
    std::string polytope_file;
};

namespace detail {

inline json weights_json(const std::vector<Weight>& ws) {
    json a = json::array();
    for (const auto& w : ws) a.push_back(to_json(w));
    return a;
}

inline json vpolytope_json(const VPolytope& p) { return to_json(p); }

inline json hpolytope_json(const HPolytope& h) { return to_json(h); }

inline void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + cfg.output);
    f << text;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json report_json(const Scenario& s, const BoundsReport& r) {
    json j;
    j["scenario"] = to_string(s);
    j["strategy"] = r.strategy;
    j["flags"] = {{"minuscule", r.minuscule},
                  {"spherical", r.second_osculating_fills},
                  {"p2_equals_reference", r.p2_equals_reference ? json(*r.p2_equals_reference) : json(nullptr)},
                  {"cone_equals_hull", r.cone_equals_hull ? json(*r.cone_equals_hull) : json(nullptr)},
                  {"inner_in_outer", r.inner_in_outer}};
    j["p2"] = vpolytope_json(r.p2);
    j["outer"] = hpolytope_json(r.outer);
    j["reference"] = r.reference ? hpolytope_json(*r.reference) : json(nullptr);
    return j;
}

inline std::vector<bool> resolve_mask(const Scenario& s, const std::string& name) {
    if (name.empty() || name == "full") return {};
    if (name == "p2-subspace") return p2_subspace_mask(s);
    throw std::invalid_argument("unknown mask '" + name + "' (expected full or p2-subspace)");
}

inline json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read " + path);
    return json::parse(f);
}

inline bool exact_entry(const json& x) { return x.is_string() || x.is_number_integer(); }

}  // namespace detail

inline int cmd_describe(const RunConfig& cfg, std::ostream& out) {
    const Scenario s = parse_scenario(cfg.scenario);
    const auto layers = excitation_layers(s);
    std::ostringstream os;
    os << "scenario: " << to_string(s) << "\n";
    os << "dim: " << dimension(s) << "\n";
    os << "rank: " << root_system(s).rank() << "\n";
    os << "lambda: " << to_json(highest_weight(s)).dump() << "\n";
    os << "lowering_roots: " << lambda_partition(s).delta_minus.size() << "\n";
    os << "layers: " << json(layers.sizes()).dump() << "\n";
    os << "minuscule: " << (is_minuscule(s) ? "true" : "false") << "\n";
    detail::emit(cfg, out, os.str());
    return Ok;
}

inline int cmd_layers(const RunConfig& cfg, std::ostream& out) {
    const Scenario s = parse_scenario(cfg.scenario);
    const auto layers = excitation_layers(s);
    json j;
    j["scenario"] = to_string(s);
    j["sizes"] = layers.sizes();
    j["layers"] = json::array();
    for (const auto& l : layers.layers) j["layers"].push_back(detail::weights_json(l));
    detail::emit(cfg, out, detail::dump(j));
    return Ok;
}

inline int cmd_p2(const RunConfig& cfg, std::ostream& out) {
    const Scenario s = parse_scenario(cfg.scenario);
    const VPolytope p = p2_polytope(s);
    detail::emit(cfg, out, cfg.format == "cdd" ? to_cdd_ext(p) : detail::dump(detail::vpolytope_json(p)));
    return Ok;
}

inline int cmd_outer(const RunConfig& cfg, std::ostream& out) {
    const Scenario s = parse_scenario(cfg.scenario);
    const HPolytope h = outer_cone(s);
    detail::emit(cfg, out, cfg.format == "cdd" ? to_cdd_ine(h) : detail::dump(detail::hpolytope_json(h)));
    return Ok;
}

inline int cmd_reference(const RunConfig& cfg, std::ostream& out) {
    const Scenario s = parse_scenario(cfg.scenario);
    const HPolytope h = reference_polytope(s);
    detail::emit(cfg, out, cfg.format == "cdd" ? to_cdd_ine(h) : detail::dump(detail::hpolytope_json(h)));
    return Ok;
}

inline int cmd_report(const RunConfig& cfg, std::ostream& out) {
    const Scenario s = parse_scenario(cfg.scenario);
    detail::emit(cfg, out, detail::dump(detail::report_json(s, bounds_report(s))));
    return Ok;
}

inline int cmd_sample(const RunConfig& cfg, std::ostream& out) {
    const Scenario s = parse_scenario(cfg.scenario);
    SampleConfig sc{cfg.count, cfg.seed, cfg.tol, detail::resolve_mask(s, cfg.mask), cfg.threads};
    const auto samples = sample_spectra(s, sc);
    std::ostringstream os;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        json row{{"index", k}, {"point", samples[k].point}};
        if (s.is_fock()) row["orientation"] = samples[k].orientation;
        os << row.dump() << "\n";
    }
    detail::emit(cfg, out, os.str());
    return Ok;
}

inline int cmd_validate(const RunConfig& cfg, std::ostream& out) {
    const Scenario s = parse_scenario(cfg.scenario);
    HPolytope h;
    std::optional<VPolytope> companion;
    if (cfg.against == "p2") {
        companion = p2_polytope(s);
        h = vrep_to_hrep(*companion);
    } else if (cfg.against == "outer") {
        h = outer_cone(s);
    } else if (cfg.against == "reference") {
        h = reference_polytope(s);
        companion = hrep_to_vrep(h);
    } else {
        throw std::invalid_argument("--against must be p2, outer or reference");
    }
    SampleConfig sc{cfg.count, cfg.seed, cfg.tol, detail::resolve_mask(s, cfg.mask), cfg.threads};
    const auto st = containment_stats(s, h, sc, companion ? &*companion : nullptr);
    json j{{"scenario", to_string(s)},
           {"against", cfg.against},
           {"mask", cfg.mask.empty() ? "full" : cfg.mask},
           {"count", st.count},
           {"seed", cfg.seed},
           {"tol", cfg.tol},
           {"inside", st.inside},
           {"inside_fraction", st.fraction()},
           {"max_violation", st.max_violation}};
    if (companion) {
        json near = json::array();
        for (std::size_t i = 0; i < companion->vertices.size(); ++i) {
            near.push_back({{"vertex", to_json(companion->vertices[i])}, {"nearest_sample", st.nearest_to_vertex[i]}});
        }
        j["vertex_coverage"] = near;
    }
    detail::emit(cfg, out, detail::dump(j));
    return Ok;
}

/// Spectrum file: one point or an array of points. Rational strings and integers are tested exactly.
inline int cmd_check(const RunConfig& cfg, std::ostream& out) {
    const json pts = detail::read_json_file(cfg.spectrum_file);
    const HPolytope h = hpolytope_from_json(detail::read_json_file(cfg.polytope_file));
    std::vector<json> rows;
    if (pts.is_array() && !pts.empty() && pts.front().is_array()) {
        for (const auto& p : pts) rows.push_back(p);
    } else {
        rows.push_back(pts);
    }
    json res = json::array();
    for (const auto& p : rows) {
        if (p.size() != h.dim) throw std::invalid_argument("spectrum dimension does not match the polytope");
        if (std::all_of(p.begin(), p.end(), detail::exact_entry)) {
            const auto m = contains(h, ratvec_from_json(p));
            res.push_back({{"exact", true}, {"inside", m.inside}, {"violation", to_string(m.violation)}});
        } else {
            std::vector<double> x;
            for (const auto& v : p) x.push_back(v.is_string() ? to_double(parse_rational(v.get<std::string>())) : v.get<double>());
            const auto m = contains(h, x, cfg.tol);
            res.push_back({{"exact", false}, {"inside", m.inside}, {"violation", m.violation}});
        }
    }
    detail::emit(cfg, out, detail::dump(json{{"tol", cfg.tol}, {"results", res}}));
    return Ok;
}

/// Parses argv and dispatches; never throws.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bounds on one-body spectral polytopes from excitation layers", "qmarginal"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto with_scenario = [&](CLI::App* sub) {
        sub->add_option("scenario", cfg.scenario, "dist:2x2x3, bosons:L@N, fermions:L@N, fock-even:N, fock-odd:N")
            ->required();
        sub->add_option("-o,--output", cfg.output, "Output path (stdout when absent)");
    };
    auto with_format = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "json or cdd")->check(CLI::IsMember({"json", "cdd"}));
    };
    auto with_sampling = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "RNG seed");
        sub->add_option("-n,--count", cfg.count, "Number of states")->check(CLI::PositiveNumber);
        sub->add_option("--tol", cfg.tol, "Membership tolerance");
        sub->add_option("--mask", cfg.mask, "full or p2-subspace")->check(CLI::IsMember({"full", "p2-subspace"}));
        sub->add_option("--threads", cfg.threads, "Worker threads (0: all cores)");
    };

    std::map<std::string, int (*)(const RunConfig&, std::ostream&)> handlers;
    auto add = [&](const std::string& name, const std::string& help, int (*fn)(const RunConfig&, std::ostream&)) {
        handlers[name] = fn;
        return app.add_subcommand(name, help);
    };
    with_scenario(add("describe", "Dimension, rank, highest weight, layer sizes", cmd_describe));
    with_scenario(add("layers", "Excitation layers as JSON", cmd_layers));
    for (auto [name, help, fn] : {std::tuple{"p2", "Polytope from doubly excited states", cmd_p2},
                                  std::tuple{"outer", "Outer weight cone cut by the chamber", cmd_outer},
                                  std::tuple{"reference", "Closed-form spectral polytope", cmd_reference}}) {
        auto* sub = add(name, help, fn);
        with_scenario(sub);
        with_format(sub);
    }
    with_scenario(add("report", "Inner and outer bounds with flags", cmd_report));
    auto* sample = add("sample", "JSONL spectra of random states", cmd_sample);
    with_scenario(sample);
    with_sampling(sample);
    auto* validate = add("validate", "Monte Carlo containment statistics", cmd_validate);
    with_scenario(validate);
    with_sampling(validate);
    validate->add_option("--against", cfg.against, "p2, outer or reference")
        ->check(CLI::IsMember({"p2", "outer", "reference"}));
    auto* check = add("check", "Membership of spectra in a polytope file", cmd_check);
    check->add_option("spectrum", cfg.spectrum_file, "JSON point or array of points")->required();
    check->add_option("polytope", cfg.polytope_file, "Polytope JSON")->required();
    check->add_option("--tol", cfg.tol, "Tolerance for floating-point entries");
    check->add_option("-o,--output", cfg.output, "Output path (stdout when absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return Ok;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return Ok;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return Usage;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        return handlers.at(name)(cfg, out);
    } catch (const UnsupportedError& e) {
        err << json{{"error", "Unsupported"}, {"scenario", cfg.scenario}, {"attempted", e.attempted()},
                    {"message", e.what()}}
                   .dump()
            << "\n";
        return Unsupported;
    } catch (const NotInCatalogError& e) {
        err << json{{"error", "NotInCatalog"}, {"scenario", cfg.scenario}, {"message", e.what()}}.dump() << "\n";
        return Unsupported;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n" << app.get_subcommand(name)->help();
        return Usage;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return Usage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return Internal;
    }
}

}  // namespace qmarg::cli
