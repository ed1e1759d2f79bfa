#include "ckg/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "ckg/duality.hpp"
#include "ckg/errors.hpp"
#include "ckg/kernels.hpp"
#include "ckg/perturbation.hpp"

namespace ckg {

namespace {

// The midpoint rule is exact here once n_atoms >= n; errors below this level are roundoff.
constexpr double kQuadratureFloor = 1e-12;

const Json& require_field(const Json& j, const char* key, const char* where) {
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string(where) + ": missing field '" + key + "'");
    }
    return j.at(key);
}

std::size_t read_count(const Json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw ParseError(std::string(what) + ": expected a nonnegative integer");
    }
    return j.get<std::size_t>();
}

std::size_t read_positive_count(const Json& j, const char* what) {
    const std::size_t v = read_count(j, what);
    if (v == 0) throw InvalidConfig(std::string(what) + " must be at least 1");
    return v;
}

double read_number(const Json& j, const char* what) {
    if (!j.is_number()) throw ParseError(std::string(what) + ": expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw ParseError(std::string(what) + ": value is not finite");
    return x;
}

template <typename T, typename Reader>
std::vector<T> read_list(const Json& j, const char* what, Reader reader) {
    if (!j.is_array()) throw ParseError(std::string(what) + ": expected a list");
    std::vector<T> out;
    for (const auto& item : j) out.push_back(reader(item, what));
    return out;
}

const char* kind_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::paper_example: return "paper_example";
        case ScenarioKind::continuous_fourier: return "continuous_fourier";
        case ScenarioKind::random: return "random";
        case ScenarioKind::explicit_family: return "explicit";
    }
    return "unknown";
}

std::string error_type(const std::exception& e) {
    if (dynamic_cast<const DimensionMismatch*>(&e)) return "DimensionMismatch";
    if (dynamic_cast<const NotHermitian*>(&e)) return "NotHermitian";
    if (dynamic_cast<const NotPsd*>(&e)) return "NotPsd";
    if (dynamic_cast<const NotAFrame*>(&e)) return "NotAFrame";
    if (dynamic_cast<const DegenerateDual*>(&e)) return "DegenerateDual";
    if (dynamic_cast<const InvalidPair*>(&e)) return "InvalidPair";
    if (dynamic_cast<const InadmissibleParams*>(&e)) return "InadmissibleParams";
    if (dynamic_cast<const InvalidDelta*>(&e)) return "InvalidDelta";
    if (dynamic_cast<const InvalidArgument*>(&e)) return "InvalidArgument";
    if (dynamic_cast<const InvalidConfig*>(&e)) return "InvalidConfig";
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    return "Error";
}

Json tolerance_json(const TolerancePolicy& t) {
    return {{"rel_rank_cutoff", t.rel_rank_cutoff}, {"psd_slack", t.psd_slack}, {"residual_tol", t.residual_tol}};
}

struct RequestResult {
    Json body;
    bool passed = false;
};

class Executor {
public:
    Executor(const ScenarioConfig& cfg, Scenario scenario) : cfg_(cfg), sc_(std::move(scenario)) {}

    RequestResult execute(const Request& req, std::string& csv) {
        if (req.op == "bounds") return bounds();
        if (req.op == "verify") return verify(req.params);
        if (req.op == "dual") return dual();
        if (req.op == "theta") return theta(req.params);
        if (req.op == "perturb") return perturb(req.params);
        if (req.op == "refine") return refine_study(req.params, csv);
        throw ParseError("unknown request op '" + req.op + "'");
    }

private:
    const OperatorFamily& fam() const { return sc_.family; }
    const ComplexMatrix& k() const { return sc_.k; }

    RequestResult bounds() {
        const FrameBounds b = optimal_bounds(fam(), k(), cfg_.tol);
        const bool in_range = check_synthesis_range(fam(), k(), cfg_.tol);
        Json diagnostics = Json::array();
        if (std::isinf(b.lower)) diagnostics.push_back("K = 0: lower bound is vacuous (+inf)");
        return {{{"bounds", to_json(b)},
                 {"range_inclusion", in_range},
                 {"K_norm", operator_norm(k())},
                 {"diagnostics", diagnostics}},
                true};
    }

    RequestResult verify(const Json& params) {
        FrameBounds claimed;
        if (params.contains("claimed")) {
            claimed = bounds_from_json(params["claimed"]);
        } else {
            claimed = optimal_bounds(fam(), k(), cfg_.tol);
        }
        const FrameReport r = verify_frame(fam(), k(), claimed, cfg_.tol);
        return {{{"report", to_json(r)}}, r.is_ckg_frame};
    }

    RequestResult dual() {
        const DualPair pair = douglas_gamma(fam(), k(), cfg_.tol);
        const double dual_lower = lower_bound_from_dual(pair);
        const double optimal_lower = optimal_bounds(fam(), k(), cfg_.tol).lower;
        const bool ok = dual_lower <= optimal_lower + cfg_.tol.residual_tol * std::max(1.0, optimal_lower);
        Json body = {{"pair", to_json(pair)},
                     {"dual_bessel_bound", bessel_bound(pair.dual)},
                     {"dual_lower_bound", dual_lower},
                     {"optimal_lower", extended_real(optimal_lower)}};
        return {std::move(body), ok};
    }

    RequestResult theta(const Json& params) {
        const std::size_t count =
            params.contains("vectors") ? read_positive_count(params["vectors"], "theta vectors") : 16;
        const DualPair pair = douglas_gamma(fam(), k(), cfg_.tol);
        const OperatorFamily th = theta_dual(pair, cfg_.tol);
        const ComplexMatrix projector = range_projector(k(), cfg_.tol);

        std::mt19937_64 rng(cfg_.seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        double err_forward = 0.0;
        double err_backward = 0.0;
        std::size_t used = 0;
        for (std::size_t i = 0; i < count; ++i) {
            CVector raw(fam().ambient_dim());
            for (cplx& z : raw) {
                const double re = normal(rng);
                const double im = normal(rng);
                z = {re, im};
            }
            const CVector f = projector * raw;
            const double f_norm = norm(f);
            if (f_norm == 0.0) continue;
            ++used;
            const CVector forward = synthesis(fam(), analysis(th, f));
            const CVector backward = synthesis(th, analysis(fam(), f));
            err_forward = std::max(err_forward, norm(subtract(forward, f)) / f_norm);
            err_backward = std::max(err_backward, norm(subtract(backward, f)) / f_norm);
        }
        const bool ok = err_forward <= cfg_.tol.residual_tol && err_backward <= cfg_.tol.residual_tol;
        Json body = {{"vectors", used},
                     {"max_relative_error_lambda_theta", err_forward},
                     {"max_relative_error_theta_lambda", err_backward},
                     {"theta_bessel_bound", bessel_bound(th)},
                     {"theta", to_json(th)}};
        return {std::move(body), ok};
    }

    RequestResult perturb(const Json& params) {
        const std::size_t samples =
            params.contains("samples") ? read_count(params["samples"], "perturb samples") : cfg_.samples;
        PerturbationParams p;
        std::optional<OperatorFamily> gam;
        Json described;
        if (params.contains("delta")) {
            const double delta = read_number(params["delta"], "perturb delta");
            p = scalar_perturbation_params(delta);
            gam = scaled(fam(), 1.0 - delta);
            described = {{"delta", delta}};
        } else {
            const Json& list = require_field(params, "params", "perturb request");
            if (!list.is_array() || list.size() != 3) throw ParseError("perturb params: expected [l1, l2, gamma]");
            p = {read_number(list[0], "lambda1"), read_number(list[1], "lambda2"), read_number(list[2], "gamma")};
            if (params.contains("family")) {
                gam = family_from_json(params["family"]);
                described = {{"family", "explicit"}};
            } else if (params.value("kill_range", false)) {
                const std::size_t n = fam().ambient_dim();
                gam = compose_right(fam(), ComplexMatrix::identity(n) - range_projector(k(), cfg_.tol));
                described = {{"family", "range_killed"}};
            } else {
                throw ParseError("perturb request: give 'delta', or 'params' with 'family' or 'kill_range'");
            }
        }
        const PerturbationReport r = verify_perturbation(fam(), *gam, k(), p, samples, cfg_.seed, cfg_.tol);
        Json body = to_json(r);
        body["params"] = Json::array({p.lambda1, p.lambda2, p.gamma});
        body["perturbation"] = described;
        return {std::move(body), r.success};
    }

    RequestResult refine_study(const Json& params, std::string& csv) {
        std::ostringstream out;
        out.precision(17);
        if (params.contains("n_atoms")) {
            if (cfg_.kind != ScenarioKind::continuous_fourier) {
                throw InvalidConfig("refine over n_atoms needs a continuous_fourier scenario");
            }
            const auto counts = read_list<std::size_t>(params["n_atoms"], "refine n_atoms",
                                                       [](const Json& j, const char* w) { return read_positive_count(j, w); });
            Json errors = Json::array();
            std::vector<double> errs;
            out << "n_atoms,error\n";
            for (const std::size_t count : counts) {
                const Scenario s = build_continuous_fourier(cfg_.n, count);
                const double err = operator_norm(frame_operator(s.family) - ComplexMatrix::identity(cfg_.n));
                errs.push_back(err);
                errors.push_back(err);
                out << count << ',' << err << '\n';
            }
            bool nonincreasing = true;
            for (std::size_t i = 1; i < errs.size(); ++i) {
                nonincreasing = nonincreasing && errs[i] <= std::max(errs[i - 1], kQuadratureFloor);
            }
            if (csv.empty()) csv = out.str();
            return {{{"n_atoms", params["n_atoms"]},
                     {"errors", errors},
                     {"roundoff_floor", kQuadratureFloor},
                     {"nonincreasing", nonincreasing}},
                    nonincreasing};
        }

        std::vector<std::size_t> factors{2, 4};
        if (params.contains("factors")) {
            factors = read_list<std::size_t>(params["factors"], "refine factors",
                                             [](const Json& j, const char* w) { return read_positive_count(j, w); });
        }
        const ComplexMatrix s0 = frame_operator(fam());
        const FrameBounds b0 = optimal_bounds(fam(), k(), cfg_.tol);
        const double scale = std::max(1.0, operator_norm(s0));
        auto change = [](double a, double b) { return (std::isinf(a) && a == b) ? 0.0 : std::abs(a - b); };
        bool invariant = true;
        Json rows = Json::array();
        out << "factor,frame_operator_change,lower_change,upper_change\n";
        for (const std::size_t p : factors) {
            const OperatorFamily refined = refine(fam(), p);
            const double ds = operator_norm(frame_operator(refined) - s0);
            const FrameBounds b = optimal_bounds(refined, k(), cfg_.tol);
            const double dl = change(b.lower, b0.lower);
            const double du = change(b.upper, b0.upper);
            const double lower_scale = std::isfinite(b0.lower) ? std::max(1.0, b0.lower) : 1.0;
            invariant = invariant && ds <= 1e-12 * scale && du <= 1e-12 * scale && dl <= 1e-12 * lower_scale;
            rows.push_back({{"factor", p}, {"frame_operator_change", ds}, {"lower_change", dl}, {"upper_change", du}});
            out << p << ',' << ds << ',' << dl << ',' << du << '\n';
        }
        if (csv.empty()) csv = out.str();
        return {{{"refinements", rows}, {"invariant", invariant}}, invariant};
    }

    const ScenarioConfig& cfg_;
    Scenario sc_;
};

}  // namespace

ScenarioConfig parse_config(const Json& j) {
    if (!j.is_object()) throw ParseError("config: expected a JSON object");
    ScenarioConfig cfg;
    cfg.source = j;

    const Json& sc = require_field(j, "scenario", "config");
    const Json& kind = require_field(sc, "kind", "scenario");
    if (!kind.is_string()) throw ParseError("scenario kind must be a string");
    const auto kind_str = kind.get<std::string>();
    if (kind_str == "paper_example") {
        cfg.kind = ScenarioKind::paper_example;
        if (sc.contains("m")) cfg.m = read_positive_count(sc["m"], "m");
        if (sc.contains("partition_measures")) {
            cfg.partition_measures = read_list<double>(sc["partition_measures"], "partition_measures", read_number);
            for (double mu : cfg.partition_measures) {
                if (mu <= 0.0) throw InvalidConfig("partition_measures must be strictly positive");
            }
        }
        if (sc.contains("atoms_per_cell")) cfg.atoms_per_cell = read_positive_count(sc["atoms_per_cell"], "atoms_per_cell");
    } else if (kind_str == "continuous_fourier") {
        cfg.kind = ScenarioKind::continuous_fourier;
        cfg.n = read_positive_count(require_field(sc, "n", "scenario"), "n");
        cfg.n_atoms = read_positive_count(require_field(sc, "n_atoms", "scenario"), "n_atoms");
    } else if (kind_str == "random") {
        cfg.kind = ScenarioKind::random;
        cfg.n = read_positive_count(require_field(sc, "n", "scenario"), "n");
        cfg.n_atoms = read_positive_count(require_field(sc, "n_atoms", "scenario"), "n_atoms");
        if (sc.contains("fiber_dims")) {
            cfg.fiber_dims = read_list<std::size_t>(sc["fiber_dims"], "fiber_dims", read_positive_count);
        }
        if (sc.contains("weights")) cfg.weights = read_list<double>(sc["weights"], "weights", read_number);
        if (sc.contains("seed")) cfg.scenario_seed = read_count(sc["seed"], "scenario seed");
    } else if (kind_str == "explicit") {
        cfg.kind = ScenarioKind::explicit_family;
        cfg.family = require_field(sc, "family", "scenario");
    } else {
        throw ParseError("unknown scenario kind '" + kind_str + "'");
    }

    if (j.contains("K")) cfg.k = matrix_from_json(j["K"]);

    if (j.contains("requests")) {
        const Json& reqs = j["requests"];
        if (!reqs.is_array()) throw ParseError("requests: expected a list");
        for (const auto& r : reqs) {
            const Json& op = require_field(r, "op", "request");
            if (!op.is_string()) throw ParseError("request op must be a string");
            const auto name = op.get<std::string>();
            if (name != "bounds" && name != "verify" && name != "dual" && name != "theta" && name != "perturb" &&
                name != "refine") {
                throw ParseError("unknown request op '" + name + "'");
            }
            cfg.requests.push_back({name, r});
        }
    }

    if (j.contains("tolerance")) {
        const Json& t = j["tolerance"];
        if (!t.is_object()) throw ParseError("tolerance: expected an object");
        if (t.contains("rel_rank_cutoff")) cfg.tol.rel_rank_cutoff = read_number(t["rel_rank_cutoff"], "rel_rank_cutoff");
        if (t.contains("psd_slack")) cfg.tol.psd_slack = read_number(t["psd_slack"], "psd_slack");
        if (t.contains("residual_tol")) cfg.tol.residual_tol = read_number(t["residual_tol"], "residual_tol");
        try {
            cfg.tol.validate();
        } catch (const InvalidArgument& e) {
            throw InvalidConfig(e.what());
        }
    }
    if (j.contains("seed")) cfg.seed = read_count(j["seed"], "seed");
    if (j.contains("samples")) cfg.samples = read_count(j["samples"], "samples");
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path.string() + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

Scenario build_scenario(const ScenarioConfig& cfg) {
    Scenario sc = [&]() -> Scenario {
        switch (cfg.kind) {
            case ScenarioKind::paper_example:
                return build_paper_example(cfg.m, cfg.partition_measures, cfg.atoms_per_cell);
            case ScenarioKind::continuous_fourier:
                return build_continuous_fourier(cfg.n, cfg.n_atoms);
            case ScenarioKind::random: {
                OperatorFamily fam = build_random_frame(cfg.n, cfg.n_atoms, cfg.fiber_dims, cfg.scenario_seed, cfg.weights);
                return {fam, ComplexMatrix::identity(cfg.n)};
            }
            case ScenarioKind::explicit_family: {
                OperatorFamily fam = family_from_json(*cfg.family);
                const std::size_t n = fam.ambient_dim();
                return {std::move(fam), ComplexMatrix::identity(n)};
            }
        }
        throw InvalidConfig("unknown scenario kind");
    }();
    if (cfg.k) {
        if (cfg.k->rows() != sc.family.ambient_dim() || cfg.k->cols() != sc.family.ambient_dim()) {
            throw InvalidConfig("K must be " + std::to_string(sc.family.ambient_dim()) + "x" +
                                std::to_string(sc.family.ambient_dim()));
        }
        sc.k = *cfg.k;
    }
    return sc;
}

RunReport run(const ScenarioConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    Scenario scenario = build_scenario(cfg);

    RunReport report;
    Json& doc = report.document;
    doc["toolkit"] = "ckgframe";
    doc["version"] = kToolkitVersion;
    doc["kernels"] = kernels::active().name;
    doc["config"] = cfg.source;
    doc["effective"] = {{"seed", cfg.seed}, {"samples", cfg.samples}, {"tolerance", tolerance_json(cfg.tol)}};
    doc["scenario"] = {{"kind", kind_name(cfg.kind)},
                       {"ambient_dim", scenario.family.ambient_dim()},
                       {"atoms", scenario.family.size()},
                       {"K", to_json(scenario.k)}};

    Executor exec(cfg, std::move(scenario));
    Json results = Json::array();
    bool all_passed = true;
    for (const Request& req : cfg.requests) {
        Json entry = {{"op", req.op}};
        try {
            RequestResult r = exec.execute(req, report.csv);
            for (auto& [key, value] : r.body.items()) entry[key] = value;
            entry["passed"] = r.passed;
            all_passed = all_passed && r.passed;
        } catch (const InputError&) {
            throw;
        } catch (const Error& e) {
            entry["error"] = {{"type", error_type(e)}, {"message", e.what()}};
            entry["passed"] = false;
            all_passed = false;
        }
        results.push_back(std::move(entry));
    }
    doc["results"] = std::move(results);
    doc["success"] = all_passed;
    report.all_passed = all_passed;
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    doc["wall_clock_seconds"] = elapsed.count();
    return report;
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

RunReport run_config(const std::filesystem::path& config_path, const std::filesystem::path& report_path,
                     const std::optional<std::filesystem::path>& csv_path) {
    RunReport report = run(load_config(config_path));
    std::ofstream(report_path) << dump_report(report.document);
    if (csv_path) std::ofstream(*csv_path) << report.csv;
    return report;
}

}  // namespace ckg
