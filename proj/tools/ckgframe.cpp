// ckgframe: command-line front end for the c-K-g-frame toolkit.
//
// Exit status: 0 success, 1 a verification failed or a request errored, 2 input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ckg/errors.hpp"
#include "ckg/runner.hpp"

namespace {

struct CommonOptions {
    std::string config;
    std::string out;
    std::string csv;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool config_required) {
    auto* cfg = cmd->add_option("--config", o.config, "Scenario config file (JSON)");
    if (config_required) cfg->required();
    cmd->add_option("--out", o.out, "Write the JSON report here (default: stdout)");
    cmd->add_option("--csv", o.csv, "Write refinement curves here");
    cmd->add_option("--tol", o.tol, "Residual tolerance override");
    cmd->add_option("--seed", o.seed, "Sampling seed override");
    cmd->add_option("--samples", o.samples, "Number of random sample pairs for perturbation checks");
}

void apply_overrides(ckg::ScenarioConfig& cfg, const CommonOptions& o) {
    if (o.tol) {
        cfg.tol.residual_tol = *o.tol;
        try {
            cfg.tol.validate();
        } catch (const ckg::InvalidArgument& e) {
            throw ckg::InvalidConfig(e.what());
        }
    }
    if (o.seed) cfg.seed = *o.seed;
    if (o.samples) cfg.samples = *o.samples;
}

int emit(const ckg::RunReport& report, const CommonOptions& o) {
    const std::string text = ckg::dump_report(report.document);
    if (o.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(o.out);
        if (!out) throw ckg::InputError("cannot write report to '" + o.out + "'");
        out << text;
    }
    if (!o.csv.empty()) {
        std::ofstream csv(o.csv);
        if (!csv) throw ckg::InputError("cannot write CSV to '" + o.csv + "'");
        csv << report.csv;
    }
    return report.exit_code();
}

// Keeps the config's requests of kind `op`, or runs a single default one.
void restrict_requests(ckg::ScenarioConfig& cfg, const std::string& op, ckg::Json default_params) {
    std::vector<ckg::Request> kept;
    for (const auto& r : cfg.requests) {
        if (r.op == op) kept.push_back(r);
    }
    if (kept.empty()) {
        default_params["op"] = op;
        kept.push_back({op, std::move(default_params)});
    }
    cfg.requests = std::move(kept);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous K-g-frame toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("ckgframe ") + ckg::kToolkitVersion);

    CommonOptions run_opts, op_opts, paper_opts;

    auto* run_cmd = app.add_subcommand("run", "Execute every request in a config file");
    add_common(run_cmd, run_opts, true);

    struct OpCommand {
        const char* name;
        const char* help;
        CLI::App* cmd = nullptr;
    };
    std::vector<OpCommand> op_cmds{{"bounds", "Optimal lower/upper bounds"},
                                   {"verify", "Verify claimed bounds"},
                                   {"dual", "Douglas-factor dual family"},
                                   {"theta", "Reconstruction dual on R(K)"},
                                   {"perturb", "Perturbation check"},
                                   {"refine", "Refinement / quadrature study"}};
    std::vector<double> claimed;
    double delta = 0.1;
    std::vector<std::size_t> n_atoms;
    std::vector<std::size_t> factors;
    for (auto& oc : op_cmds) {
        oc.cmd = app.add_subcommand(oc.name, oc.help);
        add_common(oc.cmd, op_opts, true);
    }
    op_cmds[1].cmd->add_option("--claimed", claimed, "Claimed bounds A B")->expected(2);
    op_cmds[4].cmd->add_option("--delta", delta, "Scalar perturbation: Gamma = (1 - delta) Lambda");
    op_cmds[5].cmd->add_option("--n-atoms", n_atoms, "Atom counts (continuous_fourier)");
    op_cmds[5].cmd->add_option("--factors", factors, "Atom splitting factors");

    std::size_t paper_m = 8;
    auto* paper_cmd = app.add_subcommand("paper-example", "Run the standard checks on the K-frame example");
    add_common(paper_cmd, paper_opts, false);
    paper_cmd->add_option("--m", paper_m, "Number of pairs (dimension 2m)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run_cmd->parsed()) {
            ckg::ScenarioConfig cfg = ckg::load_config(run_opts.config);
            apply_overrides(cfg, run_opts);
            return emit(ckg::run(cfg), run_opts);
        }
        if (paper_cmd->parsed()) {
            ckg::Json j = {{"scenario", {{"kind", "paper_example"}, {"m", paper_m}}},
                           {"requests",
                            {{{"op", "bounds"}},
                             {{"op", "verify"}, {"claimed", {1, 4}}},
                             {{"op", "dual"}},
                             {{"op", "theta"}},
                             {{"op", "perturb"}, {"delta", 0.1}}}}};
            if (!paper_opts.config.empty()) {
                j = ckg::load_config(paper_opts.config).source;
            }
            ckg::ScenarioConfig cfg = ckg::parse_config(j);
            apply_overrides(cfg, paper_opts);
            return emit(ckg::run(cfg), paper_opts);
        }
        for (auto& oc : op_cmds) {
            if (!oc.cmd->parsed()) continue;
            ckg::ScenarioConfig cfg = ckg::load_config(op_opts.config);
            apply_overrides(cfg, op_opts);
            ckg::Json params = ckg::Json::object();
            const std::string op = oc.name;
            if (op == "verify" && claimed.size() == 2) {
                params["claimed"] = {claimed[0], claimed[1]};
                cfg.requests.clear();
            }
            if (op == "perturb" && oc.cmd->count("--delta") > 0) {
                params["delta"] = delta;
                cfg.requests.clear();
            } else if (op == "perturb") {
                params["delta"] = delta;
            }
            if (op == "refine" && !n_atoms.empty()) {
                params["n_atoms"] = n_atoms;
                cfg.requests.clear();
            }
            if (op == "refine" && !factors.empty()) {
                params["factors"] = factors;
                cfg.requests.clear();
            }
            restrict_requests(cfg, op, params);
            return emit(ckg::run(cfg), op_opts);
        }
    } catch (const ckg::InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const ckg::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
