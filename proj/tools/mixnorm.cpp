// mixnorm: command-line front end for the mixed-norm verification library.
//
// Exit codes: 0 success, 1 runtime failure (sampling, insufficient data,
// I/O), 2 unreadable or syntactically invalid config / bad invocation,
// 3 schema or value validation failure (diagnostics carry $.field paths).

#include <CLI11.hpp>

#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mixnorm/mixnorm.hpp"

namespace {

using namespace mixnorm;

struct Options {
    std::string config_path;
    std::string out_dir;
    std::size_t workers = 0; // 0: fall back to MIXNORM_WORKERS or hardware
    std::optional<std::uint64_t> seed_override;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(errc::config_parse, "cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) raise(errc::config_parse, "failed reading config file '" + path + "'");
    return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << body;
    out.flush();
    if (!out) raise(errc::invalid_argument, "cannot write output file '" + path.string() + "'");
}

std::string iso8601_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// The manifest records everything needed to reproduce a run; the timestamp
/// lives here and only here so data files stay byte-identical across reruns.
void write_manifest(const std::filesystem::path& dir, const ParsedConfig& parsed,
                    std::optional<std::uint64_t> master_seed, const std::vector<std::string>& outputs) {
    nlohmann::json m{{"experimentId", parsed.experiment_id},
                     {"configHash", cfgdetail::hash_hex(parsed.config_hash, 16)},
                     {"toolVersion", version},
                     {"timestamp", iso8601_utc_now()},
                     {"outputs", outputs}};
    if (master_seed) m["masterSeed"] = *master_seed;
    write_text(dir / "manifest.json", m.dump(2) + "\n");
}

std::vector<ConstantRow> constants_table(const ConstantsRequest& req) {
    std::vector<ConstantRow> rows;
    const std::string kr_name = req.symmetric ? "K_R_symmetric" : "K_R";
    for (const double p : req.p_values) rows.push_back({kr_name, p, rosenthal_bound(p, req.symmetric)});
    if (req.mixingale)
        for (const double m : req.mixingale->m_values)
            rows.push_back({"K_M", m, mixingale_coefficient(m, req.mixingale->schedule, req.mixingale->tol)});
    return rows;
}

int run_experiment_command(const std::string& mode, const Options& opt) {
    std::optional<ParsedConfig> parsed;
    std::optional<ExperimentConfig> cfg;
    std::optional<std::uint64_t> master_seed;
    std::vector<ConstantRow> constant_rows;

    // Phase 1: read, parse, assemble, validate.
    try {
        parsed = parse_config(read_file(opt.config_path));
        const std::size_t workers = opt.workers != 0 ? opt.workers : default_worker_count();
        if (mode == "norm") {
            if (!parsed->grid) raise(errc::validation, "missing required section at $.grid");
            if (!parsed->exponents) raise(errc::validation, "missing required key at $.exponents.p");
            if (!parsed->field) raise(errc::validation, "missing required section at $.field");
            if (parsed->exponents->size() != parsed->grid->rank())
                raise(errc::dimension_mismatch,
                      "$.exponents.p: " + std::to_string(parsed->exponents->size()) + " components for " +
                          std::to_string(parsed->grid->rank()) + " grid axes");
        } else if (mode == "constants") {
            if (!parsed->constants) raise(errc::validation, "missing required section at $.constants");
            constant_rows = constants_table(*parsed->constants);
        } else {
            cfg = to_experiment_config(*parsed, workers, opt.seed_override);
            master_seed = cfg->seed.master_seed;
            if (mode == "sobolev" && !cfg->op) raise(errc::validation, "missing required section at $.operator");
            if (mode == "tails" && !cfg->tail)
                raise(errc::tail_spec_missing, "missing required section at $.tail");
        }
    } catch (const Error& e) {
        std::cerr << "mixnorm: " << e.what() << '\n';
        return e.code() == errc::config_parse ? 2 : 3;
    }

    // Phase 2: run and write outputs.
    try {
        std::string csv_name, csv_body;
        if (mode == "norm") {
            csv_name = "norm.csv";
            csv_body = norm_csv(parsed->experiment_id, mixed_norm(*parsed->field, *parsed->exponents));
        } else if (mode == "constants") {
            csv_name = "constants.csv";
            csv_body = constants_csv(parsed->experiment_id, constant_rows);
        } else if (mode == "moments") {
            csv_name = "verification.csv";
            csv_body = verification_csv(parsed->experiment_id, check_moment_bound(*cfg));
        } else if (mode == "sobolev") {
            csv_name = "verification.csv";
            csv_body = verification_csv(parsed->experiment_id, check_sobolev_bound(*cfg));
        } else if (mode == "clt") {
            csv_name = "clt.csv";
            csv_body = clt_csv(parsed->experiment_id, clt_convergence_test(*cfg));
        } else { // tails
            std::vector<TailProbe> probes;
            probes.reserve(cfg->n_schedule.size());
            for (const std::size_t n : cfg->n_schedule) probes.push_back(tail_probe(*cfg, n));
            csv_name = "tails.csv";
            csv_body = tail_csv(parsed->experiment_id, probes);
        }

        const std::filesystem::path dir(opt.out_dir);
        std::filesystem::create_directories(dir);
        write_text(dir / csv_name, csv_body);
        write_manifest(dir, *parsed, master_seed, {csv_name});
        std::cout << parsed->experiment_id << ": wrote " << (dir / csv_name).string() << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "mixnorm: " << e.what() << '\n';
        return 1;
    }
}

int run_selftest(const std::string& level, std::size_t workers_opt) {
    const std::size_t workers = workers_opt != 0 ? workers_opt : default_worker_count();
    std::vector<CheckResult> results;
    try {
        results = level == "full" ? selfcheck::run_acceptance_checks(workers) : selfcheck::run_quick_checks();
    } catch (const std::exception& e) {
        std::cerr << "mixnorm: selftest aborted: " << e.what() << '\n';
        return 1;
    }
    bool all = true;
    for (const CheckResult& r : results) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
        if (!r.detail.empty()) std::cout << " [" << r.detail << "]";
        std::cout << '\n';
        all &= r.pass;
    }
    std::cout << (all ? "selftest: all checks passed" : "selftest: FAILURES") << '\n';
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixed-norm toolkit: anisotropic norms, bound constants, and Monte Carlo verification"};
    app.require_subcommand(1);

    Options opt;
    std::string selftest_level = "quick";

    const std::vector<std::pair<const char*, const char*>> modes = {
        {"norm", "evaluate the mixed norm of a static field"},
        {"constants", "tabulate Rosenthal and mixingale constants"},
        {"clt", "KS test of |S_n|_p against the Gaussian-limit distribution"},
        {"moments", "verify the moment bound over the n schedule"},
        {"tails", "tail shape-dominance probe over the n schedule"},
        {"sobolev", "verify the operator-augmented moment bound"},
    };
    for (const auto& [name, desc] : modes) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", opt.config_path, "JSON config file")->required();
        sub->add_option("--out", opt.out_dir, "output directory (created if absent)")->required();
        sub->add_option("--workers", opt.workers, "worker threads (default: MIXNORM_WORKERS or hardware)");
        sub->add_option("--seed-override", opt.seed_override, "replace the config masterSeed for this run");
    }

    CLI::App* st = app.add_subcommand("selftest", "built-in checks: quick analytic oracles or the full acceptance suite");
    st->add_option("level", selftest_level, "quick|full")->check(CLI::IsMember({"quick", "full"}));
    st->add_option("--workers", opt.workers, "worker threads (default: MIXNORM_WORKERS or hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (app.got_subcommand("selftest")) return run_selftest(selftest_level, opt.workers);
    for (const auto& [name, desc] : modes)
        if (app.got_subcommand(name)) return run_experiment_command(name, opt);
    return 2;
}
