/**
 * @file sovlab.cpp
 * @brief Command-line driver: configure a chain, run verification suites,
 *        emit a machine-readable report.
 */
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "sovlab/report.hpp"
#include "sovlab/suites.hpp"

using namespace sovlab;

namespace {

RunConfig load_config(const std::string& config_path, const std::string& preset_name) {
    if (!config_path.empty() && !preset_name.empty())
        throw std::invalid_argument("give either --config or --preset, not both");
    if (!config_path.empty()) return RunConfig::from_file(config_path);
    if (!preset_name.empty()) return RunConfig::preset(preset_name);
    throw std::invalid_argument("need --config <file> or --preset <name>");
}

int run_command(const std::string& config_path, const std::string& preset_name,
                const std::vector<std::string>& suite_filter, unsigned precision, unsigned seed, int jobs,
                const std::string& out_path, bool strip_timings, const std::string& cache_dir,
                const std::string& export_sov, const std::string& export_states) {
    RunConfig cfg = load_config(config_path, preset_name);
    if (precision) cfg.precision = precision;
    if (seed) cfg.seed = seed;
    if (jobs) cfg.jobs = jobs;
    if (!suite_filter.empty()) {
        std::vector<std::string> chosen;
        for (const auto& name : kAllSuites)
            for (const auto& f : suite_filter)
                if (f == name) chosen.push_back(name);
        if (chosen.size() != suite_filter.size())
            throw std::invalid_argument("unknown suite in --suite (known: yangian gt bop sov appendixA appendixB bethe)");
        cfg.suites = chosen;
    }
    cfg.spec.validate(cfg.wants("bethe") || !export_states.empty());

    LabSession session(cfg);
    if (!cache_dir.empty()) session.set_cache_dir(cache_dir);
    // Pre-build shared layers sequentially so suites can run concurrently.
    bool needs_gt = cfg.wants("gt") || cfg.wants("sov") || cfg.wants("appendixB");
    bool needs_sov = cfg.wants("bop") || cfg.wants("sov") || cfg.wants("appendixB") || cfg.wants("bethe");
    if (needs_gt) session.gt();
    if (needs_sov) {
        session.b_op();
        session.sov();
    }
    if (cfg.wants("bethe")) session.bethe();

    std::vector<SuiteReport> results(cfg.suites.size());
    int workers = std::max(1, cfg.jobs);
    std::size_t next = 0;
    std::mutex mu;
    auto worker = [&]() {
        for (;;) {
            std::size_t idx;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= cfg.suites.size()) return;
                idx = next++;
            }
            results[idx] = run_suite(session, cfg.suites[idx]);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    SpectralReport report;
    report.config_json = cfg.to_json_text();
    report.seed = cfg.seed;
    report.precision = cfg.precision;
    for (auto& r : results) report.add(std::move(r));

    for (const auto& sr : report.suites) {
        std::cout << (sr.ok ? "[pass] " : "[FAIL] ") << sr.suite << "  (" << (long)sr.wall_ms << " ms)\n";
        for (const auto& ck : sr.checks) {
            std::cout << "    " << (ck.ok ? "ok   " : "FAIL ") << ck.name << "  [" << ck.status() << "]"
                      << (ck.worst_residual != "0" ? "  residual " + ck.worst_residual : "");
            if (!ck.detail.empty()) std::cout << "  - " << ck.detail;
            std::cout << "\n";
        }
    }
    if (!out_path.empty()) {
        report.write_file(out_path, !strip_timings);
        std::cout << "report written to " << out_path << "\n";
    }
    if (!export_sov.empty()) {
        SovBasis& basis = session.sov();
        if (basis.rescaled.empty()) {
            GammaLattice gl = build_gamma_lattice(cfg.spec);
            rescale_to_x(basis, gl);
        }
        std::ofstream out(export_sov);
        if (!out) throw std::runtime_error("cannot open " + export_sov);
        out << sov_basis_json(session.chain(), basis);
        std::cout << "covector basis written to " << export_sov << "\n";
    }
    if (!export_states.empty()) {
        BetheLab& lab = session.bethe();
        for (auto& st : lab.states())
            for (int i = 1; i <= cfg.spec.n; ++i)
                if ((int)st.qhat.size() < i || st.qhat[(std::size_t)i - 1].p.is_zero()) lab.solve_baxter(st, i);
        std::ofstream out(export_states);
        if (!out) throw std::runtime_error("cannot open " + export_states);
        out << bethe_states_json(lab);
        std::cout << "state records written to " << export_states << "\n";
    }
    return report.all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sovlab: exact-arithmetic laboratory for separated variables on rational spin chains"};
    app.require_subcommand(1);

    std::string config_path, preset_name, out_path, cache_dir, export_sov, export_states;
    std::vector<std::string> suite_filter;
    unsigned precision = 0, seed = 0;
    int jobs = 0;
    bool strip_timings = false;

    CLI::App* run = app.add_subcommand("run", "run verification suites and write a JSON report");
    run->add_option("--config", config_path, "JSON configuration file");
    run->add_option("--preset", preset_name, "builtin preset: t0, t1, qdef, qconj");
    run->add_option("--suite", suite_filter, "suite name (repeatable); default: all");
    run->add_option("--precision", precision, "numeric precision in decimal digits (default from config)");
    run->add_option("--seed", seed, "seed for sampled points and combinations");
    run->add_option("--jobs", jobs, "max concurrent suites");
    run->add_option("--out", out_path, "path of the JSON report");
    run->add_option("--cache-dir", cache_dir, "directory for the covector-basis cache");
    run->add_option("--export-sov", export_sov, "write the covector basis (patterns, coordinates, components) as JSON");
    run->add_option("--export-states", export_states, "write per-state eigenvalue and Baxter records as JSON");
    run->add_flag("--no-timings", strip_timings, "omit wall-time fields (byte-reproducible output)");

    CLI::App* describe = app.add_subcommand("describe", "print dimensions and cost estimates for a configuration");
    describe->add_option("--config", config_path, "JSON configuration file");
    describe->add_option("--preset", preset_name, "builtin preset: t0, t1, qdef, qconj");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return run_command(config_path, preset_name, suite_filter, precision, seed, jobs, out_path,
                               strip_timings, cache_dir, export_sov, export_states);
        if (describe->parsed()) {
            RunConfig cfg = load_config(config_path, preset_name);
            std::cout << describe_config(cfg);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
