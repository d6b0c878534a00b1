/**
 * @file report.hpp
 * @brief Machine-readable results of a verification run. A report is
 *        reproducible byte-for-byte given (config, seed) apart from the
 *        timing fields.
 */
#pragma once

#include <string>
#include <vector>

#include "sovlab/betheq.hpp"
#include "sovlab/config.hpp"
#include "sovlab/sovcore.hpp"

namespace sovlab {

struct CheckOutcome {
    std::string name;     // stable identifier of the identity being checked
    std::string anchor;   // short slug for what the identity says
    bool exact = true;    // exact rational check vs numeric at tolerance
    bool ok = false;
    std::string worst_residual = "0";  // decimal string; "0" for exact passes
    std::string detail;
    double wall_ms = 0;

    std::string status() const { return ok ? (exact ? "exact-pass" : "pass-at-tolerance") : "fail"; }
};

struct SuiteReport {
    std::string suite;
    bool ok = true;
    double wall_ms = 0;
    std::vector<CheckOutcome> checks;

    void add(CheckOutcome c) {
        ok = ok && c.ok;
        wall_ms += c.wall_ms;
        checks.push_back(std::move(c));
    }
};

struct SpectralReport {
    int schema_version = 1;
    std::string config_json;
    unsigned seed = 0;
    unsigned precision = 0;
    bool all_ok = true;
    std::vector<SuiteReport> suites;

    void add(SuiteReport s) {
        all_ok = all_ok && s.ok;
        suites.push_back(std::move(s));
    }

    std::string to_json_text(bool include_timings = true) const;
    void write_file(const std::string& path, bool include_timings = true) const;
};

/**
 * Covector-basis export: per tuple, the pattern (nested rows, top first),
 * the separated coordinates, and the covector components as exact rational
 * strings (both unscaled and rescaled when available).
 */
std::string sov_basis_json(const Chain& chain, const SovBasis& basis);

/// Per-state records: eigenvalue-polynomial coefficients, Baxter solutions
/// (twist index, degree, coefficients as decimal strings), residuals.
std::string bethe_states_json(const BetheLab& lab);

}  // namespace sovlab
