/**
 * @file config.hpp
 * @brief Run configuration: chain parameters, suite selection, precision,
 *        seed. JSON in, JSON out; exact rationals travel as strings.
 */
#pragma once

#include <string>
#include <vector>

#include "sovlab/chain.hpp"

namespace sovlab {

extern const std::vector<std::string> kAllSuites;  // dependency order

struct RunConfig {
    ChainSpec spec;
    std::vector<std::string> suites = kAllSuites;
    unsigned precision = 60;
    unsigned seed = 1;
    int jobs = 1;

    /// Parses the JSON document; throws std::invalid_argument with an
    /// actionable message on schema or genericness violations.
    static RunConfig from_json_text(const std::string& text);
    static RunConfig from_file(const std::string& path);
    /// Builtin presets: t0, t1, qdef, qconj.
    static RunConfig preset(const std::string& name);

    std::string to_json_text() const;
    bool wants(const std::string& suite) const;
};

}  // namespace sovlab
