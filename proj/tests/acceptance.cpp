/**
 * @file acceptance.cpp
 * @brief End-to-end acceptance run: every headline property is exercised at
 *        its stated tolerance, one pass/fail line per criterion.
 */
#include <chrono>
#include <functional>
#include <iostream>
#include <memory>

#include "sovlab/suites.hpp"

using namespace sovlab;

namespace {

struct Sessions {
    std::unique_ptr<LabSession> t0, t1, qdef, qconj;
    LabSession& get(const std::string& name) {
        auto make = [&](std::unique_ptr<LabSession>& slot) -> LabSession& {
            if (!slot) slot = std::make_unique<LabSession>(RunConfig::preset(name));
            return *slot;
        };
        if (name == "t0") return make(t0);
        if (name == "t1") return make(t1);
        if (name == "qdef") return make(qdef);
        return make(qconj);
    }
};

bool timed(int id, const std::string& title, double budget_s, const std::function<bool(std::string&)>& body) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget_s > 0 && secs > budget_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("runtime ") + std::to_string(secs) +
                  " s exceeds the target " + std::to_string(budget_s) + " s";
    }
    std::cout << "criterion " << id << (id < 10 ? " " : "") << " [" << (ok ? "PASS" : "FAIL") << "] "
              << std::fixed;
    std::cout.precision(1);
    std::cout << "(" << secs << " s)  " << title;
    if (!detail.empty()) std::cout << "  -- " << detail;
    std::cout << std::endl;
    return ok;
}

bool outcome_ok(const CheckOutcome& c, std::string& detail) {
    if (!c.ok) detail = c.name + ": " + c.detail;
    return c.ok;
}

}  // namespace

int main() {
    Sessions S;
    int failures = 0;
    auto crit = [&](int id, const std::string& title, double budget, const std::function<bool(std::string&)>& f) {
        if (!timed(id, title, budget, f)) ++failures;
    };

    crit(1, "exchange relation and commuting family, exact on both presets", 60.0, [&](std::string& d) {
        for (auto name : {"t0", "t1"}) {
            LabSession& s = S.get(name);
            if (!outcome_ok(check_rtt(s), d)) return false;
            if (!outcome_ok(check_transfer_commute(s), d)) return false;
        }
        return true;
    });

    crit(2, "full joint eigenbasis with the predicted spectrum, exact", 120.0, [&](std::string& d) {
        LabSession& s = S.get("t1");
        if (!outcome_ok(check_gt_basis(s), d)) return false;
        if (s.gt().covectors.size() != 64) {
            d = "expected 64 covectors";
            return false;
        }
        return true;
    });

    crit(3, "separating-operator eigenbasis: eigenvalue law, rank, spectral multiset", 600.0,
         [&](std::string& d) {
             LabSession& s = S.get("t1");
             if (!outcome_ok(check_sov_basis(s), d)) return false;
             if (s.sov().covectors.size() != 64) {
                 d = "expected 64 covectors";
                 return false;
             }
             return outcome_ok(check_b_spectral_multiset(s), d);
         });

    crit(4, "singular-limit continuity: off-components shrink within the stated window", 600.0,
         [&](std::string& d) { return outcome_ok(check_astl(S.get("t1")), d); });

    crit(5, "evaluation dichotomy: exact vanishing outside, invertibility inside", 600.0,
         [&](std::string& d) { return outcome_ok(check_appendix_a(S.get("t1")), d); });

    crit(6, "transfer-ratio identity equals the truncated Wronskian at 1e-25", 600.0, [&](std::string& d) {
        LabSession& s = S.get("t1");
        if (!outcome_ok(check_bethe_diag(s), d)) return false;
        return outcome_ok(check_backlund(s), d);
    });

    crit(7, "wave functions factorize into determinants of Baxter solutions at 1e-25", 1200.0,
         [&](std::string& d) {
             for (auto name : {"t0", "t1"}) {
                 LabSession& s = S.get(name);
                 if (!outcome_ok(check_bethe_diag(s), d)) return false;
                 if (!outcome_ok(check_wavefunction(s), d)) return false;
             }
             return true;
         });

    crit(8, "quantisation conditions reduce to inhomogeneity products at 1e-25", 1200.0, [&](std::string& d) {
        for (auto name : {"qdef", "qconj"}) {
            LabSession& s = S.get(name);
            if (!outcome_ok(check_bethe_diag(s), d)) return false;
            if (!outcome_ok(check_quantisation(s), d)) return false;
        }
        return true;
    });

    crit(9, "conjugate-momenta algebra, exact with sharp boundary vanishing", 600.0,
         [&](std::string& d) { return outcome_ok(check_momenta(S.get("t1")), d); });

    crit(10, "commuting-family evaluations generate the full basis from the vacuum", 600.0,
         [&](std::string& d) { return outcome_ok(check_maximality(S.get("t1")), d); });

    if (failures == 0)
        std::cout << "acceptance: all 10 criteria passed" << std::endl;
    else
        std::cout << "acceptance: " << failures << " criterion(s) FAILED" << std::endl;
    return failures == 0 ? 0 : 1;
}
