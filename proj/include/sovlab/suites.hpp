/**
 * @file suites.hpp
 * @brief Verification suites over a shared session. Suites are built in
 *        dependency order (yangian -> gt -> bop/sov -> bethe); the session
 *        constructs each layer at most once.
 */
#pragma once

#include <memory>
#include <optional>

#include "sovlab/betheq.hpp"
#include "sovlab/config.hpp"
#include "sovlab/report.hpp"
#include "sovlab/sovcore.hpp"

namespace sovlab {

class LabSession {
  public:
    explicit LabSession(RunConfig cfg);

    const RunConfig& cfg() const { return cfg_; }
    const Policy& policy() const { return pol_; }
    const Chain& chain() const { return *chain_; }
    const Monodromy& mon() const { return *mon_; }
    const Mat<Rat>& mct() const { return mct_; }

    const GTBasis& gt();
    const PolyOp<Rat>& b_op();
    SovBasis& sov();
    BetheLab& bethe();
    /// Seeded rational sample points, distinct, kept away from the theta lattice.
    std::vector<Rat> sample_points(std::size_t count, unsigned salt = 0) const;
    /// When set before gt() is first called, the basis is loaded from / saved
    /// to <dir>/gtbasis-<config hash>.txt.
    void set_cache_dir(std::string dir) { cache_dir_ = std::move(dir); }
    /// Nonempty when sov() had to re-randomize the auxiliary parameters.
    const std::string& sov_note() const { return sov_note_; }

  private:
    std::string sov_note_;
    RunConfig cfg_;
    Policy pol_;
    std::unique_ptr<Chain> chain_;
    std::unique_ptr<Monodromy> mon_;
    Mat<Rat> mct_;
    std::string cache_dir_;
    std::optional<GTBasis> gt_;
    std::optional<PolyOp<Rat>> b_;
    std::optional<SovBasis> sov_;
    std::unique_ptr<BetheLab> bethe_;
    CheckReport bethe_diag_report_;
    friend CheckOutcome check_bethe_diag(LabSession&);
};

// ---- exact checks (suites_exact.cpp)
CheckOutcome check_rtt(LabSession&);
CheckOutcome check_transfer_commute(LabSession&);
CheckOutcome check_gl_covariance(LabSession&);
CheckOutcome check_talalaev(LabSession&);
CheckOutcome check_gt_basis(LabSession&);
CheckOutcome check_gt_lowering(LabSession&);
CheckOutcome check_psi_phi(LabSession&);
CheckOutcome check_minor_commutativity(LabSession&);
CheckOutcome check_shortening(LabSession&);
CheckOutcome check_b_build(LabSession&);
CheckOutcome check_b_z_independence(LabSession&);
CheckOutcome check_b_restriction(LabSession&);
CheckOutcome check_sov_basis(LabSession&);
CheckOutcome check_b_spectral_multiset(LabSession&);
CheckOutcome check_astl(LabSession&);
CheckOutcome check_intertwining(LabSession&);
CheckOutcome check_admissibility(LabSession&);
CheckOutcome check_factorisation(LabSession&);
CheckOutcome check_momenta(LabSession&);
CheckOutcome check_maximality(LabSession&);
CheckOutcome check_appendix_a(LabSession&);

// ---- numeric checks (suites_numeric.cpp)
CheckOutcome check_bethe_diag(LabSession&);
CheckOutcome check_baxter(LabSession&);
CheckOutcome check_qq(LabSession&);
CheckOutcome check_wronskian_tau(LabSession&);
CheckOutcome check_vanishing_eigen(LabSession&);
CheckOutcome check_tableau_wronskian(LabSession&);
CheckOutcome check_backlund(LabSession&);
CheckOutcome check_wavefunction(LabSession&);
CheckOutcome check_quantisation(LabSession&);
CheckOutcome check_sigma_independence(LabSession&);

SuiteReport run_suite(LabSession&, const std::string& name);

/// Hilbert dimension, per-site pattern counts, operator degrees, cost notes.
std::string describe_config(const RunConfig&);

}  // namespace sovlab
