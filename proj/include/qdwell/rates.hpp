#ifndef QDWELL_RATES_HPP
#define QDWELL_RATES_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

#include "qdwell/bath.hpp"
#include "qdwell/dvr.hpp"

namespace qdwell {

/// Generator of the Markovian rate equation drho_mumu/dt = sum_nu G_munu rho_nunu.
/// Columns sum to zero by construction; off-diagonal entries are transition
/// rates nu -> mu and are nonnegative in the valid incoherent regime.
struct RateMatrix {
    Eigen::MatrixXd gamma_matrix;  // omega0

    // Negative off-diagonals beyond numerical noise signal the approximation
    // leaving its regime; they are recorded, never clipped.
    struct RegimeFlag {
        int mu, nu;
        double value;
    };
    std::vector<RegimeFlag> regime_flags;

    int size() const { return static_cast<int>(gamma_matrix.rows()); }
};

/// Second-order-in-coupling kernel for the nu -> mu transition,
///   H_munu(tau) = 2 Delta_munu^2 exp[-(q_mu - q_nu)^2 Q'(tau)]
///                 cos[eps_numu tau - (q_mu - q_nu)^2 Q''(tau)],
/// eps_numu = E_nunu - E_mumu, nonperturbative in the bath coupling.
double kernel(const DvrBasis& dvr, const BathCorrelation& bath, int mu, int nu, double tau);

struct RateOptions {
    double envelope_exponent = 28.0;  // integrate to (q diff)^2 gamma T tau = this
    double min_tau = 50.0;
    double panel_width_cap = 0.25;    // uniform panel length, shrunk for fast bias phases
    int log_panels = 80;              // log-spaced panels on tau in [1e-4, 1]
    double refine_rel_tol = 1e-8;     // grid-halving consistency requirement
    bool refine_check = true;
    std::size_t max_nodes = 8000000;
    // off-diagonals below -flag_floor * max|off-diagonal| raise a regime flag;
    // milder negatives are quadrature/cancellation noise around zero
    double flag_floor = 1e-14;
};

/// Gamma_munu = int_0^inf H_munu(tau) dtau on a composite Gauss grid shared by
/// all pairs (the bath correlation is evaluated once per node), truncated
/// where the pair's envelope falls below 1e-12 of its peak.  Diagonals close
/// each column to zero.  Throws QuadratureFailure if halving the panels moves
/// any entry beyond refine_rel_tol or the node budget is exhausted.
RateMatrix build_rate_matrix(const DvrBasis& dvr, const BathCorrelation& bath,
                             const RateOptions& options = {});

/// Advisory check of the incoherent-regime assumptions behind the kernel.
struct RegimeReport {
    bool temperature_below_validity = false;  // T < 0.1
    bool damping_below_moderate = false;      // gamma < 1
    std::vector<std::string> warnings;
    bool clean() const { return warnings.empty(); }
};
RegimeReport validate_regime(const BathParams& params);

} // namespace qdwell

#endif
