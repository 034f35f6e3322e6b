#ifndef QDWELL_DYNAMICS_HPP
#define QDWELL_DYNAMICS_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "qdwell/rates.hpp"

namespace qdwell {

struct PopulationTrajectory {
    std::vector<double> times;                // ascending, 1/omega0
    std::vector<Eigen::VectorXd> populations; // rho_mumu(t), sums to 1
};

/// Escape diagnostics for one generator and initial condition.  escape_time
/// is empty when the stationary right population never reaches the threshold
/// (NotReached); the stationary value is always reported.
struct EscapeResult {
    std::optional<double> escape_time;  // 1/omega0
    double relaxation_time = 0.0;
    double threshold = 0.95;
    double metastable_peak = 0.0;       // max_t of the metastable-well population
    double stationary_pright = 0.0;
};

/// rho(t) = exp(Gamma t) rho0 sampled on a log-spaced grid of n_samples points
/// in (0, horizon].  Uses the eigendecomposition of Gamma when its eigenvector
/// condition number is below 1e8, otherwise a scaling-and-squaring matrix
/// exponential per sample; IllConditionedGenerator if neither reproduces the
/// identity at t = 0 within 1e-8.
PopulationTrajectory evolve(const RateMatrix& rm, const Eigen::VectorXd& rho0,
                            double horizon, int n_samples);

/// Per-time cumulative population of states right of the partition.
std::vector<double> right_population(const PopulationTrajectory& traj, int partition);

struct EscapeOptions {
    int metastable_count = 0;     // states counted in metastable_peak
    int bracket_points = 600;     // coarse log grid used for bracketing
    double horizon_factor = 1e4;  // horizon = factor * tau_relax, capped
    double horizon_cap = 1e9;
    double rel_tol = 1e-6;        // bisection tolerance on the crossing time
};

/// First time P_right(t) >= threshold: coarse log-grid bracketing, then
/// bisection to rel_tol.  NotReached (empty escape_time) when the stationary
/// P_right from the null eigenvector stays below the threshold or the horizon
/// is exhausted.
EscapeResult escape_time(const RateMatrix& rm, const Eigen::VectorXd& rho0,
                         int partition, double threshold,
                         const EscapeOptions& options = {});

/// 1/|Lambda_1| with Lambda_1 the smallest-magnitude eigenvalue above the
/// zero-mode cutoff 1e-10; DegenerateSpectrum if the conserved mode is not
/// unique (disconnected state space).
double relaxation_time(const RateMatrix& rm);

/// Normalized null right-eigenvector of Gamma (the stationary distribution).
Eigen::VectorXd stationary_distribution(const RateMatrix& rm);

} // namespace qdwell

#endif
