#ifndef QDWELL_SPECTRUM_HPP
#define QDWELL_SPECTRUM_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "qdwell/potential.hpp"

namespace qdwell {

/// Uniform position grid bracketing the well region.
struct GridConfig {
    double q_min = -8.0;
    double q_max = 8.0;
    int n_points = 1024;

    double spacing() const { return (q_max - q_min) / (n_points - 1); }
};

/// Default grid for a given well geometry: wide enough that all retained
/// eigenfunctions decay below 1e-8 at the edges for both paper-scale
/// configurations.
GridConfig default_grid(const PotentialGeometry& geom, int n_points = 1024);

/// Lowest eigenpairs of H = p^2/2 + V(q) on the grid.  Wavefunction columns
/// are orthonormal under the grid quadrature weight (sum psi_n psi_m dx =
/// delta_nm) and sign-fixed so the first entry with |psi| > 1e-6 is positive.
struct EigenSolution {
    GridConfig grid;
    Eigen::VectorXd points;          // grid positions
    std::vector<double> energies;    // ascending, hbar omega0
    Eigen::MatrixXd wavefunctions;   // n_points x n_levels

    int n_levels() const { return static_cast<int>(energies.size()); }
};

/// Sinc-DVR (Fourier grid) discretization: exact grid kinetic operator plus
/// diagonal potential, dense symmetric eigensolve.
///
/// With check_convergence set, re-solves on a doubled grid and throws
/// GridTooCoarse if any requested level moves by more than 1e-6.
EigenSolution solve_spectrum(const PotentialParams& params, const GridConfig& grid,
                             int n_levels, bool check_convergence = false);

/// Same solver for an arbitrary potential; used for self-checks against
/// exactly solvable cases.
EigenSolution solve_spectrum_of(const std::function<double(double)>& potential,
                                const GridConfig& grid, int n_levels,
                                bool check_convergence = false);

/// Consecutive gaps E_{n+1} - E_n.
std::vector<double> splittings(const EigenSolution& sol);

} // namespace qdwell

#endif
