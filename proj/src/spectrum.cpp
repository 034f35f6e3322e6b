#include "qdwell/spectrum.hpp"
#include "qdwell/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qdwell {

GridConfig default_grid(const PotentialGeometry& geom, int n_points) {
    GridConfig g;
    g.q_min = geom.q_left_min - 6.0;
    g.q_max = geom.q_outer + 4.0;
    g.n_points = n_points;
    return g;
}

namespace {

EigenSolution solve_once(const std::function<double(double)>& potential,
                         const GridConfig& grid, int n_levels) {
    const int n = grid.n_points;
    const double dx = grid.spacing();

    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = grid.q_min + i * dx;

    // Colbert-Miller sinc-DVR kinetic operator on the infinite line:
    //   T_ii = pi^2 / (6 dx^2),  T_ij = (-1)^(i-j) / (dx^2 (i-j)^2)
    Eigen::MatrixXd H(n, n);
    const double k0 = 1.0 / (dx * dx);
    for (int i = 0; i < n; ++i) {
        H(i, i) = k0 * M_PI * M_PI / 6.0 + potential(x(i));
        for (int j = 0; j < i; ++j) {
            const int d = i - j;
            const double t = k0 * ((d % 2 == 0) ? 1.0 : -1.0) / (double(d) * double(d));
            H(i, j) = t;
            H(j, i) = t;
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("dense symmetric eigensolve failed");

    EigenSolution sol;
    sol.grid = grid;
    sol.points = x;
    sol.energies.resize(n_levels);
    sol.wavefunctions.resize(n, n_levels);
    const double inv_sqrt_dx = 1.0 / std::sqrt(dx);
    for (int k = 0; k < n_levels; ++k) {
        sol.energies[k] = es.eigenvalues()(k);
        Eigen::VectorXd psi = es.eigenvectors().col(k) * inv_sqrt_dx;
        for (int i = 0; i < n; ++i) {
            if (std::abs(psi(i)) > 1e-6) {
                if (psi(i) < 0.0) psi = -psi;
                break;
            }
        }
        sol.wavefunctions.col(k) = psi;
    }
    return sol;
}

} // namespace

EigenSolution solve_spectrum_of(const std::function<double(double)>& potential,
                                const GridConfig& grid, int n_levels,
                                bool check_convergence) {
    if (n_levels < 1 || n_levels > 16)
        throw std::invalid_argument("n_levels must be in 1..16");
    if (grid.n_points < 2 * n_levels)
        throw std::invalid_argument("grid too small for requested levels");

    EigenSolution sol = solve_once(potential, grid, n_levels);

    if (check_convergence) {
        GridConfig fine = grid;
        fine.n_points = 2 * grid.n_points;
        EigenSolution ref = solve_once(potential, fine, n_levels);
        for (int k = 0; k < n_levels; ++k) {
            const double shift = std::abs(ref.energies[k] - sol.energies[k]);
            if (shift > 1e-6) {
                std::ostringstream msg;
                msg << "level " << (k + 1) << " shifts by " << shift
                    << " when doubling n_points from " << grid.n_points;
                throw GridTooCoarse(msg.str());
            }
        }
    }
    return sol;
}

EigenSolution solve_spectrum(const PotentialParams& params, const GridConfig& grid,
                             int n_levels, bool check_convergence) {
    params.validate();
    return solve_spectrum_of([&params](double q) { return evaluate(params, q); },
                             grid, n_levels, check_convergence);
}

std::vector<double> splittings(const EigenSolution& sol) {
    if (sol.n_levels() < 2)
        throw std::invalid_argument("need at least two levels for splittings");
    std::vector<double> gaps(sol.energies.size() - 1);
    for (std::size_t i = 0; i + 1 < sol.energies.size(); ++i)
        gaps[i] = sol.energies[i + 1] - sol.energies[i];
    return gaps;
}

} // namespace qdwell
