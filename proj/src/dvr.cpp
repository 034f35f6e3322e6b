#include "qdwell/dvr.hpp"
#include "qdwell/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qdwell {

DvrBasis build_dvr(const EigenSolution& sol, int m_levels, const PotentialGeometry& geom) {
    if (m_levels < 1 || m_levels > sol.n_levels())
        throw std::invalid_argument("m_levels must be in 1..n_levels");

    const double dx = sol.grid.spacing();
    const int m = m_levels;

    // Position operator in the truncated eigenbasis, by grid quadrature.
    Eigen::MatrixXd X(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b <= a; ++b) {
            const double v =
                (sol.wavefunctions.col(a).array() * sol.points.array() *
                 sol.wavefunctions.col(b).array())
                    .sum() *
                dx;
            X(a, b) = v;
            X(b, a) = v;
        }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X);  // ascending eigenvalues

    DvrBasis basis;
    basis.q_points = es.eigenvalues();
    basis.transform = es.eigenvectors();
    for (int c = 0; c < m; ++c) {
        int imax = 0;
        basis.transform.col(c).cwiseAbs().maxCoeff(&imax);
        if (basis.transform(imax, c) < 0.0) basis.transform.col(c) *= -1.0;
    }

    for (int c = 0; c < m; ++c) {
        const double q = basis.q_points(c);
        if (q < sol.grid.q_min || q > sol.grid.q_max) {
            std::ostringstream msg;
            msg << "DVR point q = " << q << " outside grid [" << sol.grid.q_min
                << ", " << sol.grid.q_max << "]";
            throw TruncationInconsistent(msg.str());
        }
    }

    Eigen::VectorXd energies(m);
    for (int k = 0; k < m; ++k) energies(k) = sol.energies[k];
    basis.hamiltonian =
        basis.transform.transpose() * energies.asDiagonal() * basis.transform;

    basis.partition = 0;
    basis.metastable_count = 0;
    for (int c = 0; c < m; ++c) {
        if (basis.q_points(c) < geom.q_exit) ++basis.partition;
        if (basis.q_points(c) < geom.q_barrier) ++basis.metastable_count;
    }
    return basis;
}

Eigen::VectorXd localized_density(const DvrBasis& basis, const EigenSolution& sol, int mu) {
    if (mu < 0 || mu >= basis.size())
        throw std::invalid_argument("DVR index out of range");
    const int m = basis.size();
    Eigen::VectorXd chi = Eigen::VectorXd::Zero(sol.points.size());
    for (int n = 0; n < m; ++n)
        chi += basis.transform(n, mu) * sol.wavefunctions.col(n);
    Eigen::VectorXd density = chi.array().square();
    density /= density.sum() * sol.grid.spacing();
    return density;
}

} // namespace qdwell
