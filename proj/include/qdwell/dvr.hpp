#ifndef QDWELL_DVR_HPP
#define QDWELL_DVR_HPP

#include <Eigen/Dense>

#include "qdwell/potential.hpp"
#include "qdwell/spectrum.hpp"

namespace qdwell {

/// Discrete variable representation over the truncated eigenbasis: localized
/// states |q_mu> with ascending position eigenvalues, the orthogonal
/// energy->DVR transform, and the DVR Hamiltonian (diagonal energies E_mumu
/// plus symmetric couplings Delta_munu = <q_mu|H0|q_nu>).
struct DvrBasis {
    Eigen::VectorXd q_points;     // ascending
    Eigen::MatrixXd transform;    // U, columns are DVR states in the energy basis
    Eigen::MatrixXd hamiltonian;  // U^T diag(E) U

    // Number of DVR states on the metastable side of the barrier exit point
    // q_exit; states with index >= partition (0-based) belong to the stable
    // right well.  Equals 3 for the 6-level and 4 for the 8-level paper
    // configuration.
    int partition = 0;

    // Number of states localized left of the barrier top (the metastable well
    // proper, e.g. |q_1>, |q_2>).
    int metastable_count = 0;

    int size() const { return static_cast<int>(q_points.size()); }
    double dvr_energy(int mu) const { return hamiltonian(mu, mu); }
    double coupling(int mu, int nu) const { return hamiltonian(mu, nu); }
};

/// Diagonalizes the position operator in the lowest m_levels eigenstates.
/// DVR column signs are fixed so each column's largest-magnitude entry is
/// positive; throws TruncationInconsistent if a q_mu falls outside the grid.
DvrBasis build_dvr(const EigenSolution& sol, int m_levels, const PotentialGeometry& geom);

/// |<x|q_mu>|^2 on the grid, normalized to one under grid quadrature.
Eigen::VectorXd localized_density(const DvrBasis& basis, const EigenSolution& sol, int mu);

} // namespace qdwell

#endif
