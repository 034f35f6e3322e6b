#ifndef QDWELL_POTENTIAL_HPP
#define QDWELL_POTENTIAL_HPP

#include <string>

namespace qdwell {

/// Asymmetric quartic double well in natural units,
///   V(q) = q^4 / (64 dU) - q^2 / 4 - eps q,
/// with dU > 0 the barrier height of the symmetric part and eps >= 0 tilting
/// the right well down.
struct PotentialParams {
    double barrier_height = 1.4;  // hbar omega0
    double asymmetry = 0.0;       // sqrt(M hbar omega0^3)

    void validate() const;  // throws std::invalid_argument / DegeneratePotential
};

/// Stationary points and exit landmarks of the well, all positions in
/// sqrt(hbar/(M omega0)), energies in hbar omega0.
///
/// q_exit is the inflection point of V right of the barrier (the positive
/// root of V'' = 0, sqrt(8 dU / 3)); it separates the barrier region from
/// the stable-well region and defines the DVR partition downstream.
/// q_outer is the point beyond the right minimum where V climbs back to the
/// barrier-top energy.
struct PotentialGeometry {
    double q_left_min;
    double q_barrier;
    double q_right_min;
    double q_exit;
    double q_outer;
    double v_left_min;
    double v_barrier;
    double v_right_min;
};

double evaluate(const PotentialParams& params, double q);
double derivative(const PotentialParams& params, double q);
double curvature(const PotentialParams& params, double q);

/// True when V' = 0 has three distinct real roots (two minima present).
bool has_two_minima(const PotentialParams& params);

/// Locates minima, barrier top and exit landmarks to relative tolerance 1e-12.
/// Throws DegeneratePotential when the two-minima condition fails.
PotentialGeometry geometry(const PotentialParams& params);

} // namespace qdwell

#endif
