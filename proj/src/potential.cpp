#include "qdwell/potential.hpp"
#include "qdwell/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdwell {

void PotentialParams::validate() const {
    if (!(barrier_height > 0.0))
        throw std::invalid_argument("barrier_height must be positive");
    if (!(asymmetry >= 0.0))
        throw std::invalid_argument("asymmetry must be nonnegative");
    if (!has_two_minima(*this))
        throw DegeneratePotential("asymmetry too large: potential has a single minimum");
}

double evaluate(const PotentialParams& p, double q) {
    const double q2 = q * q;
    return q2 * q2 / (64.0 * p.barrier_height) - 0.25 * q2 - p.asymmetry * q;
}

double derivative(const PotentialParams& p, double q) {
    return q * q * q / (16.0 * p.barrier_height) - 0.5 * q - p.asymmetry;
}

double curvature(const PotentialParams& p, double q) {
    return 3.0 * q * q / (16.0 * p.barrier_height) - 0.5;
}

// V'(q) = 0  <=>  q^3 + a q + b = 0 with a = -8 dU, b = -16 dU eps.
bool has_two_minima(const PotentialParams& p) {
    const double a = -8.0 * p.barrier_height;
    const double b = -16.0 * p.barrier_height * p.asymmetry;
    return -4.0 * a * a * a - 27.0 * b * b > 0.0;
}

namespace {

double newton_polish(const PotentialParams& p, double q) {
    for (int it = 0; it < 60; ++it) {
        const double f = derivative(p, q);
        const double fp = curvature(p, q);
        const double dq = f / fp;
        q -= dq;
        if (std::abs(dq) <= 1e-14 * std::max(1.0, std::abs(q))) break;
    }
    return q;
}

// First q > q_start with V(q) = level, bracketing then bisection.
double crossing_right_of(const PotentialParams& p, double q_start, double level) {
    double lo = q_start + 1e-9;
    double f_lo = evaluate(p, lo) - level;
    double hi = lo;
    double step = 0.05;
    for (;;) {
        hi = lo + step;
        const double f_hi = evaluate(p, hi) - level;
        if (f_lo * f_hi <= 0.0) break;
        lo = hi;
        f_lo = f_hi;
        if (hi > 1e3)
            throw std::logic_error("level crossing not found right of barrier");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = evaluate(p, mid) - level;
        if (f_lo * fm <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            f_lo = fm;
        }
        if (hi - lo < 1e-13 * std::max(1.0, std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace

PotentialGeometry geometry(const PotentialParams& p) {
    p.validate();

    // Trigonometric roots of the depressed cubic q^3 + a q + b = 0, then one
    // Newton polish each; avoids iterative fragility near degeneracy.
    const double a = -8.0 * p.barrier_height;
    const double b = -16.0 * p.barrier_height * p.asymmetry;
    const double m = 2.0 * std::sqrt(-a / 3.0);
    double arg = 3.0 * b / (a * m);
    arg = std::clamp(arg, -1.0, 1.0);
    const double theta = std::acos(arg);

    double roots[3];
    for (int k = 0; k < 3; ++k)
        roots[k] = m * std::cos((theta - 2.0 * M_PI * k) / 3.0);
    std::sort(roots, roots + 3);
    for (double& r : roots) r = newton_polish(p, r);

    PotentialGeometry g;
    g.q_left_min = roots[0];
    g.q_barrier = roots[1];
    g.q_right_min = roots[2];
    g.v_left_min = evaluate(p, g.q_left_min);
    g.v_barrier = evaluate(p, g.q_barrier);
    g.v_right_min = evaluate(p, g.q_right_min);
    g.q_exit = std::sqrt(8.0 * p.barrier_height / 3.0);
    g.q_outer = crossing_right_of(p, g.q_right_min, g.v_barrier);
    return g;
}

} // namespace qdwell
