#ifndef QDWELL_BATH_HPP
#define QDWELL_BATH_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace qdwell {

/// Ohmic environment J(w) = gamma w exp(-w/cutoff) in natural units.
struct BathParams {
    double gamma = 1.0;        // omega0
    double temperature = 0.352;  // hbar omega0 / k_B
    double cutoff = 20.0;        // omega0

    void validate() const;  // gamma > 0, T > 0, cutoff >= 20
};

double spectral_density(const BathParams& params, double omega);

/// Twice-integrated bath autocorrelation
///   Q(t) = (1/pi) int_0^inf dw J(w)/w^2 [coth(w/2T)(1 - cos wt) + i sin wt],
/// dimension M omega0 / hbar.  Q'(t) damps path interference, Q''(t) encodes
/// energy exchange.
///
/// The evaluator is exact to ~1e-12: Q'' has the closed form
/// (gamma/pi) atan(cutoff t); Q' expands the Bose factor into exponentials,
/// integrates term by term to a log series and closes the tail with
/// Euler-Maclaurin corrections.  Stateless, safe for concurrent use.
class BathCorrelation {
public:
    explicit BathCorrelation(const BathParams& params);

    double real_part(double t) const;   // Q'(t)
    double imag_part(double t) const;   // Q''(t) = (gamma/pi) atan(cutoff t)
    std::complex<double> operator()(double t) const;

    const BathParams& params() const { return params_; }

    /// Q', Q'' on a fixed grid; rate assembly evaluates the grid once and
    /// shares it across all level pairs.
    struct Sampled {
        std::vector<double> t;
        std::vector<double> qp;
        std::vector<double> qpp;
    };
    Sampled sample(const std::vector<double>& times) const;

private:
    BathParams params_;
};

/// Spec'd quadrature route for Q(t): adaptive Gauss-Kronrod on the frequency
/// integral, split at w = 1/t and w = cutoff, absolute tolerance abs_tol,
/// with the integrable w->0 behavior evaluated from its series limit.
/// Throws QuadratureFailure beyond max_evals integrand evaluations.
/// The imaginary part is the closed form above; imag_part_quadrature
/// exists to cross-check it.
std::complex<double> correlation(const BathParams& params, double t,
                                 double abs_tol = 1e-10,
                                 std::size_t max_evals = 1000000);
double real_part_quadrature(const BathParams& params, double t,
                            double abs_tol = 1e-10,
                            std::size_t max_evals = 1000000);
double imag_part_quadrature(const BathParams& params, double t,
                            double abs_tol = 1e-10,
                            std::size_t max_evals = 1000000);

} // namespace qdwell

#endif
