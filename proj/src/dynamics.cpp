#include "qdwell/dynamics.hpp"
#include "qdwell/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace qdwell {

namespace {

constexpr double kZeroModeCutoff = 1e-10;

// Propagator behind evolve/escape: spectral form when the eigenvector matrix
// is well conditioned, scaling-and-squaring expm otherwise.
class Propagator {
public:
    explicit Propagator(const Eigen::MatrixXd& gen) : gen_(gen) {
        Eigen::EigenSolver<Eigen::MatrixXd> es(gen);
        if (es.info() == Eigen::Success) {
            eigvals_ = es.eigenvalues();
            vectors_ = es.eigenvectors();
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vectors_);
            const double smin = svd.singularValues()(svd.singularValues().size() - 1);
            const double cond = smin > 0.0 ? svd.singularValues()(0) / smin
                                           : std::numeric_limits<double>::infinity();
            if (cond < 1e8) {
                inverse_ = vectors_.inverse();
                const double residual =
                    (vectors_ * inverse_ - Eigen::MatrixXcd::Identity(gen.rows(), gen.cols()))
                        .cwiseAbs()
                        .maxCoeff();
                spectral_ok_ = residual < 1e-8;
            }
        }
        if (!spectral_ok_) {
            // expm path: exp(Gamma*0) = I holds exactly; verify on a tiny step
            const Eigen::MatrixXd test = (gen_ * 0.0).exp();
            const double residual =
                (test - Eigen::MatrixXd::Identity(gen.rows(), gen.cols()))
                    .cwiseAbs()
                    .maxCoeff();
            if (residual > 1e-8)
                throw IllConditionedGenerator(
                    "neither spectral nor expm propagation reproduces the identity at t=0");
        }
    }

    Eigen::VectorXd apply(const Eigen::VectorXd& rho0, double t) const {
        if (spectral_ok_) {
            Eigen::VectorXcd c = inverse_ * rho0.cast<std::complex<double>>();
            for (int k = 0; k < c.size(); ++k) c(k) *= std::exp(eigvals_(k) * t);
            return (vectors_ * c).real();
        }
        return ((gen_ * t).exp() * rho0).eval();
    }

    const Eigen::VectorXcd& eigenvalues() const { return eigvals_; }
    const Eigen::MatrixXcd& eigenvectors() const { return vectors_; }
    bool spectral() const { return spectral_ok_; }

private:
    Eigen::MatrixXd gen_;
    Eigen::VectorXcd eigvals_;
    Eigen::MatrixXcd vectors_;
    Eigen::MatrixXcd inverse_;
    bool spectral_ok_ = false;
};

void check_rho0(const Eigen::VectorXd& rho0, int m) {
    if (rho0.size() != m) throw std::invalid_argument("initial vector has wrong dimension");
    if (rho0.minCoeff() < 0.0) throw std::invalid_argument("initial populations must be nonnegative");
    if (std::abs(rho0.sum() - 1.0) > 1e-12)
        throw std::invalid_argument("initial populations must sum to one");
}

std::vector<std::complex<double>> nonzero_eigenvalues(const Eigen::VectorXcd& ev) {
    std::vector<std::complex<double>> nz;
    int zero_modes = 0;
    for (int k = 0; k < ev.size(); ++k) {
        if (std::abs(ev(k)) < kZeroModeCutoff)
            ++zero_modes;
        else
            nz.push_back(ev(k));
    }
    if (zero_modes == 0)
        throw DegenerateSpectrum("rate matrix has no conserved zero mode");
    if (zero_modes > 1)
        throw DegenerateSpectrum("rate matrix has multiple zero modes (disconnected states)");
    return nz;
}

} // namespace

PopulationTrajectory evolve(const RateMatrix& rm, const Eigen::VectorXd& rho0,
                            double horizon, int n_samples) {
    check_rho0(rho0, rm.size());
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
    if (n_samples < 2) throw std::invalid_argument("need at least two samples");

    Propagator prop(rm.gamma_matrix);
    PopulationTrajectory traj;
    traj.times.resize(n_samples);
    traj.populations.resize(n_samples);
    const double t_min = horizon * 1e-8;
    for (int i = 0; i < n_samples; ++i) {
        const double t =
            t_min * std::pow(horizon / t_min, double(i) / double(n_samples - 1));
        traj.times[i] = t;
        traj.populations[i] = prop.apply(rho0, t);
    }
    return traj;
}

std::vector<double> right_population(const PopulationTrajectory& traj, int partition) {
    std::vector<double> p(traj.times.size());
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        if (partition < 0 || partition > traj.populations[i].size())
            throw std::invalid_argument("partition out of range");
        p[i] = traj.populations[i].tail(traj.populations[i].size() - partition).sum();
    }
    return p;
}

double relaxation_time(const RateMatrix& rm) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(rm.gamma_matrix);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolve failed");
    auto nz = nonzero_eigenvalues(es.eigenvalues());
    double lam_min = std::abs(nz.front());
    for (const auto& l : nz) lam_min = std::min(lam_min, std::abs(l));
    return 1.0 / lam_min;
}

Eigen::VectorXd stationary_distribution(const RateMatrix& rm) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(rm.gamma_matrix);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolve failed");
    nonzero_eigenvalues(es.eigenvalues());  // uniqueness check
    int k0 = 0;
    for (int k = 1; k < es.eigenvalues().size(); ++k)
        if (std::abs(es.eigenvalues()(k)) < std::abs(es.eigenvalues()(k0))) k0 = k;
    Eigen::VectorXd st = es.eigenvectors().col(k0).real();
    st /= st.sum();
    return st;
}

EscapeResult escape_time(const RateMatrix& rm, const Eigen::VectorXd& rho0,
                         int partition, double threshold, const EscapeOptions& opt) {
    check_rho0(rho0, rm.size());
    if (!(threshold > 0.0 && threshold < 1.0))
        throw std::invalid_argument("threshold must lie in (0,1)");
    if (partition < 0 || partition > rm.size())
        throw std::invalid_argument("partition out of range");

    Propagator prop(rm.gamma_matrix);
    auto nz = nonzero_eigenvalues(
        prop.spectral() ? prop.eigenvalues()
                        : Eigen::EigenSolver<Eigen::MatrixXd>(rm.gamma_matrix).eigenvalues());
    double lam_min = std::abs(nz.front());
    for (const auto& l : nz) lam_min = std::min(lam_min, std::abs(l));

    EscapeResult res;
    res.relaxation_time = 1.0 / lam_min;
    res.threshold = threshold;
    res.stationary_pright = stationary_distribution(rm).tail(rm.size() - partition).sum();

    auto p_right = [&](double t) {
        return prop.apply(rho0, t).tail(rm.size() - partition).sum();
    };
    auto p_meta = [&](double t) {
        return prop.apply(rho0, t).head(opt.metastable_count).sum();
    };

    const double horizon = std::min(opt.horizon_factor * res.relaxation_time, opt.horizon_cap);
    const double t_lo_grid = 1e-8 * res.relaxation_time;

    // metastable transient and threshold bracket share the coarse log grid
    double meta_peak = p_meta(0.0);
    double t_prev = 0.0;
    double t_hit = -1.0;
    if (rho0.tail(rm.size() - partition).sum() >= threshold) {
        t_hit = 0.0;
    } else if (res.stationary_pright >= threshold) {
        for (int i = 0; i < opt.bracket_points; ++i) {
            const double t = t_lo_grid * std::pow(horizon / t_lo_grid,
                                                  double(i) / double(opt.bracket_points - 1));
            meta_peak = std::max(meta_peak, p_meta(t));
            if (t_hit < 0.0 && p_right(t) >= threshold) {
                t_hit = t;
                break;
            }
            t_prev = t;
        }
    } else {
        // still scan the transient for the metastable peak diagnostics
        for (int i = 0; i < opt.bracket_points; ++i) {
            const double t = t_lo_grid * std::pow(horizon / t_lo_grid,
                                                  double(i) / double(opt.bracket_points - 1));
            meta_peak = std::max(meta_peak, p_meta(t));
        }
    }
    res.metastable_peak = meta_peak;

    if (t_hit < 0.0 || res.stationary_pright < threshold) return res;  // NotReached
    if (t_hit == 0.0) {
        res.escape_time = 0.0;
        return res;
    }

    double lo = t_prev, hi = t_hit;
    while (hi - lo > opt.rel_tol * hi) {
        const double mid = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * hi;
        if (p_right(mid) >= threshold)
            hi = mid;
        else
            lo = mid;
    }
    res.escape_time = 0.5 * (lo + hi);
    return res;
}

} // namespace qdwell
