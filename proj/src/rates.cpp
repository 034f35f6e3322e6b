#include "qdwell/rates.hpp"
#include "qdwell/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qdwell {

double kernel(const DvrBasis& dvr, const BathCorrelation& bath, int mu, int nu, double tau) {
    if (mu == nu) throw std::invalid_argument("kernel defined for mu != nu");
    if (tau < 0.0) throw std::invalid_argument("kernel defined for tau >= 0");
    const double delta = dvr.coupling(mu, nu);
    const double d = dvr.q_points(mu) - dvr.q_points(nu);
    const double bias = dvr.dvr_energy(nu) - dvr.dvr_energy(mu);
    return 2.0 * delta * delta * std::exp(-d * d * bath.real_part(tau)) *
           std::cos(bias * tau - d * d * bath.imag_part(tau));
}

namespace {

// Composite grid: log-spaced panels resolve the cutoff-scale transient below
// tau = 1, uniform panels sized to the fastest bias oscillation beyond it.
// 10-point Gauss-Legendre nodes per panel.
struct NodeGrid {
    std::vector<double> t;
    std::vector<double> w;
    std::vector<std::size_t> panel_start;  // index of each panel's first node
};

constexpr double kGl10X[5] = {0.148874338981631, 0.433395394129247,
                              0.679409568299024, 0.865063366688985,
                              0.973906528517172};
constexpr double kGl10W[5] = {0.295524224714753, 0.269266719309996,
                              0.219086362515982, 0.149451349150581,
                              0.066671344308688};

void append_panel(NodeGrid& g, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    g.panel_start.push_back(g.t.size());
    for (int k = 4; k >= 0; --k) {
        g.t.push_back(c - h * kGl10X[k]);
        g.w.push_back(h * kGl10W[k]);
    }
    for (int k = 0; k < 5; ++k) {
        g.t.push_back(c + h * kGl10X[k]);
        g.w.push_back(h * kGl10W[k]);
    }
}

NodeGrid make_grid(double tau_max, double bias_max, int log_panels, double cap,
                   int refine_level) {
    NodeGrid g;
    const int nlog = log_panels << refine_level;
    const double t0 = 1e-4;
    double prev = 0.0;
    for (int i = 1; i <= nlog; ++i) {
        const double edge = t0 * std::pow(1.0 / t0, double(i) / nlog);
        append_panel(g, prev, edge);
        prev = edge;
    }
    const double h =
        std::min(cap, 2.0 * M_PI / (8.0 * (bias_max + 1.0))) / double(1 << refine_level);
    while (prev < tau_max) {
        const double next = std::min(prev + h, tau_max);
        append_panel(g, prev, next);
        prev = next;
    }
    return g;
}

Eigen::MatrixXd assemble(const DvrBasis& dvr, const BathCorrelation::Sampled& s,
                         const NodeGrid& grid, const RateOptions& opt,
                         double gamma_T) {
    const int m = dvr.size();
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m, m);
    for (int mu = 0; mu < m; ++mu) {
        for (int nu = 0; nu < m; ++nu) {
            if (mu == nu) continue;
            const double delta = dvr.coupling(mu, nu);
            if (delta == 0.0) continue;
            const double d = dvr.q_points(mu) - dvr.q_points(nu);
            const double d2 = d * d;
            const double bias = dvr.dvr_energy(nu) - dvr.dvr_energy(mu);
            const double amp = 2.0 * delta * delta;
            const double tau_max =
                std::max(opt.min_tau, opt.envelope_exponent / (d2 * gamma_T));

            double acc = 0.0, comp = 0.0;
            for (std::size_t p = 0; p < grid.panel_start.size(); ++p) {
                const std::size_t lo = grid.panel_start[p];
                const std::size_t hi = (p + 1 < grid.panel_start.size())
                                           ? grid.panel_start[p + 1]
                                           : grid.t.size();
                if (grid.t[lo] > tau_max) break;
                // envelope has decayed past any further contribution
                if (grid.t[lo] > opt.min_tau && d2 * s.qp[lo] > 30.0) break;
                for (std::size_t k = lo; k < hi; ++k) {
                    const double val = grid.w[k] * amp * std::exp(-d2 * s.qp[k]) *
                                       std::cos(bias * grid.t[k] - d2 * s.qpp[k]);
                    const double y = val - comp;
                    const double t = acc + y;
                    comp = (t - acc) - y;
                    acc = t;
                }
            }
            G(mu, nu) = acc;
        }
    }
    return G;
}

} // namespace

RateMatrix build_rate_matrix(const DvrBasis& dvr, const BathCorrelation& bath,
                             const RateOptions& opt) {
    const int m = dvr.size();
    const BathParams& bp = bath.params();
    const double gamma_T = bp.gamma * bp.temperature;

    double bias_max = 0.0;
    double d2_min = 0.0;
    bool first = true;
    for (int mu = 0; mu < m; ++mu)
        for (int nu = 0; nu < m; ++nu) {
            if (mu == nu || dvr.coupling(mu, nu) == 0.0) continue;
            bias_max = std::max(bias_max,
                                std::abs(dvr.dvr_energy(nu) - dvr.dvr_energy(mu)));
            const double d = dvr.q_points(mu) - dvr.q_points(nu);
            if (first || d * d < d2_min) d2_min = d * d;
            first = false;
        }
    const double tau_max =
        first ? opt.min_tau
              : std::max(opt.min_tau, opt.envelope_exponent / (d2_min * gamma_T));

    NodeGrid grid = make_grid(tau_max, bias_max, opt.log_panels, opt.panel_width_cap, 0);
    if (grid.t.size() > opt.max_nodes)
        throw QuadratureFailure("rate quadrature node budget exhausted");
    Eigen::MatrixXd G = assemble(dvr, bath.sample(grid.t), grid, opt, gamma_T);

    if (opt.refine_check) {
        NodeGrid fine = make_grid(tau_max, bias_max, opt.log_panels, opt.panel_width_cap, 1);
        if (grid.t.size() + fine.t.size() > opt.max_nodes)
            throw QuadratureFailure("rate quadrature node budget exhausted");
        Eigen::MatrixXd G2 = assemble(dvr, bath.sample(fine.t), fine, opt, gamma_T);
        const double scale = std::max(1e-300, G2.cwiseAbs().maxCoeff());
        const double diff = (G2 - G).cwiseAbs().maxCoeff();
        if (diff > opt.refine_rel_tol * std::max(1.0, scale)) {
            std::ostringstream msg;
            msg << "rate quadrature not converged: halving panels moves entries by "
                << diff;
            throw QuadratureFailure(msg.str());
        }
        G = G2;
    }

    RateMatrix rm;
    rm.gamma_matrix = G;

    double max_off = 0.0;
    for (int mu = 0; mu < m; ++mu)
        for (int nu = 0; nu < m; ++nu)
            if (mu != nu) max_off = std::max(max_off, std::abs(G(mu, nu)));
    for (int mu = 0; mu < m; ++mu)
        for (int nu = 0; nu < m; ++nu)
            if (mu != nu && G(mu, nu) < -opt.flag_floor * max_off)
                rm.regime_flags.push_back({mu, nu, G(mu, nu)});

    for (int nu = 0; nu < m; ++nu) {
        double col = 0.0;
        for (int mu = 0; mu < m; ++mu)
            if (mu != nu) col += rm.gamma_matrix(mu, nu);
        rm.gamma_matrix(nu, nu) = -col;
    }
    return rm;
}

RegimeReport validate_regime(const BathParams& p) {
    RegimeReport r;
    if (p.temperature < 0.1) {
        r.temperature_below_validity = true;
        r.warnings.push_back(
            "temperature below the incoherent-approximation validity estimate T >= 0.1");
    }
    if (p.gamma < 1.0) {
        r.damping_below_moderate = true;
        r.warnings.push_back(
            "damping below the moderate-to-strong regime gamma >= 1; results are extrapolation");
    }
    return r;
}

} // namespace qdwell
