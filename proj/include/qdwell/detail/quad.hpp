#ifndef QDWELL_DETAIL_QUAD_HPP
#define QDWELL_DETAIL_QUAD_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "qdwell/errors.hpp"

namespace qdwell::detail {

// 15-point Gauss-Kronrod rule with embedded 7-point Gauss estimate
// (QUADPACK abscissae/weights), plus a global-adaptive driver.

struct GkResult {
    double value;
    double error;
};

inline GkResult gk15(const std::function<double(double)>& f, double a, double b) {
    static const double xgk[8] = {
        0.991455371120813, 0.949107912342759, 0.864864423359769,
        0.741531185599394, 0.586087235467691, 0.405845151377397,
        0.207784955007898, 0.0};
    static const double wgk[8] = {
        0.022935322010529, 0.063092092629979, 0.104790010322250,
        0.140653259715525, 0.169004726639267, 0.190350578064785,
        0.204432940075298, 0.209482141084728};
    static const double wg[4] = {
        0.129484966168870, 0.279705391489277, 0.381830050505119,
        0.417959183673469};

    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = wgk[7] * fc;
    double gauss = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const double fsum = f(c - dx) + f(c + dx);
        kron += wgk[j] * fsum;
        if (j % 2 == 1) gauss += wg[j / 2] * fsum;
    }
    return {kron * h, std::abs((kron - gauss) * h)};
}

struct AdaptiveOptions {
    double abs_tol = 1e-10;
    std::size_t max_evals = 1000000;
};

// Globally adaptive bisection over an initial segment list; worst segment
// first via a max-heap on the error estimate.  Throws QuadratureFailure when
// the evaluation budget runs out before the summed error reaches tolerance.
inline double adaptive(const std::function<double(double)>& f,
                       const std::vector<double>& edges, const AdaptiveOptions& opt) {
    struct Seg {
        double a, b, value, error;
        bool operator<(const Seg& o) const { return error < o.error; }
    };
    std::vector<Seg> heap;
    std::size_t evals = 0;
    double total_err = 0.0;
    auto push = [&](double a, double b) {
        GkResult r = gk15(f, a, b);
        evals += 15;
        total_err += r.error;
        heap.push_back({a, b, r.value, r.error});
        std::push_heap(heap.begin(), heap.end());
    };
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) push(edges[i], edges[i + 1]);

    while (total_err > opt.abs_tol) {
        if (evals + 30 > opt.max_evals)
            throw QuadratureFailure("adaptive quadrature exceeded evaluation budget");
        std::pop_heap(heap.begin(), heap.end());
        Seg s = heap.back();
        heap.pop_back();
        total_err -= s.error;
        const double mid = 0.5 * (s.a + s.b);
        push(s.a, mid);
        push(mid, s.b);
    }

    // Compensated sum; segment count can reach tens of thousands.
    double total = 0.0, comp = 0.0;
    for (const Seg& s : heap) {
        const double y = s.value - comp;
        const double t = total + y;
        comp = (t - total) - y;
        total = t;
    }
    return total;
}

} // namespace qdwell::detail

#endif
