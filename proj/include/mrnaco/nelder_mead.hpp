#pragma once

// Nelder-Mead simplex minimization (Lagarias et al. variant with inside and
// outside contraction). Used for the outer search over codon weights and for
// the ansatz angles inside the CVaR loop.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "mrnaco/error.hpp"

namespace mrnaco {

struct NelderMeadOptions {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    double initial_step = 1.0;  ///< simplex vertex k = x0 + initial_step * e_k
    double f_tolerance = 1e-6;  ///< max f - min f over the simplex
    double x_tolerance = 1e-4;  ///< max |x_k - x_best| (infinity norm)
    int max_iterations = 200;

    void validate() const {
        if (!(reflection > 0 && expansion > 0 && contraction > 0 && shrink > 0)) {
            throw ValidationError("Nelder-Mead coefficients must be positive");
        }
        if (!(f_tolerance > 0 && x_tolerance > 0)) {
            throw ValidationError("Nelder-Mead tolerances must be positive");
        }
        if (max_iterations < 0) throw ValidationError("max_iterations must be non-negative");
    }
};

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
    std::vector<double> best_trace;  ///< best f after each iteration
};

template <typename Objective>
NelderMeadResult nelder_mead(Objective&& objective, const std::vector<double>& x0,
                             const NelderMeadOptions& opt = {}) {
    opt.validate();
    if (x0.empty()) throw ValidationError("Nelder-Mead needs at least one variable");
    for (double v : x0) {
        if (!std::isfinite(v)) throw ValidationError("Nelder-Mead start point must be finite");
    }
    const std::size_t n = x0.size();
    NelderMeadResult res;
    auto eval = [&](const std::vector<double>& x) {
        ++res.evaluations;
        return static_cast<double>(objective(x));
    };

    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (std::size_t k = 0; k < n; ++k) simplex[k + 1][k] += opt.initial_step;
    std::vector<double> fv(n + 1);
    for (std::size_t k = 0; k <= n; ++k) fv[k] = eval(simplex[k]);

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&]() {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> s2(n + 1);
        std::vector<double> f2(n + 1);
        for (std::size_t k = 0; k <= n; ++k) {
            s2[k] = std::move(simplex[order[k]]);
            f2[k] = fv[order[k]];
        }
        simplex.swap(s2);
        fv.swap(f2);
    };
    auto along = [&](const std::vector<double>& from, const std::vector<double>& to, double t) {
        std::vector<double> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = from[i] + t * (to[i] - from[i]);
        return p;
    };

    while (true) {
        sort_simplex();
        double spread = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                spread = std::max(spread, std::abs(simplex[k][i] - simplex[0][i]));
            }
        }
        if (fv[n] - fv[0] <= opt.f_tolerance && spread <= opt.x_tolerance) {
            res.converged = true;
            break;
        }
        if (res.iterations >= opt.max_iterations) break;
        ++res.iterations;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k][i];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        const auto& worst = simplex[n];
        auto xr = along(centroid, worst, -opt.reflection);
        const double fr = eval(xr);
        bool do_shrink = false;

        if (fr < fv[0]) {
            auto xe = along(centroid, xr, opt.expansion);
            const double fe = eval(xe);
            if (fe < fr) {
                simplex[n] = std::move(xe);
                fv[n] = fe;
            } else {
                simplex[n] = std::move(xr);
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            simplex[n] = std::move(xr);
            fv[n] = fr;
        } else if (fr < fv[n]) {
            auto xc = along(centroid, xr, opt.contraction);
            const double fc = eval(xc);
            if (fc <= fr) {
                simplex[n] = std::move(xc);
                fv[n] = fc;
            } else {
                do_shrink = true;
            }
        } else {
            auto xcc = along(centroid, worst, opt.contraction);
            const double fcc = eval(xcc);
            if (fcc < fv[n]) {
                simplex[n] = std::move(xcc);
                fv[n] = fcc;
            } else {
                do_shrink = true;
            }
        }
        if (do_shrink) {
            for (std::size_t k = 1; k <= n; ++k) {
                simplex[k] = along(simplex[0], simplex[k], opt.shrink);
                fv[k] = eval(simplex[k]);
            }
        }
        res.best_trace.push_back(*std::min_element(fv.begin(), fv.end()));
    }
    res.x = simplex[0];
    res.f = fv[0];
    return res;
}

}  // namespace mrnaco
