#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "topomode/constants.hpp"
#include "topomode/errors.hpp"

namespace topomode::quadrature {

struct Node {
    double x, w;
};

/// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
inline const std::vector<Node>& gauss_legendre(int n) {
    static std::map<int, std::vector<Node>> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<Node> nodes(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev guess, then Newton on P_n
        double x = std::cos(constants::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[static_cast<std::size_t>(i)] = {-x, w};
        nodes[static_cast<std::size_t>(n - 1 - i)] = {x, w};
    }
    return cache.emplace(n, std::move(nodes)).first->second;
}

struct Result {
    double value = 0;
    int nodes_per_dim = 0;
    int levels_used = 0;
};

/// Tensor Gauss-Legendre integral of f(x, y) over [x_lo, x_hi] x [y_lo, y_hi]
/// with node doubling until two consecutive levels agree to rtol.
template <class F>
Result integrate_2d(F&& f, double x_lo, double x_hi, double y_lo, double y_hi, double rtol,
                    int n_start = 16, int max_doublings = 20) {
    const double cx = 0.5 * (x_hi + x_lo), hx = 0.5 * (x_hi - x_lo);
    const double cy = 0.5 * (y_hi + y_lo), hy = 0.5 * (y_hi - y_lo);

    double prev = 0;
    bool have_prev = false;
    int n = n_start;
    for (int level = 0; level < max_doublings; ++level, n *= 2) {
        const auto& gx = gauss_legendre(n);
        const auto& gy = gauss_legendre(n);
        double sum = 0, l1 = 0;
        for (const auto& nx : gx) {
            const double x = cx + hx * nx.x;
            double row = 0, row_l1 = 0;
            for (const auto& ny : gy) {
                const double v = f(x, cy + hy * ny.x);
                row += ny.w * v;
                row_l1 += ny.w * std::abs(v);
            }
            sum += nx.w * row;
            l1 += nx.w * row_l1;
        }
        sum *= hx * hy;
        l1 *= std::abs(hx * hy);
        if (have_prev) {
            // results below ~1e-4 of the integrand mass count as zero: exact
            // cancellations (parity) would otherwise chase rounding noise
            const double scale = std::max(std::abs(sum), 1e-4 * std::max(l1, 1e-300));
            if (std::abs(sum - prev) <= rtol * scale)
                return Result{sum, n, level + 1};
        }
        prev = sum;
        have_prev = true;
    }
    throw QuadratureFailure("integrate_2d: node doubling failed to converge");
}

} // namespace topomode::quadrature
