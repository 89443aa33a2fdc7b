#include "eigen_sym.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "error.hpp"

namespace ecocut {

namespace {

constexpr int kMaxSweeps = 100;

double offdiag_max(const matrix& a) {
    std::size_t n = a.rows();
    double best = 0.0;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) best = std::max(best, std::abs(a(p, q)));
    return best;
}

} // namespace

spectral_summary eigen_sym(const matrix& m) {
    std::size_t n = m.rows();
    if (n == 0 || m.cols() != n) fail(errc::invalid_argument, "eigen_sym needs a square matrix");
    if (!m.is_symmetric(1e-12 * std::max(1.0, m.max_abs())))
        fail(errc::not_symmetric, "matrix is not symmetric");

    matrix a = m;
    matrix v = matrix::identity(n);
    const double threshold = 1e-12 * std::max(a.norm_frobenius(), 1e-300);

    int sweep = 0;
    while (offdiag_max(a) >= threshold) {
        if (++sweep > kMaxSweeps) fail(errc::no_convergence, "jacobi sweep cap exceeded");
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (std::abs(apq) < threshold) continue;
                double app = a(p, p), aqq = a(q, q);
                double phi = 0.5 * (aqq - app);
                // stable tangent of the rotation angle
                double t;
                if (std::abs(phi) < 1e-300 * std::abs(apq)) {
                    t = 1.0;
                } else {
                    double theta = phi / apq;
                    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                    if (theta < 0.0) t = -t;
                }
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                double tau = s / (1.0 + c);

                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = a(p, k) = akp - s * (akq + tau * akp);
                    a(k, q) = a(q, k) = akq + s * (akp - tau * akq);
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp - s * (vkq + tau * vkp);
                    v(k, q) = vkq + s * (vkp - tau * vkq);
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return a(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) <
               a(static_cast<std::size_t>(j), static_cast<std::size_t>(j));
    });

    spectral_summary out;
    out.source_n = static_cast<int>(n);
    out.values.resize(n);
    out.vectors = matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t src = static_cast<std::size_t>(order[j]);
        out.values[j] = a(src, src);
        double sign = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(v(i, src)) > 1e-9) {
                sign = v(i, src) > 0.0 ? 1.0 : -1.0;
                break;
            }
        }
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = sign * v(i, src);
    }
    return out;
}

} // namespace ecocut
