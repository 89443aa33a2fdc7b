#include "dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Dense>

#include "error.hpp"

namespace ecocut {

patch_model patch_model::linear(const jacobian2& j, double x_star, double y_star) {
    patch_model m;
    m.kind_ = kind_t::linear;
    m.jac_ = j;
    m.x_star_ = x_star;
    m.y_star_ = y_star;
    return m;
}

patch_model patch_model::rosenzweig(const rosenzweig_params& p) {
    if (p.r <= 0 || p.K <= 0 || p.a <= 0 || p.h < 0 || p.e <= 0 || p.m <= 0)
        fail(errc::validation_error, "rosenzweig parameters must be positive (h >= 0)");
    double denom = p.a * (p.e - p.h * p.m);
    if (denom <= 0.0) fail(errc::validation_error, "rosenzweig: e must exceed h*m for a coexistence equilibrium");
    double xs = p.m / denom;
    if (xs >= p.K)
        fail(errc::validation_error, "rosenzweig: prey equilibrium exceeds carrying capacity (no interior point)");
    double ys = p.e * p.r * xs * (1.0 - xs / p.K) / p.m;

    double sat = 1.0 + p.a * p.h * xs;
    double dp = p.a / (sat * sat); // d/dx of the functional response at xs
    patch_model m;
    m.kind_ = kind_t::rosenzweig;
    m.params_ = p;
    m.x_star_ = xs;
    m.y_star_ = ys;
    m.jac_.a = {p.r * (1.0 - 2.0 * xs / p.K) - dp * ys, -p.m / p.e, p.e * dp * ys, 0.0};
    return m;
}

std::pair<double, double> patch_model::reaction(double x, double y) const {
    if (kind_ == kind_t::linear) {
        double dx = x - x_star_, dy = y - y_star_;
        return {jac_.a[0] * dx + jac_.a[1] * dy, jac_.a[2] * dx + jac_.a[3] * dy};
    }
    const rosenzweig_params& p = params_;
    double response = p.a * x / (1.0 + p.a * p.h * x);
    return {p.r * x * (1.0 - x / p.K) - response * y, p.e * response * y - p.m * y};
}

local_dynamics dynamics_of(const std::vector<patch_model>& models) {
    std::vector<jacobian2> jac;
    jac.reserve(models.size());
    for (const patch_model& m : models) jac.push_back(m.jacobian());
    return local_dynamics::from_jacobians(std::move(jac));
}

std::vector<double> rhs(const weighted_graph& g, const std::vector<patch_model>& models,
                        const std::vector<double>& state) {
    std::size_t n = static_cast<std::size_t>(g.node_count());
    if (models.size() != n || state.size() != 2 * n)
        fail(errc::dimension_mismatch, "rhs: models/state size mismatch");
    std::vector<double> out(2 * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto [f, gg] = models[i].reaction(state[i], state[n + i]);
        out[i] = f;
        out[n + i] = gg;
    }
    for (const edge& e : g.edges()) {
        std::size_t u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
        out[u] += e.w * (state[v] - state[u]);
        out[v] += e.w * (state[u] - state[v]);
        out[n + u] += e.w * (state[n + v] - state[n + u]);
        out[n + v] += e.w * (state[n + u] - state[n + v]);
    }
    return out;
}

namespace {

bool state_ok(const std::vector<double>& s) {
    for (double v : s)
        if (!std::isfinite(v) || std::abs(v) > kDivergenceLimit) return false;
    return true;
}

double deviation(const std::vector<double>& s, const std::vector<patch_model>& models) {
    std::size_t n = models.size();
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        auto [xs, ys] = models[i].equilibrium();
        d = std::max(d, std::abs(s[i] - xs));
        d = std::max(d, std::abs(s[n + i] - ys));
    }
    return d;
}

} // namespace

trajectory integrate(const weighted_graph& g, const std::vector<patch_model>& models,
                     const std::vector<double>& x0, double dt, int steps, int stride) {
    if (!(dt > 0.0)) fail(errc::invalid_argument, "dt must be positive");
    if (steps < 1) fail(errc::invalid_argument, "steps must be >= 1");
    if (stride < 1) stride = 1;
    std::size_t n = static_cast<std::size_t>(g.node_count());
    if (models.size() != n || x0.size() != 2 * n)
        fail(errc::dimension_mismatch, "integrate: models/state size mismatch");

    trajectory tr;
    std::vector<double> s = x0;
    tr.times.push_back(0.0);
    tr.states.push_back(s);
    tr.max_deviation.push_back(deviation(s, models));

    std::vector<double> tmp(2 * n);
    for (int step = 1; step <= steps; ++step) {
        std::vector<double> k1 = rhs(g, models, s);
        for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = s[i] + 0.5 * dt * k1[i];
        std::vector<double> k2 = rhs(g, models, tmp);
        for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = s[i] + 0.5 * dt * k2[i];
        std::vector<double> k3 = rhs(g, models, tmp);
        for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = s[i] + dt * k3[i];
        std::vector<double> k4 = rhs(g, models, tmp);
        for (std::size_t i = 0; i < s.size(); ++i)
            s[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        bool ok = state_ok(s);
        if (!ok || step % stride == 0 || step == steps) {
            tr.times.push_back(step * dt);
            tr.states.push_back(s);
            tr.max_deviation.push_back(deviation(s, models));
        }
        if (!ok) {
            tr.diverged = true;
            break;
        }
    }
    return tr;
}

std::string trajectory_csv(const trajectory& t, int n) {
    std::string out = "t";
    for (int i = 0; i < n; ++i) out += ",x_" + std::to_string(i);
    for (int i = 0; i < n; ++i) out += ",y_" + std::to_string(i);
    out += "\n";
    char buf[40];
    for (std::size_t row = 0; row < t.times.size(); ++row) {
        std::snprintf(buf, sizeof buf, "%.17g", t.times[row]);
        out += buf;
        for (double v : t.states[row]) {
            std::snprintf(buf, sizeof buf, ",%.17g", v);
            out += buf;
        }
        out += "\n";
    }
    return out;
}

std::vector<std::complex<double>> linearized_spectrum(const weighted_graph& g, const local_dynamics& dyn) {
    std::size_t n = static_cast<std::size_t>(g.node_count());
    if (dyn.size() != g.node_count()) fail(errc::dimension_mismatch, "patch count != node count");
    if (!dyn.has_jacobians()) fail(errc::invalid_argument, "linearized spectrum needs patch Jacobians");

    std::vector<std::complex<double>> out;
    out.reserve(2 * n);

    bool identical = true;
    for (int i = 1; i < dyn.size(); ++i)
        for (int k = 0; k < 4; ++k)
            if (dyn.at(i).a[static_cast<std::size_t>(k)] != dyn.at(0).a[static_cast<std::size_t>(k)])
                identical = false;

    if (identical) {
        // per-mode reduction: sigma = mu(J) - lambda_j for each Laplacian mode
        const jacobian2& J = dyn.at(0);
        double half_tr = 0.5 * J.trace();
        double disc = J.discriminant();
        std::complex<double> mu1, mu2;
        if (disc >= 0.0) {
            double root = 0.5 * std::sqrt(disc);
            mu1 = half_tr - root;
            mu2 = half_tr + root;
        } else {
            double root = 0.5 * std::sqrt(-disc);
            mu1 = {half_tr, -root};
            mu2 = {half_tr, root};
        }
        for (double lam : eigen_sym(g.laplacian()).values) {
            out.push_back(mu1 - lam);
            out.push_back(mu2 - lam);
        }
    } else {
        matrix L = g.laplacian();
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * static_cast<Eigen::Index>(n), 2 * static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            const jacobian2& J = dyn.at(static_cast<int>(i));
            Eigen::Index ii = static_cast<Eigen::Index>(i);
            Eigen::Index nn = static_cast<Eigen::Index>(n);
            M(ii, ii) += J.a[0];
            M(ii, nn + ii) += J.a[1];
            M(nn + ii, ii) += J.a[2];
            M(nn + ii, nn + ii) += J.a[3];
            for (std::size_t j = 0; j < n; ++j) {
                M(ii, static_cast<Eigen::Index>(j)) -= L(i, j);
                M(nn + ii, nn + static_cast<Eigen::Index>(j)) -= L(i, j);
            }
        }
        Eigen::EigenSolver<Eigen::MatrixXd> solver(M, false);
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()[i]);
    }

    std::sort(out.begin(), out.end(), [](const std::complex<double>& a, const std::complex<double>& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

std::vector<double> perturbation_pattern(int n) {
    std::vector<double> h(static_cast<std::size_t>(n), 1.0);
    if (n == 1) return h;
    double center = 0.5 * (n - 1);
    for (int i = 0; i < n; ++i) h[static_cast<std::size_t>(i)] = (i - center) / center;
    return h;
}

} // namespace ecocut
