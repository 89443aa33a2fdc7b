#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "stability.hpp"

namespace ecocut {

struct rosenzweig_params {
    double r = 0.5;  // prey growth
    double K = 2.0;  // carrying capacity
    double a = 2.0;  // attack rate
    double h = 1.0;  // handling time
    double e = 1.0;  // conversion efficiency
    double m = 0.5;  // predator mortality
};

// Per-patch reaction terms. `linear` reproduces the linearized analysis
// exactly; `rosenzweig` is a standard Holling-II predator-prey with an
// analytically located coexistence equilibrium.
class patch_model {
public:
    enum class kind_t { linear, rosenzweig };

    static patch_model linear(const jacobian2& j, double x_star = 1.0, double y_star = 1.0);
    static patch_model rosenzweig(const rosenzweig_params& p);

    kind_t kind() const { return kind_; }
    const jacobian2& jacobian() const { return jac_; }
    std::pair<double, double> equilibrium() const { return {x_star_, y_star_}; }
    const rosenzweig_params& params() const { return params_; }

    // (f, g) at the given densities
    std::pair<double, double> reaction(double x, double y) const;

private:
    kind_t kind_ = kind_t::linear;
    jacobian2 jac_;
    double x_star_ = 0.0, y_star_ = 0.0;
    rosenzweig_params params_;
};

local_dynamics dynamics_of(const std::vector<patch_model>& models);

// State layout: (x_0..x_{n-1}, y_0..y_{n-1}). Reaction plus diffusion
// coupling sum_j w_ij (x_j - x_i), same weights for both species.
std::vector<double> rhs(const weighted_graph& g, const std::vector<patch_model>& models,
                        const std::vector<double>& state);

struct trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    std::vector<double> max_deviation; // max |state - equilibrium| per recorded time
    bool diverged = false;
};

inline constexpr double kDivergenceLimit = 1e12;

// Classical fixed-step RK4; records every stride-th state (plus the initial
// one). A non-finite or > 1e12 state stops integration with the partial
// trajectory flagged divergent.
trajectory integrate(const weighted_graph& g, const std::vector<patch_model>& models,
                     const std::vector<double>& x0, double dt, int steps, int stride = 1);

// CSV with header t,x_0..x_{n-1},y_0..y_{n-1}, full precision.
std::string trajectory_csv(const trajectory& t, int n);

// Eigenvalues of the 2n x 2n linearization [[dF/dX - L, dF/dY], [dG/dX,
// dG/dY - L]]. Identical patches use the exact per-mode reduction sigma =
// mu(J) - lambda_j; heterogeneous patches use a dense nonsymmetric solve.
// Sorted by (re, im).
std::vector<std::complex<double>> linearized_spectrum(const weighted_graph& g, const local_dynamics& dyn);

// Zero-sum perturbation pattern (centered ramp, max magnitude 1); probes the
// transverse modes the stability conditions govern. n = 1 keeps the full
// perturbation so isolated-patch growth stays observable.
std::vector<double> perturbation_pattern(int n);

} // namespace ecocut
