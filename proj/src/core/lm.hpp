// lm.hpp — damped least squares (Levenberg style) with finite-difference
// Jacobians, for the small dense fit problems in this package. Robustness
// over speed: problem sizes are tiny.

#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace bhc {

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct LMOptions {
    int max_iterations = 200;
    double relative_step_tol = 1e-10;
    double fd_step = 1e-7;       // relative finite-difference step
    double lambda0 = 1e-3;
    double lambda_shrink = 0.3;
    double lambda_grow = 10.0;
    double lambda_max = 1e12;
    double rank_tol = 1e-10;     // singular-value ratio below which the Jacobian is rank deficient
};

struct LMResult {
    Eigen::VectorXd x;
    double residual_norm = 0.0;  // sqrt(sum of squares)
    int iterations = 0;
    bool converged = false;
    double final_step = 0.0;     // last relative step size
    Eigen::MatrixXd covariance;  // (J^T J)^-1, scaled by residual variance
    std::vector<std::string> trace; // per-iteration diagnostics (filled on failure)
};

Eigen::MatrixXd fd_jacobian(const ResidualFn& f, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& r0, double rel_step);

// Throws NumericError on non-convergence (with the iteration trace in the
// message) and on a rank-deficient Jacobian at the starting point (naming the
// null direction in terms of the supplied parameter names).
LMResult lm_fit(const ResidualFn& f, const Eigen::VectorXd& x0,
                const std::vector<std::string>& param_names, const LMOptions& opts = {});

} // namespace bhc
