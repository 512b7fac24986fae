#include "core/lm.hpp"

#include "core/errors.hpp"

#include <cmath>
#include <sstream>

namespace bhc {

Eigen::MatrixXd fd_jacobian(const ResidualFn& f, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& r0, double rel_step) {
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd J(r0.size(), n);
    for (int k = 0; k < n; ++k) {
        const double h = rel_step * std::max(1.0, std::abs(x(k)));
        Eigen::VectorXd xp = x;
        xp(k) += h;
        J.col(k) = (f(xp) - r0) / h;
    }
    return J;
}

LMResult lm_fit(const ResidualFn& f, const Eigen::VectorXd& x0,
                const std::vector<std::string>& names, const LMOptions& o) {
    LMResult res;
    res.x = x0;
    Eigen::VectorXd r = f(res.x);
    double cost = r.squaredNorm();
    double lambda = o.lambda0;

    {
        // identifiability check at the starting point
        const Eigen::MatrixXd J = fd_jacobian(f, res.x, r, o.fd_step);
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
        const Eigen::VectorXd sv = svd.singularValues();
        if (sv(sv.size() - 1) < o.rank_tol * std::max(1e-300, sv(0))) {
            const Eigen::VectorXd null_dir = svd.matrixV().col(sv.size() - 1);
            std::ostringstream os;
            os << "rank-deficient Jacobian; unidentifiable direction:";
            for (int k = 0; k < null_dir.size(); ++k)
                if (std::abs(null_dir(k)) > 1e-3)
                    os << " " << (k < static_cast<int>(names.size()) ? names[static_cast<size_t>(k)]
                                                                     : "p" + std::to_string(k))
                       << (null_dir(k) >= 0 ? "(+" : "(") << null_dir(k) << ")";
            throw NumericError(os.str());
        }
    }

    std::vector<std::string> trace;
    for (res.iterations = 1; res.iterations <= o.max_iterations; ++res.iterations) {
        const Eigen::MatrixXd J = fd_jacobian(f, res.x, r, o.fd_step);
        const Eigen::MatrixXd JtJ = J.transpose() * J;
        const Eigen::VectorXd g = J.transpose() * r;

        bool stepped = false;
        while (lambda <= o.lambda_max) {
            Eigen::MatrixXd A = JtJ;
            for (int k = 0; k < A.rows(); ++k) A(k, k) += lambda * std::max(JtJ(k, k), 1e-12);
            const Eigen::VectorXd dx = A.ldlt().solve(-g);
            const Eigen::VectorXd xn = res.x + dx;
            const Eigen::VectorXd rn = f(xn);
            const double cn = rn.squaredNorm();
            if (cn < cost) {
                res.final_step = dx.cwiseAbs().cwiseQuotient(res.x.cwiseAbs().cwiseMax(1.0)).maxCoeff();
                res.x = xn;
                r = rn;
                cost = cn;
                lambda = std::max(lambda * o.lambda_shrink, 1e-14);
                stepped = true;
                break;
            }
            lambda *= o.lambda_grow;
        }
        {
            std::ostringstream os;
            os << "iter " << res.iterations << ": cost " << cost << " lambda " << lambda
               << " step " << res.final_step;
            trace.push_back(os.str());
        }
        if (!stepped || res.final_step < o.relative_step_tol) {
            res.converged = true;
            break;
        }
    }

    if (!res.converged) {
        std::ostringstream os;
        os << "least-squares fit did not converge after " << o.max_iterations << " iterations;";
        const size_t tail = trace.size() > 5 ? trace.size() - 5 : 0;
        for (size_t k = tail; k < trace.size(); ++k) os << "\n  " << trace[k];
        res.trace = std::move(trace);
        throw NumericError(os.str());
    }

    res.residual_norm = std::sqrt(cost);
    // covariance from the Gauss-Newton approximation at the solution
    const Eigen::MatrixXd J = fd_jacobian(f, res.x, r, o.fd_step);
    const int dof = std::max<int>(1, static_cast<int>(r.size()) - static_cast<int>(res.x.size()));
    const double s2 = cost / dof;
    Eigen::MatrixXd JtJ = J.transpose() * J;
    res.covariance = s2 * JtJ.completeOrthogonalDecomposition().pseudoInverse();
    return res;
}

} // namespace bhc
