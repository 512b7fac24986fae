#include "core/modes.hpp"

#include "core/errors.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace bhc {

std::vector<int> ModeBasis::presentation_permutation() const {
    // descending qubit energy: row 1 of the printed matrices is the highest mode
    std::vector<int> perm(static_cast<size_t>(n_qubit_modes()));
    std::iota(perm.begin(), perm.end(), 1);
    std::reverse(perm.begin(), perm.end());
    return perm;
}

Eigen::MatrixXd build_h0(const DeviceParams& p, double current_ma, Frame frame,
                         double omega_d_ghz) {
    const int L = p.n_sites;
    const Eigen::VectorXd w = p.freqs_at_current(current_ma);
    const double shift = (frame == Frame::Rotating) ? omega_d_ghz : 0.0;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(L + 1, L + 1);
    h(0, 0) = p.cavity_freq_ghz - shift;
    for (int j = 0; j < L; ++j) {
        h(0, j + 1) = h(j + 1, 0) = p.coupling_ghz(j);
        h(j + 1, j + 1) = w(j) - shift;
        for (int k = 0; k < L; ++k)
            if (k != j) h(j + 1, k + 1) = p.hopping_ghz(j, k);
    }
    return h;
}

ModeBasis diagonalize_modes(const Eigen::MatrixXd& h0, Frame frame, double omega_d_ghz) {
    if ((h0 - h0.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, h0.cwiseAbs().maxCoeff()))
        throw ValidationError("diagonalize_modes: input must be symmetric");
    const int n = static_cast<int>(h0.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h0);
    if (es.info() != Eigen::Success) throw NumericError("mode diagonalization failed");
    Eigen::VectorXd lam = es.eigenvalues();
    Eigen::MatrixXd V = es.eigenvectors();

    // cavity-like mode: maximal bare-cavity overlap
    int icav = 0;
    for (int c = 1; c < n; ++c)
        if (std::abs(V(0, c)) > std::abs(V(0, icav))) icav = c;

    std::vector<int> order;
    order.push_back(icav);
    std::vector<int> qubit;
    for (int c = 0; c < n; ++c)
        if (c != icav) qubit.push_back(c);
    std::sort(qubit.begin(), qubit.end(), [&](int a, int b) { return lam(a) < lam(b); });
    // qubit-like degeneracy feeds state labels downstream: hard error, no tie-break
    for (size_t k = 0; k + 1 < qubit.size(); ++k) {
        const double gap = lam(qubit[k + 1]) - lam(qubit[k]);
        if (gap < 1e-6) { // 1 kHz in GHz units
            std::ostringstream os;
            os << "qubit-like modes " << (k + 1) << " and " << (k + 2)
               << " degenerate within 1 kHz (gap " << gap * 1e6 << " kHz)";
            throw NumericError(os.str());
        }
    }
    order.insert(order.end(), qubit.begin(), qubit.end());

    ModeBasis mb;
    mb.frame = frame;
    mb.omega_d_ghz = omega_d_ghz;
    mb.lambda_ghz.resize(n);
    mb.M.resize(n, n);
    for (int c = 0; c < n; ++c) {
        mb.lambda_ghz(c) = lam(order[static_cast<size_t>(c)]);
        mb.M.col(c) = V.col(order[static_cast<size_t>(c)]);
        int imax = 0;
        for (int r = 1; r < n; ++r)
            if (std::abs(mb.M(r, c)) > std::abs(mb.M(imax, c))) imax = r;
        if (mb.M(imax, c) < 0) mb.M.col(c) *= -1.0;
    }
    mb.N = mb.M.transpose();
    return mb;
}

ModeBasis dressed_modes(const DeviceParams& p, double current_ma) {
    return diagonalize_modes(build_h0(p, current_ma, Frame::Lab));
}

StationaryAmplitude stationary_cavity_amplitude(const ModeBasis& modes, double eps,
                                                double kappa) {
    const double lam0 = modes.lambda_ghz(0);
    const double m00 = modes.M(0, 0);
    if (lam0 == 0.0 && kappa == 0.0)
        throw NumericError("stationary amplitude singular: lambda0 and kappa both zero");
    const std::complex<double> denom(lam0, -0.5 * kappa * m00);
    StationaryAmplitude out;
    out.amplitude = -eps * m00 / denom;
    out.nbar = std::norm(out.amplitude);
    return out;
}

} // namespace bhc
