#include "core/kerr.hpp"

#include "core/errors.hpp"
#include "core/units.hpp"

namespace bhc {

Eigen::MatrixXd KerrTensors::eta_cyclic_mhz() const {
    return eta / units::kTwoPi;
}

KerrTensors compute_kerr(const ModeBasis& modes, const Eigen::VectorXd& alpha_ghz) {
    const int L = modes.n_qubit_modes();
    if (alpha_ghz.size() != L) throw ValidationError("compute_kerr: anharmonicity vector length mismatch");

    KerrTensors k;
    k.mu = QuarticCoeffs::zero(L);
    k.eta = Eigen::MatrixXd::Zero(L, L);
    k.pi0 = 0.0;

    // bare-site rows of M are 1..L; dressed qubit columns are 1..L
    for (int j = 1; j <= L; ++j) {
        const double a = units::ghz_to_radus(alpha_ghz(j - 1));
        const double mj0 = modes.M(j, 0);
        k.pi0 += a * mj0 * mj0 * mj0 * mj0;
        for (int l = 0; l < L; ++l)
            for (int p = 0; p < L; ++p)
                k.eta(l, p) += a * mj0 * mj0 * modes.M(j, l + 1) * modes.M(j, p + 1);
    }
    for (int l = 0; l < L; ++l)
        for (int p = 0; p < L; ++p)
            for (int q = 0; q < L; ++q)
                for (int s = 0; s < L; ++s) {
                    double v = 0.0;
                    for (int j = 1; j <= L; ++j)
                        v += units::ghz_to_radus(alpha_ghz(j - 1)) * modes.M(j, l + 1) *
                             modes.M(j, p + 1) * modes.M(j, q + 1) * modes.M(j, s + 1);
                    k.mu.at(l, p, q, s) = v;
                }
    return k;
}

} // namespace bhc
