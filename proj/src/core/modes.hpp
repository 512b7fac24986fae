// modes.hpp — quadratic (L+1)-mode cavity+array matrix and its dressed basis.
//
// Conventions (fixed here, relied on everywhere downstream):
//  * index 0 is the cavity-like mode, identified by maximal bare-cavity
//    overlap; indices 1..L are qubit-like, ordered by ascending eigenvalue
//    (mode 1 <-> E1, the lowest one-excitation state).
//  * each eigenvector is scaled so its largest-magnitude component is
//    positive; all physics is invariant under per-mode sign flips.
//  * a presentation permutation re-orders qubit modes by descending energy,
//    which is the order used by the reference printed matrices.

#pragma once

#include "core/device.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace bhc {

enum class Frame { Lab, Rotating };

struct ModeBasis {
    Eigen::VectorXd lambda_ghz; // L+1 eigenfrequencies; [0] cavity-like, [1..L] qubit-like ascending
    Eigen::MatrixXd M;          // bare = M * dressed (columns are eigenvectors)
    Eigen::MatrixXd N;          // dressed = N * bare; N = M^-1 = M^T
    Frame frame = Frame::Lab;
    double omega_d_ghz = 0.0;   // rotating-frame drive frequency (0 in lab frame)

    int n_qubit_modes() const { return static_cast<int>(lambda_ghz.size()) - 1; }
    // energy rank of dressed qubit mode m in 1..L (identity by construction)
    int energy_order(int m) const { return m; }
    // presentation permutation: presentation row r (1..L) -> internal mode index
    std::vector<int> presentation_permutation() const;
};

// Quadratic matrix: row/col 0 cavity (omega_c or Delta_c on the diagonal,
// g_j off-diagonal); qubit block carries omega_j or Delta_j and the hopping.
Eigen::MatrixXd build_h0(const DeviceParams& params, double current_ma, Frame frame,
                         double omega_d_ghz = 0.0);

ModeBasis diagonalize_modes(const Eigen::MatrixXd& h0_ghz, Frame frame = Frame::Lab,
                            double omega_d_ghz = 0.0);

ModeBasis dressed_modes(const DeviceParams& params, double current_ma = 0.0);

// Stationary displaced-cavity amplitude under a drive of strength eps:
//   A = -eps * M00 / (lambda0 - i (kappa/2) M00),  nbar = |A|^2.
// Rotating frame: lambda0 is a detuning. Units cancel as long as eps, lambda0
// and kappa share one unit.
struct StationaryAmplitude {
    std::complex<double> amplitude;
    double nbar;
};
StationaryAmplitude stationary_cavity_amplitude(const ModeBasis& modes, double eps,
                                                double kappa);

} // namespace bhc
