// kerr.hpp — quartic-interaction tensors in the dressed basis.

#pragma once

#include "core/fock.hpp"
#include "core/modes.hpp"

#include <Eigen/Dense>

namespace bhc {

// All entries rad/us. Indices run over qubit-like dressed modes 0..L-1
// (internal ascending order).
struct KerrTensors {
    QuarticCoeffs mu;     // mu_lpqs = sum_j alpha_j M_jl M_jp M_jq M_js
    Eigen::MatrixXd eta;  // eta_lp  = sum_j alpha_j M_j0^2 M_jl M_jp
    double pi0 = 0.0;     // Pi_0    = sum_j alpha_j M_j0^4 (reported, never enters dynamics)

    Eigen::MatrixXd eta_cyclic_mhz() const; // presentation-free export helper
};

KerrTensors compute_kerr(const ModeBasis& modes, const Eigen::VectorXd& anharmonicity_ghz);

} // namespace bhc
