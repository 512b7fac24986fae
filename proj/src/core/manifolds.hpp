// manifolds.hpp — dressed-mode manifold Hamiltonian H_B, the cooling/readout
// operator O_B, the Stark-shifted Hamiltonian and the manifold eigenstates.

#pragma once

#include "core/fock.hpp"
#include "core/kerr.hpp"
#include "core/modes.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace bhc {

enum class StarkMode { Perturbative, Rediagonalize };

struct ManifoldSystem {
    FockBasis basis;            // over dressed qubit modes
    ManifoldOperator h_b;       // sum lambda B+B + 1/2 sum mu B+B+BB (rad/us)
    ManifoldOperator o_b;       // sum eta B+B (rad/us)
    double nbar = 0.0;
    Eigen::VectorXd energies_radus;  // eigenvalues of h_b + 2 nbar o_b, label order
    Eigen::MatrixXd eigenvectors;    // columns, label order
    std::vector<std::string> labels; // G / E1..EL / F1..Fdim / N{k}_{r}

    int dim() const { return basis.dim(); }
    int n_excitations() const { return basis.n_excitations; }
    double energy_ghz(int state) const;
    int index_of_label(const std::string& label) const; // -1 if absent

    // <state| O_B |state>, rad/us
    double ob_expectation(int state) const;
    // <f| O_B |i>, rad/us
    double ob_element(int i, int f) const;
};

// Eigenstates at nbar = 0 are labeled by ascending energy. At nbar > 0 the
// labels are carried over by maximal overlap with the nbar = 0 eigenstates
// (Stark shifts can reorder near-degenerate pairs); ambiguous tracking
// (max overlap < 0.6) is a hard error.
ManifoldSystem build_manifold(const ModeBasis& modes, const KerrTensors& kerr,
                              int n_excitations, double nbar = 0.0);

ManifoldOperator lift_ob(const FockBasis& basis, const Eigen::MatrixXd& eta_radus);

double stark_shifted_frequency_ghz(const ModeBasis& modes, const KerrTensors& kerr,
                                   const ManifoldSystem& manifold_nbar0, int state,
                                   double nbar, StarkMode mode = StarkMode::Rediagonalize);

std::string state_label(int n_excitations, int rank_ascending, int manifold_dim);

} // namespace bhc
