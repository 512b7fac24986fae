// fock.hpp — number-conserving bosonic Fock bases over L modes and matrix
// representations of quadratic + quartic ladder expressions within a fixed
// excitation manifold.

#pragma once

#include "core/device.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace bhc {

struct FockBasis {
    int n_modes = 0;
    int n_excitations = 0;
    std::vector<std::vector<int>> states; // occupation vectors, fixed deterministic order

    int dim() const { return static_cast<int>(states.size()); }
    int index_of(const std::vector<int>& occ) const; // -1 if absent
};

// Deterministic order: lexicographic descending, except (L=3, N=2) which uses
// the fixed reference order |200>,|020>,|002>,|110>,|011>,|101> so that
// matrices compare entry-by-entry with the printed two-excitation forms.
FockBasis enumerate_basis(int n_modes, int n_excitations);

// Flat symmetric quartic coefficient tensor u_{lpqs}, entries rad/us.
struct QuarticCoeffs {
    int n_modes = 0;
    std::vector<double> flat; // size L^4, index ((l*L+p)*L+q)*L+s

    static QuarticCoeffs zero(int L) { return {L, std::vector<double>(static_cast<size_t>(L)*L*L*L, 0.0)}; }
    double operator()(int l, int p, int q, int s) const {
        return flat[static_cast<size_t>(((l * n_modes + p) * n_modes + q) * n_modes + s)];
    }
    double& at(int l, int p, int q, int s) {
        return flat[static_cast<size_t>(((l * n_modes + p) * n_modes + q) * n_modes + s)];
    }
    void check_symmetry(double tol = 1e-12) const; // u_lpqs = u_plqs = u_lpsq = u_qslp
};

struct ManifoldOperator {
    Eigen::MatrixXd matrix; // Hermitian (real symmetric), rad/us
};

// sum_lp h_lp B+_l B_p + 1/2 sum_lpqs u_lpqs B+_l B+_p B_q B_s restricted to
// the manifold, with exact bosonic matrix elements.
ManifoldOperator build_number_conserving_op(const FockBasis& basis,
                                            const Eigen::MatrixXd& h_radus,
                                            const QuarticCoeffs* u_radus = nullptr);

// sum_lp c_lp B+_l B_p alone (no quartic part).
ManifoldOperator build_quadratic_op(const FockBasis& basis, const Eigen::MatrixXd& c_radus);

// matrix of B_mode from the N-excitation basis into the (N-1)-excitation basis.
Eigen::MatrixXd mode_annihilator(const FockBasis& from, const FockBasis& to, int mode);

// Full coupled cavity+array Hamiltonian on the truncated product space
// (photons 0..max_photons, each site 0..max_level). Number conserving by
// construction; serves as the brute-force oracle for dressed energies,
// Purcell overlaps and brightness.
struct JointDiagonalization {
    std::vector<std::vector<int>> product_states; // (n_cav, n_1, ..., n_L)
    Eigen::VectorXd energies_ghz;                 // ascending
    Eigen::MatrixXd vectors;                      // columns, same order
    int total_quanta(int eigenstate) const;       // exact: conserved
    double cavity_weight(int eigenstate) const;   // <n_cav>
};

JointDiagonalization exact_joint_diagonalization(const DeviceParams& params,
                                                 int max_photons,
                                                 int max_level_per_site,
                                                 double current_ma = 0.0);

} // namespace bhc
