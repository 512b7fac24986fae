#include "core/manifolds.hpp"

#include "core/errors.hpp"
#include "core/units.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bhc {

std::string state_label(int n_excitations, int rank, int) {
    if (n_excitations == 0) return "G";
    std::ostringstream os;
    if (n_excitations == 1) os << "E" << rank;
    else if (n_excitations == 2) os << "F" << rank;
    else os << "N" << n_excitations << "_" << rank;
    return os.str();
}

double ManifoldSystem::energy_ghz(int state) const {
    return units::radus_to_ghz(energies_radus(state));
}

int ManifoldSystem::index_of_label(const std::string& label) const {
    for (int i = 0; i < dim(); ++i)
        if (labels[static_cast<size_t>(i)] == label) return i;
    return -1;
}

double ManifoldSystem::ob_expectation(int state) const {
    return eigenvectors.col(state).dot(o_b.matrix * eigenvectors.col(state));
}

double ManifoldSystem::ob_element(int i, int f) const {
    return eigenvectors.col(f).dot(o_b.matrix * eigenvectors.col(i));
}

ManifoldOperator lift_ob(const FockBasis& basis, const Eigen::MatrixXd& eta) {
    return build_quadratic_op(basis, eta);
}

namespace {

// solve h_b + 2 nbar o_b; order eigenpairs by a reference (nbar = 0) labeling
// when given, else by ascending energy.
void solve_manifold(ManifoldSystem& ms, const Eigen::MatrixXd* reference_vectors) {
    Eigen::MatrixXd h = ms.h_b.matrix + 2.0 * ms.nbar * ms.o_b.matrix;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) throw NumericError("manifold diagonalization failed");
    Eigen::VectorXd e = es.eigenvalues();
    Eigen::MatrixXd v = es.eigenvectors();

    const int d = static_cast<int>(e.size());
    std::vector<int> order(static_cast<size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    if (reference_vectors) {
        // overlap tracking from the nbar = 0 labels
        std::vector<bool> used(static_cast<size_t>(d), false);
        for (int lbl = 0; lbl < d; ++lbl) {
            int best = -1;
            double bw = -1;
            for (int c = 0; c < d; ++c) {
                if (used[static_cast<size_t>(c)]) continue;
                const double ov = std::abs(reference_vectors->col(lbl).dot(v.col(c)));
                if (ov > bw) { bw = ov; best = c; }
            }
            if (bw < 0.6) {
                std::ostringstream os;
                os << "state tracking ambiguous at nbar = " << ms.nbar << ": label " << lbl + 1
                   << " has maximal overlap " << bw << " < 0.6";
                throw NumericError(os.str());
            }
            order[static_cast<size_t>(lbl)] = best;
            used[static_cast<size_t>(best)] = true;
        }
    } else {
        // ascending energy; degeneracy below 1 kHz would corrupt labels
        for (int k = 0; k + 1 < d; ++k)
            if (e(k + 1) - e(k) < units::ghz_to_radus(1e-6)) {
                std::ostringstream os;
                os << "manifold eigenstates " << k + 1 << "," << k + 2 << " degenerate within 1 kHz";
                throw NumericError(os.str());
            }
    }

    ms.energies_radus.resize(d);
    ms.eigenvectors.resize(d, d);
    for (int k = 0; k < d; ++k) {
        ms.energies_radus(k) = e(order[static_cast<size_t>(k)]);
        ms.eigenvectors.col(k) = v.col(order[static_cast<size_t>(k)]);
        int imax = 0;
        for (int r = 1; r < d; ++r)
            if (std::abs(ms.eigenvectors(r, k)) > std::abs(ms.eigenvectors(imax, k))) imax = r;
        if (ms.eigenvectors(imax, k) < 0) ms.eigenvectors.col(k) *= -1.0;
    }
}

} // namespace

ManifoldSystem build_manifold(const ModeBasis& modes, const KerrTensors& kerr,
                              int n_excitations, double nbar) {
    if (n_excitations < 0) throw ValidationError("build_manifold: N must be >= 0");
    if (nbar < 0) throw ValidationError("build_manifold: nbar must be >= 0");
    const int L = modes.n_qubit_modes();

    ManifoldSystem ms;
    ms.basis = enumerate_basis(L, n_excitations);
    ms.nbar = nbar;

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(L, L);
    for (int m = 0; m < L; ++m) h(m, m) = units::ghz_to_radus(modes.lambda_ghz(m + 1));
    ms.h_b = build_number_conserving_op(ms.basis, h, &kerr.mu);
    ms.o_b = lift_ob(ms.basis, kerr.eta);

    if (nbar == 0.0) {
        solve_manifold(ms, nullptr);
    } else {
        ManifoldSystem ref = ms;
        ref.nbar = 0.0;
        solve_manifold(ref, nullptr);
        solve_manifold(ms, &ref.eigenvectors);
    }

    ms.labels.reserve(static_cast<size_t>(ms.dim()));
    for (int k = 0; k < ms.dim(); ++k)
        ms.labels.push_back(state_label(n_excitations, k + 1, ms.dim()));
    return ms;
}

double stark_shifted_frequency_ghz(const ModeBasis& modes, const KerrTensors& kerr,
                                   const ManifoldSystem& m0, int state, double nbar,
                                   StarkMode mode) {
    if (state < 0 || state >= m0.dim()) throw DomainError("stark_shifted_frequency: no such state");
    if (mode == StarkMode::Perturbative) {
        // omega_i + 2 nbar <psi_i|O_B|psi_i> with the nbar = 0 eigenstate
        return units::radus_to_ghz(m0.energies_radus(state) + 2.0 * nbar * m0.ob_expectation(state));
    }
    ManifoldSystem shifted = build_manifold(modes, kerr, m0.n_excitations(), nbar);
    return shifted.energy_ghz(state);
}

} // namespace bhc
