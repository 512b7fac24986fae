#include "core/longarray.hpp"

#include "core/errors.hpp"

#include <cmath>
#include <sstream>

namespace bhc {

double TightBindingChain::k_n(int n) const {
    return M_PI * n / (n_sites + 1);
}

double TightBindingChain::mode_energy_ghz(int n) const {
    return omega0_ghz + 2.0 * hopping_ghz * std::cos(k_n(n));
}

Eigen::MatrixXd TightBindingChain::transform() const {
    const int L = n_sites;
    Eigen::MatrixXd phi(L, L);
    const double norm = std::sqrt(2.0 / (L + 1));
    for (int m = 1; m <= L; ++m)
        for (int j = 1; j <= L; ++j)
            phi(m - 1, j - 1) = norm * std::sin(k_n(m) * j);
    return phi;
}

Eigen::VectorXd tb_mode_energies(const TightBindingChain& chain) {
    if (chain.n_sites < 2) throw ValidationError("tight-binding chain needs L >= 2");
    Eigen::VectorXd e(chain.n_sites);
    for (int n = 1; n <= chain.n_sites; ++n) e(n - 1) = chain.mode_energy_ghz(n);
    return e;
}

Eigen::VectorXd xi_couplings(const TightBindingChain& chain) {
    if (chain.coupling_ghz.size() != chain.n_sites)
        throw ValidationError("xi_couplings: coupling vector length mismatch");
    return chain.transform() * chain.coupling_ghz;
}

// With the normalized transform phi, the prefactors collapse:
// Xi_mnpq = 1/2 sum_j alpha_j phi_m(j) phi_n(j) phi_p(j) phi_q(j).
double XiTensor::operator()(int m, int n, int p, int q) const {
    const int L = n_sites;
    if (!lazy)
        return flat[static_cast<size_t>(((m * L + n) * L + p) * L + q)];
    double v = 0.0;
    for (int j = 0; j < L; ++j)
        v += alpha_ghz(j) * phi(m, j) * phi(n, j) * phi(p, j) * phi(q, j);
    return 0.5 * v;
}

XiTensor xi_quartic(const TightBindingChain& chain, const Eigen::VectorXd& alpha_ghz) {
    if (alpha_ghz.size() != chain.n_sites)
        throw ValidationError("xi_quartic: anharmonicity vector length mismatch");
    XiTensor t;
    t.n_sites = chain.n_sites;
    t.alpha_ghz = alpha_ghz;
    t.phi = chain.transform();
    const int L = chain.n_sites;
    if (L > 30) { // L^4 storage guard: evaluate lazily
        t.lazy = true;
        return t;
    }
    t.flat.assign(static_cast<size_t>(L) * L * L * L, 0.0);
    for (int m = 0; m < L; ++m)
        for (int n = 0; n < L; ++n)
            for (int p = 0; p < L; ++p)
                for (int q = 0; q < L; ++q) {
                    double v = 0.0;
                    for (int j = 0; j < L; ++j)
                        v += alpha_ghz(j) * t.phi(m, j) * t.phi(n, j) * t.phi(p, j) * t.phi(q, j);
                    t.flat[static_cast<size_t>(((m * L + n) * L + p) * L + q)] = 0.5 * v;
                }
    return t;
}

namespace {

// dispersive-limit cooling matrix element between modes, up to a constant:
// m_lp = sum_j alpha_j g_j^2 phi_l(j) phi_p(j)
Eigen::MatrixXd cascade_elements(const TightBindingChain& chain,
                                 const Eigen::VectorXd& alpha_ghz) {
    const int L = chain.n_sites;
    const Eigen::MatrixXd phi = chain.transform();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(L, L);
    for (int l = 0; l < L; ++l)
        for (int p = 0; p < L; ++p)
            for (int j = 0; j < L; ++j)
                m(l, p) += alpha_ghz(j) * chain.coupling_ghz(j) * chain.coupling_ghz(j) *
                           phi(l, j) * phi(p, j);
    return m;
}

} // namespace

CascadeReport cascade_plan(const TightBindingChain& chain, double kappa_ghz,
                           int start_mode, const std::vector<double>& sweep_ghz,
                           const Eigen::VectorXd& alpha_ghz) {
    const int L = chain.n_sites;
    if (start_mode < 1 || start_mode > L) throw DomainError("cascade_plan: start mode out of range");
    const Eigen::VectorXd energies = tb_mode_energies(chain);
    const Eigen::MatrixXd elem = cascade_elements(chain, alpha_ghz);
    const double elem_tol = 1e-12 * std::max(1e-300, elem.cwiseAbs().maxCoeff());

    int band_min = 0;
    for (int n = 1; n < L; ++n)
        if (energies(n) < energies(band_min)) band_min = n;

    CascadeReport rep;
    rep.schedule_ghz = sweep_ghz;
    rep.coolable = chain.hopping_ghz * std::pow(M_PI / (L + 1), 2) > kappa_ghz;

    int cur = start_mode - 1;
    rep.visited_modes.push_back(cur + 1);
    for (double dc : sweep_ghz) {
        for (;;) {
            int best = -1;
            double best_elem = elem_tol;
            for (int f = 0; f < L; ++f) {
                if (f == cur) continue;
                const double drop = energies(cur) - energies(f);
                if (drop <= 0) continue;
                if (std::abs(drop - dc) >= 0.5 * kappa_ghz) continue;
                if (std::abs(elem(cur, f)) > best_elem) {
                    best_elem = std::abs(elem(cur, f));
                    best = f;
                }
                if (std::abs(elem(cur, f)) <= elem_tol) rep.trapped = true;
            }
            if (best < 0) break;
            CascadeStep step;
            step.detuning_ghz = dc;
            step.from_mode = cur + 1;
            step.to_mode = best + 1;
            step.energy_after_ghz = energies(best);
            step.matrix_element = best_elem;
            rep.steps.push_back(step);
            cur = best;
            rep.visited_modes.push_back(cur + 1);
        }
    }
    rep.final_energy_ghz = energies(cur);
    rep.reached_band_minimum = (cur == band_min);
    if (!rep.coolable)
        rep.t_eff_note = "ground state unreachable: J (pi/(L+1))^2 <= kappa; residual "
                         "effective temperature of order kappa";
    if (rep.trapped && !rep.reached_band_minimum)
        rep.t_eff_note += std::string(rep.t_eff_note.empty() ? "" : "; ") +
                          "trapped on a vanishing matrix element: rescan the detuning down and up";
    return rep;
}

} // namespace bhc
