// longarray.hpp — tight-binding limit of a long uniform chain: sine modes,
// mode-resolved cavity couplings xi, quartic tensor Xi, and the
// detuning-sweep cascade-cooling protocol with its coolability criterion.

#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace bhc {

struct TightBindingChain {
    int n_sites = 0;
    double omega0_ghz = 0.0;
    double hopping_ghz = 0.0;      // J
    Eigen::VectorXd coupling_ghz;  // g_j

    double k_n(int n) const;              // pi n / (L+1), n = 1..L
    double mode_energy_ghz(int n) const;  // omega0 + 2 J cos(k_n)
    Eigen::MatrixXd transform() const;    // sqrt(2/(L+1)) sin(k_m j), orthogonal
};

Eigen::VectorXd tb_mode_energies(const TightBindingChain& chain);

// xi_m = sqrt(2/(L+1)) sum_j g_j sin(k_m j)
Eigen::VectorXd xi_couplings(const TightBindingChain& chain);

// Xi_mnpq = 2/(L+1)^2 sum_j alpha_j sin(k_m j) sin(k_n j) sin(k_p j) sin(k_q j)
// Precomputed up to L = 30; evaluated lazily above (L^4 storage guard).
struct XiTensor {
    int n_sites = 0;
    bool lazy = false;
    std::vector<double> flat;            // filled when !lazy
    Eigen::VectorXd alpha_ghz;
    Eigen::MatrixXd phi;                 // sin transform, for lazy evaluation

    double operator()(int m, int n, int p, int q) const; // 0-based mode indices
};
XiTensor xi_quartic(const TightBindingChain& chain, const Eigen::VectorXd& alpha_ghz);

struct CascadeStep {
    double detuning_ghz = 0.0;
    int from_mode = 0, to_mode = 0;     // 1-based
    double energy_after_ghz = 0.0;
    double matrix_element = 0.0;        // dispersive-limit proxy, arbitrary scale
};

struct CascadeReport {
    std::vector<double> schedule_ghz;
    std::vector<CascadeStep> steps;
    std::vector<int> visited_modes;     // 1-based, in order
    double final_energy_ghz = 0.0;
    bool reached_band_minimum = false;
    bool coolable = false;              // J (pi/(L+1))^2 > kappa
    bool trapped = false;               // a vanishing matrix element blocked progress
    std::string t_eff_note;             // set when not coolable
};

// Greedy single-excitation cascade: at each schedule detuning, repeatedly take
// the largest-matrix-element transition with |w_i - w_f - Delta_c| < kappa/2,
// then move to the next detuning.
CascadeReport cascade_plan(const TightBindingChain& chain, double kappa_ghz,
                           int start_mode_1based, const std::vector<double>& sweep_ghz,
                           const Eigen::VectorXd& alpha_ghz);

} // namespace bhc
