// dissipation.hpp — bath-coupling quantities: cavity shot-noise spectrum,
// Golden-Rule cooling rates, Purcell decay, dispersive chi shifts, dipole
// brightness with dark-point scans, and drive-power calibration.
//
// Rate unit note. Internally every rate is angular (rad/us, numerically
// us^-1). Exported "table units" are us^-1 printed as MHz, the convention of
// the reference rate tables: the resonant per-photon rate in table units is
// 16*(2*pi)*eta_cyc^2/kappa_cyc with eta_cyc in cyclic MHz. This export
// identity is regression-tested.

#pragma once

#include "core/manifolds.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bhc {

// Lorentzian spectral density of the driven-cavity field fluctuations,
// S_DD(w) = kappa / ((w - Delta_c)^2 + (kappa/2)^2), result in us.
double sdd(double omega_radus, double delta_c_radus, double kappa_radus);

struct CoolingTransition {
    std::string from, to;
    double matrix_element_radus = 0.0;   // |<f|O_B|i>|
    double resonant_detuning_ghz = 0.0;  // omega_i - omega_f
    double rate_per_photon_table = 0.0;  // us^-1 at resonance, per photon
};

struct CoolingRateResult {
    double rate_us = 0.0; // us^-1
    bool valid = true;    // false when rate >= kappa (perturbative regime exceeded)
};

// Gamma = 4 nbar |M_if|^2 S_DD(omega_i - omega_f), frequencies Stark-shifted
// at nbar. i, f are state indices in the manifold; requires E_i > E_f.
CoolingRateResult cooling_rate(const ModeBasis& modes, const KerrTensors& kerr,
                               const ManifoldSystem& manifold, int i, int f,
                               double nbar, double delta_c_ghz, double kappa_ghz);

// Gamma/nbar at resonance = (16/kappa)|M_if|^2, in table units (us^-1).
double resonant_rate_per_photon(const ManifoldSystem& manifold, int i, int f,
                                double kappa_ghz);

std::vector<CoolingTransition> cooling_table(const ManifoldSystem& manifold,
                                             double kappa_ghz);

// Purcell decay through the bare-cavity admixture, a = M00 A + sum M0l B_l.
struct PurcellRates {
    // rates[f][i]: i in upper manifold -> f in lower manifold, us^-1
    Eigen::MatrixXd rates_us;
};
PurcellRates purcell_rates(const ManifoldSystem& upper, const ManifoldSystem& lower,
                           const ModeBasis& modes, double kappa_ghz);

// direct N -> N-2 channel via a^2 (two-photon loss of the admixture)
Eigen::MatrixXd purcell_rates_two_step(const ManifoldSystem& upper,
                                       const ManifoldSystem& lower2,
                                       const ModeBasis& modes, double kappa_ghz);

// chi_S = 2 <O_B>_S (cavity pull), theta_S = 2 atan(2 chi_S / kappa).
struct ChiShift {
    double chi_over_kappa = 0.0;
    double theta_rad = 0.0;
};
ChiShift chi_shift(const ManifoldSystem& manifold, int state, double kappa_ghz);

// inverse conversion used on measured reflected phases
double chi_over_kappa_from_theta(double theta_rad);

// |<S| sum_j g_j b_j^+ |G>| for a one-excitation array eigenstate S, via the
// bare-basis eigenvector of the array-only Hamiltonian at the given current.
double brightness(const DeviceParams& params, double current_ma, int state_rank);

struct BrightnessScan {
    int state_rank = 1;                // 1 = E1
    std::vector<double> currents_ma;
    std::vector<double> d_sg_ghz;      // |amplitude|
    std::vector<double> dark_points_ma; // interpolated zeros of the signed amplitude
};
BrightnessScan dark_scan(const DeviceParams& params, int state_rank,
                         double current_min_ma, double current_max_ma, int n_points);

// Drive-power calibration: dephasing = 8 chi^2 nbar / kappa, stark = 2 chi nbar.
// From the two slopes vs power: chi = (kappa/4) (dephasing_slope/stark_slope);
// photon number per unit power from the Stark slope.
struct DriveCalibration {
    double chi;            // same unit as kappa
    double nbar_per_power; // photons per power unit
};
DriveCalibration drive_calibration(double stark_slope, double dephasing_slope,
                                   double kappa);

} // namespace bhc
