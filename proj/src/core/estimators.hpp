// estimators.hpp — inverse problems: spectroscopy flux-map fits, working-point
// calibration (inverse eigenvalue problem), and rate-matrix fits to decay data.

#pragma once

#include "core/device.hpp"
#include "core/dynamics.hpp"
#include "core/lm.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bhc {

struct SpectroscopyRow {
    double current_ma = 0.0;
    std::string label;      // "E1".."F6"; empty = unlabeled line
    double freq_ghz = 0.0;  // state energy above G
    double sigma_ghz = 0.003;
};

using SpectroscopyDataset = std::vector<SpectroscopyRow>;

SpectroscopyDataset load_spectroscopy_csv(const std::string& path);

struct FitResult {
    std::vector<std::string> names;
    Eigen::VectorXd values;
    Eigen::MatrixXd covariance;
    double residual_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    double final_step = 0.0;
};

// Free-parameter names: w0_1..w0_L, J, J13, alpha_1..alpha_L, B_1..B_L, A.
// Model lines are array-only manifold energies (one- and two-excitation)
// evaluated at each row's current through the flux map.
FitResult fit_spectroscopy(const SpectroscopyDataset& data, const DeviceParams& initial,
                           const std::vector<std::string>& free_params,
                           const LMOptions& opts = {});

DeviceParams apply_fit(const DeviceParams& base, const FitResult& fit);

// model line energies at one current (labels E1.. then F1..), GHz above G
std::vector<std::pair<std::string, double>> array_line_energies(const DeviceParams& p,
                                                                double current_ma);

// Inverse eigenvalue problem: find bare (w_1..w_L, w_c) such that the
// quadratic-matrix spectrum matches the dressed targets
// (cavity-like, E_1..E_L ascending). Couplings are held at the device values.
struct CalibrationResult {
    DeviceParams calibrated;   // device with bare frequencies replaced
    FitResult fit;             // names w_1..w_L, w_c
    double max_residual_ghz = 0.0;
};
CalibrationResult calibrate_working_point(const DeviceParams& device,
                                          double target_cavity_ghz,
                                          const Eigen::VectorXd& target_e_ghz,
                                          const LMOptions& opts = {});

// ---- decay-rate extraction -------------------------------------------------

struct DecaySeries {
    std::string initial_state;
    std::vector<double> times_us;
    // populations[state label] aligned with times
    std::map<std::string, std::vector<double>> populations;
};

std::vector<DecaySeries> load_decay_csv(const std::string& path);

struct DecayFitOptions {
    // rates freed in the fit, as (from, to) pairs; everything else fixed
    std::vector<std::pair<std::string, std::string>> free_rates;
    LMOptions lm;
};

struct DecayFitResult {
    RateMatrix rates;                         // fitted generator
    FitResult fit;                            // values are the freed rates (us^-1)
    std::vector<std::string> active_constraints; // freed rates pinned at zero
};

// Least-squares fit of the freed rates in d_t c = Gamma c by propagating
// candidate generators; fixed rates (e.g. natural inter-manifold values)
// are taken from `fixed`. Rates are parameterized as squares so the
// nonnegativity constraint is intrinsic; a freed rate that converges to zero
// is reported as an active constraint.
DecayFitResult fit_decay(const std::vector<DecaySeries>& data,
                         const std::vector<std::string>& states,
                         const NaturalRates& fixed,
                         const DecayFitOptions& options);

} // namespace bhc
