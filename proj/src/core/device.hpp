// device.hpp — device parameters, flux-to-frequency map, drive specifications.
//
// All stored frequencies are cyclic GHz; currents mA; times us. Conversions
// to the internal angular unit happen inside the modules that need rates.

#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace bhc {

// omega_j(I) = omega0_j * sqrt(|cos(B_j * I + A)|) for tunable sites.
// The absolute value keeps the map real past a quarter flux quantum; currents
// where cos < 0 are flagged by the caller-facing evaluation.
struct FluxMap {
    Eigen::VectorXd slope_rad_per_ma;          // B_j (0 for fixed sites)
    double offset_rad = 0.0;                   // shared A
    std::optional<Eigen::VectorXd> offset_per_site; // optional per-qubit override
    std::vector<bool> tunable;
    double current_min_ma = -50.0;
    double current_max_ma = 50.0;

    double argument(int site, double current_ma) const;
};

struct DriveSpec {
    enum class Kind { Cooling, Coherent };
    Kind kind = Kind::Cooling;
    std::string from, to;                 // ordered state labels (i, f)
    double nbar = 0.0;                    // cooling drives: mean photon number
    double rabi_mhz = 0.0;                // coherent drives: Omega_R/2pi in MHz
    std::optional<double> rate_mhz;       // cooling drives: explicit achieved rate (us^-1), alternative to nbar
    std::optional<double> detuning_ghz;   // Delta_c/2pi; absent = resonant with the (i,f) transition
};

struct DeviceParams {
    int n_sites = 0;
    Eigen::VectorXd site_freq_ghz;        // omega_{0j}/2pi at zero flux (or at the stored bias)
    Eigen::VectorXd anharmonicity_ghz;    // alpha_j/2pi, negative
    double cavity_freq_ghz = 0.0;         // bare value entering the quadratic matrix
    double cavity_kappa_ghz = 0.0;
    Eigen::VectorXd coupling_ghz;         // g_j/2pi
    Eigen::MatrixXd hopping_ghz;          // symmetric, zero diagonal; J on nn, J13 in corners for L=3

    FluxMap flux;
    std::vector<DriveSpec> drives;

    // site frequencies at a coil current; non-tunable sites keep their stored value.
    // degenerate_flux is set when any cos argument is within tol of +-pi/2;
    // negative_cos when any cos < 0 (map continued by |cos|).
    Eigen::VectorXd freqs_at_current(double current_ma,
                                     bool* degenerate_flux = nullptr,
                                     bool* negative_cos = nullptr) const;

    // warnings (dispersive ratio above 0.2, ...) collected at load time
    std::vector<std::string> warnings;

    void validate();                      // throws ValidationError; refreshes warnings
};

// Structured JSON config with top-level keys exactly:
//   sites, cavity, couplings, hopping, flux_map, drives
DeviceParams load_config(const std::string& path);
DeviceParams parse_config(const std::string& json_text);
std::string serialize_config(const DeviceParams& p);

} // namespace bhc
