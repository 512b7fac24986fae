#include "core/dissipation.hpp"

#include "core/errors.hpp"
#include "core/units.hpp"

#include <cmath>
#include <sstream>

namespace bhc {

double sdd(double omega, double delta_c, double kappa) {
    if (kappa <= 0) throw ValidationError("sdd: kappa must be > 0");
    const double d = omega - delta_c;
    return kappa / (d * d + 0.25 * kappa * kappa);
}

CoolingRateResult cooling_rate(const ModeBasis& modes, const KerrTensors& kerr,
                               const ManifoldSystem& manifold, int i, int f,
                               double nbar, double delta_c_ghz, double kappa_ghz) {
    if (i < 0 || f < 0 || i >= manifold.dim() || f >= manifold.dim())
        throw DomainError("cooling_rate: state index out of range");
    if (manifold.energies_radus(i) <= manifold.energies_radus(f))
        throw DomainError("cooling_rate: requires E_i > E_f (cooling sign convention)");
    if (nbar < 0) throw ValidationError("cooling_rate: nbar must be >= 0");

    const double wi = units::ghz_to_radus(
        stark_shifted_frequency_ghz(modes, kerr, manifold, i, nbar));
    const double wf = units::ghz_to_radus(
        stark_shifted_frequency_ghz(modes, kerr, manifold, f, nbar));
    const double m = manifold.ob_element(i, f);
    const double kappa = units::ghz_to_radus(kappa_ghz);
    const double dc = units::ghz_to_radus(delta_c_ghz);

    CoolingRateResult r;
    r.rate_us = 4.0 * nbar * m * m * sdd(wi - wf, dc, kappa);
    r.valid = r.rate_us < kappa;
    return r;
}

double resonant_rate_per_photon(const ManifoldSystem& manifold, int i, int f,
                                double kappa_ghz) {
    if (i < 0 || f < 0 || i >= manifold.dim() || f >= manifold.dim())
        throw DomainError("resonant_rate_per_photon: state index out of range");
    const double m = manifold.ob_element(i, f);
    return 16.0 * m * m / units::ghz_to_radus(kappa_ghz);
}

std::vector<CoolingTransition> cooling_table(const ManifoldSystem& manifold,
                                             double kappa_ghz) {
    std::vector<CoolingTransition> out;
    for (int i = manifold.dim() - 1; i >= 0; --i)
        for (int f = i - 1; f >= 0; --f) {
            CoolingTransition t;
            t.from = manifold.labels[static_cast<size_t>(i)];
            t.to = manifold.labels[static_cast<size_t>(f)];
            t.matrix_element_radus = std::abs(manifold.ob_element(i, f));
            t.resonant_detuning_ghz = manifold.energy_ghz(i) - manifold.energy_ghz(f);
            t.rate_per_photon_table = resonant_rate_per_photon(manifold, i, f, kappa_ghz);
            out.push_back(std::move(t));
        }
    return out;
}

PurcellRates purcell_rates(const ManifoldSystem& upper, const ManifoldSystem& lower,
                           const ModeBasis& modes, double kappa_ghz) {
    if (upper.n_excitations() != lower.n_excitations() + 1)
        throw DomainError("purcell_rates: manifolds must differ by one excitation");
    const int L = modes.n_qubit_modes();
    const double kappa = units::ghz_to_radus(kappa_ghz);

    // qubit-mode part of the bare cavity operator in the dressed basis
    Eigen::MatrixXd amp = Eigen::MatrixXd::Zero(lower.dim(), upper.dim());
    for (int l = 0; l < L; ++l) {
        const Eigen::MatrixXd bl = mode_annihilator(upper.basis, lower.basis, l);
        amp += modes.M(0, l + 1) * bl;
    }
    const Eigen::MatrixXd a_eig = lower.eigenvectors.transpose() * amp * upper.eigenvectors;

    PurcellRates out;
    out.rates_us = kappa * a_eig.cwiseProduct(a_eig);
    return out;
}

Eigen::MatrixXd purcell_rates_two_step(const ManifoldSystem& upper,
                                       const ManifoldSystem& lower2,
                                       const ModeBasis& modes, double kappa_ghz) {
    if (upper.n_excitations() != lower2.n_excitations() + 2)
        throw DomainError("purcell_rates_two_step: manifolds must differ by two excitations");
    const int L = modes.n_qubit_modes();
    const double kappa = units::ghz_to_radus(kappa_ghz);
    const FockBasis mid = enumerate_basis(L, upper.n_excitations() - 1);

    Eigen::MatrixXd amp = Eigen::MatrixXd::Zero(lower2.dim(), upper.dim());
    for (int l = 0; l < L; ++l) {
        const Eigen::MatrixXd first = mode_annihilator(upper.basis, mid, l);
        for (int p = 0; p < L; ++p) {
            const Eigen::MatrixXd second = mode_annihilator(mid, lower2.basis, p);
            amp += modes.M(0, l + 1) * modes.M(0, p + 1) * second * first;
        }
    }
    const Eigen::MatrixXd a_eig = lower2.eigenvectors.transpose() * amp * upper.eigenvectors;
    return kappa * a_eig.cwiseProduct(a_eig);
}

ChiShift chi_shift(const ManifoldSystem& manifold, int state, double kappa_ghz) {
    if (state < 0 || state >= manifold.dim()) throw DomainError("chi_shift: no such state");
    ChiShift c;
    const double chi_radus = 2.0 * manifold.ob_expectation(state);
    c.chi_over_kappa = chi_radus / units::ghz_to_radus(kappa_ghz);
    c.theta_rad = 2.0 * std::atan(2.0 * c.chi_over_kappa);
    return c;
}

double chi_over_kappa_from_theta(double theta_rad) {
    return 0.5 * std::tan(0.5 * theta_rad);
}

namespace {

// array-only one-excitation eigenvector (no cavity), rank ascending from 1
Eigen::VectorXd array_eigenvector(const DeviceParams& p, double current_ma, int rank) {
    const int L = p.n_sites;
    if (rank < 1 || rank > L) throw DomainError("brightness: state rank out of range");
    const Eigen::VectorXd w = p.freqs_at_current(current_ma);
    Eigen::MatrixXd h = p.hopping_ghz;
    for (int j = 0; j < L; ++j) h(j, j) = w(j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) throw NumericError("array diagonalization failed");
    return es.eigenvectors().col(rank - 1);
}

} // namespace

double brightness(const DeviceParams& p, double current_ma, int rank) {
    const Eigen::VectorXd v = array_eigenvector(p, current_ma, rank);
    return std::abs(p.coupling_ghz.dot(v));
}

BrightnessScan dark_scan(const DeviceParams& p, int rank, double imin, double imax,
                         int n_points) {
    if (n_points < 2) throw ValidationError("dark_scan: need at least 2 points");
    BrightnessScan scan;
    scan.state_rank = rank;
    scan.currents_ma.reserve(static_cast<size_t>(n_points));

    // signed amplitude with eigenvector continuity along the scan
    Eigen::VectorXd prev;
    std::vector<double> signed_amp;
    for (int k = 0; k < n_points; ++k) {
        const double cur = imin + (imax - imin) * k / (n_points - 1);
        Eigen::VectorXd v = array_eigenvector(p, cur, rank);
        if (prev.size() && v.dot(prev) < 0) v = -v;
        prev = v;
        scan.currents_ma.push_back(cur);
        signed_amp.push_back(p.coupling_ghz.dot(v));
        scan.d_sg_ghz.push_back(std::abs(signed_amp.back()));
    }

    // bracket sign changes of the signed amplitude, bisect to 0.01 mA
    for (int k = 0; k + 1 < n_points; ++k) {
        if (signed_amp[static_cast<size_t>(k)] == 0.0) {
            scan.dark_points_ma.push_back(scan.currents_ma[static_cast<size_t>(k)]);
            continue;
        }
        if (signed_amp[static_cast<size_t>(k)] * signed_amp[static_cast<size_t>(k + 1)] >= 0.0) continue;
        double lo = scan.currents_ma[static_cast<size_t>(k)];
        double hi = scan.currents_ma[static_cast<size_t>(k + 1)];
        Eigen::VectorXd vref = array_eigenvector(p, lo, rank);
        if (p.coupling_ghz.dot(vref) * signed_amp[static_cast<size_t>(k)] < 0) vref = -vref;
        double flo = p.coupling_ghz.dot(vref);
        while (hi - lo > 0.01) {
            const double mid = 0.5 * (lo + hi);
            Eigen::VectorXd v = array_eigenvector(p, mid, rank);
            if (v.dot(vref) < 0) v = -v;
            const double fm = p.coupling_ghz.dot(v);
            if (flo * fm <= 0) hi = mid;
            else { lo = mid; flo = fm; vref = v; }
        }
        scan.dark_points_ma.push_back(0.5 * (lo + hi));
    }
    return scan;
}

DriveCalibration drive_calibration(double stark_slope, double dephasing_slope,
                                   double kappa) {
    if (stark_slope == 0.0) throw NumericError("drive_calibration: stark slope is zero");
    if (stark_slope < 0 || dephasing_slope < 0)
        throw ValidationError("drive_calibration: slopes must be positive");
    DriveCalibration c;
    c.chi = 0.25 * kappa * dephasing_slope / stark_slope;
    c.nbar_per_power = stark_slope / (2.0 * c.chi);
    return c;
}

} // namespace bhc
