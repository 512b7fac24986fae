#include "core/estimators.hpp"

#include "core/errors.hpp"
#include "core/fock.hpp"
#include "core/modes.hpp"
#include "core/units.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bhc {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cell.erase(0, cell.find_first_not_of(" \t\r"));
        cell.erase(cell.find_last_not_of(" \t\r") + 1);
        out.push_back(cell);
    }
    return out;
}

} // namespace

SpectroscopyDataset load_spectroscopy_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open spectroscopy CSV: " + path);
    SpectroscopyDataset data;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split_csv_line(line);
        if (header) { header = false; if (!cells.empty() && cells[0] == "current_ma") continue; }
        if (cells.size() < 4) throw ParseError("spectroscopy CSV needs current_ma,label,freq_ghz,sigma_ghz");
        SpectroscopyRow r;
        r.current_ma = std::stod(cells[0]);
        r.label = cells[1];
        r.freq_ghz = std::stod(cells[2]);
        r.sigma_ghz = std::stod(cells[3]);
        if (r.freq_ghz <= 0) throw ValidationError("spectroscopy frequency must be positive");
        if (r.sigma_ghz <= 0) throw ValidationError("spectroscopy sigma must be positive");
        data.push_back(std::move(r));
    }
    return data;
}

std::vector<std::pair<std::string, double>> array_line_energies(const DeviceParams& p,
                                                                double current_ma) {
    const int L = p.n_sites;
    const Eigen::VectorXd w = p.freqs_at_current(current_ma);
    Eigen::MatrixXd h = p.hopping_ghz;
    for (int j = 0; j < L; ++j) h(j, j) = w(j);

    std::vector<std::pair<std::string, double>> lines;
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
        for (int k = 0; k < L; ++k)
            lines.emplace_back(state_label(1, k + 1, L), es.eigenvalues()(k));
    }
    {
        const FockBasis b2 = enumerate_basis(L, 2);
        QuarticCoeffs u = QuarticCoeffs::zero(L);
        for (int j = 0; j < L; ++j) u.at(j, j, j, j) = p.anharmonicity_ghz(j); // GHz units here
        const ManifoldOperator hb = build_number_conserving_op(b2, h, &u);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hb.matrix);
        for (int k = 0; k < b2.dim(); ++k)
            lines.emplace_back(state_label(2, k + 1, b2.dim()), es.eigenvalues()(k));
    }
    return lines;
}

namespace {

struct ParamBinding {
    std::string name;
    std::function<double&(DeviceParams&)> ref;
};

std::vector<ParamBinding> parameter_table(int L) {
    std::vector<ParamBinding> t;
    for (int j = 0; j < L; ++j)
        t.push_back({"w0_" + std::to_string(j + 1),
                     [j](DeviceParams& p) -> double& { return p.site_freq_ghz(j); }});
    t.push_back({"J", [](DeviceParams& p) -> double& { return p.hopping_ghz(0, 1); }});
    if (L == 3) t.push_back({"J13", [](DeviceParams& p) -> double& { return p.hopping_ghz(0, 2); }});
    for (int j = 0; j < L; ++j)
        t.push_back({"alpha_" + std::to_string(j + 1),
                     [j](DeviceParams& p) -> double& { return p.anharmonicity_ghz(j); }});
    for (int j = 0; j < L; ++j)
        t.push_back({"B_" + std::to_string(j + 1),
                     [j](DeviceParams& p) -> double& { return p.flux.slope_rad_per_ma(j); }});
    t.push_back({"A", [](DeviceParams& p) -> double& { return p.flux.offset_rad; }});
    return t;
}

// write x into a copy of base through the free-parameter bindings; nn hopping
// is mirrored across all nearest-neighbour links when "J" is freed.
DeviceParams instantiate(const DeviceParams& base, const std::vector<ParamBinding>& bound,
                         const Eigen::VectorXd& x) {
    DeviceParams p = base;
    for (int k = 0; k < x.size(); ++k) {
        bound[static_cast<size_t>(k)].ref(p) = x(k);
        if (bound[static_cast<size_t>(k)].name == "J") {
            for (int a = 0; a + 1 < p.n_sites; ++a)
                p.hopping_ghz(a, a + 1) = p.hopping_ghz(a + 1, a) = x(k);
        }
        if (bound[static_cast<size_t>(k)].name == "J13" && p.n_sites == 3)
            p.hopping_ghz(2, 0) = p.hopping_ghz(0, 2) = x(k);
    }
    return p;
}

} // namespace

FitResult fit_spectroscopy(const SpectroscopyDataset& data, const DeviceParams& initial,
                           const std::vector<std::string>& free_params, const LMOptions& opts) {
    if (data.empty()) throw ValidationError("fit_spectroscopy: empty dataset");
    const auto table = parameter_table(initial.n_sites);
    std::vector<ParamBinding> bound;
    Eigen::VectorXd x0(static_cast<Eigen::Index>(free_params.size()));
    for (size_t k = 0; k < free_params.size(); ++k) {
        auto it = std::find_if(table.begin(), table.end(),
                               [&](const ParamBinding& b) { return b.name == free_params[k]; });
        if (it == table.end()) throw ValidationError("unknown free parameter '" + free_params[k] + "'");
        bound.push_back(*it);
        DeviceParams tmp = initial;
        x0(static_cast<Eigen::Index>(k)) = it->ref(tmp);
    }
    if (static_cast<int>(data.size()) < static_cast<int>(free_params.size()))
        throw ValidationError("fit_spectroscopy: fewer data rows than free parameters");

    // distinct currents evaluated once per residual call
    std::vector<double> currents;
    for (const auto& r : data)
        if (std::find(currents.begin(), currents.end(), r.current_ma) == currents.end())
            currents.push_back(r.current_ma);

    ResidualFn f = [&](const Eigen::VectorXd& x) {
        const DeviceParams p = instantiate(initial, bound, x);
        std::map<double, std::vector<std::pair<std::string, double>>> lines;
        for (double c : currents) lines[c] = array_line_energies(p, c);
        Eigen::VectorXd r(static_cast<Eigen::Index>(data.size()));
        for (size_t k = 0; k < data.size(); ++k) {
            const auto& row = data[k];
            const auto& ln = lines[row.current_ma];
            double model = 0.0;
            double weight = 1.0;
            if (!row.label.empty()) {
                auto it = std::find_if(ln.begin(), ln.end(),
                                       [&](const auto& e) { return e.first == row.label; });
                if (it == ln.end()) throw ValidationError("no model line labeled '" + row.label + "'");
                model = it->second;
            } else {
                // nearest-model-line assignment; reject beyond 3 sigma, down-weight
                // when a second line lies within 2 sigma of the nearest (tie radius)
                double best = 1e300, second = 1e300;
                for (const auto& e : ln) {
                    const double d = std::abs(e.second - row.freq_ghz);
                    if (d < best) { second = best; best = d; model = e.second; }
                    else if (d < second) second = d;
                }
                if (best > 3.0 * row.sigma_ghz) weight = 0.0;
                else if (second - best < 2.0 * row.sigma_ghz) weight = 0.5;
            }
            r(static_cast<Eigen::Index>(k)) = weight * (model - row.freq_ghz) / row.sigma_ghz;
        }
        return r;
    };

    const LMResult lm = lm_fit(f, x0, free_params, opts);
    FitResult out;
    out.names = free_params;
    out.values = lm.x;
    out.covariance = lm.covariance;
    out.residual_norm = lm.residual_norm;
    out.iterations = lm.iterations;
    out.converged = lm.converged;
    out.final_step = lm.final_step;
    return out;
}

DeviceParams apply_fit(const DeviceParams& base, const FitResult& fit) {
    const auto table = parameter_table(base.n_sites);
    std::vector<ParamBinding> bound;
    for (const auto& n : fit.names) {
        auto it = std::find_if(table.begin(), table.end(),
                               [&](const ParamBinding& b) { return b.name == n; });
        if (it == table.end()) throw ValidationError("unknown fit parameter '" + n + "'");
        bound.push_back(*it);
    }
    return instantiate(base, bound, fit.values);
}

CalibrationResult calibrate_working_point(const DeviceParams& device,
                                          double target_cavity_ghz,
                                          const Eigen::VectorXd& target_e_ghz,
                                          const LMOptions& opts) {
    const int L = device.n_sites;
    if (target_e_ghz.size() != L)
        throw ValidationError("calibrate_working_point: need one E target per site");

    // device with the bias frozen in: the flux map is bypassed so the bare
    // frequencies are the fit parameters themselves
    DeviceParams frozen = device;
    std::fill(frozen.flux.tunable.begin(), frozen.flux.tunable.end(), false);

    ResidualFn f = [&](const Eigen::VectorXd& x) {
        DeviceParams p = frozen;
        for (int j = 0; j < L; ++j) p.site_freq_ghz(j) = x(j);
        p.cavity_freq_ghz = x(L);
        const ModeBasis mb = diagonalize_modes(build_h0(p, 0.0, Frame::Lab));
        Eigen::VectorXd r(L + 1);
        r(0) = mb.lambda_ghz(0) - target_cavity_ghz;
        for (int j = 0; j < L; ++j) r(j + 1) = mb.lambda_ghz(j + 1) - target_e_ghz(j);
        return r;
    };

    Eigen::VectorXd x0(L + 1);
    // dispersive first guess: bare qubits slightly above the dressed targets,
    // bare cavity slightly below its dressed value
    for (int j = 0; j < L; ++j) {
        double shift = 0.0;
        const double gj = device.coupling_ghz(j);
        shift = gj * gj / (target_cavity_ghz - target_e_ghz(j));
        x0(j) = target_e_ghz(j) + shift;
    }
    double cav_shift = 0.0;
    for (int j = 0; j < L; ++j)
        cav_shift += device.coupling_ghz(j) * device.coupling_ghz(j) /
                     (target_cavity_ghz - target_e_ghz(j));
    x0(L) = target_cavity_ghz - cav_shift;

    std::vector<std::string> names;
    for (int j = 0; j < L; ++j) names.push_back("w_" + std::to_string(j + 1));
    names.push_back("w_c");

    LMOptions o = opts;
    o.relative_step_tol = std::min(opts.relative_step_tol, 1e-12);
    const LMResult lm = lm_fit(f, x0, names, o);

    CalibrationResult out;
    out.calibrated = frozen;
    for (int j = 0; j < L; ++j) out.calibrated.site_freq_ghz(j) = lm.x(j);
    out.calibrated.cavity_freq_ghz = lm.x(L);
    out.calibrated.validate();
    out.fit.names = names;
    out.fit.values = lm.x;
    out.fit.covariance = lm.covariance;
    out.fit.residual_norm = lm.residual_norm;
    out.fit.iterations = lm.iterations;
    out.fit.converged = lm.converged;
    out.max_residual_ghz = f(lm.x).cwiseAbs().maxCoeff();
    return out;
}

// ---- decay fitting ----------------------------------------------------------

std::vector<DecaySeries> load_decay_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open decay CSV: " + path);
    // rows: init,time_us,state,population
    std::map<std::string, DecaySeries> series;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split_csv_line(line);
        if (header) { header = false; if (!cells.empty() && cells[0] == "init") continue; }
        if (cells.size() < 4) throw ParseError("decay CSV needs init,time_us,state,population");
        DecaySeries& s = series[cells[0]];
        s.initial_state = cells[0];
        const double t = std::stod(cells[1]);
        if (s.times_us.empty() || s.times_us.back() != t) {
            if (!s.times_us.empty() && t < s.times_us.back())
                throw ParseError("decay CSV times must be nondecreasing per initialization");
            if (s.times_us.empty() || t != s.times_us.back()) s.times_us.push_back(t);
        }
        s.populations[cells[2]].push_back(std::stod(cells[3]));
    }
    std::vector<DecaySeries> out;
    for (auto& [k, v] : series) out.push_back(std::move(v));
    return out;
}

DecayFitResult fit_decay(const std::vector<DecaySeries>& data,
                         const std::vector<std::string>& states,
                         const NaturalRates& fixed, const DecayFitOptions& options) {
    if (data.empty()) throw ValidationError("fit_decay: no data series");
    const auto& free = options.free_rates;
    if (free.empty()) throw ValidationError("fit_decay: no free rates requested");

    auto build = [&](const Eigen::VectorXd& theta) {
        RateMatrix rm = assemble_rates(states, fixed, {}, {});
        for (size_t k = 0; k < free.size(); ++k)
            rm.add_rate(free[k].first, free[k].second, theta(static_cast<Eigen::Index>(k)) *
                                                           theta(static_cast<Eigen::Index>(k)));
        return rm;
    };

    ResidualFn f = [&](const Eigen::VectorXd& theta) {
        const RateMatrix rm = build(theta);
        std::vector<double> resid;
        for (const auto& s : data) {
            Eigen::VectorXd c0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(states.size()));
            c0(rm.index(s.initial_state)) = 1.0;
            const Trajectory tr = propagate(rm, c0, s.times_us);
            for (const auto& [label, pops] : s.populations) {
                const int idx = rm.index(label);
                for (size_t t = 0; t < pops.size(); ++t)
                    resid.push_back(tr.populations(idx, static_cast<Eigen::Index>(t)) - pops[t]);
            }
        }
        return Eigen::Map<Eigen::VectorXd>(resid.data(), static_cast<Eigen::Index>(resid.size()));
    };

    // start from a uniform modest rate
    Eigen::VectorXd theta0 = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(free.size()),
                                                       std::sqrt(0.05));
    std::vector<std::string> names;
    for (const auto& [a, b] : free) names.push_back(a + "->" + b);
    const LMResult lm = lm_fit(f, theta0, names, options.lm);

    DecayFitResult out;
    out.rates = build(lm.x);
    out.fit.names = names;
    out.fit.values = lm.x.cwiseProduct(lm.x);
    out.fit.residual_norm = lm.residual_norm;
    out.fit.iterations = lm.iterations;
    out.fit.converged = lm.converged;
    // propagate covariance through rate = theta^2 (delta method)
    out.fit.covariance = lm.covariance;
    for (int a = 0; a < lm.covariance.rows(); ++a)
        for (int b = 0; b < lm.covariance.cols(); ++b)
            out.fit.covariance(a, b) *= 4.0 * lm.x(a) * lm.x(b);
    for (size_t k = 0; k < free.size(); ++k)
        if (out.fit.values(static_cast<Eigen::Index>(k)) < 1e-8)
            out.active_constraints.push_back(names[k] + " pinned at zero");
    return out;
}

} // namespace bhc
