#include "core/dynamics.hpp"

#include "core/errors.hpp"
#include "core/units.hpp"

#include <json.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace bhc {

using nlohmann::json;

int RateMatrix::index(const std::string& label) const {
    for (size_t i = 0; i < states.size(); ++i)
        if (states[i] == label) return static_cast<int>(i);
    throw DomainError("rate matrix has no state '" + label + "'");
}

void RateMatrix::add_rate(const std::string& from, const std::string& to, double rate_us) {
    if (rate_us < 0) throw ValidationError("negative rate for " + from + " -> " + to);
    const int i = index(from), f = index(to);
    gamma(f, i) += rate_us;
    gamma(i, i) -= rate_us;
}

RateMatrix make_rate_matrix(const std::vector<std::string>& states) {
    RateMatrix rm;
    rm.states = states;
    rm.gamma = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(states.size()),
                                     static_cast<Eigen::Index>(states.size()));
    return rm;
}

RateMatrix assemble_rates(const std::vector<std::string>& states,
                          const NaturalRates& natural,
                          const std::vector<RateEntry>& cooling,
                          const std::vector<DriveSpec>& coherent,
                          double coherent_reduction) {
    RateMatrix rm = make_rate_matrix(states);
    for (const auto& e : natural.down) rm.add_rate(e.from, e.to, e.rate_us);
    for (const auto& e : natural.up) rm.add_rate(e.from, e.to, e.rate_us);
    for (const auto& e : cooling) rm.add_rate(e.from, e.to, e.rate_us);
    for (const auto& d : coherent) {
        if (d.kind != DriveSpec::Kind::Coherent)
            throw ValidationError("assemble_rates: non-coherent drive in coherent list");
        const double r = coherent_reduction * units::mhz_to_radus(d.rabi_mhz);
        rm.add_rate(d.from, d.to, r);
        rm.add_rate(d.to, d.from, r);
    }
    return rm;
}

Trajectory propagate(const RateMatrix& rm, const Eigen::VectorXd& initial,
                     const std::vector<double>& times_us) {
    if (initial.size() != rm.gamma.rows())
        throw ValidationError("propagate: initial vector dimension mismatch");
    if (initial.minCoeff() < -1e-12 || std::abs(initial.sum() - 1.0) > 1e-9)
        throw ValidationError("propagate: initial populations must lie on the simplex");

    Trajectory tr;
    tr.states = rm.states;
    tr.times_us = times_us;
    tr.populations.resize(rm.gamma.rows(), static_cast<Eigen::Index>(times_us.size()));

    // uniform grids step with a single exponential; otherwise exponentiate per time
    bool uniform = times_us.size() >= 2;
    double dt = uniform ? times_us[1] - times_us[0] : 0.0;
    for (size_t k = 2; k < times_us.size() && uniform; ++k)
        if (std::abs(times_us[k] - times_us[k - 1] - dt) > 1e-12 * std::max(1.0, dt)) uniform = false;

    if (uniform && !times_us.empty()) {
        const Eigen::MatrixXd step = (rm.gamma * dt).exp();
        Eigen::VectorXd c = initial;
        if (times_us[0] != 0.0) c = (rm.gamma * times_us[0]).exp() * c;
        tr.populations.col(0) = c;
        for (size_t k = 1; k < times_us.size(); ++k) {
            c = step * c;
            tr.populations.col(static_cast<Eigen::Index>(k)) = c;
        }
    } else {
        for (size_t k = 0; k < times_us.size(); ++k)
            tr.populations.col(static_cast<Eigen::Index>(k)) =
                (rm.gamma * times_us[k]).exp() * initial;
    }
    return tr;
}

namespace {

// weakly-connected components over nonzero off-diagonal rates
std::vector<int> components(const Eigen::MatrixXd& g) {
    const int n = static_cast<int>(g.rows());
    std::vector<int> parent(static_cast<size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && (g(i, j) != 0.0 || g(j, i) != 0.0)) parent[static_cast<size_t>(find(i))] = find(j);
    std::vector<int> comp(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) comp[static_cast<size_t>(i)] = find(i);
    return comp;
}

} // namespace

Eigen::VectorXd steady_state(const RateMatrix& rm) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(rm.gamma, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    const int n = static_cast<int>(sv.size());
    const double tol = 1e-10 * std::max(1.0, sv(0));
    int null_dim = 0;
    for (int i = 0; i < n; ++i)
        if (sv(i) < tol) ++null_dim;
    if (null_dim > 1) {
        const auto comp = components(rm.gamma);
        std::ostringstream os;
        os << "steady state not unique (kernel dimension " << null_dim << "); components:";
        std::vector<int> seen;
        for (int c : comp)
            if (std::find(seen.begin(), seen.end(), c) == seen.end()) {
                seen.push_back(c);
                os << " {";
                bool first = true;
                for (int i = 0; i < n; ++i)
                    if (comp[static_cast<size_t>(i)] == c) {
                        os << (first ? "" : ",") << rm.states[static_cast<size_t>(i)];
                        first = false;
                    }
                os << "}";
            }
        throw NumericError(os.str());
    }

    Eigen::VectorXd v = svd.matrixV().col(n - 1);
    if (v.sum() < 0) v = -v;
    const double neg = v.minCoeff();
    if (neg < -1e-8 * std::max(1.0, v.maxCoeff()))
        throw NumericError("steady-state kernel vector has a negative component");
    v = v.cwiseMax(0.0);
    return v / v.sum();
}

Protocol parse_protocol(const std::string& text) {
    json j;
    try {
        j = json::parse(text, nullptr, true, true);
    } catch (const json::exception& e) {
        throw ParseError(std::string("protocol is not valid JSON: ") + e.what());
    }
    Protocol p;
    auto read_entries = [](const json& arr, std::vector<RateEntry>& out) {
        for (const auto& e : arr) {
            RateEntry r;
            r.from = e.at("from").get<std::string>();
            r.to = e.at("to").get<std::string>();
            if (e.contains("t1_us")) r.rate_us = 1.0 / e["t1_us"].get<double>();
            else r.rate_us = e.at("rate_us").get<double>();
            out.push_back(std::move(r));
        }
    };
    if (j.contains("natural_rates")) {
        const json& nr = j["natural_rates"];
        if (nr.contains("down")) read_entries(nr["down"], p.natural.down);
        if (nr.contains("up")) read_entries(nr["up"], p.natural.up);
    }
    p.coherent_reduction = j.value("coherent_reduction", 0.5);
    if (j.contains("initial")) p.initial_state = j["initial"].get<std::string>();
    if (j.contains("stages")) {
        for (const auto& s : j["stages"]) {
            ProtocolStage st;
            st.name = s.value("name", "stage" + std::to_string(p.stages.size()));
            if (s.contains("drives")) {
                for (const auto& d : s["drives"]) {
                    DriveSpec ds;
                    const std::string kind = d.at("kind").get<std::string>();
                    ds.kind = kind == "cooling" ? DriveSpec::Kind::Cooling : DriveSpec::Kind::Coherent;
                    ds.from = d.at("pair")[0].get<std::string>();
                    ds.to = d.at("pair")[1].get<std::string>();
                    ds.nbar = d.value("nbar", 0.0);
                    ds.rabi_mhz = d.value("rabi_mhz", 0.0);
                    if (d.contains("rate_mhz")) ds.rate_mhz = d["rate_mhz"].get<double>();
                    if (d.contains("detuning_ghz")) ds.detuning_ghz = d["detuning_ghz"].get<double>();
                    st.drives.push_back(std::move(ds));
                }
            }
            if (s.contains("duration_us")) {
                st.to_steady_state = false;
                st.duration_us = s["duration_us"].get<double>();
                st.samples = s.value("samples", 50);
            }
            p.stages.push_back(std::move(st));
        }
    }
    return p;
}

Protocol load_protocol(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open protocol file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_protocol(ss.str());
}

std::vector<RateEntry> resolve_cooling_rates(const DressedModel& model,
                                             const std::vector<DriveSpec>& drives) {
    std::vector<RateEntry> out;
    for (const auto& d : drives) {
        if (d.kind != DriveSpec::Kind::Cooling) continue;
        RateEntry e;
        e.from = d.from;
        e.to = d.to;
        if (d.rate_mhz) {
            e.rate_us = *d.rate_mhz; // table units: us^-1
        } else {
            double per_photon = model.resonant_rate(d.from, d.to);
            if (d.detuning_ghz) {
                // off-resonant: Lorentzian roll-off around the transition
                const double w_if = units::ghz_to_radus(model.energy_ghz(d.from) -
                                                        model.energy_ghz(d.to));
                const double kappa = units::ghz_to_radus(model.params.cavity_kappa_ghz);
                const double dc = units::ghz_to_radus(*d.detuning_ghz);
                per_photon = 4.0 *
                             std::pow(std::abs(model.manifold_of(d.from).ob_element(
                                 model.manifold_index(d.from), model.manifold_index(d.to))), 2) *
                             sdd(w_if, dc, kappa);
            }
            e.rate_us = d.nbar * per_photon;
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<StageResult> simulate_protocol(const DressedModel& model, const Protocol& protocol) {
    const std::vector<std::string> states = model.state_labels();

    // thermal baseline: natural rates only
    RateMatrix thermal = assemble_rates(states, protocol.natural, {}, {}, protocol.coherent_reduction);
    Eigen::VectorXd c;
    if (protocol.initial_state) {
        c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(states.size()));
        c(thermal.index(*protocol.initial_state)) = 1.0;
    } else {
        c = steady_state(thermal);
    }

    std::vector<StageResult> results;
    if (protocol.stages.empty()) {
        StageResult r;
        r.name = "thermal";
        r.rates = thermal;
        r.final_populations = steady_state(thermal);
        results.push_back(std::move(r));
        return results;
    }

    for (const auto& stage : protocol.stages) {
        std::vector<DriveSpec> coherent;
        for (const auto& d : stage.drives)
            if (d.kind == DriveSpec::Kind::Coherent) coherent.push_back(d);
        const auto cooling = resolve_cooling_rates(model, stage.drives);

        StageResult r;
        r.name = stage.name;
        r.rates = assemble_rates(states, protocol.natural, cooling, coherent,
                                 protocol.coherent_reduction);
        if (stage.to_steady_state) {
            r.final_populations = steady_state(r.rates);
        } else {
            std::vector<double> times;
            for (int k = 0; k <= stage.samples; ++k)
                times.push_back(stage.duration_us * k / stage.samples);
            Trajectory tr = propagate(r.rates, c, times);
            tr.protocol = stage.name;
            r.final_populations = tr.populations.col(tr.populations.cols() - 1);
            r.trajectory = std::move(tr);
        }
        c = r.final_populations;
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace bhc
