#include "core/device.hpp"

#include "core/errors.hpp"
#include "core/units.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace bhc {

using nlohmann::json;

double FluxMap::argument(int site, double current_ma) const {
    const double a = offset_per_site ? (*offset_per_site)(site) : offset_rad;
    return slope_rad_per_ma(site) * current_ma + a;
}

Eigen::VectorXd DeviceParams::freqs_at_current(double current_ma,
                                               bool* degenerate_flux,
                                               bool* negative_cos) const {
    if (current_ma < flux.current_min_ma || current_ma > flux.current_max_ma) {
        std::ostringstream os;
        os << "current " << current_ma << " mA outside scan bounds ["
           << flux.current_min_ma << ", " << flux.current_max_ma << "]";
        throw DomainError(os.str());
    }
    if (degenerate_flux) *degenerate_flux = false;
    if (negative_cos) *negative_cos = false;
    Eigen::VectorXd w = site_freq_ghz;
    for (int j = 0; j < n_sites; ++j) {
        if (!flux.tunable[static_cast<size_t>(j)]) continue;
        const double c = std::cos(flux.argument(j, current_ma));
        if (std::abs(c) < 1e-6 && degenerate_flux) *degenerate_flux = true;
        if (c < 0 && negative_cos) *negative_cos = true;
        w(j) = site_freq_ghz(j) * std::sqrt(std::abs(c));
    }
    return w;
}

void DeviceParams::validate() {
    warnings.clear();
    if (n_sites < 2) throw ValidationError("n_sites must be >= 2");
    auto finite = [](const Eigen::VectorXd& v) { return v.allFinite(); };
    if (!finite(site_freq_ghz) || !finite(anharmonicity_ghz) || !finite(coupling_ghz) ||
        !hopping_ghz.allFinite() || !std::isfinite(cavity_freq_ghz) || !std::isfinite(cavity_kappa_ghz))
        throw ValidationError("non-finite parameter");
    if (cavity_kappa_ghz <= 0) throw ValidationError("cavity kappa must be > 0");
    for (int j = 0; j < n_sites; ++j) {
        if (anharmonicity_ghz(j) >= 0) {
            std::ostringstream os;
            os << "anharmonicity of site " << (j + 1) << " must be negative (attractive model), got "
               << anharmonicity_ghz(j) << " GHz";
            throw ValidationError(os.str());
        }
    }
    if (hopping_ghz.rows() != n_sites || hopping_ghz.cols() != n_sites ||
        (hopping_ghz - hopping_ghz.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw ValidationError("hopping matrix must be symmetric LxL");
    for (int j = 0; j < n_sites; ++j) {
        const double det = site_freq_ghz(j) - cavity_freq_ghz;
        if (det == 0.0) throw ValidationError("site resonant with cavity: dispersive model invalid");
        const double r = std::abs(coupling_ghz(j) / det);
        if (r > 0.5) {
            std::ostringstream os;
            os << "dispersive ratio |g/(w-wc)| = " << r << " > 0.5 for site " << (j + 1);
            throw ValidationError(os.str());
        }
        if (r > 0.2) {
            std::ostringstream os;
            os << "dispersive ratio |g/(w-wc)| = " << r << " > 0.2 for site " << (j + 1);
            warnings.push_back(os.str());
        }
    }
    if (static_cast<int>(flux.tunable.size()) != n_sites ||
        flux.slope_rad_per_ma.size() != n_sites)
        throw ValidationError("flux_map arrays must have one entry per site");
    for (const auto& d : drives) {
        if (d.kind == DriveSpec::Kind::Cooling) {
            const bool has_nbar = d.nbar > 0;
            const bool has_rate = d.rate_mhz.has_value();
            if (has_nbar == has_rate)
                throw ValidationError("cooling drive needs exactly one of nbar / rate_mhz");
            if (d.nbar < 0) throw ValidationError("nbar must be >= 0");
            if (has_rate && *d.rate_mhz < 0) throw ValidationError("cooling rate must be >= 0");
            if (d.rabi_mhz != 0) throw ValidationError("cooling drive must not set rabi");
        } else {
            if (d.rabi_mhz < 0) throw ValidationError("rabi must be >= 0");
            if (d.nbar != 0 || d.rate_mhz)
                throw ValidationError("coherent drive must set rabi only");
        }
        if (d.from.empty() || d.to.empty())
            throw ValidationError("drive needs a (from, to) state pair");
    }
}

namespace {

Eigen::VectorXd to_vec(const json& a, const char* field) {
    if (!a.is_array()) throw ParseError(std::string("field '") + field + "' must be an array");
    Eigen::VectorXd v(a.size());
    for (size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
    return v;
}

const json& need(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing required field '") + key + "'");
    return *it;
}

} // namespace

DeviceParams parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text, nullptr, true, /*allow comments*/ true);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }

    DeviceParams p;
    const json& sites = need(j, "sites");
    if (!sites.is_array() || sites.size() < 2) throw ParseError("'sites' must list at least 2 sites");
    p.n_sites = static_cast<int>(sites.size());
    p.site_freq_ghz.resize(p.n_sites);
    p.anharmonicity_ghz.resize(p.n_sites);
    for (int k = 0; k < p.n_sites; ++k) {
        const json& s = sites[static_cast<size_t>(k)];
        p.site_freq_ghz(k) = need(s, "freq_ghz").get<double>();
        p.anharmonicity_ghz(k) = need(s, "anharmonicity_ghz").get<double>();
    }

    const json& cav = need(j, "cavity");
    p.cavity_freq_ghz = need(cav, "freq_ghz").get<double>();
    p.cavity_kappa_ghz = need(cav, "kappa_ghz").get<double>();

    p.coupling_ghz = to_vec(need(need(j, "couplings"), "g_ghz"), "couplings.g_ghz");
    if (p.coupling_ghz.size() != p.n_sites) throw ParseError("couplings.g_ghz length != number of sites");

    const json& hop = need(j, "hopping");
    p.hopping_ghz = Eigen::MatrixXd::Zero(p.n_sites, p.n_sites);
    if (hop.contains("list_ghz")) {
        for (const auto& e : hop["list_ghz"]) {
            if (!e.is_array() || e.size() != 3) throw ParseError("hopping.list_ghz entries must be [i, j, value]");
            const int a = e[0].get<int>() - 1, b = e[1].get<int>() - 1;
            if (a < 0 || b < 0 || a >= p.n_sites || b >= p.n_sites || a == b)
                throw ParseError("hopping.list_ghz site index out of range");
            p.hopping_ghz(a, b) = p.hopping_ghz(b, a) = e[2].get<double>();
        }
    } else {
        const double J = need(hop, "nn_ghz").get<double>();
        const double J13 = hop.value("nnn_ghz", 0.0); // default: no next-nearest hopping
        for (int a = 0; a + 1 < p.n_sites; ++a) p.hopping_ghz(a, a + 1) = p.hopping_ghz(a + 1, a) = J;
        if (p.n_sites == 3) p.hopping_ghz(0, 2) = p.hopping_ghz(2, 0) = J13;
        else if (J13 != 0.0) throw ParseError("hopping.nnn_ghz is only defined for 3 sites; use list_ghz");
    }

    const json& fm = need(j, "flux_map");
    p.flux.slope_rad_per_ma = to_vec(need(fm, "slope_rad_per_ma"), "flux_map.slope_rad_per_ma");
    p.flux.offset_rad = fm.value("offset_rad", 0.0); // default: no trapped flux
    if (fm.contains("offset_rad_per_site"))
        p.flux.offset_per_site = to_vec(fm["offset_rad_per_site"], "flux_map.offset_rad_per_site");
    const json& tun = need(fm, "tunable");
    for (const auto& t : tun) p.flux.tunable.push_back(t.get<bool>());
    if (fm.contains("current_range_ma")) {
        p.flux.current_min_ma = fm["current_range_ma"][0].get<double>();
        p.flux.current_max_ma = fm["current_range_ma"][1].get<double>();
    }

    if (j.contains("drives")) {
        for (const auto& d : j["drives"]) {
            DriveSpec ds;
            const std::string kind = need(d, "kind").get<std::string>();
            if (kind == "cooling") ds.kind = DriveSpec::Kind::Cooling;
            else if (kind == "coherent") ds.kind = DriveSpec::Kind::Coherent;
            else throw ParseError("drive kind must be 'cooling' or 'coherent', got '" + kind + "'");
            const json& pair = need(d, "pair");
            ds.from = pair[0].get<std::string>();
            ds.to = pair[1].get<std::string>();
            ds.nbar = d.value("nbar", 0.0);
            ds.rabi_mhz = d.value("rabi_mhz", 0.0);
            if (d.contains("rate_mhz")) ds.rate_mhz = d["rate_mhz"].get<double>();
            if (d.contains("detuning_ghz")) ds.detuning_ghz = d["detuning_ghz"].get<double>();
            p.drives.push_back(std::move(ds));
        }
    }

    p.validate();
    return p;
}

DeviceParams load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const DeviceParams& p) {
    json j;
    for (int k = 0; k < p.n_sites; ++k)
        j["sites"].push_back({{"freq_ghz", p.site_freq_ghz(k)},
                              {"anharmonicity_ghz", p.anharmonicity_ghz(k)}});
    j["cavity"] = {{"freq_ghz", p.cavity_freq_ghz}, {"kappa_ghz", p.cavity_kappa_ghz}};
    std::vector<double> g(p.coupling_ghz.data(), p.coupling_ghz.data() + p.n_sites);
    j["couplings"] = {{"g_ghz", g}};
    json hops = json::array();
    for (int a = 0; a < p.n_sites; ++a)
        for (int b = a + 1; b < p.n_sites; ++b)
            if (p.hopping_ghz(a, b) != 0.0) hops.push_back({a + 1, b + 1, p.hopping_ghz(a, b)});
    j["hopping"] = {{"list_ghz", hops}};
    std::vector<double> slope(p.flux.slope_rad_per_ma.data(), p.flux.slope_rad_per_ma.data() + p.n_sites);
    j["flux_map"] = {{"slope_rad_per_ma", slope},
                     {"offset_rad", p.flux.offset_rad},
                     {"tunable", p.flux.tunable},
                     {"current_range_ma", {p.flux.current_min_ma, p.flux.current_max_ma}}};
    if (p.flux.offset_per_site) {
        std::vector<double> ofs(p.flux.offset_per_site->data(), p.flux.offset_per_site->data() + p.n_sites);
        j["flux_map"]["offset_rad_per_site"] = ofs;
    }
    j["drives"] = json::array();
    for (const auto& d : p.drives) {
        json e;
        e["kind"] = d.kind == DriveSpec::Kind::Cooling ? "cooling" : "coherent";
        e["pair"] = {d.from, d.to};
        if (d.kind == DriveSpec::Kind::Cooling) {
            if (d.rate_mhz) e["rate_mhz"] = *d.rate_mhz;
            else e["nbar"] = d.nbar;
        } else {
            e["rabi_mhz"] = d.rabi_mhz;
        }
        if (d.detuning_ghz) e["detuning_ghz"] = *d.detuning_ghz;
        j["drives"].push_back(e);
    }
    return j.dump(2);
}

} // namespace bhc
