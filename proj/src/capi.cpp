// capi.cpp — extern "C" surface over the core library.

#include "bhchain.h"

#include "core/device.hpp"
#include "core/dissipation.hpp"
#include "core/dynamics.hpp"
#include "core/errors.hpp"
#include "core/estimators.hpp"
#include "core/longarray.hpp"
#include "core/model.hpp"
#include "core/table.hpp"
#include "core/units.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

struct bhc_device {
    bhc::DeviceParams params;
    std::string source_text; // for the provenance hash
};

struct bhc_table {
    bhc::Table t;
};

namespace {

thread_local std::string g_last_error;

int set_error(bhc_status code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        return BHC_OK;
    } catch (const bhc::ParseError& e) {
        return set_error(BHC_ERR_PARSE, e.what());
    } catch (const bhc::ValidationError& e) {
        return set_error(BHC_ERR_VALIDATION, e.what());
    } catch (const bhc::CapacityError& e) {
        return set_error(BHC_ERR_CAPACITY, e.what());
    } catch (const bhc::DomainError& e) {
        return set_error(BHC_ERR_DOMAIN, e.what());
    } catch (const bhc::NumericError& e) {
        return set_error(BHC_ERR_NUMERIC, e.what());
    } catch (const std::exception& e) {
        return set_error(BHC_ERR_NUMERIC, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

bhc_table* wrap(bhc::Table t) {
    auto* h = new bhc_table;
    h->t = std::move(t);
    return h;
}

} // namespace

extern "C" {

const char* bhc_version(void) { return "0.1.0"; }
const char* bhc_last_error(void) { return g_last_error.c_str(); }

int bhc_device_load(const char* path, bhc_device** out) {
    if (!path || !out) return set_error(BHC_ERR_BADARG, "null argument");
    return guarded([&] {
        std::ifstream in(path);
        if (!in) throw bhc::ParseError(std::string("cannot open config file: ") + path);
        std::stringstream ss;
        ss << in.rdbuf();
        auto* d = new bhc_device;
        d->source_text = ss.str();
        try {
            d->params = bhc::parse_config(d->source_text);
        } catch (...) {
            delete d;
            throw;
        }
        *out = d;
    });
}

int bhc_device_parse(const char* json_text, bhc_device** out) {
    if (!json_text || !out) return set_error(BHC_ERR_BADARG, "null argument");
    return guarded([&] {
        auto* d = new bhc_device;
        d->source_text = json_text;
        try {
            d->params = bhc::parse_config(d->source_text);
        } catch (...) {
            delete d;
            throw;
        }
        *out = d;
    });
}

void bhc_device_free(bhc_device* d) { delete d; }
void bhc_string_free(char* s) { std::free(s); }

int bhc_device_num_sites(const bhc_device* d, int* out) {
    if (!d || !out) return set_error(BHC_ERR_BADARG, "null argument");
    *out = d->params.n_sites;
    return BHC_OK;
}

int bhc_device_serialize(const bhc_device* d, char** json_out) {
    if (!d || !json_out) return set_error(BHC_ERR_BADARG, "null argument");
    return guarded([&] { *json_out = dup_string(bhc::serialize_config(d->params)); });
}

int bhc_device_hash(const bhc_device* d, char** hex_out) {
    if (!d || !hex_out) return set_error(BHC_ERR_BADARG, "null argument");
    *hex_out = dup_string(bhc::fnv1a_hex(d->source_text));
    return BHC_OK;
}

int bhc_device_warnings(const bhc_device* d, char** text_out) {
    if (!d || !text_out) return set_error(BHC_ERR_BADARG, "null argument");
    std::string w;
    for (const auto& s : d->params.warnings) w += s + "\n";
    *text_out = dup_string(w);
    return BHC_OK;
}

int bhc_table_rows(const bhc_table* t, int* out) {
    if (!t || !out) return set_error(BHC_ERR_BADARG, "null argument");
    *out = t->t.rows();
    return BHC_OK;
}

int bhc_table_cols(const bhc_table* t, int* out) {
    if (!t || !out) return set_error(BHC_ERR_BADARG, "null argument");
    *out = t->t.cols();
    return BHC_OK;
}

const char* bhc_table_column_name(const bhc_table* t, int col) {
    if (!t || col < 0 || col >= t->t.cols()) return nullptr;
    return t->t.columns[static_cast<size_t>(col)].c_str();
}

const char* bhc_table_row_label(const bhc_table* t, int row) {
    if (!t || !t->t.labeled() || row < 0 || row >= t->t.rows()) return nullptr;
    return t->t.row_labels[static_cast<size_t>(row)].c_str();
}

const char* bhc_table_label_column(const bhc_table* t) {
    return t ? t->t.label_column.c_str() : nullptr;
}

int bhc_table_value(const bhc_table* t, int row, int col, double* out) {
    if (!t || !out || row < 0 || col < 0 || row >= t->t.rows() || col >= t->t.cols())
        return set_error(BHC_ERR_BADARG, "table index out of range");
    *out = t->t.data(row, col);
    return BHC_OK;
}

int bhc_table_render(const bhc_table* t, int format, const char* provenance, char** text_out) {
    if (!t || !text_out) return set_error(BHC_ERR_BADARG, "null argument");
    return guarded([&] {
        std::vector<std::string> prov;
        if (provenance) prov = split(provenance, '\n');
        *text_out = dup_string(format == 1 ? t->t.to_json(prov) : t->t.to_csv(prov));
    });
}

int bhc_table_write(const bhc_table* t, const char* path, int format, const char* provenance) {
    if (!t || !path) return set_error(BHC_ERR_BADARG, "null argument");
    return guarded([&] {
        std::vector<std::string> prov;
        if (provenance) prov = split(provenance, '\n');
        std::ofstream out(path);
        if (!out) throw bhc::ParseError(std::string("cannot open output file: ") + path);
        out << (format == 1 ? t->t.to_json(prov) : t->t.to_csv(prov));
        if (!out) throw bhc::ParseError(std::string("write failed: ") + path);
    });
}

void bhc_table_free(bhc_table* t) { delete t; }

int bhc_modes_table(const bhc_device* d, double current_ma, int with_kerr, bhc_table** out) {
    if (!d || !out) return set_error(BHC_ERR_BADARG, "null argument");
    return guarded([&] {
        const auto modes = bhc::dressed_modes(d->params, current_ma);
        const int n = d->params.n_sites + 1;
        bhc::Table t;
        t.label_column = "quantity";
        std::vector<std::string> cols;
        for (int c = 0; c < n; ++c) cols.push_back("c" + std::to_string(c));
        t.reserve_columns(cols);
        auto vec_row = [&](const std::string& name, const Eigen::VectorXd& v) {
            std::vector<double> row(static_cast<size_t>(n), 0.0);
            for (int c = 0; c < v.size() && c < n; ++c) row[static_cast<size_t>(c)] = v(c);
            t.add_row(name, row);
        };
        vec_row("lambda[GHz]", modes.lambda_ghz);
        for (int r = 0; r < n; ++r) vec_row("M_row" + std::to_string(r), modes.M.row(r));
        for (int r = 0; r < n; ++r) vec_row("N_row" + std::to_string(r), modes.N.row(r));
        {
            const auto perm = modes.presentation_permutation();
            Eigen::VectorXd pv(n);
            pv(0) = 0;
            for (size_t k = 0; k < perm.size(); ++k) pv(static_cast<int>(k) + 1) = perm[k];
            vec_row("presentation_perm", pv);
        }
        if (with_kerr) {
            const auto kerr = bhc::compute_kerr(modes, d->params.anharmonicity_ghz);
            const Eigen::MatrixXd eta = kerr.eta_cyclic_mhz();
            for (int r = 0; r < eta.rows(); ++r)
                vec_row("eta_row" + std::to_string(r + 1) + "[MHz]", eta.row(r));
            Eigen::VectorXd mudiag(eta.rows());
            for (int l = 0; l < eta.rows(); ++l)
                mudiag(l) = bhc::units::radus_to_mhz(kerr.mu(l, l, l, l));
            vec_row("mu_diag[MHz]", mudiag);
        }
        *out = wrap(std::move(t));
    });
}

int bhc_spectrum(const bhc_device* d, int manifold_n, double nbar, double current_ma,
                 bhc_table** energies, bhc_table** vectors) {
    if (!d || !energies || !vectors) return set_error(BHC_ERR_BADARG, "null argument");
    return guarded([&] {
        const auto modes = bhc::dressed_modes(d->params, current_ma);
        const auto kerr = bhc::compute_kerr(modes, d->params.anharmonicity_ghz);
        const auto ms = bhc::build_manifold(modes, kerr, manifold_n, nbar);
        bhc::Table te;
        te.reserve_columns({"energy[GHz]", "chi_over_kappa"});
        for (int k = 0; k < ms.dim(); ++k) {
            const auto chi = bhc::chi_shift(ms, k, d->params.cavity_kappa_ghz);
            te.add_row(ms.labels[static_cast<size_t>(k)], {ms.energy_ghz(k), chi.chi_over_kappa});
        }
        bhc::Table tv;
        std::vector<std::string> cols;
        for (int b = 0; b < ms.dim(); ++b) {
            std::string occ;
            for (int m = 0; m < ms.basis.n_modes; ++m)
                occ += std::to_string(ms.basis.states[static_cast<size_t>(b)][static_cast<size_t>(m)]);
            cols.push_back("basis_" + occ);
        }
        tv.reserve_columns(cols);
        for (int k = 0; k < ms.dim(); ++k) {
            std::vector<double> row;
            for (int b = 0; b < ms.dim(); ++b) row.push_back(ms.eigenvectors(b, k));
            tv.add_row(ms.labels[static_cast<size_t>(k)], row);
        }
        *energies = wrap(std::move(te));
        *vectors = wrap(std::move(tv));
    });
}

int bhc_cooling_rates(const bhc_device* d, double current_ma, bhc_table** out) {
    if (!d || !out) return set_error(BHC_ERR_BADARG, "null argument");
    return guarded([&] {
        const auto model = bhc::DressedModel::build(d->params, current_ma);
        bhc::Table t;
        t.label_column = "transition";
        t.reserve_columns({"detuning[GHz]", "matrix_element[rad_per_us]", "rate_per_photon[MHz]"});
        for (const auto* ms : {&model.one, &model.two})
            for (const auto& tr : bhc::cooling_table(*ms, d->params.cavity_kappa_ghz))
                t.add_row(tr.from + ">" + tr.to,
                          {tr.resonant_detuning_ghz, tr.matrix_element_radus, tr.rate_per_photon_table});
        *out = wrap(std::move(t));
    });
}

int bhc_cooling_rate(const bhc_device* d, const char* from, const char* to, double nbar,
                     double delta_c_ghz, double* rate_per_us, int* valid) {
    if (!d || !from || !to || !rate_per_us || !valid)
        return set_error(BHC_ERR_BADARG, "null argument");
    return guarded([&] {
        const auto model = bhc::DressedModel::build(d->params, 0.0);
        const auto& ms = model.manifold_of(from);
        const auto& msf = model.manifold_of(to);
        if (&ms != &msf)
            throw bhc::DomainError("cooling connects states within one manifold");
        const int i = model.manifold_index(from);
        const int f = model.manifold_index(to);
        double dc = delta_c_ghz;
        if (std::isnan(dc)) {
            using bhc::units::ghz_to_radus;
            const double wi = ghz_to_radus(bhc::stark_shifted_frequency_ghz(model.modes, model.kerr, ms, i, nbar));
            const double wf = ghz_to_radus(bhc::stark_shifted_frequency_ghz(model.modes, model.kerr, ms, f, nbar));
            dc = bhc::units::radus_to_ghz(wi - wf);
        }
        const auto r = bhc::cooling_rate(model.modes, model.kerr, ms, i, f, nbar, dc,
                                         d->params.cavity_kappa_ghz);
        *rate_per_us = r.rate_us;
        *valid = r.valid ? 1 : 0;
    });
}

int bhc_purcell(const bhc_device* d, double current_ma, bhc_table** out) {
    if (!d || !out) return set_error(BHC_ERR_BADARG, "null argument");
    return guarded([&] {
        const auto model = bhc::DressedModel::build(d->params, current_ma);
        const double kappa = d->params.cavity_kappa_ghz;
        const auto one_g = bhc::purcell_rates(model.one, model.ground, model.modes, kappa);
        const auto two_one = bhc::purcell_rates(model.two, model.one, model.modes, kappa);
        const auto two_g = bhc::purcell_rates_two_step(model.two, model.ground, model.modes, kappa);

        bhc::Table t;
        std::vector<std::string> cols{"energy[GHz]", "t1_total[us]"};
        cols.push_back("t1_to_G[us]");
        for (const auto& l : model.one.labels) cols.push_back("t1_to_" + l + "[us]");
        t.reserve_columns(cols);
        auto t1 = [](double rate) { return rate > 0 ? 1.0 / rate : std::numeric_limits<double>::infinity(); };
        for (int i = 0; i < model.one.dim(); ++i) {
            std::vector<double> row{model.one.energy_ghz(i), t1(one_g.rates_us(0, i)),
                                    t1(one_g.rates_us(0, i))};
            for (int f = 0; f < model.one.dim(); ++f) row.push_back(std::numeric_limits<double>::infinity());
            t.add_row(model.one.labels[static_cast<size_t>(i)], row);
        }
        for (int i = 0; i < model.two.dim(); ++i) {
            double total = two_g(0, i);
            for (int f = 0; f < model.one.dim(); ++f) total += two_one.rates_us(f, i);
            std::vector<double> row{model.two.energy_ghz(i), t1(total), t1(two_g(0, i))};
            for (int f = 0; f < model.one.dim(); ++f) row.push_back(t1(two_one.rates_us(f, i)));
            t.add_row(model.two.labels[static_cast<size_t>(i)], row);
        }
        *out = wrap(std::move(t));
    });
}

int bhc_chi(const bhc_device* d, double current_ma, bhc_table** out) {
    if (!d || !out) return set_error(BHC_ERR_BADARG, "null argument");
    return guarded([&] {
        const auto model = bhc::DressedModel::build(d->params, current_ma);
        bhc::Table t;
        t.reserve_columns({"energy[GHz]", "chi_over_kappa", "theta[rad]"});
        for (const auto* ms : {&model.one, &model.two})
            for (int k = 0; k < ms->dim(); ++k) {
                const auto c = bhc::chi_shift(*ms, k, d->params.cavity_kappa_ghz);
                t.add_row(ms->labels[static_cast<size_t>(k)],
                          {ms->energy_ghz(k), c.chi_over_kappa, c.theta_rad});
            }
        *out = wrap(std::move(t));
    });
}

int bhc_dark_scan(const bhc_device* d, double i_min, double i_max, int n_points,
                  bhc_table** scan, bhc_table** zeros) {
    if (!d || !scan || !zeros) return set_error(BHC_ERR_BADARG, "null argument");
    return guarded([&] {
        const int L = d->params.n_sites;
        bhc::Table ts;
        ts.label_column = "state";
        ts.reserve_columns({"current[mA]", "d_sg[GHz]"});
        bhc::Table tz;
        tz.label_column = "state";
        tz.reserve_columns({"dark_current[mA]"});
        for (int rank = 1; rank <= L; ++rank) {
            const auto s = bhc::dark_scan(d->params, rank, i_min, i_max, n_points);
            const std::string label = bhc::state_label(1, rank, L);
            for (size_t k = 0; k < s.currents_ma.size(); ++k)
                ts.add_row(label, {s.currents_ma[k], s.d_sg_ghz[k]});
            for (double z : s.dark_points_ma) tz.add_row(label, {z});
        }
        *scan = wrap(std::move(ts));
        *zeros = wrap(std::move(tz));
    });
}

int bhc_simulate(const bhc_device* d, const char* protocol_path, bhc_table** trajectory) {
    if (!d || !protocol_path || !trajectory) return set_error(BHC_ERR_BADARG, "null argument");
    return guarded([&] {
        const auto model = bhc::DressedModel::build(d->params, 0.0);
        const auto protocol = bhc::load_protocol(protocol_path);
        const auto results = bhc::simulate_protocol(model, protocol);
        bhc::Table t;
        t.label_column = "state";
        t.reserve_columns({"stage", "time_us", "population"});
        for (size_t s = 0; s < results.size(); ++s) {
            const auto& r = results[s];
            if (r.trajectory) {
                const auto& tr = *r.trajectory;
                for (size_t k = 0; k < tr.times_us.size(); ++k)
                    for (size_t q = 0; q < tr.states.size(); ++q)
                        t.add_row(tr.states[q],
                                  {static_cast<double>(s), tr.times_us[k],
                                   tr.populations(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(k))});
            } else {
                const auto labels = model.state_labels();
                for (size_t q = 0; q < labels.size(); ++q)
                    t.add_row(labels[q], {static_cast<double>(s),
                                          std::numeric_limits<double>::infinity(),
                                          r.final_populations(static_cast<Eigen::Index>(q))});
            }
        }
        *trajectory = wrap(std::move(t));
    });
}

int bhc_steady_state(const bhc_device* d, const char* protocol_path, bhc_table** stages) {
    if (!d || !protocol_path || !stages) return set_error(BHC_ERR_BADARG, "null argument");
    return guarded([&] {
        const auto model = bhc::DressedModel::build(d->params, 0.0);
        const auto protocol = bhc::load_protocol(protocol_path);
        const auto results = bhc::simulate_protocol(model, protocol);
        bhc::Table t;
        t.label_column = "stage";
        std::vector<std::string> cols;
        for (const auto& l : model.state_labels()) cols.push_back("p_" + l);
        t.reserve_columns(cols);
        for (const auto& r : results) {
            std::vector<double> row;
            for (int q = 0; q < r.final_populations.size(); ++q) row.push_back(r.final_populations(q));
            t.add_row(r.name, row);
        }
        *stages = wrap(std::move(t));
    });
}

int bhc_fit_spectroscopy(const bhc_device* d, const char* csv_path, const char* free_params,
                         bhc_table** result) {
    if (!d || !csv_path || !free_params || !result)
        return set_error(BHC_ERR_BADARG, "null argument");
    return guarded([&] {
        const auto data = bhc::load_spectroscopy_csv(csv_path);
        const auto names = split(free_params, ',');
        const auto fit = bhc::fit_spectroscopy(data, d->params, names);
        bhc::Table t;
        t.label_column = "parameter";
        t.reserve_columns({"value", "sigma", "residual_norm", "iterations"});
        for (size_t k = 0; k < fit.names.size(); ++k)
            t.add_row(fit.names[k],
                      {fit.values(static_cast<Eigen::Index>(k)),
                       std::sqrt(std::max(0.0, fit.covariance(static_cast<Eigen::Index>(k),
                                                              static_cast<Eigen::Index>(k)))),
                       fit.residual_norm, static_cast<double>(fit.iterations)});
        *result = wrap(std::move(t));
    });
}

int bhc_fit_decay(const bhc_device* d, const char* csv_path, const char* protocol_path,
                  const char* free_rates, bhc_table** result) {
    if (!d || !csv_path || !protocol_path || !free_rates || !result)
        return set_error(BHC_ERR_BADARG, "null argument");
    return guarded([&] {
        const auto model = bhc::DressedModel::build(d->params, 0.0);
        const auto protocol = bhc::load_protocol(protocol_path);
        const auto data = bhc::load_decay_csv(csv_path);
        bhc::DecayFitOptions opt;
        for (const auto& pair : split(free_rates, ',')) {
            const auto pos = pair.find('>');
            if (pos == std::string::npos)
                throw bhc::ValidationError("free rate must be 'From>To', got '" + pair + "'");
            opt.free_rates.emplace_back(pair.substr(0, pos), pair.substr(pos + 1));
        }
        const auto fit = bhc::fit_decay(data, model.state_labels(), protocol.natural, opt);
        bhc::Table t;
        t.label_column = "rate";
        t.reserve_columns({"value[MHz]", "sigma[MHz]", "at_zero_bound"});
        for (size_t k = 0; k < fit.fit.names.size(); ++k) {
            const bool active =
                std::find(fit.active_constraints.begin(), fit.active_constraints.end(),
                          fit.fit.names[k] + " pinned at zero") != fit.active_constraints.end();
            t.add_row(fit.fit.names[k],
                      {fit.fit.values(static_cast<Eigen::Index>(k)),
                       std::sqrt(std::max(0.0, fit.fit.covariance(static_cast<Eigen::Index>(k),
                                                                  static_cast<Eigen::Index>(k)))),
                       active ? 1.0 : 0.0});
        }
        *result = wrap(std::move(t));
    });
}

int bhc_calibrate(const bhc_device* d, const double* targets_ghz, int n_targets,
                  bhc_table** result, bhc_device** calibrated) {
    if (!d || !targets_ghz || !result) return set_error(BHC_ERR_BADARG, "null argument");
    return guarded([&] {
        const int L = d->params.n_sites;
        if (n_targets != L + 1)
            throw bhc::ValidationError("calibrate needs " + std::to_string(L + 1) +
                                       " targets (cavity + one per site)");
        Eigen::VectorXd e(L);
        for (int j = 0; j < L; ++j) e(j) = targets_ghz[j + 1];
        const auto cal = bhc::calibrate_working_point(d->params, targets_ghz[0], e);
        bhc::Table t;
        t.label_column = "parameter";
        t.reserve_columns({"value[GHz]", "max_residual[GHz]", "iterations"});
        for (size_t k = 0; k < cal.fit.names.size(); ++k)
            t.add_row(cal.fit.names[k], {cal.fit.values(static_cast<Eigen::Index>(k)),
                                         cal.max_residual_ghz,
                                         static_cast<double>(cal.fit.iterations)});
        *result = wrap(std::move(t));
        if (calibrated) {
            auto* h = new bhc_device;
            h->params = cal.calibrated;
            h->source_text = bhc::serialize_config(cal.calibrated);
            *calibrated = h;
        }
    });
}

int bhc_long_array_modes(int n_sites, double omega0_ghz, double j_ghz, const double* g_ghz,
                         bhc_table** out) {
    if (!g_ghz || !out) return set_error(BHC_ERR_BADARG, "null argument");
    return guarded([&] {
        bhc::TightBindingChain chain;
        chain.n_sites = n_sites;
        chain.omega0_ghz = omega0_ghz;
        chain.hopping_ghz = j_ghz;
        chain.coupling_ghz = Eigen::Map<const Eigen::VectorXd>(g_ghz, n_sites);
        const auto e = bhc::tb_mode_energies(chain);
        const auto xi = bhc::xi_couplings(chain);
        bhc::Table t;
        t.label_column = "mode";
        t.reserve_columns({"k[rad]", "energy[GHz]", "xi[GHz]"});
        for (int n = 1; n <= n_sites; ++n)
            t.add_row(std::to_string(n), {chain.k_n(n), e(n - 1), xi(n - 1)});
        *out = wrap(std::move(t));
    });
}

int bhc_cascade(int n_sites, double omega0_ghz, double j_ghz, const double* g_ghz,
                const double* alpha_ghz, double kappa_ghz, int start_mode,
                const double* sweep_ghz, int n_sweep, bhc_table** report) {
    if (!g_ghz || !alpha_ghz || !sweep_ghz || !report)
        return set_error(BHC_ERR_BADARG, "null argument");
    return guarded([&] {
        bhc::TightBindingChain chain;
        chain.n_sites = n_sites;
        chain.omega0_ghz = omega0_ghz;
        chain.hopping_ghz = j_ghz;
        chain.coupling_ghz = Eigen::Map<const Eigen::VectorXd>(g_ghz, n_sites);
        const Eigen::VectorXd alpha = Eigen::Map<const Eigen::VectorXd>(alpha_ghz, n_sites);
        std::vector<double> sweep(sweep_ghz, sweep_ghz + n_sweep);
        const auto rep = bhc::cascade_plan(chain, kappa_ghz, start_mode, sweep, alpha);
        bhc::Table t;
        t.label_column = "entry";
        t.reserve_columns({"detuning[GHz]", "from_mode", "to_mode", "energy_after[GHz]",
                           "matrix_element"});
        for (size_t k = 0; k < rep.steps.size(); ++k) {
            const auto& s = rep.steps[k];
            t.add_row("step" + std::to_string(k + 1),
                      {s.detuning_ghz, static_cast<double>(s.from_mode),
                       static_cast<double>(s.to_mode), s.energy_after_ghz, s.matrix_element});
        }
        t.add_row("summary", {0.0, static_cast<double>(rep.coolable),
                              static_cast<double>(rep.reached_band_minimum), rep.final_energy_ghz,
                              static_cast<double>(rep.trapped)});
        *report = wrap(std::move(t));
    });
}

} // extern "C"
