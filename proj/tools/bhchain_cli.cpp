// bhchain_cli.cpp — command-line front end. Talks to the core exclusively
// through the public C interface.

#include "bhchain.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct DeviceHandle {
    bhc_device* d = nullptr;
    ~DeviceHandle() { bhc_device_free(d); }
};

struct TableHandle {
    bhc_table* t = nullptr;
    ~TableHandle() { bhc_table_free(t); }
};

int exit_code_for(int status) {
    switch (status) {
        case BHC_OK: return 0;
        case BHC_ERR_NUMERIC:
        case BHC_ERR_CAPACITY: return 2;
        default: return 1;
    }
}

[[noreturn]] void fail(int status) {
    std::cerr << "error: " << bhc_last_error() << "\n";
    std::exit(exit_code_for(status));
}

void check(int status) {
    if (status != BHC_OK) fail(status);
}

struct Common {
    std::string config;
    std::string out;
    std::string format = "csv";
    double current = 0.0;
    double nbar = 0.0;
    unsigned seed = 0;
    std::string command_line;
};

void add_common(CLI::App* cmd, Common& c, bool needs_config = true) {
    auto* opt = cmd->add_option("--config", c.config, "device config (JSON)");
    if (needs_config) opt->required();
    cmd->add_option("--out", c.out, "output file (default: stdout)");
    cmd->add_option("--format", c.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--current", c.current, "bias coil current in mA");
    cmd->add_option("--nbar", c.nbar, "mean cavity photon number");
    cmd->add_option("--seed", c.seed, "seed recorded in provenance");
}

std::string provenance(const Common& c, bhc_device* d) {
    std::ostringstream os;
    if (d) {
        char* hash = nullptr;
        if (bhc_device_hash(d, &hash) == BHC_OK) {
            os << "config_hash=" << hash << "\n";
            bhc_string_free(hash);
        }
    }
    os << "command=" << c.command_line << "\n";
    os << "version=" << bhc_version() << "\n";
    os << "seed=" << c.seed;
    return os.str();
}

void emit(const Common& c, bhc_table* t, bhc_device* d) {
    const int format = c.format == "json" ? 1 : 0;
    const std::string prov = provenance(c, d);
    if (c.out.empty()) {
        char* text = nullptr;
        check(bhc_table_render(t, format, prov.c_str(), &text));
        std::cout << text;
        bhc_string_free(text);
    } else {
        check(bhc_table_write(t, c.out.c_str(), format, prov.c_str()));
    }
}

void emit_warnings(bhc_device* d) {
    char* w = nullptr;
    if (bhc_device_warnings(d, &w) == BHC_OK) {
        if (w && *w) std::cerr << "warning: " << w;
        bhc_string_free(w);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"attractive Bose-Hubbard chain + cavity toolkit"};
    app.require_subcommand(1);

    std::ostringstream cmdline;
    for (int i = 0; i < argc; ++i) cmdline << (i ? " " : "") << argv[i];

    Common c;
    c.command_line = cmdline.str();

    // modes
    auto* modes = app.add_subcommand("modes", "dressed-mode frequencies and transformation matrices");
    Common c_modes = c;
    bool with_kerr = false;
    add_common(modes, c_modes);
    modes->add_flag("--kerr", with_kerr, "append eta matrix and mu diagonal");

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "manifold energies and eigenvectors");
    Common c_spec = c;
    int manifold_n = 1;
    bool vectors = false;
    add_common(spectrum, c_spec);
    spectrum->add_option("--manifold", manifold_n, "excitation number")->required();
    spectrum->add_flag("--vectors", vectors, "emit eigenvectors instead of energies");

    // cooling-rates
    auto* cooling = app.add_subcommand("cooling-rates", "resonant per-photon cooling rates");
    Common c_cool = c;
    add_common(cooling, c_cool);

    // purcell
    auto* purcell = app.add_subcommand("purcell", "Purcell-limited decay times");
    Common c_pur = c;
    add_common(purcell, c_pur);

    // chi
    auto* chi = app.add_subcommand("chi", "dispersive shifts and reflected phases");
    Common c_chi = c;
    add_common(chi, c_chi);

    // dark-scan
    auto* dark = app.add_subcommand("dark-scan", "cavity-drive brightness vs coil current");
    Common c_dark = c;
    double imin = 2.0, imax = 17.0;
    int npts = 601;
    bool zeros_only = false;
    add_common(dark, c_dark);
    dark->add_option("--imin", imin, "scan start, mA");
    dark->add_option("--imax", imax, "scan end, mA");
    dark->add_option("--points", npts, "scan points");
    dark->add_flag("--zeros", zeros_only, "emit dark points only");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "rate-equation protocol trajectories");
    Common c_sim = c;
    std::string protocol;
    add_common(simulate, c_sim);
    simulate->add_option("--protocol", protocol, "protocol file (JSON)")->required();

    // steady-state
    auto* steady = app.add_subcommand("steady-state", "per-stage steady-state populations");
    Common c_steady = c;
    std::string protocol2;
    add_common(steady, c_steady);
    steady->add_option("--protocol", protocol2, "protocol file (JSON)")->required();

    // fit-spectroscopy
    auto* fitsp = app.add_subcommand("fit-spectroscopy", "fit flux-map spectroscopy lines");
    Common c_fitsp = c;
    std::string data_csv, free_params = "w0_1,w0_2,w0_3,J,J13";
    add_common(fitsp, c_fitsp);
    fitsp->add_option("--data", data_csv, "CSV: current_ma,label,freq_ghz,sigma_ghz")->required();
    fitsp->add_option("--free", free_params, "comma-separated free parameters");

    // fit-decay
    auto* fitdc = app.add_subcommand("fit-decay", "fit rate-matrix entries to population decays");
    Common c_fitdc = c;
    std::string decay_csv, decay_protocol, free_rates;
    add_common(fitdc, c_fitdc);
    fitdc->add_option("--data", decay_csv, "CSV: init,time_us,state,population")->required();
    fitdc->add_option("--protocol", decay_protocol, "protocol file carrying fixed natural rates")->required();
    fitdc->add_option("--free", free_rates, "comma-separated 'From>To' rates to fit")->required();

    // long-array
    auto* longarr = app.add_subcommand("long-array", "tight-binding modes and cascade cooling");
    Common c_long = c;
    int L = 10, start_mode = 1;
    double omega0 = 5.0, J = 0.177, kappa = 0.010, guniform = 0.15;
    std::vector<double> gprofile, sweep;
    bool do_cascade = false;
    c_long.format = "csv";
    longarr->add_option("--out", c_long.out, "output file (default: stdout)");
    longarr->add_option("--format", c_long.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    longarr->add_option("--sites", L, "chain length")->required();
    longarr->add_option("--omega0", omega0, "uniform site frequency, GHz");
    longarr->add_option("--hopping", J, "J, GHz");
    longarr->add_option("--kappa", kappa, "cavity linewidth, GHz");
    longarr->add_option("--g", guniform, "uniform cavity coupling, GHz");
    longarr->add_option("--g-profile", gprofile, "per-site couplings, GHz (overrides --g)");
    longarr->add_flag("--cascade", do_cascade, "run the detuning-sweep cascade");
    longarr->add_option("--start-mode", start_mode, "initial mode (1-based) for the cascade");
    longarr->add_option("--sweep", sweep, "cascade detuning schedule, GHz");
    longarr->add_option("--seed", c_long.seed, "seed recorded in provenance");

    // calibrate
    auto* calib = app.add_subcommand("calibrate", "invert dressed frequencies to bare parameters");
    Common c_cal = c;
    std::vector<double> targets;
    std::string write_config;
    add_common(calib, c_cal);
    calib->add_option("--targets", targets, "dressed cavity + E-state frequencies, GHz")->required();
    calib->add_option("--write-config", write_config, "write the calibrated device config here");

    CLI11_PARSE(app, argc, argv);

    auto load = [&](Common& cc) {
        cc.command_line = cmdline.str();
        DeviceHandle h;
        check(bhc_device_load(cc.config.c_str(), &h.d));
        emit_warnings(h.d);
        return h;
    };

    if (*modes) {
        auto h = load(c_modes);
        TableHandle t;
        check(bhc_modes_table(h.d, c_modes.current, with_kerr ? 1 : 0, &t.t));
        emit(c_modes, t.t, h.d);
    } else if (*spectrum) {
        auto h = load(c_spec);
        TableHandle te, tv;
        check(bhc_spectrum(h.d, manifold_n, c_spec.nbar, c_spec.current, &te.t, &tv.t));
        emit(c_spec, vectors ? tv.t : te.t, h.d);
    } else if (*cooling) {
        auto h = load(c_cool);
        TableHandle t;
        check(bhc_cooling_rates(h.d, c_cool.current, &t.t));
        emit(c_cool, t.t, h.d);
    } else if (*purcell) {
        auto h = load(c_pur);
        TableHandle t;
        check(bhc_purcell(h.d, c_pur.current, &t.t));
        emit(c_pur, t.t, h.d);
    } else if (*chi) {
        auto h = load(c_chi);
        TableHandle t;
        check(bhc_chi(h.d, c_chi.current, &t.t));
        emit(c_chi, t.t, h.d);
    } else if (*dark) {
        auto h = load(c_dark);
        TableHandle ts, tz;
        check(bhc_dark_scan(h.d, imin, imax, npts, &ts.t, &tz.t));
        emit(c_dark, zeros_only ? tz.t : ts.t, h.d);
    } else if (*simulate) {
        auto h = load(c_sim);
        TableHandle t;
        check(bhc_simulate(h.d, protocol.c_str(), &t.t));
        emit(c_sim, t.t, h.d);
    } else if (*steady) {
        auto h = load(c_steady);
        TableHandle t;
        check(bhc_steady_state(h.d, protocol2.c_str(), &t.t));
        emit(c_steady, t.t, h.d);
    } else if (*fitsp) {
        auto h = load(c_fitsp);
        TableHandle t;
        check(bhc_fit_spectroscopy(h.d, data_csv.c_str(), free_params.c_str(), &t.t));
        emit(c_fitsp, t.t, h.d);
    } else if (*fitdc) {
        auto h = load(c_fitdc);
        TableHandle t;
        check(bhc_fit_decay(h.d, decay_csv.c_str(), decay_protocol.c_str(), free_rates.c_str(), &t.t));
        emit(c_fitdc, t.t, h.d);
    } else if (*longarr) {
        c_long.command_line = cmdline.str();
        std::vector<double> g = gprofile;
        if (g.empty()) g.assign(static_cast<size_t>(L), guniform);
        if (static_cast<int>(g.size()) != L) {
            std::cerr << "error: --g-profile must list one coupling per site\n";
            return 1;
        }
        TableHandle t;
        if (do_cascade) {
            std::vector<double> alpha(static_cast<size_t>(L), -0.2);
            if (sweep.empty()) sweep = {4 * J, 2 * J, J, 0.5 * J, 2 * kappa};
            check(bhc_cascade(L, omega0, J, g.data(), alpha.data(), kappa, start_mode,
                              sweep.data(), static_cast<int>(sweep.size()), &t.t));
        } else {
            check(bhc_long_array_modes(L, omega0, J, g.data(), &t.t));
        }
        emit(c_long, t.t, nullptr);
    } else if (*calib) {
        auto h = load(c_cal);
        TableHandle t;
        bhc_device* calibrated = nullptr;
        check(bhc_calibrate(h.d, targets.data(), static_cast<int>(targets.size()), &t.t,
                            &calibrated));
        DeviceHandle hc;
        hc.d = calibrated;
        emit(c_cal, t.t, h.d);
        if (!write_config.empty()) {
            char* text = nullptr;
            check(bhc_device_serialize(calibrated, &text));
            FILE* f = std::fopen(write_config.c_str(), "w");
            if (!f) {
                std::cerr << "error: cannot write " << write_config << "\n";
                bhc_string_free(text);
                return 1;
            }
            std::fputs(text, f);
            std::fclose(f);
            bhc_string_free(text);
        }
    }
    return 0;
}
