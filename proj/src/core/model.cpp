#include "core/model.hpp"

#include "core/errors.hpp"

namespace bhc {

DressedModel DressedModel::build(const DeviceParams& params, double current_ma) {
    DressedModel m;
    m.params = params;
    m.current_ma = current_ma;
    m.modes = dressed_modes(params, current_ma);
    m.kerr = compute_kerr(m.modes, params.anharmonicity_ghz);
    m.ground = build_manifold(m.modes, m.kerr, 0);
    m.one = build_manifold(m.modes, m.kerr, 1);
    m.two = build_manifold(m.modes, m.kerr, 2);
    return m;
}

std::vector<std::string> DressedModel::state_labels() const {
    std::vector<std::string> out{"G"};
    out.insert(out.end(), one.labels.begin(), one.labels.end());
    out.insert(out.end(), two.labels.begin(), two.labels.end());
    return out;
}

const ManifoldSystem& DressedModel::manifold_of(const std::string& label) const {
    if (label == "G") return ground;
    if (one.index_of_label(label) >= 0) return one;
    if (two.index_of_label(label) >= 0) return two;
    throw DomainError("unknown state label '" + label + "'");
}

int DressedModel::manifold_index(const std::string& label) const {
    const ManifoldSystem& m = manifold_of(label);
    return label == "G" ? 0 : m.index_of_label(label);
}

double DressedModel::energy_ghz(const std::string& label) const {
    return manifold_of(label).energy_ghz(manifold_index(label));
}

double DressedModel::resonant_rate(const std::string& from, const std::string& to) const {
    const ManifoldSystem& mi = manifold_of(from);
    const ManifoldSystem& mf = manifold_of(to);
    if (mi.n_excitations() != mf.n_excitations() || &mi != &mf)
        throw DomainError("cooling connects states within one manifold; got '" + from +
                          "' -> '" + to + "'");
    return resonant_rate_per_photon(mi, manifold_index(from), manifold_index(to),
                                    params.cavity_kappa_ghz);
}

} // namespace bhc
