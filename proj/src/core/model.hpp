// model.hpp — dressed-model bundle: normal modes, Kerr tensors and the
// G/E/F manifolds of a device at a bias current. The shared context for
// rate, chi and dynamics computations.

#pragma once

#include "core/device.hpp"
#include "core/dissipation.hpp"
#include "core/kerr.hpp"
#include "core/manifolds.hpp"
#include "core/modes.hpp"

#include <string>
#include <vector>

namespace bhc {

struct DressedModel {
    DeviceParams params;
    double current_ma = 0.0;
    ModeBasis modes;
    KerrTensors kerr;
    ManifoldSystem ground; // N = 0
    ManifoldSystem one;    // N = 1, E-states
    ManifoldSystem two;    // N = 2, F-states

    static DressedModel build(const DeviceParams& params, double current_ma = 0.0);

    // all state labels in generator order: G, E1..EL, F1..Fdim
    std::vector<std::string> state_labels() const;
    const ManifoldSystem& manifold_of(const std::string& label) const;
    int manifold_index(const std::string& label) const; // within its manifold
    double energy_ghz(const std::string& label) const;

    // resonant per-photon cooling rate (table units us^-1) for labels in the
    // same manifold; DomainError across manifolds (O_B conserves number).
    double resonant_rate(const std::string& from, const std::string& to) const;
};

} // namespace bhc
