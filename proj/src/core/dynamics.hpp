// dynamics.hpp — classical rate-equation engine: generator assembly,
// matrix-exponential propagation, steady states and staged protocols.

#pragma once

#include "core/model.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace bhc {

struct RateEntry {
    std::string from, to;
    double rate_us = 0.0; // us^-1
};

// Natural decay (downward) and thermal excitation (upward) rate tables,
// taken as experimental inputs.
struct NaturalRates {
    std::vector<RateEntry> down;
    std::vector<RateEntry> up;
};

// gamma(f, i) = rate i -> f for f != i; diagonal = -(column sum). Columns sum
// to zero exactly, so the simplex is preserved.
struct RateMatrix {
    std::vector<std::string> states;
    Eigen::MatrixXd gamma; // us^-1

    int index(const std::string& label) const; // throws DomainError if absent
    void add_rate(const std::string& from, const std::string& to, double rate_us);
};

RateMatrix make_rate_matrix(const std::vector<std::string>& states);

// cooling entries arrive with resolved rates (i -> f one-way); coherent
// drives become symmetric transfer at r = reduction * Omega_angular
// (default reduction 1/2, the saturation limit; a documented modeling choice).
RateMatrix assemble_rates(const std::vector<std::string>& states,
                          const NaturalRates& natural,
                          const std::vector<RateEntry>& cooling,
                          const std::vector<DriveSpec>& coherent,
                          double coherent_reduction = 0.5);

struct Trajectory {
    std::vector<double> times_us;
    Eigen::MatrixXd populations; // n_states x n_times
    std::vector<std::string> states;
    std::string protocol; // provenance
};

Trajectory propagate(const RateMatrix& rm, const Eigen::VectorXd& initial,
                     const std::vector<double>& times_us);

// kernel vector normalized to the simplex; multidimensional kernel
// (disconnected state graph) raises NumericError listing the components.
Eigen::VectorXd steady_state(const RateMatrix& rm);

struct ProtocolStage {
    std::string name;
    std::vector<DriveSpec> drives;
    bool to_steady_state = true;
    double duration_us = 0.0; // used when to_steady_state is false
    int samples = 50;
};

struct Protocol {
    NaturalRates natural;
    std::vector<ProtocolStage> stages;
    double coherent_reduction = 0.5;
    std::optional<std::string> initial_state; // default: thermal steady state
};

Protocol load_protocol(const std::string& path);
Protocol parse_protocol(const std::string& json_text);

struct StageResult {
    std::string name;
    RateMatrix rates;
    Eigen::VectorXd final_populations;
    std::optional<Trajectory> trajectory; // for timed stages
};

// stages evaluated in order; each starts from the previous stage's end state.
// An empty protocol yields the thermal steady state.
std::vector<StageResult> simulate_protocol(const DressedModel& model, const Protocol& protocol);

// resolve a drive list into rate entries against a dressed model
std::vector<RateEntry> resolve_cooling_rates(const DressedModel& model,
                                             const std::vector<DriveSpec>& drives);

} // namespace bhc
