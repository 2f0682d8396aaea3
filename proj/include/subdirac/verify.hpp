#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "subdirac/dims.hpp"
#include "subdirac/report.hpp"

namespace subdirac {

// One configuration object drives every command.  lambda = 0 means "use the
// command default" (10 for action, 200 for torus).  `input` carries the
// already-parsed payload of --in; `cutoff_samples` carries the profile
// samples when --cutoff names a sample file instead of a closed-form shape.
struct RunConfig {
    std::string command = "verify";
    Dims dims{1, 2};
    std::uint64_t seed = 1;
    long trials = 100;
    double tolerance = 1e-9;
    bool include_total_derivatives = false;
    bool corrected_signs = false;
    double lambda = 0.0;
    std::string cutoff = "characteristic";
    std::vector<std::pair<double, double>> cutoff_samples;
    nlohmann::json input = nlohmann::json::object();

    void validate() const;
};

// The identity suite: exact trace identities, matrix-oracle cross checks,
// random-point potential traces, generic-vs-closed-form densities (interior
// and, for m = 4, the boundary family), and the twisted internal-space
// identities.  Two documented discrepancies are emitted as audit records.
Report run_verify(const RunConfig& cfg);

// coefficient tables for the curvature configuration in cfg.input
Report run_coeff(const RunConfig& cfg);

// cut-off asymptotics of the eigenvalue count for cfg.input + cutoff + lambda
Report run_action(const RunConfig& cfg);

// parameterized 96-dimensional twisting-fibre coefficient assembly
Report run_sm(const RunConfig& cfg);

// flat-torus spectrum benchmark: exact spectrum vs the leading asymptotics
Report run_torus(const RunConfig& cfg);

// dispatch on cfg.command
Report run_command(const RunConfig& cfg);

// Benchmark kernel: worst |generic - closed-form| order-4 interior density
// over `trials` random closed configurations; serial and OpenMP flavours
// compute identical maxima.
double order4_deviation_batch(const Dims& d, unsigned seed, long trials, bool parallel);

} // namespace subdirac
