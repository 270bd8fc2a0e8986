#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mdimlab/mdim.hpp"
#include "mdimlab/reduction.hpp"

namespace mdimlab {

/// One end-to-end inequality experiment: a coupled pair (X, Y), a functional
/// defining Z = Phi^X, a bound hypothesis, and a tolerance.
struct ExperimentConfig {
    std::string name = "experiment";
    std::string direction = "forward-dpi";  // forward-dpi | reverse-dpi | sandwich
    std::string functional = "identity";
    std::string bound = "cl:0";        // use bound (forward, sandwich)
    std::string yield_bound;           // yield bound (reverse, sandwich); empty = use `bound`
    std::string dist = "bsc:0.1";
    std::uint32_t alphabet = 2;
    std::uint64_t horizon = 1 << 16;   // profile N
    double window = 0.25;
    double epsilon = 0.1;
    std::string proxy = "lz78";
    std::string schedule = "geometric:1.0905077326652577";
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::uint64_t verify_horizon = 512;  // reduction-witness horizon
    std::uint64_t uy_cap = 12;           // unique-yielding enumeration cap
    std::uint64_t budget = 0;            // 0 = default / MDIMLAB_BUDGET

    void validate() const;  // epsilon > 0, horizon >= 1024, seeds nonempty
    json to_json() const;
    static ExperimentConfig from_json(const json& j);
};

struct SeedRow {
    std::uint64_t seed = 0;
    double mdim_xy = 0, Mdim_xy = 0;
    double mdim_zy = 0, Mdim_zy = 0;
    bool stable_xy = false, stable_zy = false;
    bool pass = false;
};

struct ExperimentReport {
    ExperimentConfig config;
    double factor = 1.0;  // closed-form limsup factor of the hypothesis bound
    std::vector<SeedRow> rows;
    std::size_t pass_count = 0;
    double pass_fraction = 0.0;
    bool all_pass = false;
    std::vector<json> reduction_summaries;  // per-seed witness verdicts

    json to_json() const;
    /// Recomputes every per-seed verdict from the stored row values; used by
    /// the cross-check invariant.
    bool verdicts_consistent() const;
};

/// Thrown when a theorem hypothesis fails (reduction witness rejected);
/// carries the offending reduction report.
class PreconditionAbort : public std::runtime_error {
public:
    PreconditionAbort(const std::string& what, json detail)
        : std::runtime_error(what), detail_(std::move(detail)) {}
    const json& detail() const { return detail_; }

private:
    json detail_;
};

ExperimentReport run_forward_dpi(const ExperimentConfig& config);
ExperimentReport run_reverse_dpi(const ExperimentConfig& config);
ExperimentReport run_sandwich(const ExperimentConfig& config);
/// Dispatch on config.direction.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Gnuplot script plotting the per-seed profile CSVs an experiment wrote.
std::string plot_script(const std::string& report_stem, const std::vector<std::string>& csvs);

}  // namespace mdimlab
