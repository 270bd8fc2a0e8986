#pragma once

#include <string>
#include <vector>

#include "mdimlab/generators.hpp"
#include "mdimlab/infoproxy.hpp"

namespace mdimlab {

/// Sample positions for a dimension profile. Geometric schedules start at 64
/// (clamped to N) and always include N itself.
struct ScheduleSpec {
    enum class Kind { linear, geometric };

    Kind kind = Kind::geometric;
    double ratio = kDefaultRatio;  // geometric
    std::uint64_t step = 0;        // linear
    std::uint64_t start = 64;

    // 2^(1/8): eight points per octave, so a 0.25 tail window always holds
    // at least four samples.
    static constexpr double kDefaultRatio = 1.0905077326652577;

    std::vector<std::uint64_t> points(std::uint64_t horizon) const;
    std::string to_string() const;
    static ScheduleSpec parse(const std::string& s);  // "geometric:1.09" | "linear:1024"
};

struct ProfileSample {
    std::uint64_t n = 0;
    double info_bits = 0.0;  // raw symmetric-form estimate, may be negative
    double density = 0.0;    // clamp(info,0) / (n log2 k)
    bool overshoot = false;  // density > 1 (kept, flagged)
};

struct DimensionProfile {
    Alphabet alphabet{};
    std::string proxy;
    std::string schedule;
    std::string s_spec;
    std::string t_spec;
    std::uint64_t horizon = 0;
    std::vector<ProfileSample> samples;  // strictly increasing n

    std::string to_csv() const;
    static DimensionProfile from_csv(const std::string& text);
};

/// Mutual-information density samples of (S, T) at the scheduled prefix
/// lengths, symmetric form.
DimensionProfile profile(const SequenceGen& S, const SequenceGen& T, std::uint64_t horizon,
                         const ScheduleSpec& schedule, const ComplexityProxy& proxy);

struct DimensionEstimate {
    double mdim_hat = 0.0;
    double Mdim_hat = 0.0;
    std::uint64_t window_lo = 0;
    std::size_t samples_in_window = 0;
};

/// Tail-window min/max surrogate for liminf/limsup over [(1-w) N, N].
/// Requires at least four samples in the window.
DimensionEstimate estimate(const DimensionProfile& p, double window_fraction);

struct ConvergenceReport {
    double tail_slope = 0.0;        // least-squares density-vs-n slope in the window
    double oscillation_width = 0.0;  // max - min density in the window
    bool stable = false;             // width <= 0.1
};

ConvergenceReport convergence_report(const DimensionProfile& p, double window_fraction = 0.25);

}  // namespace mdimlab
