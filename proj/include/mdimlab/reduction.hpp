#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mdimlab/bounds.hpp"
#include "mdimlab/functional.hpp"

namespace mdimlab {

using nlohmann::json;

struct ReductionWitness {
    enum class Mode { use_bounded, yield_bounded };

    TuringFunctional phi;
    SequenceGen from;  // X, the oracle side
    SequenceGen to;    // Z, the reduced sequence
    BoundSpec bound;
    Mode mode = Mode::use_bounded;
};

struct ReductionRow {
    std::uint64_t n = 0;
    std::optional<std::uint64_t> value;  // use or yield; nullopt = divergent/undefined
    std::uint64_t bound = 0;
    bool ok = false;
};

struct FirstFailure {
    std::uint64_t n = 0;
    std::string category;  // output-mismatch | use-exceeded | yield-exceeded |
                           // divergence | not-uniquely-yielding
    std::string detail;
};

struct ReductionReport {
    std::string mode;
    bool pass = false;
    bool vacuous = false;  // horizon 0
    std::uint64_t horizon = 0;
    std::string functional;
    std::string bound;
    std::vector<ReductionRow> rows;
    std::optional<FirstFailure> first_failure;

    // yield-bounded extras
    std::optional<std::uint64_t> uy_checked_up_to;  // unique-yielding verified for n <= this
    std::optional<std::string> uy_counterexample;   // oracle text that breaks uniqueness
    std::optional<std::uint64_t> uy_counterexample_n;

    json to_json() const;
    std::string to_csv() const;
};

/// Checks, for every n <= horizon: the run halts, the output equals
/// prefix(Z, n), and use(n) <= bound(n).
ReductionReport verify_bT(const ReductionWitness& w, std::uint64_t horizon,
                          std::uint64_t budget = 0);

struct UniqueYieldCheck {
    bool holds = false;
    bool exact = false;  // every length-cap oracle emits >= yield(n) symbols
    std::uint64_t yield_n = 0;
    std::optional<Str> counterexample;
};

/// Enumerates all oracle strings of length cap_len and searches for a T-prefix
/// whose output extends Phi^S restricted to yield(n) while S|n is not a prefix
/// of it. Transducers only; guarded by k^cap_len <= 2^24.
UniqueYieldCheck check_uniquely_yielding(const TuringFunctional& phi, const SequenceGen& S,
                                         std::uint64_t n, std::uint64_t cap_len);

/// Clause (a): outputs match Z up to horizon. Clause (b): yield(n) <= bound(n)
/// for n <= horizon. Clause (c): uniquely yielding for n <= min(horizon, cap_len).
ReductionReport verify_uyb(const ReductionWitness& w, std::uint64_t horizon,
                           std::uint64_t cap_len, std::uint64_t budget = 0);

/// The searching construction behind the reverse reduction: finds the
/// length-then-lexicographic first x with run(phi, x, bound(n)) halting on
/// exactly target|bound(n), and returns x|n. Throws when nothing is found
/// within max_len.
Str invert_uyb_brute(const TuringFunctional& phi, const Str& target, std::uint64_t n,
                     const BoundSpec& bound, std::uint64_t max_len, std::uint64_t budget = 0);

/// Transducer fast path: reconstructs the consumed input by walking the
/// machine against the target output, backtracking over emission-compatible
/// symbols. Must agree with the brute-force result on uniquely yielding
/// functionals.
Str invert_uyb_fast(const TuringFunctional& phi, const Str& target, std::uint64_t n,
                    const BoundSpec& bound, std::uint64_t max_len);

/// Fast path for transducers, brute force otherwise.
Str invert_uyb(const TuringFunctional& phi, const Str& target, std::uint64_t n,
               const BoundSpec& bound, std::uint64_t max_len, std::uint64_t budget = 0);

}  // namespace mdimlab
