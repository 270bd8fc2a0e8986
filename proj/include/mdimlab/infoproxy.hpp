#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "mdimlab/core.hpp"

namespace mdimlab {

using nlohmann::json;

std::uint64_t ceil_log2(std::uint64_t i);  // 0 for i <= 1

/// LZ78 code length in bits: each completed phrase i costs
/// ceil(log2 i) + ceil(log2 k); a trailing partial phrase costs ceil(log2 k).
std::uint64_t lz78_bits(const Str& x);

/// LZ78 code length of y when the phrase dictionary is pre-populated by
/// parsing x first (x's phrases are free); references address the combined
/// dictionary, so phrase i of y costs ceil(log2(q + i)) + ceil(log2 k) where
/// q is x's phrase count.
std::uint64_t lz78_primed_bits(const Str& y, const Str& x);

/// Pluggable computable stand-in for Kolmogorov complexity, in bits.
class ComplexityProxy {
public:
    virtual ~ComplexityProxy() = default;
    virtual std::string name() const = 0;
    virtual double k_plain(const Str& x) const = 0;
    virtual double k_cond(const Str& y, const Str& x) const = 0;  // K(y|x)
    virtual double k_joint(const Str& x, const Str& y) const = 0;

    /// "lz78" (chain-rule conditional) or "lz78-primed" (primed-dictionary
    /// conditional).
    static const ComplexityProxy& by_name(const std::string& name);
    static std::vector<std::string> builtin_names();
};

enum class MutualInfoForm { definitional, symmetric };

struct MutualInfoEstimate {
    double value_bits = 0.0;
    std::string proxy;
    MutualInfoForm form = MutualInfoForm::symmetric;
};

/// definitional: K(y) - K(y|x).  symmetric: K(x) + K(y) - K(x,y).
/// Values may be negative for proxies; they are reported as-is.
MutualInfoEstimate mutual_info(const Str& x, const Str& y, const ComplexityProxy& proxy,
                               MutualInfoForm form = MutualInfoForm::symmetric);

// ---------------------------------------------------------------------------
// Proxy diagnostics: how well the estimator respects the information
// inequalities it stands in for. A health metric with slack, not a theorem
// check.
// ---------------------------------------------------------------------------

struct SlackModel {
    double a = 4.0;
    double b = 64.0;
    double eval(std::uint64_t n) const;  // a * log2(max(2,n)) + b
};

struct CorpusTriple {
    Str u, v, w;
};

struct DiagnosticCheck {
    std::string lemma;  // "cond" | "u:uv" | "proc" | "sym1"
    std::size_t passed = 0;
    std::size_t total = 0;
    double pass_rate = 0.0;
    double worst_deficit_bits = 0.0;
};

struct DiagnosticReport {
    std::string proxy;
    SlackModel slack;
    std::string corpus_spec;
    std::vector<DiagnosticCheck> checks;
    json to_json() const;
};

/// Mixed triples over lengths 256/1024/4096: independent, equal, coupled,
/// empty-v, short-v and structured families, three seeds each.
std::vector<CorpusTriple> default_diagnostic_corpus(std::uint64_t seed = 7);

DiagnosticReport proxy_diagnostics(const ComplexityProxy& proxy,
                                   const std::vector<CorpusTriple>& corpus,
                                   const SlackModel& slack,
                                   const std::string& corpus_spec = "default");

/// Base-k numeral of m as a Str (used for the K(|v|) terms).
Str numeral_str(std::uint64_t m, Alphabet a);

}  // namespace mdimlab
