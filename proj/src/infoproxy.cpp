#include "mdimlab/infoproxy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

namespace mdimlab {

std::uint64_t ceil_log2(std::uint64_t i) {
    if (i <= 1) return 0;
    return static_cast<std::uint64_t>(std::bit_width(i - 1));
}

namespace {

/// Phrase trie over (node, symbol) pairs in one flat hash map.
class Lz78Trie {
public:
    explicit Lz78Trie(std::size_t expect = 0) {
        if (expect) map_.reserve(expect);
    }

    // returns child id or 0 when absent (0 is the root, never a child)
    std::uint32_t child(std::uint32_t node, Symbol s) const {
        const auto it = map_.find(key(node, s));
        return it == map_.end() ? 0 : it->second;
    }
    std::uint32_t insert(std::uint32_t node, Symbol s) {
        const std::uint32_t id = ++last_;
        map_.emplace(key(node, s), id);
        return id;
    }
    std::uint32_t phrase_count() const { return last_; }

private:
    static std::uint64_t key(std::uint32_t node, Symbol s) {
        return (static_cast<std::uint64_t>(node) << 32) | s;
    }
    std::unordered_map<std::uint64_t, std::uint32_t> map_;
    std::uint32_t last_ = 0;
};

struct ParseCost {
    std::uint64_t bits = 0;
    std::uint32_t phrases = 0;
};

/// One LZ78 pass; `prior_phrases` widens the reference universe when the trie
/// was pre-populated.
ParseCost lz78_parse(const std::vector<Symbol>& s, std::uint32_t k, Lz78Trie& trie,
                     std::uint32_t prior_phrases) {
    const std::uint64_t ck = ceil_log2(k);
    ParseCost cost;
    std::uint32_t node = 0;
    for (Symbol sym : s) {
        const std::uint32_t next = trie.child(node, sym);
        if (next != 0) {
            node = next;
        } else {
            trie.insert(node, sym);
            ++cost.phrases;
            cost.bits += ceil_log2(prior_phrases + cost.phrases) + ck;
            node = 0;
        }
    }
    if (node != 0) cost.bits += ck;  // trailing partial phrase
    return cost;
}

std::uint64_t lz78_bits_raw(const std::vector<Symbol>& s, std::uint32_t k) {
    Lz78Trie trie(s.size());
    return lz78_parse(s, k, trie, 0).bits;
}

}  // namespace

std::uint64_t lz78_bits(const Str& x) { return lz78_bits_raw(x.symbols(), x.alphabet().k); }

std::uint64_t lz78_primed_bits(const Str& y, const Str& x) {
    if (!(y.alphabet() == x.alphabet()))
        throw std::invalid_argument("alphabet mismatch in primed parse");
    Lz78Trie trie(x.size() + y.size());
    const ParseCost priming = lz78_parse(x.symbols(), x.alphabet().k, trie, 0);
    return lz78_parse(y.symbols(), y.alphabet().k, trie, priming.phrases).bits;
}

// ---------------------------------------------------------------------------
// Default proxy.
//
// k_plain: LZ78 bits, improved by stride decompositions (encode the s
// interleaved subsequences separately, s in {2,3,4}) so that periodically
// padded sequences are not charged for LZ78's phase redundancy.
//
// k_joint: minimum over a family of joint codings of (x, y):
//   - raw block interleavings il_{a,b} for (a,b) in the rate family, both
//     argument orders;
//   - base-plus-residual codings: pay k_plain(u), then LZ78 of the aligned
//     symbol-wise difference v[cv j] - u[cu j] (mod k) and of the v symbols
//     the alignment leaves uncovered.
// The family is closed under swapping the arguments, so the minimum is
// symmetric in (x, y) exactly.
// ---------------------------------------------------------------------------

namespace {

constexpr std::pair<std::uint32_t, std::uint32_t> kRateFamily[] = {
    {1, 1}, {2, 1}, {1, 2}, {3, 1}, {1, 3}, {4, 1}, {1, 4},
};

std::uint64_t plain_bits(const Str& x) {
    const auto& syms = x.symbols();
    const std::uint32_t k = x.alphabet().k;
    std::uint64_t best = lz78_bits_raw(syms, k);
    for (std::uint32_t stride = 2; stride <= 4; ++stride) {
        if (syms.size() < stride) break;
        std::uint64_t total = 0;
        for (std::uint32_t r = 0; r < stride; ++r) {
            std::vector<Symbol> part;
            part.reserve(syms.size() / stride + 1);
            for (std::size_t i = r; i < syms.size(); i += stride) part.push_back(syms[i]);
            total += lz78_bits_raw(part, k);
        }
        best = std::min(best, total);
    }
    return best;
}

std::vector<Symbol> block_interleave(const std::vector<Symbol>& x, const std::vector<Symbol>& y,
                                     std::uint32_t a, std::uint32_t b) {
    std::vector<Symbol> out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        for (std::uint32_t t = 0; t < a && i < x.size(); ++t) out.push_back(x[i++]);
        for (std::uint32_t t = 0; t < b && j < y.size(); ++t) out.push_back(y[j++]);
    }
    return out;
}

struct ResidualParts {
    std::vector<Symbol> residual;  // (v[cv j] - u[cu j]) mod k over the aligned range
    std::vector<Symbol> leftover;  // v symbols not covered by the alignment
};

ResidualParts residual_parts(const std::vector<Symbol>& u, const std::vector<Symbol>& v,
                             std::uint32_t cu, std::uint32_t cv, std::uint32_t k) {
    ResidualParts parts;
    std::size_t jmax = 0;
    while (jmax * cu < u.size() && jmax * cv < v.size()) ++jmax;
    parts.residual.reserve(jmax);
    for (std::size_t j = 0; j < jmax; ++j) {
        const Symbol uv = u[j * cu];
        const Symbol vv = v[j * cv];
        parts.residual.push_back((vv + k - uv) % k);
    }
    parts.leftover.reserve(v.size() - jmax);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (cv > 0 && i % cv == 0 && i / cv < jmax) continue;
        parts.leftover.push_back(v[i]);
    }
    return parts;
}

std::uint64_t joint_bits(const Str& xs, const Str& ys) {
    if (!(xs.alphabet() == ys.alphabet()))
        throw std::invalid_argument("alphabet mismatch in joint complexity");
    const std::uint32_t k = xs.alphabet().k;
    const auto& x = xs.symbols();
    const auto& y = ys.symbols();
    const std::uint64_t plain_x = plain_bits(xs);
    const std::uint64_t plain_y = plain_bits(ys);

    std::uint64_t best = UINT64_MAX;
    for (const auto& [a, b] : kRateFamily) {
        best = std::min(best, lz78_bits_raw(block_interleave(x, y, a, b), k));
        best = std::min(best, lz78_bits_raw(block_interleave(y, x, a, b), k));
    }
    for (const auto& [cu, cv] : kRateFamily) {
        {
            const ResidualParts p = residual_parts(x, y, cu, cv, k);
            best = std::min(best, plain_x + lz78_bits_raw(p.residual, k) +
                                      lz78_bits_raw(p.leftover, k));
        }
        {
            const ResidualParts p = residual_parts(y, x, cu, cv, k);
            best = std::min(best, plain_y + lz78_bits_raw(p.residual, k) +
                                      lz78_bits_raw(p.leftover, k));
        }
    }
    return best;
}

class LzProxy final : public ComplexityProxy {
public:
    std::string name() const override { return "lz78"; }
    double k_plain(const Str& x) const override { return static_cast<double>(plain_bits(x)); }
    double k_cond(const Str& y, const Str& x) const override {
        return std::max(k_joint(x, y) - k_plain(x), 0.0);
    }
    double k_joint(const Str& x, const Str& y) const override {
        return static_cast<double>(joint_bits(x, y));
    }
};

class LzPrimedProxy final : public ComplexityProxy {
public:
    std::string name() const override { return "lz78-primed"; }
    double k_plain(const Str& x) const override { return static_cast<double>(plain_bits(x)); }
    double k_cond(const Str& y, const Str& x) const override {
        return static_cast<double>(lz78_primed_bits(y, x));
    }
    double k_joint(const Str& x, const Str& y) const override {
        const double xy = k_plain(x) + k_cond(y, x);
        const double yx = k_plain(y) + k_cond(x, y);
        return std::min(xy, yx);
    }
};

const LzProxy g_lz_proxy;
const LzPrimedProxy g_primed_proxy;

}  // namespace

const ComplexityProxy& ComplexityProxy::by_name(const std::string& name) {
    if (name == "lz78") return g_lz_proxy;
    if (name == "lz78-primed") return g_primed_proxy;
    throw std::invalid_argument("unknown proxy: " + name);
}

std::vector<std::string> ComplexityProxy::builtin_names() { return {"lz78", "lz78-primed"}; }

MutualInfoEstimate mutual_info(const Str& x, const Str& y, const ComplexityProxy& proxy,
                               MutualInfoForm form) {
    if (!(x.alphabet() == y.alphabet()))
        throw std::invalid_argument("alphabet mismatch in mutual_info");
    MutualInfoEstimate est;
    est.proxy = proxy.name();
    est.form = form;
    if (form == MutualInfoForm::definitional) {
        est.value_bits = proxy.k_plain(y) - proxy.k_cond(y, x);
    } else {
        est.value_bits = proxy.k_plain(x) + proxy.k_plain(y) - proxy.k_joint(x, y);
    }
    return est;
}

// ---------------------------------------------------------------------------
// Diagnostics.
// ---------------------------------------------------------------------------

double SlackModel::eval(std::uint64_t n) const {
    return a * std::log2(static_cast<double>(std::max<std::uint64_t>(2, n))) + b;
}

Str numeral_str(std::uint64_t m, Alphabet a) {
    std::vector<Symbol> digits;
    if (m == 0) digits.push_back(0);
    while (m > 0) {
        digits.push_back(static_cast<Symbol>(m % a.k));
        m /= a.k;
    }
    std::reverse(digits.begin(), digits.end());
    return Str(a, std::move(digits));
}

namespace {

Str concat(const Str& a, const Str& b) {
    Str out = a;
    out.append(b);
    return out;
}

/// f(w, v): symbol-wise addition of the cyclically repeated mask v (identity
/// when v is empty). A concrete computable two-argument transformation.
Str cyclic_add(const Str& w, const Str& v) {
    if (v.empty()) return w;
    const std::uint32_t k = w.alphabet().k;
    Str out(w.alphabet());
    for (std::size_t i = 0; i < w.size(); ++i) out.push_back((w[i] + v[i % v.size()]) % k);
    return out;
}

Str rand_str(Alphabet a, std::uint64_t seed, std::size_t n) {
    Str out(a);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(static_cast<Symbol>(stream_value(seed, i) % a.k));
    return out;
}

}  // namespace

std::vector<CorpusTriple> default_diagnostic_corpus(std::uint64_t seed) {
    const Alphabet a(2);
    std::vector<CorpusTriple> corpus;
    std::uint64_t salt = seed;
    for (std::size_t n : {256u, 1024u, 4096u}) {
        for (std::uint64_t s = 0; s < 3; ++s) {
            const Str u = rand_str(a, splitmix64(salt + 1 + s), n);
            const Str v = rand_str(a, splitmix64(salt + 100 + s), n);
            const Str w = rand_str(a, splitmix64(salt + 200 + s), n);
            corpus.push_back({u, v, w});  // independent
            corpus.push_back({u, u, u});  // equal
            // coupled: w' = u with sparse flips, alongside an independent v
            Str coupled(a);
            for (std::size_t i = 0; i < n; ++i) {
                const bool flip = unit_double(stream_value(splitmix64(salt + 300 + s), i)) < 0.1;
                coupled.push_back((u[i] + (flip ? 1 : 0)) % a.k);
            }
            corpus.push_back({u, v, coupled});
            corpus.push_back({u, Str(a), w});        // empty v
            corpus.push_back({u, v.prefix(n / 2), w});  // shorter v
            // structured members
            Str zeros(a);
            for (std::size_t i = 0; i < n; ++i) zeros.push_back(0);
            corpus.push_back({zeros, u, cyclic_add(u, Str::from_text("01", a))});
        }
        salt = splitmix64(salt);
    }
    return corpus;
}

DiagnosticReport proxy_diagnostics(const ComplexityProxy& proxy,
                                   const std::vector<CorpusTriple>& corpus,
                                   const SlackModel& slack, const std::string& corpus_spec) {
    if (corpus.empty()) throw std::invalid_argument("diagnostic corpus must be nonempty");
    DiagnosticReport report;
    report.proxy = proxy.name();
    report.slack = slack;
    report.corpus_spec = corpus_spec;

    auto run_check = [&](const std::string& lemma, auto&& deficit_fn) {
        DiagnosticCheck check;
        check.lemma = lemma;
        check.total = corpus.size();
        for (const auto& triple : corpus) {
            const double deficit = deficit_fn(triple);
            if (deficit <= 0.0)
                ++check.passed;
            else
                check.worst_deficit_bits = std::max(check.worst_deficit_bits, deficit);
        }
        check.pass_rate = static_cast<double>(check.passed) / static_cast<double>(check.total);
        report.checks.push_back(check);
    };

    auto slack_of = [&](const CorpusTriple& t) {
        return slack.eval(std::max({t.u.size(), t.v.size(), t.w.size()}));
    };
    auto sym_info = [&](const Str& x, const Str& y) {
        return mutual_info(x, y, proxy, MutualInfoForm::symmetric).value_bits;
    };

    // K(u|vw) <= K(u|v) + K(|v|) + slack
    run_check("cond", [&](const CorpusTriple& t) {
        const double lhs = proxy.k_cond(t.u, concat(t.v, t.w));
        const double rhs = proxy.k_cond(t.u, t.v) +
                           proxy.k_plain(numeral_str(t.v.size(), t.v.alphabet())) + slack_of(t);
        return lhs - rhs;
    });

    // I(u:w) <= I(uv:w) + slack
    run_check("u:uv", [&](const CorpusTriple& t) {
        return sym_info(t.u, t.w) - (sym_info(concat(t.u, t.v), t.w) + slack_of(t));
    });

    // K(u|w) <= K(u|f(w,v)) + K(v) + slack, f = cyclic additive mask
    run_check("proc", [&](const CorpusTriple& t) {
        const Str mask = t.v.prefix(std::min<std::size_t>(t.v.size(), 8));
        const double lhs = proxy.k_cond(t.u, t.w);
        const double rhs =
            proxy.k_cond(t.u, cyclic_add(t.w, mask)) + proxy.k_plain(mask) + slack_of(t);
        return lhs - rhs;
    });

    // |I(u:w) - I(w:u)| <= slack (exactly 0 for the symmetric form)
    run_check("sym1", [&](const CorpusTriple& t) {
        return std::abs(sym_info(t.u, t.w) - sym_info(t.w, t.u)) - slack_of(t);
    });

    return report;
}

json DiagnosticReport::to_json() const {
    json j;
    j["proxy"] = proxy;
    j["slack_params"] = {{"a", slack.a}, {"b", slack.b}};
    j["corpus_spec"] = corpus_spec;
    j["checks"] = json::array();
    for (const auto& c : checks) {
        j["checks"].push_back({{"lemma", c.lemma},
                               {"passed", c.passed},
                               {"total", c.total},
                               {"pass_rate", c.pass_rate},
                               {"worst_deficit_bits", c.worst_deficit_bits}});
    }
    return j;
}

}  // namespace mdimlab
