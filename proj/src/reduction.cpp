#include "mdimlab/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mdimlab {

namespace {

json row_to_json(const ReductionRow& r) {
    json j;
    j["n"] = r.n;
    if (r.value)
        j["value"] = *r.value;
    else
        j["value"] = nullptr;
    j["bound"] = r.bound;
    j["ok"] = r.ok;
    return j;
}

}  // namespace

json ReductionReport::to_json() const {
    json j;
    j["mode"] = mode;
    j["verdict"] = pass ? "pass" : "fail";
    j["vacuous"] = vacuous;
    j["horizon"] = horizon;
    j["functional"] = functional;
    j["bound_spec"] = bound;
    j["rows"] = json::array();
    for (const auto& r : rows) j["rows"].push_back(row_to_json(r));
    if (first_failure) {
        j["first_failure"] = {{"n", first_failure->n},
                              {"category", first_failure->category},
                              {"detail", first_failure->detail}};
    } else {
        j["first_failure"] = nullptr;
    }
    if (uy_checked_up_to) j["uy_checked_up_to"] = *uy_checked_up_to;
    if (uy_counterexample) {
        j["uy_counterexample"] = *uy_counterexample;
        j["uy_counterexample_n"] = *uy_counterexample_n;
    }
    return j;
}

std::string ReductionReport::to_csv() const {
    std::ostringstream out;
    out << "n,use_or_yield,bound,ok\n";
    for (const auto& r : rows) {
        out << r.n << ",";
        if (r.value)
            out << *r.value;
        else
            out << "undefined";
        out << "," << r.bound << "," << (r.ok ? 1 : 0) << "\n";
    }
    return out.str();
}

ReductionReport verify_bT(const ReductionWitness& w, std::uint64_t horizon,
                          std::uint64_t budget) {
    if (w.mode != ReductionWitness::Mode::use_bounded)
        throw std::invalid_argument("verify_bT requires a use-bounded witness");
    ReductionReport report;
    report.mode = "use-bounded";
    report.horizon = horizon;
    report.functional = w.phi.name();
    report.bound = w.bound.to_string();
    report.vacuous = horizon == 0;

    bool ok_all = true;
    for (std::uint64_t n = 0; n <= horizon; ++n) {
        const std::uint64_t limit = w.bound.eval(n);
        const RunOutcome r = run(w.phi, w.from, n, budget);
        ReductionRow row{n, std::nullopt, limit, false};
        if (!r.halted()) {
            if (ok_all)
                report.first_failure =
                    FirstFailure{n, "divergence", RunOutcome::reason_name(r.reason)};
            ok_all = false;
            report.rows.push_back(row);
            continue;
        }
        const std::uint64_t used = r.largest_query ? *r.largest_query + 1 : 0;
        row.value = used;
        if (!(r.output == w.to.prefix(n))) {
            if (ok_all)
                report.first_failure = FirstFailure{n, "output-mismatch",
                                                    "phi output differs from target prefix"};
            ok_all = false;
        } else if (used > limit) {
            if (ok_all)
                report.first_failure =
                    FirstFailure{n, "use-exceeded",
                                 "use " + std::to_string(used) + " > bound " + std::to_string(limit)};
            ok_all = false;
        } else {
            row.ok = true;
        }
        report.rows.push_back(row);
    }
    report.pass = ok_all;
    return report;
}

namespace {

/// Odometer over Sigma^len in lexicographic order; returns false after the
/// last string.
bool next_string(std::vector<Symbol>& syms, std::uint32_t k) {
    for (std::size_t i = syms.size(); i-- > 0;) {
        if (syms[i] + 1 < k) {
            ++syms[i];
            for (std::size_t j = i + 1; j < syms.size(); ++j) syms[j] = 0;
            return true;
        }
    }
    return false;
}

Str transducer_output(const StreamingTransducer& t, const std::vector<Symbol>& input) {
    Str out(t.alphabet);
    std::uint32_t state = t.start;
    for (Symbol c : input) {
        const Transition& tr = t.table[state][c];
        state = tr.next;
        for (Symbol s : tr.out) out.push_back(s);
    }
    return out;
}

}  // namespace

UniqueYieldCheck check_uniquely_yielding(const TuringFunctional& phi, const SequenceGen& S,
                                         std::uint64_t n, std::uint64_t cap_len) {
    if (!phi.is_transducer())
        throw std::invalid_argument(
            "check_uniquely_yielding is exact for transducers only; general programs are rejected");
    if (n < 1) throw std::invalid_argument("check_uniquely_yielding requires n >= 1");
    if (cap_len < n) throw std::invalid_argument("cap_len must be >= n");
    const Alphabet a = phi.alphabet();
    const double space = std::pow(static_cast<double>(a.k), static_cast<double>(cap_len));
    if (space > static_cast<double>(1u << 24))
        throw std::invalid_argument("k^cap_len exceeds the enumeration guard (2^24)");

    const auto& t = phi.transducer();
    const std::uint64_t yield_n = transducer_out_len(t, Oracle(S), n) + 1;
    const RunOutcome phi_s = run(phi, S, yield_n);
    if (!phi_s.halted())
        throw std::runtime_error("phi^S diverged while materializing the yield(n) prefix");
    const Str phi_s_prefix = phi_s.output;
    const Str s_n = S.prefix(n);

    UniqueYieldCheck result;
    result.yield_n = yield_n;
    result.exact = true;
    result.holds = true;

    std::vector<Symbol> candidate(cap_len, 0);
    while (true) {
        const Str out = transducer_output(t, candidate);
        if (out.size() < yield_n) result.exact = false;
        if (out.size() >= yield_n && phi_s_prefix.is_prefix_of(out)) {
            const Str cand(a, candidate);
            if (!s_n.is_prefix_of(cand)) {
                result.holds = false;
                result.counterexample = cand;
                return result;
            }
        }
        if (!next_string(candidate, a.k)) break;
    }
    return result;
}

ReductionReport verify_uyb(const ReductionWitness& w, std::uint64_t horizon,
                           std::uint64_t cap_len, std::uint64_t budget) {
    if (w.mode != ReductionWitness::Mode::yield_bounded)
        throw std::invalid_argument("verify_uyb requires a yield-bounded witness");
    if (!w.phi.is_transducer())
        throw std::invalid_argument("verify_uyb handles transducer functionals only");

    ReductionReport report;
    report.mode = "yield-bounded";
    report.horizon = horizon;
    report.functional = w.phi.name();
    report.bound = w.bound.to_string();
    report.vacuous = horizon == 0;

    const auto& t = w.phi.transducer();
    bool ok_all = true;

    // clauses (a) output match and (b) yield bound, tracked with one pass of
    // the transducer over the oracle
    Oracle cursor(w.from);
    std::uint32_t state = t.start;
    std::uint64_t out_len = 0;
    for (std::uint64_t n = 0; n <= horizon; ++n) {
        const std::uint64_t limit = w.bound.eval(n);
        const std::uint64_t yield_n = out_len + 1;  // exact transducer yield at this n
        ReductionRow row{n, yield_n, limit, true};

        const RunOutcome r = run(w.phi, w.from, n, budget);
        if (!r.halted() || !(r.output == w.to.prefix(n))) {
            row.ok = false;
            if (ok_all)
                report.first_failure = FirstFailure{n, "output-mismatch",
                                                    "phi^X does not produce the target prefix"};
            ok_all = false;
        } else if (yield_n > limit) {
            row.ok = false;
            if (ok_all)
                report.first_failure = FirstFailure{
                    n, "yield-exceeded",
                    "yield " + std::to_string(yield_n) + " > bound " + std::to_string(limit)};
            ok_all = false;
        }
        report.rows.push_back(row);

        if (n < horizon) {
            const auto sym = cursor.at(n);
            if (!sym) throw std::runtime_error("oracle exhausted during verify_uyb");
            const Transition& tr = t.table[state][*sym];
            state = tr.next;
            out_len += tr.out.size();
        }
    }

    // clause (c): unique yielding within the enumerable range
    const std::uint64_t uy_to = std::min<std::uint64_t>(horizon, cap_len);
    report.uy_checked_up_to = uy_to;
    for (std::uint64_t n = 1; n <= uy_to && ok_all; ++n) {
        const UniqueYieldCheck check = check_uniquely_yielding(w.phi, w.from, n, cap_len);
        if (!check.holds) {
            ok_all = false;
            report.first_failure =
                FirstFailure{n, "not-uniquely-yielding",
                             "counterexample oracle " + check.counterexample->to_text()};
            report.uy_counterexample = check.counterexample->to_text();
            report.uy_counterexample_n = n;
        }
    }

    report.pass = ok_all;
    return report;
}

Str invert_uyb_brute(const TuringFunctional& phi, const Str& target, std::uint64_t n,
                     const BoundSpec& bound, std::uint64_t max_len, std::uint64_t budget) {
    if (max_len < n) throw std::invalid_argument("max_len must be >= n");
    const std::uint64_t target_len = bound.eval(n);
    if (target.size() < target_len)
        throw std::invalid_argument("target shorter than bound(n) symbols");
    const Alphabet a = phi.alphabet();
    const Str want = target.prefix(target_len);

    double work = 0;
    for (std::uint64_t len = n; len <= max_len; ++len)
        work += std::pow(static_cast<double>(a.k), static_cast<double>(len));
    if (work > static_cast<double>(1u << 26))
        throw std::invalid_argument("brute-force search space exceeds the guard (2^26)");

    for (std::uint64_t len = n; len <= max_len; ++len) {
        std::vector<Symbol> candidate(len, 0);
        while (true) {
            const Str cand(a, candidate);
            const RunOutcome r = run(phi, cand, target_len, budget);
            if (r.halted() && r.output == want) return cand.prefix(n);
            if (!next_string(candidate, a.k)) break;
        }
    }
    throw std::runtime_error(
        "inversion not found within max_len (bound too small, functional not uniquely "
        "yielding, or target not in range)");
}

namespace {

bool invert_dfs(const StreamingTransducer& t, const Str& want, std::uint32_t state,
                std::size_t matched, std::uint64_t max_len, std::vector<Symbol>& consumed) {
    if (matched >= want.size()) return true;
    if (consumed.size() >= max_len) return false;
    for (Symbol s = 0; s < t.alphabet.k; ++s) {
        const Transition& tr = t.table[state][s];
        bool compatible = true;
        for (std::size_t j = 0; j < tr.out.size(); ++j) {
            const std::size_t pos = matched + j;
            if (pos >= want.size()) break;  // emissions past the target are unconstrained
            if (tr.out[j] != want[pos]) {
                compatible = false;
                break;
            }
        }
        if (!compatible) continue;
        consumed.push_back(s);
        if (invert_dfs(t, want, tr.next, matched + tr.out.size(), max_len, consumed)) return true;
        consumed.pop_back();
    }
    return false;
}

}  // namespace

Str invert_uyb_fast(const TuringFunctional& phi, const Str& target, std::uint64_t n,
                    const BoundSpec& bound, std::uint64_t max_len) {
    if (!phi.is_transducer())
        throw std::invalid_argument("transducer fast path requires a transducer functional");
    if (max_len < n) throw std::invalid_argument("max_len must be >= n");
    const std::uint64_t target_len = bound.eval(n);
    if (target.size() < target_len)
        throw std::invalid_argument("target shorter than bound(n) symbols");
    const Str want = target.prefix(target_len);
    const auto& t = phi.transducer();

    std::vector<Symbol> consumed;
    if (!invert_dfs(t, want, t.start, 0, max_len, consumed))
        throw std::runtime_error(
            "inversion not found within max_len (bound too small, functional not uniquely "
            "yielding, or target not in range)");
    while (consumed.size() < n) consumed.push_back(0);  // unconstrained tail, lex-first
    return Str(phi.alphabet(), std::move(consumed)).prefix(n);
}

Str invert_uyb(const TuringFunctional& phi, const Str& target, std::uint64_t n,
               const BoundSpec& bound, std::uint64_t max_len, std::uint64_t budget) {
    if (phi.is_transducer()) return invert_uyb_fast(phi, target, n, bound, max_len);
    return invert_uyb_brute(phi, target, n, bound, max_len, budget);
}

}  // namespace mdimlab
