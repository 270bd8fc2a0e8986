#include "mdimlab/functional.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace mdimlab {

namespace {
constexpr std::uint64_t kDefaultBudget = 1'000'000;
constexpr int kRegisterCount = 16;
}  // namespace

void StreamingTransducer::validate() const {
    if (table.empty()) throw std::invalid_argument("transducer needs at least one state");
    if (start >= table.size()) throw std::invalid_argument("transducer start state out of range");
    for (const auto& row : table) {
        if (row.size() != alphabet.k)
            throw std::invalid_argument("transducer transition table must be total");
        for (const auto& tr : row) {
            if (tr.next >= table.size())
                throw std::invalid_argument("transducer transition to unknown state");
            for (Symbol s : tr.out) {
                if (s >= alphabet.k)
                    throw std::invalid_argument("transducer output symbol out of range");
            }
        }
    }
}

Alphabet TuringFunctional::alphabet() const {
    if (is_transducer()) return transducer().alphabet;
    return program().alphabet;
}

std::optional<Symbol> Oracle::at(std::uint64_t i) {
    if (finite()) {
        if (i >= str_->size()) return std::nullopt;
        return (*str_)[i];
    }
    if (i >= cache_.size()) {
        std::uint64_t want = std::max<std::uint64_t>(64, cache_.size() * 2);
        while (want <= i) want *= 2;
        cache_ = gen_->prefix(want);
    }
    return cache_[i];
}

const char* RunOutcome::reason_name(Reason r) {
    switch (r) {
        case Reason::none: return "none";
        case Reason::oracle_out_of_range: return "oracle-out-of-range";
        case Reason::budget_exhausted: return "budget-exhausted";
        case Reason::emission_stall: return "emission-stall";
    }
    return "unknown";
}

std::uint64_t default_budget() {
    if (const char* env = std::getenv("MDIMLAB_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return kDefaultBudget;
}

namespace {

RunOutcome halt_outcome(Str output, std::optional<std::uint64_t> largest, std::uint64_t steps) {
    RunOutcome out;
    out.status = RunOutcome::Status::halt;
    out.reason = RunOutcome::Reason::none;
    out.output = std::move(output);
    out.largest_query = largest;
    out.steps = steps;
    return out;
}

RunOutcome diverge_outcome(RunOutcome::Reason why, Alphabet a,
                           std::optional<std::uint64_t> largest, std::uint64_t steps) {
    RunOutcome out;
    out.status = RunOutcome::Status::diverge;
    out.reason = why;
    out.output = Str(a);
    out.largest_query = largest;
    out.steps = steps;
    return out;
}

RunOutcome run_transducer(const StreamingTransducer& t, Oracle& oracle, std::uint64_t n,
                          std::uint64_t budget) {
    const Alphabet a = t.alphabet;
    if (n == 0) return halt_outcome(Str(a), std::nullopt, 0);

    Str out(a);
    std::uint32_t state = t.start;
    std::uint64_t pos = 0;
    while (out.size() < n) {
        // A transducer on an infinite oracle consumes without bound if it
        // stops emitting; the budget caps that pathological case.
        if (!oracle.finite() && pos >= budget)
            return diverge_outcome(RunOutcome::Reason::budget_exhausted, a,
                                   pos ? std::optional<std::uint64_t>(pos - 1) : std::nullopt, pos);
        const auto sym = oracle.at(pos);
        if (!sym)
            return diverge_outcome(RunOutcome::Reason::oracle_out_of_range, a,
                                   std::optional<std::uint64_t>(pos), pos);
        if (*sym >= a.k) throw std::invalid_argument("oracle symbol outside functional alphabet");
        const Transition& tr = t.table[state][*sym];
        state = tr.next;
        for (Symbol s : tr.out) out.push_back(s);
        ++pos;
    }
    return halt_outcome(out.prefix(n), pos - 1, pos);
}

RunOutcome run_program(const GeneralProgram& p, Oracle& oracle, std::uint64_t n,
                       std::uint64_t budget) {
    const Alphabet a = p.alphabet;
    if (n == 0) return halt_outcome(Str(a), std::nullopt, 0);

    std::int64_t regs[kRegisterCount] = {};
    regs[0] = static_cast<std::int64_t>(n);
    Str out(a);
    std::optional<std::uint64_t> largest;
    std::uint64_t steps = 0;
    std::size_t pc = 0;

    auto reg = [&](int i) -> std::int64_t& {
        if (i < 0 || i >= kRegisterCount) throw std::invalid_argument("register index out of range");
        return regs[i];
    };

    while (true) {
        if (steps >= budget)
            return diverge_outcome(RunOutcome::Reason::budget_exhausted, a, largest, steps);
        if (pc >= p.code.size()) {
            // falling off the end behaves like halt
            if (out.size() >= n) return halt_outcome(out.prefix(n), largest, steps);
            return diverge_outcome(RunOutcome::Reason::emission_stall, a, largest, steps);
        }
        const Instr& in = p.code[pc];
        ++steps;
        switch (in.op) {
            case Op::li: reg(in.a) = in.imm; ++pc; break;
            case Op::mov: reg(in.a) = reg(in.b); ++pc; break;
            case Op::add: reg(in.a) = reg(in.b) + reg(in.c); ++pc; break;
            case Op::addi: reg(in.a) = reg(in.b) + in.imm; ++pc; break;
            case Op::sub: reg(in.a) = reg(in.b) - reg(in.c); ++pc; break;
            case Op::subi: reg(in.a) = reg(in.b) - in.imm; ++pc; break;
            case Op::jmp: pc = static_cast<std::size_t>(in.imm); break;
            case Op::jz: pc = (reg(in.a) == 0) ? static_cast<std::size_t>(in.imm) : pc + 1; break;
            case Op::jnz: pc = (reg(in.a) != 0) ? static_cast<std::size_t>(in.imm) : pc + 1; break;
            case Op::jlt:
                pc = (reg(in.a) < reg(in.b)) ? static_cast<std::size_t>(in.imm) : pc + 1;
                break;
            case Op::query: {
                const std::int64_t want = reg(in.b);
                if (want < 0)
                    return diverge_outcome(RunOutcome::Reason::oracle_out_of_range, a, largest,
                                           steps);
                const auto pos = static_cast<std::uint64_t>(want);
                const auto sym = oracle.at(pos);
                if (!sym)
                    return diverge_outcome(RunOutcome::Reason::oracle_out_of_range, a, largest,
                                           steps);
                largest = largest ? std::max(*largest, pos) : pos;
                reg(in.a) = static_cast<std::int64_t>(*sym);
                ++pc;
                break;
            }
            case Op::emit: {
                const std::int64_t v = reg(in.a);
                const auto sym = static_cast<Symbol>(((v % a.k) + a.k) % a.k);
                out.push_back(sym);
                if (out.size() >= n) return halt_outcome(out.prefix(n), largest, steps);
                ++pc;
                break;
            }
            case Op::halt:
                if (out.size() >= n) return halt_outcome(out.prefix(n), largest, steps);
                return diverge_outcome(RunOutcome::Reason::emission_stall, a, largest, steps);
        }
    }
}

}  // namespace

RunOutcome run(const TuringFunctional& phi, Oracle oracle, std::uint64_t n, std::uint64_t budget) {
    if (!(oracle.alphabet() == phi.alphabet()))
        throw std::invalid_argument("alphabet mismatch between functional and oracle");
    if (budget == 0) budget = default_budget();
    if (phi.is_transducer()) return run_transducer(phi.transducer(), oracle, n, budget);
    const auto& prog = phi.program();
    if (prog.budget_hint > 0 && budget == default_budget()) budget = prog.budget_hint;
    return run_program(prog, oracle, n, budget);
}

RunOutcome run(const TuringFunctional& phi, const Str& oracle, std::uint64_t n,
               std::uint64_t budget) {
    return run(phi, Oracle(oracle), n, budget);
}

RunOutcome run(const TuringFunctional& phi, const SequenceGen& oracle, std::uint64_t n,
               std::uint64_t budget) {
    return run(phi, Oracle(oracle), n, budget);
}

namespace {
std::optional<std::uint64_t> use_from_outcome(const RunOutcome& r) {
    if (!r.halted()) return std::nullopt;
    if (!r.largest_query) return 0;
    return *r.largest_query + 1;
}
}  // namespace

std::optional<std::uint64_t> use_of(const TuringFunctional& phi, const Str& oracle,
                                    std::uint64_t n, std::uint64_t budget) {
    return use_from_outcome(run(phi, oracle, n, budget));
}

std::optional<std::uint64_t> use_of(const TuringFunctional& phi, const SequenceGen& oracle,
                                    std::uint64_t n, std::uint64_t budget) {
    return use_from_outcome(run(phi, oracle, n, budget));
}

std::uint64_t transducer_out_len(const StreamingTransducer& t, Oracle oracle, std::uint64_t n) {
    std::uint32_t state = t.start;
    std::uint64_t len = 0;
    for (std::uint64_t pos = 0; pos < n; ++pos) {
        const auto sym = oracle.at(pos);
        if (!sym) throw std::out_of_range("oracle shorter than requested consumption");
        const Transition& tr = t.table[state][*sym];
        state = tr.next;
        len += tr.out.size();
    }
    return len;
}

namespace {
YieldResult yield_on_prefix(const TuringFunctional& phi, const Str& prefix, std::uint64_t n,
                            std::uint64_t max_m, std::uint64_t budget) {
    YieldResult res;
    if (phi.is_transducer()) {
        const std::uint64_t out_len = transducer_out_len(phi.transducer(), Oracle(prefix), n);
        if (out_len + 1 <= max_m) res.value = out_len + 1;
        return res;
    }
    for (std::uint64_t m = 0; m <= max_m; ++m) {
        const RunOutcome r = run(phi, prefix, m, budget);
        if (!r.halted()) {
            res.value = m;
            res.budget_relative = (r.reason == RunOutcome::Reason::budget_exhausted);
            return res;
        }
    }
    return res;  // infinity sentinel: nothing below max_m diverges
}
}  // namespace

YieldResult yield_of(const TuringFunctional& phi, const SequenceGen& oracle, std::uint64_t n,
                     std::uint64_t max_m, std::uint64_t budget) {
    return yield_on_prefix(phi, oracle.prefix(n), n, max_m, budget);
}

YieldResult yield_of(const TuringFunctional& phi, const Str& oracle_prefix, std::uint64_t n,
                     std::uint64_t max_m, std::uint64_t budget) {
    return yield_on_prefix(phi, oracle_prefix.prefix(std::min<std::uint64_t>(n, oracle_prefix.size())),
                           n, max_m, budget);
}

UseBoundReport certify_use_bound(const StreamingTransducer& t, const BoundSpec& bound,
                                 std::uint64_t horizon, const std::vector<SequenceGen>& oracles) {
    UseBoundReport report;
    report.horizon = horizon;
    if (oracles.empty()) {
        report.pass = true;
        report.vacuous = true;
        return report;
    }
    TuringFunctional phi("certify", t);
    for (std::size_t oi = 0; oi < oracles.size(); ++oi) {
        for (std::uint64_t n = 0; n <= horizon; ++n) {
            const auto u = use_of(phi, oracles[oi], n);
            const std::uint64_t limit = bound.eval(n);
            if (!u) {
                report.first_violation = UseBoundViolation{n, oi, std::nullopt, limit, "divergence"};
                return report;
            }
            if (*u > limit) {
                report.first_violation = UseBoundViolation{n, oi, u, limit, "use-exceeded"};
                return report;
            }
        }
    }
    report.pass = true;
    return report;
}

// ---------------------------------------------------------------------------
// Built-in fixtures.
// ---------------------------------------------------------------------------

namespace {

StreamingTransducer make_identity(Alphabet a) {
    StreamingTransducer t;
    t.alphabet = a;
    t.state_names = {"s0"};
    t.table.resize(1);
    for (Symbol s = 0; s < a.k; ++s) t.table[0].push_back({0, {s}});
    return t;
}

StreamingTransducer make_xor_mask(Alphabet a, const std::vector<Symbol>& mask) {
    if (mask.empty()) throw std::invalid_argument("xor-mask needs a nonempty mask");
    for (Symbol m : mask)
        if (m >= a.k) throw std::invalid_argument("mask symbol out of alphabet range");
    StreamingTransducer t;
    t.alphabet = a;
    t.table.resize(mask.size());
    for (std::size_t phase = 0; phase < mask.size(); ++phase) {
        t.state_names.push_back("p" + std::to_string(phase));
        const auto next = static_cast<std::uint32_t>((phase + 1) % mask.size());
        for (Symbol s = 0; s < a.k; ++s) {
            t.table[phase].push_back({next, {(s + mask[phase]) % a.k}});
        }
    }
    return t;
}

StreamingTransducer make_dilute(Alphabet a, std::uint32_t d) {
    StreamingTransducer t;
    t.alphabet = a;
    t.state_names = {"s0"};
    t.table.resize(1);
    for (Symbol s = 0; s < a.k; ++s) {
        std::vector<Symbol> out{s};
        for (std::uint32_t i = 0; i < d; ++i) out.push_back(0);
        t.table[0].push_back({0, std::move(out)});
    }
    return t;
}

// Keeps the first symbol of every (d+1)-block, emitted when the block
// completes: use(n) = (d+1) n, out_len(n) = floor(n / (d+1)).
StreamingTransducer make_condense(Alphabet a, std::uint32_t d) {
    if (d == 0) return make_identity(a);
    StreamingTransducer t;
    t.alphabet = a;
    const std::uint32_t states = 1 + d * a.k;  // 0 = block start; then (pos-in-block, kept symbol)
    t.table.resize(states);
    t.state_names.resize(states);
    t.state_names[0] = "b0";
    auto enc = [&](std::uint32_t j, Symbol kept) { return 1 + (j - 1) * a.k + kept; };
    for (Symbol s = 0; s < a.k; ++s) t.table[0].push_back({enc(1, s), {}});
    for (std::uint32_t j = 1; j <= d; ++j) {
        for (Symbol kept = 0; kept < a.k; ++kept) {
            const std::uint32_t st = enc(j, kept);
            t.state_names[st] = "b" + std::to_string(j) + "k" + std::to_string(kept);
            for (Symbol s = 0; s < a.k; ++s) {
                if (j < d) {
                    t.table[st].push_back({enc(j + 1, kept), {}});
                } else {
                    t.table[st].push_back({0, {kept}});
                }
            }
        }
    }
    return t;
}

}  // namespace

TuringFunctional builtin_functional(const std::string& spec, Alphabet a) {
    if (spec == "identity") return {spec, make_identity(a)};
    if (spec.rfind("xor-mask:", 0) == 0) {
        const Str mask = Str::from_text(spec.substr(9), a);
        if (mask.empty()) throw std::invalid_argument("xor-mask needs mask digits");
        return {spec, make_xor_mask(a, mask.symbols())};
    }
    if (spec.rfind("dilute:", 0) == 0) {
        const auto d = static_cast<std::uint32_t>(std::stoul(spec.substr(7)));
        return {spec, make_dilute(a, d)};
    }
    if (spec.rfind("condense:", 0) == 0) {
        const auto d = static_cast<std::uint32_t>(std::stoul(spec.substr(9)));
        return {spec, make_condense(a, d)};
    }
    throw std::invalid_argument("unknown builtin functional: " + spec);
}

// ---------------------------------------------------------------------------
// Functional DSL.
//
//   transducer <name>        program <name>
//   alphabet <k>             alphabet <k>
//   start <state>            budget <steps>      (optional)
//   <st>, <sym> -> <st'>, <out|->   <label>: / instructions
//   end                      end
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

TuringFunctional parse_transducer_block(const std::string& name,
                                        const std::vector<std::string>& lines) {
    Alphabet a(2);
    std::string start_name;
    struct Rule {
        std::string from, to;
        Symbol sym;
        std::vector<Symbol> out;
    };
    std::vector<Rule> rules;
    std::vector<std::string> order;  // state discovery order
    auto state_index = [&](const std::string& nm) {
        for (std::size_t i = 0; i < order.size(); ++i)
            if (order[i] == nm) return i;
        order.push_back(nm);
        return order.size() - 1;
    };

    for (const auto& raw : lines) {
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("alphabet ", 0) == 0) {
            a = Alphabet(static_cast<std::uint32_t>(std::stoul(trim(line.substr(9)))));
            continue;
        }
        if (line.rfind("start ", 0) == 0) {
            start_name = trim(line.substr(6));
            state_index(start_name);
            continue;
        }
        const std::size_t arrow = line.find("->");
        if (arrow == std::string::npos)
            throw std::invalid_argument("bad transducer rule: " + line);
        const std::string lhs = trim(line.substr(0, arrow));
        const std::string rhs = trim(line.substr(arrow + 2));
        const std::size_t lc = lhs.find(',');
        const std::size_t rc = rhs.find(',');
        if (lc == std::string::npos || rc == std::string::npos)
            throw std::invalid_argument("bad transducer rule: " + line);
        Rule r;
        r.from = trim(lhs.substr(0, lc));
        r.sym = static_cast<Symbol>(std::stoul(trim(lhs.substr(lc + 1))));
        r.to = trim(rhs.substr(0, rc));
        const std::string out = trim(rhs.substr(rc + 1));
        if (out != "-") r.out = Str::from_text(out, a).symbols();
        state_index(r.from);
        state_index(r.to);
        rules.push_back(std::move(r));
    }
    if (start_name.empty()) {
        if (order.empty()) throw std::invalid_argument("transducer block has no states");
        start_name = order.front();
    }

    StreamingTransducer t;
    t.alphabet = a;
    t.state_names = order;
    t.start = static_cast<std::uint32_t>(state_index(start_name));
    t.table.assign(order.size(), std::vector<Transition>(a.k));
    std::vector<std::vector<bool>> seen(order.size(), std::vector<bool>(a.k, false));
    for (const auto& r : rules) {
        const std::size_t from = state_index(r.from);
        if (seen[from][r.sym])
            throw std::invalid_argument("duplicate transducer rule for " + r.from);
        seen[from][r.sym] = true;
        t.table[from][r.sym] = {static_cast<std::uint32_t>(state_index(r.to)), r.out};
    }
    for (std::size_t st = 0; st < order.size(); ++st)
        for (Symbol s = 0; s < a.k; ++s)
            if (!seen[st][s])
                throw std::invalid_argument("transducer table not total at state " + order[st]);
    t.validate();
    return {name, std::move(t)};
}

TuringFunctional parse_program_block(const std::string& name,
                                     const std::vector<std::string>& lines) {
    Alphabet a(2);
    GeneralProgram p;
    struct Pending {
        std::size_t instr;
        std::string label;
    };
    std::vector<Pending> fixups;
    std::map<std::string, std::size_t> labels;

    auto parse_reg = [](const std::string& tok) {
        if (tok.size() < 2 || tok[0] != 'r') throw std::invalid_argument("expected register: " + tok);
        return std::stoi(tok.substr(1));
    };

    for (const auto& raw : lines) {
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("alphabet ", 0) == 0) {
            a = Alphabet(static_cast<std::uint32_t>(std::stoul(trim(line.substr(9)))));
            continue;
        }
        if (line.rfind("budget ", 0) == 0) {
            p.budget_hint = std::stoull(trim(line.substr(7)));
            continue;
        }
        if (line.back() == ':') {
            labels[trim(line.substr(0, line.size() - 1))] = p.code.size();
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream iss(line);
        std::string mnem;
        iss >> mnem;
        std::vector<std::string> toks;
        for (std::string t; iss >> t;) toks.push_back(t);
        Instr in;
        auto need = [&](std::size_t n) {
            if (toks.size() != n) throw std::invalid_argument("bad operand count: " + line);
        };
        if (mnem == "li") { need(2); in.op = Op::li; in.a = parse_reg(toks[0]); in.imm = std::stoll(toks[1]); }
        else if (mnem == "mov") { need(2); in.op = Op::mov; in.a = parse_reg(toks[0]); in.b = parse_reg(toks[1]); }
        else if (mnem == "add") { need(3); in.op = Op::add; in.a = parse_reg(toks[0]); in.b = parse_reg(toks[1]); in.c = parse_reg(toks[2]); }
        else if (mnem == "addi") { need(3); in.op = Op::addi; in.a = parse_reg(toks[0]); in.b = parse_reg(toks[1]); in.imm = std::stoll(toks[2]); }
        else if (mnem == "sub") { need(3); in.op = Op::sub; in.a = parse_reg(toks[0]); in.b = parse_reg(toks[1]); in.c = parse_reg(toks[2]); }
        else if (mnem == "subi") { need(3); in.op = Op::subi; in.a = parse_reg(toks[0]); in.b = parse_reg(toks[1]); in.imm = std::stoll(toks[2]); }
        else if (mnem == "jmp") { need(1); in.op = Op::jmp; fixups.push_back({p.code.size(), toks[0]}); }
        else if (mnem == "jz") { need(2); in.op = Op::jz; in.a = parse_reg(toks[0]); fixups.push_back({p.code.size(), toks[1]}); }
        else if (mnem == "jnz") { need(2); in.op = Op::jnz; in.a = parse_reg(toks[0]); fixups.push_back({p.code.size(), toks[1]}); }
        else if (mnem == "jlt") { need(3); in.op = Op::jlt; in.a = parse_reg(toks[0]); in.b = parse_reg(toks[1]); fixups.push_back({p.code.size(), toks[2]}); }
        else if (mnem == "query") { need(2); in.op = Op::query; in.a = parse_reg(toks[0]); in.b = parse_reg(toks[1]); }
        else if (mnem == "emit") { need(1); in.op = Op::emit; in.a = parse_reg(toks[0]); }
        else if (mnem == "halt") { need(0); in.op = Op::halt; }
        else throw std::invalid_argument("unknown mnemonic: " + mnem);
        p.code.push_back(in);
    }
    for (const auto& fx : fixups) {
        const auto it = labels.find(fx.label);
        if (it == labels.end()) throw std::invalid_argument("undefined label: " + fx.label);
        p.code[fx.instr].imm = static_cast<std::int64_t>(it->second);
    }
    p.alphabet = a;
    return {name, std::move(p)};
}

}  // namespace

TuringFunctional parse_functional_dsl(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream head(line);
        std::string kind, name;
        head >> kind >> name;
        if (kind != "transducer" && kind != "program")
            throw std::invalid_argument("expected 'transducer <name>' or 'program <name>'");
        std::vector<std::string> body;
        while (std::getline(in, line)) {
            if (trim(line) == "end") {
                if (kind == "transducer") return parse_transducer_block(name, body);
                return parse_program_block(name, body);
            }
            body.push_back(line);
        }
        throw std::invalid_argument("unterminated " + kind + " block");
    }
    throw std::invalid_argument("no functional definition found");
}

std::string functional_to_dsl(const TuringFunctional& phi) {
    std::ostringstream out;
    if (phi.is_transducer()) {
        const auto& t = phi.transducer();
        out << "transducer " << (phi.name().empty() ? "anon" : phi.name()) << "\n";
        out << "alphabet " << t.alphabet.k << "\n";
        out << "start " << t.state_names[t.start] << "\n";
        for (std::size_t st = 0; st < t.table.size(); ++st) {
            for (Symbol s = 0; s < t.alphabet.k; ++s) {
                const auto& tr = t.table[st][s];
                out << t.state_names[st] << ", " << s << " -> " << t.state_names[tr.next] << ", ";
                if (tr.out.empty()) {
                    out << "-";
                } else {
                    Str o(t.alphabet, tr.out);
                    out << o.to_text();
                }
                out << "\n";
            }
        }
        out << "end\n";
    } else {
        out << "program " << (phi.name().empty() ? "anon" : phi.name()) << "\n";
        out << "alphabet " << phi.program().alphabet.k << "\n";
        out << "# (serialized programs list resolved jump targets)\n";
        out << "end\n";
    }
    return out.str();
}

TuringFunctional load_functional(const std::string& spec, Alphabet a) {
    const bool builtin = spec == "identity" || spec.rfind("xor-mask:", 0) == 0 ||
                         spec.rfind("dilute:", 0) == 0 || spec.rfind("condense:", 0) == 0;
    if (builtin) return builtin_functional(spec, a);
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("not a builtin functional and not a readable file: " + spec);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_functional_dsl(ss.str());
}

namespace {
struct DerivedImpl final : GenImpl {
    TuringFunctional phi;
    SequenceGen base;
    std::uint64_t budget;

    DerivedImpl(TuringFunctional f, SequenceGen b, std::uint64_t bud)
        : phi(std::move(f)), base(std::move(b)), budget(bud) {}

    Str prefix(std::uint64_t n) const override {
        const RunOutcome r = run(phi, base, n, budget);
        if (!r.halted())
            throw std::runtime_error("derived sequence diverged at n=" + std::to_string(n) +
                                     " (" + RunOutcome::reason_name(r.reason) + ")");
        return r.output;
    }
    Alphabet alphabet() const override { return phi.alphabet(); }
    std::string spec() const override {
        return "gen:apply?functional=" + phi.name() + "&base=" + base.spec();
    }
};
}  // namespace

SequenceGen derived_gen(const TuringFunctional& phi, const SequenceGen& base,
                        std::uint64_t budget) {
    if (!(phi.alphabet() == base.alphabet()))
        throw std::invalid_argument("alphabet mismatch between functional and base sequence");
    return SequenceGen(std::make_shared<DerivedImpl>(phi, base, budget));
}

}  // namespace mdimlab
