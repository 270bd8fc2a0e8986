#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mdimlab/bounds.hpp"
#include "mdimlab/core.hpp"
#include "mdimlab/generators.hpp"

namespace mdimlab {

// ---------------------------------------------------------------------------
// Machine classes.
//
// A StreamingTransducer consumes exactly one oracle symbol per step and emits
// a (possibly empty) output string; its use and yield are exactly computable.
// A GeneralProgram is a small register machine whose only oracle access is the
// explicit `query` instruction; divergence for it is budget-relative.
// ---------------------------------------------------------------------------

struct Transition {
    std::uint32_t next = 0;
    std::vector<Symbol> out;
};

struct StreamingTransducer {
    Alphabet alphabet{};
    std::uint32_t start = 0;
    std::vector<std::string> state_names;            // parallel to table
    std::vector<std::vector<Transition>> table;      // table[state][symbol]

    std::uint32_t state_count() const { return static_cast<std::uint32_t>(table.size()); }
    void validate() const;
};

enum class Op {
    li,     // li rA, imm
    mov,    // mov rA, rB
    add,    // add rA, rB, rC
    addi,   // addi rA, rB, imm
    sub,    // sub rA, rB, rC       (wrapping int64)
    subi,   // subi rA, rB, imm
    jmp,    // jmp label
    jz,     // jz rA, label
    jnz,    // jnz rA, label
    jlt,    // jlt rA, rB, label
    query,  // query rA, rB         rA = oracle[rB]
    emit,   // emit rA              append rA mod k to the output
    halt,
};

struct Instr {
    Op op = Op::halt;
    int a = 0;
    int b = 0;
    int c = 0;
    std::int64_t imm = 0;  // immediate or resolved jump target
};

struct GeneralProgram {
    Alphabet alphabet{};
    std::vector<Instr> code;
    std::uint64_t budget_hint = 0;  // 0 = use the caller/default budget
};

class TuringFunctional {
public:
    TuringFunctional() = default;
    TuringFunctional(std::string name, StreamingTransducer t)
        : name_(std::move(name)), body_(std::move(t)) {}
    TuringFunctional(std::string name, GeneralProgram p)
        : name_(std::move(name)), body_(std::move(p)) {}

    const std::string& name() const { return name_; }
    bool is_transducer() const { return std::holds_alternative<StreamingTransducer>(body_); }
    const StreamingTransducer& transducer() const { return std::get<StreamingTransducer>(body_); }
    const GeneralProgram& program() const { return std::get<GeneralProgram>(body_); }
    Alphabet alphabet() const;

private:
    std::string name_;
    std::variant<StreamingTransducer, GeneralProgram> body_;
};

// ---------------------------------------------------------------------------
// Oracles and run outcomes.
// ---------------------------------------------------------------------------

/// Oracle tape: a finite string (out-of-range queries diverge) or an infinite
/// generator-backed sequence with an internally cached prefix.
class Oracle {
public:
    explicit Oracle(const Str& s) : str_(&s) {}
    explicit Oracle(const SequenceGen& g) : gen_(&g), cache_(g.alphabet()) {}

    bool finite() const { return str_ != nullptr; }
    Alphabet alphabet() const { return finite() ? str_->alphabet() : gen_->alphabet(); }

    /// Symbol at position i, or nullopt when a finite oracle is exhausted.
    std::optional<Symbol> at(std::uint64_t i);

private:
    const Str* str_ = nullptr;
    const SequenceGen* gen_ = nullptr;
    Str cache_;  // doubling prefix cache for generator oracles
};

struct RunOutcome {
    enum class Status { halt, diverge };
    enum class Reason { none, oracle_out_of_range, budget_exhausted, emission_stall };

    Status status = Status::diverge;
    Reason reason = Reason::none;
    Str output;
    std::optional<std::uint64_t> largest_query;  // largest position queried, if any
    std::uint64_t steps = 0;

    bool halted() const { return status == Status::halt; }
    static const char* reason_name(Reason r);
};

std::uint64_t default_budget();  // 10^6 unless MDIMLAB_BUDGET overrides

/// Runs phi on input n. Halts with exactly the first n output symbols as soon
/// as they are available; n = 0 halts immediately with the empty string.
RunOutcome run(const TuringFunctional& phi, Oracle oracle, std::uint64_t n,
               std::uint64_t budget = 0);
RunOutcome run(const TuringFunctional& phi, const Str& oracle, std::uint64_t n,
               std::uint64_t budget = 0);
RunOutcome run(const TuringFunctional& phi, const SequenceGen& oracle, std::uint64_t n,
               std::uint64_t budget = 0);

/// use(n): largest query + 1 on a halting run, 0 when the oracle was never
/// queried, nullopt (undefined) on divergence.
std::optional<std::uint64_t> use_of(const TuringFunctional& phi, const Str& oracle,
                                    std::uint64_t n, std::uint64_t budget = 0);
std::optional<std::uint64_t> use_of(const TuringFunctional& phi, const SequenceGen& oracle,
                                    std::uint64_t n, std::uint64_t budget = 0);

struct YieldResult {
    std::optional<std::uint64_t> value;  // nullopt = no divergent input m <= max_m
    bool budget_relative = false;        // divergence was decided by the step budget
};

/// yield(n): smallest input m on which phi with the length-n oracle prefix
/// diverges. Exact for transducers (out_len(n) + 1); search-bounded and
/// budget-relative for general programs.
YieldResult yield_of(const TuringFunctional& phi, const SequenceGen& oracle, std::uint64_t n,
                     std::uint64_t max_m = 1u << 24, std::uint64_t budget = 0);
YieldResult yield_of(const TuringFunctional& phi, const Str& oracle_prefix, std::uint64_t n,
                     std::uint64_t max_m = 1u << 24, std::uint64_t budget = 0);

/// Total output length of a transducer after consuming the first n oracle
/// symbols (the quantity behind its exact yield).
std::uint64_t transducer_out_len(const StreamingTransducer& t, Oracle oracle, std::uint64_t n);

// ---------------------------------------------------------------------------
// Use-bound certification over an oracle sample set.
// ---------------------------------------------------------------------------

struct UseBoundViolation {
    std::uint64_t n = 0;
    std::size_t oracle_index = 0;
    std::optional<std::uint64_t> use;  // nullopt when the run diverged
    std::uint64_t bound = 0;
    std::string category;  // "use-exceeded" | "divergence"
};

struct UseBoundReport {
    bool pass = false;
    bool vacuous = false;  // empty oracle set
    std::uint64_t horizon = 0;
    std::optional<UseBoundViolation> first_violation;
};

UseBoundReport certify_use_bound(const StreamingTransducer& t, const BoundSpec& bound,
                                 std::uint64_t horizon, const std::vector<SequenceGen>& oracles);

// ---------------------------------------------------------------------------
// Built-ins, the functional DSL, and derived sequences.
// ---------------------------------------------------------------------------

/// identity | xor-mask:<digits> | dilute:<d> | condense:<d>
TuringFunctional builtin_functional(const std::string& spec, Alphabet a);

TuringFunctional parse_functional_dsl(const std::string& text);
std::string functional_to_dsl(const TuringFunctional& phi);

/// Builtin name or a DSL file path.
TuringFunctional load_functional(const std::string& spec, Alphabet a);

/// Z = Phi^X as a sequence source: prefix(n) = run(phi, X, n).output.
SequenceGen derived_gen(const TuringFunctional& phi, const SequenceGen& base,
                        std::uint64_t budget = 0);

}  // namespace mdimlab
