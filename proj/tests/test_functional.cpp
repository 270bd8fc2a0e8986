#include <doctest.h>

#include "mdimlab/functional.hpp"

using namespace mdimlab;

namespace {
const Alphabet kBin(2);
Str bin(const std::string& digits) { return Str::from_text(digits, kBin); }

TuringFunctional identity() { return builtin_functional("identity", kBin); }
TuringFunctional dilute1() { return builtin_functional("dilute:1", kBin); }
TuringFunctional condense1() { return builtin_functional("condense:1", kBin); }
TuringFunctional xor01() { return builtin_functional("xor-mask:01", kBin); }

// emits register r1 (always 0) forever; never queries
TuringFunctional const_zero_program() {
    return parse_functional_dsl(
        "program const0\n"
        "alphabet 2\n"
        "  li r1, 0\n"
        "loop:\n"
        "  emit r1\n"
        "  jmp loop\n"
        "end\n");
}

// copies the oracle: query position i, emit, increment
TuringFunctional copy_program() {
    return parse_functional_dsl(
        "program copy\n"
        "alphabet 2\n"
        "  li r1, 0\n"
        "loop:\n"
        "  query r2, r1\n"
        "  emit r2\n"
        "  addi r1, r1, 1\n"
        "  jmp loop\n"
        "end\n");
}

// spins without emitting: only the budget stops it
TuringFunctional spin_program() {
    return parse_functional_dsl(
        "program spin\n"
        "alphabet 2\n"
        "loop:\n"
        "  jmp loop\n"
        "end\n");
}
}  // namespace

TEST_CASE("identity transducer copies its oracle") {
    const auto r = run(identity(), bin("0110"), 3);
    REQUIRE(r.halted());
    CHECK(r.output == bin("011"));
    CHECK(r.largest_query == 2);
}

TEST_CASE("dilution emits a0 per read symbol") {
    const auto r = run(dilute1(), bin("11"), 4);
    REQUIRE(r.halted());
    CHECK(r.output == bin("1010"));
    CHECK(r.largest_query == 1);
}

TEST_CASE("string oracle exhaustion diverges as out-of-range") {
    const auto r = run(identity(), bin("01"), 3);
    CHECK_FALSE(r.halted());
    CHECK(r.reason == RunOutcome::Reason::oracle_out_of_range);
    CHECK(r.output.empty());
}

TEST_CASE("n=0 halts immediately with the empty output and no query") {
    for (const auto& phi : {identity(), dilute1(), condense1(), const_zero_program()}) {
        const auto r = run(phi, bin("0101"), 0);
        REQUIRE(r.halted());
        CHECK(r.output.empty());
        CHECK_FALSE(r.largest_query.has_value());
        CHECK(r.steps == 0);
    }
}

TEST_CASE("use of the copy machine is n on a sequence oracle") {
    const SequenceGen s = iid_uniform_gen(kBin, 3);
    CHECK(use_of(identity(), s, 5) == 5);
    CHECK(use_of(identity(), s, 0) == 0);
}

TEST_CASE("use is zero for a never-querying program") {
    CHECK(use_of(const_zero_program(), bin("111"), 3) == 0);
    const auto r = run(const_zero_program(), bin("111"), 3);
    REQUIRE(r.halted());
    CHECK(r.output == bin("000"));
}

TEST_CASE("use is undefined on divergence") {
    CHECK_FALSE(use_of(identity(), bin("01"), 3).has_value());
}

TEST_CASE("yield values on the fixtures") {
    const SequenceGen s = iid_uniform_gen(kBin, 9);
    CHECK(yield_of(identity(), s, 4).value == 5);   // out_len(4) = 4
    CHECK(yield_of(dilute1(), s, 2).value == 5);    // out_len(2) = 4
    CHECK(yield_of(condense1(), s, 3).value == 2);  // out_len(3) = 1 (block completes at even counts)
    CHECK(yield_of(condense1(), s, 4).value == 3);
}

TEST_CASE("program yield is search-based and flags budget relativity") {
    const SequenceGen s = iid_uniform_gen(kBin, 10);
    const auto y = yield_of(copy_program(), s, 4, 64);
    CHECK(y.value == 5);
    CHECK_FALSE(y.budget_relative);  // divergence came from an out-of-range query

    const auto spun = yield_of(spin_program(), s, 4, 8, 500);
    CHECK(spun.value == 1);  // m=0 halts trivially; every m >= 1 exhausts the budget
    CHECK(spun.budget_relative);
}

TEST_CASE("yield returns the infinity sentinel when nothing below max_m diverges") {
    const SequenceGen s = iid_uniform_gen(kBin, 11);
    const auto y = yield_of(const_zero_program(), s, 4, 32);
    CHECK_FALSE(y.value.has_value());  // oracle-ignoring functional halts on every input
}

TEST_CASE("output prefixes cohere across n for transducer fixtures") {
    const SequenceGen s = iid_uniform_gen(kBin, 12);
    for (const auto& phi : {identity(), dilute1(), condense1(), xor01()}) {
        for (std::uint64_t n = 0; n < 64; ++n) {
            const auto a = run(phi, s, n);
            const auto b = run(phi, s, n + 1);
            REQUIRE(a.halted());
            REQUIRE(b.halted());
            CHECK(a.output.is_prefix_of(b.output));
        }
    }
}

TEST_CASE("use is nondecreasing in n for transducers") {
    const SequenceGen s = iid_uniform_gen(kBin, 13);
    for (const auto& phi : {identity(), dilute1(), condense1(), xor01()}) {
        std::uint64_t prev = 0;
        for (std::uint64_t n = 0; n <= 64; ++n) {
            const auto u = use_of(phi, s, n);
            REQUIRE(u.has_value());
            CHECK(*u >= prev);
            prev = *u;
        }
    }
}

TEST_CASE("yield/use duality: runs on a prefix halt exactly below yield") {
    const SequenceGen s = iid_uniform_gen(kBin, 14);
    for (const auto& phi : {identity(), dilute1(), condense1(), xor01()}) {
        for (std::uint64_t n = 0; n <= 32; ++n) {
            const Str pre = s.prefix(n);
            const auto y = yield_of(phi, pre, n);
            REQUIRE(y.value.has_value());
            for (std::uint64_t m = 0; m <= 32; ++m) {
                const bool halts = run(phi, pre, m).halted();
                CHECK(halts == (m < *y.value));
            }
        }
    }
}

TEST_CASE("budget monotonicity: a halting program halts identically with more budget") {
    const Str oracle = bin("0110100110");
    for (std::uint64_t n : {1u, 3u, 7u}) {
        const auto base = run(copy_program(), oracle, n, 200);
        REQUIRE(base.halted());
        for (std::uint64_t extra : {1u, 57u, 1000u}) {
            const auto more = run(copy_program(), oracle, n, 200 + extra);
            REQUIRE(more.halted());
            CHECK(more.output == base.output);
            CHECK(more.largest_query == base.largest_query);
            CHECK(more.steps == base.steps);
        }
    }
}

TEST_CASE("budget exhaustion reports the dedicated divergence reason") {
    const auto r = run(spin_program(), bin("0101"), 2, 100);
    CHECK_FALSE(r.halted());
    CHECK(r.reason == RunOutcome::Reason::budget_exhausted);
    CHECK(r.steps == 100);
}

TEST_CASE("halting without enough output is an emission stall") {
    const auto phi = parse_functional_dsl(
        "program shortstop\n"
        "alphabet 2\n"
        "  li r1, 1\n"
        "  emit r1\n"
        "  halt\n"
        "end\n");
    const auto r = run(phi, bin("0101"), 3);
    CHECK_FALSE(r.halted());
    CHECK(r.reason == RunOutcome::Reason::emission_stall);
}

TEST_CASE("oracle locality: agreement on queried positions fixes the outcome") {
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
        const std::uint64_t n = 1 + stream_value(50, trial) % 12;
        Str a(kBin);
        for (std::uint64_t i = 0; i < 32; ++i)
            a.push_back(static_cast<Symbol>(stream_value(51 + trial, i) % 2));
        for (const auto& phi : {identity(), dilute1(), condense1()}) {
            const auto ra = run(phi, a, n);
            REQUIRE(ra.halted());
            const std::uint64_t used = ra.largest_query ? *ra.largest_query + 1 : 0;
            // flip everything beyond the used prefix
            Str b = a.prefix(used);
            for (std::uint64_t i = used; i < a.size(); ++i) b.push_back(1 - a[i]);
            const auto rb = run(phi, b, n);
            REQUIRE(rb.halted());
            CHECK(rb.output == ra.output);
            CHECK(rb.largest_query == ra.largest_query);
        }
    }
}

TEST_CASE("certify_use_bound pins the fixture bounds") {
    const std::vector<SequenceGen> oracles = {iid_uniform_gen(kBin, 1), zeros_gen(kBin),
                                              alternating_gen(kBin)};
    const auto id_report =
        certify_use_bound(identity().transducer(), BoundSpec::cl(0), 256, oracles);
    CHECK(id_report.pass);

    const auto cond_cl =
        certify_use_bound(condense1().transducer(), BoundSpec::cl(0), 256, oracles);
    CHECK_FALSE(cond_cl.pass);
    REQUIRE(cond_cl.first_violation.has_value());
    CHECK(cond_cl.first_violation->n == 1);
    CHECK(cond_cl.first_violation->use == 2);
    CHECK(cond_cl.first_violation->category == "use-exceeded");

    const auto cond_h2 =
        certify_use_bound(condense1().transducer(), BoundSpec::h_alpha(2, 0), 256, oracles);
    CHECK(cond_h2.pass);

    const auto vacuous = certify_use_bound(identity().transducer(), BoundSpec::cl(0), 256, {});
    CHECK(vacuous.pass);
    CHECK(vacuous.vacuous);
}

TEST_CASE("alphabet mismatch between functional and oracle is rejected") {
    const SequenceGen ternary = zeros_gen(Alphabet(3));
    CHECK_THROWS_AS(run(identity(), ternary, 4), std::invalid_argument);
}

TEST_CASE("transducer DSL round-trips through parse and serialize") {
    const std::string text =
        "transducer toggle\n"
        "alphabet 2\n"
        "start a\n"
        "a, 0 -> b, 1\n"
        "a, 1 -> b, 0\n"
        "b, 0 -> a, -\n"
        "b, 1 -> a, 11\n"
        "end\n";
    const auto phi = parse_functional_dsl(text);
    REQUIRE(phi.is_transducer());
    CHECK(phi.name() == "toggle");
    const auto r = run(phi, bin("0101"), 4);
    REQUIRE(r.halted());
    CHECK(r.output == bin("1011"));  // 0->1, 1 drops, 0->1, 1->11

    const auto reparsed = parse_functional_dsl(functional_to_dsl(phi));
    CHECK(run(reparsed, bin("0101"), 4).output == r.output);
}

TEST_CASE("transducer DSL rejects partial tables") {
    CHECK_THROWS_AS(parse_functional_dsl("transducer bad\n"
                                         "alphabet 2\n"
                                         "s, 0 -> s, 0\n"
                                         "end\n"),
                    std::invalid_argument);
}

TEST_CASE("derived generator realizes phi^X with monotone prefixes") {
    const SequenceGen x = iid_uniform_gen(kBin, 77);
    const SequenceGen z = derived_gen(dilute1(), x);
    const Str z8 = z.prefix(8);
    const Str x4 = x.prefix(4);
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(z8[2 * j] == x4[j]);
        CHECK(z8[2 * j + 1] == 0);
    }
    CHECK(z.prefix(7).is_prefix_of(z8));
}

TEST_CASE("builtin xor-mask applies the mask cyclically and in general alphabets") {
    const auto r = run(xor01(), bin("0000"), 4);
    REQUIRE(r.halted());
    CHECK(r.output == bin("0101"));

    const Alphabet a3(3);
    const auto add12 = builtin_functional("xor-mask:12", a3);
    const auto r3 = run(add12, Str::from_text("0000", a3), 4);
    REQUIRE(r3.halted());
    CHECK(r3.output == Str::from_text("1212", a3));
}
