#include <doctest.h>

#include <bitset>
#include <map>
#include <set>

#include "mdimlab/core.hpp"
#include "mdimlab/generators.hpp"

using namespace mdimlab;

namespace {
const Alphabet kBin(2);

Str bin(const std::string& digits) { return Str::from_text(digits, kBin); }

Str random_str(std::uint64_t seed, std::size_t len, Alphabet a = kBin) {
    Str out(a);
    for (std::size_t i = 0; i < len; ++i)
        out.push_back(static_cast<Symbol>(stream_value(seed, i) % a.k));
    return out;
}
}  // namespace

TEST_CASE("alphabet rejects unary") {
    CHECK_THROWS_AS(Alphabet(1), std::invalid_argument);
    CHECK_THROWS_AS(Alphabet(0), std::invalid_argument);
}

TEST_CASE("str validates symbols and supports prefix relation") {
    CHECK_THROWS_AS(Str(kBin, {0, 2}), std::invalid_argument);
    const Str x = bin("0110");
    CHECK(x.prefix(0).empty());
    CHECK(x.prefix(2) == bin("01"));
    CHECK(x.prefix(2).is_prefix_of(x));
    CHECK(x.is_prefix_of(x));  // reflexive
    CHECK_FALSE(bin("10").is_prefix_of(x));
}

TEST_CASE("pairing matches the forced format") {
    CHECK(pair_strings(bin("01"), bin("110")) == bin("11001110"));
    CHECK(pair_strings(Str(kBin), bin("1")) == bin("01"));
    CHECK(pair_strings(Str(kBin), Str(kBin)) == bin("0"));
    const Str p = pair_strings(bin("01"), bin("110"));
    CHECK(p.size() == 2 * 2 + 3 + 1);
}

TEST_CASE("pairing round-trips on random pairs") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const Str x = random_str(1000 + s, stream_value(1, s) % 20);
        const Str y = random_str(2000 + s, stream_value(2, s) % 20);
        const auto [dx, dy] = unpair_string(pair_strings(x, y));
        CHECK(dx == x);
        CHECK(dy == y);
    }
}

TEST_CASE("pairing is injective over all binary strings up to length 4") {
    std::map<std::vector<Symbol>, std::pair<std::vector<Symbol>, std::vector<Symbol>>> seen;
    auto all_strings = [](std::size_t max_len) {
        std::vector<Str> out;
        out.emplace_back(kBin);
        for (std::size_t len = 1; len <= max_len; ++len) {
            for (std::uint64_t bits = 0; bits < (1u << len); ++bits) {
                Str s(kBin);
                for (std::size_t i = 0; i < len; ++i)
                    s.push_back(static_cast<Symbol>((bits >> (len - 1 - i)) & 1));
                out.push_back(std::move(s));
            }
        }
        return out;
    };
    const auto strings = all_strings(4);
    for (const Str& x : strings) {
        for (const Str& y : strings) {
            const Str p = pair_strings(x, y);
            const auto it = seen.find(p.symbols());
            if (it != seen.end()) {
                CHECK(it->second.first == x.symbols());
                CHECK(it->second.second == y.symbols());
            }
            seen.emplace(p.symbols(), std::make_pair(x.symbols(), y.symbols()));
        }
    }
    CHECK(seen.size() == strings.size() * strings.size());
}

TEST_CASE("computable generators produce the classic controls") {
    CHECK(zeros_gen(kBin).prefix(5) == bin("00000"));
    CHECK(zeros_gen(kBin).prefix(0).empty());
    CHECK(alternating_gen(kBin).prefix(5) == bin("01010"));
    CHECK(champernowne_gen(kBin).prefix(10) == bin("0110111001"));
}

TEST_CASE("champernowne agrees with an independent numeral construction") {
    // oracle: concatenate std::bitset renderings with leading zeros trimmed
    std::string expected;
    for (std::uint64_t m = 0; expected.size() < 200; ++m) {
        std::string b = std::bitset<64>(m).to_string();
        const auto pos = b.find('1');
        expected += (pos == std::string::npos) ? "0" : b.substr(pos);
    }
    expected.resize(200);
    CHECK(champernowne_gen(kBin).prefix(200) == bin(expected));
}

TEST_CASE("prefix monotonicity holds across generator kinds") {
    const std::vector<SequenceGen> gens = {
        zeros_gen(kBin),
        alternating_gen(kBin),
        champernowne_gen(kBin),
        iid_uniform_gen(kBin, 42),
        coupled_gen(JointDistribution::bsc(0.1), 7).first,
        champernowne_gen(Alphabet(3)),
    };
    for (const auto& g : gens) {
        for (std::uint64_t n : {0u, 1u, 5u, 33u, 100u}) {
            CHECK(g.prefix(n).is_prefix_of(g.prefix(n + 1)));
        }
    }
}

TEST_CASE("generators are seed-deterministic") {
    const auto [x1, y1] = coupled_gen(JointDistribution::bsc(0.25), 99);
    const auto [x2, y2] = coupled_gen(JointDistribution::bsc(0.25), 99);
    CHECK(x1.prefix(1 << 12) == x2.prefix(1 << 12));
    CHECK(y1.prefix(1 << 12) == y2.prefix(1 << 12));
    const auto [x3, y3] = coupled_gen(JointDistribution::bsc(0.25), 100);
    CHECK_FALSE(x1.prefix(256) == x3.prefix(256));
}

TEST_CASE("diagonal coupling yields identical sides") {
    const auto [x, y] = coupled_gen(JointDistribution::diagonal(kBin), 5);
    CHECK(x.prefix(8) == y.prefix(8));
    CHECK(x.prefix(1024) == y.prefix(1024));
}

TEST_CASE("product coupling matches its law empirically") {
    const std::size_t n = 1 << 16;
    const auto [gx, gy] = coupled_gen(JointDistribution::product_uniform(kBin), 11);
    const Str x = gx.prefix(n), y = gy.prefix(n);
    double counts[2][2] = {};
    for (std::size_t i = 0; i < n; ++i) counts[x[i]][y[i]] += 1.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) CHECK(std::abs(counts[a][b] / n - 0.25) < 0.02);
}

TEST_CASE("binary symmetric coupling has the right flip rate") {
    const std::size_t n = 1 << 16;
    const auto [gx, gy] = coupled_gen(JointDistribution::bsc(0.1), 23);
    const Str x = gx.prefix(n), y = gy.prefix(n);
    std::size_t hamming = 0;
    for (std::size_t i = 0; i < n; ++i) hamming += x[i] != y[i];
    const double rate = static_cast<double>(hamming) / n;
    CHECK(rate >= 0.08);
    CHECK(rate <= 0.12);
}

TEST_CASE("joint distribution validation") {
    CHECK_THROWS_AS(JointDistribution(kBin, {0.5, 0.5, 0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(JointDistribution(kBin, {-0.5, 0.5, 0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(JointDistribution(kBin, {1.0}), std::invalid_argument);
}

TEST_CASE("gen spec strings round through the parser") {
    CHECK(parse_gen_spec("gen:zeros").prefix(4) == bin("0000"));
    CHECK(parse_gen_spec("gen:alternating?k=2").prefix(4) == bin("0101"));
    const SequenceGen g = parse_gen_spec("gen:coupled?dist=bsc:0.1&seed=7&side=y");
    CHECK(g.prefix(64) == coupled_gen(JointDistribution::bsc(0.1), 7).second.prefix(64));
    CHECK(parse_gen_spec(g.spec()).prefix(64) == g.prefix(64));  // specs are canonical
    CHECK_THROWS_AS(parse_gen_spec("gen:nope"), std::invalid_argument);
}

TEST_CASE("sequence files round-trip") {
    const Str data = random_str(31, 300);
    const std::string path = "test_core_seq.txt";
    write_sequence_file(path, data);
    CHECK(read_sequence_file(path) == data);

    const Str wide = random_str(32, 50, Alphabet(16));
    write_sequence_file(path, wide);
    CHECK(read_sequence_file(path) == wide);
    std::remove(path.c_str());
}

TEST_CASE("literal generators refuse to extend past their data") {
    const SequenceGen g = literal_gen(bin("0101"));
    CHECK(g.prefix(4) == bin("0101"));
    CHECK_THROWS_AS(g.prefix(5), std::out_of_range);
}
