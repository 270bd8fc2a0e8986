#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mdimlab {

using Symbol = std::uint32_t;

/// Symbol set {0, .., k-1}, k >= 2.
struct Alphabet {
    std::uint32_t k = 2;

    Alphabet() = default;
    explicit Alphabet(std::uint32_t size) : k(size) {
        if (k < 2) throw std::invalid_argument("alphabet size must be >= 2");
    }
    bool operator==(const Alphabet&) const = default;
};

/// Finite string over an Alphabet. Immutable in spirit; mutation is limited
/// to construction-time appends.
class Str {
public:
    Str() = default;
    explicit Str(Alphabet a) : alphabet_(a) {}
    Str(Alphabet a, std::vector<Symbol> syms);

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t size() const { return syms_.size(); }
    bool empty() const { return syms_.empty(); }
    Symbol operator[](std::size_t i) const { return syms_[i]; }
    const std::vector<Symbol>& symbols() const { return syms_; }

    void push_back(Symbol s);
    void append(const Str& other);

    Str prefix(std::size_t n) const;
    bool is_prefix_of(const Str& other) const;

    bool operator==(const Str&) const = default;

    /// One ASCII digit per symbol (k <= 10), comma-separated integers otherwise.
    std::string to_text() const;
    static Str from_text(std::string_view text, Alphabet a);

private:
    Alphabet alphabet_{};
    std::vector<Symbol> syms_;
};

/// Self-delimiting pairing: |x| ones, a zero, then x, then y.
Str pair_strings(const Str& x, const Str& y);
std::pair<Str, Str> unpair_string(const Str& p);

// ---------------------------------------------------------------------------
// Deterministic randomness. Counter-based splitmix64 (Steele/Lea/Flood
// finalizer) so that prefix(n) is a pure function of (seed, n) and all
// prefixes are byte-identical across runs and platforms.
// ---------------------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t stream_value(std::uint64_t seed, std::uint64_t index);
/// Uniform double in [0,1) from the top 53 bits.
double unit_double(std::uint64_t bits);

/// Position-wise joint law of a coupled symbol pair; k x k row-major matrix.
struct JointDistribution {
    Alphabet alphabet{};
    std::vector<double> p;  // p[a*k + b] = Pr[X=a, Y=b]

    JointDistribution(Alphabet a, std::vector<double> probs);

    static JointDistribution diagonal(Alphabet a);
    static JointDistribution product_uniform(Alphabet a);
    /// Binary symmetric coupling: X ~ uniform, Y = X flipped with prob q.
    static JointDistribution bsc(double q);

    std::pair<Symbol, Symbol> sample(std::uint64_t r) const;
};

}  // namespace mdimlab
