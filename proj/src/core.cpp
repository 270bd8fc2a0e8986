#include "mdimlab/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mdimlab {

Str::Str(Alphabet a, std::vector<Symbol> syms) : alphabet_(a), syms_(std::move(syms)) {
    for (Symbol s : syms_) {
        if (s >= alphabet_.k) throw std::invalid_argument("symbol out of alphabet range");
    }
}

void Str::push_back(Symbol s) {
    if (s >= alphabet_.k) throw std::invalid_argument("symbol out of alphabet range");
    syms_.push_back(s);
}

void Str::append(const Str& other) {
    if (!(other.alphabet_ == alphabet_)) throw std::invalid_argument("alphabet mismatch");
    syms_.insert(syms_.end(), other.syms_.begin(), other.syms_.end());
}

Str Str::prefix(std::size_t n) const {
    if (n > syms_.size()) throw std::out_of_range("prefix longer than string");
    Str out(alphabet_);
    out.syms_.assign(syms_.begin(), syms_.begin() + static_cast<std::ptrdiff_t>(n));
    return out;
}

bool Str::is_prefix_of(const Str& other) const {
    if (!(alphabet_ == other.alphabet_) || syms_.size() > other.syms_.size()) return false;
    return std::equal(syms_.begin(), syms_.end(), other.syms_.begin());
}

std::string Str::to_text() const {
    std::string out;
    if (alphabet_.k <= 10) {
        out.reserve(syms_.size());
        for (Symbol s : syms_) out.push_back(static_cast<char>('0' + s));
    } else {
        for (std::size_t i = 0; i < syms_.size(); ++i) {
            if (i) out.push_back(',');
            out += std::to_string(syms_[i]);
        }
    }
    return out;
}

Str Str::from_text(std::string_view text, Alphabet a) {
    Str out(a);
    if (a.k <= 10) {
        for (char c : text) {
            if (c == '\n' || c == '\r' || c == ' ' || c == '\t') continue;
            if (c < '0' || c > '9') throw std::invalid_argument("invalid symbol character");
            out.push_back(static_cast<Symbol>(c - '0'));
        }
    } else {
        std::string token;
        auto flush = [&] {
            if (token.empty()) return;
            out.push_back(static_cast<Symbol>(std::stoul(token)));
            token.clear();
        };
        for (char c : text) {
            if (c == ',' || c == '\n' || c == '\r' || c == ' ' || c == '\t') {
                flush();
            } else if (c >= '0' && c <= '9') {
                token.push_back(c);
            } else {
                throw std::invalid_argument("invalid symbol character");
            }
        }
        flush();
    }
    return out;
}

Str pair_strings(const Str& x, const Str& y) {
    if (!(x.alphabet() == y.alphabet())) throw std::invalid_argument("alphabet mismatch in pair");
    Str out(x.alphabet());
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(1);
    out.push_back(0);
    out.append(x);
    out.append(y);
    return out;
}

std::pair<Str, Str> unpair_string(const Str& p) {
    std::size_t header = 0;
    while (header < p.size() && p[header] == 1) ++header;
    if (header >= p.size() || p[header] != 0) throw std::invalid_argument("malformed pair header");
    const std::size_t xlen = header;
    const std::size_t body = header + 1;
    if (p.size() < body + xlen) throw std::invalid_argument("pair body shorter than header claims");
    Str x(p.alphabet());
    Str y(p.alphabet());
    for (std::size_t i = 0; i < xlen; ++i) x.push_back(p[body + i]);
    for (std::size_t i = body + xlen; i < p.size(); ++i) y.push_back(p[i]);
    return {std::move(x), std::move(y)};
}

std::uint64_t splitmix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

std::uint64_t stream_value(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

double unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

JointDistribution::JointDistribution(Alphabet a, std::vector<double> probs)
    : alphabet(a), p(std::move(probs)) {
    const std::size_t kk = static_cast<std::size_t>(alphabet.k) * alphabet.k;
    if (p.size() != kk) throw std::invalid_argument("joint distribution must be k*k entries");
    double sum = 0.0;
    for (double v : p) {
        if (v < 0.0) throw std::invalid_argument("joint distribution entries must be >= 0");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("joint distribution must sum to 1");
}

JointDistribution JointDistribution::diagonal(Alphabet a) {
    std::vector<double> probs(static_cast<std::size_t>(a.k) * a.k, 0.0);
    for (std::uint32_t i = 0; i < a.k; ++i) probs[static_cast<std::size_t>(i) * a.k + i] = 1.0 / a.k;
    return {a, std::move(probs)};
}

JointDistribution JointDistribution::product_uniform(Alphabet a) {
    std::vector<double> probs(static_cast<std::size_t>(a.k) * a.k,
                              1.0 / (static_cast<double>(a.k) * a.k));
    return {a, std::move(probs)};
}

JointDistribution JointDistribution::bsc(double q) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("flip probability must be in [0,1]");
    Alphabet a(2);
    std::vector<double> probs = {(1 - q) / 2, q / 2, q / 2, (1 - q) / 2};
    return {a, std::move(probs)};
}

std::pair<Symbol, Symbol> JointDistribution::sample(std::uint64_t r) const {
    const double u = unit_double(r);
    double acc = 0.0;
    const std::uint32_t k = alphabet.k;
    for (std::uint32_t a = 0; a < k; ++a) {
        for (std::uint32_t b = 0; b < k; ++b) {
            acc += p[static_cast<std::size_t>(a) * k + b];
            if (u < acc) return {a, b};
        }
    }
    return {k - 1, k - 1};  // u landed in the rounding tail
}

}  // namespace mdimlab
