#pragma once

#include <memory>
#include <string>
#include <utility>

#include "mdimlab/core.hpp"

namespace mdimlab {

/// Implementation of a deterministic sequence source. prefix(n) must be a
/// pure function of construction parameters, monotone in n.
struct GenImpl {
    virtual ~GenImpl() = default;
    virtual Str prefix(std::uint64_t n) const = 0;
    virtual Alphabet alphabet() const = 0;
    virtual std::string spec() const = 0;
};

/// Value handle over an immutable generator. Copy is cheap; all handles
/// sharing an impl observe identical prefixes.
class SequenceGen {
public:
    SequenceGen() = default;
    explicit SequenceGen(std::shared_ptr<const GenImpl> impl) : impl_(std::move(impl)) {}

    Str prefix(std::uint64_t n) const { return impl_->prefix(n); }
    Alphabet alphabet() const { return impl_->alphabet(); }
    std::string spec() const { return impl_->spec(); }
    bool valid() const { return impl_ != nullptr; }

private:
    std::shared_ptr<const GenImpl> impl_;
};

SequenceGen zeros_gen(Alphabet a);
SequenceGen alternating_gen(Alphabet a);
SequenceGen champernowne_gen(Alphabet a);

/// Finite, file- or literal-backed source; prefix(n) beyond the stored
/// length is an error.
SequenceGen literal_gen(Str data);

/// Position-wise i.i.d. pairs (X[i], Y[i]) ~ dist from a seeded splitmix64
/// stream. Returns the two coupled sides.
std::pair<SequenceGen, SequenceGen> coupled_gen(const JointDistribution& dist, std::uint64_t seed);

/// Single i.i.d. uniform source (the marginal of product coupling).
SequenceGen iid_uniform_gen(Alphabet a, std::uint64_t seed);

/// Parses "gen:kind?key=value&..." spec strings, e.g.
///   gen:zeros?k=2          gen:alternating          gen:champernowne?k=2
///   gen:iid?seed=7&k=2     gen:coupled?dist=bsc:0.1&seed=7&side=x
/// A bare path or "file:path" loads a sequence file.
SequenceGen parse_gen_spec(const std::string& spec);

Str read_sequence_file(const std::string& path);
void write_sequence_file(const std::string& path, const Str& s);

}  // namespace mdimlab
