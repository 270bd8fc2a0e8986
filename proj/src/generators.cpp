#include "mdimlab/generators.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace mdimlab {

namespace {

struct ZerosImpl final : GenImpl {
    Alphabet a;
    explicit ZerosImpl(Alphabet alpha) : a(alpha) {}
    Str prefix(std::uint64_t n) const override {
        Str out(a);
        for (std::uint64_t i = 0; i < n; ++i) out.push_back(0);
        return out;
    }
    Alphabet alphabet() const override { return a; }
    std::string spec() const override { return "gen:zeros?k=" + std::to_string(a.k); }
};

struct AlternatingImpl final : GenImpl {
    Alphabet a;
    explicit AlternatingImpl(Alphabet alpha) : a(alpha) {}
    Str prefix(std::uint64_t n) const override {
        Str out(a);
        for (std::uint64_t i = 0; i < n; ++i) out.push_back(static_cast<Symbol>(i % 2));
        return out;
    }
    Alphabet alphabet() const override { return a; }
    std::string spec() const override { return "gen:alternating?k=" + std::to_string(a.k); }
};

struct ChampernowneImpl final : GenImpl {
    Alphabet a;
    explicit ChampernowneImpl(Alphabet alpha) : a(alpha) {}
    Str prefix(std::uint64_t n) const override {
        Str out(a);
        std::uint64_t m = 0;
        std::vector<Symbol> digits;
        while (out.size() < n) {
            digits.clear();
            std::uint64_t v = m;
            if (v == 0) digits.push_back(0);
            while (v > 0) {
                digits.push_back(static_cast<Symbol>(v % a.k));
                v /= a.k;
            }
            for (auto it = digits.rbegin(); it != digits.rend() && out.size() < n; ++it)
                out.push_back(*it);
            ++m;
        }
        return out;
    }
    Alphabet alphabet() const override { return a; }
    std::string spec() const override { return "gen:champernowne?k=" + std::to_string(a.k); }
};

struct LiteralImpl final : GenImpl {
    Str data;
    explicit LiteralImpl(Str d) : data(std::move(d)) {}
    Str prefix(std::uint64_t n) const override {
        if (n > data.size())
            throw std::out_of_range("literal sequence holds only " + std::to_string(data.size()) +
                                    " symbols, prefix of " + std::to_string(n) + " requested");
        return data.prefix(n);
    }
    Alphabet alphabet() const override { return data.alphabet(); }
    std::string spec() const override { return "gen:literal?len=" + std::to_string(data.size()); }
};

struct CoupledImpl final : GenImpl {
    JointDistribution dist;
    std::uint64_t seed;
    int side;  // 0 = X, 1 = Y
    std::string dist_label;

    CoupledImpl(JointDistribution d, std::uint64_t s, int which, std::string label)
        : dist(std::move(d)), seed(s), side(which), dist_label(std::move(label)) {}

    Str prefix(std::uint64_t n) const override {
        Str out(dist.alphabet);
        for (std::uint64_t i = 0; i < n; ++i) {
            auto [x, y] = dist.sample(stream_value(seed, i));
            out.push_back(side == 0 ? x : y);
        }
        return out;
    }
    Alphabet alphabet() const override { return dist.alphabet; }
    std::string spec() const override {
        return "gen:coupled?dist=" + dist_label + "&seed=" + std::to_string(seed) +
               "&side=" + (side == 0 ? "x" : "y");
    }
};

struct IidUniformImpl final : GenImpl {
    Alphabet a;
    std::uint64_t seed;
    IidUniformImpl(Alphabet alpha, std::uint64_t s) : a(alpha), seed(s) {}
    Str prefix(std::uint64_t n) const override {
        Str out(a);
        for (std::uint64_t i = 0; i < n; ++i)
            out.push_back(static_cast<Symbol>(stream_value(seed, i) % a.k));
        return out;
    }
    Alphabet alphabet() const override { return a; }
    std::string spec() const override {
        return "gen:iid?k=" + std::to_string(a.k) + "&seed=" + std::to_string(seed);
    }
};

std::map<std::string, std::string> parse_query(const std::string& q) {
    std::map<std::string, std::string> out;
    std::size_t pos = 0;
    while (pos < q.size()) {
        std::size_t amp = q.find('&', pos);
        if (amp == std::string::npos) amp = q.size();
        std::string kv = q.substr(pos, amp - pos);
        std::size_t eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad gen spec query: " + kv);
        out[kv.substr(0, eq)] = kv.substr(eq + 1);
        pos = amp + 1;
    }
    return out;
}

}  // namespace

SequenceGen zeros_gen(Alphabet a) { return SequenceGen(std::make_shared<ZerosImpl>(a)); }
SequenceGen alternating_gen(Alphabet a) { return SequenceGen(std::make_shared<AlternatingImpl>(a)); }
SequenceGen champernowne_gen(Alphabet a) {
    return SequenceGen(std::make_shared<ChampernowneImpl>(a));
}
SequenceGen literal_gen(Str data) {
    return SequenceGen(std::make_shared<LiteralImpl>(std::move(data)));
}

std::pair<SequenceGen, SequenceGen> coupled_gen(const JointDistribution& dist, std::uint64_t seed) {
    std::ostringstream label;
    label << "matrix" << dist.alphabet.k;
    auto x = std::make_shared<CoupledImpl>(dist, seed, 0, label.str());
    auto y = std::make_shared<CoupledImpl>(dist, seed, 1, label.str());
    return {SequenceGen(x), SequenceGen(y)};
}

SequenceGen iid_uniform_gen(Alphabet a, std::uint64_t seed) {
    return SequenceGen(std::make_shared<IidUniformImpl>(a, seed));
}

JointDistribution parse_dist_spec(const std::string& s, Alphabet a);

JointDistribution parse_dist_spec(const std::string& s, Alphabet a) {
    if (s == "diagonal" || s == "diag") return JointDistribution::diagonal(a);
    if (s == "product") return JointDistribution::product_uniform(a);
    if (s.rfind("bsc:", 0) == 0) return JointDistribution::bsc(std::stod(s.substr(4)));
    throw std::invalid_argument("unknown dist spec: " + s);
}

SequenceGen parse_gen_spec(const std::string& spec) {
    if (spec.rfind("gen:", 0) != 0) {
        std::string path = spec;
        if (spec.rfind("file:", 0) == 0) path = spec.substr(5);
        return literal_gen(read_sequence_file(path));
    }
    std::string rest = spec.substr(4);
    std::string kind = rest;
    std::map<std::string, std::string> args;
    if (auto qpos = rest.find('?'); qpos != std::string::npos) {
        kind = rest.substr(0, qpos);
        args = parse_query(rest.substr(qpos + 1));
    }
    Alphabet a(args.count("k") ? static_cast<std::uint32_t>(std::stoul(args["k"])) : 2);
    if (kind == "zeros") return zeros_gen(a);
    if (kind == "alternating") return alternating_gen(a);
    if (kind == "champernowne") return champernowne_gen(a);
    if (kind == "iid") {
        std::uint64_t seed = args.count("seed") ? std::stoull(args["seed"]) : 0;
        return iid_uniform_gen(a, seed);
    }
    if (kind == "coupled") {
        if (!args.count("dist")) throw std::invalid_argument("gen:coupled requires dist=");
        auto dist = parse_dist_spec(args["dist"], a);
        std::uint64_t seed = args.count("seed") ? std::stoull(args["seed"]) : 0;
        std::string side = args.count("side") ? args["side"] : "x";
        auto [x, y] = coupled_gen(dist, seed);
        if (side == "x") return x;
        if (side == "y") return y;
        throw std::invalid_argument("gen:coupled side must be x or y");
    }
    throw std::invalid_argument("unknown generator kind: " + kind);
}

Str read_sequence_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sequence file: " + path);
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("empty sequence file: " + path);
    if (header.rfind("alphabet=", 0) != 0)
        throw std::runtime_error("sequence file missing alphabet= header: " + path);
    Alphabet a(static_cast<std::uint32_t>(std::stoul(header.substr(9))));
    std::stringstream body;
    body << in.rdbuf();
    return Str::from_text(body.str(), a);
}

void write_sequence_file(const std::string& path, const Str& s) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write sequence file: " + path);
    out << "alphabet=" << s.alphabet().k << "\n";
    const std::string text = s.to_text();
    // wrap long digit runs for readability
    if (s.alphabet().k <= 10) {
        for (std::size_t i = 0; i < text.size(); i += 80) {
            out << text.substr(i, 80) << "\n";
        }
    } else {
        out << text << "\n";
    }
}

}  // namespace mdimlab
