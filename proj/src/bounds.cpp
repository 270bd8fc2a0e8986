#include "mdimlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mdimlab {

BoundSpec BoundSpec::cl(std::uint64_t c) {
    BoundSpec s;
    s.kind = Kind::cl;
    s.c = c;
    return s;
}

BoundSpec BoundSpec::h_alpha(double alpha, std::uint64_t c) {
    if (alpha < 1.0) throw std::invalid_argument("h_alpha requires alpha >= 1");
    BoundSpec s;
    s.kind = Kind::h_alpha;
    s.alpha = alpha;
    s.c = c;
    return s;
}

BoundSpec BoundSpec::affine(double a, double b) {
    if (a < 0.0 || b < 0.0) throw std::invalid_argument("affine bound requires a, b >= 0");
    BoundSpec s;
    s.kind = Kind::affine;
    s.a = a;
    s.b = b;
    return s;
}

BoundSpec BoundSpec::table(std::vector<std::uint64_t> values) {
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] < values[i - 1])
            throw std::invalid_argument("bound table must be nondecreasing");
    }
    BoundSpec s;
    s.kind = Kind::table;
    s.values = std::move(values);
    return s;
}

std::uint64_t BoundSpec::eval(std::uint64_t n) const {
    switch (kind) {
        case Kind::cl:
            return n + c;
        case Kind::h_alpha:
            return static_cast<std::uint64_t>(std::ceil(alpha * static_cast<double>(n + c)));
        case Kind::affine:
            return static_cast<std::uint64_t>(std::ceil(a * static_cast<double>(n) + b));
        case Kind::table:
            if (n >= values.size())
                throw std::out_of_range("bound table has no entry for n=" + std::to_string(n));
            return values[n];
    }
    throw std::logic_error("unreachable bound kind");
}

std::string BoundSpec::to_string() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::cl:
            out << "cl:" << c;
            break;
        case Kind::h_alpha:
            out << "h_alpha:" << alpha << ":" << c;
            break;
        case Kind::affine:
            out << "affine:" << a << ":" << b;
            break;
        case Kind::table:
            out << "table[" << values.size() << "]";
            break;
    }
    return out.str();
}

BoundSpec BoundSpec::parse(const std::string& s) {
    auto split = [](const std::string& str) {
        std::vector<std::string> parts;
        std::size_t pos = 0;
        while (pos <= str.size()) {
            std::size_t col = str.find(':', pos);
            if (col == std::string::npos) {
                parts.push_back(str.substr(pos));
                break;
            }
            parts.push_back(str.substr(pos, col - pos));
            pos = col + 1;
        }
        return parts;
    };
    auto parts = split(s);
    if (parts.empty()) throw std::invalid_argument("empty bound spec");
    const std::string& kind = parts[0];
    if (kind == "cl") {
        return cl(parts.size() > 1 ? std::stoull(parts[1]) : 0);
    }
    if (kind == "h_alpha" || kind == "halpha") {
        if (parts.size() < 2) throw std::invalid_argument("h_alpha needs alpha");
        double alpha = std::stod(parts[1]);
        std::uint64_t c = parts.size() > 2 ? std::stoull(parts[2]) : 0;
        return h_alpha(alpha, c);
    }
    if (kind == "affine" || kind == "expr") {
        if (parts.size() < 3) throw std::invalid_argument("affine needs a and b");
        return affine(std::stod(parts[1]), std::stod(parts[2]));
    }
    throw std::invalid_argument("unknown bound spec: " + s);
}

LimsupRatio limsup_ratio(const BoundSpec& bound, std::uint64_t horizon) {
    if (horizon < 1) throw std::invalid_argument("limsup_ratio requires horizon >= 1");
    LimsupRatio out;
    const std::uint64_t lo = std::max<std::uint64_t>(1, horizon / 2);
    double best = 0.0;
    for (std::uint64_t n = lo; n <= horizon; ++n) {
        best = std::max(best, static_cast<double>(bound.eval(n)) / static_cast<double>(n));
    }
    out.surrogate = best;
    switch (bound.kind) {
        case BoundSpec::Kind::cl:
            out.closed_form = 1.0;
            break;
        case BoundSpec::Kind::h_alpha:
            out.closed_form = bound.alpha;
            break;
        case BoundSpec::Kind::affine:
            out.closed_form = bound.a;
            break;
        case BoundSpec::Kind::table:
            break;
    }
    return out;
}

}  // namespace mdimlab
