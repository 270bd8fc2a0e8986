#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mdimlab {

/// Computable, nondecreasing bound family for use/yield verification.
///   cl(c):        n + c
///   h_alpha(a,c): ceil(alpha * (n + c)), alpha >= 1
///   affine(a,b):  ceil(a*n + b)
///   table:        explicit values (validated nondecreasing, partial domain)
struct BoundSpec {
    enum class Kind { cl, h_alpha, affine, table };

    Kind kind = Kind::cl;
    std::uint64_t c = 0;
    double alpha = 1.0;
    double a = 1.0;
    double b = 0.0;
    std::vector<std::uint64_t> values;

    static BoundSpec cl(std::uint64_t c);
    static BoundSpec h_alpha(double alpha, std::uint64_t c);
    static BoundSpec affine(double a, double b);
    static BoundSpec table(std::vector<std::uint64_t> values);

    std::uint64_t eval(std::uint64_t n) const;
    std::string to_string() const;
    /// Accepts "cl:0", "h_alpha:2:0", "halpha:2:0", "affine:1.5:2", "table:file".
    static BoundSpec parse(const std::string& s);
};

struct LimsupRatio {
    double surrogate = 0.0;                   // max of bound(n)/n over [N/2, N]
    std::optional<double> closed_form;        // exact limit where known
};

/// Finite-horizon surrogate for limsup bound(n)/n, with the closed-form
/// limit reported alongside for cl (1), h_alpha (alpha) and affine (a).
LimsupRatio limsup_ratio(const BoundSpec& bound, std::uint64_t horizon);

}  // namespace mdimlab
