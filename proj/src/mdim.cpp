#include "mdimlab/mdim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mdimlab {

std::vector<std::uint64_t> ScheduleSpec::points(std::uint64_t horizon) const {
    std::vector<std::uint64_t> pts;
    if (kind == Kind::geometric) {
        if (ratio <= 1.0) throw std::invalid_argument("geometric schedule needs ratio > 1");
        double v = static_cast<double>(std::min<std::uint64_t>(start, horizon));
        while (v < static_cast<double>(horizon)) {
            const auto n = static_cast<std::uint64_t>(std::llround(v));
            if (pts.empty() || n > pts.back()) pts.push_back(n);
            v *= ratio;
        }
        if (pts.empty() || pts.back() != horizon) pts.push_back(horizon);
    } else {
        if (step == 0) throw std::invalid_argument("linear schedule needs step > 0");
        for (std::uint64_t n = step; n < horizon; n += step) pts.push_back(n);
        if (pts.empty() || pts.back() != horizon) pts.push_back(horizon);
    }
    return pts;
}

std::string ScheduleSpec::to_string() const {
    std::ostringstream out;
    if (kind == Kind::geometric)
        out << "geometric:" << ratio;
    else
        out << "linear:" << step;
    return out.str();
}

ScheduleSpec ScheduleSpec::parse(const std::string& s) {
    ScheduleSpec spec;
    const std::size_t colon = s.find(':');
    const std::string kind = s.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
    if (kind == "geometric") {
        spec.kind = Kind::geometric;
        if (!arg.empty()) spec.ratio = std::stod(arg);
        return spec;
    }
    if (kind == "linear") {
        spec.kind = Kind::linear;
        if (arg.empty()) throw std::invalid_argument("linear schedule needs a step");
        spec.step = std::stoull(arg);
        return spec;
    }
    throw std::invalid_argument("unknown schedule spec: " + s);
}

DimensionProfile profile(const SequenceGen& S, const SequenceGen& T, std::uint64_t horizon,
                         const ScheduleSpec& schedule, const ComplexityProxy& proxy) {
    if (!(S.alphabet() == T.alphabet()))
        throw std::invalid_argument("alphabet mismatch between profiled sequences");
    if (horizon < 16) throw std::invalid_argument("profile horizon must be >= 16");
    const auto pts = schedule.points(horizon);
    if (pts.size() < 16)
        throw std::invalid_argument("schedule yields fewer than 16 sample points");

    DimensionProfile p;
    p.alphabet = S.alphabet();
    p.proxy = proxy.name();
    p.schedule = schedule.to_string();
    p.s_spec = S.spec();
    p.t_spec = T.spec();
    p.horizon = horizon;

    const double log_k = std::log2(static_cast<double>(p.alphabet.k));
    const Str s_full = S.prefix(horizon);
    const Str t_full = T.prefix(horizon);
    for (std::uint64_t n : pts) {
        const Str sx = s_full.prefix(n);
        const Str tx = t_full.prefix(n);
        const double info = mutual_info(sx, tx, proxy, MutualInfoForm::symmetric).value_bits;
        ProfileSample sample;
        sample.n = n;
        sample.info_bits = info;
        sample.density = std::max(info, 0.0) / (static_cast<double>(n) * log_k);
        sample.overshoot = sample.density > 1.0;
        p.samples.push_back(sample);
    }
    return p;
}

DimensionEstimate estimate(const DimensionProfile& p, double window_fraction) {
    if (window_fraction <= 0.0 || window_fraction > 0.5)
        throw std::invalid_argument("window fraction must be in (0, 0.5]");
    DimensionEstimate est;
    est.window_lo = static_cast<std::uint64_t>(
        std::ceil((1.0 - window_fraction) * static_cast<double>(p.horizon)));
    bool first = true;
    for (const auto& s : p.samples) {
        if (s.n < est.window_lo) continue;
        ++est.samples_in_window;
        if (first) {
            est.mdim_hat = est.Mdim_hat = s.density;
            first = false;
        } else {
            est.mdim_hat = std::min(est.mdim_hat, s.density);
            est.Mdim_hat = std::max(est.Mdim_hat, s.density);
        }
    }
    if (est.samples_in_window < 4)
        throw std::invalid_argument("window too small: fewer than 4 samples in the tail window");
    return est;
}

ConvergenceReport convergence_report(const DimensionProfile& p, double window_fraction) {
    if (p.samples.size() < 16)
        throw std::invalid_argument("convergence report needs at least 16 samples");
    const auto lo = static_cast<std::uint64_t>(
        std::ceil((1.0 - window_fraction) * static_cast<double>(p.horizon)));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double dmin = 0, dmax = 0;
    std::size_t m = 0;
    for (const auto& s : p.samples) {
        if (s.n < lo) continue;
        const double x = static_cast<double>(s.n);
        sx += x;
        sy += s.density;
        sxx += x * x;
        sxy += x * s.density;
        dmin = m == 0 ? s.density : std::min(dmin, s.density);
        dmax = m == 0 ? s.density : std::max(dmax, s.density);
        ++m;
    }
    ConvergenceReport report;
    if (m >= 2) {
        const double denom = static_cast<double>(m) * sxx - sx * sx;
        report.tail_slope = denom == 0.0 ? 0.0 : (static_cast<double>(m) * sxy - sx * sy) / denom;
    }
    report.oscillation_width = dmax - dmin;
    report.stable = report.oscillation_width <= 0.1;
    return report;
}

std::string DimensionProfile::to_csv() const {
    std::ostringstream out;
    out << "# alphabet=" << alphabet.k << " proxy=" << proxy << " schedule=" << schedule
        << " horizon=" << horizon << "\n";
    out << "# s=" << s_spec << " t=" << t_spec << "\n";
    out << "n,info_bits,density,flags\n";
    for (const auto& s : samples) {
        out << s.n << "," << s.info_bits << "," << s.density << ","
            << (s.overshoot ? "overshoot" : "") << "\n";
    }
    return out.str();
}

DimensionProfile DimensionProfile::from_csv(const std::string& text) {
    DimensionProfile p;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream meta(line.substr(1));
            std::string tok;
            while (meta >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = tok.substr(0, eq);
                const std::string val = tok.substr(eq + 1);
                if (key == "alphabet") p.alphabet = Alphabet(static_cast<std::uint32_t>(std::stoul(val)));
                else if (key == "proxy") p.proxy = val;
                else if (key == "schedule") p.schedule = val;
                else if (key == "horizon") p.horizon = std::stoull(val);
                else if (key == "s") p.s_spec = val;
                else if (key == "t") p.t_spec = val;
            }
            continue;
        }
        if (line.rfind("n,", 0) == 0) continue;  // header row
        std::istringstream row(line);
        std::string cell;
        ProfileSample s;
        std::getline(row, cell, ',');
        s.n = std::stoull(cell);
        std::getline(row, cell, ',');
        s.info_bits = std::stod(cell);
        std::getline(row, cell, ',');
        s.density = std::stod(cell);
        std::getline(row, cell, ',');
        s.overshoot = cell == "overshoot";
        p.samples.push_back(s);
    }
    if (p.horizon == 0 && !p.samples.empty()) p.horizon = p.samples.back().n;
    return p;
}

}  // namespace mdimlab
