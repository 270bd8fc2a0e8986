#include "mdimlab/harness.hpp"

#include <cmath>
#include <sstream>

namespace mdimlab {

void ExperimentConfig::validate() const {
    if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be > 0");
    if (horizon < 1024) throw std::invalid_argument("experiment horizon must be >= 1024");
    if (seeds.empty()) throw std::invalid_argument("experiment needs at least one seed");
    if (direction != "forward-dpi" && direction != "reverse-dpi" && direction != "sandwich")
        throw std::invalid_argument("unknown experiment direction: " + direction);
}

json ExperimentConfig::to_json() const {
    json j;
    j["name"] = name;
    j["direction"] = direction;
    j["functional"] = functional;
    j["bound"] = bound;
    if (!yield_bound.empty()) j["yield_bound"] = yield_bound;
    j["dist"] = dist;
    j["alphabet"] = alphabet;
    j["horizon"] = horizon;
    j["window"] = window;
    j["epsilon"] = epsilon;
    j["proxy"] = proxy;
    j["schedule"] = schedule;
    j["seeds"] = seeds;
    j["verify_horizon"] = verify_horizon;
    j["uy_cap"] = uy_cap;
    j["budget"] = budget;
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    ExperimentConfig c;
    if (j.contains("name")) c.name = j["name"].get<std::string>();
    if (j.contains("direction")) c.direction = j["direction"].get<std::string>();
    if (j.contains("functional")) c.functional = j["functional"].get<std::string>();
    if (j.contains("bound")) c.bound = j["bound"].get<std::string>();
    if (j.contains("yield_bound")) c.yield_bound = j["yield_bound"].get<std::string>();
    if (j.contains("dist")) c.dist = j["dist"].get<std::string>();
    if (j.contains("alphabet")) c.alphabet = j["alphabet"].get<std::uint32_t>();
    if (j.contains("horizon")) c.horizon = j["horizon"].get<std::uint64_t>();
    if (j.contains("window")) c.window = j["window"].get<double>();
    if (j.contains("epsilon")) c.epsilon = j["epsilon"].get<double>();
    if (j.contains("proxy")) c.proxy = j["proxy"].get<std::string>();
    if (j.contains("schedule")) c.schedule = j["schedule"].get<std::string>();
    if (j.contains("seeds")) c.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    if (j.contains("verify_horizon")) c.verify_horizon = j["verify_horizon"].get<std::uint64_t>();
    if (j.contains("uy_cap")) c.uy_cap = j["uy_cap"].get<std::uint64_t>();
    if (j.contains("budget")) c.budget = j["budget"].get<std::uint64_t>();
    c.validate();
    return c;
}

json ExperimentReport::to_json() const {
    json j;
    j["config"] = config.to_json();
    j["factor"] = factor;
    j["rows"] = json::array();
    for (const auto& r : rows) {
        j["rows"].push_back({{"seed", r.seed},
                             {"mdim_xy", r.mdim_xy},
                             {"Mdim_xy", r.Mdim_xy},
                             {"mdim_zy", r.mdim_zy},
                             {"Mdim_zy", r.Mdim_zy},
                             {"stable_xy", r.stable_xy},
                             {"stable_zy", r.stable_zy},
                             {"pass", r.pass}});
    }
    j["pass_count"] = pass_count;
    j["pass_fraction"] = pass_fraction;
    j["verdict"] = all_pass ? "PASS" : "FAIL";
    j["reduction_summaries"] = reduction_summaries;
    j["proxy_relative"] = true;  // every verdict is relative to (N, w, epsilon, proxy)
    return j;
}

namespace {

bool row_verdict(const std::string& direction, const SeedRow& r, double factor, double eps) {
    if (direction == "forward-dpi") {
        return r.mdim_zy <= factor * r.mdim_xy + eps && r.Mdim_zy <= factor * r.Mdim_xy + eps;
    }
    if (direction == "reverse-dpi") {
        return r.mdim_xy <= factor * r.mdim_zy + eps && r.Mdim_xy <= factor * r.Mdim_zy + eps;
    }
    // sandwich
    return std::abs(r.mdim_zy - r.mdim_xy) <= eps && std::abs(r.Mdim_zy - r.Mdim_xy) <= eps;
}

json reduction_summary(const ReductionReport& report, std::uint64_t seed) {
    json j;
    j["seed"] = seed;
    j["mode"] = report.mode;
    j["verdict"] = report.pass ? "pass" : "fail";
    j["horizon"] = report.horizon;
    j["bound_spec"] = report.bound;
    if (report.first_failure) {
        j["first_failure"] = {{"n", report.first_failure->n},
                              {"category", report.first_failure->category}};
    }
    if (report.uy_checked_up_to) j["uy_checked_up_to"] = *report.uy_checked_up_to;
    return j;
}

double hypothesis_factor(const BoundSpec& bound) {
    const LimsupRatio ratio = limsup_ratio(bound, 1 << 10);
    return ratio.closed_form ? *ratio.closed_form : ratio.surrogate;
}

struct SeedSetup {
    SequenceGen x, y, z;
    TuringFunctional phi;
};

SeedSetup make_seed_setup(const ExperimentConfig& config, std::uint64_t seed) {
    const Alphabet a(config.alphabet);
    JointDistribution dist = [&] {
        if (config.dist == "diagonal" || config.dist == "diag")
            return JointDistribution::diagonal(a);
        if (config.dist == "product") return JointDistribution::product_uniform(a);
        if (config.dist.rfind("bsc:", 0) == 0)
            return JointDistribution::bsc(std::stod(config.dist.substr(4)));
        throw std::invalid_argument("unknown dist spec: " + config.dist);
    }();
    auto [x, y] = coupled_gen(dist, seed);
    SeedSetup setup{x, y, SequenceGen(), load_functional(config.functional, a)};
    setup.z = derived_gen(setup.phi, setup.x, config.budget);
    return setup;
}

ExperimentReport run_common(const ExperimentConfig& config) {
    config.validate();
    const ComplexityProxy& proxy = ComplexityProxy::by_name(config.proxy);
    const ScheduleSpec schedule = ScheduleSpec::parse(config.schedule);
    const BoundSpec use_bound = BoundSpec::parse(config.bound);
    const BoundSpec yield_bound =
        config.yield_bound.empty() ? use_bound : BoundSpec::parse(config.yield_bound);

    ExperimentReport report;
    report.config = config;

    const bool forward = config.direction == "forward-dpi";
    const bool sandwich = config.direction == "sandwich";
    if (sandwich) {
        // the sandwich fixture gate: both hypotheses must be computable
        // Lipschitz; anything else cannot satisfy the two-sided equality
        if (use_bound.kind != BoundSpec::Kind::cl || yield_bound.kind != BoundSpec::Kind::cl)
            throw PreconditionAbort("sandwich experiments require cl bounds on both sides",
                                    {{"bound", use_bound.to_string()},
                                     {"yield_bound", yield_bound.to_string()}});
        report.factor = 1.0;
    } else {
        report.factor = hypothesis_factor(forward ? use_bound : yield_bound);
    }

    for (const std::uint64_t seed : config.seeds) {
        SeedSetup setup = make_seed_setup(config, seed);

        // hypothesis gating: never emit an inequality verdict on an
        // unverified witness
        if (forward || sandwich) {
            ReductionWitness witness{setup.phi, setup.x, setup.z, use_bound,
                                     ReductionWitness::Mode::use_bounded};
            const ReductionReport r = verify_bT(witness, config.verify_horizon, config.budget);
            report.reduction_summaries.push_back(reduction_summary(r, seed));
            if (!r.pass)
                throw PreconditionAbort("reduction witness failed verify_bT", r.to_json());
        }
        if (!forward) {
            ReductionWitness witness{setup.phi, setup.x, setup.z, yield_bound,
                                     ReductionWitness::Mode::yield_bounded};
            const ReductionReport r =
                verify_uyb(witness, config.verify_horizon, config.uy_cap, config.budget);
            report.reduction_summaries.push_back(reduction_summary(r, seed));
            if (!r.pass)
                throw PreconditionAbort("reduction witness failed verify_uyb", r.to_json());
        }

        const DimensionProfile p_xy =
            profile(setup.x, setup.y, config.horizon, schedule, proxy);
        const DimensionProfile p_zy =
            profile(setup.z, setup.y, config.horizon, schedule, proxy);
        const DimensionEstimate e_xy = estimate(p_xy, config.window);
        const DimensionEstimate e_zy = estimate(p_zy, config.window);

        SeedRow row;
        row.seed = seed;
        row.mdim_xy = e_xy.mdim_hat;
        row.Mdim_xy = e_xy.Mdim_hat;
        row.mdim_zy = e_zy.mdim_hat;
        row.Mdim_zy = e_zy.Mdim_hat;
        row.stable_xy = convergence_report(p_xy, config.window).stable;
        row.stable_zy = convergence_report(p_zy, config.window).stable;
        row.pass = row_verdict(config.direction, row, report.factor, config.epsilon);
        report.rows.push_back(row);
        if (row.pass) ++report.pass_count;
    }

    report.pass_fraction =
        static_cast<double>(report.pass_count) / static_cast<double>(report.rows.size());
    report.all_pass = report.pass_count == report.rows.size();
    return report;
}

}  // namespace

bool ExperimentReport::verdicts_consistent() const {
    std::size_t recount = 0;
    for (const auto& r : rows) {
        const bool v = row_verdict(config.direction, r, factor, config.epsilon);
        if (v != r.pass) return false;
        if (v) ++recount;
    }
    return recount == pass_count && all_pass == (recount == rows.size());
}

ExperimentReport run_forward_dpi(const ExperimentConfig& config) {
    if (config.direction != "forward-dpi")
        throw std::invalid_argument("config direction is not forward-dpi");
    return run_common(config);
}

ExperimentReport run_reverse_dpi(const ExperimentConfig& config) {
    if (config.direction != "reverse-dpi")
        throw std::invalid_argument("config direction is not reverse-dpi");
    return run_common(config);
}

ExperimentReport run_sandwich(const ExperimentConfig& config) {
    if (config.direction != "sandwich")
        throw std::invalid_argument("config direction is not sandwich");
    return run_common(config);
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    config.validate();
    return run_common(config);
}

std::string plot_script(const std::string& report_stem, const std::vector<std::string>& csvs) {
    std::ostringstream out;
    out << "set datafile separator ','\n";
    out << "set xlabel 'n'\n";
    out << "set ylabel 'mutual information density'\n";
    out << "set key outside\n";
    out << "set term pngcairo size 1000,600\n";
    out << "set output '" << report_stem << ".png'\n";
    out << "plot ";
    for (std::size_t i = 0; i < csvs.size(); ++i) {
        if (i) out << ", \\\n     ";
        out << "'" << csvs[i] << "' using 1:3 with linespoints title '" << csvs[i] << "'";
    }
    out << "\n";
    return out.str();
}

}  // namespace mdimlab
