#include "heatfield/cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "heatfield/dyson.hpp"
#include "heatfield/errors.hpp"
#include "heatfield/kernels.hpp"
#include "heatfield/montecarlo.hpp"
#include "heatfield/pring.hpp"
#include "heatfield/rng.hpp"
#include "heatfield/statistics.hpp"
#include "heatfield/version.hpp"
#include "json.hpp"

namespace heatfield::cli {

namespace {

using Json = nlohmann::ordered_json;
using Row = std::vector<std::string>;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Report {
    explicit Report(Row h) : header(std::move(h)) {}

    Row header;
    std::vector<Row> rows;
    Json estimates = Json::array();
    Json diagnostics = Json::object();
    /// Set when the run completed but a check it performs did not hold.
    std::string failure;

    void estimate(const std::string& label, const stats::Estimate& e) {
        estimates.push_back({{"label", label}, {"value", e.value}, {"std_error", e.std_error}});
    }
};

mc::McOptions mc_options(const ExperimentConfig& c) {
    return {static_cast<unsigned>(c.integer("workers"))};
}

mc::RngSeed seed_of(const ExperimentConfig& c) { return {c.integer("seed")}; }

mc::BranchingConfig binary_config(const ExperimentConfig& c) {
    mc::BranchingConfig b;
    b.gamma = c.real("gamma");
    b.fertility = FertilityDistribution::binary(c.real("alpha"));
    b.x0 = SpacePoint{0.0};
    b.max_particles = c.size("max_particles");
    return b;
}

Report run_kernel(const ExperimentConfig& c) {
    const double t = c.real("t"), gamma = c.real("gamma");
    const auto dx = TimeGrid::covering(c.real("dx.max"), c.real("dx.step"));
    Report r{{"t", "dx", "heat_kernel", "retarded_propagator"}};
    for (std::size_t k = 0; k < dx.count; ++k) {
        const double d = dx.node(k);
        const double p = kernels::heat_kernel_1d(t, d);
        const double b = kernels::retarded_propagator_heat(SpaceTimePoint{0.0, SpacePoint{0.0}},
                                                          SpaceTimePoint{t, SpacePoint{d}}, gamma);
        r.rows.push_back({fmt(t), fmt(d), fmt(p), fmt(b)});
    }
    return r;
}

Report run_semigroup(const ExperimentConfig& c) {
    const double t = c.real("t"), w = c.real("initial.width");
    const auto grid = UniformGrid::symmetric(c.real("grid.half_width"), c.real("grid.spacing"));
    const auto u0 = SampledFunction::tabulate(grid, [w](double x) { return std::exp(-x * x / (2 * w * w)); });
    const auto evolved = kernels::apply_semigroup(u0, t);
    const double v = w * w + t;
    const double interior = grid.half_width() - kernels::semigroup_margin(t);
    Report r{{"x", "u0", "evolved", "exact"}};
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double x = grid.node(i);
        if (std::abs(x) > interior) continue;
        const double exact = w / std::sqrt(v) * std::exp(-x * x / (2 * v));
        worst = std::max(worst, std::abs(evolved[i] - exact));
        r.rows.push_back({fmt(x), fmt(u0[i]), fmt(evolved[i]), fmt(exact)});
    }
    r.diagnostics["max_interior_error"] = worst;
    return r;
}

Report run_clock(const ExperimentConfig& c) {
    mc::BranchingConfig b;
    b.gamma = c.real("gamma");
    const std::size_t n = c.size("replicas");
    auto times = mc::sample_first_event_times(b, n, seed_of(c), mc_options(c));
    const auto mean = stats::mean_estimate(times);
    const double ks = stats::ks_statistic(times, [g = b.gamma](double x) { return -std::expm1(-g * x); });
    std::sort(times.begin(), times.end());

    Report r{{"dtau", "event_probability", "mc_fraction", "mc_stderr"}};
    const auto grid = TimeGrid::covering(c.real("dtau.max"), c.real("dtau.step"));
    for (std::size_t k = 0; k < grid.count; ++k) {
        const double dt = grid.node(k);
        const auto hits = static_cast<std::size_t>(std::upper_bound(times.begin(), times.end(), dt) - times.begin());
        const auto e = stats::binomial_estimate(hits, n);
        r.rows.push_back({fmt(dt), fmt(kernels::event_probability(b.gamma, dt)), fmt(e.value), fmt(e.std_error)});
        r.estimate("dtau=" + fmt(dt), e);
    }
    r.estimate("mean_lifetime", mean);
    r.diagnostics["expected_mean"] = 1.0 / b.gamma;
    r.diagnostics["ks_statistic"] = ks;
    r.diagnostics["ks_pvalue"] = stats::ks_pvalue(ks, n);
    return r;
}

Report run_extinction(const ExperimentConfig& c) {
    const double alpha = c.real("alpha"), gamma = c.real("gamma");
    const auto grid = TimeGrid::covering(c.real("tau.max"), c.real("tau.step"));
    std::vector<double> taus(grid.count);
    for (std::size_t k = 0; k < grid.count; ++k) taus[k] = grid.node(k);
    const auto curve = mc::estimate_extinction_curve(binary_config(c), taus, c.size("replicas"),
                                                     seed_of(c), mc_options(c));
    Report r{{"tau", "analytic", "mc_estimate", "mc_stderr"}};
    for (std::size_t k = 0; k < taus.size(); ++k) {
        const auto& e = curve[k];
        r.rows.push_back({fmt(taus[k]), fmt(dyson::one_point_closed_form(alpha, gamma, taus[k])),
                          fmt(e.p_hat), fmt(e.std_error)});
        r.estimate("tau=" + fmt(taus[k]), {e.p_hat, e.std_error});
    }
    r.diagnostics["extinction_limit"] = dyson::extinction_probability(alpha);
    r.diagnostics["capped_replicas"] = curve.back().capped;
    return r;
}

Report run_onepoint(const ExperimentConfig& c) {
    const double alpha = c.real("alpha"), gamma = c.real("gamma");
    const auto grid = TimeGrid::covering(c.real("tau.max"), c.real("tau.step"));
    const auto ode = dyson::one_point_ode(FertilityDistribution::binary(alpha), gamma, 0.0, grid,
                                          static_cast<int>(c.integer("ode.substeps")));
    const auto picard =
        dyson::one_point_picard(alpha, gamma, grid, static_cast<int>(c.integer("picard.order")));
    Report r{{"tau", "closed_form", "ode", "picard"}};
    double ode_err = 0.0, picard_err = 0.0;
    for (std::size_t k = 0; k < grid.count; ++k) {
        const double tau = grid.node(k);
        const double exact = dyson::one_point_closed_form(alpha, gamma, tau);
        ode_err = std::max(ode_err, std::abs(ode.values[k] - exact));
        picard_err = std::max(picard_err, std::abs(picard.values[k] - exact));
        r.rows.push_back({fmt(tau), fmt(exact), fmt(ode.values[k]), fmt(picard.values[k])});
    }
    r.diagnostics["ode_sup_error"] = ode_err;
    r.diagnostics["picard_sup_error"] = picard_err;
    return r;
}

Report run_gf(const ExperimentConfig& c) {
    const double theta = c.real("theta");
    const auto grid = TimeGrid::covering(c.real("t.max"), c.real("t.step"));
    const int substeps = std::max(1, static_cast<int>(std::lround(grid.step / c.real("rk4.step"))));
    const auto rk4 = dyson::one_point_ode(FertilityDistribution::binary(c.real("alpha")), c.real("gamma"),
                                          theta, grid, substeps);
    const auto config = binary_config(c);
    Report r{{"t", "rk4", "mc_estimate", "mc_stderr"}};
    for (std::size_t k = 0; k < grid.count; ++k) {
        const double t = grid.node(k);
        const auto e = mc::estimate_generating_function(config, theta, t, c.size("replicas"), seed_of(c),
                                                        mc_options(c));
        r.rows.push_back({fmt(t), fmt(rk4.values[k]), fmt(e.value), fmt(e.std_error)});
        r.estimate("t=" + fmt(t), e);
    }
    r.diagnostics["rk4_substeps"] = substeps;
    return r;
}

Report run_twopoint(const ExperimentConfig& c) {
    const double alpha = c.real("alpha"), gamma = c.real("gamma");
    const dyson::TwoPointSpec spec{c.real("t.max"), c.real("time.step"), c.real("space.step"),
                                   c.real("half_width")};
    const auto field = dyson::two_point_picard(alpha, gamma, spec);
    constexpr std::size_t kRefine = 10;
    const auto fine = TimeGrid::covering(field.time().back(), field.time().step / kRefine);
    detail::require(fine.count == kRefine * (field.time_count() - 1) + 1, ErrorCode::InvalidArgument,
                    "mass reference grid does not refine the field grid");
    const auto mass = dyson::mass_curve(alpha, gamma, fine);

    Report r{{"t", "x", "d_tilde", "slice_mass", "mass_curve"}};
    double worst = 0.0;
    for (std::size_t i = 0; i < field.time_count(); ++i) {
        const double t = field.time().node(i);
        const double m = field.slice_mass(i);
        const double ref = mass.values[kRefine * i];
        if (i > 0) worst = std::max(worst, std::abs(m - ref));
        for (std::size_t j = 0; j < field.space_count(); ++j)
            r.rows.push_back({fmt(t), fmt(field.space().node(j)), fmt(field.at(i, j)), fmt(m), fmt(ref)});
    }
    r.diagnostics["fixed_point_residual"] = dyson::two_point_residual(field, alpha, gamma);
    r.diagnostics["picard_sweeps"] = field.iterations;
    r.diagnostics["max_mass_deviation"] = worst;
    return r;
}

double ring_norm(const pring::PseudoComplex& p) { return std::max(std::abs(p.re()), std::abs(p.im())); }

double ring_rel(const pring::PseudoComplex& p, const pring::PseudoComplex& q) {
    return ring_norm(p - q) / std::max({ring_norm(p), ring_norm(q), 1e-300});
}

double real_rel(double x, double y) {
    return std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-300});
}

Report run_ring_check(const ExperimentConfig& c) {
    using pring::PseudoComplex;
    const std::size_t cases = c.size("cases");
    const double tol = c.real("tolerance");
    const std::uint64_t seed = c.integer("seed");

    struct Property {
        const char* name;
        double bound;
        double (*check)(const PseudoComplex&, const PseudoComplex&, const PseudoComplex&);
    };
    static const Property properties[] = {
        {"homomorphism", 100.0,
         [](const PseudoComplex& p, const PseudoComplex& q, const PseudoComplex&) {
             double e = 0.0;
             for (auto b : {pring::Branch::Plus, pring::Branch::Minus}) {
                 const double gp = pring::gamma_project(p, b), gq = pring::gamma_project(q, b);
                 e = std::max(e, real_rel(pring::gamma_project(p * q, b), gp * gq));
                 e = std::max(e, real_rel(pring::gamma_project(p + q, b), gp + gq));
             }
             return e;
         }},
        {"ring_laws", 100.0,
         [](const PseudoComplex& p, const PseudoComplex& q, const PseudoComplex& s) {
             return std::max({ring_rel(p * q, q * p), ring_rel((p * q) * s, p * (q * s)),
                              ring_rel(p * (q + s), p * q + p * s)});
         }},
        {"involution", 100.0,
         [](const PseudoComplex& p, const PseudoComplex& q, const PseudoComplex&) {
             return std::max({ring_rel(pring::conj(pring::conj(p)), p),
                              ring_rel(pring::conj(p * q), pring::conj(p) * pring::conj(q)),
                              real_rel(pring::gamma_plus(pring::conj(p)), pring::gamma_minus(p))});
         }},
        {"exponential_law", 10.0,
         [](const PseudoComplex& p, const PseudoComplex& q, const PseudoComplex&) {
             return ring_rel(pring::exp(p) * pring::exp(q), pring::exp(p + q));
         }},
        {"unitarity", 4.0,
         [](const PseudoComplex& p, const PseudoComplex& q, const PseudoComplex&) {
             const double energy = std::abs(p.re()), t = 0.625 * p.im(), s = 0.625 * q.im();
             const auto ut = kernels::time_evolution(energy, t);
             const auto us = kernels::time_evolution(energy, s);
             return std::max(ring_rel(ut * us, kernels::time_evolution(energy, t + s)),
                             ring_rel(pring::conj(ut) * ut, PseudoComplex(1.0)));
         }},
        {"inverse", 50.0,
         [](const PseudoComplex& p, const PseudoComplex&, const PseudoComplex&) {
             if (std::min(std::abs(pring::gamma_plus(p)), std::abs(pring::gamma_minus(p))) < 1e-6)
                 return 0.0;
             return ring_rel(pring::inverse(p) * p, PseudoComplex(1.0));
         }},
    };

    Report r{{"property", "cases", "max_rel_error", "passed"}};
    std::string failed;
    for (std::size_t k = 0; k < std::size(properties); ++k) {
        const auto& prop = properties[k];
        mc::RngStream rng(mc::derive_seed(seed, k));
        std::uniform_real_distribution<double> u(-prop.bound, prop.bound);
        auto draw = [&] {
            const double a = rng.draw(u);
            return PseudoComplex(a, rng.draw(u));
        };
        double worst = 0.0;
        for (std::size_t i = 0; i < cases; ++i) {
            const auto p = draw(), q = draw(), s = draw();
            worst = std::max(worst, prop.check(p, q, s));
        }
        const bool ok = worst <= tol;
        if (!ok) failed += failed.empty() ? prop.name : std::string(", ") + prop.name;
        r.rows.push_back({prop.name, std::to_string(cases), fmt(worst), ok ? "true" : "false"});
    }
    if (!failed.empty()) r.failure = "ring properties above tolerance: " + failed;
    return r;
}

Report dispatch(const ExperimentConfig& c) {
    switch (c.kind) {
    case Experiment::Kernel: return run_kernel(c);
    case Experiment::Semigroup: return run_semigroup(c);
    case Experiment::Clock: return run_clock(c);
    case Experiment::Extinction: return run_extinction(c);
    case Experiment::OnePoint: return run_onepoint(c);
    case Experiment::Gf: return run_gf(c);
    case Experiment::TwoPoint: return run_twopoint(c);
    case Experiment::RingCheck: return run_ring_check(c);
    }
    detail::fail(ErrorCode::InvalidArgument, "unknown experiment");
}

void write_csv(const std::filesystem::path& path, const Report& r) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    auto line = [&out](const Row& row) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    };
    line(r.header);
    for (const auto& row : r.rows) line(row);
    if (!out.flush()) throw std::runtime_error("write failed: " + path.string());
}

const char* status_of(int code) {
    switch (code) {
    case kExitOk: return "ok";
    case kExitValidation: return "validation_error";
    default: return "runtime_error";
    }
}

struct ManifestInput {
    ManifestInput(Experiment k, std::filesystem::path p) : kind(k), config_path(std::move(p)) {}

    Experiment kind;
    std::filesystem::path config_path;
    Json config = nullptr;
    std::filesystem::path csv;
    int exit_code = kExitOk;
    std::string error;
    double seconds = 0.0;
    Json estimates = Json::array();
    Json diagnostics = Json::object();
};

bool write_manifest(const std::filesystem::path& path, const ManifestInput& m, std::ostream& diag) {
    Json j;
    j["tool"] = "heatfield";
    j["version"] = kVersion;
    j["experiment"] = std::string(name(m.kind));
    j["config_path"] = m.config_path.string();
    j["config"] = m.config;
    j["csv"] = m.exit_code == kExitValidation ? Json(nullptr) : Json(m.csv.string());
    j["status"] = status_of(m.exit_code);
    j["exit_code"] = m.exit_code;
    j["error"] = m.error.empty() ? Json(nullptr) : Json(m.error);
    j["wall_clock_seconds"] = m.seconds;
    j["estimates"] = m.estimates;
    j["diagnostics"] = m.diagnostics;
    try {
        if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << j.dump(2) << '\n';
        if (!out.flush()) throw std::runtime_error("write failed");
        return true;
    } catch (const std::exception& e) {
        diag << "heatfield: cannot write manifest " << path.string() << ": " << e.what() << '\n';
        return false;
    }
}

Json echo_json(const ExperimentConfig& c) {
    Json j = Json::object();
    for (const auto& [k, v] : c.echo()) j[k] = v;
    return j;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::filesystem::path csv_path(const ExperimentConfig& config) {
    if (!config.output.empty()) return config.output;
    auto p = config.source;
    p.replace_extension(p.extension() == ".csv" ? ".out.csv" : ".csv");
    return p;
}

std::filesystem::path manifest_path(const std::filesystem::path& csv) {
    auto p = csv;
    p.replace_extension(".manifest.json");
    return p;
}

int run_experiment(const ExperimentConfig& config, std::ostream& diag) {
    const auto start = std::chrono::steady_clock::now();
    ManifestInput m{config.kind, config.source};
    m.config = echo_json(config);
    m.csv = csv_path(config);
    try {
        const Report r = dispatch(config);
        write_csv(m.csv, r);
        m.estimates = r.estimates;
        m.diagnostics = r.diagnostics;
        if (!r.failure.empty()) {
            m.exit_code = kExitRuntime;
            m.error = r.failure;
            diag << "heatfield: " << r.failure << '\n';
        }
    } catch (const std::exception& e) {
        m.exit_code = kExitRuntime;
        m.error = e.what();
        diag << "heatfield: " << e.what() << '\n';
    }
    m.seconds = seconds_since(start);
    if (!write_manifest(manifest_path(m.csv), m, diag)) return kExitRuntime;
    return m.exit_code;
}

namespace {

int reject(Experiment kind, const std::filesystem::path& config_path,
           const std::optional<std::filesystem::path>& out, const std::string& what,
           std::chrono::steady_clock::time_point start, std::ostream& diag) {
    diag << "heatfield: " << what << '\n';
    ManifestInput m{kind, config_path};
    m.exit_code = kExitValidation;
    m.error = what;
    m.seconds = seconds_since(start);
    ExperimentConfig stub;
    stub.source = config_path;
    stub.output = out.value_or(std::filesystem::path());
    write_manifest(manifest_path(csv_path(stub)), m, diag);
    return kExitValidation;
}

}  // namespace

int run_command(Experiment kind, const std::filesystem::path& config_path,
                const std::optional<std::filesystem::path>& out, std::ostream& diag) {
    const auto start = std::chrono::steady_clock::now();
    try {
        ExperimentConfig config = parse_config(config_path, kind);
        if (out) config.output = *out;
        return run_experiment(config, diag);
    } catch (const ParseError& e) {
        return reject(kind, config_path, out, e.what(), start, diag);
    } catch (const ValidationError& e) {
        return reject(kind, config_path, out, e.what(), start, diag);
    }
}

}  // namespace heatfield::cli
