#include "heatfield/cli/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace heatfield::cli {

namespace {

constexpr std::array<std::pair<Experiment, std::string_view>, 8> kNames{{
    {Experiment::Kernel, "kernel"},
    {Experiment::Semigroup, "semigroup"},
    {Experiment::Clock, "clock"},
    {Experiment::Extinction, "extinction"},
    {Experiment::OnePoint, "onepoint"},
    {Experiment::Gf, "gf"},
    {Experiment::TwoPoint, "twopoint"},
    {Experiment::RingCheck, "ring-check"},
}};

struct Rule {
    KeySpec spec;
    std::function<bool(double)> ok;
    std::string constraint;
};

struct CrossRule {
    std::function<bool(const ExperimentConfig&)> ok;
    std::string key;
    std::string constraint;
};

Rule positive(std::string key, std::string def, std::string desc) {
    std::string c = key + " > 0";
    return {{std::move(key), ValueType::Real, std::move(def), std::move(desc)},
            [](double v) { return v > 0.0; },
            std::move(c)};
}

Rule unit_interval(std::string key, std::string def, std::string desc) {
    std::string c = key + " ∈ [0,1]";
    return {{std::move(key), ValueType::Real, std::move(def), std::move(desc)},
            [](double v) { return v >= 0.0 && v <= 1.0; },
            std::move(c)};
}

Rule count_at_least(std::string key, std::string def, std::uint64_t min, std::string desc) {
    std::string c = key + " ≥ " + std::to_string(min);
    return {{std::move(key), ValueType::Integer, std::move(def), std::move(desc)},
            [min](double v) { return v >= static_cast<double>(min); },
            std::move(c)};
}

Rule any_integer(std::string key, std::string def, std::string desc) {
    return {{std::move(key), ValueType::Integer, std::move(def), std::move(desc)},
            [](double) { return true; },
            {}};
}

Rule text(std::string key, std::string desc) {
    return {{std::move(key), ValueType::Text, {}, std::move(desc)}, [](double) { return true; }, {}};
}

std::vector<Rule> common_rules() {
    return {text("experiment", "optional; must name the subcommand"),
            text("output", "CSV path; --out takes precedence")};
}

std::vector<Rule> mc_rules(std::string replicas_default) {
    return {count_at_least("replicas", std::move(replicas_default), 2, "Monte Carlo replicas"),
            any_integer("seed", "42", "master seed"),
            any_integer("workers", "0", "worker threads, 0 = all cores; never changes results")};
}

std::vector<Rule> rules_for(Experiment kind) {
    std::vector<Rule> r = common_rules();
    auto add = [&r](std::vector<Rule> more) {
        for (auto& m : more) r.push_back(std::move(m));
    };
    switch (kind) {
    case Experiment::Kernel:
        add({positive("gamma", "1", "clock rate of the retarded propagator"),
             positive("t", "1", "time separation"),
             positive("dx.max", "4", "largest spatial separation"),
             positive("dx.step", "0.1", "spatial separation step")});
        break;
    case Experiment::Semigroup:
        add({positive("t", "1", "evolution time"),
             positive("grid.half_width", "10", "grid covers [-half_width, half_width]"),
             positive("grid.spacing", "0.05", "grid spacing"),
             positive("initial.width", "1", "standard deviation of the Gaussian initial condition")});
        break;
    case Experiment::Clock:
        add({positive("gamma", "2", "clock rate"),
             positive("dtau.max", "2", "largest waiting time tabulated"),
             positive("dtau.step", "0.1", "waiting time step")});
        add(mc_rules("10000"));
        break;
    case Experiment::Extinction:
        add({unit_interval("alpha", "0.25", "death probability p_0; p_2 = 1 - alpha"),
             positive("gamma", "1", "clock rate"),
             positive("tau.max", "60", "horizon"),
             positive("tau.step", "1", "output time step")});
        add(mc_rules("20000"));
        add({count_at_least("max_particles", "1000000", 1,
                            "live-particle cap; capped replicas count as not extinct")});
        break;
    case Experiment::OnePoint:
        add({unit_interval("alpha", "0.5", "death probability p_0; p_2 = 1 - alpha"),
             positive("gamma", "1", "clock rate"),
             positive("tau.max", "10", "largest time to horizon"),
             positive("tau.step", "0.01", "output and quadrature step"),
             count_at_least("ode.substeps", "10", 1, "RK4 steps per output step"),
             count_at_least("picard.order", "30", 1, "Picard iterate reported")});
        break;
    case Experiment::Gf:
        add({unit_interval("alpha", "0.25", "death probability p_0; p_2 = 1 - alpha"),
             positive("gamma", "1", "clock rate"),
             unit_interval("theta", "0.5", "generating function argument"),
             positive("t.max", "1", "largest time"),
             positive("t.step", "0.1", "output time step"),
             positive("rk4.step", "0.001", "RK4 step (rounded to divide t.step)")});
        add(mc_rules("20000"));
        add({count_at_least("max_particles", "1000000", 1, "live-particle cap")});
        break;
    case Experiment::TwoPoint:
        add({unit_interval("alpha", "0.25", "death probability p_0; p_2 = 1 - alpha"),
             positive("gamma", "1", "clock rate"),
             positive("t.max", "2", "largest time"),
             positive("time.step", "0.02", "time step"),
             positive("space.step", "0.05", "space step"),
             positive("half_width", "9", "grid covers [-half_width, half_width]")});
        break;
    case Experiment::RingCheck:
        add({count_at_least("cases", "10000", 1, "random cases per property"),
             any_integer("seed", "42", "master seed"),
             positive("tolerance", "1e-12", "relative tolerance")});
        break;
    }
    return r;
}

std::vector<CrossRule> cross_rules_for(Experiment kind) {
    auto le = [](std::string a, std::string b) {
        return CrossRule{[a, b](const ExperimentConfig& c) { return c.real(a) <= c.real(b); }, a,
                         a + " ≤ " + b};
    };
    auto margin = [](std::string hw, std::string t) {
        return CrossRule{[hw, t](const ExperimentConfig& c) {
                             return c.real(hw) >= 6.0 * std::sqrt(c.real(t));
                         },
                         hw, hw + " ≥ 6·sqrt(" + t + ")"};
    };
    switch (kind) {
    case Experiment::Kernel: return {le("dx.step", "dx.max")};
    case Experiment::Semigroup:
        return {margin("grid.half_width", "t"), le("grid.spacing", "initial.width")};
    case Experiment::Clock: return {le("dtau.step", "dtau.max")};
    case Experiment::Extinction: return {le("tau.step", "tau.max")};
    case Experiment::OnePoint: return {le("tau.step", "tau.max")};
    case Experiment::Gf: return {le("t.step", "t.max"), le("rk4.step", "t.step")};
    case Experiment::TwoPoint:
        return {le("time.step", "t.max"), le("space.step", "half_width"), margin("half_width", "t.max")};
    case Experiment::RingCheck: return {};
    }
    return {};
}

bool valid_key(std::string_view key) {
    bool word_start = true;
    for (char ch : key) {
        if (ch == '.') {
            if (word_start) return false;
            word_start = true;
            continue;
        }
        const bool lower = ch >= 'a' && ch <= 'z';
        const bool tail = (ch >= '0' && ch <= '9') || ch == '_';
        if (word_start ? !lower : !(lower || tail)) return false;
        word_start = false;
    }
    return !key.empty() && !word_start;
}

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::optional<double> parse_real(std::string_view s) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<std::uint64_t> parse_integer(std::string_view s) {
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string_view name(Experiment kind) noexcept {
    for (const auto& [k, n] : kNames)
        if (k == kind) return n;
    return "unknown";
}

std::optional<Experiment> experiment_from_name(std::string_view n) noexcept {
    for (const auto& [k, s] : kNames)
        if (s == n) return k;
    return std::nullopt;
}

const std::vector<Experiment>& all_experiments() {
    static const std::vector<Experiment> all = [] {
        std::vector<Experiment> v;
        for (const auto& entry : kNames) v.push_back(entry.first);
        return v;
    }();
    return all;
}

ParseError::ParseError(std::filesystem::path path, std::size_t line, const std::string& reason)
    : std::runtime_error(path.string() + (line > 0 ? ":" + std::to_string(line) : std::string()) +
                         ": " + reason),
      path_(std::move(path)),
      line_(line) {}

ValidationError::ValidationError(std::string key, std::string constraint)
    : std::runtime_error("invalid value for '" + key + "': requires " + constraint),
      key_(std::move(key)),
      constraint_(std::move(constraint)) {}

const std::vector<KeySpec>& keys_of(Experiment kind) {
    static const auto table = [] {
        std::map<Experiment, std::vector<KeySpec>> t;
        for (Experiment k : all_experiments())
            for (const auto& rule : rules_for(k)) t[k].push_back(rule.spec);
        return t;
    }();
    return table.at(kind);
}

double ExperimentConfig::real(const std::string& key) const { return reals.at(key); }

std::uint64_t ExperimentConfig::integer(const std::string& key) const { return integers.at(key); }

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("experiment", std::string(name(kind)));
    for (const auto& spec : keys_of(kind)) {
        if (spec.type == ValueType::Real) out.emplace_back(spec.key, format_real(reals.at(spec.key)));
        if (spec.type == ValueType::Integer)
            out.emplace_back(spec.key, std::to_string(integers.at(spec.key)));
    }
    if (!output.empty()) out.emplace_back("output", output.string());
    return out;
}

ExperimentConfig parse_config_text(std::string_view text, Experiment kind,
                                   const std::filesystem::path& path) {
    const auto rules = rules_for(kind);
    auto find_rule = [&rules](std::string_view key) -> const Rule* {
        for (const auto& r : rules)
            if (r.spec.key == key) return &r;
        return nullptr;
    };

    struct Entry {
        std::string value;
        std::size_t line;
    };
    std::map<std::string, Entry> given;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(path, line_no, "expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (!valid_key(key))
            throw ParseError(path, line_no,
                             "malformed key '" + std::string(key) + "' (dotted lowercase words expected)");
        if (value.empty()) throw ParseError(path, line_no, "missing value for '" + std::string(key) + "'");
        if (!given.emplace(std::string(key), Entry{std::string(value), line_no}).second)
            throw ParseError(path, line_no, "duplicate key '" + std::string(key) + "'");
    }

    for (const auto& [key, entry] : given)
        if (!find_rule(key))
            throw ValidationError(key, "a key of the " + std::string(name(kind)) + " experiment");

    ExperimentConfig config;
    config.kind = kind;
    config.source = path;
    for (const auto& rule : rules) {
        const auto& spec = rule.spec;
        const auto it = given.find(spec.key);
        if (spec.type == ValueType::Text) {
            if (it == given.end()) continue;
            if (spec.key == "experiment" && it->second.value != name(kind))
                throw ValidationError(spec.key, "experiment = " + std::string(name(kind)));
            if (spec.key == "output") config.output = it->second.value;
            continue;
        }
        const std::string& raw = it == given.end() ? spec.default_value : it->second.value;
        const std::size_t line = it == given.end() ? 0 : it->second.line;
        double as_real = 0.0;
        if (spec.type == ValueType::Real) {
            const auto v = parse_real(raw);
            if (!v) throw ParseError(path, line, "'" + spec.key + "' expects a finite decimal number, got '" + raw + "'");
            as_real = *v;
            config.reals[spec.key] = *v;
        } else {
            const auto v = parse_integer(raw);
            if (!v) throw ParseError(path, line, "'" + spec.key + "' expects an unsigned integer, got '" + raw + "'");
            as_real = static_cast<double>(*v);
            config.integers[spec.key] = *v;
        }
        if (!rule.ok(as_real)) throw ValidationError(spec.key, rule.constraint);
    }
    for (const auto& cross : cross_rules_for(kind))
        if (!cross.ok(config)) throw ValidationError(cross.key, cross.constraint);
    return config;
}

ExperimentConfig parse_config(const std::filesystem::path& path, Experiment kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, 0, "cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), kind, path);
}

}  // namespace heatfield::cli
