#pragma once

// Experiment configuration files.
//
// Grammar (one statement per line, UTF-8):
//   line    := blank | comment | key "=" value [comment]
//   comment := "#" anything
//   key     := word ("." word)*        word := [a-z][a-z0-9_]*
//   value   := decimal number, unsigned integer, or bare text for the
//              string keys `experiment` and `output`
// Keys may appear at most once. Unset keys take per-experiment defaults.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace heatfield::cli {

enum class Experiment { Kernel, Semigroup, Clock, Extinction, OnePoint, Gf, TwoPoint, RingCheck };

std::string_view name(Experiment kind) noexcept;
std::optional<Experiment> experiment_from_name(std::string_view name) noexcept;
const std::vector<Experiment>& all_experiments();

/// Syntax problem or unreadable file.
class ParseError : public std::runtime_error {
public:
    ParseError(std::filesystem::path path, std::size_t line, const std::string& reason);

    const std::filesystem::path& path() const noexcept { return path_; }
    /// 1-based; 0 when the problem is not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    std::filesystem::path path_;
    std::size_t line_;
};

/// A well-formed key whose value breaks a precondition.
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string key, std::string constraint);

    const std::string& key() const noexcept { return key_; }
    const std::string& constraint() const noexcept { return constraint_; }

private:
    std::string key_;
    std::string constraint_;
};

enum class ValueType { Real, Integer, Text };

/// One accepted key of an experiment, with its default.
struct KeySpec {
    std::string key;
    ValueType type = ValueType::Real;
    std::string default_value;
    std::string description;
};

/// Accepted keys of `kind`, in canonical (echo) order.
const std::vector<KeySpec>& keys_of(Experiment kind);

/// A validated configuration. Every key of the experiment is present.
class ExperimentConfig {
public:
    Experiment kind = Experiment::Kernel;
    std::filesystem::path source;
    /// CSV destination; empty means "derive from source".
    std::filesystem::path output;

    double real(const std::string& key) const;
    std::uint64_t integer(const std::string& key) const;
    std::size_t size(const std::string& key) const { return static_cast<std::size_t>(integer(key)); }

    /// (key, value) in canonical order; numbers in round-trip form.
    std::vector<std::pair<std::string, std::string>> echo() const;

    std::map<std::string, double> reals;
    std::map<std::string, std::uint64_t> integers;
};

/// Reads and validates `path` for `kind`.
ExperimentConfig parse_config(const std::filesystem::path& path, Experiment kind);

/// Same, from in-memory text; `path` is only used in diagnostics.
ExperimentConfig parse_config_text(std::string_view text, Experiment kind,
                                   const std::filesystem::path& path = "<memory>");

}  // namespace heatfield::cli
