#pragma once

#include "cosserat/experiments.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

namespace cosserat {

inline constexpr int kSchemaVersion = 1;

/// Schema violation; `path()` names the offending field, e.g. "stepper.h".
class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& path, const std::string& what)
        : std::invalid_argument((path.empty() ? std::string("(root)") : path) + ": " + what), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct OutputOptions {
    std::string directory = "out";
    std::size_t cadence = 1;            ///< write every m-th record
    std::size_t snapshot_cadence = 0;   ///< full-state rows every m steps; 0 disables

    bool operator==(const OutputOptions&) const = default;
};

struct RunConfig {
    Scenario scenario;
    Model model = Model::modified;
    StepperConfig stepper;
    OutputOptions output;
    std::map<std::string, ScalarEnvelope> envelopes;   ///< named envelopes, "g" feeds the presets
    SweepLadder ladder;

    bool operator==(const RunConfig& o) const;
};

/// Parses and validates a JSON config. Throws ConfigError.
RunConfig parse_config(const std::string& text);

/// Reads and parses a config file. Throws std::runtime_error naming the
/// path when the file cannot be read, ConfigError when it is invalid.
RunConfig load_config(const std::filesystem::path& path);

/// Canonical JSON with the scenario written out inline; parse_config of the
/// result reproduces the same RunConfig.
std::string serialize_config(const RunConfig& cfg);

/// 64-bit FNV-1a of serialize_config(cfg), as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

} // namespace cosserat
