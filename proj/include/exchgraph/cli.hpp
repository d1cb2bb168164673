#pragma once
// Subcommands behind the `exchgraph` executable.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "exchgraph/serialize.hpp"

namespace exchgraph::cli {

inline constexpr const char* kSchema = "exchgraph/1";

enum ExitCode : int { kPass = 0, kUsageOrIo = 1, kStatFail = 2 };

struct Options {
    std::string command;
    std::filesystem::path config;
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> out;
    unsigned threads = 1;
};

/// Reads the config file, checks "schema", applies --seed and --out, and
/// fills defaults. The returned object is what reports embed.
json load_config(const Options& opt);

struct Outcome {
    int exit_code = kPass;
    json summary;  // also written to <out>/<command>.json
};

/// Runs one subcommand on a resolved config. Files go to the config's
/// output_dir. Thread count never reaches any output.
Outcome run(const std::string& command, const json& config, unsigned threads);

/// Full entry point used by the executable: load, run, map errors to exit
/// codes. Diagnostics go to `err`.
int main_with(const Options& opt, std::ostream& err);

}  // namespace exchgraph::cli
