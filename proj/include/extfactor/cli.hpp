#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace extfactor::cli {

enum class Command { bound, curve, schedule, validate, experiment, identity_check };
enum class Format { csv, pretty };

enum ExitCode : int {
    kOk = 0,
    kPropertyFailure = 1,
    kUsageError = 2,
    kIoError = 3,
};

struct RunConfig {
    Command command = Command::bound;
    std::optional<double> alpha;
    std::optional<double> m;
    std::optional<double> big_m;
    std::optional<double> rho;
    std::optional<double> gamma;
    double beta = 0.0;
    std::optional<std::int64_t> n1;
    std::optional<std::int64_t> count;
    std::optional<std::int64_t> step;
    std::optional<std::string> sizes;
    std::uint64_t seed = 42;
    int replicates = 200;
    double tol = 1e-12;
    double schedule_tol = 1e-9;
    bool printed_inefficiency = false;
    double alpha_min = 1.1;
    double alpha_max = 4.0;
    double alpha_step = 0.05;
    std::vector<double> ratios = {1.0, 0.5, 0.2, 0.1, 0.01};
    std::string output_path;  // empty: stdout
    std::optional<Format> format;
};

/// Throws DomainError naming the first missing or inconsistent field.
void validate(const RunConfig& config);

/// Runs one command. CSV/pretty output goes to `out` (or --output), diagnostics and
/// experiment summaries to `err`. Returns an ExitCode.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (including argv[0]) and executes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Parses "100,200,300" into sizes; throws DomainError when malformed.
std::vector<std::int64_t> parse_size_list(const std::string& text);

/// 12 significant digits, '.' decimal separator.
std::string format_real(double value);

}  // namespace extfactor::cli
