#pragma once

// The registered empirical suite: identity residuals over a cross-product of
// sequences, integrands and sample sizes; RMS curves for randomized generators;
// rate fits and the property checks built on them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace extfactor {

inline constexpr double kIdentityRelTol = 1e-10;

struct IdentityRow {
    std::string generator;
    std::string integrand;
    /// "sobol" (one-point identity) or "block"
    std::string kind;
    std::int64_t n_lo = 0;
    std::int64_t n_hi = 0;
    double residual = 0.0;
    /// residual divided by the magnitude of the terms being compared
    double relative = 0.0;
};

/// Every (sequence, integrand, n) case of the registered identity cross-product.
std::vector<IdentityRow> run_identity_suite(std::uint64_t seed);

struct RmsRow {
    std::string generator;
    std::string integrand;
    std::int64_t n = 0;
    double rms = 0.0;
    /// Rate fitted over this row and all earlier rows of the same curve (>= 3 points).
    std::optional<double> slope_so_far;
};

struct PropertyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ExperimentConfig {
    std::uint64_t seed = 42;
    int replicates = 200;
    int min_log2 = 4;
    int max_log2 = 12;
};

struct ExperimentResult {
    std::vector<IdentityRow> identities;
    std::vector<RmsRow> rms;
    std::vector<PropertyCheck> checks;

    bool identities_ok() const;
    bool all_passed() const;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

/// For scrambled base-2 van der Corput on x^2: RMS at n = 3*2^k/2 divided by the
/// log-log interpolation between the RMS at 2^k and at 2^(k+1).
double off_schedule_ratio(int k, int replicates, std::uint64_t seed);

}  // namespace extfactor
