#pragma once

// Equal-weight quadrature diagnostics: signed errors eta_n along a sequence, the
// exact one-point and block identities relating them, RMS error over
// randomizations, convergence-rate fits, and the weighted block estimator.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "extfactor/integrands.hpp"
#include "extfactor/sequences.hpp"

namespace extfactor {

struct ErrorProfile {
    std::vector<std::int64_t> sample_sizes;
    /// eta_n = (1/n) sum_{i<=n} f(x_i) - mu, one per sample size
    std::vector<double> eta;
};

struct RateFit {
    /// Fitted d log|error| / d log n, i.e. minus the empirical rate.
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t used = 0;
    /// Exact zeros removed before fitting.
    std::size_t dropped = 0;
};

/// One pass over points 1..max(ns) with a compensated running sum of f - mu.
ErrorProfile eta_profile(const PointSequence& seq, const Integrand& f,
                         std::span<const std::int64_t> ns);

/// | |f(x_{n+1}) - mu| - |(n+1) eta_{n+1} - n eta_n| |. Zero up to rounding.
double sobol_identity_residual(const PointSequence& seq, const Integrand& f, std::int64_t n);

/// Mean of f - mu over points n_lo+1 .. n_hi, summed directly. n_lo = 0 gives eta_{n_hi}.
double block_error(const PointSequence& seq, const Integrand& f, std::int64_t n_lo,
                   std::int64_t n_hi);

/// | block_error - (n_hi eta_{n_hi} - n_lo eta_{n_lo}) / (n_hi - n_lo) |. Zero up to rounding.
double block_identity_residual(const PointSequence& seq, const Integrand& f, std::int64_t n_lo,
                               std::int64_t n_hi);

using SequenceFactory = std::function<PointSequence(std::uint64_t seed)>;

/// Per-replicate statistic: fill `errors` (fixed length) for the randomization `seed`.
using ReplicateErrors = std::function<void(std::uint64_t seed, std::span<double> errors)>;

/// sqrt(mean_r errors_r[j]^2) for each j over `replicates` seeds derived from
/// `master_seed`. Replicates may run on several threads; the reduction order is
/// fixed, so the result does not depend on scheduling.
std::vector<double> replicate_rms(std::size_t width, int replicates, std::uint64_t master_seed,
                                  const ReplicateErrors& errors_for_seed);

/// RMS of eta_n over independent randomizations. Throws DomainError when the
/// factory yields a deterministic sequence or replicates < 2.
double rms_error(const SequenceFactory& factory, const Integrand& f, std::int64_t n,
                 int replicates, std::uint64_t master_seed = 42);

/// rms_error at every n in `ns`, reusing one pass per replicate.
std::vector<double> rms_curve(const SequenceFactory& factory, const Integrand& f,
                              std::span<const std::int64_t> ns, int replicates,
                              std::uint64_t master_seed = 42);

/// Least squares of log|error| on log n. Zeros are dropped and counted; throws
/// InsufficientData with fewer than 3 usable points.
RateFit fit_rate(std::span<const std::int64_t> ns, std::span<const double> errors);
RateFit fit_rate(const ErrorProfile& profile);

/// Splits the first sum(block_sizes) points into consecutive blocks and returns
/// sum_j w_j mean_j with w_j proportional to n_j^a. Requires a >= 1.
double weighted_block_estimate(const PointSequence& seq, const Integrand& f,
                               std::span<const std::int64_t> block_sizes, double a);

}  // namespace extfactor
