#include "extfactor/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "extfactor/errors.hpp"
#include "extfactor/rng.hpp"
#include "extfactor/summation.hpp"

namespace extfactor {

namespace {

void require_compatible(const PointSequence& seq, const Integrand& f) {
    if (seq.dimension() != f.dimension()) {
        throw DomainError("sequence " + seq.name() + " has dimension " +
                          std::to_string(seq.dimension()) + " but integrand '" + f.label() +
                          "' has dimension " + std::to_string(f.dimension()));
    }
}

void require_increasing(std::span<const std::int64_t> ns) {
    if (ns.empty()) throw DomainError("sample sizes must be non-empty");
    if (ns.front() < 1) throw DomainError("sample sizes must be >= 1");
    for (std::size_t k = 1; k < ns.size(); ++k) {
        if (ns[k] <= ns[k - 1]) throw DomainError("sample sizes must be strictly increasing");
    }
}

// n * eta_n for every n in ns, i.e. the running sum of f(x_i) - mu.
void running_deviation_sums(const PointSequence& seq, const Integrand& f,
                            std::span<const std::int64_t> ns, std::span<double> out) {
    std::vector<double> x(seq.dimension());
    CompensatedSum sum;
    const double mu = f.true_mean();
    std::size_t next = 0;
    for (std::int64_t i = 1; next < ns.size(); ++i) {
        seq.point(static_cast<std::uint64_t>(i), x);
        sum.add(f(x) - mu);
        if (i == ns[next]) out[next++] = sum.value();
    }
}

}  // namespace

ErrorProfile eta_profile(const PointSequence& seq, const Integrand& f,
                         std::span<const std::int64_t> ns) {
    require_compatible(seq, f);
    require_increasing(ns);
    ErrorProfile profile;
    profile.sample_sizes.assign(ns.begin(), ns.end());
    profile.eta.resize(ns.size());
    running_deviation_sums(seq, f, ns, profile.eta);
    for (std::size_t k = 0; k < ns.size(); ++k) profile.eta[k] /= static_cast<double>(ns[k]);
    return profile;
}

double sobol_identity_residual(const PointSequence& seq, const Integrand& f, std::int64_t n) {
    if (n < 1) throw DomainError("sobol_identity_residual: n must be >= 1");
    const std::int64_t ns[] = {n, n + 1};
    const ErrorProfile profile = eta_profile(seq, f, ns);
    const std::vector<double> x = seq.point(static_cast<std::uint64_t>(n + 1));
    const double lhs = std::abs(f(x) - f.true_mean());
    const double rhs = std::abs(static_cast<double>(n + 1) * profile.eta[1] -
                                static_cast<double>(n) * profile.eta[0]);
    return std::abs(lhs - rhs);
}

double block_error(const PointSequence& seq, const Integrand& f, std::int64_t n_lo,
                   std::int64_t n_hi) {
    require_compatible(seq, f);
    if (n_lo < 0 || n_hi <= n_lo) throw DomainError("block_error: need 0 <= n_lo < n_hi");
    std::vector<double> x(seq.dimension());
    CompensatedSum sum;
    for (std::int64_t i = n_lo + 1; i <= n_hi; ++i) {
        seq.point(static_cast<std::uint64_t>(i), x);
        sum.add(f(x) - f.true_mean());
    }
    return sum.value() / static_cast<double>(n_hi - n_lo);
}

double block_identity_residual(const PointSequence& seq, const Integrand& f, std::int64_t n_lo,
                               std::int64_t n_hi) {
    const double direct = block_error(seq, f, n_lo, n_hi);
    double eta_lo = 0.0;
    double eta_hi;
    if (n_lo == 0) {
        const std::int64_t ns[] = {n_hi};
        eta_hi = eta_profile(seq, f, ns).eta[0];
    } else {
        const std::int64_t ns[] = {n_lo, n_hi};
        const ErrorProfile profile = eta_profile(seq, f, ns);
        eta_lo = profile.eta[0];
        eta_hi = profile.eta[1];
    }
    const double via_eta =
        (static_cast<double>(n_hi) * eta_hi - static_cast<double>(n_lo) * eta_lo) /
        static_cast<double>(n_hi - n_lo);
    return std::abs(direct - via_eta);
}

std::vector<double> replicate_rms(std::size_t width, int replicates, std::uint64_t master_seed,
                                  const ReplicateErrors& errors_for_seed) {
    if (replicates < 2) throw DomainError("replicates must be >= 2");
    const auto reps = static_cast<std::size_t>(replicates);
    std::vector<double> squared(reps * width, 0.0);

    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, reps);
    std::vector<std::exception_ptr> failures(workers);
    auto run = [&](std::size_t worker) {
        try {
            std::vector<double> errs(width);
            for (std::size_t r = worker; r < reps; r += workers) {
                std::fill(errs.begin(), errs.end(), 0.0);
                errors_for_seed(derive_seed(master_seed, r), errs);
                for (std::size_t j = 0; j < width; ++j) squared[r * width + j] = errs[j] * errs[j];
            }
        } catch (...) {
            failures[worker] = std::current_exception();
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }
    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }

    std::vector<double> rms(width);
    for (std::size_t j = 0; j < width; ++j) {
        CompensatedSum sum;
        for (std::size_t r = 0; r < reps; ++r) sum.add(squared[r * width + j]);
        rms[j] = std::sqrt(sum.value() / static_cast<double>(reps));
    }
    return rms;
}

std::vector<double> rms_curve(const SequenceFactory& factory, const Integrand& f,
                              std::span<const std::int64_t> ns, int replicates,
                              std::uint64_t master_seed) {
    require_increasing(ns);
    if (replicates < 2) throw DomainError("replicates must be >= 2");
    {
        const PointSequence probe = factory(derive_seed(master_seed, 0));
        if (!probe.randomized()) {
            throw DomainError("rms_error: sequence " + probe.name() +
                              " is deterministic; RMS needs a randomized sequence");
        }
        require_compatible(probe, f);
    }
    return replicate_rms(ns.size(), replicates, master_seed,
                         [&](std::uint64_t seed, std::span<double> errors) {
                             const PointSequence seq = factory(seed);
                             running_deviation_sums(seq, f, ns, errors);
                             for (std::size_t k = 0; k < ns.size(); ++k) {
                                 errors[k] /= static_cast<double>(ns[k]);
                             }
                         });
}

double rms_error(const SequenceFactory& factory, const Integrand& f, std::int64_t n,
                 int replicates, std::uint64_t master_seed) {
    const std::int64_t ns[] = {n};
    return rms_curve(factory, f, ns, replicates, master_seed)[0];
}

RateFit fit_rate(std::span<const std::int64_t> ns, std::span<const double> errors) {
    if (ns.size() != errors.size()) throw DomainError("fit_rate: length mismatch");
    std::vector<double> lx;
    std::vector<double> ly;
    RateFit fit;
    for (std::size_t k = 0; k < ns.size(); ++k) {
        if (ns[k] < 1) throw DomainError("fit_rate: sample sizes must be >= 1");
        if (errors[k] == 0.0) {
            ++fit.dropped;
            continue;
        }
        if (!std::isfinite(errors[k])) throw DomainError("fit_rate: non-finite error value");
        lx.push_back(std::log(static_cast<double>(ns[k])));
        ly.push_back(std::log(std::abs(errors[k])));
    }
    fit.used = lx.size();
    if (fit.used < 3) {
        throw InsufficientData("fit_rate: need at least 3 nonzero errors, have " +
                               std::to_string(fit.used) + " (" + std::to_string(fit.dropped) +
                               " zeros dropped)");
    }
    const double count = static_cast<double>(fit.used);
    const double mean_x = compensated_sum(lx) / count;
    const double mean_y = compensated_sum(ly) / count;
    CompensatedSum sxx;
    CompensatedSum sxy;
    CompensatedSum syy;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        const double dx = lx[k] - mean_x;
        const double dy = ly[k] - mean_y;
        sxx.add(dx * dx);
        sxy.add(dx * dy);
        syy.add(dy * dy);
    }
    if (!(sxx.value() > 0.0)) throw InsufficientData("fit_rate: all sample sizes are equal");
    fit.slope = sxy.value() / sxx.value();
    fit.intercept = mean_y - fit.slope * mean_x;
    if (syy.value() > 0.0) {
        const double ss_res = std::max(0.0, syy.value() - fit.slope * sxy.value());
        fit.r_squared = std::clamp(1.0 - ss_res / syy.value(), 0.0, 1.0);
    } else {
        fit.r_squared = 1.0;
    }
    return fit;
}

RateFit fit_rate(const ErrorProfile& profile) { return fit_rate(profile.sample_sizes, profile.eta); }

double weighted_block_estimate(const PointSequence& seq, const Integrand& f,
                               std::span<const std::int64_t> block_sizes, double a) {
    require_compatible(seq, f);
    if (block_sizes.empty()) throw DomainError("weighted_block_estimate: no blocks");
    if (!(a >= 1.0)) throw DomainError("weighted_block_estimate: exponent a must be >= 1");
    for (std::int64_t nj : block_sizes) {
        if (nj < 1) throw DomainError("weighted_block_estimate: block sizes must be >= 1");
    }

    // Normalize weights relative to the largest block to keep n_j^a finite.
    const double largest = static_cast<double>(*std::max_element(block_sizes.begin(),
                                                                 block_sizes.end()));
    std::vector<double> weights(block_sizes.size());
    for (std::size_t j = 0; j < block_sizes.size(); ++j) {
        weights[j] = std::pow(static_cast<double>(block_sizes[j]) / largest, a);
    }
    const double total_weight = compensated_sum(weights);

    std::vector<double> x(seq.dimension());
    CompensatedSum estimate;
    std::uint64_t index = 1;
    for (std::size_t j = 0; j < block_sizes.size(); ++j) {
        CompensatedSum block;
        for (std::int64_t i = 0; i < block_sizes[j]; ++i) {
            seq.point(index++, x);
            block.add(f(x));
        }
        const double block_mean = block.value() / static_cast<double>(block_sizes[j]);
        estimate.add(weights[j] / total_weight * block_mean);
    }
    return estimate.value();
}

}  // namespace extfactor
