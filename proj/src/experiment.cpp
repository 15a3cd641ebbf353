#include "extfactor/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <span>

#include "extfactor/integrands.hpp"
#include "extfactor/quadrature.hpp"
#include "extfactor/rng.hpp"
#include "extfactor/sequences.hpp"

namespace extfactor {

namespace {

constexpr double kIidSlopeLo = -0.6;
constexpr double kIidSlopeHi = -0.4;
constexpr double kFastSlopeMax = -1.3;
constexpr double kOffScheduleMin = 1.5;
constexpr int kOffScheduleK = 10;
constexpr double kBlockWeightExponent = 2.0;
constexpr int kWeightedMinLog2 = 6;

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::vector<PointSequence> identity_sequences(std::uint64_t seed) {
    const auto vdc2 = PointSequence::van_der_corput(2);
    const auto halton2 = PointSequence::halton(2);
    return {
        vdc2,
        PointSequence::van_der_corput(3),
        halton2,
        PointSequence::iid_uniform(seed, 1),
        PointSequence::iid_uniform(seed, 2),
        PointSequence::random_shift(vdc2, seed),
        PointSequence::random_shift(halton2, seed),
        PointSequence::scrambled_base2(seed),
    };
}

struct Generator {
    std::string name;
    // Factory for a given integrand dimension, or empty when unsupported.
    std::function<std::optional<SequenceFactory>(unsigned dims)> for_dimension;
};

std::vector<Generator> rms_generators() {
    return {
        {"iid",
         [](unsigned dims) -> std::optional<SequenceFactory> {
             return [dims](std::uint64_t seed) { return PointSequence::iid_uniform(seed, dims); };
         }},
        {"shifted",
         [](unsigned dims) -> std::optional<SequenceFactory> {
             const PointSequence base =
                 dims == 1 ? PointSequence::van_der_corput(2) : PointSequence::halton(dims);
             return [base](std::uint64_t seed) { return PointSequence::random_shift(base, seed); };
         }},
        {"scrambled",
         [](unsigned dims) -> std::optional<SequenceFactory> {
             if (dims != 1) return std::nullopt;
             return [](std::uint64_t seed) { return PointSequence::scrambled_base2(seed); };
         }},
    };
}

std::vector<std::int64_t> powers_of_two(int lo, int hi) {
    std::vector<std::int64_t> ns;
    for (int k = lo; k <= hi; ++k) ns.push_back(std::int64_t{1} << k);
    return ns;
}

void append_curve(std::vector<RmsRow>& rows, const std::string& generator,
                  const std::string& integrand, const std::vector<std::int64_t>& ns,
                  const std::vector<double>& rms) {
    for (std::size_t j = 0; j < ns.size(); ++j) {
        RmsRow row{generator, integrand, ns[j], rms[j], std::nullopt};
        if (j >= 2) {
            try {
                row.slope_so_far = fit_rate(std::span(ns).first(j + 1),
                                            std::span(rms).first(j + 1))
                                       .slope;
            } catch (const std::exception&) {
                // fewer than three nonzero RMS values so far
            }
        }
        rows.push_back(std::move(row));
    }
}

std::optional<double> final_slope(const std::vector<RmsRow>& rows, const std::string& generator,
                                  const std::string& integrand) {
    std::optional<double> slope;
    for (const auto& row : rows) {
        if (row.generator == generator && row.integrand == integrand) slope = row.slope_so_far;
    }
    return slope;
}

PropertyCheck slope_check(const std::string& name, std::optional<double> slope, double lo,
                          double hi) {
    PropertyCheck check{name, false, "slope unavailable"};
    if (slope) {
        check.pass = *slope >= lo && *slope <= hi;
        check.detail = "slope " + format_value(*slope) + " in [" + format_value(lo) + ", " +
                       format_value(hi) + "]";
    }
    return check;
}

}  // namespace

std::vector<IdentityRow> run_identity_suite(std::uint64_t seed) {
    static constexpr std::int64_t kOnePoint[] = {1,  2,   3,   4,   5,    7,    8,    15,  16,
                                                 31, 32,  100, 255, 256,  1000, 2047, 4095};
    static constexpr std::pair<std::int64_t, std::int64_t> kBlocks[] = {
        {0, 4}, {2, 4}, {4, 8}, {10, 17}, {16, 32}, {100, 300}, {1024, 2048}, {2048, 4096}};

    std::vector<IdentityRow> rows;
    const auto integrands = standard_integrands();
    for (const auto& seq : identity_sequences(seed)) {
        for (const auto& f : integrands) {
            if (f.dimension() != seq.dimension()) continue;
            const double scale = f.sup_abs() > 0.0 ? f.sup_abs() : 1.0;
            for (std::int64_t n : kOnePoint) {
                const double r = sobol_identity_residual(seq, f, n);
                rows.push_back({seq.name(), f.label(), "sobol", n, n + 1, r,
                                r / (static_cast<double>(n + 1) * scale)});
            }
            for (auto [lo, hi] : kBlocks) {
                const double r = block_identity_residual(seq, f, lo, hi);
                const double block_scale = static_cast<double>(hi) / static_cast<double>(hi - lo);
                rows.push_back({seq.name(), f.label(), "block", lo, hi, r, r / (block_scale * scale)});
            }
        }
    }
    return rows;
}

double off_schedule_ratio(int k, int replicates, std::uint64_t seed) {
    const Integrand f = standard_integrand("x^2");
    const SequenceFactory factory = [](std::uint64_t s) { return PointSequence::scrambled_base2(s); };
    const std::int64_t lo = std::int64_t{1} << k;
    const std::int64_t mid = 3 * lo / 2;
    const std::int64_t ns[] = {lo, mid, 2 * lo};
    const auto rms = rms_curve(factory, f, ns, replicates, seed);
    const double t = std::log(1.5) / std::log(2.0);
    const double interpolated = std::exp((1.0 - t) * std::log(rms[0]) + t * std::log(rms[2]));
    return rms[1] / interpolated;
}

bool ExperimentResult::identities_ok() const {
    return std::all_of(identities.begin(), identities.end(),
                       [](const IdentityRow& r) { return r.relative <= kIdentityRelTol; });
}

bool ExperimentResult::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.pass; });
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    ExperimentResult result;
    result.identities = run_identity_suite(config.seed);
    {
        double worst = 0.0;
        for (const auto& r : result.identities) worst = std::max(worst, r.relative);
        result.checks.push_back({"identity_residuals", result.identities_ok(),
                                 std::to_string(result.identities.size()) +
                                     " cases, max relative residual " + format_value(worst)});
    }

    const auto ns = powers_of_two(config.min_log2, config.max_log2);
    const auto integrands = standard_integrands();
    for (const auto& gen : rms_generators()) {
        for (const auto& f : integrands) {
            const auto factory = gen.for_dimension(f.dimension());
            if (!factory) continue;
            const auto rms = rms_curve(*factory, f, ns, config.replicates, config.seed);
            append_curve(result.rms, gen.name, f.label(), ns, rms);
        }
    }

    // Weighted block estimator: blocks 1, 2, 4, ..., 2^(J-1), total n = 2^J - 1.
    {
        const Integrand f = standard_integrand("x^2");
        const int first_j = std::max(config.min_log2, kWeightedMinLog2);
        std::vector<std::int64_t> totals;
        for (int j = first_j; j <= config.max_log2; ++j) totals.push_back((std::int64_t{1} << j) - 1);
        const auto rms = replicate_rms(
            totals.size(), config.replicates, config.seed,
            [&](std::uint64_t seed, std::span<double> errors) {
                const PointSequence seq = PointSequence::scrambled_base2(seed);
                for (std::size_t t = 0; t < totals.size(); ++t) {
                    std::vector<std::int64_t> blocks;
                    for (int b = 0; b < first_j + static_cast<int>(t); ++b) {
                        blocks.push_back(std::int64_t{1} << b);
                    }
                    errors[t] = weighted_block_estimate(seq, f, blocks, kBlockWeightExponent) -
                                f.true_mean();
                }
            });
        append_curve(result.rms, "weighted_scrambled", f.label(), totals, rms);
    }

    // Off-schedule sizes 3*2^(k-1) for the scrambled sequence.
    {
        const Integrand f = standard_integrand("x^2");
        std::vector<std::int64_t> off;
        for (int k = config.min_log2 + 1; k <= config.max_log2; ++k) off.push_back(3 * (std::int64_t{1} << (k - 1)));
        const SequenceFactory factory = [](std::uint64_t s) { return PointSequence::scrambled_base2(s); };
        append_curve(result.rms, "scrambled_offschedule", f.label(), off,
                     rms_curve(factory, f, off, config.replicates, config.seed));
    }

    result.checks.push_back(slope_check("iid_rate_x", final_slope(result.rms, "iid", "x"),
                                        kIidSlopeLo, kIidSlopeHi));
    result.checks.push_back(slope_check("scrambled_rate_x^2",
                                        final_slope(result.rms, "scrambled", "x^2"),
                                        -std::numeric_limits<double>::infinity(), kFastSlopeMax));
    result.checks.push_back(slope_check("weighted_block_rate_x^2",
                                        final_slope(result.rms, "weighted_scrambled", "x^2"),
                                        -std::numeric_limits<double>::infinity(), kFastSlopeMax));
    if (config.max_log2 > kOffScheduleK) {
        const double ratio = off_schedule_ratio(kOffScheduleK, config.replicates, config.seed);
        result.checks.push_back({"off_schedule_degradation", ratio >= kOffScheduleMin,
                                 "RMS(1536) / interpolated = " + format_value(ratio) +
                                     " >= " + format_value(kOffScheduleMin)});
    }
    return result;
}

}  // namespace extfactor
