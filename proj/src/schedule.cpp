#include "extfactor/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "extfactor/errors.hpp"

namespace extfactor {

namespace {

constexpr auto kMaxSize = std::numeric_limits<std::int64_t>::max();

// ceil(rho * n), treating products within a few ulps of an integer as that integer
// so that e.g. 1.1 * 10 yields 11 rather than 12.
double snapped_ceil(double product) {
    const double nearest = std::round(product);
    if (std::abs(product - nearest) <= 4.0 * std::numeric_limits<double>::epsilon() * product) {
        return nearest;
    }
    return std::ceil(product);
}

}  // namespace

Schedule::Schedule(std::vector<std::int64_t> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.empty()) throw DomainError("schedule must contain at least one size");
    if (sizes_.front() < 1) throw DomainError("schedule sizes must be >= 1");
    for (std::size_t k = 1; k < sizes_.size(); ++k) {
        if (sizes_[k] <= sizes_[k - 1]) {
            throw DomainError("schedule sizes must be strictly increasing (position " +
                              std::to_string(k + 1) + ")");
        }
    }
}

std::vector<double> Schedule::ratios() const {
    std::vector<double> out;
    if (sizes_.size() < 2) return out;
    out.reserve(sizes_.size() - 1);
    for (std::size_t k = 0; k + 1 < sizes_.size(); ++k) {
        out.push_back(static_cast<double>(sizes_[k + 1]) / static_cast<double>(sizes_[k]));
    }
    return out;
}

Schedule geometric_schedule(std::int64_t n1, double rho, std::size_t count) {
    if (n1 < 1) throw DomainError("geometric_schedule: n1 must be >= 1");
    if (!(rho > 1.0) || !std::isfinite(rho)) {
        throw DomainError("geometric_schedule: rho must be a finite value above 1");
    }
    if (count < 1) throw DomainError("geometric_schedule: count must be >= 1");

    std::vector<std::int64_t> sizes;
    sizes.reserve(count);
    sizes.push_back(n1);
    for (std::size_t k = 1; k < count; ++k) {
        const std::int64_t prev = sizes.back();
        const double next = snapped_ceil(rho * static_cast<double>(prev));
        // 2^63 is exactly representable; anything at or above it overflows int64.
        if (prev == kMaxSize || !(next < 0x1.0p63)) {
            throw SizeError("geometric_schedule: size " + std::to_string(k + 1) +
                            " overflows a 64-bit integer");
        }
        sizes.push_back(std::max(prev + 1, static_cast<std::int64_t>(next)));
    }
    return Schedule(std::move(sizes));
}

Schedule arithmetic_schedule(std::int64_t n1, std::int64_t step, std::size_t count) {
    if (n1 < 1) throw DomainError("arithmetic_schedule: n1 must be >= 1");
    if (step < 1) throw DomainError("arithmetic_schedule: step must be >= 1");
    if (count < 1) throw DomainError("arithmetic_schedule: count must be >= 1");
    const auto steps = static_cast<std::int64_t>(count - 1);
    if (count - 1 > static_cast<std::size_t>(kMaxSize) || steps > (kMaxSize - n1) / step) {
        throw SizeError("arithmetic_schedule: last size overflows a 64-bit integer");
    }
    std::vector<std::int64_t> sizes(count);
    for (std::size_t k = 0; k < count; ++k) sizes[k] = n1 + static_cast<std::int64_t>(k) * step;
    return Schedule(std::move(sizes));
}

ScheduleReport validate_schedule(const Schedule& s, const BoundParams& p, double tol) {
    if (!(tol >= 0.0)) throw DomainError("validate_schedule: tol must be >= 0");
    ScheduleReport report;
    report.ratios = s.ratios();
    report.floor = solve_rho_star(p).rho_star;
    for (std::size_t k = 0; k < report.ratios.size(); ++k) {
        if (report.ratios[k] < report.floor - tol) {
            report.violations.push_back({k + 1, report.ratios[k]});
        }
    }
    report.admissible = report.violations.empty();
    return report;
}

}  // namespace extfactor
