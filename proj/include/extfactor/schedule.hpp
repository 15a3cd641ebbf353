#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "extfactor/bounds.hpp"

namespace extfactor {

/// Strictly increasing sample sizes n_1 < n_2 < ..., all >= 1.
class Schedule {
public:
    explicit Schedule(std::vector<std::int64_t> sizes);

    const std::vector<std::int64_t>& sizes() const noexcept { return sizes_; }
    std::size_t size() const noexcept { return sizes_.size(); }
    /// n_{k+1} / n_k for k = 1 .. size()-1
    std::vector<double> ratios() const;

private:
    std::vector<std::int64_t> sizes_;
};

struct Violation {
    /// 1-based index of n_k in the step n_k -> n_{k+1}
    std::size_t k;
    double ratio;
};

struct ScheduleReport {
    std::vector<double> ratios;
    /// rho* the ratios were checked against
    double floor = 0.0;
    std::vector<Violation> violations;
    bool admissible = true;
};

inline constexpr double kDefaultScheduleTol = 1e-9;

/// n_{k+1} = max(n_k + 1, ceil(rho n_k)). Throws SizeError on int64 overflow.
Schedule geometric_schedule(std::int64_t n1, double rho, std::size_t count);

/// n_k = n1 + (k-1) step. Throws SizeError on int64 overflow.
Schedule arithmetic_schedule(std::int64_t n1, std::int64_t step, std::size_t count);

/// Flags every step with n_{k+1}/n_k < rho* - tol.
ScheduleReport validate_schedule(const Schedule& s, const BoundParams& p,
                                 double tol = kDefaultScheduleTol);

}  // namespace extfactor
