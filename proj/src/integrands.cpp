#include "extfactor/integrands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "extfactor/errors.hpp"
#include "extfactor/summation.hpp"

namespace extfactor {

namespace {

constexpr double kMeanCheckTol = 1e-6;

// Midpoint-rule tensor grid. Also tracks max |f|, including the corners, which
// the midpoint nodes never touch.
struct GridCheck {
    double mean;
    double sup_abs;
};

GridCheck grid_check(const Integrand::Evaluator& f, unsigned dims) {
    const unsigned per_axis = dims == 1 ? 20000u : (dims == 2 ? 1000u : 40u);
    if (dims > 4) throw DomainError("integrand registration supports at most 4 dimensions");
    std::size_t total = 1;
    for (unsigned j = 0; j < dims; ++j) total *= per_axis;

    std::vector<double> x(dims);
    CompensatedSum sum;
    double sup_abs = 0.0;
    for (std::size_t cell = 0; cell < total; ++cell) {
        std::size_t rest = cell;
        for (unsigned j = 0; j < dims; ++j) {
            x[j] = (static_cast<double>(rest % per_axis) + 0.5) / per_axis;
            rest /= per_axis;
        }
        const double v = f(x);
        sum.add(v);
        sup_abs = std::max(sup_abs, std::abs(v));
    }
    for (std::size_t corner = 0; corner < (std::size_t{1} << dims); ++corner) {
        for (unsigned j = 0; j < dims; ++j) x[j] = (corner >> j) & 1u ? 1.0 : 0.0;
        sup_abs = std::max(sup_abs, std::abs(f(x)));
    }
    return {sum.value() / static_cast<double>(total), sup_abs};
}

}  // namespace

const char* to_string(SmoothnessClass c) noexcept {
    switch (c) {
        case SmoothnessClass::bounded_variation: return "bounded_variation";
        case SmoothnessClass::smooth: return "smooth";
        case SmoothnessClass::antisymmetric: return "antisymmetric";
    }
    return "unknown";
}

Integrand::Integrand(Evaluator evaluator, double true_mean, std::string label, SmoothnessClass cls,
                     unsigned dimension)
    : evaluator_(std::move(evaluator)),
      true_mean_(true_mean),
      label_(std::move(label)),
      class_(cls),
      dimension_(dimension) {
    if (dimension < 1) throw DomainError("integrand dimension must be >= 1");
    if (!evaluator_) throw DomainError("integrand evaluator is empty");
    const GridCheck check = grid_check(evaluator_, dimension);
    if (!(std::abs(check.mean - true_mean) <= kMeanCheckTol)) {
        throw DomainError("integrand '" + label_ + "': declared mean " +
                          std::to_string(true_mean) + " disagrees with grid quadrature " +
                          std::to_string(check.mean));
    }
    sup_abs_ = check.sup_abs;
}

std::vector<Integrand> standard_integrands() {
    std::vector<Integrand> suite;
    suite.emplace_back([](std::span<const double> x) { return x[0]; }, 0.5, "x",
                       SmoothnessClass::bounded_variation, 1);
    suite.emplace_back([](std::span<const double> x) { return x[0] * x[0]; }, 1.0 / 3.0, "x^2",
                       SmoothnessClass::smooth, 1);
    suite.emplace_back([](std::span<const double> x) { return std::exp(x[0]); },
                       std::numbers::e - 1.0, "exp", SmoothnessClass::smooth, 1);
    suite.emplace_back([](std::span<const double> x) { return x[0] * x[1]; }, 0.25, "xy",
                       SmoothnessClass::smooth, 2);
    suite.emplace_back([](std::span<const double> x) { return x[0] - 0.5; }, 0.0, "x-1/2",
                       SmoothnessClass::antisymmetric, 1);
    return suite;
}

Integrand standard_integrand(const std::string& label) {
    for (auto& f : standard_integrands()) {
        if (f.label() == label) return f;
    }
    throw DomainError("unknown integrand '" + label + "'");
}

}  // namespace extfactor
