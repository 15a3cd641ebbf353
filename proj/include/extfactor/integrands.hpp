#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace extfactor {

enum class SmoothnessClass { bounded_variation, smooth, antisymmetric };

const char* to_string(SmoothnessClass c) noexcept;

/// Integrand on [0,1]^d with an analytically known mean.
class Integrand {
public:
    using Evaluator = std::function<double(std::span<const double>)>;

    /// Checks `true_mean` against a midpoint-grid quadrature of `evaluator` and
    /// throws DomainError if they differ by more than 1e-6.
    Integrand(Evaluator evaluator, double true_mean, std::string label, SmoothnessClass cls,
              unsigned dimension);

    double operator()(std::span<const double> x) const { return evaluator_(x); }
    double true_mean() const noexcept { return true_mean_; }
    const std::string& label() const noexcept { return label_; }
    SmoothnessClass smoothness() const noexcept { return class_; }
    unsigned dimension() const noexcept { return dimension_; }
    /// Largest |f| seen on the registration grid; the scale for identity residuals.
    double sup_abs() const noexcept { return sup_abs_; }

private:
    Evaluator evaluator_;
    double true_mean_;
    std::string label_;
    SmoothnessClass class_;
    unsigned dimension_;
    double sup_abs_ = 0.0;
};

/// x, x^2, exp(x), xy, x - 1/2.
std::vector<Integrand> standard_integrands();

/// Look up a member of the standard suite by label; throws DomainError if absent.
Integrand standard_integrand(const std::string& label);

}  // namespace extfactor
