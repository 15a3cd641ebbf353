#pragma once

// Critical extension factor for rate-optimal extensible equal-weight rules.
//
// A class with worst-case (or RMS) lower bound m n^-alpha and a sequence attaining
// M n^-alpha at sizes n_1 < n_2 < ... forces every step ratio rho = n_{k+1}/n_k to
// satisfy rho >= g(rho) with
//
//     g(rho) = 1 + [ (m/M) / (1 + rho^(1-alpha)) ]^(1/(alpha-1)).
//
// g maps [1,2] into (1,2) with Lipschitz constant below one, so the admissible set
// is [rho*, inf) for the unique fixed point rho* in (1,2).
//
// Near rho = 1 the interesting quantity is rho - 1, which can be far below the
// double resolution at 1 (alpha = 1.1, m/M = 0.01 gives rho* - 1 ~ 1e-23). The
// solver therefore works on the excess h = rho - 1 and reports the margins to the
// floor and to 2 as separately computed quantities.

#include <cstdint>

namespace extfactor {

inline constexpr double kDefaultSolveTol = 1e-12;
/// Above this alpha, rho* may round to 2.0 in double; use gap_to_two instead.
inline constexpr double kAlphaCap = 64.0;

/// Rate exponent alpha and the lower/upper error constants m, M.
class BoundParams {
public:
    /// Throws DomainError unless alpha > 1 and 0 < m <= M < inf, and the closed-form
    /// floor excess (m/2M)^(1/(alpha-1)) is representable as a positive double.
    BoundParams(double alpha, double m, double big_m);

    double alpha() const noexcept { return alpha_; }
    double m() const noexcept { return m_; }
    double big_m() const noexcept { return big_m_; }
    /// m / M, in (0, 1].
    double ratio() const noexcept { return m_ / big_m_; }

private:
    double alpha_;
    double m_;
    double big_m_;
};

enum class SolveMethod { fixed_point, brent, agreement_of_both };

const char* to_string(SolveMethod method) noexcept;

struct ExtensionSolution {
    double rho_star = 0.0;
    /// rho* - 1, accurate to relative precision.
    double excess = 0.0;
    /// 2 - rho*, computed without cancellation.
    double gap_to_two = 0.0;
    /// (rho* - 1) / (floor - 1) - 1, computed without cancellation; > 0 iff rho* > floor.
    double floor_margin = 0.0;
    /// |g(rho*) - rho*|
    double residual = 0.0;
    int iterations = 0;
    int brent_iterations = 0;
    /// |fixed-point answer - Brent answer|
    double solver_disagreement = 0.0;
    SolveMethod method = SolveMethod::agreement_of_both;
    /// alpha > kAlphaCap: rho_star may be rounded to 2, gap_to_two carries the value.
    bool large_alpha = false;
};

/// g(rho). Requires rho >= 1.
double fixed_point_map(double rho, const BoundParams& p);

/// g(1 + h) - 1, evaluated without forming 1 + h. Requires h >= 0.
double excess_map(double h, const BoundParams& p);

/// g'(rho). Requires rho >= 1.
double map_derivative(double rho, const BoundParams& p);

/// g(1) = 1 + (m/(2M))^(1/(alpha-1)).
double closed_form_floor(const BoundParams& p);

/// (m/(2M))^(1/(alpha-1)), the floor minus one.
double closed_form_floor_excess(const BoundParams& p);

/// lambda = (m/M)^(1/(alpha-1)) 2^(-1/(alpha-1)-1), an upper bound on g' over [1,2].
double lipschitz_bound(const BoundParams& p);

/// Solves g(rho) = rho twice (fixed-point iteration from rho = 1, Brent on [1,2]) and
/// checks that the answers agree within 10 * tol. Throws SolverError on failure.
ExtensionSolution solve_rho_star(const BoundParams& p, double tol = kDefaultSolveTol);

/// rho >= g(rho) - tol. Requires rho > 1.
bool is_admissible_extension(double rho, const BoundParams& p, double tol = kDefaultSolveTol);

enum class InefficiencyForm {
    /// (1 + rho^(1-alpha))^-1 (rho - 1)^(1-alpha); exact inverse of the bound.
    rearranged,
    /// (1 + rho^(1-alpha))^(-1/(alpha-1)) / (rho - 1); kept for comparison.
    printed,
};

/// Smallest M/m compatible with a rate-optimal sequence that takes a step of ratio
/// rho. Requires 1 < rho < 2 and alpha > 1. Diverges as rho -> 1.
double min_inefficiency(double rho, double alpha,
                        InefficiencyForm form = InefficiencyForm::rearranged);

/// Rate n^-alpha log(n)^beta with a surrogate exponent 1 < gamma < alpha.
class LogRateParams {
public:
    LogRateParams(BoundParams base, double beta, double gamma);

    const BoundParams& base() const noexcept { return base_; }
    /// Stored only; the asymptotic floor does not depend on it.
    double beta() const noexcept { return beta_; }
    double gamma() const noexcept { return gamma_; }

private:
    BoundParams base_;
    double beta_;
    double gamma_;
};

/// 1 + (m/(2M))^(1/(gamma-1)), the step-ratio floor for large n_k under a log-factor rate.
double log_rate_floor(const LogRateParams& lp);

}  // namespace extfactor
