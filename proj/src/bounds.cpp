#include "extfactor/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "extfactor/errors.hpp"
#include "extfactor/rootfind.hpp"

namespace extfactor {

namespace {

void require_rho(double rho, const char* where) {
    if (!(rho >= 1.0) || std::isnan(rho)) {
        throw DomainError(std::string(where) + ": rho must be >= 1");
    }
}

// e(h) = (1+h)^(1-alpha) - 1, in (-1, 0] for h >= 0.
double power_term_minus_one(double h, double alpha) {
    return std::expm1((1.0 - alpha) * std::log1p(h));
}

// log of excess_map(h).
double log_excess_map(double h, const BoundParams& p) {
    const double e = power_term_minus_one(h, p.alpha());
    return (std::log(p.ratio()) - std::log(2.0 + e)) / (p.alpha() - 1.0);
}

double log_floor_excess(double alpha, double ratio) {
    return (std::log(ratio) - std::numbers::ln2) / (alpha - 1.0);
}

}  // namespace

BoundParams::BoundParams(double alpha, double m, double big_m)
    : alpha_(alpha), m_(m), big_m_(big_m) {
    if (!std::isfinite(alpha) || !(alpha > 1.0)) {
        throw DomainError("alpha must exceed 1");
    }
    if (!std::isfinite(m) || !(m > 0.0)) {
        throw DomainError("m must be positive");
    }
    if (!std::isfinite(big_m) || !(big_m >= m)) {
        throw DomainError("M must be finite and at least m");
    }
    const double log_floor = log_floor_excess(alpha, m / big_m);
    if (!(std::exp(log_floor) > 0.0)) {
        throw DomainError("alpha is too close to 1: floor excess (m/2M)^(1/(alpha-1)) underflows");
    }
}

const char* to_string(SolveMethod method) noexcept {
    switch (method) {
        case SolveMethod::fixed_point: return "fixed_point";
        case SolveMethod::brent: return "brent";
        case SolveMethod::agreement_of_both: return "agreement_of_both";
    }
    return "unknown";
}

double excess_map(double h, const BoundParams& p) {
    if (!(h >= 0.0) || std::isnan(h)) throw DomainError("excess_map: h must be >= 0");
    return std::exp(log_excess_map(h, p));
}

double fixed_point_map(double rho, const BoundParams& p) {
    require_rho(rho, "fixed_point_map");
    return 1.0 + excess_map(rho - 1.0, p);
}

double map_derivative(double rho, const BoundParams& p) {
    require_rho(rho, "map_derivative");
    const double a = p.alpha();
    const double inv = 1.0 / (a - 1.0);
    const double log_one_plus = std::log1p(std::pow(rho, 1.0 - a));
    return std::exp(inv * std::log(p.ratio()) - (inv + 1.0) * log_one_plus - a * std::log(rho));
}

double closed_form_floor_excess(const BoundParams& p) {
    return std::exp(log_floor_excess(p.alpha(), p.ratio()));
}

double closed_form_floor(const BoundParams& p) { return 1.0 + closed_form_floor_excess(p); }

double lipschitz_bound(const BoundParams& p) {
    const double inv = 1.0 / (p.alpha() - 1.0);
    return std::exp(inv * std::log(p.ratio()) - (inv + 1.0) * std::numbers::ln2);
}

ExtensionSolution solve_rho_star(const BoundParams& p, double tol) {
    if (!(tol > 0.0)) throw DomainError("solve_rho_star: tol must be positive");

    const ScalarFunction map = [&p](double h) { return excess_map(h, p); };

    // Relative stopping on h: rho* - 1 may be far below tol.
    FixedPointResult fp;
    try {
        fp = fixed_point_iterate(map, 0.0, 0.0, 1.0, 0.0, kFixedPointMaxIter, tol);
    } catch (const DomainViolation& err) {
        throw SolverError(std::string("solve_rho_star: ") + err.what(), 1.0 + err.iterate());
    }
    if (!fp.root.converged) {
        throw SolverError("solve_rho_star: fixed-point iteration did not converge",
                          1.0 + fp.root.x);
    }

    const ScalarFunction residual = [&p](double h) { return excess_map(h, p) - h; };
    const RootResult br = brent(residual, Bracket(0.0, 1.0), tol, kBrentMaxIter);
    if (!br.converged) {
        throw SolverError("solve_rho_star: Brent did not converge", 1.0 + br.x);
    }

    const double h = fp.root.x;
    const double disagreement = std::abs(h - br.x);
    if (disagreement > 10.0 * tol) {
        throw SolverError("solve_rho_star: fixed-point and Brent answers disagree by " +
                              std::to_string(disagreement),
                          1.0 + h);
    }

    ExtensionSolution sol;
    sol.excess = h;
    sol.rho_star = 1.0 + h;
    sol.gap_to_two = 0.0 - std::expm1(log_excess_map(h, p));
    const double e = power_term_minus_one(h, p.alpha());
    sol.floor_margin = std::expm1(-std::log1p(0.5 * e) / (p.alpha() - 1.0));
    sol.residual = std::abs(fp.root.f_x);
    sol.iterations = fp.root.iterations;
    sol.brent_iterations = br.iterations;
    sol.solver_disagreement = disagreement;
    sol.method = SolveMethod::agreement_of_both;
    sol.large_alpha = p.alpha() > kAlphaCap;
    return sol;
}

bool is_admissible_extension(double rho, const BoundParams& p, double tol) {
    if (!(rho > 1.0) || std::isnan(rho)) {
        throw DomainError("is_admissible_extension: rho must exceed 1");
    }
    return rho >= fixed_point_map(rho, p) - tol;
}

double min_inefficiency(double rho, double alpha, InefficiencyForm form) {
    if (!std::isfinite(alpha) || !(alpha > 1.0)) throw DomainError("alpha must exceed 1");
    if (!(rho > 1.0 && rho < 2.0)) throw DomainError("min_inefficiency: rho must lie in (1, 2)");
    const double log_one_plus = std::log1p(std::pow(rho, 1.0 - alpha));
    const double log_excess = std::log(rho - 1.0);
    switch (form) {
        case InefficiencyForm::rearranged:
            return std::exp(-log_one_plus - (alpha - 1.0) * log_excess);
        case InefficiencyForm::printed:
            return std::exp(-log_one_plus / (alpha - 1.0) - log_excess);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

LogRateParams::LogRateParams(BoundParams base, double beta, double gamma)
    : base_(base), beta_(beta), gamma_(gamma) {
    if (!std::isfinite(beta) || !(beta >= 0.0)) throw DomainError("beta must be >= 0");
    if (!(gamma > 1.0 && gamma < base.alpha())) {
        throw DomainError("gamma must lie strictly between 1 and alpha");
    }
}

double log_rate_floor(const LogRateParams& lp) {
    const double r = lp.base().ratio();
    return 1.0 + std::exp((std::log(r) - std::numbers::ln2) / (lp.gamma() - 1.0));
}

}  // namespace extfactor
