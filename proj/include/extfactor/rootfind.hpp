#pragma once

#include <functional>
#include <vector>

namespace extfactor {

using ScalarFunction = std::function<double(double)>;

/// Closed interval [lo, hi] with lo < hi.
struct Bracket {
    double lo;
    double hi;

    Bracket(double lo_, double hi_);

    /// Builds a bracket and checks that f(lo) and f(hi) do not share a strict sign.
    static Bracket checked(const ScalarFunction& f, double lo, double hi);

    double width() const noexcept { return hi - lo; }
    bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

struct RootResult {
    double x = 0.0;
    double f_x = 0.0;
    int iterations = 0;
    bool converged = false;
};

inline constexpr int kBrentMaxIter = 100;
inline constexpr int kFixedPointMaxIter = 200;

/// Brent's method (inverse quadratic interpolation, secant, bisection fallback).
/// Stops when |f(x)| <= tol or the enclosing bracket has shrunk to tol.
/// Throws BracketError when f(lo) and f(hi) have the same strict sign.
RootResult brent(const ScalarFunction& f, Bracket bracket, double tol,
                 int max_iter = kBrentMaxIter);

enum class Monotonicity { increasing, decreasing, constant, mixed };

struct FixedPointResult {
    RootResult root;
    /// x0, x1, ..., x_final
    std::vector<double> iterates;

    /// Direction of the iterate sequence. A trailing zero step does not break
    /// strict monotonicity.
    Monotonicity monotonicity() const;
};

/// Iterates x_{k+1} = g(x_k) from x0 until |x_{k+1} - x_k| <= tol + rel_tol * |x_{k+1}|.
/// Reported f_x is g(x) - x at the returned x. Throws DomainViolation when an
/// iterate leaves [lo, hi]; returns converged == false after max_iter steps.
FixedPointResult fixed_point_iterate(const ScalarFunction& g, double x0, double lo, double hi,
                                     double tol, int max_iter = kFixedPointMaxIter,
                                     double rel_tol = 0.0);

}  // namespace extfactor
