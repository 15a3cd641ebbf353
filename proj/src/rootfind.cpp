#include "extfactor/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "extfactor/errors.hpp"

namespace extfactor {

Bracket::Bracket(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi)) {
        throw DomainError("bracket requires finite lo < hi");
    }
}

Bracket Bracket::checked(const ScalarFunction& f, double lo, double hi) {
    Bracket b(lo, hi);
    const double flo = f(lo);
    const double fhi = f(hi);
    if ((flo > 0.0 && fhi > 0.0) || (flo < 0.0 && fhi < 0.0)) {
        throw BracketError("function does not change sign on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    }
    return b;
}

RootResult brent(const ScalarFunction& f, Bracket bracket, double tol, int max_iter) {
    if (!(tol > 0.0)) throw DomainError("brent: tol must be positive");
    constexpr double eps = std::numeric_limits<double>::epsilon();

    double a = bracket.lo;
    double b = bracket.hi;
    double fa = f(a);
    double fb = f(b);
    if ((fa > 0.0 && fb > 0.0) || (fa < 0.0 && fb < 0.0)) {
        throw BracketError("brent: no sign change on bracket");
    }
    if (fa == 0.0) return {a, fa, 0, true};
    if (fb == 0.0) return {b, fb, 0, true};

    // b is the best estimate, a the previous one, c the contrapoint with f(c) of opposite sign.
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;

    for (int iter = 1; iter <= max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || std::abs(fb) <= tol || fb == 0.0) {
            return {b, fb, iter, true};
        }

        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p;
            double q;
            const double s = fb / fa;
            if (a == c) {
                // secant
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                // inverse quadratic interpolation
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if (std::abs(d) > tol1) {
            b += d;
        } else {
            b += (xm > 0.0 ? tol1 : -tol1);
        }
        fb = f(b);
    }
    return {b, fb, max_iter, false};
}

Monotonicity FixedPointResult::monotonicity() const {
    bool up = false;
    bool down = false;
    bool flat_inside = false;
    const std::size_t steps = iterates.size() < 2 ? 0 : iterates.size() - 1;
    for (std::size_t k = 0; k < steps; ++k) {
        const double step = iterates[k + 1] - iterates[k];
        if (step > 0.0) {
            up = true;
        } else if (step < 0.0) {
            down = true;
        } else if (k + 1 < steps) {
            flat_inside = true;
        }
    }
    if (up && down) return Monotonicity::mixed;
    if (flat_inside && (up || down)) return Monotonicity::mixed;
    if (up) return Monotonicity::increasing;
    if (down) return Monotonicity::decreasing;
    return Monotonicity::constant;
}

FixedPointResult fixed_point_iterate(const ScalarFunction& g, double x0, double lo, double hi,
                                     double tol, int max_iter, double rel_tol) {
    if (!(tol >= 0.0) || !(rel_tol >= 0.0) || (tol == 0.0 && rel_tol == 0.0)) {
        throw DomainError("fixed_point_iterate: need a positive tolerance");
    }
    if (!(lo <= hi)) throw DomainError("fixed_point_iterate: lo > hi");
    if (!(lo <= x0 && x0 <= hi)) {
        throw DomainViolation("fixed_point_iterate: starting point outside the interval", x0);
    }

    FixedPointResult out;
    out.iterates.push_back(x0);
    double x = x0;
    for (int iter = 1; iter <= max_iter; ++iter) {
        const double next = g(x);
        if (!(lo <= next && next <= hi)) {
            throw DomainViolation("fixed_point_iterate: iterate " + std::to_string(next) +
                                      " escaped [" + std::to_string(lo) + ", " +
                                      std::to_string(hi) + "]; map is not a self-map",
                                  next);
        }
        out.iterates.push_back(next);
        const double step = std::abs(next - x);
        x = next;
        if (step <= tol + rel_tol * std::abs(x)) {
            out.root = {x, g(x) - x, iter, true};
            return out;
        }
    }
    out.root = {x, g(x) - x, max_iter, false};
    return out;
}

}  // namespace extfactor
