// Acceptance suite: one line per criterion, non-zero exit if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "extfactor/bounds.hpp"
#include "extfactor/experiment.hpp"
#include "extfactor/quadrature.hpp"
#include "extfactor/rootfind.hpp"
#include "extfactor/schedule.hpp"

using namespace extfactor;

namespace {

const std::vector<double> kAlphas = {1.1, 1.5, 2.0, 3.0, 5.0, 10.0};
const std::vector<double> kRatios = {1.0, 0.5, 0.1, 0.01};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt(const char* format, double v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& criterion) {
    Outcome outcome{false, ""};
    try {
        outcome = criterion();
    } catch (const std::exception& e) {
        outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("[%s] %2d %s: %s\n", outcome.pass ? "PASS" : "FAIL", id, name.c_str(),
                outcome.detail.c_str());
    std::fflush(stdout);
}

Outcome golden_ratio() {
    const BoundParams p(2.0, 1.0, 1.0);
    const auto start = Clock::now();
    const auto sol = solve_rho_star(p);
    const double elapsed = ms_since(start);
    const double err = std::abs(sol.rho_star - std::numbers::phi);
    return {err <= 1e-10 && elapsed < 1.0,
            "|rho* - phi| = " + fmt("%.3g", err) + " (<= 1e-10), " + fmt("%.3f", elapsed) +
                " ms (< 1 ms)"};
}

Outcome bound_window() {
    const auto start = Clock::now();
    int bad = 0;
    double worst_margin = INFINITY;
    for (double a : kAlphas) {
        for (double r : kRatios) {
            const BoundParams p(a, r, 1.0);
            const auto sol = solve_rho_star(p);
            // Strict inequalities on the cancellation-free margins; rho* - 1 is
            // ~1e-23 at alpha 1.1, m/M 0.01, below double resolution at 1.
            const bool ok = sol.floor_margin > 0.0 && sol.gap_to_two > 0.0 &&
                            closed_form_floor(p) <= sol.rho_star && sol.rho_star < 2.0;
            if (!ok) ++bad;
            worst_margin = std::min(worst_margin, sol.floor_margin);
        }
    }
    const double elapsed = ms_since(start);
    return {bad == 0 && elapsed < 1000.0,
            std::to_string(kAlphas.size() * kRatios.size()) + " grid points, " +
                std::to_string(bad) + " outside (floor, 2), smallest relative margin over floor " +
                fmt("%.3g", worst_margin) + ", " + fmt("%.2f", elapsed) + " ms (< 1 s)"};
}

Outcome doubling_admissible() {
    int bad = 0;
    for (double a : kAlphas) {
        for (double r : kRatios) {
            if (!is_admissible_extension(2.0, BoundParams(a, r, 1.0))) ++bad;
        }
    }
    return {bad == 0, std::to_string(bad) + " grid points reject rho = 2"};
}

Outcome monotonicity() {
    int bad = 0;
    std::vector<std::vector<double>> excess(kRatios.size(), std::vector<double>(kAlphas.size()));
    for (std::size_t i = 0; i < kRatios.size(); ++i) {
        for (std::size_t j = 0; j < kAlphas.size(); ++j) {
            excess[i][j] = solve_rho_star(BoundParams(kAlphas[j], kRatios[i], 1.0)).excess;
        }
    }
    for (std::size_t i = 0; i < kRatios.size(); ++i) {
        for (std::size_t j = 1; j < kAlphas.size(); ++j) {
            if (excess[i][j] < excess[i][j - 1]) ++bad;  // nondecreasing in alpha
        }
    }
    for (std::size_t j = 0; j < kAlphas.size(); ++j) {
        for (std::size_t i = 1; i < kRatios.size(); ++i) {
            if (excess[i][j] > excess[i - 1][j]) ++bad;  // ratios listed in decreasing order
            if (excess[i][j] > excess[0][j]) ++bad;      // m/M = 1 dominates
        }
    }
    return {bad == 0, std::to_string(bad) + " ordering violations in alpha, m/M, or dominance"};
}

Outcome solver_agreement() {
    double worst = 0.0;
    int non_monotone = 0;
    for (double a : kAlphas) {
        for (double r : kRatios) {
            const BoundParams p(a, r, 1.0);
            const auto sol = solve_rho_star(p);
            worst = std::max(worst, sol.solver_disagreement);
            // Brent directly on g(rho) - rho over [1, 2]
            const auto br = brent([&](double x) { return fixed_point_map(x, p) - x; },
                                  Bracket(1.0, 2.0), kDefaultSolveTol);
            worst = std::max(worst, std::abs(br.x - sol.rho_star));
            // Iterates rho_k = 1 + h_k from rho_0 = 1, tracked through the excess h_k.
            const auto fp = fixed_point_iterate([&](double h) { return excess_map(h, p); }, 0.0, 0.0,
                                                1.0, 0.0, kFixedPointMaxIter, kDefaultSolveTol);
            if (!fp.root.converged || fp.monotonicity() != Monotonicity::increasing) ++non_monotone;
        }
    }
    return {worst <= 1e-10 && non_monotone == 0,
            "max |fixed point - Brent| = " + fmt("%.3g", worst) + " (<= 1e-10), " +
                std::to_string(non_monotone) + " grid points with non-increasing iterates"};
}

Outcome round_trip() {
    double worst = 0.0;
    for (double a : {1.5, 2.0, 3.0}) {
        for (double r : {1.0, 0.5, 0.1}) {
            const auto sol = solve_rho_star(BoundParams(a, r, 1.0));
            worst = std::max(worst, std::abs(min_inefficiency(sol.rho_star, a) * r - 1.0));
        }
    }
    return {worst <= 1e-8, "max |min_inefficiency(rho*) * m/M - 1| = " + fmt("%.3g", worst) +
                               " (<= 1e-8)"};
}

Outcome exact_identities() {
    const auto start = Clock::now();
    const auto rows = run_identity_suite(42);
    const double elapsed = ms_since(start);
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, r.relative);
    return {rows.size() >= 500 && worst <= kIdentityRelTol && elapsed < 10000.0,
            std::to_string(rows.size()) + " cases (>= 500), max relative residual " +
                fmt("%.3g", worst) + " (<= 1e-10), " + fmt("%.0f", elapsed) + " ms (< 10 s)"};
}

Outcome rate_regimes() {
    const auto start = Clock::now();
    std::vector<std::int64_t> ns;
    for (int k = 4; k <= 12; ++k) ns.push_back(std::int64_t{1} << k);
    const SequenceFactory iid = [](std::uint64_t s) { return PointSequence::iid_uniform(s, 1); };
    const SequenceFactory scrambled = [](std::uint64_t s) { return PointSequence::scrambled_base2(s); };
    const double iid_slope =
        fit_rate(ns, rms_curve(iid, standard_integrand("x"), ns, 200, 42)).slope;
    const double fast_slope =
        fit_rate(ns, rms_curve(scrambled, standard_integrand("x^2"), ns, 200, 42)).slope;
    const double elapsed = ms_since(start);
    const bool ok = iid_slope >= -0.6 && iid_slope <= -0.4 && fast_slope <= -1.3 && elapsed < 60000.0;
    return {ok, "iid/x slope " + fmt("%.4f", iid_slope) + " in [-0.6, -0.4], scrambled/x^2 slope " +
                    fmt("%.4f", fast_slope) + " <= -1.3, " + fmt("%.0f", elapsed) + " ms (< 60 s)"};
}

Outcome arithmetic_rejection() {
    const BoundParams p(2.0, 1.0, 1.0);
    const auto arith = validate_schedule(arithmetic_schedule(100, 100, 10), p);
    bool every_later_step = arith.violations.size() == arith.ratios.size() - 1;
    for (std::size_t j = 0; j < arith.violations.size(); ++j) {
        every_later_step = every_later_step && arith.violations[j].k == j + 2;
    }
    std::vector<std::int64_t> doubling;
    for (int k = 6; k <= 12; ++k) doubling.push_back(std::int64_t{1} << k);
    const auto geo = validate_schedule(Schedule(doubling), p);
    return {every_later_step && !arith.admissible && geo.admissible,
            "[100..1000]: " + std::to_string(arith.violations.size()) + " of " +
                std::to_string(arith.ratios.size()) + " steps violate (expected steps 2..9); " +
                "[2^6..2^12]: " + (geo.admissible ? "admissible" : "NOT admissible")};
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    const auto dir = std::filesystem::temp_directory_path();
    const auto first = dir / "extfactor_acceptance_run1.csv";
    const auto second = dir / "extfactor_acceptance_run2.csv";
    int codes[2];
    int idx = 0;
    for (const auto& path : {first, second}) {
        const std::string cmd = std::string(EXTFACTOR_CLI_PATH) + " experiment --seed 42 --output " +
                                path.string() + " >/dev/null 2>&1";
        const int raw = std::system(cmd.c_str());
        codes[idx++] = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    }
    const std::string a = slurp(first);
    const std::string b = slurp(second);
    std::filesystem::remove(first);
    std::filesystem::remove(second);
    const bool same = !a.empty() && a == b;
    return {same && codes[0] == 0 && codes[1] == 0,
            std::string(same ? "byte-identical" : "DIFFERENT") + " CSV (" + std::to_string(a.size()) +
                " bytes), exit codes " + std::to_string(codes[0]) + "/" + std::to_string(codes[1])};
}

}  // namespace

int main() {
    report(1, "golden-ratio exactness", golden_ratio);
    report(2, "bound window floor < rho* < 2", bound_window);
    report(3, "doubling admissibility", doubling_admissible);
    report(4, "monotonicity in alpha and m/M", monotonicity);
    report(5, "solver cross-agreement and monotone iterates", solver_agreement);
    report(6, "round-trip inversion", round_trip);
    report(7, "exact identities", exact_identities);
    report(8, "rate regimes", rate_regimes);
    report(9, "arithmetic-schedule rejection", arithmetic_rejection);
    report(10, "experiment determinism", determinism);
    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
