#include "extfactor/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "extfactor/bounds.hpp"
#include "extfactor/errors.hpp"
#include "extfactor/experiment.hpp"
#include "extfactor/schedule.hpp"

namespace extfactor::cli {

namespace {

struct Table {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_table(const Table& table, Format format, std::ostream& os) {
    if (format == Format::csv) {
        for (const auto& c : table.comments) os << "# " << c << '\n';
        auto line = [&os](const std::vector<std::string>& cells) {
            for (std::size_t j = 0; j < cells.size(); ++j) os << (j ? "," : "") << cells[j];
            os << '\n';
        };
        line(table.header);
        for (const auto& row : table.rows) line(row);
        return;
    }
    for (const auto& c : table.comments) os << c << '\n';
    std::vector<std::size_t> width(table.header.size());
    for (std::size_t j = 0; j < width.size(); ++j) width[j] = table.header[j].size();
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t j = 0; j < cells.size(); ++j) {
            os << (j ? "  " : "") << cells[j] << std::string(width[j] - cells[j].size(), ' ');
        }
        os << '\n';
    };
    line(table.header);
    for (const auto& row : table.rows) line(row);
}

std::string format_int(std::int64_t v) { return std::to_string(v); }

BoundParams bound_params(const RunConfig& c) { return BoundParams(*c.alpha, *c.m, *c.big_m); }

Format format_or(const RunConfig& c, Format fallback) { return c.format.value_or(fallback); }

void require(bool present, const char* flag, const char* command) {
    if (!present) throw DomainError(std::string(command) + " requires " + flag);
}

// Round to the printed precision so the CSV shows exactly the alpha that was used.
double printed(double v) { return std::stod(format_real(v)); }

Table cmd_bound(const RunConfig& c, Format format) {
    const BoundParams p = bound_params(c);
    const ExtensionSolution sol = solve_rho_star(p, c.tol);
    const bool inverse_defined = sol.rho_star > 1.0 && sol.rho_star < 2.0;
    auto inefficiency = [&](InefficiencyForm form) {
        return inverse_defined ? format_real(min_inefficiency(sol.rho_star, p.alpha(), form))
                               : std::string("n/a");
    };

    std::vector<std::pair<std::string, std::string>> fields = {
        {"alpha", format_real(p.alpha())},
        {"m", format_real(p.m())},
        {"M", format_real(p.big_m())},
        {"floor", format_real(closed_form_floor(p))},
        {"rho_star", format_real(sol.rho_star)},
        {"rho_star_minus_one", format_real(sol.excess)},
        {"two_minus_rho_star", format_real(sol.gap_to_two)},
        {"lipschitz", format_real(lipschitz_bound(p))},
        {"min_inefficiency", inefficiency(InefficiencyForm::rearranged)},
        {"iterations", std::to_string(sol.iterations)},
        {"large_alpha", sol.large_alpha ? "true" : "false"},
    };
    if (c.printed_inefficiency) {
        fields.emplace_back("min_inefficiency_printed", inefficiency(InefficiencyForm::printed));
    }
    if (c.gamma) {
        const LogRateParams lp(p, c.beta, *c.gamma);
        fields.emplace_back("gamma", format_real(lp.gamma()));
        fields.emplace_back("log_rate_floor", format_real(log_rate_floor(lp)));
    }

    Table t;
    if (format == Format::csv) {
        t.rows.emplace_back();
        for (auto& [k, v] : fields) {
            t.header.push_back(k);
            t.rows.back().push_back(v);
        }
    } else {
        t.header = {"quantity", "value"};
        for (auto& [k, v] : fields) t.rows.push_back({k, v});
    }
    return t;
}

Table cmd_curve(const RunConfig& c) {
    if (!(c.alpha_step > 0.0)) throw DomainError("--alpha-step must be positive");
    if (!(c.alpha_min > 1.0) || !(c.alpha_max >= c.alpha_min)) {
        throw DomainError("curve needs 1 < alpha-min <= alpha-max");
    }
    if (c.ratios.empty()) throw DomainError("--ratios must list at least one level");

    std::vector<double> alphas;
    for (int i = 0;; ++i) {
        const double a = printed(c.alpha_min + i * c.alpha_step);
        if (a > c.alpha_max * (1.0 + 1e-12)) break;
        alphas.push_back(a);
    }
    std::vector<double> ratios = c.ratios;
    std::sort(ratios.begin(), ratios.end());

    Table t;
    std::ostringstream levels;
    for (std::size_t j = 0; j < ratios.size(); ++j) levels << (j ? "," : "") << format_real(ratios[j]);
    t.comments.push_back("extension-factor lower bound rho* vs alpha; grid alpha in [" +
                         format_real(c.alpha_min) + ", " + format_real(c.alpha_max) + "] step " +
                         format_real(c.alpha_step) + "; m/M levels {" + levels.str() + "}");
    t.header = {"alpha", "ratio_m_over_M", "rho_star", "floor"};
    for (double r : ratios) {
        for (double a : alphas) {
            const BoundParams p(a, r, 1.0);
            const ExtensionSolution sol = solve_rho_star(p, c.tol);
            const double floor = closed_form_floor(p);
            if (!std::isfinite(sol.rho_star) || !std::isfinite(floor)) {
                throw std::runtime_error("non-finite curve value");
            }
            t.rows.push_back({format_real(a), format_real(r), format_real(sol.rho_star),
                              format_real(floor)});
        }
    }
    return t;
}

Table cmd_schedule(const RunConfig& c) {
    require(c.n1.has_value(), "--n1", "schedule");
    require(c.count.has_value(), "--count", "schedule");
    if (*c.count < 1) throw DomainError("--count must be >= 1");
    const auto count = static_cast<std::size_t>(*c.count);

    Table t;
    std::optional<Schedule> s;
    if (c.step) {
        s = arithmetic_schedule(*c.n1, *c.step, count);
        t.comments.push_back("arithmetic schedule, step " + format_int(*c.step));
    } else if (c.rho) {
        s = geometric_schedule(*c.n1, *c.rho, count);
        t.comments.push_back("geometric schedule, rho " + format_real(*c.rho));
    } else if (c.alpha && c.m && c.big_m) {
        const double rho = solve_rho_star(bound_params(c), c.tol).rho_star;
        s = geometric_schedule(*c.n1, rho, count);
        t.comments.push_back("geometric schedule at rho* = " + format_real(rho));
    } else {
        throw DomainError("schedule requires --rho, --step, or --alpha/--m/--M");
    }

    t.header = {"k", "n_k", "ratio"};
    const auto& sizes = s->sizes();
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        const std::string ratio =
            k == 0 ? std::string()
                   : format_real(static_cast<double>(sizes[k]) / static_cast<double>(sizes[k - 1]));
        t.rows.push_back({std::to_string(k + 1), format_int(sizes[k]), ratio});
    }
    return t;
}

Table cmd_validate(const RunConfig& c) {
    require(c.sizes.has_value(), "--sizes", "validate");
    require(c.alpha && c.m && c.big_m, "--alpha, --m and --M", "validate");
    const Schedule s(parse_size_list(*c.sizes));
    const ScheduleReport report = validate_schedule(s, bound_params(c), c.schedule_tol);

    Table t;
    t.comments.push_back(std::string("admissible: ") + (report.admissible ? "true" : "false") +
                         " (" + std::to_string(report.violations.size()) + " violating steps)");
    t.header = {"k", "ratio", "floor", "admissible"};
    for (std::size_t k = 0; k < report.ratios.size(); ++k) {
        const bool bad = std::any_of(report.violations.begin(), report.violations.end(),
                                     [k](const Violation& v) { return v.k == k + 1; });
        t.rows.push_back({std::to_string(k + 1), format_real(report.ratios[k]),
                          format_real(report.floor), bad ? "false" : "true"});
    }
    return t;
}

void write_checks(const std::vector<PropertyCheck>& checks, std::ostream& os) {
    for (const auto& check : checks) {
        os << (check.pass ? "PASS " : "FAIL ") << check.name << ": " << check.detail << '\n';
    }
}

Table identity_table(const std::vector<IdentityRow>& rows) {
    Table t;
    t.header = {"generator", "integrand", "kind", "n_lo", "n_hi", "residual", "relative"};
    for (const auto& r : rows) {
        t.rows.push_back({r.generator, r.integrand, r.kind, format_int(r.n_lo), format_int(r.n_hi),
                          format_real(r.residual), format_real(r.relative)});
    }
    return t;
}

// Writes `content` to the configured destination. Returns false on I/O failure.
bool emit(const RunConfig& c, const std::string& content, std::ostream& out, std::ostream& err) {
    if (c.output_path.empty()) {
        out << content;
        out.flush();
        return static_cast<bool>(out);
    }
    std::ofstream file(c.output_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: cannot open output file '" << c.output_path << "'\n";
        return false;
    }
    file << content;
    file.flush();
    if (!file) {
        err << "error: failed writing '" << c.output_path << "'\n";
        return false;
    }
    return true;
}

std::string render(const Table& t, Format format) {
    std::ostringstream os;
    write_table(t, format, os);
    return os.str();
}

}  // namespace

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

std::vector<std::int64_t> parse_size_list(const std::string& text) {
    std::vector<std::int64_t> sizes;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                                : comma - start);
        std::int64_t value = 0;
        const char* first = item.data();
        const char* last = item.data() + item.size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (item.empty() || ec != std::errc() || ptr != last) {
            throw DomainError("malformed size list entry '" + item + "'");
        }
        sizes.push_back(value);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return sizes;
}

void validate(const RunConfig& c) {
    switch (c.command) {
        case Command::bound:
            require(c.alpha.has_value(), "--alpha", "bound");
            require(c.m.has_value(), "--m", "bound");
            require(c.big_m.has_value(), "--M", "bound");
            break;
        case Command::validate:
            require(c.sizes.has_value(), "--sizes", "validate");
            require(c.alpha && c.m && c.big_m, "--alpha, --m and --M", "validate");
            break;
        case Command::schedule:
            require(c.n1.has_value(), "--n1", "schedule");
            require(c.count.has_value(), "--count", "schedule");
            break;
        case Command::experiment:
            if (c.replicates < 2) throw DomainError("--replicates must be >= 2");
            break;
        case Command::curve:
        case Command::identity_check:
            break;
    }
    if (!(c.tol > 0.0)) throw DomainError("--tol must be positive");
}

int execute(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        validate(c);
        switch (c.command) {
            case Command::bound: {
                const Format f = format_or(c, Format::pretty);
                return emit(c, render(cmd_bound(c, f), f), out, err) ? kOk : kIoError;
            }
            case Command::curve: {
                const Format f = format_or(c, Format::csv);
                return emit(c, render(cmd_curve(c), f), out, err) ? kOk : kIoError;
            }
            case Command::schedule: {
                const Format f = format_or(c, Format::csv);
                return emit(c, render(cmd_schedule(c), f), out, err) ? kOk : kIoError;
            }
            case Command::validate: {
                const Format f = format_or(c, Format::csv);
                return emit(c, render(cmd_validate(c), f), out, err) ? kOk : kIoError;
            }
            case Command::identity_check: {
                const Format f = format_or(c, Format::csv);
                const auto rows = run_identity_suite(c.seed);
                double worst = 0.0;
                for (const auto& r : rows) worst = std::max(worst, r.relative);
                const bool ok = worst <= kIdentityRelTol;
                if (!emit(c, render(identity_table(rows), f), out, err)) return kIoError;
                std::ostream& summary = c.output_path.empty() ? err : out;
                write_checks({{"identity_residuals", ok,
                               std::to_string(rows.size()) + " cases, max relative residual " +
                                   format_real(worst)}},
                             summary);
                return ok ? kOk : kPropertyFailure;
            }
            case Command::experiment: {
                const Format f = format_or(c, Format::csv);
                ExperimentConfig ec;
                ec.seed = c.seed;
                ec.replicates = c.replicates;
                const ExperimentResult result = run_experiment(ec);
                Table t;
                t.comments.push_back("seed " + std::to_string(c.seed) + ", replicates " +
                                     std::to_string(c.replicates));
                t.header = {"generator", "integrand", "n", "rms", "slope_so_far"};
                for (const auto& r : result.rms) {
                    t.rows.push_back({r.generator, r.integrand, format_int(r.n), format_real(r.rms),
                                      r.slope_so_far ? format_real(*r.slope_so_far) : ""});
                }
                if (!emit(c, render(t, f), out, err)) return kIoError;
                write_checks(result.checks, c.output_path.empty() ? err : out);
                return result.all_passed() ? kOk : kPropertyFailure;
            }
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const SizeError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Extension-factor bounds for extensible equal-weight quadrature"};
    app.require_subcommand(1);

    std::string format_text;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--output", c.output_path, "Write results to PATH instead of stdout");
        sub->add_option("--format", format_text, "csv or pretty")
            ->check(CLI::IsMember({"csv", "pretty"}));
        sub->add_option("--seed", c.seed, "Master seed");
        sub->add_option("--tol", c.tol, "Solver tolerance on rho");
    };
    auto add_params = [&](CLI::App* sub) {
        sub->add_option("--alpha", c.alpha, "Rate exponent, > 1");
        sub->add_option("--m", c.m, "Lower-bound constant m > 0");
        sub->add_option("--M", c.big_m, "Upper-bound constant M >= m");
    };

    auto* bound = app.add_subcommand("bound", "Critical extension factor for (alpha, m, M)");
    add_common(bound);
    add_params(bound);
    bound->add_option("--gamma", c.gamma, "Surrogate exponent for an n^-alpha log(n)^beta rate");
    bound->add_option("--beta", c.beta, "Log exponent (stored, does not change the floor)");
    bound->add_flag("--printed-inefficiency", c.printed_inefficiency,
                    "Also report the alternative inefficiency form");

    auto* curve = app.add_subcommand("curve", "rho* over a grid of alpha and m/M");
    add_common(curve);
    curve->add_option("--alpha-min", c.alpha_min);
    curve->add_option("--alpha-max", c.alpha_max);
    curve->add_option("--alpha-step", c.alpha_step);
    curve->add_option("--ratios", c.ratios, "m/M levels")->delimiter(',');

    auto* schedule = app.add_subcommand("schedule", "Generate a sample-size schedule");
    add_common(schedule);
    add_params(schedule);
    schedule->add_option("--n1", c.n1, "First sample size");
    schedule->add_option("--rho", c.rho, "Growth factor (geometric)");
    schedule->add_option("--step", c.step, "Increment (arithmetic)");
    schedule->add_option("--count", c.count, "Number of sizes");

    auto* validate_cmd = app.add_subcommand("validate", "Check a schedule against rho*");
    add_common(validate_cmd);
    add_params(validate_cmd);
    validate_cmd->add_option("--sizes", c.sizes, "Comma-separated sample sizes");
    validate_cmd->add_option("--schedule-tol", c.schedule_tol, "Slack below rho*");

    auto* experiment = app.add_subcommand("experiment", "Run the empirical suite");
    add_common(experiment);
    experiment->add_option("--replicates", c.replicates, "Randomizations per RMS estimate");

    auto* identity = app.add_subcommand("identity-check", "Check the exact error identities");
    add_common(identity);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    if (*bound) c.command = Command::bound;
    else if (*curve) c.command = Command::curve;
    else if (*schedule) c.command = Command::schedule;
    else if (*validate_cmd) c.command = Command::validate;
    else if (*experiment) c.command = Command::experiment;
    else c.command = Command::identity_check;

    if (format_text == "csv") c.format = Format::csv;
    else if (format_text == "pretty") c.format = Format::pretty;

    return execute(c, out, err);
}

}  // namespace extfactor::cli
