#pragma once

// Command-line front end. Every command parses its inputs, calls the
// library and formats the result.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "analytic.hpp"
#include "config.hpp"
#include "montecarlo.hpp"
#include "report.hpp"

namespace risphase::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

inline std::string format_probability(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.5e", x);
    return buf;
}

inline std::string format_rate(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

namespace detail {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline double parse_number(const std::string& text, const char* what) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(text, &used);
    } catch (const std::exception&) {
        throw UsageError(std::string(what) + ": '" + text + "' is not a number");
    }
    if (used != text.size()) {
        throw UsageError(std::string(what) + ": '" + text + "' is not a number");
    }
    return x;
}

inline std::vector<double> parse_list(const std::string& text, const char* what, char sep) {
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        out.push_back(parse_number(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start), what));
        if (pos == std::string::npos) {
            return out;
        }
        start = pos + 1;
    }
}

inline bool given(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

/// Scenario flags shared by outage, eps-capacity and mc.
struct ScenarioFlags {
    std::string config;
    int n = 0;
    std::string p;
    double a = 0.0;
    std::string scheme;
    int k = 0;
    std::string method;
    long long slow = 0;
    long long fast = 0;
    std::uint64_t seed = 0;

    CLI::Option* o_config = nullptr;
    CLI::Option* o_n = nullptr;
    CLI::Option* o_p = nullptr;
    CLI::Option* o_a = nullptr;
    CLI::Option* o_scheme = nullptr;
    CLI::Option* o_k = nullptr;
    CLI::Option* o_method = nullptr;
    CLI::Option* o_slow = nullptr;
    CLI::Option* o_fast = nullptr;
    CLI::Option* o_seed = nullptr;

    void attach(CLI::App& app, bool with_mc) {
        o_config = app.add_option("--config", config, "JSON scenario file; flags override its values");
        o_n = app.add_option("--n", n, "number of RIS elements N");
        o_p = app.add_option("--p", p, "link probability, or a comma-separated list of N values");
        o_a = app.add_option("--a", a, "LOS amplitude");
        o_scheme = app.add_option("--scheme", scheme, "hopping|quantized|static|perfect");
        o_k = app.add_option("--k", k, "quantization levels (quantized scheme)");
        o_method = app.add_option("--method", method, "exact|approx");
        if (with_mc) {
            o_slow = app.add_option("--slow", slow, "slow-fading realizations");
            o_fast = app.add_option("--fast", fast, "fast-fading symbols per slow realization");
            o_seed = app.add_option("--seed", seed, "stream seed");
        }
    }

    RunConfig resolve() const {
        RunConfig cfg;
        if (given(o_config)) {
            std::ifstream in(config);
            if (!in) {
                throw UsageError(config + ": cannot open config file");
            }
            Json j;
            try {
                j = Json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw UsageError(config + ": " + e.what());
            }
            try {
                cfg = merge_config(cfg, j);
            } catch (const std::invalid_argument& e) {
                throw UsageError(config + ": " + e.what());
            }
        }
        if (given(o_n)) {
            cfg.scenario.n_elements = n;
        }
        if (given(o_p)) {
            const auto values = parse_list(p, "--p", ',');
            if (values.size() == 1) {
                cfg.scenario.link_probs = values.front();
            } else {
                cfg.scenario.link_probs = values;
            }
        }
        if (given(o_a)) {
            cfg.scenario.los_amplitude = a;
        }
        if (given(o_scheme)) {
            cfg.scenario.scheme = scheme_from_string(scheme);
        }
        if (given(o_k)) {
            cfg.scenario.quant_levels = k;
        }
        if (given(o_method)) {
            cfg.method = method_from_string(method);
        }
        if (given(o_slow)) {
            cfg.slow_samples = slow;
        }
        if (given(o_fast)) {
            cfg.fast_samples = fast;
        }
        if (given(o_seed)) {
            cfg.seed = seed;
        }
        cfg.validate();
        return cfg;
    }
};

inline std::vector<double> parse_rate_grid(const std::string& text) {
    const auto parts = parse_list(text, "--rate-grid", ':');
    if (parts.size() != 3) {
        throw UsageError("--rate-grid: expected lo:hi:step");
    }
    const double lo = parts[0];
    const double hi = parts[1];
    const double step = parts[2];
    if (!(lo >= 0.0) || !(hi >= lo) || !(step > 0.0) || !std::isfinite(hi)) {
        throw UsageError("--rate-grid: need 0 <= lo <= hi and step > 0");
    }
    const double count = std::floor((hi - lo) / step * (1.0 + 1e-12)) + 1.0;
    if (count > 1e7) {
        throw UsageError("--rate-grid: more than 1e7 points");
    }
    std::vector<double> rates;
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
        rates.push_back(lo + static_cast<double>(i) * step);
    }
    return rates;
}

inline std::function<double(double)> outage_curve(const RunConfig& cfg) {
    switch (cfg.scenario.scheme) {
    case Scheme::Hopping:
    case Scheme::QuantizedHopping: {
        auto curve = std::make_shared<analytic::HoppingOutage>(cfg.scenario, cfg.method);
        return [curve](double r) { return (*curve)(r); };
    }
    case Scheme::Static: {
        auto curve = std::make_shared<analytic::StaticOutage>(cfg.scenario, cfg.method);
        return [curve](double r) { return (*curve)(r); };
    }
    case Scheme::Perfect: {
        const Scenario s = cfg.scenario;
        return [s](double r) { return analytic::outage_perfect(s, r); };
    }
    }
    throw std::logic_error("unhandled scheme");
}

inline bool wants_json(const std::string& path) {
    return std::filesystem::path(path).extension() == ".json";
}

inline void write_dataset(const report::FigureDataset& ds, const std::string& path) {
    if (wants_json(path)) {
        report::write_json(ds, path);
    } else {
        report::write_csv(ds, path);
    }
}

inline std::string one_line(std::string text) {
    for (auto& c : text) {
        if (c == '\n' || c == '\r') {
            c = ' ';
        }
    }
    return text;
}

} // namespace detail

/// Runs the command line; returns the process exit code. Results go to
/// `out`, a single "error: ..." line to `err` on failure.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    using detail::given;
    CLI::App app{"Outage probabilities and eps-outage capacities of RIS-assisted links with phase hopping",
                 "risphase"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "help for all subcommands");

    // capacity
    auto* cap = app.add_subcommand("capacity", "ergodic capacity with a given number of available links");
    int links = 0;
    double cap_a = 0.0;
    std::string cap_method = "approx";
    cap->add_option("--links", links, "available NLOS links")->required();
    cap->add_option("--a", cap_a, "LOS amplitude");
    cap->add_option("--method", cap_method, "exact|approx")->capture_default_str();

    // outage
    auto* outage = app.add_subcommand("outage", "outage probability at a rate or over a rate grid");
    detail::ScenarioFlags out_flags;
    out_flags.attach(*outage, false);
    double rate = 0.0;
    std::string rate_grid;
    std::string out_path;
    auto* o_rate = outage->add_option("--rate", rate, "transmission rate in bits");
    auto* o_grid = outage->add_option("--rate-grid", rate_grid, "lo:hi:step");
    o_rate->excludes(o_grid);
    auto* o_out = outage->add_option("--out", out_path, "write the rate grid to a .csv or .json file");

    // eps-capacity
    auto* epscap = app.add_subcommand("eps-capacity", "largest rate with outage probability at most eps");
    detail::ScenarioFlags eps_flags;
    eps_flags.attach(*epscap, false);
    double eps = 0.0;
    epscap->add_option("--eps", eps, "tolerated outage probability in [0, 1)")->required();

    // mc
    auto* mcs = app.add_subcommand("mc", "Monte-Carlo simulation of per-slow-realization capacities");
    detail::ScenarioFlags mc_flags;
    mc_flags.attach(*mcs, true);
    unsigned workers = 0;
    std::string mc_out;
    mcs->add_option("--workers", workers, "threads (0: all cores); results do not depend on it");
    auto* o_mc_out = mcs->add_option("--out", mc_out, "write the capacities to a .csv or .json file");

    // figure
    auto* fig = app.add_subcommand("figure", "emit a figure dataset as CSV and JSON");
    std::string fig_id;
    std::string out_dir = ".";
    std::string fig_format = "both";
    int fig_n = 0;
    double fig_p = 0.0;
    double fig_a = 0.0;
    int fig_k = 0;
    std::string fig_method;
    long long fig_slow = 0;
    long long fig_fast = 0;
    std::uint64_t fig_seed = 0;
    int fig_points = 0;
    fig->add_option("--id", fig_id, "figure id or 'all'")->required();
    fig->add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    fig->add_option("--format", fig_format, "csv|json|both")->capture_default_str();
    auto* f_n = fig->add_option("--n", fig_n, "N (replaces the N sweep)");
    auto* f_p = fig->add_option("--p", fig_p, "link probability (replaces the p sweep)");
    auto* f_a = fig->add_option("--a", fig_a, "LOS amplitude");
    auto* f_k = fig->add_option("--k", fig_k, "quantization levels");
    auto* f_method = fig->add_option("--method", fig_method, "exact|approx");
    auto* f_slow = fig->add_option("--slow", fig_slow, "slow-fading realizations (or samples)");
    auto* f_fast = fig->add_option("--fast", fig_fast, "fast-fading symbols");
    auto* f_seed = fig->add_option("--seed", fig_seed, "stream seed");
    auto* f_points = fig->add_option("--points", fig_points, "grid points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << detail::one_line(e.what()) << '\n';
        return exit_usage;
    }

    try {
        if (*cap) {
            const auto method = method_from_string(cap_method);
            if (links < 0) {
                throw detail::UsageError("--links must be >= 0");
            }
            if (!(cap_a >= 0.0) || !std::isfinite(cap_a)) {
                throw detail::UsageError("--a must be finite and >= 0");
            }
            if (cap_a > 0.0 && method == analytic::CapacityMethod::ExactHankel && links > 0) {
                throw detail::UsageError("--method exact requires --a 0");
            }
            const double c = cap_a == 0.0 ? analytic::erg_capacity_nlos(links, method)
                                          : analytic::erg_capacity_los(links, cap_a);
            out << format_rate(c) << '\n';
        } else if (*outage) {
            const auto cfg = out_flags.resolve();
            if (!given(o_rate) && !given(o_grid)) {
                throw detail::UsageError("outage: one of --rate or --rate-grid is required");
            }
            const auto curve = detail::outage_curve(cfg);
            if (given(o_rate)) {
                if (given(o_out)) {
                    throw detail::UsageError("--out needs --rate-grid");
                }
                out << format_probability(curve(rate)) << '\n';
            } else {
                const auto rates = detail::parse_rate_grid(rate_grid);
                std::vector<double> values;
                values.reserve(rates.size());
                for (const double r : rates) {
                    values.push_back(curve(r));
                }
                if (given(o_out)) {
                    report::FigureDataset ds;
                    ds.add("rate", rates);
                    ds.add("outage", values);
                    ds.metadata["config"] = to_json(cfg);
                    ds.metadata["rate_grid"] = rate_grid;
                    detail::write_dataset(ds, out_path);
                } else {
                    out << "rate,outage\n";
                    for (std::size_t i = 0; i < rates.size(); ++i) {
                        out << format_rate(rates[i]) << ',' << format_probability(values[i]) << '\n';
                    }
                }
            }
        } else if (*epscap) {
            const auto cfg = eps_flags.resolve();
            if (!(eps >= 0.0 && eps < 1.0)) {
                throw detail::UsageError("--eps must lie in [0, 1)");
            }
            double r = 0.0;
            switch (cfg.scenario.scheme) {
            case Scheme::Hopping:
            case Scheme::QuantizedHopping: r = analytic::eps_capacity(cfg.scenario, eps, cfg.method); break;
            case Scheme::Static: r = analytic::eps_capacity_static(cfg.scenario, eps, cfg.method); break;
            case Scheme::Perfect: r = analytic::eps_capacity_perfect(cfg.scenario, eps); break;
            }
            out << format_rate(r) << '\n';
        } else if (*mcs) {
            const auto cfg = mc_flags.resolve();
            const auto res = mc::run(cfg.mc_config(), workers);
            report::FigureDataset ds;
            std::vector<double> index(res.per_slow_capacity.size());
            std::vector<double> available(res.per_slow_available.begin(), res.per_slow_available.end());
            for (std::size_t i = 0; i < index.size(); ++i) {
                index[i] = static_cast<double>(i);
            }
            ds.add("slow_index", std::move(index));
            ds.add("available", std::move(available));
            ds.add("capacity", res.per_slow_capacity);
            ds.metadata["config"] = to_json(cfg);
            if (given(o_mc_out)) {
                detail::write_dataset(ds, mc_out);
            } else {
                report::write_csv(ds, out);
            }
        } else if (*fig) {
            if (fig_format != "csv" && fig_format != "json" && fig_format != "both") {
                throw detail::UsageError("--format must be csv, json or both");
            }
            report::FigureOverrides o;
            if (given(f_n)) o.n_elements = fig_n;
            if (given(f_p)) o.link_prob = fig_p;
            if (given(f_a)) o.los_amplitude = fig_a;
            if (given(f_k)) o.quant_levels = fig_k;
            if (given(f_method)) o.method = method_from_string(fig_method);
            if (given(f_slow)) o.slow_samples = fig_slow;
            if (given(f_fast)) o.fast_samples = fig_fast;
            if (given(f_seed)) o.seed = fig_seed;
            if (given(f_points)) o.grid_points = fig_points;
            std::vector<report::FigureId> ids;
            if (fig_id == "all") {
                ids.assign(std::begin(report::all_figures), std::end(report::all_figures));
            } else {
                ids.push_back(report::figure_from_string(fig_id));
            }
            for (const auto id : ids) {
                report::resolve(id, o);
            }
            std::error_code ec;
            std::filesystem::create_directories(out_dir, ec);
            if (ec) {
                throw std::runtime_error(out_dir + ": " + ec.message());
            }
            for (const auto id : ids) {
                const auto ds = report::build_figure(id, o);
                const auto stem = std::filesystem::path(out_dir) / std::string(report::to_string(id));
                if (fig_format != "json") {
                    report::write_csv(ds, stem.string() + ".csv");
                    out << stem.string() << ".csv\n";
                }
                if (fig_format != "csv") {
                    report::write_json(ds, stem.string() + ".json");
                    out << stem.string() << ".json\n";
                }
            }
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << detail::one_line(e.what()) << '\n';
        return exit_usage;
    } catch (const std::domain_error& e) {
        err << "error: " << detail::one_line(e.what()) << '\n';
        return exit_usage;
    } catch (const std::overflow_error& e) {
        err << "error: " << detail::one_line(e.what()) << '\n';
        return exit_usage;
    } catch (const std::out_of_range& e) {
        err << "error: " << detail::one_line(e.what()) << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << detail::one_line(e.what()) << '\n';
        return exit_failure;
    }
    return exit_ok;
}

} // namespace risphase::cli
