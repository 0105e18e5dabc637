#pragma once

// Figure datasets: analytic curves and Monte-Carlo columns on shared grids,
// with CSV and JSON writers.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "analytic.hpp"
#include "config.hpp"
#include "montecarlo.hpp"

namespace risphase::report {

enum class FigureId {
    ErgCapCompare,
    ErgCapLos,
    OutHoppingNlos,
    OutHoppingLos,
    EpsCapNlos,
    OutQuantized,
    QuantizedSweepK2,
    StaticNlos,
    SchemeComparison,
    CosineHistogram,
};

inline constexpr FigureId all_figures[] = {
    FigureId::ErgCapCompare, FigureId::ErgCapLos,        FigureId::OutHoppingNlos, FigureId::OutHoppingLos,
    FigureId::EpsCapNlos,    FigureId::OutQuantized,     FigureId::QuantizedSweepK2, FigureId::StaticNlos,
    FigureId::SchemeComparison, FigureId::CosineHistogram,
};

inline std::string_view to_string(FigureId id) {
    switch (id) {
    case FigureId::ErgCapCompare: return "erg-cap-compare";
    case FigureId::ErgCapLos: return "erg-cap-los";
    case FigureId::OutHoppingNlos: return "out-hopping-nlos";
    case FigureId::OutHoppingLos: return "out-hopping-los";
    case FigureId::EpsCapNlos: return "eps-cap-nlos";
    case FigureId::OutQuantized: return "out-quantized";
    case FigureId::QuantizedSweepK2: return "quantized-sweep-k2";
    case FigureId::StaticNlos: return "static-nlos";
    case FigureId::SchemeComparison: return "scheme-comparison";
    case FigureId::CosineHistogram: return "cosine-histogram";
    }
    return "unknown";
}

inline FigureId figure_from_string(std::string_view name) {
    for (const auto id : all_figures) {
        if (to_string(id) == name) {
            return id;
        }
    }
    throw std::invalid_argument("unknown figure id '" + std::string(name) + "'");
}

/// Named, equal-length columns plus a metadata object.
struct FigureDataset {
    std::optional<FigureId> figure_id;
    std::vector<std::pair<std::string, std::vector<double>>> columns;
    Json metadata = Json::object();

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().second.size(); }

    const std::vector<double>& column(std::string_view name) const {
        for (const auto& [n, v] : columns) {
            if (n == name) {
                return v;
            }
        }
        throw std::out_of_range("dataset has no column '" + std::string(name) + "'");
    }

    bool has_column(std::string_view name) const {
        return std::any_of(columns.begin(), columns.end(), [&](const auto& c) { return c.first == name; });
    }

    void add(std::string name, std::vector<double> values) {
        if (!columns.empty() && values.size() != rows()) {
            throw std::logic_error("dataset column '" + name + "' has the wrong length");
        }
        columns.emplace_back(std::move(name), std::move(values));
    }

    void validate() const {
        for (const auto& [name, values] : columns) {
            if (values.size() != rows()) {
                throw std::invalid_argument("dataset column '" + name + "' has the wrong length");
            }
        }
    }
};

/// Unset fields keep the figure defaults. Setting `link_prob` or `n_elements`
/// replaces the corresponding sweep with that single value.
struct FigureOverrides {
    std::optional<int> n_elements;
    std::optional<double> link_prob;
    std::optional<double> los_amplitude;
    std::optional<int> quant_levels;
    std::optional<analytic::CapacityMethod> method;
    std::optional<long long> slow_samples;
    std::optional<long long> fast_samples;
    std::optional<std::uint64_t> seed;
    std::optional<int> grid_points;
};

/// Fully resolved parameters of one figure.
struct FigureSpec {
    FigureId id = FigureId::SchemeComparison;
    std::vector<int> n_values;
    std::vector<double> p_values;
    std::vector<double> a_values;
    std::vector<int> k_values;
    analytic::CapacityMethod method = analytic::CapacityMethod::ApproxEi;
    long long slow_samples = 0;
    long long fast_samples = 0;
    std::uint64_t seed = 1;
    int grid_points = 500;
    bool uses_mc = false;
};

namespace detail {

inline std::string label(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

inline std::vector<double> linspace(double lo, double hi, int points) {
    std::vector<double> out(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        out[static_cast<std::size_t>(i)] = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
    }
    return out;
}

inline std::vector<double> logspace(double lo, double hi, int points) {
    auto e = linspace(std::log10(lo), std::log10(hi), points);
    for (auto& x : e) {
        x = std::pow(10.0, x);
    }
    return e;
}

inline FigureSpec defaults(FigureId id) {
    FigureSpec s;
    s.id = id;
    s.n_values = {20};
    s.p_values = {0.1, 0.5, 0.9};
    s.a_values = {0.0};
    s.k_values = {};
    switch (id) {
    case FigureId::ErgCapCompare:
        s.n_values = {50};
        s.p_values = {1.0};
        s.method = analytic::CapacityMethod::ExactHankel;
        break;
    case FigureId::ErgCapLos:
        s.p_values = {1.0};
        s.a_values = {0.0, 1.0, 2.0, 3.0};
        s.slow_samples = 1000;
        s.fast_samples = 5000;
        s.uses_mc = true;
        break;
    case FigureId::OutHoppingNlos:
        s.slow_samples = 2000;
        s.fast_samples = 10000;
        s.uses_mc = true;
        break;
    case FigureId::OutHoppingLos:
        s.p_values = {0.0, 0.5, 1.0};
        s.a_values = {3.0};
        s.slow_samples = 2000;
        s.fast_samples = 10000;
        s.uses_mc = true;
        break;
    case FigureId::EpsCapNlos:
        s.n_values = {20, 50};
        break;
    case FigureId::OutQuantized:
        s.p_values = {0.5};
        s.k_values = {2, 3, 10};
        s.slow_samples = 2000;
        s.fast_samples = 100000;
        s.uses_mc = true;
        break;
    case FigureId::QuantizedSweepK2:
        s.k_values = {2};
        s.slow_samples = 2000;
        s.fast_samples = 100000;
        s.uses_mc = true;
        break;
    case FigureId::StaticNlos:
        s.slow_samples = 1000000;
        s.fast_samples = 1;
        s.uses_mc = true;
        break;
    case FigureId::SchemeComparison:
        s.p_values = {0.5};
        break;
    case FigureId::CosineHistogram:
        s.n_values = {4, 50};
        s.p_values = {1.0};
        s.k_values = {4};
        s.slow_samples = 1000000;
        s.fast_samples = 1;
        s.grid_points = 80;
        s.uses_mc = true;
        break;
    }
    return s;
}

[[noreturn]] inline void override_error(FigureId id, const std::string& what) {
    throw std::invalid_argument("figure " + std::string(to_string(id)) + ": " + what);
}

} // namespace detail

/// Figure defaults with the overrides applied and checked.
inline FigureSpec resolve(FigureId id, const FigureOverrides& o = {}) {
    using detail::override_error;
    auto s = detail::defaults(id);
    const bool is_los = id == FigureId::ErgCapLos || id == FigureId::OutHoppingLos;
    const bool is_quantized = !s.k_values.empty();

    if (o.n_elements) {
        if (*o.n_elements < 1) {
            override_error(id, "n must be >= 1");
        }
        s.n_values = {*o.n_elements};
    }
    if (o.link_prob) {
        if (!(*o.link_prob >= 0.0 && *o.link_prob <= 1.0)) {
            override_error(id, "p must lie in [0, 1]");
        }
        if (id == FigureId::ErgCapCompare || id == FigureId::ErgCapLos || id == FigureId::CosineHistogram) {
            override_error(id, "p does not apply (the figure is over the available-link count)");
        }
        s.p_values = {*o.link_prob};
    }
    if (o.los_amplitude) {
        if (!is_los && *o.los_amplitude != 0.0) {
            override_error(id, "a LOS amplitude is only valid for the LOS figures");
        }
        if (!(*o.los_amplitude >= 0.0) || !std::isfinite(*o.los_amplitude)) {
            override_error(id, "a must be finite and >= 0");
        }
        if (is_los) {
            s.a_values = {*o.los_amplitude};
        }
    }
    if (o.quant_levels) {
        if (!is_quantized) {
            override_error(id, "k is only valid for the quantized figures");
        }
        if (*o.quant_levels < 2) {
            override_error(id, "k must be >= 2");
        }
        s.k_values = {*o.quant_levels};
    }
    if (o.method) {
        if (id == FigureId::ErgCapCompare || id == FigureId::CosineHistogram) {
            override_error(id, "method does not apply (the figure shows fixed methods)");
        }
        if (is_los && *o.method == analytic::CapacityMethod::ExactHankel) {
            override_error(id, "the exact method requires a = 0");
        }
        s.method = *o.method;
    }
    if (o.slow_samples || o.fast_samples || o.seed) {
        if (!s.uses_mc) {
            override_error(id, "Monte-Carlo settings do not apply (the figure is analytic only)");
        }
        if (o.slow_samples) {
            s.slow_samples = *o.slow_samples;
        }
        if (o.fast_samples) {
            s.fast_samples = *o.fast_samples;
        }
        if (o.seed) {
            s.seed = *o.seed;
        }
    }
    if (o.grid_points) {
        if (*o.grid_points < 2) {
            override_error(id, "the grid needs at least 2 points");
        }
        s.grid_points = *o.grid_points;
    }
    if (s.uses_mc) {
        mc::McConfig probe;
        probe.slow_samples = s.slow_samples;
        probe.fast_samples = s.fast_samples;
        probe.validate();
    }
    return s;
}

inline Json to_json(const FigureSpec& s) {
    Json j;
    j["figure_id"] = std::string(to_string(s.id));
    j["n"] = s.n_values;
    j["p"] = s.p_values;
    j["a"] = s.a_values;
    j["k"] = s.k_values;
    j["method"] = std::string(risphase::to_string(s.method));
    if (s.uses_mc) {
        j["mc"] = {{"slow", s.slow_samples}, {"fast", s.fast_samples}, {"seed", s.seed}};
    }
    j["grid_points"] = s.grid_points;
    return j;
}

/// Overrides that rebuild exactly the figure described by `metadata`.
inline FigureOverrides overrides_from_metadata(const Json& metadata) {
    const Json& spec = metadata.at("figure");
    const auto id = figure_from_string(spec.at("figure_id").get<std::string>());
    const auto base = detail::defaults(id);
    FigureOverrides o;
    const auto n = spec.at("n").get<std::vector<int>>();
    const auto p = spec.at("p").get<std::vector<double>>();
    const auto a = spec.at("a").get<std::vector<double>>();
    const auto k = spec.at("k").get<std::vector<int>>();
    if (n != base.n_values) {
        o.n_elements = n.at(0);
    }
    if (p != base.p_values) {
        o.link_prob = p.at(0);
    }
    if (a != base.a_values) {
        o.los_amplitude = a.at(0);
    }
    if (k != base.k_values) {
        o.quant_levels = k.at(0);
    }
    const auto method = method_from_string(spec.at("method").get<std::string>());
    if (method != base.method) {
        o.method = method;
    }
    if (spec.contains("mc")) {
        o.slow_samples = spec["mc"].at("slow").get<long long>();
        o.fast_samples = spec["mc"].at("fast").get<long long>();
        o.seed = spec["mc"].at("seed").get<std::uint64_t>();
    }
    o.grid_points = spec.at("grid_points").get<int>();
    return o;
}

namespace detail {

inline Scenario make_scenario(int n, double p, double a, Scheme scheme, int k = 2) {
    Scenario s;
    s.n_elements = n;
    s.link_probs = p;
    s.los_amplitude = a;
    s.scheme = scheme;
    s.quant_levels = k;
    return s;
}

inline mc::McResult simulate(const FigureSpec& spec, const Scenario& scenario) {
    return mc::run({scenario, spec.slow_samples, spec.fast_samples, spec.seed});
}

inline std::vector<double> ecdf_on(const mc::McResult& res, const std::vector<double>& rates) {
    std::vector<double> out;
    out.reserve(rates.size());
    for (const double r : rates) {
        out.push_back(res.outage(r));
    }
    return out;
}

template <class F>
std::vector<double> tabulate(const std::vector<double>& xs, F&& f) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (const double x : xs) {
        out.push_back(f(x));
    }
    return out;
}

inline double top_capacity(int n, double a, analytic::CapacityMethod method) {
    return a == 0.0 ? analytic::erg_capacity_nlos(n, method) : analytic::erg_capacity_los(n, a);
}

inline void scenario_echo(Json& meta, const Scenario& s) { meta["scenarios"].push_back(risphase::to_json(s)); }

} // namespace detail

/// Builds the dataset of one figure. Outage figures share a rate grid of
/// `grid_points` points on [0, C(N) + 1].
inline FigureDataset build_figure(FigureId id, const FigureOverrides& overrides = {}) {
    using analytic::CapacityMethod;
    const FigureSpec spec = resolve(id, overrides);
    FigureDataset ds;
    ds.figure_id = id;
    ds.metadata["figure"] = to_json(spec);
    ds.metadata["scenarios"] = Json::array();
    const int n = spec.n_values.front();

    auto rate_grid = [&](double a) {
        const double hi = detail::top_capacity(n, a, spec.method) + 1.0;
        ds.metadata["rate_grid"] = {{"lo", 0.0}, {"hi", hi}, {"points", spec.grid_points}};
        return detail::linspace(0.0, hi, spec.grid_points);
    };

    switch (id) {
    case FigureId::ErgCapCompare: {
        std::vector<double> links, exact, approx;
        for (int i = 1; i <= n; ++i) {
            links.push_back(i);
            exact.push_back(analytic::erg_capacity_nlos(i, CapacityMethod::ExactHankel));
            approx.push_back(analytic::erg_capacity_nlos(i, CapacityMethod::ApproxEi));
        }
        ds.add("n_links", std::move(links));
        ds.add("exact", std::move(exact));
        ds.add("approx", std::move(approx));
        break;
    }
    case FigureId::ErgCapLos: {
        std::vector<double> links;
        for (int i = 0; i <= n; ++i) {
            links.push_back(i);
        }
        ds.add("n_links", links);
        for (const double a : spec.a_values) {
            std::vector<double> approx, sim;
            for (int i = 0; i <= n; ++i) {
                approx.push_back(a == 0.0 ? analytic::erg_capacity_nlos(i, spec.method)
                                          : analytic::erg_capacity_los(i, a));
                // Exactly i available links: i elements that are always on.
                const auto sc = detail::make_scenario(std::max(i, 1), i > 0 ? 1.0 : 0.0, a, Scheme::Hopping);
                const auto res = detail::simulate(spec, sc);
                double mean = 0.0;
                for (const double c : res.per_slow_capacity) {
                    mean += c;
                }
                sim.push_back(mean / static_cast<double>(res.per_slow_capacity.size()));
            }
            ds.add("approx_a" + detail::label(a), std::move(approx));
            ds.add("mc_a" + detail::label(a), std::move(sim));
        }
        for (const double a : spec.a_values) {
            detail::scenario_echo(ds.metadata, detail::make_scenario(n, 1.0, a, Scheme::Hopping));
        }
        break;
    }
    case FigureId::OutHoppingNlos:
    case FigureId::OutHoppingLos: {
        const double a = spec.a_values.front();
        const auto rates = rate_grid(a);
        ds.add("rate", rates);
        for (const double p : spec.p_values) {
            const auto sc = detail::make_scenario(n, p, a, Scheme::Hopping);
            const analytic::HoppingOutage curve(sc, spec.method);
            ds.add("analytic_p" + detail::label(p), detail::tabulate(rates, curve));
            ds.add("mc_p" + detail::label(p), detail::ecdf_on(detail::simulate(spec, sc), rates));
            detail::scenario_echo(ds.metadata, sc);
        }
        break;
    }
    case FigureId::EpsCapNlos: {
        const auto eps = detail::logspace(1e-9, 1e-1, spec.grid_points);
        ds.add("eps", eps);
        for (const int nn : spec.n_values) {
            for (const double p : spec.p_values) {
                const auto sc = detail::make_scenario(nn, p, 0.0, Scheme::Hopping);
                const auto dist = sc.link_count_distribution();
                const auto ladder = analytic::capacity_ladder(nn, 0.0, spec.method);
                ds.add("n" + std::to_string(nn) + "_p" + detail::label(p), detail::tabulate(eps, [&](double e) {
                           return ladder[static_cast<std::size_t>(specfun::quantile(dist, e))];
                       }));
                detail::scenario_echo(ds.metadata, sc);
            }
        }
        ds.metadata["eps_grid"] = {{"lo", 1e-9}, {"hi", 1e-1}, {"points", spec.grid_points}, {"spacing", "log"}};
        break;
    }
    case FigureId::OutQuantized:
    case FigureId::QuantizedSweepK2: {
        const auto rates = rate_grid(0.0);
        ds.add("rate", rates);
        for (const double p : spec.p_values) {
            const auto continuous = detail::make_scenario(n, p, 0.0, Scheme::Hopping);
            const analytic::HoppingOutage curve(continuous, spec.method);
            const std::string suffix = spec.p_values.size() > 1 ? "_p" + detail::label(p) : "";
            ds.add("analytic" + suffix, detail::tabulate(rates, curve));
            for (const int k : spec.k_values) {
                const auto sc = detail::make_scenario(n, p, 0.0, Scheme::QuantizedHopping, k);
                ds.add("mc_k" + std::to_string(k) + suffix, detail::ecdf_on(detail::simulate(spec, sc), rates));
                detail::scenario_echo(ds.metadata, sc);
            }
        }
        break;
    }
    case FigureId::StaticNlos: {
        const auto rates = rate_grid(0.0);
        ds.add("rate", rates);
        for (const double p : spec.p_values) {
            const auto sc = detail::make_scenario(n, p, 0.0, Scheme::Static);
            const analytic::StaticOutage exact(sc, CapacityMethod::ExactHankel);
            const analytic::StaticOutage approx(sc, CapacityMethod::ApproxEi);
            ds.add("exact_p" + detail::label(p), detail::tabulate(rates, exact));
            ds.add("approx_p" + detail::label(p), detail::tabulate(rates, approx));
            ds.add("mc_p" + detail::label(p), detail::ecdf_on(detail::simulate(spec, sc), rates));
            detail::scenario_echo(ds.metadata, sc);
        }
        break;
    }
    case FigureId::SchemeComparison: {
        const auto rates = rate_grid(0.0);
        const double p = spec.p_values.front();
        const auto hop = detail::make_scenario(n, p, 0.0, Scheme::Hopping);
        const auto stat = detail::make_scenario(n, p, 0.0, Scheme::Static);
        const auto perf = detail::make_scenario(n, p, 0.0, Scheme::Perfect);
        const analytic::HoppingOutage hopping(hop, spec.method);
        const analytic::StaticOutage fixed(stat, CapacityMethod::ExactHankel);
        ds.add("rate", rates);
        ds.add("hopping", detail::tabulate(rates, hopping));
        ds.add("static", detail::tabulate(rates, fixed));
        ds.add("perfect", detail::tabulate(rates, [&](double r) { return analytic::outage_perfect(perf, r); }));
        for (const auto& sc : {hop, stat, perf}) {
            detail::scenario_echo(ds.metadata, sc);
        }
        ds.metadata["static_method"] = "exact";
        break;
    }
    case FigureId::CosineHistogram: {
        const int k = spec.k_values.front();
        for (const int nn : spec.n_values) {
            // +-4 for N = 4 and +-20 for N = 50, otherwise scaled with the spread.
            const double half = nn <= 4 ? 4.0 : std::max(4.0, 20.0 * std::sqrt(nn / 50.0));
            const auto h = mc::quantized_sum_histogram(nn, k, spec.slow_samples, spec.seed, spec.grid_points,
                                                       -half, half);
            const double var = 0.5 * nn;
            const std::string tag = "_n" + std::to_string(nn);
            ds.add("center" + tag, h.centers);
            ds.add("density" + tag, h.density);
            ds.add("gauss" + tag, detail::tabulate(h.centers, [&](double x) {
                       return std::exp(-x * x / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
                   }));
        }
        break;
    }
    }
    ds.validate();
    return ds;
}

// Serialization.

namespace detail {

inline std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text, const std::string& where) {
    double x = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    if (!text.empty() && *first == '+') {
        ++first;
    }
    const auto res = std::from_chars(first, last, x);
    if (res.ec != std::errc{} || res.ptr != last) {
        throw std::runtime_error(where + ": cannot parse number '" + std::string(text) + "'");
    }
    return x;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error(path + ": cannot open for writing");
    }
    return out;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error(path + ": cannot open for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace detail

inline void write_csv(const FigureDataset& ds, std::ostream& out) {
    ds.validate();
    for (std::size_t c = 0; c < ds.columns.size(); ++c) {
        out << (c ? "," : "") << ds.columns[c].first;
    }
    out << '\n';
    for (std::size_t r = 0; r < ds.rows(); ++r) {
        for (std::size_t c = 0; c < ds.columns.size(); ++c) {
            out << (c ? "," : "") << detail::format_double(ds.columns[c].second[r]);
        }
        out << '\n';
    }
}

inline void write_csv(const FigureDataset& ds, const std::string& path) {
    auto out = detail::open_out(path);
    write_csv(ds, out);
    out.flush();
    if (!out) {
        throw std::runtime_error(path + ": write failed");
    }
}

inline FigureDataset parse_csv(std::string_view text, const std::string& where = "csv") {
    FigureDataset ds;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line_no == 1) {
            if (line.empty()) {
                return ds;
            }
            for (const auto name : detail::split(line, ',')) {
                ds.columns.emplace_back(std::string(name), std::vector<double>{});
            }
            continue;
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = detail::split(line, ',');
        const std::string at = where + ":" + std::to_string(line_no);
        if (fields.size() != ds.columns.size()) {
            throw std::runtime_error(at + ": expected " + std::to_string(ds.columns.size()) + " fields");
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            ds.columns[c].second.push_back(detail::parse_double(fields[c], at));
        }
    }
    return ds;
}

inline FigureDataset read_csv(const std::string& path) { return parse_csv(detail::slurp(path), path); }

inline Json to_json(const FigureDataset& ds) {
    ds.validate();
    Json j;
    j["metadata"] = ds.metadata;
    j["columns"] = Json::object();
    for (const auto& [name, values] : ds.columns) {
        j["columns"][name] = values;
    }
    return j;
}

inline FigureDataset dataset_from_json(const Json& j) {
    FigureDataset ds;
    ds.metadata = j.at("metadata");
    if (ds.metadata.contains("figure")) {
        ds.figure_id = figure_from_string(ds.metadata["figure"].at("figure_id").get<std::string>());
    }
    for (const auto& [name, values] : j.at("columns").items()) {
        std::vector<double> column;
        for (const auto& v : values) {
            column.push_back(v.is_null() ? std::nan("") : v.get<double>());
        }
        ds.columns.emplace_back(name, std::move(column));
    }
    ds.validate();
    return ds;
}

inline void write_json(const FigureDataset& ds, const std::string& path) {
    auto out = detail::open_out(path);
    out << to_json(ds).dump(1) << '\n';
    out.flush();
    if (!out) {
        throw std::runtime_error(path + ": write failed");
    }
}

inline FigureDataset read_json(const std::string& path) {
    const auto text = detail::slurp(path);
    try {
        return dataset_from_json(Json::parse(text));
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

} // namespace risphase::report
