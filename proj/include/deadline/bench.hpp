#ifndef DEADLINE_BENCH_HPP
#define DEADLINE_BENCH_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "approx.hpp"
#include "baselines.hpp"
#include "error.hpp"
#include "gen.hpp"
#include "network.hpp"
#include "pmf.hpp"
#include "report.hpp"

namespace deadline {

struct BenchFamily {
    Family family = Family::Linear;
    std::size_t nodes = 10;
    std::uint64_t seed = 1;
};

struct BenchMatrix {
    std::vector<BenchFamily> families;
    std::vector<std::size_t> bins;
    std::vector<double> eps;
    std::vector<std::uint64_t> samples;
    std::uint64_t sample_seed = 7;
    std::size_t support_cap = kDefaultSupportCap;
};

/// One line of the benchmark table. Error columns are the signed deviation
/// from the exact CDF: for `approx` the envelope [min(F_lower - F), max(F_upper - F)]
/// over every deadline, for `sample` the single estimate error at the exact
/// median. They are NaN (empty in CSV) when the exact oracle was infeasible.
struct BenchRow {
    std::string family;
    std::size_t nodes = 0;
    std::size_t bins = 0;
    std::string method;
    double eps = 0.0;
    std::uint64_t n_samples = 0;
    double deadline = std::numeric_limits<double>::quiet_NaN();
    double err_lo = std::numeric_limits<double>::quiet_NaN();
    double err_hi = std::numeric_limits<double>::quiet_NaN();
    double seconds = 0.0;
    std::string exact_status;
    double exact_seconds = 0.0;
    std::string status = "ok";
};

inline std::optional<BenchMatrix> bench_preset(const std::string& name) {
    BenchMatrix m;
    if (name == "smoke") {
        m.families = {{Family::Linear, 4, 1}};
        m.bins = {2};
        m.eps = {0.1};
        m.samples = {1000};
    } else if (name == "seq10") {
        m.families = {{Family::Linear, 10, 1}};
        m.bins = {4, 10};
        m.eps = {0.1, 0.01};
        m.samples = {10'000, 1'000'000};
    } else if (name == "seq47") {
        m.families = {{Family::Linear, 47, 1}};
        m.bins = {10};
        m.eps = {0.1, 0.01};
        m.samples = {10'000, 1'000'000};
    } else if (name == "logistics45") {
        m.families = {{Family::LogisticsLike, 45, 1}};
        m.bins = {4, 10};
        m.eps = {0.1, 0.01};
        m.samples = {10'000, 1'000'000};
    } else if (name == "full") {
        m.families = {{Family::Linear, 10, 1}, {Family::LogisticsLike, 45, 1}, {Family::Linear, 47, 1}};
        m.bins = {4, 10};
        m.eps = {0.1, 0.01};
        m.samples = {10'000, 1'000'000};
    } else {
        return std::nullopt;
    }
    return m;
}

/// Matrix file: {"families": [{"family": "linear", "nodes": 10, "seed": 1}],
/// "bins": [...], "eps": [...], "samples": [...], "sample_seed": 7, "support_cap": N}.
inline BenchMatrix parse_bench_matrix(const std::string& text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::ParseError, e.what());
    }
    BenchMatrix m;
    try {
        for (const json& f : doc.at("families")) {
            auto family = parse_family(f.at("family").get<std::string>());
            if (!family) throw Error(Errc::SchemaError, "unknown family " + f.at("family").dump());
            m.families.push_back({*family, f.at("nodes").get<std::size_t>(), f.value("seed", std::uint64_t{1})});
        }
        m.bins = doc.at("bins").get<std::vector<std::size_t>>();
        m.eps = doc.at("eps").get<std::vector<double>>();
        m.samples = doc.at("samples").get<std::vector<std::uint64_t>>();
        m.sample_seed = doc.value("sample_seed", m.sample_seed);
        m.support_cap = doc.value("support_cap", m.support_cap);
    } catch (const json::exception& e) {
        throw Error(Errc::SchemaError, std::string("bench matrix: ") + e.what());
    }
    return m;
}

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// Smallest support point t with F(t) >= 1/2.
inline double median_of(const Pmf& pmf) {
    StepCdf cdf(pmf);
    auto cums = cdf.cums();
    auto it = std::lower_bound(cums.begin(), cums.end(), 0.5);
    return cdf.support()[static_cast<std::size_t>(it - cums.begin())];
}

} // namespace detail

/// Signed error envelope of a bracket against an exact CDF over every
/// deadline. The differences are step functions that only change on support
/// points, so evaluating on the merged supports covers all T.
struct ErrorEnvelope {
    double lo = 0.0;
    double hi = 0.0;
};

inline ErrorEnvelope error_envelope(const CdfBracket& b, const Pmf& exact) {
    std::vector<double> grid(exact.support().begin(), exact.support().end());
    grid.insert(grid.end(), b.upper.support().begin(), b.upper.support().end());
    grid.insert(grid.end(), b.lower.support().begin(), b.lower.support().end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const StepCdf f(exact);
    const StepCdf fu(b.upper);
    const StepCdf fl(b.lower);
    ErrorEnvelope env{0.0, 0.0};
    bool first = true;
    for (double t : grid) {
        const double up = fu(t) - f(t);
        const double low = fl(t) - f(t);
        if (first) {
            env = {std::min(up, low), std::max(up, low)};
            first = false;
        } else {
            env.lo = std::min({env.lo, low, up});
            env.hi = std::max({env.hi, up, low});
        }
    }
    return env;
}

/// Runs the full {families} x {bins} x {eps} x {samples} matrix. Each cell
/// yields an `approx` row and a `sample` row; the exact oracle runs once per
/// (family, bins) and its outcome is reported on every row of that block.
/// Failures are recorded in the row status and the run continues.
inline std::vector<BenchRow> run_bench(const BenchMatrix& m) {
    std::vector<BenchRow> rows;
    for (const BenchFamily& fam : m.families) {
        for (std::size_t bins : m.bins) {
            GenSpec spec = fam.family == Family::RandomMixed ? GenSpec::random_mixed(fam.nodes, bins, fam.seed)
                                                             : GenSpec::linear(fam.nodes, bins, fam.seed);
            spec.family = fam.family;

            BenchRow base;
            base.family = std::string(family_name(fam.family));
            base.nodes = fam.nodes;
            base.bins = bins;

            std::optional<TaskTree> tree;
            try {
                tree = generate(spec);
            } catch (const Error& e) {
                base.status = std::string("error: ") + e.what();
            }

            std::optional<Pmf> exact;
            if (tree) {
                const auto start = std::chrono::steady_clock::now();
                try {
                    exact = exact_distribution(*tree, m.support_cap);
                    base.exact_status = "ok";
                } catch (const Error& e) {
                    base.exact_status = e.code() == Errc::SupportCapExceeded ? "infeasible" : "error";
                }
                base.exact_seconds = detail::seconds_since(start);
            }
            const double median = exact ? detail::median_of(*exact) : std::numeric_limits<double>::quiet_NaN();

            for (double eps : m.eps) {
                for (std::uint64_t n : m.samples) {
                    BenchRow approx = base;
                    approx.method = "approx";
                    approx.eps = eps;
                    approx.n_samples = n;
                    BenchRow sample = base;
                    sample.method = "sample";
                    sample.eps = eps;
                    sample.n_samples = n;
                    if (tree) {
                        try {
                            const auto start = std::chrono::steady_clock::now();
                            NetworkOptions opts;
                            opts.support_cap = m.support_cap;
                            const CdfBracket b = bracket(*tree, eps, opts);
                            approx.seconds = detail::seconds_since(start);
                            if (exact) {
                                const auto env = error_envelope(b, *exact);
                                approx.err_lo = env.lo;
                                approx.err_hi = env.hi;
                            }
                        } catch (const Error& e) {
                            approx.status = std::string("error: ") + e.what();
                        }

                        const double t = exact ? median : detail::median_of(network_approx(*tree, eps, BoundSide::Upper));
                        sample.deadline = t;
                        approx.deadline = t;
                        const auto start = std::chrono::steady_clock::now();
                        const auto est = estimate_deadline_probability(*tree, t, n, m.sample_seed);
                        sample.seconds = detail::seconds_since(start);
                        if (exact) {
                            const double err = est.p_hat - cdf_at(*exact, t);
                            sample.err_lo = err;
                            sample.err_hi = err;
                        }
                    }
                    rows.push_back(std::move(approx));
                    rows.push_back(std::move(sample));
                }
            }
        }
    }
    return rows;
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "family,N,M,method,eps,n_samples,deadline,err_lo,err_hi,seconds,exact_status,exact_seconds,status\n";
    for (const BenchRow& r : rows) {
        std::string status = r.status;
        std::replace(status.begin(), status.end(), ',', ';');
        out << r.family << ',' << r.nodes << ',' << r.bins << ',' << r.method << ',' << format_double(r.eps) << ','
            << r.n_samples << ',' << format_double(r.deadline) << ',' << format_double(r.err_lo) << ','
            << format_double(r.err_hi) << ',' << format_double(r.seconds) << ',' << r.exact_status << ','
            << format_double(r.exact_seconds) << ',' << status << '\n';
    }
}

} // namespace deadline

#endif
