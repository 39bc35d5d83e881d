// Command-line front end: eval, cdf, bench and gen over JSON plan files.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <deadline/deadline.hpp>

namespace {

using namespace deadline;

constexpr int kExitInput = 2;       // unreadable, malformed or invalid plan
constexpr int kExitInfeasible = 3;  // support cap exceeded
constexpr int kExitInvalid = 4;     // other rejected arguments

std::size_t resolve_cap(std::optional<std::size_t> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("DEADLINE_SUPPORT_CAP")) {
        try {
            return static_cast<std::size_t>(std::stoull(env));
        } catch (const std::exception&) {
            throw Error(Errc::InvalidSpec, std::string("DEADLINE_SUPPORT_CAP is not a count: ") + env);
        }
    }
    return kDefaultSupportCap;
}

int exit_code_for(Errc code) {
    switch (code) {
    case Errc::SupportCapExceeded: return kExitInfeasible;
    case Errc::ParseError:
    case Errc::SchemaError:
    case Errc::IoError:
    case Errc::NegativeValue:
    case Errc::NonPositiveProbability:
    case Errc::MassNotOne:
    case Errc::InvalidRange:
    case Errc::ZeroBins:
    case Errc::EmptyInput: return kExitInput;
    default: return kExitInvalid;
    }
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw Error(Errc::IoError, "cannot write " + path);
    return file;
}

struct EvalArgs {
    std::string plan;
    double deadline = 0.0;
    double eps = 0.01;
    std::string mode = "interval";
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 1;
    std::optional<std::size_t> cap;
};

int run_eval(const EvalArgs& a) {
    const TaskTree tree = load_plan(a.plan);
    NetworkOptions opts;
    opts.support_cap = resolve_cap(a.cap);
    std::cout << "mode=" << a.mode << '\n' << "deadline=" << format_double(a.deadline) << '\n';

    if (a.mode == "interval") {
        const auto iv = deadline_probability(tree, a.deadline, a.eps, opts);
        std::cout << "eps=" << format_double(a.eps) << '\n'
                  << "lo=" << format_double(iv.lo) << '\n'
                  << "hi=" << format_double(iv.hi) << '\n';
    } else if (a.mode == "upper" || a.mode == "lower") {
        const auto side = a.mode == "upper" ? BoundSide::Upper : BoundSide::Lower;
        const double p = cdf_at(network_approx(tree, a.eps, side, opts), a.deadline);
        std::cout << "eps=" << format_double(a.eps) << '\n' << "p=" << format_double(p) << '\n';
        // The true value lies within eps on the far side of p.
        std::cout << "guarantee=" << (side == BoundSide::Upper ? "true_in[p-eps,p]" : "true_in[p,p+eps]") << '\n';
    } else if (a.mode == "exact") {
        try {
            const double p = cdf_at(exact_distribution(tree, opts.support_cap), a.deadline);
            std::cout << "status=ok\n" << "p=" << format_double(p) << '\n';
        } catch (const Error& e) {
            if (e.code() != Errc::SupportCapExceeded) throw;
            std::cout << "status=infeasible\n" << "cap=" << opts.support_cap << '\n';
            return kExitInfeasible;
        }
    } else if (a.mode == "sample") {
        const auto est = estimate_deadline_probability(tree, a.deadline, a.samples, a.seed);
        std::cout << "p_hat=" << format_double(est.p_hat) << '\n'
                  << "n_samples=" << est.n_samples << '\n'
                  << "seed=" << est.seed << '\n'
                  << "confidence=" << format_double(kSampleConfidence) << '\n'
                  << "hoeffding_halfwidth=" << format_double(est.hoeffding_halfwidth) << '\n';
    }
    return 0;
}

struct CdfArgs {
    std::string plan;
    double eps = 0.01;
    std::string side = "both";
    std::string out;
    std::optional<std::size_t> cap;
};

int run_cdf(const CdfArgs& a) {
    const TaskTree tree = load_plan(a.plan);
    NetworkOptions opts;
    opts.support_cap = resolve_cap(a.cap);
    CdfBracket b;
    if (a.side == "both") {
        b = bracket(tree, a.eps, opts);
    } else {
        // A single side fills both columns with that side's CDF.
        const Pmf one = network_approx(tree, a.eps, a.side == "upper" ? BoundSide::Upper : BoundSide::Lower, opts);
        b = CdfBracket{one, one, a.eps};
    }
    std::ofstream file;
    write_cdf_csv(open_output(a.out, file), b);
    return 0;
}

struct BenchArgs {
    std::string matrix;
    std::string out;
    std::optional<std::size_t> cap;
};

int run_bench_cmd(const BenchArgs& a) {
    BenchMatrix m;
    if (auto preset = bench_preset(a.matrix)) {
        m = *preset;
    } else if (std::filesystem::exists(a.matrix)) {
        std::ifstream in(a.matrix);
        std::ostringstream buf;
        buf << in.rdbuf();
        m = parse_bench_matrix(buf.str());
    } else {
        throw Error(Errc::IoError, "no preset or matrix file named '" + a.matrix +
                                       "' (presets: smoke, seq10, seq47, logistics45, full)");
    }
    if (a.cap || std::getenv("DEADLINE_SUPPORT_CAP")) m.support_cap = resolve_cap(a.cap);
    const auto rows = run_bench(m);
    std::ofstream file;
    write_bench_csv(open_output(a.out, file), rows);
    return 0;
}

struct GenArgs {
    std::string family = "linear";
    GenSpec spec;
    std::int64_t low_lo = -1, low_hi = -1, half_lo = -1, half_hi = -1;
    std::string out;
};

int run_gen(GenArgs a) {
    auto family = parse_family(a.family);
    if (!family) throw Error(Errc::InvalidSpec, "unknown family '" + a.family + "'");
    GenSpec spec = a.spec;
    if (*family == Family::RandomMixed) {
        const GenSpec d = GenSpec::random_mixed(spec.nodes, spec.bins, spec.seed, spec.branching);
        spec.low = d.low;
        spec.half_step = d.half_step;
    }
    if (*family == Family::AdversarialTight) spec.nodes = spec.adv_n + 1;
    spec.family = *family;
    if (a.low_lo >= 0) spec.low.lo = a.low_lo;
    if (a.low_hi >= 0) spec.low.hi = a.low_hi;
    if (a.half_lo >= 0) spec.half_step.lo = a.half_lo;
    if (a.half_hi >= 0) spec.half_step.hi = a.half_hi;
    const TaskTree tree = generate(spec);
    if (a.out.empty() || a.out == "-") {
        std::cout << dump_plan(tree) << '\n';
    } else {
        save_plan(tree, a.out);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified deadline-probability brackets for series-parallel plans.\n"
                 "Deadlines are non-strict: every reported probability is Pr(makespan <= T).\n"
                 "DEADLINE_SUPPORT_CAP overrides the default support cap (10000000 atoms)."};
    app.require_subcommand(1);

    EvalArgs eval;
    auto* eval_cmd = app.add_subcommand("eval", "Probability that the plan meets a deadline");
    eval_cmd->add_option("plan", eval.plan, "Plan file (JSON)")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--deadline,-T", eval.deadline, "Deadline T")->required();
    eval_cmd->add_option("--eps", eval.eps, "Guaranteed one-sided CDF error")->capture_default_str();
    eval_cmd->add_option("--mode", eval.mode, "interval | upper | lower | exact | sample")
        ->check(CLI::IsMember({"interval", "upper", "lower", "exact", "sample"}))
        ->capture_default_str();
    eval_cmd->add_option("--samples", eval.samples, "Sample count (sample mode)")->capture_default_str();
    eval_cmd->add_option("--seed", eval.seed, "Sampler seed (sample mode)")->capture_default_str();
    eval_cmd->add_option("--cap", eval.cap, "Support cap for exact intermediates");

    CdfArgs cdf;
    auto* cdf_cmd = app.add_subcommand("cdf", "Export the CDF bracket as CSV");
    cdf_cmd->add_option("plan", cdf.plan, "Plan file (JSON)")->required()->check(CLI::ExistingFile);
    cdf_cmd->add_option("--eps", cdf.eps, "Guaranteed one-sided CDF error")->capture_default_str();
    cdf_cmd->add_option("--side", cdf.side, "both | upper | lower")
        ->check(CLI::IsMember({"both", "upper", "lower"}))
        ->capture_default_str();
    cdf_cmd->add_option("--out,-o", cdf.out, "Output CSV (default stdout)");
    cdf_cmd->add_option("--cap", cdf.cap, "Support cap for exact intermediates");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark matrix and write BenchRow CSV");
    bench_cmd->add_option("matrix", bench.matrix, "Preset name or matrix JSON file")->required();
    bench_cmd->add_option("--out,-o", bench.out, "Output CSV (default stdout)");
    bench_cmd->add_option("--cap", bench.cap, "Support cap for the exact oracle");

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a benchmark plan");
    gen_cmd->add_option("--family", gen.family, "linear | logistics | random | adversarial")->capture_default_str();
    gen_cmd->add_option("--nodes,-N", gen.spec.nodes, "Target node count")->capture_default_str();
    gen_cmd->add_option("--bins,-M", gen.spec.bins, "Atoms per primitive")->capture_default_str();
    gen_cmd->add_option("--seed", gen.spec.seed, "Generator seed")->capture_default_str();
    gen_cmd->add_option("--branching", gen.spec.branching, "Max children (random)")->capture_default_str();
    gen_cmd->add_option("--routes", gen.spec.routes, "Parallel routes (logistics)")->capture_default_str();
    gen_cmd->add_option("--low-min", gen.low_lo, "Lowest primitive start value");
    gen_cmd->add_option("--low-max", gen.low_hi, "Highest primitive start value");
    gen_cmd->add_option("--half-step-min", gen.half_lo, "Smallest half atom spacing (0 = point mass)");
    gen_cmd->add_option("--half-step-max", gen.half_hi, "Largest half atom spacing");
    gen_cmd->add_option("--adv-n", gen.spec.adv_n, "Variables (adversarial)")->capture_default_str();
    gen_cmd->add_option("--adv-eps", gen.spec.adv_eps, "Target error (adversarial)")->capture_default_str();
    gen_cmd->add_option("--adv-delta", gen.spec.adv_delta, "Small mass delta (adversarial)")->capture_default_str();
    gen_cmd->add_option("--out,-o", gen.out, "Output plan file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*eval_cmd) return run_eval(eval);
        if (*cdf_cmd) return run_cdf(cdf);
        if (*bench_cmd) return run_bench_cmd(bench);
        if (*gen_cmd) return run_gen(gen);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
    return 0;
}
