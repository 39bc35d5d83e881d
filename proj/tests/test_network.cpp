#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include <deadline/baselines.hpp>
#include <deadline/gen.hpp>
#include <deadline/network.hpp>

#include "oracle.hpp"

using namespace deadline;
using Catch::Approx;

namespace {

const Pmf kCoin = make_pmf({{0, 0.5}, {1, 0.5}});

TaskTree leaf(const Pmf& p) { return TaskTree::primitive(p); }

} // namespace

TEST_CASE("node_count", "[network]") {
    CHECK(node_count(leaf(kCoin)) == 1);
    CHECK(node_count(TaskTree::sequence({leaf(kCoin), leaf(kCoin)})) == 3);
    const TaskTree pair = TaskTree::sequence({leaf(kCoin), leaf(kCoin)});
    CHECK(node_count(TaskTree::parallel({pair, pair})) == 7);
    CHECK_THROWS_AS(TaskTree::sequence({}), Error);
}

TEST_CASE("child_budget", "[network]") {
    const TaskTree seq = TaskTree::sequence({leaf(kCoin), leaf(kCoin)});
    CHECK(child_budget(seq, 0.3, 0) == Approx(0.1));
    CHECK(child_budget(seq, 0.3, 1) == Approx(0.1));
    CHECK(sequence_trim_parameter(seq, 0.3) == Approx(0.05));

    const TaskTree par = TaskTree::parallel({leaf(kCoin), leaf(kCoin)});
    // min(1 * 0.3 / 3, 1 / (2 * (3 * 2 + 1)))
    CHECK(child_budget(par, 0.3, 0) == Approx(1.0 / 14.0));
    CHECK(child_budget(par, 0.001, 0) == Approx(0.001 / 3.0));

    CHECK_THROWS_MATCHES(child_budget(leaf(kCoin), 0.3, 0), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == Errc::NotComposite; }));
}

TEST_CASE("sequence budgets add up to eps", "[network][property]") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const TaskTree t = generate(GenSpec::random_mixed(2 + rng() % 30, 2, rng()));
        // Walk every Sequence node; budgets are a fixed-point check on the formulas.
        auto walk = [&](auto&& self, const TaskTree& node) -> void {
            if (node.is_primitive()) return;
            if (node.kind() == NodeKind::Sequence) {
                const double eps = 0.37;
                double total = static_cast<double>(node.children().size()) * sequence_trim_parameter(node, eps);
                for (std::size_t i = 0; i < node.children().size(); ++i) total += child_budget(node, eps, i);
                CHECK(total == Approx(eps).epsilon(1e-12));
            } else {
                const double eps = 0.37;
                double total = 0.0;
                for (std::size_t i = 0; i < node.children().size(); ++i) total += child_budget(node, eps, i);
                CHECK(total <= eps - eps / static_cast<double>(node.size()) + 1e-12);
            }
            for (const TaskTree& c : node.children()) self(self, c);
        };
        walk(walk, t);
    }
}

TEST_CASE("network_approx examples", "[network]") {
    const Pmf x = make_pmf({{1, 0.1}, {2, 0.1}, {4, 0.8}});
    for (double eps : {0.01, 0.5, 0.9}) {
        CHECK(network_approx(leaf(x), eps, BoundSide::Upper) == x);
        CHECK(network_approx(leaf(x), eps, BoundSide::Lower) == x);
    }

    const TaskTree par = TaskTree::parallel({leaf(x), leaf(kCoin), leaf(make_pmf({{3, 0.3}, {5, 0.7}}))});
    const Pmf exact = parallel_compose(std::vector<Pmf>{x, kCoin, make_pmf({{3, 0.3}, {5, 0.7}})});
    CHECK(network_approx(par, 0.5, BoundSide::Upper) == exact);
    CHECK(network_approx(par, 0.5, BoundSide::Lower) == exact);

    // Children pass through; trim parameter 0.3 / (2 * 3) = 0.05 merges nothing.
    const Pmf seq = network_approx(TaskTree::sequence({leaf(kCoin), leaf(kCoin)}), 0.3, BoundSide::Upper);
    REQUIRE(seq.size() == 3);
    CHECK(seq.probs()[0] == Approx(0.25));
    CHECK(seq.probs()[1] == Approx(0.5));
    CHECK(seq.probs()[2] == Approx(0.25));

    CHECK_THROWS_MATCHES(network_approx(par, 0.0, BoundSide::Upper), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == Errc::InvalidEpsilon; }));
}

TEST_CASE("bracket and deadline_probability", "[network]") {
    const Pmf x = make_pmf({{1, 0.2}, {4, 0.8}});
    const CdfBracket b = bracket(leaf(x), 0.1);
    CHECK(b.upper == x);
    CHECK(b.lower == x);

    const auto iv = deadline_probability(leaf(x), 2.0, 0.1);
    CHECK(iv.lo == Approx(0.2));
    CHECK(iv.hi == Approx(0.2));
    CHECK(iv.deadline == 2.0);

    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        const TaskTree t = generate(GenSpec::random_mixed(1 + rng() % 12, 1 + rng() % 4, rng()));
        const double eps = trial % 2 == 0 ? 0.1 : 0.01;
        double max_total = 0.0;
        double min_total = 0.0;
        // Sum of all maxima bounds the makespan from above; the smallest
        // primitive minimum bounds it from below for every tree shape.
        auto walk = [&](auto&& self, const TaskTree& n) -> void {
            if (n.is_primitive()) {
                max_total += n.pmf().max();
                return;
            }
            for (const TaskTree& c : n.children()) self(self, c);
        };
        walk(walk, t);
        const Pmf exact = exact_distribution(t);
        min_total = exact.min();

        const auto done = deadline_probability(t, max_total, eps);
        CHECK(done.lo == 1.0);
        CHECK(done.hi == 1.0);

        const auto early = deadline_probability(t, min_total - 0.5, eps);
        CHECK(early.lo == 0.0);
        CHECK(early.hi <= eps + 1e-12);
    }
}

TEST_CASE("bracket contains the exact CDF on random trees", "[network][property]") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 120; ++trial) {
        const TaskTree t = generate(GenSpec::random_mixed(1 + rng() % 12, 1 + rng() % 4, rng()));
        const double eps = trial % 2 == 0 ? 0.1 : 0.01;
        const auto exact = oracle::enumerate(t);
        const CdfBracket b = bracket(t, eps);
        const Pmf exact_pmf = exact_distribution(t);
        for (double tt : oracle::probe_points({&exact_pmf, &b.upper, &b.lower})) {
            const double f = oracle::cdf(exact, tt);
            const double fu = b.cdf_upper(tt);
            const double fl = b.cdf_lower(tt);
            CHECK(fl <= f + 1e-9);
            CHECK(f <= fu + 1e-9);
            CHECK(fu - f <= eps + 1e-9);
            CHECK(f - fl <= eps + 1e-9);
            CHECK(fu - fl <= 2 * eps + 1e-9);
        }
        const auto ei = expectation_interval(b);
        CHECK(ei.lo <= expectation(exact_pmf) + 1e-9);
        CHECK(expectation(exact_pmf) <= ei.hi + 1e-9);
    }
}

TEST_CASE("sequence of ten uniforms at the exact median", "[network]") {
    const TaskTree t = generate(GenSpec::linear(11, 4, 3));
    const Pmf exact = exact_distribution(t);
    StepCdf f(exact);
    const auto it = std::lower_bound(f.cums().begin(), f.cums().end(), 0.5);
    const double median = f.support()[static_cast<std::size_t>(it - f.cums().begin())];
    const auto iv = deadline_probability(t, median, 0.1);
    CHECK(iv.lo <= f(median) + 1e-9);
    CHECK(f(median) <= iv.hi + 1e-9);
    CHECK(iv.width() <= 0.2 + 1e-12);
}

TEST_CASE("expectation_interval", "[network]") {
    const Pmf two = make_pmf({{1, 0.5}, {3, 0.5}});
    const auto same = expectation_interval(CdfBracket{two, two, 0.1});
    CHECK(same.lo == 2.0);
    CHECK(same.hi == 2.0);
    const auto wide = expectation_interval(CdfBracket{Pmf::point(1), Pmf::point(4), 0.1});
    CHECK(wide.lo == 1.0);
    CHECK(wide.hi == 4.0);
}

TEST_CASE("concurrent sibling evaluation is bit-identical", "[network][concurrency]") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        const TaskTree t = generate(GenSpec::random_mixed(20 + rng() % 20, 4, rng()));
        NetworkOptions threaded;
        threaded.concurrent_depth = 3;
        for (auto side : {BoundSide::Upper, BoundSide::Lower}) {
            const Pmf a = network_approx(t, 0.05, side);
            const Pmf b = network_approx(t, 0.05, side, threaded);
            const Pmf c = network_approx(t, 0.05, side);
            CHECK(a == b);
            CHECK(a == c);
        }
    }
}
