#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <deadline/gen.hpp>
#include <deadline/plan_io.hpp>

using namespace deadline;
using Catch::Approx;

TEST_CASE("linear plan of point masses", "[gen]") {
    GenSpec s = GenSpec::linear(3, 1, 5);
    s.half_step = {0, 0};
    const TaskTree t = generate(s);
    REQUIRE(t.kind() == NodeKind::Sequence);
    REQUIRE(t.children().size() == 2);
    for (const TaskTree& c : t.children()) {
        REQUIRE(c.pmf().size() == 1);
        CHECK(c.pmf().probs()[0] == 1.0);
        CHECK(c.pmf().min() >= 0.0);
        CHECK(c.pmf().min() <= 100.0);
    }
}

TEST_CASE("linear atoms sit on the integer lattice", "[gen]") {
    const TaskTree t = generate(GenSpec::linear(10, 10, 3));
    CHECK(node_count(t) == 10);
    for (const TaskTree& c : t.children()) {
        REQUIRE(c.pmf().size() == 10);
        for (double v : c.pmf().support()) CHECK(v == std::floor(v));
    }
}

TEST_CASE("adversarial family atoms", "[gen]") {
    const double eps = 0.2;
    const double delta = 1e-6;
    const TaskTree t = generate(GenSpec::adversarial(2, eps, delta));
    REQUIRE(t.children().size() == 2);
    const Pmf& x1 = t.children()[0].pmf();
    REQUIRE(x1.size() == 4);
    CHECK(x1.support()[0] == 0.0);
    CHECK(x1.probs()[0] == Approx(delta));
    CHECK(x1.probs()[1] == Approx(eps / (2 * (1 - delta))));
    CHECK(x1.probs()[2] == Approx(eps / (2 * (1 - delta) * (1 - delta))));
    CHECK(x1.support()[3] == 3.0);
    const Pmf& x2 = t.children()[1].pmf();
    REQUIRE(x2.size() == 2);
    CHECK(x2.support()[1] == 4.0);
    CHECK(x2.probs()[0] == Approx(1 - delta));
}

TEST_CASE("generation is deterministic", "[gen]") {
    for (auto spec : {GenSpec::linear(12, 4, 9), GenSpec::logistics(45, 4, 9), GenSpec::random_mixed(30, 3, 9),
                      GenSpec::adversarial(10, 0.1)}) {
        CHECK(generate(spec) == generate(spec));
        CHECK(dump_plan(generate(spec)) == dump_plan(generate(spec)));
    }
    CHECK_FALSE(generate(GenSpec::random_mixed(30, 3, 1)) == generate(GenSpec::random_mixed(30, 3, 2)));
}

TEST_CASE("node counts", "[gen][property]") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 3 + rng() % 60;
        CHECK(node_count(generate(GenSpec::linear(n, 2, rng()))) == n);
        CHECK(node_count(generate(GenSpec::logistics(n, 2, rng()))) == n);
        const std::size_t r = node_count(generate(GenSpec::random_mixed(n, 2, rng())));
        CHECK(r >= n);
        CHECK(r < n + 3);
    }
}

TEST_CASE("invalid generator specs", "[gen][errors]") {
    auto is_invalid = Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == Errc::InvalidSpec; });
    CHECK_THROWS_MATCHES(generate(GenSpec::linear(1, 4)), Error, is_invalid);
    CHECK_THROWS_MATCHES(generate(GenSpec::linear(5, 0)), Error, is_invalid);
    CHECK_THROWS_MATCHES(generate(GenSpec::adversarial(0, 0.1)), Error, is_invalid);
    CHECK_THROWS_MATCHES(generate(GenSpec::adversarial(10, 1.5)), Error, is_invalid);
    CHECK_THROWS_MATCHES(generate(GenSpec::random_mixed(10, 2, 1, 1)), Error, is_invalid);
    GenSpec bad = GenSpec::linear(5, 2);
    bad.low = {10, 5};
    CHECK_THROWS_MATCHES(generate(bad), Error, is_invalid);
    CHECK(parse_family("logistics") == Family::LogisticsLike);
    CHECK_FALSE(parse_family("tree").has_value());
}
