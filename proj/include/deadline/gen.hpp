#ifndef DEADLINE_GEN_HPP
#define DEADLINE_GEN_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "pmf.hpp"
#include "task_tree.hpp"

namespace deadline {

enum class Family { Linear, LogisticsLike, RandomMixed, AdversarialTight };

inline std::string_view family_name(Family f) {
    switch (f) {
    case Family::Linear: return "linear";
    case Family::LogisticsLike: return "logistics";
    case Family::RandomMixed: return "random";
    case Family::AdversarialTight: return "adversarial";
    }
    return "?";
}

inline std::optional<Family> parse_family(std::string_view name) {
    for (Family f : {Family::Linear, Family::LogisticsLike, Family::RandomMixed, Family::AdversarialTight}) {
        if (family_name(f) == name) return f;
    }
    return std::nullopt;
}

struct IntRange {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

/**
 * Parameters of a generated plan.
 *
 * Primitive durations are discretised uniforms whose atoms sit on an integer
 * lattice: the lower end is drawn from `low`, the atom spacing is twice a
 * value drawn from `half_step`, so atoms are low + (2k + 1) * half_step.
 * Integer atoms keep every sum exact in double precision. A half step of zero
 * yields a point mass at `low`.
 */
struct GenSpec {
    Family family = Family::Linear;
    std::size_t nodes = 10;    ///< target node count N
    std::size_t bins = 10;     ///< discretisation M
    std::size_t branching = 3; ///< max children per composite (RandomMixed)
    std::uint64_t seed = 1;
    IntRange low{0, 100};
    IntRange half_step{1, 80'000};

    std::size_t routes = 4; ///< parallel delivery routes (LogisticsLike)

    // AdversarialTight
    std::size_t adv_n = 10;
    double adv_eps = 0.1;
    double adv_delta = 1e-6;

    static GenSpec linear(std::size_t nodes, std::size_t bins, std::uint64_t seed = 1) {
        GenSpec s;
        s.family = Family::Linear;
        s.nodes = nodes;
        s.bins = bins;
        s.seed = seed;
        return s;
    }

    static GenSpec logistics(std::size_t nodes, std::size_t bins, std::uint64_t seed = 1) {
        GenSpec s;
        s.family = Family::LogisticsLike;
        s.nodes = nodes;
        s.bins = bins;
        s.seed = seed;
        return s;
    }

    static GenSpec random_mixed(std::size_t nodes, std::size_t bins, std::uint64_t seed = 1, std::size_t branching = 3) {
        GenSpec s;
        s.family = Family::RandomMixed;
        s.nodes = nodes;
        s.bins = bins;
        s.seed = seed;
        s.branching = branching;
        s.low = {0, 20};
        s.half_step = {1, 5};
        return s;
    }

    static GenSpec adversarial(std::size_t n, double eps, double delta = 1e-6) {
        GenSpec s;
        s.family = Family::AdversarialTight;
        s.adv_n = n;
        s.adv_eps = eps;
        s.adv_delta = delta;
        s.nodes = n + 1;
        return s;
    }
};

namespace detail {

using GenRng = std::mt19937_64;

inline std::int64_t draw_int(GenRng& rng, IntRange r) {
    const auto span = static_cast<std::uint64_t>(r.hi - r.lo) + 1;
    return r.lo + static_cast<std::int64_t>(rng() % span);
}

inline TaskTree lattice_primitive(std::int64_t low, std::int64_t half_step, std::size_t bins, std::string label) {
    if (half_step == 0) return TaskTree::primitive(Pmf::point(static_cast<double>(low)), std::move(label));
    const auto high = low + 2 * half_step * static_cast<std::int64_t>(bins);
    return TaskTree::uniform(UniformSpec{static_cast<double>(low), static_cast<double>(high), bins}, std::move(label));
}

inline TaskTree random_primitive(GenRng& rng, const GenSpec& spec, std::string label) {
    const auto low = draw_int(rng, spec.low);
    const auto half = draw_int(rng, spec.half_step);
    return lattice_primitive(low, half, spec.bins, std::move(label));
}

inline void validate_common(const GenSpec& spec) {
    if (spec.nodes < 1) throw Error(Errc::InvalidSpec, "node count must be at least 1");
    if (spec.bins < 1) throw Error(Errc::InvalidSpec, "bins must be at least 1");
    if (spec.low.lo < 0 || spec.low.hi < spec.low.lo) throw Error(Errc::InvalidSpec, "bad low range");
    if (spec.half_step.lo < 0 || spec.half_step.hi < spec.half_step.lo) {
        throw Error(Errc::InvalidSpec, "bad half-step range");
    }
}

inline TaskTree gen_linear(const GenSpec& spec) {
    if (spec.nodes < 2) throw Error(Errc::InvalidSpec, "a linear plan needs N >= 2");
    GenRng rng(spec.seed);
    std::vector<TaskTree> tasks;
    for (std::size_t i = 0; i + 1 < spec.nodes; ++i) {
        tasks.push_back(random_primitive(rng, spec, "t" + std::to_string(i)));
    }
    return TaskTree::sequence(std::move(tasks), "plan");
}

// Fixed presets for the logistics emulation; all values in abstract time units.
struct LogisticsPreset {
    std::int64_t handling_low = 20;     // load / unload lower end
    std::int64_t handling_half_step = 2;
    IntRange distance{50, 500};
    std::int64_t velocities[3] = {1, 2, 4}; // truck, van, plane
    std::int64_t time_scale = 10;
};

inline TaskTree gen_logistics(const GenSpec& spec) {
    if (spec.nodes < 3) throw Error(Errc::InvalidSpec, "a logistics plan needs N >= 3");
    const LogisticsPreset preset;
    GenRng rng(spec.seed);

    std::size_t routes = std::max<std::size_t>(1, spec.routes);
    routes = std::min(routes, (spec.nodes - 1) / 2);
    const std::size_t primitives = spec.nodes - 1 - routes;

    std::vector<TaskTree> sequences;
    for (std::size_t r = 0; r < routes; ++r) {
        const std::size_t len = primitives / routes + (r < primitives % routes ? 1 : 0);
        const auto velocity = preset.velocities[rng() % 3];
        std::vector<TaskTree> steps;
        for (std::size_t k = 0; k < len; ++k) {
            const std::string tag = "r" + std::to_string(r) + "." + std::to_string(k);
            switch (k % 4) {
            case 0:
                steps.push_back(lattice_primitive(preset.handling_low, preset.handling_half_step, spec.bins, "load " + tag));
                break;
            case 2:
                steps.push_back(lattice_primitive(preset.handling_low, preset.handling_half_step, spec.bins, "unload " + tag));
                break;
            default: {
                const auto distance = draw_int(rng, preset.distance);
                const double nominal = static_cast<double>(distance * preset.time_scale) / static_cast<double>(velocity);
                const auto low = static_cast<std::int64_t>(std::llround(0.8 * nominal));
                const auto width = 0.4 * nominal;
                const auto half = std::max<std::int64_t>(1, std::llround(width / (2.0 * static_cast<double>(spec.bins))));
                steps.push_back(lattice_primitive(low, half, spec.bins, "drive " + tag));
                break;
            }
            }
        }
        sequences.push_back(TaskTree::sequence(std::move(steps), "route " + std::to_string(r)));
    }
    return TaskTree::parallel(std::move(sequences), "deliveries");
}

inline TaskTree gen_random_mixed(const GenSpec& spec) {
    GenRng rng(spec.seed);
    if (spec.nodes == 1) return random_primitive(rng, spec, "t0");
    if (spec.branching < 2) throw Error(Errc::InvalidSpec, "random trees need branching >= 2");

    // Grow by expanding random leaves into composites of the opposite kind.
    struct Proto {
        NodeKind kind = NodeKind::Primitive;
        std::vector<std::size_t> children;
        NodeKind parent_kind = NodeKind::Primitive;
    };
    std::vector<Proto> nodes(1);
    std::vector<std::size_t> leaves{0};
    std::size_t count = 1;
    auto expand = [&](std::size_t leaf_slot, NodeKind kind) {
        const std::size_t id = leaves[leaf_slot];
        leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(leaf_slot));
        nodes[id].kind = kind;
        const auto k = static_cast<std::size_t>(draw_int(rng, {2, static_cast<std::int64_t>(spec.branching)}));
        for (std::size_t i = 0; i < k; ++i) {
            nodes.push_back(Proto{NodeKind::Primitive, {}, kind});
            nodes[id].children.push_back(nodes.size() - 1);
            leaves.push_back(nodes.size() - 1);
        }
        count += k;
    };
    expand(0, rng() % 2 == 0 ? NodeKind::Sequence : NodeKind::Parallel);
    while (count < spec.nodes) {
        const auto slot = static_cast<std::size_t>(rng() % leaves.size());
        const NodeKind parent = nodes[leaves[slot]].parent_kind;
        expand(slot, parent == NodeKind::Sequence ? NodeKind::Parallel : NodeKind::Sequence);
    }

    std::size_t leaf_no = 0;
    auto build = [&](auto&& self, std::size_t id) -> TaskTree {
        const Proto& p = nodes[id];
        if (p.kind == NodeKind::Primitive) return random_primitive(rng, spec, "t" + std::to_string(leaf_no++));
        std::vector<TaskTree> kids;
        for (std::size_t c : p.children) kids.push_back(self(self, c));
        return p.kind == NodeKind::Sequence ? TaskTree::sequence(std::move(kids)) : TaskTree::parallel(std::move(kids));
    };
    return build(build, 0);
}

/// First variable of the tightness family: masses eps / (n (1-delta)^x) at
/// x = 1..n, delta at 0, and the remainder at n + 1.
inline std::vector<std::pair<double, double>> adversarial_head_atoms(std::size_t n, double eps, double delta) {
    std::vector<std::pair<double, double>> atoms{{0.0, delta}};
    double used = delta;
    for (std::size_t x = 1; x <= n; ++x) {
        const double p = eps / (static_cast<double>(n) * std::pow(1.0 - delta, static_cast<double>(x)));
        atoms.emplace_back(static_cast<double>(x), p);
        used += p;
    }
    atoms.emplace_back(static_cast<double>(n + 1), 1.0 - used);
    return atoms;
}

inline TaskTree gen_adversarial(const GenSpec& spec) {
    const std::size_t n = spec.adv_n;
    const double eps = spec.adv_eps;
    const double delta = spec.adv_delta;
    if (n < 1) throw Error(Errc::InvalidSpec, "adversarial family needs n >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw Error(Errc::InvalidSpec, "adversarial eps must lie in (0, 1)");
    if (!(1.0 - eps > eps / static_cast<double>(n))) throw Error(Errc::InvalidSpec, "requires 1 - eps > eps / n");
    if (!(delta > 0.0 && delta < 1.0)) throw Error(Errc::InvalidSpec, "delta must lie in (0, 1)");

    auto head = adversarial_head_atoms(n, eps, delta);
    if (!(head.back().second > 0.0)) {
        throw Error(Errc::InvalidSpec, "remainder mass at n + 1 is not positive for these eps, n, delta");
    }
    std::vector<TaskTree> vars;
    vars.push_back(TaskTree::primitive(make_pmf(head), "x1"));
    const double far = static_cast<double>(n) * static_cast<double>(n);
    for (std::size_t i = 2; i <= n; ++i) {
        vars.push_back(TaskTree::primitive(make_pmf({{0.0, 1.0 - delta}, {far, delta}}), "x" + std::to_string(i)));
    }
    return TaskTree::sequence(std::move(vars), "adversarial");
}

} // namespace detail

/// Deterministic plan for `spec`: the same spec always yields the same tree.
inline TaskTree generate(const GenSpec& spec) {
    if (spec.family == Family::AdversarialTight) return detail::gen_adversarial(spec);
    detail::validate_common(spec);
    switch (spec.family) {
    case Family::Linear: return detail::gen_linear(spec);
    case Family::LogisticsLike: return detail::gen_logistics(spec);
    case Family::RandomMixed: return detail::gen_random_mixed(spec);
    case Family::AdversarialTight: break;
    }
    throw Error(Errc::InvalidSpec, "unknown family");
}

} // namespace deadline

#endif
