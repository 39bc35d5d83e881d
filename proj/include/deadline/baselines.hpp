#ifndef DEADLINE_BASELINES_HPP
#define DEADLINE_BASELINES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "approx.hpp"
#include "error.hpp"
#include "pmf.hpp"
#include "task_tree.hpp"

namespace deadline {

/// Exact makespan distribution: untrimmed convolution at Sequence nodes,
/// exact max at Parallel nodes. Throws SupportCapExceeded once any
/// intermediate distribution would exceed `support_cap` atoms.
inline Pmf exact_distribution(const TaskTree& tree, std::size_t support_cap = kDefaultSupportCap) {
    if (tree.is_primitive()) {
        if (tree.pmf().size() > support_cap) {
            throw Error(Errc::SupportCapExceeded, "primitive support exceeds cap");
        }
        return tree.pmf();
    }
    std::vector<Pmf> parts;
    parts.reserve(tree.children().size());
    for (const TaskTree& c : tree.children()) parts.push_back(exact_distribution(c, support_cap));

    if (tree.kind() == NodeKind::Sequence) {
        Pmf acc = parts.front();
        for (std::size_t i = 1; i < parts.size(); ++i) acc = convolve(acc, parts[i], support_cap);
        return acc;
    }
    Pmf out = parallel_compose(parts);
    if (out.size() > support_cap) throw Error(Errc::SupportCapExceeded, "parallel support exceeds cap");
    return out;
}

/// The sampling generator: std::mt19937_64, fully specified by the C++
/// standard (the 10000th output of a default-seeded engine is
/// 9981545732273789042), so seeded runs reproduce across platforms.
using SampleRng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one engine output.
inline double uniform01(SampleRng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Flattened tree with per-leaf cumulative tables for repeated draws.
class MakespanSampler {
public:
    explicit MakespanSampler(const TaskTree& tree) { root_ = build(tree); }

    /// One makespan draw. Leaves consume one engine output each, in
    /// document order.
    double draw(SampleRng& rng) const { return eval(root_, rng); }

private:
    struct Node {
        NodeKind kind;
        std::vector<std::size_t> children;
        std::vector<double> values;
        std::vector<double> cums;
    };

    std::size_t build(const TaskTree& t) {
        Node node{t.kind(), {}, {}, {}};
        if (t.is_primitive()) {
            StepCdf cdf(t.pmf());
            node.values.assign(cdf.support().begin(), cdf.support().end());
            node.cums.assign(cdf.cums().begin(), cdf.cums().end());
        } else {
            for (const TaskTree& c : t.children()) node.children.push_back(build(c));
        }
        nodes_.push_back(std::move(node));
        return nodes_.size() - 1;
    }

    double eval(std::size_t index, SampleRng& rng) const {
        const Node& node = nodes_[index];
        switch (node.kind) {
        case NodeKind::Primitive: {
            const double u = uniform01(rng);
            auto it = std::upper_bound(node.cums.begin(), node.cums.end(), u);
            auto k = std::min(static_cast<std::size_t>(it - node.cums.begin()), node.values.size() - 1);
            return node.values[k];
        }
        case NodeKind::Sequence: {
            double total = 0.0;
            for (std::size_t c : node.children) total += eval(c, rng);
            return total;
        }
        case NodeKind::Parallel: {
            double longest = 0.0;
            for (std::size_t c : node.children) longest = std::max(longest, eval(c, rng));
            return longest;
        }
        }
        return 0.0;
    }

    std::vector<Node> nodes_;
    std::size_t root_ = 0;
};

inline double sample_makespan(const TaskTree& tree, SampleRng& rng) {
    return MakespanSampler(tree).draw(rng);
}

inline constexpr double kSampleConfidence = 0.99;

inline double hoeffding_halfwidth(std::uint64_t n_samples) {
    return std::sqrt(std::log(2.0 / (1.0 - kSampleConfidence)) / (2.0 * static_cast<double>(n_samples)));
}

struct SampleEstimate {
    double p_hat = 0.0;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
    double hoeffding_halfwidth = 0.0;
};

/**
 * Monte-Carlo estimate of Pr(makespan <= deadline).
 *
 * Samples are split across `workers` threads; worker w seeds its own engine
 * with seed + w and draws a contiguous share. Counts are summed, so the
 * estimate depends only on (seed, n_samples, workers).
 */
inline SampleEstimate estimate_deadline_probability(const TaskTree& tree, double deadline, std::uint64_t n_samples,
                                                    std::uint64_t seed, unsigned workers = 1) {
    if (n_samples == 0) throw Error(Errc::InvalidSpec, "n_samples must be at least 1");
    workers = std::max(1u, workers);
    if (workers > n_samples) workers = static_cast<unsigned>(n_samples);

    const MakespanSampler sampler(tree);
    std::vector<std::uint64_t> hits(workers, 0);
    auto run = [&](unsigned w) {
        const std::uint64_t share = n_samples / workers + (w < n_samples % workers ? 1 : 0);
        SampleRng rng(seed + w);
        std::uint64_t count = 0;
        for (std::uint64_t i = 0; i < share; ++i) {
            if (sampler.draw(rng) <= deadline) ++count;
        }
        hits[w] = count;
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    std::uint64_t total = 0;
    for (auto h : hits) total += h;
    return SampleEstimate{static_cast<double>(total) / static_cast<double>(n_samples), n_samples, seed,
                          hoeffding_halfwidth(n_samples)};
}

} // namespace deadline

#endif
