#ifndef DEADLINE_NETWORK_HPP
#define DEADLINE_NETWORK_HPP

#include <algorithm>
#include <cstddef>
#include <future>
#include <string>
#include <vector>

#include "approx.hpp"
#include "error.hpp"
#include "pmf.hpp"
#include "task_tree.hpp"

namespace deadline {

struct NetworkOptions {
    std::size_t support_cap = kDefaultSupportCap;
    /// Composite nodes shallower than this evaluate their children on
    /// separate threads. Aggregation order is unchanged, so the output is
    /// bit-identical to the sequential fold.
    std::size_t concurrent_depth = 0;
};

/// Error allowance handed to child `index` of a composite root under an
/// overall budget `eps`. Sequence children get their size-proportional share;
/// Parallel children are additionally clamped so the product of their CDF
/// errors stays within the parent's allowance.
inline double child_budget(const TaskTree& tree, double eps, std::size_t index) {
    if (tree.is_primitive()) throw Error(Errc::NotComposite, "primitive nodes have no children");
    const auto children = tree.children();
    if (index >= children.size()) throw Error(Errc::InvalidSpec, "child index out of range");
    const double subtree = static_cast<double>(tree.size());
    const double share = static_cast<double>(children[index].size()) * eps / subtree;
    if (tree.kind() == NodeKind::Sequence) return share;
    const double n = static_cast<double>(children.size());
    return std::min(share, 1.0 / (n * (subtree * n + 1.0)));
}

/// Trim parameter used when a Sequence root folds its children.
inline double sequence_trim_parameter(const TaskTree& tree, double eps) {
    if (tree.kind() != NodeKind::Sequence) throw Error(Errc::NotComposite, "not a sequence node");
    return eps / (static_cast<double>(tree.children().size()) * static_cast<double>(tree.size()));
}

namespace detail {

inline Pmf network_fold(const TaskTree& tree, double eps, BoundSide side, const NetworkOptions& opts,
                        std::size_t depth) {
    if (tree.is_primitive()) return tree.pmf();

    const auto children = tree.children();
    std::vector<Pmf> parts(children.size());
    if (depth < opts.concurrent_depth && children.size() > 1) {
        std::vector<std::future<Pmf>> pending;
        pending.reserve(children.size());
        for (std::size_t i = 0; i < children.size(); ++i) {
            pending.push_back(std::async(std::launch::async, [&, i] {
                return network_fold(children[i], child_budget(tree, eps, i), side, opts, depth + 1);
            }));
        }
        for (std::size_t i = 0; i < children.size(); ++i) parts[i] = pending[i].get();
    } else {
        for (std::size_t i = 0; i < children.size(); ++i) {
            parts[i] = network_fold(children[i], child_budget(tree, eps, i), side, opts, depth + 1);
        }
    }

    if (tree.kind() == NodeKind::Sequence) {
        return sequence_approx(parts, sequence_trim_parameter(tree, eps), side, opts.support_cap);
    }
    return parallel_compose(parts);
}

} // namespace detail

/**
 * Postorder approximation of the completion-time distribution of `tree`.
 *
 * Upper: 0 <= F_out(T) - F_true(T) <= eps for every T. Lower: the mirror,
 * 0 <= F_true(T) - F_out(T) <= eps. Leaves pass through untouched and
 * Parallel nodes are composed exactly; all trimming happens at Sequence nodes.
 */
inline Pmf network_approx(const TaskTree& tree, double eps, BoundSide side, const NetworkOptions& opts = {}) {
    detail::check_epsilon(eps);
    return detail::network_fold(tree, eps, side, opts, 0);
}

/// Upper and lower approximations that sandwich the true completion-time CDF.
struct CdfBracket {
    Pmf upper;
    Pmf lower;
    double eps = 0.0;

    double cdf_upper(double t) const { return cdf_at(upper, t); }
    double cdf_lower(double t) const { return cdf_at(lower, t); }
};

inline CdfBracket bracket(const TaskTree& tree, double eps, const NetworkOptions& opts = {}) {
    return CdfBracket{network_approx(tree, eps, BoundSide::Upper, opts),
                      network_approx(tree, eps, BoundSide::Lower, opts), eps};
}

/// Certified interval for Pr(makespan <= deadline).
struct ProbabilityInterval {
    double lo = 0.0;
    double hi = 0.0;
    double deadline = 0.0;

    double width() const noexcept { return hi - lo; }
};

inline ProbabilityInterval deadline_probability(const CdfBracket& b, double deadline) {
    return ProbabilityInterval{b.cdf_lower(deadline), b.cdf_upper(deadline), deadline};
}

inline ProbabilityInterval deadline_probability(const TaskTree& tree, double deadline, double eps,
                                                const NetworkOptions& opts = {}) {
    return deadline_probability(bracket(tree, eps, opts), deadline);
}

struct ExpectationInterval {
    double lo = 0.0;
    double hi = 0.0;
};

/// The upper CDF is stochastically smaller than the truth and the lower CDF
/// larger, so their means bound the true expected makespan. No width bound
/// in terms of eps holds: trimming limits how much mass moves, not how far.
inline ExpectationInterval expectation_interval(const CdfBracket& b) {
    return ExpectationInterval{expectation(b.upper), expectation(b.lower)};
}

} // namespace deadline

#endif
