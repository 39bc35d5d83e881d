#ifndef DEADLINE_TASK_TREE_HPP
#define DEADLINE_TASK_TREE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "pmf.hpp"

namespace deadline {

enum class NodeKind { Primitive, Sequence, Parallel };

inline const char* kind_name(NodeKind kind) {
    switch (kind) {
    case NodeKind::Primitive: return "primitive";
    case NodeKind::Sequence: return "sequence";
    case NodeKind::Parallel: return "parallel";
    }
    return "?";
}

/**
 * Series-parallel plan: primitive leaves carry duration distributions,
 * Sequence children run back to back, Parallel children run concurrently.
 *
 * Composite nodes hold at least one child. The subtree size is computed once
 * at construction so budget arithmetic never re-walks the tree.
 */
class TaskTree {
public:
    static TaskTree primitive(Pmf pmf, std::string label = {}) {
        TaskTree t(NodeKind::Primitive, std::move(label));
        t.pmf_ = std::move(pmf);
        return t;
    }

    /// Primitive that remembers it came from a discretised uniform, so it
    /// serialises back to the same compact form.
    static TaskTree uniform(const UniformSpec& spec, std::string label = {}) {
        TaskTree t = primitive(discretized_uniform(spec), std::move(label));
        t.uniform_ = spec;
        return t;
    }

    static TaskTree sequence(std::vector<TaskTree> children, std::string label = {}) {
        return composite(NodeKind::Sequence, std::move(children), std::move(label));
    }

    static TaskTree parallel(std::vector<TaskTree> children, std::string label = {}) {
        return composite(NodeKind::Parallel, std::move(children), std::move(label));
    }

    NodeKind kind() const noexcept { return kind_; }
    bool is_primitive() const noexcept { return kind_ == NodeKind::Primitive; }

    /// Only valid on primitives.
    const Pmf& pmf() const { return pmf_.value(); }
    const std::optional<UniformSpec>& uniform_spec() const noexcept { return uniform_; }

    std::span<const TaskTree> children() const noexcept { return children_; }
    const std::string& label() const noexcept { return label_; }

    /// Number of nodes in this subtree, root and leaves included.
    std::size_t size() const noexcept { return size_; }

    friend bool operator==(const TaskTree&, const TaskTree&) = default;

private:
    TaskTree(NodeKind kind, std::string label) : kind_(kind), label_(std::move(label)) {}

    static TaskTree composite(NodeKind kind, std::vector<TaskTree> children, std::string label) {
        if (children.empty()) {
            throw Error(Errc::EmptyInput, std::string(kind_name(kind)) + " node needs at least one child");
        }
        TaskTree t(kind, std::move(label));
        t.children_ = std::move(children);
        for (const TaskTree& c : t.children_) t.size_ += c.size_;
        return t;
    }

    NodeKind kind_;
    std::optional<Pmf> pmf_;
    std::optional<UniformSpec> uniform_;
    std::vector<TaskTree> children_;
    std::string label_;
    std::size_t size_ = 1;
};

inline std::size_t node_count(const TaskTree& tree) noexcept { return tree.size(); }

/// Number of primitive leaves.
inline std::size_t leaf_count(const TaskTree& tree) {
    if (tree.is_primitive()) return 1;
    std::size_t n = 0;
    for (const TaskTree& c : tree.children()) n += leaf_count(c);
    return n;
}

} // namespace deadline

#endif
