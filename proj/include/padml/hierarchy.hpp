#pragma once

/**
 * @file hierarchy.hpp
 * @brief Taxonomy trees and their base-p path encoding.
 *
 * A node's position is the sequence of 1-based child indices from the
 * root; the code integer is sum_k digit_k * p^k with the root's child
 * index at p^0. Zero digits are reserved, so the root encodes to 0 and
 * distinct nodes get distinct integers once p exceeds every child
 * index. The p-adic distance between two codes is p^(-L) where L is the
 * depth of the deepest common ancestor, which makes code distance a
 * drop-in similarity measure.
 */

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "padml/padic.hpp"
#include "padml/rational.hpp"

namespace padml {

class TaxonomyTree {
public:
    struct Node {
        std::string id;
        std::string label;
        std::string parent;               // empty for the root
        std::uint64_t child_index = 0;    // 1-based position under parent; 0 for root
        std::vector<std::string> children;  // ordered by child_index
    };

    /// Validated tree from parsed nodes: single root, no cycles, every
    /// non-root with exactly one parent, child indices positive and
    /// unique per parent.
    TaxonomyTree(std::vector<Node> nodes, std::string root_id);

    const std::string& root() const { return root_; }
    std::size_t size() const { return nodes_.size(); }
    bool contains(const std::string& id) const { return nodes_.contains(id); }
    const Node& node(const std::string& id) const;
    std::vector<std::string> ids() const;

    /// Resolves a node by id, falling back to unique label match.
    const Node& find(const std::string& id_or_label) const;

    /// Root-to-node child indices; empty for the root itself.
    std::vector<std::uint64_t> path(const std::string& id) const;

    /// Largest 1-based child index anywhere in the tree.
    std::uint64_t max_child_index() const;

private:
    std::map<std::string, Node> nodes_;
    std::string root_;
};

/// Smallest prime strictly greater than the tree's largest child index.
Prime min_safe_prime(const TaxonomyTree& tree);

/// sum_k path[k] * p^k. Every digit must be in [1, p).
Integer encode_path(const std::vector<std::uint64_t>& path, const Prime& p);

/// Base-p digits of a path code, least significant first. A zero digit
/// below the most significant position means the value is not a valid
/// path code.
std::vector<std::uint64_t> decode(const Integer& value, const Prime& p);

/// A taxonomy path together with its code integer.
struct PathCode {
    std::vector<std::uint64_t> digits;
    Prime prime;
    Integer value;

    static PathCode from_path(std::vector<std::uint64_t> path, const Prime& p);
    static PathCode of(const TaxonomyTree& tree, const std::string& id_or_label, const Prime& p);

    /// Dotted display form, "1.2.3.37"; the root is "".
    std::string dotted() const;
};

/// p-adic distance between two codes: p^(-depth of deepest common
/// ancestor), 0 for identical nodes. Primes must match.
Rational similarity(const PathCode& u, const PathCode& v);

/// Tree documents: JSON {"label":..., "children":[...]} with child order
/// significant, or an edge-list CSV (parent_id, child_id, child_order,
/// label) where a row with empty parent_id declares the root. The format
/// is sniffed from the first non-space byte.
TaxonomyTree load_tree(std::string_view document);
TaxonomyTree load_tree_json(std::string_view document);
TaxonomyTree load_tree_csv(std::string_view document);

}  // namespace padml
