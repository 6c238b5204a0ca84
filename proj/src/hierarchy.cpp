#include "padml/hierarchy.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "padml/errors.hpp"

namespace padml {

TaxonomyTree::TaxonomyTree(std::vector<Node> nodes, std::string root_id) : root_(std::move(root_id)) {
    if (nodes.empty()) throw ParseError("tree: empty document");
    for (auto& n : nodes) {
        if (nodes_.contains(n.id)) throw ParseError("tree: node '" + n.id + "' listed twice");
        nodes_.emplace(n.id, std::move(n));
    }
    if (!nodes_.contains(root_)) throw ParseError("tree: root '" + root_ + "' not defined");
    if (!nodes_.at(root_).parent.empty()) throw ParseError("tree: root has a parent");

    for (auto& [id, n] : nodes_) {
        if (id == root_) continue;
        if (n.parent.empty()) throw ParseError("tree: multiple roots ('" + root_ + "', '" + id + "')");
        auto parent = nodes_.find(n.parent);
        if (parent == nodes_.end())
            throw ParseError("tree: node '" + id + "' has unknown parent '" + n.parent + "'");
        if (n.child_index == 0) throw ParseError("tree: node '" + id + "' has child index 0");
        parent->second.children.push_back(id);
    }
    for (auto& [id, n] : nodes_) {
        std::sort(n.children.begin(), n.children.end(),
                  [&](const std::string& a, const std::string& b) {
                      return nodes_.at(a).child_index < nodes_.at(b).child_index;
                  });
        for (std::size_t i = 1; i < n.children.size(); ++i)
            if (nodes_.at(n.children[i]).child_index == nodes_.at(n.children[i - 1]).child_index)
                throw ParseError("tree: node '" + id + "' has two children with index " +
                                 std::to_string(nodes_.at(n.children[i]).child_index));
    }
    // Cycle / reachability check: walking to the root must terminate.
    for (const auto& [id, n] : nodes_) {
        std::set<std::string> seen{id};
        std::string cur = id;
        while (cur != root_) {
            cur = nodes_.at(cur).parent;
            if (!seen.insert(cur).second) throw ParseError("tree: cycle through '" + id + "'");
        }
    }
}

const TaxonomyTree::Node& TaxonomyTree::node(const std::string& id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw ParseError("tree: unknown node '" + id + "'");
    return it->second;
}

std::vector<std::string> TaxonomyTree::ids() const {
    std::vector<std::string> out;
    out.reserve(nodes_.size());
    for (const auto& [id, n] : nodes_) out.push_back(id);
    return out;
}

const TaxonomyTree::Node& TaxonomyTree::find(const std::string& id_or_label) const {
    if (auto it = nodes_.find(id_or_label); it != nodes_.end()) return it->second;
    const Node* match = nullptr;
    for (const auto& [id, n] : nodes_) {
        if (n.label != id_or_label) continue;
        if (match) throw ParseError("tree: label '" + id_or_label + "' is ambiguous");
        match = &n;
    }
    if (!match) throw ParseError("tree: no node '" + id_or_label + "'");
    return *match;
}

std::vector<std::uint64_t> TaxonomyTree::path(const std::string& id) const {
    std::vector<std::uint64_t> digits;
    const Node* cur = &node(id);
    while (!cur->parent.empty()) {
        digits.push_back(cur->child_index);
        cur = &node(cur->parent);
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

std::uint64_t TaxonomyTree::max_child_index() const {
    std::uint64_t best = 1;  // a bare root still needs p >= 2
    for (const auto& [id, n] : nodes_) best = std::max(best, n.child_index);
    return best;
}

Prime min_safe_prime(const TaxonomyTree& tree) {
    return Prime(next_prime_above(Integer(static_cast<unsigned long>(tree.max_child_index()))));
}

Integer encode_path(const std::vector<std::uint64_t>& path, const Prime& p) {
    Integer value = 0;
    // Horner from the deep end; the root's child index lands on p^0.
    for (std::size_t i = path.size(); i-- > 0;) {
        if (path[i] == 0) throw PreconditionError("encode: path digit 0 is reserved");
        Integer digit(static_cast<unsigned long>(path[i]));
        if (digit >= p.value())
            throw PreconditionError("encode: digit " + digit.get_str() + " not below p = " +
                                    p.value().get_str());
        value = value * p.value() + digit;
    }
    return value;
}

std::vector<std::uint64_t> decode(const Integer& value, const Prime& p) {
    if (sgn(value) < 0) throw PreconditionError("decode: negative value");
    std::vector<std::uint64_t> digits;
    Integer v = value;
    while (sgn(v) != 0) {
        Integer q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v.get_mpz_t(), p.value().get_mpz_t());
        if (sgn(r) == 0)
            throw PreconditionError("decode: " + value.get_str() +
                                    " has a zero digit and is not a valid path code");
        if (!r.fits_ulong_p())
            throw PreconditionError("decode: digit " + r.get_str() + " exceeds the machine range");
        digits.push_back(r.get_ui());
        v = q;
    }
    return digits;
}

PathCode PathCode::from_path(std::vector<std::uint64_t> path, const Prime& p) {
    Integer value = encode_path(path, p);
    return PathCode{std::move(path), p, std::move(value)};
}

PathCode PathCode::of(const TaxonomyTree& tree, const std::string& id_or_label, const Prime& p) {
    return from_path(tree.path(tree.find(id_or_label).id), p);
}

std::string PathCode::dotted() const {
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) out += ".";
        out += std::to_string(digits[i]);
    }
    return out;
}

Rational similarity(const PathCode& u, const PathCode& v) {
    if (u.prime != v.prime)
        throw PreconditionError("similarity: path codes use different primes");
    return dist_p(Rational(u.value), Rational(v.value), u.prime);
}

namespace {

using TreeNode = TaxonomyTree::Node;

void walk_json(const nlohmann::json& j, const std::string& parent, std::uint64_t index,
               std::vector<TreeNode>& out) {
    if (!j.is_object() || !j.contains("label") || !j.at("label").is_string())
        throw ParseError("tree: every JSON node needs a string 'label'");
    TreeNode n;
    n.label = j.at("label").get<std::string>();
    n.id = n.label;
    n.parent = parent;
    n.child_index = index;
    out.push_back(n);
    if (!j.contains("children")) return;
    if (!j.at("children").is_array()) throw ParseError("tree: 'children' must be an array");
    std::uint64_t i = 1;
    for (const auto& child : j.at("children")) walk_json(child, n.id, i++, out);
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.emplace_back(line.substr(start));
            return cells;
        }
        cells.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string strip(std::string s) {
    auto issp = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
}

}  // namespace

TaxonomyTree load_tree_json(std::string_view document) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(document);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("tree: bad JSON: ") + e.what());
    }
    std::vector<TreeNode> nodes;
    walk_json(j, "", 0, nodes);
    // JSON ids are labels, so duplicates surface as double definitions.
    std::string root = nodes.empty() ? "" : nodes.front().id;
    return TaxonomyTree(std::move(nodes), std::move(root));
}

TaxonomyTree load_tree_csv(std::string_view document) {
    std::vector<TreeNode> nodes;
    std::string root;
    std::size_t pos = 0, lineno = 0;
    while (pos <= document.size()) {
        std::size_t eol = document.find('\n', pos);
        std::string_view line =
            document.substr(pos, eol == std::string_view::npos ? document.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? document.size() + 1 : eol + 1;
        ++lineno;
        if (strip(std::string(line)).empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != 4)
            throw ParseError("tree: line " + std::to_string(lineno) + " needs 4 cells");
        TreeNode n;
        n.parent = strip(cells[0]);
        n.id = strip(cells[1]);
        n.label = strip(cells[3]);
        if (n.label.empty()) n.label = n.id;
        std::string order = strip(cells[2]);
        if (n.parent.empty()) {
            if (!root.empty()) throw ParseError("tree: two root rows");
            root = n.id;
            n.child_index = 0;
        } else {
            try {
                n.child_index = std::stoull(order);
            } catch (const std::exception&) {
                throw ParseError("tree: bad child_order '" + order + "' on line " +
                                 std::to_string(lineno));
            }
        }
        nodes.push_back(std::move(n));
    }
    if (nodes.empty()) throw ParseError("tree: empty document");
    if (root.empty()) {
        // No explicit root row: the unique node named as a parent but
        // never defined as a child.
        std::set<std::string> defined;
        for (const auto& n : nodes) defined.insert(n.id);
        std::set<std::string> missing;
        for (const auto& n : nodes)
            if (!defined.contains(n.parent)) missing.insert(n.parent);
        if (missing.size() != 1)
            throw ParseError("tree: expected exactly one root, found " +
                             std::to_string(missing.size()));
        root = *missing.begin();
        TreeNode r;
        r.id = root;
        r.label = root;
        nodes.push_back(std::move(r));
    }
    return TaxonomyTree(std::move(nodes), root);
}

TaxonomyTree load_tree(std::string_view document) {
    for (char c : document) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        return c == '{' ? load_tree_json(document) : load_tree_csv(document);
    }
    throw ParseError("tree: empty document");
}

}  // namespace padml
