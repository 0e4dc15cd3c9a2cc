#include <functional>
#include <memory>
#include <sstream>

#include "ncdlab/clustering/dendrogram.hpp"
#include "ncdlab/common/error.hpp"

namespace ncdlab::cluster {
namespace {

bool needs_quotes(std::string_view label) {
  return label.empty() || label.find_first_of(" \t\r\n()[]':;,") != std::string_view::npos;
}

std::string quoted(std::string_view label) {
  if (!needs_quotes(label)) return std::string(label);
  std::string out = "'";
  for (char c : label) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

struct ParsedNode {
  std::string label;
  std::vector<std::unique_ptr<ParsedNode>> children;
};

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  std::unique_ptr<ParsedNode> parse() {
    auto root = subtree();
    skip_space();
    if (!eat(';')) fail("expected ';'");
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters after ';'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("newick: " + what + " at character " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '[') {
        const auto close = text_.find(']', pos_);
        if (close == std::string_view::npos) fail("unterminated comment");
        pos_ = close + 1;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string label() {
    skip_space();
    std::string out;
    if (pos_ < text_.size() && text_[pos_] == '\'') {
      ++pos_;
      while (true) {
        if (pos_ >= text_.size()) fail("unterminated quoted label");
        const char c = text_[pos_++];
        if (c == '\'') {
          if (pos_ < text_.size() && text_[pos_] == '\'') {
            out += '\'';
            ++pos_;
            continue;
          }
          break;
        }
        out += c;
      }
      return out;
    }
    while (pos_ < text_.size() && std::string_view("()[]':;, \t\r\n").find(text_[pos_]) == std::string_view::npos)
      out += text_[pos_++];
    return out;
  }

  void branch_length() {
    if (!eat(':')) return;
    skip_space();
    const auto start = pos_;
    while (pos_ < text_.size() && std::string_view("0123456789.eE+-").find(text_[pos_]) != std::string_view::npos) ++pos_;
    if (pos_ == start) fail("missing branch length");
  }

  std::unique_ptr<ParsedNode> subtree() {
    auto node = std::make_unique<ParsedNode>();
    if (eat('(')) {
      do {
        node->children.push_back(subtree());
      } while (eat(','));
      if (!eat(')')) fail("expected ')' or ','");
      node->label = label();  // internal labels are accepted and ignored
    } else {
      node->label = label();
      if (node->label.empty()) fail("leaf without a label");
    }
    branch_length();
    return node;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_newick(const Dendrogram& tree) {
  std::string out;
  std::function<void(std::size_t, std::size_t)> emit = [&](std::size_t v, std::size_t parent) {
    if (tree.is_leaf(v)) {
      out += quoted(tree.leaves()[v]);
      return;
    }
    out += '(';
    bool first = true;
    for (auto w : tree.neighbors(v)) {
      if (w == parent) continue;
      if (!first) out += ',';
      first = false;
      emit(w, v);
      out += ":1";
    }
    out += ')';
  };
  if (tree.leaf_count() == 2) return "(" + quoted(tree.leaves()[0]) + ":1," + quoted(tree.leaves()[1]) + ":1);";
  emit(tree.neighbors(0).front(), SIZE_MAX);
  return out + ";";
}

Dendrogram parse_newick(std::string_view text) {
  auto root = NewickParser(text).parse();

  std::vector<std::string> leaves;
  std::function<void(const ParsedNode&)> collect = [&](const ParsedNode& node) {
    if (node.children.empty()) leaves.push_back(node.label);
    for (const auto& c : node.children) collect(*c);
  };
  collect(*root);
  const std::size_t n = leaves.size();
  if (n < 2) throw ParseError("newick: a dendrogram needs at least two leaves");

  std::size_t next_leaf = 0, next_internal = n;
  std::vector<Dendrogram::Edge> edges;
  std::function<std::size_t(const ParsedNode&, bool)> build = [&](const ParsedNode& node, bool is_root) {
    if (node.children.empty()) return next_leaf++;
    if (is_root && node.children.size() == 2) {
      // Rooted input: the root only joins two subtrees.
      const auto a = build(*node.children[0], false);
      const auto b = build(*node.children[1], false);
      edges.emplace_back(a, b);
      return a;
    }
    const std::size_t want = is_root ? 3 : 2;
    if (node.children.size() != want)
      throw ParseError("newick: internal node with " + std::to_string(node.children.size()) +
                       " children; the tree must be binary");
    const auto id = next_internal++;
    for (const auto& c : node.children) edges.emplace_back(id, build(*c, false));
    return id;
  };
  build(*root, true);
  try {
    return Dendrogram(std::move(leaves), next_internal, std::move(edges));
  } catch (const ValidationError& e) {
    throw ParseError(std::string("newick: ") + e.what());
  }
}

std::string to_dot(const Dendrogram& tree) {
  std::ostringstream out;
  out << "graph dendrogram {\n  node [shape=box];\n";
  for (std::size_t v = 0; v < tree.node_count(); ++v) {
    if (tree.is_leaf(v)) {
      std::string label;
      for (char c : tree.leaves()[v]) {
        if (c == '"' || c == '\\') label += '\\';
        label += c;
      }
      out << "  n" << v << " [label=\"" << label << "\"];\n";
    } else {
      out << "  n" << v << " [shape=point];\n";
    }
  }
  for (auto [a, b] : tree.edges()) out << "  n" << a << " -- n" << b << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace ncdlab::cluster
