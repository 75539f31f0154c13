#include "pchord/isomorphism.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "pchord/recognition.hpp"

namespace pchord {

namespace {

using Token = IsoCode::Token;
using Kind = Token::Kind;

Token tok_int(int v) { return Token{Kind::Int, v}; }
Token tok(Kind k) { return Token{k, 0}; }

int kind_rank(Kind k) {
  switch (k) {
    case Kind::L:
      return 0;
    case Kind::F:
      return 1;
    case Kind::P:
      return 2;
    case Kind::Q:
      return 3;
    case Kind::Int:
      return 4;
    case Kind::Open:
    case Kind::Close:
      return 5;
  }
  return 6;
}

int compare_tokens(const Token& a, const Token& b) {
  int ra = kind_rank(a.kind), rb = kind_rank(b.kind);
  if (ra != rb) return ra < rb ? -1 : 1;
  if (a.kind == Kind::Int) {
    if (a.value != b.value) return a.value < b.value ? -1 : 1;
  }
  return 0;
}

int compare_filtered(const std::vector<Token>& a, const std::vector<Token>& b) {
  size_t i = 0, j = 0;
  auto skip = [](const std::vector<Token>& v, size_t& k) {
    while (k < v.size() &&
           (v[k].kind == Kind::Open || v[k].kind == Kind::Close))
      ++k;
  };
  while (true) {
    skip(a, i);
    skip(b, j);
    if (i == a.size() || j == b.size()) break;
    int c = compare_tokens(a[i], b[j]);
    if (c != 0) return c;
    ++i;
    ++j;
  }
  if (i == a.size() && j == b.size()) return 0;
  return i == a.size() ? -1 : 1;
}

struct CodeOptions {
  bool with_a_hat = true;
  bool with_leaf_labels = false;
};

struct CodeResult {
  std::vector<Token> tokens;
  std::vector<int> leaves;  // leaf elements in serialization order
  int size = 0;             // nodes in the sub-hierarchy
};

void append(std::vector<Token>& out, const std::vector<Token>& part) {
  out.insert(out.end(), part.begin(), part.end());
}

CodeResult code_node(const FpqHierarchy& h, int tree, int node,
                     const CodeOptions& opt);

// label(s) tokens for a hosted edge under an orientation.
std::vector<Token> label_tokens(const SkeletonEdge& e, bool reversed,
                                int child_count, const CodeOptions& opt) {
  int a = e.a, b = e.b;
  if (reversed) {
    a = child_count + 1 - e.b;
    b = child_count + 1 - e.a;
  }
  std::vector<Token> out{tok(Kind::Open), tok_int(a), tok_int(b)};
  if (opt.with_a_hat) {
    if (!e.a_hat)
      throw std::invalid_argument("code of an undecorated hierarchy");
    out.push_back(tok_int(*e.a_hat));
  }
  out.push_back(tok(Kind::Close));
  return out;
}

struct Unit {
  std::vector<Token> tokens;
  std::vector<int> leaves;
};

CodeResult code_candidate(const FpqHierarchy& h, int tree, int node,
                          bool reversed, const CodeOptions& opt) {
  const FpqTree& t = h.trees[tree];
  const auto& n = t.node(node);
  std::vector<int> block = n.children;
  if (reversed) std::reverse(block.begin(), block.end());

  CodeResult res;
  res.size = 1;
  std::vector<CodeResult> block_codes;
  for (int c : block) block_codes.push_back(code_node(h, tree, c, opt));
  if (n.type == FpqTree::NodeType::P) {
    std::stable_sort(block_codes.begin(), block_codes.end(),
                     [](const CodeResult& x, const CodeResult& y) {
                       return compare_filtered(x.tokens, y.tokens) < 0;
                     });
  }
  std::vector<Unit> units;
  for (int ei : h.edges_at(tree, node)) {
    const SkeletonEdge& e = h.skeleton[ei];
    CodeResult sub = code_node(h, e.tree, h.trees[e.tree].root(), opt);
    Unit u;
    u.tokens = label_tokens(e, reversed, static_cast<int>(n.children.size()),
                            opt);
    append(u.tokens, sub.tokens);
    u.leaves = std::move(sub.leaves);
    res.size += sub.size;
    units.push_back(std::move(u));
  }
  std::stable_sort(units.begin(), units.end(), [](const Unit& x, const Unit& y) {
    return compare_filtered(x.tokens, y.tokens) < 0;
  });

  for (const CodeResult& bc : block_codes) res.size += bc.size;
  res.tokens.push_back(tok_int(res.size));
  res.tokens.push_back(tok(n.type == FpqTree::NodeType::F   ? Kind::F
                           : n.type == FpqTree::NodeType::P ? Kind::P
                                                            : Kind::Q));
  for (const CodeResult& bc : block_codes) {
    append(res.tokens, bc.tokens);
    res.leaves.insert(res.leaves.end(), bc.leaves.begin(), bc.leaves.end());
  }
  for (const Unit& u : units) {
    append(res.tokens, u.tokens);
    res.leaves.insert(res.leaves.end(), u.leaves.begin(), u.leaves.end());
  }
  return res;
}

CodeResult code_node(const FpqHierarchy& h, int tree, int node,
                     const CodeOptions& opt) {
  const FpqTree& t = h.trees[tree];
  const auto& n = t.node(node);
  if (n.type == FpqTree::NodeType::Leaf) {
    CodeResult res;
    res.size = 1;
    res.leaves = {n.element};
    std::vector<Unit> units;
    for (int ei : h.edges_at(tree, node)) {
      const SkeletonEdge& e = h.skeleton[ei];
      CodeResult sub = code_node(h, e.tree, h.trees[e.tree].root(), opt);
      Unit u;
      u.tokens = label_tokens(e, false, 1, opt);
      append(u.tokens, sub.tokens);
      u.leaves = std::move(sub.leaves);
      res.size += sub.size;
      units.push_back(std::move(u));
    }
    std::stable_sort(units.begin(), units.end(),
                     [](const Unit& x, const Unit& y) {
                       return compare_filtered(x.tokens, y.tokens) < 0;
                     });
    res.tokens = {tok_int(res.size), tok(Kind::L)};
    if (opt.with_leaf_labels) res.tokens.push_back(tok_int(n.element));
    for (const Unit& u : units) {
      append(res.tokens, u.tokens);
      res.leaves.insert(res.leaves.end(), u.leaves.begin(), u.leaves.end());
    }
    return res;
  }
  CodeResult ident = code_candidate(h, tree, node, false, opt);
  if (n.type != FpqTree::NodeType::Q || n.children.size() < 2) return ident;
  CodeResult rev = code_candidate(h, tree, node, true, opt);
  return compare_filtered(ident.tokens, rev.tokens) <= 0 ? std::move(ident)
                                                         : std::move(rev);
}

CodeResult full_code(const FpqHierarchy& h, const CodeOptions& opt) {
  h.validate();
  return code_node(h, 0, h.trees[0].root(), opt);
}

}  // namespace

std::string IsoCode::render() const {
  std::ostringstream os;
  bool first = true;
  for (const Token& t : tokens) {
    if (!first) os << ' ';
    first = false;
    switch (t.kind) {
      case Kind::L:
        os << 'L';
        break;
      case Kind::F:
        os << 'F';
        break;
      case Kind::P:
        os << 'P';
        break;
      case Kind::Q:
        os << 'Q';
        break;
      case Kind::Int:
        os << t.value;
        break;
      case Kind::Open:
        os << '<';
        break;
      case Kind::Close:
        os << '>';
        break;
    }
  }
  return os.str();
}

IsoCode IsoCode::from_string(const std::string& text) {
  IsoCode c;
  std::istringstream is(text);
  std::string word;
  while (is >> word) {
    if (word == "L")
      c.tokens.push_back(tok(Kind::L));
    else if (word == "F")
      c.tokens.push_back(tok(Kind::F));
    else if (word == "P")
      c.tokens.push_back(tok(Kind::P));
    else if (word == "Q")
      c.tokens.push_back(tok(Kind::Q));
    else if (word == "<")
      c.tokens.push_back(tok(Kind::Open));
    else if (word == ">")
      c.tokens.push_back(tok(Kind::Close));
    else {
      size_t pos = 0;
      int v = std::stoi(word, &pos);
      if (pos != word.size())
        throw std::invalid_argument("bad code token: " + word);
      c.tokens.push_back(tok_int(v));
    }
  }
  return c;
}

int IsoCode::compare(const IsoCode& a, const IsoCode& b) {
  int c = compare_filtered(a.tokens, b.tokens);
  if (c != 0) return c;
  // Delimiters break residual ties so the order is total.
  if (a.tokens.size() != b.tokens.size())
    return a.tokens.size() < b.tokens.size() ? -1 : 1;
  for (size_t i = 0; i < a.tokens.size(); ++i) {
    if (a.tokens[i].kind != b.tokens[i].kind)
      return kind_rank(a.tokens[i].kind) < kind_rank(b.tokens[i].kind) ? -1 : 1;
  }
  return 0;
}

IsoCode code_of(const FpqHierarchy& h) {
  if (!h.decorated())
    throw std::invalid_argument("code requires a decorated hierarchy");
  return IsoCode{full_code(h, CodeOptions{true, false}).tokens};
}

IsoCode code_of_undecorated(const FpqHierarchy& h) {
  return IsoCode{full_code(h, CodeOptions{false, false}).tokens};
}

bool hierarchies_equivalent(const FpqHierarchy& h1, const FpqHierarchy& h2) {
  return code_of(h1) == code_of(h2);
}

bool hierarchies_equivalent_undecorated(const FpqHierarchy& h1,
                                        const FpqHierarchy& h2) {
  return code_of_undecorated(h1) == code_of_undecorated(h2);
}

bool fpq_equivalent(const FpqTree& t1, const FpqTree& t2) {
  if (t1.ground() != t2.ground())
    throw std::invalid_argument("fpq equivalence requires equal ground sets");
  FpqHierarchy h1, h2;
  h1.trees = {t1};
  h2.trees = {t2};
  CodeOptions opt{false, true};
  return full_code(h1, opt).tokens == full_code(h2, opt).tokens;
}

namespace {

struct Parser {
  const std::vector<Token>& toks;
  size_t pos = 0;
  int next_leaf = 0;
  std::vector<std::vector<FpqTree::Node>> tree_nodes;
  struct PendingEdge {
    int tree;
    int host_tree;
    int host_node_raw;  // raw id within builder arrays
    int a, b;
    std::optional<int> a_hat;
  };
  std::vector<PendingEdge> edges;

  const Token& peek() {
    if (pos >= toks.size())
      throw std::invalid_argument("truncated isomorphism code");
    return toks[pos];
  }
  Token take() {
    Token t = peek();
    ++pos;
    return t;
  }
  int take_int() {
    Token t = take();
    if (t.kind != Kind::Int)
      throw std::invalid_argument("expected integer token");
    return t.value;
  }

  // Parses one node of the given tree; returns (raw node id, subtree size).
  std::pair<int, int> parse_node(int tree) {
    int size = take_int();
    Token type = take();
    if (size < 1) throw std::invalid_argument("non-positive size token");
    FpqTree::Node n;
    switch (type.kind) {
      case Kind::L:
        n.type = FpqTree::NodeType::Leaf;
        break;
      case Kind::F:
        n.type = FpqTree::NodeType::F;
        break;
      case Kind::P:
        n.type = FpqTree::NodeType::P;
        break;
      case Kind::Q:
        n.type = FpqTree::NodeType::Q;
        break;
      default:
        throw std::invalid_argument("expected type token");
    }
    int id = static_cast<int>(tree_nodes[tree].size());
    tree_nodes[tree].push_back(n);
    if (n.type == FpqTree::NodeType::Leaf)
      tree_nodes[tree][id].element = next_leaf++;
    int consumed = 1;
    int block_children = 0;
    while (consumed < size) {
      if (peek().kind == Kind::Open) {
        take();
        int a = take_int();
        int b = take_int();
        std::optional<int> a_hat;
        if (peek().kind == Kind::Int) a_hat = take_int();
        if (take().kind != Kind::Close)
          throw std::invalid_argument("unterminated label");
        int sub_tree = static_cast<int>(tree_nodes.size());
        tree_nodes.emplace_back();
        auto [sub_root, sub_size] = parse_node(sub_tree);
        if (sub_root != 0)
          throw std::logic_error("subtree root must be its first node");
        edges.push_back({sub_tree, tree, id, a, b, a_hat});
        consumed += sub_size;
      } else {
        if (n.type == FpqTree::NodeType::Leaf)
          throw std::invalid_argument("leaf with a block child");
        auto [child, sub_size] = parse_node(tree);
        tree_nodes[tree][id].children.push_back(child);
        tree_nodes[tree][child].parent = id;
        consumed += sub_size;
        ++block_children;
      }
    }
    if (consumed != size)
      throw std::invalid_argument("size bookkeeping failed");
    if (n.type == FpqTree::NodeType::Leaf) return {id, size};
    bool degenerate =
        n.type == FpqTree::NodeType::Q && block_children == 1 &&
        tree_nodes[tree][tree_nodes[tree][id].children[0]].type ==
            FpqTree::NodeType::Leaf;
    int min_children = n.type == FpqTree::NodeType::P ? 3 : 2;
    if (!degenerate && block_children < min_children)
      throw std::invalid_argument("node arity violates the normal form");
    return {id, size};
  }
};

}  // namespace

FpqHierarchy parse_code(const IsoCode& c) {
  Parser p{c.tokens, 0, 0, {}, {}};
  p.tree_nodes.emplace_back();
  auto [root, size] = p.parse_node(0);
  (void)size;
  if (root != 0) throw std::logic_error("root must be the first node");
  if (p.pos != c.tokens.size())
    throw std::invalid_argument("trailing tokens after the code");
  FpqHierarchy h;
  for (auto& nodes : p.tree_nodes) {
    // Nodes were appended in preorder; parents/children already set.
    FpqTree t = FpqTree::build(std::move(nodes), 0);
    h.trees.push_back(std::move(t));
  }
  for (const auto& pe : p.edges) {
    SkeletonEdge e;
    e.tree = pe.tree;
    e.host_tree = pe.host_tree;
    e.host_node = pe.host_node_raw;  // preorder ids are stable under build
    e.a = pe.a;
    e.b = pe.b;
    e.a_hat = pe.a_hat;
    h.skeleton.push_back(e);
  }
  h.validate();
  return h;
}

std::optional<std::vector<int>> isomorphic(const Graph& g1, const Graph& g2) {
  RecognitionResult r1 = recognize(g1);
  RecognitionResult r2 = recognize(g2);
  if (!r1.proper_chordal || !r2.proper_chordal)
    throw std::invalid_argument("isomorphic requires proper chordal inputs");
  const auto& [x1, t1, h1] = r1.witnesses.front();
  (void)x1;
  (void)t1;
  CodeOptions opt{true, false};
  CodeResult c1 = full_code(h1, opt);
  for (const auto& [x2, t2, h2] : r2.witnesses) {
    (void)x2;
    (void)t2;
    CodeResult c2 = full_code(h2, opt);
    if (c1.tokens != c2.tokens) continue;
    if (c1.leaves.size() != c2.leaves.size())
      throw std::logic_error("equal codes with different leaf counts");
    std::vector<int> map(g1.vertex_count(), -1);
    for (size_t i = 0; i < c1.leaves.size(); ++i) map[c1.leaves[i]] = c2.leaves[i];
    // The mapping must preserve edges exactly; equal codes guarantee it,
    // and the check guards the implementation.
    if (g1.edge_count() != g2.edge_count())
      throw std::logic_error("equal codes with different edge counts");
    for (auto [u, v] : g1.edges())
      if (!g2.adjacent(map[u], map[v]))
        throw std::logic_error("aligned bijection failed edge verification");
    return map;
  }
  return std::nullopt;
}

}  // namespace pchord
