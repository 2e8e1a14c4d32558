#include "projdim/bp.hpp"

#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

namespace projdim {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

bool bit_of(std::uint64_t packed, std::size_t n, std::size_t index) { return (packed >> (n - 1 - index)) & 1; }

}  // namespace

BranchingProgram::BranchingProgram(std::size_t n, std::vector<BPNode> nodes, std::size_t start,
                                   std::size_t accept, std::size_t reject)
    : n_(n), nodes_(std::move(nodes)), start_(start), accept_(accept), reject_(reject) {
  const std::size_t size = nodes_.size();
  if (n_ == 0) throw std::invalid_argument("BranchingProgram: n must be positive");
  if (start_ >= size || accept_ >= size || reject_ >= size) {
    throw std::invalid_argument("BranchingProgram: start/accept/reject out of range");
  }
  if (accept_ == reject_) throw std::invalid_argument("BranchingProgram: accept and reject coincide");
  for (std::size_t i = 0; i < size; ++i) {
    const auto& node = nodes_[i];
    const bool terminal = i == accept_ || i == reject_;
    if (terminal) {
      if (node.var) throw std::invalid_argument("BranchingProgram: terminal node " + std::to_string(i) + " has a label");
      continue;
    }
    if (!node.var) throw std::invalid_argument("BranchingProgram: node " + std::to_string(i) + " has no label");
    if (node.var->index >= n_) {
      throw std::invalid_argument("BranchingProgram: node " + std::to_string(i) + " reads " + node.var->name() +
                                  " but n = " + std::to_string(n_));
    }
    for (auto next : node.next) {
      if (next >= size) throw std::invalid_argument("BranchingProgram: edge target out of range at node " + std::to_string(i));
    }
  }
  if (topological_order().size() != size) throw std::invalid_argument("BranchingProgram: graph has a cycle");
}

std::vector<std::size_t> BranchingProgram::topological_order() const {
  const std::size_t size = nodes_.size();
  std::vector<std::size_t> indegree(size, 0);
  for (const auto& node : nodes_) {
    if (!node.var) continue;
    for (auto next : node.next) ++indegree[next];
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < size; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const auto u = ready.top();
    ready.pop();
    order.push_back(u);
    if (!nodes_[u].var) continue;
    for (auto next : nodes_[u].next) {
      if (--indegree[next] == 0) ready.push(next);
    }
  }
  return order;
}

bool BranchingProgram::evaluate(std::uint64_t x, std::uint64_t y) const {
  std::size_t cur = start_;
  for (std::size_t steps = 0; steps <= nodes_.size(); ++steps) {
    const auto& node = nodes_[cur];
    if (!node.var) return cur == accept_;
    const auto& v = *node.var;
    cur = node.next[bit_of(v.side == Side::left ? x : y, n_, v.index)];
  }
  throw std::runtime_error("BranchingProgram::evaluate: path did not terminate");
}

std::size_t BranchingProgram::edge_count() const {
  std::size_t total = 0;
  for (const auto& node : nodes_) total += node.var ? 2 : 0;
  return total;
}

std::size_t BranchingProgram::left_edge_count() const {
  std::size_t total = 0;
  for (const auto& node : nodes_) total += (node.var && node.var->side == Side::left) ? 2 : 0;
  return total;
}

// ----------------------------------------------------------------- builders

namespace {

Variable var_at(std::size_t n, std::size_t k) {
  return k < n ? Variable{Side::left, k} : Variable{Side::right, k - n};
}

BranchingProgram build_eq(std::size_t n, bool negate) {
  std::vector<BPNode> nodes(3 * n + 2);
  const std::size_t accept = 3 * n;
  const std::size_t reject = 3 * n + 1;
  const std::size_t yes = negate ? reject : accept;
  const std::size_t no = negate ? accept : reject;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = 3 * i;
    const std::size_t after = i + 1 < n ? 3 * (i + 1) : yes;
    nodes[a].var = Variable{Side::left, i};
    nodes[a].next = {a + 1, a + 2};
    for (std::size_t b = 0; b < 2; ++b) {
      auto& c = nodes[a + 1 + b];
      c.var = Variable{Side::right, i};
      c.next[b] = after;
      c.next[1 - b] = no;
    }
  }
  return {n, std::move(nodes), 0, accept, reject};
}

BranchingProgram build_ip(std::size_t n) {
  std::vector<BPNode> nodes;
  std::vector<std::array<std::size_t, 2>> X(n + 1, {npos, npos}), Y(n, {npos, npos});
  auto make = [&nodes]() {
    nodes.emplace_back();
    return nodes.size() - 1;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < 2; ++p) {
      if (i == 0 && p == 1) continue;
      X[i][p] = make();
    }
    for (std::size_t p = 0; p < 2; ++p) {
      if (i == 0 && p == 1) continue;
      Y[i][p] = make();
    }
  }
  X[n][1] = make();  // accept
  X[n][0] = make();  // reject
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < 2; ++p) {
      if (X[i][p] == npos) continue;
      nodes[X[i][p]].var = Variable{Side::left, i};
      nodes[X[i][p]].next = {X[i + 1][p], Y[i][p]};
      nodes[Y[i][p]].var = Variable{Side::right, i};
      nodes[Y[i][p]].next = {X[i + 1][p], X[i + 1][1 - p]};
    }
  }
  return {n, std::move(nodes), X[0][0], X[n][1], X[n][0]};
}

BranchingProgram build_disj(std::size_t n) {
  std::vector<BPNode> nodes(2 * n + 2);
  const std::size_t accept = 2 * n;
  const std::size_t reject = 2 * n + 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t after = i + 1 < n ? 2 * (i + 1) : accept;
    nodes[2 * i].var = Variable{Side::left, i};
    nodes[2 * i].next = {after, 2 * i + 1};
    nodes[2 * i + 1].var = Variable{Side::right, i};
    nodes[2 * i + 1].next = {after, reject};
  }
  return {n, std::move(nodes), 0, accept, reject};
}

BranchingProgram build_parity(std::size_t n) {
  // Layer 0 is the start; layers 1..2n-1 hold one node per parity so far.
  const std::size_t layers = 2 * n;
  std::vector<BPNode> nodes(1 + 2 * (layers - 1) + 2);
  const std::size_t accept = nodes.size() - 2;
  const std::size_t reject = nodes.size() - 1;
  auto id = [&](std::size_t layer, std::size_t parity) -> std::size_t {
    if (layer == layers) return parity ? accept : reject;
    return 2 * layer - 1 + parity;
  };
  nodes[0].var = var_at(n, 0);
  nodes[0].next = {id(1, 0), id(1, 1)};
  for (std::size_t layer = 1; layer < layers; ++layer) {
    for (std::size_t p = 0; p < 2; ++p) {
      auto& node = nodes[id(layer, p)];
      node.var = var_at(n, layer);
      node.next = {id(layer + 1, p), id(layer + 1, 1 - p)};
    }
  }
  return {n, std::move(nodes), 0, accept, reject};
}

}  // namespace

BranchingProgram build_named(Family family, std::size_t n) {
  if (n == 0) throw std::invalid_argument("build_named: n must be positive");
  switch (family) {
    case Family::eq: return build_eq(n, false);
    case Family::ineq: return build_eq(n, true);
    case Family::ip: return build_ip(n);
    case Family::disj: return build_disj(n);
    case Family::parity: return build_parity(n);
    default:
      throw std::invalid_argument("build_named: no linear-size builder for " + family_name(family) +
                                  "; use build_from_table");
  }
}

BranchingProgram build_from_table(const BooleanFunction& f) {
  const std::size_t n = f.n();
  if (2 * n > 20) throw GuardExceeded("build_from_table: more than 20 input bits");
  const auto table = f.truth_table();

  std::vector<BPNode> nodes(2);  // 0 = accept, 1 = reject
  std::map<std::vector<bool>, std::size_t> memo;

  auto build = [&](auto&& self, std::size_t level, std::size_t offset, std::size_t len) -> std::size_t {
    std::vector<bool> slice(table.begin() + offset, table.begin() + offset + len);
    bool ones = true, zeros = true;
    for (bool b : slice) (b ? zeros : ones) = false;
    if (ones) return 0;
    if (zeros) return 1;
    const std::size_t half = len / 2;
    if (std::equal(slice.begin(), slice.begin() + half, slice.begin() + half)) {
      return self(self, level + 1, offset, half);
    }
    if (auto it = memo.find(slice); it != memo.end()) return it->second;
    const std::size_t id = nodes.size();
    nodes.emplace_back();
    nodes[id].var = var_at(n, level);
    const std::size_t lo = self(self, level + 1, offset, half);
    const std::size_t hi = self(self, level + 1, offset + half, half);
    nodes[id].next = {lo, hi};
    memo.emplace(std::move(slice), id);
    return id;
  };
  std::size_t root = build(build, 0, 0, table.size());
  if (root < 2) {
    // Constant function: a single x1 node keeps start distinct from the terminals.
    nodes.emplace_back();
    nodes.back().var = Variable{Side::left, 0};
    nodes.back().next = {root, root};
    root = nodes.size() - 1;
  }
  return {n, std::move(nodes), root, 0, 1};
}

BooleanFunction program_function(const BranchingProgram& bp, const std::string& name) {
  BooleanFunction f(name, bp.n(), [bp](std::uint64_t x, std::uint64_t y) { return bp.evaluate(x, y); });
  if (bp.n() <= 8) return BooleanFunction::from_table(name, bp.n(), f.truth_table());
  return f;
}

// --------------------------------------------------------------- transforms

LiteralGraph pudlak_rodl_graph(const BranchingProgram& bp) {
  if (bp.start() == bp.accept()) {
    throw std::invalid_argument("pudlak_rodl_graph: start coincides with accept; merging would create a loop");
  }
  const auto order = bp.topological_order();
  std::vector<std::size_t> index(bp.size(), npos);
  std::size_t next = 0;
  LiteralGraph g;
  g.n = bp.n();
  g.vertices = bp.size();
  g.vertex_names.resize(g.vertices);
  for (auto u : order) {
    if (u == bp.accept()) continue;
    g.vertex_names[next] = "v" + std::to_string(u);
    index[u] = next++;
  }
  const std::size_t merged = next;
  index[bp.accept()] = merged;
  g.vertex_names[merged] = "start*";

  const auto& old_start = bp.node(bp.start());
  Variable fresh{Side::right, 0};
  if (old_start.var && old_start.var->side == Side::right) fresh = Variable{Side::left, 0};
  for (int b = 0; b < 2; ++b) g.edges.push_back({merged, index[bp.start()], {fresh, b}});

  for (auto u : order) {
    const auto& node = bp.node(u);
    if (!node.var) continue;
    for (int b = 0; b < 2; ++b) g.edges.push_back({index[u], index[node.next[b]], {*node.var, b}});
  }
  return g;
}

LiteralGraph subdivide_left_edges(const LiteralGraph& g) {
  LiteralGraph out;
  out.n = g.n;
  out.vertices = g.vertices;
  out.vertex_names = g.vertex_names;
  out.vertex_names.resize(g.vertices);
  const Variable y1{Side::right, 0};
  for (const auto& e : g.edges) {
    if (e.literal.var.side != Side::left) {
      out.edges.push_back(e);
      continue;
    }
    const std::size_t w = out.vertices++;
    out.vertex_names.push_back("w" + std::to_string(e.tail) + "_" + std::to_string(e.head) + "_" +
                               e.literal.var.name() + "=" + std::to_string(e.literal.value));
    out.edges.push_back({e.tail, w, e.literal});
    out.edges.push_back({w, e.head, {y1, 0}});
    out.edges.push_back({w, e.head, {y1, 1}});
  }
  return out;
}

ProjectiveAssignment closed_edge_assignment(const LiteralGraph& g, gf::Element q) {
  if (g.n > kDenseLimit) throw GuardExceeded("closed_edge_assignment: n exceeds the dense limit");
  ProjectiveAssignment phi{q, g.vertices, {}, {}};
  const std::uint64_t side_size = std::uint64_t{1} << g.n;
  for (Side side : {Side::left, Side::right}) {
    auto& out = side == Side::left ? phi.left : phi.right;
    for (std::uint64_t v = 0; v < side_size; ++v) {
      std::vector<gf::Vector> rows;
      for (const auto& e : g.edges) {
        const auto& lit = e.literal;
        if (lit.var.side != side || bit_of(v, g.n, lit.var.index) != static_cast<bool>(lit.value)) continue;
        rows.push_back(gf::difference_vector(q, g.vertices, e.tail, e.head));
      }
      out.push_back(gf::Subspace::span(q, g.vertices, rows));
    }
  }
  return phi;
}

BitwiseAssignment literal_assignment(const LiteralGraph& g) {
  BitwiseAssignment ba(g.n, g.vertices);
  for (Side side : {Side::left, Side::right}) {
    for (std::size_t i = 0; i < g.n; ++i) {
      for (int a = 0; a < 2; ++a) {
        std::vector<gf::Vector> rows;
        for (const auto& e : g.edges) {
          const auto& lit = e.literal;
          if (lit.var.side == side && lit.var.index == i && lit.value == a) {
            rows.push_back(gf::difference_vector(2, g.vertices, e.tail, e.head));
          }
        }
        ba.set_literal(side, i, a, gf::Subspace::span(2, g.vertices, rows));
      }
    }
  }
  return ba;
}

ProjectiveAssignment pudlak_rodl_transform(const BranchingProgram& bp, gf::Element q) {
  return closed_edge_assignment(pudlak_rodl_graph(bp), q);
}

BitpdimExtract subdivide_for_bitpdim(const BranchingProgram& bp) {
  LiteralGraph graph = subdivide_left_edges(pudlak_rodl_graph(bp));
  BitwiseAssignment assignment = literal_assignment(graph);

  std::vector<BPNode> nodes = bp.nodes();
  const std::size_t original = nodes.size();
  for (std::size_t u = 0; u < original; ++u) {
    if (!nodes[u].var || nodes[u].var->side != Side::left) continue;
    for (int b = 0; b < 2; ++b) {
      BPNode w;
      w.var = Variable{Side::right, 0};
      w.next = {nodes[u].next[b], nodes[u].next[b]};
      nodes.push_back(w);
      nodes[u].next[b] = nodes.size() - 1;
    }
  }
  BranchingProgram program(bp.n(), std::move(nodes), bp.start(), bp.accept(), bp.reject());
  return {std::move(program), std::move(assignment), std::move(graph)};
}

}  // namespace projdim
