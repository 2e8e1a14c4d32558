#include "projdim/reconstruct.hpp"

#include <numeric>
#include <queue>
#include <sstream>

namespace projdim {

std::string StarEdge::tag() const {
  return Variable{side, var}.name() + "=" + std::to_string(value);
}

std::string StarGraph::to_edge_list() const {
  std::ostringstream out;
  for (const auto& e : edges) out << e.u + 1 << ' ' << e.v + 1 << ' ' << e.tag() << '\n';
  return out.str();
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }

  // False when a and b were already connected.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
};

std::size_t slot(Side side, std::size_t var, int value, std::size_t n) {
  return ((side == Side::left ? 0 : n) + var) * 2 + static_cast<std::size_t>(value);
}

}  // namespace

StarEvaluator::StarEvaluator(const BitwiseAssignment& ba)
    : n_(ba.n()), ambient_(ba.ambient()), members_(4 * ba.n()) {
  for (Side side : {Side::left, Side::right}) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (int a = 0; a < 2; ++a) {
        const auto& space = ba.literal(side, i, a);
        auto& list = members_[slot(side, i, a, n_)];
        std::vector<gf::Vector> rows;
        for (std::size_t u = 0; u < ambient_; ++u) {
          for (std::size_t v = u + 1; v < ambient_; ++v) {
            auto diff = gf::difference_vector(2, ambient_, u, v);
            if (!space.contains(diff)) continue;
            list.push_back({u, v, side, i, a});
            rows.push_back(std::move(diff));
          }
        }
        if (!(gf::Subspace::span(2, ambient_, rows) == space)) {
          throw PreconditionError("cycle evaluation: " + Variable{side, i}.name() + "=" + std::to_string(a) +
                                  " is not spanned by difference vectors");
        }
      }
    }
  }
}

const std::vector<StarEdge>& StarEvaluator::members(Side side, std::size_t var, int value) const {
  return members_[slot(side, var, value, n_)];
}

StarGraph StarEvaluator::star(std::uint64_t x, std::uint64_t y) const {
  StarGraph g;
  g.vertices = ambient_;
  for (Side side : {Side::left, Side::right}) {
    const std::uint64_t bits = side == Side::left ? x : y;
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& list = members(side, i, static_cast<int>((bits >> (n_ - 1 - i)) & 1));
      g.edges.insert(g.edges.end(), list.begin(), list.end());
    }
  }
  return g;
}

CycleEvaluation StarEvaluator::evaluate(std::uint64_t x, std::uint64_t y) const {
  const StarGraph g = star(x, y);
  CycleEvaluation result;

  // A spanning forest per side is a basis of that side's subspace; the
  // union of the two forests is dependent exactly when the spaces meet.
  std::vector<StarEdge> forest;
  for (Side side : {Side::left, Side::right}) {
    UnionFind uf(ambient_);
    for (const auto& e : g.edges) {
      if (e.side != side) continue;
      if (uf.unite(e.u, e.v)) {
        forest.push_back(e);
      } else {
        result.diagnostics.push_back("edge " + std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1) + " (" +
                                     e.tag() + ") is spanned by earlier edges of its side");
      }
    }
  }

  UnionFind uf(ambient_);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(ambient_);  // (neighbor, edge index)
  for (std::size_t k = 0; k < forest.size(); ++k) {
    const auto& e = forest[k];
    if (uf.unite(e.u, e.v)) {
      adj[e.u].emplace_back(e.v, k);
      adj[e.v].emplace_back(e.u, k);
      continue;
    }
    // Path from e.v back to e.u in the accepted forest, then the closing edge.
    std::vector<std::size_t> prev(ambient_, SIZE_MAX), via(ambient_, SIZE_MAX);
    std::queue<std::size_t> queue;
    queue.push(e.v);
    prev[e.v] = e.v;
    while (!queue.empty() && prev[e.u] == SIZE_MAX) {
      const auto a = queue.front();
      queue.pop();
      for (auto [b, idx] : adj[a]) {
        if (prev[b] != SIZE_MAX) continue;
        prev[b] = a;
        via[b] = idx;
        queue.push(b);
      }
    }
    result.value = true;
    result.witness.assign(ambient_, 0);
    auto add = [&](const StarEdge& edge, std::size_t from, std::size_t to) {
      result.cycle.push_back(edge);
      if (edge.side != Side::left) return;
      result.witness[from] ^= 1;
      result.witness[to] ^= 1;
    };
    add(e, e.u, e.v);
    // Walk from e.u toward e.v along prev pointers.
    for (std::size_t cur = e.u; cur != e.v; cur = prev[cur]) add(forest[via[cur]], cur, prev[cur]);
    break;
  }
  return result;
}

StarGraph build_star(const BitwiseAssignment& ba, std::uint64_t x, std::uint64_t y) {
  return StarEvaluator(ba).star(x, y);
}

bool evaluate_via_cycle(const BitwiseAssignment& ba, std::uint64_t x, std::uint64_t y) {
  return StarEvaluator(ba).evaluate(x, y).value;
}

bool evaluate_via_intersection(const BitwiseAssignment& ba, std::uint64_t x, std::uint64_t y) {
  return gf::intersection_dim(ba.left_space(x), ba.right_space(y)) > 0;
}

}  // namespace projdim
