#include "projdim/solve.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <stdexcept>

namespace projdim {

void SearchBudget::validate() const {
  if (d_max == 0 || node_limit == 0 || !(time_limit_seconds > 0)) {
    throw std::invalid_argument("SearchBudget: limits must be positive");
  }
}

std::string status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::exact: return "exact";
    case SolveStatus::lower_bound_only: return "lower_bound_only";
    case SolveStatus::budget_exceeded: return "budget_exceeded";
  }
  return "?";
}

namespace {

class Meter {
 public:
  explicit Meter(const SearchBudget& budget) : budget_(budget), begin_(std::chrono::steady_clock::now()) {}

  // False once the node or time budget is spent.
  bool tick() {
    if (exhausted_) return false;
    ++nodes_;
    if (nodes_ > budget_.node_limit) exhausted_ = true;
    if ((nodes_ & 1023) == 0 && seconds() > budget_.time_limit_seconds) exhausted_ = true;
    return !exhausted_;
  }
  bool exhausted() const { return exhausted_; }
  std::uint64_t nodes() const { return nodes_; }
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - begin_).count();
  }

 private:
  const SearchBudget& budget_;
  std::chrono::steady_clock::time_point begin_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

// ------------------------------------------------------ subspace assignment

struct ClassVar {
  Side side;
  std::size_t cls;
  std::size_t degree;
};

class SubspaceSearch {
 public:
  SubspaceSearch(const std::vector<ClassVar>& vars, const std::vector<std::vector<bool>>& adj,
                 const std::vector<gf::Subspace>& domain, bool unit, Meter& meter)
      : vars_(vars), adj_(adj), domain_(domain), unit_(unit), meter_(meter), value_(vars.size(), 0) {
    const std::size_t n = domain_.size();
    if (n <= 4096) {
      table_.resize(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
          const auto k = static_cast<std::uint8_t>(gf::intersection_dim(domain_[i], domain_[j]));
          table_[i * n + j] = table_[j * n + i] = k;
        }
      }
    }
  }

  // True if a consistent assignment exists; values() then holds it.
  bool run() { return dfs(0); }
  const std::vector<std::size_t>& values() const { return value_; }

 private:
  std::size_t meet(std::size_t i, std::size_t j) const {
    if (!table_.empty()) return table_[i * domain_.size() + j];
    return gf::intersection_dim(domain_[i], domain_[j]);
  }

  bool consistent(std::size_t k, std::size_t s) const {
    const auto& var = vars_[k];
    for (std::size_t j = 0; j < k; ++j) {
      const auto& other = vars_[j];
      if (other.side == var.side) {
        if (value_[j] == s) return false;
        continue;
      }
      const std::size_t m = meet(s, value_[j]);
      const bool edge = var.side == Side::left ? adj_[var.cls][other.cls] : adj_[other.cls][var.cls];
      if ((m > 0) != edge) return false;
      if (unit_ && m > 1) return false;
    }
    return true;
  }

  bool dfs(std::size_t k) {
    if (k == vars_.size()) return true;
    std::size_t last_dim = static_cast<std::size_t>(-1);
    for (std::size_t s = 0; s < domain_.size(); ++s) {
      if (k == 0) {
        // Every subspace of a given dimension is equivalent under GL(d).
        if (domain_[s].dim() == last_dim) continue;
        last_dim = domain_[s].dim();
      }
      if (!meter_.tick()) return false;
      if (!consistent(k, s)) continue;
      value_[k] = s;
      if (dfs(k + 1)) return true;
      if (meter_.exhausted()) return false;
    }
    return false;
  }

  const std::vector<ClassVar>& vars_;
  const std::vector<std::vector<bool>>& adj_;
  const std::vector<gf::Subspace>& domain_;
  bool unit_;
  Meter& meter_;
  std::vector<std::size_t> value_;
  std::vector<std::uint8_t> table_;
};

SolveResult solve_subspace(const BipartiteGraph& g, gf::Element q, const SearchBudget& budget, bool unit) {
  budget.validate();
  if (!gf::is_prime(q)) throw std::invalid_argument("exact_pd: modulus is not prime");
  const auto lc = neighborhood_classes(g, Side::left);
  const auto rc = neighborhood_classes(g, Side::right);
  if (lc.representatives.size() > kClassLimit || rc.representatives.size() > kClassLimit) {
    throw GuardExceeded("exact_pd: more than " + std::to_string(kClassLimit) +
                        " distinct neighborhoods on one side");
  }
  const std::size_t nl = lc.representatives.size();
  const std::size_t nr = rc.representatives.size();
  std::vector<std::vector<bool>> adj(nl, std::vector<bool>(nr));
  for (std::size_t a = 0; a < nl; ++a) {
    for (std::size_t b = 0; b < nr; ++b) adj[a][b] = g.has_edge(lc.representatives[a], rc.representatives[b]);
  }
  std::vector<ClassVar> vars;
  for (std::size_t a = 0; a < nl; ++a) {
    const auto deg = g.left_degree(lc.representatives[a]);
    if (deg > 0) vars.push_back({Side::left, a, deg});
  }
  for (std::size_t b = 0; b < nr; ++b) {
    const auto deg = g.right_degree(rc.representatives[b]);
    if (deg > 0) vars.push_back({Side::right, b, deg});
  }
  std::stable_sort(vars.begin(), vars.end(), [](const ClassVar& a, const ClassVar& b) {
    if (a.degree != b.degree) return a.degree > b.degree;
    return a.side == Side::left && b.side == Side::right;
  });

  Meter meter(budget);
  SolveResult result;
  for (std::size_t d = 1; d <= budget.d_max; ++d) {
    std::vector<gf::Subspace> domain;
    for (auto& s : gf::enumerate_subspaces(d, q)) {
      if (!s.is_zero()) domain.push_back(std::move(s));
    }
    SubspaceSearch search(vars, adj, domain, unit, meter);
    const bool found = search.run();
    if (meter.exhausted()) {
      result.status = SolveStatus::budget_exceeded;
      result.value = d;
      break;
    }
    if (!found) {
      result.stats.refuted.push_back(d);
      continue;
    }
    std::vector<gf::Subspace> left_class(nl, gf::Subspace(q, d)), right_class(nr, gf::Subspace(q, d));
    for (std::size_t k = 0; k < vars.size(); ++k) {
      auto& slot = vars[k].side == Side::left ? left_class[vars[k].cls] : right_class[vars[k].cls];
      slot = domain[search.values()[k]];
    }
    ProjectiveAssignment phi{q, d, {}, {}};
    for (auto c : lc.class_of) phi.left.push_back(left_class[c]);
    for (auto c : rc.class_of) phi.right.push_back(right_class[c]);
    if (!verify_realizes(phi, g) || (unit && max_intersection_dim(phi, g) > 1)) {
      throw std::logic_error("exact_pd: witness failed verification");
    }
    result.status = SolveStatus::exact;
    result.value = d;
    result.witness = std::move(phi);
    break;
  }
  if (result.status != SolveStatus::exact && !meter.exhausted()) {
    result.status = SolveStatus::lower_bound_only;
    result.value = budget.d_max + 1;
  }
  result.stats.nodes = meter.nodes();
  result.stats.seconds = meter.seconds();
  return result;
}

// ---------------------------------------------------------------- bicliques

using Mask = std::uint64_t;

class BicliqueSearch {
 public:
  BicliqueSearch(const BipartiteGraph& g, bool disjoint, Meter& meter)
      : g_(g), disjoint_(disjoint), meter_(meter), edges_(g.edges()) {
    index_.assign(g.left_size() * g.right_size(), -1);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      index_[edges_[e].first * g.right_size() + edges_[e].second] = static_cast<int>(e);
    }
    if (!disjoint_) build_maximal();
  }

  std::size_t edge_total() const { return edges_.size(); }
  Mask all() const { return edges_.size() == 64 ? ~Mask{0} : (Mask{1} << edges_.size()) - 1; }

  std::size_t lower_bound(Mask uncovered) const {
    std::vector<std::size_t> chosen;
    for (Mask m = uncovered; m; m &= m - 1) {
      const auto e = static_cast<std::size_t>(std::countr_zero(m));
      bool independent = true;
      for (auto c : chosen) {
        if (compatible(e, c, uncovered)) {
          independent = false;
          break;
        }
      }
      if (independent) chosen.push_back(e);
    }
    return chosen.size();
  }

  bool solve(Mask uncovered, std::size_t k) {
    if (uncovered == 0) return true;
    if (k == 0) return false;
    if (!meter_.tick()) return false;
    if (lower_bound(uncovered) > k) return false;
    const auto e = static_cast<std::size_t>(std::countr_zero(uncovered));
    for (Mask block : candidates(e, uncovered)) {
      chosen_.push_back(block);
      if (solve(uncovered & ~block, k - 1)) return true;
      chosen_.pop_back();
      if (meter_.exhausted()) return false;
    }
    return false;
  }

  BicliqueCollection collection() const {
    BicliqueCollection bc;
    bc.left_size = g_.left_size();
    bc.right_size = g_.right_size();
    bc.edge_disjoint = disjoint_;
    for (Mask block : chosen_) {
      Biclique b;
      for (Mask m = block; m; m &= m - 1) {
        const auto& [u, v] = edges_[std::countr_zero(m)];
        b.left.push_back(u);
        b.right.push_back(v);
      }
      std::sort(b.left.begin(), b.left.end());
      b.left.erase(std::unique(b.left.begin(), b.left.end()), b.left.end());
      std::sort(b.right.begin(), b.right.end());
      b.right.erase(std::unique(b.right.begin(), b.right.end()), b.right.end());
      bc.blocks.push_back(std::move(b));
    }
    return bc;
  }

 private:
  int edge_at(std::size_t u, std::size_t v) const { return index_[u * g_.right_size() + v]; }

  bool available(std::size_t u, std::size_t v, Mask uncovered) const {
    const int e = edge_at(u, v);
    if (e < 0) return false;
    return !disjoint_ || ((uncovered >> e) & 1);
  }

  // Two edges fit in one block iff both cross pairs are usable edges.
  bool compatible(std::size_t a, std::size_t b, Mask uncovered) const {
    const auto [u1, v1] = edges_[a];
    const auto [u2, v2] = edges_[b];
    return available(u1, v2, uncovered) && available(u2, v1, uncovered);
  }

  void build_maximal() {
    std::map<std::vector<std::size_t>, bool> seen;
    std::vector<std::vector<std::size_t>> queue;
    for (std::size_t u = 0; u < g_.left_size(); ++u) {
      auto nb = g_.left_neighbors(u);
      if (!nb.empty() && !seen.count(nb)) {
        seen[nb] = true;
        queue.push_back(std::move(nb));
      }
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        std::vector<std::size_t> meet;
        std::set_intersection(queue[i].begin(), queue[i].end(), queue[j].begin(), queue[j].end(),
                              std::back_inserter(meet));
        if (!meet.empty() && !seen.count(meet)) {
          seen[meet] = true;
          queue.push_back(std::move(meet));
        }
      }
    }
    for (const auto& right : queue) {
      Mask block = 0;
      for (std::size_t u = 0; u < g_.left_size(); ++u) {
        bool all = true;
        for (auto v : right) all = all && g_.has_edge(u, v);
        if (!all) continue;
        for (auto v : right) block |= Mask{1} << edge_at(u, v);
      }
      maximal_.push_back(block);
    }
    std::sort(maximal_.begin(), maximal_.end(), [](Mask a, Mask b) {
      if (std::popcount(a) != std::popcount(b)) return std::popcount(a) > std::popcount(b);
      return a < b;
    });
  }

  std::vector<Mask> candidates(std::size_t e, Mask uncovered) const {
    std::vector<Mask> out;
    if (!disjoint_) {
      for (Mask block : maximal_) {
        if ((block >> e) & 1) out.push_back(block);
      }
      return out;
    }
    const auto [u, v] = edges_[e];
    std::vector<std::size_t> cols, rows;
    for (std::size_t w = 0; w < g_.right_size(); ++w) {
      if (w != v && available(u, w, uncovered)) cols.push_back(w);
    }
    for (Mask cs = 0; cs < (Mask{1} << cols.size()); ++cs) {
      std::vector<std::size_t> right{v};
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if ((cs >> i) & 1) right.push_back(cols[i]);
      }
      rows.clear();
      for (std::size_t r = 0; r < g_.left_size(); ++r) {
        if (r == u) continue;
        bool all = true;
        for (auto w : right) all = all && available(r, w, uncovered);
        if (all) rows.push_back(r);
      }
      for (Mask rs = 0; rs < (Mask{1} << rows.size()); ++rs) {
        Mask block = 0;
        std::vector<std::size_t> left{u};
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if ((rs >> i) & 1) left.push_back(rows[i]);
        }
        for (auto a : left) {
          for (auto b : right) block |= Mask{1} << edge_at(a, b);
        }
        out.push_back(block);
      }
    }
    std::stable_sort(out.begin(), out.end(), [](Mask a, Mask b) { return std::popcount(a) > std::popcount(b); });
    return out;
  }

  const BipartiteGraph& g_;
  bool disjoint_;
  Meter& meter_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<int> index_;
  std::vector<Mask> maximal_;
  std::vector<Mask> chosen_;
};

}  // namespace

SolveResult exact_pd(const BipartiteGraph& g, gf::Element q, const SearchBudget& budget) {
  return solve_subspace(g, q, budget, false);
}

SolveResult exact_upd(const BipartiteGraph& g, gf::Element q, const SearchBudget& budget) {
  return solve_subspace(g, q, budget, true);
}

SolveResult exact_biclique(const BipartiteGraph& g, bool disjoint, const SearchBudget& budget) {
  budget.validate();
  if (g.edge_count() > kEdgeLimit) {
    throw GuardExceeded("exact_biclique: " + std::to_string(g.edge_count()) + " edges exceed the limit of " +
                        std::to_string(kEdgeLimit));
  }
  Meter meter(budget);
  BicliqueSearch search(g, disjoint, meter);
  SolveResult result;
  const Mask all = search.all();
  std::size_t k = search.lower_bound(all);
  for (std::size_t j = 0; j < k; ++j) result.stats.refuted.push_back(j);
  for (;; ++k) {
    if (search.solve(all, k)) {
      result.status = SolveStatus::exact;
      result.value = k;
      auto bc = search.collection();
      bc.validate();
      if (!(covered_graph(bc) == g)) throw std::logic_error("exact_biclique: witness does not cover the graph");
      result.witness = std::move(bc);
      break;
    }
    if (meter.exhausted()) {
      result.status = SolveStatus::budget_exceeded;
      result.value = k;
      break;
    }
    result.stats.refuted.push_back(k);
  }
  result.stats.nodes = meter.nodes();
  result.stats.seconds = meter.seconds();
  return result;
}

namespace {

SolveResult standard_from_biclique(const BipartiteGraph& g, bool disjoint, const SearchBudget& budget) {
  SolveResult r = exact_biclique(g, disjoint, budget);
  if (r.status != SolveStatus::exact) return r;
  const auto& bc = std::get<BicliqueCollection>(r.witness);
  StandardAssignment sa = biclique_to_standard(bc);
  if (!(realized_graph(sa) == g)) throw std::logic_error("standard witness does not realize the graph");
  if (disjoint && !standard_to_biclique(sa).edge_disjoint) {
    throw std::logic_error("standard witness has an intersection of dimension above one");
  }
  r.witness = std::move(sa);
  return r;
}

}  // namespace

SolveResult spd(const BipartiteGraph& g, const SearchBudget& budget) { return standard_from_biclique(g, false, budget); }

SolveResult uspd(const BipartiteGraph& g, const SearchBudget& budget) { return standard_from_biclique(g, true, budget); }

std::size_t fooling_set_bound(const BipartiteGraph& g) {
  if (g.edge_count() > 64) throw GuardExceeded("fooling_set_bound: more than 64 edges");
  SearchBudget budget;
  Meter meter(budget);
  BicliqueSearch search(g, false, meter);
  return search.lower_bound(search.all());
}

}  // namespace projdim
