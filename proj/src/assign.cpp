#include "projdim/assign.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace projdim {

using gf::Subspace;

void ProjectiveAssignment::validate() const {
  auto check = [this](const std::vector<Subspace>& side) {
    for (const auto& s : side) {
      if (s.field() != q || s.ambient() != ambient) {
        throw std::invalid_argument("ProjectiveAssignment: subspace outside F_" + std::to_string(q) + "^" +
                                    std::to_string(ambient));
      }
    }
  };
  check(left);
  check(right);
}

// ------------------------------------------------------------------ bitwise

BitwiseAssignment::BitwiseAssignment(std::size_t n, std::size_t ambient)
    : n_(n), ambient_(ambient) {
  const Subspace zero(2, ambient);
  left_.assign(n, {zero, zero});
  right_.assign(n, {zero, zero});
}

const Subspace& BitwiseAssignment::literal(Side side, std::size_t index, int value) const {
  if (index >= n_ || (value != 0 && value != 1)) {
    throw std::out_of_range("BitwiseAssignment: literal out of range");
  }
  return (side == Side::left ? left_ : right_)[index][value];
}

void BitwiseAssignment::set_literal(Side side, std::size_t index, int value, Subspace space) {
  if (index >= n_ || (value != 0 && value != 1)) {
    throw std::out_of_range("BitwiseAssignment: literal out of range");
  }
  if (space.field() != 2 || space.ambient() != ambient_) {
    throw std::invalid_argument("BitwiseAssignment: literal subspace must lie in F_2^" +
                                std::to_string(ambient_));
  }
  (side == Side::left ? left_ : right_)[index][value] = std::move(space);
}

namespace {

Subspace side_space(const std::vector<std::array<Subspace, 2>>& lits, std::size_t n, std::size_t ambient,
                    std::uint64_t bits) {
  std::vector<Subspace> parts;
  parts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) parts.push_back(lits[i][(bits >> (n - 1 - i)) & 1]);
  return gf::sum(parts, 2, ambient);
}

}  // namespace

Subspace BitwiseAssignment::left_space(std::uint64_t x) const { return side_space(left_, n_, ambient_, x); }
Subspace BitwiseAssignment::right_space(std::uint64_t y) const { return side_space(right_, n_, ambient_, y); }

ProjectiveAssignment BitwiseAssignment::induced() const {
  if (n_ > kDenseLimit) throw GuardExceeded("BitwiseAssignment::induced: n exceeds the dense limit");
  ProjectiveAssignment phi{2, ambient_, {}, {}};
  const std::uint64_t side = std::uint64_t{1} << n_;
  for (std::uint64_t v = 0; v < side; ++v) {
    phi.left.push_back(left_space(v));
    phi.right.push_back(right_space(v));
  }
  return phi;
}

ProjectiveAssignment StandardAssignment::to_projective(gf::Element q) const {
  ProjectiveAssignment phi{q, ambient, {}, {}};
  auto convert = [&](const std::vector<std::size_t>& indices) {
    std::vector<gf::Vector> rows;
    for (auto i : indices) rows.push_back(gf::unit_vector(q, ambient, i));
    return Subspace::span(q, ambient, rows);
  };
  for (const auto& s : left) phi.left.push_back(convert(s));
  for (const auto& s : right) phi.right.push_back(convert(s));
  return phi;
}

void BicliqueCollection::validate() const {
  for (const auto& b : blocks) {
    if (b.left.empty() || b.right.empty()) throw std::invalid_argument("BicliqueCollection: empty block side");
    for (auto u : b.left) {
      if (u >= left_size) throw std::invalid_argument("BicliqueCollection: left vertex out of range");
    }
    for (auto v : b.right) {
      if (v >= right_size) throw std::invalid_argument("BicliqueCollection: right vertex out of range");
    }
  }
  if (!edge_disjoint) return;
  std::vector<int> hits(left_size * right_size, 0);
  for (const auto& b : blocks) {
    for (auto u : b.left) {
      for (auto v : b.right) {
        if (++hits[u * right_size + v] > 1) {
          throw std::invalid_argument("BicliqueCollection: blocks share edge (" + std::to_string(u) + "," +
                                      std::to_string(v) + ")");
        }
      }
    }
  }
}

// ---------------------------------------------------------------- verifiers

namespace {

void require_shape(const ProjectiveAssignment& phi, const BipartiteGraph& g, const char* op) {
  if (phi.left.size() != g.left_size() || phi.right.size() != g.right_size()) {
    throw std::invalid_argument(std::string(op) + ": assignment covers " + std::to_string(phi.left.size()) +
                                "x" + std::to_string(phi.right.size()) + " vertices, graph has " +
                                std::to_string(g.left_size()) + "x" + std::to_string(g.right_size()));
  }
  phi.validate();
}

}  // namespace

bool verify_realizes(const ProjectiveAssignment& phi, const BipartiteGraph& g) {
  require_shape(phi, g, "verify_realizes");
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    for (std::size_t v = 0; v < g.right_size(); ++v) {
      const bool meet = gf::intersection_dim(phi.left[u], phi.right[v]) > 0;
      if (meet != g.has_edge(u, v)) return false;
    }
  }
  return true;
}

std::size_t max_intersection_dim(const ProjectiveAssignment& phi, const BipartiteGraph& g) {
  require_shape(phi, g, "max_intersection_dim");
  std::size_t best = 0;
  for (auto [u, v] : g.edges()) best = std::max(best, gf::intersection_dim(phi.left[u], phi.right[v]));
  return best;
}

BipartiteGraph realized_graph(const ProjectiveAssignment& phi) {
  phi.validate();
  BipartiteGraph g(phi.left.size(), phi.right.size());
  for (std::size_t u = 0; u < phi.left.size(); ++u) {
    for (std::size_t v = 0; v < phi.right.size(); ++v) {
      if (gf::intersection_dim(phi.left[u], phi.right[v]) > 0) g.set_edge(u, v);
    }
  }
  return g;
}

bool spanned_by_differences(const Subspace& s) {
  std::vector<gf::Vector> members;
  for (std::size_t i = 0; i < s.ambient(); ++i) {
    for (std::size_t j = i + 1; j < s.ambient(); ++j) {
      auto v = gf::difference_vector(s.field(), s.ambient(), i, j);
      if (s.contains(v)) members.push_back(std::move(v));
    }
  }
  return Subspace::span(s.field(), s.ambient(), members) == s;
}

bool is_direct(const std::vector<Subspace>& parts) {
  if (parts.empty()) return true;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.dim();
  return gf::sum(parts, parts.front().field(), parts.front().ambient()).dim() == total;
}

BitpdimReport verify_bitpdim(const BitwiseAssignment& ba, const BooleanFunction& f) {
  if (f.n() != ba.n()) {
    throw std::invalid_argument("verify_bitpdim: function has n = " + std::to_string(f.n()) +
                                ", assignment has n = " + std::to_string(ba.n()));
  }
  BitpdimReport report;
  report.realizes = verify_realizes(ba.induced(), realization(f));
  if (!report.realizes) report.diagnostics.push_back("induced assignment does not realize " + f.name());

  report.difference_spanned = true;
  for (Side side : {Side::left, Side::right}) {
    std::vector<Subspace> family;
    for (std::size_t i = 0; i < ba.n(); ++i) {
      for (int a = 0; a < 2; ++a) {
        const auto& s = ba.literal(side, i, a);
        family.push_back(s);
        if (!spanned_by_differences(s)) {
          report.difference_spanned = false;
          report.diagnostics.push_back(Variable{side, i}.name() + "=" + std::to_string(a) +
                                       " is not spanned by difference vectors");
        }
      }
    }
    const bool direct = is_direct(family);
    (side == Side::left ? report.left_direct : report.right_direct) = direct;
    if (direct) continue;
    for (std::size_t k = 0; k < family.size(); ++k) {
      for (std::size_t l = k + 1; l < family.size(); ++l) {
        const auto shared = gf::intersection_dim(family[k], family[l]);
        if (shared == 0) continue;
        const Variable vk{side, k / 2};
        const Variable vl{side, l / 2};
        report.diagnostics.push_back(vk.name() + "=" + std::to_string(k % 2) + " and " + vl.name() + "=" +
                                     std::to_string(l % 2) + " share a subspace of dimension " +
                                     std::to_string(shared));
      }
    }
    report.diagnostics.push_back(std::string(side == Side::left ? "left" : "right") +
                                 " literal subspaces do not form a direct sum");
  }
  return report;
}

// ------------------------------------------------------------- compositions

namespace {

template <class Op>
ProjectiveAssignment compose(const ProjectiveAssignment& a, const ProjectiveAssignment& b, std::size_t ambient,
                             Op op, const char* name) {
  if (a.q != b.q) throw std::invalid_argument(std::string(name) + ": field mismatch");
  if (a.left.size() != b.left.size() || a.right.size() != b.right.size()) {
    throw std::invalid_argument(std::string(name) + ": vertex sets differ");
  }
  ProjectiveAssignment out{a.q, ambient, {}, {}};
  for (std::size_t u = 0; u < a.left.size(); ++u) out.left.push_back(op(a.left[u], b.left[u]));
  for (std::size_t v = 0; v < a.right.size(); ++v) out.right.push_back(op(a.right[v], b.right[v]));
  return out;
}

}  // namespace

ProjectiveAssignment or_compose(const ProjectiveAssignment& a, const ProjectiveAssignment& b) {
  return compose(a, b, a.ambient + b.ambient, gf::direct_sum, "or_compose");
}

ProjectiveAssignment and_compose(const ProjectiveAssignment& a, const ProjectiveAssignment& b) {
  return compose(a, b, a.ambient * b.ambient, gf::tensor, "and_compose");
}

ProjectiveAssignment upd_from_rectangle_partition(const BipartiteGraph& g, const std::vector<Rectangle>& rects,
                                                  gf::Element q) {
  const std::size_t ambient = rects.size();
  std::vector<int> cover(g.left_size() * g.right_size(), 0);
  std::vector<std::vector<gf::Vector>> rows(g.left_size()), cols(g.right_size());
  for (std::size_t i = 0; i < rects.size(); ++i) {
    const auto& r = rects[i];
    if (r.rows.empty() || r.cols.empty()) throw std::invalid_argument("upd_from_rectangle_partition: empty rectangle");
    for (auto u : r.rows) {
      if (u >= g.left_size()) throw std::invalid_argument("upd_from_rectangle_partition: row out of range");
      rows[u].push_back(gf::unit_vector(q, ambient, i));
    }
    for (auto v : r.cols) {
      if (v >= g.right_size()) throw std::invalid_argument("upd_from_rectangle_partition: column out of range");
      cols[v].push_back(gf::unit_vector(q, ambient, i));
    }
    for (auto u : r.rows) {
      for (auto v : r.cols) {
        if (++cover[u * g.right_size() + v] > 1) {
          throw std::invalid_argument("upd_from_rectangle_partition: rectangles overlap at (" + std::to_string(u) +
                                      "," + std::to_string(v) + ")");
        }
      }
    }
  }
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    for (std::size_t v = 0; v < g.right_size(); ++v) {
      if ((cover[u * g.right_size() + v] > 0) != g.has_edge(u, v)) {
        throw std::invalid_argument("upd_from_rectangle_partition: rectangles do not cover exactly the edges (at " +
                                    std::to_string(u) + "," + std::to_string(v) + ")");
      }
    }
  }
  ProjectiveAssignment phi{q, ambient, {}, {}};
  for (const auto& r : rows) phi.left.push_back(Subspace::span(q, ambient, r));
  for (const auto& c : cols) phi.right.push_back(Subspace::span(q, ambient, c));
  return phi;
}

ProjectiveAssignment natural_pd_assignment(std::size_t d, gf::Element q) {
  auto spaces = gf::enumerate_subspaces(d, q);
  return {q, d, spaces, spaces};
}

// ------------------------------------------------------ standard / biclique

BicliqueCollection standard_to_biclique(const StandardAssignment& sa) {
  BicliqueCollection bc;
  bc.left_size = sa.left.size();
  bc.right_size = sa.right.size();
  std::vector<Biclique> by_index(sa.ambient);
  for (std::size_t u = 0; u < sa.left.size(); ++u) {
    for (auto i : sa.left[u]) by_index.at(i).left.push_back(u);
  }
  for (std::size_t v = 0; v < sa.right.size(); ++v) {
    for (auto i : sa.right[v]) by_index.at(i).right.push_back(v);
  }
  for (auto& b : by_index) {
    if (!b.left.empty() && !b.right.empty()) bc.blocks.push_back(std::move(b));
  }
  std::vector<int> hits(bc.left_size * bc.right_size, 0);
  bc.edge_disjoint = true;
  for (const auto& b : bc.blocks) {
    for (auto u : b.left) {
      for (auto v : b.right) {
        if (++hits[u * bc.right_size + v] > 1) bc.edge_disjoint = false;
      }
    }
  }
  return bc;
}

StandardAssignment biclique_to_standard(const BicliqueCollection& bc) {
  bc.validate();
  StandardAssignment sa;
  sa.ambient = bc.blocks.size();
  sa.left.assign(bc.left_size, {});
  sa.right.assign(bc.right_size, {});
  for (std::size_t i = 0; i < bc.blocks.size(); ++i) {
    for (auto u : bc.blocks[i].left) sa.left[u].push_back(i);
    for (auto v : bc.blocks[i].right) sa.right[v].push_back(i);
  }
  return sa;
}

BipartiteGraph covered_graph(const BicliqueCollection& bc) {
  BipartiteGraph g(bc.left_size, bc.right_size);
  for (const auto& b : bc.blocks) {
    for (auto u : b.left) {
      for (auto v : b.right) g.set_edge(u, v);
    }
  }
  return g;
}

BipartiteGraph realized_graph(const StandardAssignment& sa) {
  BipartiteGraph g(sa.left.size(), sa.right.size());
  for (std::size_t u = 0; u < sa.left.size(); ++u) {
    const std::set<std::size_t> mine(sa.left[u].begin(), sa.left[u].end());
    for (std::size_t v = 0; v < sa.right.size(); ++v) {
      for (auto i : sa.right[v]) {
        if (mine.count(i)) {
          g.set_edge(u, v);
          break;
        }
      }
    }
  }
  return g;
}

// -------------------------------------------------------------- restriction

RestrictedAssignment restrict_assignment(const BitwiseAssignment& ba, const RestrictionMap& rho,
                                         const std::vector<std::size_t>& block) {
  const std::size_t n = ba.n();
  const std::size_t d = ba.ambient();
  if (rho.n() != n) throw std::invalid_argument("restrict_assignment: restriction size mismatch");
  if (block.empty()) throw std::invalid_argument("restrict_assignment: empty block");
  std::vector<bool> in_block(n, false);
  for (auto i : block) {
    if (i >= n || in_block[i]) throw std::invalid_argument("restrict_assignment: invalid block");
    in_block[i] = true;
  }
  if (!rho.free_variables(Side::right).empty()) {
    throw std::invalid_argument("restrict_assignment: restriction leaves right variables free");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rho.is_free({Side::left, i}) != in_block[i]) {
      throw std::invalid_argument("restrict_assignment: free left variables must be exactly the block");
    }
  }
  if (block.size() > 16) throw GuardExceeded("restrict_assignment: block larger than 16 variables");

  std::vector<Subspace> fixed, right_parts, block_parts;
  for (std::size_t i = 0; i < n; ++i) {
    if (auto v = rho.value({Side::left, i})) fixed.push_back(ba.U(i, *v));
    right_parts.push_back(ba.V(i, *rho.value({Side::right, i})));
  }
  for (auto i : block) {
    block_parts.push_back(ba.U(i, 0));
    block_parts.push_back(ba.U(i, 1));
  }
  RestrictedAssignment out{{2, d, {}, {}},
                           gf::sum(fixed, 2, d),
                           gf::sum(right_parts, 2, d),
                           gf::sum(block_parts, 2, d),
                           {},
                           Subspace(2, d),
                           false};
  const Subspace& L = out.fixed_left;
  const Subspace& R = out.right;
  const Subspace& Z = out.block_space;
  if (gf::intersection_dim(L, Z) != 0) {
    throw std::invalid_argument("restrict_assignment: fixed and free left subspaces are not independent");
  }

  const std::size_t k = block.size();
  std::vector<gf::Vector> span_rows;
  bool seen[2] = {false, false};
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << k); ++t) {
    std::vector<Subspace> parts;
    for (std::size_t b = 0; b < k; ++b) parts.push_back(ba.U(block[b], (t >> (k - 1 - b)) & 1));
    Subspace zx = gf::sum(parts, 2, d);
    const Subspace meet = gf::intersect(R, gf::sum(L, zx));
    seen[meet.dim() > 0] = true;
    for (std::size_t r = 0; r < meet.dim(); ++r) span_rows.push_back(gf::project(meet.basis().row(r), zx, L));
    out.block_parts.push_back(std::move(zx));
  }
  if (!seen[0] || !seen[1]) throw std::invalid_argument("restrict_assignment: restricted function is constant");

  const Subspace meet = gf::intersect(R, gf::sum(L, Z));
  std::vector<gf::Vector> projected;
  for (std::size_t r = 0; r < meet.dim(); ++r) projected.push_back(gf::project(meet.basis().row(r), Z, L));
  out.psi.left = out.block_parts;
  out.psi.right.push_back(Subspace::span(2, d, projected));
  out.projection_span = Subspace::span(2, d, span_rows);
  out.projection_identity = out.projection_span == out.psi.right.front();
  return out;
}

}  // namespace projdim
