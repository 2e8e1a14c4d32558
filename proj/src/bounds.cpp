#include "projdim/bounds.hpp"

#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

namespace projdim {

using gf::BigInt;
using gf::IntegerMatrix;
using gf::Subspace;

const std::string& BoundReport::quantity(const std::string& key) const {
  for (const auto& [k, v] : quantities) {
    if (k == key) return v;
  }
  throw std::out_of_range("BoundReport: no quantity '" + key + "'");
}

namespace {

std::string str(const BigInt& v) { return v.str(); }

BigInt power(std::uint64_t q, std::size_t e) { return boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(e)); }

IntegerMatrix multiply_transpose(const IntegerMatrix& a, const IntegerMatrix& b) {
  IntegerMatrix out(a.rows(), b.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t t = 0; t < b.rows(); ++t) {
      BigInt acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a(r, k) != 0 && b(t, k) != 0) acc += a(r, k) * b(t, k);
      }
      out(r, t) = acc;
    }
  }
  return out;
}

bool contains_subspace(const Subspace& outer, const Subspace& inner) {
  for (std::size_t r = 0; r < inner.dim(); ++r) {
    if (!outer.contains(inner.basis().row(r))) return false;
  }
  return true;
}

void require_family(const std::vector<Subspace>& fam, gf::Element q, std::size_t ambient, const char* op) {
  for (const auto& s : fam) {
    if (s.field() != q || s.ambient() != ambient) {
      throw std::invalid_argument(std::string(op) + ": family members must share field and ambient");
    }
  }
}

}  // namespace

BoundReport upd_rank_bound(const BipartiteGraph& g, gf::Element q) {
  if (!gf::is_prime(q)) throw std::invalid_argument("upd_rank_bound: modulus is not prime");
  const std::size_t rank = gf::rational_rank(adjacency(g));
  std::size_t d = 1;
  while ((power(q, d) - 1) / (q - 1) < rank) ++d;
  BoundReport r;
  r.kind = "upd_rank";
  r.target = "upd";
  r.value = static_cast<double>(d);
  r.quantities = {{"rank", std::to_string(rank)},
                  {"q", std::to_string(q)},
                  {"lines_at_bound", str((power(q, d) - 1) / (q - 1))}};
  if (d > 1) r.quantities.emplace_back("lines_below_bound", str((power(q, d - 1) - 1) / (q - 1)));
  r.notes.push_back("rank over Q bounds the number of one-dimensional intersection spaces");
  return r;
}

BoundReport upd_rank_bound(const BooleanFunction& f, gf::Element q) { return upd_rank_bound(realization(f), q); }

BoundReport pd_count_bound(const BipartiteGraph& g, gf::Element q) {
  if (!gf::is_prime(q)) throw std::invalid_argument("pd_count_bound: modulus is not prime");
  const std::size_t left = distinct_neighborhoods(g, Side::left);
  const std::size_t right = distinct_neighborhoods(g, Side::right);
  const std::size_t needed = std::max(left, right);
  std::size_t d = 1;
  while (gf::subspace_count(d, q) < needed) ++d;
  BoundReport r;
  r.kind = "pd_count";
  r.target = "pd";
  r.value = static_cast<double>(d);
  r.quantities = {{"left_neighborhoods", std::to_string(left)},
                  {"right_neighborhoods", std::to_string(right)},
                  {"subspaces_at_bound", str(gf::subspace_count(d, q))}};
  if (d > 1) r.quantities.emplace_back("subspaces_below_bound", str(gf::subspace_count(d - 1, q)));
  r.notes.push_back("vertices with distinct neighborhoods need distinct subspaces");
  return r;
}

InclusionMatrices inclusion_matrices(const std::vector<Subspace>& family_g, const std::vector<Subspace>& family_h,
                                     std::size_t i) {
  if (family_g.empty() || family_h.empty()) throw std::invalid_argument("inclusion_matrices: empty family");
  const gf::Element q = family_g.front().field();
  const std::size_t D = family_g.front().ambient();
  require_family(family_g, q, D, "inclusion_matrices");
  require_family(family_h, q, D, "inclusion_matrices");
  const auto columns = gf::enumerate_subspaces(D, q, i);
  InclusionMatrices m{D, i, IntegerMatrix(family_g.size(), columns.size()), IntegerMatrix(family_h.size(), columns.size())};
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (std::size_t r = 0; r < family_g.size(); ++r) m.gamma(r, c) = contains_subspace(family_g[r], columns[c]) ? 1 : 0;
    for (std::size_t r = 0; r < family_h.size(); ++r) m.delta(r, c) = contains_subspace(family_h[r], columns[c]) ? 1 : 0;
  }
  return m;
}

InclusionCheck verify_inclusion_factorization(const std::vector<Subspace>& family_g,
                                              const std::vector<Subspace>& family_h, std::size_t i) {
  const auto m = inclusion_matrices(family_g, family_h, i);
  const gf::Element q = family_g.front().field();
  const IntegerMatrix product = multiply_transpose(m.gamma, m.delta);
  InclusionCheck check;
  check.entrywise = true;
  for (std::size_t r = 0; r < family_g.size(); ++r) {
    for (std::size_t t = 0; t < family_h.size(); ++t) {
      const auto k = gf::intersection_dim(family_g[r], family_h[t]);
      if (gf::gaussian_coeff(k, i, q) != product(r, t)) check.entrywise = false;
    }
  }
  check.rank = gf::rational_rank(product);
  check.rank_limit = gf::gaussian_coeff(m.ambient, i, q);
  return check;
}

DegreeOneCheck verify_degree_one_bound(const ProjectiveAssignment& phi, const BipartiteGraph& g) {
  if (phi.left.size() != g.left_size() || phi.right.size() != g.right_size()) {
    throw std::invalid_argument("verify_degree_one_bound: assignment and graph sizes differ");
  }
  phi.validate();
  const BigInt scale = phi.q - 1;
  IntegerMatrix N(g.left_size(), g.right_size());
  DegreeOneCheck check;
  check.ambient = phi.ambient;
  check.matches_adjacency = true;
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    for (std::size_t v = 0; v < g.right_size(); ++v) {
      N(u, v) = power(phi.q, gf::intersection_dim(phi.left[u], phi.right[v])) - 1;
      if (N(u, v) != (g.has_edge(u, v) ? scale : BigInt(0))) check.matches_adjacency = false;
    }
  }
  const auto m = inclusion_matrices(phi.left, phi.right, 1);
  const IntegerMatrix product = multiply_transpose(m.gamma, m.delta);
  check.factorization = true;
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    for (std::size_t v = 0; v < g.right_size(); ++v) {
      if (N(u, v) != scale * product(u, v)) check.factorization = false;
    }
  }
  check.rank = gf::rational_rank(N);
  check.rank_limit = 1 + gf::gaussian_coeff(phi.ambient, 1, phi.q);
  return check;
}

BoundReport nechiporuk_bitpdim_bound(const BooleanFunction& f, const std::vector<std::vector<std::size_t>>& blocks) {
  std::set<std::size_t> used;
  BoundReport r;
  r.kind = "nechiporuk";
  r.target = "bitpdim";
  for (const auto& block : blocks) {
    if (block.empty()) throw std::invalid_argument("nechiporuk_bitpdim_bound: empty block");
    for (auto v : block) {
      if (v >= f.n()) throw std::invalid_argument("nechiporuk_bitpdim_bound: variable out of range");
      if (!used.insert(v).second) throw std::invalid_argument("nechiporuk_bitpdim_bound: blocks overlap");
    }
    BlockTerm t;
    t.variables = block;
    t.count = subfunction_count(f, block);
    if (t.count >= 4) {
      const double lg = std::log2(static_cast<double>(t.count));
      t.term = lg / std::log2(lg);
    }
    r.value += t.term;
    r.blocks.push_back(std::move(t));
  }
  r.quantities = {{"blocks", std::to_string(blocks.size())}, {"covered_variables", std::to_string(used.size())}};
  if (used.size() != f.n()) r.notes.push_back("blocks do not cover every left variable");
  r.notes.push_back("logs are base 2; blocks with fewer than 4 subfunctions contribute 0");
  return r;
}

std::string nechiporuk_csv(const BoundReport& report) {
  std::ostringstream out;
  out << "block,variables,count,term\n";
  for (std::size_t b = 0; b < report.blocks.size(); ++b) {
    const auto& t = report.blocks[b];
    out << b << ',';
    for (std::size_t k = 0; k < t.variables.size(); ++k) out << (k ? " " : "") << 'x' << t.variables[k] + 1;
    out << ',' << t.count << ',' << std::setprecision(10) << t.term << '\n';
  }
  return out.str();
}

std::size_t si_restriction_count(std::size_t d, std::size_t row) {
  if (d == 0 || d > 3) throw GuardExceeded("si_restriction_count: d must be in 1..3");
  if (row >= d) throw std::invalid_argument("si_restriction_count: row out of range");
  std::vector<std::size_t> block;
  for (std::size_t c = 0; c < d; ++c) block.push_back(row * d + c);
  return subfunction_count(make_si(d), block);
}

RankReport pd_rank_report(std::size_t d, gf::Element q) {
  const auto g = make_pd_graph(d, q);
  RankReport r;
  r.d = d;
  r.vertices = g.left_size();
  r.rank = gf::rational_rank(adjacency(g));
  r.threshold = gf::gaussian_coeff(d, d / 2, q) - 1;
  return r;
}

}  // namespace projdim
