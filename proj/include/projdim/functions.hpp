#pragma once

// Boolean functions on 2n bits with the fixed partition (x1..xn | y1..yn),
// their bipartite realizations, and the named families.
//
// Bit conventions: x and y are packed as unsigned integers with x1 in the
// most significant of the n bits. The dense truth table is indexed by
// (x << n) | y.

#include "projdim/gf.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace projdim {

enum class Side { left, right };

struct Variable {
  Side side = Side::left;
  std::size_t index = 0;  // 0-based; x1 is {left, 0}

  std::string name() const;
  friend bool operator==(const Variable&, const Variable&) = default;
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

enum class Family { eq, ineq, ip, disj, ed, pal, parity, si };

Family parse_family(const std::string& name);
std::string family_name(Family f);

/// Largest n per side for which a dense truth table is kept.
inline constexpr std::size_t kDenseLimit = 13;

class BooleanFunction {
 public:
  using Evaluator = std::function<bool(std::uint64_t x, std::uint64_t y)>;

  BooleanFunction(std::string name, std::size_t n, Evaluator evaluator);
  /// table has 2^(2n) entries indexed by (x << n) | y.
  static BooleanFunction from_table(std::string name, std::size_t n, std::vector<bool> table);

  const std::string& name() const { return name_; }
  std::size_t n() const { return n_; }
  bool has_table() const { return !table_.empty(); }

  bool operator()(std::uint64_t x, std::uint64_t y) const;
  /// bits = x1..xn y1..yn, each 0 or 1.
  bool eval_bits(const std::vector<int>& bits) const;

  /// Dense table; throws GuardExceeded above kDenseLimit.
  std::vector<bool> truth_table() const;

 private:
  std::string name_;
  std::size_t n_ = 0;
  Evaluator evaluator_;
  std::vector<bool> table_;
};

BooleanFunction make_named(Family family, std::size_t n, std::optional<std::uint64_t> q = std::nullopt);
/// Row-space intersection of two d×d matrices over F_2, row-major, A then B.
BooleanFunction make_si(std::size_t d);
BooleanFunction make_constant(std::size_t n, bool value);
BooleanFunction operator|(const BooleanFunction& a, const BooleanFunction& b);
BooleanFunction operator&(const BooleanFunction& a, const BooleanFunction& b);

/// Smallest prime q with q ≡ 1 (mod 4) and q ≥ 2^n.
std::uint64_t default_paley_modulus(std::size_t n);
/// Block count m for ED with n bits per side, or nullopt if n is not 2m·log2 m.
std::optional<std::size_t> ed_block_count(std::size_t n);

class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(std::size_t left, std::size_t right);

  std::size_t left_size() const { return left_; }
  std::size_t right_size() const { return right_; }

  bool has_edge(std::size_t u, std::size_t v) const {
    return (rows_[u * words_ + v / 64] >> (v % 64)) & 1;
  }
  void set_edge(std::size_t u, std::size_t v, bool present = true);

  std::size_t edge_count() const;
  std::size_t left_degree(std::size_t u) const;
  std::size_t right_degree(std::size_t v) const;
  std::vector<std::size_t> left_neighbors(std::size_t u) const;
  /// All edges in row-major order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  BipartiteGraph transpose() const;

  std::vector<std::string> left_labels;
  std::vector<std::string> right_labels;

  /// Compares the vertex counts and edges; labels are ignored.
  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.left_ == b.left_ && a.right_ == b.right_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t left_ = 0;
  std::size_t right_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
};

struct NeighborhoodClasses {
  std::vector<std::size_t> class_of;         // vertex -> class id, in first-seen order
  std::vector<std::size_t> representatives;  // class id -> first vertex
};

NeighborhoodClasses neighborhood_classes(const BipartiteGraph& g, Side side);
std::size_t distinct_neighborhoods(const BipartiteGraph& g, Side side);

/// G_f on {0,1}^n × {0,1}^n with labels as bit strings.
BipartiteGraph realization(const BooleanFunction& f);
/// 0/1 integer adjacency matrix.
gf::IntegerMatrix adjacency(const BipartiteGraph& g);

/// Graph on all subspaces of F_q^d with adjacency by nontrivial intersection.
BipartiteGraph make_pd_graph(std::size_t d, gf::Element q = 2);

/// Two copies of G plus the matchings A1→B2 and A2→B1.
BipartiteGraph double_for_distinct_neighborhoods(const BipartiteGraph& g);
BipartiteGraph double_for_distinct_neighborhoods(const BooleanFunction& f);

/// Number of distinct subfunctions of f on the given left variables
/// (0-based indices), over all settings of the remaining variables.
std::size_t subfunction_count(const BooleanFunction& f, const std::vector<std::size_t>& block);

class RestrictionMap {
 public:
  explicit RestrictionMap(std::size_t n);

  std::size_t n() const { return n_; }
  void fix(Variable v, bool value);
  void release(Variable v);
  std::optional<bool> value(Variable v) const;
  bool is_free(Variable v) const { return !value(v).has_value(); }
  std::vector<Variable> free_variables() const;
  std::vector<Variable> free_variables(Side side) const;

  /// Fills the free variables of `side` from `bits` (MSB-first in free order)
  /// and returns the packed side value.
  std::uint64_t complete(Side side, std::uint64_t bits) const;

 private:
  std::size_t slot(Variable v) const;

  std::size_t n_ = 0;
  std::vector<std::optional<bool>> values_;  // x1..xn then y1..yn
};

/// Realization of f_ρ: left vertices are settings of the free left
/// variables, right vertices settings of the free right variables.
BipartiteGraph restricted_realization(const BooleanFunction& f, const RestrictionMap& rho);

std::string bit_string(std::uint64_t value, std::size_t width);

}  // namespace projdim
