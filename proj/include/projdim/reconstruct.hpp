#pragma once

// Evaluating f from a bitwise-decomposable assignment by cycle detection in
// the graph whose edges are the difference vectors e_u - e_v lying in the
// active literal subspaces.

#include "projdim/assign.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace projdim {

struct StarEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  Side side = Side::left;
  std::size_t var = 0;
  int value = 0;

  std::string tag() const;
};

struct StarGraph {
  std::size_t vertices = 0;
  std::vector<StarEdge> edges;

  /// One "u v tag" line per edge, 1-based vertices.
  std::string to_edge_list() const;
};

/// Raised when an assignment breaks a precondition of the cycle evaluator.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CycleEvaluation {
  bool value = false;
  /// Edges of one cycle through both sides, in traversal order, when value is 1.
  std::vector<StarEdge> cycle;
  /// Signed sum of the left edges along the cycle; lies in φ(x) ∩ φ(y).
  gf::Vector witness;
  /// Same-side edges dropped because they were spanned by earlier ones.
  std::vector<std::string> diagnostics;
};

/// Precomputes, per literal, every difference vector in its subspace.
class StarEvaluator {
 public:
  /// Throws PreconditionError if some literal subspace is not spanned by
  /// the difference vectors it contains.
  explicit StarEvaluator(const BitwiseAssignment& ba);

  StarGraph star(std::uint64_t x, std::uint64_t y) const;
  CycleEvaluation evaluate(std::uint64_t x, std::uint64_t y) const;

 private:
  const std::vector<StarEdge>& members(Side side, std::size_t var, int value) const;

  std::size_t n_;
  std::size_t ambient_;
  std::vector<std::vector<StarEdge>> members_;  // (side, var, value) -> edges
};

StarGraph build_star(const BitwiseAssignment& ba, std::uint64_t x, std::uint64_t y);
bool evaluate_via_cycle(const BitwiseAssignment& ba, std::uint64_t x, std::uint64_t y);
bool evaluate_via_intersection(const BitwiseAssignment& ba, std::uint64_t x, std::uint64_t y);

}  // namespace projdim
