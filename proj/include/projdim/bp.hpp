#pragma once

// Deterministic branching programs and the transforms that turn them into
// subspace assignments.

#include "projdim/assign.hpp"
#include "projdim/functions.hpp"

#include <array>
#include <optional>
#include <vector>

namespace projdim {

struct BPNode {
  std::optional<Variable> var;   // empty for accept and reject
  std::array<std::size_t, 2> next{0, 0};
};

class BranchingProgram {
 public:
  /// Validates the program; throws std::invalid_argument when malformed.
  BranchingProgram(std::size_t n, std::vector<BPNode> nodes, std::size_t start, std::size_t accept,
                   std::size_t reject);

  std::size_t n() const { return n_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<BPNode>& nodes() const { return nodes_; }
  const BPNode& node(std::size_t i) const { return nodes_.at(i); }
  std::size_t start() const { return start_; }
  std::size_t accept() const { return accept_; }
  std::size_t reject() const { return reject_; }

  bool evaluate(std::uint64_t x, std::uint64_t y) const;
  /// Kahn order, smallest ready index first.
  std::vector<std::size_t> topological_order() const;
  std::size_t edge_count() const;
  /// Edges leaving nodes that read a left variable.
  std::size_t left_edge_count() const;

 private:
  std::size_t n_;
  std::vector<BPNode> nodes_;
  std::size_t start_, accept_, reject_;
};

/// Linear-size programs for eq, ineq, ip, disj and parity (over all 2n bits).
BranchingProgram build_named(Family family, std::size_t n);
/// Reduced ordered decision diagram in the order x1..xn y1..yn.
BranchingProgram build_from_table(const BooleanFunction& f);
BooleanFunction program_function(const BranchingProgram& bp, const std::string& name = "bp");

struct Literal {
  Variable var;
  int value = 0;
};

struct LiteralEdge {
  std::size_t tail = 0;
  std::size_t head = 0;
  Literal literal;
};

/// Directed multigraph whose edges carry the literal that closes them.
struct LiteralGraph {
  std::size_t n = 0;
  std::size_t vertices = 0;
  std::vector<LiteralEdge> edges;
  std::vector<std::string> vertex_names;
};

/// Adds a new start reading the first variable of the side opposite to the
/// old start, points both of its edges at the old start, and merges accept
/// into it. Vertices are numbered in topological order with the merged
/// vertex last. Throws std::invalid_argument when start equals accept.
LiteralGraph pudlak_rodl_graph(const BranchingProgram& bp);

/// Replaces each left-literal edge (u,v) by (u,w) with the same literal and
/// two edges (w,v) reading y1 = 0 and y1 = 1.
LiteralGraph subdivide_left_edges(const LiteralGraph& g);

/// φ(x) = span of e_tail - e_head over the edges closed by x; same for y.
ProjectiveAssignment closed_edge_assignment(const LiteralGraph& g, gf::Element q = 2);
/// U_i^a, V_j^b = span of e_tail - e_head over the edges carrying that literal.
BitwiseAssignment literal_assignment(const LiteralGraph& g);

ProjectiveAssignment pudlak_rodl_transform(const BranchingProgram& bp, gf::Element q = 2);

struct BitpdimExtract {
  BranchingProgram program;     // the input program with its left edges subdivided
  BitwiseAssignment assignment;
  LiteralGraph graph;
};

BitpdimExtract subdivide_for_bitpdim(const BranchingProgram& bp);

}  // namespace projdim
