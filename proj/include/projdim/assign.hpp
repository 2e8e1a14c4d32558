#pragma once

// Subspace assignments for bipartite graphs at three restriction levels,
// their verifiers, and the constructions that build them.

#include "projdim/functions.hpp"
#include "projdim/gf.hpp"

#include <array>
#include <string>
#include <vector>

namespace projdim {

struct ProjectiveAssignment {
  gf::Element q = 2;
  std::size_t ambient = 0;
  std::vector<gf::Subspace> left;
  std::vector<gf::Subspace> right;

  /// Throws std::invalid_argument unless every subspace lives in F_q^ambient.
  void validate() const;
};

/// Per-literal subspaces U_i^a (left) and V_j^b (right) over F_2.
class BitwiseAssignment {
 public:
  BitwiseAssignment(std::size_t n, std::size_t ambient);

  std::size_t n() const { return n_; }
  std::size_t ambient() const { return ambient_; }
  gf::Element q() const { return 2; }

  const gf::Subspace& literal(Side side, std::size_t index, int value) const;
  void set_literal(Side side, std::size_t index, int value, gf::Subspace space);
  const gf::Subspace& U(std::size_t i, int a) const { return literal(Side::left, i, a); }
  const gf::Subspace& V(std::size_t j, int b) const { return literal(Side::right, j, b); }

  /// span_i U_i^{x_i}, with x1 the most significant bit of x.
  gf::Subspace left_space(std::uint64_t x) const;
  gf::Subspace right_space(std::uint64_t y) const;
  /// The induced projective assignment on {0,1}^n × {0,1}^n.
  ProjectiveAssignment induced() const;

 private:
  std::size_t n_;
  std::size_t ambient_;
  std::vector<std::array<gf::Subspace, 2>> left_;
  std::vector<std::array<gf::Subspace, 2>> right_;
};

/// Each vertex gets the span of a set of standard basis vectors (0-based).
struct StandardAssignment {
  std::size_t ambient = 0;
  std::vector<std::vector<std::size_t>> left;
  std::vector<std::vector<std::size_t>> right;

  ProjectiveAssignment to_projective(gf::Element q = 2) const;
};

struct Biclique {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
};

struct BicliqueCollection {
  std::size_t left_size = 0;
  std::size_t right_size = 0;
  std::vector<Biclique> blocks;
  bool edge_disjoint = false;

  /// Blocks nonempty and in range; pairwise edge-disjoint when flagged.
  void validate() const;
};

/// True iff (u,v) is an edge exactly when the subspaces meet nontrivially.
/// Throws std::invalid_argument if the vertex counts differ.
bool verify_realizes(const ProjectiveAssignment& phi, const BipartiteGraph& g);
/// Largest dim(φ(u) ∩ φ(v)) over the edges of g.
std::size_t max_intersection_dim(const ProjectiveAssignment& phi, const BipartiteGraph& g);
BipartiteGraph realized_graph(const ProjectiveAssignment& phi);

/// True iff the subspace is spanned by the vectors e_i - e_j it contains.
bool spanned_by_differences(const gf::Subspace& s);
/// dim(sum) equals the sum of dims.
bool is_direct(const std::vector<gf::Subspace>& parts);

struct BitpdimReport {
  bool realizes = false;        // Property 1
  bool difference_spanned = false;  // Property 2
  bool left_direct = false;     // Property 3 for the U family
  bool right_direct = false;    // Property 3 for the V family
  std::vector<std::string> diagnostics;

  bool ok() const { return realizes && difference_spanned && left_direct && right_direct; }
};

BitpdimReport verify_bitpdim(const BitwiseAssignment& ba, const BooleanFunction& f);

/// Vertex-wise direct sum; realizes f1 ∨ f2.
ProjectiveAssignment or_compose(const ProjectiveAssignment& a, const ProjectiveAssignment& b);
/// Vertex-wise tensor product; realizes f1 ∧ f2.
ProjectiveAssignment and_compose(const ProjectiveAssignment& a, const ProjectiveAssignment& b);

struct Rectangle {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

/// Rectangle i contributes span{e_i} to each of its rows and columns.
ProjectiveAssignment upd_from_rectangle_partition(const BipartiteGraph& g,
                                                  const std::vector<Rectangle>& rects,
                                                  gf::Element q = 2);
/// Every subspace of F_q^d is mapped to itself; realizes P_d.
ProjectiveAssignment natural_pd_assignment(std::size_t d, gf::Element q = 2);

BicliqueCollection standard_to_biclique(const StandardAssignment& sa);
StandardAssignment biclique_to_standard(const BicliqueCollection& bc);
BipartiteGraph covered_graph(const BicliqueCollection& bc);
BipartiteGraph realized_graph(const StandardAssignment& sa);

struct RestrictedAssignment {
  ProjectiveAssignment psi;  // left: settings of the block (MSB = first block variable); right: one vertex
  gf::Subspace fixed_left;   // L
  gf::Subspace right;        // R
  gf::Subspace block_space;  // Z
  std::vector<gf::Subspace> block_parts;  // Z^x per block setting
  /// Span over x of the projections onto Z^x of R ∩ (L + Z^x).
  gf::Subspace projection_span;
  /// Whether projection_span equals psi.right[0].
  bool projection_identity = false;
};

/// ψ_ρ for a restriction that fixes every variable except the left
/// variables in `block` (0-based). Throws std::invalid_argument if ρ leaves
/// other variables free or if f_ρ is constant.
RestrictedAssignment restrict_assignment(const BitwiseAssignment& ba, const RestrictionMap& rho,
                                         const std::vector<std::size_t>& block);

}  // namespace projdim
