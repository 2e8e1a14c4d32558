#pragma once

// Lower-bound calculators: rank and counting bounds for pd / upd, the
// inclusion-matrix factorization, and subfunction counting for bitpdim.

#include "projdim/assign.hpp"
#include "projdim/functions.hpp"
#include "projdim/gf.hpp"

#include <string>
#include <utility>
#include <vector>

namespace projdim {

struct BlockTerm {
  std::vector<std::size_t> variables;  // 0-based left variable indices
  std::size_t count = 0;               // distinct subfunctions c_i
  double term = 0.0;                   // log2 c / log2 log2 c, or 0 when c < 4
};

struct BoundReport {
  std::string kind;
  std::string target;  // "pd", "upd" or "bitpdim"
  double value = 0.0;
  std::vector<std::pair<std::string, std::string>> quantities;
  std::vector<BlockTerm> blocks;
  std::vector<std::string> notes;

  /// Looks up a quantity by key; throws std::out_of_range if absent.
  const std::string& quantity(const std::string& key) const;
};

/// Smallest d >= 1 with (q^d - 1)/(q - 1) >= rank over Q of the adjacency matrix.
BoundReport upd_rank_bound(const BipartiteGraph& g, gf::Element q = 2);
BoundReport upd_rank_bound(const BooleanFunction& f, gf::Element q = 2);

/// Smallest d >= 1 whose subspace count reaches the larger per-side number
/// of distinct neighborhoods.
BoundReport pd_count_bound(const BipartiteGraph& g, gf::Element q = 2);

struct InclusionMatrices {
  std::size_t ambient = 0;
  std::size_t i = 0;
  gf::IntegerMatrix gamma;  // |G| × [D; i]_q
  gf::IntegerMatrix delta;  // |H| × [D; i]_q
};

InclusionMatrices inclusion_matrices(const std::vector<gf::Subspace>& family_g,
                                     const std::vector<gf::Subspace>& family_h, std::size_t i);

struct InclusionCheck {
  bool entrywise = false;  // [dim(G ∩ H); i]_q == (Γ Δ^T)[G, H] everywhere
  std::size_t rank = 0;    // rank of Γ Δ^T over Q
  gf::BigInt rank_limit;   // [D; i]_q
  bool ok() const { return entrywise && gf::BigInt(rank) <= rank_limit; }
};

InclusionCheck verify_inclusion_factorization(const std::vector<gf::Subspace>& family_g,
                                              const std::vector<gf::Subspace>& family_h, std::size_t i);

struct DegreeOneCheck {
  std::size_t ambient = 0;
  bool matches_adjacency = false;  // N = (q - 1) M
  bool factorization = false;      // N = (q - 1) Γ_1 Δ_1^T
  std::size_t rank = 0;
  gf::BigInt rank_limit;           // 1 + [D; 1]_q
  bool ok() const { return matches_adjacency && factorization && gf::BigInt(rank) <= rank_limit; }
};

/// N[u, v] = q^dim(φ(u) ∩ φ(v)) - 1 for an assignment realizing g.
DegreeOneCheck verify_degree_one_bound(const ProjectiveAssignment& phi, const BipartiteGraph& g);

/// Sum over blocks of log2 c_i / log2 log2 c_i; blocks with c_i < 4 contribute 0.
BoundReport nechiporuk_bitpdim_bound(const BooleanFunction& f, const std::vector<std::vector<std::size_t>>& blocks);
std::string nechiporuk_csv(const BoundReport& report);

/// Distinct subfunctions of SI_d when only row `row` of A is free.
std::size_t si_restriction_count(std::size_t d, std::size_t row);

struct RankReport {
  std::size_t d = 0;
  std::size_t vertices = 0;
  std::size_t rank = 0;
  gf::BigInt threshold;  // [d; floor(d/2)]_q - 1
  bool ok() const { return gf::BigInt(rank) >= threshold; }
};

/// Rank over Q of the adjacency matrix of P_d against the middle Gaussian coefficient.
RankReport pd_rank_report(std::size_t d, gf::Element q = 2);

}  // namespace projdim
