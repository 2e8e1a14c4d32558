#pragma once

// Exact exponential-time solvers for small graphs: projective dimension,
// projective dimension with intersection dimension one, biclique cover and
// partition numbers, and the standard-basis variants derived from them.

#include "projdim/assign.hpp"
#include "projdim/functions.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace projdim {

struct SearchBudget {
  std::size_t d_max = 4;
  std::uint64_t node_limit = 200'000'000;
  double time_limit_seconds = 600.0;

  void validate() const;
};

enum class SolveStatus {
  exact,             // value is optimal and the witness verifies
  lower_bound_only,  // every candidate up to d_max was refuted; value = d_max + 1
  budget_exceeded,   // search stopped early; value is the bound proven so far
};

std::string status_name(SolveStatus s);

struct SearchStats {
  std::uint64_t nodes = 0;
  double seconds = 0.0;
  std::vector<std::size_t> refuted;  // values shown infeasible
};

using Witness = std::variant<std::monostate, ProjectiveAssignment, BicliqueCollection, StandardAssignment>;

struct SolveResult {
  SolveStatus status = SolveStatus::budget_exceeded;
  std::size_t value = 0;
  Witness witness;
  SearchStats stats;
};

/// Per-side limit on distinct neighborhood classes for exact_pd / exact_upd.
inline constexpr std::size_t kClassLimit = 10;
/// Edge limit for exact_biclique.
inline constexpr std::size_t kEdgeLimit = 40;

SolveResult exact_pd(const BipartiteGraph& g, gf::Element q, const SearchBudget& budget = {});
SolveResult exact_upd(const BipartiteGraph& g, gf::Element q, const SearchBudget& budget = {});
/// Minimum biclique cover, or partition when `disjoint` is set.
SolveResult exact_biclique(const BipartiteGraph& g, bool disjoint, const SearchBudget& budget = {});
/// Standard-basis projective dimension via the biclique cover number.
SolveResult spd(const BipartiteGraph& g, const SearchBudget& budget = {});
/// Standard-basis variant with intersection dimension one, via the partition number.
SolveResult uspd(const BipartiteGraph& g, const SearchBudget& budget = {});

/// Size of a greedily built fooling set: a lower bound on the cover number.
std::size_t fooling_set_bound(const BipartiteGraph& g);

}  // namespace projdim
