// Acceptance run: one PASS/FAIL line per criterion, with its time limit.
#include "helpers.hpp"
#include "projdim/assign.hpp"
#include "projdim/bounds.hpp"
#include "projdim/bp.hpp"
#include "projdim/formats.hpp"
#include "projdim/reconstruct.hpp"
#include "projdim/solve.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace projdim;
using namespace testing_support;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool condition, const std::string& what) {
    if (!condition && pass) {
      pass = false;
      detail = what;
    }
  }
};

int failures = 0;

void run(int id, const char* title, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (out.pass && seconds > limit_seconds) {
    out.pass = false;
    out.detail = "time limit exceeded";
  }
  if (!out.pass) ++failures;
  std::printf("criterion %2d %s  %-48s %8.3fs (limit %.0fs)%s%s\n", id, out.pass ? "PASS" : "FAIL", title, seconds,
              limit_seconds, out.detail.empty() ? "" : "  ", out.detail.c_str());
  std::fflush(stdout);
}

BooleanFunction random_function(std::mt19937& rng, std::size_t n) {
  std::vector<bool> table(std::size_t{1} << (2 * n));
  for (std::size_t k = 0; k < table.size(); ++k) table[k] = rng() & 1;
  return BooleanFunction::from_table("rand", n, table);
}

// Graph of f_ρ when only the left variables in `block` are free.
BipartiteGraph restricted_graph(const BooleanFunction& f, const RestrictionMap& rho, const std::vector<std::size_t>& block) {
  const std::size_t n = f.n(), k = block.size();
  std::uint64_t x0 = 0, y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (auto v = rho.value({Side::left, i}); v && *v) x0 |= std::uint64_t{1} << (n - 1 - i);
    if (*rho.value({Side::right, i})) y |= std::uint64_t{1} << (n - 1 - i);
  }
  BipartiteGraph g(std::size_t{1} << k, 1);
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << k); ++t) {
    std::uint64_t x = x0;
    for (std::size_t b = 0; b < k; ++b) {
      if ((t >> (k - 1 - b)) & 1) x |= std::uint64_t{1} << (n - 1 - block[b]);
    }
    if (f(x, y)) g.set_edge(t, 0);
  }
  return g;
}

std::vector<RestrictionMap> restrictions(std::size_t n, const std::vector<std::size_t>& block) {
  std::vector<Variable> fixed;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(block.begin(), block.end(), i) == block.end()) fixed.push_back({Side::left, i});
  }
  for (std::size_t j = 0; j < n; ++j) fixed.push_back({Side::right, j});
  std::vector<RestrictionMap> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << fixed.size()); ++bits) {
    RestrictionMap rho(n);
    for (std::size_t k = 0; k < fixed.size(); ++k) rho.fix(fixed[k], (bits >> k) & 1);
    out.push_back(rho);
  }
  return out;
}

std::string str(std::size_t v) { return std::to_string(v); }

}  // namespace

int main() {
  run(1, "PARITY4 tabulated assignment", 1.0, [](Outcome& o) {
    const auto table = formats::read_assignment(formats::read_file(PROJDIM_TEST_DATA "/parity4_table1.asg"));
    const auto g = realization(make_named(Family::parity, 2));
    o.require(table.ambient == 9, "ambient " + str(table.ambient));
    o.require(verify_realizes(table, g), "does not realize PARITY4");
    const auto m = max_intersection_dim(table, g);
    o.require(m == 1, "max intersection dim " + str(m));
  });

  run(2, "pd(P_d) = d at desk scale", 60.0, [](Outcome& o) {
    for (std::size_t d : {2u, 3u}) {
      o.require(verify_realizes(natural_pd_assignment(d), make_pd_graph(d)), "natural assignment fails for d=" + str(d));
    }
    const auto pd = exact_pd(make_pd_graph(2), 2);
    o.require(pd.status == SolveStatus::exact && pd.value == 2, "exact_pd(P_2) = " + str(pd.value));
    const auto count = pd_count_bound(make_pd_graph(3));
    o.require(count.value >= 3, "pd_count_bound(P_3) = " + std::to_string(count.value));
  });

  run(3, "rank of M(P_d) vs middle Gaussian coefficient", 60.0, [](Outcome& o) {
    const std::size_t vertices[] = {0, 0, 5, 16, 67};
    for (std::size_t d = 2; d <= 4; ++d) {
      const auto r = pd_rank_report(d);
      o.require(r.vertices == vertices[d], "vertex count for d=" + str(d));
      o.require(r.threshold == oracle::gaussian(d, d / 2, 2) - 1, "threshold for d=" + str(d));
      o.require(r.ok(), "rank " + str(r.rank) + " below threshold for d=" + str(d));
    }
  });

  run(4, "upd/pd gap on P_2", 300.0, [](Outcome& o) {
    const auto p2 = make_pd_graph(2);
    const auto bound = upd_rank_bound(p2);
    const auto pd = exact_pd(p2, 2);
    o.require(bound.value == 3, "upd_rank_bound = " + std::to_string(bound.value));
    o.require(pd.status == SolveStatus::exact && pd.value == 2, "exact_pd = " + str(pd.value));
    o.require(bound.value > double(pd.value), "no gap");
    const auto upd = exact_upd(p2, 2, {2, 200'000'000, 300.0});
    o.require(upd.status == SolveStatus::lower_bound_only && upd.value == 3, "exact_upd status " + status_name(upd.status));
    o.require(std::find(upd.stats.refuted.begin(), upd.stats.refuted.end(), 2) != upd.stats.refuted.end(),
              "d = 2 not refuted");
  });

  run(5, "or/and compositions on 50 random pairs", 60.0, [](Outcome& o) {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
      const auto f1 = random_function(rng, 2), f2 = random_function(rng, 2);
      const auto a = pudlak_rodl_transform(build_from_table(f1));
      const auto b = pudlak_rodl_transform(build_from_table(f2));
      const auto por = or_compose(a, b), pand = and_compose(a, b);
      o.require(verify_realizes(por, realization(f1 | f2)), "or fails on trial " + std::to_string(trial));
      o.require(verify_realizes(pand, realization(f1 & f2)), "and fails on trial " + std::to_string(trial));
      o.require(por.ambient == a.ambient + b.ambient, "or ambient");
      o.require(pand.ambient == a.ambient * b.ambient, "and ambient");
    }
  });

  run(6, "spd = bc and uspd = bp on all 3x3 graphs", 600.0, [](Outcome& o) {
    for (std::uint32_t bits = 0; bits < 512; ++bits) {
      const auto g = from_adjacency(oracle::graph_from_bits(bits, 3, 3));
      const auto bc = exact_biclique(g, false), bp = exact_biclique(g, true);
      const auto s = spd(g), u = uspd(g);
      const std::string at = " at graph " + std::to_string(bits);
      o.require(bc.status == SolveStatus::exact && bp.status == SolveStatus::exact, "cover not exact" + at);
      o.require(s.status == SolveStatus::exact && u.status == SolveStatus::exact, "standard not exact" + at);
      o.require(s.value == bc.value, "spd != bc" + at);
      o.require(u.value == bp.value, "uspd != bp" + at);
      if (!o.pass) return;
      for (const auto* cover : {&bc, &bp}) {
        const auto& c = std::get<BicliqueCollection>(cover->witness);
        c.validate();
        o.require(covered_graph(c) == g, "cover witness" + at);
        o.require(realized_graph(biclique_to_standard(c)) == g, "cover to standard" + at);
      }
      for (const auto* st : {&s, &u}) {
        const auto& sa = std::get<StandardAssignment>(st->witness);
        o.require(sa.ambient == st->value, "standard ambient" + at);
        o.require(realized_graph(sa) == g, "standard witness" + at);
        o.require(verify_realizes(sa.to_projective(), g), "projective form" + at);
        o.require(covered_graph(standard_to_biclique(sa)) == g, "standard to cover" + at);
      }
      const auto& usa = std::get<StandardAssignment>(u.witness);
      o.require(g.edge_count() == 0 || max_intersection_dim(usa.to_projective(), g) <= 1, "uspd witness dim" + at);
    }
  });

  run(7, "subdivision pipeline and cycle evaluation", 60.0, [](Outcome& o) {
    for (auto family : {Family::eq, Family::ip, Family::disj, Family::parity}) {
      const auto bp = build_named(family, 2);
      const auto f = make_named(family, 2);
      const auto ex = subdivide_for_bitpdim(bp);
      const auto name = family_name(family);
      const auto report = verify_bitpdim(ex.assignment, f);
      o.require(ex.assignment.ambient() <= 6 * bp.size(), name + " ambient too large");
      o.require(report.realizes, name + " does not realize");
      o.require(report.difference_spanned, name + " not difference spanned");
      o.require(report.left_direct, name + " left literals not direct");
      o.require(report.right_direct, name + " right literals not direct");
      for (std::uint64_t x = 0; x < 4; ++x) {
        for (std::uint64_t y = 0; y < 4; ++y) {
          const bool cycle = evaluate_via_cycle(ex.assignment, x, y);
          o.require(cycle == evaluate_via_intersection(ex.assignment, x, y), name + " cycle vs intersection");
          o.require(cycle == f(x, y), name + " cycle vs truth table");
        }
      }
    }
  });

  run(8, "restrictions and the projection identity", 60.0, [](Outcome& o) {
    std::size_t checked = 0, identity_failures = 0;
    std::string first;
    for (auto family : {Family::parity, Family::eq}) {
      const auto f = make_named(family, 2);
      const auto ex = subdivide_for_bitpdim(build_named(family, 2));
      for (std::size_t var = 0; var < 2; ++var) {
        for (const auto& rho : restrictions(2, {var})) {
          const auto target = restricted_graph(f, rho, {var});
          if (target.edge_count() == 0 || target.edge_count() == target.left_size()) continue;
          const auto r = restrict_assignment(ex.assignment, rho, {var});
          ++checked;
          o.require(verify_realizes(r.psi, target), family_name(family) + " restriction does not realize");
          if (!r.projection_identity) {
            if (identity_failures++ == 0) first = family_name(family) + " block x" + str(var + 1);
          }
        }
      }
    }
    o.require(checked > 0, "no restrictions checked");
    o.require(identity_failures == 0,
              "identity fails on " + str(identity_failures) + " of " + str(checked) + " restrictions, first " + first);
  });

  run(9, "SI restriction counts and Nechiporuk on ED", 60.0, [](Outcome& o) {
    const auto subspaces = gf::enumerate_subspaces(2, 2).size();
    o.require(subspaces == 5, "subspace count " + str(subspaces));
    for (std::size_t row = 0; row < 2; ++row) {
      const auto c = si_restriction_count(2, row);
      o.require(c >= subspaces, "si_restriction_count(2, " + str(row) + ") = " + str(c));
    }
    const auto r = nechiporuk_bitpdim_bound(make_named(Family::ed, 4), {{0, 1}, {2, 3}});
    o.require(r.blocks.size() == 2, "block count");
    for (const auto& b : r.blocks) o.require(b.count >= 2, "block count c_i = " + str(b.count));
  });

  run(10, "inclusion factorization and degree-one rank", 60.0, [](Outcome& o) {
    const auto spaces = gf::enumerate_subspaces(3, 2);
    for (std::size_t i : {0u, 1u}) {
      const auto check = verify_inclusion_factorization(spaces, spaces, i);
      o.require(check.ok(), "factorization fails for i=" + str(i));
    }
    const auto p2 = make_pd_graph(2);
    const auto upd = exact_upd(p2, 2);
    o.require(upd.status == SolveStatus::exact, "no unit-intersection witness for P_2");
    if (!o.pass) return;
    const auto& phi = std::get<ProjectiveAssignment>(upd.witness);
    const auto deg = verify_degree_one_bound(phi, p2);
    o.require(deg.matches_adjacency && deg.factorization, "degree-one matrices");
    o.require(gf::BigInt(deg.rank) <= 1 + gf::gaussian_coeff(phi.ambient, 1, 2), "rank " + str(deg.rank));
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
