#include "helpers.hpp"
#include "projdim/bounds.hpp"
#include "projdim/solve.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <set>

using namespace projdim;
using namespace testing_support;

namespace {

using Eval = std::function<bool(std::uint64_t, std::uint64_t)>;

// Distinct truth tables on the free left block over every fixing of the rest.
std::size_t subfunctions_oracle(const Eval& f, std::size_t n, const std::vector<std::size_t>& block) {
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    if (std::find(block.begin(), block.end(), i) == block.end()) others.push_back(i);
  }
  auto place = [n](std::uint64_t& x, std::uint64_t& y, std::size_t var) {
    if (var < n) {
      x |= std::uint64_t{1} << (n - 1 - var);
    } else {
      y |= std::uint64_t{1} << (2 * n - 1 - var);
    }
  };
  std::set<std::vector<bool>> seen;
  for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << others.size()); ++rest) {
    std::uint64_t x0 = 0, y0 = 0;
    for (std::size_t k = 0; k < others.size(); ++k) {
      if ((rest >> k) & 1) place(x0, y0, others[k]);
    }
    std::vector<bool> table;
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << block.size()); ++t) {
      std::uint64_t x = x0, y = y0;
      for (std::size_t b = 0; b < block.size(); ++b) {
        if ((t >> b) & 1) place(x, y, block[b]);
      }
      table.push_back(f(x, y));
    }
    seen.insert(table);
  }
  return seen.size();
}

double term_oracle(std::size_t c) { return c < 4 ? 0.0 : std::log2(double(c)) / std::log2(std::log2(double(c))); }

std::vector<gf::Subspace> all_subspaces(std::size_t d) { return gf::enumerate_subspaces(d, 2); }

}  // namespace

TEST_CASE("upd rank bound examples") {
  const auto eq2 = upd_rank_bound(make_named(Family::eq, 2));
  CHECK(eq2.value == 3);
  CHECK(eq2.quantity("rank") == "4");
  CHECK(eq2.target == "upd");

  const auto p2 = upd_rank_bound(make_pd_graph(2));
  CHECK(p2.value == 3);
  CHECK(p2.quantity("rank") == "4");
  CHECK(p2.value > exact_pd(make_pd_graph(2), 2).value);

  BipartiteGraph ones(3, 3);
  for (std::size_t u = 0; u < 3; ++u) {
    for (std::size_t v = 0; v < 3; ++v) ones.set_edge(u, v);
  }
  CHECK(upd_rank_bound(ones).value == 1);
  CHECK(upd_rank_bound(make_named(Family::eq, 2), 3).value == 2);
  CHECK_THROWS_AS(upd_rank_bound(ones, 4), std::invalid_argument);
  CHECK_THROWS_AS(p2.quantity("missing"), std::out_of_range);
}

TEST_CASE("pd count bound examples") {
  CHECK(pd_count_bound(make_pd_graph(3)).value == 3);
  CHECK(pd_count_bound(make_pd_graph(3)).quantity("left_neighborhoods") == "16");
  CHECK(pd_count_bound(make_pd_graph(2)).value == 2);
  BipartiteGraph single(1, 1);
  single.set_edge(0, 0);
  CHECK(pd_count_bound(single).value == 1);
  CHECK(pd_count_bound(make_pd_graph(3)).target == "pd");
}

TEST_CASE("bounds never exceed exact values") {
  for (std::uint32_t bits = 0; bits < 512; ++bits) {
    const auto g = from_adjacency(oracle::graph_from_bits(bits, 3, 3));
    CAPTURE(bits);
    const auto pd = exact_pd(g, 2);
    const auto upd = exact_upd(g, 2);
    REQUIRE(pd.status == SolveStatus::exact);
    REQUIRE(upd.status == SolveStatus::exact);
    CHECK(pd_count_bound(g).value <= pd.value);
    CHECK(upd_rank_bound(g).value <= upd.value);
    CHECK(pd_count_bound(g).value <= upd.value);
  }
  const auto p2 = make_pd_graph(2);
  CHECK(pd_count_bound(p2).value <= exact_pd(p2, 2).value);
  CHECK(upd_rank_bound(p2).value <= exact_upd(p2, 2).value);
}

TEST_CASE("rank of P_d against the middle Gaussian coefficient") {
  const std::size_t expected_vertices[] = {0, 0, 5, 16, 67};
  for (std::size_t d = 2; d <= 4; ++d) {
    const auto r = pd_rank_report(d);
    CAPTURE(d);
    CHECK(r.vertices == expected_vertices[d]);
    CHECK(r.threshold == oracle::gaussian(d, d / 2, 2) - 1);
    CHECK(r.ok());
  }
  CHECK(pd_rank_report(2).rank == 4);
  // Independent rank for the smaller cases.
  for (std::size_t d = 2; d <= 3; ++d) {
    CHECK(pd_rank_report(d).rank == oracle::rank_rational(to_big(adjacency(make_pd_graph(d)))));
  }
}

TEST_CASE("inclusion factorization") {
  SUBCASE("i = 0 gives the all-ones matrix") {
    const auto spaces = all_subspaces(3);
    const auto m = inclusion_matrices(spaces, spaces, 0);
    CHECK(m.gamma.cols() == 1);
    const auto check = verify_inclusion_factorization(spaces, spaces, 0);
    CHECK(check.entrywise);
    CHECK(check.rank == 1);
    CHECK(check.ok());
  }
  SUBCASE("D = 3, all subspaces") {
    const auto spaces = all_subspaces(3);
    for (std::size_t i = 0; i <= 3; ++i) {
      CAPTURE(i);
      const auto m = inclusion_matrices(spaces, spaces, i);
      CHECK(m.gamma.rows() == 16);
      CHECK(oracle::Big(m.gamma.cols()) == oracle::gaussian(3, i, 2));
      // Γ entries against a brute-force containment test.
      const auto columns = gf::enumerate_subspaces(3, 2, i);
      for (std::size_t r = 0; r < spaces.size(); ++r) {
        const auto big = vectors_of(spaces[r]);
        for (std::size_t c = 0; c < columns.size(); ++c) {
          const auto small = vectors_of(columns[c]);
          const bool inside = std::includes(big.begin(), big.end(), small.begin(), small.end());
          CHECK(m.gamma(r, c) == (inside ? 1 : 0));
        }
      }
      const auto check = verify_inclusion_factorization(spaces, spaces, i);
      CHECK(check.entrywise);
      CHECK(check.ok());
    }
  }
  SUBCASE("over F_3") {
    const auto spaces = gf::enumerate_subspaces(2, 3);
    CHECK(verify_inclusion_factorization(spaces, spaces, 1).ok());
  }
  SUBCASE("mismatched families") {
    CHECK_THROWS_AS(inclusion_matrices({}, all_subspaces(2), 1), std::invalid_argument);
    CHECK_THROWS_AS(inclusion_matrices(all_subspaces(2), all_subspaces(3), 1), std::invalid_argument);
  }
}

TEST_CASE("degree-one conversion identity") {
  for (std::uint64_t q : {2u, 3u}) {
    for (std::uint64_t x = 0; x <= 12; ++x) {
      oracle::Big qx = 1;
      for (std::uint64_t k = 0; k < x; ++k) qx *= q;
      CHECK(gf::gaussian_coeff(x, 1, q) * (q - 1) == qx - 1);
    }
  }
}

TEST_CASE("degree-one bound on a unit-intersection witness") {
  const auto p2 = make_pd_graph(2);
  const auto upd = exact_upd(p2, 2);
  REQUIRE(upd.status == SolveStatus::exact);
  const auto& phi = std::get<ProjectiveAssignment>(upd.witness);
  const auto check = verify_degree_one_bound(phi, p2);
  CHECK(check.matches_adjacency);
  CHECK(check.factorization);
  CHECK(check.ok());
  CHECK(check.rank == 4);

  // The natural assignment has two-dimensional intersections.
  const auto natural = verify_degree_one_bound(natural_pd_assignment(2), p2);
  CHECK_FALSE(natural.matches_adjacency);
  CHECK(natural.factorization);
  CHECK_THROWS_AS(verify_degree_one_bound(phi, BipartiteGraph(2, 2)), std::invalid_argument);
}

TEST_CASE("Nechiporuk bound") {
  SUBCASE("constant function") {
    const auto r = nechiporuk_bitpdim_bound(make_constant(2, true), {{0}, {1}});
    CHECK(r.value == 0);
    for (const auto& b : r.blocks) CHECK(b.count == 1);
  }
  SUBCASE("ED with m = 2") {
    const auto f = make_named(Family::ed, 4);
    const auto r = nechiporuk_bitpdim_bound(f, {{0, 1}, {2, 3}});
    REQUIRE(r.blocks.size() == 2);
    double total = 0;
    for (const auto& b : r.blocks) {
      CHECK(b.count >= 2);
      CHECK(b.count == subfunctions_oracle([&](auto x, auto y) { return f(x, y); }, 4, b.variables));
      CHECK(b.term == doctest::Approx(term_oracle(b.count)));
      total += b.term;
    }
    CHECK(r.value == doctest::Approx(total));
    CHECK(r.blocks[0].count == 5);
    const auto csv = nechiporuk_csv(r);
    CHECK(csv.rfind("block,variables,count,term\n", 0) == 0);
    CHECK(csv.find("0,x1 x2,5,") != std::string::npos);
  }
  SUBCASE("named functions against the enumeration oracle") {
    const std::vector<std::pair<Family, std::function<bool(std::uint64_t, std::uint64_t, std::size_t)>>> cases = {
        {Family::eq, oracle::eq}, {Family::ip, oracle::ip}, {Family::disj, oracle::disj}, {Family::parity, oracle::parity}};
    for (const auto& [family, fn] : cases) {
      for (std::size_t n = 2; n <= 3; ++n) {
        std::vector<std::vector<std::size_t>> singles;
        for (std::size_t i = 0; i < n; ++i) singles.push_back({i});
        const auto r = nechiporuk_bitpdim_bound(make_named(family, n), singles);
        double total = 0;
        for (const auto& b : r.blocks) {
          const auto expected = subfunctions_oracle([&](auto x, auto y) { return fn(x, y, n); }, n, b.variables);
          CHECK(b.count == expected);
          total += term_oracle(expected);
        }
        CHECK(r.value == doctest::Approx(total));
      }
    }
  }
  SUBCASE("invalid blocks") {
    const auto f = make_named(Family::eq, 2);
    CHECK_THROWS_AS(nechiporuk_bitpdim_bound(f, {{}}), std::invalid_argument);
    CHECK_THROWS_AS(nechiporuk_bitpdim_bound(f, {{2}}), std::invalid_argument);
    CHECK_THROWS_AS(nechiporuk_bitpdim_bound(f, {{0}, {0, 1}}), std::invalid_argument);
    const auto partial = nechiporuk_bitpdim_bound(f, {{0}});
    CHECK(partial.notes.size() == 2);
  }
}

TEST_CASE("SI restriction counts") {
  CHECK(si_restriction_count(1, 0) >= 2);
  for (std::size_t row = 0; row < 2; ++row) {
    const auto c = si_restriction_count(2, row);
    CHECK(oracle::Big(c) >= oracle::Big(all_subspaces(2).size()));
    CHECK(c >= 5);
    std::vector<std::size_t> block{2 * row, 2 * row + 1};
    CHECK(c == subfunctions_oracle([](auto a, auto b) { return oracle::si(a, b, 2); }, 4, block));
  }
  CHECK(si_restriction_count(1, 0) == subfunctions_oracle([](auto a, auto b) { return oracle::si(a, b, 1); }, 1, {0}));
  const auto r = nechiporuk_bitpdim_bound(make_si(2), {{0, 1}});
  CHECK(r.blocks[0].count >= 5);
  CHECK_THROWS_AS(si_restriction_count(4, 0), GuardExceeded);
  CHECK_THROWS_AS(si_restriction_count(2, 2), std::invalid_argument);
}
