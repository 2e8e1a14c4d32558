#include "helpers.hpp"
#include "projdim/bp.hpp"
#include "projdim/formats.hpp"
#include "projdim/reconstruct.hpp"

#include <doctest.h>

#include <functional>
#include <random>

using namespace projdim;
using namespace testing_support;
using gf::Subspace;

namespace {

Subspace diff_span(std::size_t d, std::initializer_list<std::pair<std::size_t, std::size_t>> pairs) {
  std::vector<gf::Vector> rows;
  for (auto [i, j] : pairs) rows.push_back(gf::difference_vector(2, d, i, j));
  return Subspace::span(2, d, rows);
}

// Any graph with more edges than a spanning forest has a cycle.
bool has_cycle_oracle(const StarGraph& g) {
  std::vector<std::size_t> parent(g.vertices);
  for (std::size_t k = 0; k < parent.size(); ++k) parent[k] = k;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (const auto& e : g.edges) {
    const auto a = find(e.u), b = find(e.v);
    if (a == b) return true;
    parent[a] = b;
  }
  return false;
}

void check_agreement(const BitwiseAssignment& ba, const BooleanFunction& f) {
  const StarEvaluator eval(ba);
  const std::size_t n = ba.n();
  for (std::uint64_t x = 0; x < (1u << n); ++x) {
    for (std::uint64_t y = 0; y < (1u << n); ++y) {
      CAPTURE(x);
      CAPTURE(y);
      const auto r = eval.evaluate(x, y);
      const bool direct = evaluate_via_intersection(ba, x, y);
      CHECK(r.value == direct);
      CHECK(r.value == f(x, y));
      if (!r.value) continue;
      // The left half of the cycle is a nonzero vector in both spans.
      CHECK_FALSE(gf::is_zero_vector(r.witness));
      CHECK(ba.left_space(x).contains(r.witness));
      CHECK(ba.right_space(y).contains(r.witness));
      bool left = false, right = false;
      for (const auto& e : r.cycle) (e.side == Side::left ? left : right) = true;
      CHECK(left);
      CHECK(right);
    }
  }
}

}  // namespace

TEST_CASE("star graph examples") {
  BitwiseAssignment zero(2, 4);
  const auto empty = build_star(zero, 1, 2);
  CHECK(empty.vertices == 4);
  CHECK(empty.edges.empty());
  for (std::uint64_t x = 0; x < 4; ++x) {
    for (std::uint64_t y = 0; y < 4; ++y) {
      CHECK_FALSE(evaluate_via_intersection(zero, x, y));
      CHECK_FALSE(evaluate_via_cycle(zero, x, y));
    }
  }

  BitwiseAssignment one(1, 3);
  one.set_literal(Side::left, 0, 1, diff_span(3, {{0, 1}}));
  const auto g = build_star(one, 1, 0);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].u == 0);
  CHECK(g.edges[0].v == 1);
  CHECK(g.edges[0].tag() == "x1=1");
  CHECK(g.to_edge_list() == "1 2 x1=1\n");
  CHECK(build_star(one, 0, 0).edges.empty());
}

TEST_CASE("every difference vector in an active literal becomes an edge") {
  const auto ex = subdivide_for_bitpdim(build_named(Family::ip, 2));
  const auto& ba = ex.assignment;
  const std::size_t d = ba.ambient();
  for (std::uint64_t x = 0; x < 4; ++x) {
    for (std::uint64_t y = 0; y < 4; ++y) {
      const auto g = build_star(ba, x, y);
      std::size_t expected = 0;
      for (Side side : {Side::left, Side::right}) {
        for (std::size_t i = 0; i < 2; ++i) {
          const int value = ((side == Side::left ? x : y) >> (1 - i)) & 1;
          const auto members = vectors_of(ba.literal(side, i, value));
          for (std::size_t u = 0; u < d; ++u) {
            for (std::size_t v = u + 1; v < d; ++v) expected += members.count((1u << u) | (1u << v));
          }
        }
      }
      CHECK(g.edges.size() == expected);
    }
  }
}

TEST_CASE("cycle evaluation on the pipeline") {
  SUBCASE("PARITY4 at (00, 01)") {
    const auto ex = subdivide_for_bitpdim(build_named(Family::parity, 2));
    CHECK(has_cycle_oracle(build_star(ex.assignment, 0, 1)));
    CHECK(evaluate_via_cycle(ex.assignment, 0, 1));
  }
  for (auto family : {Family::eq, Family::ineq, Family::ip, Family::disj, Family::parity}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      CAPTURE(family_name(family));
      CAPTURE(n);
      const auto ex = subdivide_for_bitpdim(build_named(family, n));
      check_agreement(ex.assignment, make_named(family, n));
    }
  }
  std::mt19937 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<bool> table(16);
    for (std::size_t k = 0; k < 16; ++k) table[k] = rng() & 1;
    const auto f = BooleanFunction::from_table("rand", 2, table);
    check_agreement(subdivide_for_bitpdim(build_from_table(f)).assignment, f);
  }
}

TEST_CASE("tabulated PARITY4 spans as a bitwise assignment") {
  const auto table = formats::read_assignment(formats::read_file(PROJDIM_TEST_DATA "/parity4_table1.asg"));
  // Rows of the table grouped by the literal of the program edge they come
  // from (0-based indices; e1 - e2 is the new start's pair of y1 edges).
  BitwiseAssignment ba(2, 9);
  ba.set_literal(Side::left, 0, 0, diff_span(9, {{1, 2}}));
  ba.set_literal(Side::left, 0, 1, diff_span(9, {{1, 6}}));
  ba.set_literal(Side::left, 1, 0, diff_span(9, {{2, 3}, {6, 7}}));
  ba.set_literal(Side::left, 1, 1, diff_span(9, {{2, 7}, {6, 3}}));
  ba.set_literal(Side::right, 0, 0, diff_span(9, {{3, 4}, {7, 8}, {0, 1}}));
  ba.set_literal(Side::right, 0, 1, diff_span(9, {{3, 8}, {7, 4}, {0, 1}}));
  ba.set_literal(Side::right, 1, 0, diff_span(9, {{4, 5}, {8, 0}}));
  ba.set_literal(Side::right, 1, 1, diff_span(9, {{4, 0}, {8, 5}}));
  const auto induced = ba.induced();
  for (std::size_t v = 0; v < 4; ++v) {
    CHECK(induced.left[v] == table.left[v]);
    CHECK(induced.right[v] == table.right[v]);
  }
  check_agreement(ba, make_named(Family::parity, 2));
}

TEST_CASE("preconditions and degenerate literals") {
  BitwiseAssignment lone(1, 3);
  lone.set_literal(Side::left, 0, 0, Subspace::span(2, 3, {gf::unit_vector(2, 3, 0)}));
  CHECK_THROWS_AS(StarEvaluator{lone}, PreconditionError);
  CHECK_THROWS_AS(evaluate_via_cycle(lone, 0, 0), std::invalid_argument);
  CHECK_FALSE(evaluate_via_intersection(lone, 0, 0));

  // A triangle inside one literal is not an intersection.
  BitwiseAssignment triangle(1, 5);
  triangle.set_literal(Side::left, 0, 0, diff_span(5, {{0, 1}, {1, 2}}));
  triangle.set_literal(Side::right, 0, 0, diff_span(5, {{3, 4}}));
  triangle.set_literal(Side::right, 0, 1, diff_span(5, {{2, 3}}));
  CHECK(has_cycle_oracle(build_star(triangle, 0, 0)));
  const auto r = StarEvaluator(triangle).evaluate(0, 0);
  CHECK_FALSE(r.value);
  CHECK_FALSE(evaluate_via_intersection(triangle, 0, 0));
  CHECK(r.diagnostics.size() == 1);
  CHECK_FALSE(evaluate_via_cycle(triangle, 0, 1));
  CHECK_FALSE(evaluate_via_intersection(triangle, 0, 1));

  // The same pair on both sides is a two-cycle.
  BitwiseAssignment parallel(1, 2);
  parallel.set_literal(Side::left, 0, 1, diff_span(2, {{0, 1}}));
  parallel.set_literal(Side::right, 0, 1, diff_span(2, {{0, 1}}));
  const auto p = StarEvaluator(parallel).evaluate(1, 1);
  CHECK(p.value);
  CHECK(p.cycle.size() == 2);
  CHECK(p.witness == gf::difference_vector(2, 2, 0, 1));
}

TEST_CASE("random difference-spanned assignments") {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 4 + trial % 4;
    BitwiseAssignment ba(2, d);
    for (Side side : {Side::left, Side::right}) {
      for (std::size_t i = 0; i < 2; ++i) {
        for (int a = 0; a < 2; ++a) {
          std::vector<gf::Vector> rows;
          const auto count = rng() % 3;
          for (std::size_t k = 0; k < count; ++k) {
            const std::size_t u = rng() % d, v = (u + 1 + rng() % (d - 1)) % d;
            rows.push_back(gf::difference_vector(2, d, u, v));
          }
          ba.set_literal(side, i, a, Subspace::span(2, d, rows));
        }
      }
    }
    const StarEvaluator eval(ba);
    for (std::uint64_t x = 0; x < 4; ++x) {
      for (std::uint64_t y = 0; y < 4; ++y) {
        const auto r = eval.evaluate(x, y);
        CHECK(r.value == evaluate_via_intersection(ba, x, y));
        if (r.value) {
          CHECK(ba.left_space(x).contains(r.witness));
          CHECK(ba.right_space(y).contains(r.witness));
        }
      }
    }
  }
}
