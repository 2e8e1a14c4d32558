#include "helpers.hpp"
#include "projdim/formats.hpp"

#include <doctest.h>

#include <filesystem>
#include <functional>
#include <random>

using namespace projdim;
using namespace projdim::formats;
using namespace testing_support;

namespace {

bool same_function(const BooleanFunction& a, const BooleanFunction& b) {
  if (a.n() != b.n()) return false;
  for (std::uint64_t x = 0; x < (1u << a.n()); ++x) {
    for (std::uint64_t y = 0; y < (1u << a.n()); ++y) {
      if (a(x, y) != b(x, y)) return false;
    }
  }
  return true;
}

void check_line_error(const std::function<void()>& action, const std::string& line) {
  try {
    action();
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find(line) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("matrix round trip") {
  gf::FieldMatrix m(3, 2, 3);
  m.set(0, 1, 2);
  m.set(1, 0, 1);
  m.set(1, 2, 5);
  const auto text = write_matrix(m);
  CHECK(text.rfind("3 2 3\n", 0) == 0);
  CHECK(read_matrix(text) == m);
  CHECK(read_matrix("# comment\n2 2 2\n10\n01\n") == gf::FieldMatrix::identity(2, 2));
  check_line_error([] { read_matrix("2 2 2\n1 0\n"); }, "end of input");
  check_line_error([] { read_matrix("2 1 2\n1 0 1\n"); }, "line 2");
  check_line_error([] { read_matrix("4 1 1\n1\n"); }, "line 1");
}

TEST_CASE("function text") {
  const auto ip = make_named(Family::ip, 2);
  CHECK(same_function(read_function(write_function(ip)), ip));
  CHECK(write_function(make_named(Family::eq, 1)).ends_with("1\n10\n01\n"));
  CHECK(same_function(read_function("family:parity:2"), make_named(Family::parity, 2)));
  CHECK(same_function(function_from_spec("parity4"), make_named(Family::parity, 2)));
  CHECK(same_function(function_from_spec("eq2"), make_named(Family::eq, 2)));
  CHECK(same_function(function_from_spec("si2"), make_si(2)));
  CHECK(function_from_spec("ed4").n() == 4);
  CHECK_THROWS(function_from_spec("bogus"));
  CHECK_THROWS(function_from_spec("parity3"));
  check_line_error([] { read_function("1\n10\n0\n"); }, "line 3");
}

TEST_CASE("graph formats") {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    BipartiteGraph g(1 + rng() % 5, 1 + rng() % 5);
    for (std::size_t u = 0; u < g.left_size(); ++u) {
      for (std::size_t v = 0; v < g.right_size(); ++v) {
        if (rng() & 1) g.set_edge(u, v);
      }
    }
    CHECK(read_graph(write_graph_adjacency(g)) == g);
    CHECK(read_graph(write_graph_edges(g)) == g);
  }
  const auto p2 = make_pd_graph(2);
  const auto text = write_graph_edges(p2);
  CHECK(text.find("edges 5 5 10") != std::string::npos);
  CHECK(read_graph(text) == p2);
  check_line_error([] { read_graph("edges 2 2 1\n0 5\n"); }, "line 2");
  check_line_error([] { read_graph("2 2\n10\n"); }, "end of input");
}

TEST_CASE("program round trip") {
  for (auto family : {Family::eq, Family::ip, Family::disj, Family::parity}) {
    const auto bp = build_named(family, 3);
    const auto back = read_program(write_program(bp));
    CHECK(back.size() == bp.size());
    CHECK(same_function(program_function(back), make_named(family, 3)));
  }
  const std::string hand =
      "# EQ_1\n"
      "node a x1\nnode b y1\nnode c y1\n"
      "edge a 0 b\nedge a 1 c\nedge b 0 acc\nedge b 1 rej\nedge c 0 rej\nedge c 1 acc\n"
      "start a\naccept acc\nreject rej\n";
  const auto bp = read_program(hand);
  CHECK(bp.n() == 1);
  CHECK(same_function(program_function(bp), make_named(Family::eq, 1)));
  CHECK_THROWS(read_program("node a x1\nedge a 0 acc\nstart a\naccept acc\nreject rej\n"));
  CHECK_THROWS(read_program("node a x1\nnode a y1\n"));
}

TEST_CASE("assignment round trips") {
  std::mt19937 rng(59);
  ProjectiveAssignment phi{2, 5, {}, {}};
  for (int k = 0; k < 3; ++k) {
    phi.left.push_back(random_subspace(rng, 2, 5, 3));
    phi.right.push_back(random_subspace(rng, 2, 5, 3));
  }
  const auto back = read_assignment(write_assignment(phi));
  CHECK(back.ambient == 5);
  CHECK(back.left == phi.left);
  CHECK(back.right == phi.right);

  ProjectiveAssignment ternary{3, 2, {gf::Subspace::span(3, 2, {{1, 2}})}, {gf::Subspace::full(3, 2)}};
  const auto t = read_assignment(write_assignment(ternary));
  CHECK(t.q == 3);
  CHECK(t.left == ternary.left);
  CHECK(t.right == ternary.right);

  const auto ex = subdivide_for_bitpdim(build_named(Family::parity, 2));
  const auto ba = read_bitwise(write_bitwise(ex.assignment));
  CHECK(ba.n() == 2);
  CHECK(ba.ambient() == ex.assignment.ambient());
  for (Side side : {Side::left, Side::right}) {
    for (std::size_t i = 0; i < 2; ++i) {
      for (int a = 0; a < 2; ++a) CHECK(ba.literal(side, i, a) == ex.assignment.literal(side, i, a));
    }
  }
  CHECK_THROWS_AS(read_bitwise("3 4\nn 1\n"), FormatError);
  check_line_error([] { read_assignment("2 3\nleft 0 1\n1 1\n"); }, "line 3");
}

TEST_CASE("biclique and standard text") {
  BicliqueCollection bc{3, 2, {{{0, 2}, {1}}, {{1}, {0, 1}}}, true};
  const auto back = read_bicliques(write_bicliques(bc));
  CHECK(back.left_size == 3);
  CHECK(back.edge_disjoint);
  REQUIRE(back.blocks.size() == 2);
  CHECK(back.blocks[0].left == bc.blocks[0].left);
  CHECK(back.blocks[1].right == bc.blocks[1].right);
  CHECK(covered_graph(back) == covered_graph(bc));
  CHECK_THROWS(read_bicliques("bicliques 2 2 2 partition\n0 | 0 1\n0 1 | 1\n"));

  const auto sa = biclique_to_standard(bc);
  const auto text = write_standard(sa);
  CHECK(text.rfind("standard 2 3 2\n", 0) == 0);
  CHECK(text.find("left 0 0") != std::string::npos);
}

TEST_CASE("atomic file writes") {
  const auto dir = std::filesystem::temp_directory_path() / "projdim_formats_test";
  std::filesystem::remove_all(dir);
  const auto path = (dir / "nested" / "out.txt").string();
  write_file_atomic(path, "first\n");
  CHECK(read_file(path) == "first\n");
  write_file_atomic(path, "second\n");
  CHECK(read_file(path) == "second\n");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& entry : std::filesystem::directory_iterator(dir / "nested")) ++files;
  CHECK(files == 1);
  std::filesystem::remove_all(dir);
  CHECK_THROWS(read_file(path));
}
