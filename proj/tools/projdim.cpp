// projdim: command-line front end for generation, transforms, verification,
// exact solving and lower bounds.

#include "projdim/assign.hpp"
#include "projdim/bounds.hpp"
#include "projdim/bp.hpp"
#include "projdim/formats.hpp"
#include "projdim/functions.hpp"
#include "projdim/solve.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#ifndef PROJDIM_VERSION
#define PROJDIM_VERSION "0.0.0"
#endif

namespace {

using namespace projdim;
using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

enum Exit : int { kOk = 0, kFailed = 1, kBudget = 2, kInput = 3 };

struct Options {
  // gen
  std::string family;
  std::size_t n = 0;
  std::size_t d = 0;
  std::optional<std::size_t> pd_graph;
  bool emit_graph = false;
  bool emit_bp = false;
  std::string graph_format = "edges";
  // shared inputs
  std::string bp_file, assignment_file, function_spec, graph_file, bicliques_file;
  std::string blocks;
  std::optional<std::size_t> row;
  std::size_t level = 1;
  // shared flags
  unsigned q = 2;
  std::size_t dmax = 4;
  std::uint64_t budget_nodes = 200'000'000;
  double budget_seconds = 600.0;
  std::string out, report, csv;
  std::string mode;
};

class Session {
 public:
  Session(std::string command, const Options& opt) : opt_(opt), started_(std::chrono::steady_clock::now()) {
    report_["tool"] = "projdim";
    report_["version"] = PROJDIM_VERSION;
    report_["command"] = std::move(command);
    report_["inputs"] = Json::object();
    report_["results"] = Json::object();
  }

  Json& inputs() { return report_["inputs"]; }
  Json& results() { return report_["results"]; }

  // Writes an artifact to --out, to $PROJDIM_OUT_DIR/<default_name>, or to
  // stdout. Returns the path, or nullopt for stdout.
  std::optional<std::string> emit(const std::string& contents, const std::string& default_name) {
    if (auto path = artifact_path(default_name)) {
      formats::write_file_atomic(*path, contents);
      return path;
    }
    std::cout << contents;
    artifact_on_stdout_ = true;
    return std::nullopt;
  }

  std::optional<std::string> artifact_path(const std::string& default_name) const {
    if (!opt_.out.empty()) return opt_.out;
    if (const char* dir = std::getenv("PROJDIM_OUT_DIR"); dir && *dir) return (fs::path(dir) / default_name).string();
    return std::nullopt;
  }

  int finish(int code) {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
    report_["exit_code"] = code;
    report_["timings"] = {{"seconds", seconds}};
    const std::string text = report_.dump(2) + "\n";
    std::string path = opt_.report;
    if (path.empty()) {
      if (const char* dir = std::getenv("PROJDIM_OUT_DIR"); dir && *dir) {
        std::string name = report_["command"].get<std::string>();
        std::replace(name.begin(), name.end(), ' ', '-');
        path = (fs::path(dir) / (name + ".json")).string();
      }
    }
    if (!path.empty()) formats::write_file_atomic(path, text);
    if (!artifact_on_stdout_) std::cout << text;
    return code;
  }

 private:
  const Options& opt_;
  std::chrono::steady_clock::time_point started_;
  Json report_;
  bool artifact_on_stdout_ = false;
};

std::string stem(const std::string& path) { return fs::path(path).stem().string(); }

BooleanFunction load_function(const std::string& spec) {
  if (fs::exists(spec)) return formats::read_function(formats::read_file(spec));
  return formats::function_from_spec(spec);
}

BipartiteGraph load_graph(const Options& opt, Json& inputs) {
  if (!opt.graph_file.empty()) {
    inputs["graph"] = opt.graph_file;
    return formats::read_graph(formats::read_file(opt.graph_file));
  }
  if (!opt.function_spec.empty()) {
    inputs["function"] = opt.function_spec;
    return realization(load_function(opt.function_spec));
  }
  throw std::invalid_argument("either --graph or --function is required");
}

Json graph_summary(const BipartiteGraph& g) {
  return {{"left", g.left_size()}, {"right", g.right_size()}, {"edges", g.edge_count()}};
}

bool looks_bitwise(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int seen = 0;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string first;
    if (!(words >> first)) continue;
    if (++seen == 2) return first == "n";
  }
  return false;
}

SearchBudget budget_of(const Options& opt) {
  SearchBudget b{opt.dmax, opt.budget_nodes, opt.budget_seconds};
  b.validate();
  return b;
}

std::vector<std::vector<std::size_t>> parse_blocks(const std::string& text, std::size_t n) {
  std::vector<std::vector<std::size_t>> blocks;
  if (text.empty()) {
    for (std::size_t i = 0; i < n; ++i) blocks.push_back({i});
    return blocks;
  }
  std::istringstream in(text);
  for (std::string part; std::getline(in, part, ';');) {
    std::vector<std::size_t> block;
    std::istringstream items(part);
    for (std::string item; std::getline(items, item, ',');) {
      if (item.empty()) continue;
      const auto v = std::stoul(item);
      if (v == 0) throw std::invalid_argument("block variables are numbered from 1");
      block.push_back(v - 1);
    }
    if (!block.empty()) blocks.push_back(std::move(block));
  }
  return blocks;
}

// ---------------------------------------------------------------- commands

int run_gen(const Options& opt) {
  Session s("gen", opt);
  auto& in = s.inputs();
  if (opt.pd_graph) {
    in["pd_graph"] = *opt.pd_graph;
    in["q"] = opt.q;
    const auto g = make_pd_graph(*opt.pd_graph, opt.q);
    const auto text = opt.graph_format == "adjacency" ? formats::write_graph_adjacency(g) : formats::write_graph_edges(g);
    const auto path = s.emit(text, "p" + std::to_string(*opt.pd_graph) + ".g");
    s.results() = graph_summary(g);
    if (path) s.results()["file"] = *path;
    return s.finish(kOk);
  }
  if (opt.family.empty()) throw std::invalid_argument("gen needs --family or --pd-graph");
  const Family family = parse_family(opt.family);
  in["family"] = family_name(family);
  std::string name;
  std::optional<BooleanFunction> f;
  if (family == Family::si) {
    if (opt.d == 0) throw std::invalid_argument("si needs --d");
    in["d"] = opt.d;
    f = make_si(opt.d);
    name = "si" + std::to_string(opt.d);
  } else {
    if (opt.n == 0) throw std::invalid_argument("gen needs --n");
    in["n"] = opt.n;
    std::optional<std::uint64_t> q;
    if (family == Family::pal && opt.q != 2) q = opt.q;
    f = make_named(family, opt.n, q);
    name = family == Family::parity ? "parity" + std::to_string(2 * opt.n) : family_name(family) + std::to_string(opt.n);
  }
  s.results()["name"] = f->name();
  s.results()["bits_per_side"] = f->n();
  std::optional<std::string> path;
  if (opt.emit_bp) {
    const auto bp = family == Family::si || family == Family::ed || family == Family::pal ? build_from_table(*f)
                                                                                          : build_named(family, opt.n);
    path = s.emit(formats::write_program(bp), name + ".bp");
    s.results()["bp_size"] = bp.size();
  } else if (opt.emit_graph) {
    const auto g = realization(*f);
    path = s.emit(opt.graph_format == "adjacency" ? formats::write_graph_adjacency(g) : formats::write_graph_edges(g),
                  name + ".g");
    s.results()["graph"] = graph_summary(g);
  } else {
    path = s.emit(formats::write_function(*f), name + ".fn");
  }
  if (path) s.results()["file"] = *path;
  return s.finish(kOk);
}

int run_transform(const Options& opt) {
  Session s("transform " + opt.mode, opt);
  s.inputs()["bp"] = opt.bp_file;
  const auto bp = formats::read_program(formats::read_file(opt.bp_file));
  auto& r = s.results();
  r["bp_size"] = bp.size();
  r["n"] = bp.n();
  if (opt.mode == "pr") {
    s.inputs()["q"] = opt.q;
    const auto phi = pudlak_rodl_transform(bp, opt.q);
    r["ambient"] = phi.ambient;
    if (auto path = s.emit(formats::write_assignment(phi), stem(opt.bp_file) + ".asg")) r["file"] = *path;
    return s.finish(kOk);
  }
  const auto ex = subdivide_for_bitpdim(bp);
  const auto& ba = ex.assignment;
  const bool within = ba.ambient() <= 6 * bp.size();
  r["ambient"] = ba.ambient();
  r["budget_6s"] = 6 * bp.size();
  r["within_budget"] = within;
  r["subdivided_size"] = ex.program.size();
  if (bp.n() <= 6) {
    const auto report = verify_bitpdim(ba, program_function(bp));
    r["bitpdim"] = {{"realizes", report.realizes},
                    {"difference_spanned", report.difference_spanned},
                    {"left_direct", report.left_direct},
                    {"right_direct", report.right_direct},
                    {"diagnostics", report.diagnostics}};
  }
  if (auto path = s.emit(formats::write_bitwise(ba), stem(opt.bp_file) + ".bwa")) r["file"] = *path;
  return s.finish(within ? kOk : kFailed);
}

int run_verify(const Options& opt) {
  Session s("verify", opt);
  auto& r = s.results();
  if (!opt.bicliques_file.empty()) {
    s.inputs()["bicliques"] = opt.bicliques_file;
    const auto bc = formats::read_bicliques(formats::read_file(opt.bicliques_file));
    const auto g = load_graph(opt, s.inputs());
    const bool covers = covered_graph(bc) == g;
    r["blocks"] = bc.blocks.size();
    r["partition"] = bc.edge_disjoint;
    r["covers"] = covers;
    return s.finish(covers ? kOk : kFailed);
  }
  if (opt.assignment_file.empty()) throw std::invalid_argument("verify needs --assignment or --bicliques");
  s.inputs()["assignment"] = opt.assignment_file;
  const auto text = formats::read_file(opt.assignment_file);
  if (looks_bitwise(text)) {
    const auto ba = formats::read_bitwise(text);
    if (opt.function_spec.empty()) throw std::invalid_argument("bitwise verification needs --function");
    s.inputs()["function"] = opt.function_spec;
    const auto f = load_function(opt.function_spec);
    const auto report = verify_bitpdim(ba, f);
    r["kind"] = "bitwise";
    r["ambient"] = ba.ambient();
    r["realizes"] = report.realizes;
    r["difference_spanned"] = report.difference_spanned;
    r["left_direct"] = report.left_direct;
    r["right_direct"] = report.right_direct;
    r["diagnostics"] = report.diagnostics;
    return s.finish(report.ok() ? kOk : kFailed);
  }
  const auto phi = formats::read_assignment(text);
  const auto g = load_graph(opt, s.inputs());
  if (phi.left.size() > g.left_size() || phi.right.size() > g.right_size()) {
    throw std::invalid_argument("assignment lists more vertices than the graph has");
  }
  ProjectiveAssignment padded = phi;
  padded.left.resize(g.left_size(), gf::Subspace(phi.q, phi.ambient));
  padded.right.resize(g.right_size(), gf::Subspace(phi.q, phi.ambient));
  const bool ok = verify_realizes(padded, g);
  r["kind"] = "projective";
  r["q"] = phi.q;
  r["ambient"] = phi.ambient;
  r["graph"] = graph_summary(g);
  r["realizes"] = ok;
  r["max_intersection_dim"] = max_intersection_dim(padded, g);
  return s.finish(ok ? kOk : kFailed);
}

std::string witness_text(const Witness& w) {
  if (const auto* p = std::get_if<ProjectiveAssignment>(&w)) return formats::write_assignment(*p);
  if (const auto* b = std::get_if<BicliqueCollection>(&w)) return formats::write_bicliques(*b);
  if (const auto* st = std::get_if<StandardAssignment>(&w)) return formats::write_standard(*st);
  return {};
}

int run_solve(const Options& opt) {
  Session s("solve " + opt.mode, opt);
  const auto g = load_graph(opt, s.inputs());
  const auto budget = budget_of(opt);
  s.inputs()["q"] = opt.q;
  s.inputs()["dmax"] = opt.dmax;
  s.inputs()["budget_nodes"] = opt.budget_nodes;
  s.inputs()["budget_seconds"] = opt.budget_seconds;
  SolveResult res;
  if (opt.mode == "pd") res = exact_pd(g, opt.q, budget);
  else if (opt.mode == "upd") res = exact_upd(g, opt.q, budget);
  else if (opt.mode == "bc") res = exact_biclique(g, false, budget);
  else if (opt.mode == "bp") res = exact_biclique(g, true, budget);
  else if (opt.mode == "spd") res = spd(g, budget);
  else res = uspd(g, budget);
  auto& r = s.results();
  r["graph"] = graph_summary(g);
  r["status"] = status_name(res.status);
  r["value"] = res.value;
  r["refuted"] = res.stats.refuted;
  r["nodes"] = res.stats.nodes;
  if (const auto text = witness_text(res.witness); !text.empty()) {
    if (auto path = s.artifact_path("solve-" + opt.mode + "-witness.txt")) {
      formats::write_file_atomic(*path, text);
      r["witness_file"] = *path;
    } else {
      r["witness"] = text;
    }
  }
  return s.finish(res.status == SolveStatus::budget_exceeded ? kBudget : kOk);
}

Json report_json(const BoundReport& b) {
  Json j;
  j["kind"] = b.kind;
  j["target"] = b.target;
  j["value"] = b.value;
  Json q = Json::object();
  for (const auto& [k, v] : b.quantities) q[k] = v;
  j["quantities"] = q;
  if (!b.blocks.empty()) {
    Json blocks = Json::array();
    for (const auto& t : b.blocks) {
      std::vector<std::size_t> vars;
      for (auto v : t.variables) vars.push_back(v + 1);
      blocks.push_back({{"variables", vars}, {"count", t.count}, {"term", t.term}});
    }
    j["blocks"] = blocks;
  }
  j["notes"] = b.notes;
  return j;
}

int run_bound(const Options& opt) {
  Session s("bound " + opt.mode, opt);
  auto& r = s.results();
  if (opt.mode == "updrank" || opt.mode == "pdcount") {
    const auto g = load_graph(opt, s.inputs());
    s.inputs()["q"] = opt.q;
    r = report_json(opt.mode == "updrank" ? upd_rank_bound(g, opt.q) : pd_count_bound(g, opt.q));
    return s.finish(kOk);
  }
  if (opt.mode == "nechiporuk") {
    if (opt.function_spec.empty()) throw std::invalid_argument("nechiporuk needs --function");
    s.inputs()["function"] = opt.function_spec;
    const auto f = load_function(opt.function_spec);
    s.inputs()["blocks"] = opt.blocks;
    const auto report = nechiporuk_bitpdim_bound(f, parse_blocks(opt.blocks, f.n()));
    r = report_json(report);
    if (!opt.csv.empty()) {
      formats::write_file_atomic(opt.csv, nechiporuk_csv(report));
      r["csv_file"] = opt.csv;
    }
    return s.finish(kOk);
  }
  if (opt.mode == "sirestrict") {
    if (opt.d == 0) throw std::invalid_argument("sirestrict needs --d");
    s.inputs()["d"] = opt.d;
    Json rows = Json::array();
    for (std::size_t row = 0; row < opt.d; ++row) {
      if (opt.row && *opt.row != row + 1) continue;
      rows.push_back({{"row", row + 1}, {"count", si_restriction_count(opt.d, row)}});
    }
    r["rows"] = rows;
    r["subspaces"] = gf::subspace_count(opt.d, 2).str();
    return s.finish(kOk);
  }
  if (opt.mode == "pdrank") {
    if (opt.d == 0) throw std::invalid_argument("pdrank needs --d");
    s.inputs()["d"] = opt.d;
    s.inputs()["q"] = opt.q;
    const auto rr = pd_rank_report(opt.d, opt.q);
    r["vertices"] = rr.vertices;
    r["rank"] = rr.rank;
    r["threshold"] = rr.threshold.str();
    r["ok"] = rr.ok();
    return s.finish(rr.ok() ? kOk : kFailed);
  }
  // inclusion: all subspaces of F_q^d on both sides
  if (opt.d == 0) throw std::invalid_argument("inclusion needs --d");
  s.inputs()["d"] = opt.d;
  s.inputs()["q"] = opt.q;
  s.inputs()["i"] = opt.level;
  const auto family = gf::enumerate_subspaces(opt.d, opt.q);
  const auto check = verify_inclusion_factorization(family, family, opt.level);
  r["entrywise"] = check.entrywise;
  r["rank"] = check.rank;
  r["rank_limit"] = check.rank_limit.str();
  r["ok"] = check.ok();
  return s.finish(check.ok() ? kOk : kFailed);
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Projective dimension toolkit"};
  app.set_version_flag("--version", std::string(PROJDIM_VERSION));
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--q", opt.q, "Field size (prime)")->check(CLI::PositiveNumber);
    sub->add_option("--out", opt.out, "Output file for the produced artifact");
    sub->add_option("--report", opt.report, "Also write the JSON report to this file");
  };

  auto* gen = app.add_subcommand("gen", "Generate a function, realization graph, program or P_d graph");
  gen->add_option("--family", opt.family, "eq, ineq, ip, disj, ed, pal, parity or si");
  gen->add_option("--n", opt.n, "Bits per side");
  gen->add_option("--d", opt.d, "Matrix dimension for si");
  gen->add_option("--pd-graph", opt.pd_graph, "Emit the graph P_d for this d");
  gen->add_flag("--graph", opt.emit_graph, "Emit the bipartite realization instead of the truth table");
  gen->add_flag("--bp", opt.emit_bp, "Emit a branching program instead of the truth table");
  gen->add_option("--format", opt.graph_format, "Graph format")->check(CLI::IsMember({"edges", "adjacency"}));
  add_common(gen);

  auto* transform = app.add_subcommand("transform", "Turn a branching program into an assignment");
  transform->add_option("mode", opt.mode, "pr or bitpdim")->required()->check(CLI::IsMember({"pr", "bitpdim"}));
  transform->add_option("--bp", opt.bp_file, "Branching program file")->required();
  add_common(transform);

  auto* verify = app.add_subcommand("verify", "Check an assignment or biclique collection");
  verify->add_option("--assignment", opt.assignment_file, "Projective or bitwise assignment file");
  verify->add_option("--bicliques", opt.bicliques_file, "Biclique collection file");
  verify->add_option("--function", opt.function_spec, "Function file or name such as parity4");
  verify->add_option("--graph", opt.graph_file, "Graph file");
  add_common(verify);

  auto* solve = app.add_subcommand("solve", "Exact solvers");
  solve->add_option("mode", opt.mode, "pd, upd, bc, bp, spd or uspd")
      ->required()
      ->check(CLI::IsMember({"pd", "upd", "bc", "bp", "spd", "uspd"}));
  solve->add_option("--function", opt.function_spec, "Function file or name");
  solve->add_option("--graph", opt.graph_file, "Graph file");
  solve->add_option("--dmax", opt.dmax, "Largest dimension tried");
  solve->add_option("--budget-nodes", opt.budget_nodes, "Search node limit");
  solve->add_option("--budget-seconds", opt.budget_seconds, "Wall-clock limit");
  add_common(solve);

  auto* bound = app.add_subcommand("bound", "Lower bounds");
  bound->add_option("mode", opt.mode, "updrank, pdcount, nechiporuk, sirestrict, inclusion or pdrank")
      ->required()
      ->check(CLI::IsMember({"updrank", "pdcount", "nechiporuk", "sirestrict", "inclusion", "pdrank"}));
  bound->add_option("--function", opt.function_spec, "Function file or name");
  bound->add_option("--graph", opt.graph_file, "Graph file");
  bound->add_option("--blocks", opt.blocks, "Blocks of left variables, e.g. \"1,2;3,4\"");
  bound->add_option("--csv", opt.csv, "Write the per-block table as CSV");
  bound->add_option("--d", opt.d, "Dimension for sirestrict, inclusion and pdrank");
  bound->add_option("--row", opt.row, "Single row for sirestrict (1-based)");
  bound->add_option("--i", opt.level, "Subspace dimension for inclusion");
  add_common(bound);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*gen) return run_gen(opt);
    if (*transform) return run_transform(opt);
    if (*verify) return run_verify(opt);
    if (*solve) return run_solve(opt);
    return run_bound(opt);
  } catch (const projdim::formats::FormatError& e) {
    std::cerr << "projdim: input error: " << e.what() << '\n';
  } catch (const projdim::GuardExceeded& e) {
    std::cerr << "projdim: size guard: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    std::cerr << "projdim: invalid input: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "projdim: error: " << e.what() << '\n';
  }
  return kInput;
}
