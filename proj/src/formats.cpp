#include "projdim/formats.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <unistd.h>

namespace projdim::formats {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    Line line{number, {}};
    for (std::string w; words >> w;) line.tokens.push_back(w);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw FormatError("line " + std::to_string(line) + ": " + what);
}

std::uint64_t to_number(const std::string& token, std::size_t line) {
  if (token.empty() || !std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); })) {
    fail(line, "expected a number, got '" + token + "'");
  }
  try {
    return std::stoull(token);
  } catch (const std::exception&) {
    fail(line, "number out of range: '" + token + "'");
  }
}

class Cursor {
 public:
  explicit Cursor(std::vector<Line> lines) : lines_(std::move(lines)) {}
  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const { return lines_.at(pos_); }
  const Line& next() {
    if (done()) throw FormatError("unexpected end of input");
    return lines_[pos_++];
  }
  std::size_t last_line() const { return lines_.empty() ? 0 : lines_.back().number; }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

gf::Vector read_row(const Line& line, std::size_t cols, gf::Element q) {
  gf::Vector row;
  if (line.tokens.size() == 1 && cols > 1 && line.tokens[0].size() == cols && q <= 10) {
    for (char c : line.tokens[0]) {
      if (!std::isdigit(static_cast<unsigned char>(c))) fail(line.number, "bad matrix entry");
      row.push_back(static_cast<gf::Element>(c - '0'));
    }
  } else {
    for (const auto& t : line.tokens) row.push_back(static_cast<gf::Element>(to_number(t, line.number)));
  }
  if (row.size() != cols) {
    fail(line.number, "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
  }
  for (auto v : row) {
    if (v >= q) fail(line.number, "entry " + std::to_string(v) + " is not reduced mod " + std::to_string(q));
  }
  return row;
}

void write_rows(std::ostringstream& out, const gf::FieldMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m(r, c);
    out << '\n';
  }
}

std::vector<gf::Vector> read_block(Cursor& cur, std::size_t k, std::size_t cols, gf::Element q) {
  std::vector<gf::Vector> rows;
  for (std::size_t i = 0; i < k; ++i) rows.push_back(read_row(cur.next(), cols, q));
  return rows;
}

std::pair<gf::Element, std::size_t> read_header(Cursor& cur) {
  const auto& h = cur.next();
  if (h.tokens.size() != 2) fail(h.number, "expected header 'q d'");
  const auto q = to_number(h.tokens[0], h.number);
  if (!gf::is_prime(q) || q > 0xffffffffULL) fail(h.number, "modulus must be a prime");
  return {static_cast<gf::Element>(q), to_number(h.tokens[1], h.number)};
}

Variable parse_variable(const std::string& token, std::size_t line) {
  if (token.size() < 2 || (token[0] != 'x' && token[0] != 'y')) fail(line, "bad variable '" + token + "'");
  const auto index = to_number(token.substr(1), line);
  if (index == 0) fail(line, "variables are numbered from 1");
  return {token[0] == 'x' ? Side::left : Side::right, index - 1};
}

}  // namespace

// ------------------------------------------------------------------ matrices

std::string write_matrix(const gf::FieldMatrix& m) {
  std::ostringstream out;
  out << m.modulus() << ' ' << m.rows() << ' ' << m.cols() << '\n';
  write_rows(out, m);
  return out.str();
}

gf::FieldMatrix read_matrix(const std::string& text) {
  Cursor cur(tokenize(text));
  const auto& h = cur.next();
  if (h.tokens.size() != 3) fail(h.number, "expected header 'q rows cols'");
  const auto q = to_number(h.tokens[0], h.number);
  if (!gf::is_prime(q)) fail(h.number, "modulus must be a prime");
  const auto rows = to_number(h.tokens[1], h.number);
  const auto cols = to_number(h.tokens[2], h.number);
  gf::FieldMatrix m(static_cast<gf::Element>(q), cols, read_block(cur, rows, cols, static_cast<gf::Element>(q)));
  if (!cur.done()) fail(cur.peek().number, "trailing content after matrix");
  return m;
}

// ----------------------------------------------------------------- functions

std::string write_function(const BooleanFunction& f) {
  const auto table = f.truth_table();
  const std::size_t side = std::size_t{1} << f.n();
  std::ostringstream out;
  out << "# " << f.name() << '\n' << f.n() << '\n';
  for (std::size_t x = 0; x < side; ++x) {
    for (std::size_t y = 0; y < side; ++y) out << (table[(x << f.n()) | y] ? '1' : '0');
    out << '\n';
  }
  return out.str();
}

BooleanFunction function_from_spec(const std::string& spec) {
  std::smatch m;
  static const std::regex full(R"(family:([a-zA-Z]+):(\d+)(?::(\d+))?)");
  static const std::regex compact(R"(([a-zA-Z]+)(\d+))");
  std::string name;
  std::size_t param = 0;
  std::optional<std::uint64_t> q;
  if (std::regex_match(spec, m, full)) {
    name = m[1];
    param = std::stoul(m[2]);
    if (m[3].matched) q = std::stoull(m[3]);
  } else if (std::regex_match(spec, m, compact)) {
    name = m[1];
    param = std::stoul(m[2]);
    if (parse_family(name) == Family::parity) {
      if (param % 2 != 0 || param == 0) throw FormatError("parity needs an even, positive number of bits");
      param /= 2;
    }
  } else {
    throw FormatError("unrecognised function specification '" + spec + "'");
  }
  const Family family = parse_family(name);
  if (family == Family::si) return make_si(param);
  return make_named(family, param, q);
}

BooleanFunction read_function(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw FormatError("empty function file");
  if (lines.size() == 1 && lines[0].tokens.size() == 1 && lines[0].tokens[0].rfind("family:", 0) == 0) {
    return function_from_spec(lines[0].tokens[0]);
  }
  Cursor cur(std::move(lines));
  const auto& h = cur.next();
  if (h.tokens.size() != 1) fail(h.number, "expected header 'n'");
  const auto n = to_number(h.tokens[0], h.number);
  if (n == 0 || n > kDenseLimit) fail(h.number, "n must be in 1.." + std::to_string(kDenseLimit));
  const std::size_t side = std::size_t{1} << n;
  std::vector<bool> table(side * side);
  for (std::size_t x = 0; x < side; ++x) {
    const auto& line = cur.next();
    std::string bits;
    for (const auto& t : line.tokens) bits += t;
    if (bits.size() != side) fail(line.number, "expected " + std::to_string(side) + " bits");
    for (std::size_t y = 0; y < side; ++y) {
      if (bits[y] != '0' && bits[y] != '1') fail(line.number, "bits must be 0 or 1");
      table[(x << n) | y] = bits[y] == '1';
    }
  }
  if (!cur.done()) fail(cur.peek().number, "trailing content after truth table");
  return BooleanFunction::from_table("table" + std::to_string(n), n, std::move(table));
}

// -------------------------------------------------------------------- graphs

std::string write_graph_adjacency(const BipartiteGraph& g) {
  std::ostringstream out;
  out << g.left_size() << ' ' << g.right_size() << '\n';
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    for (std::size_t v = 0; v < g.right_size(); ++v) out << (g.has_edge(u, v) ? '1' : '0');
    out << '\n';
  }
  return out.str();
}

std::string write_graph_edges(const BipartiteGraph& g) {
  std::ostringstream out;
  for (std::size_t u = 0; u < g.left_labels.size(); ++u) out << "# left " << u << ' ' << g.left_labels[u] << '\n';
  for (std::size_t v = 0; v < g.right_labels.size(); ++v) out << "# right " << v << ' ' << g.right_labels[v] << '\n';
  out << "edges " << g.left_size() << ' ' << g.right_size() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

BipartiteGraph read_graph(const std::string& text) {
  Cursor cur(tokenize(text));
  const auto& h = cur.next();
  if (!h.tokens.empty() && h.tokens[0] == "edges") {
    if (h.tokens.size() != 4) fail(h.number, "expected 'edges L R m'");
    BipartiteGraph g(to_number(h.tokens[1], h.number), to_number(h.tokens[2], h.number));
    const auto m = to_number(h.tokens[3], h.number);
    for (std::uint64_t i = 0; i < m; ++i) {
      const auto& line = cur.next();
      if (line.tokens.size() != 2) fail(line.number, "expected 'u v'");
      const auto u = to_number(line.tokens[0], line.number);
      const auto v = to_number(line.tokens[1], line.number);
      if (u >= g.left_size() || v >= g.right_size()) fail(line.number, "vertex out of range");
      g.set_edge(u, v);
    }
    if (!cur.done()) fail(cur.peek().number, "trailing content after edge list");
    return g;
  }
  if (h.tokens.size() != 2) fail(h.number, "expected 'L R' or 'edges L R m'");
  BipartiteGraph g(to_number(h.tokens[0], h.number), to_number(h.tokens[1], h.number));
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    const auto row = read_row(cur.next(), g.right_size(), 2);
    for (std::size_t v = 0; v < g.right_size(); ++v) {
      if (row[v]) g.set_edge(u, v);
    }
  }
  if (!cur.done()) fail(cur.peek().number, "trailing content after adjacency rows");
  return g;
}

// ---------------------------------------------------------- branching programs

std::string write_program(const BranchingProgram& bp) {
  std::ostringstream out;
  out << "vars " << bp.n() << '\n';
  for (std::size_t i = 0; i < bp.size(); ++i) {
    if (const auto& v = bp.node(i).var) out << "node " << i << ' ' << v->name() << '\n';
  }
  for (std::size_t i = 0; i < bp.size(); ++i) {
    if (!bp.node(i).var) continue;
    for (int b = 0; b < 2; ++b) out << "edge " << i << ' ' << b << ' ' << bp.node(i).next[b] << '\n';
  }
  out << "start " << bp.start() << '\n' << "accept " << bp.accept() << '\n' << "reject " << bp.reject() << '\n';
  return out.str();
}

BranchingProgram read_program(const std::string& text) {
  std::map<std::string, std::size_t> ids;
  std::vector<BPNode> nodes;
  std::vector<std::array<bool, 2>> has_edge;
  auto id_of = [&](const std::string& token) {
    auto [it, fresh] = ids.emplace(token, nodes.size());
    if (fresh) {
      nodes.emplace_back();
      has_edge.push_back({false, false});
    }
    return it->second;
  };
  std::optional<std::size_t> n, start, accept, reject;
  std::size_t max_index = 0;
  for (const auto& line : tokenize(text)) {
    const auto& t = line.tokens;
    if (t[0] == "vars" && t.size() == 2) {
      n = to_number(t[1], line.number);
    } else if (t[0] == "node" && t.size() == 3) {
      const auto id = id_of(t[1]);
      if (nodes[id].var) fail(line.number, "node '" + t[1] + "' labeled twice");
      nodes[id].var = parse_variable(t[2], line.number);
      max_index = std::max(max_index, nodes[id].var->index + 1);
    } else if (t[0] == "edge" && t.size() == 4) {
      const auto from = id_of(t[1]);
      const auto bit = to_number(t[2], line.number);
      if (bit > 1) fail(line.number, "edge bit must be 0 or 1");
      const auto to = id_of(t[3]);
      if (has_edge[from][bit]) fail(line.number, "duplicate " + std::to_string(bit) + "-edge at '" + t[1] + "'");
      has_edge[from][bit] = true;
      nodes[from].next[bit] = to;
    } else if ((t[0] == "start" || t[0] == "accept" || t[0] == "reject") && t.size() == 2) {
      auto& slot = t[0] == "start" ? start : (t[0] == "accept" ? accept : reject);
      if (slot) fail(line.number, "duplicate '" + t[0] + "'");
      slot = id_of(t[1]);
    } else {
      fail(line.number, "unrecognised line");
    }
  }
  if (!start || !accept || !reject) throw FormatError("program needs start, accept and reject lines");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].var && !(has_edge[i][0] && has_edge[i][1])) {
      throw FormatError("labeled node " + std::to_string(i) + " is missing an out-edge");
    }
    if (!nodes[i].var && (has_edge[i][0] || has_edge[i][1])) {
      throw FormatError("unlabeled node " + std::to_string(i) + " has out-edges");
    }
  }
  return BranchingProgram(n.value_or(max_index), std::move(nodes), *start, *accept, *reject);
}

// --------------------------------------------------------------- assignments

std::string write_assignment(const ProjectiveAssignment& phi) {
  std::ostringstream out;
  out << phi.q << ' ' << phi.ambient << '\n';
  for (Side side : {Side::left, Side::right}) {
    const auto& spaces = side == Side::left ? phi.left : phi.right;
    for (std::size_t i = 0; i < spaces.size(); ++i) {
      out << (side == Side::left ? "left " : "right ") << i << ' ' << spaces[i].dim() << '\n';
      write_rows(out, spaces[i].basis());
    }
  }
  return out.str();
}

ProjectiveAssignment read_assignment(const std::string& text) {
  Cursor cur(tokenize(text));
  const auto [q, d] = read_header(cur);
  std::map<std::size_t, gf::Subspace> left, right;
  while (!cur.done()) {
    const auto& h = cur.next();
    if (h.tokens.size() != 3 || (h.tokens[0] != "left" && h.tokens[0] != "right")) {
      fail(h.number, "expected 'left <vertex> <k>' or 'right <vertex> <k>'");
    }
    auto& target = h.tokens[0] == "left" ? left : right;
    const auto vertex = to_number(h.tokens[1], h.number);
    const auto k = to_number(h.tokens[2], h.number);
    if (target.count(vertex)) fail(h.number, "vertex listed twice");
    target.emplace(vertex, gf::Subspace::span(q, d, read_block(cur, k, d, q)));
  }
  ProjectiveAssignment phi{q, d, {}, {}};
  auto fill = [&](std::map<std::size_t, gf::Subspace>& src, std::vector<gf::Subspace>& dst) {
    const std::size_t count = src.empty() ? 0 : src.rbegin()->first + 1;
    dst.assign(count, gf::Subspace(q, d));
    for (auto& [i, s] : src) dst[i] = std::move(s);
  };
  fill(left, phi.left);
  fill(right, phi.right);
  return phi;
}

std::string write_bitwise(const BitwiseAssignment& ba) {
  std::ostringstream out;
  out << ba.q() << ' ' << ba.ambient() << '\n' << "n " << ba.n() << '\n';
  for (Side side : {Side::left, Side::right}) {
    for (std::size_t i = 0; i < ba.n(); ++i) {
      for (int a = 0; a < 2; ++a) {
        const auto& s = ba.literal(side, i, a);
        out << (side == Side::left ? "U " : "V ") << i + 1 << ' ' << a << ' ' << s.dim() << '\n';
        write_rows(out, s.basis());
      }
    }
  }
  return out.str();
}

BitwiseAssignment read_bitwise(const std::string& text) {
  Cursor cur(tokenize(text));
  const auto [q, d] = read_header(cur);
  if (q != 2) throw FormatError("bitwise assignments are over F_2");
  const auto& nl = cur.next();
  if (nl.tokens.size() != 2 || nl.tokens[0] != "n") fail(nl.number, "expected 'n <n>'");
  const auto n = to_number(nl.tokens[1], nl.number);
  if (n == 0) fail(nl.number, "n must be positive");
  BitwiseAssignment ba(n, d);
  while (!cur.done()) {
    const auto& h = cur.next();
    if (h.tokens.size() != 4 || (h.tokens[0] != "U" && h.tokens[0] != "V")) {
      fail(h.number, "expected 'U <i> <a> <k>' or 'V <j> <b> <k>'");
    }
    const auto i = to_number(h.tokens[1], h.number);
    const auto a = to_number(h.tokens[2], h.number);
    const auto k = to_number(h.tokens[3], h.number);
    if (i == 0 || i > n || a > 1) fail(h.number, "literal out of range");
    ba.set_literal(h.tokens[0] == "U" ? Side::left : Side::right, i - 1, static_cast<int>(a),
                   gf::Subspace::span(2, d, read_block(cur, k, d, 2)));
  }
  return ba;
}

std::string write_bicliques(const BicliqueCollection& bc) {
  std::ostringstream out;
  out << "bicliques " << bc.left_size << ' ' << bc.right_size << ' ' << bc.blocks.size() << ' '
      << (bc.edge_disjoint ? "partition" : "cover") << '\n';
  for (const auto& b : bc.blocks) {
    for (auto u : b.left) out << u << ' ';
    out << '|';
    for (auto v : b.right) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

BicliqueCollection read_bicliques(const std::string& text) {
  Cursor cur(tokenize(text));
  const auto& h = cur.next();
  if (h.tokens.size() != 5 || h.tokens[0] != "bicliques" || (h.tokens[4] != "cover" && h.tokens[4] != "partition")) {
    fail(h.number, "expected 'bicliques L R k cover|partition'");
  }
  BicliqueCollection bc;
  bc.left_size = to_number(h.tokens[1], h.number);
  bc.right_size = to_number(h.tokens[2], h.number);
  bc.edge_disjoint = h.tokens[4] == "partition";
  const auto k = to_number(h.tokens[3], h.number);
  for (std::uint64_t i = 0; i < k; ++i) {
    const auto& line = cur.next();
    Biclique b;
    bool right = false;
    for (const auto& t : line.tokens) {
      if (t == "|") {
        if (right) fail(line.number, "more than one '|'");
        right = true;
        continue;
      }
      (right ? b.right : b.left).push_back(to_number(t, line.number));
    }
    if (!right) fail(line.number, "missing '|'");
    bc.blocks.push_back(std::move(b));
  }
  bc.validate();
  return bc;
}

std::string write_standard(const StandardAssignment& sa) {
  std::ostringstream out;
  out << "standard " << sa.ambient << ' ' << sa.left.size() << ' ' << sa.right.size() << '\n';
  for (Side side : {Side::left, Side::right}) {
    const auto& sets = side == Side::left ? sa.left : sa.right;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      out << (side == Side::left ? "left " : "right ") << i;
      for (auto k : sets[i]) out << ' ' << k;
      out << '\n';
    }
  }
  return out.str();
}

// --------------------------------------------------------------------- files

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path temp = target.string() + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + temp.string() + "'");
    out << contents;
    if (!out.flush()) throw std::runtime_error("write failed for '" + temp.string() + "'");
  }
  fs::rename(temp, target);
}

}  // namespace projdim::formats
