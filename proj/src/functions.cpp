#include "projdim/functions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <unordered_set>

namespace projdim {

std::string Variable::name() const {
  return (side == Side::left ? "x" : "y") + std::to_string(index + 1);
}

Family parse_family(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "eq") return Family::eq;
  if (s == "ineq") return Family::ineq;
  if (s == "ip") return Family::ip;
  if (s == "disj") return Family::disj;
  if (s == "ed") return Family::ed;
  if (s == "pal") return Family::pal;
  if (s == "parity") return Family::parity;
  if (s == "si") return Family::si;
  throw std::invalid_argument("unknown function family '" + name + "'");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::eq: return "eq";
    case Family::ineq: return "ineq";
    case Family::ip: return "ip";
    case Family::disj: return "disj";
    case Family::ed: return "ed";
    case Family::pal: return "pal";
    case Family::parity: return "parity";
    case Family::si: return "si";
  }
  return "?";
}

std::string bit_string(std::uint64_t value, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t i = 0; i < width; ++i) {
    if ((value >> (width - 1 - i)) & 1) s[i] = '1';
  }
  return s;
}

// ---------------------------------------------------------------- functions

BooleanFunction::BooleanFunction(std::string name, std::size_t n, Evaluator evaluator)
    : name_(std::move(name)), n_(n), evaluator_(std::move(evaluator)) {
  if (n == 0 || n > 32) throw std::invalid_argument("BooleanFunction: n must be in 1..32");
  if (!evaluator_) throw std::invalid_argument("BooleanFunction: empty evaluator");
}

BooleanFunction BooleanFunction::from_table(std::string name, std::size_t n, std::vector<bool> table) {
  if (n == 0 || n > kDenseLimit) {
    throw std::invalid_argument("BooleanFunction: dense tables need 1 <= n <= " +
                                std::to_string(kDenseLimit));
  }
  if (table.size() != (std::size_t{1} << (2 * n))) {
    throw std::invalid_argument("BooleanFunction: table has " + std::to_string(table.size()) +
                                " entries, expected 2^" + std::to_string(2 * n));
  }
  auto shared = std::make_shared<const std::vector<bool>>(table);
  BooleanFunction f(std::move(name), n,
                    [shared, n](std::uint64_t x, std::uint64_t y) { return (*shared)[(x << n) | y]; });
  f.table_ = std::move(table);
  return f;
}

bool BooleanFunction::operator()(std::uint64_t x, std::uint64_t y) const {
  if (!table_.empty()) return table_[(x << n_) | y];
  return evaluator_(x, y);
}

bool BooleanFunction::eval_bits(const std::vector<int>& bits) const {
  if (bits.size() != 2 * n_) {
    throw std::invalid_argument("eval_bits: expected " + std::to_string(2 * n_) + " bits, got " +
                                std::to_string(bits.size()));
  }
  std::uint64_t x = 0, y = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    x = (x << 1) | (bits[i] & 1);
    y = (y << 1) | (bits[n_ + i] & 1);
  }
  return (*this)(x, y);
}

std::vector<bool> BooleanFunction::truth_table() const {
  if (!table_.empty()) return table_;
  if (n_ > kDenseLimit) {
    throw GuardExceeded("truth_table: n = " + std::to_string(n_) + " exceeds the dense limit");
  }
  const std::uint64_t side = std::uint64_t{1} << n_;
  std::vector<bool> t(side * side);
  for (std::uint64_t x = 0; x < side; ++x) {
    for (std::uint64_t y = 0; y < side; ++y) t[(x << n_) | y] = evaluator_(x, y);
  }
  return t;
}

namespace {

BooleanFunction densify(BooleanFunction f) {
  if (f.n() > 8 || f.has_table()) return f;
  auto table = f.truth_table();
  return BooleanFunction::from_table(f.name(), f.n(), std::move(table));
}

bool quadratic_residue(std::uint64_t a, std::uint64_t q) {
  std::uint64_t result = 1, base = a % q, e = (q - 1) / 2;
  while (e) {
    if (e & 1) result = result * base % q;
    base = base * base % q;
    e >>= 1;
  }
  return result == 1;
}

}  // namespace

std::uint64_t default_paley_modulus(std::size_t n) {
  std::uint64_t q = std::uint64_t{1} << n;
  while (!(q % 4 == 1 && gf::is_prime(q))) ++q;
  return q;
}

std::optional<std::size_t> ed_block_count(std::size_t n) {
  for (std::size_t m = 2, log = 1; m * 2 * log <= n; m *= 2, ++log) {
    if (m * 2 * log == n) return m;
  }
  return std::nullopt;
}

BooleanFunction make_named(Family family, std::size_t n, std::optional<std::uint64_t> q) {
  if (n == 0) throw std::invalid_argument("make_named: n must be positive");
  const std::string suffix = std::to_string(n);
  switch (family) {
    case Family::eq:
      return densify({"eq" + suffix, n, [](std::uint64_t x, std::uint64_t y) { return x == y; }});
    case Family::ineq:
      return densify({"ineq" + suffix, n, [](std::uint64_t x, std::uint64_t y) { return x != y; }});
    case Family::ip:
      return densify({"ip" + suffix, n,
                      [](std::uint64_t x, std::uint64_t y) { return std::popcount(x & y) % 2 == 1; }});
    case Family::disj:
      return densify({"disj" + suffix, n, [](std::uint64_t x, std::uint64_t y) { return (x & y) == 0; }});
    case Family::parity:
      return densify({"parity" + std::to_string(2 * n), n, [](std::uint64_t x, std::uint64_t y) {
                        return (std::popcount(x) + std::popcount(y)) % 2 == 1;
                      }});
    case Family::ed: {
      const auto m = ed_block_count(n);
      if (!m) {
        throw std::invalid_argument("make_named: ED needs n = 2m*log2(m) with m a power of two, got n = " +
                                    suffix);
      }
      const std::size_t width = n / *m;
      const std::uint64_t block_mask = (std::uint64_t{1} << width) - 1;
      const std::size_t blocks = *m;
      return densify({"ed" + suffix, n, [=](std::uint64_t x, std::uint64_t y) {
                        std::vector<std::uint64_t> values;
                        for (std::size_t b = 0; b < blocks; ++b) {
                          const std::size_t shift = n - width * (b + 1);
                          // value + 1 places each block in [m^2]
                          values.push_back(((x >> shift) & block_mask) + 1);
                          values.push_back(((y >> shift) & block_mask) + 1);
                        }
                        std::sort(values.begin(), values.end());
                        return std::adjacent_find(values.begin(), values.end()) == values.end();
                      }});
    }
    case Family::pal: {
      const std::uint64_t modulus = q.value_or(default_paley_modulus(n));
      if (!gf::is_prime(modulus) || modulus % 4 != 1) {
        throw std::invalid_argument("make_named: PAL needs a prime q with q = 1 mod 4, got " +
                                    std::to_string(modulus));
      }
      if (n >= 63 || modulus < (std::uint64_t{1} << n)) {
        throw std::invalid_argument("make_named: PAL needs q >= 2^n");
      }
      return densify({"pal" + suffix + "_" + std::to_string(modulus), n,
                      [modulus](std::uint64_t x, std::uint64_t y) {
                        const std::uint64_t a = x == 0 ? 1 : x;
                        const std::uint64_t b = y == 0 ? 1 : y;
                        if (a == b) return false;
                        return quadratic_residue((a + modulus - b) % modulus, modulus);
                      }});
    }
    case Family::si: {
      const auto d = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n))));
      if (d * d != n) throw std::invalid_argument("make_named: SI needs n = d^2");
      return make_si(d);
    }
  }
  throw std::invalid_argument("make_named: unsupported family");
}

namespace {

std::size_t gf2_rank(std::vector<std::uint64_t> rows) {
  std::size_t rank = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::uint64_t pivot = rows[i];
    if (pivot == 0) continue;
    ++rank;
    const std::uint64_t low = pivot & (~pivot + 1);
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (rows[j] & low) rows[j] ^= pivot;
    }
  }
  return rank;
}

std::vector<std::uint64_t> matrix_rows(std::uint64_t bits, std::size_t d) {
  const std::uint64_t mask = (std::uint64_t{1} << d) - 1;
  std::vector<std::uint64_t> rows(d);
  for (std::size_t r = 0; r < d; ++r) rows[r] = (bits >> (d * d - d * (r + 1))) & mask;
  return rows;
}

}  // namespace

BooleanFunction make_si(std::size_t d) {
  if (d == 0 || d > 5) throw std::invalid_argument("make_si: d must be in 1..5");
  BooleanFunction f("si" + std::to_string(d), d * d, [d](std::uint64_t x, std::uint64_t y) {
    auto a = matrix_rows(x, d);
    auto b = matrix_rows(y, d);
    const std::size_t ra = gf2_rank(a);
    const std::size_t rb = gf2_rank(b);
    a.insert(a.end(), b.begin(), b.end());
    return ra + rb > gf2_rank(a);
  });
  return d <= 3 ? BooleanFunction::from_table(f.name(), f.n(), f.truth_table()) : f;
}

BooleanFunction make_constant(std::size_t n, bool value) {
  return densify({value ? "one" : "zero", n, [value](std::uint64_t, std::uint64_t) { return value; }});
}

BooleanFunction operator|(const BooleanFunction& a, const BooleanFunction& b) {
  if (a.n() != b.n()) throw std::invalid_argument("operator|: input lengths differ");
  return densify({"(" + a.name() + "|" + b.name() + ")", a.n(),
                  [a, b](std::uint64_t x, std::uint64_t y) { return a(x, y) || b(x, y); }});
}

BooleanFunction operator&(const BooleanFunction& a, const BooleanFunction& b) {
  if (a.n() != b.n()) throw std::invalid_argument("operator&: input lengths differ");
  return densify({"(" + a.name() + "&" + b.name() + ")", a.n(),
                  [a, b](std::uint64_t x, std::uint64_t y) { return a(x, y) && b(x, y); }});
}

// ------------------------------------------------------------------- graphs

BipartiteGraph::BipartiteGraph(std::size_t left, std::size_t right)
    : left_(left), right_(right), words_((right + 63) / 64), rows_(left * words_, 0) {}

void BipartiteGraph::set_edge(std::size_t u, std::size_t v, bool present) {
  if (u >= left_ || v >= right_) throw std::out_of_range("BipartiteGraph: vertex out of range");
  const std::uint64_t bit = std::uint64_t{1} << (v % 64);
  if (present) {
    rows_[u * words_ + v / 64] |= bit;
  } else {
    rows_[u * words_ + v / 64] &= ~bit;
  }
}

std::size_t BipartiteGraph::edge_count() const {
  std::size_t total = 0;
  for (auto w : rows_) total += std::popcount(w);
  return total;
}

std::size_t BipartiteGraph::left_degree(std::size_t u) const {
  std::size_t total = 0;
  for (std::size_t k = 0; k < words_; ++k) total += std::popcount(rows_[u * words_ + k]);
  return total;
}

std::size_t BipartiteGraph::right_degree(std::size_t v) const {
  std::size_t total = 0;
  for (std::size_t u = 0; u < left_; ++u) total += has_edge(u, v);
  return total;
}

std::vector<std::size_t> BipartiteGraph::left_neighbors(std::size_t u) const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < right_; ++v) {
    if (has_edge(u, v)) out.push_back(v);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> BipartiteGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < left_; ++u) {
    for (std::size_t v = 0; v < right_; ++v) {
      if (has_edge(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

BipartiteGraph BipartiteGraph::transpose() const {
  BipartiteGraph t(right_, left_);
  for (std::size_t u = 0; u < left_; ++u) {
    for (std::size_t v = 0; v < right_; ++v) {
      if (has_edge(u, v)) t.set_edge(v, u);
    }
  }
  t.left_labels = right_labels;
  t.right_labels = left_labels;
  return t;
}

NeighborhoodClasses neighborhood_classes(const BipartiteGraph& g, Side side) {
  const BipartiteGraph* view = &g;
  BipartiteGraph transposed;
  if (side == Side::right) {
    transposed = g.transpose();
    view = &transposed;
  }
  NeighborhoodClasses out;
  std::vector<std::vector<std::size_t>> seen;
  for (std::size_t u = 0; u < view->left_size(); ++u) {
    auto nb = view->left_neighbors(u);
    auto it = std::find(seen.begin(), seen.end(), nb);
    if (it == seen.end()) {
      out.class_of.push_back(seen.size());
      out.representatives.push_back(u);
      seen.push_back(std::move(nb));
    } else {
      out.class_of.push_back(static_cast<std::size_t>(it - seen.begin()));
    }
  }
  return out;
}

std::size_t distinct_neighborhoods(const BipartiteGraph& g, Side side) {
  return neighborhood_classes(g, side).representatives.size();
}

BipartiteGraph realization(const BooleanFunction& f) {
  if (f.n() > kDenseLimit) {
    throw GuardExceeded("realization: n = " + std::to_string(f.n()) + " exceeds the dense limit");
  }
  const std::size_t side = std::size_t{1} << f.n();
  BipartiteGraph g(side, side);
  for (std::size_t x = 0; x < side; ++x) {
    for (std::size_t y = 0; y < side; ++y) {
      if (f(x, y)) g.set_edge(x, y);
    }
  }
  for (std::size_t i = 0; i < side; ++i) {
    g.left_labels.push_back(bit_string(i, f.n()));
    g.right_labels.push_back(bit_string(i, f.n()));
  }
  return g;
}

gf::IntegerMatrix adjacency(const BipartiteGraph& g) {
  gf::IntegerMatrix m(g.left_size(), g.right_size());
  for (std::size_t u = 0; u < g.left_size(); ++u) {
    for (std::size_t v = 0; v < g.right_size(); ++v) {
      if (g.has_edge(u, v)) m(u, v) = 1;
    }
  }
  return m;
}

BipartiteGraph make_pd_graph(std::size_t d, gf::Element q) {
  const auto spaces = gf::enumerate_subspaces(d, q);
  BipartiteGraph g(spaces.size(), spaces.size());
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    for (std::size_t j = 0; j < spaces.size(); ++j) {
      if (gf::intersection_dim(spaces[i], spaces[j]) > 0) g.set_edge(i, j);
    }
    g.left_labels.push_back(spaces[i].to_string());
  }
  g.right_labels = g.left_labels;
  return g;
}

BipartiteGraph double_for_distinct_neighborhoods(const BipartiteGraph& g) {
  const std::size_t a = g.left_size();
  const std::size_t b = g.right_size();
  if (a != b) throw std::invalid_argument("double_for_distinct_neighborhoods: sides must have equal size");
  BipartiteGraph out(2 * a, 2 * b);
  for (std::size_t u = 0; u < a; ++u) {
    for (std::size_t v = 0; v < b; ++v) {
      if (g.has_edge(u, v)) {
        out.set_edge(u, v);
        out.set_edge(a + u, b + v);
      }
    }
    out.set_edge(u, b + u);
    out.set_edge(a + u, u);
  }
  auto label = [](const std::vector<std::string>& labels, std::size_t i, std::size_t copy) {
    return (i < labels.size() ? labels[i] : std::to_string(i)) + "#" + std::to_string(copy);
  };
  for (std::size_t copy = 1; copy <= 2; ++copy) {
    for (std::size_t u = 0; u < a; ++u) out.left_labels.push_back(label(g.left_labels, u, copy));
    for (std::size_t v = 0; v < b; ++v) out.right_labels.push_back(label(g.right_labels, v, copy));
  }
  return out;
}

BipartiteGraph double_for_distinct_neighborhoods(const BooleanFunction& f) {
  return double_for_distinct_neighborhoods(realization(f));
}

std::size_t subfunction_count(const BooleanFunction& f, const std::vector<std::size_t>& block) {
  const std::size_t n = f.n();
  std::vector<bool> in_block(n, false);
  for (auto i : block) {
    if (i >= n) throw std::invalid_argument("subfunction_count: variable index out of range");
    if (in_block[i]) throw std::invalid_argument("subfunction_count: repeated variable in block");
    in_block[i] = true;
  }
  const std::size_t k = block.size();
  if (2 * n - k > 22) throw GuardExceeded("subfunction_count: more than 2^22 restrictions");
  if (k > 20) throw GuardExceeded("subfunction_count: block larger than 20 variables");

  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i) {
    if (!in_block[i]) rest.push_back(i);
  }
  std::unordered_set<std::vector<bool>> tables;
  const std::uint64_t others = std::uint64_t{1} << (2 * n - k);
  const std::uint64_t inside = std::uint64_t{1} << k;
  for (std::uint64_t o = 0; o < others; ++o) {
    const std::uint64_t y = o & ((std::uint64_t{1} << n) - 1);
    const std::uint64_t rest_bits = o >> n;
    std::uint64_t x_base = 0;
    for (std::size_t r = 0; r < rest.size(); ++r) {
      if ((rest_bits >> (rest.size() - 1 - r)) & 1) x_base |= std::uint64_t{1} << (n - 1 - rest[r]);
    }
    std::vector<bool> table(inside);
    for (std::uint64_t t = 0; t < inside; ++t) {
      std::uint64_t x = x_base;
      for (std::size_t b = 0; b < k; ++b) {
        if ((t >> (k - 1 - b)) & 1) x |= std::uint64_t{1} << (n - 1 - block[b]);
      }
      table[t] = f(x, y);
    }
    tables.insert(std::move(table));
  }
  return tables.size();
}

// -------------------------------------------------------------- restriction

RestrictionMap::RestrictionMap(std::size_t n) : n_(n), values_(2 * n) {}

std::size_t RestrictionMap::slot(Variable v) const {
  if (v.index >= n_) throw std::invalid_argument("RestrictionMap: variable " + v.name() + " out of range");
  return (v.side == Side::left ? 0 : n_) + v.index;
}

void RestrictionMap::fix(Variable v, bool value) { values_[slot(v)] = value; }
void RestrictionMap::release(Variable v) { values_[slot(v)].reset(); }
std::optional<bool> RestrictionMap::value(Variable v) const { return values_[slot(v)]; }

std::vector<Variable> RestrictionMap::free_variables(Side side) const {
  std::vector<Variable> out;
  for (std::size_t i = 0; i < n_; ++i) {
    if (is_free({side, i})) out.push_back({side, i});
  }
  return out;
}

std::vector<Variable> RestrictionMap::free_variables() const {
  auto out = free_variables(Side::left);
  auto right = free_variables(Side::right);
  out.insert(out.end(), right.begin(), right.end());
  return out;
}

std::uint64_t RestrictionMap::complete(Side side, std::uint64_t bits) const {
  const auto free = free_variables(side);
  std::uint64_t packed = 0;
  std::size_t next = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    bool bit;
    if (auto v = value({side, i})) {
      bit = *v;
    } else {
      bit = (bits >> (free.size() - 1 - next)) & 1;
      ++next;
    }
    if (bit) packed |= std::uint64_t{1} << (n_ - 1 - i);
  }
  return packed;
}

BipartiteGraph restricted_realization(const BooleanFunction& f, const RestrictionMap& rho) {
  if (rho.n() != f.n()) throw std::invalid_argument("restricted_realization: restriction size mismatch");
  const auto lf = rho.free_variables(Side::left).size();
  const auto rf = rho.free_variables(Side::right).size();
  if (lf > kDenseLimit || rf > kDenseLimit) throw GuardExceeded("restricted_realization: too many free variables");
  BipartiteGraph g(std::size_t{1} << lf, std::size_t{1} << rf);
  for (std::size_t a = 0; a < g.left_size(); ++a) {
    const auto x = rho.complete(Side::left, a);
    for (std::size_t b = 0; b < g.right_size(); ++b) {
      if (f(x, rho.complete(Side::right, b))) g.set_edge(a, b);
    }
  }
  for (std::size_t a = 0; a < g.left_size(); ++a) g.left_labels.push_back(bit_string(a, lf));
  for (std::size_t b = 0; b < g.right_size(); ++b) g.right_labels.push_back(bit_string(b, rf));
  return g;
}

}  // namespace projdim
