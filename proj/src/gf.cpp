#include "projdim/gf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

namespace projdim::gf {

bool is_prime(std::uint64_t value) {
  if (value < 2) return false;
  if (value % 2 == 0) return value == 2;
  for (std::uint64_t d = 3; d * d <= value; d += 2) {
    if (value % d == 0) return false;
  }
  return true;
}

FieldMatrix::FieldMatrix(Element q, std::size_t rows, std::size_t cols)
    : q_(q), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  if (q < 2) throw std::invalid_argument("FieldMatrix: modulus must be at least 2");
}

FieldMatrix::FieldMatrix(Element q, std::size_t cols, const std::vector<Vector>& rows)
    : FieldMatrix(q, 0, cols) {
  for (const auto& r : rows) append_row(r);
}

FieldMatrix FieldMatrix::identity(Element q, std::size_t n) {
  FieldMatrix m(q, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

void FieldMatrix::set(std::size_t r, std::size_t c, std::uint64_t value) {
  data_[r * cols_ + c] = static_cast<Element>(value % q_);
}

void FieldMatrix::append_row(std::span<const Element> values) {
  if (values.size() != cols_) {
    throw std::invalid_argument("FieldMatrix: row has " + std::to_string(values.size()) +
                                " entries, expected " + std::to_string(cols_));
  }
  for (Element v : values) data_.push_back(v % q_);
  ++rows_;
}

void FieldMatrix::truncate_rows(std::size_t rows) {
  if (rows >= rows_) return;
  rows_ = rows;
  data_.resize(rows_ * cols_);
}

namespace {

Element inverse_mod(Element a, Element q) {
  // Fermat: a^(q-2) mod q.
  std::uint64_t result = 1;
  std::uint64_t base = a % q;
  std::uint64_t e = q - 2;
  while (e > 0) {
    if (e & 1) result = result * base % q;
    base = base * base % q;
    e >>= 1;
  }
  return static_cast<Element>(result);
}

std::vector<std::size_t> reduce_gf2(FieldMatrix& m, std::size_t pivot_cols) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t words = (cols + 63) / 64;
  std::vector<std::uint64_t> bits(rows * words, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (m(r, c)) bits[r * words + c / 64] |= std::uint64_t{1} << (c % 64);
    }
  }

  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < pivot_cols && rank < rows; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    std::size_t found = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (bits[r * words + w] & mask) {
        found = r;
        break;
      }
    }
    if (found == rows) continue;
    if (found != rank) {
      std::swap_ranges(bits.begin() + found * words, bits.begin() + (found + 1) * words,
                       bits.begin() + rank * words);
    }
    const std::uint64_t* pivot_row = bits.data() + rank * words;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      std::uint64_t* target = bits.data() + r * words;
      if (target[w] & mask) {
        for (std::size_t k = w; k < words; ++k) target[k] ^= pivot_row[k];
      }
    }
    pivots.push_back(c);
    ++rank;
  }

  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m.set(r, c, (bits[r * words + c / 64] >> (c % 64)) & 1);
    }
  }
  return pivots;
}

std::vector<std::size_t> reduce_gfp(FieldMatrix& m, std::size_t pivot_cols) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::uint64_t q = m.modulus();
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < pivot_cols && rank < rows; ++c) {
    std::size_t found = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (m(r, c) != 0) {
        found = r;
        break;
      }
    }
    if (found == rows) continue;
    if (found != rank) {
      auto a = m.row(found);
      auto b = m.row(rank);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    auto pivot_row = m.row(rank);
    const Element inv = inverse_mod(pivot_row[c], static_cast<Element>(q));
    for (std::size_t k = c; k < cols; ++k) {
      pivot_row[k] = static_cast<Element>(std::uint64_t{pivot_row[k]} * inv % q);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      auto target = m.row(r);
      const std::uint64_t factor = target[c];
      if (factor == 0) continue;
      for (std::size_t k = c; k < cols; ++k) {
        target[k] = static_cast<Element>((target[k] + (q - factor) * pivot_row[k]) % q);
      }
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

// Row-reduces m in place, choosing pivots only among columns [0, pivot_cols).
std::vector<std::size_t> reduce_in_place(FieldMatrix& m, std::size_t pivot_cols) {
  if (m.modulus() == 2) return reduce_gf2(m, pivot_cols);
  return reduce_gfp(m, pivot_cols);
}

void require_prime(Element q) {
  if (!is_prime(q)) {
    throw std::invalid_argument("modulus " + std::to_string(q) + " is not prime");
  }
}

void require_compatible(const Subspace& a, const Subspace& b, const char* op) {
  if (a.field() != b.field()) {
    throw std::invalid_argument(std::string(op) + ": field mismatch");
  }
  if (a.ambient() != b.ambient()) {
    throw std::invalid_argument(std::string(op) + ": ambient dimension mismatch (" +
                                std::to_string(a.ambient()) + " vs " +
                                std::to_string(b.ambient()) + ")");
  }
}

FieldMatrix stack(const FieldMatrix& a, const FieldMatrix& b) {
  FieldMatrix out(a.modulus(), 0, a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) out.append_row(a.row(r));
  for (std::size_t r = 0; r < b.rows(); ++r) out.append_row(b.row(r));
  return out;
}

// Rows (a_i | a_i) followed by (b_j | 0); reducing on the left half exposes
// a ∩ b in the right halves of the rows whose left half vanishes.
FieldMatrix zassenhaus_block(const Subspace& a, const Subspace& b) {
  const std::size_t d = a.ambient();
  FieldMatrix block(a.field(), a.dim() + b.dim(), 2 * d);
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      block.set(r, c, a.basis()(r, c));
      block.set(r, d + c, a.basis()(r, c));
    }
  }
  for (std::size_t r = 0; r < b.dim(); ++r) {
    for (std::size_t c = 0; c < d; ++c) block.set(a.dim() + r, c, b.basis()(r, c));
  }
  return block;
}

}  // namespace

Echelon rref(const FieldMatrix& m) {
  require_prime(m.modulus());
  Echelon result{m, 0, {}};
  result.pivots = reduce_in_place(result.matrix, m.cols());
  result.rank = result.pivots.size();
  return result;
}

Subspace::Subspace(Element q, std::size_t ambient) : basis_(q, 0, ambient) { require_prime(q); }

Subspace::Subspace(FieldMatrix canonical_basis, std::vector<std::size_t> pivots)
    : basis_(std::move(canonical_basis)), pivots_(std::move(pivots)) {}

Subspace Subspace::full(Element q, std::size_t ambient) {
  return row_space(FieldMatrix::identity(q, ambient));
}

Subspace Subspace::span(Element q, std::size_t ambient, const std::vector<Vector>& vectors) {
  return row_space(FieldMatrix(q, ambient, vectors));
}

Vector Subspace::reduce(std::span<const Element> v) const {
  if (v.size() != ambient()) {
    throw std::invalid_argument("Subspace: vector length does not match ambient dimension");
  }
  const std::uint64_t q = field();
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<Element>(v[i] % q);
  for (std::size_t r = 0; r < dim(); ++r) {
    const std::uint64_t coeff = out[pivots_[r]];
    if (coeff == 0) continue;
    auto row = basis_.row(r);
    for (std::size_t c = pivots_[r]; c < out.size(); ++c) {
      out[c] = static_cast<Element>((out[c] + (q - coeff) * row[c]) % q);
    }
  }
  return out;
}

bool Subspace::contains(std::span<const Element> v) const { return is_zero_vector(reduce(v)); }

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
  if (auto c = a.field() <=> b.field(); c != 0) return c;
  if (auto c = a.ambient() <=> b.ambient(); c != 0) return c;
  if (auto c = a.dim() <=> b.dim(); c != 0) return c;
  const auto& x = a.basis_.data();
  const auto& y = b.basis_.data();
  return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
}

std::string Subspace::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t r = 0; r < dim(); ++r) {
    if (r) out << ';';
    for (std::size_t c = 0; c < ambient(); ++c) {
      if (field() > 10 && c) out << ',';
      out << basis_(r, c);
    }
  }
  out << ']';
  return out.str();
}

Subspace row_space(const FieldMatrix& m) {
  Echelon e = rref(m);
  e.matrix.truncate_rows(e.rank);
  return Subspace(std::move(e.matrix), std::move(e.pivots));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  require_compatible(a, b, "intersect");
  const std::size_t d = a.ambient();
  FieldMatrix block = zassenhaus_block(a, b);
  const std::size_t rank = reduce_in_place(block, d).size();
  FieldMatrix meet(a.field(), 0, d);
  for (std::size_t r = rank; r < block.rows(); ++r) {
    meet.append_row(block.row(r).subspan(d, d));
  }
  return row_space(meet);
}

std::size_t intersection_dim(const Subspace& a, const Subspace& b) {
  require_compatible(a, b, "intersection_dim");
  if (a.is_zero() || b.is_zero()) return 0;
  FieldMatrix both = stack(a.basis(), b.basis());
  const std::size_t rank = reduce_in_place(both, both.cols()).size();
  return a.dim() + b.dim() - rank;
}

Subspace sum(const Subspace& a, const Subspace& b) {
  require_compatible(a, b, "sum");
  return row_space(stack(a.basis(), b.basis()));
}

Subspace sum(std::span<const Subspace> parts, Element q, std::size_t ambient) {
  FieldMatrix all(q, 0, ambient);
  for (const auto& p : parts) {
    if (p.field() != q || p.ambient() != ambient) {
      throw std::invalid_argument("sum: field or ambient mismatch");
    }
    for (std::size_t r = 0; r < p.dim(); ++r) all.append_row(p.basis().row(r));
  }
  return row_space(all);
}

Subspace direct_sum(const Subspace& a, const Subspace& b) {
  if (a.field() != b.field()) throw std::invalid_argument("direct_sum: field mismatch");
  const std::size_t da = a.ambient();
  const std::size_t d = da + b.ambient();
  FieldMatrix m(a.field(), a.dim() + b.dim(), d);
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = 0; c < da; ++c) m.set(r, c, a.basis()(r, c));
  }
  for (std::size_t r = 0; r < b.dim(); ++r) {
    for (std::size_t c = 0; c < b.ambient(); ++c) m.set(a.dim() + r, da + c, b.basis()(r, c));
  }
  return row_space(m);
}

Subspace tensor(const Subspace& a, const Subspace& b) {
  if (a.field() != b.field()) throw std::invalid_argument("tensor: field mismatch");
  const std::uint64_t q = a.field();
  const std::size_t db = b.ambient();
  FieldMatrix m(a.field(), a.dim() * b.dim(), a.ambient() * db);
  std::size_t out = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j, ++out) {
      for (std::size_t s = 0; s < a.ambient(); ++s) {
        const std::uint64_t x = a.basis()(i, s);
        if (x == 0) continue;
        for (std::size_t t = 0; t < db; ++t) m.set(out, s * db + t, x * b.basis()(j, t) % q);
      }
    }
  }
  return row_space(m);
}

Vector project(std::span<const Element> w, const Subspace& a, const Subspace& b) {
  require_compatible(a, b, "project");
  const std::size_t d = a.ambient();
  if (w.size() != d) throw std::invalid_argument("project: vector length mismatch");
  if (intersection_dim(a, b) != 0) {
    throw std::invalid_argument("project: subspaces intersect nontrivially");
  }
  const std::uint64_t q = a.field();
  FieldMatrix block = zassenhaus_block(a, b);
  const auto pivots = reduce_in_place(block, d);

  Vector v(2 * d, 0);
  for (std::size_t c = 0; c < d; ++c) v[c] = w[c] % q;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    const std::uint64_t coeff = v[pivots[r]];
    if (coeff == 0) continue;
    auto row = block.row(r);
    for (std::size_t c = 0; c < 2 * d; ++c) {
      v[c] = static_cast<Element>((v[c] + (q - coeff) * row[c]) % q);
    }
  }
  if (!is_zero_vector(std::span<const Element>(v).first(d))) {
    throw std::invalid_argument("project: vector is not in a + b");
  }
  // v's right half now holds -(component in a).
  Vector u(d);
  for (std::size_t c = 0; c < d; ++c) u[c] = static_cast<Element>((q - v[d + c]) % q);
  return u;
}

std::vector<Subspace> enumerate_subspaces(std::size_t d, Element q, std::optional<std::size_t> dim) {
  require_prime(q);
  if (static_cast<double>(d) * std::log2(static_cast<double>(q)) > 20.0 + 1e-9) {
    throw GuardExceeded("enumerate_subspaces: q^d exceeds 2^20");
  }
  const BigInt total = dim ? gaussian_coeff(d, *dim, q) : subspace_count(d, q);
  if (total > BigInt(1) << 22) {
    throw GuardExceeded("enumerate_subspaces: more than 2^22 subspaces");
  }

  std::vector<Subspace> out;
  const std::size_t k_lo = dim.value_or(0);
  const std::size_t k_hi = dim ? std::min(*dim, d) : d;
  if (dim && *dim > d) return out;

  for (std::size_t k = k_lo; k <= k_hi; ++k) {
    // Walk all pivot sets of size k in lexicographic order.
    std::vector<std::size_t> piv(k);
    std::iota(piv.begin(), piv.end(), 0);
    while (true) {
      std::vector<bool> is_pivot(d, false);
      for (auto p : piv) is_pivot[p] = true;
      std::vector<std::pair<std::size_t, std::size_t>> free_cells;
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = piv[r] + 1; c < d; ++c) {
          if (!is_pivot[c]) free_cells.emplace_back(r, c);
        }
      }
      std::vector<Element> digits(free_cells.size(), 0);
      while (true) {
        FieldMatrix m(q, k, d);
        for (std::size_t r = 0; r < k; ++r) m.set(r, piv[r], 1);
        for (std::size_t i = 0; i < free_cells.size(); ++i) {
          m.set(free_cells[i].first, free_cells[i].second, digits[i]);
        }
        out.push_back(row_space(m));
        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == q) digits[i++] = 0;
        if (i == digits.size()) break;
      }
      // Next combination.
      std::size_t i = k;
      while (i > 0 && piv[i - 1] == d - k + i - 1) --i;
      if (i == 0) break;
      ++piv[i - 1];
      for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

BigInt gaussian_coeff(std::uint64_t n, std::uint64_t k, std::uint64_t q) {
  if (k == 0) return 1;
  if (n < k) return 0;
  BigInt num = 1;
  BigInt den = 1;
  BigInt qn = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(n));
  BigInt qk = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(k));
  BigInt qi = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    num *= qn - qi;
    den *= qk - qi;
    qi *= q;
  }
  return num / den;
}

BigInt subspace_count(std::uint64_t d, std::uint64_t q) {
  BigInt total = 0;
  for (std::uint64_t k = 0; k <= d; ++k) total += gaussian_coeff(d, k, q);
  return total;
}

Vector unit_vector(Element q, std::size_t ambient, std::size_t i) {
  Vector v(ambient, 0);
  v.at(i) = 1 % q;
  return v;
}

Vector difference_vector(Element q, std::size_t ambient, std::size_t i, std::size_t j) {
  Vector v(ambient, 0);
  v.at(i) = 1 % q;
  v.at(j) = (v.at(j) + q - 1) % q;
  return v;
}

bool is_zero_vector(std::span<const Element> v) {
  return std::all_of(v.begin(), v.end(), [](Element e) { return e == 0; });
}

std::size_t rational_rank(const IntegerMatrix& input) {
  IntegerMatrix m = input;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t rank = 0;
  BigInt previous = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t found = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (m(r, c) != 0) {
        found = r;
        break;
      }
    }
    if (found == rows) continue;
    if (found != rank) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(m(found, k), m(rank, k));
    }
    const BigInt pivot = m(rank, c);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        // Sylvester's identity keeps this division exact.
        m(r, k) = (pivot * m(r, k) - m(r, c) * m(rank, k)) / previous;
      }
      m(r, c) = 0;
    }
    previous = pivot;
    ++rank;
  }
  return rank;
}

}  // namespace projdim::gf
