#pragma once

// Exact linear algebra over small prime fields F_q and over the integers.
//
// Subspaces are always kept in reduced row-echelon form, so two subspaces
// are equal exactly when their basis matrices are equal entry by entry.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace projdim {

/// Raised when an enumeration or dense table would exceed its size guard.
class GuardExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace projdim

namespace projdim::gf {

using Element = std::uint32_t;
using Vector = std::vector<Element>;
using BigInt = boost::multiprecision::cpp_int;

bool is_prime(std::uint64_t value);

/// Dense matrix over Z/q. Entries are reduced mod q on entry.
class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(Element q, std::size_t rows, std::size_t cols);
  FieldMatrix(Element q, std::size_t cols, const std::vector<Vector>& rows);

  static FieldMatrix identity(Element q, std::size_t n);

  Element modulus() const { return q_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  Element operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::uint64_t value);

  std::span<const Element> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<Element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  void append_row(std::span<const Element> values);
  void truncate_rows(std::size_t rows);

  const std::vector<Element>& data() const { return data_; }

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  Element q_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

struct Echelon {
  FieldMatrix matrix;             // reduced row-echelon form, zero rows kept
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form. Throws std::invalid_argument if q is not prime.
Echelon rref(const FieldMatrix& m);

class Subspace {
 public:
  /// The zero subspace of F_q^ambient.
  Subspace(Element q, std::size_t ambient);

  static Subspace zero(Element q, std::size_t ambient) { return {q, ambient}; }
  static Subspace full(Element q, std::size_t ambient);
  static Subspace span(Element q, std::size_t ambient, const std::vector<Vector>& vectors);

  Element field() const { return basis_.modulus(); }
  std::size_t ambient() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return basis_.rows() == 0; }
  const FieldMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(std::span<const Element> v) const;
  /// Residue of v after reduction against the basis; zero iff v is contained.
  Vector reduce(std::span<const Element> v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.basis_ == b.basis_;
  }
  /// Orders by field, ambient, dimension, then basis entries lexicographically.
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

  std::string to_string() const;

 private:
  friend Subspace row_space(const FieldMatrix& m);
  explicit Subspace(FieldMatrix canonical_basis, std::vector<std::size_t> pivots);

  FieldMatrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace row_space(const FieldMatrix& m);

/// a ∩ b, computed with the Zassenhaus stacked-basis reduction.
Subspace intersect(const Subspace& a, const Subspace& b);
/// dim(a ∩ b) = dim a + dim b - dim(a + b); cheaper than intersect().
std::size_t intersection_dim(const Subspace& a, const Subspace& b);
/// a + b inside the common ambient space.
Subspace sum(const Subspace& a, const Subspace& b);
Subspace sum(std::span<const Subspace> parts, Element q, std::size_t ambient);

/// Block embedding of a and b into F_q^(a.ambient + b.ambient).
Subspace direct_sum(const Subspace& a, const Subspace& b);
/// Span of all Kronecker products of basis pairs in F_q^(a.ambient * b.ambient).
Subspace tensor(const Subspace& a, const Subspace& b);

/// The unique u in a with w - u in b. Requires a ∩ b = {0} and w in a + b.
Vector project(std::span<const Element> w, const Subspace& a, const Subspace& b);

/// Every subspace of F_q^d (or those of one dimension), ordered by dimension
/// and then canonical basis. Guarded by d * log2(q) <= 20.
std::vector<Subspace> enumerate_subspaces(std::size_t d, Element q,
                                          std::optional<std::size_t> dim = std::nullopt);

/// Gaussian binomial coefficient [n; k]_q.
BigInt gaussian_coeff(std::uint64_t n, std::uint64_t k, std::uint64_t q);
/// Number of subspaces of F_q^d, i.e. sum over k of [d; k]_q.
BigInt subspace_count(std::uint64_t d, std::uint64_t q);

Vector unit_vector(Element q, std::size_t ambient, std::size_t i);
/// e_i - e_j over F_q.
Vector difference_vector(Element q, std::size_t ambient, std::size_t i, std::size_t j);
bool is_zero_vector(std::span<const Element> v);

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Rank over Q by fraction-free (Bareiss) elimination.
std::size_t rational_rank(const IntegerMatrix& m);

}  // namespace projdim::gf
