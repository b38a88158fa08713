#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace torcon {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

class LatticeError : public std::runtime_error {
 public:
  enum class Kind { NotUnimodularSystem, LinearlyDependent, DegenerateJet, Shape };
  LatticeError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Dense row-major matrix. Shape is fixed at construction.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return Matrix();
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw LatticeError(LatticeError::Kind::Shape, "ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(const std::vector<std::vector<T>>& cols) {
    return from_rows(cols).transpose();
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw LatticeError(LatticeError::Kind::Shape, "matrix product shape");
    Matrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        if ((*this)(i, k) == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += (*this)(i, k) * o(k, j);
      }
    return p;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    if (cols_ != v.size()) throw LatticeError(LatticeError::Kind::Shape, "matrix-vector shape");
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);

// p/q in lowest terms
Rat ratio(const Int& p, const Int& q);
// floor/ceil of a rational
Int floor_rat(const Rat& q);
Int ceil_rat(const Rat& q);
Rat frac(const Rat& q);
Int gcd_of(const IntVector& v);
IntVector primitive(const IntVector& v);
Int dot(const IntVector& a, const IntVector& b);
Rat dot(const IntVector& a, const RatVector& b);
Rat dot(const RatVector& a, const RatVector& b);

// U * M = H, H in row Hermite normal form, U unimodular; U_inv kept alongside.
struct HermiteResult {
  IntMatrix H;
  IntMatrix U;
  IntMatrix U_inv;
};
HermiteResult hermite_normal_form(const IntMatrix& m);

// P * M * Q = S with S diagonal, d_1 | d_2 | ...
struct SmithResult {
  IntMatrix S;
  IntMatrix P;
  IntMatrix Q;
  std::vector<Int> invariants;  // nonzero diagonal entries
};
SmithResult smith_form(const IntMatrix& m);
std::vector<Int> smith_invariants(const IntMatrix& m);

Int determinant(const IntMatrix& m);
Rat determinant(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);
std::optional<RatMatrix> inverse(const RatMatrix& m);
IntMatrix unimodular_inverse(const IntMatrix& m);

// Any solution of A x = b (nullopt when inconsistent).
std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b);
std::optional<IntVector> solve_integral(const IntMatrix& a, const IntVector& b);
std::vector<RatVector> nullspace(const RatMatrix& m);

// Given k vectors of Z^d spanning a saturated sublattice, returns d-k vectors that
// complete them to a basis, ordered so that det[vs; ws] = +1 when k < d.
std::vector<IntVector> unimodular_completion(const std::vector<IntVector>& vs);
IntVector complete_to_basis(const std::vector<IntVector>& vs);
Int lattice_index(const std::vector<IntVector>& vs);

// value + slope * eps, compared lexicographically
struct Jet {
  Rat value;
  Rat slope;

  Jet() = default;
  Jet(Rat v, Rat s = 0) : value(std::move(v)), slope(std::move(s)) {}

  Jet operator+(const Jet& o) const { return {value + o.value, slope + o.slope}; }
  Jet operator-(const Jet& o) const { return {value - o.value, slope - o.slope}; }
  Jet operator-() const { return {-value, -slope}; }
  Jet operator*(const Rat& c) const { return {value * c, slope * c}; }
  Jet operator*(const Jet& o) const { return {value * o.value, value * o.slope + slope * o.value}; }
  Jet operator/(const Jet& o) const;
  bool operator==(const Jet& o) const { return value == o.value && slope == o.slope; }
  std::strong_ordering operator<=>(const Jet& o) const;
  int sign() const;
};

Int jet_floor(const Jet& j);

std::string to_string(const Rat& q);
std::ostream& operator<<(std::ostream& os, const Jet& j);

}  // namespace torcon
