#ifndef DPCOH_LINALG_HPP_
#define DPCOH_LINALG_HPP_

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace dpcoh {

using BigInt = mpz_class;

class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The sublattice has lower rank than the ambient lattice: quotient is infinite.
class NotFullRank : public LinalgError {
 public:
  using LinalgError::LinalgError;
};

// A generator of the sublattice is not an integer combination of the ambient basis.
class NotContained : public LinalgError {
 public:
  using LinalgError::LinalgError;
};

// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  // Columns given as integer vectors of equal length.
  static IntMatrix from_columns(const std::vector<std::vector<long>>& columns,
                                std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntMatrix transpose() const;
  IntMatrix column_block(std::size_t first, std::size_t count) const;
  // Horizontal concatenation; row counts must agree.
  IntMatrix hconcat(const IntMatrix& right) const;
  bool is_zero() const;
  bool is_diagonal() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

// Finite abelian group Z/d1 x ... x Z/dk with d1 | d2 | ... and every di >= 2.
// The empty factor list is the trivial group.
struct AbelianGroupInvariants {
  std::vector<BigInt> factors;

  bool trivial() const { return factors.empty(); }
  BigInt order() const;
  // "0" for the trivial group, otherwise e.g. "Z/2 x Z/2".
  std::string to_string() const;
  // Compact form used in data files: "" for trivial, else "2.2" / "2.6".
  std::string to_compact() const;
  static AbelianGroupInvariants from_compact(const std::string& text);

  friend bool operator==(const AbelianGroupInvariants&,
                         const AbelianGroupInvariants&) = default;
};

struct SmithForm {
  IntMatrix S;  // diagonal, d1 | d2 | ..., nonnegative
  IntMatrix U;  // unimodular, rows x rows
  IntMatrix V;  // unimodular, cols x cols
  std::size_t rank = 0;
};

// S = U * M * V.  Pivot choice is the smallest nonzero absolute value in the
// remaining block, which keeps coefficient growth small.
SmithForm smith_normal_form(const IntMatrix& m);

// Columns form a basis of the saturated integer kernel {x : M x = 0}.
IntMatrix kernel_basis(const IntMatrix& m);

// Invariant factors (> 1) of span(ambient_basis) / span(sub_generators).
// Throws NotContained or NotFullRank.
AbelianGroupInvariants quotient_invariants(const IntMatrix& ambient_basis,
                                           const IntMatrix& sub_generators);

// Exact determinant by fraction-free (Bareiss) elimination.
BigInt determinant(const IntMatrix& m);

// Independent kernel route: Q-basis of ker M from Gauss-Jordan over the
// rationals, each column scaled to a primitive integer vector.  The result
// spans the kernel over Q but need not be saturated.
IntMatrix rational_kernel(const IntMatrix& m);

// Saturation of the column lattice of a full-column-rank matrix, computed by
// repeated p-saturation for the primes dividing a nonzero maximal minor.
IntMatrix saturate(const IntMatrix& basis);

// True if the two full-column-rank matrices span the same lattice.
bool same_lattice(const IntMatrix& a, const IntMatrix& b);

}  // namespace dpcoh

#endif  // DPCOH_LINALG_HPP_
