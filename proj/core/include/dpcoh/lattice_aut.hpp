#ifndef DPCOH_LATTICE_AUT_HPP_
#define DPCOH_LATTICE_AUT_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpcoh/linalg.hpp"
#include "dpcoh/picard.hpp"

namespace dpcoh {

// Small dense square integer matrix acting on column vectors.  Entries of
// lattice isometries stay tiny, so 64-bit arithmetic is exact here.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n * n), 0) {}

  static SquareMatrix identity(int n);
  static SquareMatrix from_columns(const std::vector<std::vector<int>>& columns);

  int size() const { return n_; }
  std::int64_t& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  std::int64_t operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }

  std::vector<int> apply(const std::vector<int>& x) const;
  SquareMatrix transpose() const;
  SquareMatrix pow(std::int64_t e) const;
  std::int64_t trace() const;
  bool is_identity() const;
  IntMatrix to_int_matrix() const;

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
  friend SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b);
  friend SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b);
  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

  const std::vector<std::int64_t>& data() const { return a_; }

 private:
  int n_ = 0;
  std::vector<std::int64_t> a_;
};

class InvalidAutomorphism : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An isometry of Pic fixing K, of finite order.  Construction validates.
class LatticeAut {
 public:
  LatticeAut(int degree, SquareMatrix matrix);

  static LatticeAut identity(int degree);

  int degree() const { return degree_; }
  int rank() const { return matrix_.size(); }
  const SquareMatrix& matrix() const { return matrix_; }

  LatticeAut pow(std::int64_t e) const;
  LatticeAut inverse() const;
  LatticeAut compose(const LatticeAut& right) const;  // this * right
  LatticeClass apply(const LatticeClass& x) const;

  friend bool operator==(const LatticeAut&, const LatticeAut&) = default;

 private:
  struct Unchecked {};
  LatticeAut(int degree, SquareMatrix matrix, Unchecked)
      : degree_(degree), matrix_(std::move(matrix)) {}

  int degree_;
  SquareMatrix matrix_;
};

// Coefficients of det(tI - M), constant term first; monic of degree n.
std::vector<std::int64_t> characteristic_polynomial(const SquareMatrix& m);

}  // namespace dpcoh

#endif  // DPCOH_LATTICE_AUT_HPP_
