#include "dpcoh/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <sstream>
#include <utility>

namespace dpcoh {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw LinalgError("IntMatrix: ragged initializer");
    for (long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<std::vector<long>>& columns,
                                  std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw LinalgError("from_columns: length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::column_block(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw LinalgError("column_block: out of range");
  IntMatrix b(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) b(i, j) = (*this)(i, first + j);
  return b;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& right) const {
  if (cols_ == 0) return right;
  if (right.cols_ == 0) return *this;
  if (rows_ != right.rows_) throw LinalgError("hconcat: row count mismatch");
  IntMatrix m(rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) m(i, cols_ + j) = right(i, j);
  }
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigInt& v) { return v == 0; });
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw LinalgError("matrix product: dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const BigInt& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw LinalgError("sum: shape mismatch");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw LinalgError("difference: shape mismatch");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
  return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? "," : "") << (*this)(i, j).get_str();
    out << ']';
  }
  out << ']';
  return out.str();
}

BigInt AbelianGroupInvariants::order() const {
  BigInt n = 1;
  for (const auto& f : factors) n *= f;
  return n;
}

std::string AbelianGroupInvariants::to_string() const {
  if (factors.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += " x ";
    s += "Z/" + factors[i].get_str();
  }
  return s;
}

std::string AbelianGroupInvariants::to_compact() const {
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += '.';
    s += factors[i].get_str();
  }
  return s;
}

AbelianGroupInvariants AbelianGroupInvariants::from_compact(const std::string& text) {
  AbelianGroupInvariants g;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t dot = text.find('.', pos);
    if (dot == std::string::npos) dot = text.size();
    g.factors.emplace_back(text.substr(pos, dot - pos));
    pos = dot + 1;
  }
  return g;
}

namespace {

// Elementary operations applied to the working matrix and the transforms.
struct SmithState {
  IntMatrix a, u, v;

  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(i, j), a(k, j));
    for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u(i, j), u(k, j));
  }
  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a(i, j), a(i, k));
    for (std::size_t i = 0; i < v.rows(); ++i) std::swap(v(i, j), v(i, k));
  }
  // row_i += q * row_k
  void add_row(std::size_t i, std::size_t k, const BigInt& q) {
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) += q * a(k, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u(i, j) += q * u(k, j);
  }
  // col_j += q * col_k
  void add_col(std::size_t j, std::size_t k, const BigInt& q) {
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) += q * a(i, k);
    for (std::size_t i = 0; i < v.rows(); ++i) v(i, j) += q * v(i, k);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = -a(i, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u(i, j) = -u(i, j);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithState st{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  const std::size_t r = m.rows(), c = m.cols();
  std::size_t t = 0;
  for (; t < std::min(r, c); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j)
        if (st.a(i, j) != 0 &&
            (!best || abs(st.a(i, j)) < abs(st.a(best->first, best->second))))
          best = {i, j};
    if (!best) break;
    st.swap_rows(t, best->first);
    st.swap_cols(t, best->second);

    for (;;) {
      bool clear = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (st.a(i, t) == 0) continue;
        BigInt q = st.a(i, t) / st.a(t, t);
        if (q != 0) st.add_row(i, t, -q);
        if (st.a(i, t) != 0) clear = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (st.a(t, j) == 0) continue;
        BigInt q = st.a(t, j) / st.a(t, t);
        if (q != 0) st.add_col(j, t, -q);
        if (st.a(t, j) != 0) clear = false;
      }
      if (!clear) {
        // A remainder smaller than the pivot is left in row or column t.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < r; ++i)
          if (st.a(i, t) != 0 && abs(st.a(i, t)) < abs(st.a(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < c; ++j)
          if (st.a(t, j) != 0 && abs(st.a(t, j)) < abs(st.a(bi, bj))) bi = t, bj = j;
        st.swap_rows(t, bi);
        st.swap_cols(t, bj);
        continue;
      }
      // Row and column are clear; enforce divisibility of the trailing block.
      bool divisible = true;
      for (std::size_t i = t + 1; i < r && divisible; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (!mpz_divisible_p(st.a(i, j).get_mpz_t(), st.a(t, t).get_mpz_t())) {
            st.add_row(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (st.a(t, t) < 0) st.negate_row(t);
  }
  SmithForm out{std::move(st.a), std::move(st.u), std::move(st.v), t};
  return out;
}

IntMatrix kernel_basis(const IntMatrix& m) {
  if (m.rows() == 0) return IntMatrix::identity(m.cols());
  SmithForm snf = smith_normal_form(m);
  // M x = 0  <=>  S (V^-1 x) = 0; free coordinates are rank..cols-1.
  return snf.V.column_block(snf.rank, m.cols() - snf.rank);
}

AbelianGroupInvariants quotient_invariants(const IntMatrix& ambient_basis,
                                           const IntMatrix& sub_generators) {
  const std::size_t n = ambient_basis.rows(), k = ambient_basis.cols();
  if (k == 0) {
    if (!sub_generators.is_zero())
      throw NotContained("quotient_invariants: generator outside zero lattice");
    return {};
  }
  if (sub_generators.cols() > 0 && sub_generators.rows() != n)
    throw LinalgError("quotient_invariants: ambient dimension mismatch");

  SmithForm a = smith_normal_form(ambient_basis);
  if (a.rank != k) throw LinalgError("quotient_invariants: ambient columns are dependent");
  if (sub_generators.cols() == 0) throw NotFullRank("quotient_invariants: empty sublattice");

  // A X = B  <=>  S Y = U B with X = V Y.
  IntMatrix ub = a.U * sub_generators;
  IntMatrix y(k, sub_generators.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < ub.cols(); ++j) {
      if (i < k) {
        if (!mpz_divisible_p(ub(i, j).get_mpz_t(), a.S(i, i).get_mpz_t()))
          throw NotContained("quotient_invariants: generator not in ambient lattice");
        y(i, j) = ub(i, j) / a.S(i, i);
      } else if (ub(i, j) != 0) {
        throw NotContained("quotient_invariants: generator outside ambient span");
      }
    }
  IntMatrix coords = a.V * y;

  SmithForm q = smith_normal_form(coords);
  if (q.rank < k) throw NotFullRank("quotient_invariants: infinite quotient");
  AbelianGroupInvariants g;
  for (std::size_t i = 0; i < k; ++i)
    if (q.S(i, i) != 1) g.factors.push_back(q.S(i, i));
  return g;
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw LinalgError("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix rational_kernel(const IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  std::vector<mpq_class> a(r * c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a[i * c + j] = m(i, j);
  auto at = [&](std::size_t i, std::size_t j) -> mpq_class& { return a[i * c + j]; };

  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    std::size_t p = row;
    while (p < r && at(p, col) == 0) ++p;
    if (p == r) continue;
    for (std::size_t j = 0; j < c; ++j) std::swap(at(row, j), at(p, j));
    mpq_class inv = 1 / at(row, col);
    for (std::size_t j = 0; j < c; ++j) at(row, j) *= inv;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == row || at(i, col) == 0) continue;
      mpq_class f = at(i, col);
      for (std::size_t j = 0; j < c; ++j) at(i, j) -= f * at(row, j);
    }
    pivot_cols.push_back(col);
    ++row;
  }

  std::vector<bool> is_pivot(c, false);
  for (auto pc : pivot_cols) is_pivot[pc] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < c; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);

  IntMatrix basis(c, free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    std::vector<mpq_class> x(c);
    x[free_cols[f]] = 1;
    for (std::size_t p = 0; p < pivot_cols.size(); ++p) x[pivot_cols[p]] = -at(p, free_cols[f]);
    BigInt lcm = 1;
    for (const auto& q : x) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    BigInt g = 0;
    std::vector<BigInt> xi(c);
    for (std::size_t j = 0; j < c; ++j) {
      mpq_class scaled = x[j] * lcm;
      xi[j] = scaled.get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), xi[j].get_mpz_t());
    }
    for (std::size_t j = 0; j < c; ++j) basis(j, f) = xi[j] / g;
  }
  return basis;
}

namespace {

std::vector<BigInt> prime_divisors(BigInt n) {
  std::vector<BigInt> primes;
  n = abs(n);
  for (BigInt p = 2; p * p <= n; ++p) {
    if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      primes.push_back(p);
      while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) n /= p;
    }
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

// Nonzero c in F_p^k with B c = 0 mod p, normalized so that c[pivot] = 1.
std::optional<std::pair<std::vector<BigInt>, std::size_t>> null_vector_mod_p(
    const IntMatrix& b, const BigInt& p) {
  const std::size_t n = b.rows(), k = b.cols();
  std::vector<BigInt> a(n * k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      BigInt v = b(i, j) % p;
      if (v < 0) v += p;
      a[i * k + j] = v;
    }
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return a[i * k + j]; };
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < k && row < n; ++col) {
    std::size_t q = row;
    while (q < n && at(q, col) == 0) ++q;
    if (q == n) continue;
    for (std::size_t j = 0; j < k; ++j) std::swap(at(row, j), at(q, j));
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), at(row, col).get_mpz_t(), p.get_mpz_t());
    for (std::size_t j = 0; j < k; ++j) at(row, j) = (at(row, j) * inv) % p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || at(i, col) == 0) continue;
      BigInt f = at(i, col);
      for (std::size_t j = 0; j < k; ++j) {
        at(i, j) = (at(i, j) - f * at(row, j)) % p;
        if (at(i, j) < 0) at(i, j) += p;
      }
    }
    pivots.push_back(col);
    ++row;
  }
  if (pivots.size() == k) return std::nullopt;
  std::vector<bool> is_pivot(k, false);
  for (auto pc : pivots) is_pivot[pc] = true;
  std::size_t free = 0;
  while (is_pivot[free]) ++free;
  std::vector<BigInt> c(k, 0);
  c[free] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    BigInt v = (-at(r, free)) % p;
    if (v < 0) v += p;
    c[pivots[r]] = v;
  }
  return std::make_pair(std::move(c), free);
}

}  // namespace

IntMatrix saturate(const IntMatrix& basis) {
  const std::size_t n = basis.rows(), k = basis.cols();
  if (k == 0) return basis;

  // Pick k independent rows by elimination over Q to get a nonzero minor.
  std::vector<std::size_t> chosen;
  {
    std::vector<std::vector<mpq_class>> echelon;
    std::vector<std::size_t> lead;
    for (std::size_t i = 0; i < n && chosen.size() < k; ++i) {
      std::vector<mpq_class> row(k);
      for (std::size_t j = 0; j < k; ++j) row[j] = basis(i, j);
      for (std::size_t e = 0; e < echelon.size(); ++e) {
        if (row[lead[e]] == 0) continue;
        mpq_class f = row[lead[e]] / echelon[e][lead[e]];
        for (std::size_t j = 0; j < k; ++j) row[j] -= f * echelon[e][j];
      }
      auto it = std::find_if(row.begin(), row.end(), [](const mpq_class& q) { return q != 0; });
      if (it == row.end()) continue;
      lead.push_back(static_cast<std::size_t>(it - row.begin()));
      echelon.push_back(std::move(row));
      chosen.push_back(i);
    }
  }
  if (chosen.size() != k) throw LinalgError("saturate: columns are dependent");
  IntMatrix minor(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) minor(i, j) = basis(chosen[i], j);

  IntMatrix b = basis;
  for (const BigInt& p : prime_divisors(determinant(minor))) {
    while (auto nv = null_vector_mod_p(b, p)) {
      const auto& [c, j] = *nv;
      IntMatrix replaced = b;
      for (std::size_t i = 0; i < n; ++i) {
        BigInt s = 0;
        for (std::size_t t = 0; t < k; ++t) s += b(i, t) * c[t];
        assert(mpz_divisible_p(s.get_mpz_t(), p.get_mpz_t()));
        replaced(i, j) = s / p;
      }
      b = std::move(replaced);
    }
  }
  return b;
}

bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a.cols() == 0) return true;
  try {
    return quotient_invariants(a, b).trivial() && quotient_invariants(b, a).trivial();
  } catch (const LinalgError&) {
    return false;
  }
}

}  // namespace dpcoh
