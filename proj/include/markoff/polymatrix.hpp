#ifndef MARKOFF_POLYMATRIX_HPP
#define MARKOFF_POLYMATRIX_HPP

#include <markoff/kpoly.hpp>

#include <cstdint>
#include <vector>

namespace markoff {

// Dense row-major matrix of polynomials in k.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  KPoly& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
  const KPoly& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
  const std::vector<KPoly>& entries() const { return e_; }

  PolyMatrix select_columns(const std::vector<int>& cols) const;
  // Largest k-degree among the entries of one column, -1 for a zero column.
  int column_degree(int j) const;
  int row_degree(int i) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<KPoly> e_;
};

// Fraction-free (Bareiss) elimination over Q[k].
KPoly bareiss_det(const PolyMatrix& m);

// Laplace expansion along the first row; exponential, for small test oracles.
KPoly cofactor_det(const PolyMatrix& m);

// Determinant by evaluation at integer points and Newton interpolation.
// Exact; the degree bound comes from the row and column degrees.
KPoly interpolation_det(const PolyMatrix& m);

// Exact determinant of a rational matrix (Bareiss with pivoting).
Rational rational_det(std::vector<std::vector<Rational>> a);

// Rank of the matrix with k specialised to t, over F_p.
int rank_mod_p(const PolyMatrix& m, std::uint64_t t, std::uint64_t p);

// Column indices of a rank profile of the matrix over F_p at k = t, chosen
// greedily left to right.
std::vector<int> pivot_columns_mod_p(const PolyMatrix& m, std::uint64_t t, std::uint64_t p);

}  // namespace markoff

#endif
