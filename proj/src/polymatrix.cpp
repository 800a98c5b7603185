#include <markoff/polymatrix.hpp>

#include <algorithm>

namespace markoff {

PolyMatrix PolyMatrix::select_columns(const std::vector<int>& cols) const {
  PolyMatrix r(rows_, static_cast<int>(cols.size()));
  for (int i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) r.at(i, static_cast<int>(j)) = at(i, cols[j]);
  return r;
}

int PolyMatrix::column_degree(int j) const {
  int d = -1;
  for (int i = 0; i < rows_; ++i) d = std::max(d, at(i, j).degree());
  return d;
}

int PolyMatrix::row_degree(int i) const {
  int d = -1;
  for (int j = 0; j < cols_; ++j) d = std::max(d, at(i, j).degree());
  return d;
}

KPoly bareiss_det(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  const int n = m.rows();
  if (n == 0) return KPoly(1L);
  std::vector<KPoly> a = m.entries();
  auto A = [&](int i, int j) -> KPoly& { return a[static_cast<std::size_t>(i) * n + j]; };
  KPoly prev(1L);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (A(k, k).zero()) {
      int s = k + 1;
      while (s < n && A(s, k).zero()) ++s;
      if (s == n) return KPoly();
      for (int j = 0; j < n; ++j) std::swap(A(k, j), A(s, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) A(i, j) = exact_div(A(i, j) * A(k, k) - A(i, k) * A(k, j), prev);
      A(i, k) = KPoly();
    }
    prev = A(k, k);
  }
  KPoly d = A(n - 1, n - 1);
  return sign > 0 ? d : -d;
}

KPoly cofactor_det(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  const int n = m.rows();
  if (n == 0) return KPoly(1L);
  if (n == 1) return m.at(0, 0);
  KPoly total;
  for (int j = 0; j < n; ++j) {
    if (m.at(0, j).zero()) continue;
    PolyMatrix minor(n - 1, n - 1);
    for (int i = 1; i < n; ++i)
      for (int c = 0, cc = 0; c < n; ++c)
        if (c != j) minor.at(i - 1, cc++) = m.at(i, c);
    KPoly term = m.at(0, j) * cofactor_det(minor);
    if (j % 2) total -= term;
    else total += term;
  }
  return total;
}

Rational rational_det(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && is_zero(a[piv][k])) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(a[i][k])) continue;
      Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

namespace {

// Fraction-free determinant of an integer matrix.
Integer integer_det(std::vector<Integer> a, int n) {
  auto A = [&](int i, int j) -> Integer& { return a[static_cast<std::size_t>(i) * n + j]; };
  Integer prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (A(k, k) == 0) {
      int s = k + 1;
      while (s < n && A(s, k) == 0) ++s;
      if (s == n) return 0;
      for (int j = 0; j < n; ++j) std::swap(A(k, j), A(s, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Integer v = A(i, j) * A(k, k) - A(i, k) * A(k, j);
        mpz_divexact(A(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      A(i, k) = 0;
    }
    prev = A(k, k);
  }
  return sign > 0 ? A(n - 1, n - 1) : Integer(-A(n - 1, n - 1));
}

Integer eval_integral(const KPoly& f, long t) {
  Integer acc = 0;
  for (int i = f.degree(); i >= 0; --i) acc = acc * t + f[i].get_num();
  return acc;
}

}  // namespace

KPoly interpolation_det(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  const int n = m.rows();
  if (n == 0) return KPoly(1L);
  // Scale to integer entries row by row; remember the scale.
  Integer scale = 1;
  PolyMatrix s = m;
  for (int i = 0; i < n; ++i) {
    Integer l = 1;
    for (int j = 0; j < n; ++j) {
      Integer dl = denominator_lcm(s.at(i, j));
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), dl.get_mpz_t());
    }
    if (l != 1)
      for (int j = 0; j < n; ++j) s.at(i, j) *= Rational(l);
    scale *= l;
  }
  long rsum = 0, csum = 0;
  for (int i = 0; i < n; ++i) {
    int rd = s.row_degree(i), cd = s.column_degree(i);
    if (rd < 0 || cd < 0) return KPoly();
    rsum += rd;
    csum += cd;
  }
  const long deg = std::min(rsum, csum);
  // Newton divided differences at t = 0, 1, ..., deg.
  std::vector<Rational> dd(deg + 1);
  std::vector<Integer> vals(static_cast<std::size_t>(n) * n);
  for (long t = 0; t <= deg; ++t) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) vals[static_cast<std::size_t>(i) * n + j] = eval_integral(s.at(i, j), t);
    dd[t] = Rational(integer_det(vals, n));
  }
  for (long k = 1; k <= deg; ++k)
    for (long t = deg; t >= k; --t) dd[t] = (dd[t] - dd[t - 1]) / Rational(k);
  // Expand the Newton form.
  KPoly result;
  for (long k = deg; k >= 0; --k) {
    result = result * KPoly(std::vector<Rational>{Rational(-(k)), Rational(1)});
    result += KPoly(dd[k]);
  }
  Rational inv(Integer(1), scale);
  inv.canonicalize();
  return result * inv;
}

namespace {

std::vector<std::uint64_t> eval_matrix_mod(const PolyMatrix& m, std::uint64_t t, std::uint64_t p) {
  std::vector<std::uint64_t> v(static_cast<std::size_t>(m.rows()) * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v[static_cast<std::size_t>(i) * m.cols() + j] = eval_mod(m.at(i, j), t, p);
  return v;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, e = p - 2;
  unsigned __int128 b = a % p;
  while (e) {
    if (e & 1) r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * b) % p);
    b = (b * b) % p;
    e >>= 1;
  }
  return r;
}

// Column-wise elimination: column j is a pivot when it is independent of
// the earlier pivot columns.
std::vector<int> profile(const PolyMatrix& m, std::uint64_t t, std::uint64_t p) {
  const int R = m.rows(), C = m.cols();
  auto v = eval_matrix_mod(m, t, p);
  std::vector<std::vector<std::uint64_t>> basis;  // reduced columns with their pivot row
  std::vector<int> pivot_row, chosen;
  for (int j = 0; j < C; ++j) {
    std::vector<std::uint64_t> col(R);
    for (int i = 0; i < R; ++i) col[i] = v[static_cast<std::size_t>(i) * C + j];
    for (std::size_t b = 0; b < basis.size(); ++b) {
      std::uint64_t f = col[pivot_row[b]];
      if (!f) continue;
      for (int i = 0; i < R; ++i)
        col[i] = static_cast<std::uint64_t>((col[i] + static_cast<unsigned __int128>(p - f) * basis[b][i]) % p);
    }
    int pr = -1;
    for (int i = 0; i < R; ++i)
      if (col[i]) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::uint64_t inv = inv_mod(col[pr], p);
    for (auto& c : col) c = static_cast<std::uint64_t>((static_cast<unsigned __int128>(c) * inv) % p);
    basis.push_back(std::move(col));
    pivot_row.push_back(pr);
    chosen.push_back(j);
  }
  return chosen;
}

}  // namespace

int rank_mod_p(const PolyMatrix& m, std::uint64_t t, std::uint64_t p) {
  return static_cast<int>(profile(m, t, p).size());
}

std::vector<int> pivot_columns_mod_p(const PolyMatrix& m, std::uint64_t t, std::uint64_t p) {
  return profile(m, t, p);
}

}  // namespace markoff
