#include "pigp/fp_linear.hpp"

#include <algorithm>
#include <stdexcept>

#include "pigp/numtheory.hpp"

namespace pigp::fp {

Mat identity(int d) {
  Mat m(d, d);
  for (int i = 0; i < d; ++i)
    m.at(i, i) = 1;
  return m;
}

Mat mul(const Mat &x, const Mat &y, std::int64_t p) {
  if (x.cols != y.rows)
    throw std::invalid_argument("matrix shapes do not match");
  Mat z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const auto xik = x.at(i, k);
      if (!xik)
        continue;
      for (int j = 0; j < y.cols; ++j)
        z.at(i, j) = (z.at(i, j) + xik * y.at(k, j)) % p;
    }
  return z;
}

Mat add(const Mat &x, const Mat &y, std::int64_t p) {
  Mat z = x;
  for (std::size_t i = 0; i < z.a.size(); ++i)
    z.a[i] = (z.a[i] + y.a[i]) % p;
  return z;
}

Mat scale(const Mat &x, std::int64_t c, std::int64_t p) {
  Mat z = x;
  for (auto &v : z.a)
    v = nt::mod(v * c, p);
  return z;
}

Mat power(const Mat &x, std::int64_t k, std::int64_t p) {
  Mat r = identity(x.rows), b = x;
  while (k > 0) {
    if (k & 1)
      r = mul(r, b, p);
    b = mul(b, b, p);
    k >>= 1;
  }
  return r;
}

Vec apply(const Mat &x, const Vec &v, std::int64_t p) {
  Vec out(x.rows, 0);
  for (int i = 0; i < x.rows; ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < x.cols; ++j)
      s += x.at(i, j) * v[j];
    out[i] = s % p;
  }
  return out;
}

bool is_zero(const Mat &x) {
  for (auto v : x.a)
    if (v)
      return false;
  return true;
}

namespace {

/// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Mat &m, std::int64_t p) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int i = row; i < m.rows; ++i)
      if (m.at(i, col)) {
        piv = i;
        break;
      }
    if (piv < 0)
      continue;
    for (int j = 0; j < m.cols; ++j)
      std::swap(m.at(row, j), m.at(piv, j));
    const auto inv = nt::inverse_mod(m.at(row, col), p);
    for (int j = 0; j < m.cols; ++j)
      m.at(row, j) = m.at(row, j) * inv % p;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || !m.at(i, col))
        continue;
      const auto f = m.at(i, col);
      for (int j = 0; j < m.cols; ++j)
        m.at(i, j) = nt::mod(m.at(i, j) - f * m.at(row, j), p);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

} // namespace

int rank(Mat x, std::int64_t p) { return static_cast<int>(rref(x, p).size()); }

std::vector<Vec> nullspace(const Mat &x, std::int64_t p) {
  Mat m = x;
  const auto pivots = rref(m, p);
  std::vector<char> is_pivot(x.cols, 0);
  for (auto c : pivots)
    is_pivot[c] = 1;
  std::vector<Vec> basis;
  for (int free = 0; free < x.cols; ++free) {
    if (is_pivot[free])
      continue;
    Vec v(x.cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = nt::mod(-m.at(static_cast<int>(r), free), p);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vec> column_space(const Mat &x, std::int64_t p) {
  Mat m = x;
  const auto pivots = rref(m, p);
  std::vector<Vec> out;
  for (auto c : pivots)
    out.push_back(column(x, c));
  return out;
}

std::optional<Mat> inverse(const Mat &x, std::int64_t p) {
  const int d = x.rows;
  Mat aug(d, 2 * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j)
      aug.at(i, j) = x.at(i, j);
    aug.at(i, d + i) = 1;
  }
  const auto pivots = rref(aug, p);
  if (static_cast<int>(pivots.size()) < d || (d > 0 && pivots[d - 1] != d - 1))
    return std::nullopt;
  Mat inv(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      inv.at(i, j) = aug.at(i, d + j);
  return inv;
}

bool is_invertible(const Mat &x, std::int64_t p) { return rank(x, p) == x.rows; }

bool is_nilpotent(const Mat &x, std::int64_t p) { return is_zero(power(x, x.rows, p)); }

std::optional<Vec> solve(const Mat &b, const Vec &y, std::int64_t p) {
  Mat aug(b.rows, b.cols + 1);
  for (int i = 0; i < b.rows; ++i) {
    for (int j = 0; j < b.cols; ++j)
      aug.at(i, j) = b.at(i, j);
    aug.at(i, b.cols) = nt::mod(y[i], p);
  }
  const auto pivots = rref(aug, p);
  if (!pivots.empty() && pivots.back() == b.cols)
    return std::nullopt;
  Vec c(b.cols, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    c[pivots[r]] = aug.at(static_cast<int>(r), b.cols);
  return c;
}

Mat from_columns(const std::vector<Vec> &cols, int rows) {
  Mat m(rows, static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < rows; ++i)
      m.at(i, static_cast<int>(j)) = cols[j][i];
  return m;
}

Vec column(const Mat &x, int j) {
  Vec v(x.rows);
  for (int i = 0; i < x.rows; ++i)
    v[i] = x.at(i, j);
  return v;
}

std::vector<Mat> intertwiners(const std::vector<Mat> &a, const std::vector<Mat> &b, int dim_a,
                              int dim_b, std::int64_t p) {
  if (a.size() != b.size())
    throw std::invalid_argument("intertwiners need matching generator lists");
  const int m = dim_b, n = dim_a;
  // Unknown X is m x n, flattened row-major; one equation per entry of X a - b X.
  Mat sys(std::max(1, static_cast<int>(a.size()) * m * n), m * n);
  int eq = 0;
  for (std::size_t g = 0; g < a.size(); ++g)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j, ++eq) {
        for (int k = 0; k < n; ++k)
          sys.at(eq, i * n + k) = (sys.at(eq, i * n + k) + a[g].at(k, j)) % p;
        for (int k = 0; k < m; ++k)
          sys.at(eq, k * n + j) = nt::mod(sys.at(eq, k * n + j) - b[g].at(i, k), p);
      }
  std::vector<Mat> out;
  for (const auto &v : nullspace(sys, p)) {
    Mat x(m, n);
    x.a.assign(v.begin(), v.end());
    out.push_back(std::move(x));
  }
  return out;
}

} // namespace pigp::fp
