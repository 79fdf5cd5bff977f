#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace pigp::fp {

/// Dense matrix over F_p, row-major, entries in [0, p).
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
  std::int64_t &at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  std::int64_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  friend bool operator==(const Mat &, const Mat &) = default;
};

using Vec = std::vector<std::int64_t>;

Mat identity(int d);
Mat mul(const Mat &x, const Mat &y, std::int64_t p);
Mat add(const Mat &x, const Mat &y, std::int64_t p);
Mat scale(const Mat &x, std::int64_t c, std::int64_t p);
Mat power(const Mat &x, std::int64_t k, std::int64_t p);
Vec apply(const Mat &x, const Vec &v, std::int64_t p);
bool is_zero(const Mat &x);

int rank(Mat x, std::int64_t p);
/// Basis of {v : x v = 0}.
std::vector<Vec> nullspace(const Mat &x, std::int64_t p);
/// Basis of the column space.
std::vector<Vec> column_space(const Mat &x, std::int64_t p);
std::optional<Mat> inverse(const Mat &x, std::int64_t p);
bool is_invertible(const Mat &x, std::int64_t p);
bool is_nilpotent(const Mat &x, std::int64_t p);
/// c with b c = y, when y lies in the column space of b.
std::optional<Vec> solve(const Mat &b, const Vec &y, std::int64_t p);

/// Matrix whose columns are the given vectors (each of length rows).
Mat from_columns(const std::vector<Vec> &cols, int rows);
Vec column(const Mat &x, int j);

/// Basis (as matrices) of {X : X a_i = b_i X for all i}, X of shape dim_b x dim_a.
std::vector<Mat> intertwiners(const std::vector<Mat> &a, const std::vector<Mat> &b, int dim_a,
                              int dim_b, std::int64_t p);

} // namespace pigp::fp
