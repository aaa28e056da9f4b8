#include "gendrv/derivator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "gendrv/errors.hpp"

namespace gendrv {

namespace {

constexpr int kMaxDegree = 3;

void check_degree(int degree) {
  if (degree < 1 || degree > kMaxDegree) throw InvalidDegree(degree);
}

// C(m, i) for m <= 3.
constexpr double kBinomial[4][4] = {
    {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};

// Re-expand sum_m b[m]*(t - x)^m into the power basis of t:
// a[i] = sum_{m>=i} b[m] * C(m,i) * (-x)^(m-i).
std::vector<double> expand_about_anchor(const std::vector<double>& b,
                                        double x) {
  const int n = static_cast<int>(b.size());
  std::vector<double> a(b.size(), 0.0);
  for (int m = 0; m < n; ++m) {
    double shift_pow = 1.0;  // (-x)^(m-i), built from i = m downward
    for (int i = m; i >= 0; --i) {
      a[i] += b[m] * kBinomial[m][i] * shift_pow;
      shift_pow *= -x;
    }
  }
  return a;
}

void check_finite(const std::vector<double>& coeffs) {
  for (double c : coeffs) {
    if (!std::isfinite(c))
      throw DomainError("derivator coefficients are not finite");
  }
}

// Gaussian elimination with partial pivoting on an n x n system, n <= 4.
std::vector<double> solve_dense(std::array<std::array<double, 5>, 4>& aug,
                                int n) {
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(aug[r][col]) > std::abs(aug[pivot][col])) pivot = r;
    }
    if (aug[pivot][col] == 0.0)
      throw SingularSystem("interpolation system is singular");
    if (pivot != col) std::swap(aug[pivot], aug[col]);
    for (int r = col + 1; r < n; ++r) {
      double factor = aug[r][col] / aug[col][col];
      if (factor == 0.0) continue;
      for (int c = col; c <= n; ++c) aug[r][c] -= factor * aug[col][c];
    }
  }
  std::vector<double> x(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double acc = aug[r][n];
    for (int c = r + 1; c < n; ++c) acc -= aug[r][c] * x[c];
    x[r] = acc / aug[r][r];
  }
  return x;
}

}  // namespace

double default_fd_delta(double x) noexcept {
  return 1e-6 * std::max(1.0, std::abs(x));
}

DerivatorCoefficients fd_coefficients(const TargetFunction& f, double x,
                                      double delta, int degree) {
  check_degree(degree);
  if (!std::isfinite(x) || !std::isfinite(delta))
    throw SingularSystem("sample anchor or spacing is not finite");

  const int n = degree + 1;
  std::array<double, 4> node{};
  for (int j = 0; j < n; ++j) node[j] = x + j * delta;
  for (int j = 1; j < n; ++j) {
    if (node[j] == node[j - 1])
      throw SingularSystem("sample nodes coincide; spacing too small");
  }

  // Solve in the shifted basis (t - x)^m, then re-expand: the Vandermonde in
  // s_j = node_j - x is far better conditioned than in node_j itself.
  std::array<std::array<double, 5>, 4> aug{};
  for (int j = 0; j < n; ++j) {
    double s = node[j] - x;
    double pw = 1.0;
    for (int m = 0; m < n; ++m) {
      aug[j][m] = pw;
      pw *= s;
    }
    double y = f(node[j]);
    if (!std::isfinite(y))
      throw DomainError("sample value is not finite");
    aug[j][n] = y;
  }

  std::vector<double> shifted = solve_dense(aug, n);
  DerivatorCoefficients out;
  out.degree = degree;
  out.anchor = x;
  out.coeffs = expand_about_anchor(shifted, x);
  check_finite(out.coeffs);
  return out;
}

DerivatorCoefficients analytic_coefficients(const TargetFunction& f, double x,
                                            int degree) {
  check_degree(degree);
  DerivTower t = f.tower_at(x);
  std::vector<double> taylor{t.y, t.dy, t.d2y / 2.0, t.d3y / 6.0};
  taylor.resize(static_cast<std::size_t>(degree) + 1);
  DerivatorCoefficients out;
  out.degree = degree;
  out.anchor = x;
  out.coeffs = expand_about_anchor(taylor, x);
  check_finite(out.coeffs);
  return out;
}

double evaluate_derivator(const DerivatorCoefficients& c, double t) noexcept {
  double acc = 0.0;
  for (std::size_t i = c.coeffs.size(); i-- > 0;) acc = acc * t + c.coeffs[i];
  return acc;
}

}  // namespace gendrv
