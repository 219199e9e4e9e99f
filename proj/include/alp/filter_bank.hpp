#pragma once

#include <cmath>
#include <utility>

namespace alp {

/// Smooth cutoffs of the dyadic decomposition.
///
/// eta is the C-infinity step built from g(x) = exp(-1/x): eta = 1 on [0,1],
/// 0 on [2,inf), strictly decreasing in between. chi = eta and
/// phi(r) = eta(r/2) - eta(r), so chi(r) + sum_{j>=0} phi(2^-j r) telescopes
/// to 1. phi lives on the ring (1,4) and phi(2) = 1.
class FilterBank {
 public:
  FilterBank() {
    // Support of phi and the derived constants are measured, not assumed.
    constexpr double step = 1.0 / 4096.0;
    double lo = 0.0, hi = 0.0;
    for (double r = step; r < 8.0; r += step) {
      if (phi(r) > 0.0) {
        if (lo == 0.0) lo = r;
        hi = r;
      }
    }
    double ball = 0.0;
    for (double r = step; r < 4.0; r += step) {
      if (eta(r) > 0.0) ball = r;
    }
    ring_ = {lo - step, hi + step};
    ball_ = ball + step;
    n0_ = 1;
    while (std::ldexp(ring_.first, n0_) < ring_.second) ++n0_;
    // S_{q'-1} a * Delta_{q'} b has |k| < (ball/2 + ring_hi) 2^q'.
    lag_ = 1;
    while (std::ldexp(ring_.first, lag_) < 0.5 * ball_ + ring_.second) ++lag_;
  }

  static const FilterBank& standard() {
    static const FilterBank bank;
    return bank;
  }

  static double eta(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double a = g(2.0 - r), b = g(r - 1.0);
    return a / (a + b);
  }

  /// 1 - eta(r), evaluated without cancellation.
  static double one_minus_eta(double r) {
    if (r <= 1.0) return 0.0;
    if (r >= 2.0) return 1.0;
    const double a = g(2.0 - r), b = g(r - 1.0);
    return b / (a + b);
  }

  static double chi(double r) { return eta(r); }

  static double phi(double r) {
    if (r <= 1.0 || r >= 4.0) return 0.0;
    if (r < 2.0) return one_minus_eta(r);
    return eta(0.5 * r);
  }

  /// Multiplier of Delta_j at frequency magnitude r.
  static double block(int j, double r) {
    if (j < -1) return 0.0;
    if (j == -1) return chi(r);
    return phi(std::ldexp(r, -j));
  }

  /// Multiplier of S_q = sum_{j <= q-1} Delta_j, i.e. eta(2^-q r) for q >= 0.
  static double low(int q, double r) {
    if (q < 0) return 0.0;
    return eta(std::ldexp(r, -q));
  }

  /// chi~(2^-N r) with chi~ = eta(./2), equal to 1 on the support of chi(2^-N .).
  static double low_wide(int n, double r) { return eta(std::ldexp(r, -n - 1)); }

  /// Largest dyadic index with a nonzero block for frequencies up to max_radius.
  static int jmax(double max_radius) {
    if (max_radius <= 1.0) return 0;
    return static_cast<int>(std::ceil(std::log2(max_radius)));
  }

  /// Smallest N0 with disjoint supports of phi(2^-j .) and phi(2^-k .) for |j-k| >= N0.
  int n0() const { return n0_; }

  /// Smallest L with Delta_q(S_{q'-1}a * Delta_{q'} b) = 0 for all q >= q' + L.
  int quasi_orthogonal_lag() const { return lag_; }

  /// Measured open support of phi.
  std::pair<double, double> ring_support() const { return ring_; }

  /// Measured radius of the support of eta.
  double ball_radius() const { return ball_; }

 private:
  static double g(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

  std::pair<double, double> ring_{};
  double ball_ = 0.0;
  int n0_ = 0;
  int lag_ = 0;
};

}  // namespace alp
