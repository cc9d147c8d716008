#include "mixphase/app/random.hpp"

#include <algorithm>
#include <cmath>

namespace mixphase::app {

ComplexMatrix random_unitary(int n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix z(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) z(a, b) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

ComplexMatrix random_hermitian(int n, Rng& rng, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  return 0.5 * (a + a.adjoint());
}

std::vector<double> random_spectrum(int n, Rng& rng, int zeros, double min_gap) {
  std::exponential_distribution<double> e(1.0);
  const int live = n - zeros;
  for (;;) {
    std::vector<double> w(n, 0.0);
    double sum = 0.0;
    for (int k = 0; k < live; ++k) sum += (w[k] = e(rng));
    for (int k = 0; k < live; ++k) w[k] /= sum;
    std::vector<double> sorted(w.begin(), w.begin() + live);
    std::sort(sorted.begin(), sorted.end());
    bool ok = sorted.front() > min_gap;
    for (int k = 0; k + 1 < live; ++k) ok = ok && sorted[k + 1] - sorted[k] > min_gap;
    if (ok) return w;
  }
}

ComplexMatrix random_phases(int n, Rng& rng) {
  std::uniform_real_distribution<double> u(-kPi, kPi);
  ComplexVector d(n);
  for (int k = 0; k < n; ++k) d(k) = std::polar(1.0, u(rng));
  return d.asDiagonal();
}

std::array<double, 3> rotate(const std::array<double, 3>& v, const std::array<double, 3>& a, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  const double dot = a[0] * v[0] + a[1] * v[1] + a[2] * v[2];
  const std::array<double, 3> cross{a[1] * v[2] - a[2] * v[1], a[2] * v[0] - a[0] * v[2], a[0] * v[1] - a[1] * v[0]};
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) out[i] = v[i] * c + cross[i] * s + a[i] * dot * (1.0 - c);
  return out;
}

std::vector<PathSegment> random_geodesic_path(Rng& rng, int max_segments, int steps) {
  std::uniform_int_distribution<int> count(1, max_segments);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.05, kPi - 0.05);
  std::array<double, 3> bloch{0.0, 0.0, 1.0};
  std::vector<PathSegment> segments;
  const int k = count(rng);
  for (int s = 0; s < k; ++s) {
    std::array<double, 3> axis{g(rng), g(rng), g(rng)};
    const double along = axis[0] * bloch[0] + axis[1] * bloch[1] + axis[2] * bloch[2];
    for (int i = 0; i < 3; ++i) axis[i] -= along * bloch[i];
    const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    for (double& x : axis) x /= norm;
    const double theta = angle(rng);
    segments.push_back(rotation_segment(axis, theta, steps));
    bloch = rotate(bloch, axis, theta);
  }
  return segments;
}

std::vector<PathSegment> random_generator_path(int n, Rng& rng, int steps) {
  std::uniform_real_distribution<double> duration(0.2, 1.5);
  return {PathSegment{random_hermitian(n, rng), duration(rng), steps},
          PathSegment{random_hermitian(n, rng), duration(rng), steps}};
}

}  // namespace mixphase::app
