#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "mixphase/app/random.hpp"
#include "mixphase/error.hpp"
#include "mixphase/transport.hpp"

using namespace mixphase;

namespace {

using Vec = std::array<double, 3>;

double dot(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec cross(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Signed area of the geodesic triangle abc (Van Oosterom-Strackee).
double triangle_excess(const Vec& a, const Vec& b, const Vec& c) {
  return 2.0 * std::atan2(dot(a, cross(b, c)), 1.0 + dot(a, b) + dot(b, c) + dot(c, a));
}

// Stepwise gauge fixing on a fine grid: every column is rephased so its
// overlap with the previous sample is real and positive.
ComplexMatrix stepwise_parallel(const std::vector<PathSegment>& segments, const ComplexMatrix& basis, int refine) {
  ComplexMatrix psi = basis;
  for (const auto& seg : segments) {
    const int n = seg.steps * refine;
    const ComplexMatrix step = exp_hermitian_generator(seg.generator, seg.duration / n);
    for (int i = 0; i < n; ++i) {
      ComplexMatrix next = step * psi;
      for (Eigen::Index k = 0; k < next.cols(); ++k) {
        const Complex o = psi.col(k).dot(next.col(k));
        next.col(k) *= std::conj(o) / std::abs(o);
      }
      psi = next;
    }
  }
  return psi * basis.adjoint();
}

}  // namespace

TEST(Transport, EvolveComposesSegments) {
  app::Rng rng(20);
  const auto segs = app::random_generator_path(3, rng, 7);
  const UnitaryPath path = evolve(segs);
  EXPECT_EQ(path.samples().size(), 15u);
  ComplexMatrix expected = identity(3);
  for (const auto& s : segs) expected = exp_hermitian_generator(s.generator, s.duration) * expected;
  EXPECT_LT(max_abs(path.final_unitary() - expected), 1e-12);
  EXPECT_DOUBLE_EQ(path.times().back(), segs[0].duration + segs[1].duration);
}

TEST(Transport, ParallelGaugeMatchesStepwiseOracle) {
  app::Rng rng(21);
  const auto segs = app::random_generator_path(3, rng, 20);
  const ComplexMatrix b = app::random_unitary(3, rng);
  const UnitaryPath path = parallelize(evolve(segs), b);
  const ComplexMatrix oracle = stepwise_parallel(segs, b, 500);
  EXPECT_LT(max_abs(path.final_parallel() - oracle), 1e-4);
}

TEST(Transport, ParallelGaugeHasUnitDeterminantAndSameRays) {
  app::Rng rng(22);
  const auto segs = app::random_generator_path(4, rng);
  const ComplexMatrix b = app::random_unitary(4, rng);
  const UnitaryPath path = parallelize(evolve(segs), b);
  EXPECT_LT(std::abs(det(path.final_parallel()) - 1.0), 1e-12);
  const ComplexMatrix u = path.final_unitary(), up = path.final_parallel();
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(std::abs(b.col(k).dot(u.adjoint() * up * b.col(k))), 1.0, 1e-12);
  }
}

TEST(Transport, ResidualShrinksCubicallyPerStep) {
  app::Rng rng(23);
  auto segs = app::random_generator_path(3, rng, 40);
  const ComplexMatrix b = app::random_unitary(3, rng);
  const double coarse = transport_residual(parallelize(evolve(segs), b));
  for (auto& s : segs) s.steps *= 2;
  const double fine = transport_residual(parallelize(evolve(segs), b));
  EXPECT_GT(coarse / fine, 6.0);
  EXPECT_LT(coarse / fine, 10.0);
}

TEST(Transport, OctantSolidAngle) {
  const std::vector<PathSegment> segs{rotation_segment({0, 1, 0}, kPi / 2), rotation_segment({0, 0, 1}, kPi / 2),
                                      rotation_segment({1, 0, 0}, kPi / 2)};
  const UnitaryPath path = parallelize(evolve(segs), identity(2));
  EXPECT_NEAR(solid_angle(path), triangle_excess({0, 0, 1}, {1, 0, 0}, {0, 1, 0}), 1e-12);
  EXPECT_NEAR(solid_angle(path), kPi / 2, 1e-12);
  EXPECT_NEAR(visibility(path), 1.0, 1e-12);
}

TEST(Transport, SolidAngleMatchesSphericalExcess) {
  app::Rng rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    const auto segs = app::random_geodesic_path(rng, 3, 50);
    const UnitaryPath path = parallelize(evolve(segs), identity(2));
    if (visibility(path) < 1e-3) continue;
    const auto bloch = bloch_trace(path);
    // Corners at segment ends; the closing geodesic runs back to the start.
    std::vector<Vec> corners{bloch.front()};
    std::size_t at = 0;
    for (const auto& s : segs) {
      at += s.steps;
      corners.push_back(bloch[at]);
    }
    double excess = 0.0;
    for (std::size_t i = 1; i + 1 < corners.size(); ++i) excess += triangle_excess(corners[0], corners[i], corners[i + 1]);
    EXPECT_LT(std::abs(std::polar(1.0, solid_angle(path) / 2) - std::polar(1.0, excess / 2)), 1e-10) << trial;
  }
}

TEST(Transport, NegativeAngleReversesAxis) {
  const UnitaryPath a = evolve({rotation_segment({1, 0, 0}, -0.4)});
  const UnitaryPath b = evolve({rotation_segment({-1, 0, 0}, 0.4)});
  EXPECT_LT(max_abs(a.final_unitary() - b.final_unitary()), 1e-15);
}

TEST(Transport, Errors) {
  EXPECT_THROW(evolve({}), Error);
  PathSegment bad{pauli_z(), -1.0, 5};
  EXPECT_THROW(evolve({bad}), Error);
  PathSegment skew{pauli_z() * Complex(0.0, 1.0), 1.0, 5};
  EXPECT_THROW(evolve({skew}), Error);
  EXPECT_THROW(evolve({PathSegment{pauli_z(), 1.0, 5}, PathSegment{identity(3), 1.0, 5}}), Error);
  EXPECT_THROW(rotation_segment({0, 0, 0}, 1.0), Error);

  const UnitaryPath flip = evolve({rotation_segment({1, 0, 0}, kPi, 1)});
  try {
    parallelize(flip, identity(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroOverlapStep);
  }
  const UnitaryPath fine_flip = parallelize(evolve({rotation_segment({1, 0, 0}, kPi, 10)}), identity(2));
  EXPECT_NEAR(visibility(fine_flip), 0.0, 1e-12);
  try {
    solid_angle(fine_flip);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AntipodalEndpoints);
  }
  EXPECT_THROW(visibility(evolve({rotation_segment({1, 0, 0}, 1.0)})), Error);
}
