#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mixphase/error.hpp"
#include "mixphase/phases.hpp"
#include "mixphase/qubitlab.hpp"
#include "mixphase/states.hpp"

using namespace mixphase;

namespace {

// SU(2) element with <0|U|0> = eta e^{-i Omega/2}; its diagonal phases
// cancel, so it is a valid endpoint of a parallel-transported path.
ComplexMatrix su2(double eta, double omega, double twist) {
  const Complex a = std::polar(eta, -omega / 2);
  const Complex b = std::polar(std::sqrt(1 - eta * eta), twist);
  ComplexMatrix u(2, 2);
  u << a, -std::conj(b), b, std::conj(a);
  return u;
}

DensityMatrix qubit(double r) {
  return make_density(std::vector<double>{(1 + r) / 2, (1 - r) / 2}, computational_basis(2));
}

}  // namespace

TEST(Qubitlab, ConfigRanges) {
  EXPECT_NO_THROW(QubitConfig::make(0.5, 0.5, 2 * kPi));
  EXPECT_THROW(QubitConfig::make(0.0, 0.5, 0.0), Error);
  EXPECT_THROW(QubitConfig::make(1.1, 0.5, 0.0), Error);
  EXPECT_THROW(QubitConfig::make(0.5, 1.5, 0.0), Error);
  EXPECT_THROW(QubitConfig::make(0.5, 0.5, -2 * kPi), Error);
  EXPECT_DOUBLE_EQ(QubitConfig::make(0.6, 1.0, 0.0).fb(), 1.0 - 0.36);
}

TEST(Qubitlab, ClosedFormsMatchDirectTraces) {
  for (double r : {0.2, 0.7}) {
    for (double eta : {0.0, 0.3, 0.9, 1.0}) {
      for (double omega : {-2.5, -0.4, 1.1, 3.0}) {
        const ComplexMatrix u = su2(eta, omega, 0.77);
        const DensityMatrix rho = qubit(r);
        const auto cfg = QubitConfig::make(r, eta, omega);
        const Complex off = gamma_offdiag(rho, quasi_complement(rho), u).trace_value;
        const Complex diag = gamma_diag(rho, u).trace_value;
        EXPECT_NEAR(off.real(), offdiag_trace_closed(cfg), 1e-14);
        EXPECT_NEAR(off.imag(), 0.0, 1e-14);
        EXPECT_LT(std::abs(diag - diag_trace_closed(cfg)), 1e-14);
      }
    }
  }
}

TEST(Qubitlab, DiagClosedFormIsContinuousThroughPi) {
  const double r = 0.5;
  const Complex below = diag_trace_closed(QubitConfig::make(r, 1.0, kPi - 1e-9));
  const Complex above = diag_trace_closed(QubitConfig::make(r, 1.0, kPi + 1e-9));
  EXPECT_LT(std::abs(below - above), 1e-8);
  EXPECT_NEAR(diag_trace_closed(QubitConfig::make(r, 1.0, kPi)).imag(), -r, 1e-15);
  // The arctan form on its principal branch, away from the cut.
  const double omega = 1.3;
  const Complex z = diag_trace_closed(QubitConfig::make(r, 0.8, omega));
  const double mag = 0.8 * std::sqrt(std::pow(std::cos(omega / 2), 2) + r * r * std::pow(std::sin(omega / 2), 2));
  EXPECT_NEAR(std::abs(z), mag, 1e-15);
  EXPECT_NEAR(std::arg(z), -std::atan(r * std::tan(omega / 2)), 1e-15);
}

TEST(Qubitlab, NodalEta2) {
  const auto e = nodal_eta2(0.25, 0.0);
  ASSERT_TRUE(e.has_value());
  EXPECT_NEAR(*e, 1.0 / 1.5, 1e-15);
  EXPECT_NEAR(offdiag_trace_eta2(*e, 0.25, 0.0), 0.0, 1e-15);
  EXPECT_FALSE(nodal_eta2(0.25, 2.0).has_value());
  EXPECT_NEAR(*nodal_eta2(0.0, 1.0), 1.0, 1e-15);
  EXPECT_THROW(nodal_eta2(1.0, 0.0), Error);
  EXPECT_THROW(nodal_eta2(-0.1, 0.0), Error);
}

TEST(Qubitlab, ScanIsFbMajorAndCertified) {
  const std::vector<double> fb{0.2, 0.6};
  const std::vector<double> om{-2.0, 0.5, 1.0};
  const auto rows = scan_nodal_surface(fb, om);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_DOUBLE_EQ(rows[1].fb, 0.2);
  EXPECT_DOUBLE_EQ(rows[1].omega, 0.5);
  EXPECT_DOUBLE_EQ(rows[3].fb, 0.6);
  EXPECT_EQ(rows[0].status, NodalStatus::NoSolution);
  EXPECT_EQ(rows[4].status, NodalStatus::Solution);
  EXPECT_NEAR(*rows[4].eta2, 1.0 / (1.0 + std::sqrt(0.6) * std::cos(0.5)), 1e-15);
  // Near the rim the bracket runs past eta^2 = 1 but stays signed.
  const std::vector<double> one_fb{0.5};
  const std::vector<double> rim{kPi / 2 - 1e-6};
  EXPECT_EQ(scan_nodal_surface(one_fb, rim)[0].status, NodalStatus::Solution);
  const std::vector<double> flat{kPi / 2};
  EXPECT_NE(scan_nodal_surface(one_fb, flat)[0].status, NodalStatus::Uncertified);
}

TEST(Qubitlab, MaximallyMixed) {
  const std::vector<double> deltas{0.0, kPi / 4, kPi / 2, 1.0};
  const auto scan = maximally_mixed_traces(deltas);
  ASSERT_EQ(scan.rows.size(), 4u);
  for (const auto& row : scan.rows) {
    EXPECT_NEAR(std::abs(row.offdiag_trace - std::cos(2 * row.delta)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(row.diag_trace - std::cos(row.delta)), 0.0, 1e-14);
  }
  EXPECT_TRUE(scan.no_common_zero);
  double least = 1.0;
  for (double d : deltas) least = std::min(least, std::max(std::abs(std::cos(2 * d)), std::abs(std::cos(d))));
  EXPECT_NEAR(scan.min_max_magnitude, least, 1e-14);
}

TEST(Qubitlab, MeridianLatitudePathHitsTarget) {
  for (double eta : {0.2, 0.6, 0.95}) {
    for (double omega : {-1.2, 0.3, 2.0}) {
      const UnitaryPath path = parallelize(evolve(meridian_latitude_path(eta, omega)), computational_basis(2));
      const QubitConfig cfg = config_from_path(0.5, path);
      EXPECT_NEAR(cfg.eta, eta, 1e-12);
      EXPECT_NEAR(cfg.omega, omega, 1e-10);
    }
  }
  EXPECT_THROW(meridian_latitude_path(1.0, 0.3), Error);
}

TEST(Qubitlab, FlipPathConfig) {
  const UnitaryPath path = parallelize(evolve({rotation_segment({0, 1, 0}, kPi)}), computational_basis(2));
  const QubitConfig cfg = config_from_path(0.6, path);
  EXPECT_NEAR(cfg.eta, 0.0, 1e-12);
  EXPECT_EQ(cfg.omega, 0.0);
  EXPECT_NEAR(offdiag_trace_closed(cfg), -1.0, 1e-12);
}
