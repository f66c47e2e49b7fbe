#include "entire/numeric.hpp"

#include <cmath>
#include <numbers>

#include "entire/verdict.hpp"
#include "gtest/gtest.h"
#include "test_support.hpp"

namespace entire::numeric {
namespace {

using entire::testing::system_of;

std::vector<Complex> ones(std::size_t n) { return std::vector<Complex>(n, 1.0); }

TEST(IntegrateRay, ZeroSystemStaysPut) {
  RayOutcome out = integrate_ray(OdeSystem::zero(1), {ones(1), 0.0, 5.0});
  ASSERT_TRUE(out.completed());
  EXPECT_GE(out.samples.size(), 64u);
  for (const auto& s : out.samples) EXPECT_EQ(s.z[0], Complex(1.0));
}

TEST(IntegrateRay, QuadraticBlowsUpNearOne) {
  RayOutcome out = integrate_ray(system_of({"z1"}), {ones(1), 0.0, 2.0});
  ASSERT_TRUE(out.event);
  EXPECT_EQ(out.event->kind, EventKind::kBlowup);
  EXPECT_EQ(out.event->component, 0u);
  EXPECT_NEAR(out.event->t, 1.0, 1e-3);
}

TEST(IntegrateRay, ExponentialGrowth) {
  RayOutcome out = integrate_ray(system_of({"1"}), {ones(1), 0.0, 5.0});
  ASSERT_TRUE(out.completed());
  EXPECT_NEAR(std::abs(out.final_state()[0]) / std::exp(5.0), 1.0, 1e-6);
  EXPECT_DOUBLE_EQ(out.samples.back().t, 5.0);
}

TEST(IntegrateRay, ComplexDirection) {
  // ż = i·z along φ = π/2 means d/ds z = e^{iπ/2}·i·z = -z.
  RayOutcome out = integrate_ray(system_of({"(0+1i)"}), {ones(1), std::numbers::pi / 2, 3.0});
  ASSERT_TRUE(out.completed());
  EXPECT_NEAR(std::abs(out.final_state()[0] - Complex(std::exp(-3.0))), 0.0, 1e-9);
}

TEST(IntegrateRay, ReciprocalReachesZero) {
  // ż = z·z⁻¹ = 1 gives z = c + t, which vanishes at t = 1 on the ray φ = π.
  RayOutcome out = integrate_ray(system_of({"z1^-1"}), {ones(1), std::numbers::pi, 3.0});
  ASSERT_TRUE(out.event);
  EXPECT_EQ(out.event->kind, EventKind::kNearZero);
  EXPECT_NEAR(out.event->t, 1.0, 1e-3);
}

TEST(IntegrateRay, RejectsBadInput) {
  EXPECT_THROW(integrate_ray(system_of({"1"}), {ones(2), 0.0, 1.0}), DimensionMismatch);
  EXPECT_THROW(integrate_ray(system_of({"1"}), {{0.0}, 0.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(integrate_ray(system_of({"1"}), {ones(1), 0.0, -1.0}), std::invalid_argument);
}

TEST(DiscScan, ExponentialExtremesOnRealAxis) {
  ScanResult r = disc_scan(system_of({"1"}), ones(1), 1.0, 4);
  EXPECT_FALSE(r.any_event());
  EXPECT_NEAR(r.min_modulus[0], std::exp(-1.0), 1e-9);
  EXPECT_NEAR(r.max_modulus[0], std::exp(1.0), 1e-9);
  ASSERT_EQ(r.angles.size(), 4u);
  EXPECT_DOUBLE_EQ(r.angles[2], std::numbers::pi);
}

TEST(DiscScan, ZeroSystemKeepsModulus) {
  std::vector<Complex> c{Complex(3.0, 4.0), 2.0};
  ScanResult r = disc_scan(OdeSystem::zero(2), c, 5.0, 8);
  EXPECT_DOUBLE_EQ(r.min_modulus[0], 5.0);
  EXPECT_DOUBLE_EQ(r.max_modulus[0], 5.0);
  EXPECT_DOUBLE_EQ(r.min_modulus[1], 2.0);
}

TEST(DiscScan, SymmetricProductBlowsUp) {
  ScanResult r = disc_scan(system_of({"z1*z2", "z1*z2"}), ones(2), 2.0, 8);
  ASSERT_TRUE(r.any_event());
  ASSERT_TRUE(r.rays[0].event);
  EXPECT_EQ(r.rays[0].event->kind, EventKind::kBlowup);
  EXPECT_NEAR(r.rays[0].event->t, 0.5, 1e-3);
  EXPECT_THROW(disc_scan(system_of({"1"}), ones(1), 1.0, 0), std::invalid_argument);
}

TEST(EstimateM, Examples) {
  EXPECT_EQ(estimate_m(std::vector<Complex>(16, 1.0), 3.0), 0.0);
  const double r = std::numbers::e;
  std::vector<Complex> z;
  for (int j = 0; j < 64; ++j) z.push_back(std::polar(r, 2 * std::numbers::pi * j / 64));
  EXPECT_NEAR(estimate_m(z, r), 1.0, 1e-12);
  EXPECT_THROW(estimate_m(std::vector<Complex>(7, 1.0), 1.0), std::invalid_argument);
  EXPECT_THROW(estimate_m(std::vector<Complex>(8, 1.0), 0.0), std::invalid_argument);
}

std::vector<Complex> exp_on_circle(double r, std::size_t n) {
  std::vector<Complex> out;
  for (std::size_t j = 0; j < n; ++j)
    out.push_back(std::exp(std::polar(r, 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n))));
  return out;
}

TEST(EstimateM, ExponentialIsRadiusOverPi) {
  double previous = 0.0;
  for (double r : {1.0, 2.0, 5.0, 10.0}) {
    double m = estimate_m(exp_on_circle(r, 4096), r);
    EXPECT_NEAR(m / (r / std::numbers::pi), 1.0, 0.01) << r;
    EXPECT_GT(m, previous);
    previous = m;
  }
}

TEST(UnitCheck, Examples) {
  UnitCheck u = unit_check(system_of({"z1*z2", "-z1*z2"}), ones(2), 3.0, 8);
  EXPECT_TRUE(u.conclusive);
  EXPECT_EQ(u.zero_free, (std::vector<bool>{true, true}));

  EXPECT_EQ(unit_check(system_of({"1"}), ones(1), 3.0, 8).zero_free, (std::vector<bool>{true}));

  UnitCheck blown = unit_check(system_of({"z1"}), ones(1), 2.0, 8);
  EXPECT_FALSE(blown.conclusive);
  ASSERT_FALSE(blown.events.empty());
  EXPECT_EQ(blown.events.front().kind, EventKind::kBlowup);
}

double endpoint_error(const OdeSystem& sys, const RaySpec& ray, Complex exact) {
  RayOutcome out = integrate_ray(sys, ray);
  return std::abs(out.final_state()[0] - exact) / std::abs(exact);
}

struct ClosedForm {
  OdeSystem sys;
  double radius;
  Complex exact;
};

std::vector<ClosedForm> closed_forms() {
  return {{system_of({"1"}), 5.0, std::exp(5.0)}, {system_of({"z1"}), 0.9, 1.0 / (1.0 - 0.9)}};
}

// With the step size pinned by max_step and a tolerance loose enough never to
// reject, halving the step must cut the endpoint error by at least 2^3; a
// fourth-order pair gives about 2^4 or better.
TEST(NumericProperties, StepRefinementOrder) {
  for (const auto& c : closed_forms()) {
    for (double h : {0.05, 0.025}) {
      RaySpec coarse{ones(1), 0.0, c.radius, 0.5, 0.5, 64, h};
      RaySpec fine = coarse;
      fine.max_step = h / 2;
      double ratio = endpoint_error(c.sys, coarse, c.exact) / endpoint_error(c.sys, fine, c.exact);
      EXPECT_GE(ratio, 8.0) << format_system(c.sys) << " h " << h;
    }
  }
}

// Under adaptive control the global error is roughly proportional to the
// tolerance, so tol/4 buys a factor of about 4, never less than 3.
TEST(NumericProperties, ErrorShrinksWithTolerance) {
  for (const auto& c : closed_forms()) {
    for (double tol : {1e-5, 1e-6, 1e-7}) {
      RaySpec coarse{ones(1), 0.0, c.radius, tol, tol * 1e-2};
      RaySpec fine{ones(1), 0.0, c.radius, tol / 4, tol * 1e-2 / 4};
      double ratio = endpoint_error(c.sys, coarse, c.exact) / endpoint_error(c.sys, fine, c.exact);
      EXPECT_GE(ratio, 3.0) << format_system(c.sys) << " tol " << tol;
      EXPECT_LE(endpoint_error(c.sys, fine, c.exact), 100 * tol) << format_system(c.sys);
    }
  }
}

// Catalog-wide numeric agreement with the symbolic verdict.
TEST(NumericProperties, CatalogAgreesWithVerdict) {
  for (const auto& entry : entire::testing::load_catalog()) {
    OdeSystem sys = parse_system(entry.text);
    const std::size_t n = sys.dimension();
    if (entry.expect_entire) {
      ScanResult r = disc_scan(sys, ones(n), 5.0, 16);
      EXPECT_FALSE(r.any_event()) << entry.name;
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_GE(r.min_modulus[i], 1e-6) << entry.name;
        EXPECT_LE(r.max_modulus[i], 1e6) << entry.name;
      }
    } else {
      bool found = false;
      const Complex grid[] = {1.0, 2.0, Complex(1.0, 1.0)};
      std::vector<std::size_t> idx(n, 0);
      while (!found) {
        std::vector<Complex> c;
        for (auto k : idx) c.push_back(grid[k]);
        found = disc_scan(sys, c, 10.0, 16).any_event();
        std::size_t j = 0;
        while (j < n && idx[j] == 2) idx[j++] = 0;
        if (j == n) break;
        ++idx[j];
      }
      EXPECT_TRUE(found) << entry.name;
    }
  }
}

}  // namespace
}  // namespace entire::numeric
