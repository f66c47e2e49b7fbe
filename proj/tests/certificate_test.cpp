#include "entire/certificate.hpp"

#include "entire/verdict.hpp"
#include "gtest/gtest.h"
#include "test_support.hpp"

namespace entire {
namespace {

using testing::system_of;

Certificate antisymmetric_certificate() {
  Certificate c;
  c.n = 2;
  c.A[2] = IntMatrix::of({{1, 1}});
  c.u[1] = {1, -1};
  c.theta[1] = parse_laurent("z1", 1);
  c.u0 = {0, 0};
  return c;
}

TEST(Expand, Examples) {
  EXPECT_EQ(expand(antisymmetric_certificate()), system_of({"z1*z2", "-z1*z2"}));

  Certificate constant;
  constant.n = 2;
  constant.A[2] = IntMatrix::of({{1, 0}});
  constant.u[1] = {0, 1};
  constant.theta[1] = LaurentPoly(1);
  constant.u0 = {3, GaussianRational(0, 5)};
  EXPECT_EQ(expand(constant), system_of({"3", "(0+5i)"}));

  Certificate base;
  base.u0 = {2};
  EXPECT_EQ(expand(base), system_of({"2"}));
}

TEST(Expand, RejectsInvalidCertificates) {
  Certificate c = antisymmetric_certificate();
  c.u[1] = {1, 1};
  EXPECT_THROW(expand(c), InvalidCertificate);

  c = antisymmetric_certificate();
  c.A[2] = IntMatrix::of({{1, 1, 0}});
  EXPECT_THROW(expand(c), InvalidCertificate);

  c = antisymmetric_certificate();
  c.theta.clear();
  EXPECT_THROW(expand(c), InvalidCertificate);
}

TEST(MonomialVectors, DescendingProducts) {
  Certificate c;
  c.n = 3;
  c.A[3] = IntMatrix::of({{1, 1, 0}, {0, 1, 1}});
  c.A[2] = IntMatrix::of({{1, -1}});
  auto levels = monomial_vectors(c);
  EXPECT_EQ(levels.at(3), IntMatrix::identity(3));
  EXPECT_EQ(levels.at(2), IntMatrix::of({{1, 1, 0}, {0, 1, 1}}));
  EXPECT_EQ(levels.at(1), IntMatrix::of({{1, 0, -1}}));
}

TEST(Build, AntisymmetricProduct) {
  OdeSystem sys = system_of({"z1*z2", "-z1*z2"});
  auto trace = decision_trace(sys);
  EXPECT_EQ(build(trace, {0}), antisymmetric_certificate());
}

TEST(Build, ShearSystem) {
  OdeSystem sys = system_of({"z2", "0"});
  auto trace = decision_trace(sys);
  ASSERT_EQ(trace.size(), 1u);
  EXPECT_EQ(trace[0].a, IntMatrix::of({{0, 1}}));
  Certificate c = build(trace, {0});
  EXPECT_EQ(c.u.at(1), (GaussianVector{1, 0}));
  EXPECT_EQ(c.theta.at(1), parse_laurent("z1", 1));
  EXPECT_EQ(c.u0, (GaussianVector{0, 0}));
  EXPECT_EQ(expand(c), sys);
}

TEST(Build, ConstantsGoToU0) {
  GaussianRational c1(2), c2(1, 1);
  OdeSystem sys({LaurentPoly::constant(2, c1), LaurentPoly::constant(2, c2)});
  Verdict v = decide(sys);
  ASSERT_TRUE(is_entire(v));
  const Certificate& c = std::get<Entire>(v).certificate;
  EXPECT_EQ(c.u0, (GaussianVector{c1, c2}));
  EXPECT_TRUE(c.theta.at(1).is_zero());
  EXPECT_EQ(expand(c), sys);
}

TEST(Build, OneVariableConstant) {
  Verdict v = decide(system_of({"(2-1i)"}));
  ASSERT_TRUE(is_entire(v));
  const Certificate& c = std::get<Entire>(v).certificate;
  EXPECT_EQ(c.n, 1u);
  EXPECT_TRUE(c.A.empty());
  EXPECT_EQ(c.u0, (GaussianVector{GaussianRational(2, -1)}));
}

TEST(Verify, Examples) {
  OdeSystem sys = system_of({"z1*z2", "-z1*z2"});
  VerifyReport ok = verify(antisymmetric_certificate(), sys);
  EXPECT_TRUE(ok.shapes_ok && ok.kernel_ok && ok.reconstruction_ok);

  Certificate tampered = antisymmetric_certificate();
  tampered.u[1] = {1, 1};
  VerifyReport bad = verify(tampered, sys);
  EXPECT_TRUE(bad.shapes_ok);
  EXPECT_FALSE(bad.kernel_ok);

  VerifyReport sign = verify(antisymmetric_certificate(), system_of({"z1*z2", "z1*z2"}));
  EXPECT_TRUE(sign.kernel_ok);
  EXPECT_FALSE(sign.reconstruction_ok);
  EXPECT_FALSE(sign.passed());
}

TEST(Verify, ShapeAndDimensionProblems) {
  Certificate c = antisymmetric_certificate();
  c.u0 = {0};
  EXPECT_FALSE(verify(c, system_of({"z1*z2", "-z1*z2"})).shapes_ok);
  VerifyReport r = verify(antisymmetric_certificate(), system_of({"0", "0", "0"}));
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.detail.empty());
}

TEST(Volume, Examples) {
  EXPECT_TRUE(is_volume_preserving(system_of({"z1*z2", "-z1*z2"})));
  EXPECT_FALSE(is_volume_preserving(system_of({"z1", "0"})));
  // Necessary but not sufficient.
  OdeSystem swap = system_of({"z2", "z1"});
  EXPECT_TRUE(is_volume_preserving(swap));
  EXPECT_FALSE(is_entire(decide(swap)));
}

TEST(RandomCertificate, OneVariableIsConstant) {
  Certificate c = random_certificate(42, {1, 3, 3});
  EXPECT_EQ(c.n, 1u);
  EXPECT_TRUE(c.A.empty() && c.u.empty() && c.theta.empty());
  EXPECT_TRUE(expand(c).rhs()[0].is_constant());
}

TEST(RandomCertificate, DeterministicPerSeed) {
  EXPECT_EQ(random_certificate(7, {3, 3, 3}), random_certificate(7, {3, 3, 3}));
  EXPECT_NE(random_certificate(7, {3, 3, 3}), random_certificate(8, {3, 3, 3}));
  EXPECT_THROW(random_certificate(1, {0, 3, 3}), std::invalid_argument);
}

// Generated certificates are valid, expand to Entire systems, and the rebuilt
// certificate verifies against the expansion. Entire systems are volume
// preserving.
TEST(CertificateProperties, GenerateDecideRebuild) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    RandomCertificateOptions opt{1 + seed % 4, 3, 3};
    Certificate c = random_certificate(seed, opt);
    OdeSystem sys = expand(c);
    EXPECT_TRUE(verify(c, sys).passed()) << seed;
    Verdict v = decide(sys);
    ASSERT_TRUE(is_entire(v)) << "seed " << seed << "\n" << format_system(sys);
    EXPECT_TRUE(verify(std::get<Entire>(v).certificate, sys).passed()) << seed;
    EXPECT_TRUE(is_volume_preserving(sys)) << seed;
  }
}

TEST(CertificateProperties, EntireImpliesVolumePreservingOnRandomSystems) {
  std::mt19937_64 rng(41);
  int entire = 0;
  for (int trial = 0; trial < 300; ++trial) {
    OdeSystem sys = testing::random_system(rng, 1 + trial % 3, 2);
    if (!is_entire(decide(sys))) continue;
    ++entire;
    EXPECT_TRUE(is_volume_preserving(sys)) << format_system(sys);
  }
  EXPECT_GT(entire, 0);
}

}  // namespace
}  // namespace entire
