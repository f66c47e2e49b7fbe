#include "entire/json_io.hpp"

#include "entire/verdict.hpp"
#include "gtest/gtest.h"
#include "test_support.hpp"

namespace entire::json_io {
namespace {

TEST(JsonIo, GaussianAsExactStrings) {
  GaussianRational x(make_rational(Integer(-1), Integer(2)), 3);
  Json j = to_json(x);
  EXPECT_EQ(j.dump(), R"({"re":"-1/2","im":"3"})");
  EXPECT_EQ(gaussian_from_json(j), x);
  EXPECT_THROW(gaussian_from_json(Json{{"re", 1}, {"im", "0"}}), SchemaError);
  EXPECT_THROW(gaussian_from_json(Json{{"re", "1/0"}, {"im", "0"}}), SchemaError);
}

TEST(JsonIo, MatrixAndPoly) {
  IntMatrix m = IntMatrix::of({{1, -2, 3}, {0, 4, 5}});
  EXPECT_EQ(matrix_from_json(to_json(m)), m);
  LaurentPoly f = parse_laurent("(1/2-3i)*z1^-2*z2 + 7", 2);
  EXPECT_EQ(poly_from_json(to_json(f)), f);
  Json bad = to_json(m);
  bad["rows"] = 3;
  EXPECT_THROW(matrix_from_json(bad), SchemaError);
}

TEST(JsonIo, InputHashIsFnv1a) {
  EXPECT_EQ(input_hash(""), "fnv1a64:cbf29ce484222325");
  EXPECT_EQ(input_hash("a"), "fnv1a64:af63dc4c8601ec8c");
}

// serialize∘deserialize is the identity on certificates and witnesses, and
// re-serializing is byte-stable.
TEST(JsonIoProperties, CertificateRoundTrip) {
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    Certificate c = random_certificate(seed, {1 + seed % 4, 3, 3});
    std::string text = to_json(c).dump();
    Certificate back = certificate_from_json(Json::parse(text));
    EXPECT_EQ(back, c);
    EXPECT_EQ(to_json(back).dump(), text);
    EXPECT_TRUE(verify(back, expand(c)).passed());
  }
}

TEST(JsonIoProperties, WitnessRoundTrip) {
  std::mt19937_64 rng(43);
  int seen = 0;
  for (int trial = 0; trial < 100; ++trial) {
    OdeSystem sys = entire::testing::random_system(rng, 1 + trial % 4, 2);
    Verdict v = decide(sys);
    if (is_entire(v)) continue;
    const Witness& w = std::get<NotEntire>(v).witness;
    EXPECT_EQ(witness_from_json(Json::parse(to_json(w).dump())), w);
    ++seen;
  }
  EXPECT_GT(seen, 50);
}

TEST(JsonIo, CertificateSchemaErrors) {
  Json j = to_json(random_certificate(1, {2, 3, 3}));
  Json missing = j;
  missing.erase("u0");
  EXPECT_THROW(certificate_from_json(missing), SchemaError);
  EXPECT_THROW(certificate_from_json(Json::array()), SchemaError);
}

}  // namespace
}  // namespace entire::json_io
