#include <polarcvx/errors.hpp>
#include <polarcvx/function.hpp>
#include <polarcvx/spec_io.hpp>

#include <gtest/gtest.h>

#include <string>

using namespace polarcvx;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_function_spec(text);
  } catch (const SpecError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(SpecIo, ParsesNamedGauge) {
  const auto phi = parse_function_spec(R"({"dim":2,"family":"gauge","params":{"t":2},"body":{"name":"cube"}})");
  Vec x(2);
  x << 0.5, -0.25;
  EXPECT_EQ(phi.dim(), 2);
  EXPECT_NEAR(phi(x), 1.0, 1e-12);
}

TEST(SpecIo, RoundTrip) {
  Vec a(2), b(2);
  a << 1.0, 0.2;
  b << -0.5, 1.0;
  const std::vector<GeomCvxFn> cases{
      GeomCvxFn::hinged_gauge(ConvexBody::cross_polytope(2), 1.5),
      GeomCvxFn::power_gauge(ConvexBody::ball(2, 0.7), 3.0, 1.2),
      GeomCvxFn::restricted_gauge(ConvexBody::cube(2), ConvexBody::ball(2, 2.0)),
      GeomCvxFn::max_of({GeomCvxFn::gauge(ConvexBody::simplex(2), 1.0),
                         GeomCvxFn::indicator(ConvexBody::vertices({a, b, -a, -b}))}),
  };
  Vec x(2);
  x << 0.31, -0.47;
  for (const auto& phi : cases) {
    const std::string text = function_spec_json(phi);
    const auto back = parse_function_spec(text);
    EXPECT_EQ(back.family_name(), phi.family_name());
    EXPECT_NEAR(back(x), phi(x), 1e-12) << text;
    EXPECT_EQ(function_spec_json(back), text);
  }
}

TEST(SpecIo, MalformedJsonReportsPosition) {
  const std::string msg = error_of("{\"dim\": 2,\n  \"family\": }");
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  EXPECT_NE(msg.find("column"), std::string::npos) << msg;
}

TEST(SpecIo, FieldPathsInErrors) {
  EXPECT_NE(error_of(R"({"family":"gauge","body":{"name":"cube"}})").find("dim"), std::string::npos);
  const std::string bad_body = error_of(R"({"dim":2,"family":"gauge","params":{"t":1},"body":{"name":"blob"}})");
  EXPECT_NE(bad_body.find("$.body"), std::string::npos) << bad_body;
  const std::string bad_part =
      error_of(R"({"dim":2,"family":"max_of","parts":[{"family":"gauge","params":{"t":1},"body":{"name":"cube"}},
                   {"family":"nope"}]})");
  EXPECT_NE(bad_part.find("parts[1]"), std::string::npos) << bad_part;
}

TEST(SpecIo, MissingFileIsSpecError) {
  EXPECT_THROW(load_function_spec("/nonexistent/polarcvx/spec.json"), SpecError);
}

TEST(SpecIo, BodySpec) {
  const auto K = parse_body_spec(R"({"halfspaces":[{"a":[1,0],"b":1},{"a":[-1,0],"b":1},
                                      {"a":[0,1],"b":2},{"a":[0,-1],"b":2}]})");
  Vec u(2);
  u << 0.0, 1.0;
  EXPECT_NEAR(K.support(u), 2.0, 1e-12);
  EXPECT_EQ(parse_body_spec(body_spec_json(K)).dim(), 2);
}
