#include "nphase/io.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

using namespace nphase;
using nphase::test::max_abs_diff;

namespace {

std::string pointer_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.where();
  }
  return "<no error>";
}

}  // namespace

TEST(FormatDouble, ShortestUnambiguous) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-2.5), "-2.5");
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
  for (double x : {std::log(2.0), 1e-300, 6.02214076e23, -kPi, 2.2250738585072014e-308}) EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(ConfigError, Message) {
  const ConfigError e("/params/0/beta", "out of range");
  EXPECT_EQ(e.where(), "/params/0/beta");
  EXPECT_STREQ(e.what(), "/params/0/beta: out of range");
  EXPECT_STREQ(ConfigError("", "bad").what(), "config: bad");
}

TEST(MatrixJson, RoundTripAndErrors) {
  const json j = json::parse(R"([[1, [0, -0.5]], [[0, 0.5], 2]])");
  const ComplexMatrix m = matrix_from_json(j, "/m");
  EXPECT_EQ(m(0, 1), cplx(0.0, -0.5));
  EXPECT_EQ(m(1, 1), cplx(2.0, 0.0));
  EXPECT_EQ(max_abs_diff(matrix_from_json(matrix_to_json(m), ""), m), 0.0);
  EXPECT_EQ(pointer_of([] { matrix_from_json(json::parse("[[1, 2], [3]]"), "/m"); }), "/m/1");
  EXPECT_EQ(pointer_of([] { matrix_from_json(json::parse(R"([[1, "x"]])"), "/m"); }), "/m/0/1");
  EXPECT_EQ(pointer_of([] { matrix_from_json(json::parse("[]"), "/m"); }), "/m");
}

TEST(StateJson, Kinds) {
  const StateSpec f = state_from_json(json::parse(R"({"kind": "fock", "n": 2})"), "/state");
  EXPECT_EQ(f.state.dim(), 3u);
  EXPECT_EQ(f.tail_mass, 0.0);

  const StateSpec c = state_from_json(json::parse(R"({"kind": "coherent", "z": [3, 0]})"), "/state");
  ASSERT_TRUE(c.coherent_amplitude.has_value());
  EXPECT_EQ(*c.coherent_amplitude, cplx(3.0, 0.0));
  EXPECT_EQ(c.state.dim(), coherent_default_dim(cplx(3.0, 0.0)));
  EXPECT_LT(c.tail_mass, 1e-12);

  const StateSpec t = state_from_json(json::parse(R"({"kind": "thermal", "nbar": 1.0, "dim": 50})"), "/state");
  EXPECT_NEAR(t.tail_mass, std::pow(0.5, 50), 1e-30);

  const StateSpec r1 = state_from_json(json::parse(R"({"kind": "random", "dim": 4})"), "/state", 11);
  const StateSpec r2 = state_from_json(json::parse(R"({"kind": "random", "dim": 4, "seed": 11})"), "/state");
  EXPECT_EQ(max_abs_diff(r1.state.matrix(), r2.state.matrix()), 0.0);
  const StateSpec mixed = state_from_json(json::parse(R"({"kind": "random", "dim": 3, "mixed": true, "seed": 1})"), "");
  EXPECT_EQ(mixed.state.dim(), 3u);

  const StateSpec m = state_from_json(json::parse(R"({"kind": "matrix", "matrix": [[0.5, 0.5], [0.5, 0.5]]})"), "/s");
  EXPECT_NEAR(m.state.matrix()(0, 1).real(), 0.5, 0.0);
}

TEST(StateJson, ErrorPointers) {
  EXPECT_EQ(pointer_of([] { state_from_json(json::parse(R"({"kind": "squeezed"})"), "/state"); }), "/state/kind");
  EXPECT_EQ(pointer_of([] { state_from_json(json::parse(R"({"n": 1})"), "/state"); }), "/state/kind");
  EXPECT_EQ(pointer_of([] { state_from_json(json::parse(R"({"kind": "fock"})"), "/state"); }), "/state/n");
  EXPECT_EQ(pointer_of([] { state_from_json(json::parse(R"({"kind": "fock", "n": -1})"), "/state"); }), "/state/n");
  EXPECT_EQ(pointer_of([] { state_from_json(json::parse(R"({"kind": "random", "dim": 4})"), "/state"); }),
            "/state/seed");
  // Truncation too short for the requested amplitude.
  EXPECT_EQ(pointer_of([] { state_from_json(json::parse(R"({"kind": "coherent", "z": 5, "dim": 10})"), "/state"); }),
            "/state");
  EXPECT_EQ(pointer_of([] { state_from_json(json::parse(R"({"kind": "matrix", "matrix": [[1, 0], [0, 1]]})"), "/state"); }),
            "/state");
}

TEST(ChannelJson, PresetsAndOperators) {
  EXPECT_EQ(channel_from_json(json::parse(R"({"preset": "identity", "dim": 3})"), "/c").dim_in(), 3u);
  EXPECT_EQ(channel_from_json(json::parse(R"({"preset": "depolarizing", "p": 0.2})"), "/c").size(), 4u);
  EXPECT_EQ(channel_from_json(json::parse(R"({"preset": "amplitude_damping", "gamma": 0.2})"), "/c").size(), 2u);
  const KrausSet k = channel_from_json(
      json::parse(R"({"operators": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]], "dim_in": 2, "dim_out": 2})"), "/c");
  EXPECT_EQ(k.size(), 2u);

  EXPECT_EQ(pointer_of([] { channel_from_json(json::parse(R"({"preset": "erasure"})"), "/c"); }), "/c/preset");
  EXPECT_EQ(pointer_of([] { channel_from_json(json::parse(R"({"preset": "phase_damping", "gamma": 2})"), "/c"); }),
            "/c");
  EXPECT_EQ(pointer_of([] { channel_from_json(json::parse(R"({"operators": [[[1, 0], [0, 1]]], "dim_in": 3})"), "/c"); }),
            "/c/operators/0");
  EXPECT_EQ(pointer_of([] { channel_from_json(json::parse(R"({"operators": [[[1, 0], [0, 0]]]})"), "/c"); }), "/c");
}

TEST(Writers, CsvAndJson) {
  SweepRow full;
  full.report = BoundReport{"mub", 2.0, 2.0 / 3.0, 1.0, 1.0, 1.0, 0.75, 0.25};
  full.seed = 42;
  SweepRow bound_only;
  bound_only.report = BoundReport{"angle", 1.0, 1.0, 0.0, 0.0, 0.0, std::log(8.0), 0.0};
  bound_only.has_entropy_sum = false;
  bound_only.metadata = json{{"delta", 0.5}};

  std::ostringstream os;
  write_csv(os, {full, bound_only});
  EXPECT_EQ(os.str(),
            "scenario,alpha,beta,s,t,entropy_sum,bound,slack,seed\n"
            "mub,2,0.66666666666666663,1,1,1,0.75,0.25,42\n"
            "angle,1,1,0,0,," +
                format_double(std::log(8.0)) + ",,\n");

  const json j = rows_to_json({full, bound_only});
  ASSERT_TRUE(j.contains("rows"));
  const json& rows = j["rows"];
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0]["seed"], 42);
  EXPECT_EQ(rows[0]["slack"], 0.25);
  EXPECT_FALSE(rows[0].contains("metadata"));
  EXPECT_TRUE(rows[1]["entropy_sum"].is_null());
  EXPECT_TRUE(rows[1]["slack"].is_null());
  EXPECT_TRUE(rows[1]["seed"].is_null());
  EXPECT_EQ(rows[1]["metadata"]["delta"], 0.5);
}
