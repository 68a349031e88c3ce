#include <gtest/gtest.h>

#include "minexp/json_io.hpp"

using namespace minexp;

TEST(CertificateJson, RefutedCycle) {
  Json j = to_json(certify_expansion_exact(cycle_graph(8), {0.5, 2.0}));
  EXPECT_EQ(j.dump(), R"({"alpha":0.5,"cap":2,"t":2.0,"verdict":"refuted","witness":[0,1]})");
}

TEST(CertificateJson, HeuristicVerdictIsLabelled) {
  ExpansionCertificate c;
  c.verdict = Verdict::passed_heuristic;
  c.params = {0.3, 3.0};
  c.checked_size_cap = 100;
  Json j = to_json(c);
  EXPECT_EQ(j["verdict"], "passed-heuristic");
  EXPECT_TRUE(j["witness"].is_null());
  EXPECT_TRUE(j.contains("note"));
}

TEST(GenSpecJson, RoundTripAndGenerate) {
  Json in = Json::parse(R"({"family":"d-out","n":300,"d":4,"seed":7})");
  GenSpec s = gen_spec_from_json(in);
  EXPECT_EQ(to_json(s), in);
  EXPECT_EQ(generate(s), gen_d_out(300, 4, 7));

  GenSpec k6 = gen_spec_from_json(Json::parse(R"({"family":"explicit","name":"complete","n":6})"));
  EXPECT_EQ(generate(k6), complete_graph(6));
  GenSpec grid = gen_spec_from_json(Json::parse(R"({"family":"explicit","name":"grid","rows":3,"cols":4})"));
  EXPECT_EQ(generate(grid), grid_graph(3, 4));
  EXPECT_EQ(to_json(grid), Json::parse(R"({"family":"explicit","name":"grid","rows":3,"cols":4})"));

  EXPECT_THROW(gen_spec_from_json(Json::parse(R"({"n":3})")), InputError);
  EXPECT_THROW(generate(gen_spec_from_json(Json::parse(R"({"family":"bogus"})"))), InputError);
  EXPECT_THROW(generate(gen_spec_from_json(Json::parse(R"({"family":"explicit","name":"bogus"})"))), InputError);
}

TEST(ModelJson, RoundTrip) {
  MinorModel m;
  m.pattern = complete_graph(3);
  m.branch_sets = {VertexSet{0, 1}, VertexSet{2, 3}, VertexSet{4, 5}};
  Json j = to_json(m);
  EXPECT_EQ(j["pattern_n"], 3);
  EXPECT_EQ(j["branch_sets"]["1"], Json::parse("[2,3]"));
  MinorModel back = minor_model_from_json(j);
  EXPECT_EQ(back.pattern, m.pattern);
  EXPECT_EQ(back.branch_sets, m.branch_sets);
  EXPECT_TRUE(verify_minor(cycle_graph(6), back).valid);
}

TEST(ModelJson, PatternSuppliedSeparately) {
  Json j = Json::parse(R"({"pattern_n":2,"branch_sets":{"0":[0],"1":[1]}})");
  EXPECT_THROW(minor_model_from_json(j), InputError);
  Graph k2 = complete_graph(2);
  MinorModel m = minor_model_from_json(j, &k2);
  EXPECT_TRUE(verify_minor(path_graph(3), m).valid);
  Graph k3 = complete_graph(3);
  EXPECT_THROW(minor_model_from_json(j, &k3), InputError);
}

TEST(ModelJson, RejectsMalformedInput) {
  Graph k2 = complete_graph(2);
  EXPECT_THROW(minor_model_from_json(Json::parse(R"({"pattern_n":2,"branch_sets":{"x":[0]}})"), &k2), InputError);
  EXPECT_THROW(minor_model_from_json(Json::parse(R"({"pattern_n":2,"branch_sets":{"5":[0]}})"), &k2), InputError);
  EXPECT_THROW(minor_model_from_json(Json::parse(R"({"pattern_n":2,"branch_sets":{"0":"a"}})"), &k2), InputError);
  EXPECT_THROW(minor_model_from_json(Json::parse(R"({"branch_sets":{}})"), &k2), InputError);
}

TEST(CountingJson, Fields) {
  Json j = to_json(count_bounds(1000, 3, 100));
  for (const char* key : {"n", "d", "m", "log_minor_upper", "log_graph_lower", "separation", "m_exceeds_n"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["m"], 100);
  EXPECT_FALSE(j["m_exceeds_n"].get<bool>());
}
