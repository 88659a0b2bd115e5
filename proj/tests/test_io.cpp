#include <gtest/gtest.h>

#include <permrat/permrat.hpp>

using namespace permrat;

TEST(GroupInput, CycleText) {
  auto g = group_from_cycles("(1,2,3,4); (1,3)");
  EXPECT_EQ(g.order(), 8);
  EXPECT_EQ(g.degree(), 4u);
  EXPECT_EQ(group_from_cycles("(1,2)\n(1,2,3,4,5)").order(), 120);
  EXPECT_EQ(group_from_cycles("(1,2)", 5).degree(), 5u);
  EXPECT_THROW(group_from_cycles("(1,2"), InputError);
  EXPECT_THROW(group_from_cycles("1,2)"), InputError);
}

TEST(GroupInput, JsonGenerators) {
  auto a = group_from_json(Json::parse(R"j({"generators": [[1,2,0], [1,0,2]]})j"));
  EXPECT_EQ(a.order(), 6);
  auto b = group_from_json(Json::parse(R"j({"degree": 4, "generators": ["(1,2,3,4)", "(1,3)"]})j"));
  EXPECT_EQ(b.order(), 8);
  auto c = group_from_json(Json::parse(R"j({"generators": ["(1,2)", "(3,4,5)"]})j"));
  EXPECT_EQ(c.order(), 6);
  EXPECT_THROW(group_from_json(Json::parse(R"j({"generators": [[0,0,1]]})j")), InputError);
  EXPECT_THROW(group_from_json(Json::parse(R"j({"generators": []})j")), InputError);
  EXPECT_THROW(group_from_json(Json::parse(R"j({"gens": [[0]]})j")), InputError);
  EXPECT_THROW(group_from_json(Json::parse(R"j([1,2])j")), InputError);
  EXPECT_THROW(group_from_json(Json::parse(R"j({"generators": [5]})j")), InputError);
}

TEST(GroupInput, Builtins) {
  auto order = [](const char* text) { return group_from_json(Json::parse(text)).order(); };
  EXPECT_EQ(order(R"j({"builtin": "gl2", "q": 4})j"), 180);
  EXPECT_EQ(order(R"j({"builtin": "sl2", "q": 3})j"), 24);
  EXPECT_EQ(order(R"j({"builtin": "pgl2", "q": 7})j"), 336);
  EXPECT_EQ(order(R"j({"builtin": "psl2", "q": 9})j"), 360);
  EXPECT_EQ(order(R"j({"builtin": "cyclic", "n": 12})j"), 12);
  EXPECT_EQ(order(R"j({"builtin": "dihedral", "order": 10})j"), 10);
  EXPECT_EQ(order(R"j({"builtin": "dicyclic", "order": 12})j"), 12);
  EXPECT_EQ(order(R"j({"builtin": "quaternion", "order": 16})j"), 16);
  EXPECT_EQ(order(R"j({"builtin": "semidihedral", "order": 16})j"), 16);
  EXPECT_EQ(order(R"j({"builtin": "modular", "order": 16})j"), 16);
  EXPECT_EQ(order(R"j({"builtin": "semidirect", "n": 7, "m": 3, "r": 2})j"), 21);
  EXPECT_EQ(order(R"j({"builtin": "symmetric", "n": 4})j"), 24);
  EXPECT_EQ(order(R"j({"builtin": "alternating", "n": 5})j"), 60);
  EXPECT_EQ(order(R"j({"builtin": "heisenberg", "p": 3})j"), 27);
  EXPECT_EQ(order(R"j({"builtin": "abelian", "factors": [2, 6]})j"), 12);
  EXPECT_EQ(order(R"j({"builtin": "product", "factors": [{"builtin": "cyclic", "n": 3}, {"builtin": "sl2", "q": 3}]})j"), 72);
  EXPECT_THROW(order(R"j({"builtin": "monster"})j"), InputError);
  EXPECT_THROW(order(R"j({"builtin": "gl2"})j"), InputError);
  EXPECT_THROW(order(R"j({"builtin": "gl2", "q": "five"})j"), InputError);
  EXPECT_THROW(order(R"j({"builtin": "gl2", "q": 6})j"), InputError);
}

TEST(SchurTable, Parsing) {
  auto o = schur_table_from_json(Json::parse(R"j({"provenance": "x", "rules": [{"match": {"fs": -1}, "schur": 2}, {"schur": 1}]})j"));
  EXPECT_EQ(o.mode, SchurMode::user_table);
  ASSERT_EQ(o.rules.size(), 2u);
  EXPECT_EQ(o.rules[0].match.at("fs"), -1);
  EXPECT_TRUE(o.rules[1].match.empty());
  EXPECT_THROW(schur_table_from_json(Json::parse(R"j({"rules": [{"schur": 0}]})j")), InputError);
  EXPECT_THROW(schur_table_from_json(Json::parse(R"j({"rules": [{"match": {}}]})j")), InputError);
  EXPECT_THROW(schur_table_from_json(Json::parse(R"j({"table": []})j")), InputError);
  EXPECT_EQ(schur_mode_from_string("constant1"), SchurMode::constant1);
  EXPECT_EQ(schur_mode_from_string("fs-heuristic"), SchurMode::fs_heuristic);
  EXPECT_EQ(schur_mode_from_string("user-table"), SchurMode::user_table);
  EXPECT_THROW(schur_mode_from_string("guess"), InputError);
}

TEST(SchurTable, ShippedFixtureParses) {
  auto o = schur_table_from_json(read_json_file(std::filesystem::path(PERMRAT_FIXTURE_DIR) / "schur" / "sl2_17.json"));
  EXPECT_FALSE(o.rules.empty());
  EXPECT_THROW(read_json_file("/nonexistent/file.json"), InputError);
}

TEST(Output, HashIsStableAndSensitive) {
  auto a = group_hash(symmetric(4));
  EXPECT_EQ(a, group_hash(symmetric(4)));
  EXPECT_EQ(a.size(), 16u);
  EXPECT_NE(a, group_hash(alternating(4)));
  EXPECT_NE(a, group_hash(group_from_cycles("(1,2);(1,2,3,4)")));
}

TEST(Output, GroupAndResultJson) {
  auto g = sl2(3);
  auto j = group_json(g);
  EXPECT_EQ(j.at("order"), "24");
  // round trip through cycle strings
  Json spec{{"degree", j.at("degree")}, {"generators", j.at("generators")}};
  EXPECT_EQ(group_from_json(spec).order(), 24);
  auto fj = finab_json(FinAb::from_cyclic_orders({4, 2}));
  EXPECT_EQ(fj.at("order"), "8");
  EXPECT_EQ(fj.at("invariants"), Json::parse("[2,4]"));
  GlueOptions opt;
  auto r = compute_ch(g, opt);
  auto rj = ch_result_json(r, opt, true);
  EXPECT_EQ(rj.at("CH").at("invariants"), Json::parse("[2]"));
  EXPECT_EQ(rj.at("C").at("order"), "1");
  EXPECT_EQ(rj.dump(), ch_result_json(compute_ch(g, opt), opt, true).dump());
  auto pj = psl_certificate_json(psl_certificate(4, 5));
  EXPECT_EQ(pj.at("case"), "A");
}
