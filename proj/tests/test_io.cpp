#include "orbitool/orbitool.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace orbitool;

TEST_CASE("group spec parsing") {
  SECTION("explicit form") {
    Group g = group_from_json(json::parse(R"({"n":2,"d":4,"gens":[[1,3]]})"));
    CHECK(g.n() == 2);
    CHECK(g.d() == 4);
    CHECK(g.order() == 4);
  }
  SECTION("family form") {
    Group g = group_from_json(json::parse(R"({"family":"A","r":1,"n":4})"));
    CHECK(g.order() == 8);
    CHECK(g.is_a_family());
  }
  SECTION("unknown fields rejected") {
    CHECK_THROWS_AS(group_from_json(json::parse(R"({"n":2,"d":4,"gens":[[1,3]],"x":1})")),
                    ValidationError);
    CHECK_THROWS_AS(group_from_json(json::parse(R"({"family":"A","r":1,"n":4,"d":2})")),
                    ValidationError);
  }
  SECTION("malformed specs rejected") {
    CHECK_THROWS_AS(group_from_json(json::parse(R"({"n":2,"d":4})")), ValidationError);
    CHECK_THROWS_AS(group_from_json(json::parse(R"({"family":"B","r":1,"n":3})")),
                    ValidationError);
    CHECK_THROWS_AS(group_from_json(json::parse(R"({"n":2,"d":4,"gens":[[1,"x"]]})")),
                    ValidationError);
    CHECK_THROWS_AS(group_from_json(json::parse("[]")), ValidationError);
  }
  SECTION("round trip") {
    Group g = Group::a_family(2, 3);
    Group h = group_from_json(group_to_json(g));
    CHECK(h.n() == g.n());
    CHECK(h.d() == g.d());
    CHECK(h.gens() == g.gens());
  }
}

TEST_CASE("fan document round trip") {
  Group g = Group::a_family(1, 4);
  Decomposition d = build_a14(A14Kind::XiStar);
  json doc = fan_to_json(g, d);
  CHECK(doc["schema"] == "orbitool/1");
  auto [g2, d2] = fan_from_json(doc);
  CHECK(g2.order() == g.order());
  CHECK(same_decomposition(d, d2));
  CHECK(fan_to_json(g2, d2) == doc);

  SECTION("schema and field validation") {
    json bad = doc;
    bad["schema"] = "orbitool/2";
    CHECK_THROWS_AS(fan_from_json(bad), ValidationError);
    bad = doc;
    bad.erase("cells");
    CHECK_THROWS_AS(fan_from_json(bad), ValidationError);
    bad = doc;
    bad["extra"] = 1;
    CHECK_THROWS_AS(fan_from_json(bad), ValidationError);
    bad = doc;
    bad["vertices"][0][0] = json::array({1, 0});
    CHECK_THROWS_AS(fan_from_json(bad), ValidationError);
  }
}

TEST_CASE("fan check report shape") {
  Group g = Group::a_family(1, 4);
  json j = fan_check_json(g, build_a14(A14Kind::XiStar));
  CHECK(j["smooth"] == true);
  CHECK(j["crepant"] == false);
  CHECK(j["euler"] == 12);
  REQUIRE(j["discrepancies"].size() == 1);
  CHECK(j["discrepancies"][0]["coefficient"] == 1);
  CHECK(j["discrepancies"][0]["point"] == json::parse("[[1,4],[1,4],[1,4],[1,4]]"));
}

TEST_CASE("resolution report JSON is deterministic") {
  Group g = Group::a_family(1, 4);
  ResolutionReport rep = hilb_pipeline(g);
  std::string a = resolution_report_json(g, rep).dump(2);
  std::string b = resolution_report_json(g, hilb_pipeline(g)).dump(2);
  CHECK(a == b);
  json j = json::parse(a);
  CHECK(j["fixed_points"] == 12);
  CHECK(j["blow_downs"].size() == 3);
  CHECK(j["flop_edges"].size() == 3);
}

TEST_CASE("staircase text diagrams") {
  Group g = Group::a_family(2, 2);
  auto fixed = enumerate_fixed_points(g);
  std::string text = staircase_text(fixed[0]);
  CHECK(text.find("•") != std::string::npos);
  // the L-shape {(0,0),(0,1),(0,2)}: a single column
  CHECK(text == "• \n• \n• \n");

  Staircase cube = make_staircase(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  std::string layered = staircase_text(cube);
  CHECK(layered.find("layer (0):") != std::string::npos);
  CHECK(layered.find("layer (1):") != std::string::npos);
}

TEST_CASE("svg rendering") {
  Decomposition xi = build_xi_ar3(2);
  std::string svg = decomposition_svg(xi);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("(3,0,0)") != std::string::npos);   // corner label
  CHECK(svg.find("(1,1,1)") != std::string::npos);   // interior label
  CHECK(svg == decomposition_svg(build_xi_ar3(2)));  // deterministic
  CHECK_THROWS_AS(decomposition_svg(build_a14(A14Kind::Xi)), ValidationError);
}

TEST_CASE("dot flop graph") {
  Group g = Group::a_family(1, 4);
  ResolutionReport rep = hilb_pipeline(g);
  std::string dot = flop_graph_dot(rep);
  CHECK(dot.rfind("graph flops {", 0) == 0);
  CHECK(dot.find("v0 -- v1") != std::string::npos);
  CHECK(dot.find("v1 -- v2") != std::string::npos);
}

TEST_CASE("error objects") {
  json e = error_json("validation", "broken");
  CHECK(e["error"]["type"] == "validation");
  CHECK(e["error"]["message"] == "broken");
}
