#include <doctest.h>

#include <algorithm>

#include "okh/error.hpp"
#include "support.hpp"

using namespace okh;

namespace {

const CheckResult* find(const DiagramReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.check == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("corpus loaders accept every layout") {
  auto single = corpus_from_json(nlohmann::json{{"name", "t"}, {"text", "X[1,1,2,2]"}});
  REQUIRE(single.size() == 1);
  CHECK(single[0].name == "t");
  CHECK(single[0].diagram.size() == 1);

  auto arr = corpus_from_json(nlohmann::json::array({{{"text", "O"}}, {{"text", "X[1,1,2,2]"}}}));
  CHECK(arr.size() == 2);

  auto wrapped = corpus_from_json(nlohmann::json{{"diagrams", nlohmann::json::array({{{"text", "O"}}})}});
  CHECK(wrapped.size() == 1);

  auto k = testing::knots();
  CHECK(k.size() == 13);
  auto g = load_corpus(testing::corpus_path("generated.json"));
  CHECK(g.size() == 20);
  for (const auto& e : g) CHECK(e.diagram.size() <= 10);

  for (const auto& e : k) {
    auto back = corpus_from_json(corpus_entry_to_json(e));
    REQUIRE(back.size() == 1);
    CHECK(back[0].name == e.name);
    CHECK(back[0].diagram == e.diagram);
  }
}

TEST_CASE("faulty corpus entry carries its corruption") {
  auto f = load_corpus(testing::corpus_path("faulty.json"));
  REQUIRE(f.size() == 1);
  REQUIRE(f[0].fault.has_value());
  CHECK(f[0].fault->crossing == 0);
  CHECK(f[0].fault->state.values == std::vector<int>{0, 1, 0});
}

TEST_CASE("verify catches the corrupted edge") {
  auto f = load_corpus(testing::corpus_path("faulty.json"));
  VerifyOptions o;
  o.variants = 1;
  DiagramReport r = verify_diagram(f[0], o);
  CHECK_FALSE(r.pass());
  REQUIRE(find(r, "d2-graded"));
  CHECK_FALSE(find(r, "d2-graded")->pass);
  CHECK_FALSE(find(r, "d2-lee")->pass);
  CHECK(find(r, "bracket=kauffman")->pass);
  CHECK(find(r, "r1-identities") == nullptr);
}

TEST_CASE("verify passes on the knot table") {
  VerifyOptions o;
  o.jobs = 2;
  for (const auto& e : testing::knots()) {
    if (e.diagram.size() > 5) continue;
    CAPTURE(e.name);
    DiagramReport r = verify_diagram(e, o);
    for (const auto& c : r.checks) {
      CAPTURE(c.check);
      CAPTURE(c.detail);
      CHECK(c.pass);
    }
    CHECK(r.checks.size() == 7);
  }
}
