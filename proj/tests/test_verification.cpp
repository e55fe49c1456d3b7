#include <gtest/gtest.h>

#include <set>

#include "hup/verification.hpp"

using namespace hup;

namespace {
std::vector<Campaign> toy_registry() {
  return {
      {"toy-pass", "x^2 >= 0 on random draws", {"n"},
       [](CampaignContext& c) {
         const int n = c.integer("n", 3);
         for (int k = 0; k < n; ++k) {
           const double x = detail::draw_in(c.rng(), -1, 1);
           c.at_least("x^2 at x=" + campaigns::fmt(x), x * x, 0.0);
         }
       }},
      {"toy-fail", "a deliberately false bound", {},
       [](CampaignContext& c) { c.at_most("one below zero", 1.0, 0.0); }},
      {"toy-throw", "a library error inside a guard", {},
       [](CampaignContext& c) { c.guard("sici", [] { sici(-1.0); }); }},
  };
}
}  // namespace

TEST(Registry, IdsAreUniqueAndDescribed) {
  const auto& reg = registry();
  EXPECT_EQ(reg.size(), 39u);
  std::set<std::string> ids;
  for (const Campaign& c : reg) {
    EXPECT_TRUE(ids.insert(c.id).second) << c.id;
    EXPECT_FALSE(c.anchor.empty()) << c.id;
    EXPECT_TRUE(c.body) << c.id;
  }
  const std::string listing = registry_listing();
  EXPECT_EQ(static_cast<std::size_t>(std::count(listing.begin(), listing.end(), '\n')), reg.size());
  EXPECT_EQ(campaign_ids().front(), reg.front().id);
}

TEST(Runner, EmptyRegistry) {
  auto rs = run_all(kDefaultSeed, {});
  EXPECT_TRUE(rs.empty());
  EXPECT_TRUE(all_pass(rs));
  EXPECT_EQ(summary_json(rs)["total"], 0);
}

TEST(Runner, PassFailAndErrors) {
  auto reg = toy_registry();
  auto rs = run_all(kDefaultSeed, reg);
  ASSERT_EQ(rs.size(), 3u);
  EXPECT_TRUE(rs[0].pass);
  EXPECT_EQ(rs[0].checks.size(), 3u);
  EXPECT_FALSE(rs[1].pass);
  EXPECT_DOUBLE_EQ(rs[1].checks[0].margin, -1.0);
  EXPECT_FALSE(rs[2].pass);
  EXPECT_TRUE(std::isnan(rs[2].checks[0].measured));
  EXPECT_FALSE(all_pass(rs));
  auto s = summary_json(rs);
  EXPECT_EQ(s["passed"], 1);
  EXPECT_EQ(s["pass"], false);
}

TEST(Runner, OverridesAndUnknowns) {
  auto reg = toy_registry();
  auto r = run_campaign("toy-pass", {{"n", {5}}}, {}, reg);
  EXPECT_EQ(r.checks.size(), 5u);
  EXPECT_EQ(r.parameters.at("n"), std::vector<double>{5});
  EXPECT_THROW(run_campaign("toy-pass", {{"m", {1}}}, {}, reg), InvalidInput);
  EXPECT_THROW(run_campaign("toy-pass", {{"n", {}}}, {}, reg), InvalidInput);
  EXPECT_THROW(run_campaign("bogus", {}, {}, reg), UnknownCampaign);
  EXPECT_THROW(run_campaign("bogus"), UnknownCampaign);
}

TEST(Runner, SeedsAreReproducible) {
  auto reg = toy_registry();
  const auto a = to_json(run_campaign("toy-pass", {}, {}, reg)).dump();
  const auto b = to_json(run_campaign("toy-pass", {}, {}, reg)).dump();
  EXPECT_EQ(a, b);
  const auto c = to_json(run_campaign("toy-pass", {}, {kDefaultSeed + 1, false}, reg)).dump();
  EXPECT_NE(a, c);
}

TEST(Runner, RealCampaignIsDeterministic) {
  const auto a = run_campaign("eq-duality.Uop.Wop.Cop.Kop");
  const auto b = run_campaign("eq-duality.Uop.Wop.Cop.Kop");
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  const auto c = run_campaign("eq-duality.Uop.Wop.Cop.Kop", {}, {7, false});
  EXPECT_TRUE(c.pass);
  EXPECT_NE(a.checks.front().description, c.checks.front().description);
}

TEST(Json, StableKeys) {
  auto reg = toy_registry();
  auto j = to_json(run_campaign("toy-pass", {}, {}, reg));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"campaign_id", "anchor", "seed", "parameters", "checks", "pass"}));
  std::vector<std::string> ck;
  for (auto it = j["checks"][0].begin(); it != j["checks"][0].end(); ++it) ck.push_back(it.key());
  EXPECT_EQ(ck, (std::vector<std::string>{"description", "measured", "relation", "target", "margin", "pass"}));
  auto t = to_json(run_campaign("toy-pass", {}, {kDefaultSeed, true}, reg));
  EXPECT_TRUE(t.contains("wall_time_s"));
  auto f = to_json(run_campaign("toy-throw", {}, {}, reg));
  EXPECT_TRUE(f["checks"][0]["measured"].is_null());
}

TEST(SmoothFamily, DrawsStayInsideRange) {
  std::mt19937_64 g(1);
  for (int k = 0; k < 50; ++k) {
    auto s = SmoothFamily::draw(g, 0.5, 3.0, true);
    auto [lo, hi] = s.bump_hull();
    EXPECT_GT(lo, 0.5 - 1e-12);
    EXPECT_LT(hi, 3.0 + 1e-12);
    EXPECT_FALSE(s.describe().empty());
  }
}
