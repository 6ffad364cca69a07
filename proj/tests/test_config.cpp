#include <irsim/config.hpp>

#include <gtest/gtest.h>

#include <json.hpp>

#include <algorithm>

using namespace irsim;

namespace {

std::vector<ConfigIssue> issues_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.issues();
  }
  return {};
}

bool has_issue(const std::vector<ConfigIssue>& is, const std::string& path, const std::string& fragment = "") {
  return std::any_of(is.begin(), is.end(), [&](const ConfigIssue& i) {
    return i.path == path && i.message.find(fragment) != std::string::npos;
  });
}

}  // namespace

TEST(Config, EmptyDocumentGivesDefaults) {
  Config d;
  d.geometry.panel.spacing_y_m = d.geometry.panel.spacing_z_m = 0.5 * wavelength(2e9);
  EXPECT_EQ(parse_config(""), d);
  EXPECT_EQ(parse_config("  \n"), d);
  EXPECT_EQ(parse_config("{}"), d);
  const Config c = parse_config("");
  EXPECT_EQ(c.geometry.carrier_hz, 2e9);
  EXPECT_EQ(c.geometry.panel.m_y * c.geometry.panel.m_z, 100);
  EXPECT_EQ(c.geometry.tx_distance_m, 0.559);
  EXPECT_EQ(c.radio.reflection_amplitude, 0.9);
  EXPECT_EQ(c.radio.tx_power_dbm, 10.0);
}

TEST(Config, RoundTripDefaults) {
  const Config d = parse_config("");
  EXPECT_EQ(parse_config(serialize_config(d)), d);
}

TEST(Config, RoundTripModified) {
  Config c = parse_config("");
  c.seed = 0xFFFFFFFFFFFFULL;
  c.geometry.panel.m_y = 16;
  c.geometry.panel.spacing_z_m = 0.05;
  c.channel.spectrum.support_frame = "reflected";
  c.link_level.theta_g_deg = {15.0, 30.0};
  c.channel.pathloss.plos_d2_m = 70.0;
  c.radio.pattern_domain = "power";
  c.link_level.paths = {3, 7, 11};
  c.schemes = {"irs_cos3"};
  c.grid.aerial_height_m = 80.5;
  const Config back = parse_config(serialize_config(c));
  EXPECT_EQ(back, c);
  EXPECT_EQ(serialize_config(back), serialize_config(c));
}

TEST(Config, PartialDocumentKeepsOtherDefaults) {
  const Config c = parse_config(R"({"radio": {"tx_power_dbm": 20}, "seed": 9})");
  EXPECT_EQ(c.radio.tx_power_dbm, 20.0);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.radio.bandwidth_hz, 180e3);
}

TEST(Config, UnknownKeysRejectedWithPath) {
  const auto is = issues_of(R"({"radio": {"tx_powr_dbm": 20}, "extra": 1})");
  EXPECT_TRUE(has_issue(is, "radio.tx_powr_dbm", "unknown key"));
  EXPECT_TRUE(has_issue(is, "extra", "unknown key"));
}

TEST(Config, SpacingAboveHalfWavelength) {
  const double lam = wavelength(2e9);
  const auto is = issues_of(R"({"geometry": {"panel": {"spacing_y_m": )" + std::to_string(lam) + "}}}");
  ASSERT_EQ(is.size(), 1u);
  EXPECT_TRUE(has_issue(is, "geometry.panel.spacing_y_m", "[lambda/10, lambda/2]"));
}

TEST(Config, ReflectionAmplitudeAboveOne) {
  EXPECT_TRUE(has_issue(issues_of(R"({"radio": {"reflection_amplitude": 1.2}})"), "radio.reflection_amplitude", "[0, 1]"));
}

TEST(Config, TypeMismatchReportsExpectedUnit) {
  const auto is = issues_of(R"({"geometry": {"carrier_hz": "2GHz"}})");
  EXPECT_TRUE(has_issue(is, "geometry.carrier_hz", "number (Hz)"));
  EXPECT_TRUE(has_issue(is, "geometry.carrier_hz", "\"2GHz\""));
}

TEST(Config, CollectsEveryIssue) {
  const auto is = issues_of(R"({"geometry": {"panel": {"m_y": 9}}, "schemes": ["fixed", "laser"],
                               "grid": {"aerial_height_m": 500}, "budget": {"instances": 0}})");
  EXPECT_TRUE(has_issue(is, "geometry.panel.m_y", "even"));
  EXPECT_TRUE(has_issue(is, "schemes[1]", "laser"));
  EXPECT_TRUE(has_issue(is, "grid.aerial_height_m"));
  EXPECT_TRUE(has_issue(is, "budget.instances"));
  EXPECT_GE(is.size(), 4u);
}

TEST(Config, InvalidEnumerations) {
  EXPECT_TRUE(has_issue(issues_of(R"({"channel": {"spectrum": {"support_frame": "both"}}})"),
                        "channel.spectrum.support_frame"));
  EXPECT_TRUE(has_issue(issues_of(R"({"radio": {"pattern_domain": "db"}})"), "radio.pattern_domain"));
}

TEST(Config, EmptySpectrumSupportIsCaught) {
  const auto is = issues_of(R"({"channel": {"spectrum": {"support_frame": "substituted"}}})");
  EXPECT_TRUE(has_issue(is, "channel.spectrum.theta_g_deg", "empty"));
}

TEST(Config, MalformedJson) {
  const auto is = issues_of("{\"seed\": ");
  ASSERT_FALSE(is.empty());
  EXPECT_THROW(parse_config("[1, 2]"), ConfigError);
}

TEST(Config, NegativeSeedRejected) { EXPECT_TRUE(has_issue(issues_of(R"({"seed": -1})"), "seed")); }

TEST(Config, HashIsStableAndSensitive) {
  Config a, b;
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
  b.seed = 2;
  EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(Config, SerializedDocumentIsValidJson) {
  const auto j = nlohmann::json::parse(serialize_config(Config{}));
  EXPECT_EQ(j["geometry"]["tx_distance_m"].get<double>(), 0.559);
  EXPECT_EQ(j["schemes"].size(), 4u);
}

TEST(Config, EnumParsers) {
  EXPECT_EQ(parse_support_frame("substituted"), SupportFrame::substituted);
  EXPECT_EQ(parse_pattern_domain("power"), PatternDomain::power);
  EXPECT_THROW(parse_support_frame("x"), std::invalid_argument);
}
