#include <gtest/gtest.h>

#include "nmfa/config.hpp"

using namespace nmfa;

TEST(RunConfig, ParsesAllKeys) {
  const auto cfg = parse_run_config(
      "# calibration run\n"
      "alpha = 0.2\n"
      "sigma=0.1   # trailing comment\n"
      "\n"
      "t_f = 250\n"
      "seed = 18446744073709551615\n"
      "schedule = 0:1.5, 0.5:0.3, 1:0.01\n"
      "n_runs = 40\n"
      "trajectory = on\n");
  EXPECT_EQ(cfg.alpha, 0.2);
  EXPECT_EQ(cfg.sigma, 0.1);
  EXPECT_EQ(cfg.t_f, 250u);
  EXPECT_EQ(cfg.seed, 18446744073709551615ULL);
  EXPECT_EQ(cfg.schedule, Schedule({{0.0, 1.5}, {0.5, 0.3}, {1.0, 0.01}}));
  EXPECT_EQ(cfg.n_runs, 40u);
  EXPECT_EQ(cfg.trajectory, true);

  NmfaParams params;
  cfg.apply(params);
  EXPECT_EQ(params.alpha, 0.2);
  EXPECT_EQ(params.t_f, 250u);
  EXPECT_EQ(params.schedule.breakpoints().size(), 3u);
}

TEST(RunConfig, MissingKeysLeaveDefaults) {
  const auto cfg = parse_run_config("sigma = 0\n");
  NmfaParams params;
  cfg.apply(params);
  EXPECT_EQ(params.sigma, 0.0);
  EXPECT_EQ(params.alpha, 0.15);
  EXPECT_EQ(params.t_f, 1000u);
  EXPECT_FALSE(cfg.trajectory);
}

TEST(RunConfig, Errors) {
  auto kind = [](const char* text) {
    try {
      parse_run_config(text);
    } catch (const ParseError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "accepted: " << text;
    return ParseErrorKind::BadHeader;
  };
  EXPECT_EQ(kind("beta = 3\n"), ParseErrorKind::UnknownKey);
  EXPECT_EQ(kind("alpha = 0\n"), ParseErrorKind::BadToken);
  EXPECT_EQ(kind("alpha = 1.5\n"), ParseErrorKind::BadToken);
  EXPECT_EQ(kind("sigma = -1\n"), ParseErrorKind::BadToken);
  EXPECT_EQ(kind("t_f = 0\n"), ParseErrorKind::BadToken);
  EXPECT_EQ(kind("t_f = 1.5\n"), ParseErrorKind::BadToken);
  EXPECT_EQ(kind("seed = -1\n"), ParseErrorKind::BadToken);
  EXPECT_EQ(kind("schedule = 0:1\n"), ParseErrorKind::BadToken);
  EXPECT_EQ(kind("trajectory = maybe\n"), ParseErrorKind::BadToken);
  EXPECT_EQ(kind("alpha 0.1\n"), ParseErrorKind::BadToken);
}
