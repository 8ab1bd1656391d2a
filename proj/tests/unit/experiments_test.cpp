#include <gtest/gtest.h>

#include <cmath>

#include "socprec/error.hpp"
#include "socprec/experiments.hpp"

using socprec::RadiusMode;
using socprec::RadiusSpec;

TEST(Radius, ParsesModes) {
  EXPECT_EQ(socprec::parse_radius("sqrt-m").mode, RadiusMode::SqrtM);
  EXPECT_EQ(socprec::parse_radius("opt").mode, RadiusMode::Opt);
  const auto s = socprec::parse_radius("scaled:0.2");
  EXPECT_EQ(s.mode, RadiusMode::Scaled);
  EXPECT_DOUBLE_EQ(s.c, 0.2);
  EXPECT_EQ(socprec::to_string(s), "scaled:0.2");
  EXPECT_THROW(socprec::parse_radius("scaled:1.5"), socprec::DomainError);
  EXPECT_THROW(socprec::parse_radius("scaled:abc"), socprec::DomainError);
  EXPECT_THROW(socprec::parse_radius("huge"), socprec::DomainError);
}

TEST(Radius, ResolvesFiniteRadius) {
  const socprec::ProblemDims d{400, 200, 40};
  EXPECT_DOUBLE_EQ(socprec::resolve_radius({RadiusMode::SqrtM, 1.0}, d, 0.5, 0.1, 2.0, false),
                   2.0 * std::sqrt(200.0));
  EXPECT_DOUBLE_EQ(socprec::resolve_radius({RadiusMode::Scaled, 0.2}, d, 0.5, 0.1, 1.0, false),
                   std::sqrt(40.0));
  EXPECT_DOUBLE_EQ(socprec::resolve_radius({RadiusMode::Opt, 1.0}, d, 0.5, 0.1, 1.0, false),
                   20.0 * socprec::optimal_radius(0.5, 0.1, 1.0, false));
}

TEST(GenInstance, TableOneSetup) {
  const auto inst = socprec::gen_instance(400, 0.5, 0.1, 1.0, socprec::default_spike(400),
                                          {RadiusMode::SqrtM, 1.0}, false, 5, 0);
  EXPECT_EQ(inst.dims.m, 200);
  EXPECT_EQ(inst.dims.k, 40);
  EXPECT_EQ(inst.A.rows(), 200);
  EXPECT_EQ(inst.A.cols(), 400);
  EXPECT_EQ((inst.x_tilde.array() != 0.0).count(), 40);
  EXPECT_TRUE((inst.x_tilde.tail(40).array() == 2.0).all());
  EXPECT_TRUE((inst.x_tilde.head(360).array() == 0.0).all());
  EXPECT_EQ(inst.y, inst.A * inst.x_tilde + inst.v);
  EXPECT_DOUBLE_EQ(inst.r, std::sqrt(200.0));
}

TEST(GenInstance, ZeroSpikeLeavesOnlyNoise) {
  const auto inst = socprec::gen_instance(100, 0.5, 0.1, 1.0, 0.0, {RadiusMode::SqrtM, 1.0},
                                          false, 5, 1);
  EXPECT_EQ(inst.y, inst.v);
  EXPECT_EQ(inst.x_tilde.lpNorm<1>(), 0.0);
}

TEST(GenInstance, Deterministic) {
  const auto a = socprec::gen_instance(120, 0.4, 0.1, 1.5, 1.0, {RadiusMode::Opt, 1.0}, true, 9, 4);
  const auto b = socprec::gen_instance(120, 0.4, 0.1, 1.5, 1.0, {RadiusMode::Opt, 1.0}, true, 9, 4);
  EXPECT_EQ(a.A, b.A);
  EXPECT_EQ(a.y, b.y);
  EXPECT_EQ(a.r, b.r);
  const auto c = socprec::gen_instance(120, 0.4, 0.1, 1.5, 1.0, {RadiusMode::Opt, 1.0}, true, 9, 5);
  EXPECT_NE(a.A, c.A);
}

TEST(GenInstance, GaussianSanity) {
  for (std::uint32_t t = 0; t < 5; ++t) {
    const auto inst = socprec::gen_instance(400, 0.5, 0.1, 1.0, 2.0, {RadiusMode::SqrtM, 1.0},
                                            false, 21, t);
    const double count = static_cast<double>(inst.A.size());
    const double mean = inst.A.mean();
    const double var = (inst.A.array() - mean).square().sum() / count;
    EXPECT_LT(std::fabs(mean), 4.0 / std::sqrt(count));
    EXPECT_NEAR(var, 1.0, 0.05);
  }
}

TEST(GenInstance, RejectsBadDimensions) {
  EXPECT_THROW(socprec::gen_instance(10, 0.5, 0.01, 1.0, 1.0, {}, false, 1, 0), socprec::DomainError);
  EXPECT_THROW(socprec::gen_instance(10, 0.5, 0.1, -1.0, 1.0, {}, false, 1, 0), socprec::DomainError);
}

TEST(RunTrials, EmptyRunIsAnError) {
  socprec::ExperimentConfig cfg;
  cfg.trials = 0;
  EXPECT_THROW(socprec::run_trials(cfg), socprec::AggregateError);
}

TEST(RunTrials, ReportFieldsAndDeterminismAcrossThreads) {
  socprec::ExperimentConfig cfg;
  cfg.alpha = 0.5;
  cfg.beta_w = 0.1;
  cfg.n = 100;
  cfg.trials = 12;
  cfg.run_genie = true;
  cfg.run_socp = true;
  cfg.seed = 3;
  cfg.threads = 1;
  const auto a = socprec::run_trials(cfg);
  cfg.threads = 3;
  const auto b = socprec::run_trials(cfg);
  ASSERT_EQ(a.empirical.size(), 5u);
  for (const auto& [name, s] : a.empirical) {
    EXPECT_EQ(s.mean, b.empirical.at(name).mean) << name;
    EXPECT_EQ(s.std_error, b.empirical.at(name).std_error) << name;
  }
  EXPECT_EQ(a.m, 50);
  EXPECT_EQ(a.k, 10);
  EXPECT_DOUBLE_EQ(a.spike, 4.0);
  EXPECT_NEAR(a.theory.w_norm, socprec::predict_generic(a.regime).w_norm, 0.0);
  const auto& w = a.empirical.at("w_norm_socp");
  EXPECT_NEAR(w.std_error, w.std_dev / std::sqrt(static_cast<double>(w.count)), 1e-15);
}

TEST(RunTrials, PerTrialRecordsWhenRequested) {
  socprec::ExperimentConfig cfg;
  cfg.n = 60;
  cfg.trials = 4;
  cfg.keep_per_trial = true;
  const auto rep = socprec::run_trials(cfg);
  ASSERT_EQ(rep.per_trial.size(), 4u);
  EXPECT_EQ(rep.per_trial[2].trial, 2u);
  EXPECT_TRUE(rep.per_trial[0].values.count("w_norm_socp"));
}

TEST(RunTrials, SocpAndGenieObjectivesAgree) {
  socprec::ExperimentConfig cfg;
  cfg.alpha = 0.5;
  cfg.beta_w = 0.1;
  cfg.n = 400;
  cfg.trials = 40;
  cfg.run_genie = true;
  cfg.run_socp = true;
  cfg.seed = 8;
  const auto rep = socprec::run_trials(cfg);
  const auto& fs = rep.empirical.at("neg_fobj_over_sqrt_n");
  const auto& xs = rep.empirical.at("xi_over_sqrt_n");
  // Independent draws: allow four combined standard errors plus a small finite-n bias.
  const double spread = std::hypot(fs.std_error, xs.std_error);
  EXPECT_NEAR(fs.mean, -xs.mean, 4.0 * spread + 0.02 * std::fabs(xs.mean));
}
