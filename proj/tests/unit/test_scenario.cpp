#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "tdci/scenario.hpp"

using tdci::Complex;
using tdci::StateVector;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         ("tdci_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" + name);
}

tdci::ScenarioConfig small(tdci::Method m, tdci::DriveCase c) {
  tdci::ScenarioConfig cfg;
  cfg.particles = 2;
  cfg.orbitals = 5;
  cfg.drive = c;
  cfg.method = m;
  cfg.t_end = 1.0;
  return cfg;
}

}  // namespace

TEST(Method, ParseAndPrint) {
  for (auto m : {tdci::Method::alc, tdci::Method::al1, tdci::Method::al2, tdci::Method::rk8,
                 tdci::Method::rk4, tdci::Method::cn})
    EXPECT_EQ(tdci::parse_method(tdci::to_string(m)), m);
  EXPECT_THROW(tdci::parse_method("euler"), std::invalid_argument);
}

TEST(Validate, RejectsInconsistentConfigs) {
  auto cfg = small(tdci::Method::alc, tdci::DriveCase::b);
  EXPECT_THROW(tdci::validate(cfg), std::invalid_argument);
  cfg = small(tdci::Method::rk4, tdci::DriveCase::a);
  EXPECT_THROW(tdci::validate(cfg), std::invalid_argument);
  cfg.dt = 0.01;
  EXPECT_NO_THROW(tdci::validate(cfg));
  cfg.method = tdci::Method::al1;
  EXPECT_THROW(tdci::validate(cfg), std::invalid_argument);
  cfg = small(tdci::Method::al1, tdci::DriveCase::a);
  cfg.dk_max = 1;
  EXPECT_THROW(tdci::validate(cfg), std::invalid_argument);
  cfg = small(tdci::Method::al1, tdci::DriveCase::a);
  cfg.particles = 0;
  EXPECT_THROW(tdci::validate(cfg), std::invalid_argument);
  cfg = small(tdci::Method::al1, tdci::DriveCase::a);
  cfg.tolerance = 0.0;
  EXPECT_THROW(tdci::validate(cfg), std::invalid_argument);
}

TEST(XMean, SingleOrbitalIsHalf) {
  const auto basis = tdci::FockBasis::enumerate(3, 4);
  const auto ops = tdci::assemble_operators(tdci::WellModel(3, 4, 2.0), basis);
  StateVector v(basis.size());
  v[0] = 1.0;  // all three in orbital 1
  EXPECT_NEAR(tdci::x_mean(v, ops.b, 3), 0.5, 1e-14);
  EXPECT_THROW(tdci::x_mean(v, ops.b, 0), std::invalid_argument);
}

TEST(CompareStates, IdenticalAndPhaseRotated) {
  std::mt19937_64 rng(81);
  const auto v = oracle::random_state(20, rng, true);
  EXPECT_EQ(tdci::compare_states(v, v), 0.0);
  StateVector w(v);
  const Complex phase = std::polar(1.0, 1.234);
  for (auto& z : w) z *= phase;
  EXPECT_LT(tdci::compare_states(v, w), 1e-14);
  EXPECT_GT(tdci::distance(v, w), 0.5);
  StateVector u(v);
  u[3] += 0.01;
  EXPECT_NEAR(tdci::compare_states(v, u), 0.01, 1e-4);
  EXPECT_THROW(tdci::compare_states(v, StateVector(3)), std::invalid_argument);
}

TEST(StateFile, RoundTripAndValidation) {
  std::mt19937_64 rng(82);
  const auto v = oracle::random_state(33, rng, true);
  const auto path = temp_path("state.bin");
  tdci::write_state(path, v);
  EXPECT_EQ(std::filesystem::file_size(path), 8u + 33u * 16u);
  EXPECT_EQ(tdci::read_state(path), v);
  EXPECT_EQ(tdci::compare_states(path, path), 0.0);
  std::filesystem::resize_file(path, 8u + 10u * 16u);
  EXPECT_THROW(tdci::read_state(path), std::runtime_error);
  std::filesystem::remove(path);
  EXPECT_THROW(tdci::read_state(path), std::runtime_error);
}

TEST(Checksum, SensitiveToEveryBit) {
  StateVector v(4, Complex{0.5, -0.25});
  const auto c0 = tdci::state_checksum(v);
  EXPECT_EQ(c0, tdci::state_checksum(v));
  v[2] = std::nextafter(v[2].real(), 1.0);
  EXPECT_NE(c0, tdci::state_checksum(v));
}

TEST(Report, WriteAndParse) {
  const auto cfg = small(tdci::Method::al1, tdci::DriveCase::b);
  const auto result = tdci::run_scenario(cfg);
  std::stringstream s;
  tdci::write_report(s, cfg, result);
  const auto kv = tdci::parse_report(s);
  EXPECT_EQ(kv.at("method"), "al1");
  EXPECT_EQ(kv.at("case"), "b");
  EXPECT_EQ(kv.at("dimension"), "15");
  EXPECT_EQ(std::stoull(kv.at("matvecs_total")), result.propagation.record.matvecs_total);
  EXPECT_EQ(kv.at("state_checksum").size(), 16u);
  EXPECT_FALSE(kv.contains("dt_fixed"));
  for (const char* key : {"g", "tol", "dkmax", "t_end", "initial_tilt", "ground_energy", "ground_matvecs",
                          "matvecs_rejected", "steps_accepted", "steps_rejected", "dt_min", "dt_max",
                          "dt_mean", "dk_max_used", "final_norm", "final_x_mean"})
    EXPECT_TRUE(kv.contains(key)) << key;

  std::stringstream bad("method=al1\nnot a pair\n");
  EXPECT_THROW(tdci::parse_report(bad), std::runtime_error);
}

TEST(Series, HeaderAndRows) {
  const auto cfg = small(tdci::Method::rk8, tdci::DriveCase::c);
  const auto result = tdci::run_scenario(cfg);
  std::stringstream s;
  tdci::write_series(s, result.propagation.record);
  std::string line;
  std::getline(s, line);
  EXPECT_EQ(line, "t,x_mean,norm,energy,dt,d_k,matvecs_cumulative");
  std::size_t rows = 0;
  double last_t = -1.0;
  while (std::getline(s, line)) {
    ++rows;
    const double t = std::stod(line.substr(0, line.find(',')));
    EXPECT_GT(t, last_t);
    last_t = t;
  }
  EXPECT_EQ(rows, result.propagation.record.samples.size());
  EXPECT_DOUBLE_EQ(last_t, 1.0);
}

TEST(Scenario, Deterministic) {
  const auto cfg = small(tdci::Method::al2, tdci::DriveCase::d);
  const auto r1 = tdci::run_scenario(cfg);
  const auto r2 = tdci::run_scenario(cfg);
  EXPECT_EQ(r1.propagation.state, r2.propagation.state);
  EXPECT_EQ(r1.propagation.record.matvecs_total, r2.propagation.record.matvecs_total);
}

TEST(Scenario, TwoLevelFreeEvolutionClosedForm) {
  // One particle, two orbitals, no tilt after preparation: the populations
  // stay fixed and the relative phase winds at E2 - E1.
  tdci::ScenarioConfig cfg;
  cfg.particles = 1;
  cfg.orbitals = 2;
  cfg.g = 0.0;
  cfg.method = tdci::Method::rk8;
  cfg.t_end = 2.0;
  const auto r = tdci::run_scenario(cfg);
  const auto& psi0 = r.ground.state;
  const auto& psi = r.propagation.state;
  const double e1 = tdci::kinetic_energy(1), e2 = tdci::kinetic_energy(2);
  EXPECT_LT(std::abs(psi[0] - std::exp(Complex{0.0, -e1 * 2.0}) * psi0[0]), 1e-5);
  EXPECT_LT(std::abs(psi[1] - std::exp(Complex{0.0, -e2 * 2.0}) * psi0[1]), 1e-5);

  const double x12 = tdci::position_element(1, 2);
  for (const auto& s : r.propagation.record.samples) {
    const Complex c = std::conj(psi0[0]) * psi0[1] * std::exp(Complex{0.0, (e1 - e2) * s.t});
    EXPECT_NEAR(s.x_mean, 0.5 + 2.0 * x12 * c.real(), 1e-5) << s.t;
  }
}

TEST(Scenario, InteractionDampsInitialTilt) {
  // Repulsion spreads the prepared cloud, so it starts closer to the centre.
  auto cfg = small(tdci::Method::alc, tdci::DriveCase::a);
  cfg.particles = 3;
  cfg.g = 0.0;
  const auto free = tdci::run_scenario(cfg);
  cfg.g = 20.0;
  const auto repulsive = tdci::run_scenario(cfg);
  const double x0_free = free.propagation.record.samples.front().x_mean;
  const double x0_rep = repulsive.propagation.record.samples.front().x_mean;
  EXPECT_LT(x0_free, 0.5);
  EXPECT_GT(x0_rep, x0_free);
}

TEST(Scenario, FixedStepMethodsRun) {
  auto cfg = small(tdci::Method::rk4, tdci::DriveCase::b);
  cfg.dt = 0.001;
  const auto rk4 = tdci::run_scenario(cfg);
  EXPECT_EQ(rk4.propagation.record.matvecs_total, 4000u);
  cfg.method = tdci::Method::cn;
  cfg.gmres_tol = 1e-10;
  const auto cn = tdci::run_scenario(cfg);
  EXPECT_LT(tdci::compare_states(rk4.propagation.state, cn.propagation.state), 1e-2);
}
