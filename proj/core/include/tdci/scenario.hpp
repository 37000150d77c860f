#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "tdci/groundstate.hpp"
#include "tdci/model1d.hpp"
#include "tdci/propagators.hpp"

namespace tdci {

enum class Method { alc, al1, al2, rk8, rk4, cn };

Method parse_method(std::string_view name);
std::string_view to_string(Method m);

struct ScenarioConfig {
  unsigned particles = 0;
  unsigned orbitals = 0;
  double g = 2.0;
  DriveCase drive = DriveCase::a;
  Method method = Method::al1;
  double tolerance = 1e-6;
  std::size_t dk_max = 30;
  double t_end = 10.0;
  /// Tilt used to prepare the initial ground state; defaults per case.
  std::optional<double> initial_tilt;
  /// Step for rk4 and cn, required by those methods.
  std::optional<double> dt;
  double max_dt = std::numeric_limits<double>::infinity();
  double gmres_tol = 1e-6;
  /// Fixed-step methods: minimum time between recorded samples.
  double sample_interval = 0.0;
};

/// Throws std::invalid_argument describing the first problem found.
void validate(const ScenarioConfig& cfg);

struct ScenarioResult {
  std::uint64_t dimension = 0;
  double initial_tilt = 0.0;
  GroundState ground;
  PropagationResult propagation;
};

/// Builds the model, prepares the ground state at the initial tilt and
/// propagates it over [0, t_end].
ScenarioResult run_scenario(const ScenarioConfig& cfg);

/// <psi|B|psi> / N
double x_mean(std::span<const Complex> psi, const SparseOperator& b, unsigned particles);

/// ||psi1 - e^{i theta} psi2|| with theta the phase of <psi2, psi1>.
double compare_states(std::span<const Complex> psi1, std::span<const Complex> psi2);
double compare_states(const std::filesystem::path& path1, const std::filesystem::path& path2);

/// FNV-1a over the little-endian bytes of the amplitudes.
std::uint64_t state_checksum(std::span<const Complex> psi);

void write_state(const std::filesystem::path& path, std::span<const Complex> psi);
StateVector read_state(const std::filesystem::path& path);

void write_series(std::ostream& out, const PropagationRecord& record);
void write_report(std::ostream& out, const ScenarioConfig& cfg, const ScenarioResult& result);

/// key=value lines into a map; blank lines and '#' comments are skipped.
std::map<std::string, std::string> parse_report(std::istream& in);

}  // namespace tdci
