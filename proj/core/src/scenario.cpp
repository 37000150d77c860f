#include "tdci/scenario.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace tdci {

namespace {

static_assert(std::endian::native == std::endian::little,
              "state files are written in host byte order");

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

struct DtStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  std::size_t dk_max = 0;
};

DtStats accepted_stats(const PropagationRecord& record) {
  DtStats s;
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& a : record.attempts) {
    if (!a.accepted) continue;
    s.min = (n == 0) ? a.dt : std::min(s.min, a.dt);
    s.max = std::max(s.max, a.dt);
    s.dk_max = std::max(s.dk_max, a.krylov_dimension);
    sum += a.dt;
    ++n;
  }
  if (n > 0) s.mean = sum / static_cast<double>(n);
  return s;
}

}  // namespace

Method parse_method(std::string_view name) {
  if (name == "alc") return Method::alc;
  if (name == "al1") return Method::al1;
  if (name == "al2") return Method::al2;
  if (name == "rk8") return Method::rk8;
  if (name == "rk4") return Method::rk4;
  if (name == "cn") return Method::cn;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::alc: return "alc";
    case Method::al1: return "al1";
    case Method::al2: return "al2";
    case Method::rk8: return "rk8";
    case Method::rk4: return "rk4";
    case Method::cn: return "cn";
  }
  return "?";
}

void validate(const ScenarioConfig& cfg) {
  if (cfg.particles == 0) throw std::invalid_argument("particles must be positive");
  if (cfg.orbitals == 0) throw std::invalid_argument("orbitals must be positive");
  if (!(cfg.g >= 0.0)) throw std::invalid_argument("g must be non-negative");
  if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("tol must be positive");
  if (cfg.dk_max < 2) throw std::invalid_argument("dkmax must be at least 2");
  if (!(cfg.t_end > 0.0)) throw std::invalid_argument("t-end must be positive");
  if (!(cfg.max_dt > 0.0)) throw std::invalid_argument("max-dt must be positive");
  if (cfg.method == Method::alc && cfg.drive != DriveCase::a) {
    throw std::invalid_argument("method alc needs a constant Hamiltonian (case a)");
  }
  const bool fixed = cfg.method == Method::rk4 || cfg.method == Method::cn;
  if (fixed && !cfg.dt) throw std::invalid_argument("methods rk4 and cn need --dt");
  if (!fixed && cfg.dt) throw std::invalid_argument("--dt applies only to rk4 and cn");
  if (cfg.dt && !(*cfg.dt > 0.0)) throw std::invalid_argument("dt must be positive");
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  validate(cfg);
  const WellModel model(cfg.particles, cfg.orbitals, cfg.g);
  const FockBasis basis = FockBasis::enumerate(cfg.particles, cfg.orbitals);
  const ModelOperators ops = assemble_operators(model, basis);

  ScenarioResult result;
  result.dimension = basis.size();
  result.initial_tilt = cfg.initial_tilt.value_or(preparation_tilt(cfg.drive));
  result.ground = ground_state(ops.a, ops.b, result.initial_tilt);

  const DriveFunction drive = DriveFunction::for_case(cfg.drive);
  const TimeSpan span{0.0, cfg.t_end};
  SampleOptions samples;
  samples.particles = cfg.particles;
  samples.interval = cfg.sample_interval;
  const StateVector& psi0 = result.ground.state;

  if (cfg.method == Method::rk4 || cfg.method == Method::cn) {
    FixedStepOptions opts;
    opts.dt = *cfg.dt;
    opts.gmres.residual_tol = cfg.gmres_tol;
    opts.samples = samples;
    result.propagation = cfg.method == Method::rk4
                             ? propagate_rk4_fixed(ops.a, ops.b, drive, psi0, span, opts)
                             : propagate_cn_fixed(ops.a, ops.b, drive, psi0, span, opts);
    return result;
  }

  AdaptiveOptions opts;
  opts.tolerance = cfg.tolerance;
  opts.krylov_dimension = cfg.dk_max;
  opts.max_dt = cfg.max_dt;
  opts.samples = samples;
  switch (cfg.method) {
    case Method::alc:
      result.propagation = propagate_alc(ops.a, ops.b, drive(0.0), psi0, span, opts);
      break;
    case Method::al1:
      result.propagation = propagate_al1(ops.a, ops.b, drive, psi0, span, opts);
      break;
    case Method::al2:
      result.propagation = propagate_al2(ops.a, ops.b, drive, psi0, span, opts);
      break;
    case Method::rk8:
      result.propagation = propagate_rk8(ops.a, ops.b, drive, psi0, span, opts);
      break;
    default:
      break;
  }
  return result;
}

double x_mean(std::span<const Complex> psi, const SparseOperator& b, unsigned particles) {
  if (psi.size() != b.dimension()) throw std::invalid_argument("state dimension mismatch");
  if (particles == 0) throw std::invalid_argument("particles must be positive");
  StateVector bpsi(psi.size());
  b.multiply(psi, bpsi);
  return inner(psi, bpsi).real() / particles;
}

double compare_states(std::span<const Complex> psi1, std::span<const Complex> psi2) {
  if (psi1.size() != psi2.size()) throw std::invalid_argument("state dimension mismatch");
  const Complex overlap = inner(psi2, psi1);
  const double mag = std::abs(overlap);
  const Complex phase = mag > 0.0 ? overlap / mag : Complex{1.0, 0.0};
  double sum = 0.0;
  for (std::size_t i = 0; i < psi1.size(); ++i) sum += std::norm(psi1[i] - phase * psi2[i]);
  return std::sqrt(sum);
}

double compare_states(const std::filesystem::path& path1, const std::filesystem::path& path2) {
  return compare_states(read_state(path1), read_state(path2));
}

std::uint64_t state_checksum(std::span<const Complex> psi) {
  std::uint64_t h = kFnvOffset;
  const auto* bytes = reinterpret_cast<const unsigned char*>(psi.data());
  for (std::size_t i = 0; i < psi.size_bytes(); ++i) {
    h ^= bytes[i];
    h *= kFnvPrime;
  }
  return h;
}

void write_state(const std::filesystem::path& path, std::span<const Complex> psi) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  const std::uint64_t n = psi.size();
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(psi.data()),
            static_cast<std::streamsize>(psi.size_bytes()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

StateVector read_state(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  if (!in) throw std::runtime_error(path.string() + ": missing dimension header");
  const auto bytes = std::filesystem::file_size(path);
  if (bytes != sizeof n + n * sizeof(Complex)) {
    throw std::runtime_error(path.string() + ": size does not match its header");
  }
  StateVector psi(n);
  in.read(reinterpret_cast<char*>(psi.data()), static_cast<std::streamsize>(n * sizeof(Complex)));
  if (!in) throw std::runtime_error(path.string() + ": truncated");
  return psi;
}

void write_series(std::ostream& out, const PropagationRecord& record) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::setprecision(17);
  out << "t,x_mean,norm,energy,dt,d_k,matvecs_cumulative\n";
  for (const auto& s : record.samples) {
    out << s.t << ',' << s.x_mean << ',' << s.norm << ',' << s.energy << ',' << s.dt << ','
        << s.krylov_dimension << ',' << s.matvecs << '\n';
  }
  out.flags(flags);
  out.precision(prec);
}

void write_report(std::ostream& out, const ScenarioConfig& cfg, const ScenarioResult& result) {
  const auto& rec = result.propagation.record;
  const auto& psi = result.propagation.state;
  const DtStats dt = accepted_stats(rec);
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::setprecision(17);
  out << "method=" << to_string(cfg.method) << '\n'
      << "case=" << to_char(cfg.drive) << '\n'
      << "particles=" << cfg.particles << '\n'
      << "orbitals=" << cfg.orbitals << '\n'
      << "dimension=" << result.dimension << '\n'
      << "g=" << cfg.g << '\n'
      << "tol=" << cfg.tolerance << '\n'
      << "dkmax=" << cfg.dk_max << '\n'
      << "t_end=" << cfg.t_end << '\n';
  if (cfg.dt) out << "dt_fixed=" << *cfg.dt << '\n';
  out << "initial_tilt=" << result.initial_tilt << '\n'
      << "ground_energy=" << result.ground.energy << '\n'
      << "ground_matvecs=" << result.ground.matvecs << '\n'
      << "matvecs_total=" << rec.matvecs_total << '\n'
      << "matvecs_rejected=" << rec.matvecs_rejected << '\n'
      << "steps_accepted=" << rec.steps_accepted << '\n'
      << "steps_rejected=" << rec.steps_rejected << '\n'
      << "dt_min=" << dt.min << '\n'
      << "dt_max=" << dt.max << '\n'
      << "dt_mean=" << dt.mean << '\n'
      << "dk_max_used=" << dt.dk_max << '\n'
      << "final_norm=" << norm(psi) << '\n';
  if (!rec.samples.empty()) out << "final_x_mean=" << rec.samples.back().x_mean << '\n';
  out << "state_checksum=" << std::hex << std::setw(16) << std::setfill('0')
      << state_checksum(psi) << std::dec << std::setfill(' ') << '\n';
  out.flags(flags);
  out.precision(prec);
}

std::map<std::string, std::string> parse_report(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("malformed report line: " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

}  // namespace tdci
