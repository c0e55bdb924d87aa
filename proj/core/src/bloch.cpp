#include "entsep/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "detail/rank_one.hpp"
#include "entsep/error.hpp"

namespace entsep {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_phase(double phi) {
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  if (phi >= two_pi) phi = 0.0;
  return phi;
}

void require_qubits(const AmplitudeTensor& t, std::size_t n) {
  if (!t.all_qubits()) throw PreconditionError("Bloch angles are defined for qubit parties only");
  if (t.n_parties() != n)
    throw ValidationError("tensor has " + std::to_string(t.n_parties()) + " parties but " +
                          std::to_string(n) + " angle pairs were given");
}

// Grid value k * span / r with the endpoint k == r hit exactly.
double grid_value(std::size_t k, std::size_t r, double span) {
  return k == r ? span : static_cast<double>(k) * span / static_cast<double>(r);
}

}  // namespace

void validate_angles(const BlochAngles& angles) {
  if (angles.empty()) throw ValidationError("at least one party's angles are required");
  for (std::size_t j = 0; j < angles.size(); ++j) {
    const auto [theta, phi] = angles[j];
    if (!std::isfinite(theta) || theta < 0.0 || theta > pi)
      throw ValidationError("theta of party " + std::to_string(j) + " outside [0, pi]");
    if (!std::isfinite(phi) || phi < 0.0 || phi >= two_pi)
      throw ValidationError("phi of party " + std::to_string(j) + " outside [0, 2pi)");
  }
}

AmplitudeTensor synthesize_product(const BlochAngles& angles) {
  validate_angles(angles);
  const std::size_t n = angles.size();
  if (n > 16) throw ResourceError("at most 16 qubits are supported");

  std::vector<Complex> zero(n), one(n);
  for (std::size_t j = 0; j < n; ++j) {
    zero[j] = std::cos(angles[j].theta / 2.0);
    one[j] = std::polar(std::sin(angles[j].theta / 2.0), angles[j].phi);
  }
  const std::size_t size = std::size_t{1} << n;
  std::vector<Complex> data(size);
  for (std::size_t flat = 0; flat < size; ++flat) {
    Complex amp = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const bool bit = (flat >> (n - 1 - j)) & 1u;
      amp *= bit ? one[j] : zero[j];
    }
    data[flat] = amp;
  }
  return AmplitudeTensor(std::vector<std::size_t>(n, 2), std::move(data));
}

BlochResidualReport verify_bloch_equations(const AmplitudeTensor& t, const BlochAngles& angles,
                                           bool strict) {
  require_qubits(t, angles.size());
  const AmplitudeTensor predicted = synthesize_product(angles);

  BlochResidualReport report;
  report.anchor_index = detail::anchor_index(t.data());
  Complex align = 1.0;
  if (!strict) {
    const Complex actual = t[report.anchor_index];
    const Complex model = predicted[report.anchor_index];
    const double gamma = std::arg(actual) - (std::abs(model) > 0.0 ? std::arg(model) : 0.0);
    report.global_phase = wrap_phase(gamma);
    align = std::polar(1.0, report.global_phase);
  }
  report.residuals.resize(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    report.residuals[i] = std::abs(align * predicted[i] - t[i]);
    report.max_residual = std::max(report.max_residual, report.residuals[i]);
  }
  return report;
}

AngleReconstruction reconstruct_angles(const AmplitudeTensor& t, BlochOptions opts) {
  require_qubits(t, t.n_parties());
  const double len = t.norm();
  if (!(len > 0.0)) throw PreconditionError("zero tensor has no Bloch angles");
  if (std::abs(len - 1.0) > opts.tol)
    throw PreconditionError("Bloch reconstruction needs a unit-norm state (norm " +
                            std::to_string(len) + ")");

  const std::size_t n = t.n_parties();
  const std::size_t anchor = detail::anchor_index(t.data());
  const double anchor_arg = std::arg(t[anchor]);
  // A neighbour this small cannot move any residual by more than tol.
  const double phase_floor = 0.5 * opts.tol;

  AngleReconstruction out;
  out.angles.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t bit = t.stride(j);
    double c2 = 0.0;
    for (std::size_t flat = 0; flat < t.size(); ++flat)
      if ((flat & bit) == 0) c2 += std::norm(t[flat]);
    c2 = std::clamp(c2 / (len * len), 0.0, 1.0);
    out.angles[j].theta = 2.0 * std::acos(std::sqrt(c2));

    const std::size_t neighbour = anchor ^ bit;
    double phi = 0.0;
    if (std::abs(t[neighbour]) > phase_floor) {
      const double step = std::arg(t[neighbour]) - anchor_arg;
      phi = (anchor & bit) ? -step : step;
    }
    out.angles[j].phi = wrap_phase(phi);
  }

  out.report = verify_bloch_equations(t, out.angles, opts.strict);
  out.success = out.report.max_residual <= opts.tol;
  return out;
}

std::optional<std::uint64_t> separable_table_size(std::size_t n_parties, std::size_t resolution) {
  const std::uint64_t r = resolution;
  if (r != 0 && r + 1 > UINT64_MAX / r) return std::nullopt;
  const std::uint64_t per_party = (r + 1) * r;
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < n_parties; ++j) {
    if (per_party != 0 && total > UINT64_MAX / per_party) return std::nullopt;
    total *= per_party;
  }
  return total;
}

void separable_table(std::size_t n_parties, std::size_t resolution,
                     const std::function<void(const SeparableTableEntry&)>& sink,
                     std::uint64_t cap) {
  if (n_parties == 0) throw ValidationError("table needs at least one party");
  if (resolution == 0) throw ValidationError("table resolution must be at least 1");
  const auto total = separable_table_size(n_parties, resolution);
  if (!total || *total > cap)
    throw ResourceError("separable table would have more than " + std::to_string(cap) +
                        " entries");

  const std::size_t r = resolution;
  const std::size_t per_party = (r + 1) * r;
  std::vector<std::size_t> digits(n_parties, 0);
  BlochAngles angles(n_parties);
  for (std::uint64_t count = 0; count < *total; ++count) {
    for (std::size_t j = 0; j < n_parties; ++j) {
      angles[j].theta = grid_value(digits[j] / r, r, pi);
      angles[j].phi = static_cast<double>(digits[j] % r) * two_pi / static_cast<double>(r);
    }
    sink(SeparableTableEntry{angles, synthesize_product(angles)});

    for (std::size_t j = n_parties; j-- > 0;) {
      if (++digits[j] < per_party) break;
      digits[j] = 0;
    }
  }
}

}  // namespace entsep
