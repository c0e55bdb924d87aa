#include "random_states.hpp"

#include <cmath>
#include <numbers>

#include "oracles.hpp"

namespace entsep::sample {

std::vector<Complex> haar_vector(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(dim);
  double sq = 0.0;
  for (auto& z : v) {
    z = {g(rng), g(rng)};
    sq += std::norm(z);
  }
  for (auto& z : v) z /= std::sqrt(sq);
  return v;
}

std::vector<Complex> random_qubit(Rng& rng) { return haar_vector(2, rng); }

AmplitudeTensor random_product(std::size_t n, Rng& rng) {
  std::vector<std::vector<Complex>> qubits;
  for (std::size_t j = 0; j < n; ++j) qubits.push_back(random_qubit(rng));
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  const Complex phase = std::polar(1.0, u(rng));
  auto data = oracle::kron_qubits(qubits);
  for (auto& z : data) z *= phase;
  return AmplitudeTensor(std::vector<std::size_t>(n, 2), std::move(data));
}

AmplitudeTensor random_non_product(std::size_t n, Rng& rng) {
  std::bernoulli_distribution split(0.5);
  const bool partial = n >= 3 && split(rng);
  const std::size_t block = partial ? n - 1 : n;
  std::vector<Complex> ent;
  do {
    ent = haar_vector(std::size_t{1} << block, rng);
  } while (oracle::second_singular_value_first_split(ent) < 1e-3);
  if (!partial) return AmplitudeTensor(std::vector<std::size_t>(n, 2), std::move(ent));
  const auto q = random_qubit(rng);
  std::vector<Complex> data;
  for (const Complex& a : q)
    for (const Complex& b : ent) data.push_back(a * b);
  return AmplitudeTensor(std::vector<std::size_t>(n, 2), std::move(data));
}

AmplitudeTensor bell() {
  const double r = 1.0 / std::numbers::sqrt2;
  return from_real({2, 2}, {r, 0, 0, r});
}

AmplitudeTensor ghz3() {
  const double r = 1.0 / std::numbers::sqrt2;
  return from_real({2, 2, 2}, {r, 0, 0, 0, 0, 0, 0, r});
}

AmplitudeTensor w3() {
  const double r = 1.0 / std::sqrt(3.0);
  return from_real({2, 2, 2}, {0, r, r, 0, r, 0, 0, 0});
}

AmplitudeTensor from_real(std::vector<std::size_t> dims, std::vector<double> values) {
  return AmplitudeTensor(std::move(dims), std::vector<Complex>(values.begin(), values.end()));
}

std::vector<Complex> to_vector(const AmplitudeTensor& t) {
  return {t.data().begin(), t.data().end()};
}

std::vector<std::size_t> dims_of(const AmplitudeTensor& t) {
  return {t.local_dims().begin(), t.local_dims().end()};
}

}  // namespace entsep::sample
