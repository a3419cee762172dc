// Copyright 2026 The spinlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spinlab/product.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spinlab/combinatorics.hpp"
#include "spinlab/error.hpp"
#include "spinlab/parallel.hpp"
#include "spinlab/rng.hpp"

namespace spinlab {
namespace {

void require_unit(const Bloch& v) {
  if (std::abs(norm(v) - 1.0) > kUnitTolerance)
    throw ValidationError("Bloch vector is not a unit vector");
}

int letter_axis(PauliLetter l) {
  switch (l) {
    case PauliLetter::X: return 0;
    case PauliLetter::Y: return 1;
    case PauliLetter::Z: return 2;
    default: return -1;
  }
}

// Compact term list: value already multiplied by the normalization.
struct FlatTerm {
  double weight;
  std::vector<int> qubits;
  std::vector<int> axes;  // -1 for identity
};

std::vector<FlatTerm> flatten(const DisorderSample& sample) {
  const double norm_factor = sample.normalization();
  std::vector<FlatTerm> out;
  out.reserve(sample.entries.size());
  for (const auto& e : sample.entries) {
    if (e.value == 0.0) continue;
    FlatTerm t{norm_factor * e.value, e.term.qubits, {}};
    for (auto l : e.term.letters) t.axes.push_back(letter_axis(l));
    out.push_back(std::move(t));
  }
  return out;
}

double term_value(const FlatTerm& t, std::span<const Bloch> v) {
  double prod = t.weight;
  for (std::size_t k = 0; k < t.qubits.size(); ++k)
    if (t.axes[k] >= 0) prod *= v[static_cast<std::size_t>(t.qubits[k])][t.axes[k]];
  return prod;
}

// Per-qubit list of (term, position) pairs with a non-identity letter.
std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incidence(
    const std::vector<FlatTerm>& terms, int n) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> inc(static_cast<std::size_t>(n));
  for (std::size_t t = 0; t < terms.size(); ++t)
    for (std::size_t k = 0; k < terms[t].qubits.size(); ++k)
      if (terms[t].axes[k] >= 0) inc[static_cast<std::size_t>(terms[t].qubits[k])].push_back({t, k});
  return inc;
}

}  // namespace

BlochProductState BlochProductState::random(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Bloch> v(static_cast<std::size_t>(n));
  for (auto& b : v) {
    double r = 0;
    do {
      for (double& c : b) c = rng.normal();
      r = norm(b);
    } while (r < 1e-8);
    for (double& c : b) c /= r;
  }
  return BlochProductState(std::move(v));
}

double bloch_overlap(const Bloch& u, const Bloch& v) {
  require_unit(u);
  require_unit(v);
  return dot(u, v);
}

std::vector<double> overlap_profile(const BlochProductState& a, const BlochProductState& b) {
  if (a.n() != b.n()) throw DimensionError("product states differ in qubit count");
  std::vector<double> r(static_cast<std::size_t>(a.n()));
  for (int k = 0; k < a.n(); ++k) r[static_cast<std::size_t>(k)] = dot(a[k], b[k]);
  return r;
}

double elementary_symmetric(std::span<const double> values, int p) {
  if (p < 0) throw DomainError("negative degree");
  std::vector<double> e(static_cast<std::size_t>(p) + 1, 0.0);
  e[0] = 1.0;
  for (double x : values)
    for (int k = std::min<int>(p, static_cast<int>(values.size())); k >= 1; --k)
      e[static_cast<std::size_t>(k)] += x * e[static_cast<std::size_t>(k) - 1];
  return e[static_cast<std::size_t>(p)];
}

double covariance(int p, std::span<const double> profile) {
  const int n = static_cast<int>(profile.size());
  if (p < 1 || p > n)
    throw DomainError("covariance needs 1 <= p <= n (p = " + std::to_string(p) +
                      ", n = " + std::to_string(n) + ")");
  for (double r : profile)
    if (std::abs(r) > 1.0 + kUnitTolerance) throw ValidationError("overlap outside [-1, 1]");
  return elementary_symmetric(profile, p) / static_cast<double>(binomial(n, p));
}

CovarianceReport covariance_monte_carlo(int p, const BlochProductState& a,
                                        const BlochProductState& b, std::size_t samples,
                                        std::uint64_t seed, unsigned threads) {
  if (a.n() != b.n()) throw DimensionError("product states differ in qubit count");
  if (samples < 2) throw ParameterError("need at least two samples");
  const ModelConfig config{a.n(), p, false};
  config.validate();
  const auto profile = overlap_profile(a, b);

  // <a|H|a> = sum_t alpha_t fa[t], fa[t] = norm * prod of Bloch components.
  const auto terms = enumerate_terms(config);
  const double norm_factor = config.normalization();
  std::vector<double> fa(terms.size()), fb(terms.size());
  for (std::size_t t = 0; t < terms.size(); ++t) {
    double x = norm_factor, y = norm_factor;
    for (std::size_t k = 0; k < terms[t].qubits.size(); ++k) {
      const int ax = letter_axis(terms[t].letters[k]);
      x *= a[terms[t].qubits[k]][ax];
      y *= b[terms[t].qubits[k]][ax];
    }
    fa[t] = x;
    fb[t] = y;
  }

  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<double> sums(chunks), squares(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    Rng rng(seed_mix({seed, c}));
    const std::size_t begin = c * kChunk, end = std::min(samples, begin + kChunk);
    double s = 0, s2 = 0;
    for (std::size_t i = begin; i < end; ++i) {
      double ea = 0, eb = 0;
      for (std::size_t t = 0; t < fa.size(); ++t) {
        const double alpha = rng.normal();
        ea += alpha * fa[t];
        eb += alpha * fb[t];
      }
      s += ea * eb;
      s2 += (ea * eb) * (ea * eb);
    }
    sums[c] = s;
    squares[c] = s2;
  });
  double s = 0, s2 = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    s += sums[c];
    s2 += squares[c];
  }
  const double m = static_cast<double>(samples);
  const double mean = s / m;
  const double var = std::max(0.0, (s2 - m * mean * mean) / (m - 1));
  return {covariance(p, profile), mean, std::sqrt(var / m), samples};
}

double subadditivity_gap(int p, std::span<const double> profile, std::size_t m) {
  const std::size_t total = profile.size();
  if (m == 0 || m >= total) throw DomainError("split must leave both parts non-empty");
  if (p < 1) throw DomainError("p must be positive");
  const std::size_t k = total - m;
  double s1 = 0, s2 = 0;
  for (std::size_t i = 0; i < m; ++i) s1 += profile[i];
  for (std::size_t i = m; i < total; ++i) s2 += profile[i];
  auto term = [p](double s, std::size_t len) {
    return std::pow(s, p) / std::pow(static_cast<double>(len), p - 1);
  };
  return term(s1, m) + term(s2, k) - term(s1 + s2, total);
}

std::vector<Bloch> PackingNet::signed_points() const {
  std::vector<Bloch> out(points);
  for (const auto& v : points) out.push_back({-v[0], -v[1], -v[2]});
  return out;
}

PackingNet build_packing_net(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.5))
    throw ParameterError("packing epsilon must lie in (0, 0.5]");
  const double bound = 1.0 - epsilon;
  const double ring_step = std::acos(bound) * (1.0 + 1e-9);
  const double max_theta = std::acos(kNetMinHeight);

  std::vector<Bloch> candidates;
  int ring = 0;
  for (double theta = 0.0; theta <= max_theta; theta += ring_step, ++ring) {
    const double z = std::cos(theta), s = std::sin(theta);
    if (s < 1e-12) {
      candidates.push_back({0.0, 0.0, 1.0});
      continue;
    }
    // Same-ring points at azimuth gap dphi have dot z^2 + s^2 cos(dphi).
    const double c = (bound - z * z) / (s * s);
    int count = 1;
    if (c > -1.0) {
      const double min_gap = std::acos(std::min(1.0, c)) * (1.0 + 1e-9);
      count = std::max(1, static_cast<int>(std::floor(2.0 * std::numbers::pi / min_gap)));
    }
    const double gap = 2.0 * std::numbers::pi / count;
    const double offset = 0.5 * gap * (ring % 2);
    for (int j = 0; j < count; ++j) {
      const double phi = offset + gap * j;
      candidates.push_back({s * std::cos(phi), s * std::sin(phi), z});
    }
  }

  PackingNet net{epsilon, {}};
  for (const auto& v : candidates) {
    if (v[2] < kNetMinHeight) continue;
    const bool clash = std::any_of(net.points.begin(), net.points.end(),
                                   [&](const Bloch& u) { return std::abs(dot(u, v)) > bound; });
    if (!clash) net.points.push_back(v);
  }
  return net;
}

bool verify_packing_net(const PackingNet& net) {
  const double bound = 1.0 - net.epsilon;
  for (std::size_t i = 0; i < net.points.size(); ++i) {
    const auto& u = net.points[i];
    if (std::abs(norm(u) - 1.0) > kUnitTolerance || u[2] < kNetMinHeight) return false;
    for (std::size_t j = i + 1; j < net.points.size(); ++j)
      if (std::abs(dot(u, net.points[j])) > bound) return false;
  }
  return true;
}

std::uint64_t count_net_exceedances(const DisorderSample& sample, const PackingNet& net,
                                    double threshold, std::uint64_t limit) {
  const int n = sample.config.n;
  const auto choices = net.signed_points();
  const std::uint64_t q = choices.size();
  if (q == 0) throw ParameterError("empty packing net");
  // q^n with saturation.
  std::uint64_t total = 1;
  bool over = false;
  for (int i = 0; i < n; ++i) {
    if (total > limit / q + 1) {
      over = true;
      break;
    }
    total *= q;
  }
  if (over || total > limit)
    throw CapacityError("net enumeration needs " + std::to_string(q) + "^" + std::to_string(n) +
                        (over ? "" : " = " + std::to_string(total)) +
                        " states, limit is " + std::to_string(limit));

  const double cut = threshold * std::sqrt(static_cast<double>(n));
  const auto terms = flatten(sample);
  const auto inc = incidence(terms, n);

  // Reflected mixed-radix Gray enumeration: each step moves one qubit to an
  // adjacent choice and only the terms touching it are recomputed.
  std::vector<std::size_t> digit(static_cast<std::size_t>(n), 0);
  std::vector<int> direction(static_cast<std::size_t>(n), 1);
  std::vector<Bloch> state(static_cast<std::size_t>(n), choices[0]);
  std::vector<double> contribution(terms.size());
  auto full_energy = [&] {
    double e = 0;
    for (std::size_t t = 0; t < terms.size(); ++t) e += contribution[t] = term_value(terms[t], state);
    return e;
  };
  double energy = full_energy();
  std::uint64_t count = 0;
  constexpr std::uint64_t kResync = 1024;
  for (std::uint64_t step = 0;; ++step) {
    if (energy >= cut) ++count;
    if (step + 1 == total) break;
    std::size_t j = 0;
    while (true) {
      const auto next = static_cast<long long>(digit[j]) + direction[j];
      if (next >= 0 && next < static_cast<long long>(q)) break;
      direction[j] = -direction[j];
      ++j;
    }
    digit[j] = static_cast<std::size_t>(static_cast<long long>(digit[j]) + direction[j]);
    state[j] = choices[digit[j]];
    if ((step + 1) % kResync == 0) {
      energy = full_energy();
      continue;
    }
    for (const auto& [t, pos] : inc[j]) {
      (void)pos;
      const double v = term_value(terms[t], state);
      energy += v - contribution[t];
      contribution[t] = v;
    }
  }
  return count;
}

OptimizationResult optimize_product_state(const DisorderSample& sample, BlochProductState init,
                                          const OptimizerOptions& options) {
  const int n = sample.config.n;
  if (init.n() != n)
    throw DimensionError("initial state has " + std::to_string(init.n()) +
                         " qubits, Hamiltonian has " + std::to_string(n));
  if (options.max_sweeps < 0) throw ParameterError("max_sweeps must be non-negative");
  const auto terms = flatten(sample);
  const auto inc = incidence(terms, n);
  std::vector<Bloch> v(init.vectors().begin(), init.vectors().end());

  OptimizationResult r;
  double energy = product_energy(sample, init);
  r.sweep_trace.push_back(energy);
  if (options.record_updates) r.update_trace.push_back(energy);

  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    for (int q = 0; q < n; ++q) {
      Bloch h{0, 0, 0};
      for (const auto& [t, pos] : inc[static_cast<std::size_t>(q)]) {
        const auto& term = terms[t];
        double prod = term.weight;
        for (std::size_t k = 0; k < term.qubits.size(); ++k)
          if (k != pos && term.axes[k] >= 0)
            prod *= v[static_cast<std::size_t>(term.qubits[k])][term.axes[k]];
        h[term.axes[pos]] += prod;
      }
      const double len = norm(h);
      const Bloch& old = v[static_cast<std::size_t>(q)];
      if (len == 0.0 || len - dot(h, old) <= 0.0) {
        if (options.record_updates) r.update_trace.push_back(r.update_trace.back());
        continue;
      }
      v[static_cast<std::size_t>(q)] = {h[0] / len, h[1] / len, h[2] / len};
      if (options.record_updates)
        r.update_trace.push_back(product_energy(sample, BlochProductState(v)));
    }
    const double next = product_energy(sample, BlochProductState(v));
    r.sweep_trace.push_back(next);
    r.sweeps = sweep + 1;
    const double gain = next - energy;
    energy = next;
    if (gain < options.tol) {
      r.converged = true;
      break;
    }
  }
  r.state = BlochProductState(std::move(v));
  r.energy = energy;
  return r;
}

MultiStartResult optimize_multistart(const DisorderSample& sample,
                                     const MultiStartOptions& options) {
  if (options.restarts < 1) throw ParameterError("need at least one restart");
  const auto count = static_cast<std::size_t>(options.restarts);
  std::vector<OptimizationResult> runs(count);
  parallel_for(count, options.threads, [&](std::size_t i) {
    auto init = BlochProductState::random(sample.config.n, seed_mix({options.seed, i}));
    runs[i] = optimize_product_state(sample, std::move(init), options.optimizer);
  });
  MultiStartResult out;
  for (std::size_t i = 0; i < count; ++i) {
    out.initial_energies.push_back(runs[i].sweep_trace.front());
    out.final_energies.push_back(runs[i].energy);
    if (i == 0 || runs[i].energy > runs[static_cast<std::size_t>(out.best_restart)].energy)
      out.best_restart = static_cast<int>(i);
  }
  out.best = std::move(runs[static_cast<std::size_t>(out.best_restart)]);
  return out;
}

StateVector product_state_vector(const BlochProductState& state) {
  const int n = state.n();
  require_dense(n, "product_state_vector");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(1);
  for (int q = 0; q < n; ++q) {
    const auto& b = state[q];
    cplx a0, a1;
    // |psi> with <psi|sigma|psi> = b, in a gauge that avoids dividing by ~0.
    if (b[2] >= 0) {
      const double c = std::sqrt((1.0 + b[2]) / 2.0);
      a0 = c;
      a1 = cplx(b[0], b[1]) / (2.0 * c);
    } else {
      const double s = std::sqrt((1.0 - b[2]) / 2.0);
      a1 = s;
      a0 = cplx(b[0], -b[1]) / (2.0 * s);
    }
    Eigen::VectorXcd next(psi.size() * 2);
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
      next(2 * i) = psi(i) * a0;
      next(2 * i + 1) = psi(i) * a1;
    }
    psi = std::move(next);
  }
  return StateVector::normalized(n, std::move(psi));
}

}  // namespace spinlab
