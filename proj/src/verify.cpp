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

#include "spinlab/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "spinlab/error.hpp"
#include "spinlab/lovasz.hpp"
#include "spinlab/matchings.hpp"
#include "spinlab/moments.hpp"
#include "spinlab/pauli.hpp"
#include "spinlab/product.hpp"
#include "spinlab/rng.hpp"
#include "spinlab/spectral.hpp"

namespace spinlab {

namespace {

using Check = std::function<CheckResult()>;

CheckResult covariance_check(const VerifyOptions& o) {
  const std::size_t pairs = o.quick ? 4 : 20;
  const std::size_t samples = o.quick ? 20000 : 100000;
  double worst = 0;
  for (auto [n, p] : {std::pair{4, 2}, {6, 2}, {6, 3}}) {
    for (std::size_t k = 0; k < pairs; ++k) {
      const std::uint64_t s = seed_mix({o.seed, 0xC0u, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(p), k});
      const auto a = BlochProductState::random(n, seed_mix({s, 1}));
      const auto b = BlochProductState::random(n, seed_mix({s, 2}));
      const auto r = covariance_monte_carlo(p, a, b, samples, seed_mix({s, 3}), o.threads);
      worst = std::max(worst, std::abs(r.empirical - r.analytic) / r.standard_error);
    }
  }
  std::ostringstream d;
  d << "largest deviation " << worst << " standard errors over " << 3 * pairs << " pairs";
  return {"covariance formula", worst <= 3.0, d.str()};
}

CheckResult swap_check(const VerifyOptions&) {
  const Eigen::MatrixXcd expected = 2.0 * swap_operator().matrix - Eigen::MatrixXcd::Identity(4, 4);
  const bool ok = letter_pair_sum().matrix == expected;
  return {"SWAP identity", ok, ok ? "XX + YY + ZZ == 2 SWAP - I entrywise" : "entry mismatch"};
}

CheckResult trace_sum_check(const VerifyOptions& o) {
  const int dmax = o.quick ? 5 : 6;
  bool ok = true;
  std::ostringstream d;
  for (int k = 1; k <= dmax; ++k) {
    const auto a = expected_trace_sum(k);
    ok = ok && a.equals_two_d_plus_one();
    d << (k > 1 ? " " : "") << "d=" << k << ":" << a.total << "/" << a.count;
  }
  return {"trace sum expectation", ok, d.str()};
}

CheckResult recursion_check(const VerifyOptions& o) {
  const int dmax = o.quick ? 4 : 5;
  std::size_t count = 0, bad = 0;
  TraceSumCache cache;
  for (int k = 1; k <= dmax; ++k)
    for (const auto& m : enumerate_matchings(k)) {
      ++count;
      bad += cache.evaluate(m) != trace_sum(m);
    }
  return {"trace sum recursion", bad == 0,
          std::to_string(count - bad) + " of " + std::to_string(count) + " matchings agree"};
}

CheckResult purity_check(const VerifyOptions& o) {
  const std::uint64_t states = o.quick ? 10 : 50;
  double worst = 0;
  for (auto [n, p] : {std::pair{4, 2}, {5, 3}})
    for (std::uint64_t k = 0; k < states; ++k) {
      const auto s = haar_state(n, seed_mix({o.seed, 0xB0u, static_cast<std::uint64_t>(n), k}));
      worst = std::max(worst, std::abs(purity_variance(s, p) - state_variance(s, {n, p, false})));
    }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  const StateVector bell(2, v);
  const double b = purity_variance(bell, 2);
  std::ostringstream d;
  d << "max |purity - direct| = " << worst << ", Bell value " << b;
  return {"purity expansion", worst <= 1e-10 && std::abs(b - 3.0) <= 1e-12, d.str()};
}

CheckResult adjusted_check(const VerifyOptions& o) {
  const std::uint64_t states = o.quick ? 10 : 50;
  double worst = 0, largest = 0;
  for (std::uint64_t k = 0; k < states; ++k) {
    const auto s = haar_state(5, seed_mix({o.seed, 0xADu, k}));
    const double a = adjusted_variance(s, 2);
    worst = std::max(worst, std::abs(a - state_variance(s, {5, 2, true})));
    largest = std::max(largest, a);
  }
  std::ostringstream d;
  d << "max |average purity - direct| = " << worst << ", largest value " << largest;
  return {"adjusted model", worst <= 1e-10 && largest <= 1.0 + 1e-12, d.str()};
}

CheckResult product_variance_check(const VerifyOptions& o) {
  const std::uint64_t states = o.quick ? 10 : 50;
  double worst = 0;
  for (std::uint64_t k = 0; k < states; ++k) {
    const auto s = product_state_vector(BlochProductState::random(8, seed_mix({o.seed, 0x9Du, k})));
    worst = std::max(worst, std::abs(state_variance(s, {8, 3, false}) - 1.0));
  }
  std::ostringstream d;
  d << "max |variance - 1| = " << worst;
  return {"product-state variance", worst <= 1e-10, d.str()};
}

CheckResult lovasz_check(const VerifyOptions& o) {
  std::ostringstream d;
  const double c5 = lovasz_theta(Graph::cycle(5)).value;
  bool ok = std::abs(c5 - std::sqrt(5.0)) <= 1e-2;
  d << "theta(C5)=" << c5;
  const auto g3 = vertex_symmetric_product_check(3);
  ok = ok && g3.theta_G <= 3 + 1e-2 && g3.relative_error() <= 0.05;
  d << " theta(G3)=" << g3.theta_G << " product(3)=" << g3.product;
  if (!o.quick) {
    const auto g4 = vertex_symmetric_product_check(4);
    ok = ok && g4.theta_G <= 6 + 1e-2 && g4.relative_error() <= 0.05;
    d << " theta(G4)=" << g4.theta_G << " product(4)=" << g4.product;
  }
  const bool nine = verify_independent_set(anticommuting_nine(4));
  d << " nine-word set " << (nine ? "anticommutes" : "fails");
  return {"Lovasz theta", ok && nine, d.str()};
}

}  // namespace

std::vector<CheckResult> run_verification_suite(const VerifyOptions& options) {
  const std::vector<std::pair<std::string, std::function<CheckResult(const VerifyOptions&)>>> checks = {
      {"covariance formula", covariance_check},  {"SWAP identity", swap_check},
      {"trace sum expectation", trace_sum_check}, {"trace sum recursion", recursion_check},
      {"purity expansion", purity_check},         {"adjusted model", adjusted_check},
      {"product-state variance", product_variance_check}, {"Lovasz theta", lovasz_check}};
  std::vector<CheckResult> out;
  for (const auto& [name, fn] : checks) {
    try {
      out.push_back(fn(options));
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("error: ") + e.what()});
    }
  }
  return out;
}

json to_json(const std::vector<CheckResult>& results) {
  json arr = json::array();
  bool all = true;
  for (const auto& r : results) {
    arr.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    all = all && r.passed;
  }
  return {{"passed", all}, {"checks", std::move(arr)}};
}

}  // namespace spinlab
