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

#include "spinlab/matchings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "spinlab/combinatorics.hpp"
#include "spinlab/error.hpp"
#include "spinlab/parallel.hpp"
#include "spinlab/pauli.hpp"
#include "spinlab/rng.hpp"

namespace spinlab {

Matching::Matching(std::vector<int> partner) : partner_(std::move(partner)) {
  const int size = static_cast<int>(partner_.size());
  if (size % 2) throw ValidationError("matching must cover an even number of positions");
  for (int i = 0; i < size; ++i) {
    const int j = partner_[static_cast<std::size_t>(i)];
    if (j < 0 || j >= size || j == i || partner_[static_cast<std::size_t>(j)] != i)
      throw ValidationError("partner table is not a perfect matching");
  }
}

Matching Matching::from_pairs(const std::vector<std::pair<int, int>>& pairs) {
  const int size = 2 * static_cast<int>(pairs.size());
  std::vector<int> partner(static_cast<std::size_t>(size), -1);
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= size || b >= size || a == b ||
        partner[static_cast<std::size_t>(a)] != -1 || partner[static_cast<std::size_t>(b)] != -1)
      throw ValidationError("pairs are not disjoint or do not cover [0, 2d)");
    partner[static_cast<std::size_t>(a)] = b;
    partner[static_cast<std::size_t>(b)] = a;
  }
  return Matching(std::move(partner));
}

std::vector<std::pair<int, int>> Matching::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size(); ++i)
    if (partner(i) > i) out.emplace_back(i, partner(i));
  return out;
}

std::string Matching::to_string() const {
  std::string s;
  for (auto [a, b] : pairs()) s += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  return s;
}

std::vector<Matching> enumerate_matchings(int d) {
  if (d < 0) throw DomainError("negative matching size");
  if (d > kMaxEnumerationD)
    throw CapacityError("enumerate_matchings: d = " + std::to_string(d) + " exceeds " +
                        std::to_string(kMaxEnumerationD));
  std::vector<Matching> out;
  out.reserve(double_factorial_odd(d));
  std::vector<int> partner(static_cast<std::size_t>(2 * d), -1);
  auto rec = [&](auto&& self) -> void {
    const auto first = std::find(partner.begin(), partner.end(), -1);
    if (first == partner.end()) {
      out.emplace_back(partner);
      return;
    }
    const int i = static_cast<int>(first - partner.begin());
    for (int j = i + 1; j < 2 * d; ++j) {
      if (partner[static_cast<std::size_t>(j)] != -1) continue;
      partner[static_cast<std::size_t>(i)] = j;
      partner[static_cast<std::size_t>(j)] = i;
      self(self);
      partner[static_cast<std::size_t>(i)] = partner[static_cast<std::size_t>(j)] = -1;
    }
  };
  rec(rec);
  return out;
}

std::int64_t trace_sum(const Matching& m) {
  const int d = m.d();
  if (d > kMaxBruteForceD)
    throw CapacityError("trace_sum: 3^" + std::to_string(d) + " assignments exceeds the brute-force limit");
  if (d == 0) return 1;
  // Pair id of every position.
  std::vector<int> pair_of(static_cast<std::size_t>(2 * d));
  int next = 0;
  for (int i = 0; i < 2 * d; ++i)
    if (m.partner(i) > i) pair_of[static_cast<std::size_t>(i)] = pair_of[static_cast<std::size_t>(m.partner(i))] = next++;

  std::vector<int> digit(static_cast<std::size_t>(d), 0);
  std::vector<PauliLetter> seq(static_cast<std::size_t>(2 * d));
  ExactTrace total;
  for (;;) {
    for (int i = 0; i < 2 * d; ++i) seq[static_cast<std::size_t>(i)] = kXYZ[digit[static_cast<std::size_t>(pair_of[static_cast<std::size_t>(i)])]];
    total += trace_of_letter_sequence(seq);
    int k = 0;
    while (k < d && ++digit[static_cast<std::size_t>(k)] == 3) digit[static_cast<std::size_t>(k++)] = 0;
    if (k == d) break;
  }
  if (total.im != 0 || total.re % 2 != 0) throw Error("trace_sum: non-integral result");
  return total.re / 2;
}

std::int64_t TraceSumCache::evaluate(const Matching& m) { return eval(m.partners()); }

std::int64_t TraceSumCache::eval(const std::vector<int>& partner) {
  const int size = static_cast<int>(partner.size());
  if (size == 0) return 1;
  if (const auto it = memo_.find(partner); it != memo_.end()) return it->second;

  const int k = partner[0];
  // Keeps every position except 0 and `drop`, relabelled in order, with an
  // optional rewiring a <-> b among the survivors.
  auto reduce = [&](int drop, int a, int b) {
    std::vector<int> label(static_cast<std::size_t>(size), -1);
    int next = 0;
    for (int i = 1; i < size; ++i)
      if (i != drop) label[static_cast<std::size_t>(i)] = next++;
    std::vector<int> out(static_cast<std::size_t>(size - 2));
    for (int i = 1; i < size; ++i) {
      if (i == drop) continue;
      int t = partner[static_cast<std::size_t>(i)];
      if (i == a) t = b;
      if (i == b) t = a;
      out[static_cast<std::size_t>(label[static_cast<std::size_t>(i)])] = label[static_cast<std::size_t>(t)];
    }
    return out;
  };

  // Signs use 1-based positions: index i here is position i + 1.
  auto sign = [](int i) { return (i + 1) % 2 == 0 ? 1 : -1; };
  std::int64_t total = 3 * sign(k) * eval(reduce(k, -1, -1));
  for (int j = 1; j < size; ++j) {
    if (j == k) continue;
    total += sign(j) * eval(reduce(j, partner[static_cast<std::size_t>(j)], k));
  }
  memo_.emplace(partner, total);
  return total;
}

std::int64_t trace_sum_recursive(const Matching& m) {
  TraceSumCache cache;
  return cache.evaluate(m);
}

TraceSumAverage expected_trace_sum(int d, TraceMethod method) {
  const auto all = enumerate_matchings(d);
  TraceSumAverage avg{d, 0, static_cast<std::int64_t>(all.size())};
  TraceSumCache cache;
  for (const auto& m : all)
    avg.total += method == TraceMethod::BruteForce ? trace_sum(m) : cache.evaluate(m);
  return avg;
}

std::vector<Matching> induced_matchings(int n, const std::vector<std::vector<int>>& tuples,
                                        const std::vector<int>& order) {
  std::vector<Matching> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    // Positions (within the subsequence of replicas containing j) per tuple id.
    std::vector<int> first(tuples.size(), -1);
    std::vector<int> partner;
    for (int id : order) {
      const auto& t = tuples.at(static_cast<std::size_t>(id));
      if (!std::binary_search(t.begin(), t.end(), j)) continue;
      const int pos = static_cast<int>(partner.size());
      partner.push_back(-1);
      int& f = first[static_cast<std::size_t>(id)];
      if (f < 0) {
        f = pos;
      } else {
        partner[static_cast<std::size_t>(f)] = pos;
        partner[static_cast<std::size_t>(pos)] = f;
      }
    }
    out.emplace_back(std::move(partner));
  }
  return out;
}

HypergraphSample sample_hypergraph(int n, int p, int r, std::uint64_t seed) {
  if (p < 1 || p > n) throw DomainError("need 1 <= p <= n");
  if (r < 0) throw DomainError("negative tuple count");
  const std::uint64_t total = binomial(n, p);
  if (static_cast<std::uint64_t>(r) > total)
    throw DomainError("r = " + std::to_string(r) + " exceeds C(n,p) = " + std::to_string(total));

  Rng rng(seed);
  // Floyd's sampling of r distinct ranks.
  std::set<std::uint64_t> ranks;
  for (std::uint64_t j = total - static_cast<std::uint64_t>(r); j < total; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    if (!ranks.insert(t).second) ranks.insert(j);
  }
  HypergraphSample s{n, p, r, {}, {}, std::vector<int>(static_cast<std::size_t>(n), 0), {}};
  for (auto rank : ranks) {
    s.tuples.push_back(unrank_combination(rank, n, p));
    for (int q : s.tuples.back()) ++s.degrees[static_cast<std::size_t>(q)];
  }
  s.order.resize(static_cast<std::size_t>(2 * r));
  for (int i = 0; i < 2 * r; ++i) s.order[static_cast<std::size_t>(i)] = i % r;
  rng.shuffle(std::span<int>(s.order));
  s.induced = induced_matchings(n, s.tuples, s.order);
  return s;
}

namespace {

double sample_stderr(const std::vector<double>& v) {
  const double m = static_cast<double>(v.size());
  if (v.size() < 2) return 0.0;
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / m;
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (m - 1) / m);
}

double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / m;
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (m - 1));
}

}  // namespace

GammaEstimate estimate_gamma_ratio(int n, int p, int r, std::size_t samples, std::uint64_t seed,
                                   unsigned threads, int bootstrap) {
  if (samples == 0) throw ParameterError("need at least one sample");
  if (bootstrap < 0) throw ParameterError("negative bootstrap count");
  std::vector<double> lhs(samples), rhs(samples);
  constexpr std::size_t kChunk = 256;
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  parallel_for(chunks, threads, [&](std::size_t c) {
    TraceSumCache cache;
    for (std::size_t i = c * kChunk; i < std::min(samples, (c + 1) * kChunk); ++i) {
      const auto h = sample_hypergraph(n, p, r, seed_mix({seed, i}));
      double a = 1, b = 1;
      for (int j = 0; j < n; ++j) {
        const int deg = h.degrees[static_cast<std::size_t>(j)];
        if (deg > kMaxBruteForceD)
          throw CapacityError("qubit " + std::to_string(j) + " has degree " + std::to_string(deg) +
                              " > " + std::to_string(kMaxBruteForceD) + " in sample " + std::to_string(i));
        a *= static_cast<double>(cache.evaluate(h.induced[static_cast<std::size_t>(j)]));
        b *= 2.0 * deg + 1.0;
      }
      lhs[i] = a;
      rhs[i] = b;
    }
  });

  GammaEstimate e;
  e.n = n;
  e.p = p;
  e.r = r;
  e.samples = samples;
  const double m = static_cast<double>(samples);
  e.lhs_mean = std::accumulate(lhs.begin(), lhs.end(), 0.0) / m;
  e.rhs_mean = std::accumulate(rhs.begin(), rhs.end(), 0.0) / m;
  e.lhs_stderr = sample_stderr(lhs);
  e.rhs_stderr = sample_stderr(rhs);
  e.ratio = e.lhs_mean / e.rhs_mean;
  auto root = [r](double x) {
    if (r == 0) return 1.0;
    return x < 0 ? std::numeric_limits<double>::quiet_NaN() : std::pow(x, 1.0 / r);
  };
  e.per_r_ratio = root(e.ratio);

  Rng rng(seed_mix({seed, 0xB0075u}));
  std::vector<double> ratios, roots;
  for (int b = 0; b < bootstrap; ++b) {
    double sa = 0, sb = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      const auto k = rng.below(samples);
      sa += lhs[k];
      sb += rhs[k];
    }
    ratios.push_back(sa / sb);
    const double rt = root(sa / sb);
    if (!std::isnan(rt)) roots.push_back(rt);
  }
  e.ratio_stderr = stddev(ratios);
  e.per_r_stderr = stddev(roots);
  return e;
}

PoissonCheck poisson_degree_check(int n, int p, int r, std::size_t samples, std::uint64_t seed,
                                  unsigned threads) {
  if (samples == 0) throw ParameterError("need at least one sample");
  std::vector<int> deg(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    deg[i] = sample_hypergraph(n, p, r, seed_mix({seed, i})).degrees[0];
  });
  PoissonCheck c;
  c.lambda = static_cast<double>(p) * r / n;
  const int kmax = *std::max_element(deg.begin(), deg.end());
  std::vector<std::size_t> counts(static_cast<std::size_t>(kmax) + 1, 0);
  for (int d : deg) ++counts[static_cast<std::size_t>(d)];
  for (auto k : counts) c.empirical_pmf.push_back(static_cast<double>(k) / static_cast<double>(samples));

  double covered = 0, tv = 0;
  for (int k = 0; k <= kmax; ++k) {
    const double pk = c.lambda == 0 ? (k == 0 ? 1.0 : 0.0)
                                    : std::exp(k * std::log(c.lambda) - c.lambda - std::lgamma(k + 1.0));
    c.poisson_pmf.push_back(pk);
    covered += pk;
    tv += std::abs(pk - c.empirical_pmf[static_cast<std::size_t>(k)]);
  }
  if (covered < 1.0) tv += 1.0 - covered;
  c.tv_distance = 0.5 * tv;

  std::vector<double> v(deg.begin(), deg.end());
  c.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(samples);
  c.mean_stderr = sample_stderr(v);
  return c;
}

void BoundConfig::validate() const {
  if (p < 2) throw ParameterError("g bound needs p >= 2");
  if (!(gamma >= 1.0)) throw ParameterError("gamma must be at least 1");
  if (!(C > std::log(2.0))) throw ParameterError("C must exceed log 2");
  if (grid_points < 3) throw ParameterError("grid needs at least 3 points");
  const bool automatic = beta_min == 0 && beta_max == 0;
  if (!automatic) {
    if (!(beta_min > 0 && beta_max > beta_min)) throw ParameterError("invalid beta grid range");
    const double w = witness();
    if (w < beta_min || w > beta_max)
      throw ParameterError("beta grid [" + format_double(beta_min) + ", " + format_double(beta_max) +
                           "] does not cover the witness " + format_double(w));
  }
}

double BoundConfig::witness() const { return std::sqrt(2.0 * std::log(static_cast<double>(p)) / gamma); }

double g_bound(const BoundConfig& c, double beta) {
  return c.C / beta + beta * c.gamma / 2.0 + std::log1p(static_cast<double>(c.p) * c.gamma * beta * beta) / beta;
}

GBoundResult minimize_g(const BoundConfig& config) {
  config.validate();
  const double w = config.witness();
  const double lo = config.beta_min > 0 ? config.beta_min : w / 100.0;
  const double hi = config.beta_max > 0 ? config.beta_max : w * 100.0;
  const int pts = config.grid_points;

  std::vector<double> grid(static_cast<std::size_t>(pts));
  for (int i = 0; i < pts; ++i)
    grid[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (pts - 1));
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (g_bound(config, grid[i]) < g_bound(config, grid[best])) best = i;

  double a = grid[best == 0 ? 0 : best - 1];
  double b = grid[std::min(grid.size() - 1, best + 1)];
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = g_bound(config, x1), f2 = g_bound(config, x2);
  for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = g_bound(config, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = g_bound(config, x2);
    }
  }
  GBoundResult out;
  const double refined = 0.5 * (a + b);
  if (g_bound(config, refined) < g_bound(config, grid[best])) {
    out.beta_star = refined;
  } else {
    out.beta_star = grid[best];
  }
  out.g_min = g_bound(config, out.beta_star);

  const double L = std::log(static_cast<double>(config.p));
  const double pd = static_cast<double>(config.p);
  out.witness_beta = w;
  out.witness_terms = {config.C / w, w * config.gamma / 2.0, std::log1p(pd * config.gamma * w * w) / w};
  out.closed_form_terms = {config.C * std::sqrt(2.0 * config.gamma) / std::sqrt(L),
                           std::sqrt(config.gamma * L) / std::sqrt(2.0),
                           std::log1p(2.0 * pd * L) * std::sqrt(config.gamma) / std::sqrt(2.0 * L)};
  out.bound_value = g_bound(config, w);
  out.ratio_to_sqrt = out.g_min / std::sqrt(2.0 * config.gamma * L);
  return out;
}

json to_json(const GammaEstimate& e) {
  json j;
  j["n"] = e.n;
  j["p"] = e.p;
  j["r"] = e.r;
  j["samples"] = e.samples;
  j["lhs_mean"] = e.lhs_mean;
  j["lhs_stderr"] = e.lhs_stderr;
  j["rhs_mean"] = e.rhs_mean;
  j["rhs_stderr"] = e.rhs_stderr;
  j["ratio"] = e.ratio;
  j["ratio_stderr"] = e.ratio_stderr;
  j["per_r_ratio"] = std::isnan(e.per_r_ratio) ? json(nullptr) : json(e.per_r_ratio);
  j["per_r_stderr"] = e.per_r_stderr;
  return j;
}

json to_json(const PoissonCheck& c) {
  json j;
  j["lambda"] = c.lambda;
  j["empirical_pmf"] = c.empirical_pmf;
  j["poisson_pmf"] = c.poisson_pmf;
  j["tv_distance"] = c.tv_distance;
  j["mean"] = c.mean;
  j["mean_stderr"] = c.mean_stderr;
  return j;
}

json to_json(const GBoundResult& g, const BoundConfig& config) {
  json j;
  j["p"] = config.p;
  j["gamma"] = config.gamma;
  j["C"] = config.C;
  j["beta_star"] = g.beta_star;
  j["g_min"] = g.g_min;
  j["witness_beta"] = g.witness_beta;
  j["witness_terms"] = g.witness_terms;
  j["closed_form_terms"] = g.closed_form_terms;
  j["bound_value"] = g.bound_value;
  j["ratio_to_sqrt"] = g.ratio_to_sqrt;
  return j;
}

}  // namespace spinlab
