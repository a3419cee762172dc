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

#include "spinlab/lovasz.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "spinlab/combinatorics.hpp"
#include "spinlab/error.hpp"
#include "spinlab/model.hpp"

namespace spinlab {

Graph::Graph(int nodes) : n_(nodes) {
  if (nodes < 0) throw DomainError("negative node count");
  adj_.assign(static_cast<std::size_t>(nodes) * static_cast<std::size_t>(nodes), 0);
}

Graph Graph::complete(int nodes) {
  Graph g(nodes);
  for (int i = 0; i < nodes; ++i)
    for (int j = i + 1; j < nodes; ++j) g.add_edge(i, j);
  return g;
}

Graph Graph::cycle(int nodes) {
  if (nodes < 3) throw DomainError("a cycle needs at least 3 nodes");
  Graph g(nodes);
  for (int i = 0; i < nodes; ++i) g.add_edge(i, (i + 1) % nodes);
  return g;
}

bool Graph::adjacent(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw DomainError("node out of range");
  return adj_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)] != 0;
}

void Graph::add_edge(int i, int j) {
  if (i == j) throw ValidationError("self-loops are not allowed");
  if (adjacent(i, j)) return;
  const auto n = static_cast<std::size_t>(n_);
  adj_[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] = 1;
  adj_[static_cast<std::size_t>(j) * n + static_cast<std::size_t>(i)] = 1;
  ++edges_;
}

void Graph::remove_edge(int i, int j) {
  if (!adjacent(i, j)) return;
  const auto n = static_cast<std::size_t>(n_);
  adj_[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] = 0;
  adj_[static_cast<std::size_t>(j) * n + static_cast<std::size_t>(i)] = 0;
  --edges_;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edges_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (adjacent(i, j)) out.emplace_back(i, j);
  return out;
}

Graph Graph::complement() const {
  Graph g(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (!adjacent(i, j)) g.add_edge(i, j);
  return g;
}

std::string Graph::edge_list_csv() const {
  std::ostringstream os;
  os << "i,j\n";
  for (auto [i, j] : edges()) os << i << ',' << j << '\n';
  return os.str();
}

PauliGraph build_anticommutativity_graph(int n, int p) {
  const ModelConfig config{n, p, false};
  config.validate();
  if (n < 2) throw DomainError("need n >= 2");
  if (config.term_count() > kMaxPauliGraphNodes)
    throw CapacityError("anticommutativity graph would have " + std::to_string(config.term_count()) +
                        " nodes; limit is " + std::to_string(kMaxPauliGraphNodes));
  PauliGraph out{n, p, enumerate_terms(config), Graph()};
  const int count = static_cast<int>(out.nodes.size());
  out.graph = Graph(count);
  std::vector<PhasedPauli> words;
  words.reserve(out.nodes.size());
  for (const auto& t : out.nodes) words.push_back(t.to_word());
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j)
      if (anticommutes(words[static_cast<std::size_t>(i)], words[static_cast<std::size_t>(j)]))
        out.graph.add_edge(i, j);
  return out;
}

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Standard form: min <C, X> s.t. <A_k, X> = b_k, X PSD, with C = -J,
// A_0 = I (b = 1) and A_e = (E_ij + E_ji) / 2 (b = 0) for each edge.
struct Problem {
  int N;
  std::vector<std::pair<int, int>> edges;

  std::size_t m() const { return edges.size() + 1; }

  Vec apply(const Mat& W) const {
    Vec v(static_cast<Eigen::Index>(m()));
    v(0) = W.trace();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto [i, j] = edges[e];
      v(static_cast<Eigen::Index>(e + 1)) = 0.5 * (W(i, j) + W(j, i));
    }
    return v;
  }

  Mat adjoint(const Vec& y) const {
    Mat W = y(0) * Mat::Identity(N, N);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto [i, j] = edges[e];
      const double h = 0.5 * y(static_cast<Eigen::Index>(e + 1));
      W(i, j) += h;
      W(j, i) += h;
    }
    return W;
  }

  // M_kl = tr(A_k P A_l Q) for symmetric P, Q.
  Mat schur(const Mat& P, const Mat& Q) const {
    const auto mm = static_cast<Eigen::Index>(m());
    Mat M(mm, mm);
    const Mat R = Q * P;
    M(0, 0) = (P.array() * Q.array()).sum();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto [i, j] = edges[e];
      const auto ke = static_cast<Eigen::Index>(e + 1);
      M(0, ke) = M(ke, 0) = 0.5 * (R(i, j) + R(j, i));
      for (std::size_t f = e; f < edges.size(); ++f) {
        const auto [k, l] = edges[f];
        const double v = 0.25 * (P(j, k) * Q(l, i) + P(j, l) * Q(k, i) + P(i, k) * Q(l, j) + P(i, l) * Q(k, j));
        const auto kf = static_cast<Eigen::Index>(f + 1);
        M(ke, kf) = M(kf, ke) = v;
      }
    }
    return M;
  }
};

double max_eigenvalue(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

double min_eigenvalue(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Largest a with S + a dS PSD, given S positive definite.
double max_step(const Mat& S, const Mat& dS) {
  Eigen::LLT<Mat> llt(S);
  if (llt.info() != Eigen::Success) return 0;
  const Mat Li = llt.matrixL().solve(Mat::Identity(S.rows(), S.cols()));
  const Mat W = Li * dS * Li.transpose();
  const double lo = min_eigenvalue(0.5 * (W + W.transpose()));
  return lo >= 0 ? std::numeric_limits<double>::infinity() : -1.0 / lo;
}

struct Bracket {
  double lower, upper, psd_violation, edge_residual;
  Mat certificate;
};

Bracket evaluate(const Problem& pb, const Mat& X, const Vec& y) {
  const int N = pb.N;
  Bracket b{};
  Mat B(N, N);
  const Vec d = X.diagonal().cwiseMax(std::numeric_limits<double>::min()).cwiseSqrt();
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) B(i, j) = i == j ? 1.0 : X(i, j) / (d(i) * d(j));
  for (auto [i, j] : pb.edges) {
    b.edge_residual = std::max(b.edge_residual, std::abs(B(i, j)));
    B(i, j) = B(j, i) = 0;
  }
  b.psd_violation = std::max(0.0, -min_eigenvalue(B));
  b.lower = max_eigenvalue(B);
  b.certificate = std::move(B);

  Mat A = Mat::Ones(N, N);
  for (std::size_t e = 0; e < pb.edges.size(); ++e) {
    const auto [i, j] = pb.edges[e];
    A(i, j) = A(j, i) = 1.0 + 0.5 * y(static_cast<Eigen::Index>(e + 1));
  }
  b.upper = max_eigenvalue(A);
  return b;
}

}  // namespace

ThetaResult lovasz_theta(const Graph& graph, const ThetaOptions& options) {
  const int N = graph.nodes();
  if (N < 1) throw DomainError("graph has no nodes");
  if (!(options.tol > 0)) throw ParameterError("tol must be positive");
  if (N > kMaxThetaNodes)
    throw CapacityError("theta solver handles at most " + std::to_string(kMaxThetaNodes) + " nodes");
  Problem pb{N, graph.edges()};
  if (pb.m() > kMaxThetaConstraints)
    throw CapacityError("theta solver handles at most " + std::to_string(kMaxThetaConstraints - 1) +
                        " edges; graph has " + std::to_string(pb.edges.size()));

  const Mat C = -Mat::Ones(N, N);
  Vec b = Vec::Zero(static_cast<Eigen::Index>(pb.m()));
  b(0) = 1;

  // Strictly feasible start: X = I / N, y_0 = -(N + 1), Z = (N + 1) I - J.
  Mat X = Mat::Identity(N, N) / N;
  Vec y = Vec::Zero(static_cast<Eigen::Index>(pb.m()));
  y(0) = -(N + 1.0);
  Mat Z = C - pb.adjoint(y);

  ThetaResult out;
  Bracket best = evaluate(pb, X, y);
  double best_gap = best.upper - best.lower;
  const double target = 0.01 * options.tol;
  int it = 0;
  for (; it < options.max_iterations && best_gap > target; ++it) {
    Eigen::LLT<Mat> zllt(Z);
    if (zllt.info() != Eigen::Success) break;
    const Mat Zi = zllt.solve(Mat::Identity(N, N));
    const double mu = (X.array() * Z.array()).sum() / N;
    const Vec Rp = b - pb.apply(X);
    const Mat Rd = C - Z - pb.adjoint(y);
    const Mat M = pb.schur(X, Zi);
    Eigen::LDLT<Mat> ldlt(M);
    if (ldlt.info() != Eigen::Success) break;
    const Mat XRdZi = X * Rd * Zi;

    auto direction = [&](const Mat& K, Mat& dX, Vec& dy, Mat& dZ) {
      dy = ldlt.solve(Rp - pb.apply(K) + pb.apply(XRdZi));
      dZ = Rd - pb.adjoint(dy);
      const Mat T = K - X * dZ * Zi;
      dX = 0.5 * (T + T.transpose());
    };
    auto steps = [&](const Mat& dX, const Mat& dZ) {
      return std::pair{std::min(1.0, 0.95 * max_step(X, dX)), std::min(1.0, 0.95 * max_step(Z, dZ))};
    };

    // Mehrotra predictor-corrector.
    Mat dXa, dZa, dX, dZ;
    Vec dya, dy;
    direction(-X, dXa, dya, dZa);
    const auto [ap, ad] = steps(dXa, dZa);
    const double mu_aff = ((X + ap * dXa).array() * (Z + ad * dZa).array()).sum() / N;
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);
    direction(sigma * mu * Zi - X - dXa * dZa * Zi, dX, dy, dZ);
    const auto [sp, sd] = steps(dX, dZ);
    if (sp <= 0 || sd <= 0) break;
    X += sp * dX;
    X = 0.5 * (X + X.transpose());
    y += sd * dy;
    Z += sd * dZ;
    Z = 0.5 * (Z + Z.transpose());

    Bracket now = evaluate(pb, X, y);
    // Keep the tightest certified bounds seen so far.
    if (now.psd_violation <= 1e-9 && now.lower > best.lower) {
      best.lower = now.lower;
      best.certificate = std::move(now.certificate);
      best.psd_violation = now.psd_violation;
      best.edge_residual = now.edge_residual;
    }
    best.upper = std::min(best.upper, now.upper);
    best_gap = best.upper - best.lower;
  }

  out.lower_bound = best.lower;
  out.upper_bound = best.upper;
  out.value = best.lower;
  out.certificate = std::move(best.certificate);
  out.psd_violation = best.psd_violation;
  out.edge_residual = best.edge_residual;
  out.diagonal_residual = (out.certificate.diagonal().array() - 1.0).abs().maxCoeff();
  out.iterations = it;
  if (!(out.gap() <= options.tol))
    throw ConvergenceError("theta bracket did not close: gap " + std::to_string(out.gap()), out.gap());
  return out;
}

std::vector<PhasedPauli> anticommuting_nine(int n) {
  if (n < 4) throw DomainError("the nine-word set needs n >= 4");
  const char* rows[9] = {"XX", "XY", "XZ", "YX", "YY", "YZ", "ZX", "ZY", "ZZ"};
  const int partner[9] = {1, 1, 1, 2, 2, 2, 3, 3, 3};
  std::vector<PhasedPauli> out;
  for (int k = 0; k < 9; ++k) {
    PhasedPauli w(n);
    w.set_letter(0, letter_from_char(rows[k][0]));
    w.set_letter(partner[k], letter_from_char(rows[k][1]));
    out.push_back(w);
  }
  return out;
}

bool verify_independent_set(const std::vector<PhasedPauli>& words) {
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j)
      if (!anticommutes(words[i], words[j])) return false;
  return true;
}

VertexSymmetricCheck vertex_symmetric_product_check(int n, const ThetaOptions& options) {
  const auto g = build_anticommutativity_graph(n, 2);
  VertexSymmetricCheck out;
  out.n = n;
  out.theta_G = lovasz_theta(g.graph, options).value;
  out.theta_Gbar = lovasz_theta(g.graph.complement(), options).value;
  out.product = out.theta_G * out.theta_Gbar;
  out.target = 9.0 * static_cast<double>(binomial(n, 2));
  return out;
}

json to_json(const ThetaResult& r) {
  json j;
  j["value"] = r.value;
  j["lower_bound"] = r.lower_bound;
  j["upper_bound"] = r.upper_bound;
  j["gap"] = r.gap();
  j["iterations"] = r.iterations;
  j["residuals"] = {{"psd_violation", r.psd_violation},
                    {"diagonal", r.diagonal_residual},
                    {"edge", r.edge_residual}};
  json rows = json::array();
  for (Eigen::Index i = 0; i < r.certificate.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < r.certificate.cols(); ++k) row.push_back(r.certificate(i, k));
    rows.push_back(std::move(row));
  }
  j["certificate"] = std::move(rows);
  return j;
}

}  // namespace spinlab
