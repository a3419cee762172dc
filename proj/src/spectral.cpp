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

#include "spinlab/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "spinlab/error.hpp"
#include "spinlab/io.hpp"
#include "spinlab/rng.hpp"

namespace spinlab {
namespace {

std::span<const cplx> view(const Eigen::VectorXcd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}
std::span<cplx> view(Eigen::VectorXcd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

// Full index of (kept index a, traced index t) for sorted `keep`.
std::vector<std::uint64_t> index_table(int n, const std::vector<int>& keep) {
  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (!std::binary_search(keep.begin(), keep.end(), q)) traced.push_back(q);
  const std::uint64_t ka = std::uint64_t{1} << keep.size();
  const std::uint64_t kt = std::uint64_t{1} << traced.size();
  std::vector<std::uint64_t> table(ka * kt);
  for (std::uint64_t a = 0; a < ka; ++a)
    for (std::uint64_t t = 0; t < kt; ++t) {
      std::uint64_t full = 0;
      for (std::size_t i = 0; i < keep.size(); ++i)
        if ((a >> (keep.size() - 1 - i)) & 1) full |= std::uint64_t{1} << qubit_bit(n, keep[i]);
      for (std::size_t i = 0; i < traced.size(); ++i)
        if ((t >> (traced.size() - 1 - i)) & 1) full |= std::uint64_t{1} << qubit_bit(n, traced[i]);
      table[a * kt + t] = full;
    }
  return table;
}

std::vector<int> checked_keep(int n, std::vector<int> keep) {
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw ValidationError("partial_trace: repeated qubit in keep set");
  for (int q : keep)
    if (q < 0 || q >= n) throw ValidationError("partial_trace: qubit " + std::to_string(q) + " out of range");
  return keep;
}

}  // namespace

EigenPair lanczos_max(const ApplyFn& apply, std::uint64_t dim, const LanczosOptions& options) {
  if (dim == 0) throw DimensionError("empty operator");
  if (!(options.tol > 0)) throw ParameterError("tolerance must be positive");
  const auto d = static_cast<Eigen::Index>(dim);
  int m = options.krylov;
  if (m <= 0) m = dim <= 4096 ? static_cast<int>(std::min<std::uint64_t>(dim, 160)) : 40;
  m = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(m), dim));

  Rng rng(options.seed);
  Eigen::VectorXcd x(d);
  for (auto& c : x) c = cplx(rng.normal(), rng.normal());
  x.normalize();

  Eigen::MatrixXcd basis(d, m);
  Eigen::VectorXcd w(d), hx(d);
  EigenPair best;
  best.residual = std::numeric_limits<double>::infinity();

  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    std::vector<double> alpha, beta;
    basis.col(0) = x;
    int k = 0;
    for (int j = 0; j < m; ++j) {
      const Eigen::VectorXcd vj = basis.col(j);
      apply(view(vj), view(w));
      alpha.push_back(vj.dot(w).real());
      // Two passes of classical Gram-Schmidt against the whole basis.
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXcd coeff = basis.leftCols(j + 1).adjoint() * w;
        w.noalias() -= basis.leftCols(j + 1) * coeff;
      }
      k = j + 1;
      const double b = w.norm();
      if (j + 1 == m || b <= 1e-13 * std::max(1.0, std::abs(alpha.back()))) break;
      beta.push_back(b);
      basis.col(j + 1) = w / b;
    }

    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), k);
    Eigen::VectorXd sub(std::max(0, k - 1));
    for (int i = 0; i + 1 < k; ++i) sub(i) = beta[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const Eigen::VectorXd y = tri.eigenvectors().col(k - 1);

    x = basis.leftCols(k) * y.cast<cplx>();
    x.normalize();
    apply(view(x), view(hx));
    const double rayleigh = x.dot(hx).real();
    const double residual = (hx - rayleigh * x).norm();
    if (residual < best.residual) {
      best.value = rayleigh;
      best.residual = residual;
      best.restarts = restart;
      best.vector = x;
    }
    if (residual <= options.tol) return best;
  }
  throw ConvergenceError("lanczos_max: residual " + format_double(best.residual) +
                             " above tolerance " + format_double(options.tol),
                         best.residual);
}

double lambda_max(const DenseOperator& h, const LanczosOptions& options) {
  const auto& m = h.matrix;
  return lanczos_max(
             [&m](std::span<const cplx> in, std::span<cplx> out) {
               Eigen::Map<const Eigen::VectorXcd> vin(in.data(), static_cast<Eigen::Index>(in.size()));
               Eigen::Map<Eigen::VectorXcd> vout(out.data(), static_cast<Eigen::Index>(out.size()));
               vout.noalias() = m * vin;
             },
             static_cast<std::uint64_t>(h.dim()), options)
      .value;
}

double lambda_max(const PauliSumOperator& h, const LanczosOptions& options) {
  return lanczos_max([&h](std::span<const cplx> in, std::span<cplx> out) { h.apply(in, out); },
                     h.dim(), options)
      .value;
}

std::vector<double> dense_spectrum(const DenseOperator& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("dense eigensolver failed", std::numeric_limits<double>::quiet_NaN());
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double log_partition(std::span<const double> spectrum, double beta) {
  if (!(beta > 0)) throw ParameterError("beta must be positive");
  if (spectrum.empty()) throw DimensionError("empty spectrum");
  const double top = *std::max_element(spectrum.begin(), spectrum.end());
  double sum = 0;
  for (double l : spectrum) sum += std::exp(beta * (l - top));
  return top + std::log(sum) / beta;
}

double log_partition(const DenseOperator& h, double beta) {
  require_dense(h.n, "log_partition");
  return log_partition(dense_spectrum(h), beta);
}

DenseOperator partial_trace(const StateVector& state, std::vector<int> keep) {
  const int n = state.n();
  require_dense(n, "partial_trace");
  keep = checked_keep(n, std::move(keep));
  const auto table = index_table(n, keep);
  const auto ka = Eigen::Index{1} << keep.size();
  const auto kt = Eigen::Index{1} << (n - static_cast<int>(keep.size()));
  Eigen::MatrixXcd mat(ka, kt);
  const auto& amps = state.amplitudes();
  for (Eigen::Index a = 0; a < ka; ++a)
    for (Eigen::Index t = 0; t < kt; ++t)
      mat(a, t) = amps(static_cast<Eigen::Index>(table[static_cast<std::size_t>(a * kt + t)]));
  return {static_cast<int>(keep.size()), mat * mat.adjoint()};
}

DenseOperator partial_trace(const DenseOperator& rho, std::vector<int> keep) {
  const int n = rho.n;
  require_dense(n, "partial_trace");
  keep = checked_keep(n, std::move(keep));
  const auto table = index_table(n, keep);
  const auto ka = Eigen::Index{1} << keep.size();
  const auto kt = Eigen::Index{1} << (n - static_cast<int>(keep.size()));
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(ka, ka);
  for (Eigen::Index a = 0; a < ka; ++a)
    for (Eigen::Index b = 0; b < ka; ++b) {
      cplx s = 0;
      for (Eigen::Index t = 0; t < kt; ++t)
        s += rho.matrix(static_cast<Eigen::Index>(table[static_cast<std::size_t>(a * kt + t)]),
                        static_cast<Eigen::Index>(table[static_cast<std::size_t>(b * kt + t)]));
      out(a, b) = s;
    }
  return {static_cast<int>(keep.size()), std::move(out)};
}

// Hermitian input: Tr(rho^2) = sum |rho_ij|^2.
double purity(const DenseOperator& rho) { return rho.matrix.squaredNorm(); }

StateVector haar_state(int n, std::uint64_t seed) {
  require_dense(n, "haar_state");
  Rng rng(seed);
  Eigen::VectorXcd v(Eigen::Index{1} << n);
  for (auto& c : v) c = cplx(rng.normal(), rng.normal());
  return StateVector::normalized(n, std::move(v));
}

std::string spectrum_csv(std::span<const double> spectrum) {
  CsvTable t({"index", "eigenvalue"});
  for (std::size_t i = 0; i < spectrum.size(); ++i) t.row({std::to_string(i), format_double(spectrum[i])});
  return t.str();
}

}  // namespace spinlab
