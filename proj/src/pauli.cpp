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

#include "spinlab/pauli.hpp"

#include <array>
#include <bit>
#include <charconv>

#include "spinlab/error.hpp"

namespace spinlab {
namespace {

constexpr int kWordBits = 64;

constexpr bool x_bit(PauliLetter l) noexcept {
  return l == PauliLetter::X || l == PauliLetter::Y;
}
constexpr bool z_bit(PauliLetter l) noexcept {
  return l == PauliLetter::Z || l == PauliLetter::Y;
}
constexpr PauliLetter from_bits(bool x, bool z) noexcept {
  if (x && z) return PauliLetter::Y;
  if (x) return PauliLetter::X;
  if (z) return PauliLetter::Z;
  return PauliLetter::I;
}

// Letter form (x, z) equals i^{x z} X^x Z^z, so
// L1 L2 = i^{y1 + y2 - y3} (-1)^{z1 x2} L3.
constexpr LetterProduct letter_product_impl(PauliLetter a, PauliLetter b) noexcept {
  const int xa = x_bit(a), za = z_bit(a), xb = x_bit(b), zb = z_bit(b);
  const int x3 = xa ^ xb, z3 = za ^ zb;
  const int phase = (xa * za + xb * zb + 2 * za * xb - x3 * z3 + 4) % 4;
  return {from_bits(x3, z3), phase};
}

constexpr auto kLetterTable = [] {
  std::array<std::array<LetterProduct, 4>, 4> t{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      t[a][b] = letter_product_impl(static_cast<PauliLetter>(a), static_cast<PauliLetter>(b));
  return t;
}();

int words_for(int n) { return (n + kWordBits - 1) / kWordBits; }

void check_qubit(int n, int q) {
  if (q < 0 || q >= n) throw DimensionError("qubit index " + std::to_string(q) + " outside [0, " +
                                            std::to_string(n) + ")");
}

}  // namespace

char to_char(PauliLetter letter) noexcept { return "IXYZ"[static_cast<int>(letter)]; }

PauliLetter letter_from_char(char c) {
  switch (c) {
    case 'I': return PauliLetter::I;
    case 'X': return PauliLetter::X;
    case 'Y': return PauliLetter::Y;
    case 'Z': return PauliLetter::Z;
    default: throw ValidationError(std::string("not a Pauli letter: '") + c + "'");
  }
}

LetterProduct multiply_letters(PauliLetter a, PauliLetter b) noexcept {
  return kLetterTable[static_cast<int>(a)][static_cast<int>(b)];
}

ExactTrace trace_of_letter_sequence(std::span<const PauliLetter> seq) {
  PauliLetter acc = PauliLetter::I;
  int phase = 0;
  for (PauliLetter l : seq) {
    const LetterProduct p = multiply_letters(acc, l);
    acc = p.letter;
    phase += p.phase;
  }
  if (acc != PauliLetter::I) return {};
  switch (phase & 3) {
    case 0: return {2, 0};
    case 1: return {0, 2};
    case 2: return {-2, 0};
    default: return {0, -2};
  }
}

PhasedPauli::PhasedPauli(int n) : n_(n), x_(words_for(n), 0), z_(words_for(n), 0) {
  if (n < 0) throw DimensionError("negative qubit count");
}

PhasedPauli PhasedPauli::from_letters(std::span<const PauliLetter> letters, int phase_exponent) {
  PhasedPauli w(static_cast<int>(letters.size()));
  for (int q = 0; q < w.n_; ++q) w.set_letter(q, letters[q]);
  w.phase_ = ((phase_exponent % 4) + 4) % 4;
  return w;
}

PhasedPauli PhasedPauli::single(int n, int qubit, PauliLetter letter) {
  PhasedPauli w(n);
  w.set_letter(qubit, letter);
  return w;
}

PhasedPauli PhasedPauli::parse(std::string_view text) {
  int phase = 0;
  if (text.starts_with("+i")) {
    phase = 1;
    text.remove_prefix(2);
  } else if (text.starts_with("-i")) {
    phase = 3;
    text.remove_prefix(2);
  } else if (text.starts_with("+")) {
    text.remove_prefix(1);
  } else if (text.starts_with("-")) {
    phase = 2;
    text.remove_prefix(1);
  }
  if (text.empty()) throw ValidationError("empty Pauli word");
  PhasedPauli w(static_cast<int>(text.size()));
  for (int q = 0; q < w.n_; ++q) w.set_letter(q, letter_from_char(text[q]));
  w.phase_ = phase;
  return w;
}

cplx PhasedPauli::phase() const noexcept {
  static constexpr cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[phase_];
}

PauliLetter PhasedPauli::letter(int qubit) const {
  check_qubit(n_, qubit);
  const auto w = static_cast<std::size_t>(qubit / kWordBits);
  const int b = qubit % kWordBits;
  return from_bits((x_[w] >> b) & 1U, (z_[w] >> b) & 1U);
}

void PhasedPauli::set_letter(int qubit, PauliLetter letter) {
  check_qubit(n_, qubit);
  const auto w = static_cast<std::size_t>(qubit / kWordBits);
  const std::uint64_t bit = std::uint64_t{1} << (qubit % kWordBits);
  x_[w] = x_bit(letter) ? (x_[w] | bit) : (x_[w] & ~bit);
  z_[w] = z_bit(letter) ? (z_[w] | bit) : (z_[w] & ~bit);
}

PhasedPauli PhasedPauli::with_phase(int phase_exponent) const {
  PhasedPauli w = *this;
  w.phase_ = ((phase_exponent % 4) + 4) % 4;
  return w;
}

int PhasedPauli::weight() const noexcept {
  int total = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) total += std::popcount(x_[i] | z_[i]);
  return total;
}

std::string PhasedPauli::to_string() const {
  static constexpr const char* prefix[4] = {"", "+i", "-", "-i"};
  std::string out = prefix[phase_];
  for (int q = 0; q < n_; ++q) out.push_back(to_char(letter(q)));
  return out;
}

std::uint64_t PhasedPauli::x_index_mask() const {
  if (n_ > 64) throw CapacityError("index masks need n <= 64");
  std::uint64_t m = 0;
  for (int q = 0; q < n_; ++q)
    if ((x_[0] >> q) & 1U) m |= std::uint64_t{1} << qubit_bit(n_, q);
  return m;
}

std::uint64_t PhasedPauli::z_index_mask() const {
  if (n_ > 64) throw CapacityError("index masks need n <= 64");
  std::uint64_t m = 0;
  for (int q = 0; q < n_; ++q)
    if ((z_[0] >> q) & 1U) m |= std::uint64_t{1} << qubit_bit(n_, q);
  return m;
}

PhasedPauli operator*(const PhasedPauli& a, const PhasedPauli& b) {
  if (a.n_ != b.n_) throw DimensionError("Pauli product of words on different qubit counts");
  PhasedPauli out(a.n_);
  int phase = a.phase_ + b.phase_;
  for (std::size_t i = 0; i < a.x_.size(); ++i) {
    const std::uint64_t x3 = a.x_[i] ^ b.x_[i];
    const std::uint64_t z3 = a.z_[i] ^ b.z_[i];
    phase += std::popcount(a.x_[i] & a.z_[i]) + std::popcount(b.x_[i] & b.z_[i]) +
             2 * std::popcount(a.z_[i] & b.x_[i]) - std::popcount(x3 & z3);
    out.x_[i] = x3;
    out.z_[i] = z3;
  }
  out.phase_ = ((phase % 4) + 4) % 4;
  return out;
}

bool anticommutes(const PhasedPauli& a, const PhasedPauli& b) {
  if (a.n_ != b.n_) throw DimensionError("commutation check on different qubit counts");
  int parity = 0;
  for (std::size_t i = 0; i < a.x_.size(); ++i)
    parity += std::popcount((a.x_[i] & b.z_[i]) ^ (a.z_[i] & b.x_[i]));
  return (parity & 1) != 0;
}

void PauliTerm::validate(bool allow_identity) const {
  if (qubits.size() != letters.size())
    throw ValidationError("term has mismatched qubit and letter counts");
  if (qubits.empty() || static_cast<int>(qubits.size()) > n)
    throw ValidationError("term locality must lie in [1, n]");
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    if (qubits[k] < 0 || qubits[k] >= n) throw ValidationError("term qubit out of range");
    if (k > 0 && qubits[k] <= qubits[k - 1])
      throw ValidationError("term qubits must be strictly increasing");
    if (!allow_identity && letters[k] == PauliLetter::I)
      throw ValidationError("identity letter in a standard-model term");
  }
}

PhasedPauli PauliTerm::to_word() const {
  PhasedPauli w(n);
  for (std::size_t k = 0; k < qubits.size(); ++k) w.set_letter(qubits[k], letters[k]);
  return w;
}

std::string PauliTerm::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    if (k > 0) out.push_back(',');
    out += std::to_string(qubits[k]);
  }
  out.push_back(':');
  for (PauliLetter l : letters) out.push_back(to_char(l));
  return out;
}

PauliTerm PauliTerm::parse(std::string_view text, int n) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ValidationError("term string lacks ':'");
  PauliTerm t;
  t.n = n;
  std::string_view qs = text.substr(0, colon);
  while (!qs.empty()) {
    const auto comma = qs.find(',');
    const std::string_view tok = qs.substr(0, comma);
    int q = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), q);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
      throw ValidationError("bad qubit index in term string");
    t.qubits.push_back(q);
    if (comma == std::string_view::npos) break;
    qs.remove_prefix(comma + 1);
  }
  for (char c : text.substr(colon + 1)) t.letters.push_back(letter_from_char(c));
  t.validate(/*allow_identity=*/true);
  return t;
}

Eigen::Matrix2cd letter_matrix(PauliLetter letter) {
  Eigen::Matrix2cd m;
  const cplx i(0, 1);
  switch (letter) {
    case PauliLetter::I: m << 1, 0, 0, 1; break;
    case PauliLetter::X: m << 0, 1, 1, 0; break;
    case PauliLetter::Y: m << 0, -i, i, 0; break;
    case PauliLetter::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

DenseOperator materialize_word(const PhasedPauli& word) {
  const int n = word.n();
  DenseOperator op = DenseOperator::zero(n);
  const std::uint64_t xm = word.x_index_mask();
  const std::uint64_t zm = word.z_index_mask();
  const int y_count = std::popcount(xm & zm);
  const cplx base = word.with_phase(word.phase_exponent() + y_count).phase();
  // P|k> = i^{phase + #Y} (-1)^{|k & z|} |k ^ x>.
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
    const double sign = (std::popcount(k & zm) & 1) ? -1.0 : 1.0;
    op.matrix(static_cast<Eigen::Index>(k ^ xm), static_cast<Eigen::Index>(k)) = sign * base;
  }
  return op;
}

DenseOperator swap_operator() {
  DenseOperator op = DenseOperator::zero(2);
  for (Eigen::Index k = 0; k < 4; ++k) op.matrix(((k & 1) << 1) | (k >> 1), k) = 1.0;
  return op;
}

DenseOperator letter_pair_sum() {
  DenseOperator op = DenseOperator::zero(2);
  for (PauliLetter a : kXYZ) {
    PhasedPauli w(2);
    w.set_letter(0, a);
    w.set_letter(1, a);
    op.matrix += materialize_word(w).matrix;
  }
  return op;
}

}  // namespace spinlab
