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

// Pauli-string algebra with exact phase tracking.
//
// A PhasedPauli is i^k * (P_0 (x) P_1 (x) ... (x) P_{n-1}) with P_q in
// {I, X, Y, Z}. Internally each letter is a bit pair (x_q, z_q):
// I = (0,0), X = (1,0), Z = (0,1), Y = (1,1), with Y = i X Z. Products and
// commutation checks then reduce to word-wide bit operations.
//
// Text form: an optional phase prefix "+", "-", "+i", "-i" followed by one
// letter per qubit, qubit 0 first (the most significant tensor factor).

#ifndef SPINLAB_PAULI_HPP
#define SPINLAB_PAULI_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spinlab/dense.hpp"

namespace spinlab {

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline constexpr PauliLetter kXYZ[3] = {PauliLetter::X, PauliLetter::Y, PauliLetter::Z};

char to_char(PauliLetter letter) noexcept;
PauliLetter letter_from_char(char c);

/// letter_a * letter_b = i^phase * letter.
struct LetterProduct {
  PauliLetter letter;
  int phase;  // exponent of i, in [0, 4)
};
LetterProduct multiply_letters(PauliLetter a, PauliLetter b) noexcept;

/// Gaussian integer; traces of Pauli products are always of this form.
struct ExactTrace {
  std::int64_t re = 0;
  std::int64_t im = 0;

  cplx to_complex() const noexcept {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
  ExactTrace& operator+=(const ExactTrace& o) noexcept {
    re += o.re;
    im += o.im;
    return *this;
  }
  friend bool operator==(const ExactTrace&, const ExactTrace&) = default;
};

/// Trace of the 2x2 product seq[0] * seq[1] * ... ; one of 0, +-2, +-2i.
ExactTrace trace_of_letter_sequence(std::span<const PauliLetter> seq);

class PhasedPauli {
 public:
  /// Identity word on n qubits with phase +1.
  explicit PhasedPauli(int n);

  static PhasedPauli from_letters(std::span<const PauliLetter> letters, int phase_exponent = 0);
  static PhasedPauli single(int n, int qubit, PauliLetter letter);
  static PhasedPauli parse(std::string_view text);

  int n() const noexcept { return n_; }
  /// The phase is i^phase_exponent().
  int phase_exponent() const noexcept { return phase_; }
  cplx phase() const noexcept;

  PauliLetter letter(int qubit) const;
  void set_letter(int qubit, PauliLetter letter);
  PhasedPauli with_phase(int phase_exponent) const;

  /// Number of non-identity letters.
  int weight() const noexcept;
  bool is_identity_word() const noexcept { return weight() == 0; }

  std::string to_string() const;

  /// Basis-index masks (qubit q at bit n-1-q); require n <= 64.
  std::uint64_t x_index_mask() const;
  std::uint64_t z_index_mask() const;

  friend PhasedPauli operator*(const PhasedPauli& a, const PhasedPauli& b);
  friend bool operator==(const PhasedPauli&, const PhasedPauli&) = default;
  friend bool anticommutes(const PhasedPauli& a, const PhasedPauli& b);

 private:
  int n_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
  int phase_ = 0;
};

inline PhasedPauli pauli_product(const PhasedPauli& a, const PhasedPauli& b) { return a * b; }

/// True iff the words anticommute: an odd number of positions carry two
/// different non-identity letters.
bool anticommutes(const PhasedPauli& a, const PhasedPauli& b);

/// p-local Pauli operator: strictly increasing qubits with one letter each.
/// Letters are X, Y, Z except in the adjusted model, which also allows I.
struct PauliTerm {
  int n = 0;
  std::vector<int> qubits;
  std::vector<PauliLetter> letters;

  int locality() const noexcept { return static_cast<int>(qubits.size()); }
  void validate(bool allow_identity = false) const;
  PhasedPauli to_word() const;
  /// "q0,q1,...:LETTERS", e.g. "0,2:XZ"; keeps the tuple when letters are I.
  std::string to_string() const;
  static PauliTerm parse(std::string_view text, int n);

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

/// Exact 2^n x 2^n matrix of the word, n <= kDenseQubitLimit.
DenseOperator materialize_word(const PhasedPauli& word);

/// The 2x2 matrix of a single letter.
Eigen::Matrix2cd letter_matrix(PauliLetter letter);

/// Two-qubit SWAP.
DenseOperator swap_operator();

/// X (x) X + Y (x) Y + Z (x) Z, assembled from materialized words. Equals
/// 2 SWAP - I.
DenseOperator letter_pair_sum();

}  // namespace spinlab

#endif  // SPINLAB_PAULI_HPP
