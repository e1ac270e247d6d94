// Copyright 2026 lfg-audit contributors
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

#ifndef LFG_AUDIT_GENERATORS_HPP
#define LFG_AUDIT_GENERATORS_HPP

#include <array>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace lfg_audit {

// Binary operator of a lagged Fibonacci recurrence X[i] = X[i-P] op X[i-Q].
enum class LfgOp { Add, Sub, Mul, Xor };

// glibc random(): LCG-seeded LFG(31,3,+) over 32-bit words, 344 warm-up
// values discarded, every output halved to 31 bits. Kept as its own variant
// so the fixed pipeline cannot be misconfigured through the generic knobs.
struct GlibcRandom {};

// X[i] = (a*X[i-1] + b) mod m.
struct Lcg {
  std::uint64_t multiplier = 16807;
  std::uint64_t addend = 0;
  std::uint64_t modulus = 2147483647;  // 2^31 - 1 (minstd)
};

// X[i] = X[i-long_lag] op X[i-short_lag] mod 2^word_bits. Small word sizes
// are allowed so periods stay enumerable in brute-force tests.
struct Lfg {
  std::uint32_t long_lag = 31;
  std::uint32_t short_lag = 3;
  LfgOp op = LfgOp::Add;
  std::uint32_t word_bits = 32;
};

// Statistical control arm: splitmix64, a counter-based mixer from Vigna's
// reference implementation (https://prng.di.unimi.it/splitmix64.c). Chosen
// because every 64-bit seed, including zero, is a valid state (the golden
// gamma is added before mixing), so no zero-seed escape rule is needed.
struct Control64 {};

using GeneratorKind = std::variant<GlibcRandom, Lcg, Lfg, Control64>;

// One draw in both representations: the raw generator word and its
// conversion to [0, 1] (raw / max_raw, both endpoints reachable).
struct Sample {
  std::uint64_t raw;
  double unit;
};

// Throws std::invalid_argument if the parameters violate their constraints
// (Lcg: 0 < a < m, b < m, m > 1; Lfg: P > Q >= 1, 1 <= word_bits <= 64).
void validate_kind(const GeneratorKind& kind);

// The 31 words glibc seeds its state table with: X[0] = seed (0 remapped to
// 1), X[i] = 16807 * X[i-1] mod (2^31 - 1). Exposed for state inspection.
std::array<std::uint32_t, 31> glibc_seed_table(std::uint32_t seed);

// A single pseudo-random stream. Construction is the only mutation source
// besides next_*/discard, so (kind, seed) -> stream is a pure function.
// Not safe for concurrent mutation; movable across threads.
class Generator {
 public:
  // glibc pipeline. Accepts 0 <= seed <= 2^31 - 1; seed 0 is remapped to 1
  // exactly as glibc does. The 344-value warm-up happens here, so the first
  // next_raw() already returns R[0] = X[344] / 2.
  static Generator glibc(std::uint32_t seed);

  static Generator lcg(const Lcg& kind, std::uint64_t seed);

  // Lag buffer filled from Lcg(16807, 0, 2^31-1) truncated to word_bits,
  // the same construction glibc uses. Multiplicative recurrences get their
  // words forced odd (even words collapse the period to a power of two).
  static Generator lfg(const Lfg& kind, std::uint64_t seed);

  // Explicit lag buffer, values given oldest first. Rejects buffers of the
  // wrong length, words outside the word size, and even words under Mul.
  static Generator lfg_with_buffer(const Lfg& kind,
                                   std::vector<std::uint64_t> buffer);

  static Generator control64(std::uint64_t seed);

  // Dispatches on the kind; for Lfg/Lcg the seed feeds the default seeding
  // rule above.
  static Generator from_kind(const GeneratorKind& kind, std::uint64_t seed);

  std::uint64_t next_raw();
  double next_unit();
  Sample next_sample();

  // Advances the stream by exactly `count` draws, as if next_raw had been
  // called that many times with the results ignored.
  void discard(std::uint64_t count);

  // Outputs produced so far (discards included, warm-up excluded).
  std::uint64_t emitted_count() const { return emitted_count_; }

  const GeneratorKind& kind() const { return kind_; }

  // Largest raw value the stream can produce; next_unit() divides by it.
  std::uint64_t max_raw() const { return max_raw_; }

  std::span<const std::uint64_t> lag_buffer() const { return lag_buffer_; }
  std::uint32_t front_index() const { return front_index_; }
  std::uint32_t rear_index() const { return rear_index_; }

 private:
  enum class Tag { Glibc, Lcg, Lfg, Control64 };

  Generator() = default;

  Tag tag_ = Tag::Glibc;
  GeneratorKind kind_;
  std::vector<std::uint64_t> lag_buffer_;
  std::uint32_t front_index_ = 0;  // slot written next
  std::uint32_t rear_index_ = 0;   // short-lag operand
  std::uint64_t emitted_count_ = 0;

  // Cached per-kind constants.
  std::uint64_t word_mask_ = 0;
  std::uint32_t buffer_len_ = 0;
  LfgOp op_ = LfgOp::Add;
  std::uint64_t lcg_a_ = 0, lcg_b_ = 0, lcg_m_ = 0;
  std::uint64_t max_raw_ = 0;
  double unit_denom_ = 1.0;
};

}  // namespace lfg_audit

#endif  // LFG_AUDIT_GENERATORS_HPP
