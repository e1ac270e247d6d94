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

#include "lfg_audit/generators.hpp"

#include <stdexcept>
#include <string>

namespace lfg_audit {

namespace {

constexpr std::uint32_t kGlibcLongLag = 31;
constexpr std::uint32_t kGlibcShortLag = 3;
constexpr std::uint64_t kMinstdMultiplier = 16807;
constexpr std::uint64_t kMinstdModulus = 2147483647;  // 2^31 - 1
// glibc spins the generator 10 * 31 times after seeding; together with the
// 34 table entries that discards X[0..343], so output i is X[i+344] / 2.
constexpr int kGlibcWarmup = 310;

std::uint64_t word_mask_for(std::uint32_t word_bits) {
  return word_bits >= 64 ? ~std::uint64_t{0}
                         : (std::uint64_t{1} << word_bits) - 1;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t apply_op(LfgOp op, std::uint64_t a, std::uint64_t b,
                       std::uint64_t mask) {
  switch (op) {
    case LfgOp::Add: return (a + b) & mask;
    case LfgOp::Sub: return (a - b) & mask;
    case LfgOp::Mul: return (a * b) & mask;
    case LfgOp::Xor: return (a ^ b) & mask;
  }
  return 0;
}

}  // namespace

void validate_kind(const GeneratorKind& kind) {
  if (const auto* lcg = std::get_if<Lcg>(&kind)) {
    if (lcg->modulus <= 1) {
      throw std::invalid_argument("lcg: modulus must exceed 1");
    }
    if (lcg->multiplier == 0 || lcg->multiplier >= lcg->modulus) {
      throw std::invalid_argument("lcg: need 0 < multiplier < modulus");
    }
    if (lcg->addend >= lcg->modulus) {
      throw std::invalid_argument("lcg: need addend < modulus");
    }
  } else if (const auto* lfg = std::get_if<Lfg>(&kind)) {
    if (lfg->short_lag < 1 || lfg->long_lag <= lfg->short_lag) {
      throw std::invalid_argument("lfg: need long_lag > short_lag >= 1");
    }
    if (lfg->word_bits < 1 || lfg->word_bits > 64) {
      throw std::invalid_argument("lfg: word_bits must be in [1, 64]");
    }
  }
}

std::array<std::uint32_t, 31> glibc_seed_table(std::uint32_t seed) {
  if (seed > 0x7FFFFFFFu) {
    throw std::invalid_argument("glibc seed must be at most 2^31 - 1");
  }
  if (seed == 0) seed = 1;  // glibc remaps 0 to 1
  std::array<std::uint32_t, 31> table;
  table[0] = seed;
  for (std::size_t i = 1; i < table.size(); ++i) {
    table[i] = static_cast<std::uint32_t>(
        (kMinstdMultiplier * table[i - 1]) % kMinstdModulus);
  }
  return table;
}

Generator Generator::glibc(std::uint32_t seed) {
  const auto table = glibc_seed_table(seed);
  Generator g;
  g.tag_ = Tag::Glibc;
  g.kind_ = GlibcRandom{};
  g.lag_buffer_.assign(table.begin(), table.end());
  g.buffer_len_ = kGlibcLongLag;
  // front starts on the short-lag slot: the first generated word overwrites
  // X[3] with X[3] + X[0], which is X[34] of the recurrence (X[31..33] are
  // copies of X[0..2], realized here by the cursor offsets).
  g.front_index_ = kGlibcShortLag;
  g.rear_index_ = 0;
  g.word_mask_ = word_mask_for(32);
  g.max_raw_ = 0x7FFFFFFFull;
  g.unit_denom_ = 2147483647.0;
  for (int i = 0; i < kGlibcWarmup; ++i) g.next_raw();
  g.emitted_count_ = 0;
  return g;
}

Generator Generator::lcg(const Lcg& kind, std::uint64_t seed) {
  validate_kind(GeneratorKind{kind});
  Generator g;
  g.tag_ = Tag::Lcg;
  g.kind_ = kind;
  g.lag_buffer_ = {seed % kind.modulus};
  g.buffer_len_ = 1;
  g.lcg_a_ = kind.multiplier;
  g.lcg_b_ = kind.addend;
  g.lcg_m_ = kind.modulus;
  g.max_raw_ = kind.modulus - 1;
  g.unit_denom_ = static_cast<double>(kind.modulus - 1);
  return g;
}

Generator Generator::lfg(const Lfg& kind, std::uint64_t seed) {
  validate_kind(GeneratorKind{kind});
  const std::uint64_t mask = word_mask_for(kind.word_bits);
  std::uint64_t state = seed % kMinstdModulus;
  if (state == 0) state = 1;
  std::vector<std::uint64_t> buffer(kind.long_lag);
  buffer[0] = state & mask;
  for (std::size_t i = 1; i < buffer.size(); ++i) {
    state = (kMinstdMultiplier * state) % kMinstdModulus;
    buffer[i] = state & mask;
  }
  if (kind.op == LfgOp::Mul) {
    for (auto& word : buffer) word |= 1;
  }
  return lfg_with_buffer(kind, std::move(buffer));
}

Generator Generator::lfg_with_buffer(const Lfg& kind,
                                     std::vector<std::uint64_t> buffer) {
  validate_kind(GeneratorKind{kind});
  if (buffer.size() != kind.long_lag) {
    throw std::invalid_argument("lfg: buffer length must equal long_lag (" +
                                std::to_string(kind.long_lag) + ")");
  }
  const std::uint64_t mask = word_mask_for(kind.word_bits);
  for (const auto word : buffer) {
    if ((word & ~mask) != 0) {
      throw std::invalid_argument("lfg: buffer word exceeds word_bits");
    }
    if (kind.op == LfgOp::Mul && (word & 1) == 0) {
      throw std::invalid_argument(
          "lfg: multiplicative recurrence requires odd buffer words");
    }
  }
  Generator g;
  g.tag_ = Tag::Lfg;
  g.kind_ = kind;
  g.lag_buffer_ = std::move(buffer);
  g.buffer_len_ = kind.long_lag;
  g.front_index_ = 0;  // oldest word X[i - long_lag], overwritten in place
  g.rear_index_ = kind.long_lag - kind.short_lag;  // X[i - short_lag]
  g.op_ = kind.op;
  g.word_mask_ = mask;
  g.max_raw_ = mask;
  g.unit_denom_ = static_cast<double>(mask);
  return g;
}

Generator Generator::control64(std::uint64_t seed) {
  Generator g;
  g.tag_ = Tag::Control64;
  g.kind_ = Control64{};
  g.lag_buffer_ = {seed};
  g.buffer_len_ = 1;
  g.max_raw_ = ~std::uint64_t{0};
  g.unit_denom_ = 18446744073709551615.0;
  return g;
}

Generator Generator::from_kind(const GeneratorKind& kind, std::uint64_t seed) {
  if (std::holds_alternative<GlibcRandom>(kind)) {
    if (seed > 0x7FFFFFFFull) {
      throw std::invalid_argument("glibc seed must be at most 2^31 - 1");
    }
    return glibc(static_cast<std::uint32_t>(seed));
  }
  if (const auto* p = std::get_if<Lcg>(&kind)) return lcg(*p, seed);
  if (const auto* p = std::get_if<Lfg>(&kind)) return lfg(*p, seed);
  return control64(seed);
}

std::uint64_t Generator::next_raw() {
  std::uint64_t result = 0;
  switch (tag_) {
    case Tag::Glibc: {
      const std::uint64_t word =
          (lag_buffer_[front_index_] + lag_buffer_[rear_index_]) & word_mask_;
      lag_buffer_[front_index_] = word;
      if (++front_index_ == buffer_len_) front_index_ = 0;
      if (++rear_index_ == buffer_len_) rear_index_ = 0;
      result = word >> 1;  // 31-bit output
      break;
    }
    case Tag::Lcg: {
      const auto state = static_cast<unsigned __int128>(lag_buffer_[0]);
      lag_buffer_[0] =
          static_cast<std::uint64_t>((state * lcg_a_ + lcg_b_) % lcg_m_);
      result = lag_buffer_[0];
      break;
    }
    case Tag::Lfg: {
      const std::uint64_t word = apply_op(op_, lag_buffer_[front_index_],
                                          lag_buffer_[rear_index_], word_mask_);
      lag_buffer_[front_index_] = word;
      if (++front_index_ == buffer_len_) front_index_ = 0;
      if (++rear_index_ == buffer_len_) rear_index_ = 0;
      result = word;
      break;
    }
    case Tag::Control64:
      result = splitmix64(lag_buffer_[0]);
      break;
  }
  ++emitted_count_;
  return result;
}

double Generator::next_unit() {
  return static_cast<double>(next_raw()) / unit_denom_;
}

Sample Generator::next_sample() {
  const std::uint64_t raw = next_raw();
  return Sample{raw, static_cast<double>(raw) / unit_denom_};
}

void Generator::discard(std::uint64_t count) {
  for (std::uint64_t i = 0; i < count; ++i) next_raw();
}

}  // namespace lfg_audit
