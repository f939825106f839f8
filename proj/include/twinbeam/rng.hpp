#pragma once

// Counter-based random streams. Every (seed, stream, index) triple names an
// independent, randomly addressable sequence, so a trial's random draws do
// not depend on which worker evaluates it or in what order.

#include <array>
#include <cstdint>
#include <limits>

namespace twinbeam {

// Philox4x32-10 block function (Salmon et al., SC'11).
class Philox4x32 {
  public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter encrypt(Counter counter, Key key) noexcept {
        for (int round = 0; round < 10; ++round) {
            counter = single_round(counter, key);
            key[0] += kWeylA;
            key[1] += kWeylB;
        }
        return counter;
    }

  private:
    static constexpr std::uint32_t kWeylA = 0x9E3779B9u;
    static constexpr std::uint32_t kWeylB = 0xBB67AE85u;
    static constexpr std::uint32_t kMulA = 0xD2511F53u;
    static constexpr std::uint32_t kMulB = 0xCD9E8D57u;

    static Counter single_round(const Counter& c, const Key& k) noexcept {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMulA) * c[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMulB) * c[2];
        return Counter{static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0],
                       static_cast<std::uint32_t>(p1),
                       static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1],
                       static_cast<std::uint32_t>(p0)};
    }
};

// Names a family of per-index streams under one master seed.
struct StreamKey {
    std::uint64_t seed = 0;
    std::uint32_t stream = 0;
};

// UniformRandomBitGenerator over the Philox stream addressed by
// (seed, stream, index). Counter layout: {block, index lo, index hi, stream}.
class CounterRng {
  public:
    using result_type = std::uint32_t;

    CounterRng(std::uint64_t seed, std::uint32_t stream, std::uint64_t index) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          counter_{0u, static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                   stream} {}

    CounterRng(const StreamKey& key, std::uint64_t index) noexcept
        : CounterRng(key.seed, key.stream, index) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        if (used_ == 4) {
            block_ = Philox4x32::encrypt(counter_, key_);
            ++counter_[0];
            used_ = 0;
        }
        return block_[used_++];
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() noexcept {
        const std::uint64_t hi = (*this)() >> 5;  // 27 bits
        const std::uint64_t lo = (*this)() >> 6;  // 26 bits
        return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
    }

  private:
    Philox4x32::Key key_;
    Philox4x32::Counter counter_;
    Philox4x32::Counter block_{};
    int used_ = 4;
};

// Stream identifiers: a purpose tag in the low byte and a slot (grid point,
// experiment phase, repetition) in the upper 24 bits.
constexpr std::uint32_t make_stream(std::uint32_t tag, std::uint32_t slot) noexcept {
    return (slot << 8) | (tag & 0xFFu);
}

}  // namespace twinbeam
