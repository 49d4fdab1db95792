#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace pclab {

//! SplitMix64 finalizer, used to derive keys from (seed, index) pairs.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

//! Seed for an independent named sub-experiment (FNV-1a of the label, mixed with the seed).
constexpr std::uint64_t seed_for(std::uint64_t seed, std::string_view label) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char ch : label) {
        h = (h ^ static_cast<unsigned char>(ch)) * 0x100000001b3ull;
    }
    return mix64(seed ^ mix64(h));
}

/*!
 * Philox4x32-10 counter-based random stream.
 *
 * The stream is fully described by a 64-bit key and a 64-bit block counter,
 * so child streams can be split off deterministically by index without any
 * coordination between replicas.
 */
class Stream
{
  public:
    explicit Stream(std::uint64_t seed) noexcept : key_(mix64(seed)) {}

    //! Independent child stream for a given index.
    Stream split(std::uint64_t index) const noexcept
    {
        Stream child(0);
        child.key_ = mix64(key_ ^ mix64(index + 0x5851f42d4c957f2dull));
        return child;
    }

    std::uint64_t key() const noexcept { return key_; }

    std::uint64_t next_u64() noexcept
    {
        if (lane_ == 2) {
            refill();
        }
        return buffer_[lane_++];
    }

    //! Uniform on the open interval (0, 1); never returns 0 or 1.
    double uniform() noexcept
    {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    //! Uniform integer on [0, bound) by 128-bit multiply (Lemire, no rejection).
    std::uint64_t below(std::uint64_t bound) noexcept
    {
        __extension__ using wide = unsigned __int128;
        const wide m = static_cast<wide>(next_u64()) * bound;
        return static_cast<std::uint64_t>(m >> 64);
    }

  private:
    void refill() noexcept
    {
        std::array<std::uint32_t, 4> ctr{static_cast<std::uint32_t>(counter_),
                                         static_cast<std::uint32_t>(counter_ >> 32),
                                         0x243f6a88u, 0x85a308d3u};
        std::uint32_t k0 = static_cast<std::uint32_t>(key_);
        std::uint32_t k1 = static_cast<std::uint32_t>(key_ >> 32);
        for (int round = 0; round < 10; ++round) {
            std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ k0,
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ k1,
                   static_cast<std::uint32_t>(p0)};
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        buffer_[0] = (std::uint64_t{ctr[0]} << 32) | ctr[1];
        buffer_[1] = (std::uint64_t{ctr[2]} << 32) | ctr[3];
        ++counter_;
        lane_ = 0;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int lane_ = 2;
};

}  // namespace pclab
