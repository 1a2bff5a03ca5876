#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>

namespace cmdp {

/// SplitMix64 finalizer (Steele, Lea & Flood). The single mixing primitive
/// behind every random draw and seed derivation in this library, chosen so
/// that all streams are reproducible from documented integer arithmetic
/// alone (std:: distributions are implementation-defined).
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Absorbs one word into a stream seed: h' = mix64(h XOR w).
constexpr std::uint64_t absorb(std::uint64_t h, std::uint64_t w) { return mix64(h ^ w); }

/// FNV-1a over a label, used to turn substream names into absorbable words.
constexpr std::uint64_t hash_label(std::string_view label) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Derives an independent stream seed from a base seed, a substream label and
/// integer coordinates: absorb(absorb(absorb(base, fnv1a(label)), c0), c1)...
/// A table row keyed this way never changes when other rows, tables or
/// dimensions are added.
inline std::uint64_t stream_seed(std::uint64_t base, std::string_view label,
                                 std::initializer_list<std::uint64_t> coords = {}) {
    std::uint64_t h = absorb(base, hash_label(label));
    for (std::uint64_t c : coords) h = absorb(h, c);
    return h;
}

/// Counter-based generator: output i is mix64 of state + i*gamma, so the
/// sequence is a pure function of the initial state.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    /// Uniform in [0,1) with 53 random mantissa bits.
    double next_u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Unit-rate exponential via inversion.
    double next_exponential();

    /// Index into [0,n) by scaling; n must be positive.
    int next_index(int n);

    /// Samples from a probability row by inverse CDF; the row is assumed to
    /// sum to ~1 and the last index absorbs rounding slack.
    int sample(std::span<const double> probs);

    /// Fills `out` with a Dirichlet(1,...,1) draw (normalized exponentials).
    void dirichlet_uniform(std::span<double> out);

private:
    std::uint64_t state_;
};

}  // namespace cmdp
