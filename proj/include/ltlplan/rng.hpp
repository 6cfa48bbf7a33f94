#pragma once

#include <cstdint>
#include <random>

namespace ltlplan {

std::uint64_t splitmix64(std::uint64_t x);

/// Seeded 64-bit generator with a portable bounded draw (the standard
/// distributions are implementation-defined, so they are not used).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Independent stream for tree `tree_id` under `master_seed`.
    static Rng stream(std::uint64_t master_seed, std::uint64_t tree_id);

    std::uint64_t next() { return engine_(); }
    /// Uniform on [0, n); n > 0.
    std::uint64_t below(std::uint64_t n);
    bool coin() { return (next() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

/// Tree identifiers: prefix tree for initial state k, suffix tree for the
/// a-th accepting node of that prefix tree.
inline std::uint64_t prefix_tree_id(std::uint64_t k) { return (k + 1) << 32; }
inline std::uint64_t suffix_tree_id(std::uint64_t k, std::uint64_t a) { return ((k + 1) << 32) | (a + 1); }

}  // namespace ltlplan
