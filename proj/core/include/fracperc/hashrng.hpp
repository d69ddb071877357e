#pragma once

#include <cstdint>
#include <span>

#include "fracperc/params.hpp"

namespace fracperc {

// Stateless keyed hashing for cell decisions. Each (seed, level, coords)
// tuple maps to one 64-bit word; no sequential state, so any cell can be
// evaluated in isolation and couplings across p share the same uniform.

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

inline std::uint64_t absorb(std::uint64_t h, std::uint64_t word) {
    h = mix64(h ^ (word + 0x9e3779b97f4a7c15ULL));
    return mix64(h + 0x2545f4914f6cdd1dULL);
}

}  // namespace detail

inline constexpr std::uint64_t kDomainCell = 0x63656c6c6b657931ULL;
inline constexpr std::uint64_t kDomainTrial = 0x747269616c736564ULL;

/// 64-bit word for a cell decision, fully determined by (seed, level, coords).
inline std::uint64_t cell_hash(std::uint64_t seed, int level, std::span<const Coord> coords) {
    std::uint64_t h = detail::absorb(seed, kDomainCell);
    h = detail::absorb(h, static_cast<std::uint64_t>(level));
    for (Coord c : coords) h = detail::absorb(h, c);
    return h;
}

/// Uniform in [0,1) from the top 53 bits.
inline double to_unit(std::uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// Deterministic per-trial seed: independent trials from one master seed.
inline std::uint64_t derive_trial_seed(std::uint64_t seed, std::uint64_t trial) {
    std::uint64_t h = detail::absorb(seed, kDomainTrial);
    return detail::absorb(h, trial);
}

/// Per-cell Bernoulli field: U(cell) is shared across all p, so raising p
/// never deletes a retained cell (monotone coupling).
class RetentionOracle {
  public:
    explicit RetentionOracle(std::uint64_t seed) : seed_(seed) {}

    double uniform(int level, std::span<const Coord> coords) const {
        return to_unit(cell_hash(seed_, level, coords));
    }

    bool retained(int level, std::span<const Coord> coords, double p) const {
        return uniform(level, coords) < p;
    }

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
};

/// retain_decision: true iff U(cell) < p, deterministic in (seed, cell).
inline bool retain_decision(const ProcessParams& params, const CellIndex& cell) {
    validate_cell(params, cell);
    return RetentionOracle(params.seed).retained(cell.level, cell.k, params.p);
}

}  // namespace fracperc
