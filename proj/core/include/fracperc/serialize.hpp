#pragma once

#include <string>

#include "fracperc/config.hpp"

namespace fracperc {

inline constexpr const char* kToolVersion = "fracperc 0.1.0";

/// Cache file: "FRPC1\n", u32 header length, JSON header
/// (N, d, p, seed, level, z, format, version), then the payload —
/// run-length-encoded bit grid for dense storage, delta-coded sorted
/// indices for sparse storage.
void save_configuration(const LevelConfiguration& config, const std::string& path);

LevelConfiguration load_configuration(const std::string& path);

}  // namespace fracperc
