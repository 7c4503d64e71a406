#pragma once

namespace kgws::constants {

/// hbar * c in MeV fm (CODATA 2018).
inline constexpr double hbar_c = 197.3269804;

/// Atomic mass unit in MeV/c^2 (CODATA 2018).
inline constexpr double amu_to_mev = 931.49410242;

} // namespace kgws::constants
