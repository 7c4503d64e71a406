#pragma once

#include <optional>

#include "kgws/nu_spectrum.hpp"
#include "kgws/radial_grid.hpp"
#include "kgws/wavefunction.hpp"

namespace kgws {

struct OracleResult {
    double energy = 0.0;
    double match_residual = 0.0;    ///< normalized discrete Wronskian at the matching point
    double grid_convergence = 0.0;  ///< |E(h/2) - E(h)|, MeV; 0 when not computed
    int node_count = 0;
};

struct ShootOptions {
    std::optional<double> guess;    ///< centre of a +-10 MeV bracket tried first
    int scan_points = 1000;         ///< fallback scan over the branch half-range
    bool estimate_convergence = true;
};

/// Energy range searched for a branch: particle (0, m0c^2), antiparticle
/// (-m0c^2, 0), each shrunk by 1e-6 m0c^2 at the ends.
std::pair<double, double> shooting_range(Branch branch, const SystemParams& p);

/// Numerov shooting on phi'' = W phi with the replaced centrifugal term.
/// Outward from phi(0) = 0, inward from phi(r_max) = 0, matched at the grid
/// point nearest r0. Throws NoBoundState / NodeCountMismatch.
OracleResult shoot_approximated(int n, int l, Branch branch, const SystemParams& p,
                                const PekerisCoefficients& d, const RadialGrid& grid,
                                const ShootOptions& opts = {});

/// Same scheme with l(l+1)/r^2, starting at r = 1e-4 fm with phi ~ r^(l+1).
OracleResult shoot_exact_centrifugal(int n, int l, Branch branch, const SystemParams& p,
                                     const RadialGrid& grid, const ShootOptions& opts = {});

/// Observed order log2(|E_h - E_h/2| / |E_h/2 - E_h/4|) starting from `grid`.
double observed_convergence_order(int n, int l, Branch branch, const SystemParams& p,
                                  const PekerisCoefficients& d, const RadialGrid& grid,
                                  std::optional<double> guess = std::nullopt);

struct ResidualReport {
    double max_residual = 0.0;  ///< max |phi'' - W phi|
    double max_w_phi = 0.0;     ///< max |W phi|
    double relative = 0.0;      ///< max_residual / max_w_phi
    double at_r = 0.0;          ///< location of max_residual
};

/// Substitutes the analytic eigenfunction into phi'' = W phi on the grid,
/// with W evaluated at `energy` (the state's own energy by default).
/// Throws DomainError for an identically zero function.
ResidualReport verify_state(const Eigenfunction& phi, const RadialGrid& grid,
                            std::optional<double> energy = std::nullopt);

} // namespace kgws
