#pragma once

namespace community_forge {

/// Every grid size and tolerance the library uses, in one record so that
/// golden-value runs can tighten them together.
struct NumericsConfig {
  int ring_grid_n = 512;        // demand profile samples around the ring
  int y_grid_n = 256;           // producer samples per community
  int x_grid_n = 256;           // supply density samples over the support
  int quadrature_order = 64;    // Gauss-Legendre nodes per panel
  int nash_agents = 200;        // agents sampled by verify_nash

  double golden_rel_tol = 1e-10;     // golden-section bracket, relative to its width
  double bisection_tol = 1e-10;      // interval-length searches, absolute
  double nash_tol = 1e-4;            // deviation gain tolerance, relative to 1 + |home|
  double balance_tol = 1e-6;         // utility balance agreement, relative
  double balance_integrity_tol = 1e-3;  // beyond this the balance check throws
  double singular_jacobian = 1e-8;   // |dx*/dy| clamp in the pushforward density
  double concavity_tol = 1e-12;      // strictness margin for discrete concavity, relative

  static constexpr int min_ring_grid = 64;
  static constexpr int min_y_grid = 128;
  static constexpr int min_x_grid = 16;

  /// Throws std::invalid_argument if any size is below its minimum or any
  /// tolerance is non-positive.
  void validate() const;
};

}  // namespace community_forge
