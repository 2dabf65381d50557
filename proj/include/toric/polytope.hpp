// Lattice-polytope level invariants: normal forms up to GL(n,Z) and
// relabelling, configuration automorphisms, and anticanonical data of a
// Fano polytope read off its dual.

#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "toric/fan.hpp"
#include "toric/lattice.hpp"

namespace toric {

/// Canonical byte string for a vertex configuration. Two configurations get
/// equal keys iff they differ by GL(n,Z) and a permutation of the vertices.
struct NormalFormKey {
  std::string bytes;
  auto operator<=>(const NormalFormKey&) const = default;
};

NormalFormKey normal_form(std::span<const IntVector> vertices);

/// A vertex permutation induced by a lattice automorphism A:
/// A * v_i == v_{perm[i]}.
struct LatticeSymmetry {
  std::vector<int> perm;
  IntMatrix matrix;
};

/// All lattice automorphisms permuting the vertex set (the identity first).
std::vector<LatticeSymmetry> configuration_symmetries(std::span<const IntVector> vertices);

/// Symmetries of the configuration that also permute the top cones of the fan.
std::vector<LatticeSymmetry> fan_symmetries(const Fan& fan);

struct GorensteinData {
  Rational degree;   // (-K)^n = n! vol(dual polytope)
  Int h0 = 0;        // lattice points of the dual polytope
  bool gorenstein = false;  // dual polytope is a lattice polytope

  bool operator==(const GorensteinData&) const = default;
};

/// Anticanonical degree and section count of the Fano variety whose spanning
/// fan has the given rays and facets (facets may be non-simplicial).
GorensteinData gorenstein_data(std::span<const IntVector> rays, std::span<const Cone> facets);
GorensteinData gorenstein_data(const Fan& fan);

}  // namespace toric
