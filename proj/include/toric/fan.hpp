// Complete simplicial fans, support covectors and the singularity / Fano
// predicates that drive the link engine.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "toric/lattice.hpp"

namespace toric {

/// Sorted, unique indices into a fan's ray table.
using Cone = std::vector<int>;

class FanError : public LatticeError {
 public:
  using LatticeError::LatticeError;
};

/// A complete simplicial fan. Construction validates: primitive distinct
/// rays, independent cones, every facet shared by exactly two top cones lying
/// on opposite sides of it, and a single sheet over the first cone.
class Fan {
 public:
  Fan(std::vector<IntVector> rays, std::vector<Cone> cones);

  /// The complete fan on n+1 rays whose cones are all n-subsets.
  static Fan simplex(std::vector<IntVector> rays);

  std::size_t dim() const { return dim_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const IntVector& ray(std::size_t i) const { return rays_[i]; }
  const std::vector<Cone>& cones() const { return cones_; }
  const RayBasis& basis(std::size_t cone) const { return bases_[cone]; }
  std::vector<IntVector> cone_rays(std::size_t cone) const;

  std::optional<std::size_t> ray_index(const IntVector& v) const;
  /// First top cone containing p.
  std::size_t locate(const IntVector& p) const;
  std::optional<std::size_t> find_cone(const Cone& cone) const;

  bool operator==(const Fan& other) const { return rays_ == other.rays_ && cones_ == other.cones_; }

 private:
  void validate() const;

  std::size_t dim_ = 0;
  std::vector<IntVector> rays_;
  std::vector<Cone> cones_;
  std::vector<RayBasis> bases_;
};

/// psi = form / height, with psi(ray) == 1 on every ray of its cone.
struct SupportCovector {
  IntVector form;
  Int height = 1;

  Rational operator()(const IntVector& p) const { return {form.dot(p), height}; }
  std::vector<Rational> coefficients() const;
};

SupportCovector support_covector(std::span<const IntVector> cone_rays);
SupportCovector support_covector(const Fan& fan, std::size_t cone);

/// psi_C(v) - 1 for a top cone C containing v.
Rational discrepancy(const Fan& fan, const IntVector& v);

/// A lattice point of the shed (psi <= 1) other than the origin and the rays.
struct SingularityWitness {
  std::size_t cone;
  BoxPoint point;
  Rational height;
};

/// First box point of the given cone with psi <= 1 (terminal check) or
/// psi < 1 (canonical check).
std::optional<BoxPoint> cone_witness(std::span<const IntVector> cone_rays, bool canonical);

std::optional<SingularityWitness> terminal_witness(const Fan& fan);
bool is_terminal(const Fan& fan);
bool is_canonical(const Fan& fan);

/// The fan is the spanning fan of conv(rays): psi_C(u) < 1 for every top
/// cone C and every ray u outside C.
bool is_fano(const Fan& fan);

/// Stellar subdivision at a new primitive ray v (appended as the last ray).
Fan star_subdivide(const Fan& fan, const IntVector& v);

/// Sum over top cones of |det| / n!.
Rational shed_volume(const Fan& fan);

Int factorial(std::size_t n);

}  // namespace toric
