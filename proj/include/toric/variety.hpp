// Rank-one toric varieties: (fake) weighted projective spaces given by n+1
// primitive rays.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "toric/fan.hpp"
#include "toric/polytope.hpp"

namespace toric {

struct WeightsAndDiscriminant {
  std::vector<Int> weights;       // positive, gcd 1; sum weights[i] * rays[i] == 0
  std::vector<Int> discriminant;  // invariant factors > 1 of Z^n / <rays>
};

/// Weights aligned with the input rays (not sorted).
WeightsAndDiscriminant weights_and_discriminant(std::span<const IntVector> rays);

class SimplexVariety {
 public:
  explicit SimplexVariety(std::vector<IntVector> rays);

  const Fan& fan() const { return fan_; }
  const std::vector<IntVector>& rays() const { return fan_.rays(); }
  std::size_t dim() const { return fan_.dim(); }
  /// Aligned with rays().
  const std::vector<Int>& weights() const { return data_.weights; }
  std::vector<Int> sorted_weights() const;
  const std::vector<Int>& discriminant() const { return data_.discriminant; }
  Int discriminant_order() const;
  const NormalFormKey& key() const { return key_; }
  /// "P^3", "P(1,2,3,5)", "P(1,1,1,1)/Z5".
  std::string name() const;

 private:
  Fan fan_;
  WeightsAndDiscriminant data_;
  NormalFormKey key_;
};

std::string variety_name(std::vector<Int> weights, const std::vector<Int>& discriminant);

/// Well-formed weighted projective space with rays generating Z^n.
SimplexVariety weighted_projective_space(const std::vector<Int>& weights);

/// The diagonal action of Z/order on coordinates with the given exponents.
struct CyclicAction {
  Int order;
  std::vector<Int> exponents;
};

/// P(weights) / (product of cyclic actions), realised by refining the lattice
/// with the points (1/order) * sum exponents_i * v_i.
SimplexVariety fake_weighted_projective_space(const std::vector<Int>& weights, std::span<const CyclicAction> actions);

}  // namespace toric
