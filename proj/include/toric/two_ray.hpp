// The two-ray game on n+2 rays in dimension n: Gale duality into the rank-2
// class plane, the chamber structure there, and the wall crossings that move
// between Q-factorial models or contract them.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "toric/fan.hpp"
#include "toric/polytope.hpp"
#include "toric/variety.hpp"

namespace toric {

enum class StepKind { flip, flop, antiflip, divisorial, fibration };

std::string to_string(StepKind k);
StepKind parse_step_kind(const std::string& s);
bool is_small(StepKind k);

/// Kind implied by the sign pattern of an oriented wall relation.
StepKind classify_relation(const std::vector<Int>& relation);

enum class WallSide { lower, upper };

/// One of the two walls of a chamber. The relation sum b_i v_i = 0 is
/// primitive and positive on the rays whose classes lie on the chamber's side.
struct WallCrossing {
  WallSide side;
  std::vector<Int> relation;  // aligned with the model's rays
  StepKind kind;

  Int k_degree() const;
  std::vector<int> positive() const;
  std::vector<int> negative() const;
  std::vector<int> zero() const;
};

/// The Gale dual of n+2 spanning rays. Chambers are the open sectors between
/// consecutive distinct class directions; sectors are numbered
/// counterclockwise and only some of them carry complete fans.
class GaleConfiguration {
 public:
  explicit GaleConfiguration(std::vector<IntVector> rays);

  std::size_t dim() const { return rays_[0].size(); }
  const std::vector<IntVector>& rays() const { return rays_; }
  /// Two rows spanning the saturated relation lattice (Hermite form).
  const std::vector<IntVector>& relation_basis() const { return basis_; }
  /// Class of ray i in the coordinates of relation_basis().
  const std::vector<IntVector>& gale() const { return gale_; }
  /// Distinct primitive class directions, counterclockwise.
  const std::vector<IntVector>& directions() const { return dirs_; }

  std::size_t sector_count() const { return dirs_.size() - 1; }
  /// Top cones of the fan attached to a sector (possibly not using every ray).
  const std::vector<Cone>& sector_cones(std::size_t sector) const { return sector_cones_[sector]; }
  bool is_model(std::size_t sector) const;
  std::optional<std::size_t> sector_of(const Fan& fan) const;

  WallCrossing wall(std::size_t sector, WallSide side) const;

 private:
  std::vector<IntVector> rays_;
  std::vector<IntVector> basis_;
  std::vector<IntVector> gale_;
  std::vector<IntVector> dirs_;
  std::vector<std::vector<Cone>> sector_cones_;
};

struct Blowdown {
  std::size_t contracted;         // index of the contracted ray in the model
  std::vector<int> target_rays;   // model ray index of each target ray
  SimplexVariety target;
  Cone centre;                    // target ray indices spanning the smallest cone containing the contracted ray
  Int index;                      // r in r * u = sum b_i s_i
  std::vector<Int> relation;      // aligned with the model's rays
};

struct Fibration {
  std::vector<int> fibre_rays;  // model ray indices
  std::vector<int> base_rays;
  SimplexVariety fibre;
  SimplexVariety base;
};

/// Non-simplicial fan of the base of a flop together with its anticanonical
/// data when it is the spanning fan of a Fano polytope.
struct FlopBase {
  std::vector<IntVector> rays;
  std::vector<Cone> cones;
  std::optional<GorensteinData> gorenstein;
};

/// A complete simplicial fan on n+2 rays together with its chamber.
class RankTwoModel {
 public:
  explicit RankTwoModel(const Fan& fan);
  RankTwoModel(std::shared_ptr<const GaleConfiguration> config, std::size_t sector);

  const Fan& fan() const { return fan_; }
  const GaleConfiguration& gale() const { return *config_; }
  std::size_t sector() const { return sector_; }

  /// (lower wall, upper wall) of the chamber.
  std::pair<WallCrossing, WallCrossing> extremal_crossings() const;
  WallCrossing crossing(WallSide side) const { return config_->wall(sector_, side); }

  RankTwoModel cross_small(const WallCrossing& c) const;
  Blowdown contract_divisor(const WallCrossing& c) const;
  Fibration fibration_data(const WallCrossing& c) const;
  FlopBase flop_base(const WallCrossing& c) const;
  bool is_fano_model() const { return is_fano(fan_); }

 private:
  std::shared_ptr<const GaleConfiguration> config_;
  std::size_t sector_;
  Fan fan_;
};

}  // namespace toric
