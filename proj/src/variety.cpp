#include "toric/variety.hpp"

#include <algorithm>

namespace toric {

WeightsAndDiscriminant weights_and_discriminant(std::span<const IntVector> rays) {
  if (rays.empty() || rays.size() != rays[0].size() + 1) throw LatticeError("a simplex needs n+1 rays in dimension n");
  IntMatrix m = IntMatrix::from_columns(rays);
  auto ker = kernel_basis(m);
  if (ker.size() != 1) throw LatticeError("degenerate configuration");
  IntVector w = ker[0];
  if (w[0] < 0) w = -w;
  for (Int x : w)
    if (x <= 0) throw LatticeError("rays do not positively span: no positive relation");
  WeightsAndDiscriminant out;
  out.weights = w.coords();
  SmithData s = smith_form(m);
  for (Int d : s.factors)
    if (d > 1) out.discriminant.push_back(d);
  return out;
}

SimplexVariety::SimplexVariety(std::vector<IntVector> rays)
    : fan_(Fan::simplex(std::move(rays))), data_(weights_and_discriminant(fan_.rays())), key_(normal_form(fan_.rays())) {}

std::vector<Int> SimplexVariety::sorted_weights() const {
  auto w = data_.weights;
  std::sort(w.begin(), w.end());
  return w;
}

Int SimplexVariety::discriminant_order() const {
  Int o = 1;
  for (Int d : data_.discriminant) o = checked_mul(o, d);
  return o;
}

std::string SimplexVariety::name() const { return variety_name(data_.weights, data_.discriminant); }

std::string variety_name(std::vector<Int> weights, const std::vector<Int>& discriminant) {
  std::sort(weights.begin(), weights.end());
  std::string s;
  if (std::all_of(weights.begin(), weights.end(), [](Int w) { return w == 1; })) {
    s = "P^" + std::to_string(weights.size() - 1);
  } else {
    s = "P(";
    for (std::size_t i = 0; i < weights.size(); ++i) s += (i ? "," : "") + std::to_string(weights[i]);
    s += ")";
  }
  if (!discriminant.empty()) {
    s += "/";
    for (std::size_t i = 0; i < discriminant.size(); ++i) s += (i ? "xZ" : "Z") + std::to_string(discriminant[i]);
  }
  return s;
}

namespace {

std::vector<IntVector> wps_rays(const std::vector<Int>& weights) {
  if (weights.size() < 2) throw LatticeError("need at least two weights");
  for (Int w : weights)
    if (w <= 0) throw LatticeError("weights must be positive");
  IntMatrix a(1, weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) a(0, i) = weights[i];
  auto ker = kernel_basis(a);
  IntMatrix k = IntMatrix::from_rows(ker);
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    IntVector v = k.column(i);
    if (content(v) != 1) throw LatticeError("weights are not well-formed");
    rays.push_back(std::move(v));
  }
  return rays;
}

}  // namespace

SimplexVariety weighted_projective_space(const std::vector<Int>& weights) { return SimplexVariety(wps_rays(weights)); }

SimplexVariety fake_weighted_projective_space(const std::vector<Int>& weights, std::span<const CyclicAction> actions) {
  auto rays = wps_rays(weights);
  const std::size_t n = rays[0].size();
  Int big = 1;
  for (const auto& a : actions) {
    if (a.order <= 0 || a.exponents.size() != weights.size()) throw LatticeError("malformed cyclic action");
    big = lcm(big, a.order);
  }
  // Generators of big * L' inside Z^n.
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = big;
    gens.push_back(e);
  }
  for (const auto& a : actions) {
    IntVector g(n);
    for (std::size_t i = 0; i < rays.size(); ++i) g = g + checked_mul(a.exponents[i], big / a.order) * rays[i];
    gens.push_back(g);
  }
  IntMatrix b = hermite_form(IntMatrix::from_rows(gens));
  if (b.rows() != n) throw LatticeError("degenerate lattice refinement");
  // Rows of b / big form a basis of L'; coordinates x solve b^T x = big * v.
  IntMatrix bt = b.transpose();
  IntMatrix adj = adjugate(bt);
  Int det = determinant(bt);
  std::vector<IntVector> out;
  for (const auto& v : rays) {
    IntVector x = adj.apply(big * v);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] % det != 0) throw LatticeError("lattice refinement does not contain the rays");
      x[i] /= det;
    }
    out.push_back(std::move(x));
  }
  return SimplexVariety(std::move(out));
}

}  // namespace toric
