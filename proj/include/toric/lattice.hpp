// Exact integer and rational linear algebra over the ambient lattice Z^n.
//
// Everything here is 64-bit with checked arithmetic: any intermediate that
// would overflow throws OverflowError instead of wrapping.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

using Int = std::int64_t;

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Raised for geometrically invalid input (dependent rays, zero vectors...).
class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
Int checked_neg(Int a);
Int checked_abs(Int a);

/// Non-negative gcd; gcd(0, 0) == 0.
Int gcd(Int a, Int b);
Int lcm(Int a, Int b);
Int floor_div(Int a, Int b);
Int ceil_div(Int a, Int b);

class IntVector {
 public:
  IntVector() = default;
  explicit IntVector(std::size_t n) : c_(n, 0) {}
  IntVector(std::initializer_list<Int> init) : c_(init) {}
  explicit IntVector(std::vector<Int> coords) : c_(std::move(coords)) {}

  std::size_t size() const { return c_.size(); }
  Int operator[](std::size_t i) const { return c_[i]; }
  Int& operator[](std::size_t i) { return c_[i]; }
  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }
  auto begin() { return c_.begin(); }
  auto end() { return c_.end(); }
  const std::vector<Int>& coords() const { return c_; }

  bool is_zero() const;
  Int dot(const IntVector& other) const;

  friend IntVector operator+(const IntVector& a, const IntVector& b);
  friend IntVector operator-(const IntVector& a, const IntVector& b);
  friend IntVector operator-(const IntVector& a);
  friend IntVector operator*(Int k, const IntVector& a);

  auto operator<=>(const IntVector&) const = default;
  bool operator==(const IntVector&) const = default;

 private:
  std::vector<Int> c_;
};

std::string to_string(const IntVector& v);

/// gcd of the coordinates (0 for the zero vector).
Int content(std::span<const Int> v);
Int content(const IntVector& v);

struct PrimitivePart {
  IntVector vector;
  Int multiplicity;
};

/// v = multiplicity * vector with vector primitive; throws on v == 0.
PrimitivePart primitive_part(const IntVector& v);

class Rational {
 public:
  Rational() = default;
  Rational(Int n) : num_(n) {}  // NOLINT: implicit from integers is intended
  Rational(Int n, Int d);

  Int num() const { return num_; }
  Int den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  Int floor() const { return floor_div(num_, den_); }
  Int ceil() const { return ceil_div(num_, den_); }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) { return {checked_neg(a.num_), a.den_}; }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::string str() const;
  /// Accepts "p", "-p", "p/q".
  static Rational parse(const std::string& s);

 private:
  Int num_ = 0;
  Int den_ = 1;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_columns(std::span<const IntVector> columns);
  static IntMatrix from_rows(std::span<const IntVector> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  Int& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  IntMatrix transpose() const;
  IntVector apply(const IntVector& v) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  bool operator==(const IntMatrix&) const = default;

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  /// row i += k * row j
  void add_row_multiple(std::size_t i, std::size_t j, Int k);
  void add_col_multiple(std::size_t i, std::size_t j, Int k);
  void negate_row(std::size_t i);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> a_;
};

std::string to_string(const IntMatrix& m);

Int determinant(const IntMatrix& m);
IntMatrix adjugate(const IntMatrix& m);
std::size_t rank(const IntMatrix& m);

/// U * M * V == diag(factors), factors[i] | factors[i+1] (zeros last).
struct SmithData {
  std::vector<Int> factors;  // length min(rows, cols)
  IntMatrix U;
  IntMatrix V;
  std::size_t rank() const;
};

SmithData smith_form(const IntMatrix& m);

/// Row-style Hermite normal form: canonical representative of {U * M}
/// over unimodular U. Zero rows are dropped.
IntMatrix hermite_form(const IntMatrix& m);

/// Index of the lattice generated by the vectors inside Z^n.
Int sublattice_index(std::span<const IntVector> rays);

/// Saturated basis of {x in Z^cols : M x = 0}, in Hermite normal form.
std::vector<IntVector> kernel_basis(const IntMatrix& m);

/// Coordinates with respect to n linearly independent rays: for a lattice
/// point p, numerators N with p = sum (N_i / denom) * rays_i, denom > 0.
class RayBasis {
 public:
  RayBasis() = default;
  explicit RayBasis(std::span<const IntVector> rays);

  std::size_t dim() const { return rays_.size(); }
  const std::vector<IntVector>& rays() const { return rays_; }
  /// |det| of the ray matrix (the lattice index of the cone).
  Int denom() const { return denom_; }
  /// Integer form h with h(p) == denom * (sum of coefficients of p).
  IntVector height_form() const;
  IntVector numerators(const IntVector& p) const;
  std::vector<Rational> coefficients(const IntVector& p) const;
  /// True iff all coefficients are >= 0.
  bool contains(const IntVector& p) const;

 private:
  std::vector<IntVector> rays_;
  IntMatrix adj_;  // sign-adjusted so that adj_ * R == denom_ * I
  Int denom_ = 0;
};

struct BoxPoint {
  IntVector point;
  std::vector<Rational> coefficients;  // each in [0, 1)

  bool operator==(const BoxPoint&) const = default;
};

/// All lattice points sum t_i rays_i with t_i in [0,1). Exactly |det| points
/// including the origin, enumerated through the Smith form of the ray matrix.
std::vector<BoxPoint> box_points(std::span<const IntVector> rays);

}  // namespace toric
