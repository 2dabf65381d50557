#include "toric/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

namespace toric {

namespace {

[[noreturn]] void overflow(const char* what) {
  throw OverflowError(std::string("integer overflow in ") + what);
}

Int narrow(__int128 x, const char* what) {
  if (x > std::numeric_limits<Int>::max() || x < std::numeric_limits<Int>::min()) overflow(what);
  return static_cast<Int>(x);
}

}  // namespace

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) overflow("addition");
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) overflow("subtraction");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) overflow("multiplication");
  return r;
}

Int checked_neg(Int a) { return checked_sub(0, a); }

Int checked_abs(Int a) { return a < 0 ? checked_neg(a) : a; }

Int gcd(Int a, Int b) {
  a = checked_abs(a);
  b = checked_abs(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int lcm(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  return checked_abs(checked_mul(a / gcd(a, b), b));
}

Int floor_div(Int a, Int b) {
  if (b == 0) throw std::domain_error("division by zero");
  if (b == -1) return checked_neg(a);
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int ceil_div(Int a, Int b) { return checked_neg(floor_div(checked_neg(a), b)); }

// ---------------------------------------------------------------- IntVector

bool IntVector::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](Int x) { return x == 0; });
}

Int IntVector::dot(const IntVector& other) const {
  if (other.size() != size()) throw LatticeError("dimension mismatch in dot product");
  Int s = 0;
  for (std::size_t i = 0; i < size(); ++i) s = checked_add(s, checked_mul(c_[i], other.c_[i]));
  return s;
}

IntVector operator+(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw LatticeError("dimension mismatch");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
  return r;
}

IntVector operator-(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw LatticeError("dimension mismatch");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_sub(a[i], b[i]);
  return r;
}

IntVector operator-(const IntVector& a) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_neg(a[i]);
  return r;
}

IntVector operator*(Int k, const IntVector& a) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_mul(k, a[i]);
  return r;
}

std::string to_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s + ")";
}

Int content(std::span<const Int> v) {
  Int g = 0;
  for (Int x : v) g = gcd(g, x);
  return g;
}

Int content(const IntVector& v) { return content(std::span<const Int>(v.coords())); }

PrimitivePart primitive_part(const IntVector& v) {
  Int g = content(v);
  if (g == 0) throw LatticeError("zero vector has no primitive part");
  IntVector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] / g;
  return {std::move(w), g};
}

// ----------------------------------------------------------------- Rational

Rational::Rational(Int n, Int d) {
  if (d == 0) throw std::domain_error("zero denominator");
  if (d < 0) {
    n = checked_neg(n);
    d = checked_neg(d);
  }
  Int g = gcd(n, d);
  num_ = n / g;
  den_ = d / g;
}

Rational operator+(const Rational& a, const Rational& b) {
  Int g = gcd(a.den_, b.den_);
  Int da = a.den_ / g;
  Int db = b.den_ / g;
  return {checked_add(checked_mul(a.num_, db), checked_mul(b.num_, da)), checked_mul(a.den_, db)};
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  Int g1 = gcd(a.num_, b.den_);
  Int g2 = gcd(b.num_, a.den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return {checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1)};
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("division by zero");
  return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  __int128 l = static_cast<__int128>(a.num_) * b.den_;
  __int128 r = static_cast<__int128>(b.num_) * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& s) {
  auto parse_int = [&](std::string_view t) {
    Int v = 0;
    auto first = t.data();
    if (!t.empty() && t.front() == '+') ++first;
    auto [p, ec] = std::from_chars(first, t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || t.empty())
      throw std::invalid_argument("not a rational number: '" + s + "'");
    return v;
  };
  std::string_view sv(s);
  auto slash = sv.find('/');
  if (slash == std::string_view::npos) return {parse_int(sv)};
  return {parse_int(sv.substr(0, slash)), parse_int(sv.substr(slash + 1))};
}

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw LatticeError("ragged matrix literal");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::span<const IntVector> columns) {
  if (columns.empty()) return {};
  IntMatrix m(columns[0].size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != m.rows_) throw LatticeError("columns of unequal length");
    for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(std::span<const IntVector> rows) {
  if (rows.empty()) return {};
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw LatticeError("rows of unequal length");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(std::vector<Int>(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntVector IntMatrix::apply(const IntVector& v) const {
  if (v.size() != cols_) throw LatticeError("dimension mismatch in matrix-vector product");
  IntVector r(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Int s = 0;
    for (std::size_t j = 0; j < cols_; ++j) s = checked_add(s, checked_mul((*this)(i, j), v[j]));
    r[i] = s;
  }
  return r;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw LatticeError("dimension mismatch in matrix product");
  IntMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      Int x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) = checked_add(r(i, j), checked_mul(x, b(k, j)));
    }
  return r;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row_multiple(std::size_t i, std::size_t j, Int k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c)
    (*this)(i, c) = checked_add((*this)(i, c), checked_mul(k, (*this)(j, c)));
}

void IntMatrix::add_col_multiple(std::size_t i, std::size_t j, Int k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r)
    (*this)(r, i) = checked_add((*this)(r, i), checked_mul(k, (*this)(r, j)));
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = checked_neg((*this)(i, c));
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ',';
    os << to_string(m.row(i));
  }
  os << ']';
  return os.str();
}

// Fraction-free Bareiss elimination; intermediates in 128 bits.
Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw LatticeError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<__int128> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  auto at = [&](std::size_t i, std::size_t j) -> __int128& { return a[i * n + j]; };
  int sign = 1;
  __int128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(at(k, c), at(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        __int128 x = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        at(i, j) = x / prev;
        narrow(at(i, j), "determinant");
      }
    prev = at(k, k);
  }
  return narrow(sign * at(n - 1, n - 1), "determinant");
}

IntMatrix adjugate(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw LatticeError("adjugate of a non-square matrix");
  const std::size_t n = m.rows();
  IntMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  IntMatrix minor(n - 1, n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // cofactor of entry (j, i) goes to adj(i, j)
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      Int d = determinant(minor);
      adj(i, j) = ((i + j) % 2 == 0) ? d : checked_neg(d);
    }
  return adj;
}

std::size_t SmithData::rank() const {
  return static_cast<std::size_t>(std::count_if(factors.begin(), factors.end(), [](Int d) { return d != 0; }));
}

SmithData smith_form(const IntMatrix& m) {
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(r);
  IntMatrix v = IntMatrix::identity(c);
  const std::size_t k = std::min(r, c);
  std::size_t t = 0;
  for (; t < k; ++t) {
    bool exhausted = false;
    while (true) {
      std::size_t pi = r, pj = c;
      Int best = 0;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j) {
          Int x = checked_abs(a(i, j));
          if (x != 0 && (best == 0 || x < best)) {
            best = x;
            pi = i;
            pj = j;
          }
        }
      if (best == 0) {
        exhausted = true;
        break;
      }
      a.swap_rows(t, pi);
      u.swap_rows(t, pi);
      a.swap_cols(t, pj);
      v.swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        Int q = a(i, t) / a(t, t);
        a.add_row_multiple(i, t, checked_neg(q));
        u.add_row_multiple(i, t, checked_neg(q));
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        Int q = a(t, j) / a(t, t);
        a.add_col_multiple(j, t, checked_neg(q));
        v.add_col_multiple(j, t, checked_neg(q));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool divisible = true;
      for (std::size_t i = t + 1; i < r && divisible; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (a(i, j) % a(t, t) != 0) {
            a.add_row_multiple(t, i, 1);
            u.add_row_multiple(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (exhausted) break;
    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  }
  SmithData s{std::vector<Int>(k, 0), std::move(u), std::move(v)};
  for (std::size_t i = 0; i < t; ++i) s.factors[i] = a(i, i);
  return s;
}

IntMatrix hermite_form(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t r = a.rows();
  const std::size_t c = a.cols();
  std::size_t p = 0;
  for (std::size_t col = 0; col < c && p < r; ++col) {
    while (true) {
      std::size_t best_row = r;
      Int best = 0;
      for (std::size_t i = p; i < r; ++i) {
        Int x = checked_abs(a(i, col));
        if (x != 0 && (best == 0 || x < best)) {
          best = x;
          best_row = i;
        }
      }
      if (best == 0) break;
      a.swap_rows(p, best_row);
      bool clean = true;
      for (std::size_t i = p + 1; i < r; ++i) {
        a.add_row_multiple(i, p, checked_neg(a(i, col) / a(p, col)));
        if (a(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(p, col) == 0) continue;
    if (a(p, col) < 0) a.negate_row(p);
    for (std::size_t i = 0; i < p; ++i) a.add_row_multiple(i, p, checked_neg(floor_div(a(i, col), a(p, col))));
    ++p;
  }
  IntMatrix h(p, c);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < c; ++j) h(i, j) = a(i, j);
  return h;
}

std::size_t rank(const IntMatrix& m) { return smith_form(m).rank(); }

Int sublattice_index(std::span<const IntVector> rays) {
  if (rays.empty()) throw LatticeError("degenerate configuration");
  IntMatrix m = IntMatrix::from_columns(rays);
  SmithData s = smith_form(m);
  if (s.rank() < m.rows()) throw LatticeError("degenerate configuration");
  Int index = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) index = checked_mul(index, s.factors[i]);
  return index;
}

std::vector<IntVector> kernel_basis(const IntMatrix& m) {
  SmithData s = smith_form(m);
  std::vector<IntVector> basis;
  for (std::size_t j = s.rank(); j < m.cols(); ++j) basis.push_back(s.V.column(j));
  if (basis.empty()) return basis;
  IntMatrix h = hermite_form(IntMatrix::from_rows(basis));
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < h.rows(); ++i) out.push_back(h.row(i));
  return out;
}

// ----------------------------------------------------------------- RayBasis

RayBasis::RayBasis(std::span<const IntVector> rays) : rays_(rays.begin(), rays.end()) {
  IntMatrix r = IntMatrix::from_columns(rays);
  if (r.rows() != r.cols()) throw LatticeError("ray basis needs exactly n rays in dimension n");
  Int d = determinant(r);
  if (d == 0) throw LatticeError("linearly dependent rays");
  adj_ = adjugate(r);
  if (d < 0) {
    for (std::size_t i = 0; i < adj_.rows(); ++i) adj_.negate_row(i);
    d = checked_neg(d);
  }
  denom_ = d;
}

IntVector RayBasis::numerators(const IntVector& p) const { return adj_.apply(p); }

std::vector<Rational> RayBasis::coefficients(const IntVector& p) const {
  IntVector n = numerators(p);
  std::vector<Rational> t;
  t.reserve(n.size());
  for (Int x : n) t.emplace_back(x, denom_);
  return t;
}

IntVector RayBasis::height_form() const {
  IntVector h(adj_.cols());
  for (std::size_t i = 0; i < adj_.rows(); ++i) h = h + adj_.row(i);
  return h;
}

bool RayBasis::contains(const IntVector& p) const {
  IntVector n = numerators(p);
  return std::all_of(n.begin(), n.end(), [](Int x) { return x >= 0; });
}

std::vector<BoxPoint> box_points(std::span<const IntVector> rays) {
  RayBasis basis(rays);
  const std::size_t n = rays.size();
  SmithData s = smith_form(IntMatrix::from_columns(rays));
  IntMatrix u_inv = adjugate(s.U);
  if (determinant(s.U) < 0)
    for (std::size_t i = 0; i < n; ++i) u_inv.negate_row(i);

  std::vector<BoxPoint> out;
  out.reserve(static_cast<std::size_t>(basis.denom()));
  IntVector k(n);
  while (true) {
    IntVector x = u_inv.apply(k);
    IntVector num = basis.numerators(x);
    BoxPoint bp{x, {}};
    bp.coefficients.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      Int q = floor_div(num[i], basis.denom());
      if (q != 0) bp.point = bp.point - q * rays[i];
      bp.coefficients.emplace_back(checked_sub(num[i], checked_mul(q, basis.denom())), basis.denom());
    }
    out.push_back(std::move(bp));
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++k[i] < s.factors[i]) break;
      k[i] = 0;
    }
    if (i == n) break;
  }
  return out;
}

}  // namespace toric
