#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <random>
#include <utility>
#include <vector>

#include "cdc/error.hpp"

namespace cdc {

inline constexpr std::uint64_t kDefaultModulus = 65537;

namespace detail {
// Field multiplications performed by this thread (see MulCounter).
extern thread_local std::uint64_t mul_count;
}  // namespace detail

/// Element of GF(q). The element carries its modulus, so elements of
/// different fields can live side by side.
///
/// A default or int-constructed element is an unbound literal (q = 0); it
/// takes the modulus of whatever it is combined with. This is what lets
/// Eigen write Scalar(0) and Scalar(1) without knowing q.
class Fp {
 public:
  Fp() = default;
  explicit Fp(int literal)
      : v_(static_cast<std::uint64_t>(static_cast<std::int64_t>(literal))) {}
  Fp(std::int64_t value, std::uint64_t modulus);

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return q_; }
  bool bound() const { return q_ != 0; }
  bool is_zero() const { return v_ == 0; }

  /// Residue of this element in GF(q); throws if bound to another modulus.
  std::uint64_t residue(std::uint64_t q) const;

  friend Fp operator+(const Fp& a, const Fp& b);
  friend Fp operator-(const Fp& a, const Fp& b);
  friend Fp operator*(const Fp& a, const Fp& b);
  friend Fp operator/(const Fp& a, const Fp& b);
  Fp operator-() const;

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  friend bool operator==(const Fp& a, const Fp& b);
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

 private:
  std::uint64_t literal_residue(std::uint64_t q) const;
  static std::uint64_t common_modulus(const Fp& a, const Fp& b);

  std::uint64_t v_ = 0;
  std::uint64_t q_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Fp& a);

}  // namespace cdc

namespace Eigen {
template <>
struct NumTraits<cdc::Fp> : GenericNumTraits<cdc::Fp> {
  typedef cdc::Fp Real;
  typedef cdc::Fp NonInteger;
  typedef cdc::Fp Literal;
  typedef cdc::Fp Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline int digits10() { return 0; }
  static inline cdc::Fp epsilon() { return cdc::Fp(0); }
  static inline cdc::Fp dummy_precision() { return cdc::Fp(0); }
};
}  // namespace Eigen

namespace cdc {

/// Multiplicative inverse by extended Euclid. Throws DivisionByZero on 0.
Fp inv(const Fp& a);
Fp pow(Fp base, std::uint64_t e);

/// Inverts every entry with one field inversion (Montgomery's trick).
std::vector<Fp> batch_inverse(const std::vector<Fp>& xs);

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Batch = std::vector<DenseMatrix<Scalar>>;

using Matrix = DenseMatrix<Fp>;
using Vector = DenseVector<Fp>;
using MatrixBatch = Batch<Fp>;

/// Counts field multiplications on the current thread while alive.
class MulCounter {
 public:
  MulCounter() : start_(detail::mul_count) {}
  std::uint64_t count() const { return detail::mul_count - start_; }

 private:
  std::uint64_t start_;
};

/// GF(q) context: validates q and builds elements and matrices.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t q = kDefaultModulus);

  std::uint64_t modulus() const { return q_; }

  Fp operator()(std::int64_t v) const { return Fp(v, q_); }
  Fp zero() const { return Fp(0, q_); }
  Fp one() const { return Fp(1, q_); }

  Matrix zeros(Eigen::Index rows, Eigen::Index cols) const;
  Matrix identity(Eigen::Index n) const;

  template <typename Rng>
  Fp random(Rng& rng) const {
    std::uniform_int_distribution<std::uint64_t> dist(0, q_ - 1);
    return Fp(static_cast<std::int64_t>(dist(rng)), q_);
  }

  template <typename Rng>
  Matrix random(Eigen::Index rows, Eigen::Index cols, Rng& rng) const {
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = random(rng);
    return m;
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) {
    return a.q_ == b.q_;
  }

 private:
  std::uint64_t q_;
};

bool is_prime(std::uint64_t n);

/// Dense univariate polynomial, ascending coefficients, always trimmed.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Fp> coeffs);

  const std::vector<Fp>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Fp operator[](std::size_t i) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Fp& s, const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void trim();
  std::vector<Fp> c_;
};

Fp poly_eval(const Polynomial& p, const Fp& x);
/// Quotient and remainder; throws DivisionByZero when b is zero.
std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a,
                                              const Polynomial& b);
/// Monic polynomial with the given roots.
Polynomial poly_from_roots(const std::vector<Fp>& roots);
Polynomial lagrange_interpolate(const std::vector<std::pair<Fp, Fp>>& points);


inline std::uint64_t Fp::literal_residue(std::uint64_t q) const {
  auto lit = static_cast<std::int64_t>(v_);
  auto m = static_cast<std::int64_t>(q);
  auto r = lit % m;
  return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

inline std::uint64_t Fp::common_modulus(const Fp& a, const Fp& b) {
  if (a.q_ == b.q_ || b.q_ == 0) return a.q_;
  if (a.q_ == 0) return b.q_;
  throw Error(ErrorKind::InvalidInput, "field elements from different moduli");
}

inline std::uint64_t Fp::residue(std::uint64_t q) const {
  if (q_ == q) return v_;
  if (q_ != 0)
    throw Error(ErrorKind::InvalidInput, "field elements from different moduli");
  return literal_residue(q);
}

inline Fp::Fp(std::int64_t value, std::uint64_t modulus) : q_(modulus) {
  auto m = static_cast<std::int64_t>(modulus);
  auto r = value % m;
  v_ = static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

inline Fp operator+(const Fp& a, const Fp& b) {
  Fp r;
  r.q_ = Fp::common_modulus(a, b);
  if (r.q_ == 0) {
    r.v_ = a.v_ + b.v_;
    return r;
  }
  std::uint64_t s = a.residue(r.q_) + b.residue(r.q_);
  r.v_ = s >= r.q_ ? s - r.q_ : s;
  return r;
}

inline Fp operator-(const Fp& a, const Fp& b) {
  Fp r;
  r.q_ = Fp::common_modulus(a, b);
  if (r.q_ == 0) {
    r.v_ = a.v_ - b.v_;
    return r;
  }
  std::uint64_t x = a.residue(r.q_), y = b.residue(r.q_);
  r.v_ = x >= y ? x - y : x + r.q_ - y;
  return r;
}

inline Fp operator*(const Fp& a, const Fp& b) {
  Fp r;
  r.q_ = Fp::common_modulus(a, b);
  if (r.q_ == 0) {
    r.v_ = static_cast<std::uint64_t>(static_cast<std::int64_t>(a.v_) *
                                      static_cast<std::int64_t>(b.v_));
    return r;
  }
  ++detail::mul_count;
  r.v_ = a.residue(r.q_) * b.residue(r.q_) % r.q_;
  return r;
}

inline Fp operator/(const Fp& a, const Fp& b) { return a * inv(b); }

inline Fp Fp::operator-() const { return Fp(0) - *this; }

inline bool operator==(const Fp& a, const Fp& b) {
  std::uint64_t q = Fp::common_modulus(a, b);
  if (q == 0) return a.v_ == b.v_;
  return a.residue(q) == b.residue(q);
}

}  // namespace cdc
