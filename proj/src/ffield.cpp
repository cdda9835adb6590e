#include "cdc/ffield.hpp"

#include <algorithm>
#include <ostream>
#include <string>

namespace cdc {

namespace detail {
thread_local std::uint64_t mul_count = 0;
}  // namespace detail

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::InvalidParams: return "invalid-params";
    case ErrorKind::DivisionByZero: return "division-by-zero";
    case ErrorKind::SingularMatrix: return "singular-matrix";
    case ErrorKind::ShapeMismatch: return "shape-mismatch";
    case ErrorKind::InsufficientAnswers: return "insufficient-answers";
    case ErrorKind::DecodingFailure: return "decoding-failure";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

std::ostream& operator<<(std::ostream& os, const Fp& a) {
  if (!a.bound()) return os << static_cast<std::int64_t>(a.value());
  return os << a.value();
}

Fp inv(const Fp& a) {
  if (!a.bound()) {
    // Only the literals +-1 are invertible without knowing q.
    auto lit = static_cast<std::int64_t>(a.value());
    if (lit == 1 || lit == -1) return a;
    throw Error(ErrorKind::DivisionByZero, "inverse of an unbound literal");
  }
  if (a.is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  // extended Euclid on (q, a)
  std::int64_t r0 = static_cast<std::int64_t>(a.modulus());
  std::int64_t r1 = static_cast<std::int64_t>(a.value());
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t qt = r0 / r1;
    std::int64_t r2 = r0 - qt * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t t2 = t0 - qt * t1;
    t0 = t1;
    t1 = t2;
  }
  return Fp(t0, a.modulus());
}

Fp pow(Fp base, std::uint64_t e) {
  Fp r = base.bound() ? Fp(1, base.modulus()) : Fp(1);
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

std::vector<Fp> batch_inverse(const std::vector<Fp>& xs) {
  std::vector<Fp> out(xs.size());
  if (xs.empty()) return out;
  std::vector<Fp> prefix(xs.size());
  Fp acc = xs[0];
  prefix[0] = acc;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    acc *= xs[i];
    prefix[i] = acc;
  }
  Fp running = inv(acc);
  for (std::size_t i = xs.size(); i-- > 1;) {
    out[i] = running * prefix[i - 1];
    running *= xs[i];
  }
  out[0] = running;
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint64_t q) : q_(q) {
  // products of two residues must fit in 64 bits
  require(q < (std::uint64_t{1} << 32), ErrorKind::InvalidParams,
          "field modulus must be below 2^32");
  require(is_prime(q), ErrorKind::InvalidParams,
          "field modulus " + std::to_string(q) + " is not prime");
}

Matrix PrimeField::zeros(Eigen::Index rows, Eigen::Index cols) const {
  return Matrix::Constant(rows, cols, zero());
}

Matrix PrimeField::identity(Eigen::Index n) const {
  Matrix m = zeros(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = one();
  return m;
}

// ---- polynomials ----

Polynomial::Polynomial(std::vector<Fp> coeffs) : c_(std::move(coeffs)) {
  trim();
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Fp Polynomial::operator[](std::size_t i) const {
  if (i < c_.size()) return c_[i];
  return c_.empty() ? Fp(0) : c_[0] * Fp(0);
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Fp> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<Fp> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Fp> c(a.c_.size() + b.c_.size() - 1, a.c_[0] * Fp(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(const Fp& s, const Polynomial& a) {
  std::vector<Fp> c(a.c_);
  for (auto& x : c) x *= s;
  return Polynomial(std::move(c));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.c_.size() == b.c_.size() &&
         std::equal(a.c_.begin(), a.c_.end(), b.c_.begin());
}

Fp poly_eval(const Polynomial& p, const Fp& x) {
  Fp acc = x * Fp(0);
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a,
                                              const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial(), a};
  std::vector<Fp> rem = a.coeffs();
  const auto& d = b.coeffs();
  Fp lead_inv = inv(d.back());
  std::size_t qn = rem.size() - d.size() + 1;
  std::vector<Fp> quo(qn, d.back() * Fp(0));
  for (std::size_t i = qn; i-- > 0;) {
    Fp t = rem[i + d.size() - 1] * lead_inv;
    quo[i] = t;
    for (std::size_t j = 0; j < d.size(); ++j) rem[i + j] -= t * d[j];
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial poly_from_roots(const std::vector<Fp>& roots) {
  if (roots.empty()) return Polynomial({Fp(1)});
  std::vector<Fp> c{roots[0] * Fp(0) + Fp(1)};
  for (const Fp& r : roots) {
    c.push_back(c.back() * Fp(0));
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] = -(r * c[0]);
  }
  return Polynomial(std::move(c));
}

Polynomial lagrange_interpolate(const std::vector<std::pair<Fp, Fp>>& points) {
  const std::size_t n = points.size();
  if (n == 0) return {};
  std::vector<Fp> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = points[i].first;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      require(xs[i] != xs[j], ErrorKind::InvalidInput,
              "duplicate interpolation abscissa");

  // master polynomial M(x) = prod (x - x_i); basis_i = M / (x - x_i)
  const std::vector<Fp> m = poly_from_roots(xs).coeffs();
  Fp zero = xs[0] * Fp(0);
  std::vector<Fp> denom(n);
  for (std::size_t i = 0; i < n; ++i) {
    Fp d = zero + Fp(1);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) d *= xs[i] - xs[j];
    denom[i] = d;
  }
  std::vector<Fp> dinv = batch_inverse(denom);

  std::vector<Fp> out(n, zero);
  std::vector<Fp> basis(n);
  for (std::size_t i = 0; i < n; ++i) {
    // synthetic division of M by (x - x_i)
    Fp carry = zero;
    for (std::size_t k = n; k-- > 0;) {
      carry = m[k + 1] + carry * xs[i];
      basis[k] = carry;
    }
    Fp w = points[i].second * dinv[i];
    for (std::size_t k = 0; k < n; ++k) out[k] += w * basis[k];
  }
  return Polynomial(std::move(out));
}

}  // namespace cdc
