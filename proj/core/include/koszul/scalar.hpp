#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_m).
//
// An element is a polynomial in zeta_m of degree < phi(m) with rational
// coefficients, reduced modulo the m-th cyclotomic polynomial. The
// representation is unique, so equality is coefficient-wise.

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace koszul {

class ScalarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
struct Cyclotomic;
}

/// Element of Q(zeta_m). Conductor 1 is plain Q.
///
/// Mixed arithmetic between conductor 1 and conductor m promotes to m.
/// Mixing two different conductors > 1 throws ScalarError.
class Scalar {
 public:
  Scalar() : coeffs_(1) {}
  Scalar(long v) : coeffs_(1, mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(mpq_class v) : coeffs_(1, std::move(v)) { coeffs_[0].canonicalize(); }
  Scalar(long num, long den);

  /// The generator zeta_m.
  static Scalar zeta(int conductor);
  /// Rational constant embedded in Q(zeta_m).
  static Scalar rational(mpq_class v, int conductor);
  /// From power-basis coefficients (length need not be phi(m); reduced).
  static Scalar from_coeffs(std::vector<mpq_class> coeffs, int conductor);

  int conductor() const;
  std::span<const mpq_class> coeffs() const { return {coeffs_.data(), coeffs_.size()}; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  /// Only valid when is_rational().
  const mpq_class& rational_value() const { return coeffs_[0]; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  /// this -= a * b, without allocating a temporary in the rational case.
  void sub_mul(const Scalar& a, const Scalar& b);
  void add_mul(const Scalar& a, const Scalar& b);

  Scalar inverse() const;
  Scalar pow(long e) const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Canonical text form, e.g. "3/2", "zeta^2 - 1/3", "-zeta + 1".
  std::string to_string() const;
  /// Parses literals like "3/2", "zeta^2 - 1/3", "2*zeta + 1" in Q(zeta_m).
  static Scalar parse(std::string_view text, int conductor);

 private:
  using Coeffs = boost::container::small_vector<mpq_class, 1>;

  void promote_to(const detail::Cyclotomic* field);
  void unify(const Scalar& o);

  const detail::Cyclotomic* field_ = nullptr;  // nullptr means Q
  Coeffs coeffs_;
};

/// Euler totient.
int euler_phi(int m);
/// Integer coefficients of the m-th cyclotomic polynomial, lowest degree first.
std::vector<long> cyclotomic_polynomial(int m);

}  // namespace koszul
