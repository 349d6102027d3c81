#include "koszul/scalar.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace koszul {

namespace detail {

struct Cyclotomic {
  int m = 1;
  int phi = 1;
  std::vector<long> poly;  // monic, degree phi
  // fold[k - phi] = zeta^k reduced, for phi <= k <= 2 phi - 2
  std::vector<std::vector<mpq_class>> fold;
};

namespace {

std::vector<long> poly_divide_exact(std::vector<long> num, const std::vector<long>& den) {
  // both lowest-degree first; den monic
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) return {0};
  std::vector<long> q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    long c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

const Cyclotomic* lookup(int m) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Cyclotomic>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second.get();
  auto f = std::make_unique<Cyclotomic>();
  f->m = m;
  f->poly = cyclotomic_polynomial(m);
  f->phi = static_cast<int>(f->poly.size()) - 1;
  const int phi = f->phi;
  // zeta^phi = -sum_{i<phi} poly[i] zeta^i
  std::vector<mpq_class> cur(phi);
  for (int i = 0; i < phi; ++i) cur[i] = -f->poly[i];
  for (int k = phi; k <= 2 * phi - 2; ++k) {
    f->fold.push_back(cur);
    // multiply by zeta
    std::vector<mpq_class> next(phi);
    mpq_class top = cur[phi - 1];
    for (int i = phi - 1; i > 0; --i) next[i] = cur[i - 1];
    next[0] = 0;
    for (int i = 0; i < phi; ++i) next[i] -= top * f->poly[i];
    cur = std::move(next);
  }
  const Cyclotomic* out = f.get();
  cache.emplace(m, std::move(f));
  return out;
}

}  // namespace
}  // namespace detail

int euler_phi(int m) {
  if (m < 1) throw ScalarError("conductor must be positive");
  int result = m;
  int n = m;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<long> cyclotomic_polynomial(int m) {
  if (m < 1) throw ScalarError("conductor must be positive");
  // x^m - 1 divided by Phi_d for every proper divisor d
  std::vector<long> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    num = detail::poly_divide_exact(num, cyclotomic_polynomial(d));
  }
  return num;
}

namespace {

const detail::Cyclotomic* field_for(int conductor) {
  if (conductor < 1) throw ScalarError("conductor must be positive");
  if (conductor <= 2) return nullptr;
  return detail::lookup(conductor);
}

}  // namespace

Scalar::Scalar(long num, long den) : coeffs_(1) {
  if (den == 0) throw ScalarError("zero denominator");
  coeffs_[0] = mpq_class(num, den);
  coeffs_[0].canonicalize();
}

Scalar Scalar::zeta(int conductor) {
  if (conductor == 1) return Scalar(1);
  if (conductor == 2) return Scalar(-1);
  Scalar s;
  s.field_ = field_for(conductor);
  s.coeffs_.assign(s.field_->phi, mpq_class(0));
  if (s.field_->phi == 1) {
    s.coeffs_[0] = -s.field_->poly[0];
  } else {
    s.coeffs_[1] = 1;
  }
  return s;
}

Scalar Scalar::rational(mpq_class v, int conductor) {
  Scalar s(std::move(v));
  s.promote_to(field_for(conductor));
  return s;
}

Scalar Scalar::from_coeffs(std::vector<mpq_class> coeffs, int conductor) {
  Scalar result = Scalar::rational(0, conductor);
  Scalar z = Scalar::zeta(conductor);
  Scalar power = Scalar::rational(1, conductor);
  for (auto& c : coeffs) {
    c.canonicalize();
    result.add_mul(Scalar(c), power);
    power *= z;
  }
  return result;
}

int Scalar::conductor() const { return field_ ? field_->m : 1; }

bool Scalar::is_zero() const {
  for (const auto& c : coeffs_)
    if (sgn(c) != 0) return false;
  return true;
}

bool Scalar::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (sgn(coeffs_[i]) != 0) return false;
  return true;
}

bool Scalar::is_one() const { return is_rational() && coeffs_[0] == 1; }

void Scalar::promote_to(const detail::Cyclotomic* field) {
  if (field == field_) return;
  if (field_ != nullptr) throw ScalarError("mixed conductors " + std::to_string(field_->m) + " and " +
                                           std::to_string(field ? field->m : 1));
  field_ = field;
  if (field_) coeffs_.resize(field_->phi, mpq_class(0));
}

void Scalar::unify(const Scalar& o) {
  if (o.field_ == field_ || o.field_ == nullptr) return;
  promote_to(o.field_);
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  unify(o);
  if (o.field_ == nullptr) {
    coeffs_[0] += o.coeffs_[0];
  } else {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  unify(o);
  if (o.field_ == nullptr) {
    coeffs_[0] -= o.coeffs_[0];
  } else {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  }
  return *this;
}

namespace {

// Product of two reduced polynomials modulo Phi_m.
void field_multiply(const detail::Cyclotomic& f, std::span<const mpq_class> a, std::span<const mpq_class> b,
                    std::span<mpq_class> out) {
  const int phi = f.phi;
  std::vector<mpq_class> conv(2 * phi - 1);
  mpq_class t;
  for (int i = 0; i < phi; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (int j = 0; j < phi; ++j) {
      if (sgn(b[j]) == 0) continue;
      mpq_mul(t.get_mpq_t(), a[i].get_mpq_t(), b[j].get_mpq_t());
      conv[i + j] += t;
    }
  }
  for (int k = 2 * phi - 2; k >= phi; --k) {
    if (sgn(conv[k]) == 0) continue;
    const auto& row = f.fold[k - phi];
    for (int i = 0; i < phi; ++i) {
      if (sgn(row[i]) == 0) continue;
      conv[i] += conv[k] * row[i];
    }
  }
  for (int i = 0; i < phi; ++i) out[i] = conv[i];
}

}  // namespace

Scalar& Scalar::operator*=(const Scalar& o) {
  if (field_ == nullptr && o.field_ == nullptr) {
    coeffs_[0] *= o.coeffs_[0];
    return *this;
  }
  if (o.field_ == nullptr || o.is_rational()) {
    unify(o);
    mpq_class c = o.coeffs_[0];
    for (auto& x : coeffs_) x *= c;
    return *this;
  }
  if (field_ == nullptr || is_rational()) {
    if (field_ != nullptr) unify(o);
    mpq_class c = coeffs_[0];
    Coeffs r(o.coeffs_.begin(), o.coeffs_.end());
    for (auto& x : r) x *= c;
    field_ = o.field_;
    coeffs_ = std::move(r);
    return *this;
  }
  unify(o);
  Coeffs r(coeffs_.size());
  field_multiply(*field_, coeffs(), o.coeffs(), {r.data(), r.size()});
  coeffs_ = std::move(r);
  return *this;
}

void Scalar::sub_mul(const Scalar& a, const Scalar& b) {
  if (field_ == nullptr && a.field_ == nullptr && b.field_ == nullptr) {
    mpq_class t;
    mpq_mul(t.get_mpq_t(), a.coeffs_[0].get_mpq_t(), b.coeffs_[0].get_mpq_t());
    coeffs_[0] -= t;
    return;
  }
  *this -= a * b;
}

void Scalar::add_mul(const Scalar& a, const Scalar& b) {
  if (field_ == nullptr && a.field_ == nullptr && b.field_ == nullptr) {
    mpq_class t;
    mpq_mul(t.get_mpq_t(), a.coeffs_[0].get_mpq_t(), b.coeffs_[0].get_mpq_t());
    coeffs_[0] += t;
    return;
  }
  *this += a * b;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw ScalarError("division by zero");
  if (is_rational()) {
    Scalar r = *this;
    r.coeffs_[0] = 1 / coeffs_[0];
    r.coeffs_[0].canonicalize();
    return r;
  }
  // Solve (multiplication by this) x = 1 by Gaussian elimination in the power basis.
  const int phi = field_->phi;
  std::vector<std::vector<mpq_class>> mat(phi, std::vector<mpq_class>(phi + 1));
  std::vector<mpq_class> basis(phi), col(phi);
  for (int j = 0; j < phi; ++j) {
    std::fill(basis.begin(), basis.end(), mpq_class(0));
    basis[j] = 1;
    field_multiply(*field_, coeffs(), basis, col);
    for (int i = 0; i < phi; ++i) mat[i][j] = col[i];
  }
  mat[0][phi] = 1;
  for (int c = 0; c < phi; ++c) {
    int piv = c;
    while (sgn(mat[piv][c]) == 0) ++piv;
    std::swap(mat[piv], mat[c]);
    mpq_class inv = 1 / mat[c][c];
    for (auto& x : mat[c]) x *= inv;
    for (int r = 0; r < phi; ++r) {
      if (r == c || sgn(mat[r][c]) == 0) continue;
      mpq_class f = mat[r][c];
      for (int k = c; k <= phi; ++k) mat[r][k] -= f * mat[c][k];
    }
  }
  Scalar r = *this;
  for (int i = 0; i < phi; ++i) r.coeffs_[i] = mat[i][phi];
  return r;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar result = Scalar::rational(1, conductor());
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ == b.field_) {
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      if (a.coeffs_[i] != b.coeffs_[i]) return false;
    return true;
  }
  if (a.field_ != nullptr && b.field_ != nullptr) return false;
  const Scalar& wide = a.field_ ? a : b;
  const Scalar& narrow = a.field_ ? b : a;
  return wide.is_rational() && wide.coeffs_[0] == narrow.coeffs_[0];
}

std::string Scalar::to_string() const {
  if (field_ == nullptr || is_rational()) return coeffs_[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const mpq_class& c = coeffs_[k];
    if (sgn(c) == 0) continue;
    mpq_class mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "zeta";
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

namespace {

class LiteralParser {
 public:
  LiteralParser(std::string_view s, int m) : s_(s), m_(m) {}

  Scalar parse() {
    skip();
    if (pos_ == s_.size()) fail("empty literal");
    Scalar acc = Scalar::rational(0, m_);
    bool first = true;
    while (true) {
      skip();
      if (pos_ == s_.size()) break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      Scalar t = term();
      if (sign < 0) t = -t;
      acc += t;
      first = false;
    }
    return acc;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw ScalarError("bad scalar literal '" + std::string(s_) + "': " + why);
  }

  Scalar term() {
    Scalar t = factor();
    while (true) {
      skip();
      if (peek() != '*') break;
      ++pos_;
      t *= factor();
    }
    return t;
  }

  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  Scalar factor() {
    skip();
    if (s_.substr(pos_, 4) == "zeta") {
      pos_ += 4;
      long e = 1;
      skip();
      if (peek() == '^') {
        ++pos_;
        e = std::stol(digits());
      }
      return Scalar::zeta(m_).pow(e);
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected number or zeta");
    mpz_class num(digits());
    mpz_class den = 1;
    skip();
    if (peek() == '/') {
      ++pos_;
      den = mpz_class(digits());
      if (den == 0) fail("zero denominator");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar::rational(q, m_);
  }

  std::string_view s_;
  int m_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar Scalar::parse(std::string_view text, int conductor) {
  field_for(conductor);
  return LiteralParser(text, conductor).parse();
}

}  // namespace koszul
