#include "dhecke/cyclo.hpp"

#include <atomic>
#include <cctype>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "dhecke/error.hpp"

namespace dhecke {

namespace {

std::atomic<int> g_conductor_cap{1024};

// Integer polynomial helpers, lowest degree first.
std::vector<long long> poly_exact_div(std::vector<long long> num,
                                      const std::vector<long long>& den) {
  // den is monic.
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) return {0};
  std::vector<long long> quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const long long c = num[i];
    if (c == 0) continue;
    quot[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (std::size_t i = 0; i < dn; ++i) {
    if (num[i] != 0) throw InternalError("cyclotomic division left a remainder");
  }
  return quot;
}

const std::vector<long long>& phi_poly(int m) {
  thread_local std::unordered_map<int, std::vector<long long>> cache;
  if (auto it = cache.find(m); it != cache.end()) return it->second;
  std::vector<long long> p(static_cast<std::size_t>(m) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d == 0) p = poly_exact_div(std::move(p), phi_poly(d));
  }
  return cache.emplace(m, std::move(p)).first->second;
}

int phi_of(int m) { return static_cast<int>(phi_poly(m).size()) - 1; }

void reduce_mod_phi(std::vector<Rational>& p, int m) {
  const auto& phi = phi_poly(m);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = p.size(); i-- > deg;) {
    if (sgn(p[i]) == 0) continue;
    const Rational c = p[i];
    for (std::size_t j = 0; j < deg; ++j) {
      if (phi[j] != 0) p[i - deg + j] -= c * static_cast<long>(phi[j]);
    }
    p[i] = 0;
  }
  p.resize(deg);
}

Rational parse_rational(std::string_view s) {
  std::string str(s);
  if (str.empty()) throw InputError("empty rational literal");
  if (str.front() == '+') str.erase(0, 1);
  Rational q;
  if (q.set_str(str, 10) != 0) {
    throw InputError("malformed rational literal '" + std::string(s) + "'");
  }
  if (q.get_den() == 0) throw InputError("zero denominator in '" + std::string(s) + "'");
  q.canonicalize();
  return q;
}

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_mpz(const mpz_class& z) {
  const auto* raw = z.get_mpz_t();
  std::size_t h = static_cast<std::size_t>(raw->_mp_size);
  const int n = std::abs(raw->_mp_size);
  for (int i = 0; i < n; ++i) h = mix(h, static_cast<std::size_t>(raw->_mp_d[i]));
  return h;
}

}  // namespace

int euler_phi(int m) {
  if (m < 1) throw InputError("euler_phi: m must be positive");
  int result = m;
  int x = m;
  for (int p = 2; p * p <= x; ++p) {
    if (x % p != 0) continue;
    while (x % p == 0) x /= p;
    result -= result / p;
  }
  if (x > 1) result -= result / x;
  return result;
}

std::vector<long long> cyclotomic_polynomial(int m) {
  if (m < 1) throw InputError("cyclotomic_polynomial: m must be >= 1");
  return phi_poly(m);
}

int conductor_cap() { return g_conductor_cap.load(); }
void set_conductor_cap(int cap) { g_conductor_cap.store(cap); }

int lcm_conductor(int a, int b) {
  const long long l = std::lcm(static_cast<long long>(a), static_cast<long long>(b));
  if (l > conductor_cap()) {
    throw InputError("conductor lcm(" + std::to_string(a) + ", " + std::to_string(b) +
                     ") exceeds cap " + std::to_string(conductor_cap()));
  }
  return static_cast<int>(l);
}

CycNum::CycNum() : coeffs_(1) {}

CycNum::CycNum(long long value) : coeffs_{Rational(static_cast<long>(value))} {}

CycNum::CycNum(Rational value, int conductor) : conductor_(conductor) {
  if (conductor < 1) throw InputError("conductor must be positive");
  if (conductor > conductor_cap()) throw InputError("conductor exceeds cap");
  coeffs_.assign(static_cast<std::size_t>(phi_of(conductor)), Rational(0));
  value.canonicalize();
  coeffs_[0] = std::move(value);
}

CycNum CycNum::zeta(int m, long long k) {
  if (m < 1) throw InputError("zeta: conductor must be positive");
  if (m > conductor_cap()) throw InputError("zeta: conductor exceeds cap");
  long long r = k % m;
  if (r < 0) r += m;
  std::vector<Rational> p(static_cast<std::size_t>(r) + 1, Rational(0));
  p.back() = 1;
  return from_coeffs(m, std::move(p));
}

CycNum CycNum::from_coeffs(int m, std::vector<Rational> coeffs) {
  if (m < 1) throw InputError("from_coeffs: conductor must be positive");
  if (m > conductor_cap()) throw InputError("from_coeffs: conductor exceeds cap");
  CycNum out;
  out.conductor_ = m;
  out.coeffs_ = std::move(coeffs);
  const auto deg = static_cast<std::size_t>(phi_of(m));
  if (out.coeffs_.size() < deg) out.coeffs_.resize(deg, Rational(0));
  for (auto& c : out.coeffs_) c.canonicalize();
  out.reduce();
  return out;
}

void CycNum::reduce() { reduce_mod_phi(coeffs_, conductor_); }

bool CycNum::is_zero() const {
  for (const auto& c : coeffs_) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

bool CycNum::is_one() const {
  if (coeffs_[0] != 1) return false;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) return false;
  }
  return true;
}

bool CycNum::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) return false;
  }
  return true;
}

const Rational& CycNum::rational() const {
  if (!is_rational()) throw InternalError("CycNum::rational on irrational value");
  return coeffs_[0];
}

CycNum CycNum::coerce(int m) const {
  if (m == conductor_) return *this;
  if (m % conductor_ != 0) {
    throw InternalError("coerce: target conductor is not a multiple of the source");
  }
  if (m > conductor_cap()) throw InputError("coerce: conductor exceeds cap");
  const std::size_t step = static_cast<std::size_t>(m / conductor_);
  std::vector<Rational> p((coeffs_.size() - 1) * step + 1, Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) p[k * step] = coeffs_[k];
  CycNum out;
  out.conductor_ = m;
  out.coeffs_ = std::move(p);
  const auto deg = static_cast<std::size_t>(phi_of(m));
  if (out.coeffs_.size() < deg) out.coeffs_.resize(deg, Rational(0));
  out.reduce();
  return out;
}

void CycNum::unify_with(CycNum& other) {
  if (conductor_ == other.conductor_) return;
  const int m = lcm_conductor(conductor_, other.conductor_);
  if (conductor_ != m) *this = coerce(m);
  if (other.conductor_ != m) other = other.coerce(m);
}

CycNum& CycNum::operator+=(const CycNum& rhs) {
  if (conductor_ == rhs.conductor_) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
  }
  CycNum r = rhs;
  unify_with(r);
  return *this += r;
}

CycNum& CycNum::operator-=(const CycNum& rhs) {
  if (conductor_ == rhs.conductor_) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    return *this;
  }
  CycNum r = rhs;
  unify_with(r);
  return *this -= r;
}

CycNum& CycNum::operator*=(const CycNum& rhs) {
  if (conductor_ != rhs.conductor_) {
    CycNum r = rhs;
    unify_with(r);
    return *this *= r;
  }
  if (coeffs_.size() == 1) {
    coeffs_[0] *= rhs.coeffs_[0];
    return *this;
  }
  std::vector<Rational> prod(2 * coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      if (sgn(rhs.coeffs_[j]) == 0) continue;
      prod[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
  }
  coeffs_ = std::move(prod);
  reduce();
  return *this;
}

void CycNum::add_product(const CycNum& a, const CycNum& b) {
  if (conductor_ == a.conductor_ && conductor_ == b.conductor_ && coeffs_.size() == 1) {
    coeffs_[0] += a.coeffs_[0] * b.coeffs_[0];
    return;
  }
  *this += a * b;
}

CycNum CycNum::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(zeta_m)");
  const std::size_t d = coeffs_.size();
  if (d == 1) {
    CycNum out = *this;
    out.coeffs_[0] = 1 / coeffs_[0];
    return out;
  }
  // Solve (multiplication-by-this) x = 1 over Q.
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d + 1, Rational(0)));
  for (std::size_t j = 0; j < d; ++j) {
    const CycNum col = *this * zeta(conductor_, static_cast<long long>(j));
    for (std::size_t i = 0; i < d; ++i) a[i][j] = col.coeffs_[i];
  }
  a[0][d] = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && sgn(a[piv][c]) == 0) ++piv;
    if (piv == d) throw InternalError("singular multiplication matrix for nonzero element");
    std::swap(a[piv], a[c]);
    const Rational inv = 1 / a[c][c];
    for (std::size_t k = c; k <= d; ++k) a[c][k] *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || sgn(a[r][c]) == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t k = c; k <= d; ++k) a[r][k] -= f * a[c][k];
    }
  }
  CycNum out;
  out.conductor_ = conductor_;
  out.coeffs_.resize(d);
  for (std::size_t i = 0; i < d; ++i) out.coeffs_[i] = a[i][d];
  return out;
}

CycNum& CycNum::operator/=(const CycNum& rhs) { return *this *= rhs.inverse(); }

CycNum CycNum::operator-() const {
  CycNum out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
  CycNum x = a;
  CycNum y = b;
  x.unify_with(y);
  return x.coeffs_ == y.coeffs_;
}

std::size_t CycNum::hash() const {
  std::size_t h = static_cast<std::size_t>(conductor_);
  for (const auto& c : coeffs_) {
    h = mix(h, hash_mpz(c.get_num()));
    h = mix(h, hash_mpz(c.get_den()));
  }
  return h;
}

std::string CycNum::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& c = coeffs_[k];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << '*';
    os << 'z' << conductor_;
    if (k > 1) os << '^' << k;
  }
  if (first) os << '0';
  return os.str();
}

std::vector<std::string> CycNum::to_coeff_strings() const {
  std::vector<std::string> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.get_str());
  return out;
}

std::ostream& operator<<(std::ostream& os, const CycNum& x) { return os << x.to_string(); }

namespace {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view text) : text_(text) {}

  CycNum parse() {
    CycNum v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("scalar '" + std::string(text_) + "': " + what + " at offset " +
                     std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  long long integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    if (pos_ - start > 9) fail("integer too large");
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }

  CycNum expr() {
    CycNum acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  CycNum term() {
    const bool negate = accept('-');
    CycNum acc = factor();
    while (accept('*')) acc *= factor();
    return negate ? -acc : acc;
  }

  CycNum factor() {
    skip_ws();
    if (accept('(')) {
      CycNum v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (pos_ < text_.size() && text_[pos_] == 'z') {
      ++pos_;
      const long long m = integer();
      if (m < 1) fail("conductor must be positive");
      long long k = 1;
      if (accept('^')) k = integer();
      return CycNum::zeta(static_cast<int>(m), k);
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected number, 'zM' or '('");
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      const std::size_t den_start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (den_start == pos_) fail("expected denominator");
    }
    return CycNum(parse_rational(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

CycNum parse_scalar(std::string_view text, int conductor) {
  CycNum v = ScalarParser(text).parse();
  const int m = lcm_conductor(v.conductor(), conductor);
  return v.coerce(m);
}

CycNum cyc_from_strings(int m, std::span<const std::string> coeffs) {
  std::vector<Rational> q;
  q.reserve(coeffs.size());
  for (const auto& s : coeffs) q.push_back(parse_rational(s));
  if (q.empty()) q.emplace_back(0);
  return CycNum::from_coeffs(m, std::move(q));
}

}  // namespace dhecke
