#include "fr/gf.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace fr {

namespace {

// Polynomials over GF(p) encoded as coefficient vectors, low degree first.
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& mod,
                          int p) {
  int dm = static_cast<int>(mod.size()) - 1;
  for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
    int c = a[i];
    if (c == 0) continue;
    for (int j = 0; j <= dm; ++j) {
      int k = i - dm + j;
      a[k] = ((a[k] - c * mod[j]) % p + p) % p;
    }
  }
  a.resize(dm);
  return a;
}

std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b,
                          int p) {
  std::vector<int> out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  return out;
}

std::vector<int> decode_poly(int a, int p, int m) {
  std::vector<int> out(m, 0);
  for (int i = 0; i < m; ++i) {
    out[i] = a % p;
    a /= p;
  }
  return out;
}

int encode_poly(const std::vector<int>& c, int p) {
  int v = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * p + c[i];
  return v;
}

bool poly_is_zero(const std::vector<int>& a) {
  return std::all_of(a.begin(), a.end(), [](int c) { return c == 0; });
}

// Trial division by every monic polynomial of degree 1..m/2. Fine for the
// small degrees used here.
bool irreducible(const std::vector<int>& f, int p) {
  int m = static_cast<int>(f.size()) - 1;
  for (int d = 1; 2 * d <= m; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int low = 0; low < count; ++low) {
      std::vector<int> g = decode_poly(low, p, d);
      g.push_back(1);  // monic
      if (poly_is_zero(poly_mod(f, g, p))) return false;
    }
  }
  return true;
}

std::vector<int> smallest_irreducible(int p, int m) {
  if (m == 1) return {0, 1};  // x itself; never used as a modulus divisor
  int count = 1;
  for (int i = 0; i < m; ++i) count *= p;
  for (int low = 0; low < count; ++low) {
    std::vector<int> f = decode_poly(low, p, m);
    f.push_back(1);
    if (irreducible(f, p)) return f;
  }
  raise(errc::property_violation, "no irreducible polynomial found");
}

std::vector<long long> prime_factors(long long n) {
  std::vector<long long> out;
  for (long long f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(int n) {
  if (n < 2) return false;
  for (int f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

bool prime_power(int n, int& p, int& m) {
  if (n < 2) return false;
  for (int f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      p = f;
      m = 0;
      while (n % f == 0) {
        n /= f;
        ++m;
      }
      return n == 1;
    }
  }
  p = n;
  m = 1;
  return true;
}

FiniteField::FiniteField(int p, int m) : p_(p), m_(m) {
  if (!is_prime(p)) raise(errc::not_prime, std::to_string(p) + " is not prime");
  if (m < 1) raise(errc::precondition_failed, "extension degree must be >= 1");
  modulus_ = m == 1 ? std::vector<int>{0, 1} : smallest_irreducible(p, m);
  init();
}

FiniteField::FiniteField(int p, int m, const std::vector<int>& modulus)
    : p_(p), m_(m), modulus_(modulus) {
  if (!is_prime(p)) raise(errc::not_prime, std::to_string(p) + " is not prime");
  if (static_cast<int>(modulus.size()) != m + 1 || modulus[m] != 1)
    raise(errc::precondition_failed, "modulus must be monic of degree m");
  if (m > 1 && !irreducible(modulus, p))
    raise(errc::precondition_failed, "modulus is reducible");
  init();
}

void FiniteField::init() {
  q_ = 1;
  for (int i = 0; i < m_; ++i) {
    if (q_ > 4096 / p_) raise(errc::precondition_failed, "field too large");
    q_ *= p_;
  }
  addtab_.assign(static_cast<size_t>(q_) * q_, 0);
  for (int a = 0; a < q_; ++a)
    for (int b = 0; b < q_; ++b) {
      int v = 0, pw = 1, x = a, y = b;
      for (int i = 0; i < m_; ++i) {
        v += ((x % p_ + y % p_) % p_) * pw;
        x /= p_;
        y /= p_;
        pw *= p_;
      }
      addtab_[static_cast<size_t>(a) * q_ + b] = static_cast<uint16_t>(v);
    }
  // smallest generator of the multiplicative group
  auto factors = prime_factors(q_ - 1);
  eta_ = 0;
  for (int g = 2; g < q_; ++g) {
    bool ok = true;
    for (long long f : factors) {
      // pow via mul_slow since exp tables are not built yet
      long long e = (q_ - 1) / f;
      int r = 1, base = g;
      while (e > 0) {
        if (e & 1) r = mul_slow(r, base);
        base = mul_slow(base, base);
        e >>= 1;
      }
      if (r == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      eta_ = g;
      break;
    }
  }
  if (eta_ == 0 && q_ == 2) eta_ = 1;
  if (eta_ == 0) raise(errc::property_violation, "no primitive element");
  exp_.assign(q_ - 1, 0);
  log_.assign(q_, 0);
  int v = 1;
  for (int i = 0; i < q_ - 1; ++i) {
    exp_[i] = v;
    log_[v] = i;
    v = mul_slow(v, eta_);
  }
}

int FiniteField::mul_slow(int a, int b) const {
  if (a == 0 || b == 0) return 0;
  auto pa = decode_poly(a, p_, m_);
  auto pb = decode_poly(b, p_, m_);
  return encode_poly(poly_mod(poly_mul(pa, pb, p_), modulus_, p_), p_);
}

int FiniteField::add(int a, int b) const {
  return addtab_[static_cast<size_t>(a) * q_ + b];
}

int FiniteField::neg(int a) const {
  int v = 0, pw = 1;
  for (int i = 0; i < m_; ++i) {
    v += ((p_ - a % p_) % p_) * pw;
    a /= p_;
    pw *= p_;
  }
  return v;
}

int FiniteField::sub(int a, int b) const { return add(a, neg(b)); }

int FiniteField::mul(int a, int b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

int FiniteField::inv(int a) const {
  if (a == 0) raise(errc::precondition_failed, "inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

int FiniteField::pow(int a, long long e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  long long le = log_[a] % (q_ - 1) * (e % (q_ - 1)) % (q_ - 1);
  le = ((le % (q_ - 1)) + (q_ - 1)) % (q_ - 1);
  return exp_[le];
}

int FiniteField::digit(int a, int i) const {
  for (int k = 0; k < i; ++k) a /= p_;
  return a % p_;
}

FiniteField gf(int p, int m) { return FiniteField(p, m); }

const FiniteField& gf256() {
  // x^8 + x^4 + x^3 + x + 1
  static const FiniteField f(2, 8, {1, 1, 0, 1, 1, 0, 0, 0, 1});
  return f;
}

long long gaussian_coefficient(int m, int delta, long long q) {
  if (delta < 0 || delta > m)
    raise(errc::precondition_failed, "need 0 <= delta <= m");
  if (delta == 0) return 1;
  // product of (q^(m-i) - 1) / (q^(delta-i) - 1) for i = 0..delta-1,
  // accumulated as a reduced fraction since partial quotients need not
  // be integers
  long long num = 1, den = 1;
  for (int i = 0; i < delta; ++i) {
    long long top = 1, bot = 1;
    for (int k = 0; k < m - i; ++k) top *= q;
    for (int k = 0; k < delta - i; ++k) bot *= q;
    num *= top - 1;
    den *= bot - 1;
    long long g = std::gcd(num, den);
    num /= g;
    den /= g;
  }
  if (den != 1)
    raise(errc::property_violation, "gaussian coefficient not integral");
  return num;
}

}  // namespace fr
