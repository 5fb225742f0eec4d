#include "orbdiam/field.hpp"

#include <algorithm>
#include <sstream>

namespace orbdiam {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients mod p, lowest first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  // m is monic
  while (a.size() > dm) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - lead) * static_cast<std::uint64_t>(m[i])) % p);
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  return poly_mod(std::move(r), m, p);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a, k = p - 2;
  while (k) {
    if (k & 1) r = r * b % p;
    b = b * b % p;
    k >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // make b monic then reduce a mod b
    const std::uint32_t li = inv_mod(b.back(), p);
    for (auto& c : b) c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * li % p);
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

// Ben-Or: f of degree e is irreducible iff gcd(f, x^(p^i) - x) = 1 for i <= e/2.
bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t e = f.size() - 1;
  if (e == 1) return true;
  Poly x = {0, 1};
  Poly xp = x;  // x^(p^i) mod f
  for (std::size_t i = 1; i <= e / 2; ++i) {
    // xp = xp^p
    Poly r = {1};
    Poly base = xp;
    std::uint32_t k = p;
    while (k) {
      if (k & 1) r = poly_mulmod(r, base, f, p);
      base = poly_mulmod(base, base, f, p);
      k >>= 1;
    }
    xp = r;
    Poly d = xp;
    d.resize(std::max<std::size_t>(d.size(), 2), 0);
    d[1] = (d[1] + p - 1) % p;
    trim(d);
    Poly g = poly_gcd(f, d, p);
    if (g.size() != 1) return false;
  }
  return true;
}

Poly decode(std::uint32_t v, std::uint32_t p, std::uint32_t e) {
  Poly c(e, 0);
  for (std::uint32_t i = 0; i < e; ++i) {
    c[i] = v % p;
    v /= p;
  }
  return c;
}

std::uint32_t encode(const Poly& c, std::uint32_t p) {
  std::uint32_t v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
  return v;
}

}  // namespace

std::uint32_t Field::poly_mul_mod(const Tables& t, std::uint32_t a, std::uint32_t b) {
  Poly r = poly_mulmod(decode(a, t.p, t.e), decode(b, t.p, t.e), t.modulus, t.p);
  r.resize(t.e, 0);
  return encode(r, t.p);
}

Field Field::make(std::uint32_t p, std::uint32_t e) {
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (e < 1 || e > 16) throw FieldError("extension degree must lie in [1, 16]");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxOrder) throw FieldError("field order exceeds 2^20");
  }
  auto t = std::make_shared<Tables>();
  t->p = p;
  t->e = e;
  t->q = static_cast<std::uint32_t>(q);

  if (e == 1) {
    t->modulus = {0, 1};
  } else {
    for (std::uint32_t low = 0; low < t->q; ++low) {
      Poly f = decode(low, p, e);
      f.push_back(1);
      if (f[0] == 0) continue;
      if (is_irreducible(f, p)) {
        t->modulus = f;
        break;
      }
    }
  }

  const std::uint32_t qq = t->q;
  t->neg.resize(qq);
  for (std::uint32_t a = 0; a < qq; ++a) {
    Poly c = decode(a, p, e);
    for (auto& x : c) x = (p - x) % p;
    t->neg[a] = encode(c, p);
  }

  // primitive element: least generator of the multiplicative group
  t->exp.assign(qq - 1 == 0 ? 1 : qq - 1, 0);
  t->log.assign(qq, 0);
  for (std::uint32_t g = 1; g < qq; ++g) {
    std::uint32_t x = 1;
    std::uint32_t ord = 0;
    std::vector<std::uint32_t> powers;
    powers.reserve(qq - 1);
    do {
      powers.push_back(x);
      x = (e == 1) ? static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * g % p) : poly_mul_mod(*t, x, g);
      ++ord;
    } while (x != 1 && ord < qq);
    if (ord == qq - 1) {
      t->primitive = g;
      for (std::uint32_t i = 0; i < ord; ++i) {
        t->exp[i] = powers[i];
        t->log[powers[i]] = i;
      }
      break;
    }
  }

  if (p != 2 && e > 1 && qq <= 1024) {
    t->add_table.resize(static_cast<std::size_t>(qq) * qq);
    for (std::uint32_t a = 0; a < qq; ++a)
      for (std::uint32_t b = 0; b < qq; ++b) {
        Poly ca = decode(a, p, e), cb = decode(b, p, e);
        for (std::uint32_t i = 0; i < e; ++i) ca[i] = (ca[i] + cb[i]) % p;
        t->add_table[static_cast<std::size_t>(a) * qq + b] = encode(ca, p);
      }
  }

  Field F;
  F.t_ = t;
  // frobenius table a -> a^p
  auto frob = std::vector<std::uint32_t>(qq);
  for (std::uint32_t a = 0; a < qq; ++a) {
    Elem base{a};
    Elem acc = F.one();
    std::uint32_t k = p;
    while (k) {
      if (k & 1) acc = F.mul(acc, base);
      base = F.mul(base, base);
      k >>= 1;
    }
    frob[a] = acc.value;
  }
  t->frob = std::move(frob);
  return F;
}

Field Field::of_order(std::uint64_t q) {
  if (q < 2) throw FieldError("field order must be at least 2");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t e = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  if (r != 1) throw FieldError(std::to_string(q) + " is not a prime power");
  return make(static_cast<std::uint32_t>(p), e);
}

Elem Field::from_int(std::int64_t v) const {
  const std::int64_t p = t_->p;
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return Elem{static_cast<std::uint32_t>(r)};
}

Elem Field::from_coeffs(const std::vector<std::uint32_t>& c) const {
  if (c.size() > t_->e) throw FieldError("too many coefficients");
  Poly cc(c.begin(), c.end());
  for (auto& x : cc) x %= t_->p;
  return Elem{encode(cc, t_->p)};
}

std::vector<std::uint32_t> Field::coeffs(Elem a) const { return decode(a.value, t_->p, t_->e); }

Elem Field::add_digits(Elem a, Elem b) const {
  std::uint32_t x = a.value, y = b.value, r = 0, mult = 1;
  const std::uint32_t p = t_->p;
  for (std::uint32_t i = 0; i < t_->e; ++i) {
    r += ((x % p + y % p) % p) * mult;
    x /= p;
    y /= p;
    mult *= p;
  }
  return Elem{r};
}

Elem Field::add(Elem a, Elem b) const {
  const Tables& t = *t_;
  if (t.p == 2) return Elem{a.value ^ b.value};
  if (t.e == 1) {
    std::uint32_t s = a.value + b.value;
    return Elem{s >= t.p ? s - t.p : s};
  }
  if (!t.add_table.empty()) return Elem{t.add_table[static_cast<std::size_t>(a.value) * t.q + b.value]};
  return add_digits(a, b);
}

Elem Field::inv(Elem a) const {
  if (a.value == 0) throw FieldError("inverse of zero");
  const std::uint32_t l = t_->log[a.value];
  return Elem{t_->exp[l == 0 ? 0 : t_->q - 1 - l]};
}

Elem Field::pow(Elem a, std::uint64_t k) const {
  if (k == 0) return one();
  if (a.value == 0) return zero();
  const std::uint64_t l = (static_cast<std::uint64_t>(t_->log[a.value]) * (k % (t_->q - 1))) % (t_->q - 1);
  return Elem{t_->exp[l]};
}

Elem Field::frobenius(Elem a, std::uint32_t k) const {
  k %= t_->e;
  for (std::uint32_t i = 0; i < k; ++i) a = Elem{t_->frob[a.value]};
  return a;
}

std::uint32_t Field::log(Elem a) const {
  if (a.value == 0) throw FieldError("log of zero");
  return t_->log[a.value];
}

bool Field::is_square(Elem a) const {
  if (a.value == 0 || t_->p == 2) return true;
  return t_->log[a.value] % 2 == 0;
}

std::optional<Elem> Field::nonsquare() const {
  if (t_->p == 2) return std::nullopt;
  for (std::uint32_t a = 1; a < t_->q; ++a)
    if (!is_square(Elem{a})) return Elem{a};
  return std::nullopt;
}

std::optional<Elem> Field::sqrt(Elem a) const {
  if (a.value == 0) return zero();
  if (t_->p == 2) {
    // squaring is an automorphism of order e on the exponent
    const std::uint32_t l = t_->log[a.value];
    const std::uint32_t m = t_->q - 1;  // odd
    return Elem{t_->exp[(static_cast<std::uint64_t>(l) * ((m + 1) / 2)) % m]};
  }
  if (!is_square(a)) return std::nullopt;
  return Elem{t_->exp[t_->log[a.value] / 2]};
}

std::string Field::name() const {
  std::ostringstream os;
  os << "GF(" << t_->q << ")";
  return os.str();
}

Elem conjugate(const Field& big, Elem a) {
  if (big.degree() % 2 != 0) throw FieldError(big.name() + " is not a quadratic extension");
  return big.frobenius(a, big.degree() / 2);
}

ConjTraceNorm conjugate_trace_norm(const Field& big, Elem a, const Field& sub) {
  if (big.characteristic() != sub.characteristic() || big.degree() != 2 * sub.degree())
    throw FieldError(big.name() + " is not a quadratic extension of " + sub.name());
  const Elem c = conjugate(big, a);
  return {c, big.add(a, c), big.mul(a, c)};
}

Elem special_param(const Field& F, SpecialParam kind) {
  const std::uint32_t q = F.order();
  switch (kind) {
    case SpecialParam::zeta: {
      for (std::uint32_t z = 0; z < q; ++z) {
        bool has_root = false;
        for (std::uint32_t t = 0; t < q && !has_root; ++t) {
          const Elem te{t};
          if (F.add(F.add(F.mul(te, te), te), Elem{z}) == F.zero()) has_root = true;
        }
        if (!has_root) return Elem{z};
      }
      break;
    }
    case SpecialParam::chi: {
      if (F.degree() % 2 != 0) throw FieldError("chi requires a quadratic extension field");
      for (std::uint32_t c = 0; c < q; ++c)
        if (F.add(Elem{c}, conjugate(F, Elem{c})) == F.one()) return Elem{c};
      break;
    }
    case SpecialParam::sqrt_minus_one: {
      if (q % 4 != 1) throw FieldError("sqrt(-1) requested but q is not 1 mod 4");
      const Elem m1 = F.neg(F.one());
      for (std::uint32_t s = 0; s < q; ++s)
        if (F.mul(Elem{s}, Elem{s}) == m1) return Elem{s};
      break;
    }
  }
  throw FieldError("special parameter not found in " + F.name());
}

}  // namespace orbdiam
