#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbdiam {

/// Raised for invalid parameters (non-prime characteristic, zero divisor, ...).
class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Element of GF(p^e) stored as the integer sum(coeffs[i] * p^i) in [0, q).
/// This integer is also the serialized form used by every file format.
struct Elem {
  std::uint32_t value = 0;

  constexpr Elem() = default;
  constexpr explicit Elem(std::uint32_t v) : value(v) {}

  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

/// GF(p^e) with a deterministic modulus: the monic irreducible of degree e
/// whose lower coefficients, read as a base-p integer, are smallest.
///
/// Copies share the lookup tables, so passing a Field by value is cheap.
class Field {
 public:
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 20;

  Field() = default;

  /// Throws FieldError when p is not prime, e is outside [1, 16] or p^e > 2^20.
  static Field make(std::uint32_t p, std::uint32_t e);
  /// Factors q as p^e and calls make().
  static Field of_order(std::uint64_t q);

  std::uint32_t characteristic() const { return t_->p; }
  std::uint32_t degree() const { return t_->e; }
  std::uint32_t order() const { return t_->q; }
  bool valid() const { return t_ != nullptr; }
  /// Coefficients of the modulus, lowest degree first, length e + 1.
  const std::vector<std::uint32_t>& modulus() const { return t_->modulus; }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  /// Image of an integer under Z -> GF(p).
  Elem from_int(std::int64_t v) const;
  Elem from_coeffs(const std::vector<std::uint32_t>& c) const;
  std::vector<std::uint32_t> coeffs(Elem a) const;
  /// Fixed primitive element (least integer encoding generating F*).
  Elem primitive() const { return Elem{t_->primitive}; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const { return Elem{t_->neg[a.value]}; }
  Elem mul(Elem a, Elem b) const {
    if (a.value == 0 || b.value == 0) return Elem{0};
    std::uint32_t s = t_->log[a.value] + t_->log[b.value];
    if (s >= t_->q - 1) s -= t_->q - 1;
    return Elem{t_->exp[s]};
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const;
  /// a^(p^k).
  Elem frobenius(Elem a, std::uint32_t k = 1) const;
  /// Discrete log base primitive(); a must be nonzero.
  std::uint32_t log(Elem a) const;
  Elem exp(std::uint64_t k) const { return Elem{t_->exp[k % (t_->q - 1)]}; }

  bool is_square(Elem a) const;
  /// Least non-square when q is odd; nullopt in characteristic 2.
  std::optional<Elem> nonsquare() const;
  /// A square root when one exists.
  std::optional<Elem> sqrt(Elem a) const;

  std::string name() const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.t_ == b.t_ || (a.t_ && b.t_ && a.t_->p == b.t_->p && a.t_->e == b.t_->e);
  }

 private:
  struct Tables {
    std::uint32_t p = 0, e = 0, q = 0;
    std::vector<std::uint32_t> modulus;
    std::uint32_t primitive = 0;
    std::vector<std::uint32_t> exp, log, neg, frob;
    std::vector<std::uint32_t> add_table;  // q*q when 2 < p and e > 1 and q <= 1024
  };
  std::shared_ptr<const Tables> t_;

  static std::uint32_t poly_mul_mod(const Tables& t, std::uint32_t a, std::uint32_t b);
  Elem add_digits(Elem a, Elem b) const;
};

/// Frobenius data for GF(q0^2) over GF(q0).
struct ConjTraceNorm {
  Elem conj, trace, norm;
};

/// conj = a^q0, trace = a + conj, norm = a * conj. Elements of the subfield
/// are returned in the representation of the big field.
/// Throws FieldError unless big is a quadratic extension of sub.
ConjTraceNorm conjugate_trace_norm(const Field& big, Elem a, const Field& sub);

/// a ↦ a^q0 where big = GF(q0^2).
Elem conjugate(const Field& big, Elem a);

enum class SpecialParam { zeta, chi, sqrt_minus_one };

/// zeta: least z with t^2 + t + z irreducible over F.
/// chi: least c with c + conj(c) = 1 (F must have even degree).
/// sqrt_minus_one: least s with s^2 = -1 (requires q = 1 mod 4).
Elem special_param(const Field& F, SpecialParam kind);

bool is_prime(std::uint64_t n);

}  // namespace orbdiam
