#pragma once

// Extended integers for min-plus arithmetic: a finite 64-bit value or one of
// the two infinities. Every update rule in the library is written over XInt so
// that boundary conventions like E_0 = +inf stay explicit.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace bbs {

/// Raised for inf - inf and (+inf) + (-inf).
class IndeterminateForm : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a finite result does not fit in 64 bits.
class ArithmeticOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class XInt {
 public:
  enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

  constexpr XInt() noexcept = default;
  constexpr XInt(std::int64_t v) noexcept : value_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr XInt inf() noexcept { return XInt(Kind::PosInf); }
  static constexpr XInt neg_inf() noexcept { return XInt(Kind::NegInf); }

  constexpr Kind kind() const noexcept { return kind_; }
  constexpr bool finite() const noexcept { return kind_ == Kind::Finite; }
  constexpr bool is_pos_inf() const noexcept { return kind_ == Kind::PosInf; }
  constexpr bool is_neg_inf() const noexcept { return kind_ == Kind::NegInf; }

  /// Finite payload; throws std::logic_error on an infinity.
  std::int64_t value() const;

  constexpr std::strong_ordering operator<=>(const XInt& o) const noexcept {
    if (kind_ != o.kind_) return kind_ <=> o.kind_;
    if (kind_ != Kind::Finite) return std::strong_ordering::equal;
    return value_ <=> o.value_;
  }
  constexpr bool operator==(const XInt& o) const noexcept {
    return (*this <=> o) == std::strong_ordering::equal;
  }

  constexpr XInt operator-() const {
    if (kind_ == Kind::PosInf) return neg_inf();
    if (kind_ == Kind::NegInf) return inf();
    if (value_ == INT64_MIN) throw ArithmeticOverflow("XInt negation overflow");
    return XInt(-value_);
  }

  std::string to_string() const;

 private:
  constexpr explicit XInt(Kind k) noexcept : kind_(k) {}

  Kind kind_ = Kind::Finite;
  std::int64_t value_ = 0;
};

inline constexpr XInt tmin(XInt a, XInt b) noexcept { return b < a ? b : a; }
inline constexpr XInt tmax(XInt a, XInt b) noexcept { return a < b ? b : a; }

XInt tadd(XInt a, XInt b);
XInt tsub(XInt a, XInt b);

inline XInt operator+(XInt a, XInt b) { return tadd(a, b); }
inline XInt operator-(XInt a, XInt b) { return tsub(a, b); }
inline XInt& operator+=(XInt& a, XInt b) { return a = tadd(a, b); }
inline XInt& operator-=(XInt& a, XInt b) { return a = tsub(a, b); }

/// max(0, x), the positive part used throughout the capacity corrections.
inline XInt pos(XInt x) noexcept { return tmax(XInt(0), x); }

/// Checked 64-bit helpers for code that stays in plain integers.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// Parses "inf", "+inf", "-inf" or a decimal integer.
XInt parse_xint(const std::string& text);

std::ostream& operator<<(std::ostream& os, const XInt& x);

}  // namespace bbs
