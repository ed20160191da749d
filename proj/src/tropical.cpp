#include "bbs/tropical.hpp"

#include <charconv>
#include <ostream>

namespace bbs {

std::int64_t XInt::value() const {
  if (kind_ != Kind::Finite) throw std::logic_error("XInt::value() on " + to_string());
  return value_;
}

std::string XInt::to_string() const {
  switch (kind_) {
    case Kind::PosInf:
      return "inf";
    case Kind::NegInf:
      return "-inf";
    case Kind::Finite:
      break;
  }
  return std::to_string(value_);
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in addition");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in subtraction");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in multiplication");
  return r;
}

XInt tadd(XInt a, XInt b) {
  if (a.finite() && b.finite()) return checked_add(a.value(), b.value());
  if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf())) {
    throw IndeterminateForm("(+inf) + (-inf)");
  }
  return a.finite() ? b : a;
}

XInt tsub(XInt a, XInt b) {
  if (a.finite() && b.finite()) return checked_sub(a.value(), b.value());
  if (!a.finite() && a.kind() == b.kind()) {
    throw IndeterminateForm(a.to_string() + " - " + b.to_string());
  }
  return a.finite() ? -b : a;
}

XInt parse_xint(const std::string& text) {
  if (text == "inf" || text == "+inf") return XInt::inf();
  if (text == "-inf") return XInt::neg_inf();
  std::int64_t v = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw std::invalid_argument("not an extended integer: '" + text + "'");
  }
  return v;
}

std::ostream& operator<<(std::ostream& os, const XInt& x) { return os << x.to_string(); }

}  // namespace bbs
