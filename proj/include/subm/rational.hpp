#pragma once
// Exact scalar arithmetic: arbitrary-precision rationals, optionally extended
// with a distinguished +infinity.  No floating point anywhere in this library.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace subm {

using Nat = std::uint64_t;
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Bad input: set outside the universe, malformed value, violated precondition.
struct DomainError : Error {
  using Error::Error;
};
// Structural size cap hit (these are hard limits, not budgets).
struct CapExceeded : Error {
  using Error::Error;
};
// JSON input that does not match the documented formats.
struct SchemaError : Error {
  using Error::Error;
};

// A search ran out of its iteration budget.  Carries the best lower bound
// established before giving up, so callers can still report partial truth.
struct BudgetExhausted : Error {
  Rat lower_bound;
  explicit BudgetExhausted(const std::string& what, Rat lb = 0)
      : Error(what), lower_bound(std::move(lb)) {}
};

inline Rat pow2(long e) {
  if (e >= 0) return Rat(Int(1) << e);
  return Rat(Int(1), Int(1) << (-e));
}

inline Rat parse_rat(const std::string& s) {
  auto bad = [&] { throw SchemaError("bad rational literal: '" + s + "'"); };
  if (s.empty()) bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den <= 0) bad();
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    bad();
  }
  return 0;  // unreachable
}

// Shortest exact form: "7", "2/3", "-1/4".
inline std::string format_rat(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Always "p/q", e.g. "2/1"; reports use this form.
inline std::string format_rat_slash(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

// Nonnegative rational or +infinity.  Infinity is a tagged state, never a
// sentinel numeric value.  Supports what submeasure values need: addition,
// comparison, min/max.  Subtraction is deliberately absent.
class ExtRat {
 public:
  ExtRat() = default;
  ExtRat(Rat v) : v_(std::move(v)) {
    if (v_ < 0) throw DomainError("ExtRat: negative value");
  }
  ExtRat(int v) : ExtRat(Rat(v)) {}
  ExtRat(const Int& v) : ExtRat(Rat(v)) {}

  static ExtRat infinity() {
    ExtRat r;
    r.inf_ = true;
    return r;
  }

  bool is_finite() const { return !inf_; }
  bool is_infinite() const { return inf_; }

  // Finite value; throws on infinity rather than inventing a number.
  const Rat& finite() const {
    if (inf_) throw DomainError("ExtRat: infinite value where finite required");
    return v_;
  }

  friend ExtRat operator+(const ExtRat& a, const ExtRat& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtRat(a.v_ + b.v_);
  }
  ExtRat& operator+=(const ExtRat& o) { return *this = *this + o; }

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.inf_ != b.inf_) return false;
    return a.inf_ || a.v_ == b.v_;
  }
  friend std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b) {
    if (a.inf_ && b.inf_) return std::strong_ordering::equal;
    if (a.inf_) return std::strong_ordering::greater;
    if (b.inf_) return std::strong_ordering::less;
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend const ExtRat& min(const ExtRat& a, const ExtRat& b) { return b < a ? b : a; }
  friend const ExtRat& max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }

  std::string str() const { return inf_ ? "inf" : format_rat(v_); }
  std::string str_slash() const { return inf_ ? "inf" : format_rat_slash(v_); }

 private:
  bool inf_ = false;
  Rat v_ = 0;
};

inline ExtRat parse_extrat(const std::string& s) {
  if (s == "inf") return ExtRat::infinity();
  Rat r = parse_rat(s);
  if (r < 0) throw SchemaError("negative value where nonnegative required: " + s);
  return ExtRat(std::move(r));
}

}  // namespace subm
