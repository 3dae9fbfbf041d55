#pragma once

#include <limits>
#include <stdexcept>

namespace evt {

// Endpoint of a support interval: a finite value, +infinity, or -infinity.
// The tag is explicit so infinite endpoints never travel as IEEE sentinels
// through the public data model; as_double() gives the IEEE view for
// comparisons against sample points.
class ExtendedReal {
 public:
  constexpr ExtendedReal(double v) : tag_(Tag::Finite), value_(v) {}

  static constexpr ExtendedReal pos_inf() { return ExtendedReal(Tag::PosInf); }
  static constexpr ExtendedReal neg_inf() { return ExtendedReal(Tag::NegInf); }

  constexpr bool is_finite() const { return tag_ == Tag::Finite; }
  constexpr bool is_pos_inf() const { return tag_ == Tag::PosInf; }
  constexpr bool is_neg_inf() const { return tag_ == Tag::NegInf; }

  double value() const {
    if (!is_finite()) throw std::logic_error("ExtendedReal: value() called on an infinite endpoint");
    return value_;
  }

  constexpr double as_double() const {
    switch (tag_) {
      case Tag::PosInf: return std::numeric_limits<double>::infinity();
      case Tag::NegInf: return -std::numeric_limits<double>::infinity();
      default: return value_;
    }
  }

  friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.tag_ == b.tag_ && (a.tag_ != Tag::Finite || a.value_ == b.value_);
  }

 private:
  enum class Tag { Finite, PosInf, NegInf };
  explicit constexpr ExtendedReal(Tag t) : tag_(t), value_(0.0) {}

  Tag tag_;
  double value_;
};

// Open interval (lo, hi) with possibly infinite endpoints.
struct Interval {
  ExtendedReal lo;
  ExtendedReal hi;
};

inline Interval whole_line() { return {ExtendedReal::neg_inf(), ExtendedReal::pos_inf()}; }

}  // namespace evt
