#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace shiftsym {

/// An exact angle, stored as a reduced fraction of a full turn in [0, 1).
/// "1/2" is a half turn (pi radians).
class Turn {
 public:
  constexpr Turn() = default;
  Turn(std::int64_t num, std::int64_t den);

  static Turn parse(std::string_view text);  // throws Error(ParseError)

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double radians() const;
  double fraction() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const { return num_ == 0; }

  Turn operator+(Turn o) const;
  Turn operator-() const;
  Turn operator-(Turn o) const { return *this + (-o); }
  /// Multiply by an orientation sign (+1/-1).
  Turn signed_by(int orientation) const { return orientation < 0 ? -*this : *this; }
  /// The two solutions t of 2t = *this (mod 1), ascending.
  std::pair<Turn, Turn> halves() const;

  std::string str() const;

  friend bool operator==(Turn, Turn) = default;
  friend std::strong_ordering operator<=>(Turn a, Turn b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace shiftsym
