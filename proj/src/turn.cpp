#include "shiftsym/turn.hpp"

#include <charconv>
#include <numbers>
#include <numeric>

#include "shiftsym/error.hpp"

namespace shiftsym {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonGroupTable: return "NonGroupTable";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::BadPermutation: return "BadPermutation";
    case ErrorKind::InconsistentOrbitTypes: return "InconsistentOrbitTypes";
    case ErrorKind::EmptyFixedSet: return "EmptyFixedSet";
    case ErrorKind::NotFixed: return "NotFixed";
    case ErrorKind::NotEquivariant: return "NotEquivariant";
    case ErrorKind::NotTrivialAction: return "NotTrivialAction";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotTriviallyActing: return "NotTriviallyActing";
    case ErrorKind::NotCosetAction: return "NotCosetAction";
    case ErrorKind::BadGrid: return "BadGrid";
    case ErrorKind::IncommensurableAngle: return "IncommensurableAngle";
    case ErrorKind::NotFredholmScenario: return "NotFredholmScenario";
    case ErrorKind::VanishingSymbol: return "VanishingSymbol";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

Turn::Turn(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator in angle");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  num %= den;
  if (num < 0) num += den;
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Turn Turn::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s, std::int64_t& out) {
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
  };
  std::int64_t num = 0;
  std::int64_t den = 1;
  const auto slash = text.find('/');
  bool ok = false;
  if (slash == std::string_view::npos) {
    ok = parse_int(text, num);
  } else {
    ok = parse_int(text.substr(0, slash), num) && parse_int(text.substr(slash + 1), den) && den != 0;
  }
  if (!ok) {
    std::string msg = "angle '" + std::string(text) + "' is not an exact rational turn";
    if (text.find('.') != std::string_view::npos || text.find('e') != std::string_view::npos)
      msg += " (decimal angles are rejected; write a fraction of a full turn such as \"1/2\" for pi)";
    throw Error(ErrorKind::ParseError, msg);
  }
  return Turn(num, den);
}

double Turn::radians() const { return 2.0 * std::numbers::pi * fraction(); }

Turn Turn::operator+(Turn o) const {
  const std::int64_t l = std::lcm(den_, o.den_);
  return Turn(num_ * (l / den_) + o.num_ * (l / o.den_), l);
}

Turn Turn::operator-() const { return Turn(-num_, den_); }

std::pair<Turn, Turn> Turn::halves() const {
  Turn a(num_, 2 * den_);
  Turn b = a + Turn(1, 2);
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

std::string Turn::str() const {
  if (num_ == 0) return "0";
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(Turn a, Turn b) {
  // Both in [0,1) with positive denominators; compare cross products.
  return (a.num_ * b.den_) <=> (b.num_ * a.den_);
}

}  // namespace shiftsym
