#include "parithlab/ecurve.hpp"

#include <stdexcept>

namespace parithlab {

namespace {

long long modll(long long a, long long m) { return ((a % m) + m) % m; }

// Right-hand side x^3 + a2 x^2 + a4 x + a6 minus the y-terms, mod ell.
bool on_curve(const CurveData& e, long long x, long long y, long long ell) {
  long long lhs = modll(y * y + e.a1 * x % ell * y + e.a3 * y, ell);
  long long rhs = modll(x * x % ell * x + e.a2 * x % ell * x + e.a4 * x + e.a6,
                        ell);
  return lhs == rhs;
}

bool is_singular_point(const CurveData& e, long long x, long long y,
                       long long ell) {
  // Partial derivatives of y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6.
  long long fy = modll(2 * y + e.a1 * x + e.a3, ell);
  long long fx = modll(e.a1 * y - 3 * x * x % ell - 2 * e.a2 * x - e.a4, ell);
  return fx == 0 && fy == 0;
}

}  // namespace

long long CurveData::discriminant() const {
  long long b2 = a1 * a1 + 4 * a2;
  long long b4 = 2 * a4 + a1 * a3;
  long long b6 = a3 * a3 + 4 * a6;
  long long b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 -
                 a4 * a4;
  return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

Reduction reduction_type(const CurveData& e, std::uint32_t ell) {
  long long m = ell;
  if (modll(e.discriminant(), m) != 0) return Reduction::Good;
  long long b2 = e.a1 * e.a1 + 4 * e.a2;
  long long b4 = 2 * e.a4 + e.a1 * e.a3;
  long long c4 = b2 * b2 - 24 * b4;
  if (modll(c4, m) == 0) return Reduction::Additive;
  // Multiplicative: count smooth points; ell - #E^ns is +1 (split) or -1.
  long long smooth = 1;  // the point at infinity
  for (long long x = 0; x < m; ++x)
    for (long long y = 0; y < m; ++y)
      if (on_curve(e, x, y, m) && !is_singular_point(e, x, y, m)) ++smooth;
  long long a = m - smooth;
  if (a == 1) return Reduction::MultiplicativeSplit;
  if (a == -1) return Reduction::MultiplicativeNonsplit;
  throw std::logic_error("reduction_type: multiplicative count off");
}

long long ap(const CurveData& e, std::uint32_t ell) {
  long long m = ell;
  switch (reduction_type(e, ell)) {
    case Reduction::Good: {
      long long count = 1;  // infinity
      for (long long x = 0; x < m; ++x)
        for (long long y = 0; y < m; ++y)
          if (on_curve(e, x, y, m)) ++count;
      return m + 1 - count;
    }
    case Reduction::MultiplicativeSplit:
      return 1;
    case Reduction::MultiplicativeNonsplit:
      return -1;
    case Reduction::Additive:
      throw std::invalid_argument("ap: additive reduction at ell");
  }
  throw std::logic_error("ap: unreachable");
}

const std::vector<CurveData>& curve_table() {
  static const std::vector<CurveData> table = {
      {0, -1, 1, -10, -20, "11a1", 11},
      {1, 0, 1, 4, -6, "14a1", 14},
      {1, 1, 1, -10, -10, "15a1", 15},
      {1, -1, 1, -1, -14, "17a1", 17},
      {0, 1, 1, -9, -15, "19a1", 19},
      {0, 1, 0, 4, 4, "20a1", 20},
      {1, 0, 0, -4, -1, "21a1", 21},
      {0, -1, 0, -4, 4, "24a1", 24},
      {1, 0, 1, -5, -8, "26a1", 26},
      {1, -1, 1, -3, 3, "26b1", 26},
      {0, 0, 1, 0, -7, "27a1", 27},
      {0, 0, 0, 4, 0, "32a1", 32},
      {0, 0, 0, 0, 1, "36a1", 36},
      {0, 0, 1, -1, 0, "37a1", 37},
  };
  return table;
}

const CurveData& curve_by_label(const std::string& label) {
  for (const CurveData& e : curve_table())
    if (e.label == label) return e;
  throw std::invalid_argument("curve_by_label: unknown label " + label);
}

std::vector<CurveData> supersingular_curves(std::uint32_t p) {
  std::vector<CurveData> out;
  for (const CurveData& e : curve_table())
    if (e.conductor % p != 0 && ap(e, p) == 0) out.push_back(e);
  return out;
}

}  // namespace parithlab
