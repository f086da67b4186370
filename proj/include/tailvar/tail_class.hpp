#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tailvar/limits.hpp"
#include "tailvar/tail_function.hpp"

namespace tailvar {

enum class TailKind { Slow, Regular, GammaClass, RapidDeHaan, Undetermined };

inline const char* to_string(TailKind k) {
  switch (k) {
    case TailKind::Slow: return "Slow";
    case TailKind::Regular: return "Regular";
    case TailKind::GammaClass: return "Gamma";
    case TailKind::RapidDeHaan: return "RapidDeHaan";
    default: return "Undetermined";
  }
}

// Classification verdict.
//   Slow                      index = 0
//   Regular(rho)              index = rho
//   GammaClass(alpha, g)      index = alpha (normalized to +-1), aux = g
//   RapidDeHaan(sign)         index = +-inf
// evidence carries every sub-test that contributed to the verdict, in a
// fixed order; notes carry non-limit evidence (e.g. Potter envelopes).
struct TailClass {
  TailKind kind = TailKind::Undetermined;
  double index = std::numeric_limits<double>::quiet_NaN();
  std::optional<TailFunction> aux;
  std::vector<std::pair<std::string, LimitEstimate>> evidence;
  std::vector<std::string> notes;

  static TailClass slow() {
    TailClass c;
    c.kind = TailKind::Slow;
    c.index = 0.0;
    return c;
  }
  static TailClass regular(double rho) {
    TailClass c;
    c.kind = TailKind::Regular;
    c.index = rho;
    return c;
  }
  static TailClass gamma(double alpha, TailFunction g) {
    TailClass c;
    c.kind = TailKind::GammaClass;
    c.index = alpha;
    c.aux = std::move(g);
    return c;
  }
  static TailClass rapid(int sign) {
    TailClass c;
    c.kind = TailKind::RapidDeHaan;
    c.index = sign > 0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
    return c;
  }

  std::string describe() const {
    char buf[128];
    switch (kind) {
      case TailKind::Slow: return "Slow";
      case TailKind::Regular:
        std::snprintf(buf, sizeof buf, "Regular, rho = %.2f", index);
        return buf;
      case TailKind::GammaClass:
        std::snprintf(buf, sizeof buf, "Gamma, alpha = %d%s%s",
                      static_cast<int>(std::lround(index)), aux ? ", g = " : "",
                      aux ? aux->label().c_str() : "");
        return buf;
      case TailKind::RapidDeHaan:
        return index > 0 ? "RapidDeHaan, sign = +inf" : "RapidDeHaan, sign = -inf";
      default: return "Undetermined";
    }
  }
};

}  // namespace tailvar
