#include "hk/special.hpp"

#include <cmath>

namespace hk {

namespace {
// Lanczos coefficients for g = 7, n = 9 (Godfrey's values).
constexpr double kG = 7.0;
constexpr double kCoef[9] = {
    0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,  12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
}  // namespace

double gamma_lanczos(double x) {
  if (x < 0.5) {
    // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x)).
    return M_PI / (std::sin(M_PI * x) * gamma_lanczos(1.0 - x));
  }
  x -= 1.0;
  double acc = kCoef[0];
  for (int i = 1; i < 9; ++i) acc += kCoef[i] / (x + i);
  const double t = x + kG + 0.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, x + 0.5) * std::exp(-t) * acc;
}

}  // namespace hk
