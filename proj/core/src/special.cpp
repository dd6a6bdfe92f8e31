#include "swirlbound/special.hpp"

#include <cmath>

namespace swirlbound {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double eta_ramp(double s) {
  if (s <= 0.0) return 1.0;
  if (s >= 1.0) return 0.0;
  return 0.5 * (1.0 + std::cos(kPi * s));
}

double eta_ramp_prime(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  return -0.5 * kPi * std::sin(kPi * s);
}

double eta_ramp_second(double s) {
  if (s < 0.0 || s > 1.0) return 0.0;
  // inside (0,1), with the one-sided values at the kinks
  return -0.5 * kPi * kPi * std::cos(kPi * s);
}

double smoothstep(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  return s * s * (3.0 - 2.0 * s);
}

double smoothstep_prime(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  return 6.0 * s * (1.0 - s);
}

// Below the overflow threshold of the unscaled I_n (e^z blows past double
// range near z ~ 709) defer to the standard library and scale afterwards;
// above it fall back to the Abramowitz & Stegun 9.8.2/9.8.4 fits for the
// scaled value, abs error < 2e-7.
constexpr double kScaledCrossover = 600.0;

double bessel_i0_scaled(double z) {
  if (z < kScaledCrossover) return std::exp(-z) * std::cyl_bessel_i(0.0, z);
  const double u = 3.75 / z;
  const double p =
      0.39894228 +
      u * (0.01328592 +
           u * (0.00225319 +
                u * (-0.00157565 +
                     u * (0.00916281 +
                          u * (-0.02057706 +
                               u * (0.02635537 +
                                    u * (-0.01647633 + u * 0.00392377)))))));
  return p / std::sqrt(z);
}

double bessel_i1_scaled(double z) {
  if (z < kScaledCrossover) return std::exp(-z) * std::cyl_bessel_i(1.0, z);
  const double u = 3.75 / z;
  const double p =
      0.39894228 +
      u * (-0.03988024 +
           u * (-0.00362018 +
                u * (0.00163801 +
                     u * (-0.01031555 +
                          u * (0.02282967 +
                               u * (-0.02895312 +
                                    u * (0.01787654 - u * 0.00420059)))))));
  return p / std::sqrt(z);
}

double bessel_i2_scaled(double z) {
  if (z < kScaledCrossover) return std::exp(-z) * std::cyl_bessel_i(2.0, z);
  // recurrence I2 = I0 - (2/z) I1, benign at large z
  return bessel_i0_scaled(z) - 2.0 * bessel_i1_scaled(z) / z;
}

}  // namespace swirlbound
