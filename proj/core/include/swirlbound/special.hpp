#pragma once

namespace swirlbound {

// Cutoff ramp: 1 for s <= 0, (1 + cos(pi s))/2 on (0, 1), 0 for s >= 1.
// Monotone nonincreasing, C^1 on R, piecewise analytic.
double eta_ramp(double s);
double eta_ramp_prime(double s);
// One-sided limits from inside (0,1) at the kinks s = 0, 1.
double eta_ramp_second(double s);

// Cubic smoothstep 3s^2 - 2s^3, clamped to [0, 1] outside.
double smoothstep(double s);
double smoothstep_prime(double s);

// Exponentially scaled modified Bessel functions e^{-z} I_n(z) for z >= 0.
// Needed because the unscaled I_n overflow around z ~ 700 while heat-kernel
// products only ever use the scaled combination.
double bessel_i0_scaled(double z);
double bessel_i1_scaled(double z);
double bessel_i2_scaled(double z);

}  // namespace swirlbound
