// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>

namespace sscf {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

/// Leaky-wave antenna constants.
struct AntennaParams {
  double radiation_efficiency = 1.0;      // xi, dimensionless in (0, 1]
  double aperture_length_m = 0.15;        // L
  double attenuation_rad_per_m = 130.0;   // leakage attenuation
  double cutoff_hz = 100e9;               // f_co

  void validate() const;
};

/// Operating band [cutoff, upper]. The cutoff itself is excluded from use.
struct Band {
  double lower_hz = 100e9;
  double upper_hz = 200e9;

  double width() const { return upper_hz - lower_hz; }
  void validate() const;
};

/// Complex sinc(z) = sin(z)/z with a series branch near the origin.
std::complex<double> complex_sinc(std::complex<double> z);

/// Power gain |G(f, theta)| of the leaky-wave antenna.
///
/// G is the sinc of the complex wavenumber mismatch
/// (-j*attenuation - k0*cos(theta) + beta(f)) * L / 2, scaled by xi * L,
/// with k0 = 2*pi*f/c and beta = k0*sqrt(1 - (f_co/f)^2). The returned value
/// is its magnitude. Throws std::invalid_argument for f <= f_co.
double gain(const AntennaParams& params, double frequency_hz, double theta_rad);

/// Frequency of maximum radiation toward theta: f_co / sin(theta).
double peak_frequency(double cutoff_hz, double theta_rad);

/// Clamps f into the usable part of the band (strictly above the cutoff).
double clamp_to_band(double frequency_hz, const Band& band);

/// Free-space amplitude c / (4 pi f d).
inline double path_amplitude(double frequency_hz, double distance_m) {
  return kSpeedOfLight / (4.0 * kPi * frequency_hz * distance_m);
}

/// One-shot received signal strength of a link at its peak-radiation
/// frequency (clamped into the band): q * G(f_max, theta) * |h(f_max)|^2.
double link_rss(double tx_psd, const AntennaParams& params, const Band& band, double theta_rad,
                double distance_m);

}  // namespace sscf
