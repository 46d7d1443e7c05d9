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

#include "sscf/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sscf {

void AntennaParams::validate() const {
  if (!(radiation_efficiency > 0.0 && radiation_efficiency <= 1.0))
    throw std::invalid_argument("radiation efficiency must lie in (0, 1]");
  if (!(aperture_length_m > 0.0)) throw std::invalid_argument("aperture length must be positive");
  if (!(attenuation_rad_per_m >= 0.0)) throw std::invalid_argument("attenuation must be nonnegative");
  if (!(cutoff_hz > 0.0)) throw std::invalid_argument("cutoff frequency must be positive");
}

void Band::validate() const {
  if (!(lower_hz > 0.0 && upper_hz > lower_hz))
    throw std::invalid_argument("band must satisfy 0 < lower < upper");
}

std::complex<double> complex_sinc(std::complex<double> z) {
  if (std::abs(z) < 1e-6) {
    const auto z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

double gain(const AntennaParams& params, double frequency_hz, double theta_rad) {
  if (!(frequency_hz > params.cutoff_hz))
    throw std::invalid_argument("gain: frequency must exceed the cutoff frequency");
  const double k0 = 2.0 * kPi * frequency_hz / kSpeedOfLight;
  const double ratio = params.cutoff_hz / frequency_hz;
  const double beta = k0 * std::sqrt(1.0 - ratio * ratio);
  const double half = 0.5 * params.aperture_length_m;
  const double x = (beta - k0 * std::cos(theta_rad)) * half;
  const double y = params.attenuation_rad_per_m * half;
  // |sin(x - jy)|^2 = sin^2 x + sinh^2 y, |x - jy|^2 = x^2 + y^2
  const double r2 = x * x + y * y;
  double mag;
  if (r2 < 1e-12) {
    mag = std::abs(complex_sinc({x, -y}));
  } else {
    const double s = std::sin(x);
    const double sh = std::sinh(y);
    mag = std::sqrt((s * s + sh * sh) / r2);
  }
  return params.radiation_efficiency * params.aperture_length_m * mag;
}

double peak_frequency(double cutoff_hz, double theta_rad) {
  if (!(theta_rad > 0.0 && theta_rad <= kPi / 2.0 + 1e-15))
    throw std::invalid_argument("peak_frequency: theta must lie in (0, pi/2]");
  return cutoff_hz / std::sin(theta_rad);
}

double clamp_to_band(double frequency_hz, const Band& band) {
  const double floor = std::nextafter(band.lower_hz, std::numeric_limits<double>::infinity());
  return std::clamp(frequency_hz, floor, band.upper_hz);
}

double link_rss(double tx_psd, const AntennaParams& params, const Band& band, double theta_rad,
                double distance_m) {
  const double f = clamp_to_band(peak_frequency(params.cutoff_hz, theta_rad), band);
  const double a = path_amplitude(f, distance_m);
  return tx_psd * gain(params, f, theta_rad) * a * a;
}

}  // namespace sscf
