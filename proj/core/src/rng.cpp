#include "ddsim/rng.hpp"

#include <cmath>

#include "ddsim/errors.hpp"

namespace ddsim {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  const std::uint64_t derived = splitmix64(splitmix64(seed) ^ splitmix64(stream + 1));
  return std::mt19937_64(derived);
}

namespace {

double unit_open(std::mt19937_64& rng) {
  // Uniform in [0, 1); 53-bit mantissa so -log1p(-u) is always finite.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<double> poisson_arrivals(double rate_pps, double start_s, double stop_s,
                                     std::uint64_t seed, std::uint64_t stream) {
  if (!(rate_pps > 0.0)) {
    throw ConfigError("arrival rate must be > 0");
  }
  std::vector<double> times;
  if (stop_s <= start_s) {
    return times;
  }
  std::mt19937_64 rng = make_stream(seed, stream);
  double t = start_s;
  while (true) {
    double gap = 0.0;
    do {
      gap = -std::log1p(-unit_open(rng)) / rate_pps;
    } while (!(gap > 0.0));  // keep timestamps strictly increasing
    t += gap;
    if (t >= stop_s) {
      break;
    }
    times.push_back(t);
  }
  return times;
}

std::vector<double> cbr_arrivals(double rate_pps, double start_s, double stop_s) {
  if (!(rate_pps > 0.0)) {
    throw ConfigError("arrival rate must be > 0");
  }
  std::vector<double> times;
  if (stop_s <= start_s) {
    return times;
  }
  const double period = 1.0 / rate_pps;
  for (std::uint64_t i = 0;; ++i) {
    const double t = start_s + static_cast<double>(i) * period;
    if (t >= stop_s) {
      break;
    }
    times.push_back(t);
  }
  return times;
}

}  // namespace ddsim
