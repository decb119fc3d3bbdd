#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ddsim {

/// SplitMix64 step; used to derive independent per-source seeds so arrival
/// sequences do not depend on event interleaving.
std::uint64_t splitmix64(std::uint64_t x);

/// Engine for (seed, stream) with a fixed, documented derivation.
/// std::mt19937_64 is fully specified by the standard, so sequences are
/// stable across platforms.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream);

/// Poisson arrival process: i.i.d. exponential gaps with mean 1/rate,
/// strictly increasing timestamps in [start, stop). Sampling is hand-rolled
/// (-log(1-u)/rate) rather than std::exponential_distribution so the output
/// does not depend on the standard library implementation.
std::vector<double> poisson_arrivals(double rate_pps, double start_s, double stop_s,
                                     std::uint64_t seed, std::uint64_t stream);

/// Constant-rate arrivals: start, start + 1/rate, ... strictly below stop.
std::vector<double> cbr_arrivals(double rate_pps, double start_s, double stop_s);

}  // namespace ddsim
