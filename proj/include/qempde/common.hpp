// Copyright 2026 The qempde authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QEMPDE_COMMON_HPP_
#define QEMPDE_COMMON_HPP_

#include <atomic>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace qempde {

using cxd = std::complex<double>;

// ---------------------------------------------------------------------------
// Error taxonomy.
//
// ConfigError: the caller handed us something structurally invalid (bad qubit
//   index, probability out of range, malformed config file). Maps to CLI exit
//   code 1 via the catch-all in the tool.
// ValidationError: a runtime physics check failed (trace drifted, Kraus set not
//   complete, PEC budget infeasible). Also exit code 1; never an abort().
// ---------------------------------------------------------------------------

class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an optimizer encounters a non-finite loss; carries the epoch so
// callers can report where training fell over.
class TrainingAbort : public ValidationError {
 public:
  TrainingAbort(int epoch, const std::string& what)
      : ValidationError("epoch " + std::to_string(epoch) + ": " + what),
        epoch_(epoch) {}
  int epoch() const { return epoch_; }

 private:
  int epoch_;
};

// ---------------------------------------------------------------------------
// Optional expensive-validation mode (CLI --validate). When on, state-touching
// routines additionally check PSD-ness / completeness at tight tolerances.
// ---------------------------------------------------------------------------

inline std::atomic<bool>& validation_mode() {
  static std::atomic<bool> on{false};
  return on;
}

// ---------------------------------------------------------------------------
// Deterministic RNG utilities.
//
// All stochastic components (parameter init, PEC sampling) derive their
// generators from SplitMix64 so that (seed, stream index) fully determines the
// draw sequence, independent of scheduling and of the standard library's
// distribution implementations.
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derive a child seed for stream `index` of a root `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  std::uint64_t b = splitmix64(s);
  return a ^ (b + 0x632be59bd9b4e019ULL + (index << 1));
}

// Minimal xoshiro-free counter generator: a SplitMix64 stream. Enough quality
// for quasi-probability sampling and parameter init, and trivially portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  // Uniform double in [0, 1) with 53 random bits; bit-identical everywhere.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    // Modulo bias is < 2^-53 for the small n used here (Pauli choice among 4).
    return next_u64() % n;
  }

 private:
  std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// FNV-1a 64-bit hash; used for config fingerprints in output files.
// ---------------------------------------------------------------------------

inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x00000100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

// ---------------------------------------------------------------------------
// Number formatting for emitted tables: display columns round to three
// significant figures; machine columns keep full precision (%.17g survives a
// double round-trip).
// ---------------------------------------------------------------------------

inline std::string format_sig3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return std::string(buf);
}

inline std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

// ---------------------------------------------------------------------------
// parallel_for: deterministic static chunking over [begin, end). Results must
// not depend on the worker count, so workers only ever split the index range;
// any reduction order is the caller's responsibility. Nested calls run serial
// (depth guard) to avoid thread explosions. In single-core environments the
// default collapses to a plain loop.
// ---------------------------------------------------------------------------

namespace detail {
inline thread_local int parallel_depth = 0;
}

inline unsigned default_workers() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

inline void parallel_for(std::int64_t begin, std::int64_t end,
                         const std::function<void(std::int64_t)>& body,
                         unsigned workers = 0) {
  if (end <= begin) return;
  if (workers == 0) workers = default_workers();
  const std::int64_t count = end - begin;
  if (workers <= 1 || count == 1 || detail::parallel_depth > 0) {
    ++detail::parallel_depth;
    for (std::int64_t i = begin; i < end; ++i) body(i);
    --detail::parallel_depth;
    return;
  }
  const unsigned nthreads =
      static_cast<unsigned>(std::min<std::int64_t>(workers, count));
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  // Static split: thread k owns [begin + k*chunk, ...), remainder to the front.
  const std::int64_t base = count / nthreads;
  const std::int64_t extra = count % nthreads;
  std::int64_t lo = begin;
  for (unsigned k = 0; k < nthreads; ++k) {
    const std::int64_t len = base + (static_cast<std::int64_t>(k) < extra ? 1 : 0);
    const std::int64_t hi = lo + len;
    pool.emplace_back([lo, hi, &body]() {
      ++detail::parallel_depth;
      for (std::int64_t i = lo; i < hi; ++i) body(i);
      --detail::parallel_depth;
    });
    lo = hi;
  }
  for (auto& t : pool) t.join();
}

}  // namespace qempde

#endif  // QEMPDE_COMMON_HPP_
