#pragma once

// Monte Carlo model of the delivery scenario. Each trial decides whether the
// focal customer pair received its intended pair, then draws one joint
// measurement outcome: from psi_a when intact, otherwise independently from
// the two marginals (the delivered qubits are uncorrelated). The observed
// frequencies are compared with the probabilities predicted by M[psi_a].
//
// Randomness: std::mt19937_64, whose output sequence is fixed by the C++
// standard. Trials are cut into fixed-size chunks; chunk k of setting m is
// seeded with splitmix64 applied to (seed, m, k). Uniform variates are built
// from raw 64-bit words here rather than through <random> distributions, whose
// algorithms are implementation-defined, so results are bit-reproducible
// across standard libraries and independent of the worker count.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "inept/errors.hpp"
#include "inept/inept_map.hpp"
#include "inept/parallel.hpp"
#include "inept/qlinalg.hpp"
#include "inept/states.hpp"

namespace inept {

inline constexpr const char* kRngAlgorithm = "mt19937_64+splitmix64-chunk65536";
inline constexpr std::size_t kSimChunk = 65536;
inline constexpr double kSigmaThreshold = 4.0;
inline constexpr std::uint64_t kDefaultTrials = 1'000'000;

enum class DeliveryKind { Bernoulli, Permutation };

class DeliveryModel {
 public:
  /// Each pair arrives intact independently with probability s.
  static DeliveryModel bernoulli(double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("bernoulli model requires 0 <= s <= 1, got " + std::to_string(s));
    return DeliveryModel(DeliveryKind::Bernoulli, s, 0);
  }

  /// A-side shipments of n customer pairs are permuted uniformly at random.
  static DeliveryModel permutation(long long n) {
    if (n < 2) throw InvalidArgument("permutation model requires n >= 2, got " + std::to_string(n));
    return DeliveryModel(DeliveryKind::Permutation, 0.0, static_cast<std::uint64_t>(n));
  }

  DeliveryKind kind() const noexcept { return kind_; }
  double s() const noexcept { return s_; }
  std::uint64_t n() const noexcept { return n_; }

  /// Success probability S that enters the map.
  double effective_s() const noexcept {
    return kind_ == DeliveryKind::Bernoulli ? s_ : 1.0 / static_cast<double>(n_);
  }

 private:
  DeliveryModel(DeliveryKind kind, double s, std::uint64_t n) : kind_(kind), s_(s), n_(n) {}
  DeliveryKind kind_;
  double s_;
  std::uint64_t n_;
};

/// A uniform permutation of n items fixes a given index with probability 1/n.
inline double permutation_effective_s(long long n) {
  if (n < 2) throw InvalidArgument("permutation model requires n >= 2, got " + std::to_string(n));
  return 1.0 / static_cast<double>(n);
}

struct MeasurementSetting {
  Axis a;
  Axis b;
};

inline std::vector<MeasurementSetting> pauli_pair_settings() {
  std::vector<MeasurementSetting> out;
  for (Axis x : {Axis::X, Axis::Y, Axis::Z})
    for (Axis y : {Axis::X, Axis::Y, Axis::Z}) out.push_back({x, y});
  return out;
}

/// Outcome index 2*i + j, where i (j) is 0 for the +1 and 1 for the -1
/// eigenvalue on side A (B).
struct SettingResult {
  MeasurementSetting setting;
  std::array<std::uint64_t, 4> counts{};
  std::array<std::uint64_t, 4> broken_counts{};  // subset of counts from broken deliveries
  std::uint64_t intact = 0;
  std::array<double, 4> freq{};
  std::array<double, 4> pred{};
  double max_sigma = 0.0;
};

struct SimReport {
  DeliveryKind kind = DeliveryKind::Bernoulli;
  double model_s = 0.0;
  std::uint64_t model_n = 0;
  double effective_s = 0.0;
  double a = 0.0;
  std::uint64_t trials = 0;  // per setting
  std::uint64_t seed = 0;
  std::string rng_algorithm = kRngAlgorithm;
  std::vector<SettingResult> settings;
  double max_sigma = 0.0;

  bool passes(double threshold = kSigmaThreshold) const { return max_sigma <= threshold; }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t setting, std::uint64_t chunk) {
  return splitmix64(splitmix64(splitmix64(seed) ^ setting) ^ chunk);
}

inline double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, n) by Lemire's multiply-and-reject method.
inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t n) {
  unsigned __int128 m = static_cast<unsigned __int128>(g()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t floor = (0 - n) % n;
    while (low < floor) {
      m = static_cast<unsigned __int128>(g()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

template <std::size_t K>
std::size_t sample_categorical(std::mt19937_64& g, const std::array<double, K>& p) {
  const double u = uniform01(g);
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < K; ++k) {
    acc += p[k];
    if (u < acc) return k;
  }
  return K - 1;
}

/// (I + sign σ) / 2
inline CMatrix2 projector(Axis axis, int outcome) {
  const double sign = outcome == 0 ? 1.0 : -1.0;
  return 0.5 * (CMatrix2::identity() + sign * pauli(axis));
}

inline std::array<double, 4> joint_probabilities(const CMatrix4& rho, MeasurementSetting st) {
  std::array<double, 4> p{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      p[2 * i + j] = std::max(0.0, trace(rho * tensor(projector(st.a, i), projector(st.b, j))).real());
  return p;
}

inline std::array<double, 2> local_probabilities(const CMatrix2& rho, Axis axis) {
  return {std::max(0.0, trace(rho * projector(axis, 0)).real()),
          std::max(0.0, trace(rho * projector(axis, 1)).real())};
}

struct ChunkCounts {
  std::array<std::uint64_t, 4> counts{};
  std::array<std::uint64_t, 4> broken{};
  std::uint64_t intact = 0;
};

}  // namespace detail

/// Runs `trials` deliveries for each measurement setting (default: the nine
/// Pauli pairs). Throws InvalidArgument for trials == 0 or a outside [0, 1].
inline SimReport simulate_pair_state(const DeliveryModel& model, double a, std::uint64_t trials,
                                     std::uint64_t seed,
                                     std::vector<MeasurementSetting> settings = pauli_pair_settings(),
                                     unsigned threads = default_thread_count()) {
  if (trials == 0) throw InvalidArgument("trials must be at least 1");
  if (settings.empty()) throw InvalidArgument("at least one measurement setting is required");
  const auto rho = psi_a(a);
  const CMatrix2 marg_a = partial_trace(rho.matrix(), Subsystem::A);
  const CMatrix2 marg_b = partial_trace(rho.matrix(), Subsystem::B);
  const auto predicted = apply_map(rho, model.effective_s());

  SimReport rep;
  rep.kind = model.kind();
  rep.model_s = model.s();
  rep.model_n = model.n();
  rep.effective_s = model.effective_s();
  rep.a = a;
  rep.trials = trials;
  rep.seed = seed;

  const std::size_t chunks = static_cast<std::size_t>((trials + kSimChunk - 1) / kSimChunk);
  std::vector<detail::ChunkCounts> parts(settings.size() * chunks);

  parallel_for(parts.size(), threads, [&](std::size_t job) {
    const std::size_t m = job / chunks;
    const std::size_t k = job % chunks;
    const auto st = settings[m];
    const auto joint = detail::joint_probabilities(rho.matrix(), st);
    const auto pa = detail::local_probabilities(marg_a, st.a);
    const auto pb = detail::local_probabilities(marg_b, st.b);

    std::mt19937_64 gen(detail::substream_seed(seed, m, k));
    const std::uint64_t begin = static_cast<std::uint64_t>(k) * kSimChunk;
    const std::uint64_t end = std::min<std::uint64_t>(trials, begin + kSimChunk);
    auto& out = parts[job];
    for (std::uint64_t t = begin; t < end; ++t) {
      const bool intact = model.kind() == DeliveryKind::Bernoulli
                              ? detail::uniform01(gen) < model.s()
                              : detail::uniform_below(gen, model.n()) == 0;
      if (intact) {
        ++out.intact;
        ++out.counts[detail::sample_categorical(gen, joint)];
      } else {
        const std::size_t i = detail::sample_categorical(gen, pa);
        const std::size_t j = detail::sample_categorical(gen, pb);
        ++out.counts[2 * i + j];
        ++out.broken[2 * i + j];
      }
    }
  });

  const double n = static_cast<double>(trials);
  for (std::size_t m = 0; m < settings.size(); ++m) {
    SettingResult r;
    r.setting = settings[m];
    for (std::size_t k = 0; k < chunks; ++k) {
      const auto& part = parts[m * chunks + k];
      for (std::size_t o = 0; o < 4; ++o) {
        r.counts[o] += part.counts[o];
        r.broken_counts[o] += part.broken[o];
      }
      r.intact += part.intact;
    }
    r.pred = detail::joint_probabilities(predicted.matrix(), r.setting);
    for (std::size_t o = 0; o < 4; ++o) {
      r.freq[o] = static_cast<double>(r.counts[o]) / n;
      const double se = std::sqrt(r.pred[o] * (1.0 - r.pred[o]) / n);
      const double dev = std::abs(r.freq[o] - r.pred[o]);
      double sigma = 0.0;
      if (se > 0.0) {
        sigma = dev / se;
      } else if (r.counts[o] > 0 && r.pred[o] < 1e-15) {
        sigma = std::numeric_limits<double>::infinity();
      }
      r.max_sigma = std::max(r.max_sigma, sigma);
    }
    rep.max_sigma = std::max(rep.max_sigma, r.max_sigma);
    rep.settings.push_back(r);
  }
  return rep;
}

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Concurrence of the X-state reconstructed from the zz (diagonal), xx and yy
/// (coherence) settings: C = 2 max(0, t - sqrt(d2 d3)) with
/// t = (<xx> - <yy>) / 4. The standard error is first-order error propagation
/// of the multinomial counts.
inline Estimate estimate_concurrence(const SimReport& rep) {
  const SettingResult* zz = nullptr;
  const SettingResult* xx = nullptr;
  const SettingResult* yy = nullptr;
  for (const auto& r : rep.settings) {
    if (r.setting.a == Axis::Z && r.setting.b == Axis::Z) zz = &r;
    if (r.setting.a == Axis::X && r.setting.b == Axis::X) xx = &r;
    if (r.setting.a == Axis::Y && r.setting.b == Axis::Y) yy = &r;
  }
  if (!zz || !xx || !yy) throw InvalidArgument("estimate_concurrence needs the xx, yy and zz settings");

  const double n = static_cast<double>(rep.trials);
  auto correlator = [](const SettingResult& r) { return r.freq[0] - r.freq[1] - r.freq[2] + r.freq[3]; };
  const double txx = correlator(*xx);
  const double tyy = correlator(*yy);
  const double t = (txx - tyy) / 4.0;
  const double var_t = ((1.0 - txx * txx) + (1.0 - tyy * tyy)) / (16.0 * n);

  const double d2 = zz->freq[1];
  const double d3 = zz->freq[2];
  const double g = std::sqrt(d2 * d3);
  double var_g = 0.0;
  if (g > 0.0) {
    const double g2 = d3 / (2.0 * g);
    const double g3 = d2 / (2.0 * g);
    var_g = (g2 * g2 * d2 * (1.0 - d2) + g3 * g3 * d3 * (1.0 - d3) - 2.0 * g2 * g3 * d2 * d3) / n;
  }
  return {2.0 * std::max(0.0, t - g), 2.0 * std::sqrt(var_t + std::max(var_g, 0.0))};
}

}  // namespace inept
