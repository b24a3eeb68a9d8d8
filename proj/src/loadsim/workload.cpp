#include "clirgate/loadsim/workload.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <unordered_set>

#include "clirgate/error.hpp"
#include "clirgate/loadsim/zipf.hpp"
#include "clirgate/translators/splitmix.hpp"

namespace clirgate::loadsim {

using translators::to_unit_open;

void WorkloadSpec::validate() const {
  if (total_requests == 0) throw Error(ErrorKind::InvalidArgument, "total_requests must be positive");
  if (distinct_queries == 0) throw Error(ErrorKind::InvalidArgument, "distinct_queries must be positive");
  if (distinct_queries > total_requests) {
    throw Error(ErrorKind::InvalidArgument, "distinct_queries cannot exceed total_requests");
  }
  if (const auto* z = std::get_if<ZipfPopularity>(&popularity); z && !(z->exponent > 0)) {
    throw Error(ErrorKind::InvalidArgument, "zipf exponent must be positive");
  }
  if (target_repetition_rate) {
    if (!(*target_repetition_rate >= 0 && *target_repetition_rate <= 1)) {
      throw Error(ErrorKind::InvalidArgument, "target_repetition_rate must lie in [0, 1]");
    }
    if (!std::holds_alternative<ZipfPopularity>(popularity)) {
      throw Error(ErrorKind::InvalidArgument, "target_repetition_rate needs zipf popularity");
    }
  }
}

WorkloadSpec WorkloadSpec::from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  WorkloadSpec spec;
  try {
    spec.total_requests = j.value("total_requests", spec.total_requests);
    spec.distinct_queries = j.value("distinct_queries", spec.distinct_queries);
    spec.seed = j.value("seed", spec.seed);
    if (j.contains("target_repetition_rate") && !j["target_repetition_rate"].is_null()) {
      spec.target_repetition_rate = j["target_repetition_rate"].get<double>();
    }
    if (j.contains("popularity")) {
      const auto& p = j["popularity"];
      const auto kind = p.at("kind").get<std::string>();
      if (kind == "zipf") {
        spec.popularity = ZipfPopularity{p.value("exponent", 1.0)};
      } else if (kind == "uniform") {
        spec.popularity = UniformPopularity{p.value("with_replacement", true)};
      } else if (kind == "trace") {
        std::filesystem::path path = p.at("path").get<std::string>();
        spec.popularity = TracePopularity{path.is_absolute() ? path : base_dir / path};
      } else {
        throw Error(ErrorKind::FormatError, "unknown popularity kind '" + kind + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::FormatError, std::string("bad workload spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

double repetition_rate(std::span<const std::string> queries) {
  if (queries.empty()) return 0;
  std::unordered_set<std::string_view> distinct(queries.begin(), queries.end());
  return 1.0 - static_cast<double>(distinct.size()) / static_cast<double>(queries.size());
}

std::string pool_query(std::size_t rank) { return "q" + std::to_string(rank); }

namespace {

std::vector<double> uniforms(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> u(n);
  for (auto& x : u) x = to_unit_open(rng());
  return u;
}

std::vector<std::size_t> zipf_ranks(std::span<const double> u, std::size_t pool, double exponent) {
  const ZipfSampler sampler(pool, exponent);
  std::vector<std::size_t> ranks(u.size());
  std::transform(u.begin(), u.end(), ranks.begin(), [&](double x) { return sampler(x); });
  return ranks;
}

double rank_repetition(std::span<const std::size_t> ranks, std::size_t pool) {
  std::vector<char> seen(pool, 0);
  std::size_t distinct = 0;
  for (auto r : ranks) {
    if (!seen[r]) {
      seen[r] = 1;
      ++distinct;
    }
  }
  return 1.0 - static_cast<double>(distinct) / static_cast<double>(ranks.size());
}

Workload from_ranks(std::span<const std::size_t> ranks) {
  Workload w;
  w.queries.reserve(ranks.size());
  for (auto r : ranks) w.queries.push_back(pool_query(r));
  w.repetition_rate = repetition_rate(w.queries);
  return w;
}

constexpr double kTargetTolerance = 0.01;

double solve_exponent(std::span<const double> u, std::size_t pool, double target) {
  double lo = 1e-3;
  double hi = 20.0;
  const double rate_lo = rank_repetition(zipf_ranks(u, pool, lo), pool);
  const double rate_hi = rank_repetition(zipf_ranks(u, pool, hi), pool);
  if (target < rate_lo - kTargetTolerance || target > rate_hi + kTargetTolerance) {
    throw Error(ErrorKind::InfeasibleTarget,
                "repetition target " + std::to_string(target) + " is outside the reachable range [" +
                    std::to_string(rate_lo) + ", " + std::to_string(rate_hi) + "]");
  }
  double best = lo;
  double best_error = std::abs(rate_lo - target);
  if (std::abs(rate_hi - target) < best_error) {
    best = hi;
    best_error = std::abs(rate_hi - target);
  }
  for (int iter = 0; iter < 80 && best_error > 1e-3; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double rate = rank_repetition(zipf_ranks(u, pool, mid), pool);
    if (std::abs(rate - target) < best_error) {
      best = mid;
      best_error = std::abs(rate - target);
    }
    (rate < target ? lo : hi) = mid;
  }
  if (best_error > kTargetTolerance) {
    throw Error(ErrorKind::InfeasibleTarget, "could not reach repetition target " + std::to_string(target));
  }
  return best;
}

}  // namespace

Workload generate(const WorkloadSpec& spec) {
  spec.validate();
  const std::size_t total = spec.total_requests;
  const std::size_t pool = spec.distinct_queries;

  if (const auto* trace = std::get_if<TracePopularity>(&spec.popularity)) {
    std::ifstream in(trace->path, std::ios::binary);
    if (!in) throw Error(ErrorKind::UnreadableSource, "cannot open trace '" + trace->path.string() + "'");
    Workload w;
    std::string line;
    while (w.queries.size() < total && std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      w.queries.push_back(line);
    }
    w.repetition_rate = repetition_rate(w.queries);
    return w;
  }

  if (const auto* uniform = std::get_if<UniformPopularity>(&spec.popularity)) {
    std::mt19937_64 rng(spec.seed);
    std::vector<std::size_t> ranks;
    ranks.reserve(total);
    if (uniform->with_replacement) {
      for (std::size_t i = 0; i < total; ++i) ranks.push_back(rng() % pool);
    } else {
      std::vector<std::size_t> perm(pool);
      while (ranks.size() < total) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::size_t i = 0; i < pool && ranks.size() < total; ++i) ranks.push_back(perm[i]);
      }
    }
    return from_ranks(ranks);
  }

  const auto u = uniforms(total, spec.seed);
  double exponent = std::get<ZipfPopularity>(spec.popularity).exponent;
  if (spec.target_repetition_rate) {
    exponent = solve_exponent(u, pool, *spec.target_repetition_rate);
  }
  auto w = from_ranks(zipf_ranks(u, pool, exponent));
  w.zipf_exponent = exponent;
  return w;
}

}  // namespace clirgate::loadsim
