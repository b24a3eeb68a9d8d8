#include "clirgate/miner/filter.hpp"

#include <algorithm>
#include <cstdio>

#include "clirgate/error.hpp"

namespace clirgate::miner {

MiningMode parse_mining_mode(std::string_view text) {
  if (text == "top") return MiningMode::Top;
  if (text == "bottom") return MiningMode::Bottom;
  throw Error(ErrorKind::InvalidArgument, "mining mode must be 'top' or 'bottom', got '" + std::string(text) + "'");
}

std::string_view to_string(MiningMode mode) noexcept { return mode == MiningMode::Top ? "top" : "bottom"; }

void MiningThresholds::validate() const {
  if (eta > Ratio(1, 1)) {
    throw Error(ErrorKind::InvalidArgument, "eta must lie in [0, 1], got " + eta.str());
  }
  if (chi < 1) {
    throw Error(ErrorKind::InvalidArgument, "chi must be at least 1");
  }
}

bool MiningThresholds::admits(const PairStats& stats) const {
  if (stats.luv < chi) return false;
  const Ratio ctr = stats.ctr();
  return mode == MiningMode::Top ? ctr >= eta : ctr <= eta;
}

std::vector<MinedPair> filter(std::span<const PairStats> stats, const MiningThresholds& thresholds) {
  thresholds.validate();
  std::vector<MinedPair> out;
  for (const auto& s : stats) {
    if (thresholds.admits(s)) out.push_back(MinedPair{s.query, s.translation, s});
  }
  return out;
}

void sort_for_output(std::vector<MinedPair>& pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const MinedPair& a, const MinedPair& b) {
    if (a.stats.luv != b.stats.luv) return a.stats.luv > b.stats.luv;
    if (a.query != b.query) return a.query < b.query;
    return a.translation < b.translation;
  });
}

std::string to_mined_tsv(std::vector<MinedPair> pairs) {
  sort_for_output(pairs);
  std::string out;
  char ctr[32];
  for (const auto& p : pairs) {
    std::snprintf(ctr, sizeof(ctr), "%.6f", p.stats.ctr_value());
    out += p.query.text();
    out += '\t';
    out += p.translation.text();
    out += '\t';
    out += std::to_string(p.stats.luv);
    out += '\t';
    out += std::to_string(p.stats.duv);
    out += '\t';
    out += ctr;
    out += '\n';
  }
  return out;
}

}  // namespace clirgate::miner
