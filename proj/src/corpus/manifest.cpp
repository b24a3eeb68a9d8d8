#include "clirgate/corpus/manifest.hpp"

#include <charconv>
#include <fstream>

#include <json.hpp>

#include "clirgate/error.hpp"

namespace clirgate::corpus {

namespace fs = std::filesystem;

Strategy parse_strategy(std::string_view text) {
  if (text == "JT" || text == "jt") return Strategy::JointTraining;
  if (text == "FT" || text == "ft") return Strategy::FineTuning;
  throw Error(ErrorKind::InvalidArgument, "strategy must be JT or FT, got '" + std::string(text) + "'");
}

std::string_view to_string(Strategy strategy) noexcept {
  return strategy == Strategy::JointTraining ? "JT" : "FT";
}

std::string CorpusManifest::to_json() const {
  nlohmann::ordered_json doc;
  doc["strategy"] = to_string(strategy);
  doc["mined_repeat"] = mined_repeat;
  doc["stages"] = nlohmann::ordered_json::array();
  for (const auto& stage : stages) {
    doc["stages"].push_back({{"path", stage.path.string()}, {"policy", stage.policy}, {"count", stage.count}});
  }
  return doc.dump(2) + "\n";
}

CorpusManifest CorpusManifest::from_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    CorpusManifest manifest;
    try {
      manifest.strategy = parse_strategy(doc.at("strategy").get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorKind::FormatError, std::string("bad manifest: ") + e.what());
    }
    manifest.mined_repeat = doc.value("mined_repeat", std::size_t{1});
    for (const auto& stage : doc.at("stages")) {
      manifest.stages.push_back(
          Stage{stage.at("path").get<std::string>(), stage.at("policy").get<std::string>(), stage.at("count").get<std::size_t>()});
    }
    return manifest;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::FormatError, std::string("bad manifest: ") + e.what());
  }
}

namespace {

std::size_t copy_parallel_corpus(const fs::path& base, std::ostream* out) {
  std::ifstream in(base, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::BaseCorpusUnreadable, "cannot open base corpus '" + base.string() + "'");
  }
  std::size_t count = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw Error(ErrorKind::FormatError,
                  base.string() + ":" + std::to_string(count + 1) + ": expected `source \\t target`");
    }
    if (out) *out << line << '\n';
    ++count;
  }
  if (in.bad()) {
    throw Error(ErrorKind::BaseCorpusUnreadable, "I/O error reading '" + base.string() + "'");
  }
  return count;
}

std::size_t write_mined(std::ostream& out, std::span<const miner::MinedPair> mined, std::size_t repeat) {
  for (std::size_t r = 0; r < repeat; ++r) {
    for (const auto& pair : mined) {
      out << pair.query.text() << '\t' << pair.translation.text() << '\n';
    }
  }
  return mined.size() * repeat;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::UnreadableSource, "cannot write '" + path.string() + "'");
  }
  return out;
}

}  // namespace

CorpusManifest build_manifest(const fs::path& base, std::span<const miner::MinedPair> mined, Strategy strategy,
                              const ManifestOptions& options) {
  if (mined.empty()) {
    throw Error(ErrorKind::EmptyMinedSet, "no mined pairs to add to the corpus");
  }
  if (options.mined_repeat < 1) {
    throw Error(ErrorKind::InvalidArgument, "mined_repeat must be at least 1");
  }
  if (!fs::is_regular_file(base)) {
    throw Error(ErrorKind::BaseCorpusUnreadable, "base corpus '" + base.string() + "' does not exist");
  }
  fs::create_directories(options.out_dir);

  CorpusManifest manifest;
  manifest.strategy = strategy;

  if (strategy == Strategy::JointTraining) {
    manifest.mined_repeat = options.mined_repeat;
    const auto joint = options.out_dir / "joint.tsv";
    auto out = open_output(joint);
    std::size_t count = copy_parallel_corpus(base, &out);
    count += write_mined(out, mined, options.mined_repeat);
    manifest.stages.push_back(Stage{joint, std::string(kFromScratchPolicy), count});
    return manifest;
  }

  const std::size_t base_count = copy_parallel_corpus(base, nullptr);
  const auto mined_path = options.out_dir / "mined.tsv";
  auto out = open_output(mined_path);
  const std::size_t mined_count = write_mined(out, mined, 1);
  manifest.stages.push_back(Stage{base, std::string(kUntilConvergencePolicy), base_count});
  manifest.stages.push_back(Stage{mined_path, std::string(kUntilConvergencePolicy), mined_count});
  return manifest;
}

std::vector<miner::MinedPair> read_mined_tsv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::UnreadableSource, "cannot open mined corpus '" + path.string() + "'");
  }
  std::vector<miner::MinedPair> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    while (true) {
      const auto tab = rest.find('\t');
      fields.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    const auto where = path.string() + ":" + std::to_string(lineno);
    if (fields.size() != 5) {
      throw Error(ErrorKind::FormatError, where + ": expected 5 fields");
    }
    std::uint64_t luv = 0, duv = 0;
    auto parse_u64 = [&](std::string_view f, std::uint64_t& v) {
      auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || p != f.data() + f.size()) {
        throw Error(ErrorKind::FormatError, where + ": bad count '" + std::string(f) + "'");
      }
    };
    parse_u64(fields[2], luv);
    parse_u64(fields[3], duv);
    if (luv == 0 || duv > luv) {
      throw Error(ErrorKind::FormatError, where + ": counts violate 0 <= duv <= luv, luv >= 1");
    }
    auto q = clickstream::normalize(fields[0]);
    auto t = clickstream::normalize(fields[1]);
    pairs.push_back(miner::MinedPair{q, t, miner::PairStats{q, t, luv, duv}});
  }
  return pairs;
}

}  // namespace clirgate::corpus
