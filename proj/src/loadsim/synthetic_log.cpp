#include "clirgate/loadsim/synthetic_log.hpp"

#include <random>
#include <string>

#include "clirgate/error.hpp"
#include "clirgate/loadsim/zipf.hpp"
#include "clirgate/translators/splitmix.hpp"

namespace clirgate::loadsim {

using translators::splitmix64;
using translators::to_unit_open;

std::vector<clickstream::ClickRecord> synthesize_click_log(const ClickLogSpec& spec) {
  if (spec.users == 0 || spec.pairs == 0 || spec.translations_per_query == 0 || spec.max_clicks == 0) {
    throw Error(ErrorKind::InvalidArgument, "click log spec needs positive users, pairs, translations and clicks");
  }
  const ZipfSampler popularity(spec.pairs, spec.zipf_exponent);
  std::mt19937_64 rng(spec.seed);

  std::vector<clickstream::ClickRecord> records;
  records.reserve(spec.records);
  for (std::size_t i = 0; i < spec.records; ++i) {
    const std::size_t pair = popularity(to_unit_open(rng()));
    const std::size_t query = pair / spec.translations_per_query;
    const std::size_t variant = pair % spec.translations_per_query;
    const std::size_t user = rng() % spec.users;
    const double click_probability = to_unit_open(splitmix64(spec.seed ^ splitmix64(pair + 1)));
    std::uint64_t clicks = 0;
    if (to_unit_open(rng()) < click_probability) clicks = 1 + rng() % spec.max_clicks;
    records.push_back(clickstream::make_record("u" + std::to_string(user), "dotaz " + std::to_string(query),
                                               "query " + std::to_string(query) + " v" + std::to_string(variant),
                                               clicks));
  }
  return records;
}

}  // namespace clirgate::loadsim
