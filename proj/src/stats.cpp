#include "sumaudit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sumaudit/filters.hpp"
#include "sumaudit/rng.hpp"
#include "sumaudit/unicode.hpp"

namespace sumaudit {

std::string_view to_string(Field field) {
  return field == Field::reference ? "reference" : "summary";
}

std::string_view to_string(LengthUnit unit) {
  switch (unit) {
    case LengthUnit::chars: return "chars";
    case LengthUnit::tokens: return "tokens";
    case LengthUnit::sentences: return "sentences";
  }
  return "chars";
}

std::string_view to_string(InspectKey key) {
  switch (key) {
    case InspectKey::position: return "position";
    case InspectKey::ref_length: return "ref_length";
    case InspectKey::summary_length: return "summary_length";
    case InspectKey::cr: return "cr";
  }
  return "position";
}

Json DistributionStats::to_json() const {
  Json j = Json::object();
  j["field"] = field;
  j["unit"] = unit;
  j["count"] = count;
  j["mean"] = mean;
  j["q1"] = q1;
  j["median"] = median;
  j["q3"] = q3;
  j["min"] = min;
  j["max"] = max;
  Json bins = Json::array();
  for (const auto& [edge, n] : histogram) bins.push_back(Json::array({edge, n}));
  j["histogram"] = std::move(bins);
  return j;
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sequence");
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

DistributionStats summarize(std::vector<double> values, std::string field, std::string unit) {
  if (values.empty()) throw std::invalid_argument("distribution over an empty corpus");
  DistributionStats s;
  s.field = std::move(field);
  s.unit = std::move(unit);
  s.count = values.size();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());

  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  s.q1 = quantile_sorted(values, 0.25);
  s.median = quantile_sorted(values, 0.5);
  s.q3 = quantile_sorted(values, 0.75);

  const double width = (s.max - s.min) / static_cast<double>(kHistogramBins);
  s.histogram.resize(kHistogramBins);
  for (std::size_t b = 0; b < kHistogramBins; ++b) {
    s.histogram[b] = {s.min + width * static_cast<double>(b), 0};
  }
  for (double v : values) {
    std::size_t bin = 0;
    if (width > 0) {
      bin = std::min(kHistogramBins - 1, static_cast<std::size_t>((v - s.min) / width));
    }
    ++s.histogram[bin].second;
  }
  return s;
}

double sample_length(const Sample& sample, Field field, LengthUnit unit,
                     const AbbreviationSet& abbreviations) {
  const std::string& text = field == Field::reference ? sample.reference : sample.summary;
  switch (unit) {
    case LengthUnit::chars:
      return static_cast<double>(unicode::scalar_count(normalize(text)));
    case LengthUnit::tokens:
      return static_cast<double>(tokenize(text, TokenMode::whitespace).size());
    case LengthUnit::sentences:
      return static_cast<double>(split_sentences(text, abbreviations).size());
  }
  return 0;
}

DistributionStats length_distribution(const Corpus& corpus, Field field, LengthUnit unit,
                                      const AbbreviationSet& abbreviations) {
  std::vector<double> values;
  values.reserve(corpus.size());
  for (const auto& sample : corpus.samples) {
    values.push_back(sample_length(sample, field, unit, abbreviations));
  }
  return summarize(std::move(values), std::string(to_string(field)), std::string(to_string(unit)));
}

DistributionStats length_distribution(const Corpus& corpus, Field field, LengthUnit unit) {
  return length_distribution(corpus, field, unit, AbbreviationSet::german());
}

DistributionStats cr_distribution(const Corpus& corpus) {
  std::vector<double> values;
  values.reserve(corpus.size());
  for (const auto& sample : corpus.samples) values.push_back(compression_ratio(sample));
  return summarize(std::move(values), "pair", "cr");
}

// --- inspection --------------------------------------------------------------

double inspect_value(const Sample& sample, InspectKey key) {
  switch (key) {
    case InspectKey::position:
      return 0;
    case InspectKey::ref_length:
      return static_cast<double>(tokenize(sample.reference, TokenMode::whitespace).size());
    case InspectKey::summary_length:
      return static_cast<double>(tokenize(sample.summary, TokenMode::whitespace).size());
    case InspectKey::cr:
      try {
        return compression_ratio(sample);
      } catch (const UndefinedRatio&) {
        return std::numeric_limits<double>::infinity();
      }
  }
  return 0;
}

namespace {

void require_positive(std::size_t n) {
  if (n == 0) throw std::invalid_argument("inspection count n must be >= 1");
}

std::vector<Sample> pick(const Corpus& corpus, const std::vector<std::size_t>& order,
                         std::size_t n) {
  std::vector<Sample> out;
  const std::size_t take = std::min(n, order.size());
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(corpus.samples[order[i]]);
  return out;
}

std::vector<double> values_for(const Corpus& corpus, InspectKey key) {
  std::vector<double> values;
  values.reserve(corpus.size());
  for (const auto& s : corpus.samples) values.push_back(inspect_value(s, key));
  return values;
}

}  // namespace

std::vector<Sample> inspect_ordered(const Corpus& corpus, InspectKey key, std::size_t n) {
  require_positive(n);
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  if (key != InspectKey::position) {
    const auto values = values_for(corpus, key);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  }
  return pick(corpus, order, n);
}

std::vector<Sample> inspect_random(const Corpus& corpus, std::size_t n, std::uint64_t seed) {
  require_positive(n);
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  SeededRng rng(seed);
  const std::size_t take = std::min(n, order.size());
  // Partial Fisher-Yates: position i receives a uniform pick from the rest.
  for (std::size_t i = 0; i < take; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(order.size() - i));
    std::swap(order[i], order[j]);
  }
  return pick(corpus, order, take);
}

std::vector<Sample> inspect_outliers(const Corpus& corpus, InspectKey key, std::size_t n,
                                     OutlierMode mode) {
  require_positive(n);
  if (key == InspectKey::position) {
    throw std::invalid_argument("outlier inspection needs a metric key, not position");
  }
  if (corpus.empty()) return {};
  const auto values = values_for(corpus, key);
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const double median = quantile_sorted(sorted, 0.5);

  std::vector<double> distance(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    // inf - inf would be NaN when the median itself is infinite
    distance[i] = values[i] == median ? 0.0 : std::fabs(values[i] - median);
  }
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return mode == OutlierMode::extreme ? distance[a] > distance[b] : distance[a] < distance[b];
  });
  return pick(corpus, order, n);
}

}  // namespace sumaudit
