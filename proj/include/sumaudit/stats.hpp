#pragma once

// Length / compression-ratio distributions and sample selection for manual
// inspection (in order, random, outliers, representative).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sumaudit/corpus.hpp"
#include "sumaudit/textproc.hpp"

namespace sumaudit {

enum class Field { reference, summary };
enum class LengthUnit { chars, tokens, sentences };

std::string_view to_string(Field field);
std::string_view to_string(LengthUnit unit);

inline constexpr std::size_t kHistogramBins = 50;

/// Violin-plot ready summary of one distribution. For CR distributions the
/// labels are field "pair" and unit "cr".
struct DistributionStats {
  std::string field;
  std::string unit;
  std::size_t count = 0;
  double mean = 0;
  double q1 = 0;
  double median = 0;
  double q3 = 0;
  double min = 0;
  double max = 0;
  std::vector<std::pair<double, std::size_t>> histogram;  // (bin lower edge, count)

  Json to_json() const;
};

/// Linear interpolation between closest ranks; `sorted` must be ascending and
/// non-empty, p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

/// Throws std::invalid_argument on empty input.
DistributionStats summarize(std::vector<double> values, std::string field, std::string unit);

double sample_length(const Sample& sample, Field field, LengthUnit unit,
                     const AbbreviationSet& abbreviations);

DistributionStats length_distribution(const Corpus& corpus, Field field, LengthUnit unit,
                                      const AbbreviationSet& abbreviations);
DistributionStats length_distribution(const Corpus& corpus, Field field, LengthUnit unit);

/// Throws UndefinedRatio naming the first sample with an empty summary.
DistributionStats cr_distribution(const Corpus& corpus);

// Inspection orderings. Lengths are whitespace tokens. Samples with an
// undefined CR sort as +infinity.
enum class InspectKey { position, ref_length, summary_length, cr };

std::string_view to_string(InspectKey key);

/// First n samples under a stable ascending sort by key. n == 0 throws.
std::vector<Sample> inspect_ordered(const Corpus& corpus, InspectKey key, std::size_t n);

/// n samples without replacement, in draw order. n == 0 throws.
std::vector<Sample> inspect_random(const Corpus& corpus, std::size_t n, std::uint64_t seed);

enum class OutlierMode { extreme, representative };

/// Ranks by |value - median|: largest first for extreme, smallest first for
/// representative; ties by position. key must not be position.
std::vector<Sample> inspect_outliers(const Corpus& corpus, InspectKey key, std::size_t n,
                                     OutlierMode mode);

double inspect_value(const Sample& sample, InspectKey key);

}  // namespace sumaudit
