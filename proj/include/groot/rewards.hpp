#pragma once

#include <string>

#include "groot/span.hpp"

namespace groot {

enum class RewardFamily { PR, JAC, TVE };

RewardFamily reward_family_from_string(const std::string& name);
std::string to_string(RewardFamily family);

// Which reward family to optimize plus its knobs. `rescale` multiplies the
// raw value and is meant for the training loss only; evaluation reports raw
// scores (see metrics).
struct RewardSpec {
  RewardFamily family = RewardFamily::PR;
  double beta = 4.0;    // precision weight (PR only)
  double c = 2.0;       // false-positive penalty
  double gamma = 0.5;   // FP denominator weight (TVE only)
  double omega = 1.0;   // FN denominator weight (TVE only)
  double rescale = 1.0;

  static RewardSpec defaults(RewardFamily family);

  RewardSpec raw() const {
    RewardSpec s = *this;
    s.rescale = 1.0;
    return s;
  }

  // Raw-scale value of a perfect prediction against a non-empty gold.
  double perfect_value() const { return family == RewardFamily::PR ? beta + 1.0 : 1.0; }
};

struct SpanCounts {
  long tp = 0;
  long fp = 0;
  long fn_ = 0;
};

// Exact (start, end, label) span matching. Throws TokenMismatch when the two
// sequences are not over the same tokens.
SpanCounts count_spans(const TaggedSequence& pred, const TaggedSequence& gold);

// (tp - c*fp) / (tp + fp); 0 when nothing was predicted. c=0 recovers
// classical precision.
double precision_mod(const SpanCounts& counts, double c);

// tp / (tp + fn); 1 when gold has no spans (vacuous).
double recall(const SpanCounts& counts);

double reward_from_counts(const SpanCounts& counts, const RewardSpec& spec);

double reward(const TaggedSequence& pred, const TaggedSequence& gold, const RewardSpec& spec);

}  // namespace groot
