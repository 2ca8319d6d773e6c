#include "groot/rewards.hpp"

namespace groot {

RewardFamily reward_family_from_string(const std::string& name) {
  if (name == "PR" || name == "pr") return RewardFamily::PR;
  if (name == "JAC" || name == "jac") return RewardFamily::JAC;
  if (name == "TVE" || name == "tve") return RewardFamily::TVE;
  throw ConfigError("unknown reward family '" + name + "'");
}

std::string to_string(RewardFamily family) {
  switch (family) {
    case RewardFamily::PR: return "PR";
    case RewardFamily::JAC: return "JAC";
    case RewardFamily::TVE: return "TVE";
  }
  return "?";
}

RewardSpec RewardSpec::defaults(RewardFamily family) {
  RewardSpec s;
  s.family = family;
  switch (family) {
    case RewardFamily::PR:
      s.beta = 4.0;
      s.c = 2.0;
      s.rescale = 1.0;
      break;
    case RewardFamily::JAC:
      s.c = 1.0;
      s.rescale = s.beta + 1.0;
      break;
    case RewardFamily::TVE:
      s.c = 1.0;
      s.gamma = 0.5;
      s.omega = 1.0;
      s.rescale = s.beta + 1.0;
      break;
  }
  return s;
}

SpanCounts count_spans(const TaggedSequence& pred, const TaggedSequence& gold) {
  if (pred.tokens != gold.tokens)
    throw TokenMismatch("prediction and gold are over different token sequences");
  // Both span lists are sorted with strictly increasing starts, so one merge
  // pass finds every exact triple match.
  SpanCounts counts;
  std::size_t i = 0, j = 0;
  while (i < pred.spans.size() && j < gold.spans.size()) {
    const auto& p = pred.spans[i];
    const auto& g = gold.spans[j];
    if (p.start == g.start) {
      if (p == g) ++counts.tp;
      ++i;
      ++j;
    } else if (p.start < g.start) {
      ++i;
    } else {
      ++j;
    }
  }
  counts.fp = static_cast<long>(pred.spans.size()) - counts.tp;
  counts.fn_ = static_cast<long>(gold.spans.size()) - counts.tp;
  return counts;
}

double precision_mod(const SpanCounts& counts, double c) {
  const double predicted = static_cast<double>(counts.tp + counts.fp);
  if (predicted == 0.0) return 0.0;
  return (static_cast<double>(counts.tp) - c * static_cast<double>(counts.fp)) / predicted;
}

double recall(const SpanCounts& counts) {
  const double gold = static_cast<double>(counts.tp + counts.fn_);
  if (gold == 0.0) return 1.0;
  return static_cast<double>(counts.tp) / gold;
}

double reward_from_counts(const SpanCounts& counts, const RewardSpec& spec) {
  const double tp = static_cast<double>(counts.tp);
  const double fp = static_cast<double>(counts.fp);
  const double fn = static_cast<double>(counts.fn_);
  // Zero denominators: empty gold vs empty prediction is perfect agreement
  // (raw 1, matching the vacuous-recall convention); any other degenerate
  // denominator (possible only with gamma=0 or omega=0) scores 0.
  const bool all_empty = counts.tp == 0 && counts.fp == 0 && counts.fn_ == 0;
  double raw = 0.0;
  switch (spec.family) {
    case RewardFamily::PR:
      raw = spec.beta * precision_mod(counts, spec.c) + recall(counts);
      break;
    case RewardFamily::JAC: {
      const double denom = tp + fp + fn;
      raw = denom == 0.0 ? (all_empty ? 1.0 : 0.0) : (tp - spec.c * fp) / denom;
      break;
    }
    case RewardFamily::TVE: {
      const double denom = tp + spec.gamma * fp + spec.omega * fn;
      raw = denom == 0.0 ? (all_empty ? 1.0 : 0.0) : (tp - spec.c * fp) / denom;
      break;
    }
  }
  return spec.rescale * raw;
}

double reward(const TaggedSequence& pred, const TaggedSequence& gold, const RewardSpec& spec) {
  return reward_from_counts(count_spans(pred, gold), spec);
}

}  // namespace groot
