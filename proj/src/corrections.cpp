#include "groot/corrections.hpp"

#include <algorithm>

namespace groot {

namespace {

void require_same_tokens(const TaggedSequence& pred, const TaggedSequence& gold) {
  if (pred.tokens != gold.tokens)
    throw TokenMismatch("correction inputs are over different token sequences");
}

bool gold_has_span(const TaggedSequence& gold, const LabeledSpan& span) {
  return std::find(gold.spans.begin(), gold.spans.end(), span) != gold.spans.end();
}

}  // namespace

CorrectionKind correction_from_string(const std::string& name) {
  if (name == "drop") return CorrectionKind::Drop;
  if (name == "replace") return CorrectionKind::Replace;
  if (name == "annotate") return CorrectionKind::Annotate;
  if (name == "composite") return CorrectionKind::Composite;
  throw ConfigError("unknown correction '" + name + "'");
}

std::string to_string(CorrectionKind kind) {
  switch (kind) {
    case CorrectionKind::Drop: return "drop";
    case CorrectionKind::Replace: return "replace";
    case CorrectionKind::Annotate: return "annotate";
    case CorrectionKind::Composite: return "composite";
  }
  return "?";
}

TaggedSequence drop(const TaggedSequence& pred, const TaggedSequence& gold) {
  require_same_tokens(pred, gold);
  TaggedSequence out;
  out.tokens = pred.tokens;
  for (const auto& span : pred.spans)
    if (gold_has_span(gold, span)) out.spans.push_back(span);
  return out;
}

TaggedSequence replace(const TaggedSequence& pred, const TaggedSequence& gold) {
  require_same_tokens(pred, gold);
  TaggedSequence out = pred;
  for (auto& span : out.spans) {
    for (const auto& g : gold.spans) {
      if (g.start == span.start && g.end == span.end) {
        span.label = g.label;
        break;
      }
    }
  }
  return out;
}

TaggedSequence annotate(const TaggedSequence& pred, const TaggedSequence& gold) {
  require_same_tokens(pred, gold);
  TaggedSequence out = pred;
  for (const auto& g : gold.spans) {
    bool overlaps = false;
    for (const auto& p : pred.spans)
      if (p.start < g.end && g.start < p.end) {
        overlaps = true;
        break;
      }
    if (!overlaps) out.spans.push_back(g);
  }
  std::sort(out.spans.begin(), out.spans.end(),
            [](const LabeledSpan& a, const LabeledSpan& b) { return a.start < b.start; });
  validate_tagged(out);
  return out;
}

TaggedSequence correct_composite(const TaggedSequence& pred, const TaggedSequence& gold) {
  TaggedSequence replaced = replace(pred, gold);
  TaggedSequence dropped = drop(replaced, gold);
  // Reaching gold exactly defeats the purpose of exploration, so back off to
  // the milder drop of the original prediction.
  if (dropped == gold) return drop(pred, gold);
  return dropped;
}

TaggedSequence apply_correction(CorrectionKind kind, const TaggedSequence& pred,
                                const TaggedSequence& gold) {
  switch (kind) {
    case CorrectionKind::Drop: return drop(pred, gold);
    case CorrectionKind::Replace: return replace(pred, gold);
    case CorrectionKind::Annotate: return annotate(pred, gold);
    case CorrectionKind::Composite: return correct_composite(pred, gold);
  }
  throw Error("unreachable correction kind");
}

}  // namespace groot
