#pragma once

#include <string>

#include "groot/span.hpp"

namespace groot {

enum class CorrectionKind { Drop, Replace, Annotate, Composite };

CorrectionKind correction_from_string(const std::string& name);
std::string to_string(CorrectionKind kind);

// Each correction maps an erroneous prediction (plus gold) to a prediction
// whose reward is at least as high, without aiming for gold itself.

// Removes every predicted span that does not exactly match a gold span.
TaggedSequence drop(const TaggedSequence& pred, const TaggedSequence& gold);

// Fixes the label of predicted spans whose boundaries exactly match a gold
// span; boundary mismatches stay untouched.
TaggedSequence replace(const TaggedSequence& pred, const TaggedSequence& gold);

// Adds every gold span whose token range is entirely untagged in pred.
TaggedSequence annotate(const TaggedSequence& pred, const TaggedSequence& gold);

// replace then drop; falls back to drop alone when that pair would
// reproduce gold exactly.
TaggedSequence correct_composite(const TaggedSequence& pred, const TaggedSequence& gold);

TaggedSequence apply_correction(CorrectionKind kind, const TaggedSequence& pred,
                                const TaggedSequence& gold);

}  // namespace groot
