#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "groot/errors.hpp"

namespace groot {

using LabelInventory = std::vector<std::string>;

bool has_label(const LabelInventory& labels, const std::string& name);

// A labeled token range: start inclusive, end exclusive.
struct LabeledSpan {
  std::string label;
  int start = 0;
  int end = 0;

  friend bool operator==(const LabeledSpan&, const LabeledSpan&) = default;
};

// Token sequence with non-overlapping spans sorted by start. Token index is
// the position in `tokens`; token texts are non-empty and whitespace-free.
struct TaggedSequence {
  std::vector<std::string> tokens;
  std::vector<LabeledSpan> spans;

  friend bool operator==(const TaggedSequence&, const TaggedSequence&) = default;
};

// Throws Error if the sequence violates its invariants.
void validate_tagged(const TaggedSequence& seq);

// ---- bracket text form: "[A X] Y Z [B W U] [C V]" ----

enum class ParseMode { Strict, Lenient };

struct ParseDiagnostic {
  std::size_t byte_offset = 0;
  std::string message;
};

struct BracketParse {
  TaggedSequence seq;
  std::vector<ParseDiagnostic> diagnostics;
};

// Lenient mode keeps tokens of malformed fragments untagged and records a
// diagnostic per fragment; strict mode throws MalformedBracket instead.
BracketParse parse_bracket(const std::string& text, const LabelInventory& labels,
                           ParseMode mode = ParseMode::Lenient);

std::string render_bracket(const TaggedSequence& seq);

// ---- sentinel+tag decoder form: "<s_0> A <s_1> O ..." ----

std::string sentinel_symbol(int index);
std::optional<int> sentinel_index(const std::string& symbol);

inline constexpr const char* kInsideTag = "I";
inline constexpr const char* kOutsideTag = "O";

// Emits, per input token i, the sentinel <s_i> followed by one tag token:
// the span label where a span begins, "I" where one continues, "O" elsewhere.
// Throws SequenceTooLong when a token index exceeds max_sentinels.
std::vector<std::string> to_sentinel_tag(const TaggedSequence& seq, int max_sentinels);

// Total lenient inverse: any token stream yields a valid TaggedSequence over
// input_tokens. Out-of-order or repeated sentinels and dangling "I" tags are
// dropped to "O"; the stream ends at the first "</s>"-style terminator the
// caller already stripped (unknown symbols read as "O").
TaggedSequence from_sentinel_tag(const std::vector<std::string>& decoder_tokens,
                                 const std::vector<std::string>& input_tokens,
                                 const LabelInventory& labels);

// ---- CoNLL-style BIO rows: "token<TAB>B-X" ----

// Converts rows of one sequence. Lenient BIO: "I-X" after "O", after a
// different label, or at the start opens a new span. line_base offsets the
// line numbers reported in BadRow.
TaggedSequence bio_import(const std::vector<std::string>& rows, long line_base = 1);

}  // namespace groot
