#include "groot/span.hpp"

#include <algorithm>
#include <cctype>

namespace groot {

bool has_label(const LabelInventory& labels, const std::string& name) {
  return std::find(labels.begin(), labels.end(), name) != labels.end();
}

void validate_tagged(const TaggedSequence& seq) {
  const int n = static_cast<int>(seq.tokens.size());
  for (const auto& tok : seq.tokens) {
    if (tok.empty()) throw Error("empty token");
    for (char ch : tok)
      if (std::isspace(static_cast<unsigned char>(ch))) throw Error("token contains whitespace: '" + tok + "'");
  }
  int prev_end = 0;
  for (const auto& span : seq.spans) {
    if (span.label.empty()) throw Error("span with empty label");
    if (!(0 <= span.start && span.start < span.end && span.end <= n))
      throw Error("span indices out of range: [" + std::to_string(span.start) + ", " +
                  std::to_string(span.end) + ") over " + std::to_string(n) + " tokens");
    if (span.start < prev_end) throw Error("spans overlap or are unsorted");
    prev_end = span.end;
  }
}

namespace {

void sort_spans(std::vector<LabeledSpan>& spans) {
  std::sort(spans.begin(), spans.end(),
            [](const LabeledSpan& a, const LabeledSpan& b) { return a.start < b.start; });
}

struct Word {
  std::string text;
  std::size_t offset;
};

std::vector<Word> split_words(const std::string& text) {
  std::vector<Word> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    words.push_back({text.substr(start, i - start), start});
  }
  return words;
}

}  // namespace

BracketParse parse_bracket(const std::string& text, const LabelInventory& labels, ParseMode mode) {
  BracketParse out;
  auto fail = [&](const std::string& msg, std::size_t offset) {
    if (mode == ParseMode::Strict) throw MalformedBracket(msg, offset);
    out.diagnostics.push_back({offset, msg});
  };

  bool inside = false;
  bool fragment_ok = false;  // false while consuming a malformed fragment
  std::string open_label;
  int span_start = 0;
  std::size_t open_offset = 0;

  auto close_span = [&](std::size_t end_offset) {
    const int span_end = static_cast<int>(out.seq.tokens.size());
    if (fragment_ok && span_end > span_start)
      out.seq.spans.push_back({open_label, span_start, span_end});
    else if (fragment_ok)
      fail("empty span for label '" + open_label + "'", end_offset);
    inside = false;
  };

  for (const Word& w : split_words(text)) {
    if (w.text.front() == '[') {
      if (inside) {
        fail("unclosed span before '" + w.text + "'", w.offset);
        inside = false;
      }
      std::string label = w.text.substr(1);
      bool self_closed = !label.empty() && label.back() == ']';
      if (self_closed) label.pop_back();
      if (label.empty()) {
        fail("bracket without label", w.offset);
        continue;
      }
      inside = true;
      fragment_ok = true;
      open_label = label;
      span_start = static_cast<int>(out.seq.tokens.size());
      open_offset = w.offset;
      if (!has_label(labels, label)) {
        fail("unknown label '" + label + "'", w.offset);
        fragment_ok = false;
      }
      if (self_closed) close_span(w.offset);
      continue;
    }
    std::string tok = w.text;
    bool closes = false;
    if (inside && tok.size() > 1 && tok.back() == ']') {
      closes = true;
      tok.pop_back();
    } else if (tok == "]") {
      if (inside) {
        close_span(w.offset);
      } else {
        fail("stray ']'", w.offset);
      }
      continue;
    } else if (!inside && tok.back() == ']') {
      fail("stray ']' after '" + tok + "'", w.offset);
      tok.pop_back();
    }
    if (!tok.empty()) out.seq.tokens.push_back(tok);
    if (closes) close_span(w.offset);
  }
  if (inside) fail("unclosed span for label '" + open_label + "'", open_offset);

  validate_tagged(out.seq);
  return out;
}

std::string render_bracket(const TaggedSequence& seq) {
  std::string out;
  std::size_t next_span = 0;
  for (int i = 0; i < static_cast<int>(seq.tokens.size()); ++i) {
    if (!out.empty()) out += ' ';
    if (next_span < seq.spans.size() && seq.spans[next_span].start == i)
      out += '[' + seq.spans[next_span].label + ' ';
    out += seq.tokens[i];
    if (next_span < seq.spans.size() && seq.spans[next_span].end == i + 1) {
      out += ']';
      ++next_span;
    }
  }
  return out;
}

std::string sentinel_symbol(int index) { return "<s_" + std::to_string(index) + ">"; }

std::optional<int> sentinel_index(const std::string& symbol) {
  if (symbol.size() < 5 || symbol.compare(0, 3, "<s_") != 0 || symbol.back() != '>')
    return std::nullopt;
  int value = 0;
  for (std::size_t i = 3; i + 1 < symbol.size(); ++i) {
    char ch = symbol[i];
    if (ch < '0' || ch > '9') return std::nullopt;
    value = value * 10 + (ch - '0');
  }
  return value;
}

std::vector<std::string> to_sentinel_tag(const TaggedSequence& seq, int max_sentinels) {
  const int n = static_cast<int>(seq.tokens.size());
  if (n > max_sentinels)
    throw SequenceTooLong("sequence of " + std::to_string(n) + " tokens exceeds sentinel budget " +
                          std::to_string(max_sentinels));
  std::vector<std::string> out;
  out.reserve(2 * seq.tokens.size());
  std::size_t next_span = 0;
  for (int i = 0; i < n; ++i) {
    out.push_back(sentinel_symbol(i));
    if (next_span < seq.spans.size() && seq.spans[next_span].start == i) {
      out.push_back(seq.spans[next_span].label);
    } else if (next_span < seq.spans.size() && seq.spans[next_span].start < i &&
               i < seq.spans[next_span].end) {
      out.push_back(kInsideTag);
    } else {
      out.push_back(kOutsideTag);
    }
    if (next_span < seq.spans.size() && seq.spans[next_span].end == i + 1) ++next_span;
  }
  return out;
}

TaggedSequence from_sentinel_tag(const std::vector<std::string>& decoder_tokens,
                                 const std::vector<std::string>& input_tokens,
                                 const LabelInventory& labels) {
  const int n = static_cast<int>(input_tokens.size());
  enum class Kind { Outside, Inside, Label };
  std::vector<Kind> kinds(static_cast<std::size_t>(n), Kind::Outside);
  std::vector<std::string> span_labels(static_cast<std::size_t>(n));

  int last_assigned = -1;
  for (std::size_t p = 0; p < decoder_tokens.size(); ++p) {
    auto idx = sentinel_index(decoder_tokens[p]);
    if (!idx) continue;  // stray tags and other junk between sentinels
    // Sentinels must arrive in strictly increasing order; offenders and
    // out-of-range indices are dropped so decoding stays total.
    if (*idx <= last_assigned || *idx >= n) continue;
    Kind kind = Kind::Outside;
    std::string label;
    if (p + 1 < decoder_tokens.size() && !sentinel_index(decoder_tokens[p + 1])) {
      const std::string& tag = decoder_tokens[p + 1];
      if (tag == kInsideTag) {
        kind = Kind::Inside;
      } else if (has_label(labels, tag)) {
        kind = Kind::Label;
        label = tag;
      }  // unknown tags (incl. "O") read as Outside
      ++p;
    }
    kinds[static_cast<std::size_t>(*idx)] = kind;
    span_labels[static_cast<std::size_t>(*idx)] = label;
    last_assigned = *idx;
  }

  TaggedSequence out;
  out.tokens = input_tokens;
  for (int i = 0; i < n; ++i) {
    if (kinds[static_cast<std::size_t>(i)] != Kind::Label) continue;  // dangling "I" stays untagged
    int end = i + 1;
    while (end < n && kinds[static_cast<std::size_t>(end)] == Kind::Inside) ++end;
    out.spans.push_back({span_labels[static_cast<std::size_t>(i)], i, end});
    i = end - 1;
  }
  validate_tagged(out);
  return out;
}

TaggedSequence bio_import(const std::vector<std::string>& rows, long line_base) {
  TaggedSequence out;
  std::string open_label;
  int open_start = -1;
  auto close = [&](int end) {
    if (open_start >= 0) out.spans.push_back({open_label, open_start, end});
    open_start = -1;
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const long line = line_base + static_cast<long>(i);
    const std::string& row = rows[i];
    auto tab = row.find('\t');
    if (tab == std::string::npos) throw BadRow("expected token<TAB>tag, got '" + row + "'", line);
    std::string token = row.substr(0, tab);
    std::string tag = row.substr(tab + 1);
    if (token.empty()) throw BadRow("empty token", line);
    if (token.find_first_of(" \t") != std::string::npos) throw BadRow("token contains whitespace", line);
    const int pos = static_cast<int>(out.tokens.size());
    out.tokens.push_back(token);
    if (tag == "O") {
      close(pos);
    } else if (tag.size() > 2 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-') {
      std::string label = tag.substr(2);
      if (tag[0] == 'B' || open_start < 0 || open_label != label) {
        // lenient convention: a dangling or label-switching I-X opens a span
        close(pos);
        open_label = label;
        open_start = pos;
      }
    } else {
      throw BadRow("bad BIO tag '" + tag + "'", line);
    }
  }
  close(static_cast<int>(out.tokens.size()));
  validate_tagged(out);
  return out;
}

}  // namespace groot
