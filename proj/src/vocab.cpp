#include "groot/vocab.hpp"

#include <algorithm>

namespace groot {

void Vocab::add(const std::string& symbol) {
  if (index_.count(symbol)) throw Error("duplicate vocab symbol '" + symbol + "'");
  index_[symbol] = static_cast<int>(symbols_.size());
  symbols_.push_back(symbol);
}

Vocab Vocab::build(std::vector<std::string> words, int max_sentinels, LabelInventory labels) {
  for (const auto& label : labels)
    if (label == kInsideTag || label == kOutsideTag || sentinel_index(label))
      throw Error("label '" + label + "' collides with a tag symbol");
  Vocab v;
  v.add("<pad>");
  v.add("<bos>");
  v.add("</s>");
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  for (const auto& w : words) {
    if (v.contains(w) || sentinel_index(w))
      throw Error("word '" + w + "' collides with a reserved symbol");
    // words identical to a tag symbol share the tag's id, added below
    if (w == kInsideTag || w == kOutsideTag || has_label(labels, w)) continue;
    v.add(w);
  }
  v.first_sentinel_ = v.size();
  v.sentinel_count_ = max_sentinels;
  for (int i = 0; i < max_sentinels; ++i) v.add(sentinel_symbol(i));
  for (const auto& label : labels) v.add(label);
  v.add(kInsideTag);
  v.add(kOutsideTag);
  v.labels_ = std::move(labels);
  return v;
}

int Vocab::id(const std::string& symbol) const {
  auto it = index_.find(symbol);
  if (it == index_.end()) throw UnknownToken("unknown token '" + symbol + "'");
  return it->second;
}

const std::string& Vocab::symbol(int id) const {
  if (id < 0 || id >= size()) throw UnknownToken("token id " + std::to_string(id) + " out of range");
  return symbols_[static_cast<std::size_t>(id)];
}

int Vocab::sentinel_id(int position) const {
  if (position < 0 || position >= sentinel_count_)
    throw SequenceTooLong("sentinel position " + std::to_string(position) + " exceeds budget " +
                          std::to_string(sentinel_count_));
  return first_sentinel_ + position;
}

std::vector<int> Vocab::encode(const std::vector<std::string>& symbols) const {
  std::vector<int> ids;
  ids.reserve(symbols.size());
  for (const auto& s : symbols) ids.push_back(id(s));
  return ids;
}

std::vector<std::string> Vocab::decode(const std::vector<int>& ids) const {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(symbol(id));
  return out;
}

}  // namespace groot
