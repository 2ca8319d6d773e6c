#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "groot/span.hpp"

namespace groot {

// Dense, stable symbol table shared by encoder inputs and decoder outputs:
// specials, input word types, per-position sentinels, then tag symbols
// (labels + "I" + "O").
class Vocab {
 public:
  static constexpr int kPad = 0;
  static constexpr int kBos = 1;
  static constexpr int kEos = 2;

  Vocab() = default;
  static Vocab build(std::vector<std::string> words, int max_sentinels,
                     LabelInventory labels);

  int size() const { return static_cast<int>(symbols_.size()); }
  int id(const std::string& symbol) const;
  const std::string& symbol(int id) const;
  bool contains(const std::string& symbol) const { return index_.count(symbol) > 0; }

  int sentinel_count() const { return sentinel_count_; }
  int sentinel_id(int position) const;

  const LabelInventory& labels() const { return labels_; }

  std::vector<int> encode(const std::vector<std::string>& symbols) const;
  std::vector<std::string> decode(const std::vector<int>& ids) const;

  const std::vector<std::string>& symbols() const { return symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int> index_;
  int first_sentinel_ = 0;
  int sentinel_count_ = 0;
  LabelInventory labels_;

  void add(const std::string& symbol);
};

}  // namespace groot
