#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "schottky/family.hpp"
#include "schottky/moebius.hpp"

namespace schottky {

/// Free group on g loxodromic generators, with their inverses and fixed
/// points cached.
class SchottkyGroup {
public:
  /// Builds the group from circle pairs and runs the disjointness checks.
  explicit SchottkyGroup(std::vector<CirclePair> pairs);

  static SchottkyGroup from_family(const FamilyParams& params);

  int genus() const { return static_cast<int>(generators_.size()); }
  const std::vector<MoebiusMap>& generators() const { return generators_; }
  const std::vector<MoebiusMap>& inverses() const { return inverses_; }
  const std::vector<CirclePair>& circle_pairs() const { return pairs_; }
  const std::vector<FixedPointPair>& fixed_points() const { return fixed_; }
  const ValidationReport& validation() const { return validation_; }
  bool classical() const { return validation_.classical; }

  /// Letter for a signed 1-based tag: +j is f_j, -j is f_j^{-1}.
  const MoebiusMap& letter(int tag) const;

private:
  std::vector<CirclePair> pairs_;
  std::vector<MoebiusMap> generators_;
  std::vector<MoebiusMap> inverses_;
  std::vector<FixedPointPair> fixed_;
  ValidationReport validation_;
};

/// Reduced word with its leftmost and rightmost letters. Tags are signed
/// 1-based generator indices; the identity has both tags 0 and length 0.
struct GroupWord {
  MoebiusMap matrix;
  std::int8_t first_tag = 0;
  std::int8_t last_tag = 0;
  std::uint8_t length = 0;
};

/// All reduced words up to a maximal length, grouped by exact length and
/// kept in breadth-first order within each length.
class WordSet {
public:
  WordSet() = default;
  WordSet(int genus, std::vector<std::vector<GroupWord>> by_length);

  int genus() const { return genus_; }
  int max_length() const { return static_cast<int>(by_length_.size()) - 1; }
  std::span<const GroupWord> level(int k) const { return by_length_.at(k); }
  std::size_t size() const;

  template <typename F>
  void for_each(F&& f) const {
    for (const auto& lvl : by_length_)
      for (const auto& w : lvl) f(w);
  }

private:
  int genus_ = 0;
  std::vector<std::vector<GroupWord>> by_length_;
};

inline constexpr std::uint64_t kDefaultWordCap = 100'000'000;

/// Word cap from SCHOTTKY_WORD_CAP if set and parseable, else the default.
std::uint64_t default_word_cap();

/// 1 + sum_{k=1..L} 2g (2g-1)^{k-1}, saturating on overflow.
std::uint64_t projected_word_count(int genus, int max_length);

/// Breadth-first enumeration by right multiplication w -> w f_j^{+-1}; each
/// new word costs one 2x2 product. Letters are tried in the order
/// f_1, f_1^{-1}, f_2, f_2^{-1}, ... and the inverse of the last letter is
/// skipped. Throws DepthLimit if the projected count exceeds the cap.
WordSet generate_words(const SchottkyGroup& group, int max_length,
                       std::uint64_t cap = default_word_cap());

/// Representatives of G / <f_n>: words whose last letter is not f_n^{+-1}.
inline bool is_coset_rep(const GroupWord& w, int n) { return w.last_tag != n && w.last_tag != -n; }

/// Representatives of <f_m> \ G / <f_n>.
inline bool is_double_coset_rep(const GroupWord& w, int m, int n) {
  return w.first_tag != m && w.first_tag != -m && is_coset_rep(w, n);
}

std::vector<GroupWord> coset_representatives(const WordSet& words, int n);
std::vector<GroupWord> double_coset_representatives(const WordSet& words, int m, int n);

/// Versioned little-endian dump: magic "SKWS", u32 version, u32 genus,
/// u32 max length, u64 count, then per word 8 doubles (re/im of a, b, c, d)
/// followed by i8 first tag, i8 last tag, u8 length.
void write_wordset(const WordSet& words, const std::filesystem::path& path);
WordSet read_wordset(const std::filesystem::path& path);

}  // namespace schottky
