#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace braidfield {

/// One Artin generator sigma_index^sign. `index` is 1-based.
struct Letter {
  int index = 1;
  int sign = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A braid word on `strands` strands. The empty word is the trivial braid and
/// is only constructible with an explicit strand count.
class BraidWord {
 public:
  BraidWord(int strands, std::vector<Letter> letters);

  static BraidWord trivial(int strands) { return BraidWord(strands, {}); }

  int strands() const noexcept { return strands_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool is_trivial() const noexcept { return letters_.empty(); }
  std::span<const Letter> letters() const noexcept { return letters_; }
  const Letter& operator[](std::size_t k) const { return letters_[k]; }

  int exponent_sum() const noexcept;

  /// Concatenation of `r` copies of the word.
  BraidWord power(int r) const;
  /// Cyclic rotation: letter k moves to position k - shift (mod length).
  BraidWord rotated(std::size_t shift) const;

  /// Signed integer tokens, e.g. "2 -1 2 1 1 1".
  std::string to_string() const;

  friend bool operator==(const BraidWord&, const BraidWord&) = default;

 private:
  int strands_;
  std::vector<Letter> letters_;
};

/// Parses whitespace separated nonzero integers. Without `strands` the strand
/// count is max|token| + 1.
BraidWord parse_braid_word(std::string_view text, std::optional<int> strands = std::nullopt);

/// Compact letter form: 'a' = sigma_1, 'A' = sigma_1^-1, 'b' = sigma_2, ...
BraidWord parse_letter_word(std::string_view text, std::optional<int> strands = std::nullopt);

/// Dispatches to the letter parser when the text contains alphabetic characters.
BraidWord parse_any_word(std::string_view text, std::optional<int> strands = std::nullopt);

/// Strand identity (component C, position j along the component). Strands are
/// otherwise identified by their starting position 0..s-1 ("strand id").
struct StrandLabel {
  int component = 0;
  int index = 0;

  friend auto operator<=>(const StrandLabel&, const StrandLabel&) = default;
};

struct Cycle {
  /// Strand ids in following order: strand k+1 starts where strand k ends.
  std::vector<int> strands;

  int length() const noexcept { return static_cast<int>(strands.size()); }
};

/// Permutation of the braid and its cycle decomposition. `permutation[p]` is
/// the end position of the strand that starts at position p (0-based).
struct Components {
  std::vector<int> permutation;
  std::vector<Cycle> cycles;
  std::vector<StrandLabel> label_of;  // indexed by strand id

  int count() const noexcept { return static_cast<int>(cycles.size()); }
  int strands() const noexcept { return static_cast<int>(permutation.size()); }
  const StrandLabel& label(int strand) const { return label_of.at(strand); }
  int strand(const StrandLabel& label) const { return cycles.at(label.component).strands.at(label.index); }
  int cycle_length(int component) const { return cycles.at(component).length(); }
  int max_cycle_length() const noexcept;
};

Components components(const BraidWord& b);

struct Overpass {
  StrandLabel over;
  StrandLabel under;
};

/// Which strand sits at which position between consecutive letters.
/// `charts[k][p]` is the strand at 0-based position p during interval k+1;
/// `charts.back()` is the exit chart after the last letter.
struct PositionChart {
  std::vector<std::vector<StrandLabel>> charts;
  std::vector<Overpass> letters;

  std::size_t intervals() const noexcept { return letters.size(); }
  const std::vector<StrandLabel>& entry() const { return charts.front(); }
  const std::vector<StrandLabel>& exit() const { return charts.back(); }
};

PositionChart position_chart(const BraidWord& b, const Components& comps);
PositionChart position_chart(const BraidWord& b);

int beta(const BraidWord& b);
bool is_strictly_homogeneous(const BraidWord& b);

/// Combinatorial data that the verifier reads back from a nodal set.
struct BraidSignature {
  std::vector<int> permutation;
  int exponent_sum = 0;
  /// Signed crossing count per unordered pair of strand ids (first < second).
  std::map<std::pair<int, int>, int> pair_counts;

  friend bool operator==(const BraidSignature&, const BraidSignature&) = default;
};

BraidSignature signature(const BraidWord& b);

/// Counts used by the degree bounds: crossings per unordered component pair,
/// keyed (min, max); within-component crossings are keyed (C, C).
std::map<std::pair<int, int>, int> component_crossings(const BraidWord& b, const Components& comps);

}  // namespace braidfield
