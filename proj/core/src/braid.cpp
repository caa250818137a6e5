#include "braidfield/braid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "braidfield/error.hpp"

namespace braidfield {

BraidWord::BraidWord(int strands, std::vector<Letter> letters)
    : strands_(strands), letters_(std::move(letters)) {
  if (strands_ < 1) throw Error(ErrorKind::InvalidArgument, "strand count must be positive");
  for (const Letter& l : letters_) {
    if (l.index < 1 || l.index > strands_ - 1) {
      throw Error(ErrorKind::IndexOutOfRange, "generator index " + std::to_string(l.index) +
                                                  " outside [1, " + std::to_string(strands_ - 1) + "]");
    }
    if (l.sign != 1 && l.sign != -1) throw Error(ErrorKind::MalformedWord, "letter sign must be +-1");
  }
}

int BraidWord::exponent_sum() const noexcept {
  int sum = 0;
  for (const Letter& l : letters_) sum += l.sign;
  return sum;
}

BraidWord BraidWord::power(int r) const {
  if (r < 1) throw Error(ErrorKind::InvalidArgument, "braid power must be positive");
  std::vector<Letter> out;
  out.reserve(letters_.size() * static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) out.insert(out.end(), letters_.begin(), letters_.end());
  return BraidWord(strands_, std::move(out));
}

BraidWord BraidWord::rotated(std::size_t shift) const {
  if (letters_.empty()) return *this;
  std::vector<Letter> out(letters_.size());
  for (std::size_t k = 0; k < letters_.size(); ++k) out[k] = letters_[(k + shift) % letters_.size()];
  return BraidWord(strands_, std::move(out));
}

std::string BraidWord::to_string() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < letters_.size(); ++k) {
    if (k) os << ' ';
    os << letters_[k].sign * letters_[k].index;
  }
  return os.str();
}

namespace {

BraidWord finish(std::vector<Letter> letters, std::optional<int> strands) {
  if (letters.empty() && !strands) {
    throw Error(ErrorKind::TrivialNeedsStrands, "empty word requires an explicit strand count");
  }
  int s = 0;
  if (strands) {
    s = *strands;
  } else {
    for (const Letter& l : letters) s = std::max(s, l.index + 1);
  }
  return BraidWord(s, std::move(letters));
}

}  // namespace

BraidWord parse_braid_word(std::string_view text, std::optional<int> strands) {
  std::vector<Letter> letters;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string_view token = text.substr(pos, end - pos);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
      throw Error(ErrorKind::MalformedWord, "token '" + std::string(text.substr(pos, end - pos)) + "' is not an integer");
    }
    if (value == 0) throw Error(ErrorKind::MalformedWord, "zero is not a generator");
    letters.push_back({std::abs(value), value > 0 ? 1 : -1});
    pos = end;
  }
  return finish(std::move(letters), strands);
}

BraidWord parse_letter_word(std::string_view text, std::optional<int> strands) {
  std::vector<Letter> letters;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c >= 'a' && c <= 'z') {
      letters.push_back({c - 'a' + 1, 1});
    } else if (c >= 'A' && c <= 'Z') {
      letters.push_back({c - 'A' + 1, -1});
    } else {
      throw Error(ErrorKind::MalformedWord, std::string("unexpected character '") + c + "'");
    }
  }
  return finish(std::move(letters), strands);
}

BraidWord parse_any_word(std::string_view text, std::optional<int> strands) {
  bool alpha = std::any_of(text.begin(), text.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); });
  return alpha ? parse_letter_word(text, strands) : parse_braid_word(text, strands);
}

int Components::max_cycle_length() const noexcept {
  int m = 0;
  for (const Cycle& c : cycles) m = std::max(m, c.length());
  return m;
}

Components components(const BraidWord& b) {
  const int s = b.strands();
  // at[p]: strand currently at position p.
  std::vector<int> at(s);
  for (int p = 0; p < s; ++p) at[p] = p;
  for (const Letter& l : b.letters()) std::swap(at[l.index - 1], at[l.index]);

  Components out;
  out.permutation.assign(s, 0);
  for (int p = 0; p < s; ++p) out.permutation[at[p]] = p;

  out.label_of.assign(s, StrandLabel{-1, -1});
  for (int start = 0; start < s; ++start) {
    if (out.label_of[start].component >= 0) continue;
    Cycle cycle;
    int c = static_cast<int>(out.cycles.size());
    for (int p = start; out.label_of[p].component < 0; p = out.permutation[p]) {
      out.label_of[p] = {c, cycle.length()};
      cycle.strands.push_back(p);
    }
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

PositionChart position_chart(const BraidWord& b, const Components& comps) {
  const int s = b.strands();
  std::vector<int> at(s);
  for (int p = 0; p < s; ++p) at[p] = p;

  auto snapshot = [&] {
    std::vector<StrandLabel> chart(s);
    for (int p = 0; p < s; ++p) chart[p] = comps.label(at[p]);
    return chart;
  };

  PositionChart out;
  out.charts.push_back(snapshot());
  for (const Letter& l : b.letters()) {
    // Positive sigma_i: the strand at position i passes over position i+1.
    int upper = at[l.index - 1];
    int lower = at[l.index];
    out.letters.push_back(l.sign > 0 ? Overpass{comps.label(upper), comps.label(lower)}
                                     : Overpass{comps.label(lower), comps.label(upper)});
    std::swap(at[l.index - 1], at[l.index]);
    out.charts.push_back(snapshot());
  }
  return out;
}

PositionChart position_chart(const BraidWord& b) { return position_chart(b, components(b)); }

int beta(const BraidWord& b) {
  const std::size_t len = b.length();
  int alternations = 0;
  std::vector<bool> used(static_cast<std::size_t>(b.strands()), false);
  for (std::size_t j = 0; j < len; ++j) {
    const Letter& here = b[j];
    used[static_cast<std::size_t>(here.index)] = true;
    for (std::size_t k = 1; k <= len; ++k) {
      const Letter& next = b[(j + k) % len];
      if (next.index != here.index) continue;
      if (next.sign != here.sign) ++alternations;
      break;
    }
  }
  int missing = 0;
  for (int i = 1; i <= b.strands() - 1; ++i) {
    if (!used[static_cast<std::size_t>(i)]) ++missing;
  }
  return alternations + missing;
}

bool is_strictly_homogeneous(const BraidWord& b) { return beta(b) == 0; }

BraidSignature signature(const BraidWord& b) {
  Components comps = components(b);
  BraidSignature sig;
  sig.permutation = comps.permutation;
  sig.exponent_sum = b.exponent_sum();
  std::vector<int> at(b.strands());
  for (int p = 0; p < b.strands(); ++p) at[p] = p;
  for (const Letter& l : b.letters()) {
    int x = at[l.index - 1], y = at[l.index];
    sig.pair_counts[{std::min(x, y), std::max(x, y)}] += l.sign;
    std::swap(at[l.index - 1], at[l.index]);
  }
  std::erase_if(sig.pair_counts, [](const auto& kv) { return kv.second == 0; });
  return sig;
}

std::map<std::pair<int, int>, int> component_crossings(const BraidWord& b, const Components& comps) {
  std::map<std::pair<int, int>, int> counts;
  std::vector<int> at(b.strands());
  for (int p = 0; p < b.strands(); ++p) at[p] = p;
  for (const Letter& l : b.letters()) {
    int cx = comps.label(at[l.index - 1]).component;
    int cy = comps.label(at[l.index]).component;
    counts[{std::min(cx, cy), std::max(cx, cy)}] += 1;
    std::swap(at[l.index - 1], at[l.index]);
  }
  return counts;
}

}  // namespace braidfield
