#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace augtree {

using Letter = std::uint16_t;

/// Maximum alphabet size representable by the one-character-per-letter text form.
inline constexpr std::size_t kMaxAlphabet = 36;

/// A finite word over {0, ..., N-1}; the empty word is the root.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  /// Parses "011" style text (digits then lowercase letters for 10..35).
  /// The empty string is the root word.
  static Word parse(std::string_view text);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  std::span<const Letter> letters() const { return letters_; }

  Word prefix(std::size_t length) const;
  bool is_prefix_of(const Word& other) const;
  Word extended(Letter letter) const;
  void push_back(Letter letter) { letters_.push_back(letter); }

  /// Concatenation uv.
  friend Word operator+(const Word& u, const Word& v);

  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    // Shorter words first, then lexicographic.
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<Letter> letters_;
};

char letter_char(Letter letter);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace augtree
