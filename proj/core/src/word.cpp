#include "augtree/word.hpp"

#include "augtree/error.hpp"

namespace augtree {

char letter_char(Letter letter) {
  if (letter < 10) return static_cast<char>('0' + letter);
  if (letter < kMaxAlphabet) return static_cast<char>('a' + (letter - 10));
  throw InvalidArgument("letter " + std::to_string(letter) + " has no text form");
}

Word Word::parse(std::string_view text) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) {
    if (c >= '0' && c <= '9') letters.push_back(static_cast<Letter>(c - '0'));
    else if (c >= 'a' && c <= 'z') letters.push_back(static_cast<Letter>(10 + (c - 'a')));
    else throw InvalidArgument("invalid letter '" + std::string(1, c) + "' in word '" + std::string(text) + "'");
  }
  return Word(std::move(letters));
}

Word Word::prefix(std::size_t length) const {
  if (length > letters_.size()) throw InvalidArgument("prefix longer than word");
  return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(length)));
}

bool Word::is_prefix_of(const Word& other) const {
  if (size() > other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (letters_[i] != other.letters_[i]) return false;
  return true;
}

Word Word::extended(Letter letter) const {
  Word w = *this;
  w.letters_.push_back(letter);
  return w;
}

Word operator+(const Word& u, const Word& v) {
  Word w = u;
  w.letters_.insert(w.letters_.end(), v.letters_.begin(), v.letters_.end());
  return w;
}

std::string Word::to_string() const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) s.push_back(letter_char(l));
  return s;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ w.size();
  for (Letter l : w.letters()) {
    h ^= l + 1;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace augtree
