#include "cag/free_word.hpp"

#include <algorithm>
#include <stdexcept>

#include "cag/errors.hpp"

namespace cag {

namespace {

void push_reduced(std::vector<std::int8_t>& letters, int letter) {
  if (!letters.empty() && letters.back() == -letter) {
    letters.pop_back();
  } else {
    letters.push_back(static_cast<std::int8_t>(letter));
  }
}

}  // namespace

FreeWord FreeWord::generator(int index, bool inverted) {
  if (index < 1 || index > 26) {
    throw std::invalid_argument("generator index must be in 1..26");
  }
  FreeWord w;
  w.letters_.push_back(static_cast<std::int8_t>(inverted ? -index : index));
  return w;
}

FreeWord FreeWord::from_letters(const std::vector<int>& letters) {
  FreeWord w;
  for (int l : letters) {
    if (l == 0 || l > 26 || l < -26) {
      throw std::invalid_argument("letter out of range");
    }
    push_reduced(w.letters_, l);
  }
  return w;
}

FreeWord FreeWord::parse(std::string_view text) {
  if (text == "e") {
    return FreeWord{};
  }
  FreeWord w;
  for (char c : text) {
    int letter = 0;
    if (c >= 'a' && c <= 'z') {
      letter = c - 'a' + 1;
    } else if (c >= 'A' && c <= 'Z') {
      letter = -(c - 'A' + 1);
    } else {
      throw ParseError(std::string("bad letter '") + c + "' in word");
    }
    push_reduced(w.letters_, letter);
  }
  return w;
}

int FreeWord::max_generator() const {
  int m = 0;
  for (auto l : letters_) {
    m = std::max(m, l < 0 ? -int(l) : int(l));
  }
  return m;
}

FreeWord FreeWord::inverse() const {
  FreeWord w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    w.letters_.push_back(static_cast<std::int8_t>(-*it));
  }
  return w;
}

FreeWord FreeWord::operator*(const FreeWord& rhs) const {
  FreeWord w = *this;
  for (auto l : rhs.letters_) {
    push_reduced(w.letters_, l);
  }
  return w;
}

std::vector<std::int64_t> FreeWord::exponent_vector(int dimensions) const {
  std::vector<std::int64_t> v(static_cast<std::size_t>(dimensions), 0);
  for (auto l : letters_) {
    int g = l < 0 ? -int(l) : int(l);
    if (g > dimensions) {
      throw std::invalid_argument("word uses a generator beyond the rank");
    }
    v[static_cast<std::size_t>(g - 1)] += (l < 0 ? -1 : 1);
  }
  return v;
}

std::int64_t FreeWord::exponent_sum() const {
  std::int64_t s = 0;
  for (auto l : letters_) {
    s += (l < 0 ? -1 : 1);
  }
  return s;
}

std::string FreeWord::str() const {
  if (letters_.empty()) {
    return "e";
  }
  std::string s;
  s.reserve(letters_.size());
  for (auto l : letters_) {
    s.push_back(l < 0 ? static_cast<char>('A' - l - 1)
                      : static_cast<char>('a' + l - 1));
  }
  return s;
}

int letter_rank(int letter) {
  int g = letter < 0 ? -letter : letter;
  return 2 * (g - 1) + (letter < 0 ? 1 : 0);
}

bool shortlex_less(const FreeWord& a, const FreeWord& b) {
  if (a.length() != b.length()) {
    return a.length() < b.length();
  }
  const auto& la = a.letters();
  const auto& lb = b.letters();
  for (std::size_t i = 0; i < la.size(); ++i) {
    int ra = letter_rank(la[i]);
    int rb = letter_rank(lb[i]);
    if (ra != rb) {
      return ra < rb;
    }
  }
  return false;
}

}  // namespace cag
