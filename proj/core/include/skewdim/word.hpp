#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace skewdim {

/// Finite word over the branch alphabet {1, 2}.
class Word {
public:
  Word() = default;

  static Word parse(std::string_view text) {
    Word w;
    w.symbols_.reserve(text.size());
    for (char ch : text) {
      if (ch != '1' && ch != '2') throw std::invalid_argument("word symbols must be '1' or '2'");
      w.symbols_.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return w;
  }

  /// k-th word of the given length in lexicographic order (k from 0).
  static Word from_index(std::uint64_t k, int length) {
    if (length < 0 || length > 62) throw std::invalid_argument("word length out of range");
    Word w;
    w.symbols_.resize(static_cast<std::size_t>(length));
    for (int i = length - 1; i >= 0; --i) {
      w.symbols_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(1 + (k & 1));
      k >>= 1;
    }
    return w;
  }

  [[nodiscard]] std::size_t size() const { return symbols_.size(); }
  [[nodiscard]] bool empty() const { return symbols_.empty(); }
  [[nodiscard]] int at(std::size_t i) const { return symbols_.at(i); }

  void push_back(int symbol) {
    if (symbol != 1 && symbol != 2) throw std::invalid_argument("word symbols must be 1 or 2");
    symbols_.push_back(static_cast<std::uint8_t>(symbol));
  }

  [[nodiscard]] Word appended(int symbol) const {
    Word w = *this;
    w.push_back(symbol);
    return w;
  }

  [[nodiscard]] Word prepended(int symbol) const {
    if (symbol != 1 && symbol != 2) throw std::invalid_argument("word symbols must be 1 or 2");
    Word w;
    w.symbols_.reserve(symbols_.size() + 1);
    w.symbols_.push_back(static_cast<std::uint8_t>(symbol));
    w.symbols_.insert(w.symbols_.end(), symbols_.begin(), symbols_.end());
    return w;
  }

  [[nodiscard]] std::string str() const {
    std::string s;
    s.reserve(symbols_.size());
    for (auto sym : symbols_) s.push_back(static_cast<char>('0' + sym));
    return s;
  }

  friend bool operator==(const Word&, const Word&) = default;

private:
  std::vector<std::uint8_t> symbols_;
};

/// One application of the left shift: drops the first symbol.
inline Word shift(const Word& w) {
  if (w.empty()) throw std::invalid_argument("cannot shift the empty word");
  Word out;
  for (std::size_t i = 1; i < w.size(); ++i) out.push_back(w.at(i));
  return out;
}

}  // namespace skewdim
