#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace qoincl {

// Malformed input: bad files, unknown names, mismatched alphabets,
// incompatible engine/order selections.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured bound (iteration cap, subset-state cap, word budget) was hit.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation requested on a quasiorder kind that does not support it.
class UnsupportedKindError : public InputError {
 public:
  using InputError::InputError;
};

// An internal invariant failed; always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = w.size();
    for (Symbol s : w) h = (h ^ s) * 0x100000001B3ull + 0x9E3779B9u;
    return h;
  }
};

// (length, lexicographic) order used for every deterministic choice.
inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline Word concat(const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Ordered, duplicate-free set of symbol names. Indices follow declaration order.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names) {
    for (auto& n : names) add(std::move(n));
  }
  Alphabet(std::initializer_list<std::string_view> names) {
    for (auto n : names) add(std::string(n));
  }

  // Appends a new symbol; throws on duplicates or empty names.
  Symbol add(std::string name) {
    if (name.empty()) throw InputError("alphabet symbol names must be non-empty");
    if (index_.contains(name)) throw InputError("duplicate alphabet symbol '" + name + "'");
    const auto id = static_cast<Symbol>(names_.size());
    index_.emplace(name, id);
    names_.push_back(std::move(name));
    return id;
  }

  std::optional<Symbol> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Symbol at(std::string_view name) const {
    if (auto s = find(name)) return *s;
    throw InputError("unknown symbol '" + std::string(name) + "'");
  }

  const std::string& name(Symbol s) const { return names_.at(s); }
  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::vector<std::string>& names() const { return names_; }

  bool contains(const Word& w) const {
    return std::all_of(w.begin(), w.end(), [&](Symbol s) { return s < names_.size(); });
  }

  // Words given as space-separated names; "" is the empty word.
  Word parse_word(std::string_view text) const {
    Word w;
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < text.size() && text[j] != ' ' && text[j] != '\t') ++j;
      if (j > i) w.push_back(at(text.substr(i, j - i)));
      i = j;
    }
    return w;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> index_;
};

inline void check_word(const Alphabet& alphabet, const Word& w) {
  if (!alphabet.contains(w)) throw InputError("word uses a symbol outside the alphabet");
}

// Space-separated symbol names; the empty word prints as "(empty)".
inline std::string format_word(const Alphabet& alphabet, const Word& w) {
  check_word(alphabet, w);
  if (w.empty()) return "(empty)";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += alphabet.name(w[i]);
  }
  return out;
}

// Duplicate-free, insertion-ordered set of words.
class WordSet {
 public:
  WordSet() = default;
  WordSet(std::initializer_list<Word> words) {
    for (const auto& w : words) insert(w);
  }

  bool insert(Word w) {
    if (!index_.insert(w).second) return false;
    words_.push_back(std::move(w));
    return true;
  }
  bool contains(const Word& w) const { return index_.contains(w); }

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  auto begin() const { return words_.begin(); }
  auto end() const { return words_.end(); }
  const Word& operator[](std::size_t i) const { return words_[i]; }
  const std::vector<Word>& words() const { return words_; }

  std::vector<Word> sorted() const {
    std::vector<Word> out = words_;
    std::sort(out.begin(), out.end(), shortlex_less);
    return out;
  }

  // Set equality, ignoring insertion order.
  friend bool operator==(const WordSet& a, const WordSet& b) {
    if (a.size() != b.size()) return false;
    return std::all_of(a.begin(), a.end(), [&](const Word& w) { return b.contains(w); });
  }

 private:
  std::vector<Word> words_;
  std::unordered_set<Word, WordHash> index_;
};

// Component j approximates the language of grammar variable j.
using LangVector = std::vector<WordSet>;

template <class Q>
concept WordQuasiorder = requires(const Q& q, const Word& u, const Word& v) {
  { q.compare(u, v) } -> std::convertible_to<bool>;
  { q.alphabet() } -> std::convertible_to<const Alphabet&>;
};

// X ⊑ Y: every x in X lies above some y in Y, i.e. ↑X ⊆ ↑Y.
template <WordQuasiorder Q>
bool lift_compare(const WordSet& xs, const WordSet& ys, const Q& q) {
  for (const auto& w : xs) check_word(q.alphabet(), w);
  for (const auto& w : ys) check_word(q.alphabet(), w);
  return std::all_of(xs.begin(), xs.end(), [&](const Word& x) {
    return std::any_of(ys.begin(), ys.end(), [&](const Word& y) { return q.compare(y, x); });
  });
}

// Componentwise lifting over n-vectors.
template <WordQuasiorder Q>
bool lift_compare_vec(const LangVector& xs, const LangVector& ys, const Q& q) {
  if (xs.size() != ys.size()) throw InputError("language vectors have different lengths");
  for (std::size_t j = 0; j < xs.size(); ++j)
    if (!lift_compare(xs[j], ys[j], q)) return false;
  return true;
}

}  // namespace qoincl
