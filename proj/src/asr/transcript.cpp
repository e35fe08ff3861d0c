#include "din/asr/transcript.hpp"

#include <array>
#include <cctype>

namespace din::asr {

std::string ascii_fold(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

DigitLexicon DigitLexicon::dutch_default() {
  DigitLexicon lex;
  lex.add("nul", 0);
  // "een" is both the article and the digit; the DIN response vocabulary is
  // digits, so it maps to 1. Known over-trigger, kept intentionally.
  lex.add("een", 1);
  lex.add("\xc3\xa9\xc3\xa9n", 1); // één
  lex.add("twee", 2);
  lex.add("drie", 3);
  lex.add("vier", 4);
  lex.add("vijf", 5);
  lex.add("zes", 6);
  lex.add("zeven", 7);
  lex.add("acht", 8);
  lex.add("negen", 9);
  for (int d = 0; d <= 9; ++d) lex.add(std::to_string(d), d);
  return lex;
}

void DigitLexicon::add(const std::string& surface, int digit) {
  if (digit < 0 || digit > 9) throw ConfigError("lexicon digit out of range");
  const std::string key = ascii_fold(surface);
  auto it = map_.find(key);
  if (it != map_.end() && it->second != digit)
    throw ConfigError("lexicon surface form '" + key + "' already maps to digit " +
                      std::to_string(it->second));
  map_[key] = digit;
}

bool DigitLexicon::lookup(const std::string& token, int& digit) const {
  auto it = map_.find(ascii_fold(token));
  if (it == map_.end()) return false;
  digit = it->second;
  return true;
}

void DigitLexicon::validate() const {
  std::array<bool, 10> covered{};
  for (const auto& [surface, digit] : map_) covered[static_cast<std::size_t>(digit)] = true;
  for (int d = 0; d <= 9; ++d)
    if (!covered[static_cast<std::size_t>(d)])
      throw ConfigError("lexicon has no surface form for digit " + std::to_string(d));
}

const std::string& DigitLexicon::canonical_word(int digit) {
  static const std::array<std::string, 10> words = {
      "nul", "een", "twee", "drie", "vier", "vijf", "zes", "zeven", "acht", "negen"};
  return words.at(static_cast<std::size_t>(digit));
}

std::vector<int> extract_digits(const Transcript& t, const DigitLexicon& lex) {
  std::vector<int> out;
  out.reserve(t.tokens.size());
  for (const auto& tok : t.tokens) {
    int d = 0;
    if (lex.lookup(tok, d)) out.push_back(d);
  }
  return out;
}

} // namespace din::asr
