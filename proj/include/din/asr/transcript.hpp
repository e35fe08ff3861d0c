#pragma once

#include <map>
#include <string>
#include <vector>

#include "din/errors.hpp"

namespace din::asr {

enum class TranscriptSource { kExternalAsr, kMock, kManualAnnotation };

struct Transcript {
  std::vector<std::string> tokens; // lowercase, no whitespace, order preserved
  TranscriptSource source = TranscriptSource::kMock;
};

// Surface form -> digit. Injective per surface form; every digit has at
// least one form. The default covers Dutch digit words plus numerals, since
// decoder output formatting (words vs "5") is not guaranteed.
class DigitLexicon {
public:
  static DigitLexicon dutch_default();

  // Compound-numeral expansion ("vijfentwintig" -> 5) is deliberately not
  // part of the default; the test filters word-by-word.
  void add(const std::string& surface, int digit);
  bool lookup(const std::string& token, int& digit) const;
  void validate() const; // throws ConfigError when a digit has no surface form

  const std::map<std::string, int>& entries() const { return map_; }

  // Canonical word for synthesizing mock transcripts.
  static const std::string& canonical_word(int digit);

private:
  std::map<std::string, int> map_;
};

// In-order digits of every token found in the lexicon; all other tokens
// dropped, no deduplication. Tokens are case-folded (ASCII) before lookup.
std::vector<int> extract_digits(const Transcript& t, const DigitLexicon& lex);

// ASCII lowercase; non-ASCII bytes pass through untouched.
std::string ascii_fold(const std::string& s);

} // namespace din::asr
