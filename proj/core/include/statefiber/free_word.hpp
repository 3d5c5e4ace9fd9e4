#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace statefiber {

/// u_gen^exp with gen >= 1 and exp = +1 or -1.
struct Letter {
  int gen = 1;
  int exp = 1;

  Letter inverse() const noexcept { return {gen, -exp}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Word in the free group on u_1, u_2, ...; not necessarily reduced.
using FreeWord = std::vector<Letter>;

FreeWord reduce(const FreeWord& w);
bool is_reduced(const FreeWord& w) noexcept;
FreeWord inverse(const FreeWord& w);
FreeWord concat(const FreeWord& a, const FreeWord& b);
int max_generator(const FreeWord& w) noexcept;

/// Parses "u1^-1 u5 u1^-1" or "u1^-1u5u1^-1"; `^k` expands to |k| letters. An
/// empty string or "1" is the identity. The result is not reduced.
FreeWord parse_word(std::string_view text);
/// Splits on ';' and parses each part.
std::vector<FreeWord> parse_words(std::string_view text);
/// Formats runs of a letter with exponents, e.g. "u1^-2 u5"; identity is "1".
std::string format_word(const FreeWord& w);

}  // namespace statefiber
