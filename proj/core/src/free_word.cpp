#include "statefiber/free_word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>

#include "statefiber/error.hpp"

namespace statefiber {

FreeWord reduce(const FreeWord& w) {
  FreeWord out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (!out.empty() && out.back() == l.inverse()) out.pop_back();
    else out.push_back(l);
  }
  return out;
}

bool is_reduced(const FreeWord& w) noexcept {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1].inverse()) return false;
  return true;
}

FreeWord inverse(const FreeWord& w) {
  FreeWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

FreeWord concat(const FreeWord& a, const FreeWord& b) {
  FreeWord out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

int max_generator(const FreeWord& w) noexcept {
  int m = 0;
  for (const Letter& l : w) m = std::max(m, l.gen);
  return m;
}

namespace {

int read_int(std::string_view s, std::size_t& i, bool allow_sign) {
  std::size_t start = i;
  if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  int v = 0;
  const char* first = s.data() + start + (start < s.size() && s[start] == '+' ? 1 : 0);
  const auto [p, ec] = std::from_chars(first, s.data() + i, v);
  if (ec != std::errc() || p != s.data() + i)
    throw Error(ErrorCode::Syntax, "expected integer at offset " + std::to_string(start));
  return v;
}

}  // namespace

FreeWord parse_word(std::string_view text) {
  FreeWord w;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  const auto first = text.find_first_not_of(" \t\r\n");
  const auto last = text.find_last_not_of(" \t\r\n");
  if (first == std::string_view::npos || text.substr(first, last - first + 1) == "1") return w;
  i = first;
  while (i < text.size()) {
    if (text[i] != 'u' && text[i] != 'U')
      throw Error(ErrorCode::Syntax, "expected 'u' at offset " + std::to_string(i));
    ++i;
    const int gen = read_int(text, i, false);
    if (gen < 1) throw Error(ErrorCode::Syntax, "generator index must be >= 1");
    int exp = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      exp = read_int(text, i, true);
      if (exp == 0) throw Error(ErrorCode::Syntax, "exponent 0");
    }
    const Letter l{gen, exp > 0 ? 1 : -1};
    w.insert(w.end(), static_cast<std::size_t>(std::abs(exp)), l);
    skip();
  }
  return w;
}

std::vector<FreeWord> parse_words(std::string_view text) {
  std::vector<FreeWord> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(';', start), text.size());
    const auto part = text.substr(start, end - start);
    if (part.find_first_not_of(" \t\r\n") != std::string_view::npos) out.push_back(parse_word(part));
    start = end + 1;
  }
  return out;
}

std::string format_word(const FreeWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    const int power = static_cast<int>(j - i) * w[i].exp;
    if (!s.empty()) s += ' ';
    s += 'u' + std::to_string(w[i].gen);
    if (power != 1) s += '^' + std::to_string(power);
    i = j;
  }
  return s;
}

}  // namespace statefiber
