#include "a52/symmetries.hpp"

#include <cctype>

namespace a52 {

const char* name(Generator g) {
  switch (g) {
    case Generator::s0: return "s0";
    case Generator::s1: return "s1";
    case Generator::s2: return "s2";
    case Generator::s3: return "s3";
    case Generator::pi: return "pi";
  }
  return "?";
}

Generator parse_generator(std::string_view tag) {
  for (Generator g : all_generators) {
    if (tag == name(g)) return g;
  }
  throw ParseError("unknown generator '" + std::string(tag) + "' (expected s0, s1, s2, s3 or pi)");
}

Word parse_word(std::string_view text) {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) w.push_back(parse_generator(text.substr(i, j - i)));
    i = j;
  }
  return w;
}

std::string format_word(const Word& w) {
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += ' ';
    s += name(w[k]);
  }
  return s;
}

Word power(const Word& w, int m) {
  Word out;
  for (int k = 0; k < m; ++k) out.insert(out.end(), w.begin(), w.end());
  return out;
}

}  // namespace a52
