#include "complab/distribution.hpp"

namespace complab {

std::vector<Symbol> decode_word(WordIndex index, std::uint32_t alphabet_size, std::size_t arity) {
  std::vector<Symbol> word(arity);
  for (std::size_t j = arity; j > 0; --j) {
    word[j - 1] = static_cast<Symbol>(index % alphabet_size);
    index /= alphabet_size;
  }
  return word;
}

WordIndex encode_word(std::span<const Symbol> word, std::uint32_t alphabet_size) {
  WordIndex index = 0;
  for (Symbol s : word) {
    if (s >= alphabet_size) throw DomainError("symbol outside the alphabet");
    index = index * alphabet_size + s;
  }
  return index;
}

}  // namespace complab
