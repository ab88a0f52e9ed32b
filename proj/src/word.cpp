#include "reflab/word.hpp"

#include <stdexcept>

namespace reflab {

std::vector<int> InfiniteWord::truncate(std::size_t n) const {
  std::vector<int> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n && i < prefix.size(); ++i) out.push_back(prefix[i]);
  if (out.size() < n && period.empty()) throw std::invalid_argument("infinite word has an empty period");
  while (out.size() < n) out.push_back(period[(out.size() - prefix.size()) % period.size()]);
  return out;
}

Coeffs apply_word(std::span<const int> letters, std::span<const Scalar> v, const GramMatrix& gram) {
  Coeffs out(v.begin(), v.end());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) reflect_in_place(out, *it, gram);
  return out;
}

std::vector<Coeffs> inversion_roots(std::span<const int> letters, const GramMatrix& gram) {
  std::vector<Coeffs> out;
  out.reserve(letters.size());
  for (std::size_t k = 0; k < letters.size(); ++k) {
    out.push_back(apply_word(letters.first(k), simple_root(gram.rank(), letters[k]), gram));
  }
  return out;
}

long first_non_reduced(std::span<const int> letters, const GramMatrix& gram) {
  const auto betas = inversion_roots(letters, gram);
  for (std::size_t k = 0; k < betas.size(); ++k) {
    if (!is_positive(betas[k])) return static_cast<long>(k);
  }
  return -1;
}

bool is_reduced(std::span<const int> letters, const GramMatrix& gram) {
  return first_non_reduced(letters, gram) < 0;
}

std::pair<std::vector<int>, int> root_chain(RootId id, const RootSlice& slice) {
  std::vector<int> chain;
  RootId cur = id;
  while (auto p = slice.parent(cur)) {
    chain.push_back(p->letter);
    cur = p->id;
  }
  return {chain, static_cast<int>(cur)};
}

Word root_to_reflection(RootId id, const RootSlice& slice) {
  auto [chain, seed] = root_chain(id, slice);
  Word w;
  w.letters = chain;
  w.letters.push_back(seed);
  w.letters.insert(w.letters.end(), chain.rbegin(), chain.rend());
  return w;
}

}  // namespace reflab
