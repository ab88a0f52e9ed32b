#pragma once

#include <span>
#include <vector>

#include "reflab/coxeter.hpp"
#include "reflab/root_slice.hpp"

namespace reflab {

/// A word s_{i1} s_{i2} ... s_{ik} over 0-based simple indices.
struct Word {
  std::vector<int> letters;
  bool reduced = false;

  std::size_t length() const noexcept { return letters.size(); }
  friend bool operator==(const Word&, const Word&) = default;
};

/// prefix . period^infinity
struct InfiniteWord {
  std::vector<int> prefix;
  std::vector<int> period;

  /// The first n letters.
  std::vector<int> truncate(std::size_t n) const;
};

/// w(v) for w = letters[0] letters[1] ... (the last letter acts first).
Coeffs apply_word(std::span<const int> letters, std::span<const Scalar> v, const GramMatrix& gram);

/// beta_k = s_{i1} ... s_{i(k-1)}(alpha_{ik}) for k = 1..length.
std::vector<Coeffs> inversion_roots(std::span<const int> letters, const GramMatrix& gram);

/// A word is reduced iff every beta_k is positive. Returns the 0-based index
/// of the first non-positive beta_k, or -1 when reduced.
long first_non_reduced(std::span<const int> letters, const GramMatrix& gram);
bool is_reduced(std::span<const int> letters, const GramMatrix& gram);

/// The palindrome a_1 ... a_k j a_k ... a_1 with root = s_{a1}...s_{ak}(alpha_j),
/// read off the parent links. Its reduced flag is not computed.
Word root_to_reflection(RootId id, const RootSlice& slice);

/// (a_1 ... a_k, j) for the same chain: root = s_{a1} ... s_{ak}(alpha_j).
std::pair<std::vector<int>, int> root_chain(RootId id, const RootSlice& slice);

}  // namespace reflab
