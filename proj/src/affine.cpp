#include "reflab/affine.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "reflab/errors.hpp"

namespace reflab {

std::vector<Coeffs> FiniteRootDatum::all() const {
  std::vector<Coeffs> out = positive;
  out.insert(out.end(), negative.begin(), negative.end());
  return out;
}

FiniteRootDatum finite_datum(const CoxeterMatrix& matrix, int max_depth) {
  const RootSlice slice = generate_slice(matrix, max_depth, natural_mode(matrix));
  if (!slice.saturated()) {
    throw NotFiniteType("root generation does not saturate within depth " + std::to_string(max_depth));
  }
  FiniteRootDatum d{matrix, {}, {}};
  for (RootId id = 0; id < slice.size(); ++id) {
    d.positive.push_back(slice.root(id));
    d.negative.push_back(negated(slice.coeffs(id)));
  }
  return d;
}

std::vector<AffineRoot> tilde(const std::vector<Coeffs>& A, int level_bound) {
  if (level_bound < 0) throw std::invalid_argument("level bound must be >= 0");
  std::vector<AffineRoot> out;
  for (const Coeffs& beta : A) {
    for (int k = is_negative(beta) ? 1 : 0; k <= level_bound; ++k) out.push_back({beta, k});
  }
  return out;
}

AffineRoot alpha0(const Coeffs& beta) { return {beta, is_negative(beta) ? 1 : 0}; }

namespace {

// Basis of the null space of a square matrix, by row reduction.
std::vector<Coeffs> null_space(const GramMatrix& g) {
  const int n = g.rank();
  std::vector<Coeffs> rows(n, Coeffs(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) rows[i][j] = g(i, j);
  }
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < n && r < n; ++c) {
    int p = -1;
    for (int i = r; i < n; ++i) {
      if (!rows[i][c].is_zero()) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    std::swap(rows[r], rows[p]);
    const Scalar inv = Scalar(1) / rows[r][c];
    for (Scalar& x : rows[r]) x *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const Scalar f = rows[i][c];
      for (int j = 0; j < n; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<Coeffs> basis;
  for (int free = 0; free < n; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
    Coeffs v(n);
    v[free] = 1;
    for (int k = 0; k < r; ++k) v[pivot_col[k]] = -rows[k][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Scales an exact vector to coprime integers.
Coeffs primitive(const Coeffs& v) {
  mpz_class l = 1, g = 0;
  for (const Scalar& x : v) {
    const mpq_class q = x.to_mpq();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  }
  std::vector<mpz_class> ints;
  for (const Scalar& x : v) {
    const mpq_class q = x.to_mpq() * l;
    ints.push_back(q.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
  }
  Coeffs out;
  for (const mpz_class& z : ints) out.push_back(Scalar::from_mpq(mpq_class(z / g)));
  return out;
}

Coeffs drop(std::span<const Scalar> v, int node) {
  Coeffs out;
  for (int i = 0; i < static_cast<int>(v.size()); ++i) {
    if (i != node) out.push_back(v[i]);
  }
  return out;
}

}  // namespace

AffineModel AffineModel::from_matrix(const CoxeterMatrix& matrix, ScalarMode mode) {
  GramMatrix gram = gram_of(matrix, mode);
  std::vector<Coeffs> radical = null_space(gram);
  if (radical.size() != 1) {
    throw std::invalid_argument("form radical has dimension " + std::to_string(radical.size()) + ", expected 1");
  }
  Coeffs delta = radical.front();
  if (is_negative(delta)) delta = negated(delta);
  if (!is_positive(delta) || std::any_of(delta.begin(), delta.end(), [](const Scalar& x) { return x.is_zero(); })) {
    throw std::invalid_argument("form radical is not spanned by a positive vector");
  }
  if (mode == ScalarMode::Exact) delta = primitive(delta);

  const int n = matrix.rank();
  std::vector<int> candidates;
  for (int i = n - 1; i >= 0; --i) {
    if (delta[i] == Scalar(1)) candidates.push_back(i);
  }
  for (int i = n - 1; i >= 0; --i) {
    if (!(delta[i] == Scalar(1))) candidates.push_back(i);
  }
  for (int node : candidates) {
    try {
      FiniteRootDatum finite = finite_datum(matrix.without_node(node));
      const Scalar scale = delta[node];
      for (Scalar& x : delta) x /= scale;
      return AffineModel(matrix, std::move(gram), std::move(delta), node, std::move(finite));
    } catch (const NotFiniteType&) {
    }
  }
  throw NotFiniteType("no node of the matrix leaves a finite system");
}

AffineModel AffineModel::named(const std::string& name) {
  const CoxeterMatrix m = CoxeterMatrix::named(name);
  return from_matrix(m, natural_mode(m));
}

std::optional<AffineRoot> AffineModel::to_loop(std::span<const Scalar> v) const {
  const Scalar level = v[node_];
  if (!level.is_integer()) return std::nullopt;
  Coeffs beta(v.begin(), v.end());
  for (std::size_t i = 0; i < beta.size(); ++i) beta[i] -= level * delta_[i];
  beta = drop(beta, node_);
  const bool pos = std::any_of(finite_.positive.begin(), finite_.positive.end(),
                               [&](const Coeffs& r) { return r == beta; });
  const bool neg = !pos && std::any_of(finite_.negative.begin(), finite_.negative.end(),
                                       [&](const Coeffs& r) { return r == beta; });
  if (!pos && !neg) return std::nullopt;
  return AffineRoot{std::move(beta), static_cast<int>(level.to_mpq().get_num().get_si())};
}

Coeffs AffineModel::from_loop(const AffineRoot& r) const {
  Coeffs v;
  std::size_t k = 0;
  for (int i = 0; i < matrix_.rank(); ++i) v.push_back(i == node_ ? Scalar(0) : r.beta[k++]);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += Scalar(r.level) * delta_[i];
  return v;
}

InversionWalker::InversionWalker(const GramMatrix& gram) : gram_(&gram) {
  for (int j = 0; j < gram.rank(); ++j) columns_.push_back(simple_root(gram.rank(), j));
}

Coeffs InversionWalker::push(int letter) {
  const int n = gram_->rank();
  if (letter < 0 || letter >= n) throw std::invalid_argument("letter out of range");
  Coeffs beta = columns_[letter];
  ++length_;
  if (!is_positive(beta)) throw WordNotReduced(length_);
  // w s_t (alpha_j) = w(alpha_j) - 2 B(alpha_j, alpha_t) w(alpha_t)
  for (int j = 0; j < n; ++j) {
    if (j == letter) continue;
    const Scalar c = Scalar(2) * (*gram_)(j, letter);
    if (c.is_zero()) continue;
    for (int i = 0; i < n; ++i) columns_[j][i] -= c * beta[i];
  }
  columns_[letter] = negated(beta);
  return beta;
}

InversionReport check_inversion_identity(const AffineModel& model, const InfiniteWord& word,
                                         const std::vector<Coeffs>& A, int level_bound) {
  if (word.period.empty()) throw std::invalid_argument("infinite word needs a non-empty period");
  InversionReport rep;
  rep.level_bound = level_bound;
  rep.per_level.assign(static_cast<std::size_t>(level_bound) + 1, 0);

  const std::vector<AffineRoot> targets = tilde(A, level_bound);
  std::vector<bool> seen(targets.size(), false);
  std::size_t remaining = targets.size();
  const std::size_t limit = word.prefix.size() + word.period.size() * (2 * targets.size() + 2);

  InversionWalker walker(model.gram());
  for (std::size_t i = 0; remaining > 0; ++i) {
    if (i >= limit) {
      rep.letters = i;
      rep.discrepancy = std::to_string(remaining) + " roots of level <= " + std::to_string(level_bound) +
                        " not reached after " + std::to_string(i) + " letters";
      return rep;
    }
    const int letter = i < word.prefix.size() ? word.prefix[i]
                                              : word.period[(i - word.prefix.size()) % word.period.size()];
    const Coeffs beta = walker.push(letter);
    const auto loop = model.to_loop(beta);
    const bool in_A = loop && std::any_of(A.begin(), A.end(), [&](const Coeffs& a) { return a == loop->beta; });
    if (!in_A) {
      rep.letters = i + 1;
      rep.discrepancy = "inversion " + std::to_string(i + 1) + " is not in tilde(A)";
      return rep;
    }
    if (loop->level > level_bound) continue;
    for (std::size_t t = 0; t < targets.size(); ++t) {
      if (!seen[t] && targets[t] == *loop) {
        seen[t] = true;
        --remaining;
        ++rep.per_level[loop->level];
        break;
      }
    }
  }
  rep.letters = walker.length();
  rep.ok = true;
  return rep;
}

std::optional<InfiniteWord> find_infinite_word(const AffineModel& model, const std::vector<Coeffs>& A,
                                               int max_period, int level_bound) {
  const int n = model.matrix().rank();
  for (int len = 1; len <= max_period; ++len) {
    std::vector<int> period(len, 0);
    while (true) {
      bool adjacent = false;
      for (int i = 0; i < len; ++i) adjacent |= len > 1 && period[i] == period[(i + 1) % len];
      if (!adjacent) {
        try {
          const InfiniteWord w{{}, period};
          if (check_inversion_identity(model, w, A, level_bound).ok) return w;
        } catch (const WordNotReduced&) {
        }
      }
      int pos = len - 1;
      while (pos >= 0 && period[pos] == n - 1) period[pos--] = 0;
      if (pos < 0) break;
      ++period[pos];
    }
  }
  return std::nullopt;
}

TwoSidedSpec default_two_sided_words(const AffineModel& model) {
  auto plus = find_infinite_word(model, model.finite().positive);
  auto minus = find_infinite_word(model, model.finite().negative);
  if (!plus || !minus) throw std::runtime_error("no infinite reduced word found for the finite positive system");
  return {*plus, *minus};
}

namespace {

std::vector<RootId> slice_inversions(const InfiniteWord& word, const RootSlice& slice) {
  if (word.period.empty()) throw std::invalid_argument("infinite word needs a non-empty period");
  const std::size_t letters = word.prefix.size() + word.period.size() * (slice.size() + 2);
  std::vector<RootId> out;
  InversionWalker walker(slice.gram());
  for (std::size_t i = 0; i < letters; ++i) {
    const int letter = i < word.prefix.size() ? word.prefix[i]
                                              : word.period[(i - word.prefix.size()) % word.period.size()];
    const Coeffs beta = walker.push(letter);
    if (auto id = slice.lookup(beta)) out.push_back(*id);
  }
  return out;
}

std::string word_text(const InfiniteWord& w) {
  std::string s;
  for (int l : w.prefix) s += std::to_string(l + 1);
  s += "(";
  for (int l : w.period) s += std::to_string(l + 1);
  return s + ")^inf";
}

}  // namespace

TruncatedOrder two_sided_order(std::shared_ptr<const RootSlice> slice, const TwoSidedSpec& spec) {
  const std::vector<RootId> up = slice_inversions(spec.ascending, *slice);
  const std::vector<RootId> down = slice_inversions(spec.descending, *slice);
  std::vector<int> owner(slice->size(), 0);
  for (RootId id : up) owner[id] |= 1;
  for (RootId id : down) {
    if (owner[id] & 1) throw NotAPartition("root " + std::to_string(id) + " is an inversion of both words");
    owner[id] |= 2;
  }
  for (RootId id = 0; id < slice->size(); ++id) {
    if (owner[id] == 0) throw NotAPartition("root " + std::to_string(id) + " is an inversion of neither word");
  }
  std::vector<RootId> seq = up;
  seq.insert(seq.end(), down.rbegin(), down.rend());
  const int depth = slice->saturated() ? -1 : slice->depth_bound();
  const std::string desc = "two-sided " + word_text(spec.ascending) + " / " + word_text(spec.descending);
  return TruncatedOrder(std::move(slice), std::move(seq), depth, desc);
}

}  // namespace reflab
