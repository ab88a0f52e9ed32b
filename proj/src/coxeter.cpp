#include "reflab/coxeter.hpp"

#include <cmath>
#include <numbers>
#include <regex>
#include <stdexcept>
#include <string>

#include "reflab/errors.hpp"

namespace reflab {

CoxeterMatrix::CoxeterMatrix(int rank, std::vector<int> entries, std::vector<Scalar> infinity_weights)
    : rank_(rank), entries_(std::move(entries)) {
  if (rank < 1) throw std::invalid_argument("Coxeter matrix rank must be positive");
  const auto cells = static_cast<std::size_t>(rank) * rank;
  if (entries_.size() != cells) {
    throw std::invalid_argument("Coxeter matrix needs " + std::to_string(cells) + " entries");
  }
  if (!infinity_weights.empty() && infinity_weights.size() != cells) {
    throw std::invalid_argument("infinity weights must be rank x rank");
  }
  weights_.assign(cells, Scalar(0));
  for (int i = 0; i < rank; ++i) {
    for (int j = 0; j < rank; ++j) {
      const int m = label(i, j);
      if (m != label(j, i)) throw std::invalid_argument("Coxeter matrix must be symmetric");
      if (i == j && m != 1) throw std::invalid_argument("diagonal entries must be 1");
      if (i != j && m != kInf && m < 2) {
        throw std::invalid_argument("off-diagonal entries must be >= 2 or inf");
      }
      if (m == kInf) {
        Scalar w = infinity_weights.empty() ? Scalar(-1) : infinity_weights[index(i, j)];
        if (w.is_zero() && !infinity_weights.empty()) w = Scalar(-1);  // unset cell
        if (compare(w, Scalar(-1)) > 0) throw std::invalid_argument("infinity weights must be <= -1");
        weights_[index(i, j)] = w;
      }
    }
  }
  for (int i = 0; i < rank; ++i) {
    for (int j = 0; j < rank; ++j) {
      if (weights_[index(i, j)] != weights_[index(j, i)]) {
        throw std::invalid_argument("infinity weights must be symmetric");
      }
    }
  }
}

CoxeterMatrix CoxeterMatrix::universal(int rank) {
  std::vector<int> e(static_cast<std::size_t>(rank) * rank, kInf);
  for (int i = 0; i < rank; ++i) e[static_cast<std::size_t>(i) * rank + i] = 1;
  return CoxeterMatrix(rank, std::move(e));
}

CoxeterMatrix CoxeterMatrix::type_a(int rank) {
  std::vector<int> e(static_cast<std::size_t>(rank) * rank, 2);
  for (int i = 0; i < rank; ++i) {
    e[static_cast<std::size_t>(i) * rank + i] = 1;
    if (i + 1 < rank) {
      e[static_cast<std::size_t>(i) * rank + i + 1] = 3;
      e[static_cast<std::size_t>(i + 1) * rank + i] = 3;
    }
  }
  return CoxeterMatrix(rank, std::move(e));
}

CoxeterMatrix CoxeterMatrix::affine_a(int n) {
  if (n < 1) throw std::invalid_argument("affine A~n needs n >= 1");
  if (n == 1) return CoxeterMatrix(2, {1, kInf, kInf, 1});
  const int rank = n + 1;
  std::vector<int> e(static_cast<std::size_t>(rank) * rank, 2);
  for (int i = 0; i < rank; ++i) {
    e[static_cast<std::size_t>(i) * rank + i] = 1;
    const int j = (i + 1) % rank;
    e[static_cast<std::size_t>(i) * rank + j] = 3;
    e[static_cast<std::size_t>(j) * rank + i] = 3;
  }
  return CoxeterMatrix(rank, std::move(e));
}

CoxeterMatrix CoxeterMatrix::named(const std::string& name) {
  static const std::regex universal_re("universal([0-9]+)");
  static const std::regex affine_re("A([0-9]+)~");
  static const std::regex a_re("A([0-9]+)");
  std::smatch m;
  if (std::regex_match(name, m, universal_re)) return universal(std::stoi(m[1]));
  if (std::regex_match(name, m, affine_re)) return affine_a(std::stoi(m[1]));
  if (std::regex_match(name, m, a_re)) return type_a(std::stoi(m[1]));
  throw std::invalid_argument("unknown Coxeter type: " + name);
}

CoxeterMatrix CoxeterMatrix::without_node(int node) const {
  const int r = rank_ - 1;
  std::vector<int> e;
  std::vector<Scalar> w;
  e.reserve(static_cast<std::size_t>(r) * r);
  w.reserve(static_cast<std::size_t>(r) * r);
  for (int i = 0; i < rank_; ++i) {
    if (i == node) continue;
    for (int j = 0; j < rank_; ++j) {
      if (j == node) continue;
      e.push_back(label(i, j));
      w.push_back(label(i, j) == kInf ? infinity_weight(i, j) : Scalar(0));
    }
  }
  return CoxeterMatrix(r, std::move(e), std::move(w));
}

Scalar GramMatrix::form(std::span<const Scalar> u, std::span<const Scalar> v) const {
  Scalar total;
  for (int i = 0; i < rank_; ++i) {
    if (u[i].is_zero()) continue;
    total += u[i] * form_with_simple(v, i);
  }
  return total;
}

Scalar GramMatrix::form_with_simple(std::span<const Scalar> u, int s) const {
  Scalar total;
  for (int j = 0; j < rank_; ++j) {
    if (u[j].is_zero()) continue;
    const Scalar& b = (*this)(j, s);
    if (b.is_zero()) continue;
    total += u[j] * b;
  }
  return total;
}

bool exact_mode_available(const CoxeterMatrix& matrix) {
  for (int i = 0; i < matrix.rank(); ++i) {
    for (int j = 0; j < matrix.rank(); ++j) {
      const int m = matrix.label(i, j);
      if (m != CoxeterMatrix::kInf && m > 3) return false;
      if (m == CoxeterMatrix::kInf && !matrix.infinity_weight(i, j).is_exact()) return false;
    }
  }
  return true;
}

GramMatrix gram_of(const CoxeterMatrix& matrix, ScalarMode mode) {
  const int n = matrix.rank();
  if (mode == ScalarMode::Exact && !exact_mode_available(matrix)) {
    throw ExactModeUnavailable("exact mode needs every finite label in {2, 3} and rational infinity weights");
  }
  std::vector<Scalar> entries;
  entries.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int m = matrix.label(i, j);
      Scalar b;
      if (m == CoxeterMatrix::kInf) {
        b = matrix.infinity_weight(i, j);
        if (mode == ScalarMode::Approx) b = Scalar::approx(b.to_double());
      } else if (mode == ScalarMode::Exact) {
        b = m == 1 ? Scalar(1) : m == 2 ? Scalar(0) : Scalar::rational(-1, 2);
      } else if (m == 1) {
        b = Scalar::approx(1.0);
      } else if (m == 2) {
        b = Scalar::approx(0.0);
      } else {
        b = Scalar::approx(-std::cos(std::numbers::pi / m));
      }
      entries.push_back(std::move(b));
    }
  }
  return GramMatrix(n, std::move(entries), mode);
}

Coeffs reflect(std::span<const Scalar> v, int s, const GramMatrix& gram) {
  Coeffs out(v.begin(), v.end());
  reflect_in_place(out, s, gram);
  return out;
}

void reflect_in_place(Coeffs& v, int s, const GramMatrix& gram) {
  const Scalar b = gram.form_with_simple(v, s);
  v[s] -= Scalar(2) * b;
}

Coeffs reflect_by_root(std::span<const Scalar> v, std::span<const Scalar> root, const GramMatrix& gram) {
  const Scalar c = Scalar(2) * gram.form(v, root);
  Coeffs out(v.begin(), v.end());
  if (c.is_zero()) return out;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!root[i].is_zero()) out[i] -= c * root[i];
  }
  return out;
}

Coeffs simple_root(int rank, int s) {
  Coeffs v(static_cast<std::size_t>(rank), Scalar(0));
  v[static_cast<std::size_t>(s)] = Scalar(1);
  return v;
}

bool is_positive(std::span<const Scalar> v) {
  bool some = false;
  for (const Scalar& x : v) {
    const int sg = x.sign();
    if (sg < 0) return false;
    some = some || sg > 0;
  }
  return some;
}

bool is_negative(std::span<const Scalar> v) {
  bool some = false;
  for (const Scalar& x : v) {
    const int sg = x.sign();
    if (sg > 0) return false;
    some = some || sg < 0;
  }
  return some;
}

Coeffs negated(std::span<const Scalar> v) {
  Coeffs out;
  out.reserve(v.size());
  for (const Scalar& x : v) out.push_back(-x);
  return out;
}

}  // namespace reflab
