#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "reflab/affine.hpp"
#include "reflab/coxeter.hpp"
#include "reflab/orders.hpp"

namespace reflab::cli {

enum ExitCode { kOk = 0, kFailed = 1, kBadInput = 2, kCapExceeded = 3 };

/// A matrix with the mode it is run in and a display name.
struct MatrixSource {
  CoxeterMatrix matrix;
  ScalarMode mode;
  std::string name;
};

/// Built-in name ("universal3", "A2", "A2~") or matrix file; `mode`, when
/// given ("exact" / "approx"), overrides the file's choice.
MatrixSource resolve_matrix(const std::string& type, const std::string& file, const std::string& mode);

/// Root-count cap: REFLAB_CAP when set, else the library default. Throws
/// ParseError on a malformed value.
std::size_t cap_from_env();

// Lemma certifiers. Each returns {lemma, params, status, violations, counts}
// with status "pass", "inconclusive" or "fail".
nlohmann::json lemma_c_range(const MatrixSource& m, int depth, std::size_t cap);
nlohmann::json lemma_density(const MatrixSource& m, int d_lo, int d_hi, std::size_t cap);
/// Block structure at every depth in [d_lo, d_hi].
nlohmann::json lemma_blocks(const MatrixSource& m, int d_lo, int d_hi, std::size_t cap);
/// Split counts on the rungs (d, D) and (d+1, D+1): growth expected for
/// lexicographic orders, a constant count for two-sided affine orders.
nlohmann::json lemma_stability(const MatrixSource& m, int d, int D, std::size_t cap);
/// Growing-interval pairs of a dihedral subgroup on rungs (d+i, D+i), i < 3.
nlohmann::json lemma_char3(const MatrixSource& m, int d, int D, std::size_t cap);
/// verify_reflection_order on each basis and its backward order.
nlohmann::json lemma_reflection_order(const MatrixSource& m, const std::vector<LexicographicSpec>& bases, int depth,
                                      std::size_t cap);
/// Two-sided order verification plus the inversion identity through level `depth`.
nlohmann::json lemma_two_sided(const MatrixSource& m, int depth, std::size_t cap);

std::optional<AffineModel> affine_model(const MatrixSource& m);

struct RunConfig {
  std::string universal_matrix;  // file; empty for the built-in universal3
  int universal_depth = 8;
  int density_lo = 4;
  int verify_depth = 6;
  int random_bases = 2;
  std::vector<std::string> affine_types{"A1~", "A2~"};
  int affine_depth = 6;
  std::size_t cap = 0;  // 0: REFLAB_CAP or the default
  unsigned seed = 20240611;
};

/// Reads a TOML or JSON config file ([universal], [affine], [run] tables).
/// Throws ParseError, including for inconsistent depths.
RunConfig load_config(const std::string& path);
void validate(const RunConfig& config);

/// Runs every certifier; the summary's "status" is "fail" iff some report failed.
nlohmann::json certify_all(const RunConfig& config);

/// The command-line interface. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace reflab::cli
