#pragma once

// Truncated Hasse-Schmidt derivations D(x_j) = x_j + sum_{i=1..r} d_i(x_j) t^i,
// extended to O by substitution, and their order-by-order search over
// finite fields.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isojet/trunc.hpp"

namespace isojet {

struct HSDerivation {
  RingSpec spec;
  unsigned r = 0;
  /// images[i - 1][j] = d_i(x_j).
  std::vector<std::vector<TruncPoly>> images;

  static HSDerivation zero(const RingSpec& spec, unsigned r);
  /// First r' levels.
  HSDerivation prefix(unsigned r_prime) const;
  /// Some d_1(x_j) has a nonzero constant term.
  bool is_regular() const;
  /// Per level i = 1..r: some d_i(x_j)(0) != 0.
  std::vector<bool> regular_levels() const;
};

/// t-coefficients 0..r of f_l(D(x)), in the ring of f.
std::vector<TruncPoly> hs_expand(const TruncPoly& f, const HSDerivation& d);

struct HSViolation {
  std::size_t equation;
  unsigned t_order;
  /// t-coefficient truncated at beta_work.
  TruncPoly residue;
  /// Its normal form modulo ideal_span(f) at beta_work.
  TruncPoly normal_form;
};

struct HSVerifyReport {
  bool ok;
  std::optional<HSViolation> violation;
};

/// Every t-coefficient of order 1..r lies in ideal_span(f) + (x)^{beta_work+1}.
/// Throws TruncationUnsafe when f is not exact, PreconditionFailed when
/// beta_work > beta.
HSVerifyReport hs_verify(const PolySystem& f, const HSDerivation& d, unsigned beta_work);

enum class HSMode { any, regular };

struct HSSearchOptions {
  std::uint64_t max_nodes = 50'000'000;
};

struct HSSearchResult {
  std::optional<HSDerivation> witness;
  /// Level assignments visited.
  std::uint64_t nodes = 0;
  /// Coefficients left free after discarding those that cannot reach any
  /// constraint, per level.
  std::vector<std::size_t> unknowns;
};

/// Depth-first over the affine solution sets of the level constraints.
/// Throws FieldNotFinite, SearchLimitExceeded.
HSSearchResult hs_search(const PolySystem& f, unsigned r, unsigned beta_work, HSMode mode,
                         const HSSearchOptions& options = {});

}  // namespace isojet
