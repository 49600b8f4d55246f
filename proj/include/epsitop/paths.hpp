#pragma once

#include <cstdint>
#include <vector>

#include "epsitop/complex.hpp"

namespace epsitop {

/// An eventually-constant map Z -> X, stored by its values over the standard
/// (least) support. A constant path has support [0, 0]. Paths remember the
/// complex they were validated against; operations reject mixed ambients.
class Path {
 public:
  Path() = default;

  const Complex2* ambient() const { return ambient_; }
  const std::vector<VertexId>& values() const { return values_; }
  std::int64_t support_lo() const { return lo_; }
  std::int64_t support_hi() const {
    return lo_ + static_cast<std::int64_t>(values_.size()) - 1;
  }
  VertexId start() const { return values_.front(); }
  VertexId end() const { return values_.back(); }
  /// Value at an arbitrary instant (constant outside the support).
  VertexId at(std::int64_t i) const;

  bool operator==(const Path& other) const {
    return values_ == other.values_ && lo_ == other.lo_;
  }

  friend Path make_path(const Complex2& complex,
                        const std::vector<VertexId>& values);
  friend Path concat(const Path& a, const Path& b);
  friend Path reverse_path(const Path& a);
  friend Path delay(const Path& a, std::int64_t t);

 private:
  const Complex2* ambient_ = nullptr;
  std::vector<VertexId> values_;
  std::int64_t lo_ = 0;
};

/// Builds a path from a vertex list, trimming to the standard support.
/// Throws std::invalid_argument on an empty list or a non-linked step.
Path make_path(const Complex2& complex, const std::vector<VertexId>& values);

/// Standard concatenation: supports add, constant paths are units.
Path concat(const Path& a, const Path& b);

/// Reversal: values reversed, support [-hi, -lo].
Path reverse_path(const Path& a);

/// Precomposition with the elementary delay at instant t.
Path delay(const Path& a, std::int64_t t);

/// Congruence up to delays, decided by the run-length canonical form.
bool congruent(const Path& a, const Path& b);

/// The run-length-compressed value sequence (the congruence invariant).
std::vector<VertexId> congruence_canonical_form(const Path& a);

/// A finite grid Z^2 -> X, constant outside its support rectangle. Row j of
/// `rows` holds the values at vertical instant row_lo + j over columns
/// [col_lo, col_lo + width).
struct DoubleNet {
  const Complex2* ambient = nullptr;
  std::vector<std::vector<VertexId>> rows;
  std::int64_t col_lo = 0;
  std::int64_t row_lo = 0;
};

/// The caterpillar grid A(i, j) = a(delay_{j v t}(i)): a homotopy with fixed
/// end points from delay(a, t) (bottom row) to a (top row).
DoubleNet caterpillar(const Path& a, std::int64_t t);

/// True iff every elementary square maps to a linked set. With only a
/// Complex2 at hand, 4-point images are checked conservatively: all pairs
/// must be edges and all triples triangles. Passing the un-truncated Complex
/// checks genuine 4-point membership instead.
bool is_double_net_valid(const DoubleNet& net, const Complex2& complex,
                         const Complex* full_complex = nullptr);

enum class HomotopySearch { Yes, NoWithinBounds };

/// Bounded search for a chain of one-step 2-homotopies between a and b
/// (padded to a common length with end repetitions). Sound: Yes is a proof;
/// NoWithinBounds is not. Throws std::invalid_argument on endpoint mismatch.
HomotopySearch two_homotopic_bfs(const Complex2& complex, const Path& a,
                                 const Path& b, std::size_t max_len,
                                 std::size_t max_steps);

}  // namespace epsitop
