#include "epsitop/paths.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace epsitop {

namespace {

void require_same_ambient(const Path& a, const Path& b) {
  if (a.ambient() != b.ambient())
    throw std::invalid_argument("paths belong to different complexes");
}

}  // namespace

VertexId Path::at(std::int64_t i) const {
  if (i <= lo_) return values_.front();
  std::int64_t hi = support_hi();
  if (i >= hi) return values_.back();
  return values_[static_cast<std::size_t>(i - lo_)];
}

Path make_path(const Complex2& complex, const std::vector<VertexId>& values) {
  if (values.empty()) throw std::invalid_argument("path needs at least one value");
  for (VertexId v : values)
    if (v >= complex.vertex_count)
      throw std::out_of_range("path vertex out of range");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i - 1] != values[i] && !complex.has_edge(values[i - 1], values[i]))
      throw std::invalid_argument("consecutive path values are not linked");

  std::size_t first = 0, last = values.size() - 1;
  while (first < last && values[first] == values[first + 1]) ++first;
  while (last > first && values[last] == values[last - 1]) --last;

  Path p;
  p.ambient_ = &complex;
  p.values_.assign(values.begin() + first, values.begin() + last + 1);
  p.lo_ = 0;
  return p;
}

Path concat(const Path& a, const Path& b) {
  require_same_ambient(a, b);
  if (a.end() != b.start())
    throw std::invalid_argument("concat endpoints do not match");
  Path c;
  c.ambient_ = a.ambient_;
  c.values_ = a.values_;
  c.values_.insert(c.values_.end(), b.values_.begin() + 1, b.values_.end());
  c.lo_ = a.lo_ + b.lo_;
  return c;
}

Path reverse_path(const Path& a) {
  Path r;
  r.ambient_ = a.ambient_;
  r.values_.assign(a.values_.rbegin(), a.values_.rend());
  r.lo_ = -a.support_hi();
  return r;
}

Path delay(const Path& a, std::int64_t t) {
  std::int64_t lo = a.support_lo(), hi = a.support_hi();
  if (t >= hi) return a;
  Path d;
  d.ambient_ = a.ambient_;
  d.values_ = a.values_;
  if (t <= lo) {
    d.lo_ = lo + 1;  // delays at or below the support translate the path
  } else {
    d.values_.insert(d.values_.begin() + static_cast<std::ptrdiff_t>(t - lo + 1),
                     a.values_[static_cast<std::size_t>(t - lo)]);
    d.lo_ = lo;
  }
  return d;
}

std::vector<VertexId> congruence_canonical_form(const Path& a) {
  std::vector<VertexId> rle;
  for (VertexId v : a.values())
    if (rle.empty() || rle.back() != v) rle.push_back(v);
  return rle;
}

bool congruent(const Path& a, const Path& b) {
  require_same_ambient(a, b);
  return congruence_canonical_form(a) == congruence_canonical_form(b);
}

DoubleNet caterpillar(const Path& a, std::int64_t t) {
  std::int64_t lo = a.support_lo(), hi = a.support_hi();
  std::int64_t s = std::max(t, hi);
  DoubleNet net;
  net.ambient = a.ambient();
  net.col_lo = lo;
  net.row_lo = t;
  for (std::int64_t j = t; j <= s; ++j) {
    std::vector<VertexId> row;
    row.reserve(static_cast<std::size_t>(hi - lo + 2));
    for (std::int64_t i = lo; i <= hi + 1; ++i)
      row.push_back(a.at(i <= j ? i : i - 1));  // a(delta_j(i)), j = j v t here
    net.rows.push_back(std::move(row));
  }
  return net;
}

namespace {

bool image_linked(std::vector<VertexId> image, const Complex2& complex,
                  const Complex* full) {
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  if (full) return full->is_linked(std::span<const VertexId>(image));
  if (image.size() <= 3) return complex.is_linked_small(image);
  // Only a 2-truncation at hand: require every pair and triple of the
  // 4-point image, the strongest statement the truncation can certify.
  for (std::size_t i = 0; i < image.size(); ++i)
    for (std::size_t j = i + 1; j < image.size(); ++j) {
      if (!complex.has_edge(image[i], image[j])) return false;
      for (std::size_t k = j + 1; k < image.size(); ++k)
        if (!complex.has_triangle(image[i], image[j], image[k])) return false;
    }
  return true;
}

}  // namespace

bool is_double_net_valid(const DoubleNet& net, const Complex2& complex,
                         const Complex* full_complex) {
  if (net.rows.empty() || net.rows.front().empty()) return true;
  const std::size_t height = net.rows.size();
  const std::size_t width = net.rows.front().size();
  for (const auto& row : net.rows)
    if (row.size() != width)
      throw std::invalid_argument("double net rows must have equal width");

  if (height == 1 && width == 1) return true;
  if (height == 1) {
    for (std::size_t i = 0; i + 1 < width; ++i)
      if (!image_linked({net.rows[0][i], net.rows[0][i + 1]}, complex,
                        full_complex))
        return false;
    return true;
  }
  if (width == 1) {
    for (std::size_t j = 0; j + 1 < height; ++j)
      if (!image_linked({net.rows[j][0], net.rows[j + 1][0]}, complex,
                        full_complex))
        return false;
    return true;
  }
  for (std::size_t j = 0; j + 1 < height; ++j)
    for (std::size_t i = 0; i + 1 < width; ++i) {
      if (!image_linked({net.rows[j][i], net.rows[j][i + 1],
                         net.rows[j + 1][i], net.rows[j + 1][i + 1]},
                        complex, full_complex))
        return false;
    }
  return true;
}

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<VertexId>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (VertexId x : v) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Single-position rewrites generate exactly the one-step 2-homotopies needed:
// changing p[k] to v is valid iff {p[k-1], p[k], v} and {p[k], p[k+1], v} are
// linked, which covers both elementary squares that change.
bool move_valid(const Complex2& c, const std::vector<VertexId>& p,
                std::size_t k, VertexId v) {
  std::array<VertexId, 3> left{p[k - 1], p[k], v};
  std::array<VertexId, 3> right{p[k], p[k + 1], v};
  return c.is_linked_small(left) && c.is_linked_small(right);
}

}  // namespace

HomotopySearch two_homotopic_bfs(const Complex2& complex, const Path& a,
                                 const Path& b, std::size_t max_len,
                                 std::size_t max_steps) {
  if (a.start() != b.start() || a.end() != b.end())
    throw std::invalid_argument("paths must share end points");

  // Congruent paths are 2-homotopic (caterpillar), no search needed.
  if (congruence_canonical_form(a) == congruence_canonical_form(b))
    return HomotopySearch::Yes;

  const std::size_t base_len = std::max(a.values().size(), b.values().size());
  if (base_len > max_len) return HomotopySearch::NoWithinBounds;
  std::size_t steps_used = 0;

  for (std::size_t len = base_len; len <= max_len; ++len) {
    auto pad = [len](const std::vector<VertexId>& vs) {
      std::vector<VertexId> p = vs;
      p.resize(len, vs.back());
      return p;
    };
    std::vector<VertexId> sa = pad(a.values()), sb = pad(b.values());
    if (sa == sb) return HomotopySearch::Yes;
    if (len < 3) continue;  // no interior position to move

    // Bidirectional BFS; side 1 grows from a, side 2 from b.
    std::unordered_map<std::vector<VertexId>, int, VecHash> seen;
    seen.emplace(sa, 1);
    seen.emplace(sb, 2);
    std::deque<std::pair<std::vector<VertexId>, int>> queue;
    queue.emplace_back(sa, 1);
    queue.emplace_back(sb, 2);
    bool truncated = false;

    while (!queue.empty()) {
      if (steps_used >= max_steps) { truncated = true; break; }
      auto [state, side] = std::move(queue.front());
      queue.pop_front();
      ++steps_used;
      for (std::size_t k = 1; k + 1 < state.size(); ++k) {
        VertexId old = state[k];
        for (VertexId v = 0; v < complex.vertex_count; ++v) {
          if (v == old || !move_valid(complex, state, k, v)) continue;
          state[k] = v;
          auto it = seen.find(state);
          if (it == seen.end()) {
            seen.emplace(state, side);
            queue.emplace_back(state, side);
          } else if (it->second != side) {
            return HomotopySearch::Yes;
          }
          state[k] = old;
        }
      }
    }
    if (truncated) break;
    // Reachable sets exhausted at this length without meeting: a longer
    // common padding can still succeed, so keep going while budget lasts.
  }
  return HomotopySearch::NoWithinBounds;
}

}  // namespace epsitop
