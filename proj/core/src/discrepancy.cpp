#include "qdl/discrepancy.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>

#include <fmt/format.h>

#include "qdl/parallel.hpp"

namespace qdl {

namespace {

using Count = std::uint32_t;

// Distinct coordinate values along one axis and each point's rank among them.
struct Axis {
  std::vector<double> values;
  std::vector<std::int32_t> rank;
};

Axis build_axis(const PointSet& p, std::size_t j) {
  const std::size_t n = p.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p(a, j) < p(b, j); });
  Axis axis;
  axis.rank.resize(n);
  for (auto i : order) {
    const double v = p(i, j);
    if (axis.values.empty() || v - axis.values.back() > kGridTolerance) axis.values.push_back(v);
    axis.rank[i] = static_cast<std::int32_t>(axis.values.size() - 1);
  }
  return axis;
}

std::vector<Axis> build_axes(const PointSet& p) {
  std::vector<Axis> axes;
  axes.reserve(p.dimension());
  for (std::size_t j = 0; j < p.dimension(); ++j) axes.push_back(build_axis(p, j));
  return axes;
}

void check_budget(double cells, const char* what) {
  if (cells > kGridBudget) {
    throw BudgetExceeded(fmt::format("{}: {:.3g} grid evaluations exceed the budget of {:.0e}", what, cells,
                                     kGridBudget));
  }
}

// Row-major inclusive prefix sums along every axis of a dense array.
void prefix_sum(std::vector<Count>& a, const std::vector<std::size_t>& sizes) {
  std::size_t stride = 1;
  for (std::size_t k = sizes.size(); k-- > 0;) {
    const std::size_t len = sizes[k];
    const std::size_t outer = a.size() / (len * stride);
    for (std::size_t o = 0; o < outer; ++o) {
      Count* base = a.data() + o * len * stride;
      for (std::size_t g = 1; g < len; ++g) {
        Count* cur = base + g * stride;
        const Count* prev = cur - stride;
        for (std::size_t s = 0; s < stride; ++s) cur[s] += prev[s];
      }
    }
    stride *= len;
  }
}

// Grid-index witness in original axis order; open precedes closed on ties.
struct GridWitness {
  double value = -1.0;
  std::vector<std::int32_t> index;
  bool closed = false;
};

bool better(double value, const std::vector<std::int32_t>& index, bool closed, const GridWitness& best) {
  if (value != best.value) return value > best.value;
  if (index != best.index) return index < best.index;
  return !closed && best.closed;
}

void merge_into(GridWitness& best, const GridWitness& other) {
  if (other.value < 0.0) return;
  if (best.value < 0.0 || better(other.value, other.index, other.closed, best)) best = other;
}

}  // namespace

double AnchoredBox::volume() const {
  double v = 1.0;
  for (double a : upper) v *= a;
  return v;
}

double CornerBox::volume() const {
  double v = 1.0;
  for (std::size_t j = 0; j < upper.size(); ++j) v *= std::max(0.0, upper[j] - lower[j]);
  return v;
}

double local_discrepancy(const PointSet& p, const AnchoredBox& box) {
  const std::size_t d = p.dimension();
  if (box.upper.size() != d) {
    throw std::invalid_argument(fmt::format("local_discrepancy: box has dimension {}, points {}", box.upper.size(), d));
  }
  for (double a : box.upper) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("local_discrepancy: box corner outside [0,1]");
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    bool inside = true;
    for (std::size_t j = 0; j < d && inside; ++j) {
      inside = box.closed ? p(i, j) <= box.upper[j] : p(i, j) < box.upper[j];
    }
    count += inside;
  }
  return static_cast<double>(count) / static_cast<double>(p.size()) - box.volume();
}

double box_discrepancy(const PointSet& p, const CornerBox& box) {
  const std::size_t d = p.dimension();
  if (box.upper.size() != d || box.lower.size() != d) {
    throw std::invalid_argument("box_discrepancy: dimension mismatch");
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    bool inside = true;
    for (std::size_t j = 0; j < d && inside; ++j) {
      const double x = p(i, j);
      inside = box.closed ? (box.lower[j] <= x && x <= box.upper[j]) : (box.lower[j] < x && x < box.upper[j]);
    }
    count += inside;
  }
  return static_cast<double>(count) / static_cast<double>(p.size()) - box.volume();
}

double star_grid_size(const PointSet& p) {
  double cells = 1.0;
  for (std::size_t j = 0; j < p.dimension(); ++j) cells *= static_cast<double>(build_axis(p, j).values.size() + 1);
  return cells;
}

// The sup of |local discrepancy| is attained on the critical grid: at a node
// alpha it is max(V - A_open/N, A_closed/N - V). With integer ranks, the
// closed count at node g equals the open count at g + 1, so one dominance
// array C(g) = #{i : rank_i < g componentwise} serves both. C is streamed one
// layer of the largest axis at a time.
DiscrepancyResult star_discrepancy_exact(const PointSet& p) {
  const std::size_t d = p.dimension();
  const std::size_t n = p.size();
  const double nd = static_cast<double>(n);
  const auto axes = build_axes(p);

  std::vector<std::vector<double>> grid(d);
  double cells = 1.0;
  for (std::size_t j = 0; j < d; ++j) {
    grid[j] = axes[j].values;
    grid[j].push_back(1.0);
    cells *= static_cast<double>(grid[j].size());
  }
  check_budget(cells, "star_discrepancy_exact");

  std::size_t stream = 0;
  for (std::size_t j = 1; j < d; ++j) {
    if (grid[j].size() > grid[stream].size()) stream = j;
  }

  // Layer axes: all but the streamed one, or a single virtual axis {1} in 1-d.
  std::vector<std::size_t> layer_axes;
  for (std::size_t j = 0; j < d; ++j) {
    if (j != stream) layer_axes.push_back(j);
  }
  const bool virtual_axis = layer_axes.empty();
  const std::vector<double> unit_grid{1.0};
  std::vector<const std::vector<double>*> lgrid;
  std::vector<std::size_t> lsize;
  if (virtual_axis) {
    lgrid.push_back(&unit_grid);
    lsize.push_back(1);
  } else {
    for (auto j : layer_axes) {
      lgrid.push_back(&grid[j]);
      lsize.push_back(grid[j].size());
    }
  }
  const std::size_t k_axes = lsize.size();
  std::vector<std::size_t> stride(k_axes, 1);
  for (std::size_t k = k_axes - 1; k-- > 0;) stride[k] = stride[k + 1] * lsize[k + 1];
  const std::size_t layer = stride[0] * lsize[0];
  const std::size_t last = lsize[k_axes - 1];
  const std::size_t rows = layer / last;

  // Histogram offset of each point: rank + 1 along every layer axis.
  const std::size_t stream_size = grid[stream].size();
  std::vector<std::vector<std::size_t>> bucket(stream_size);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t off = 0;
    if (!virtual_axis) {
      for (std::size_t k = 0; k < k_axes; ++k) {
        off += static_cast<std::size_t>(axes[layer_axes[k]].rank[i] + 1) * stride[k];
      }
    }
    bucket[static_cast<std::size_t>(axes[stream].rank[i])].push_back(off);
  }

  std::vector<Count> histogram(layer, 0);
  std::vector<Count> current(layer, 0);
  std::vector<Count> next(layer, 0);

  auto to_original = [&](std::size_t t, const std::vector<std::int32_t>& layer_index) {
    std::vector<std::int32_t> idx(d);
    idx[stream] = static_cast<std::int32_t>(t);
    if (!virtual_axis) {
      for (std::size_t k = 0; k < k_axes; ++k) idx[layer_axes[k]] = layer_index[k];
    }
    return idx;
  };

  GridWitness best;
  for (std::size_t t = 0; t < stream_size; ++t) {
    if (t + 1 < stream_size) {
      for (auto off : bucket[t]) ++histogram[off];
      next = histogram;
      prefix_sum(next, lsize);
    } else {
      next = current;
    }
    const double v0 = grid[stream][t];
    const std::size_t chunks = chunk_count(rows, std::max<std::size_t>(1, (1 << 14) / last));
    std::vector<GridWitness> partial(chunks);
    parallel_chunks(rows, std::max<std::size_t>(1, (1 << 14) / last),
                    [&](std::size_t chunk, std::size_t begin, std::size_t end) {
      GridWitness local;
      std::vector<std::int32_t> g(k_axes, 0);
      const std::vector<double>& glast = *lgrid[k_axes - 1];
      for (std::size_t row = begin; row < end; ++row) {
        // Decode the row into indices of all but the last layer axis.
        std::size_t rem = row;
        double pv = v0;
        std::size_t cbase = 0;
        for (std::size_t k = k_axes - 1; k-- > 0;) {
          const std::size_t gk = rem % lsize[k];
          rem /= lsize[k];
          g[k] = static_cast<std::int32_t>(gk);
        }
        for (std::size_t k = 0; k + 1 < k_axes; ++k) {
          pv *= (*lgrid[k])[g[k]];
          cbase += std::min<std::size_t>(g[k] + 1, lsize[k] - 1) * stride[k];
        }
        const Count* open = current.data() + row * last;
        const Count* closed = next.data() + cbase;

        double row_max = -1.0;
        for (std::size_t q = 0; q < last; ++q) {
          const double vol = pv * glast[q];
          const std::size_t cq = q + 1 < last ? q + 1 : last - 1;
          const double a = vol - static_cast<double>(open[q]) / nd;
          const double b = static_cast<double>(closed[cq]) / nd - vol;
          row_max = std::max(row_max, std::max(a, b));
        }
        if (row_max < local.value) continue;
        for (std::size_t q = 0; q < last; ++q) {
          const double vol = pv * glast[q];
          const std::size_t cq = q + 1 < last ? q + 1 : last - 1;
          const double a = vol - static_cast<double>(open[q]) / nd;
          const double b = static_cast<double>(closed[cq]) / nd - vol;
          if (a < local.value && b < local.value) continue;
          g[k_axes - 1] = static_cast<std::int32_t>(q);
          auto idx = to_original(t, g);
          if (local.value < 0.0 || better(a, idx, false, local)) local = GridWitness{a, idx, false};
          if (better(b, idx, true, local)) local = GridWitness{b, std::move(idx), true};
        }
      }
      partial[chunk] = std::move(local);
    });
    for (const auto& w : partial) merge_into(best, w);
    std::swap(current, next);
  }

  AnchoredBox box;
  box.closed = best.closed;
  box.upper.resize(d);
  for (std::size_t j = 0; j < d; ++j) box.upper[j] = grid[j][static_cast<std::size_t>(best.index[j])];
  return DiscrepancyResult{best.value, box, std::nullopt};
}

namespace {

// Candidate face pair [a, b] on one axis with the rank bounds used for open
// (a < x < b) and closed (a <= x <= b) counting: points with lo <= rank < hi.
struct FacePair {
  double lower;
  double upper;
  std::int32_t lo_open, lo_closed, hi_open, hi_closed;
};

std::vector<FacePair> face_pairs(const Axis& axis) {
  const auto m = static_cast<std::int32_t>(axis.values.size());
  struct Face {
    double v;
    std::int32_t open, closed;
  };
  std::vector<Face> lowers, uppers;
  if (axis.values.front() > kGridTolerance) lowers.push_back({0.0, 0, 0});
  for (std::int32_t q = 0; q < m; ++q) {
    lowers.push_back({axis.values[q], q + 1, q});
    uppers.push_back({axis.values[q], q, q + 1});
  }
  uppers.push_back({1.0, m, m});
  std::vector<FacePair> pairs;
  for (const auto& lo : lowers) {
    for (const auto& hi : uppers) {
      if (lo.v <= hi.v) pairs.push_back({lo.v, hi.v, lo.open, lo.closed, hi.open, hi.closed});
    }
  }
  return pairs;
}

}  // namespace

double unanchored_grid_size(const PointSet& p) {
  double pairs = 1.0;
  for (std::size_t j = 0; j < p.dimension(); ++j) pairs *= static_cast<double>(face_pairs(build_axis(p, j)).size());
  return pairs;
}

DiscrepancyResult unanchored_discrepancy_exact(const PointSet& p) {
  const std::size_t d = p.dimension();
  const std::size_t n = p.size();
  const double nd = static_cast<double>(n);
  const auto axes = build_axes(p);

  std::vector<std::vector<FacePair>> pairs(d);
  double total = 1.0;
  for (std::size_t j = 0; j < d; ++j) {
    pairs[j] = face_pairs(axes[j]);
    total *= static_cast<double>(pairs[j].size());
  }
  check_budget(total, "unanchored_discrepancy_exact");

  // Dominance counts C(g) = #{rank < g}, g_j in [0, m_j].
  std::vector<std::size_t> size(d);
  for (std::size_t j = 0; j < d; ++j) size[j] = axes[j].values.size() + 1;
  std::vector<std::size_t> stride(d, 1);
  for (std::size_t j = d - 1; j-- > 0;) stride[j] = stride[j + 1] * size[j + 1];
  std::vector<Count> dom(stride[0] * size[0], 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t off = 0;
    for (std::size_t j = 0; j < d; ++j) off += static_cast<std::size_t>(axes[j].rank[i] + 1) * stride[j];
    ++dom[off];
  }
  prefix_sum(dom, size);

  const std::size_t corners = std::size_t{1} << d;
  auto count_in = [&](const std::vector<std::int32_t>& lo, const std::vector<std::int32_t>& hi) -> std::int64_t {
    for (std::size_t j = 0; j < d; ++j) {
      if (lo[j] >= hi[j]) return 0;
    }
    std::int64_t c = 0;
    for (std::size_t s = 0; s < corners; ++s) {
      std::size_t off = 0;
      int sign = 1;
      for (std::size_t j = 0; j < d; ++j) {
        if (s >> j & 1u) {
          off += static_cast<std::size_t>(lo[j]) * stride[j];
          sign = -sign;
        } else {
          off += static_cast<std::size_t>(hi[j]) * stride[j];
        }
      }
      c += sign * static_cast<std::int64_t>(dom[off]);
    }
    return c;
  };

  struct Best {
    double value = -1.0;
    std::size_t index = 0;
    bool closed = false;
  };
  auto improves = [](double v, std::size_t idx, bool closed, const Best& b) {
    if (v != b.value) return v > b.value;
    if (idx != b.index) return idx < b.index;
    return !closed && b.closed;
  };

  const auto n_total = static_cast<std::size_t>(total);
  const std::size_t chunks = chunk_count(n_total, 1 << 12);
  std::vector<Best> partial(chunks);
  parallel_chunks(n_total, 1 << 12, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Best local;
    std::vector<std::int32_t> lo_o(d), lo_c(d), hi_o(d), hi_c(d);
    for (std::size_t idx = begin; idx < end; ++idx) {
      std::size_t rem = idx;
      double vol = 1.0;
      for (std::size_t j = d; j-- > 0;) {
        const FacePair& f = pairs[j][rem % pairs[j].size()];
        rem /= pairs[j].size();
        lo_o[j] = f.lo_open;
        lo_c[j] = f.lo_closed;
        hi_o[j] = f.hi_open;
        hi_c[j] = f.hi_closed;
        vol *= f.upper - f.lower;
      }
      const double a = vol - static_cast<double>(count_in(lo_o, hi_o)) / nd;
      const double b = static_cast<double>(count_in(lo_c, hi_c)) / nd - vol;
      if (local.value < 0.0 || improves(a, idx, false, local)) local = {a, idx, false};
      if (improves(b, idx, true, local)) local = {b, idx, true};
    }
    partial[chunk] = local;
  });

  Best best;
  for (const auto& b : partial) {
    if (b.value >= 0.0 && (best.value < 0.0 || improves(b.value, b.index, b.closed, best))) best = b;
  }

  CornerBox box;
  box.closed = best.closed;
  box.lower.resize(d);
  box.upper.resize(d);
  std::size_t rem = best.index;
  for (std::size_t j = d; j-- > 0;) {
    const FacePair& f = pairs[j][rem % pairs[j].size()];
    rem /= pairs[j].size();
    box.lower[j] = f.lower;
    box.upper[j] = f.upper;
  }
  return DiscrepancyResult{best.value, box, std::nullopt};
}

SubsetWeightFn product_weight_fn(const WeightFamily& w) {
  return [w](const Subset& u) { return subset_weight(w, u); };
}

namespace {

template <class Oracle>
std::vector<SubsetContribution> contributions(const PointSet& p, const SubsetWeightFn& weight, Oracle oracle) {
  std::vector<SubsetContribution> out;
  for_each_subset_mask(p.dimension(), [&](std::uint64_t mask) {
    Subset u = Subset::from_mask(mask);
    const double g = weight(u);
    DiscrepancyResult r = oracle(project(p, u));
    r.witness_subset = u;
    out.push_back(SubsetContribution{std::move(u), g, std::move(r)});
  });
  return out;
}

}  // namespace

std::vector<SubsetContribution> star_contributions(const PointSet& p, const SubsetWeightFn& weight) {
  return contributions(p, weight, [](const PointSet& q) { return star_discrepancy_exact(q); });
}

std::vector<SubsetContribution> unanchored_contributions(const PointSet& p, const SubsetWeightFn& weight) {
  return contributions(p, weight, [](const PointSet& q) { return unanchored_discrepancy_exact(q); });
}

DiscrepancyResult select_weighted_max(const std::vector<SubsetContribution>& contributions) {
  if (contributions.empty()) throw std::invalid_argument("select_weighted_max: no contributions");
  const SubsetContribution* best = &contributions.front();
  for (const auto& c : contributions) {
    const double v = c.weighted();
    if (v > best->weighted() || (v == best->weighted() && subset_precedes(c.subset, best->subset))) best = &c;
  }
  DiscrepancyResult r = best->discrepancy;
  r.value = best->weighted();
  r.witness_subset = best->subset;
  return r;
}

DiscrepancyResult weighted_star_discrepancy_exact(const PointSet& p, const SubsetWeightFn& weight) {
  return select_weighted_max(star_contributions(p, weight));
}

DiscrepancyResult weighted_star_discrepancy_exact(const PointSet& p, const WeightFamily& w) {
  return weighted_star_discrepancy_exact(p, product_weight_fn(w));
}

DiscrepancyResult weighted_unanchored_discrepancy_exact(const PointSet& p, const SubsetWeightFn& weight) {
  return select_weighted_max(unanchored_contributions(p, weight));
}

DiscrepancyResult weighted_unanchored_discrepancy_exact(const PointSet& p, const WeightFamily& w) {
  return weighted_unanchored_discrepancy_exact(p, product_weight_fn(w));
}

}  // namespace qdl
