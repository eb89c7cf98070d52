#include "ntri/mop_solver.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <set>
#include <string>

namespace ntri {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

// State bits: in_i, in_j, dom_i, dom_j.
int pack(int in_i, int in_j, int dom_i, int dom_j) { return in_i | in_j << 1 | dom_i << 2 | dom_j << 3; }

struct Node {
  std::array<int, 16> cost;
  std::array<std::array<int, 3>, 16> from;  // in_k, left state, right state
};

class MopDp {
 public:
  MopDp(const NearTriangulation& m, const std::vector<Force>& force)
      : m_(m), n_(m.order()), force_(force), memo_(static_cast<std::size_t>(n_) * n_, -1) {}

  // Minimum size, or kInf.
  int solve() {
    const int root = node(0, n_ - 1);
    best_ = kInf;
    for (int s = 0; s < 16; ++s) {
      const int in_i = s & 1, in_j = s >> 1 & 1, dom_i = s >> 2 & 1, dom_j = s >> 3 & 1;
      if (!dom_i || !dom_j) continue;
      if (!allowed(m_.boundary_at(0), in_i) || !allowed(m_.boundary_at(n_ - 1), in_j)) continue;
      const int c = nodes_[root].cost[s];
      if (c >= kInf) continue;
      const int total = c + in_i + in_j;
      if (total < best_) {
        best_ = total;
        best_state_ = s;
      }
    }
    return best_;
  }

  VertexSet solution() {
    VertexSet out;
    const int s = best_state_;
    if (s & 1) out.push_back(m_.boundary_at(0));
    if (s >> 1 & 1) out.push_back(m_.boundary_at(n_ - 1));
    collect(0, n_ - 1, s, out);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  bool allowed(VertexId v, int in) const {
    if (force_.empty()) return true;
    const Force f = force_[v];
    return f == Force::Free || (f == Force::In) == (in == 1);
  }

  int node(int i, int j) {
    int& slot = memo_[static_cast<std::size_t>(i) * n_ + j];
    if (slot >= 0) return slot;
    Node nd;
    nd.cost.fill(kInf);
    if (j == i + 1) {
      for (int in_i = 0; in_i < 2; ++in_i) {
        for (int in_j = 0; in_j < 2; ++in_j) nd.cost[pack(in_i, in_j, in_j, in_i)] = 0;
      }
    } else {
      const VertexId apex = m_.cw_next(m_.boundary_at(j), m_.boundary_at(i));
      const int k = m_.boundary_index(apex);
      if (k <= i || k >= j) throw InvariantError("MOP dynamic program lost its triangle tree");
      const int left = node(i, k);
      const int right = node(k, j);
      const Node& l = nodes_[left];
      const Node& r = nodes_[right];
      for (int ls = 0; ls < 16; ++ls) {
        if (l.cost[ls] >= kInf) continue;
        const int in_i = ls & 1, in_k = ls >> 1 & 1, dom_i = ls >> 2 & 1, dom_kl = ls >> 3 & 1;
        if (!allowed(apex, in_k)) continue;
        for (int rs = 0; rs < 16; ++rs) {
          if (r.cost[rs] >= kInf) continue;
          if ((rs & 1) != in_k) continue;
          const int in_j = rs >> 1 & 1, dom_kr = rs >> 2 & 1, dom_j = rs >> 3 & 1;
          if (!dom_kl && !dom_kr) continue;
          const int s = pack(in_i, in_j, dom_i | in_j, dom_j | in_i);
          const int c = l.cost[ls] + r.cost[rs] + in_k;
          if (c < nd.cost[s]) {
            nd.cost[s] = c;
            nd.from[s] = {in_k, ls, rs};
          }
        }
      }
    }
    slot = static_cast<int>(nodes_.size());
    nodes_.push_back(nd);
    return slot;
  }

  void collect(int i, int j, int s, VertexSet& out) {
    if (j == i + 1) return;
    const Node& nd = nodes_[memo_[static_cast<std::size_t>(i) * n_ + j]];
    const auto [in_k, ls, rs] = nd.from[s];
    const VertexId apex = m_.cw_next(m_.boundary_at(j), m_.boundary_at(i));
    const int k = m_.boundary_index(apex);
    if (in_k) out.push_back(apex);
    collect(i, k, ls, out);
    collect(k, j, rs, out);
  }

  const NearTriangulation& m_;
  int n_;
  const std::vector<Force>& force_;
  std::vector<int> memo_;
  std::vector<Node> nodes_;
  int best_ = kInf;
  int best_state_ = 0;
};

}  // namespace

std::optional<VertexSet> mop_min_tds(const NearTriangulation& m, const std::vector<Force>& force) {
  if (m.interior_count() != 0) throw PreconditionError("graph is not a MOP");
  std::vector<Force> f = force;
  if (f.empty()) f.assign(m.order(), Force::Free);
  const int opt = MopDp(m, f).solve();
  if (opt >= kInf) return std::nullopt;
  // Lexicographically smallest optimum: try each vertex in ascending order.
  for (VertexId v = 0; v < m.order(); ++v) {
    if (f[v] != Force::Free) continue;
    f[v] = Force::In;
    if (MopDp(m, f).solve() != opt) f[v] = Force::Out;
  }
  MopDp final_dp(m, f);
  if (final_dp.solve() != opt) throw InvariantError("MOP dynamic program is inconsistent");
  return final_dp.solution();
}

TdsCertificate exact_tds_mop(const NearTriangulation& m) {
  if (m.interior_count() != 0) throw PreconditionError("MOP expected");
  TdsCertificate cert;
  cert.vertices = *mop_min_tds(m);
  ReductionStep s;
  s.case_id = CaseId::BaseMop;
  s.n = m.order();
  s.size = cert.size();
  s.bound = s.size;
  cert.trace.push_back(s);
  return cert;
}

TdsCertificate pentagon_tds_with(const NearTriangulation& m, VertexId u) {
  if (m.order() != 5 || m.interior_count() != 0) throw PreconditionError("pentagon MOP expected");
  std::vector<Force> f(5, Force::Free);
  f[u] = Force::In;
  const auto d = mop_min_tds(m, f);
  if (!d || d->size() != 2) throw InvariantError("pentagon without a size-2 TDS through the vertex");
  return {*d, {}};
}

TdsCertificate hexagon_tds_pair(const NearTriangulation& m, VertexId a, VertexId b) {
  if (m.order() != 6 || m.interior_count() != 0) throw PreconditionError("hexagon MOP expected");
  if (m.boundary_next(a) != b && m.boundary_next(b) != a) {
    throw PreconditionError("hexagon pair must be consecutive on the boundary");
  }
  for (VertexId u : {a, b}) {
    std::vector<Force> f(6, Force::Free);
    f[u] = Force::In;
    const auto d = mop_min_tds(m, f);
    if (d && d->size() == 2) return {*d, {}};
  }
  throw InvariantError("hexagon without a size-2 TDS through the pair");
}

NearTriangulation polygon_triangulation(int n, const std::vector<EdgeRef>& chords) {
  NearTriangulation::Rotation rot(n);
  for (int v = 0; v < n; ++v) {
    rot[v].push_back((v + 1) % n);
    rot[v].push_back((v + n - 1) % n);
  }
  for (const auto& c : chords) {
    rot[c.u].push_back(c.v);
    rot[c.v].push_back(c.u);
  }
  for (int v = 0; v < n; ++v) {
    std::sort(rot[v].begin(), rot[v].end(),
              [&](VertexId a, VertexId b) { return (a - v + n) % n < (b - v + n) % n; });
  }
  std::vector<VertexId> boundary(n);
  for (int v = 0; v < n; ++v) boundary[v] = v;
  return NearTriangulation::make(std::move(rot), std::move(boundary));
}

namespace {

void triangulate(std::vector<std::pair<int, int>>& pending, std::vector<EdgeRef>& chords,
                 const std::function<void(const std::vector<EdgeRef>&)>& visit) {
  if (pending.empty()) {
    visit(chords);
    return;
  }
  const auto [i, j] = pending.back();
  pending.pop_back();
  for (int k = i + 1; k < j; ++k) {
    const std::size_t mark_c = chords.size();
    const std::size_t mark_p = pending.size();
    if (k - i >= 2) {
      chords.push_back({i, k});
      pending.push_back({i, k});
    }
    if (j - k >= 2) {
      chords.push_back({k, j});
      pending.push_back({k, j});
    }
    triangulate(pending, chords, visit);
    chords.resize(mark_c);
    pending.resize(mark_p);
  }
  pending.push_back({i, j});
}

}  // namespace

void for_each_triangulation(int n, const std::function<void(const std::vector<EdgeRef>&)>& visit) {
  if (n < 3) throw PreconditionError("polygon needs at least 3 vertices");
  std::vector<std::pair<int, int>> pending{{0, n - 1}};
  std::vector<EdgeRef> chords;
  triangulate(pending, chords, visit);
}

MopEnumeration enumerate_mops(int n) {
  if (n < 3 || n > kCanonicalMaxOrder) {
    throw PreconditionError("enumerate_mops supports 3 <= n <= " + std::to_string(kCanonicalMaxOrder));
  }
  MopEnumeration out;
  std::set<std::vector<int>> keys;
  std::vector<int> key;
  std::vector<int> best;
  for_each_triangulation(n, [&](const std::vector<EdgeRef>& chords) {
    ++out.raw_count;
    best.clear();
    for (int r = 0; r < n; ++r) {
      for (int flip = 0; flip < 2; ++flip) {
        key.clear();
        for (const auto& c : chords) {
          int a = flip ? (r - c.u + n) % n : (c.u + r) % n;
          int b = flip ? (r - c.v + n) % n : (c.v + r) % n;
          if (a > b) std::swap(a, b);
          key.push_back(a * n + b);
        }
        std::sort(key.begin(), key.end());
        if (best.empty() || key < best) best = key;
      }
    }
    keys.insert(best);
  });
  for (const auto& k : keys) {
    std::vector<EdgeRef> chords;
    for (int code : k) chords.push_back({code / n, code % n});
    out.classes.push_back(polygon_triangulation(n, chords));
  }
  return out;
}

}  // namespace ntri
