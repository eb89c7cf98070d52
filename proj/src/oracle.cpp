#include "ntri/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <string>

namespace ntri {

namespace {

using Mask = std::uint64_t;

Mask bit(int v) { return Mask{1} << v; }

struct Budget {};

class Search {
 public:
  Search(const Adjacency& adj, const SearchLimits& limits)
      : n_(static_cast<int>(adj.size())), limits_(limits), start_(std::chrono::steady_clock::now()) {
    nbr_.assign(n_, 0);
    for (int v = 0; v < n_; ++v) {
      for (VertexId w : adj[v]) nbr_[v] |= bit(w);
    }
  }

  // True iff a TDS of size <= k exists containing `chosen` and avoiding
  // everything outside `allowed`.
  bool feasible(Mask chosen, Mask allowed, int k) {
    Mask dom = 0;
    for (Mask c = chosen; c; c &= c - 1) dom |= nbr_[std::countr_zero(c)];
    const Mask all = n_ == 64 ? ~Mask{0} : bit(n_) - 1;
    return recurse(chosen, dom, allowed & all & ~chosen, k - std::popcount(chosen));
  }

  std::int64_t nodes() const { return nodes_; }
  Mask last_solution() const { return solution_; }

 private:
  bool recurse(Mask chosen, Mask dom, Mask allowed, int left) {
    if (++nodes_ > limits_.node_budget) throw Budget{};
    if ((nodes_ & 1023) == 0) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
      if (elapsed.count() > limits_.time_budget) throw Budget{};
    }
    const Mask all = n_ == 64 ? ~Mask{0} : bit(n_) - 1;
    const Mask undom = all & ~dom;
    if (undom == 0) {
      solution_ = chosen;
      return true;
    }
    if (left <= 0) return false;
    // Lower bound and branching vertex.
    int best_cover = 0;
    for (Mask a = allowed; a; a &= a - 1) {
      best_cover = std::max(best_cover, std::popcount(nbr_[std::countr_zero(a)] & undom));
    }
    if (best_cover == 0) return false;
    const int need = (std::popcount(undom) + best_cover - 1) / best_cover;
    if (need > left) return false;
    int pick = -1;
    int pick_count = 1 << 30;
    for (Mask u = undom; u; u &= u - 1) {
      const int v = std::countr_zero(u);
      const int c = std::popcount(nbr_[v] & allowed);
      if (c < pick_count) {
        pick_count = c;
        pick = v;
      }
    }
    if (pick_count == 0) return false;
    Mask cand = nbr_[pick] & allowed;
    while (cand) {
      const int c = std::countr_zero(cand);
      cand &= cand - 1;
      if (recurse(chosen | bit(c), dom | nbr_[c], allowed & ~bit(c), left - 1)) return true;
      allowed &= ~bit(c);
    }
    return false;
  }

  int n_;
  SearchLimits limits_;
  std::chrono::steady_clock::time_point start_;
  std::vector<Mask> nbr_;
  std::int64_t nodes_ = 0;
  Mask solution_ = 0;
};

VertexSet to_set(Mask m) {
  VertexSet out;
  for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

}  // namespace

bool is_tds(const Adjacency& adj, const VertexSet& d) {
  return undominated(adj, d).empty();
}

bool is_tds(const NearTriangulation& t, const VertexSet& d) { return is_tds(t.adjacency(), d); }

VertexSet undominated(const Adjacency& adj, const VertexSet& d) {
  const int n = static_cast<int>(adj.size());
  std::vector<char> in(n, 0);
  for (VertexId v : d) {
    if (v >= 0 && v < n) in[v] = 1;
  }
  VertexSet out;
  for (int v = 0; v < n; ++v) {
    bool hit = false;
    for (VertexId w : adj[v]) hit |= in[w] != 0;
    if (!hit) out.push_back(v);
  }
  return out;
}

SearchResult exact_tds(const Adjacency& adj, const TdsConstraints& constraints,
                       const SearchLimits& limits) {
  const int n = static_cast<int>(adj.size());
  if (n > limits.max_n || n > 64) {
    throw PreconditionError("oracle limited to " + std::to_string(std::min(limits.max_n, 64)) +
                            " vertices, got " + std::to_string(n));
  }
  Mask must = 0;
  Mask allowed = n == 64 ? ~Mask{0} : bit(n) - 1;
  for (VertexId v : constraints.must_contain) must |= bit(v);
  for (VertexId v : constraints.forbidden) allowed &= ~bit(v);
  SearchResult res;
  if (must & ~allowed) return res;
  const int cap = constraints.max_size < 0 ? n : std::min(constraints.max_size, n);
  Search search(adj, limits);
  try {
    int k = std::max(std::popcount(must), 1);
    while (k <= cap && !search.feasible(must, allowed, k)) ++k;
    if (k > cap) {
      res.nodes = search.nodes();
      return res;
    }
    Mask best = search.last_solution();
    if (constraints.lexicographic) {
      // Fix members one at a time, smallest id first.
      Mask fixed = must;
      Mask banned = ~allowed;
      int last = -1;
      for (int slot = 0; slot < k; ++slot) {
        bool placed = false;
        for (int v = last + 1; v < n && !placed; ++v) {
          if (banned & bit(v)) continue;
          if (must & bit(v)) {
            last = v;
            placed = true;
            break;
          }
          if (search.feasible(fixed | bit(v), ~banned, k) &&
              std::popcount(search.last_solution()) <= k) {
            fixed |= bit(v);
            best = search.last_solution();
            last = v;
            placed = true;
            break;
          }
          banned |= bit(v);
        }
        if (!placed) break;
      }
      if (std::popcount(fixed) == k) best = fixed;
    }
    res.status = SearchStatus::Optimal;
    res.vertices = to_set(best);
  } catch (const Budget&) {
    res.status = SearchStatus::BudgetExceeded;
  }
  res.nodes = search.nodes();
  return res;
}

SearchResult exact_tds(const NearTriangulation& t, const TdsConstraints& constraints,
                       const SearchLimits& limits) {
  return exact_tds(t.adjacency(), constraints, limits);
}

}  // namespace ntri
