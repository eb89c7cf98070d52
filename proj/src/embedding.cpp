#include "ntri/embedding.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace ntri {

namespace {

int index_in(const std::vector<VertexId>& list, VertexId x) {
  const auto it = std::find(list.begin(), list.end(), x);
  return it == list.end() ? -1 : static_cast<int>(it - list.begin());
}

// Face traversal on a raw rotation system (assumed symmetric and simple).
std::vector<std::vector<VertexId>> traverse_faces(const NearTriangulation::Rotation& rot) {
  const int n = static_cast<int>(rot.size());
  std::vector<std::vector<char>> seen(n);
  for (int v = 0; v < n; ++v) seen[v].assign(rot[v].size(), 0);
  std::vector<std::vector<VertexId>> out;
  for (VertexId v = 0; v < n; ++v) {
    for (std::size_t p = 0; p < rot[v].size(); ++p) {
      if (seen[v][p]) continue;
      std::vector<VertexId> cycle;
      VertexId a = v;
      int ap = static_cast<int>(p);
      while (!seen[a][ap]) {
        seen[a][ap] = 1;
        cycle.push_back(a);
        const VertexId b = rot[a][ap];
        const int back = index_in(rot[b], a);
        const int next = (back + 1) % static_cast<int>(rot[b].size());
        a = b;
        ap = next;
      }
      out.push_back(std::move(cycle));
    }
  }
  return out;
}

bool same_cycle(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
  if (a.size() != b.size() || a.empty()) return false;
  const int start = index_in(a, b[0]);
  if (start < 0) return false;
  const std::size_t h = a.size();
  for (std::size_t i = 0; i < h; ++i) {
    if (a[(start + i) % h] != b[i]) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(GraphClass c) {
  switch (c) {
    case GraphClass::Mop:
      return "MOP";
    case GraphClass::Reducible:
      return "Reducible";
    case GraphClass::Irreducible:
      return "Irreducible";
  }
  return "?";
}

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column) {}

std::optional<std::string> NearTriangulation::check(const Rotation& rot,
                                                    const std::vector<VertexId>& boundary) {
  const int n = static_cast<int>(rot.size());
  if (n < 3) return "vertex count below 3";
  for (VertexId v = 0; v < n; ++v) {
    std::vector<VertexId> sorted = rot[v];
    for (VertexId w : sorted) {
      if (w < 0 || w >= n) {
        return "neighbor id out of range at vertex " + std::to_string(v);
      }
      if (w == v) return "self-loop at vertex " + std::to_string(v);
    }
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      return "parallel edge at vertex " + std::to_string(v);
    }
    if (sorted.size() < 2) return "vertex " + std::to_string(v) + " has degree below 2";
  }
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId w : rot[v]) {
      if (index_in(rot[w], v) < 0) {
        return "asymmetric rotation between " + std::to_string(v) + " and " + std::to_string(w);
      }
    }
  }
  const int h = static_cast<int>(boundary.size());
  if (h < 3) return "boundary length below 3";
  {
    std::vector<char> mark(n, 0);
    for (VertexId b : boundary) {
      if (b < 0 || b >= n) return "boundary vertex out of range";
      if (mark[b]) return "repeated boundary vertex " + std::to_string(b);
      mark[b] = 1;
    }
  }
  {
    std::vector<char> seen(n, 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (VertexId w : rot[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
    if (count != n) return "disconnected graph";
  }

  const auto fs = traverse_faces(rot);
  int outer = -1;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (same_cycle(fs[i], boundary)) {
      outer = static_cast<int>(i);
      break;
    }
  }
  if (outer < 0) {
    std::vector<VertexId> reversed(boundary.rbegin(), boundary.rend());
    for (const auto& f : fs) {
      if (same_cycle(f, reversed)) return "counterclockwise outer face";
    }
    return "boundary is not a face";
  }
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (static_cast<int>(i) == outer) continue;
    if (fs[i].size() != 3) return "non-triangular inner face at face #" + std::to_string(i);
  }
  long darts = 0;
  for (const auto& r : rot) darts += static_cast<long>(r.size());
  const long e = darts / 2;
  if (n - e + static_cast<long>(fs.size()) != 2) return "Euler characteristic violated";
  return std::nullopt;
}

NearTriangulation NearTriangulation::make(Rotation rotation, std::vector<VertexId> boundary) {
  if (auto err = check(rotation, boundary)) throw InvariantError(*err);
  NearTriangulation t;
  const int n = static_cast<int>(rotation.size());
  t.rot_ = std::move(rotation);
  t.boundary_ = std::move(boundary);
  t.bpos_.assign(n, -1);
  for (std::size_t i = 0; i < t.boundary_.size(); ++i) t.bpos_[t.boundary_[i]] = static_cast<int>(i);
  t.sorted_adj_.resize(n);
  int darts = 0;
  for (VertexId v = 0; v < n; ++v) {
    t.sorted_adj_[v] = t.rot_[v];
    std::sort(t.sorted_adj_[v].begin(), t.sorted_adj_[v].end());
    darts += static_cast<int>(t.rot_[v].size());
  }
  t.edge_count_ = darts / 2;
  return t;
}

VertexId NearTriangulation::boundary_at(int i) const {
  const int h = boundary_length();
  return boundary_[((i % h) + h) % h];
}

VertexId NearTriangulation::boundary_next(VertexId v) const {
  if (bpos_[v] < 0) throw PreconditionError("vertex " + std::to_string(v) + " is interior");
  return boundary_at(bpos_[v] + 1);
}

VertexId NearTriangulation::boundary_prev(VertexId v) const {
  if (bpos_[v] < 0) throw PreconditionError("vertex " + std::to_string(v) + " is interior");
  return boundary_at(bpos_[v] - 1);
}

bool NearTriangulation::adjacent(VertexId a, VertexId b) const {
  if (a < 0 || a >= order() || b < 0 || b >= order()) return false;
  return std::binary_search(sorted_adj_[a].begin(), sorted_adj_[a].end(), b);
}

std::vector<VertexId> NearTriangulation::common_neighbors(VertexId a, VertexId b) const {
  std::vector<VertexId> out;
  std::set_intersection(sorted_adj_[a].begin(), sorted_adj_[a].end(), sorted_adj_[b].begin(),
                        sorted_adj_[b].end(), std::back_inserter(out));
  return out;
}

VertexId NearTriangulation::cw_next(VertexId at, VertexId from) const {
  const auto& r = rot_[at];
  const int i = index_in(r, from);
  if (i < 0) throw PreconditionError("no edge " + std::to_string(at) + "-" + std::to_string(from));
  return r[(i + 1) % r.size()];
}

VertexId NearTriangulation::cw_prev(VertexId at, VertexId from) const {
  const auto& r = rot_[at];
  const int i = index_in(r, from);
  if (i < 0) throw PreconditionError("no edge " + std::to_string(at) + "-" + std::to_string(from));
  return r[(i + r.size() - 1) % r.size()];
}

std::vector<EdgeRef> NearTriangulation::edges() const {
  std::vector<EdgeRef> out;
  out.reserve(edge_count_);
  for (VertexId v = 0; v < order(); ++v) {
    for (VertexId w : sorted_adj_[v]) {
      if (v < w) out.push_back({v, w});
    }
  }
  return out;
}

std::vector<std::vector<VertexId>> NearTriangulation::adjacency() const { return sorted_adj_; }

std::vector<Face> faces(const NearTriangulation& t) {
  std::vector<Face> out;
  for (auto& cycle : traverse_faces(t.rotation())) {
    const bool outer = same_cycle(cycle, t.boundary());
    out.push_back({std::move(cycle), outer});
  }
  return out;
}

bool is_diagonal(const NearTriangulation& t, EdgeRef e) {
  if (!t.adjacent(e.u, e.v)) return false;
  if (!t.on_boundary(e.u) || !t.on_boundary(e.v)) return false;
  return t.boundary_next(e.u) != e.v && t.boundary_prev(e.u) != e.v;
}

GraphClass classify(const NearTriangulation& t) {
  if (t.interior_count() == 0) return GraphClass::Mop;
  const int h = t.boundary_length();
  for (int i = 0; i < h; ++i) {
    const VertexId a = t.boundary_at(i);
    const VertexId b = t.boundary_at(i + 1);
    if (!t.on_boundary(t.face_apex(b, a))) return GraphClass::Reducible;
  }
  return GraphClass::Irreducible;
}

// ---------------------------------------------------------------------------
// Canonical form: colour refinement plus exhaustive individualisation.

namespace {

using Colouring = std::vector<int>;

Colouring refine(const std::vector<std::vector<VertexId>>& adj, Colouring colour) {
  const int n = static_cast<int>(adj.size());
  int classes = 1 + *std::max_element(colour.begin(), colour.end());
  while (true) {
    std::vector<std::vector<int>> sig(n);
    for (int v = 0; v < n; ++v) {
      sig[v].assign(classes + 1, 0);
      sig[v][0] = colour[v];
      for (VertexId w : adj[v]) ++sig[v][1 + colour[w]];
    }
    std::vector<std::vector<int>> uniq = sig;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    Colouring next(n);
    for (int v = 0; v < n; ++v) {
      next[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[v]) - uniq.begin());
    }
    const int next_classes = static_cast<int>(uniq.size());
    colour = std::move(next);
    if (next_classes == classes) return colour;
    classes = next_classes;
  }
}

std::string encode(const std::vector<std::vector<VertexId>>& adj, const Colouring& pos) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> at(n);
  for (int v = 0; v < n; ++v) at[pos[v]] = v;
  std::string bits;
  bits.reserve(n * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& a = adj[at[i]];
      bits.push_back(std::find(a.begin(), a.end(), at[j]) != a.end() ? '1' : '0');
    }
  }
  return bits;
}

void search_leaves(const std::vector<std::vector<VertexId>>& adj, const Colouring& colour,
                   std::string& best) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> size(n, 0);
  for (int c : colour) ++size[c];
  int target = -1;
  for (int c = 0; c < n; ++c) {
    if (size[c] > 1) {
      target = c;
      break;
    }
  }
  if (target < 0) {
    std::string leaf = encode(adj, colour);
    if (best.empty() || leaf < best) best = std::move(leaf);
    return;
  }
  for (int v = 0; v < n; ++v) {
    if (colour[v] != target) continue;
    Colouring split(n);
    for (int w = 0; w < n; ++w) split[w] = 2 * colour[w] + 1;
    split[v] = 2 * colour[v];
    search_leaves(adj, refine(adj, split), best);
  }
}

}  // namespace

std::string canonical_form(const std::vector<std::vector<VertexId>>& adjacency) {
  const int n = static_cast<int>(adjacency.size());
  if (n > kCanonicalMaxOrder) {
    throw PreconditionError("canonical form limited to order " + std::to_string(kCanonicalMaxOrder));
  }
  if (n == 0) return "0:";
  std::string best;
  search_leaves(adjacency, refine(adjacency, Colouring(n, 0)), best);
  return std::to_string(n) + ":" + best;
}

std::string canonical_form(const NearTriangulation& t) { return canonical_form(t.adjacency()); }

// ---------------------------------------------------------------------------
// NTG text format.

namespace {

struct Token {
  std::string text;
  int line;
  int column;
};

std::vector<std::vector<Token>> tokenize(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  int line = 1;
  std::size_t i = 0;
  while (i <= text.size()) {
    const std::size_t end = std::min(text.find('\n', i), text.size());
    std::string_view row = text.substr(i, end - i);
    if (const auto hash = row.find('#'); hash != std::string_view::npos) row = row.substr(0, hash);
    std::vector<Token> toks;
    std::size_t j = 0;
    while (j < row.size()) {
      if (std::isspace(static_cast<unsigned char>(row[j]))) {
        ++j;
        continue;
      }
      std::size_t k = j;
      while (k < row.size() && !std::isspace(static_cast<unsigned char>(row[k]))) ++k;
      toks.push_back({std::string(row.substr(j, k - j)), line, static_cast<int>(j) + 1});
      j = k;
    }
    if (!toks.empty()) lines.push_back(std::move(toks));
    ++line;
    i = end + 1;
  }
  return lines;
}

long parse_int(const Token& tok) {
  if (tok.text.empty()) throw ParseError("expected integer", tok.line, tok.column);
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(tok.text, &used);
  } catch (const std::exception&) {
    throw ParseError("expected integer, got '" + tok.text + "'", tok.line, tok.column);
  }
  if (used != tok.text.size()) {
    throw ParseError("expected integer, got '" + tok.text + "'", tok.line, tok.column);
  }
  return value;
}

void expect_word(const Token& tok, std::string_view word) {
  if (tok.text != word) {
    throw ParseError("expected '" + std::string(word) + "', got '" + tok.text + "'", tok.line,
                     tok.column);
  }
}

}  // namespace

NearTriangulation parse_ntg(std::string_view text) {
  const auto lines = tokenize(text);
  auto require_line = [&](std::size_t idx) -> const std::vector<Token>& {
    if (idx >= lines.size()) {
      const int last = lines.empty() ? 1 : lines.back().front().line + 1;
      throw ParseError("unexpected end of input", last, 1);
    }
    return lines[idx];
  };

  const auto& header = require_line(0);
  expect_word(header[0], "ntg");
  if (header.size() != 2) throw ParseError("expected 'ntg 1'", header[0].line, header[0].column);
  if (parse_int(header[1]) != 1) {
    throw ParseError("unsupported version", header[1].line, header[1].column);
  }

  const auto& nline = require_line(1);
  expect_word(nline[0], "n");
  if (nline.size() != 2) throw ParseError("expected 'n <N>'", nline[0].line, nline[0].column);
  const long n = parse_int(nline[1]);
  if (n < 0 || n > 1'000'000) throw ParseError("vertex count out of range", nline[1].line, nline[1].column);

  const auto& bline = require_line(2);
  expect_word(bline[0], "boundary");
  if (bline.size() < 2) throw ParseError("expected boundary length", bline[0].line, bline[0].column);
  const long h = parse_int(bline[1]);
  if (h < 0 || static_cast<long>(bline.size()) != h + 2) {
    throw ParseError("boundary length does not match vertex list", bline[1].line, bline[1].column);
  }
  std::vector<VertexId> boundary;
  for (long i = 0; i < h; ++i) {
    const long v = parse_int(bline[2 + i]);
    if (v < 0 || v >= n) throw ParseError("vertex id out of range", bline[2 + i].line, bline[2 + i].column);
    boundary.push_back(static_cast<VertexId>(v));
  }

  NearTriangulation::Rotation rot(n);
  std::vector<char> given(n, 0);
  if (lines.size() != static_cast<std::size_t>(3 + n)) {
    const auto& where = lines.size() > static_cast<std::size_t>(3 + n) ? lines[3 + n][0] : lines.back().back();
    throw ParseError("expected exactly " + std::to_string(n) + " rot lines", where.line, where.column);
  }
  for (long r = 0; r < n; ++r) {
    const auto& row = lines[3 + r];
    expect_word(row[0], "rot");
    std::vector<Token> rest(row.begin() + 1, row.end());
    if (rest.empty()) throw ParseError("expected vertex id", row[0].line, row[0].column + 3);
    Token head = rest[0];
    std::size_t first = 1;
    if (!head.text.empty() && head.text.back() == ':') {
      head.text.pop_back();
    } else if (rest.size() > 1 && rest[1].text == ":") {
      first = 2;
    } else {
      throw ParseError("expected ':' after vertex id", head.line, head.column);
    }
    const long v = parse_int(head);
    if (v < 0 || v >= n) throw ParseError("vertex id out of range", head.line, head.column);
    if (given[v]) throw ParseError("duplicate rot line for vertex " + std::to_string(v), head.line, head.column);
    given[v] = 1;
    for (std::size_t k = first; k < rest.size(); ++k) {
      const long w = parse_int(rest[k]);
      if (w < 0 || w >= n) throw ParseError("vertex id out of range", rest[k].line, rest[k].column);
      rot[v].push_back(static_cast<VertexId>(w));
    }
  }
  return NearTriangulation::make(std::move(rot), std::move(boundary));
}

std::string to_ntg(const NearTriangulation& t) {
  std::ostringstream out;
  out << "ntg 1\n";
  out << "n " << t.order() << "\n";
  out << "boundary " << t.boundary_length();
  for (VertexId b : t.boundary()) out << ' ' << b;
  out << "\n";
  for (VertexId v = 0; v < t.order(); ++v) {
    out << "rot " << v << ":";
    for (VertexId w : t.rotation(v)) out << ' ' << w;
    out << "\n";
  }
  return out.str();
}

std::string to_dot(const NearTriangulation& t) {
  std::ostringstream out;
  out << "graph ntg {\n";
  for (VertexId v = 0; v < t.order(); ++v) {
    out << "  " << v << (t.on_boundary(v) ? " [shape=box];\n" : ";\n");
  }
  for (const auto& e : t.edges()) {
    out << "  " << e.u << " -- " << e.v;
    if (is_diagonal(t, e)) out << " [style=bold]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------

NearTriangulation from_faces(int n, std::vector<VertexId> boundary,
                             const std::vector<std::array<VertexId, 3>>& triangles) {
  if (n < 3) throw InvariantError("vertex count below 3");
  const auto key = [n](VertexId a, VertexId b) { return static_cast<long>(a) * n + b; };
  // Undirected edge -> incident triangle indices.
  std::unordered_map<long, std::vector<int>> incident;
  for (std::size_t f = 0; f < triangles.size(); ++f) {
    const auto& tri = triangles[f];
    for (int s = 0; s < 3; ++s) {
      const VertexId a = tri[s];
      const VertexId b = tri[(s + 1) % 3];
      if (a < 0 || a >= n || b < 0 || b >= n || a == b) throw InvariantError("invalid triangle");
      incident[key(std::min(a, b), std::max(a, b))].push_back(static_cast<int>(f));
    }
  }
  // Orientation: oriented[f] lists the face darts with the face on the left.
  std::vector<std::array<VertexId, 3>> oriented(triangles.size());
  std::vector<char> done(triangles.size(), 0);
  std::queue<int> queue;
  auto orient_with_dart = [&](int f, VertexId a, VertexId b) {
    // Orient face f so it contains dart a->b.
    auto tri = triangles[f];
    for (int s = 0; s < 3; ++s) {
      if (tri[s] == a && tri[(s + 1) % 3] == b) {
        oriented[f] = {tri[s], tri[(s + 1) % 3], tri[(s + 2) % 3]};
        return true;
      }
      if (tri[s] == b && tri[(s + 1) % 3] == a) {
        oriented[f] = {tri[(s + 1) % 3], tri[s], tri[(s + 2) % 3]};
        return true;
      }
    }
    return false;
  };
  const int h = static_cast<int>(boundary.size());
  for (int i = 0; i < h; ++i) {
    const VertexId a = boundary[i];
    const VertexId b = boundary[(i + 1) % h];
    const auto it = incident.find(key(std::min(a, b), std::max(a, b)));
    if (it == incident.end() || it->second.size() != 1) {
      throw InvariantError("boundary edge " + std::to_string(a) + "-" + std::to_string(b) +
                           " must lie on exactly one triangle");
    }
    const int f = it->second[0];
    if (done[f]) {
      // Already oriented: must contain the reverse dart b->a.
      const auto& o = oriented[f];
      bool ok = false;
      for (int s = 0; s < 3; ++s) ok |= (o[s] == b && o[(s + 1) % 3] == a);
      if (!ok) throw InvariantError("inconsistent face orientation");
      continue;
    }
    orient_with_dart(f, b, a);
    done[f] = 1;
    queue.push(f);
  }
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop();
    const auto o = oriented[f];
    for (int s = 0; s < 3; ++s) {
      const VertexId a = o[s];
      const VertexId b = o[(s + 1) % 3];
      for (int g : incident[key(std::min(a, b), std::max(a, b))]) {
        if (g == f) continue;
        if (done[g]) continue;
        orient_with_dart(g, b, a);
        done[g] = 1;
        queue.push(g);
      }
    }
  }
  if (std::find(done.begin(), done.end(), 0) != done.end()) {
    throw InvariantError("face set is not connected to the boundary");
  }
  // next[v][u] = w  means w follows u clockwise around v.
  std::vector<std::map<VertexId, VertexId>> next(n);
  auto add_corner = [&](VertexId from, VertexId at, VertexId to) {
    auto [it, inserted] = next[at].emplace(from, to);
    if (!inserted) throw InvariantError("vertex " + std::to_string(at) + " has a non-disk link");
  };
  for (const auto& o : oriented) {
    for (int s = 0; s < 3; ++s) add_corner(o[s], o[(s + 1) % 3], o[(s + 2) % 3]);
  }
  for (int i = 0; i < h; ++i) add_corner(boundary[i], boundary[(i + 1) % h], boundary[(i + 2) % h]);
  NearTriangulation::Rotation rot(n);
  for (VertexId v = 0; v < n; ++v) {
    if (next[v].empty()) throw InvariantError("isolated vertex " + std::to_string(v));
    const VertexId start = next[v].begin()->first;
    VertexId cur = start;
    do {
      rot[v].push_back(cur);
      const auto it = next[v].find(cur);
      if (it == next[v].end()) throw InvariantError("vertex " + std::to_string(v) + " has a non-disk link");
      cur = it->second;
    } while (cur != start && rot[v].size() <= next[v].size());
    if (rot[v].size() != next[v].size()) {
      throw InvariantError("vertex " + std::to_string(v) + " has a non-disk link");
    }
  }
  return NearTriangulation::make(std::move(rot), std::move(boundary));
}

}  // namespace ntri
