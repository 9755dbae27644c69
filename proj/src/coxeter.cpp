/*
  This is coxeter.cpp

  Coxeter matrix validation, coset enumeration, and the canonical
  re-indexing of the resulting group table.
*/

#include "coxcells/coxeter.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <sstream>

namespace coxcells {

namespace {

/* Classifies one connected component of the Coxeter diagram and returns
   the order of the corresponding irreducible group, or 0 if the shape
   is not one of the standard finite types.  Only used as a post-build
   sanity check, so unknown shapes are fine. */
std::int64_t component_order(const CoxeterMatrix& mat,
                             const std::vector<int>& nodes) {
  auto m = [&](int a, int b) { return mat.m(nodes[a], nodes[b]); };
  int n = static_cast<int>(nodes.size());
  if (n == 1) return 2;

  std::vector<int> degree(n, 0);
  int nedges = 0;
  std::vector<int> bonds;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (m(a, b) >= 3) {
        ++degree[a];
        ++degree[b];
        ++nedges;
        bonds.push_back(m(a, b));
      }
  if (nedges != n - 1) return 0;  // not a tree

  auto factorial = [](int k) {
    std::int64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };

  int branches = static_cast<int>(std::count(degree.begin(), degree.end(), 3));
  if (std::count_if(degree.begin(), degree.end(),
                    [](int d) { return d > 3; }) > 0)
    return 0;

  if (branches == 0) {
    // A path.  Walk it from one end to read off the bond sequence.
    int start = -1;
    for (int a = 0; a < n; ++a)
      if (degree[a] <= 1) {
        start = a;
        break;
      }
    std::vector<int> seq;
    std::vector<char> used(n, 0);
    int cur = start;
    used[cur] = 1;
    for (int step = 1; step < n; ++step) {
      for (int b = 0; b < n; ++b)
        if (!used[b] && m(cur, b) >= 3) {
          seq.push_back(m(cur, b));
          used[b] = 1;
          cur = b;
          break;
        }
    }
    if (n == 2) return 2 * seq[0];  // dihedral
    int big = static_cast<int>(
        std::count_if(seq.begin(), seq.end(), [](int x) { return x > 3; }));
    if (big == 0) return factorial(n + 1);  // type A
    if (big > 1) return 0;
    // One marked bond; note whether it sits at an end of the path.
    bool at_end = seq.front() > 3 || seq.back() > 3;
    int mark = *std::max_element(seq.begin(), seq.end());
    if (mark == 4 && at_end) return (std::int64_t(1) << n) * factorial(n);
    if (mark == 4 && n == 4) return 1152;            // the 3-4-3 chain
    if (mark == 5 && at_end && n == 3) return 120;   // icosahedral
    if (mark == 5 && at_end && n == 4) return 14400;
    return 0;
  }

  if (branches != 1) return 0;
  for (int b : bonds)
    if (b != 3) return 0;
  // One trivalent node; measure the three arm lengths.
  int hub = -1;
  for (int a = 0; a < n; ++a)
    if (degree[a] == 3) hub = a;
  std::vector<int> arms;
  for (int b = 0; b < n; ++b) {
    if (b == hub || m(hub, b) < 3) continue;
    int len = 1, prev = hub, cur = b;
    while (true) {
      int next = -1;
      for (int c = 0; c < n; ++c)
        if (c != prev && c != cur && m(cur, c) >= 3) next = c;
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms.size() != 3 || arms[0] != 1) return 0;
  if (arms[1] == 1) return (std::int64_t(1) << (n - 1)) * factorial(n);  // D
  if (arms[1] == 2 && arms[2] == 2) return 51840;
  if (arms[1] == 2 && arms[2] == 3) return 2903040;
  if (arms[1] == 2 && arms[2] == 4) return 696729600;
  return 0;
}

}  // namespace

CoxeterMatrix::CoxeterMatrix(std::vector<std::vector<int>> entries)
    : m_(std::move(entries)) {
  int n = static_cast<int>(m_.size());
  if (n < 1 || n > 32) throw compute_error("invalid matrix");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m_[i].size()) != n) throw compute_error("invalid matrix");
    if (m_[i][i] != 1) throw compute_error("invalid matrix");
    for (int j = 0; j < n; ++j) {
      if (i != j && (m_[i][j] < 2 || m_[i][j] != m_[j][i]))
        throw compute_error("invalid matrix");
    }
  }
}

CoxeterMatrix CoxeterMatrix::of_type(const std::string& letter, int rank,
                                     int bond) {
  auto plain = [&](int n) {
    std::vector<std::vector<int>> e(n, std::vector<int>(n, 2));
    for (int i = 0; i < n; ++i) e[i][i] = 1;
    return e;
  };
  auto chain = [&](int n) {
    auto e = plain(n);
    for (int i = 0; i + 1 < n; ++i) e[i][i + 1] = e[i + 1][i] = 3;
    return e;
  };
  auto fail = [&]() -> CoxeterMatrix {
    throw compute_error("invalid matrix");
  };

  if (letter == "A") {
    if (rank < 1) return fail();
    return CoxeterMatrix(chain(rank));
  }
  if (letter == "B" || letter == "C") {
    if (rank < 2) return fail();
    auto e = chain(rank);
    e[rank - 2][rank - 1] = e[rank - 1][rank - 2] = 4;
    return CoxeterMatrix(e);
  }
  if (letter == "D") {
    if (rank < 2) return fail();
    auto e = plain(rank);
    for (int i = 0; i + 2 < rank; ++i) e[i][i + 1] = e[i + 1][i] = 3;
    if (rank >= 3) e[rank - 3][rank - 1] = e[rank - 1][rank - 3] = 3;
    return CoxeterMatrix(e);
  }
  if (letter == "E") {
    if (rank < 6 || rank > 8) return fail();
    auto e = plain(rank);
    for (int i = 0; i + 2 < rank; ++i) e[i][i + 1] = e[i + 1][i] = 3;
    e[2][rank - 1] = e[rank - 1][2] = 3;
    return CoxeterMatrix(e);
  }
  if (letter == "F") {
    if (rank != 4) return fail();
    auto e = chain(4);
    e[1][2] = e[2][1] = 4;
    return CoxeterMatrix(e);
  }
  if (letter == "G") {
    if (rank != 2) return fail();
    auto e = plain(2);
    e[0][1] = e[1][0] = 6;
    return CoxeterMatrix(e);
  }
  if (letter == "H") {
    if (rank < 2 || rank > 4) return fail();
    auto e = chain(rank);
    e[0][1] = e[1][0] = 5;
    return CoxeterMatrix(e);
  }
  if (letter == "I") {
    if (rank != 2 || bond < 2) return fail();
    auto e = plain(2);
    e[0][1] = e[1][0] = bond;
    return CoxeterMatrix(e);
  }
  return fail();
}

std::int64_t CoxeterMatrix::known_order() const {
  int n = rank();
  std::vector<int> comp(n, -1);
  std::int64_t order = 1;
  for (int a = 0; a < n; ++a) {
    if (comp[a] >= 0) continue;
    std::vector<int> nodes = {a};
    comp[a] = a;
    for (std::size_t head = 0; head < nodes.size(); ++head)
      for (int b = 0; b < n; ++b)
        if (comp[b] < 0 && m(nodes[head], b) >= 3) {
          comp[b] = a;
          nodes.push_back(b);
        }
    std::int64_t c = component_order(*this, nodes);
    if (c == 0) return 0;
    order *= c;
  }
  return order;
}

std::string CoxeterMatrix::key() const {
  std::ostringstream os;
  os << "coxeter[";
  for (int i = 0; i < rank(); ++i) {
    if (i) os << ";";
    for (int j = 0; j < rank(); ++j) {
      if (j) os << ",";
      os << m_[i][j];
    }
  }
  os << "]";
  return os.str();
}

namespace {

/* Coset enumeration over the trivial subgroup, specialized to Coxeter
   presentations: every generator is an involution, so the coset table
   is its own inverse table and edges are always set symmetrically.
   HLT-style scanning with a fact/coincidence queue.  Scans restart from
   the top after any table change, which keeps the walk positions valid
   across coincidences at a negligible cost for groups of this size. */
class Enumerator {
public:
  Enumerator(const CoxeterMatrix& mat, std::int64_t cap)
      : mat_(mat), rank_(mat.rank()), cap_(cap) {
    for (int i = 0; i < rank_; ++i)
      for (int j = i; j < rank_; ++j) {
        std::vector<Gen> w;
        int m = mat_.m(i, j);
        for (int k = 0; k < m; ++k) {
          w.push_back(i);
          w.push_back(j);
        }
        relators_.push_back(std::move(w));
      }
    new_coset();
  }

  /* Scans every live coset under every relator, then re-verifies to a
     clean fixpoint (coincidences can invalidate earlier scans). */
  int run() {
    for (int a = 0; a < ncosets(); ++a) {
      if (!is_live(a)) continue;
      for (const auto& w : relators_) {
        scan_fill(a, w);
        if (!is_live(a)) break;
      }
    }
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (int a = 0; a < ncosets(); ++a) {
        if (!is_live(a)) continue;
        for (const auto& w : relators_) {
          if (scan_fill(a, w)) dirty = true;
          if (!is_live(a)) break;
        }
      }
    }
    return live_;
  }

  int ncosets() const { return static_cast<int>(rep_.size()); }
  bool is_live(int c) const { return rep_[c] == c; }
  int entry(int c, Gen s) { return lookup(c, s); }

private:
  int new_coset() {
    if (live_ >= cap_ || ncosets() >= 8 * cap_ + 1024)
      throw compute_error("group exceeds cap");
    rep_.push_back(ncosets());
    table_.resize(table_.size() + static_cast<std::size_t>(rank_), -1);
    ++live_;
    return ncosets() - 1;
  }

  int find(int c) {
    while (rep_[c] != c) {
      rep_[c] = rep_[rep_[c]];
      c = rep_[c];
    }
    return c;
  }

  /* Looks up c*s, normalizing stale entries that point at dead cosets. */
  int lookup(int c, Gen s) {
    int& slot = table_[c * rank_ + s];
    if (slot < 0) return -1;
    slot = find(slot);
    return slot;
  }

  /* Records c*s = d in both directions, queueing a coincidence where a
     slot already disagrees, and drains the queue. */
  void assert_edge(int c, Gen s, int d) {
    facts_.push_back({c, s, d});
    drain();
  }

  void drain() {
    while (!facts_.empty() || !merges_.empty()) {
      if (!merges_.empty()) {
        auto [a, b] = merges_.back();
        merges_.pop_back();
        merge(a, b);
        continue;
      }
      auto [fc, fs, fd] = facts_.back();
      facts_.pop_back();
      fc = find(fc);
      fd = find(fd);
      int e1 = lookup(fc, fs);
      if (e1 < 0)
        table_[fc * rank_ + fs] = fd;
      else if (e1 != fd)
        merges_.push_back({e1, fd});
      int e2 = lookup(fd, fs);
      if (e2 < 0)
        table_[fd * rank_ + fs] = fc;
      else if (e2 != fc)
        merges_.push_back({e2, fc});
    }
  }

  void merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    rep_[b] = a;
    --live_;
    for (Gen s = 0; s < rank_; ++s) {
      int d = table_[b * rank_ + s];
      if (d < 0) continue;
      table_[b * rank_ + s] = -1;
      facts_.push_back({a, s, find(d)});
    }
  }

  /* Closes relator w at coset a, defining cosets to fill gaps.  Returns
     true if the table changed. */
  bool scan_fill(int a, const std::vector<Gen>& w) {
    bool changed = false;
    while (true) {
      a = find(a);
      int f = a;
      std::size_t i = 0;
      while (i < w.size()) {
        int next = lookup(f, w[i]);
        if (next < 0) break;
        f = next;
        ++i;
      }
      if (i == w.size()) {
        if (f == a) return changed;
        merges_.push_back({f, a});
        drain();
        changed = true;
        continue;
      }
      int b = a;
      std::size_t j = w.size();
      while (j > i + 1) {
        int prev = lookup(b, w[j - 1]);
        if (prev < 0) break;
        b = prev;
        --j;
      }
      if (i + 1 == j) {
        assert_edge(f, w[i], b);
      } else {
        int n = new_coset();
        assert_edge(f, w[i], n);
      }
      changed = true;
    }
  }

  const CoxeterMatrix& mat_;
  int rank_;
  std::int64_t cap_;
  std::vector<std::vector<Gen>> relators_;
  std::vector<int> table_;
  std::vector<int> rep_;
  std::vector<std::array<int, 3>> facts_;
  std::vector<std::pair<int, int>> merges_;
  int live_ = 0;
};

}  // namespace

GroupTable GroupTable::build(const CoxeterMatrix& mat, std::int64_t cap) {
  Enumerator en(mat, cap);
  int live = en.run();

  // Compact the live cosets and lift the edges to a right-multiplication
  // table.  Coset 0 (the identity) always survives as a representative
  // because merges keep the smaller index.
  std::vector<int> compact(en.ncosets(), -1);
  std::vector<int> order;
  for (int c = 0; c < en.ncosets(); ++c)
    if (en.is_live(c)) {
      compact[c] = static_cast<int>(order.size());
      order.push_back(c);
    }
  int rank = mat.rank();
  std::vector<std::vector<Elt>> raw_right(
      static_cast<std::size_t>(live), std::vector<Elt>(rank, -1));
  for (int c = 0; c < en.ncosets(); ++c) {
    if (!en.is_live(c)) continue;
    for (Gen s = 0; s < rank; ++s) {
      int d = en.entry(c, s);
      if (d < 0 || !en.is_live(d))
        throw compute_error("enumeration left an incomplete table");
      raw_right[compact[c]][s] = compact[d];
    }
  }

  // Breadth-first renumbering from the identity, scanning generators in
  // ascending order.  FIFO discovery order is exactly (length, ShortLex)
  // order on canonical words, and the discovery word of each element is
  // its ShortLex-least reduced word.
  std::vector<Elt> newidx(static_cast<std::size_t>(live), -1);
  std::vector<Elt> bfs;
  newidx[0] = 0;
  bfs.push_back(0);
  std::vector<Elt> parent(static_cast<std::size_t>(live), -1);
  std::vector<Gen> via(static_cast<std::size_t>(live), -1);
  std::vector<int> level(static_cast<std::size_t>(live), 0);
  for (std::size_t head = 0; head < bfs.size(); ++head) {
    Elt u = bfs[head];
    for (Gen s = 0; s < rank; ++s) {
      Elt x = raw_right[u][s];
      if (newidx[x] >= 0) continue;
      newidx[x] = static_cast<Elt>(bfs.size());
      parent[newidx[x]] = newidx[u];
      via[newidx[x]] = s;
      level[newidx[x]] = level[newidx[u]] + 1;
      bfs.push_back(x);
    }
  }
  if (static_cast<int>(bfs.size()) != live)
    throw compute_error("enumeration produced a disconnected table");

  GroupTable g;
  g.mat_ = mat;
  g.length_ = std::move(level);
  g.right_.assign(static_cast<std::size_t>(live), std::vector<Elt>(rank));
  for (int c = 0; c < live; ++c)
    for (Gen s = 0; s < rank; ++s)
      g.right_[newidx[c]][s] = newidx[raw_right[c][s]];

  g.word_.resize(static_cast<std::size_t>(live));
  for (Elt w = 1; w < live; ++w) {
    g.word_[w] = g.word_[parent[w]];
    g.word_[w].push_back(via[w]);
  }

  // s*w from the parent decomposition w = p*t: s*w = (s*p)*t.
  g.left_.assign(static_cast<std::size_t>(live), std::vector<Elt>(rank));
  for (Gen s = 0; s < rank; ++s) g.left_[0][s] = g.right_[0][s];
  for (Elt w = 1; w < live; ++w)
    for (Gen s = 0; s < rank; ++s)
      g.left_[w][s] = g.right_[g.left_[parent[w]][s]][via[w]];

  g.inv_.assign(static_cast<std::size_t>(live), 0);
  for (Elt w = 1; w < live; ++w)
    g.inv_[w] = g.left_[g.inv_[parent[w]]][via[w]];

  g.ldesc_.assign(static_cast<std::size_t>(live), 0);
  g.rdesc_.assign(static_cast<std::size_t>(live), 0);
  for (Elt w = 0; w < live; ++w)
    for (Gen s = 0; s < rank; ++s) {
      int dl = g.length_[g.left_[w][s]] - g.length_[w];
      int dr = g.length_[g.right_[w][s]] - g.length_[w];
      if (dl != 1 && dl != -1)
        throw compute_error("length grading is inconsistent");
      if (dr != 1 && dr != -1)
        throw compute_error("length grading is inconsistent");
      if (dl < 0) g.ldesc_[w] |= 1u << s;
      if (dr < 0) g.rdesc_[w] |= 1u << s;
    }

  int nu = g.length_[live - 1];
  g.strata_.assign(static_cast<std::size_t>(nu + 2), 0);
  for (Elt w = 0; w < live; ++w) g.strata_[g.length_[w] + 1]++;
  for (int k = 0; k < nu + 1; ++k) g.strata_[k + 1] += g.strata_[k];
  if (live >= 2 && g.length_[live - 2] == nu)
    throw compute_error("longest element is not unique");

  std::int64_t expect = mat.known_order();
  if (expect != 0 && expect != live)
    throw compute_error("element count does not match the declared type");

  // Materialize the Bruhat relation for small groups.  One pass in
  // increasing length via the descent recursion: for s with sw < w,
  //   x <= w  iff  (sx < x ? sx <= sw : x <= sw).
  if (live <= 4096) {
    std::size_t words = (static_cast<std::size_t>(live) + 63) / 64;
    g.bruhat_row_words_ = words;
    g.bruhat_bits_.assign(words * static_cast<std::size_t>(live), 0);
    auto row = [&](Elt w) { return g.bruhat_bits_.data() + words * w; };
    row(0)[0] = 1;  // e <= e
    for (Elt w = 1; w < live; ++w) {
      Gen s = static_cast<Gen>(__builtin_ctz(g.ldesc_[w]));
      Elt pw = g.left_[w][s];
      const std::uint64_t* prev = row(pw);
      std::uint64_t* cur = row(w);
      for (Elt x = 0; x < live; ++x) {
        Elt sx = g.left_[x][s];
        Elt probe = (g.length_[sx] < g.length_[x]) ? sx : x;
        if (prev[probe >> 6] >> (probe & 63) & 1)
          cur[x >> 6] |= std::uint64_t(1) << (x & 63);
      }
    }
  }

  return g;
}

Elt GroupTable::mul(Elt a, Elt b) const {
  Elt r = a;
  for (Gen s : word_[b]) r = right_[r][s];
  return r;
}

bool GroupTable::bruhat_leq_walk(Elt x, Elt w) const {
  while (x != 0) {
    if (length_[x] > length_[w]) return false;
    Gen s = static_cast<Gen>(__builtin_ctz(ldesc_[w]));
    Elt sx = left_[x][s];
    if (length_[sx] < length_[x]) x = sx;
    w = left_[w][s];
  }
  return true;
}

bool GroupTable::bruhat_leq(Elt x, Elt w) const {
  if (x == w) return true;
  if (length_[x] >= length_[w]) return false;
  if (!bruhat_bits_.empty()) {
    const std::uint64_t* row = bruhat_bits_.data() + bruhat_row_words_ * w;
    return row[x >> 6] >> (x & 63) & 1;
  }
  return bruhat_leq_walk(x, w);
}

Elt GroupTable::parse_word(const std::string& text) const {
  Elt w = 0;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok == "e") continue;
    if (tok.size() < 2 || tok[0] != 's')
      throw compute_error("invalid word: " + text);
    char* end = nullptr;
    long idx = std::strtol(tok.c_str() + 1, &end, 10);
    if (*end != '\0' || idx < 1 || idx > rank())
      throw compute_error("invalid word: " + text);
    w = right_[w][static_cast<Gen>(idx - 1)];
  }
  return w;
}

std::string GroupTable::word_string(Elt w) const {
  if (w == 0) return "e";
  std::string out;
  for (Gen s : word_[w]) {
    if (!out.empty()) out += " ";
    out += "s" + std::to_string(s + 1);
  }
  return out;
}

}  // namespace coxcells
