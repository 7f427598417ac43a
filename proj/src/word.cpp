#include "wordlab/word.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace wordlab {

Word::Word(int n, int r, std::vector<Letter> letters)
    : n_(n), r_(r), letters_(std::move(letters)) {
  if (n < 1) throw std::invalid_argument("Word: degree must be >= 1");
  if (r < 0) throw std::invalid_argument("Word: rank must be >= 0");
  for (const Letter& l : letters_) {
    if (is_const(l)) {
      if (const_part(l).degree() != n) throw std::invalid_argument("Word: constant degree mismatch");
    } else {
      const VarLetter& v = var_part(l);
      if (v.var < 1 || v.var > r) throw std::invalid_argument("Word: variable index out of range");
      if (v.sign != 1 && v.sign != -1) throw std::invalid_argument("Word: bad sign");
    }
  }
}

int Word::var_length() const {
  int l = 0;
  for (const Letter& x : letters_)
    if (!is_const(x)) ++l;
  return l;
}

std::string Word::str() const {
  std::ostringstream os;
  bool first = true;
  for (const Letter& x : letters_) {
    if (is_const(x) && const_part(x).is_identity() && letters_.size() > 1) continue;
    if (!first) os << ' ';
    first = false;
    if (is_const(x)) {
      os << const_part(x).cycles_str();
    } else {
      const VarLetter& v = var_part(x);
      os << 'x' << v.var;
      if (v.sign < 0) os << "^-1";
    }
  }
  if (first) os << 'e';
  return os.str();
}

Word parse_word(const std::string& text, int n, int r) {
  std::vector<Letter> letters;
  size_t pos = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("word parse error at position " + std::to_string(pos) + ": " + msg);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_int = [&]() -> int {
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
      fail("expected integer");
    return std::stoi(text.substr(start, pos - start));
  };
  for (;;) {
    skip_ws();
    if (pos >= text.size()) break;
    char c = text[pos];
    if (c == 'x') {
      ++pos;
      int var = read_int();
      if (var < 1 || var > r) fail("variable index out of range 1.." + std::to_string(r));
      int exp = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        exp = read_int();
      }
      int sign = exp >= 0 ? 1 : -1;
      for (int i = 0; i < std::abs(exp); ++i) letters.push_back(VarLetter{var, sign});
    } else if (c == 'e') {
      ++pos;
      letters.push_back(identity(n));
    } else if (c == '(') {
      ++pos;
      std::vector<int> cyc;
      for (;;) {
        skip_ws();
        if (pos >= text.size()) fail("unterminated cycle");
        if (text[pos] == ')') { ++pos; break; }
        int v = read_int();
        if (v < 1 || v > n) fail("point out of range 1.." + std::to_string(n));
        if (std::find(cyc.begin(), cyc.end(), v) != cyc.end()) fail("repeated point in cycle");
        cyc.push_back(v);
      }
      std::vector<int> imgs(n);
      std::iota(imgs.begin(), imgs.end(), 1);
      for (size_t i = 0; i < cyc.size(); ++i) imgs[cyc[i] - 1] = cyc[(i + 1) % cyc.size()];
      letters.push_back(Permutation::from_images(imgs));
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
  }
  return Word(n, r, std::move(letters));
}

namespace {

bool central(const Permutation& c, int n) { return n <= 2 || c.is_identity(); }

// One pass of constant merging plus variable cancellation; returns true if
// anything changed.
bool reduce_pass(std::vector<Letter>& ls, int n) {
  bool changed = false;
  // Merge adjacent constants.
  for (size_t i = 0; i + 1 < ls.size();) {
    if (is_const(ls[i]) && is_const(ls[i + 1])) {
      ls[i] = compose(const_part(ls[i]), const_part(ls[i + 1]));
      ls.erase(ls.begin() + i + 1);
      changed = true;
    } else {
      ++i;
    }
  }
  // Drop identity constants (they are central for every n).
  for (size_t i = 0; i < ls.size();) {
    if (is_const(ls[i]) && const_part(ls[i]).is_identity()) {
      ls.erase(ls.begin() + i);
      changed = true;
    } else {
      ++i;
    }
  }
  // Cancel adjacent x^e x^-e.
  for (size_t i = 0; i + 1 < ls.size();) {
    if (!is_const(ls[i]) && !is_const(ls[i + 1]) && var_part(ls[i]).var == var_part(ls[i + 1]).var &&
        var_part(ls[i]).sign == -var_part(ls[i + 1]).sign) {
      ls.erase(ls.begin() + i, ls.begin() + i + 2);
      changed = true;
      if (i > 0) --i;
    } else {
      ++i;
    }
  }
  // For n <= 2 every constant is central, so x^e c x^-e collapses to c.
  if (n <= 2) {
    for (size_t i = 0; i + 2 < ls.size();) {
      if (!is_const(ls[i]) && is_const(ls[i + 1]) && !is_const(ls[i + 2]) &&
          var_part(ls[i]).var == var_part(ls[i + 2]).var &&
          var_part(ls[i]).sign == -var_part(ls[i + 2]).sign) {
        ls.erase(ls.begin() + i + 2);
        ls.erase(ls.begin() + i);
        changed = true;
        if (i > 0) --i;
      } else {
        ++i;
      }
    }
  }
  return changed;
}

}  // namespace

Word reduce(const Word& w) {
  std::vector<Letter> ls = w.letters();
  while (reduce_pass(ls, w.degree())) {
  }
  // Canonical shape: explicit constants c0 x c1 ... x cl.
  std::vector<Letter> canon;
  canon.push_back(identity(w.degree()));
  for (const Letter& x : ls) {
    if (is_const(x)) {
      canon.back() = Letter(compose(const_part(canon.back()), const_part(x)));
    } else {
      canon.push_back(x);
      canon.push_back(identity(w.degree()));
    }
  }
  Word out(w.degree(), w.rank(), std::move(canon));
  out.reduced_ = true;
  return out;
}

bool is_reduced(const Word& w) {
  const auto& ls = w.letters();
  if (ls.size() % 2 != 1) return false;
  for (size_t i = 0; i < ls.size(); ++i) {
    if (i % 2 == 0 && !is_const(ls[i])) return false;
    if (i % 2 == 1 && is_const(ls[i])) return false;
  }
  for (size_t i = 1; i + 2 < ls.size(); i += 2) {
    const VarLetter& a = var_part(ls[i]);
    const VarLetter& b = var_part(ls[i + 2]);
    if (a.var == b.var && a.sign == -b.sign && central(const_part(ls[i + 1]), w.degree()))
      return false;
  }
  return true;
}

ReducedView reduced_view(const Word& w) {
  if (!is_reduced(w)) throw std::invalid_argument("reduced_view: word is not in reduced form");
  ReducedView v;
  for (const Letter& x : w.letters()) {
    if (is_const(x))
      v.consts.push_back(const_part(x));
    else
      v.vars.push_back(var_part(x));
  }
  return v;
}

namespace {

// Partition and critical data only; the regular flag is filled by classify.
void classify_partition(const Word& w, Classification& out) {
  ReducedView v = reduced_view(w);
  int l = static_cast<int>(v.vars.size());
  out.length = l;
  for (int j = 1; j <= l - 1; ++j) {
    const VarLetter& a = v.vars[j - 1];
    const VarLetter& b = v.vars[j];
    if (a.var != b.var) {
      out.J0.push_back(j);
    } else if (a.sign == b.sign) {
      out.Jplus.push_back(j);
    } else {
      out.Jminus.push_back(j);
      out.critical_constants.push_back(v.consts[j]);
    }
  }
  out.strong = out.Jminus.empty();
  out.crit_norm = w.degree();
  for (const Permutation& c : out.critical_constants)
    out.crit_norm = std::min(out.crit_norm, hamming_raw(c, identity(w.degree())));
}

}  // namespace

Classification classify(const Word& w) {
  Classification out;
  classify_partition(w, out);
  out.non_singular = !epsilon(w).empty();
  out.regular = is_regular(w);
  return out;
}

FreeWord epsilon(const Word& w) {
  FreeWord raw;
  for (const Letter& x : w.letters())
    if (!is_const(x)) raw.push_back(var_part(x).sign * var_part(x).var);
  return free_reduce(raw);
}

std::pair<Word, Word> cyclically_reduce(const Word& w) {
  if (!is_reduced(w)) throw std::invalid_argument("cyclically_reduce: word must be reduced");
  Word core = w;
  std::vector<Letter> conj;
  for (;;) {
    ReducedView v = reduced_view(core);
    int l = static_cast<int>(v.vars.size());
    if (l < 2) break;
    if (v.vars.front().var != v.vars.back().var || v.vars.front().sign != -v.vars.back().sign)
      break;
    Permutation tail = compose(v.consts[l], v.consts[0]);
    if (!central(tail, w.degree())) break;
    // w = (c0 x1) M (c0 x1)^-1 with M = c1 x2 ... x_{l-1} c_{l-1}*tail.
    if (!v.consts[0].is_identity()) conj.push_back(v.consts[0]);
    conj.push_back(v.vars.front());
    std::vector<Letter> inner;
    inner.push_back(v.consts[1]);
    for (int j = 2; j <= l - 1; ++j) {
      inner.push_back(v.vars[j - 1]);
      inner.push_back(v.consts[j]);
    }
    if (!tail.is_identity()) inner.push_back(tail);
    core = reduce(Word(w.degree(), w.rank(), std::move(inner)));
  }
  Word conjugator = reduce(Word(w.degree(), w.rank(), std::move(conj)));
  return {core, conjugator};
}

Word power(const Word& w, int k) {
  if (k < 1) throw std::invalid_argument("power: k must be >= 1");
  std::vector<Letter> ls;
  for (int i = 0; i < k; ++i)
    ls.insert(ls.end(), w.letters().begin(), w.letters().end());
  return reduce(Word(w.degree(), w.rank(), std::move(ls)));
}

bool is_regular(const Word& w) {
  if (!is_reduced(w)) throw std::invalid_argument("is_regular: word must be reduced");
  auto [core, conj] = cyclically_reduce(w);
  if (core.var_length() == 0) return false;  // conjugate to a constant
  Word sq = power(w, 2);
  Classification cl;
  classify_partition(sq, cl);
  for (const Permutation& c : cl.critical_constants)
    if (hamming_raw(c, identity(w.degree())) != w.degree()) return false;
  return true;
}

FreeWord free_reduce(const FreeWord& w) {
  FreeWord out;
  for (int s : w) {
    if (s == 0) throw std::invalid_argument("free word: zero generator");
    if (!out.empty() && out.back() == -s)
      out.pop_back();
    else
      out.push_back(s);
  }
  return out;
}

FreeWord free_inverse(const FreeWord& w) {
  FreeWord out(w.rbegin(), w.rend());
  for (int& s : out) s = -s;
  return out;
}

std::string free_word_str(const FreeWord& w) {
  if (w.empty()) return "e";
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << 'x' << std::abs(w[i]);
    if (w[i] < 0) os << "^-1";
  }
  return os.str();
}

int stallings_rank(const std::vector<FreeWord>& words, int r) {
  if (words.empty()) throw std::invalid_argument("stallings_rank: empty word list");
  std::vector<FreeWord> gens;
  for (const FreeWord& w : words) {
    FreeWord red = free_reduce(w);
    if (red.empty()) throw std::invalid_argument("stallings_rank: trivial generator");
    for (int s : red)
      if (std::abs(s) > r) throw std::invalid_argument("stallings_rank: generator index exceeds rank");
    gens.push_back(std::move(red));
  }
  // Wedge of labeled loops at vertex 0; edges (u, v, g) mean u --g--> v.
  struct Edge { int u, v, g; };
  std::vector<Edge> edges;
  int nv = 1;
  for (const FreeWord& g : gens) {
    int cur = 0;
    for (size_t i = 0; i < g.size(); ++i) {
      int next = (i + 1 == g.size()) ? 0 : nv++;
      if (g[i] > 0)
        edges.push_back({cur, next, g[i]});
      else
        edges.push_back({next, cur, -g[i]});
      cur = next;
    }
  }
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // Fold until no vertex has two equal-label edges in the same direction.
  bool merged = true;
  while (merged) {
    merged = false;
    std::map<std::pair<int, int>, int> out_slot, in_slot;
    for (const Edge& e : edges) {
      int u = find(e.u), v = find(e.v);
      auto [it_o, fresh_o] = out_slot.try_emplace({u, e.g}, v);
      if (!fresh_o && find(it_o->second) != v) {
        parent[find(it_o->second)] = v;
        merged = true;
        break;
      }
      auto [it_i, fresh_i] = in_slot.try_emplace({v, e.g}, u);
      if (!fresh_i && find(it_i->second) != u) {
        parent[find(it_i->second)] = u;
        merged = true;
        break;
      }
    }
  }
  std::set<int> verts;
  std::set<std::tuple<int, int, int>> folded;
  for (const Edge& e : edges) {
    int u = find(e.u), v = find(e.v);
    verts.insert(u);
    verts.insert(v);
    folded.insert({u, e.g, v});
  }
  return static_cast<int>(folded.size()) - static_cast<int>(verts.size()) + 1;
}

}  // namespace wordlab
