#include "wordlab/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace wordlab {

Permutation::Permutation(int n) {
  if (n < 1) throw std::invalid_argument("Permutation: degree must be >= 1");
  images_.resize(n);
  std::iota(images_.begin(), images_.end(), 0);
}

Permutation Permutation::from_images(const std::vector<int>& one_based) {
  Permutation p(static_cast<int>(one_based.size()));
  std::vector<char> seen(one_based.size(), 0);
  for (size_t i = 0; i < one_based.size(); ++i) {
    int v = one_based[i];
    if (v < 1 || v > static_cast<int>(one_based.size()) || seen[v - 1])
      throw std::invalid_argument("Permutation: images are not a bijection");
    seen[v - 1] = 1;
    p.images_[i] = v - 1;
  }
  return p;
}

Permutation Permutation::from_cycles(const std::string& text, int n) {
  Permutation p(n);
  size_t pos = 0;
  auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
  skip_ws();
  if (pos < text.size() && text[pos] == 'e') {
    ++pos;
    skip_ws();
    if (pos != text.size()) throw std::invalid_argument("cycle notation: trailing input after 'e'");
    return p;
  }
  std::vector<char> used(n, 0);
  bool any = false;
  while (pos < text.size()) {
    skip_ws();
    if (pos >= text.size()) break;
    if (text[pos] != '(')
      throw std::invalid_argument("cycle notation: expected '(' at position " + std::to_string(pos));
    ++pos;
    std::vector<int> cyc;
    for (;;) {
      skip_ws();
      if (pos < text.size() && text[pos] == ')') { ++pos; break; }
      size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start)
        throw std::invalid_argument("cycle notation: expected point at position " + std::to_string(pos));
      int v = std::stoi(text.substr(start, pos - start));
      if (v < 1 || v > n)
        throw std::invalid_argument("cycle notation: point " + std::to_string(v) + " out of range 1.." + std::to_string(n));
      if (used[v - 1])
        throw std::invalid_argument("cycle notation: point " + std::to_string(v) + " repeated");
      used[v - 1] = 1;
      cyc.push_back(v - 1);
    }
    any = true;
    for (size_t i = 0; i < cyc.size(); ++i)
      p.images_[cyc[i]] = cyc[(i + 1) % cyc.size()];
  }
  if (!any) throw std::invalid_argument("cycle notation: empty input");
  return p;
}

bool Permutation::is_identity() const {
  for (size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<int> Permutation::one_line() const {
  std::vector<int> out(images_.size());
  for (size_t i = 0; i < images_.size(); ++i) out[i] = images_[i] + 1;
  return out;
}

std::string Permutation::cycles_str() const {
  int n = degree();
  std::vector<char> seen(n, 0);
  std::ostringstream os;
  bool any = false;
  for (int i = 0; i < n; ++i) {
    if (seen[i] || images_[i] == i) continue;
    any = true;
    os << '(';
    int j = i;
    bool first = true;
    do {
      if (!first) os << ' ';
      first = false;
      os << j + 1;
      seen[j] = 1;
      j = images_[j];
    } while (j != i);
    os << ')';
  }
  return any ? os.str() : "e";
}

std::string Permutation::packed() const {
  if (degree() > 255) throw std::invalid_argument("packed: degree > 255");
  std::string key(images_.size(), '\0');
  for (size_t i = 0; i < images_.size(); ++i)
    key[i] = static_cast<char>(static_cast<unsigned char>(images_[i]));
  return key;
}

Permutation Permutation::unpack(const std::string& key) {
  std::vector<int> imgs(key.size());
  for (size_t i = 0; i < key.size(); ++i)
    imgs[i] = static_cast<unsigned char>(key[i]) + 1;
  return from_images(imgs);
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw std::invalid_argument("compose: degree mismatch");
  int n = p.degree();
  std::vector<int> imgs(n);
  for (int i = 0; i < n; ++i) imgs[i] = q.apply0(p.apply0(i)) + 1;
  return Permutation::from_images(imgs);
}

Permutation inverse(const Permutation& p) {
  int n = p.degree();
  std::vector<int> imgs(n);
  for (int i = 0; i < n; ++i) imgs[p.apply0(i)] = i + 1;
  return Permutation::from_images(imgs);
}

Permutation identity(int n) { return Permutation(n); }

Permutation conjugate(const Permutation& p, const Permutation& g) {
  return compose(compose(inverse(g), p), g);
}

int hamming_raw(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw std::invalid_argument("hamming: degree mismatch");
  int d = 0;
  for (int i = 0; i < p.degree(); ++i)
    if (p.apply0(i) != q.apply0(i)) ++d;
  return d;
}

Rat hamming(const Permutation& p, const Permutation& q) {
  return Rat(hamming_raw(p, q), p.degree());
}

CycleStats cycle_stats(const Permutation& p) {
  int n = p.degree();
  CycleStats st;
  std::vector<char> seen(n, 0);
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    int j = i;
    do {
      seen[j] = 1;
      ++len;
      j = p.apply0(j);
    } while (j != i);
    st.cycle_lengths.push_back(len);
    st.f[len] += len;
    ++st.num_cycles;
  }
  std::sort(st.cycle_lengths.rbegin(), st.cycle_lengths.rend());
  return st;
}

int f_leq(const Permutation& p, int h) {
  if (h < 1 || h > p.degree()) throw std::invalid_argument("f_leq: h out of range");
  int n = p.degree();
  std::vector<char> seen(n, 0);
  int total = 0;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    int j = i;
    do {
      seen[j] = 1;
      ++len;
      j = p.apply0(j);
    } while (j != i);
    if (len <= h) total += len;
  }
  return total;
}

int cycle_length_through(const Permutation& p, int point) {
  int i = point - 1;
  int len = 0;
  int j = i;
  do {
    ++len;
    j = p.apply0(j);
  } while (j != i);
  return len;
}

Permutation random_uniform(int n, Rng& rng) {
  std::vector<int> imgs(n);
  std::iota(imgs.begin(), imgs.end(), 1);
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(imgs[i], imgs[j]);
  }
  return Permutation::from_images(imgs);
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> line(n);
  std::iota(line.begin(), line.end(), 1);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_images(line));
  } while (std::next_permutation(line.begin(), line.end()));
  return out;
}

long long conjugacy_class_size(int n, const std::vector<int>& cycle_lengths) {
  // n! / (prod m^{a_m} a_m!)
  std::map<int, int> mult;
  for (int m : cycle_lengths) mult[m]++;
  long long fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  long long denom = 1;
  for (auto& [m, a] : mult) {
    for (int i = 0; i < a; ++i) denom *= m;
    for (int i = 2; i <= a; ++i) denom *= i;
  }
  return fact / denom;
}

}  // namespace wordlab
