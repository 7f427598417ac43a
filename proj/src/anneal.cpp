#include "wordlab/anneal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "wordlab/rng.hpp"

namespace wordlab {

int objective(const Word& w, const std::vector<Permutation>& assignment,
              const Permutation& target) {
  if (target.degree() != w.degree()) throw std::invalid_argument("objective: degree mismatch");
  return hamming_raw(evaluate(w, assignment), target);
}

namespace {

struct Chain {
  int best = 0;
  std::vector<Permutation> best_state;
  std::vector<std::pair<long long, int>> trace;
  int initial = 0;
  long long uphill_seen = 0, uphill_accepted = 0;
};

// Flattened word: a chain of table lookups per source point. Constants are
// fixed tables; variable occurrences indirect through the mutable state
// (forward or inverse images, 0-based).
struct FlatOp {
  const int* table = nullptr;  // constants
  int var = -1;                // else: variable index
  bool inverted = false;
};

struct FlatWord {
  int n = 0;
  std::vector<std::vector<int>> const_tables;
  std::vector<FlatOp> ops;
};

FlatWord flatten(const Word& w) {
  FlatWord fw;
  fw.n = w.degree();
  // Two passes: tables first so pointers stay stable.
  for (const Letter& letter : w.letters())
    if (is_const(letter)) {
      std::vector<int> table(fw.n);
      for (int i = 0; i < fw.n; ++i) table[i] = const_part(letter).apply0(i);
      fw.const_tables.push_back(std::move(table));
    }
  size_t next_table = 0;
  for (const Letter& letter : w.letters()) {
    FlatOp op;
    if (is_const(letter)) {
      op.table = fw.const_tables[next_table++].data();
    } else {
      op.var = var_part(letter).var - 1;
      op.inverted = var_part(letter).sign < 0;
    }
    fw.ops.push_back(op);
  }
  return fw;
}

// Mutable assignment with forward and inverse image tables.
struct FlatState {
  int n = 0;
  std::vector<std::vector<int>> fwd, inv;

  void init(int r, int n_, Rng& rng) {
    n = n_;
    fwd.assign(r, {});
    inv.assign(r, std::vector<int>(n));
    for (int v = 0; v < r; ++v) {
      fwd[v] = random_uniform(n, rng).one_line();
      for (int& image : fwd[v]) --image;  // 0-based
      for (int i = 0; i < n; ++i) inv[v][fwd[v][i]] = i;
    }
  }

  std::vector<Permutation> to_perms() const {
    std::vector<Permutation> out;
    for (const auto& images : fwd) {
      std::vector<int> one_based(images);
      for (int& image : one_based) ++image;
      out.push_back(Permutation::from_images(one_based));
    }
    return out;
  }
};

// Letter tables resolved to raw pointers (stable once FlatState::init has
// run); evaluation is a branch-free table chase per source point.
std::vector<const int*> resolve(const FlatWord& w, const FlatState& st) {
  std::vector<const int*> ptrs;
  for (const FlatOp& op : w.ops)
    ptrs.push_back(op.table ? op.table
                            : (op.inverted ? st.inv[op.var].data() : st.fwd[op.var].data()));
  return ptrs;
}

// Post-multiplies variable v by the transposition of image values (a b),
// updating forward and inverse tables in place. Self-inverse.
void apply_swap(FlatState& st, int v, int a, int b) {
  int pa = st.inv[v][a], pb = st.inv[v][b];
  std::swap(st.fwd[v][pa], st.fwd[v][pb]);
  std::swap(st.inv[v][a], st.inv[v][b]);
}

// Incremental objective: a proposal changes each occurrence of the chosen
// variable at two table entries, so only sources whose lookup path crosses
// a changed entry can change final image. Those sources are read off from
// maintained prefix-map inverses, giving O(l^2) work per proposal instead
// of a full O(n*l) re-evaluation.
struct IncEval {
  int n = 0;
  std::vector<const int*> ptrs;
  std::vector<int> occ_op, occ_var;  // per variable occurrence: op index, variable
  std::vector<char> occ_inverted;
  // Prefix map (all letters strictly before the occurrence) and its inverse.
  std::vector<std::vector<int>> pre_fwd, pre_inv;
  std::vector<int> img;  // current full-word image of every source
  const int* target = nullptr;
  int mismatches = 0;
  std::vector<int> affected, affected_img, prefix_scratch;

  int chase(int s, size_t first_op, size_t last_op) const {
    for (size_t k = first_op; k < last_op; ++k) s = ptrs[k][s];
    return s;
  }

  void init(const FlatWord& w, const FlatState& st, const int* tgt) {
    n = w.n;
    target = tgt;
    ptrs = resolve(w, st);
    for (size_t k = 0; k < w.ops.size(); ++k)
      if (w.ops[k].var >= 0) {
        occ_op.push_back(static_cast<int>(k));
        occ_var.push_back(w.ops[k].var);
        occ_inverted.push_back(w.ops[k].inverted);
      }
    pre_fwd.assign(occ_op.size(), std::vector<int>(n));
    pre_inv.assign(occ_op.size(), std::vector<int>(n));
    for (size_t k = 0; k < occ_op.size(); ++k)
      for (int s = 0; s < n; ++s) {
        int p = chase(s, 0, occ_op[k]);
        pre_fwd[k][s] = p;
        pre_inv[k][p] = s;
      }
    img.resize(n);
    mismatches = 0;
    for (int s = 0; s < n; ++s) {
      img[s] = chase(s, 0, ptrs.size());
      mismatches += (img[s] != target[s]);
    }
  }

  // Mismatch-count change for post-multiplying variable v by (a b). Leaves
  // the state swapped: the caller reverts on reject or commits on accept.
  int delta(FlatState& st, int v, int a, int b) {
    affected.clear();
    for (size_t k = 0; k < occ_op.size(); ++k) {
      if (occ_var[k] != v) continue;
      int q1 = occ_inverted[k] ? a : st.inv[v][a];
      int q2 = occ_inverted[k] ? b : st.inv[v][b];
      for (int q : {q1, q2}) {
        int s = pre_inv[k][q];
        if (std::find(affected.begin(), affected.end(), s) == affected.end())
          affected.push_back(s);
      }
    }
    apply_swap(st, v, a, b);
    affected_img.clear();
    int d = 0;
    for (int s : affected) {
      int ni = chase(s, 0, ptrs.size());
      affected_img.push_back(ni);
      d += (ni != target[s]) - (img[s] != target[s]);
    }
    return d;
  }

  // Folds the still-applied swap from the last delta() into the caches.
  void commit() {
    for (size_t idx = 0; idx < affected.size(); ++idx) img[affected[idx]] = affected_img[idx];
    for (size_t k = 0; k < occ_op.size(); ++k) {
      prefix_scratch.clear();
      for (int s : affected) prefix_scratch.push_back(chase(s, 0, occ_op[k]));
      // Old and new prefix images of the affected set coincide as sets, so
      // rewriting both directions over it leaves no stale inverse entry.
      for (size_t idx = 0; idx < affected.size(); ++idx) {
        pre_fwd[k][affected[idx]] = prefix_scratch[idx];
        pre_inv[k][prefix_scratch[idx]] = affected[idx];
      }
    }
  }
};

Chain run_chain(const Word& w, int n, const Permutation& target, const AnnealConfig& cfg,
                std::uint64_t stream) {
  Rng rng = Rng::derive(cfg.seed, 2, stream);
  int r = w.rank();
  FlatWord fw = flatten(w);
  FlatState st;
  st.init(r, n, rng);
  std::vector<int> target_images(n);
  for (int i = 0; i < n; ++i) target_images[i] = target.apply0(i);

  IncEval inc;
  inc.init(fw, st, target_images.data());
  int cur = inc.mismatches;

  Chain chain;
  chain.initial = cur;
  chain.best = cur;
  chain.best_state = st.to_perms();
  chain.trace.push_back({0, cur});

  double temp = cfg.initial_temperature;
  if (temp < 0) {
    // Calibrate against 200 pre-sampled moves so that a typical uphill
    // move is accepted with probability ~0.8.
    double sum_up = 0;
    int count_up = 0;
    for (int k = 0; k < 200; ++k) {
      int v = static_cast<int>(rng.below(r));
      int i = static_cast<int>(rng.below(n));
      int j = static_cast<int>(rng.below(n - 1));
      if (j >= i) ++j;
      int delta = inc.delta(st, v, i, j);
      apply_swap(st, v, i, j);
      if (delta > 0) {
        sum_up += delta;
        ++count_up;
      }
    }
    temp = count_up > 0 ? (sum_up / count_up) / std::log(1.0 / 0.8) : 1.0;
  }

  long long early_window = std::max<long long>(1, cfg.steps / 100);
  for (long long step = 1; step <= cfg.steps; ++step) {
    int v = static_cast<int>(rng.below(r));
    int i = static_cast<int>(rng.below(n));
    int j = static_cast<int>(rng.below(n - 1));
    if (j >= i) ++j;
    int delta = inc.delta(st, v, i, j);
    bool accept;
    if (delta <= 0) {
      accept = true;
    } else {
      if (step <= early_window) ++chain.uphill_seen;
      accept = rng.unit() < std::exp(-delta / temp);
      if (accept && step <= early_window) ++chain.uphill_accepted;
    }
    if (!accept) {
      apply_swap(st, v, i, j);
    } else {
      inc.commit();
      cur += delta;
      if (cur < chain.best) {
        chain.best = cur;
        chain.best_state = st.to_perms();
        chain.trace.push_back({step, cur});
        if (cur == 0) break;
      }
    }
    temp *= cfg.cooling;
  }
  return chain;
}

}  // namespace

AnnealResult solve(const Word& w, int n, const Permutation& target, const AnnealConfig& cfg) {
  if (w.var_length() < 1 || w.rank() < 1)
    throw std::invalid_argument("solve: word has no variables");
  if (cfg.steps < 1 || cfg.cooling <= 0 || cfg.cooling >= 1 || cfg.restarts < 1)
    throw std::invalid_argument("solve: invalid config");
  if (target.degree() != n || w.degree() != n)
    throw std::invalid_argument("solve: degree mismatch");

  auto t0 = std::chrono::steady_clock::now();
  std::vector<Chain> chains(cfg.restarts);
  int workers = std::max(cfg.workers, 1);
  std::vector<std::thread> threads;
  for (int t = 0; t < workers; ++t) {
    threads.emplace_back([&, t] {
      for (int rst = t; rst < cfg.restarts; rst += workers)
        chains[rst] = run_chain(w, n, target, cfg, static_cast<std::uint64_t>(rst));
    });
  }
  for (auto& th : threads) th.join();

  AnnealResult res;
  res.initial_raw_distance = chains[0].initial;
  res.best_raw_distance = chains[0].best;
  res.best_assignment = chains[0].best_state;
  for (const Chain& c : chains) {
    res.traces.push_back(c.trace);
    if (c.best < res.best_raw_distance) {
      res.best_raw_distance = c.best;
      res.best_assignment = c.best_state;
    }
  }
  res.early_uphill_accept_rate =
      chains[0].uphill_seen > 0
          ? static_cast<double>(chains[0].uphill_accepted) / chains[0].uphill_seen
          : 1.0;
  res.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

int brute_force_min(const Word& w, int n, const Permutation& target) {
  if (w.rank() != 1) throw std::invalid_argument("brute_force_min: single-variable words only");
  if (factorial(n) > 10'000'000) throw std::invalid_argument("brute_force_min: n! <= 1e7 required");
  std::vector<int> line(n);
  std::iota(line.begin(), line.end(), 1);
  int best = n + 1;
  do {
    std::vector<Permutation> assignment = {Permutation::from_images(line)};
    best = std::min(best, objective(w, assignment, target));
  } while (best > 0 && std::next_permutation(line.begin(), line.end()));
  return best;
}

}  // namespace wordlab
