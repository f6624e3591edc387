#include "ratsub/semilinear.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "ratsub/errors.hpp"

namespace ratsub {

namespace {

long long mod_nonneg(long long v, long long p) {
  long long r = v % p;
  return r < 0 ? r + p : r;
}

}  // namespace

SemilinearZ SemilinearZ::empty() { return SemilinearZ(); }

SemilinearZ SemilinearZ::finite(const std::set<long long>& values) {
  long long t = 0;
  for (long long v : values) t = std::max(t, std::llabs(v));
  return from_parts(t, values, 0, {}, 0, {});
}

SemilinearZ SemilinearZ::whole_line() {
  return from_parts(0, {0}, 1, {0}, 1, {0});
}

SemilinearZ SemilinearZ::nonzero() {
  return from_parts(0, {}, 1, {0}, 1, {0});
}

SemilinearZ SemilinearZ::from_parts(long long threshold,
                                    std::set<long long> window,
                                    long long pos_period,
                                    std::set<long long> pos_residues,
                                    long long neg_period,
                                    std::set<long long> neg_residues) {
  if (threshold < 0) throw InputError("semilinear threshold must be >= 0");
  if (pos_period < 0 || neg_period < 0)
    throw InputError("semilinear periods must be >= 0");
  for (long long v : window)
    if (std::llabs(v) > threshold)
      throw InputError("semilinear window value outside [-T, T]");
  if ((pos_period == 0) != pos_residues.empty() ||
      (neg_period == 0) != neg_residues.empty())
    throw InputError("semilinear tail is empty iff its period is 0");
  for (long long r : pos_residues)
    if (r < 0 || r >= pos_period) throw InputError("pos residue out of range");
  for (long long r : neg_residues)
    if (r < 0 || r >= neg_period) throw InputError("neg residue out of range");
  SemilinearZ s;
  s.threshold_ = threshold;
  s.window_ = std::move(window);
  s.pos_period_ = pos_period;
  s.pos_residues_ = std::move(pos_residues);
  s.neg_period_ = neg_period;
  s.neg_residues_ = std::move(neg_residues);
  return s;
}

SemilinearZ SemilinearZ::from_function(const std::function<bool(long long)>& fn,
                                       long long threshold, long long pos_period,
                                       long long neg_period) {
  if (pos_period < 1 || neg_period < 1)
    throw InputError("from_function needs positive candidate periods");
  std::set<long long> window;
  for (long long v = -threshold; v <= threshold; ++v)
    if (fn(v)) window.insert(v);
  std::set<long long> pos_res, neg_res;
  for (long long v = threshold + 1; v <= threshold + pos_period; ++v)
    if (fn(v)) pos_res.insert(mod_nonneg(v, pos_period));
  for (long long v = -threshold - neg_period; v <= -threshold - 1; ++v)
    if (fn(v)) neg_res.insert(mod_nonneg(v, neg_period));
  long long p_pos = pos_res.empty() ? 0 : pos_period;
  long long p_neg = neg_res.empty() ? 0 : neg_period;
  SemilinearZ s = from_parts(threshold, std::move(window), p_pos,
                             std::move(pos_res), p_neg, std::move(neg_res));
  for (long long v = threshold + 1; v <= threshold + 2 * pos_period; ++v)
    if (fn(v) != s.contains(v))
      throw InconsistencyError("function is not periodic beyond the threshold");
  for (long long v = -threshold - 2 * neg_period; v <= -threshold - 1; ++v)
    if (fn(v) != s.contains(v))
      throw InconsistencyError("function is not periodic beyond the threshold");
  return s;
}

bool SemilinearZ::contains(long long v) const {
  if (v > threshold_)
    return pos_period_ > 0 && pos_residues_.contains(mod_nonneg(v, pos_period_));
  if (v < -threshold_)
    return neg_period_ > 0 && neg_residues_.contains(mod_nonneg(v, neg_period_));
  return window_.contains(v);
}

bool SemilinearZ::same_set(const SemilinearZ& o) const {
  long long t = std::max(threshold_, o.threshold_);
  long long p = std::lcm(std::max<long long>(pos_period_, 1),
                         std::max<long long>(o.pos_period_, 1));
  long long q = std::lcm(std::max<long long>(neg_period_, 1),
                         std::max<long long>(o.neg_period_, 1));
  long long m = t + 2 * std::max(p, q);
  for (long long v = -m; v <= m; ++v)
    if (contains(v) != o.contains(v)) return false;
  return true;
}

bool SemilinearZ::is_empty_set() const {
  return window_.empty() && pos_period_ == 0 && neg_period_ == 0;
}

std::set<long long> SemilinearZ::finite_values() const {
  if (!is_finite())
    throw InputError("semilinear set has an infinite tail");
  return window_;
}

SemilinearZ SemilinearZ::shifted(long long k) const {
  return from_function([&](long long v) { return contains(v - k); },
                       threshold_ + std::llabs(k),
                       std::max<long long>(pos_period_, 1),
                       std::max<long long>(neg_period_, 1));
}

SemilinearZ SemilinearZ::divided(long long m) const {
  if (m < 1) throw InputError("divisor must be >= 1");
  auto tail_period = [&](long long p) {
    if (p == 0) return 1LL;
    return p / std::gcd(p, m);
  };
  return from_function([&](long long v) { return contains(m * v); }, threshold_,
                       tail_period(pos_period_), tail_period(neg_period_));
}

bool SemilinearZ::all_multiples_of(long long m) const {
  if (m < 1) throw InputError("divisor must be >= 1");
  for (long long v : window_)
    if (v % m != 0) return false;
  if (pos_period_ > 0) {
    if (pos_period_ % m != 0) return false;
    for (long long r : pos_residues_)
      if (r % m != 0) return false;
  }
  if (neg_period_ > 0) {
    if (neg_period_ % m != 0) return false;
    for (long long r : neg_residues_)
      if (r % m != 0) return false;
  }
  return true;
}

SemilinearZ SemilinearZ::minimized() const {
  SemilinearZ s = *this;
  // shrink each tail period to its smallest consistent divisor: membership
  // must depend only on the residue mod d
  auto shrink_period = [](long long& p, std::set<long long>& res) {
    if (p == 0) return;
    for (long long d = 1; d < p; ++d) {
      if (p % d != 0) continue;
      bool ok = true;
      for (long long r = 0; r < p && ok; ++r)
        if (res.contains(r) != res.contains(r % d)) ok = false;
      if (ok) {
        std::set<long long> lifted;
        for (long long r : res) lifted.insert(r % d);
        res = std::move(lifted);
        p = d;
        return;
      }
    }
  };
  shrink_period(s.pos_period_, s.pos_residues_);
  shrink_period(s.neg_period_, s.neg_residues_);
  // shrink the threshold while the boundary values match the tails
  while (s.threshold_ > 0) {
    long long t = s.threshold_;
    bool pos_ok = (s.pos_period_ > 0 &&
                   s.pos_residues_.contains(mod_nonneg(t, s.pos_period_))) ==
                  s.window_.contains(t);
    bool neg_ok = (s.neg_period_ > 0 &&
                   s.neg_residues_.contains(mod_nonneg(-t, s.neg_period_))) ==
                  s.window_.contains(-t);
    if (!pos_ok || !neg_ok) break;
    s.window_.erase(t);
    s.window_.erase(-t);
    --s.threshold_;
  }
  return s;
}

std::string SemilinearZ::to_string() const {
  std::string out = "window={";
  bool first = true;
  for (long long v : window_) {
    if (!first) out += ",";
    first = false;
    out += std::to_string(v);
  }
  out += "} pos=(" + std::to_string(threshold_) + "," +
         std::to_string(pos_period_) + ",{";
  first = true;
  for (long long r : pos_residues_) {
    if (!first) out += ",";
    first = false;
    out += std::to_string(r);
  }
  out += "}) neg=(" + std::to_string(threshold_) + "," +
         std::to_string(neg_period_) + ",{";
  first = true;
  for (long long r : neg_residues_) {
    if (!first) out += ",";
    first = false;
    out += std::to_string(r);
  }
  out += "})";
  return out;
}

Nfa SemilinearZ::to_nfa(const Alphabet& rank1) const {
  if (rank1.rank() != 1)
    throw InputError("semilinear automata need a rank-1 alphabet");
  const Letter t = Alphabet::positive(0);
  const Letter ti = Alphabet::inv(t);
  SemilinearZ s = minimized();
  Nfa out{rank1, 0, {}, {}, {}};
  auto fresh = [&] { return out.state_count++; };
  int origin = fresh();
  out.start_states.insert(origin);
  if (s.contains(0)) out.accept_states.insert(origin);
  // positive ray: chain for 1..T, then a period loop
  int cur = origin;
  for (long long v = 1; v <= s.threshold_; ++v) {
    int nxt = fresh();
    out.transitions.insert({cur, static_cast<int>(t), nxt});
    if (s.contains(v)) out.accept_states.insert(nxt);
    cur = nxt;
  }
  if (s.pos_period_ > 0) {
    int first = fresh();
    out.transitions.insert({cur, static_cast<int>(t), first});
    if (s.contains(s.threshold_ + 1)) out.accept_states.insert(first);
    int loop = first;
    for (long long k = 2; k <= s.pos_period_; ++k) {
      int nxt = fresh();
      out.transitions.insert({loop, static_cast<int>(t), nxt});
      if (s.contains(s.threshold_ + k)) out.accept_states.insert(nxt);
      loop = nxt;
    }
    out.transitions.insert({loop, static_cast<int>(t), first});
  }
  // negative ray, mirrored
  cur = origin;
  for (long long v = 1; v <= s.threshold_; ++v) {
    int nxt = fresh();
    out.transitions.insert({cur, static_cast<int>(ti), nxt});
    if (s.contains(-v)) out.accept_states.insert(nxt);
    cur = nxt;
  }
  if (s.neg_period_ > 0) {
    int first = fresh();
    out.transitions.insert({cur, static_cast<int>(ti), first});
    if (s.contains(-s.threshold_ - 1)) out.accept_states.insert(first);
    int loop = first;
    for (long long k = 2; k <= s.neg_period_; ++k) {
      int nxt = fresh();
      out.transitions.insert({loop, static_cast<int>(ti), nxt});
      if (s.contains(-s.threshold_ - k)) out.accept_states.insert(nxt);
      loop = nxt;
    }
    out.transitions.insert({loop, static_cast<int>(ti), first});
  }
  return out;
}

namespace {

struct UsefulPart {
  std::vector<int> old_of_new;
  std::vector<int> new_of_old;
  std::vector<WeightedEdge> edges;
  std::set<int> starts, accepts;
};

UsefulPart trim(const ZWeightedNfa& a) {
  std::vector<std::vector<int>> fwd(a.state_count), bwd(a.state_count);
  for (const auto& e : a.edges) {
    fwd[e.from].push_back(e.to);
    bwd[e.to].push_back(e.from);
  }
  auto reach = [&](const std::set<int>& roots,
                   const std::vector<std::vector<int>>& adj) {
    std::vector<bool> seen(a.state_count, false);
    std::deque<int> queue;
    for (int s : roots) {
      if (s >= 0 && s < a.state_count && !seen[s]) {
        seen[s] = true;
        queue.push_back(s);
      }
    }
    while (!queue.empty()) {
      int s = queue.front();
      queue.pop_front();
      for (int t : adj[s])
        if (!seen[t]) {
          seen[t] = true;
          queue.push_back(t);
        }
    }
    return seen;
  };
  auto from_start = reach(a.starts, fwd);
  auto to_accept = reach(a.accepts, bwd);
  UsefulPart p;
  p.new_of_old.assign(a.state_count, -1);
  for (int s = 0; s < a.state_count; ++s)
    if (from_start[s] && to_accept[s]) {
      p.new_of_old[s] = static_cast<int>(p.old_of_new.size());
      p.old_of_new.push_back(s);
    }
  for (const auto& e : a.edges)
    if (p.new_of_old[e.from] >= 0 && p.new_of_old[e.to] >= 0)
      p.edges.push_back({p.new_of_old[e.from], e.weight, p.new_of_old[e.to]});
  for (int s : a.starts)
    if (s >= 0 && s < a.state_count && p.new_of_old[s] >= 0)
      p.starts.insert(p.new_of_old[s]);
  for (int s : a.accepts)
    if (s >= 0 && s < a.state_count && p.new_of_old[s] >= 0)
      p.accepts.insert(p.new_of_old[s]);
  return p;
}

// Tarjan SCC
struct SccResult {
  std::vector<int> comp;
  int count = 0;
};

SccResult scc_of(int n, const std::vector<WeightedEdge>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : edges) adj[e.from].push_back(e.to);
  SccResult r;
  r.comp.assign(n, -1);
  std::vector<int> low(n, 0), num(n, -1), stk;
  std::vector<bool> on(n, false);
  int counter = 0;
  // iterative Tarjan
  for (int root = 0; root < n; ++root) {
    if (num[root] >= 0) continue;
    std::vector<std::pair<int, size_t>> call{{root, 0}};
    while (!call.empty()) {
      auto& [v, idx] = call.back();
      if (idx == 0) {
        num[v] = low[v] = counter++;
        stk.push_back(v);
        on[v] = true;
      }
      if (idx < adj[v].size()) {
        int w = adj[v][idx++];
        if (num[w] < 0) {
          call.push_back({w, 0});
        } else if (on[w]) {
          low[v] = std::min(low[v], num[w]);
        }
      } else {
        if (low[v] == num[v]) {
          for (;;) {
            int w = stk.back();
            stk.pop_back();
            on[w] = false;
            r.comp[w] = r.count;
            if (w == v) break;
          }
          ++r.count;
        }
        int child = v;
        call.pop_back();
        if (!call.empty())
          low[call.back().first] = std::min(low[call.back().first], low[child]);
      }
    }
  }
  return r;
}

}  // namespace

SemilinearZ weighted_image(const ZWeightedNfa& a) {
  UsefulPart p = trim(a);
  if (p.accepts.empty() || p.starts.empty()) return SemilinearZ::empty();
  const int q = static_cast<int>(p.old_of_new.size());
  long long wmax = 1;
  for (const auto& e : p.edges) wmax = std::max(wmax, std::llabs(e.weight));

  // per-SCC gcd of cycle weights via potentials
  SccResult scc = scc_of(q, p.edges);
  std::vector<long long> gcd_of(scc.count, 0);
  {
    std::vector<std::vector<std::pair<int, long long>>> inside(scc.count);
    std::vector<std::vector<std::pair<int, long long>>> adj(q);
    for (const auto& e : p.edges)
      if (scc.comp[e.from] == scc.comp[e.to])
        adj[e.from].push_back({e.to, e.weight});
    std::vector<long long> pot(q, 0);
    std::vector<bool> seen(q, false);
    for (int v = 0; v < q; ++v) {
      if (seen[v]) continue;
      seen[v] = true;
      pot[v] = 0;
      std::deque<int> queue{v};
      while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (auto [w, wt] : adj[u]) {
          if (!seen[w]) {
            seen[w] = true;
            pot[w] = pot[u] + wt;
            queue.push_back(w);
          } else {
            long long cyc = pot[u] + wt - pot[w];
            int c = scc.comp[u];
            gcd_of[c] = std::gcd(gcd_of[c], std::llabs(cyc));
          }
        }
      }
    }
  }
  long long period = 1;
  for (int c = 0; c < scc.count; ++c)
    if (gcd_of[c] > 0) {
      period = std::lcm(period, gcd_of[c]);
      if (period > 100000)
        throw InconsistencyError("weighted image period exceeds bound");
    }

  const long long wm = static_cast<long long>(q) * wmax;
  const long long threshold = 4 * wm * wm + 4;
  if (threshold > 4000000)
    throw InconsistencyError("weighted image threshold exceeds bound");
  const long long extent = threshold + 2 * period;

  // bounded weight reachability; a second pass with a wider margin guards
  // against walks that must leave the first band and come back
  auto reach_membership = [&](long long band) {
    std::vector<std::vector<bool>> seen(
        q, std::vector<bool>(2 * band + 1, false));
    std::deque<std::pair<int, long long>> queue;
    std::vector<std::vector<std::pair<int, long long>>> adj(q);
    for (const auto& e : p.edges) adj[e.from].push_back({e.to, e.weight});
    for (int s : p.starts) {
      seen[s][band] = true;
      queue.push_back({s, 0});
    }
    while (!queue.empty()) {
      auto [s, w] = queue.front();
      queue.pop_front();
      for (auto [t, wt] : adj[s]) {
        long long w2 = w + wt;
        if (std::llabs(w2) > band) continue;
        if (!seen[t][w2 + band]) {
          seen[t][w2 + band] = true;
          queue.push_back({t, w2});
        }
      }
    }
    std::vector<bool> member(2 * extent + 1, false);
    for (int s : p.accepts)
      for (long long v = -extent; v <= extent; ++v)
        if (seen[s][v + band]) member[v + extent] = true;
    return member;
  };

  const long long margin = 8 * wm * wm + 2 * wm + 16;
  if (static_cast<double>(q) * (2.0 * (extent + margin + 4 * wm * wm) + 1) > 3e8)
    throw InconsistencyError("weighted image exploration exceeds bound");
  std::vector<bool> member = reach_membership(extent + margin);
  std::vector<bool> member_wide = reach_membership(extent + margin + 4 * wm * wm);
  if (member != member_wide)
    throw InconsistencyError("weighted image window is unstable");

  auto fn = [&](long long v) {
    return std::llabs(v) <= extent && member[v + extent];
  };
  SemilinearZ s = SemilinearZ::from_function(fn, threshold, period, period);
  // mandated self-check against the bounded reachability
  for (long long v = -extent; v <= extent; ++v)
    if (s.contains(v) != fn(v))
      throw InconsistencyError("weighted image failed self-verification");
  return s.minimized();
}

}  // namespace ratsub
