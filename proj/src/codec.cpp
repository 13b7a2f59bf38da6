#include "ifent/codec.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <random>
#include <sstream>

#include "ifent/errors.hpp"

namespace ifent {

namespace {

std::vector<StateId> window_suffix(const std::vector<StateId>& w,
                                   std::size_t len) {
  return {w.end() - std::ptrdiff_t(len), w.end()};
}

std::vector<Symbol> symbol_suffix(const std::vector<Symbol>& w,
                                  std::size_t len) {
  return {w.end() - std::ptrdiff_t(len), w.end()};
}

}  // namespace

Symbol PeriodicCoderController::encode(
    unsigned phase, const std::vector<StateId>& window) const {
  const unsigned q = phase % table_period;
  if (window.size() < q + 1)
    throw Error("coder window shorter than its phase requires");
  if (q >= coder.size()) return 1;
  const auto it = coder[q].find(window_suffix(window, q + 1));
  return it == coder[q].end() ? Symbol(1) : it->second;
}

InputId PeriodicCoderController::decode(
    unsigned phase, const std::vector<Symbol>& window) const {
  const unsigned q = phase % table_period;
  if (window.size() < q + 1)
    throw Error("controller window shorter than its phase requires");
  if (q >= controller.size()) return 0;
  const auto it = controller[q].find(symbol_suffix(window, q + 1));
  return it == controller[q].end() ? InputId(0) : it->second;
}

AdmissibilityResult check_admissible(const FiniteSystem& sys,
                                     const TargetSet& Q,
                                     const PeriodicCoderController& H) {
  struct Node {
    unsigned phase;
    std::vector<StateId> window;
    std::vector<Symbol> symbols;
    int parent;
    StateId state;
    InputId via;
  };
  AdmissibilityResult res;
  std::vector<Node> nodes;
  std::set<std::pair<unsigned, std::vector<StateId>>> visited;
  std::deque<std::size_t> queue;

  for (StateId x : Q.members) {
    std::vector<StateId> w{x};
    if (!visited.insert({0u, w}).second) continue;
    std::vector<Symbol> s{H.encode(0, w)};
    nodes.push_back({0u, std::move(w), std::move(s), -1, x, 0});
    queue.push_back(nodes.size() - 1);
  }

  auto rebuild = [&](std::size_t leaf, StateId escape, InputId u) {
    Trajectory tr;
    std::vector<StateId> states;
    std::vector<InputId> inputs;
    states.push_back(escape);
    inputs.push_back(u);
    for (int cur = int(leaf); cur >= 0; cur = nodes[cur].parent) {
      states.push_back(nodes[cur].state);
      if (nodes[cur].parent >= 0) inputs.push_back(nodes[cur].via);
    }
    std::reverse(states.begin(), states.end());
    std::reverse(inputs.begin(), inputs.end());
    tr.states = std::move(states);
    tr.inputs = std::move(inputs);
    return tr;
  };

  while (!queue.empty()) {
    const std::size_t id = queue.front();
    queue.pop_front();
    const unsigned phase = nodes[id].phase;
    const InputId u = H.decode(phase, nodes[id].symbols);
    const StateSet succ = sys.post(nodes[id].state, u);
    for (StateId x : succ) {
      if (!Q.members.contains(x)) {
        res.admissible = false;
        res.counterexample = rebuild(id, x, u);
        return res;
      }
      const unsigned next_phase = (phase + 1) % H.period;
      std::vector<StateId> w;
      std::vector<Symbol> s;
      if (next_phase == 0) {
        w = {x};
      } else {
        w = nodes[id].window;
        w.push_back(x);
      }
      if (!visited.insert({next_phase, w}).second) continue;
      if (next_phase == 0) {
        s = {H.encode(0, w)};
      } else {
        s = nodes[id].symbols;
        s.push_back(H.encode(next_phase, w));
      }
      nodes.push_back({next_phase, std::move(w), std::move(s), int(id), x, u});
      queue.push_back(nodes.size() - 1);
    }
  }
  res.admissible = true;
  return res;
}

namespace {

// one node of the feasible-symbol-prefix tree at the declared period
struct PrefixNode {
  std::vector<Symbol> zeta;
  std::vector<std::vector<StateId>> windows;  // consistent state windows
};

// successor buckets of a prefix node: next symbol -> extended windows
// (windows empty at the restart level, where only the count matters)
std::map<Symbol, std::vector<std::vector<StateId>>> successor_buckets(
    const FiniteSystem& sys, const PeriodicCoderController& H, unsigned t,
    const PrefixNode& node) {
  const InputId u = H.decode(t, node.zeta);
  std::map<Symbol, std::vector<std::vector<StateId>>> buckets;
  for (const auto& w : node.windows) {
    for (StateId x : sys.post(w.back(), u)) {
      if (t + 1 < H.period) {
        auto w2 = w;
        w2.push_back(x);
        const Symbol s = H.encode(t + 1, w2);
        buckets[s].push_back(std::move(w2));
      } else {
        const Symbol s = H.encode(0, {x});
        buckets[s];
      }
    }
  }
  for (auto& [s, ws] : buckets) {
    std::sort(ws.begin(), ws.end());
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  }
  return buckets;
}

std::vector<PrefixNode> initial_prefix_nodes(const FiniteSystem& sys,
                                             const PeriodicCoderController& H,
                                             const StateSet* starts) {
  std::map<Symbol, PrefixNode> by_symbol;
  for (StateId x = 0; x < sys.num_states; ++x) {
    if (starts && !starts->contains(x)) continue;
    const Symbol s = H.encode(0, {x});
    auto& node = by_symbol[s];
    node.zeta = {s};
    node.windows.push_back({x});
  }
  std::vector<PrefixNode> out;
  for (auto& [s, node] : by_symbol) out.push_back(std::move(node));
  return out;
}

}  // namespace

RateReport transmission_rate(const FiniteSystem& sys,
                             const PeriodicCoderController& H,
                             const RateOptions& opts) {
  RateReport rep;
  if (opts.Q) {
    const auto adm = check_admissible(sys, *opts.Q, H);
    rep.admissibility_checked = true;
    rep.admissible = adm.admissible;
    rep.counterexample = adm.counterexample;
    if (!adm.admissible && opts.require_admissible)
      throw NotAdmissible("controller is not admissible; counterexample: " +
                          adm.counterexample->to_string());
  }

  const unsigned tau = H.period;
  Big worst = 0;

  auto dfs = [&](auto&& self, unsigned t, const PrefixNode& node,
                 const Big& product) -> void {
    auto buckets = successor_buckets(sys, H, t, node);
    auto& z = rep.z_table[node.zeta];
    for (const auto& [s, ws] : buckets) z.insert(s);
    const Big next = product * Big(buckets.size());
    if (t + 1 == tau) {
      ++rep.num_sequences;
      worst = std::max(worst, next);
      return;
    }
    for (auto& [s, ws] : buckets) {
      PrefixNode child;
      child.zeta = node.zeta;
      child.zeta.push_back(s);
      child.windows = std::move(ws);
      self(self, t + 1, child, next);
    }
  };

  for (const auto& node : initial_prefix_nodes(sys, H, nullptr))
    dfs(dfs, 0, node, Big(1));

  rep.rate = worst > 0 ? LogRate(worst, tau) : LogRate();
  return rep;
}

PeriodicCoderController from_spanning(const FiniteSystem& sys,
                                      const TargetSet& Q,
                                      const InvariantCover& cover,
                                      const SpanningPolicy& policy) {
  const auto check = validate_policy(sys, Q, cover, policy);
  if (!check.ok) throw Error("from_spanning: invalid policy: " + check.message);

  const unsigned tau = policy.horizon;
  PeriodicCoderController H;
  H.period = tau;
  H.table_period = tau;
  H.coder.resize(tau);
  H.controller.resize(tau);

  // alphabet size: largest enumerated family
  std::size_t m = policy.initial.size();
  for (const auto& level : policy.succ)
    for (const auto& fam : level)
      if (fam) m = std::max(m, fam->size());
  H.num_symbols = unsigned(std::max<std::size_t>(m, 1));

  // first element of the family containing x, as a 1-based symbol
  const auto match = [&](const std::vector<std::size_t>& family, StateId x) {
    for (std::size_t pos = 0; pos < family.size(); ++pos)
      if (cover.elements[family[pos]].set.contains(x)) return Symbol(pos + 1);
    return Symbol(1);
  };

  // closed-loop window enumeration from every state of X; the decoded
  // branch element is a function of the emitted symbols alone
  struct Node {
    std::vector<StateId> window;
    std::vector<Symbol> symbols;
    std::size_t element;  // decoded branch element at the current position
  };
  std::deque<Node> queue;
  for (StateId x = 0; x < sys.num_states; ++x) {
    const Symbol s = match(policy.initial, x);
    const std::size_t elem = policy.initial[s - 1];
    H.coder[0][{x}] = s;
    H.controller[0].insert({{s}, cover.elements[elem].input});
    queue.push_back({{x}, {s}, elem});
  }
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    const unsigned t = unsigned(node.window.size()) - 1;
    if (t + 1 >= tau) continue;
    const InputId u = cover.elements[node.element].input;
    const auto& fam = policy.family(node.element, tau - t);
    for (StateId x : sys.post(node.window.back(), u)) {
      auto w2 = node.window;
      w2.push_back(x);
      if (H.coder[t + 1].count(w2)) continue;
      const Symbol s = match(*fam, x);
      const std::size_t elem2 = (*fam)[s - 1];
      auto s2 = node.symbols;
      s2.push_back(s);
      H.coder[t + 1][w2] = s;
      H.controller[t + 1].insert({s2, cover.elements[elem2].input});
      queue.push_back({std::move(w2), std::move(s2), elem2});
    }
  }
  return H;
}

ExtractedCover to_cover_and_spanning(const FiniteSystem& sys,
                                     const TargetSet& Q,
                                     const PeriodicCoderController& H) {
  const auto adm = check_admissible(sys, Q, H);
  if (!adm.admissible)
    throw NotAdmissible("controller is not admissible; counterexample: " +
                        adm.counterexample->to_string());

  const unsigned tau = H.period;

  // prefix tree of the closed loop restricted to starts in Q
  struct TreeNode {
    PrefixNode pref;
    StateSet states;  // last states = the consistent subset of Q
    InputId input;
    std::vector<std::size_t> children;
  };
  std::vector<TreeNode> tree;
  std::vector<std::vector<std::size_t>> levels(tau);

  for (auto& node : initial_prefix_nodes(sys, H, &Q.members)) {
    TreeNode tn;
    tn.input = H.decode(0, node.zeta);
    for (const auto& w : node.windows) tn.states.insert(w.back());
    tn.pref = std::move(node);
    levels[0].push_back(tree.size());
    tree.push_back(std::move(tn));
  }
  for (unsigned t = 0; t + 1 < tau; ++t) {
    // copy: growing `tree` invalidates references
    const std::vector<std::size_t> level = levels[t];
    for (std::size_t id : level) {
      auto buckets = successor_buckets(sys, H, t, tree[id].pref);
      for (auto& [s, ws] : buckets) {
        TreeNode child;
        child.pref.zeta = tree[id].pref.zeta;
        child.pref.zeta.push_back(s);
        child.pref.windows = std::move(ws);
        child.input = H.decode(t + 1, child.pref.zeta);
        for (const auto& w : child.pref.windows) child.states.insert(w.back());
        tree[id].children.push_back(tree.size());
        levels[t + 1].push_back(tree.size());
        tree.push_back(std::move(child));
      }
    }
  }

  // cover = distinct (set, input) pairs; same-level duplicates merge and
  // their successor families union
  ExtractedCover out;
  std::map<InvariantCover::Element, std::size_t> pair_index;
  auto index_of = [&](const TreeNode& tn) {
    InvariantCover::Element el{tn.states, tn.input};
    auto [it, fresh] = pair_index.insert({el, out.cover.elements.size()});
    if (fresh) out.cover.elements.push_back(std::move(el));
    return it->second;
  };

  out.policy.horizon = tau;
  out.policy.succ.assign(tau >= 2 ? tau - 1 : 0, {});
  std::vector<std::size_t> ids(tree.size());
  for (unsigned t = 0; t < tau; ++t)
    for (std::size_t id : levels[t]) ids[id] = index_of(tree[id]);

  for (auto& level : out.policy.succ) level.resize(out.cover.elements.size());
  std::vector<std::size_t> initial;
  for (std::size_t id : levels[0]) initial.push_back(ids[id]);
  std::sort(initial.begin(), initial.end());
  initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
  out.policy.initial = std::move(initial);

  for (unsigned t = 0; t + 1 < tau; ++t) {
    const unsigned k = tau - t;  // steps remaining at level t, k >= 2
    for (std::size_t id : levels[t]) {
      auto& slot = out.policy.succ[k - 2][ids[id]];
      if (!slot) slot.emplace();
      for (std::size_t child : tree[id].children)
        slot->push_back(ids[child]);
      std::sort(slot->begin(), slot->end());
      slot->erase(std::unique(slot->begin(), slot->end()), slot->end());
    }
  }
  return out;
}

TimeVaryingRate time_varying_rate(const FiniteSystem& sys,
                                  const PeriodicCoderController& H,
                                  unsigned horizon) {
  if (horizon < 1) throw Error("time_varying_rate requires horizon >= 1");
  TimeVaryingRate out;
  out.per_phase.resize(H.period);
  for (unsigned p = 0; p < H.period; ++p) {
    const unsigned q = p % H.table_period;
    std::set<Symbol> image;
    if (q < H.coder.size())
      for (const auto& [w, s] : H.coder[q]) image.insert(s);
    // any window absent from the table falls back to symbol 1
    const Big total = big_pow(Big(sys.num_states), q + 1);
    const Big present = q < H.coder.size() ? Big(H.coder[q].size()) : Big(0);
    if (present < total) image.insert(1);
    out.per_phase[p] = image.size();
  }
  Big period_product = 1;
  for (std::size_t n : out.per_phase) period_product *= Big(n);
  out.limit = LogRate(period_product, H.period);
  Big trunc = 1;
  for (unsigned t = 0; t < horizon; ++t) trunc *= Big(out.per_phase[t % H.period]);
  out.truncated = LogRate(trunc, horizon);
  return out;
}

ZeroErrorCapacity zero_error_capacity(const FiniteSystem& sys,
                                      const PeriodicCoderController& H,
                                      unsigned tau_probe) {
  if (tau_probe < 1) throw Error("zero_error_capacity requires tau_probe >= 1");
  ZeroErrorCapacity out;

  // symbol-prefix automaton across periods; deterministic in symbols
  struct Key {
    unsigned phase;
    std::vector<Symbol> zeta;
    std::vector<std::vector<StateId>> windows;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, std::size_t> index;
  std::vector<std::vector<std::size_t>> adj;
  std::vector<Key> keys;
  std::vector<std::size_t> initial;
  std::deque<std::size_t> queue;

  auto intern = [&](Key k) {
    auto [it, fresh] = index.insert({k, keys.size()});
    if (fresh) {
      keys.push_back(std::move(k));
      adj.emplace_back();
      queue.push_back(it->second);
    }
    return it->second;
  };

  for (auto& node : initial_prefix_nodes(sys, H, nullptr))
    initial.push_back(
        intern({0u, std::move(node.zeta), std::move(node.windows)}));

  while (!queue.empty()) {
    const std::size_t id = queue.front();
    queue.pop_front();
    const Key key = keys[id];  // copy: intern() grows the vectors
    PrefixNode node{key.zeta, key.windows};
    auto buckets = successor_buckets(sys, H, key.phase, node);
    for (auto& [s, ws] : buckets) {
      Key next;
      if (key.phase + 1 < H.period) {
        next.phase = key.phase + 1;
        next.zeta = key.zeta;
        next.zeta.push_back(s);
        next.windows = std::move(ws);
      } else {
        next.phase = 0;
        next.zeta = {s};
        // restart configurations: single-state windows matching the symbol
        std::set<std::vector<StateId>> fresh;
        const InputId u = H.decode(key.phase, key.zeta);
        for (const auto& w : key.windows)
          for (StateId x : sys.post(w.back(), u))
            if (H.encode(0, {x}) == s) fresh.insert({x});
        next.windows.assign(fresh.begin(), fresh.end());
      }
      adj[id].push_back(intern(std::move(next)));
    }
  }

  // path counts: counts[k] = #Z_k
  const std::size_t n = keys.size();
  std::vector<Big> f(n, Big(1)), g(n);
  out.counts.resize(tau_probe);
  for (unsigned k = 1; k <= tau_probe; ++k) {
    Big total = 0;
    for (std::size_t v : initial) total += f[v];
    out.counts[k - 1] = total;
    for (std::size_t v = 0; v < n; ++v) {
      g[v] = 0;
      for (std::size_t w : adj[v]) g[v] += f[w];
    }
    f.swap(g);
  }

  // SCC condensation (iterative Tarjan)
  std::vector<int> comp(n, -1), low(n), num(n, -1), stack_flag(n, 0);
  std::vector<std::size_t> stk;
  int counter = 0, ncomp = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (num[root] != -1) continue;
    std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
    while (!call.empty()) {
      auto& [v, ei] = call.back();
      if (ei == 0) {
        num[v] = low[v] = counter++;
        stk.push_back(v);
        stack_flag[v] = 1;
      }
      if (ei < adj[v].size()) {
        const std::size_t w = adj[v][ei++];
        if (num[w] == -1)
          call.push_back({w, 0});
        else if (stack_flag[w])
          low[v] = std::min(low[v], num[w]);
      } else {
        if (low[v] == num[v]) {
          for (;;) {
            const std::size_t w = stk.back();
            stk.pop_back();
            stack_flag[w] = 0;
            comp[w] = ncomp;
            if (w == v) break;
          }
          ++ncomp;
        }
        const std::size_t vv = v;
        call.pop_back();
        if (!call.empty())
          low[call.back().first] = std::min(low[call.back().first], low[vv]);
      }
    }
  }

  bool polynomial = true;
  for (std::size_t v = 0; v < n && polynomial; ++v) {
    std::size_t internal = 0;
    for (std::size_t w : adj[v])
      if (comp[w] == comp[v]) ++internal;
    // simple cycle or trivial component: at most one internal successor
    if (internal > 1) polynomial = false;
  }

  if (polynomial) {
    out.growth = GrowthClass::polynomial;
    out.certified = true;
    out.estimate = LogRate();  // zero
    out.note = "every cycle of the prefix automaton is simple";
    return out;
  }

  out.growth = GrowthClass::exponential;
  std::size_t degree = adj.empty() ? 0 : adj[0].size();
  bool uniform = true;
  for (const auto& a : adj)
    if (a.size() != degree) {
      uniform = false;
      break;
    }
  if (uniform && degree >= 1) {
    out.certified = true;
    out.estimate = LogRate(Big(degree), 1);
    out.note = "uniform branching of the prefix automaton";
  } else {
    out.certified = false;
    out.estimate = LogRate(out.counts.back(), tau_probe);
    out.note = "slope estimate at tau_probe; not certified";
  }
  return out;
}

PeriodicCoderController periodize(const PeriodicCoderController& H,
                                  unsigned tau) {
  if (tau < 1)
    throw WindowTooShort("periodize requires a positive period");
  PeriodicCoderController out = H;
  out.period = tau;
  return out;
}

Adversary Adversary::minimal_id() {
  Adversary a;
  a.pick = [](const StateSet& succ, unsigned) { return succ.min(); };
  return a;
}

Adversary Adversary::seeded_uniform(std::uint64_t seed) {
  auto gen = std::make_shared<std::mt19937_64>(seed);
  Adversary a;
  a.pick = [gen](const StateSet& succ, unsigned) {
    return succ.ids()[std::size_t((*gen)()) % succ.size()];
  };
  return a;
}

Adversary Adversary::script(std::vector<std::size_t> choices) {
  Adversary a;
  a.pick = [choices = std::move(choices)](const StateSet& succ, unsigned step) {
    const std::size_t raw =
        choices.empty() ? 0 : choices[step % choices.size()];
    return succ.ids()[raw % succ.size()];
  };
  return a;
}

SimulationTrace simulate(const FiniteSystem& sys,
                         const PeriodicCoderController& H, StateId x0,
                         unsigned steps, const Adversary& adversary) {
  if (x0 >= sys.num_states) throw Error("initial state out of range");
  SimulationTrace trace;
  trace.trajectory.states.push_back(x0);
  std::vector<StateId> window;
  std::vector<Symbol> symbols;
  StateId x = x0;
  for (unsigned t = 0; t < steps; ++t) {
    const unsigned phase = t % H.period;
    if (phase == 0) {
      window.clear();
      symbols.clear();
    }
    window.push_back(x);
    const Symbol s = H.encode(phase, window);
    symbols.push_back(s);
    trace.symbols.push_back(s);
    const InputId u = H.decode(phase, symbols);
    const StateSet& succ = sys.post(x, u);
    x = adversary.pick(succ, t);
    trace.trajectory.inputs.push_back(u);
    trace.trajectory.states.push_back(x);
  }
  return trace;
}

}  // namespace ifent
