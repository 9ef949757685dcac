#include "engine.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_map>

namespace shiftz::detail {

namespace {

constexpr std::size_t kMaxNodes = 4'000'000;
constexpr std::uint64_t kMaxDeBruijn = 4'000'000;

std::vector<int> rotate(const std::vector<int>& v, std::size_t n) {
  std::vector<int> r(v);
  if (!r.empty()) std::rotate(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(n % r.size()), r.end());
  return r;
}

std::vector<int> least_rot(const std::vector<int>& v) {
  std::vector<int> best = v;
  for (std::size_t i = 1; i < v.size(); ++i) best = std::min(best, rotate(v, i));
  return best;
}

std::vector<int> prim_root(const std::vector<int>& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return {w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d)};
  }
  return w;
}

}  // namespace

Engine::Engine(const ForbiddenSpec& base) : spec_(base) {
  if (spec_.overlap_m > 0) throw Error(ErrorKind::InvalidSpec, "engine expects a plain specification");
  restricted_ = spec_.alphabet.has_value();
  letters_ = restricted_ ? *spec_.alphabet : spec_.mentioned_letters();
  std::sort(letters_.begin(), letters_.end());
  letters_.erase(std::unique(letters_.begin(), letters_.end()), letters_.end());
  Letter top = -1;
  for (Letter a : spec_.mentioned_letters()) top = std::max(top, a);
  for (Letter a : letters_) top = std::max(top, a);
  fresh_ = top + 1;
  ncls_ = static_cast<int>(letters_.size()) + (restricted_ ? 0 : 1);
  phi_ = restricted_ ? -1 : static_cast<int>(letters_.size());

  for (const auto& p : spec_.words) {
    max_len_ = std::max(max_len_, p.size());
    std::vector<std::vector<char>> table;
    for (const auto& c : p.cells) {
      if (c.kind == Cell::Kind::Tuple) throw Error(ErrorKind::InvalidSpec, "tuple cell in a plain specification");
      std::vector<char> row(static_cast<std::size_t>(ncls_));
      for (int k = 0; k < ncls_; ++k) {
        Letter rep = k == phi_ ? fresh_ : letters_[static_cast<std::size_t>(k)];
        row[static_cast<std::size_t>(k)] = c.matches(rep) ? 1 : 0;
      }
      table.push_back(std::move(row));
    }
    ok_.push_back(std::move(table));
  }
  k_ = std::max<std::size_t>(max_len_ > 0 ? max_len_ - 1 : 0, 1);

  // Keys must fit in 64 bits.
  long double cap = 1;
  for (std::size_t i = 0; i < k_; ++i) cap *= (ncls_ + 1);
  if (cap > 1.8e19L) throw Error(ErrorKind::InvalidSpec, "window too large for the existence search");

  for (const auto& r : spec_.tails) {
    auto p = classes_of(r.period);
    auto t = classes_of(r.transient);
    if (!p || !t) continue;
    rays_.push_back({*p, *t});
    max_trans_ = std::max(max_trans_, r.transient.size());
  }
  build_tails();
}

Letter Engine::fresh_avoiding(const Word& w) const {
  Letter f = fresh_;
  for (Letter a : w) f = std::max(f, a + 1);
  return f;
}

Letter Engine::rep(int cls) const {
  return cls == phi_ ? fresh_ : letters_[static_cast<std::size_t>(cls)];
}

int Engine::class_of(Letter a) const {
  auto it = std::lower_bound(letters_.begin(), letters_.end(), a);
  if (it != letters_.end() && *it == a) return static_cast<int>(it - letters_.begin());
  return phi_;
}

std::optional<std::vector<int>> Engine::classes_of(const Word& w) const {
  std::vector<int> out;
  out.reserve(w.size());
  for (Letter a : w) {
    if (a < 0) return std::nullopt;
    int c = class_of(a);
    if (c < 0) return std::nullopt;
    out.push_back(c);
  }
  return out;
}

bool Engine::cell_ok(std::size_t pat, std::size_t pos, int cls) const {
  return ok_[pat][pos][static_cast<std::size_t>(cls)] != 0;
}

bool Engine::ends_with_pattern(const std::vector<int>& w) const {
  for (std::size_t p = 0; p < ok_.size(); ++p) {
    const std::size_t n = ok_[p].size();
    if (n > w.size()) continue;
    bool hit = true;
    for (std::size_t i = 0; i < n && hit; ++i) hit = cell_ok(p, i, w[w.size() - n + i]);
    if (hit) return true;
  }
  return false;
}

bool Engine::clean_classes(const std::vector<int>& w) const {
  std::vector<int> prefix;
  prefix.reserve(w.size());
  for (int c : w) {
    prefix.push_back(c);
    if (ends_with_pattern(prefix)) return false;
  }
  return true;
}

std::uint64_t Engine::encode_state(const std::vector<int>& s) const {
  std::uint64_t key = 0;
  const std::size_t from = s.size() > k_ ? s.size() - k_ : 0;
  for (std::size_t i = from; i < s.size(); ++i) {
    key = key * static_cast<std::uint64_t>(ncls_ + 1) + static_cast<std::uint64_t>(s[i] + 1);
  }
  return key;
}

std::vector<int> Engine::decode_state(std::uint64_t key) const {
  std::vector<int> s;
  while (key > 0) {
    s.push_back(static_cast<int>(key % static_cast<std::uint64_t>(ncls_ + 1)) - 1);
    key /= static_cast<std::uint64_t>(ncls_ + 1);
  }
  std::reverse(s.begin(), s.end());
  return s;
}

bool Engine::conj_to_forbidden(const std::vector<int>& period) const {
  auto lr = least_rot(period);
  return std::any_of(rays_.begin(), rays_.end(), [&](const ClassRay& r) {
    return r.period.size() == period.size() && least_rot(r.period) == lr;
  });
}

bool Engine::pure_forbidden(const std::vector<int>& period) const {
  auto lr = least_rot(period);
  return std::any_of(rays_.begin(), rays_.end(), [&](const ClassRay& r) {
    return r.transient.empty() && r.period.size() == period.size() && least_rot(r.period) == lr;
  });
}

void Engine::build_tails() {
  if (spec_.allow_tails) {
    for (const Word& w : *spec_.allow_tails) {
      auto p = classes_of(w);
      if (!p) continue;
      std::vector<int> rep;
      while (rep.size() < max_len_ + 2 * p->size() + k_) rep.insert(rep.end(), p->begin(), p->end());
      if (!clean_classes(rep) || pure_forbidden(*p)) continue;
      tails_.push_back({*p, !conj_to_forbidden(*p)});
    }
    return;
  }

  // De Bruijn graph on class words of length k_.
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < k_; ++i) {
    n *= static_cast<std::uint64_t>(ncls_);
    if (n > kMaxDeBruijn) throw Error(ErrorKind::InvalidSpec, "de Bruijn graph too large");
  }
  if (ncls_ == 0) return;
  const auto N = static_cast<std::size_t>(n);
  const auto B = static_cast<std::size_t>(ncls_);
  auto word_of = [&](std::size_t idx) {
    std::vector<int> w(k_);
    for (std::size_t i = k_; i-- > 0;) {
      w[i] = static_cast<int>(idx % B);
      idx /= B;
    }
    return w;
  };
  std::vector<char> legal(N);
  for (std::size_t i = 0; i < N; ++i) legal[i] = clean_classes(word_of(i)) ? 1 : 0;
  std::vector<std::vector<std::pair<std::size_t, int>>> adj(N);
  for (std::size_t i = 0; i < N; ++i) {
    if (!legal[i]) continue;
    std::vector<int> w = word_of(i);
    w.push_back(0);
    for (int a = 0; a < ncls_; ++a) {
      w.back() = a;
      if (ends_with_pattern(w)) continue;
      std::size_t j = (i * B) % N + static_cast<std::size_t>(a);
      if (legal[j]) adj[i].push_back({j, a});
    }
  }

  // Iterative Tarjan.
  std::vector<int> index(N, -1), low(N, 0), comp(N, -1);
  std::vector<char> on_stack(N, 0);
  std::vector<std::size_t> stack;
  int counter = 0, ncomp = 0;
  for (std::size_t root = 0; root < N; ++root) {
    if (!legal[root] || index[root] >= 0) continue;
    std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, ei] = call.back();
      if (ei < adj[v].size()) {
        std::size_t w = adj[v][ei++].first;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        std::size_t done = v;
        if (low[done] == index[done]) {
          while (true) {
            std::size_t w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = ncomp;
            if (w == done) break;
          }
          ++ncomp;
        }
        call.pop_back();
        if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      }
    }
  }

  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(ncomp));
  for (std::size_t i = 0; i < N; ++i) {
    if (comp[i] >= 0) members[static_cast<std::size_t>(comp[i])].push_back(i);
  }
  for (const auto& mem : members) {
    const int c = comp[mem.front()];
    std::size_t edges = 0;
    std::size_t branch = N;
    for (std::size_t v : mem) {
      std::size_t out = 0;
      for (auto [w, a] : adj[v]) out += comp[w] == c ? 1 : 0;
      edges += out;
      if (out >= 2 && branch == N) branch = v;
    }
    if (edges == 0) continue;
    if (edges == mem.size()) {
      // A single cycle: its label is the only period living here.
      std::vector<int> per;
      std::size_t v = mem.front();
      do {
        for (auto [w, a] : adj[v]) {
          if (comp[w] == c) {
            per.push_back(a);
            v = w;
            break;
          }
        }
      } while (v != mem.front());
      per = prim_root(per);
      if (!pure_forbidden(per)) tails_.push_back({per, !conj_to_forbidden(per)});
      continue;
    }
    rich_ = true;
    // Two closed walks through a branching vertex give infinitely many
    // periods; pick one outside every forbidden ray class.
    auto walk_back = [&](std::size_t first, int label) {
      std::vector<int> path{label};
      std::unordered_map<std::size_t, std::pair<std::size_t, int>> prev;
      std::deque<std::size_t> bfs{first};
      prev[first] = {N, -1};
      while (!bfs.empty()) {
        std::size_t v = bfs.front();
        bfs.pop_front();
        if (v == branch) break;
        for (auto [w, a] : adj[v]) {
          if (comp[w] != c || prev.count(w)) continue;
          prev[w] = {v, a};
          bfs.push_back(w);
        }
      }
      std::vector<int> rest;
      for (std::size_t v = branch; v != first;) {
        auto [u, a] = prev.at(v);
        rest.push_back(a);
        v = u;
      }
      path.insert(path.end(), rest.rbegin(), rest.rend());
      return path;
    };
    std::vector<std::vector<int>> loops;
    for (auto [w, a] : adj[branch]) {
      if (comp[w] == c && loops.size() < 2) loops.push_back(walk_back(w, a));
    }
    bool placed = false;
    for (std::size_t i = 1; i <= rays_.size() + 8 && !placed; ++i) {
      std::vector<int> z;
      for (std::size_t j = 0; j < i; ++j) z.insert(z.end(), loops[0].begin(), loops[0].end());
      z.insert(z.end(), loops[1].begin(), loops[1].end());
      z = prim_root(z);
      if (!conj_to_forbidden(z)) {
        tails_.push_back({z, true});
        placed = true;
      }
    }
    if (!placed) throw Error(ErrorKind::InvalidSpec, "no free period found in a rich component");
  }
}

std::vector<Engine::Node> Engine::tail_starts(const std::vector<Tail>& tails) const {
  std::vector<Node> starts;
  for (std::size_t t = 0; t < tails.size(); ++t) {
    const auto& p = tails[t].period;
    const auto np = static_cast<std::int64_t>(p.size());
    for (std::int64_t s = 0; s < np; ++s) {
      std::vector<int> state;
      for (std::size_t i = 0; i < k_; ++i) {
        std::int64_t off = s - static_cast<std::int64_t>(k_) + static_cast<std::int64_t>(i);
        state.push_back(p[static_cast<std::size_t>(((off % np) + np) % np)]);
      }
      Node n;
      n.state = encode_state(state);
      n.tail = static_cast<std::int32_t>(t);
      n.phase = static_cast<std::int32_t>(s);
      n.pure = true;
      n.ray_dead = tails[t].ray_dead;
      starts.push_back(std::move(n));
    }
  }
  return starts;
}

void Engine::successors(const Query& q, const Node& n, std::vector<Node>& out) const {
  std::vector<int> win = decode_state(n.state);
  win.push_back(0);
  const auto goal = static_cast<std::int32_t>(q.target.size());
  for (int a = 0; a < ncls_; ++a) {
    win.back() = a;
    if (ends_with_pattern(win)) continue;
    Node m = n;
    if (!n.ray_dead) {
      const auto& per = q.tails[static_cast<std::size_t>(n.tail)].period;
      if (n.pure) {
        if (a == per[static_cast<std::size_t>(n.phase)]) {
          m.phase = static_cast<std::int32_t>((n.phase + 1) % static_cast<std::int32_t>(per.size()));
        } else {
          m.pure = false;
          m.trans = {a};
        }
      } else {
        m.trans.push_back(a);
      }
      if (!m.pure) {
        if (m.trans.size() > max_trans_ || a == phi_) {
          m.ray_dead = true;
        } else {
          auto rot = rotate(per, static_cast<std::size_t>(m.phase));
          bool hit = std::any_of(rays_.begin(), rays_.end(), [&](const ClassRay& r) {
            return !r.transient.empty() && r.period == rot && r.transient == m.trans;
          });
          if (hit) continue;
        }
      }
    } else if (n.pure) {
      const auto& per = q.tails[static_cast<std::size_t>(n.tail)].period;
      if (a == per[static_cast<std::size_t>(n.phase)]) {
        m.phase = static_cast<std::int32_t>((n.phase + 1) % static_cast<std::int32_t>(per.size()));
      } else {
        m.pure = false;
      }
    }
    if (m.ray_dead) {
      m.trans.clear();
      if (!m.pure || !q.accept_deviated) {
        m.pure = false;
        m.tail = -1;
        m.phase = 0;
      }
    }
    m.state = encode_state(win);
    if (n.wp == goal) {
      out.push_back(std::move(m));
    } else if (n.wp == 0) {
      if (a == q.target[0]) {
        Node started = m;
        started.wp = 1;
        out.push_back(std::move(started));
      }
      out.push_back(std::move(m));
    } else if (a == q.target[static_cast<std::size_t>(n.wp)]) {
      m.wp = n.wp + 1;
      out.push_back(std::move(m));
    }
  }
}

bool Engine::run(const Query& q) const {
  const auto goal = static_cast<std::int32_t>(q.target.size());
  auto key_of = [](const Node& n) {
    std::string k;
    k.reserve(24 + n.trans.size());
    k.append(reinterpret_cast<const char*>(&n.state), sizeof n.state);
    k.append(reinterpret_cast<const char*>(&n.tail), sizeof n.tail);
    k.append(reinterpret_cast<const char*>(&n.phase), sizeof n.phase);
    k.push_back(static_cast<char>((n.pure ? 1 : 0) | (n.ray_dead ? 2 : 0)));
    k.append(reinterpret_cast<const char*>(&n.wp), sizeof n.wp);
    for (int c : n.trans) k.push_back(static_cast<char>(c));
    return k;
  };
  auto accepts = [&](const Node& n) { return n.wp == goal && (!q.accept_deviated || !n.pure); };

  std::unordered_map<std::string, std::size_t> index;
  std::vector<Node> nodes;
  std::vector<std::vector<std::size_t>> adj;
  std::deque<std::size_t> todo;
  auto intern = [&](Node n) {
    std::string k = key_of(n);
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    if (nodes.size() >= kMaxNodes) throw Error(ErrorKind::InvalidSpec, "existence search too large");
    std::size_t id = nodes.size();
    index.emplace(std::move(k), id);
    nodes.push_back(std::move(n));
    adj.emplace_back();
    todo.push_back(id);
    return id;
  };
  for (const auto& s : q.starts) {
    Node n = s;
    n.wp = goal == 0 ? 0 : n.wp;
    std::size_t id = intern(std::move(n));
    if (!q.need_alive && accepts(nodes[id])) return true;
  }
  std::vector<Node> next;
  while (!todo.empty()) {
    std::size_t id = todo.front();
    todo.pop_front();
    next.clear();
    successors(q, nodes[id], next);
    for (auto& m : next) {
      std::size_t j = intern(std::move(m));
      adj[id].push_back(j);
      if (!q.need_alive && accepts(nodes[j])) return true;
    }
  }
  if (!q.need_alive) return false;

  // Prune nodes that cannot continue forever.
  std::vector<std::size_t> outdeg(nodes.size());
  std::vector<std::vector<std::size_t>> rev(nodes.size());
  std::vector<std::size_t> dead;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    outdeg[i] = adj[i].size();
    for (std::size_t j : adj[i]) rev[j].push_back(i);
    if (outdeg[i] == 0) dead.push_back(i);
  }
  std::vector<char> alive(nodes.size(), 1);
  while (!dead.empty()) {
    std::size_t v = dead.back();
    dead.pop_back();
    alive[v] = 0;
    for (std::size_t u : rev[v]) {
      if (--outdeg[u] == 0) dead.push_back(u);
    }
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (alive[i] && accepts(nodes[i])) return true;
  }
  return false;
}

std::optional<Engine::Node> Engine::ray_node(const LeftRay& r, std::vector<Tail>& tails) const {
  auto per = classes_of(r.period);
  auto tr = classes_of(r.transient);
  if (!per || !tr) return std::nullopt;
  auto ctx = classes_of(r.window(r.end - static_cast<std::int64_t>(k_) + 1, r.end));
  if (!ctx) return std::nullopt;
  Node n;
  n.state = encode_state(*ctx);
  n.tail = static_cast<std::int32_t>(tails.size());
  n.pure = tr->empty();
  n.trans = *tr;
  n.ray_dead = rays_.empty() || !conj_to_forbidden(*per) || tr->size() > max_trans_ ||
               std::find(tr->begin(), tr->end(), phi_) != tr->end();
  tails.push_back({*per, n.ray_dead});
  if (n.ray_dead) {
    n.trans.clear();
    n.pure = false;
    n.tail = -1;
  }
  return n;
}

bool Engine::word_clean(const Word& w) const {
  auto c = classes_of(w);
  return c && clean_classes(*c);
}

bool Engine::ray_legal(const LeftRay& r) const {
  if (restricted_) {
    if (!classes_of(r.period) || !classes_of(r.transient)) return false;
  }
  for (const auto& p : spec_.words) {
    if (!ray_subword_occurrences(r, p).none()) return false;
  }
  for (const auto& f : spec_.tails) {
    if (ray_equals_pattern_tail(r, f)) return false;
  }
  if (spec_.allow_tails) {
    const auto& allow = *spec_.allow_tails;
    if (std::none_of(allow.begin(), allow.end(), [&](const Word& p) { return is_conjugate(p, r.period); })) {
      return false;
    }
  }
  return true;
}

bool Engine::infinite_point_legal(const BiPoint& x) const {
  if (restricted_) {
    if (!classes_of(x.left_period()) || !classes_of(x.body()) || !classes_of(x.right_period())) return false;
  }
  const auto n = static_cast<std::int64_t>(max_len_);
  const std::int64_t lo = x.body_start() - static_cast<std::int64_t>(x.left_period().size()) - n;
  const std::int64_t hi = x.body_end() + static_cast<std::int64_t>(x.right_period().size()) + n;
  Word w = window(x, lo, hi);
  for (const auto& p : spec_.words) {
    for (std::int64_t j = static_cast<std::int64_t>(p.size()) - 1; j < static_cast<std::int64_t>(w.size()); ++j) {
      if (p.matches_at(w, j)) return false;
    }
  }
  for (const auto& f : spec_.tails) {
    LeftRay r = tail_ray(x, x.body_start() - 1 + static_cast<std::int64_t>(f.transient.size()));
    if (ray_equals_pattern_tail(r, f)) return false;
  }
  if (spec_.allow_tails) {
    const auto& allow = *spec_.allow_tails;
    if (std::none_of(allow.begin(), allow.end(),
                     [&](const Word& p) { return is_conjugate(p, x.left_period()); })) {
      return false;
    }
  }
  return true;
}

bool Engine::inf_nonempty() const { return !tails_.empty(); }

bool Engine::inf_infinite() const {
  if (rich_) return true;
  for (const auto& t : tails_) {
    if (std::find(t.period.begin(), t.period.end(), phi_) != t.period.end()) return true;
  }
  Query q;
  q.tails = tails_;
  q.starts = tail_starts(tails_);
  q.accept_deviated = true;
  return run(q);
}

bool Engine::word_in_language(const Word& w) const {
  auto c = classes_of(w);
  if (!c || !clean_classes(*c)) return false;
  if (c->empty()) return inf_nonempty();
  Query q;
  q.tails = tails_;
  q.starts = tail_starts(tails_);
  q.target = *c;
  return run(q);
}

bool Engine::ray_extends(const LeftRay& r) const {
  if (!ray_legal(r)) return false;
  Query q;
  auto n = ray_node(r, q.tails);
  if (!n) return false;
  q.starts.push_back(*n);
  return run(q);
}

bool Engine::follower_infinite(const LeftRay& r) const {
  if (restricted_) return false;
  Word all = r.period;
  all.insert(all.end(), r.transient.begin(), r.transient.end());
  return ray_extends(append_ray(r, {fresh_avoiding(all)}));
}

bool Engine::ends_language(const Word& u) const {
  if (restricted_) return false;
  Word w = u;
  w.push_back(fresh_avoiding(u));
  return word_in_language(w);
}

bool Engine::one_word_extends(const Word& w) const {
  auto c = classes_of(w);
  if (!c || c->empty() || !clean_classes(*c)) return false;
  Query q;
  Node n;
  n.state = encode_state(*c);
  q.starts.push_back(n);
  return run(q);
}

bool Engine::one_empty_member() const { return !restricted_ && one_word_extends({fresh_}); }

bool Engine::fixed_right(const Word& w) const {
  auto c = classes_of(w);
  if (!c || !clean_classes(*c)) return false;
  Query q;
  q.tails = tails_;
  q.starts = tail_starts(tails_);
  q.target = *c;
  q.need_alive = false;
  return run(q);
}

}  // namespace shiftz::detail
