#include "shiftz/space.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "engine.hpp"
#include "json.hpp"

namespace shiftz {

using detail::Engine;
using json = nlohmann::ordered_json;

// --- ForbiddenSpec ---------------------------------------------------------------

namespace {

void collect_cell_letters(const Cell& c, std::vector<Letter>& out) {
  if (c.kind == Cell::Kind::Exact) out.push_back(c.letter);
  if (c.kind == Cell::Kind::Except) out.insert(out.end(), c.excluded.begin(), c.excluded.end());
}

bool has_tuple(const Pattern& p) {
  return std::any_of(p.cells.begin(), p.cells.end(), [](const Cell& c) { return c.kind == Cell::Kind::Tuple; });
}

}  // namespace

void ForbiddenSpec::normalize() {
  if (overlap_m < 0) throw Error(ErrorKind::InvalidSpec, "overlap_m must be nonnegative");
  for (const auto& p : words) {
    if (p.cells.empty()) throw Error(ErrorKind::InvalidSpec, "empty forbidden pattern");
    if (overlap_m == 0 && has_tuple(p)) throw Error(ErrorKind::InvalidSpec, "tuple cells need overlap_m");
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  for (auto& r : tails) r = canonicalize_ray(r.period, r.transient, 0);
  std::sort(tails.begin(), tails.end());
  tails.erase(std::unique(tails.begin(), tails.end()), tails.end());
  if (allow_tails) {
    for (auto& p : *allow_tails) {
      if (p.empty() || has_empty(p)) throw Error(ErrorKind::InvalidSpec, "bad allowed period");
      p = least_rotation(primitive_root(p));
    }
    std::sort(allow_tails->begin(), allow_tails->end());
    allow_tails->erase(std::unique(allow_tails->begin(), allow_tails->end()), allow_tails->end());
  }
  if (alphabet) {
    if (!tails.empty() || allow_tails || overlap_m > 0) {
      throw Error(ErrorKind::InvalidSpec, "alphabet restriction only combines with forbidden words");
    }
    std::sort(alphabet->begin(), alphabet->end());
    alphabet->erase(std::unique(alphabet->begin(), alphabet->end()), alphabet->end());
    for (Letter a : *alphabet) {
      if (a < 0) throw Error(ErrorKind::InvalidSpec, "negative letter in alphabet");
    }
  }
}

std::vector<Letter> ForbiddenSpec::mentioned_letters() const {
  std::vector<Letter> out;
  for (const auto& p : words) {
    for (const auto& c : p.cells) collect_cell_letters(c, out);
  }
  for (const auto& r : tails) {
    out.insert(out.end(), r.period.begin(), r.period.end());
    out.insert(out.end(), r.transient.begin(), r.transient.end());
  }
  if (allow_tails) {
    for (const auto& p : *allow_tails) out.insert(out.end(), p.begin(), p.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t ForbiddenSpec::max_pattern_length() const {
  std::size_t n = 0;
  for (const auto& p : words) n = std::max(n, p.size());
  return n;
}

ForbiddenSpec parse_spec_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::Parse, "specification must be a JSON object");
  ForbiddenSpec spec;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const json& v = it.value();
    try {
      if (key == "forbid_words" || key == "forbid_tails_containing") {
        for (const auto& s : v) spec.words.push_back(parse_pattern(s.get<std::string>()));
      } else if (key == "forbid_tails") {
        for (const auto& s : v) spec.tails.push_back(parse_ray(s.get<std::string>()));
      } else if (key == "allow_tails") {
        spec.allow_tails.emplace();
        for (const auto& s : v) spec.allow_tails->push_back(parse_word(s.get<std::string>()));
      } else if (key == "alphabet") {
        spec.alphabet.emplace();
        for (const auto& a : v) spec.alphabet->push_back(a.get<Letter>());
      } else if (key == "overlap_m") {
        spec.overlap_m = v.get<int>();
      } else {
        throw Error(ErrorKind::Parse, "unknown specification key '" + key + "'");
      }
    } catch (const json::exception& e) {
      throw Error(ErrorKind::Parse, "bad value for '" + key + "': " + e.what());
    }
  }
  spec.normalize();
  return spec;
}

std::string spec_to_json(const ForbiddenSpec& spec) {
  json j = json::object();
  const int arity = spec.arity();
  json words = json::array();
  for (const auto& p : spec.words) words.push_back(format_pattern(p, arity));
  j["forbid_words"] = words;
  if (!spec.tails.empty()) {
    json tails = json::array();
    for (const auto& r : spec.tails) tails.push_back(format_tail(r, arity));
    j["forbid_tails"] = tails;
  }
  if (spec.allow_tails) {
    json allow = json::array();
    for (const auto& p : *spec.allow_tails) allow.push_back(format_compact(p, arity));
    j["allow_tails"] = allow;
  }
  if (spec.alphabet) j["alphabet"] = *spec.alphabet;
  if (spec.overlap_m > 0) j["overlap_m"] = spec.overlap_m;
  return j.dump(2);
}

// --- derived spaces ------------------------------------------------------------------

namespace {

bool overlap_ok(Letter c, Letter d, int m) {
  Word u = block_decode(c, m);
  Word v = block_decode(d, m);
  return std::equal(u.begin() + 1, u.end(), v.begin());
}

bool word_overlaps(const Word& w, int m) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (!overlap_ok(w[i], w[i + 1], m)) return false;
  }
  return true;
}

// Base word of a consistent code word: the first tuple then last components.
Word base_of_codes(const Word& w, int m) {
  Word b = block_decode(w.front(), m);
  for (std::size_t i = 1; i < w.size(); ++i) b.push_back(block_decode(w[i], m).back());
  return b;
}

Word last_components(const Word& w, int m) {
  Word b;
  for (Letter c : w) b.push_back(block_decode(c, m).back());
  return b;
}

bool ray_overlaps(const LeftRay& r, int m) {
  const auto span = static_cast<std::int64_t>(r.transient.size() + 2 * r.period.size()) + 1;
  return word_overlaps(r.window(r.end - span, r.end), m);
}

std::optional<LeftRay> base_ray(const LeftRay& r, int m) {
  if (!ray_overlaps(r, m)) return std::nullopt;
  return canonicalize_ray(last_components(r.period, m), last_components(r.transient, m), r.end);
}

// Conjunction of two cells over base letters; nullopt when unsatisfiable.
std::optional<Cell> meet(const Cell& a, const Cell& b) {
  using K = Cell::Kind;
  if (a.kind == K::Wild) return b;
  if (b.kind == K::Wild) return a;
  if (a.kind == K::Exact && b.kind == K::Exact) {
    if (a.letter == b.letter) return a;
    return std::nullopt;
  }
  if (a.kind == K::Exact) return b.matches(a.letter) ? std::optional<Cell>(a) : std::nullopt;
  if (b.kind == K::Exact) return a.matches(b.letter) ? std::optional<Cell>(b) : std::nullopt;
  std::vector<Letter> ex = a.excluded;
  ex.insert(ex.end(), b.excluded.begin(), b.excluded.end());
  return Cell::except(std::move(ex));
}

// The plain specification over base letters whose space decodes the derived one.
ForbiddenSpec translate_to_base(const ForbiddenSpec& code) {
  const int m = code.overlap_m;
  ForbiddenSpec base;
  for (const auto& p : code.words) {
    std::vector<Cell> cells(p.size() + static_cast<std::size_t>(m) - 1, Cell::wild());
    bool ok = true;
    for (std::size_t i = 0; i < p.size() && ok; ++i) {
      const Cell& c = p.cells[i];
      std::vector<Cell> parts;
      if (c.kind == Cell::Kind::Exact) {
        for (Letter a : block_decode(c.letter, m)) parts.push_back(Cell::exact(a));
      } else if (c.kind == Cell::Kind::Tuple) {
        if (c.parts.size() != static_cast<std::size_t>(m)) throw Error(ErrorKind::InvalidSpec, "tuple arity mismatch");
        parts = c.parts;
      } else if (c.kind == Cell::Kind::Except) {
        throw Error(ErrorKind::InvalidSpec, "exclusion cells are not supported over block letters");
      }
      for (std::size_t j = 0; j < parts.size() && ok; ++j) {
        if (parts[j].kind == Cell::Kind::Tuple) throw Error(ErrorKind::InvalidSpec, "nested tuple cell");
        auto r = meet(cells[i + j], parts[j]);
        if (!r) {
          ok = false;
        } else {
          cells[i + j] = *r;
        }
      }
    }
    if (ok) base.words.push_back(Pattern{cells});
  }
  for (const auto& r : code.tails) {
    if (auto b = base_ray(r, m)) base.tails.push_back(canonicalize_ray(b->period, b->transient, 0));
  }
  if (code.allow_tails) {
    base.allow_tails.emplace();
    for (const auto& p : *code.allow_tails) {
      Word twice = p;
      twice.insert(twice.end(), p.begin(), p.end());
      twice.push_back(p.front());
      if (word_overlaps(twice, m)) base.allow_tails->push_back(last_components(p, m));
    }
  }
  base.normalize();
  return base;
}

bool native_infinite_legal(const ForbiddenSpec& spec, const BiPoint& x) {
  const int m = spec.overlap_m;
  const auto np = static_cast<std::int64_t>(x.left_period().size());
  const auto nq = static_cast<std::int64_t>(x.right_period().size());
  const auto n = static_cast<std::int64_t>(spec.max_pattern_length());
  const std::int64_t lo = x.body_start() - np - n - 1;
  const std::int64_t hi = x.body_end() + nq + n + 1;
  Word w = window(x, lo, hi);
  if (spec.alphabet) {
    for (Letter a : w) {
      if (!std::binary_search(spec.alphabet->begin(), spec.alphabet->end(), a)) return false;
    }
  }
  if (m > 0 && !word_overlaps(w, m)) return false;
  for (const auto& p : spec.words) {
    for (std::int64_t j = static_cast<std::int64_t>(p.size()) - 1; j < static_cast<std::int64_t>(w.size()); ++j) {
      if (p.matches_at(w, j)) return false;
    }
  }
  for (const auto& f : spec.tails) {
    LeftRay r = tail_ray(x, x.body_start() - 1 + static_cast<std::int64_t>(f.transient.size()));
    if (ray_equals_pattern_tail(r, f)) return false;
  }
  if (spec.allow_tails) {
    const auto& allow = *spec.allow_tails;
    if (std::none_of(allow.begin(), allow.end(),
                     [&](const Word& p) { return is_conjugate(p, x.left_period()); })) {
      return false;
    }
  }
  return true;
}

}  // namespace

// --- SpaceHandle -----------------------------------------------------------------------

struct SpaceHandle::Impl {
  ForbiddenSpec spec;
  ForbiddenSpec base;
  std::unique_ptr<Engine> engine;
};

SpaceHandle::SpaceHandle(ForbiddenSpec spec) {
  spec.normalize();
  auto impl = std::make_shared<Impl>();
  impl->base = spec.overlap_m > 0 ? translate_to_base(spec) : spec;
  impl->spec = std::move(spec);
  impl->engine = std::make_unique<Engine>(impl->base);
  impl_ = std::move(impl);
}

const ForbiddenSpec& SpaceHandle::spec() const { return impl_->spec; }
int SpaceHandle::arity() const { return impl_->spec.arity(); }
const Engine& SpaceHandle::engine() const { return *impl_->engine; }
Letter SpaceHandle::fresh_letter() const { return impl_->engine->fresh_letter(); }
bool SpaceHandle::restricted() const { return impl_->engine->restricted(); }

std::vector<Letter> SpaceHandle::base_letters() const {
  std::vector<Letter> out = impl_->base.mentioned_letters();
  if (impl_->base.alphabet) out.insert(out.end(), impl_->base.alphabet->begin(), impl_->base.alphabet->end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool SpaceHandle::contains_infinite(const BiPoint& x) const {
  if (!x.is_infinite()) throw Error(ErrorKind::InvalidSpec, "expected an infinite point");
  return native_infinite_legal(impl_->spec, x);
}

bool SpaceHandle::inf_nonempty() const { return impl_->engine->inf_nonempty(); }
bool SpaceHandle::inf_infinite() const { return impl_->engine->inf_infinite(); }
bool SpaceHandle::empty_member() const { return inf_infinite(); }

bool SpaceHandle::word_in_language(const Word& w) const {
  if (w.empty() || has_empty(w)) return false;
  const int m = arity();
  if (m == 1) return impl_->engine->word_in_language(w);
  if (!word_overlaps(w, m)) return false;
  return impl_->engine->word_in_language(base_of_codes(w, m));
}

bool SpaceHandle::ray_in_language(const LeftRay& r) const {
  const int m = arity();
  if (m == 1) return impl_->engine->ray_extends(r);
  auto b = base_ray(r, m);
  return b && impl_->engine->ray_extends(*b);
}

bool SpaceHandle::follower_infinite(const LeftRay& r) const {
  const int m = arity();
  if (m == 1) return impl_->engine->follower_infinite(r);
  auto b = base_ray(r, m);
  return b && impl_->engine->follower_infinite(*b);
}

bool SpaceHandle::ends_language(const Word& u) const {
  if (u.empty() || has_empty(u)) return false;
  const int m = arity();
  if (m == 1) return impl_->engine->ends_language(u);
  if (!word_overlaps(u, m)) return false;
  return impl_->engine->ends_language(base_of_codes(u, m));
}

bool SpaceHandle::contains(const BiPoint& x) const {
  switch (x.kind()) {
    case BiPoint::Kind::Empty: return empty_member();
    case BiPoint::Kind::Infinite: return contains_infinite(x);
    case BiPoint::Kind::Finite: return follower_infinite(x.ray());
  }
  return false;
}

// --- languages -------------------------------------------------------------------

bool block_less(const Word& a, const Word& b) {
  auto key = [](Letter x) { return x == kEmpty ? INT64_MAX : x; };
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [&](Letter x, Letter y) { return key(x) < key(y); });
}

namespace {

void check_cutoff(const SpaceHandle& h, Letter cutoff) {
  auto letters = h.base_letters();
  if (cutoff <= 0 || (!letters.empty() && cutoff <= letters.back())) {
    throw Error(ErrorKind::CutoffTooSmall, "cutoff must exceed every mentioned letter");
  }
}

// Memoized membership of base words, keyed by class word.
class BaseOracle {
 public:
  explicit BaseOracle(const Engine& e) : e_(e) {}

  bool in_language(const Word& w) { return ask(w, false); }
  bool ends(const Word& w) { return ask(w, true); }

 private:
  bool ask(const Word& w, bool ends) {
    auto c = e_.classes_of(w);
    if (!c) return false;
    auto key = std::make_pair(*c, ends);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Word rep;
    for (int k : *c) rep.push_back(e_.rep(k));
    bool v = ends ? e_.ends_language(rep) : e_.word_in_language(rep);
    memo_.emplace(std::move(key), v);
    return v;
  }

  const Engine& e_;
  std::map<std::pair<std::vector<int>, bool>, bool> memo_;
};

Word codes_of_base(const Word& b, int m) {
  if (m == 1) return b;
  Word c;
  for (std::size_t i = 0; i + static_cast<std::size_t>(m) <= b.size(); ++i) {
    c.push_back(block_encode(Word(b.begin() + static_cast<std::ptrdiff_t>(i),
                                  b.begin() + static_cast<std::ptrdiff_t>(i) + m)));
  }
  return c;
}

// Base words of length `len` over [0, cutoff) in B(X^inf), by prefix search.
void base_words(BaseOracle& oracle, std::size_t len, Letter cutoff, Word& cur, std::vector<Word>& out) {
  if (cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (Letter a = 0; a < cutoff; ++a) {
    cur.push_back(a);
    if (oracle.in_language(cur)) base_words(oracle, len, cutoff, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Word> blocks(const SpaceHandle& h, int n, Letter cutoff) {
  if (n < 1) throw Error(ErrorKind::BadRange, "block length must be positive");
  check_cutoff(h, cutoff);
  const int m = h.arity();
  BaseOracle oracle(h.engine());
  std::vector<Word> out;
  std::vector<Word> base;
  Word cur;
  base_words(oracle, static_cast<std::size_t>(n + m - 1), cutoff, cur, base);
  for (const auto& b : base) out.push_back(codes_of_base(b, m));
  for (int j = 1; j < n; ++j) {
    std::vector<Word> prefixes;
    base_words(oracle, static_cast<std::size_t>(j + m - 1), cutoff, cur, prefixes);
    for (const auto& u : prefixes) {
      if (!oracle.ends(u)) continue;
      Word w = codes_of_base(u, m);
      w.resize(static_cast<std::size_t>(n), kEmpty);
      out.push_back(std::move(w));
    }
  }
  if (h.empty_member()) out.push_back(Word(static_cast<std::size_t>(n), kEmpty));
  std::sort(out.begin(), out.end(), block_less);
  return out;
}

namespace {

// Enumerates extensions of `left` letter by letter. `ok(w)` decides
// membership of a candidate extension.
FollowerSet followers(const std::function<bool(const Word&)>& ok, int k, Letter cutoff,
                      const std::vector<Letter>& classes_rep, Letter fresh, bool restricted) {
  FollowerSet fs;
  std::vector<Word> frontier{{}};
  for (int step = 0; step < k; ++step) {
    std::vector<Word> next;
    for (const auto& v : frontier) {
      for (Letter a = 0; a < cutoff; ++a) {
        Word w = v;
        w.push_back(a);
        if (ok(w)) next.push_back(std::move(w));
      }
    }
    frontier = std::move(next);
  }
  fs.words = std::move(frontier);
  if (!restricted) {
    // Infinite iff a fresh letter fits at some position.
    std::vector<Word> layer{{}};
    for (int step = 0; step < k && !fs.infinite; ++step) {
      std::vector<Word> next;
      for (const auto& v : layer) {
        Word w = v;
        w.push_back(fresh);
        if (ok(w)) {
          fs.infinite = true;
          break;
        }
        for (Letter a : classes_rep) {
          Word u = v;
          u.push_back(a);
          if (ok(u)) next.push_back(std::move(u));
        }
      }
      layer = std::move(next);
    }
  }
  return fs;
}

}  // namespace

FollowerSet follower_set(const SpaceHandle& h, const Word& left, int k, Direction dir, Letter cutoff) {
  if (h.arity() != 1) throw Error(ErrorKind::InvalidSpec, "follower sets are computed on plain spaces");
  check_cutoff(h, cutoff);
  if (!h.word_in_language(left)) throw Error(ErrorKind::NotInLanguage, "word not in the language");
  const Engine& e = h.engine();
  Letter fresh = e.fresh_avoiding(left);
  auto ok = [&](const Word& v) {
    Word w;
    if (dir == Direction::Forward) {
      w = left;
      w.insert(w.end(), v.begin(), v.end());
    } else {
      w.assign(v.rbegin(), v.rend());
      w.insert(w.end(), left.begin(), left.end());
    }
    return h.word_in_language(w);
  };
  FollowerSet fs = followers(ok, k, cutoff, e.mentioned(), fresh, e.restricted());
  if (dir == Direction::Backward) {
    for (auto& w : fs.words) std::reverse(w.begin(), w.end());
  }
  std::sort(fs.words.begin(), fs.words.end(), block_less);
  return fs;
}

FollowerSet follower_set(const SpaceHandle& h, const LeftRay& left, int k, Letter cutoff) {
  if (h.arity() != 1) throw Error(ErrorKind::InvalidSpec, "follower sets are computed on plain spaces");
  check_cutoff(h, cutoff);
  if (!h.ray_in_language(left)) throw Error(ErrorKind::NotInLanguage, "ray not in the language");
  const Engine& e = h.engine();
  Word all = left.period;
  all.insert(all.end(), left.transient.begin(), left.transient.end());
  auto ok = [&](const Word& v) { return h.ray_in_language(append_ray(left, v)); };
  FollowerSet fs = followers(ok, k, cutoff, e.mentioned(), e.fresh_avoiding(all), e.restricted());
  std::sort(fs.words.begin(), fs.words.end(), block_less);
  return fs;
}

bool has_iep(const SpaceHandle& h, const BiPoint& x) {
  if (!x.is_finite()) throw Error(ErrorKind::BadRange, "the extension property concerns finite points");
  return h.follower_infinite(x.ray());
}

// --- minimality --------------------------------------------------------------------

namespace {

void require_plain(const ForbiddenSpec& spec) {
  if (spec.overlap_m > 0) throw Error(ErrorKind::InvalidSpec, "minimality is computed on plain specifications");
}

// Class sets allowed by a cell.
std::vector<int> cell_classes(const Cell& c, const Engine& e) {
  std::vector<int> out;
  for (int k = 0; k < e.classes(); ++k) {
    if (c.matches(e.rep(k))) out.push_back(k);
  }
  return out;
}

void expand(const std::vector<std::vector<int>>& sets, std::vector<int>& cur,
            std::vector<std::vector<int>>& out) {
  if (cur.size() == sets.size()) {
    out.push_back(cur);
    return;
  }
  for (int k : sets[cur.size()]) {
    cur.push_back(k);
    expand(sets, cur, out);
    cur.pop_back();
  }
}

Word reps(const Engine& e, const std::vector<int>& cls) {
  Word w;
  for (int k : cls) w.push_back(e.rep(k));
  return w;
}

struct ClassOracle {
  const Engine& e;
  std::map<std::vector<int>, bool> memo;

  bool good(const std::vector<int>& cls) {
    auto it = memo.find(cls);
    if (it != memo.end()) return it->second;
    bool v = e.word_in_language(reps(e, cls));
    memo.emplace(cls, v);
    return v;
  }
};

// Windows of a forbidden tail up to the stabilization bound.
std::vector<Word> ray_windows(const LeftRay& r, std::size_t max_len) {
  std::vector<Word> out;
  const auto t = static_cast<std::int64_t>(r.transient.size());
  const auto p = static_cast<std::int64_t>(r.period.size());
  const auto bound = static_cast<std::int64_t>(p + t + static_cast<std::int64_t>(max_len));
  for (std::int64_t len = 1; len <= bound; ++len) {
    for (std::int64_t j = r.end; j > r.end - t - p; --j) out.push_back(r.window(j - len + 1, j));
  }
  return out;
}

}  // namespace

MinimalityReport is_minimal(const ForbiddenSpec& input) {
  ForbiddenSpec spec = input;
  spec.normalize();
  require_plain(spec);
  if (spec.allow_tails && !spec.words.empty()) {
    throw Error(ErrorKind::AllowlistUnsupported, "allowlist together with forbidden words");
  }
  SpaceHandle h(spec);
  const Engine& e = h.engine();
  ClassOracle oracle{e, {}};
  MinimalityReport rep;

  struct Candidate {
    std::size_t wild, len, start;
    std::size_t pattern;
  };
  std::vector<Candidate> cands;
  for (std::size_t pi = 0; pi < spec.words.size(); ++pi) {
    const auto& p = spec.words[pi];
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = i; j < p.size(); ++j) {
        if (j - i + 1 == p.size()) continue;
        std::size_t wild = 0;
        for (std::size_t k = i; k <= j; ++k) wild += p.cells[k].is_exact() ? 0 : 1;
        cands.push_back({wild, j - i + 1, i, pi});
      }
    }
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.wild, a.len, a.start) < std::tie(b.wild, b.len, b.start);
  });
  for (const auto& c : cands) {
    const auto& p = spec.words[c.pattern];
    std::vector<std::vector<int>> sets;
    for (std::size_t k = c.start; k < c.start + c.len; ++k) sets.push_back(cell_classes(p.cells[k], e));
    std::vector<std::vector<int>> words;
    std::vector<int> cur;
    expand(sets, cur, words);
    for (const auto& w : words) {
      if (!oracle.good(w)) {
        rep.minimal = false;
        rep.witness = reps(e, w);
        rep.parent = format_pattern(p);
        return rep;
      }
    }
  }
  const std::size_t max_len = std::max<std::size_t>(spec.max_pattern_length(), 1);
  for (const auto& r : spec.tails) {
    for (const auto& w : ray_windows(r, max_len)) {
      auto cls = e.classes_of(w);
      if (!cls || !oracle.good(*cls)) {
        rep.minimal = false;
        rep.witness = w;
        rep.parent = format_tail(r);
        return rep;
      }
    }
  }
  if (spec.allow_tails) {
    // Every finite word is a subblock of some tail outside the allowlist, so
    // the language must contain every class word of length at most two.
    for (std::size_t len = 1; len <= 2; ++len) {
      std::vector<std::vector<int>> sets(len);
      for (auto& s : sets) {
        for (int k = 0; k < e.classes(); ++k) s.push_back(k);
      }
      std::vector<std::vector<int>> words;
      std::vector<int> cur;
      expand(sets, cur, words);
      for (const auto& w : words) {
        if (!oracle.good(w)) {
          rep.minimal = false;
          rep.witness = reps(e, w);
          rep.parent = "tails outside the allowlist";
          return rep;
        }
      }
    }
  }
  return rep;
}

ForbiddenSpec minimalize(const ForbiddenSpec& input) {
  ForbiddenSpec spec = input;
  spec.normalize();
  require_plain(spec);
  if (spec.allow_tails) throw Error(ErrorKind::AllowlistUnsupported, "minimalize needs a forbidden list");
  SpaceHandle h(spec);
  const Engine& e = h.engine();
  ClassOracle oracle{e, {}};

  std::set<std::vector<int>> candidates;
  for (const auto& p : spec.words) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = i; j < p.size(); ++j) {
        std::vector<std::vector<int>> sets;
        for (std::size_t k = i; k <= j; ++k) sets.push_back(cell_classes(p.cells[k], e));
        std::vector<std::vector<int>> words;
        std::vector<int> cur;
        expand(sets, cur, words);
        candidates.insert(words.begin(), words.end());
      }
    }
  }
  const std::size_t max_len = std::max<std::size_t>(spec.max_pattern_length(), 1);
  ForbiddenSpec out;
  out.alphabet = spec.alphabet;
  for (const auto& r : spec.tails) {
    bool all_good = true;
    for (const auto& w : ray_windows(r, max_len)) {
      auto cls = e.classes_of(w);
      if (!cls) {
        all_good = false;
        continue;
      }
      candidates.insert(*cls);
      if (!oracle.good(*cls)) all_good = false;
    }
    if (all_good) out.tails.push_back(r);
  }

  // Minimal bad words: outside the language with every proper subword inside.
  std::vector<std::vector<std::set<int>>> bad;
  for (const auto& w : candidates) {
    if (oracle.good(w)) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < w.size() && minimal; ++i) {
      for (std::size_t j = i; j < w.size() && minimal; ++j) {
        if (j - i + 1 == w.size()) continue;
        std::vector<int> sub(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(j) + 1);
        if (!oracle.good(sub)) minimal = false;
      }
    }
    if (!minimal) continue;
    std::vector<std::set<int>> cells;
    for (int k : w) cells.push_back({k});
    bad.push_back(std::move(cells));
  }

  // Merge words that differ in one position.
  bool changed = true;
  while (changed) {
    changed = false;
    std::size_t width = 0;
    for (const auto& b : bad) width = std::max(width, b.size());
    for (std::size_t pos = 0; pos < width; ++pos) {
      std::map<std::pair<std::size_t, std::vector<std::set<int>>>, std::set<int>> groups;
      for (const auto& b : bad) {
        if (pos >= b.size()) {
          groups[{b.size(), b}];
          continue;
        }
        auto key = b;
        key[pos].clear();
        auto& g = groups[{b.size(), key}];
        g.insert(b[pos].begin(), b[pos].end());
      }
      std::vector<std::vector<std::set<int>>> merged;
      for (auto& [key, set] : groups) {
        auto b = key.second;
        if (pos < b.size()) b[pos] = set;
        merged.push_back(std::move(b));
      }
      if (merged.size() != bad.size()) changed = true;
      bad = std::move(merged);
    }
  }

  const auto& letters = e.mentioned();
  const int phi = e.restricted() ? -1 : static_cast<int>(letters.size());
  for (const auto& b : bad) {
    // Cells with several mentioned letters and no fresh class split apart.
    std::vector<std::vector<Cell>> options;
    for (const auto& s : b) {
      std::vector<Cell> opts;
      if (static_cast<int>(s.size()) == e.classes()) {
        opts.push_back(Cell::wild());
      } else if (s.count(phi)) {
        std::vector<Letter> ex;
        for (int k = 0; k < static_cast<int>(letters.size()); ++k) {
          if (!s.count(k)) ex.push_back(letters[static_cast<std::size_t>(k)]);
        }
        opts.push_back(Cell::except(std::move(ex)));
      } else {
        for (int k : s) opts.push_back(Cell::exact(letters[static_cast<std::size_t>(k)]));
      }
      options.push_back(std::move(opts));
    }
    std::vector<Pattern> pats{Pattern{}};
    for (const auto& opts : options) {
      std::vector<Pattern> next;
      for (const auto& p : pats) {
        for (const auto& c : opts) {
          Pattern q = p;
          q.cells.push_back(c);
          next.push_back(std::move(q));
        }
      }
      pats = std::move(next);
    }
    out.words.insert(out.words.end(), pats.begin(), pats.end());
  }
  out.normalize();
  return out;
}

// --- classification and comparison ---------------------------------------------------------

Classification classify(const SpaceHandle& h) {
  const ForbiddenSpec& spec = h.spec();
  const Engine& e = h.engine();
  Classification c;
  if (e.restricted()) {
    c.row_finite = c.column_finite = true;
  } else {
    c.row_finite = c.column_finite = true;
    for (int k = 0; k < e.classes(); ++k) {
      Letter a = e.rep(k);
      Letter f = e.fresh_avoiding({a});
      if (e.word_in_language({a, f})) c.row_finite = false;
      if (e.word_in_language({f, a})) c.column_finite = false;
    }
  }
  if (spec.tails.empty() && !spec.allow_tails) {
    const auto len = static_cast<int>(spec.max_pattern_length());
    c.m_step = spec.overlap_m > 0 ? std::max(1, len - 1) : std::max(0, len - 1);
  }
  c.finite_type = spec.overlap_m == 0 && !spec.alphabet && spec.tails.empty() && !spec.allow_tails &&
                  std::all_of(spec.words.begin(), spec.words.end(), [](const Pattern& p) { return p.wildcard_free(); });
  return c;
}

namespace {

void enumerate_words(std::size_t len, Letter cutoff, Word& cur, const std::function<void(const Word&)>& f) {
  if (cur.size() == len) {
    f(cur);
    return;
  }
  for (Letter a = 0; a < cutoff; ++a) {
    cur.push_back(a);
    enumerate_words(len, cutoff, cur, f);
    cur.pop_back();
  }
}

}  // namespace

EqualVerdict equal_spaces(const SpaceHandle& a, const SpaceHandle& b, int n_budget, Letter cutoff) {
  EqualVerdict v;
  for (int n = 1; n <= n_budget; ++n) {
    auto ba = blocks(a, n, cutoff);
    auto bb = blocks(b, n, cutoff);
    if (ba == bb) continue;
    // Prefer a block of the first space missing from the second.
    std::vector<Word> diff;
    std::set_difference(ba.begin(), ba.end(), bb.begin(), bb.end(), std::back_inserter(diff), block_less);
    if (diff.empty()) std::set_difference(bb.begin(), bb.end(), ba.begin(), ba.end(), std::back_inserter(diff), block_less);
    v.equal = false;
    v.witness = format_word(diff.front(), a.arity());
    return v;
  }
  for (int plen = 1; plen <= n_budget; ++plen) {
    Word p;
    bool found = false;
    enumerate_words(static_cast<std::size_t>(plen), cutoff, p, [&](const Word& per) {
      if (found || !is_primitive(per)) return;
      for (int tlen = 0; tlen <= n_budget && !found; ++tlen) {
        Word t;
        enumerate_words(static_cast<std::size_t>(tlen), cutoff, t, [&](const Word& tr) {
          if (found || (!tr.empty() && tr.front() == per.front())) return;
          LeftRay r = canonicalize_ray(per, tr, 0);
          if (a.ray_in_language(r) != b.ray_in_language(r)) {
            found = true;
            v.equal = false;
            v.witness = format_ray(r, a.arity());
          }
        });
      }
    });
    if (found) return v;
  }
  return v;
}

}  // namespace shiftz
