#include "powpres/todd_coxeter.hpp"

#include <algorithm>
#include <set>

#include "powpres/errors.hpp"

namespace powpres {

namespace {

// Cosets are 1-based; row 0 of the table is a dead sentinel. Each row has
// one column per signed letter: column = 2*gen + (1 if inverse). An entry
// of 0 means undefined. The column of the inverse letter is col ^ 1.
using Col = uint32_t;

Col col_of(Letter l) {
  return 2 * letter_gen(l) + (letter_sign(l) < 0 ? 1u : 0u);
}

using ColWord = std::vector<Col>;

ColWord cols_of(const Word& w) {
  ColWord out;
  out.reserve(w.size());
  for (Letter l : w.letters()) out.push_back(col_of(l));
  return out;
}

class Enumerator {
 public:
  Enumerator(const Presentation& p, const std::vector<Word>& subgroup_gens,
             const EnumerationLimits& limits)
      : cols_(2 * p.generator_count()), limits_(limits) {
    for (const Word& r : p.relators()) {
      ColWord cw = cols_of(r);
      if (!cw.empty()) relators_.push_back(std::move(cw));
    }
    for (const Word& g : subgroup_gens) {
      ColWord cw = cols_of(g);
      if (!cw.empty()) subgens_.push_back(std::move(cw));
    }
    if (limits_.strategy == TCStrategy::felsch) build_rotation_buckets();
  }

  EnumerationResult run() {
    EnumerationResult res;
    if (cols_ == 0) {
      // No generators: the trivial group, one coset.
      res.status = TCStatus::success;
      res.index = 1;
      res.stats.total_defined = 1;
      res.stats.alive = 1;
      res.stats.max_alive = 1;
      return res;
    }

    new_coset();  // coset 1 = the subgroup itself
    for (const ColWord& g : subgens_) {
      if (!scan_and_fill(1, g)) return overflow_result();
      drain_deductions();
    }

    for (;;) {
      bool ok = limits_.strategy == TCStrategy::hlt ? run_hlt() : run_felsch();
      if (!ok) return overflow_result();
      if (verify_closed()) break;
      // Verification found coincidences; the table shrank and may have
      // holes again, so hand it back to the main strategy.
    }

    res.status = TCStatus::success;
    res.index = alive_;
    res.stats = snapshot_stats();
    return res;
  }

 private:
  // ---- table primitives -------------------------------------------------

  uint32_t entry(uint32_t c, Col x) const { return tab_[size_t(c) * cols_ + x]; }
  void set_entry(uint32_t c, Col x, uint32_t v) { tab_[size_t(c) * cols_ + x] = v; }

  bool alive(uint32_t c) const { return p_[c] == c; }

  uint32_t rep(uint32_t c) {
    uint32_t r = c;
    while (p_[r] != r) r = p_[r];
    while (p_[c] != r) {
      uint32_t next = p_[c];
      p_[c] = r;
      c = next;
    }
    return r;
  }

  // 0 on table overflow, else the new coset id.
  uint32_t new_coset() {
    if (defined_ >= limits_.max_cosets) return 0;
    ++defined_;
    ++alive_;
    total_defined_++;
    max_alive_ = std::max(max_alive_, alive_);
    if (tab_.size() < size_t(defined_ + 1) * cols_) {
      size_t want = size_t(defined_ + 1) * cols_;
      size_t grown = std::max(want, tab_.size() + tab_.size() / 2 + cols_);
      tab_.resize(std::min(grown, size_t(limits_.max_cosets + 1) * cols_), 0);
      if (tab_.size() < want) tab_.resize(want, 0);
    }
    std::fill(tab_.begin() + size_t(defined_) * cols_,
              tab_.begin() + size_t(defined_ + 1) * cols_, 0u);
    p_.resize(defined_ + 1);
    p_[defined_] = defined_;
    return defined_;
  }

  void link(uint32_t a, Col x, uint32_t b) {
    set_entry(a, x, b);
    set_entry(b, x ^ 1, a);
    if (limits_.strategy == TCStrategy::felsch) deductions_.push_back({a, x});
  }

  // ---- coincidence handling (union-find, smaller id survives) -----------

  void merge(uint32_t a, uint32_t b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    p_[b] = a;
    --alive_;
    ++coincidences_;
    dead_queue_.push_back(b);
  }

  void coincidence(uint32_t a, uint32_t b) {
    merge(a, b);
    while (!dead_queue_.empty()) {
      uint32_t g = dead_queue_.back();
      dead_queue_.pop_back();
      for (Col x = 0; x < cols_; ++x) {
        uint32_t d = entry(g, x);
        if (d == 0) continue;
        set_entry(g, x, 0);
        // Entries are created and destroyed in involutive pairs, so the
        // back-edge from d under x^-1 still points at g here.
        set_entry(d, x ^ 1, 0);
        uint32_t mu = rep(g);
        uint32_t nu = rep(d);
        uint32_t via = entry(mu, x);
        if (via != 0) {
          merge(nu, via);
        } else {
          uint32_t back = entry(nu, x ^ 1);
          if (back != 0) {
            merge(mu, back);
          } else {
            link(mu, x, nu);
          }
        }
      }
    }
  }

  // ---- scanning ----------------------------------------------------------

  // Trace w at coset a. With fill=true, gaps wider than one are closed by
  // defining new cosets (returns false only on table overflow). A one-slot
  // gap becomes a deduction; a negative gap becomes a coincidence. Always
  // returns immediately after triggering a coincidence because the cosets
  // held in local variables may be dead afterwards.
  bool scan(uint32_t a, const ColWord& w, bool fill) {
    size_t i = 0;
    size_t j = w.size();
    uint32_t f = a;
    uint32_t b = a;
    for (;;) {
      while (i < j) {
        uint32_t next = entry(f, w[i]);
        if (next == 0) break;
        f = next;
        ++i;
      }
      if (i == j) {
        if (f != b) coincidence(f, b);
        return true;
      }
      while (j > i) {
        uint32_t prev = entry(b, w[j - 1] ^ 1);
        if (prev == 0) break;
        b = prev;
        --j;
      }
      if (j == i) {
        coincidence(f, b);
        return true;
      }
      if (j == i + 1) {
        link(f, w[i], b);
        return true;
      }
      if (!fill) return true;
      uint32_t fresh = new_coset();
      if (fresh == 0) return false;
      link(f, w[i], fresh);
      f = fresh;
      ++i;
    }
  }

  bool scan_and_fill(uint32_t a, const ColWord& w) { return scan(a, w, true); }

  // ---- HLT ----------------------------------------------------------------

  bool run_hlt() {
    uint32_t a = 1;
    while (a <= defined_) {
      if (!alive(a)) {
        ++a;
        continue;
      }
      bool redo = false;
      for (const ColWord& r : relators_) {
        if (!scan_and_fill(a, r)) {
          if (!recover(a)) return false;
          redo = true;
          break;
        }
        if (!alive(a)) break;
      }
      if (redo) continue;  // a was remapped by compaction; rescan it
      if (alive(a)) {
        bool full_row = true;
        for (Col x = 0; x < cols_ && alive(a); ++x) {
          if (entry(a, x) != 0) continue;
          uint32_t fresh = new_coset();
          if (fresh == 0) {
            if (!recover(a)) return false;
            full_row = false;
            break;
          }
          link(a, x, fresh);
        }
        if (!full_row) continue;
      }
      ++a;
    }
    return true;
  }

  // Table is full: lookahead (scan-only sweep collecting coincidences), then
  // compact. `a` is remapped to the smallest live coset at or after its old
  // position. Fails if no space was reclaimed.
  bool recover(uint32_t& a) {
    ++lookaheads_;
    size_t before = alive_;
    for (uint32_t c = 1; c <= defined_; ++c) {
      if (!alive(c)) continue;
      for (const ColWord& r : relators_) {
        scan(c, r, false);
        if (!alive(c)) break;
      }
    }
    if (alive_ == before && defined_ >= limits_.max_cosets) return false;
    a = compact(a);
    return defined_ < limits_.max_cosets;
  }

  // Renumber live cosets contiguously, preserving order. Returns the new id
  // of the smallest live coset >= from (or defined_ afterwards if none).
  uint32_t compact(uint32_t from) {
    std::vector<uint32_t> to_new(defined_ + 1, 0);
    uint32_t next = 0;
    for (uint32_t c = 1; c <= defined_; ++c)
      if (alive(c)) to_new[c] = ++next;
    uint32_t from_new = next;  // fallback: past the end
    for (uint32_t c = from; c <= defined_; ++c)
      if (alive(c)) {
        from_new = to_new[c];
        break;
      }
    for (uint32_t c = 1; c <= defined_; ++c) {
      if (!alive(c)) continue;
      uint32_t nc = to_new[c];
      for (Col x = 0; x < cols_; ++x) {
        uint32_t d = entry(c, x);
        set_entry(nc, x, d == 0 ? 0 : to_new[rep(d)]);
      }
    }
    defined_ = next;
    p_.resize(defined_ + 1);
    for (uint32_t c = 0; c <= defined_; ++c) p_[c] = c;
    tab_.resize(size_t(defined_ + 1) * cols_);
    return from_new == 0 ? 1 : from_new;
  }

  // ---- Felsch ---------------------------------------------------------------

  void build_rotation_buckets() {
    std::set<ColWord> seen;
    buckets_.assign(cols_ == 0 ? 0 : cols_, {});
    for (const ColWord& r : relators_) {
      ColWord inv(r.size());
      for (size_t i = 0; i < r.size(); ++i) inv[i] = r[r.size() - 1 - i] ^ 1;
      const ColWord* bases[2] = {&r, &inv};
      for (const ColWord* base : bases) {
        ColWord rot = *base;
        for (size_t k = 0; k < rot.size(); ++k) {
          if (seen.insert(rot).second) buckets_[rot[0]].push_back(rot);
          std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        }
      }
    }
  }

  void drain_deductions() {
    while (!deductions_.empty()) {
      auto [c, x] = deductions_.back();
      deductions_.pop_back();
      if (!alive(c)) continue;
      uint32_t d = entry(c, x);
      if (d == 0) continue;
      for (const ColWord& r : buckets_[x]) {
        scan(c, r, false);
        if (!alive(c)) break;
      }
      if (!alive(c)) continue;
      d = entry(c, x);
      if (d == 0 || !alive(d)) continue;
      for (const ColWord& r : buckets_[x ^ 1]) {
        scan(d, r, false);
        if (!alive(d)) break;
      }
    }
  }

  bool run_felsch() {
    drain_deductions();
    uint32_t a = 1;
    while (a <= defined_) {
      if (!alive(a)) {
        ++a;
        continue;
      }
      Col hole = cols_;
      for (Col x = 0; x < cols_; ++x)
        if (entry(a, x) == 0) {
          hole = x;
          break;
        }
      if (hole == cols_) {
        ++a;
        continue;
      }
      uint32_t fresh = new_coset();
      if (fresh == 0) return false;
      link(a, hole, fresh);
      drain_deductions();
      // a may have died or gained entries; reinspect the same row.
    }
    return true;
  }

  // ---- final certification ----------------------------------------------

  bool verify_closed() {
    bool clean = true;
    for (uint32_t c = 1; c <= defined_; ++c) {
      if (!alive(c)) continue;
      for (Col x = 0; x < cols_; ++x) {
        uint32_t d = entry(c, x);
        if (d == 0 || !alive(d)) {
          // Hole, or an edge into a dead coset (the latter cannot happen once
          // the coincidence queue has drained, but check anyway).
          clean = false;
        }
      }
      size_t before = coincidences_;
      for (const ColWord& r : relators_) {
        scan(c, r, false);
        if (!alive(c)) break;
      }
      if (coincidences_ != before) clean = false;
      if (!clean) {
        drain_deductions();
        return false;
      }
    }
    drain_deductions();
    return clean;
  }

  TCStats snapshot_stats() const {
    TCStats s;
    s.total_defined = total_defined_;
    s.alive = alive_;
    s.max_alive = max_alive_;
    s.coincidences = coincidences_;
    s.lookaheads = lookaheads_;
    return s;
  }

  EnumerationResult overflow_result() const {
    EnumerationResult res;
    res.status = TCStatus::overflow;
    res.index = 0;
    res.stats = snapshot_stats();
    return res;
  }

  Col cols_;
  EnumerationLimits limits_;
  std::vector<ColWord> relators_;
  std::vector<ColWord> subgens_;
  std::vector<std::vector<ColWord>> buckets_;  // Felsch: rotations by first column

  std::vector<uint32_t> tab_;
  std::vector<uint32_t> p_;
  uint32_t defined_ = 0;  // highest coset id in use
  size_t alive_ = 0;
  size_t total_defined_ = 0;
  size_t max_alive_ = 0;
  size_t coincidences_ = 0;
  size_t lookaheads_ = 0;
  std::vector<uint32_t> dead_queue_;
  std::vector<std::pair<uint32_t, Col>> deductions_;
};

}  // namespace

EnumerationResult todd_coxeter(const Presentation& p,
                               const std::vector<Word>& subgroup_gens,
                               const EnumerationLimits& limits) {
  for (const Word& g : subgroup_gens)
    for (Letter l : g.letters())
      if (letter_gen(l) >= p.generator_count())
        throw precondition_error("subgroup generator uses a letter outside the presentation alphabet");
  if (limits.max_cosets == 0) throw precondition_error("max_cosets must be positive");
  Enumerator e(p, subgroup_gens, limits);
  return e.run();
}

}  // namespace powpres
