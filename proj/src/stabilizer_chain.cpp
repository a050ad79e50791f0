#include "powpres/stabilizer_chain.hpp"

#include "powpres/errors.hpp"

namespace powpres {

void StabilizerChain::rebuild_orbit(Level& lv) {
  lv.orbit.clear();
  lv.where.assign(degree_, -1);
  lv.transversal.clear();
  lv.transversal_words.clear();

  lv.orbit.push_back(lv.base_point);
  lv.where[lv.base_point] = 0;
  lv.transversal.push_back(Permutation(degree_));
  lv.transversal_words.push_back(Word());

  for (size_t qi = 0; qi < lv.orbit.size(); ++qi) {
    for (size_t si = 0; si < lv.gens.size(); ++si) {
      uint32_t z = lv.gens[si].apply(lv.orbit[qi]);
      if (lv.where[z] >= 0) continue;
      lv.where[z] = static_cast<int32_t>(lv.orbit.size());
      lv.orbit.push_back(z);
      lv.transversal.push_back(lv.transversal[qi] * lv.gens[si]);
      if (track_words_)
        lv.transversal_words.push_back(lv.transversal_words[qi] * lv.gen_words[si]);
      else
        lv.transversal_words.push_back(Word());
    }
  }
}

std::pair<Permutation, size_t> StabilizerChain::sift(
    const Permutation& g, size_t from,
    std::vector<std::pair<size_t, size_t>>* used) const {
  Permutation h = g;
  for (size_t i = from; i < levels_.size(); ++i) {
    const Level& lv = levels_[i];
    uint32_t y = h.apply(lv.base_point);
    if (lv.where[y] < 0) return {h, i};
    size_t idx = static_cast<size_t>(lv.where[y]);
    if (used) used->emplace_back(i, idx);
    h = h * lv.transversal[idx].inverse();
  }
  return {h, levels_.size()};
}

void StabilizerChain::add_generator(size_t level, const Permutation& g, const Word& w) {
  if (level == levels_.size()) {
    Level lv;
    lv.base_point = g.first_moved_point();
    levels_.push_back(std::move(lv));
    base_.push_back(levels_.back().base_point);
  }
  levels_[level].gens.push_back(g);
  levels_[level].gen_words.push_back(track_words_ ? w : Word());
  rebuild_orbit(levels_[level]);
}

StabilizerChain StabilizerChain::build(const std::vector<Permutation>& gens,
                                       const Options& opt) {
  StabilizerChain c;
  c.track_words_ = opt.track_words;
  c.degree_ = gens.empty() ? 0 : gens[0].degree();
  for (const auto& g : gens)
    if (g.degree() != c.degree_)
      throw precondition_error("stabilizer chain: generator degrees differ");

  for (uint32_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_identity()) continue;
    // Every input generator belongs to level 0 by definition.
    if (c.levels_.empty())
      c.add_generator(0, gens[i], Word::generator(i));
    else {
      c.levels_[0].gens.push_back(gens[i]);
      c.levels_[0].gen_words.push_back(c.track_words_ ? Word::generator(i) : Word());
    }
  }
  if (c.levels_.empty()) return c;  // trivial group
  c.rebuild_orbit(c.levels_[0]);

  // Schreier closure: verify, from the deepest level up, that every
  // Schreier generator sifts to the identity through the chain below;
  // failures are installed as new strong generators and verification
  // resumes at the level that changed.
  size_t i = c.levels_.size() - 1;
  for (;;) {
    // Index-based access throughout: add_generator can grow levels_ and
    // invalidate references.
    bool changed = false;
    for (size_t oi = 0; oi < c.levels_[i].orbit.size() && !changed; ++oi) {
      for (size_t si = 0; si < c.levels_[i].gens.size() && !changed; ++si) {
        const Level& lv = c.levels_[i];
        uint32_t z = lv.gens[si].apply(lv.orbit[oi]);
        const Permutation u = lv.transversal[oi] * lv.gens[si];
        size_t zi = static_cast<size_t>(lv.where[z]);
        Permutation schreier = u * lv.transversal[zi].inverse();
        if (schreier.is_identity()) continue;

        std::vector<std::pair<size_t, size_t>> used;
        auto [res, stop] = c.sift(schreier, i + 1, &used);
        if (res.is_identity()) continue;

        Word res_word;
        if (c.track_words_) {
          res_word = lv.transversal_words[oi] * lv.gen_words[si] *
                     lv.transversal_words[zi].inverse();
          for (auto& [lvl_idx, t_idx] : used)
            res_word = res_word * c.levels_[lvl_idx].transversal_words[t_idx].inverse();
        }
        // The residue fixes the base prefix of every level up to stop, so
        // it is a strong generator for each of them; installing it only at
        // the stuck level would leave the intermediate orbits too small.
        for (size_t j = i + 1; j <= stop; ++j) c.add_generator(j, res, res_word);
        i = stop;
        changed = true;
      }
    }
    if (changed) continue;
    if (i == 0) break;
    --i;
  }
  return c;
}

BigInt StabilizerChain::order() const {
  BigInt n = 1;
  for (const auto& lv : levels_) n *= BigInt(lv.orbit.size());
  return n;
}

bool StabilizerChain::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  auto [res, stop] = sift(g, 0);
  (void)stop;
  return res.is_identity();
}

Word StabilizerChain::factor(const Permutation& g) const {
  if (!track_words_)
    throw precondition_error("factor() requires a chain built with track_words");
  if (g.degree() != degree_)
    throw factorization_error("element degree does not match the chain");
  std::vector<std::pair<size_t, size_t>> used;
  auto [res, stop] = sift(g, 0, &used);
  (void)stop;
  if (!res.is_identity())
    throw factorization_error("element is not in the group");
  Word w;
  for (auto it = used.rbegin(); it != used.rend(); ++it)
    w = w * levels_[it->first].transversal_words[it->second];
  return w;
}

}  // namespace powpres
