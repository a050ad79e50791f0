#include "powpres/homomorphism.hpp"

#include <unordered_map>

#include "powpres/errors.hpp"

namespace powpres {

Permutation evaluate_hom(const GroupHom& h, const Word& w) {
  if (h.images.size() != h.domain.generator_count())
    throw precondition_error("hom image count does not match the alphabet");
  if (w.min_alphabet() > h.images.size())
    throw precondition_error("word leaves the hom's alphabet");
  return evaluate_word(w, h.images);
}

HomReport verify_presentation_hom(const GroupHom& h,
                                  std::optional<BigInt> expected_order) {
  HomReport rep;
  for (size_t i = 0; i < h.domain.relator_count(); ++i) {
    if (!evaluate_hom(h, h.domain.relators()[i]).is_identity()) {
      rep.relators_trivial = false;
      rep.violated_relators.push_back(i);
    }
  }
  rep.generated_order = StabilizerChain::build(h.images).order();
  rep.expected_order = expected_order;
  if (expected_order) rep.order_matches = (rep.generated_order == *expected_order);
  return rep;
}

GroupHom direct_power_hom(const GroupHom& base, uint32_t m) {
  if (m == 0) throw precondition_error("direct_power_hom: m must be positive");
  GroupHom out;
  out.domain = naive_power(base.domain, m).pres;
  out.images.reserve(size_t(m) * base.images.size());
  for (uint32_t j = 0; j < m; ++j)
    for (const auto& g : base.images) out.images.push_back(embed_block(g, m, j));
  return out;
}

namespace {

struct ImagesHash {
  size_t operator()(const std::vector<uint32_t>& v) const {
    size_t h = 1469598103934665603ull;
    for (uint32_t x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

Word factor_element_bfs(const std::vector<Permutation>& gens, const Permutation& target,
                        size_t max_elements) {
  const uint32_t deg = gens.empty() ? target.degree() : gens[0].degree();
  if (target.degree() != deg)
    throw precondition_error("factor_element_bfs: degree mismatch");
  if (target.is_identity()) return Word();

  // Edges: generators and their inverses, labelled by signed letters.
  std::vector<Permutation> edge;
  std::vector<Letter> label;
  for (uint32_t i = 0; i < gens.size(); ++i) {
    edge.push_back(gens[i]);
    label.push_back(make_letter(i, 1));
    edge.push_back(gens[i].inverse());
    label.push_back(make_letter(i, -1));
  }

  std::vector<Permutation> elems{Permutation(deg)};
  // element index -> (predecessor index, letter applied)
  std::vector<std::pair<size_t, Letter>> parent{{0, 0}};
  std::unordered_map<std::vector<uint32_t>, size_t, ImagesHash> seen;
  seen.emplace(elems[0].images(), 0);

  auto emit = [&](size_t idx) {
    std::vector<Letter> rev;
    for (size_t at = idx; at != 0; at = parent[at].first) rev.push_back(parent[at].second);
    Word w = Word::from_letters(std::vector<Letter>(rev.rbegin(), rev.rend()));
    if (!(evaluate_word(w, gens) == target))
      throw factorization_error("internal: BFS word failed evaluation check");
    return w;
  };

  for (size_t qi = 0; qi < elems.size(); ++qi) {
    for (size_t e = 0; e < edge.size(); ++e) {
      Permutation next = elems[qi] * edge[e];
      auto [it, fresh] = seen.emplace(next.images(), elems.size());
      if (!fresh) continue;
      elems.push_back(std::move(next));
      parent.emplace_back(qi, label[e]);
      if (elems.back() == target) return emit(elems.size() - 1);
      if (elems.size() > max_elements)
        throw budget_error("factor_element_bfs: enumerated more than " +
                           std::to_string(max_elements) + " elements");
    }
  }
  throw factorization_error("target is not in the generated group");
}

Word factor_element(const StabilizerChain& chain, const std::vector<Permutation>& gens,
                    const Permutation& target) {
  Word w = chain.factor(target);
  if (!(evaluate_word(w, gens) == target))
    throw factorization_error(
        "internal: chain factorization failed the evaluation check");
  return w;
}

}  // namespace powpres
